#![no_main]

use libfuzzer_sys::fuzz_target;
use timely_core::{load_schedule, load_spec};

const SPEC: &str = r#"{
  "time_model": "dense",
  "actions": ["a", "b", "c"],
  "constraints": [
    { "from": "a", "to": "b", "bound": "5" },
    { "from": "b", "to": "a", "bound": "-3" },
    { "from": "b", "to": "c", "bound": "2" },
    { "from": "c", "to": "a", "bound": "0" }
  ]
}"#;

fuzz_target!(|data: &str| {
    let spec = load_spec(SPEC).unwrap();
    if let Ok(schedule) = load_schedule(data, &spec) {
        assert!(schedule.times().iter().all(|t| !t.is_negative()));
        let back = load_schedule(&schedule.to_json(), &spec).expect("saved schedules load");
        assert_eq!(back, schedule);
        let _ = spec.check_schedule(&schedule).expect("same actions");
    }
});
