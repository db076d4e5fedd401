//! Spec documents: loading must never panic, and anything that loads must
//! survive a save/load round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use timely_core::load_spec;

fuzz_target!(|data: &[u8]| {
    if data.len() > 64 * 1024 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = load_spec(text) {
        let saved = spec.to_json();
        let back = load_spec(&saved).expect("saved specs load");
        assert_eq!(back, spec);
    }
});
