#![no_main]

use libfuzzer_sys::fuzz_target;
use timely_core::{Bound, TimeModel};

fuzz_target!(|data: &str| {
    for model in [TimeModel::Discrete, TimeModel::Dense] {
        if let Ok(bound) = Bound::parse(data, model) {
            // Printing and parsing again must give the same value.
            let again = Bound::parse(&bound.to_string(), model).expect("printed bounds parse");
            assert_eq!(again, bound);
            assert!(model.admits_bound(&bound));
        }
    }
});
