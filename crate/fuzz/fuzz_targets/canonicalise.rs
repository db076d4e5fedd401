//! Parsed specs through the whole solver: both engines must agree, and a
//! satisfiable result must come with a schedule that checks out.

#![no_main]

use libfuzzer_sys::fuzz_target;
use timely_core::{canonicalise_with, load_spec, minimal_schedule, Engine};

fuzz_target!(|data: &str| {
    let Ok(spec) = load_spec(data) else {
        return;
    };
    if spec.action_count() > 48 {
        return;
    }
    let dense = canonicalise_with(&spec, Engine::Dense);
    let sparse = canonicalise_with(&spec, Engine::Sparse);
    assert_eq!(dense, sparse);
    if dense.satisfiable() {
        let t = minimal_schedule(&dense, &spec).unwrap();
        assert!(spec.is_satisfied_by(&t).unwrap());
    }
});
