//! Solver for timely constraints: systems of upper bounds `t(j) - t(i) <= b`
//! on the times of pairs of distinct actions.
//!
//! ```
//! use timely_core::{canonicalise, minimal_schedule, Bound, TimeModel, TimelySpec};
//!
//! let mut spec = TimelySpec::new(TimeModel::Discrete, ["a", "b", "c"]).unwrap();
//! spec.constrain("a", "b", Bound::from(5)).unwrap();
//! spec.constrain("b", "a", Bound::from(-3)).unwrap();
//! spec.constrain("b", "c", Bound::from(2)).unwrap();
//! spec.constrain("c", "a", Bound::from(0)).unwrap();
//!
//! let form = canonicalise(&spec);
//! assert!(form.satisfiable());
//! assert_eq!(form.matrix()[(0, 2)], Bound::from(7));
//!
//! let t = minimal_schedule(&form, &spec).unwrap();
//! assert_eq!(t.get("b"), Some(&3.into()));
//! ```

pub mod canon;
pub mod error;
pub mod graph;
pub mod numerics;
pub mod oracle;
pub mod order;
pub mod spec;

pub use canon::{
    canonicalise, canonicalise_with, fill_unbounded, minimal_schedule, sup_difference,
    tight_witness, unbounded_witness, CanonicalForm, UnsatReason,
};
pub use error::{Error, Result};
pub use graph::{
    bellman_ford, build_graph, find_negative_cycle, floyd_warshall, sparse_apsp, ConstraintGraph,
    DetectionMode, DistanceMatrix, Engine, NegativeCycleWitness,
};
pub use numerics::{Bound, Rational, TimeModel};
pub use order::{compare, equivalent, subsumption_witness, ComparisonVerdict, Relation};
pub use spec::{load_schedule, load_spec, Schedule, TimelySpec, Violation};
