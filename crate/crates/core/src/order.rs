//! Comparing timely constraints by strictness.
//!
//! Pointwise order on class matrices coincides with inclusion of the sets of
//! satisfying schedules, so comparison is a matrix scan and every strict
//! failure of inclusion can be demonstrated by a concrete schedule.

use crate::canon::{tight_witness, unbounded_witness, CanonicalForm};
use crate::error::{Error, Result};
use crate::numerics::{Bound, Rational};
use crate::spec::{Schedule, TimelySpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// The first constraint admits strictly fewer schedules.
    FirstTighter,
    SecondTighter,
    Incomparable,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Equal => "Equal",
            Relation::FirstTighter => "FirstTighter",
            Relation::SecondTighter => "SecondTighter",
            Relation::Incomparable => "Incomparable",
        }
    }

    /// Whether every schedule satisfying the first also satisfies the second.
    pub fn first_contained(self) -> bool {
        matches!(self, Relation::Equal | Relation::FirstTighter)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonVerdict {
    pub relation: Relation,
    /// Smallest entry where the first class matrix exceeds the second.
    pub first_exceeds: Option<(usize, usize)>,
    /// Smallest entry where the second class matrix exceeds the first.
    pub second_exceeds: Option<(usize, usize)>,
}

fn check_domains(f1: &CanonicalForm, f2: &CanonicalForm) -> Result<()> {
    if f1.actions() != f2.actions() || f1.model() != f2.model() {
        return Err(Error::DomainMismatch(
            "compared constraints must range over the same actions and time model".into(),
        ));
    }
    Ok(())
}

pub fn compare(f1: &CanonicalForm, f2: &CanonicalForm) -> Result<ComparisonVerdict> {
    check_domains(f1, f2)?;
    let (m1, m2) = (f1.class_matrix(), f2.class_matrix());
    let mut first_exceeds = None;
    let mut second_exceeds = None;
    for ((i, j, a), (_, _, b)) in m1.iter().zip(m2.iter()) {
        if first_exceeds.is_none() && a > b {
            first_exceeds = Some((i, j));
        }
        if second_exceeds.is_none() && b > a {
            second_exceeds = Some((i, j));
        }
        if first_exceeds.is_some() && second_exceeds.is_some() {
            break;
        }
    }
    let relation = match (first_exceeds, second_exceeds) {
        (None, None) => Relation::Equal,
        (None, Some(_)) => Relation::FirstTighter,
        (Some(_), None) => Relation::SecondTighter,
        (Some(_), Some(_)) => Relation::Incomparable,
    };
    Ok(ComparisonVerdict {
        relation,
        first_exceeds,
        second_exceeds,
    })
}

/// Whether both constraints admit exactly the same schedules.
pub fn equivalent(f1: &CanonicalForm, f2: &CanonicalForm) -> Result<bool> {
    Ok(compare(f1, f2)?.relation == Relation::Equal)
}

/// A schedule satisfying the first constraint but not the second, or `None`
/// when every schedule of the first satisfies the second.
///
/// `spec1` must be the (satisfiable) constraint `f1` was computed from.
pub fn subsumption_witness(
    spec1: &TimelySpec,
    f1: &CanonicalForm,
    f2: &CanonicalForm,
) -> Result<Option<Schedule>> {
    check_domains(f1, f2)?;
    if !f1.satisfiable() {
        return Err(Error::Unsatisfiable);
    }
    let Some((i, j)) = compare(f1, f2)?.first_exceeds else {
        return Ok(None);
    };
    if i == j {
        // Only an unsatisfiable second constraint has a diagonal below 0, and
        // then any schedule of the first separates them.
        return crate::canon::minimal_schedule(f1, spec1).map(Some);
    }
    let witness = match (f1.get(i, j), f2.class_matrix().get(i, j)) {
        (Bound::Finite(_), _) => tight_witness(spec1, f1, i, j)?,
        (_, Bound::Finite(limit)) => {
            let at_least = limit + &Rational::ONE;
            unbounded_witness(spec1, f1, i, j, &at_least)?
        }
        _ => unbounded_witness(spec1, f1, i, j, &Rational::ZERO)?,
    };
    Ok(Some(witness))
}
