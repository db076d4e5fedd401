//! Brute-force ground truth for small instances.
//!
//! Schedules are enumerated on a grid inside the box `[0, B]^n`, checking each
//! constraint straight from its definition. Nothing here uses graph
//! algorithms, so these results can cross-check the solver.
//!
//! With `B` at least the sum of the absolute values of all finite bounds, the
//! minimal satisfying schedule (if any) lies inside the box: each of its times
//! is minus a shortest-path distance over at most `n - 1` edges.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numerics::{Bound, Rational, TimeModel};
use crate::spec::{Schedule, TimelySpec};

pub const MAX_ACTIONS: usize = 5;

/// Upper limit on grid points visited by one enumeration.
pub const MAX_CANDIDATES: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationBox {
    /// Largest time tried for every action.
    pub upper: Rational,
    /// Grid spacing; 1 under the discrete model.
    pub step: Rational,
}

impl EnumerationBox {
    /// `B` = sum of |finite bounds|; step = 1 / (common denominator) for dense
    /// specs, so every bound and every sum of bounds is on the grid.
    pub fn for_spec(spec: &TimelySpec) -> Self {
        Self::covering(&[spec])
    }

    /// The smallest derived box that is valid for every spec in `specs`.
    pub fn covering(specs: &[&TimelySpec]) -> Self {
        let mut upper = Rational::ZERO;
        let mut denominator = BigInt::from(1);
        for spec in specs {
            let finite: Vec<&Rational> = spec.entries().filter_map(|(_, _, b)| b.as_finite()).collect();
            let sum = finite.iter().fold(Rational::ZERO, |acc, v| &acc + &v.abs());
            upper = upper.max(sum);
            if spec.model() == TimeModel::Dense {
                let d = Rational::common_denominator(finite.iter().copied());
                denominator = num_integer::Integer::lcm(&denominator, &d);
            }
        }
        let step = Rational::new(BigInt::from(1), denominator).expect("lcm is positive");
        EnumerationBox { upper, step }
    }

    /// The same box with `extra` added to the upper limit.
    pub fn enlarged(&self, extra: &Rational) -> Self {
        EnumerationBox {
            upper: &self.upper + &extra.abs(),
            step: self.step.clone(),
        }
    }

    /// Grid values per axis: `0, step, ..., floor(upper / step) * step`.
    pub fn axis(&self) -> Result<Vec<Rational>> {
        if !self.step.is_positive() || self.upper.is_negative() {
            return Err(Error::TooLarge("box needs a positive step and nonnegative limit".into()));
        }
        let ratio = (self.upper.to_big() / self.step.to_big()).floor().to_integer();
        let count = ratio
            .to_u64()
            .filter(|&c| c < MAX_CANDIDATES)
            .ok_or_else(|| Error::TooLarge(format!("{ratio} grid points per axis")))?;
        Ok((0..=count)
            .map(|k| &Rational::from_i64(k as i64) * &self.step)
            .collect())
    }
}

/// Calls `visit` with every grid schedule in the box that satisfies `spec`,
/// in lexicographic order, until it returns `Break`.
///
/// The search assigns actions in declaration order and abandons a partial
/// assignment as soon as a constraint between assigned actions fails. The
/// number of grid points tried is capped at [`MAX_CANDIDATES`].
pub fn for_each_satisfier(
    spec: &TimelySpec,
    bounds_box: &EnumerationBox,
    mut visit: impl FnMut(&[Rational]) -> ControlFlow<()>,
) -> Result<()> {
    let n = spec.action_count();
    if n > MAX_ACTIONS {
        return Err(Error::TooLarge(format!("{n} actions (limit {MAX_ACTIONS})")));
    }
    let axis = bounds_box.axis()?;
    let bounds: Vec<Vec<Bound>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Bound::PosInf } else { spec.bound(i, j) }).collect())
        .collect();
    let mut search = Search {
        bounds: &bounds,
        axis: &axis,
        assigned: Vec::with_capacity(n),
        tried: 0,
    };
    match search.descend(&mut visit) {
        Err(e) => Err(e),
        Ok(_) => Ok(()),
    }
}

struct Search<'a> {
    bounds: &'a [Vec<Bound>],
    axis: &'a [Rational],
    assigned: Vec<Rational>,
    tried: u64,
}

impl Search<'_> {
    fn consistent(&self, value: &Rational) -> bool {
        let k = self.assigned.len();
        self.assigned.iter().enumerate().all(|(p, tp)| {
            // t(k) - t(p) <= bound(p, k) and t(p) - t(k) <= bound(k, p)
            Bound::Finite(value - tp) <= self.bounds[p][k]
                && Bound::Finite(tp - value) <= self.bounds[k][p]
        })
    }

    fn descend(&mut self, visit: &mut impl FnMut(&[Rational]) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        if self.assigned.len() == self.bounds.len() {
            return Ok(visit(&self.assigned));
        }
        for value in self.axis {
            self.tried += 1;
            if self.tried > MAX_CANDIDATES {
                return Err(Error::TooLarge(format!(
                    "more than {MAX_CANDIDATES} candidate points"
                )));
            }
            if !self.consistent(value) {
                continue;
            }
            self.assigned.push(value.clone());
            let flow = self.descend(visit)?;
            self.assigned.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Every grid schedule in the box satisfying `spec`, in lexicographic order.
pub fn enumerate_satisfiers(spec: &TimelySpec, bounds_box: &EnumerationBox) -> Result<Vec<Schedule>> {
    let mut out = Vec::new();
    for_each_satisfier(spec, bounds_box, |times| {
        out.push(Schedule::new(spec, times.to_vec()).expect("grid points are valid times"));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Satisfiability decided by search in the derived box.
pub fn oracle_satisfiable(spec: &TimelySpec) -> Result<bool> {
    let mut found = false;
    for_each_satisfier(spec, &EnumerationBox::for_spec(spec), |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// The coordinatewise minimum of all satisfiers in the derived box, or `None`
/// if there are none.
pub fn oracle_minimum(spec: &TimelySpec) -> Result<Option<Vec<Rational>>> {
    let mut min: Option<Vec<Rational>> = None;
    for_each_satisfier(spec, &EnumerationBox::for_spec(spec), |times| {
        match &mut min {
            None => min = Some(times.to_vec()),
            Some(m) => {
                for (slot, t) in m.iter_mut().zip(times) {
                    if t < slot {
                        *slot = t.clone();
                    }
                }
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(min)
}

/// The largest `t(j) - t(i)` over satisfiers in `bounds_box`.
pub fn oracle_max_difference(
    spec: &TimelySpec,
    bounds_box: &EnumerationBox,
    i: usize,
    j: usize,
) -> Result<Option<Rational>> {
    let mut best: Option<Rational> = None;
    for_each_satisfier(spec, bounds_box, |times| {
        let diff = &times[j] - &times[i];
        if best.as_ref().map_or(true, |b| diff > *b) {
            best = Some(diff);
        }
        ControlFlow::Continue(())
    })?;
    Ok(best)
}
