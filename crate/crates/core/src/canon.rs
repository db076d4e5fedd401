//! Canonical forms, satisfiability, minimal schedules and tightness witnesses.
//!
//! The canonical form of a constraint is the distance function of its graph:
//! entry `(i, j)` is the tightest upper bound on `t(j) - t(i)` implied by the
//! constraint. Two constraints have the same satisfying schedules exactly when
//! their class matrices agree.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{
    bellman_ford, find_negative_cycle, ConstraintGraph, DetectionMode, DistanceMatrix, Engine,
    NegativeCycleWitness,
};
use crate::numerics::{Bound, Rational, TimeModel};
use crate::spec::{Schedule, TimelySpec};

/// Why a constraint has no satisfying schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnsatReason {
    /// The constraint bounds `t(to) - t(from)` by `-inf`.
    NegInfEntry { from: usize, to: usize },
    NegativeCycle(NegativeCycleWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    model: TimeModel,
    actions: Vec<String>,
    matrix: DistanceMatrix,
    class_matrix: DistanceMatrix,
    reason: Option<UnsatReason>,
}

impl CanonicalForm {
    pub fn model(&self) -> TimeModel {
        self.model
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    /// The distance function of the constraint graph, diagonal included.
    pub fn matrix(&self) -> &DistanceMatrix {
        &self.matrix
    }

    /// `matrix` when satisfiable, all `-inf` otherwise. Every unsatisfiable
    /// constraint over the same actions has the same class matrix.
    pub fn class_matrix(&self) -> &DistanceMatrix {
        &self.class_matrix
    }

    pub fn satisfiable(&self) -> bool {
        self.reason.is_none()
    }

    pub fn reason(&self) -> Option<&UnsatReason> {
        self.reason.as_ref()
    }

    pub fn get(&self, i: usize, j: usize) -> &Bound {
        self.matrix.get(i, j)
    }

    /// The off-diagonal entries below `+inf`, as a spec.
    pub fn to_spec(&self) -> TimelySpec {
        let entries = self
            .matrix
            .iter()
            .filter(|&(i, j, b)| i != j && *b != Bound::PosInf)
            .map(|(i, j, b)| (i, j, b.clone()));
        TimelySpec::from_entries(self.model, self.actions.iter().cloned(), entries)
            .expect("canonical entries come from a valid spec")
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.actions.len() {
            Ok(())
        } else {
            Err(Error::UnknownAction(format!("#{i}")))
        }
    }

    fn require_satisfiable(&self) -> Result<()> {
        if self.satisfiable() {
            Ok(())
        } else {
            Err(Error::Unsatisfiable)
        }
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.require_satisfiable()?;
        if i == j {
            return Err(Error::SameAction(self.actions[i].clone()));
        }
        Ok(())
    }

    fn check_spec(&self, spec: &TimelySpec) -> Result<()> {
        if spec.actions() != self.actions.as_slice() || spec.model() != self.model {
            return Err(Error::DomainMismatch(
                "canonical form was computed for a different spec".into(),
            ));
        }
        Ok(())
    }
}

/// Canonicalises with the automatically selected engine.
pub fn canonicalise(spec: &TimelySpec) -> CanonicalForm {
    canonicalise_with(spec, Engine::Auto)
}

pub fn canonicalise_with(spec: &TimelySpec, engine: Engine) -> CanonicalForm {
    let n = spec.action_count();
    let (graph, neg_inf) = ConstraintGraph::finite_part(spec);
    let mut matrix = engine.all_pairs(&graph);
    if !neg_inf.is_empty() {
        mark_neg_inf_edges(&mut matrix, &graph, &neg_inf);
    }

    let reason = if let Some(&(from, to)) = neg_inf.first() {
        Some(UnsatReason::NegInfEntry { from, to })
    } else if (0..n).any(|k| *matrix.get(k, k) < Bound::ZERO) {
        let witness = find_negative_cycle(&graph).expect("negative diagonal implies a cycle");
        Some(UnsatReason::NegativeCycle(witness))
    } else {
        None
    };
    let class_matrix = if reason.is_none() {
        matrix.clone()
    } else {
        DistanceMatrix::filled(n, Bound::NegInf)
    };
    CanonicalForm {
        model: spec.model(),
        actions: spec.actions().to_vec(),
        matrix,
        class_matrix,
        reason,
    }
}

/// A `-inf` edge `p -> q` makes every pair `(i, j)` with `i ~> p` and
/// `q ~> j` (in the full graph, `-inf` edges included) distance `-inf`.
fn mark_neg_inf_edges(matrix: &mut DistanceMatrix, graph: &ConstraintGraph, neg_inf: &[(usize, usize)]) {
    let n = graph.vertex_count();
    let mut successors: Vec<Vec<usize>> = (0..n)
        .map(|u| graph.outgoing(u).map(|e| e.to).collect())
        .collect();
    for &(p, q) in neg_inf {
        successors[p].push(q);
    }
    let reach: Vec<Vec<bool>> = (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &successors[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            seen
        })
        .collect();
    for &(p, q) in neg_inf {
        for i in (0..n).filter(|&i| reach[i][p]) {
            for j in (0..n).filter(|&j| reach[q][j]) {
                matrix.set(i, j, Bound::NegInf);
            }
        }
    }
}

/// `d_i = -min_j matrix(i, j)`: the earliest time action `i` can happen.
fn earliest_times(form: &CanonicalForm) -> Vec<Rational> {
    form.matrix
        .rows()
        .map(|row| {
            let min = row.iter().min().expect("rows contain the diagonal");
            -min.as_finite().expect("satisfiable rows are bounded below")
        })
        .collect()
}

/// The coordinatewise-least satisfying schedule.
pub fn minimal_schedule(form: &CanonicalForm, spec: &TimelySpec) -> Result<Schedule> {
    form.check_spec(spec)?;
    form.require_satisfiable()?;
    Schedule::new(spec, earliest_times(form))
}

/// The tightest bound the constraint places on `t(j) - t(i)`. When finite it
/// is attained by some satisfying schedule (see [`tight_witness`]).
pub fn sup_difference(form: &CanonicalForm, i: usize, j: usize) -> Result<Bound> {
    form.check_pair(i, j)?;
    Ok(form.matrix.get(i, j).clone())
}

/// Replaces every unconstrained pair `(p, q)` of `spec` by the bound
/// `lower[q]`, making the constraint graph complete.
///
/// When every `-lower[k]` is a lower bound on row `k` of the canonical form,
/// the result is still satisfiable and its canonical rows stay above
/// `-lower[k]`.
pub fn fill_unbounded(spec: &TimelySpec, lower: &[Rational]) -> TimelySpec {
    let n = spec.action_count();
    assert_eq!(lower.len(), n);
    let mut filled = spec.clone();
    for p in 0..n {
        for q in (0..n).filter(|&q| q != p) {
            if spec.bound(p, q) == Bound::PosInf {
                filled
                    .constrain_index(p, q, Bound::Finite(lower[q].clone()))
                    .expect("filled bounds stay in the time model");
            }
        }
    }
    filled
}

/// Row `i` of the canonical form of `fill_unbounded(spec, lower)`.
fn filled_row(spec: &TimelySpec, lower: &[Rational], i: usize) -> Vec<Rational> {
    let filled = fill_unbounded(spec, lower);
    let (graph, _) = ConstraintGraph::finite_part(&filled);
    let row = bellman_ford(&graph, i, DetectionMode::Reachable)
        .expect("filling with row lower bounds creates no negative cycle");
    row.into_iter()
        .map(|b| b.as_finite().cloned().expect("filled graph is complete"))
        .collect()
}

/// A satisfying schedule with `t(j) - t(i) >= target`, where `target` is
/// either the (finite) canonical entry or any value when the entry is `+inf`.
fn attain(spec: &TimelySpec, form: &CanonicalForm, i: usize, j: usize, target: &Rational) -> Result<Schedule> {
    let mut lower = earliest_times(form);
    let mut row = filled_row(spec, &lower, i);
    if row[j] < *target {
        // Raising every lower bound by the shortfall lengthens each path that
        // uses a filled edge by at least that much.
        let shortfall = target - &row[j];
        lower = lower.iter().map(|d| d + &shortfall).collect();
        row = filled_row(spec, &lower, i);
    }
    debug_assert!(row[j] >= *target);
    let times = row.iter().map(|r| &lower[i] + r).collect();
    Schedule::new(spec, times)
}

/// A satisfying schedule with `t(j) - t(i)` equal to the finite canonical
/// entry `(i, j)`.
pub fn tight_witness(spec: &TimelySpec, form: &CanonicalForm, i: usize, j: usize) -> Result<Schedule> {
    form.check_spec(spec)?;
    form.check_pair(i, j)?;
    match form.matrix.get(i, j) {
        Bound::Finite(target) => attain(spec, form, i, j, target),
        _ => Err(Error::InfiniteEntry {
            from: form.actions[i].clone(),
            to: form.actions[j].clone(),
        }),
    }
}

/// A satisfying schedule with `t(j) - t(i) >= at_least`, for a pair the
/// constraint leaves unbounded. Negative `at_least` is treated as 0.
pub fn unbounded_witness(
    spec: &TimelySpec,
    form: &CanonicalForm,
    i: usize,
    j: usize,
    at_least: &Rational,
) -> Result<Schedule> {
    form.check_spec(spec)?;
    form.check_pair(i, j)?;
    match form.matrix.get(i, j) {
        Bound::PosInf => {
            let target = if at_least.is_negative() { Rational::ZERO } else { at_least.clone() };
            attain(spec, form, i, j, &target)
        }
        other => Err(Error::FiniteEntry {
            from: form.actions[i].clone(),
            to: form.actions[j].clone(),
            value: other.to_string(),
        }),
    }
}
