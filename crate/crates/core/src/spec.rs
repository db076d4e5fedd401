//! Timely specifications, schedules, and their JSON documents.
//!
//! A [`TimelySpec`] is a finite, ordered set of named actions together with a
//! sparse map of upper bounds: an entry `(i, j) -> b` asserts
//! `t(j) - t(i) <= b`. Missing pairs are unconstrained (`+inf`).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Bound, Rational, TimeModel};

#[derive(Clone, PartialEq, Eq)]
pub struct TimelySpec {
    model: TimeModel,
    actions: Vec<String>,
    index: HashMap<String, usize>,
    delta: BTreeMap<(usize, usize), Bound>,
}

impl TimelySpec {
    /// A spec over `actions` with no constraints.
    pub fn new<S: Into<String>>(
        model: TimeModel,
        actions: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let actions: Vec<String> = actions.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(actions.len());
        for (i, name) in actions.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyActionName);
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateAction(name.clone()));
            }
        }
        Ok(TimelySpec {
            model,
            actions,
            index,
            delta: BTreeMap::new(),
        })
    }

    /// Builds a spec from index-keyed entries, merging duplicates by minimum.
    pub fn from_entries<S: Into<String>>(
        model: TimeModel,
        actions: impl IntoIterator<Item = S>,
        entries: impl IntoIterator<Item = (usize, usize, Bound)>,
    ) -> Result<Self> {
        let mut spec = TimelySpec::new(model, actions)?;
        for (i, j, bound) in entries {
            spec.constrain_index(i, j, bound)?;
        }
        Ok(spec)
    }

    pub fn model(&self) -> TimeModel {
        self.model
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn action_count(&self) -> usize {
        self.actions.len()
    }

    pub fn action(&self, index: usize) -> &str {
        &self.actions[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownAction(name.to_owned()))
    }

    /// Adds `t(to) - t(from) <= bound`, keeping the tighter of this and any
    /// existing bound on the same pair.
    pub fn constrain(&mut self, from: &str, to: &str, bound: Bound) -> Result<()> {
        let i = self.index_of(from)?;
        let j = self.index_of(to)?;
        self.constrain_index(i, j, bound)
    }

    pub fn constrain_index(&mut self, from: usize, to: usize, bound: Bound) -> Result<()> {
        let n = self.actions.len();
        if from >= n || to >= n {
            return Err(Error::UnknownAction(format!("#{}", from.max(to))));
        }
        if from == to {
            return Err(Error::SelfConstraint(self.actions[from].clone()));
        }
        self.model.check(&bound)?;
        if bound == Bound::PosInf {
            return Ok(());
        }
        match self.delta.get_mut(&(from, to)) {
            Some(existing) if bound < *existing => *existing = bound,
            Some(_) => {}
            None => {
                self.delta.insert((from, to), bound);
            }
        }
        Ok(())
    }

    /// The bound on `t(j) - t(i)`; `+inf` when the pair is unconstrained.
    pub fn bound(&self, i: usize, j: usize) -> Bound {
        self.delta.get(&(i, j)).cloned().unwrap_or(Bound::PosInf)
    }

    /// Stored entries in lexicographic order of `(from, to)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Bound)> + '_ {
        self.delta.iter().map(|(&(i, j), b)| (i, j, b))
    }

    pub fn entry_count(&self) -> usize {
        self.delta.len()
    }

    /// Whether both specs range over the same actions in the same order.
    pub fn same_domain(&self, other: &TimelySpec) -> bool {
        self.actions == other.actions
    }

    /// Pointwise minimum: the constraint satisfied exactly by the schedules
    /// satisfying both inputs.
    pub fn conjoin(&self, other: &TimelySpec) -> Result<TimelySpec> {
        if self.model != other.model {
            return Err(Error::ModelMismatch {
                value: other.model.to_string(),
                model: self.model,
            });
        }
        if !self.same_domain(other) {
            return Err(Error::DomainMismatch(
                "conjoined specs must declare the same actions in the same order".into(),
            ));
        }
        let mut out = self.clone();
        for (i, j, b) in other.entries() {
            out.constrain_index(i, j, b.clone())?;
        }
        Ok(out)
    }

    /// Every violated constraint of `schedule`, in lexicographic order of the
    /// action indices. Empty iff the schedule satisfies the spec.
    pub fn check_schedule(&self, schedule: &Schedule) -> Result<Vec<Violation>> {
        let times = schedule.aligned_to(self)?;
        let mut violations = Vec::new();
        for (i, j, bound) in self.entries() {
            let actual = &times[j] - &times[i];
            if Bound::Finite(actual.clone()) > *bound {
                violations.push(Violation {
                    from: self.actions[i].clone(),
                    to: self.actions[j].clone(),
                    bound: bound.clone(),
                    actual,
                });
            }
        }
        Ok(violations)
    }

    pub fn is_satisfied_by(&self, schedule: &Schedule) -> Result<bool> {
        Ok(self.check_schedule(schedule)?.is_empty())
    }

    pub fn to_document(&self) -> SpecDocument {
        SpecDocument {
            time_model: self.model,
            actions: self.actions.clone(),
            constraints: self
                .entries()
                .map(|(i, j, b)| ConstraintDocument {
                    from: self.actions[i].clone(),
                    to: self.actions[j].clone(),
                    bound: BoundLiteral::Text(b.to_string()),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("spec documents serialize")
    }
}

impl fmt::Debug for TimelySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .entries()
            .map(|(i, j, b)| format!("{}->{}: {b}", self.actions[i], self.actions[j]))
            .collect();
        f.debug_struct("TimelySpec")
            .field("model", &self.model)
            .field("actions", &self.actions)
            .field("delta", &entries)
            .finish()
    }
}

/// Parses and validates a spec document.
pub fn load_spec(text: &str) -> Result<TimelySpec> {
    SpecDocument::from_json(text)?.into_spec()
}

/// A single failed constraint: `actual = t(to) - t(from)` exceeds `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub from: String,
    pub to: String,
    pub bound: Bound,
    pub actual: Rational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}→{}: t({}) - t({}) = {} > {}",
            self.from, self.to, self.to, self.from, self.actual, self.bound
        )
    }
}

/// An assignment of a nonnegative time to every action.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Schedule {
    actions: Vec<String>,
    times: Vec<Rational>,
}

impl Schedule {
    /// A schedule over the actions of `spec`, `times` given in declaration
    /// order.
    pub fn new(spec: &TimelySpec, times: Vec<Rational>) -> Result<Self> {
        if times.len() != spec.action_count() {
            return Err(Error::DomainMismatch(format!(
                "schedule has {} times for {} actions",
                times.len(),
                spec.action_count()
            )));
        }
        for (name, t) in spec.actions.iter().zip(&times) {
            check_time(spec.model, name, &Bound::Finite(t.clone()))?;
        }
        Ok(Schedule {
            actions: spec.actions.clone(),
            times,
        })
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn times(&self) -> &[Rational] {
        &self.times
    }

    pub fn get(&self, action: &str) -> Option<&Rational> {
        self.actions
            .iter()
            .position(|a| a == action)
            .map(|i| &self.times[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.actions.iter().map(String::as_str).zip(&self.times)
    }

    /// Every time shifted by `offset`, which must keep all times nonnegative.
    pub fn shifted(&self, offset: &Rational) -> Option<Schedule> {
        let times: Vec<Rational> = self.times.iter().map(|t| t + offset).collect();
        if times.iter().any(Rational::is_negative) {
            return None;
        }
        Some(Schedule {
            actions: self.actions.clone(),
            times,
        })
    }

    /// Times reordered to `spec`'s declaration order.
    fn aligned_to(&self, spec: &TimelySpec) -> Result<Vec<Rational>> {
        if self.actions == spec.actions {
            return Ok(self.times.clone());
        }
        let mine: HashSet<&str> = self.actions.iter().map(String::as_str).collect();
        let theirs: HashSet<&str> = spec.actions.iter().map(String::as_str).collect();
        if mine != theirs || self.actions.len() != spec.actions.len() {
            return Err(Error::DomainMismatch(
                "schedule and spec range over different actions".into(),
            ));
        }
        Ok(spec
            .actions
            .iter()
            .map(|a| self.get(a).expect("same action set").clone())
            .collect())
    }

    pub fn to_document(&self) -> ScheduleDocument {
        ScheduleDocument {
            times: self
                .iter()
                .map(|(a, t)| (a.to_owned(), serde_json::Value::String(t.to_string())))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("schedule documents serialize")
    }
}

impl fmt::Debug for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

fn check_time(model: TimeModel, action: &str, value: &Bound) -> Result<()> {
    match value {
        Bound::Finite(v) if !v.is_negative() => model.check(value),
        _ => Err(Error::InvalidTime {
            action: action.to_owned(),
            value: value.to_string(),
        }),
    }
}

/// Parses a schedule document and aligns it to `spec`'s actions.
pub fn load_schedule(text: &str, spec: &TimelySpec) -> Result<Schedule> {
    ScheduleDocument::from_json(text)?.into_schedule(spec)
}

/// A bound as written in a document: bound syntax, or a bare JSON integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoundLiteral {
    Text(String),
    Integer(i64),
}

impl BoundLiteral {
    pub fn parse(&self, model: TimeModel) -> Result<Bound> {
        match self {
            BoundLiteral::Text(text) => Bound::parse(text, model),
            BoundLiteral::Integer(v) => Ok(Bound::from(*v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintDocument {
    pub from: String,
    pub to: String,
    pub bound: BoundLiteral,
}

/// The on-disk spec format:
///
/// ```json
/// { "time_model": "discrete",
///   "actions": ["a", "b"],
///   "constraints": [ { "from": "a", "to": "b", "bound": "5" } ] }
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDocument {
    pub time_model: TimeModel,
    pub actions: Vec<String>,
    #[serde(default)]
    pub constraints: Vec<ConstraintDocument>,
}

impl SpecDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn into_spec(self) -> Result<TimelySpec> {
        let mut spec = TimelySpec::new(self.time_model, self.actions)?;
        for c in &self.constraints {
            let bound = c.bound.parse(spec.model)?;
            spec.constrain(&c.from, &c.to, bound)?;
        }
        Ok(spec)
    }
}

/// `{ "times": { "a": "0", "b": "3" } }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleDocument {
    pub times: serde_json::Map<String, serde_json::Value>,
}

impl ScheduleDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn into_schedule(self, spec: &TimelySpec) -> Result<Schedule> {
        if self.times.len() != spec.action_count() {
            return Err(Error::DomainMismatch(format!(
                "schedule lists {} actions, spec declares {}",
                self.times.len(),
                spec.action_count()
            )));
        }
        let mut times = vec![None; spec.action_count()];
        for (name, value) in self.times {
            let i = spec
                .index_of(&name)
                .map_err(|_| Error::DomainMismatch(format!("schedule names unknown action `{name}`")))?;
            let literal: BoundLiteral =
                serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
            let bound = literal.parse(spec.model)?;
            check_time(spec.model, &name, &bound)?;
            times[i] = bound.as_finite().cloned();
        }
        let times = times
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::DomainMismatch("schedule is missing actions".into()))?;
        Schedule::new(spec, times)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s1() -> TimelySpec {
        TimelySpec::from_entries(
            TimeModel::Discrete,
            ["a", "b", "c"],
            [
                (0, 1, Bound::from(5)),
                (1, 0, Bound::from(-3)),
                (1, 2, Bound::from(2)),
                (2, 0, Bound::from(0)),
            ],
        )
        .unwrap()
    }

    fn schedule(spec: &TimelySpec, times: &[i64]) -> Schedule {
        Schedule::new(spec, times.iter().map(|&t| Rational::from_i64(t)).collect()).unwrap()
    }

    #[test]
    fn load_two_constraints() {
        let spec = load_spec(
            r#"{"time_model":"discrete","actions":["a","b"],
                "constraints":[{"from":"a","to":"b","bound":"5"},{"from":"b","to":"a","bound":"-3"}]}"#,
        )
        .unwrap();
        assert_eq!(spec.entry_count(), 2);
        assert_eq!(spec.bound(0, 1), Bound::from(5));
        assert_eq!(spec.bound(1, 0), Bound::from(-3));
    }

    #[test]
    fn duplicate_pairs_merge_by_minimum() {
        let spec = load_spec(
            r#"{"time_model":"discrete","actions":["a","b"],
                "constraints":[{"from":"a","to":"b","bound":"5"},{"from":"a","to":"b","bound":2}]}"#,
        )
        .unwrap();
        assert_eq!(spec.entry_count(), 1);
        assert_eq!(spec.bound(0, 1), Bound::from(2));
    }

    #[test]
    fn load_errors() {
        let self_pair = r#"{"time_model":"discrete","actions":["a","b"],
            "constraints":[{"from":"a","to":"a","bound":"1"}]}"#;
        assert_eq!(load_spec(self_pair), Err(Error::SelfConstraint("a".into())));

        let unknown = r#"{"time_model":"discrete","actions":["a"],
            "constraints":[{"from":"a","to":"z","bound":"1"}]}"#;
        assert_eq!(load_spec(unknown), Err(Error::UnknownAction("z".into())));

        let rational = r#"{"time_model":"discrete","actions":["a","b"],
            "constraints":[{"from":"a","to":"b","bound":"1/2"}]}"#;
        assert!(matches!(load_spec(rational), Err(Error::ModelMismatch { .. })));

        let dup = r#"{"time_model":"dense","actions":["a","a"]}"#;
        assert_eq!(load_spec(dup), Err(Error::DuplicateAction("a".into())));

        assert!(matches!(load_spec("{"), Err(Error::Parse(_))));
        assert!(matches!(
            load_spec(r#"{"time_model":"weekly","actions":[]}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn explicit_inf_is_dropped_and_neg_inf_kept() {
        let spec = load_spec(
            r#"{"time_model":"dense","actions":["a","b"],
                "constraints":[{"from":"a","to":"b","bound":"+inf"},{"from":"b","to":"a","bound":"-inf"}]}"#,
        )
        .unwrap();
        assert_eq!(spec.entry_count(), 1);
        assert_eq!(spec.bound(1, 0), Bound::NegInf);
    }

    #[test]
    fn check_schedule_examples() {
        let spec = s1();
        assert!(spec.check_schedule(&schedule(&spec, &[0, 3, 0])).unwrap().is_empty());
        assert_eq!(
            spec.check_schedule(&schedule(&spec, &[0, 2, 0])).unwrap(),
            vec![Violation {
                from: "b".into(),
                to: "a".into(),
                bound: Bound::from(-3),
                actual: Rational::from_i64(-2),
            }]
        );
        let free = TimelySpec::new(TimeModel::Discrete, ["a", "b", "c"]).unwrap();
        assert!(free.check_schedule(&schedule(&free, &[9, 0, 4])).unwrap().is_empty());
    }

    #[test]
    fn check_schedule_rejects_other_domains() {
        let spec = s1();
        let other = TimelySpec::new(TimeModel::Discrete, ["a", "b", "d"]).unwrap();
        let t = schedule(&other, &[0, 0, 0]);
        assert!(matches!(spec.check_schedule(&t), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn check_schedule_aligns_by_name() {
        let spec = s1();
        let reordered = TimelySpec::new(TimeModel::Discrete, ["c", "a", "b"]).unwrap();
        let t = schedule(&reordered, &[0, 0, 3]);
        assert!(spec.check_schedule(&t).unwrap().is_empty());
    }

    #[test]
    fn neg_inf_entry_is_always_violated() {
        let spec = TimelySpec::from_entries(
            TimeModel::Discrete,
            ["a", "b"],
            [(0, 1, Bound::NegInf)],
        )
        .unwrap();
        assert_eq!(spec.check_schedule(&schedule(&spec, &[0, 0])).unwrap().len(), 1);
    }

    #[test]
    fn conjoin_examples() {
        let actions = ["a", "b"];
        let s = TimelySpec::from_entries(TimeModel::Discrete, actions, [(0, 1, Bound::from(5))])
            .unwrap();
        let t = TimelySpec::from_entries(
            TimeModel::Discrete,
            actions,
            [(0, 1, Bound::from(2)), (1, 0, Bound::ZERO)],
        )
        .unwrap();
        let both = s.conjoin(&t).unwrap();
        assert_eq!(both.bound(0, 1), Bound::from(2));
        assert_eq!(both.bound(1, 0), Bound::ZERO);
        assert_eq!(both.entry_count(), 2);

        let empty = TimelySpec::new(TimeModel::Discrete, actions).unwrap();
        assert_eq!(s.conjoin(&empty).unwrap(), s);

        let dense = TimelySpec::new(TimeModel::Dense, actions).unwrap();
        assert!(matches!(s.conjoin(&dense), Err(Error::ModelMismatch { .. })));
        let wider = TimelySpec::new(TimeModel::Discrete, ["a", "b", "c"]).unwrap();
        assert!(matches!(s.conjoin(&wider), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn schedule_documents() {
        let spec = s1();
        let t = load_schedule(r#"{"times":{"c":"0","b":3,"a":"0"}}"#, &spec).unwrap();
        assert_eq!(t.times(), &[Rational::ZERO, Rational::from_i64(3), Rational::ZERO]);
        assert_eq!(load_schedule(&t.to_json(), &spec).unwrap(), t);

        for bad in [
            r#"{"times":{"a":"0","b":"3"}}"#,
            r#"{"times":{"a":"0","b":"3","z":"0"}}"#,
        ] {
            assert!(matches!(load_schedule(bad, &spec), Err(Error::DomainMismatch(_))), "{bad}");
        }
        for bad in [
            r#"{"times":{"a":"-1","b":"3","c":"0"}}"#,
            r#"{"times":{"a":"inf","b":"3","c":"0"}}"#,
        ] {
            assert!(matches!(load_schedule(bad, &spec), Err(Error::InvalidTime { .. })), "{bad}");
        }
        assert!(matches!(
            load_schedule(r#"{"times":{"a":"1/2","b":"3","c":"0"}}"#, &spec),
            Err(Error::ModelMismatch { .. })
        ));
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = s1();
        assert_eq!(load_spec(&spec.to_json()).unwrap(), spec);
    }
}
