//! Landmark extraction: five algorithms over a shared verification oracle,
//! plus the landmark uniqueness computation used by the recognition
//! heuristics.
//!
//! All extractors agree on the contract: the goal must be delete-relaxed
//! reachable (otherwise [`ExtractError::UnsolvableInstance`]), every goal
//! fact appears as a conjunctive landmark, and the output list is ordered by
//! (first relaxed-planning-graph level, canonical fact order) so identical
//! instances produce identical landmark sets.

mod exhaust;
mod hm;
mod hoffmann;
mod rhw;
mod zhu_givan;

pub use exhaust::extract_exhaust;
pub use hm::extract_h1;
pub use hoffmann::extract_hoffmann;
pub use rhw::{extract_rhw, extract_rhw_with, RhwOptions};
pub use zhu_givan::extract_zhu_givan;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graphs::{build_rpg, relaxed_reachable, RelaxedPlanningGraph};
use crate::model::{FactId, FactSet, PlanningInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LandmarkKind {
    Conjunctive,
    Disjunctive,
}

/// A conjunctive or disjunctive fact formula that must hold at some point
/// along every valid plan. Facts are kept sorted, so equal formulas compare
/// equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Landmark {
    pub kind: LandmarkKind,
    pub facts: Vec<FactId>,
}

impl Landmark {
    pub fn conjunctive(fact: FactId) -> Self {
        Landmark { kind: LandmarkKind::Conjunctive, facts: vec![fact] }
    }

    pub fn disjunctive(mut facts: Vec<FactId>) -> Self {
        debug_assert!(!facts.is_empty());
        facts.sort_unstable();
        facts.dedup();
        Landmark { kind: LandmarkKind::Disjunctive, facts }
    }

    /// Line form used by the CLI and golden tests: `conj p(a,b)` /
    /// `disj p(a) r(b)`.
    pub fn to_line(&self, instance: &PlanningInstance) -> String {
        let tag = match self.kind {
            LandmarkKind::Conjunctive => "conj",
            LandmarkKind::Disjunctive => "disj",
        };
        let facts: Vec<String> =
            self.facts.iter().map(|&f| instance.fact(f).to_string()).collect();
        format!("{tag} {}", facts.join(" "))
    }
}

/// Algorithm tag carried by every landmark set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extractor {
    Exhaust,
    /// The m-compilation extractor; this artifact runs m = 1.
    Hm { m: u8 },
    Rhw,
    ZhuGivan,
    Hoffmann,
}

impl Extractor {
    pub const ALL: [Extractor; 5] = [
        Extractor::Exhaust,
        Extractor::Hm { m: 1 },
        Extractor::Rhw,
        Extractor::ZhuGivan,
        Extractor::Hoffmann,
    ];
}

impl fmt::Display for Extractor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extractor::Exhaust => write!(f, "exhaust"),
            Extractor::Hm { m } => write!(f, "h{m}"),
            Extractor::Rhw => write!(f, "rhw"),
            Extractor::ZhuGivan => write!(f, "zhu-givan"),
            Extractor::Hoffmann => write!(f, "hoffmann"),
        }
    }
}

impl FromStr for Extractor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaust" => Ok(Extractor::Exhaust),
            "h1" => Ok(Extractor::Hm { m: 1 }),
            "rhw" => Ok(Extractor::Rhw),
            "zhu-givan" => Ok(Extractor::ZhuGivan),
            "hoffmann" => Ok(Extractor::Hoffmann),
            other => Err(format!(
                "unknown algorithm `{other}` (expected exhaust, h1, rhw, zhu-givan or hoffmann)"
            )),
        }
    }
}

/// Landmarks extracted for one instance goal.
#[derive(Debug, Clone, PartialEq)]
pub struct LandmarkSet {
    pub goal: FactSet,
    pub landmarks: Vec<Landmark>,
    pub extractor: Extractor,
}

impl LandmarkSet {
    pub fn len(&self) -> usize {
        self.landmarks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.landmarks.is_empty()
    }

    pub fn contains(&self, landmark: &Landmark) -> bool {
        self.landmarks.contains(landmark)
    }

    /// Single facts appearing as conjunctive landmarks.
    pub fn conjunctive_facts(&self) -> impl Iterator<Item = FactId> + '_ {
        self.landmarks
            .iter()
            .filter(|l| l.kind == LandmarkKind::Conjunctive)
            .flat_map(|l| l.facts.iter().copied())
    }

    pub fn to_text(&self, instance: &PlanningInstance) -> String {
        let mut out = String::new();
        for lm in &self.landmarks {
            out.push_str(&lm.to_line(instance));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("goal is not delete-relaxed reachable from the initial state")]
    UnsolvableInstance,
}

/// Dispatches to the extractor selected by `algorithm`.
pub fn extract(
    instance: &PlanningInstance,
    algorithm: Extractor,
) -> Result<LandmarkSet, ExtractError> {
    match algorithm {
        Extractor::Exhaust => extract_exhaust(instance),
        Extractor::Hm { m: 1 } => extract_h1(instance),
        Extractor::Hm { m } => panic!("h^m extraction is only implemented for m = 1, got m = {m}"),
        Extractor::Rhw => extract_rhw(instance),
        Extractor::ZhuGivan => extract_zhu_givan(instance),
        Extractor::Hoffmann => extract_hoffmann(instance),
    }
}

/// Checks a candidate against the delete-relaxation oracle.
///
/// Facts already in the goal are landmarks by definition. Otherwise a
/// conjunctive candidate holds iff the goal becomes unreachable with each of
/// its facts forbidden (extractors only emit single-fact conjunctions); a
/// disjunctive candidate holds iff forbidding all disjuncts at once makes
/// the goal unreachable.
pub fn verify_candidate(instance: &PlanningInstance, candidate: &Landmark) -> bool {
    let no_actions = instance.empty_action_set();
    match candidate.kind {
        LandmarkKind::Conjunctive => candidate.facts.iter().all(|&f| {
            if instance.goal.contains(f) {
                return true;
            }
            let forbidden = instance.fact_set_from([f]);
            !relaxed_reachable(instance, &instance.goal, &forbidden, &no_actions)
        }),
        LandmarkKind::Disjunctive => {
            let forbidden = instance.fact_set_from(candidate.facts.iter().copied());
            !relaxed_reachable(instance, &instance.goal, &forbidden, &no_actions)
        }
    }
}

/// Uniqueness of each landmark across the hypotheses' landmark sets:
/// `1 / (number of goals whose set contains the landmark)`.
pub fn compute_uniqueness(sets: &[LandmarkSet]) -> HashMap<Landmark, f64> {
    let mut counts: HashMap<&Landmark, usize> = HashMap::new();
    for set in sets {
        for lm in &set.landmarks {
            *counts.entry(lm).or_insert(0) += 1;
        }
    }
    counts.into_iter().map(|(lm, n)| (lm.clone(), 1.0 / n as f64)).collect()
}

/// Errors when the goal is not relaxed-reachable; shared precondition of
/// every extractor.
pub(crate) fn require_solvable(instance: &PlanningInstance) -> Result<(), ExtractError> {
    let no_facts = instance.empty_fact_set();
    let no_actions = instance.empty_action_set();
    if relaxed_reachable(instance, &instance.goal, &no_facts, &no_actions) {
        Ok(())
    } else {
        Err(ExtractError::UnsolvableInstance)
    }
}

pub(crate) fn unconstrained_rpg(instance: &PlanningInstance) -> RelaxedPlanningGraph {
    build_rpg(instance, &instance.empty_fact_set(), &instance.empty_action_set())
}

/// First RPG level at which the landmark formula can hold: the earliest
/// level of any of its facts.
fn landmark_level(rpg: &RelaxedPlanningGraph, landmark: &Landmark) -> u32 {
    landmark.facts.iter().filter_map(|&f| rpg.first_level(f)).min().unwrap_or(u32::MAX)
}

/// Canonical output ordering: (first RPG level, kind, facts).
pub(crate) fn sorted_landmarks(
    rpg: &RelaxedPlanningGraph,
    landmarks: impl IntoIterator<Item = Landmark>,
) -> Vec<Landmark> {
    let mut list: Vec<Landmark> = landmarks.into_iter().collect();
    list.sort_by_key(|lm| (landmark_level(rpg, lm), lm.clone()));
    list.dedup();
    list
}

/// Drops disjunctive landmarks subsumed by a recorded conjunctive fact.
pub(crate) fn drop_subsumed(landmarks: Vec<Landmark>) -> Vec<Landmark> {
    let conj: Vec<FactId> = landmarks
        .iter()
        .filter(|l| l.kind == LandmarkKind::Conjunctive)
        .flat_map(|l| l.facts.iter().copied())
        .collect();
    landmarks
        .into_iter()
        .filter(|l| {
            l.kind == LandmarkKind::Conjunctive || !l.facts.iter().any(|f| conj.contains(f))
        })
        .collect()
}

#[cfg(test)]
mod tests;
