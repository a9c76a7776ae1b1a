//! Backchaining extraction over first achievers.
//!
//! Starting from the goal facts, each recorded landmark is traced back to
//! the actions that can first achieve it. A precondition shared by every
//! first achiever becomes a conjunctive landmark candidate; otherwise the
//! achievers' preconditions are grouped into disjunctive candidates, one per
//! predicate-symbol group that covers every achiever, falling back to the
//! plain precondition union when no group covers. Every candidate must pass
//! the delete-relaxation oracle before it is recorded and backchained in
//! turn.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{
    drop_subsumed, require_solvable, sorted_landmarks, unconstrained_rpg, verify_candidate,
    ExtractError, Extractor, Landmark, LandmarkSet,
};
use crate::graphs::RelaxedPlanningGraph;
use crate::model::{ActionId, FactId, PlanningInstance};

#[derive(Debug, Clone)]
pub struct RhwOptions {
    /// Disjunctions with more disjuncts than this are discarded.
    pub max_disjunction_size: usize,
}

impl Default for RhwOptions {
    fn default() -> Self {
        RhwOptions { max_disjunction_size: 4 }
    }
}

pub fn extract_rhw(instance: &PlanningInstance) -> Result<LandmarkSet, ExtractError> {
    extract_rhw_with(instance, &RhwOptions::default())
}

pub fn extract_rhw_with(
    instance: &PlanningInstance,
    options: &RhwOptions,
) -> Result<LandmarkSet, ExtractError> {
    require_solvable(instance)?;
    let rpg = unconstrained_rpg(instance);

    let mut recorded: BTreeSet<Landmark> = BTreeSet::new();
    let mut queue: VecDeque<Landmark> = VecDeque::new();
    for g in instance.goal.ones() {
        let lm = Landmark::conjunctive(g);
        recorded.insert(lm.clone());
        queue.push_back(lm);
    }

    while let Some(landmark) = queue.pop_front() {
        let first = match landmark.facts.iter().filter_map(|&f| rpg.first_level(f)).min() {
            Some(level) if level > 0 => level,
            _ => continue, // holds initially (or unreachable): nothing to chain through
        };
        let achievers = first_achievers(instance, &rpg, &landmark.facts, first);
        if achievers.is_empty() {
            continue;
        }

        // shared preconditions become conjunctive candidates
        let mut shared = instance.action(achievers[0]).pre.clone();
        for &a in &achievers[1..] {
            shared.intersect_with(&instance.action(a).pre);
        }
        for fact in shared.ones() {
            let candidate = Landmark::conjunctive(fact);
            if !recorded.contains(&candidate) && verify_candidate(instance, &candidate) {
                recorded.insert(candidate.clone());
                queue.push_back(candidate);
            }
        }

        // disjunctive candidates: one per predicate group covering every
        // achiever, falling back to the full precondition union
        let mut groups: BTreeMap<&str, BTreeSet<FactId>> = BTreeMap::new();
        for &a in &achievers {
            for p in instance.action(a).pre.ones() {
                groups.entry(&instance.fact(p).predicate).or_default().insert(p);
            }
        }
        let covers = |facts: &BTreeSet<FactId>| {
            achievers.iter().all(|&a| facts.iter().any(|&f| instance.action(a).pre.contains(f)))
        };

        let mut candidates: Vec<Vec<FactId>> = Vec::new();
        let mut any_cover = false;
        for facts in groups.values() {
            if covers(facts) {
                any_cover = true;
                if facts.len() >= 2 {
                    candidates.push(facts.iter().copied().collect());
                }
            }
        }
        if !any_cover {
            let union: BTreeSet<FactId> = groups.values().flatten().copied().collect();
            if union.len() >= 2 {
                candidates.push(union.into_iter().collect());
            }
        }

        for facts in candidates {
            if facts.len() > options.max_disjunction_size {
                continue;
            }
            let candidate = Landmark::disjunctive(facts);
            if !recorded.contains(&candidate) && verify_candidate(instance, &candidate) {
                recorded.insert(candidate.clone());
                queue.push_back(candidate);
            }
        }
    }

    Ok(LandmarkSet {
        goal: instance.goal.clone(),
        landmarks: sorted_landmarks(&rpg, drop_subsumed(recorded.into_iter().collect())),
        extractor: Extractor::Rhw,
    })
}

/// Actions that can make the formula true at its first RPG level: they add
/// one of its facts and are applicable one level earlier.
fn first_achievers(
    instance: &PlanningInstance,
    rpg: &RelaxedPlanningGraph,
    facts: &[FactId],
    first: u32,
) -> Vec<ActionId> {
    (0..instance.num_actions())
        .filter(|&a| {
            rpg.first_action_level(a).is_some_and(|level| level < first)
                && facts.iter().any(|&f| instance.action(a).add.contains(f))
        })
        .collect()
}
