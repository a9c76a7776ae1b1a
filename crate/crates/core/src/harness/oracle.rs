//! Brute-force plan enumeration and the landmark soundness oracle.
//!
//! The enumeration is desk-scale by design: it lists every valid plan up to
//! a short length bound and the oracle then checks that each landmark
//! formula holds at some state along every enumerated trajectory. Plans
//! that revisit a state on their own path are pruned; any such plan visits
//! a superset of the states of its cycle-free core, so pruning loses no
//! violations.

use std::collections::VecDeque;

use thiserror::Error;

use crate::extract::{LandmarkKind, LandmarkSet};
use crate::model::{apply, applicable, ActionId, FactSet, PlanningInstance, State};

pub const MAX_SUPPORTED_LENGTH: usize = 14;

#[derive(Debug, Clone)]
pub struct OracleBounds {
    /// Maximum plan length; capped at [`MAX_SUPPORTED_LENGTH`].
    pub max_length: usize,
    /// Node-expansion cap guarding against state-space blowup.
    pub max_expansions: usize,
    /// Plan-count cap; exceeding it truncates the enumeration.
    pub max_plans: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds { max_length: 12, max_expansions: 200_000, max_plans: 1_000_000 }
    }
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("max plan length {0} exceeds the supported bound of {MAX_SUPPORTED_LENGTH}")]
    MaxLengthTooLarge(usize),
    #[error("state space too large: exceeded {0} expansions")]
    StateSpaceTooLarge(usize),
}

#[derive(Debug, Clone)]
pub struct PlanEnumeration {
    /// Every valid cycle-free plan of length <= max_length, in breadth-first
    /// order.
    pub plans: Vec<Vec<ActionId>>,
    /// Set when max_plans stopped the enumeration early.
    pub truncated: bool,
}

/// Enumerates all valid plans up to the length bound by breadth-first search
/// over states, pruning extensions that revisit a state already on the path.
pub fn brute_force_plans(
    instance: &PlanningInstance,
    bounds: &OracleBounds,
) -> Result<PlanEnumeration, OracleError> {
    if bounds.max_length > MAX_SUPPORTED_LENGTH {
        return Err(OracleError::MaxLengthTooLarge(bounds.max_length));
    }

    struct Node {
        state: State,
        path: Vec<ActionId>,
        trajectory: Vec<FactSet>,
    }

    let init = instance.init.clone();
    let mut queue = VecDeque::new();
    queue.push_back(Node {
        trajectory: vec![init.facts.clone()],
        state: init,
        path: Vec::new(),
    });

    let mut plans = Vec::new();
    let mut truncated = false;
    let mut expansions = 0usize;

    while let Some(node) = queue.pop_front() {
        expansions += 1;
        if expansions > bounds.max_expansions {
            return Err(OracleError::StateSpaceTooLarge(bounds.max_expansions));
        }

        if instance.goal.is_subset(&node.state.facts) {
            if plans.len() == bounds.max_plans {
                truncated = true;
                break;
            }
            plans.push(node.path.clone());
        }
        if node.path.len() == bounds.max_length {
            continue;
        }

        for (id, action) in instance.actions().iter().enumerate() {
            if !applicable(&node.state, action) {
                continue;
            }
            let next = apply(&node.state, action).expect("applicability checked");
            if node.trajectory.contains(&next.facts) {
                continue;
            }
            let mut path = node.path.clone();
            path.push(id);
            let mut trajectory = node.trajectory.clone();
            trajectory.push(next.facts.clone());
            queue.push_back(Node { state: next, path, trajectory });
        }
    }

    Ok(PlanEnumeration { plans, truncated })
}

/// A landmark together with the first enumerated plan whose trajectory never
/// satisfies it.
#[derive(Debug, Clone)]
pub struct LandmarkViolation {
    pub landmark: crate::extract::Landmark,
    pub plan: Vec<ActionId>,
}

/// Simulates every enumerated plan and reports each landmark that fails to
/// hold at any point along some trajectory. An empty result on a non-empty
/// enumeration certifies the set against the brute-force oracle.
pub fn oracle_check_landmarks(
    instance: &PlanningInstance,
    landmarks: &LandmarkSet,
    bounds: &OracleBounds,
) -> Result<Vec<LandmarkViolation>, OracleError> {
    let enumeration = brute_force_plans(instance, bounds)?;
    let mut witness: Vec<Option<Vec<ActionId>>> = vec![None; landmarks.len()];

    for plan in &enumeration.plans {
        if witness.iter().all(|w| w.is_some()) {
            break;
        }
        let trajectory = simulate(instance, plan);
        let mut ever = instance.empty_fact_set();
        for state in &trajectory {
            ever.union_with(state);
        }
        for (i, landmark) in landmarks.landmarks.iter().enumerate() {
            if witness[i].is_some() {
                continue;
            }
            let satisfied = match landmark.kind {
                LandmarkKind::Conjunctive => trajectory
                    .iter()
                    .any(|state| landmark.facts.iter().all(|&f| state.contains(f))),
                LandmarkKind::Disjunctive => landmark.facts.iter().any(|&f| ever.contains(f)),
            };
            if !satisfied {
                witness[i] = Some(plan.clone());
            }
        }
    }

    Ok(landmarks
        .landmarks
        .iter()
        .zip(witness)
        .filter_map(|(landmark, plan)| {
            plan.map(|plan| LandmarkViolation { landmark: landmark.clone(), plan })
        })
        .collect())
}

fn simulate(instance: &PlanningInstance, plan: &[ActionId]) -> Vec<FactSet> {
    let mut state = instance.init.clone();
    let mut trajectory = vec![state.facts.clone()];
    for &id in plan {
        state = apply(&state, instance.action(id)).expect("enumerated plans are valid");
        trajectory.push(state.facts.clone());
    }
    trajectory
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{extract_exhaust, Extractor, Landmark};
    use crate::model::fixtures::{action_id, e1, e2, fact_id};
    use crate::model::{Fact, InstanceBuilder};

    fn bounds(max_length: usize) -> OracleBounds {
        OracleBounds { max_length, ..OracleBounds::default() }
    }

    #[test]
    fn chain_has_exactly_one_short_plan() {
        let inst = e1();
        let plans = brute_force_plans(&inst, &bounds(3)).unwrap();
        assert!(!plans.truncated);
        assert_eq!(plans.plans, vec![vec![action_id(&inst, "a1"), action_id(&inst, "a2")]]);
    }

    #[test]
    fn goal_in_init_includes_the_empty_plan() {
        let inst = InstanceBuilder::new()
            .fact(Fact::nullary("p"))
            .init(vec![Fact::nullary("p")])
            .goal(vec![Fact::nullary("p")])
            .build();
        let plans = brute_force_plans(&inst, &bounds(2)).unwrap();
        assert!(plans.plans.contains(&vec![]));
    }

    #[test]
    fn fork_has_both_branch_plans() {
        let inst = e2();
        let plans = brute_force_plans(&inst, &bounds(2)).unwrap();
        let expected = vec![
            vec![action_id(&inst, "a1"), action_id(&inst, "a3")],
            vec![action_id(&inst, "a2"), action_id(&inst, "a4")],
        ];
        assert_eq!(plans.plans, expected);
    }

    #[test]
    fn length_bound_above_the_supported_cap_errors() {
        let inst = e1();
        assert!(matches!(
            brute_force_plans(&inst, &bounds(15)),
            Err(OracleError::MaxLengthTooLarge(15))
        ));
    }

    #[test]
    fn expansion_cap_trips_on_tiny_budget() {
        let inst = e2();
        let tight =
            OracleBounds { max_length: 6, max_expansions: 2, max_plans: 1_000_000 };
        assert!(matches!(
            brute_force_plans(&inst, &tight),
            Err(OracleError::StateSpaceTooLarge(2))
        ));
    }

    #[test]
    fn exhaust_output_has_no_violations_on_the_chain() {
        let inst = e1();
        let set = extract_exhaust(&inst).unwrap();
        let violations = oracle_check_landmarks(&inst, &set, &bounds(3)).unwrap();
        assert!(violations.is_empty());
    }

    #[test]
    fn artificial_fork_landmark_is_violated_by_the_other_branch() {
        let inst = e2();
        let set = crate::extract::LandmarkSet {
            goal: inst.fact_set_from([fact_id(&inst, "g")]),
            landmarks: vec![Landmark::conjunctive(fact_id(&inst, "q1"))],
            extractor: Extractor::Exhaust,
        };
        let violations = oracle_check_landmarks(&inst, &set, &bounds(2)).unwrap();
        assert_eq!(violations.len(), 1);
        assert_eq!(
            violations[0].plan,
            vec![action_id(&inst, "a2"), action_id(&inst, "a4")]
        );
    }

    #[test]
    fn empty_landmark_set_has_no_violations() {
        let inst = e1();
        let set = crate::extract::LandmarkSet {
            goal: inst.goal.clone(),
            landmarks: vec![],
            extractor: Extractor::Exhaust,
        };
        assert!(oracle_check_landmarks(&inst, &set, &bounds(3)).unwrap().is_empty());
    }
}
