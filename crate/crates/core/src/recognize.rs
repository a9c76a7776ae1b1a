//! Goal recognition over landmark sets: achieved-landmark tracking from
//! observations, goal-completion and uniqueness scoring, and the theta
//! threshold filter over normalized scores.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::extract::{compute_uniqueness, extract, Extractor, Landmark, LandmarkKind, LandmarkSet};
use crate::model::{ActionId, FactSet, PlanningInstance, State};

/// Scores within `BAND_EPSILON` of the exact theta band are kept, so a goal
/// whose score mathematically equals `max - theta/100` is never dropped by
/// floating-point rounding.
const BAND_EPSILON: f64 = 1e-9;

/// A goal recognition problem: shared domain and initial state, the goal
/// hypotheses, the observed action sequence, and the index of the hidden
/// real goal (used only by evaluation, never by scoring).
#[derive(Debug, Clone)]
pub struct RecognitionProblem {
    /// Grounded domain + initial state; the instance goal is ignored.
    pub instance: PlanningInstance,
    pub hypotheses: Vec<FactSet>,
    pub observations: Vec<ActionId>,
    pub real_goal: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Heuristic {
    GoalCompletion,
    Uniqueness,
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Heuristic::GoalCompletion => write!(f, "gc"),
            Heuristic::Uniqueness => write!(f, "uniq"),
        }
    }
}

impl FromStr for Heuristic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gc" => Ok(Heuristic::GoalCompletion),
            "uniq" => Ok(Heuristic::Uniqueness),
            other => Err(format!("unknown heuristic `{other}` (expected gc or uniq)")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RecognitionConfig {
    pub heuristic: Heuristic,
    /// Threshold in percent, 0..=100.
    pub theta: u8,
    pub extractor: Extractor,
}

impl RecognitionConfig {
    pub fn new(heuristic: Heuristic, theta: u8, extractor: Extractor) -> Self {
        assert!(theta <= 100, "theta must be within 0..=100");
        RecognitionConfig { heuristic, theta, extractor }
    }
}

/// Per-hypothesis outcome. `flagged` marks degenerate cases the score rule
/// cannot serve: an unsolvable hypothesis or an empty landmark set, both
/// scored 0.
#[derive(Debug, Clone)]
pub struct GoalScore {
    pub goal: usize,
    pub achieved: Vec<Landmark>,
    pub total: Option<LandmarkSet>,
    pub score: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone)]
pub struct RecognitionResult {
    pub scores: Vec<GoalScore>,
    /// Goal indices within the theta band of the top score, ascending.
    pub recognized: Vec<usize>,
    /// Wall clock for extraction plus scoring.
    pub elapsed: Duration,
}

impl RecognitionResult {
    pub fn is_recognized(&self, goal: usize) -> bool {
        self.recognized.binary_search(&goal).is_ok()
    }

    /// Elapsed seconds at millisecond resolution.
    pub fn elapsed_seconds(&self) -> f64 {
        (self.elapsed.as_secs_f64() * 1000.0).round() / 1000.0
    }

    /// Mean landmark count across hypotheses; unsolvable hypotheses count 0.
    pub fn mean_landmark_count(&self) -> f64 {
        if self.scores.is_empty() {
            return 0.0;
        }
        let total: usize = self.scores.iter().map(|s| s.total.as_ref().map_or(0, |t| t.len())).sum();
        total as f64 / self.scores.len() as f64
    }
}

/// Facts evidenced by the observations: the initial state plus the
/// preconditions and add effects of every observed action.
pub fn observation_evidence(
    instance: &PlanningInstance,
    init: &State,
    observations: &[ActionId],
) -> FactSet {
    let mut evidence = init.facts.clone();
    for &obs in observations {
        let action = instance.action(obs);
        evidence.union_with(&action.pre);
        evidence.union_with(&action.add);
    }
    evidence
}

/// Landmarks achieved under the evidence rule: a conjunctive landmark needs
/// all of its facts evidenced, a disjunctive landmark any one of them.
pub fn achieved_landmarks(
    instance: &PlanningInstance,
    init: &State,
    observations: &[ActionId],
    landmarks: &LandmarkSet,
) -> Vec<Landmark> {
    let evidence = observation_evidence(instance, init, observations);
    landmarks
        .landmarks
        .iter()
        .filter(|lm| match lm.kind {
            LandmarkKind::Conjunctive => lm.facts.iter().all(|&f| evidence.contains(f)),
            LandmarkKind::Disjunctive => lm.facts.iter().any(|&f| evidence.contains(f)),
        })
        .cloned()
        .collect()
}

/// Goal completion: achieved landmark count over total landmark count.
/// Empty landmark sets score 0 and are flagged.
pub fn score_gc(achieved: usize, total: usize) -> (f64, bool) {
    if total == 0 {
        (0.0, true)
    } else {
        (achieved as f64 / total as f64, false)
    }
}

/// Uniqueness-weighted completion: achieved uniqueness mass over the goal's
/// total uniqueness mass, normalized into [0, 1] so the same theta filter
/// applies. A zero denominator scores 0 and is flagged.
pub fn score_uniq(
    achieved: &[Landmark],
    total: &LandmarkSet,
    uniqueness: &HashMap<Landmark, f64>,
) -> (f64, bool) {
    let mass = |landmarks: &[Landmark]| -> f64 {
        landmarks.iter().map(|lm| uniqueness.get(lm).copied().unwrap_or(0.0)).sum()
    };
    let denominator = mass(&total.landmarks);
    if denominator == 0.0 {
        (0.0, true)
    } else {
        (mass(achieved) / denominator, false)
    }
}

/// Goal indices whose score is within `theta` percentage points of the top
/// score. Always nonempty for nonempty input.
pub fn recognized_set(scores: &[f64], theta: u8) -> Vec<usize> {
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let band = max - f64::from(theta) / 100.0 - BAND_EPSILON;
    scores.iter().enumerate().filter(|(_, &s)| s >= band).map(|(i, _)| i).collect()
}

/// Runs recognition: extracts landmarks per hypothesis with the configured
/// algorithm, scores each hypothesis, and applies the theta filter.
///
/// Hypotheses whose goal is not relaxed-reachable score 0 and are flagged
/// rather than failing the problem. Extraction runs once per hypothesis and
/// may be parallelized; results are collected in hypothesis order so the
/// outcome does not depend on worker count.
pub fn recognize(problem: &RecognitionProblem, config: &RecognitionConfig) -> RecognitionResult {
    assert!(!problem.hypotheses.is_empty(), "recognition needs at least one hypothesis");
    let start = Instant::now();

    let sets: Vec<Option<LandmarkSet>> = problem
        .hypotheses
        .par_iter()
        .map(|goal| extract(&problem.instance.with_goal(goal.clone()), config.extractor).ok())
        .collect();

    let uniqueness = match config.heuristic {
        Heuristic::Uniqueness => {
            let present: Vec<LandmarkSet> = sets.iter().flatten().cloned().collect();
            Some(compute_uniqueness(&present))
        }
        Heuristic::GoalCompletion => None,
    };

    let scores: Vec<GoalScore> = sets
        .into_iter()
        .enumerate()
        .map(|(goal, set)| match set {
            None => GoalScore { goal, achieved: Vec::new(), total: None, score: 0.0, flagged: true },
            Some(set) => {
                let achieved = achieved_landmarks(
                    &problem.instance,
                    &problem.instance.init,
                    &problem.observations,
                    &set,
                );
                let (score, flagged) = match &uniqueness {
                    None => score_gc(achieved.len(), set.len()),
                    Some(uniq) => score_uniq(&achieved, &set, uniq),
                };
                GoalScore { goal, achieved, total: Some(set), score, flagged }
            }
        })
        .collect();

    let recognized =
        recognized_set(&scores.iter().map(|s| s.score).collect::<Vec<_>>(), config.theta);

    RecognitionResult { scores, recognized, elapsed: start.elapsed() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{action_id, e1, e2, fact_id};
    use crate::model::{Fact, InstanceBuilder};

    fn problem(
        instance: PlanningInstance,
        goals: &[&str],
        obs: &[&str],
        real: usize,
    ) -> RecognitionProblem {
        let hypotheses =
            goals.iter().map(|g| instance.fact_set_from([fact_id(&instance, g)])).collect();
        let observations = obs.iter().map(|o| action_id(&instance, o)).collect();
        RecognitionProblem { instance, hypotheses, observations, real_goal: real }
    }

    #[test]
    fn achieved_covers_init_pre_and_add() {
        let inst = e1();
        let set = crate::extract::extract_exhaust(&inst).unwrap();
        let obs = vec![action_id(&inst, "a1")];
        let achieved = achieved_landmarks(&inst, &inst.init, &obs, &set);
        let names: Vec<String> =
            achieved.iter().map(|l| inst.fact(l.facts[0]).to_string()).collect();
        // p from the initial state, q from a1's add; g is unobserved
        assert_eq!(names, ["p", "q"]);
    }

    #[test]
    fn no_observations_and_no_init_landmarks_achieve_nothing() {
        let inst = e1();
        let g = fact_id(&inst, "g");
        let set = LandmarkSet {
            goal: inst.fact_set_from([g]),
            landmarks: vec![Landmark::conjunctive(g)],
            extractor: Extractor::Exhaust,
        };
        assert!(achieved_landmarks(&inst, &inst.init, &[], &set).is_empty());
    }

    #[test]
    fn disjunctive_landmark_achieved_through_a_precondition() {
        let inst = e2();
        let q1 = fact_id(&inst, "q1");
        let q2 = fact_id(&inst, "q2");
        let set = LandmarkSet {
            goal: inst.fact_set_from([fact_id(&inst, "g")]),
            landmarks: vec![Landmark::disjunctive(vec![q1, q2])],
            extractor: Extractor::Rhw,
        };
        let obs = vec![action_id(&inst, "a3")];
        let achieved = achieved_landmarks(&inst, &inst.init, &obs, &set);
        assert_eq!(achieved.len(), 1);
    }

    #[test]
    fn gc_score_is_the_plain_ratio() {
        assert_eq!(score_gc(2, 4), (0.5, false));
        assert_eq!(score_gc(4, 4), (1.0, false));
        assert_eq!(score_gc(0, 7), (0.0, false));
        assert_eq!(score_gc(0, 0), (0.0, true));
    }

    #[test]
    fn uniq_score_normalizes_by_total_mass() {
        let inst = e2();
        let a = Landmark::conjunctive(fact_id(&inst, "q1"));
        let b = Landmark::conjunctive(fact_id(&inst, "p"));
        let c = Landmark::conjunctive(fact_id(&inst, "q2"));
        let uniq = HashMap::from([(a.clone(), 1.0), (b.clone(), 0.5), (c.clone(), 1.0)]);
        let total = LandmarkSet {
            goal: inst.fact_set_from([fact_id(&inst, "g")]),
            landmarks: vec![a.clone(), b.clone()],
            extractor: Extractor::Exhaust,
        };
        let (score, flagged) = score_uniq(&[a.clone()], &total, &uniq);
        assert!((score - 2.0 / 3.0).abs() < 1e-12);
        assert!(!flagged);

        let (full, _) = score_uniq(&[a.clone(), b.clone()], &total, &uniq);
        assert_eq!(full, 1.0);
        let (none, _) = score_uniq(&[], &total, &uniq);
        assert_eq!(none, 0.0);
    }

    #[test]
    fn theta_band_keeps_ties_and_near_scores() {
        assert_eq!(recognized_set(&[0.8, 0.5, 0.8], 0), vec![0, 2]);
        assert_eq!(recognized_set(&[0.80, 0.72, 0.69], 10), vec![0, 1]);
        assert_eq!(recognized_set(&[0.4], 0), vec![0]);
        // exact boundary stays inside the band
        assert_eq!(recognized_set(&[0.8, 0.7], 10), vec![0, 1]);
    }

    #[test]
    fn widening_theta_grows_the_recognized_set() {
        let scores = [0.9, 0.85, 0.7, 0.2];
        let mut previous: Vec<usize> = Vec::new();
        for theta in [0u8, 5, 10, 25, 100] {
            let current = recognized_set(&scores, theta);
            assert!(previous.iter().all(|g| current.contains(g)));
            previous = current;
        }
    }

    #[test]
    fn recognize_full_plan_scores_the_real_goal_at_one() {
        let inst = e1();
        let prob = problem(inst, &["g", "q"], &["a1", "a2"], 0);
        let config = RecognitionConfig::new(Heuristic::GoalCompletion, 0, Extractor::Exhaust);
        let result = recognize(&prob, &config);
        assert_eq!(result.scores[0].score, 1.0);
        assert!(result.is_recognized(0));
    }

    #[test]
    fn unsolvable_hypothesis_scores_zero_and_is_flagged() {
        // b is never added by any action, so the second hypothesis is
        // unreachable even under delete relaxation
        let inst = InstanceBuilder::new()
            .fact(Fact::nullary("a"))
            .fact(Fact::nullary("b"))
            .init(vec![Fact::nullary("a")])
            .goal(vec![Fact::nullary("a")])
            .build();
        let prob = RecognitionProblem {
            hypotheses: vec![
                inst.fact_set_from([inst.fact_id(&Fact::nullary("a")).unwrap()]),
                inst.fact_set_from([inst.fact_id(&Fact::nullary("b")).unwrap()]),
            ],
            observations: vec![],
            real_goal: 0,
            instance: inst,
        };
        let config = RecognitionConfig::new(Heuristic::GoalCompletion, 0, Extractor::Exhaust);
        let result = recognize(&prob, &config);
        assert!(result.scores[1].flagged);
        assert_eq!(result.scores[1].score, 0.0);
        assert!(result.is_recognized(0));
        assert!(!result.is_recognized(1));
    }

    #[test]
    fn single_hypothesis_is_always_recognized() {
        let inst = e1();
        let prob = problem(inst, &["g"], &[], 0);
        for theta in [0u8, 10, 100] {
            let config =
                RecognitionConfig::new(Heuristic::GoalCompletion, theta, Extractor::Exhaust);
            assert_eq!(recognize(&prob, &config).recognized, vec![0]);
        }
    }

    #[test]
    fn scores_are_monotone_in_observation_prefixes() {
        let inst = e2();
        let prob = problem(inst, &["g", "q1", "q2"], &["a1", "a3"], 0);
        for heuristic in [Heuristic::GoalCompletion, Heuristic::Uniqueness] {
            let config = RecognitionConfig::new(heuristic, 0, Extractor::Rhw);
            let mut last = vec![f64::NEG_INFINITY; prob.hypotheses.len()];
            for len in 0..=prob.observations.len() {
                let prefix = RecognitionProblem {
                    observations: prob.observations[..len].to_vec(),
                    ..prob.clone()
                };
                let result = recognize(&prefix, &config);
                for (score, floor) in result.scores.iter().zip(&last) {
                    assert!(score.score >= *floor);
                }
                last = result.scores.iter().map(|s| s.score).collect();
            }
        }
    }

    #[test]
    fn hypothesis_order_permutes_scores_consistently() {
        let inst = e2();
        let forward = problem(inst.clone(), &["g", "q1", "q2"], &["a1"], 0);
        let backward = problem(inst, &["q2", "q1", "g"], &["a1"], 2);
        for heuristic in [Heuristic::GoalCompletion, Heuristic::Uniqueness] {
            let config = RecognitionConfig::new(heuristic, 10, Extractor::Exhaust);
            let a = recognize(&forward, &config);
            let b = recognize(&backward, &config);
            for i in 0..3 {
                assert_eq!(a.scores[i].score, b.scores[2 - i].score);
                assert_eq!(a.is_recognized(i), b.is_recognized(2 - i));
            }
        }
    }

    #[test]
    fn recognize_is_deterministic() {
        let inst = e2();
        let prob = problem(inst, &["g", "q1"], &["a1"], 0);
        let config = RecognitionConfig::new(Heuristic::Uniqueness, 10, Extractor::Rhw);
        let a = recognize(&prob, &config);
        let b = recognize(&prob, &config);
        assert_eq!(a.recognized, b.recognized);
        let scores = |r: &RecognitionResult| r.scores.iter().map(|s| s.score).collect::<Vec<_>>();
        assert_eq!(scores(&a), scores(&b));
    }
}
