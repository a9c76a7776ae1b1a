//! Level-by-level RPG backchaining from the goal facts.
//!
//! For each frontier fact at level i, the preconditions of all actions that
//! achieve it at level i-1 become candidates. Each candidate is kept as a
//! landmark only if it passes the delete-relaxation oracle, but the walk
//! continues through failed candidates too, so the process visits every
//! fact level back to the initial state. Output is conjunctive only.

use fixedbitset::FixedBitSet;

use super::{
    require_solvable, sorted_landmarks, unconstrained_rpg, verify_candidate, ExtractError,
    Extractor, Landmark, LandmarkSet,
};
use crate::model::PlanningInstance;

pub fn extract_hoffmann(instance: &PlanningInstance) -> Result<LandmarkSet, ExtractError> {
    require_solvable(instance)?;
    let rpg = unconstrained_rpg(instance);

    let num_levels = rpg.num_levels();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new(); num_levels];
    let mut seen = FixedBitSet::with_capacity(instance.num_facts());
    let mut recorded = FixedBitSet::with_capacity(instance.num_facts());

    for g in instance.goal.ones() {
        recorded.insert(g);
        seen.insert(g);
        let level = rpg.first_level(g).expect("solvable instance reaches its goal") as usize;
        frontier[level].push(g);
    }

    for level in (1..num_levels).rev() {
        // facts can only be scheduled at their first level, which sits at or
        // below the level currently being processed
        let facts = std::mem::take(&mut frontier[level]);
        for fact in facts {
            let prev = &rpg.fact_levels[level - 1];
            for action in instance.actions() {
                if !action.add.contains(fact) || !action.pre.is_subset(prev) {
                    continue;
                }
                for candidate in action.pre.ones() {
                    if seen.contains(candidate) {
                        continue;
                    }
                    seen.insert(candidate);
                    let first =
                        rpg.first_level(candidate).expect("preconditions of applicable actions")
                            as usize;
                    frontier[first].push(candidate);
                    if verify_candidate(instance, &Landmark::conjunctive(candidate)) {
                        recorded.insert(candidate);
                    }
                }
            }
        }
    }

    Ok(LandmarkSet {
        goal: instance.goal.clone(),
        landmarks: sorted_landmarks(&rpg, recorded.ones().map(Landmark::conjunctive)),
        extractor: Extractor::Hoffmann,
    })
}
