//! Exhaustive extraction: test every reachable fact against the
//! delete-relaxation oracle. The resulting set is the baseline every other
//! extractor is measured against, since a single fact is a landmark under
//! the shared oracle exactly when this algorithm emits it.

use super::{
    require_solvable, sorted_landmarks, unconstrained_rpg, verify_candidate, ExtractError,
    Extractor, Landmark, LandmarkSet,
};
use crate::model::PlanningInstance;

pub fn extract_exhaust(instance: &PlanningInstance) -> Result<LandmarkSet, ExtractError> {
    require_solvable(instance)?;
    let rpg = unconstrained_rpg(instance);

    let mut found = Vec::new();
    for fact in rpg.fixpoint().ones() {
        let candidate = Landmark::conjunctive(fact);
        if instance.goal.contains(fact) || verify_candidate(instance, &candidate) {
            found.push(candidate);
        }
    }

    Ok(LandmarkSet {
        goal: instance.goal.clone(),
        landmarks: sorted_landmarks(&rpg, found),
        extractor: Extractor::Exhaust,
    })
}
