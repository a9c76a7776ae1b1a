//! Extraction by label propagation: every fact identifier appearing in a
//! goal node's label at the label-graph fixpoint is a landmark. Action
//! labels participate in the propagation but are not surfaced as landmarks.

use fixedbitset::FixedBitSet;

use super::{
    require_solvable, sorted_landmarks, unconstrained_rpg, ExtractError, Extractor, Landmark,
    LandmarkSet,
};
use crate::graphs::build_label_graph;
use crate::model::PlanningInstance;

pub fn extract_zhu_givan(instance: &PlanningInstance) -> Result<LandmarkSet, ExtractError> {
    require_solvable(instance)?;
    let graph = build_label_graph(instance).map_err(|_| ExtractError::UnsolvableInstance)?;

    let mut found = FixedBitSet::with_capacity(instance.num_facts());
    for g in instance.goal.ones() {
        for fact in graph.fact_label_facts(g) {
            found.insert(fact);
        }
    }

    let rpg = unconstrained_rpg(instance);
    Ok(LandmarkSet {
        goal: instance.goal.clone(),
        landmarks: sorted_landmarks(&rpg, found.ones().map(Landmark::conjunctive)),
        extractor: Extractor::ZhuGivan,
    })
}
