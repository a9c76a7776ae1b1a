//! Landmark extraction through the m-compilation, instantiated for m = 1.
//!
//! The compiled problem's facts are singleton fact sets and each compiled
//! action keeps its preconditions and add effects but no deletes (for m = 1
//! the context sets that would augment preconditions and effects are empty),
//! so the compilation is delete-free while still reflecting the original
//! delete effects through which meta-facts exist. Landmarks of the compiled
//! problem are complete for delete-free problems and map straight back to
//! conjunctive fact landmarks of the original instance.

use fixedbitset::FixedBitSet;

use super::{
    require_solvable, sorted_landmarks, unconstrained_rpg, ExtractError, Extractor, Landmark,
    LandmarkSet,
};
use crate::model::{FactSet, PlanningInstance};

/// A delete-free compiled action over singleton meta-facts.
struct CompiledAction {
    pre: FactSet,
    add: FactSet,
}

/// The m = 1 compilation: one meta-fact per original fact, one delete-free
/// action per original action (the empty context adds nothing).
struct Pi1Compilation {
    actions: Vec<CompiledAction>,
    num_meta_facts: usize,
}

impl Pi1Compilation {
    fn new(instance: &PlanningInstance) -> Self {
        let actions = instance
            .actions()
            .iter()
            .map(|a| CompiledAction { pre: a.pre.clone(), add: a.add.clone() })
            .collect();
        Pi1Compilation { actions, num_meta_facts: instance.num_facts() }
    }

    /// Meta-facts reachable from the initial state.
    fn reachable(&self, init: &FactSet) -> FactSet {
        let mut reached = init.clone();
        let mut applied = vec![false; self.actions.len()];
        loop {
            let before = reached.count_ones(..);
            for (i, action) in self.actions.iter().enumerate() {
                if !applied[i] && action.pre.is_subset(&reached) {
                    reached.union_with(&action.add);
                    applied[i] = true;
                }
            }
            if reached.count_ones(..) == before {
                return reached;
            }
        }
    }

    /// Complete landmark table for the delete-free compiled problem.
    ///
    /// `lm[f]` is the set of meta-facts required on every compiled plan that
    /// makes `f` true: `{f}` for initial facts, otherwise `{f}` plus the
    /// intersection over all reachable achievers of the union of their
    /// precondition landmark sets. Computed as a decreasing fixpoint from
    /// the reachable set.
    fn landmark_table(&self, init: &FactSet, reachable: &FactSet) -> Vec<Option<FixedBitSet>> {
        let mut lm: Vec<Option<FixedBitSet>> = vec![None; self.num_meta_facts];
        for f in reachable.ones() {
            if init.contains(f) {
                let mut set = FixedBitSet::with_capacity(self.num_meta_facts);
                set.insert(f);
                lm[f] = Some(set);
            } else {
                lm[f] = Some(reachable.clone());
            }
        }

        let achievers: Vec<Vec<usize>> = (0..self.num_meta_facts)
            .map(|f| {
                self.actions
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.add.contains(f) && a.pre.is_subset(reachable))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();

        loop {
            let mut changed = false;
            for f in reachable.ones() {
                if init.contains(f) {
                    continue;
                }
                let mut meet: Option<FixedBitSet> = None;
                for &a in &achievers[f] {
                    let mut support = FixedBitSet::with_capacity(self.num_meta_facts);
                    for p in self.actions[a].pre.ones() {
                        support.union_with(lm[p].as_ref().expect("reachable precondition"));
                    }
                    match &mut meet {
                        Some(m) => m.intersect_with(&support),
                        None => meet = Some(support),
                    }
                }
                let mut next = meet.unwrap_or_else(|| FixedBitSet::with_capacity(self.num_meta_facts));
                next.insert(f);
                if lm[f].as_ref() != Some(&next) {
                    lm[f] = Some(next);
                    changed = true;
                }
            }
            if !changed {
                return lm;
            }
        }
    }
}

pub fn extract_h1(instance: &PlanningInstance) -> Result<LandmarkSet, ExtractError> {
    require_solvable(instance)?;

    let compiled = Pi1Compilation::new(instance);
    let reachable = compiled.reachable(&instance.init.facts);
    if !instance.goal.is_subset(&reachable) {
        return Err(ExtractError::UnsolvableInstance);
    }
    let table = compiled.landmark_table(&instance.init.facts, &reachable);

    let mut found = FixedBitSet::with_capacity(instance.num_facts());
    for g in instance.goal.ones() {
        found.union_with(table[g].as_ref().expect("goal is reachable"));
    }

    let rpg = unconstrained_rpg(instance);
    Ok(LandmarkSet {
        goal: instance.goal.clone(),
        landmarks: sorted_landmarks(&rpg, found.ones().map(Landmark::conjunctive)),
        extractor: Extractor::Hm { m: 1 },
    })
}
