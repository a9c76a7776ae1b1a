//! Delete-relaxation machinery: relaxed planning graphs, constrained
//! reachability tests, and the labeled planning graph used for label
//! propagation.
//!
//! Forbidding a fact removes it from the initial state and suppresses it
//! from every action's add list; forbidding an action removes the action
//! entirely. Both constraints apply uniformly whether the fact comes from
//! the initial state or an effect.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::model::{ActionId, FactId, FactSet, PlanningInstance};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("goal fact `{0}` is not delete-relaxed reachable")]
    UnreachableGoal(String),
}

/// Layered fact/action structure built under delete relaxation.
///
/// `fact_levels` grows strictly until the final level, which is the
/// delete-relaxation fixpoint: expanding it once more adds nothing.
/// `action_levels[i]` holds the actions applicable at `fact_levels[i]`, so
/// both sequences have the same length.
#[derive(Debug, Clone)]
pub struct RelaxedPlanningGraph {
    pub fact_levels: Vec<FactSet>,
    pub action_levels: Vec<FixedBitSet>,
    first_fact_level: Vec<Option<u32>>,
    first_action_level: Vec<Option<u32>>,
}

impl RelaxedPlanningGraph {
    /// The delete-relaxation fixpoint fact set.
    pub fn fixpoint(&self) -> &FactSet {
        self.fact_levels.last().expect("graph has at least one level")
    }

    /// Level at which a fact first appears, if reachable.
    pub fn first_level(&self, fact: FactId) -> Option<u32> {
        self.first_fact_level[fact]
    }

    /// First level whose action set contains the action, if ever applicable.
    pub fn first_action_level(&self, action: ActionId) -> Option<u32> {
        self.first_action_level[action]
    }

    pub fn num_levels(&self) -> usize {
        self.fact_levels.len()
    }
}

/// Builds the relaxed planning graph from the initial state with the given
/// facts and actions forbidden, expanding to the delete-relaxation fixpoint.
pub fn build_rpg(
    instance: &PlanningInstance,
    forbidden_facts: &FactSet,
    forbidden_actions: &FixedBitSet,
) -> RelaxedPlanningGraph {
    let num_facts = instance.num_facts();
    let num_actions = instance.num_actions();

    let mut first_fact_level = vec![None; num_facts];
    let mut first_action_level = vec![None; num_actions];

    let mut facts = instance.init.facts.clone();
    facts.difference_with(forbidden_facts);
    for f in facts.ones() {
        first_fact_level[f] = Some(0);
    }

    let mut fact_levels = vec![facts.clone()];
    let mut action_levels = Vec::new();

    loop {
        let level = (fact_levels.len() - 1) as u32;
        let mut applicable = FixedBitSet::with_capacity(num_actions);
        let mut next = facts.clone();
        for (id, action) in instance.actions().iter().enumerate() {
            if forbidden_actions.contains(id) || !action.pre.is_subset(&facts) {
                continue;
            }
            applicable.insert(id);
            if first_action_level[id].is_none() {
                first_action_level[id] = Some(level);
            }
            next.union_with(&action.add);
        }
        next.difference_with(forbidden_facts);
        action_levels.push(applicable);

        if next == facts {
            break;
        }
        for f in next.difference(&facts).collect::<Vec<_>>() {
            first_fact_level[f] = Some(level + 1);
        }
        facts = next;
        fact_levels.push(facts.clone());
    }

    RelaxedPlanningGraph { fact_levels, action_levels, first_fact_level, first_action_level }
}

/// True iff `goal_facts` is delete-relaxed reachable under the constraints.
/// Cheaper than [`build_rpg`]: no level history and early exit once the goal
/// is covered.
pub fn relaxed_reachable(
    instance: &PlanningInstance,
    goal_facts: &FactSet,
    forbidden_facts: &FactSet,
    forbidden_actions: &FixedBitSet,
) -> bool {
    let mut facts = instance.init.facts.clone();
    facts.difference_with(forbidden_facts);
    if goal_facts.is_subset(&facts) {
        return true;
    }
    let mut applied = FixedBitSet::with_capacity(instance.num_actions());
    loop {
        let mut grew = false;
        for (id, action) in instance.actions().iter().enumerate() {
            if applied.contains(id)
                || forbidden_actions.contains(id)
                || !action.pre.is_subset(&facts)
            {
                continue;
            }
            applied.insert(id);
            let before = facts.count_ones(..);
            facts.union_with(&action.add);
            facts.difference_with(forbidden_facts);
            if facts.count_ones(..) != before {
                grew = true;
                if goal_facts.is_subset(&facts) {
                    return true;
                }
            }
        }
        if !grew {
            return false;
        }
    }
}

/// Labels over the combined fact/action identifier space: bit `f` is fact
/// `f`, bit `num_facts + a` is action `a`.
#[derive(Debug, Clone)]
pub struct LabelLevel {
    pub facts: Vec<Option<FixedBitSet>>,
    pub actions: Vec<Option<FixedBitSet>>,
}

/// Level-by-level label propagation over the relaxed planning graph.
///
/// Every action node is labeled with itself plus the union of its
/// precondition fact labels; every fact node with itself plus the
/// intersection of the labels of the action nodes that reach it, where a
/// fact already present persists through a no-op carrying its previous
/// label. Construction runs until both the fact set and every label
/// stabilize.
#[derive(Debug, Clone)]
pub struct LabelGraph {
    pub levels: Vec<LabelLevel>,
    num_facts: usize,
}

impl LabelGraph {
    pub fn final_level(&self) -> &LabelLevel {
        self.levels.last().expect("graph has at least one level")
    }

    /// Final label of a fact, if the fact is reachable.
    pub fn fact_label(&self, fact: FactId) -> Option<&FixedBitSet> {
        self.final_level().facts[fact].as_ref()
    }

    /// Fact identifiers mentioned in the final label of `fact`.
    pub fn fact_label_facts(&self, fact: FactId) -> Vec<FactId> {
        match self.fact_label(fact) {
            Some(label) => label.ones().take_while(|&id| id < self.num_facts).collect(),
            None => Vec::new(),
        }
    }
}

/// Propagates labels to a fixpoint. Errors if some goal fact never appears.
pub fn build_label_graph(instance: &PlanningInstance) -> Result<LabelGraph, GraphError> {
    let num_facts = instance.num_facts();
    let num_actions = instance.num_actions();
    let width = num_facts + num_actions;

    let singleton = |bit: usize| {
        let mut s = FixedBitSet::with_capacity(width);
        s.insert(bit);
        s
    };

    let mut facts = instance.init.facts.clone();
    let mut fact_labels: Vec<Option<FixedBitSet>> = vec![None; num_facts];
    for f in facts.ones() {
        fact_labels[f] = Some(singleton(f));
    }

    let mut levels =
        vec![LabelLevel { facts: fact_labels.clone(), actions: vec![None; num_actions] }];

    // labels shrink monotonically once a node exists, so the fixpoint is
    // reached within |facts| + |actions| + 1 sweeps
    for _ in 0..=width {
        let mut action_labels: Vec<Option<FixedBitSet>> = vec![None; num_actions];
        for (id, action) in instance.actions().iter().enumerate() {
            if !action.pre.is_subset(&facts) {
                continue;
            }
            let mut label = singleton(num_facts + id);
            for p in action.pre.ones() {
                label.union_with(fact_labels[p].as_ref().expect("precondition fact present"));
            }
            action_labels[id] = Some(label);
        }

        let mut next_facts = facts.clone();
        let mut next_labels: Vec<Option<FixedBitSet>> = vec![None; num_facts];
        for f in 0..num_facts {
            // achievers at this level, plus the no-op when f persists
            let mut meet: Option<FixedBitSet> = fact_labels[f].clone();
            for (id, action) in instance.actions().iter().enumerate() {
                if !action.add.contains(f) {
                    continue;
                }
                if let Some(alabel) = &action_labels[id] {
                    match &mut meet {
                        Some(m) => m.intersect_with(alabel),
                        None => meet = Some(alabel.clone()),
                    }
                }
            }
            if let Some(mut label) = meet {
                label.insert(f);
                next_facts.insert(f);
                next_labels[f] = Some(label);
            }
        }

        let stable = next_facts == facts && next_labels == fact_labels;
        facts = next_facts;
        fact_labels = next_labels.clone();
        levels.push(LabelLevel { facts: next_labels, actions: action_labels });
        if stable {
            break;
        }
    }

    for g in instance.goal.ones() {
        if fact_labels[g].is_none() {
            return Err(GraphError::UnreachableGoal(instance.fact(g).to_string()));
        }
    }

    Ok(LabelGraph { levels, num_facts })
}
