//! Grounded STRIPS data model and state-transition semantics.
//!
//! Facts are interned to dense integer ids at construction time and every
//! fact set (states, preconditions, effects, goals) is a bitset over the
//! fact universe. Ids are assigned in canonical order (predicate name, then
//! argument names), so two instances built from the same input are
//! bit-identical. All types are immutable after construction and safe to
//! share across threads.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// Index into [`PlanningInstance::facts`].
pub type FactId = usize;
/// Index into [`PlanningInstance::actions`].
pub type ActionId = usize;

/// A set of facts, represented as a bitset over the instance's fact universe.
pub type FactSet = FixedBitSet;

/// A ground atom: predicate symbol applied to object symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fact {
    pub predicate: String,
    pub args: Vec<String>,
}

impl Fact {
    pub fn new(predicate: impl Into<String>, args: Vec<String>) -> Self {
        Fact { predicate: predicate.into(), args }
    }

    /// 0-ary convenience constructor.
    pub fn nullary(predicate: impl Into<String>) -> Self {
        Fact { predicate: predicate.into(), args: Vec::new() }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.args.is_empty() {
            write!(f, "{}", self.predicate)
        } else {
            write!(f, "{}({})", self.predicate, self.args.join(","))
        }
    }
}

/// A ground action with unit cost.
///
/// Invariant: `add` and `del` are disjoint (a delete shadowed by an add of
/// the same fact is dropped at construction, matching the delete-then-add
/// transition semantics).
#[derive(Debug, Clone)]
pub struct GroundAction {
    pub name: String,
    pub args: Vec<String>,
    pub pre: FactSet,
    pub add: FactSet,
    pub del: FactSet,
    pub cost: u32,
}

impl GroundAction {
    /// Display signature, e.g. `(stack a b)`.
    pub fn signature(&self) -> String {
        if self.args.is_empty() {
            format!("({})", self.name)
        } else {
            format!("({} {})", self.name, self.args.join(" "))
        }
    }
}

/// A planning state: the set of facts currently true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    pub facts: FactSet,
}

impl State {
    pub fn new(facts: FactSet) -> Self {
        State { facts }
    }

    pub fn contains(&self, fact: FactId) -> bool {
        self.facts.contains(fact)
    }
}

/// Immutable tables shared by every instance derived from one grounding.
#[derive(Debug)]
struct InstanceTables {
    facts: Vec<Fact>,
    actions: Vec<GroundAction>,
}

/// A grounded STRIPS task: fact universe, ground actions, initial state and
/// goal. The fact/action tables are shared (`Arc`) so that swapping the goal
/// for another hypothesis is cheap.
#[derive(Debug, Clone)]
pub struct PlanningInstance {
    tables: Arc<InstanceTables>,
    pub init: State,
    pub goal: FactSet,
}

impl PlanningInstance {
    /// Assembles an instance from already-canonical parts: `facts` sorted
    /// and deduplicated, `actions` sorted by (name, args), all sets sized to
    /// `facts.len()`.
    pub(crate) fn from_parts(
        facts: Vec<Fact>,
        actions: Vec<GroundAction>,
        init: State,
        goal: FactSet,
    ) -> Self {
        debug_assert!(facts.windows(2).all(|w| w[0] < w[1]));
        PlanningInstance { tables: Arc::new(InstanceTables { facts, actions }), init, goal }
    }

    pub fn num_facts(&self) -> usize {
        self.tables.facts.len()
    }

    pub fn num_actions(&self) -> usize {
        self.tables.actions.len()
    }

    pub fn fact(&self, id: FactId) -> &Fact {
        &self.tables.facts[id]
    }

    pub fn facts(&self) -> &[Fact] {
        &self.tables.facts
    }

    pub fn action(&self, id: ActionId) -> &GroundAction {
        &self.tables.actions[id]
    }

    pub fn actions(&self) -> &[GroundAction] {
        &self.tables.actions
    }

    /// Looks a fact up by canonical identity.
    pub fn fact_id(&self, fact: &Fact) -> Option<FactId> {
        self.tables.facts.binary_search(fact).ok()
    }

    /// Looks a ground action up by name and argument list.
    pub fn action_id(&self, name: &str, args: &[String]) -> Option<ActionId> {
        self.tables
            .actions
            .binary_search_by(|a| (a.name.as_str(), a.args.as_slice()).cmp(&(name, args)))
            .ok()
    }

    /// Same instance with a different goal, sharing the fact/action tables.
    pub fn with_goal(&self, goal: FactSet) -> PlanningInstance {
        PlanningInstance { tables: Arc::clone(&self.tables), init: self.init.clone(), goal }
    }

    /// An empty fact set sized for this instance's universe.
    pub fn empty_fact_set(&self) -> FactSet {
        FixedBitSet::with_capacity(self.num_facts())
    }

    /// An empty action set sized for this instance's action table.
    pub fn empty_action_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.num_actions())
    }

    pub fn fact_set_from(&self, ids: impl IntoIterator<Item = FactId>) -> FactSet {
        let mut set = self.empty_fact_set();
        for id in ids {
            set.insert(id);
        }
        set
    }

    /// Renders a fact set in canonical id order, for diagnostics and tests.
    pub fn display_facts(&self, set: &FactSet) -> String {
        set.ones().map(|id| self.fact(id).to_string()).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("action {0} is not applicable in the current state")]
    InapplicableAction(String),
}

/// True iff the action's preconditions hold in `state`.
pub fn applicable(state: &State, action: &GroundAction) -> bool {
    action.pre.is_subset(&state.facts)
}

/// Applies an action: `(state \ del) ∪ add`. Errors when the precondition
/// does not hold.
pub fn apply(state: &State, action: &GroundAction) -> Result<State, ModelError> {
    if !applicable(state, action) {
        return Err(ModelError::InapplicableAction(action.signature()));
    }
    let mut facts = state.facts.clone();
    facts.difference_with(&action.del);
    facts.union_with(&action.add);
    Ok(State::new(facts))
}

/// True iff every action is applicable in the state produced by its
/// predecessors and the final state contains the instance goal.
pub fn validate_plan(instance: &PlanningInstance, plan: &[ActionId]) -> bool {
    let mut state = instance.init.clone();
    for &id in plan {
        match apply(&state, instance.action(id)) {
            Ok(next) => state = next,
            Err(_) => return false,
        }
    }
    instance.goal.is_subset(&state.facts)
}

/// Builds a [`PlanningInstance`] from explicit parts.
///
/// Used by tests and in-repo fixture generation; the parser's grounder is the
/// production entry point. Facts are sorted canonically and actions by
/// (name, args) before ids are assigned.
#[derive(Debug, Default)]
pub struct InstanceBuilder {
    facts: Vec<Fact>,
    actions: Vec<(String, Vec<String>, Vec<Fact>, Vec<Fact>, Vec<Fact>)>,
    init: Vec<Fact>,
    goal: Vec<Fact>,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fact(mut self, fact: Fact) -> Self {
        self.facts.push(fact);
        self
    }

    pub fn action(
        mut self,
        name: &str,
        args: &[&str],
        pre: Vec<Fact>,
        add: Vec<Fact>,
        del: Vec<Fact>,
    ) -> Self {
        self.actions.push((
            name.to_string(),
            args.iter().map(|s| s.to_string()).collect(),
            pre,
            add,
            del,
        ));
        self
    }

    pub fn init(mut self, facts: Vec<Fact>) -> Self {
        self.init = facts;
        self
    }

    pub fn goal(mut self, facts: Vec<Fact>) -> Self {
        self.goal = facts;
        self
    }

    /// Panics on facts referenced but not declared; builder inputs are
    /// programmer-controlled.
    pub fn build(self) -> PlanningInstance {
        let mut facts = self.facts;
        facts.sort();
        facts.dedup();
        let lookup = |fact: &Fact| -> FactId {
            facts
                .binary_search(fact)
                .unwrap_or_else(|_| panic!("undeclared fact {fact}"))
        };
        let to_set = |items: &[Fact]| -> FactSet {
            let mut set = FixedBitSet::with_capacity(facts.len());
            for f in items {
                set.insert(lookup(f));
            }
            set
        };

        let mut actions: Vec<GroundAction> = self
            .actions
            .iter()
            .map(|(name, args, pre, add, del)| {
                let add_set = to_set(add);
                let mut del_set = to_set(del);
                del_set.difference_with(&add_set);
                GroundAction {
                    name: name.clone(),
                    args: args.clone(),
                    pre: to_set(pre),
                    add: add_set,
                    del: del_set,
                    cost: 1,
                }
            })
            .collect();
        actions.sort_by(|a, b| (&a.name, &a.args).cmp(&(&b.name, &b.args)));

        let init = State::new(to_set(&self.init));
        let goal = to_set(&self.goal);
        PlanningInstance::from_parts(facts, actions, init, goal)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::{action_id, e1, fact_id};
    use super::*;

    #[test]
    fn applicable_requires_precondition_subset() {
        let inst = e1();
        let a1 = inst.action(action_id(&inst, "a1"));
        // state {p}
        assert!(applicable(&inst.init, a1));
        // empty state
        let empty = State::new(inst.empty_fact_set());
        assert!(!applicable(&empty, a1));
        // state {q,g}, a1 needs p
        let qg = State::new(inst.fact_set_from([fact_id(&inst, "q"), fact_id(&inst, "g")]));
        assert!(!applicable(&qg, a1));
    }

    #[test]
    fn apply_follows_delete_then_add() {
        let inst = e1();
        let a1 = inst.action(action_id(&inst, "a1"));
        let a2 = inst.action(action_id(&inst, "a2"));

        let s1 = apply(&inst.init, a1).unwrap();
        assert_eq!(s1.facts, inst.fact_set_from([fact_id(&inst, "p"), fact_id(&inst, "q")]));

        let s2 = apply(&s1, a2).unwrap();
        assert_eq!(s2.facts, inst.fact_set_from([fact_id(&inst, "q"), fact_id(&inst, "g")]));

        // inapplicable action errors out
        assert!(apply(&inst.init, a2).is_err());
    }

    #[test]
    fn apply_identity_effect_preserves_state() {
        let inst = InstanceBuilder::new()
            .fact(Fact::nullary("p"))
            .fact(Fact::nullary("q"))
            .action("noop", &[], vec![Fact::nullary("p")], vec![], vec![])
            .init(vec![Fact::nullary("p"), Fact::nullary("q")])
            .goal(vec![Fact::nullary("p")])
            .build();
        let noop = inst.action(0);
        let next = apply(&inst.init, noop).unwrap();
        assert_eq!(next, inst.init);
    }

    #[test]
    fn validate_plan_checks_applicability_and_goal() {
        let inst = e1();
        let a1 = action_id(&inst, "a1");
        let a2 = action_id(&inst, "a2");
        assert!(validate_plan(&inst, &[a1, a2]));
        assert!(!validate_plan(&inst, &[a2]));
        assert!(!validate_plan(&inst, &[a1]));
    }

    #[test]
    fn empty_plan_valid_when_goal_holds_initially() {
        let inst = InstanceBuilder::new()
            .fact(Fact::nullary("p"))
            .init(vec![Fact::nullary("p")])
            .goal(vec![Fact::nullary("p")])
            .build();
        assert!(validate_plan(&inst, &[]));
    }

    #[test]
    fn add_and_del_are_disjoint_after_build() {
        let inst = InstanceBuilder::new()
            .fact(Fact::nullary("p"))
            .fact(Fact::nullary("q"))
            .action(
                "both",
                &[],
                vec![Fact::nullary("p")],
                vec![Fact::nullary("q")],
                vec![Fact::nullary("q"), Fact::nullary("p")],
            )
            .init(vec![Fact::nullary("p")])
            .goal(vec![Fact::nullary("q")])
            .build();
        let a = inst.action(0);
        let mut overlap = a.add.clone();
        overlap.intersect_with(&a.del);
        assert_eq!(overlap.count_ones(..), 0);
        // add wins: q holds after application
        let next = apply(&inst.init, a).unwrap();
        assert!(next.contains(inst.fact_id(&Fact::nullary("q")).unwrap()));
    }

    #[test]
    fn fact_ids_follow_canonical_order() {
        let inst = e1();
        // canonical order is (predicate, args): g < p < q
        assert_eq!(inst.fact(0).predicate, "g");
        assert_eq!(inst.fact(1).predicate, "p");
        assert_eq!(inst.fact(2).predicate, "q");
    }
}
