//! Schema instantiation: from ASTs to a grounded [`PlanningInstance`].

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::ast::{Atom, DomainAst, ProblemAst, TypedName, ROOT_TYPE};
use super::ParserError;
use crate::model::{Fact, FactId, FactSet, GroundAction, PlanningInstance, State};

#[derive(Debug, Clone)]
pub struct GroundOptions {
    /// Drop ground actions whose preconditions are not delete-relaxed
    /// reachable from the initial state. Pruned actions can appear in no
    /// valid plan, so extractor outputs are unaffected.
    pub prune_unreachable: bool,
}

impl Default for GroundOptions {
    fn default() -> Self {
        GroundOptions { prune_unreachable: true }
    }
}

struct TypeTable {
    parent: HashMap<String, String>,
}

impl TypeTable {
    fn new(types: &[TypedName]) -> Self {
        let mut parent = HashMap::new();
        for t in types {
            parent.insert(t.name.clone(), t.ty.clone());
        }
        TypeTable { parent }
    }

    fn is_subtype(&self, sub: &str, sup: &str) -> bool {
        if sup == ROOT_TYPE || sub == sup {
            return true;
        }
        let mut current = sub;
        // bounded walk guards against accidental cycles
        for _ in 0..=self.parent.len() {
            match self.parent.get(current) {
                Some(p) if p == sup => return true,
                Some(p) => current = p,
                None => return false,
            }
        }
        false
    }
}

/// Grounds with default options (reachability pruning on).
pub fn ground(domain: &DomainAst, problem: &ProblemAst) -> Result<PlanningInstance, ParserError> {
    ground_with(domain, problem, &GroundOptions::default())
}

/// Grounds a parsed domain/problem pair into a [`PlanningInstance`].
///
/// The fact universe is every type-consistent instantiation of every
/// declared predicate, sorted canonically; ground actions are every
/// type-consistent instantiation of every schema that satisfies the schema's
/// equality constraints, sorted by (name, args).
pub fn ground_with(
    domain: &DomainAst,
    problem: &ProblemAst,
    options: &GroundOptions,
) -> Result<PlanningInstance, ParserError> {
    let mut objects: Vec<TypedName> = domain.constants.clone();
    for obj in &problem.objects {
        if objects.iter().any(|o| o.name == obj.name) {
            return Err(ParserError::Syntax {
                line: 0,
                col: 0,
                msg: format!("object `{}` declared more than once", obj.name),
            });
        }
        objects.push(obj.clone());
    }
    let types = TypeTable::new(&domain.types);

    let objects_of = |ty: &str| -> Vec<&str> {
        objects
            .iter()
            .filter(|o| types.is_subtype(&o.ty, ty))
            .map(|o| o.name.as_str())
            .collect()
    };

    // fact universe
    let mut facts: Vec<Fact> = Vec::new();
    for pred in &domain.predicates {
        let domains: Vec<Vec<&str>> = pred.params.iter().map(|p| objects_of(&p.ty)).collect();
        for combo in cartesian(&domains) {
            facts.push(Fact::new(
                pred.name.clone(),
                combo.iter().map(|s| s.to_string()).collect(),
            ));
        }
    }
    facts.sort();
    facts.dedup();
    let fact_index: HashMap<&Fact, FactId> =
        facts.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let lookup = |atom: &Atom, binding: &HashMap<&str, &str>| -> Option<FactId> {
        let fact = instantiate(atom, binding);
        fact_index.get(&fact).copied()
    };

    // ground actions
    let mut actions: Vec<GroundAction> = Vec::new();
    for schema in &domain.schemas {
        let domains: Vec<Vec<&str>> = schema.params.iter().map(|p| objects_of(&p.ty)).collect();
        'bindings: for combo in cartesian(&domains) {
            let binding: HashMap<&str, &str> = schema
                .params
                .iter()
                .map(|p| p.name.as_str())
                .zip(combo.iter().copied())
                .collect();
            for eq in &schema.eq {
                let left = binding.get(eq.left.as_str()).copied().unwrap_or(eq.left.as_str());
                let right = binding.get(eq.right.as_str()).copied().unwrap_or(eq.right.as_str());
                if (left == right) == eq.negated {
                    continue 'bindings;
                }
            }
            let mut pre = FixedBitSet::with_capacity(facts.len());
            let mut add = FixedBitSet::with_capacity(facts.len());
            let mut del = FixedBitSet::with_capacity(facts.len());
            for (atoms, set) in
                [(&schema.pre, &mut pre), (&schema.add, &mut add), (&schema.del, &mut del)]
            {
                for atom in atoms.iter() {
                    match lookup(atom, &binding) {
                        Some(id) => set.insert(id),
                        // instantiation is inconsistent with the predicate's
                        // declared types; the binding yields no real action
                        None => continue 'bindings,
                    }
                }
            }
            del.difference_with(&add);
            actions.push(GroundAction {
                name: schema.name.clone(),
                args: combo.iter().map(|s| s.to_string()).collect(),
                pre,
                add,
                del,
                cost: 1,
            });
        }
    }
    actions.sort_by(|a, b| (&a.name, &a.args).cmp(&(&b.name, &b.args)));

    // initial state and goal
    let empty_binding = HashMap::new();
    let mut init = FixedBitSet::with_capacity(facts.len());
    for atom in &problem.init {
        match lookup(atom, &empty_binding) {
            Some(id) => init.insert(id),
            None => {
                return Err(ParserError::InitAtomOutsideUniverse {
                    atom: instantiate(atom, &empty_binding).to_string(),
                })
            }
        }
    }
    let mut goal = FixedBitSet::with_capacity(facts.len());
    for atom in &problem.goal {
        match lookup(atom, &empty_binding) {
            Some(id) => goal.insert(id),
            None => {
                return Err(ParserError::GoalAtomOutsideUniverse {
                    atom: instantiate(atom, &empty_binding).to_string(),
                })
            }
        }
    }

    if options.prune_unreachable {
        let reachable = relaxed_fixpoint(&init, &actions, facts.len());
        actions.retain(|a| a.pre.is_subset(&reachable));
    }

    Ok(PlanningInstance::from_parts(facts, actions, State::new(init), goal))
}

fn instantiate(atom: &Atom, binding: &HashMap<&str, &str>) -> Fact {
    Fact::new(
        atom.predicate.clone(),
        atom.args
            .iter()
            .map(|a| binding.get(a.as_str()).copied().unwrap_or(a.as_str()).to_string())
            .collect(),
    )
}

fn cartesian<'a>(domains: &'a [Vec<&'a str>]) -> impl Iterator<Item = Vec<&'a str>> + 'a {
    let total: usize = domains.iter().map(|d| d.len().max(0)).product();
    let empty = domains.iter().any(|d| d.is_empty());
    let count = if empty && !domains.is_empty() { 0 } else { total };
    (0..count).map(move |mut idx| {
        let mut combo = Vec::with_capacity(domains.len());
        for d in domains {
            combo.push(d[idx % d.len()]);
            idx /= d.len();
        }
        combo
    })
}

fn relaxed_fixpoint(init: &FactSet, actions: &[GroundAction], num_facts: usize) -> FactSet {
    let mut reached = init.clone();
    let mut applied = vec![false; actions.len()];
    loop {
        let before = reached.count_ones(..);
        for (i, action) in actions.iter().enumerate() {
            if !applied[i] && action.pre.is_subset(&reached) {
                reached.union_with(&action.add);
                applied[i] = true;
            }
        }
        if reached.count_ones(..) == before || reached.count_ones(..) == num_facts {
            return reached;
        }
    }
}
