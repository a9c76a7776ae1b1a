//! In-repo fixture corpus: tiny hand-analyzed domains plus generated
//! blocks-world and logistics-style problems with scripted plans.
//!
//! Everything here is deterministic. Observation files are derived from the
//! scripted full plan by an even index stride, so the same spec always
//! produces byte-identical bundles; noisy variants splice fixed spurious
//! actions into the sampled observations.

use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::Path;

use super::bundle::{NOISELESS_LEVELS, NOISY_LEVELS};

/// Two-step chain: a1 enables a2 which achieves the goal.
pub fn chain_domain() -> &'static str {
    "(define (domain chain)
  (:requirements :strips)
  (:predicates (p) (q) (g))
  (:action a1 :parameters () :precondition (p) :effect (q))
  (:action a2 :parameters () :precondition (q) :effect (and (g) (not (p)))))
"
}

pub fn chain_problem() -> &'static str {
    "(define (problem chain-1)
  (:domain chain)
  (:init (p))
  (:goal (g)))
"
}

/// Two parallel branches reaching the same goal.
pub fn fork_domain() -> &'static str {
    "(define (domain fork)
  (:requirements :strips)
  (:predicates (p) (q1) (q2) (g))
  (:action a1 :parameters () :precondition (p) :effect (q1))
  (:action a2 :parameters () :precondition (p) :effect (q2))
  (:action a3 :parameters () :precondition (q1) :effect (g))
  (:action a4 :parameters () :precondition (q2) :effect (g)))
"
}

pub fn fork_problem() -> &'static str {
    "(define (problem fork-1)
  (:domain fork)
  (:init (p))
  (:goal (g)))
"
}

/// Four-operator blocks world with equality constraints on stack/unstack.
pub fn blocks_domain() -> &'static str {
    "(define (domain blocks)
  (:requirements :strips :equality)
  (:predicates (on ?x ?y) (ontable ?x) (clear ?x) (handempty) (holding ?x))
  (:action pick-up
    :parameters (?x)
    :precondition (and (clear ?x) (ontable ?x) (handempty))
    :effect (and (not (ontable ?x)) (not (clear ?x)) (not (handempty)) (holding ?x)))
  (:action put-down
    :parameters (?x)
    :precondition (holding ?x)
    :effect (and (not (holding ?x)) (clear ?x) (handempty) (ontable ?x)))
  (:action stack
    :parameters (?x ?y)
    :precondition (and (holding ?x) (clear ?y) (not (= ?x ?y)))
    :effect (and (not (holding ?x)) (not (clear ?y)) (clear ?x) (handempty) (on ?x ?y)))
  (:action unstack
    :parameters (?x ?y)
    :precondition (and (on ?x ?y) (clear ?x) (handempty) (not (= ?x ?y)))
    :effect (and (holding ?x) (clear ?y) (not (clear ?x)) (not (handempty)) (not (on ?x ?y)))))
"
}

/// One-truck logistics over a line of locations.
pub fn logistics_domain() -> &'static str {
    "(define (domain logistics)
  (:requirements :strips :typing :equality)
  (:types truck package - physobj location)
  (:predicates (at ?o - physobj ?l - location)
               (in ?p - package ?t - truck)
               (connected ?a - location ?b - location))
  (:action drive
    :parameters (?t - truck ?from - location ?to - location)
    :precondition (and (at ?t ?from) (connected ?from ?to) (not (= ?from ?to)))
    :effect (and (at ?t ?to) (not (at ?t ?from))))
  (:action load
    :parameters (?p - package ?t - truck ?l - location)
    :precondition (and (at ?p ?l) (at ?t ?l))
    :effect (and (in ?p ?t) (not (at ?p ?l))))
  (:action unload
    :parameters (?p - package ?t - truck ?l - location)
    :precondition (and (in ?p ?t) (at ?t ?l))
    :effect (and (at ?p ?l) (not (in ?p ?t)))))
"
}

// ---------------------------------------------------------------------------
// blocks-world generation

type Stacks = Vec<Vec<String>>;
type OnPairs = Vec<(String, String)>;

fn stacks(spec: &[&[&str]]) -> Stacks {
    spec.iter().map(|s| s.iter().map(|b| b.to_string()).collect()).collect()
}

/// on-pairs for a tower listed bottom to top.
fn tower(blocks: &[&str]) -> OnPairs {
    blocks.windows(2).map(|w| (w[1].to_string(), w[0].to_string())).collect()
}

fn pair(x: &str, y: &str) -> OnPairs {
    vec![(x.to_string(), y.to_string())]
}

fn on_line(pairs: &OnPairs) -> String {
    pairs.iter().map(|(x, y)| format!("(on {x} {y})")).collect::<Vec<_>>().join(",")
}

fn blocks_template(name: &str, blocks: &[&str], init: &Stacks) -> String {
    let mut init_atoms = vec!["(handempty)".to_string()];
    for stack in init {
        init_atoms.push(format!("(ontable {})", stack[0]));
        for w in stack.windows(2) {
            init_atoms.push(format!("(on {} {})", w[1], w[0]));
        }
        init_atoms.push(format!("(clear {})", stack.last().unwrap()));
    }
    format!(
        "(define (problem {name})\n  (:domain blocks)\n  (:objects {})\n  (:init {})\n  (:goal (and <HYPOTHESIS>)))\n",
        blocks.join(" "),
        init_atoms.join(" ")
    )
}

/// Unstack everything onto the table, then build each goal tower bottom-up.
fn blocks_plan(init: &Stacks, goal: &OnPairs) -> Vec<String> {
    let mut plan = Vec::new();
    let mut state = init.clone();
    loop {
        let Some(stack) = state.iter_mut().find(|s| s.len() > 1) else { break };
        let top = stack.pop().unwrap();
        let below = stack.last().unwrap().clone();
        plan.push(format!("(unstack {top} {below})"));
        plan.push(format!("(put-down {top})"));
        state.push(vec![top]);
    }
    // on(x, y) puts x onto y; towers are linear so each block supports at
    // most one other
    let above: HashMap<&str, &str> =
        goal.iter().map(|(x, y)| (y.as_str(), x.as_str())).collect();
    let uppers: Vec<&str> = goal.iter().map(|(x, _)| x.as_str()).collect();
    let mut bases: Vec<&str> =
        goal.iter().map(|(_, y)| y.as_str()).filter(|y| !uppers.contains(y)).collect();
    bases.sort_unstable();
    bases.dedup();
    for base in bases {
        let mut current = base;
        while let Some(&x) = above.get(current) {
            plan.push(format!("(pick-up {x})"));
            plan.push(format!("(stack {x} {current})"));
            current = x;
        }
    }
    plan
}

// ---------------------------------------------------------------------------
// logistics generation

struct LogisticsLayout {
    locations: usize,
    truck_at: usize,
    /// (package, initial location index)
    packages: Vec<(String, usize)>,
}

fn packages(spec: &[(&str, usize)]) -> Vec<(String, usize)> {
    spec.iter().map(|(p, l)| (p.to_string(), *l)).collect()
}

fn logistics_template(name: &str, layout: &LogisticsLayout) -> String {
    let pkg_names: Vec<&str> = layout.packages.iter().map(|(p, _)| p.as_str()).collect();
    let loc_names: Vec<String> = (1..=layout.locations).map(|i| format!("l{i}")).collect();
    let mut init = vec![format!("(at t1 l{})", layout.truck_at)];
    for (pkg, loc) in &layout.packages {
        init.push(format!("(at {pkg} l{loc})"));
    }
    for i in 1..layout.locations {
        init.push(format!("(connected l{i} l{})", i + 1));
        init.push(format!("(connected l{} l{i})", i + 1));
    }
    format!(
        "(define (problem {name})\n  (:domain logistics)\n  (:objects t1 - truck {} - package {} - location)\n  (:init {})\n  (:goal (and <HYPOTHESIS>)))\n",
        pkg_names.join(" "),
        loc_names.join(" "),
        init.join(" ")
    )
}

fn at_line(goals: &[(&str, usize)]) -> String {
    goals.iter().map(|(p, l)| format!("(at {p} l{l})")).collect::<Vec<_>>().join(",")
}

/// Deliver each goal package in order, walking the location line.
fn logistics_plan(layout: &LogisticsLayout, goals: &[(&str, usize)]) -> Vec<String> {
    let mut plan = Vec::new();
    let mut truck = layout.truck_at;
    let mut drive_to = |plan: &mut Vec<String>, truck: &mut usize, dest: usize| {
        while *truck < dest {
            plan.push(format!("(drive t1 l{} l{})", *truck, *truck + 1));
            *truck += 1;
        }
        while *truck > dest {
            plan.push(format!("(drive t1 l{} l{})", *truck, *truck - 1));
            *truck -= 1;
        }
    };
    for (pkg, dest) in goals {
        let from = layout
            .packages
            .iter()
            .find(|(p, _)| p == pkg)
            .map(|(_, l)| *l)
            .expect("goal package exists");
        drive_to(&mut plan, &mut truck, from);
        plan.push(format!("(load {pkg} t1 l{from})"));
        drive_to(&mut plan, &mut truck, *dest);
        plan.push(format!("(unload {pkg} t1 l{dest})"));
    }
    plan
}

// ---------------------------------------------------------------------------
// bundle corpus

/// A base recognition problem: everything needed to materialize bundle
/// directories at any observability level.
#[derive(Debug, Clone)]
pub struct BundleSpec {
    pub name: String,
    /// Directory grouping tag under the suite root.
    pub domain_tag: &'static str,
    pub domain_text: String,
    pub template: String,
    pub hyps: Vec<String>,
    pub real: usize,
    /// Scripted full plan for the real goal, one action line per step.
    pub plan: Vec<String>,
    /// (insertion index, action line) splices for the noisy variant.
    pub spurious: Vec<(usize, String)>,
    /// Whether the spec is part of the noisy sub-corpus.
    pub noisy_variant: bool,
}

fn blocks_spec(
    name: &str,
    blocks: &[&str],
    init: &[&[&str]],
    hyps: Vec<OnPairs>,
    real: usize,
    spurious: &[(usize, &str)],
) -> BundleSpec {
    let init = stacks(init);
    let plan = blocks_plan(&init, &hyps[real]);
    BundleSpec {
        name: name.to_string(),
        domain_tag: "blocks",
        domain_text: blocks_domain().to_string(),
        template: blocks_template(name, blocks, &init),
        hyps: hyps.iter().map(on_line).collect(),
        real,
        plan,
        spurious: spurious.iter().map(|(i, s)| (*i, s.to_string())).collect(),
        noisy_variant: !spurious.is_empty(),
    }
}

fn logistics_spec(
    name: &str,
    layout: LogisticsLayout,
    hyps: Vec<Vec<(&str, usize)>>,
    extra_hyps: &[&str],
    real: usize,
    spurious: &[(usize, &str)],
) -> BundleSpec {
    let plan = logistics_plan(&layout, &hyps[real]);
    let mut lines: Vec<String> = hyps.iter().map(|g| at_line(g)).collect();
    lines.extend(extra_hyps.iter().map(|s| s.to_string()));
    BundleSpec {
        name: name.to_string(),
        domain_tag: "logistics",
        domain_text: logistics_domain().to_string(),
        template: logistics_template(name, &layout),
        hyps: lines,
        real,
        plan,
        spurious: spurious.iter().map(|(i, s)| (*i, s.to_string())).collect(),
        noisy_variant: !spurious.is_empty(),
    }
}

/// The full base corpus; every spec yields one bundle per observability
/// level.
pub fn bundle_specs() -> Vec<BundleSpec> {
    let b = |s: &'static [&'static str]| s;
    let mut specs = Vec::new();

    // blocks, three blocks
    specs.push(blocks_spec(
        "b3-invert",
        &["a", "b", "c"],
        &[b(&["a", "b", "c"])],
        vec![
            tower(&["a", "c", "b"]),
            tower(&["b", "a", "c"]),
            tower(&["b", "c", "a"]),
            tower(&["c", "a", "b"]),
            tower(&["c", "b", "a"]),
        ],
        4,
        &[],
    ));
    specs.push(blocks_spec(
        "b3-pairs-flat",
        &["a", "b", "c"],
        &[b(&["a"]), b(&["b"]), b(&["c"])],
        vec![
            pair("a", "b"),
            pair("a", "c"),
            pair("b", "a"),
            pair("b", "c"),
            pair("c", "a"),
            pair("c", "b"),
        ],
        0,
        &[],
    ));
    specs.push(blocks_spec(
        "b3-pairs-stacked",
        &["a", "b", "c"],
        &[b(&["a", "b"]), b(&["c"])],
        vec![
            pair("a", "b"),
            pair("a", "c"),
            pair("b", "a"),
            pair("b", "c"),
            pair("c", "a"),
            pair("c", "b"),
        ],
        5,
        &[(1, "(pick-up a)")],
    ));
    specs.push(blocks_spec(
        "b3-rebuild",
        &["a", "b", "c"],
        &[b(&["c", "b", "a"])],
        vec![
            tower(&["a", "b", "c"]),
            tower(&["a", "c", "b"]),
            tower(&["b", "a", "c"]),
            tower(&["b", "c", "a"]),
            tower(&["c", "a", "b"]),
        ],
        0,
        &[],
    ));
    specs.push(blocks_spec(
        "b3-two-towers",
        &["a", "b", "c"],
        &[b(&["a"]), b(&["b", "c"])],
        vec![
            tower(&["a", "b", "c"]),
            tower(&["a", "c", "b"]),
            tower(&["c", "b", "a"]),
            pair("a", "c"),
            pair("b", "a"),
        ],
        1,
        &[],
    ));
    specs.push(blocks_spec(
        "b3-flat-towers",
        &["a", "b", "c"],
        &[b(&["a"]), b(&["b"]), b(&["c"])],
        vec![
            tower(&["a", "b", "c"]),
            tower(&["a", "c", "b"]),
            tower(&["b", "a", "c"]),
            tower(&["b", "c", "a"]),
            tower(&["c", "a", "b"]),
            tower(&["c", "b", "a"]),
        ],
        3,
        &[],
    ));
    specs.push(blocks_spec(
        "b3-drop",
        &["a", "b", "c"],
        &[b(&["b", "a"]), b(&["c"])],
        vec![
            pair("a", "c"),
            pair("c", "a"),
            pair("b", "c"),
            pair("c", "b"),
            pair("a", "b"),
        ],
        0,
        &[],
    ));
    specs.push(blocks_spec(
        "b3-mixed",
        &["a", "b", "c"],
        &[b(&["c", "a"]), b(&["b"])],
        vec![
            pair("a", "b"),
            pair("b", "c"),
            tower(&["c", "b", "a"]),
            tower(&["b", "c", "a"]),
            pair("c", "a"),
        ],
        2,
        &[(2, "(pick-up b)")],
    ));
    specs.push(blocks_spec(
        "b3-overlap",
        &["a", "b", "c"],
        &[b(&["a"]), b(&["b"]), b(&["c"])],
        vec![
            pair("a", "b"),
            tower(&["c", "b", "a"]),
            pair("b", "c"),
            pair("c", "a"),
        ],
        1,
        &[],
    ));
    specs.push(blocks_spec(
        "b3-shuffle",
        &["a", "b", "c"],
        &[b(&["b", "c"]), b(&["a"])],
        vec![
            tower(&["a", "b", "c"]),
            tower(&["c", "a", "b"]),
            tower(&["b", "a", "c"]),
            pair("c", "a"),
            pair("b", "a"),
        ],
        0,
        &[],
    ));

    // blocks, four blocks
    specs.push(blocks_spec(
        "b4-invert",
        &["a", "b", "c", "d"],
        &[b(&["a", "b", "c", "d"])],
        vec![
            tower(&["d", "c", "b", "a"]),
            tower(&["b", "a", "d", "c"]),
            tower(&["c", "d", "a", "b"]),
            tower(&["a", "c", "b", "d"]),
            tower(&["d", "b", "c", "a"]),
        ],
        0,
        &[(3, "(put-down a)")],
    ));
    specs.push(blocks_spec(
        "b4-wide",
        &["a", "b", "c", "d"],
        &[b(&["a", "b"]), b(&["c", "d"])],
        vec![
            pair("a", "b"),
            pair("a", "c"),
            pair("a", "d"),
            pair("b", "a"),
            pair("b", "c"),
            pair("b", "d"),
            pair("c", "a"),
            pair("c", "b"),
            pair("c", "d"),
            pair("d", "a"),
            pair("d", "b"),
            pair("d", "c"),
            tower(&["a", "b", "c"]),
            tower(&["a", "c", "b"]),
            tower(&["b", "c", "d"]),
            tower(&["b", "d", "c"]),
            tower(&["c", "a", "d"]),
            tower(&["d", "a", "b"]),
            tower(&["d", "c", "a"]),
            tower(&["a", "b", "c", "d"]),
        ],
        19,
        &[(2, "(pick-up d)"), (6, "(put-down d)")],
    ));
    specs.push(blocks_spec(
        "b4-flat",
        &["a", "b", "c", "d"],
        &[b(&["a"]), b(&["b"]), b(&["c"]), b(&["d"])],
        vec![
            tower(&["a", "b", "c", "d"]),
            tower(&["b", "a", "d", "c"]),
            tower(&["c", "d", "b", "a"]),
            tower(&["d", "c", "a", "b"]),
            tower(&["a", "d", "c", "b"]),
            tower(&["b", "c", "d", "a"]),
        ],
        1,
        &[],
    ));
    specs.push(blocks_spec(
        "b4-caps",
        &["a", "b", "c", "d"],
        &[b(&["a", "b", "c"]), b(&["d"])],
        vec![
            pair("d", "c"),
            pair("d", "a"),
            tower(&["a", "b", "c", "d"]),
            tower(&["b", "c", "d", "a"]),
            pair("c", "d"),
            tower(&["d", "a", "b"]),
        ],
        3,
        &[],
    ));
    specs.push(blocks_spec(
        "b4-deep-swap",
        &["a", "b", "c", "d"],
        &[b(&["d", "c", "b", "a"])],
        vec![
            tower(&["a", "b", "c", "d"]),
            tower(&["a", "c", "d", "b"]),
            tower(&["b", "d", "a", "c"]),
            tower(&["c", "b", "a", "d"]),
            tower(&["d", "a", "b", "c"]),
        ],
        0,
        &[(5, "(pick-up c)")],
    ));
    specs.push(blocks_spec(
        "b4-two-two",
        &["a", "b", "c", "d"],
        &[b(&["a", "c"]), b(&["b", "d"])],
        vec![
            tower(&["b", "c", "d"]),
            tower(&["a", "d", "c"]),
            tower(&["c", "a", "b"]),
            pair("d", "a"),
            pair("c", "b"),
            tower(&["d", "b", "a", "c"]),
        ],
        0,
        &[],
    ));
    specs.push(blocks_spec(
        "b4-partial",
        &["a", "b", "c", "d"],
        &[b(&["c", "d"]), b(&["a"]), b(&["b"])],
        vec![
            pair("a", "d"),
            tower(&["d", "a", "b"]),
            tower(&["b", "a", "d"]),
            pair("b", "c"),
            tower(&["a", "b", "c", "d"]),
            pair("d", "b"),
        ],
        1,
        &[],
    ));
    specs.push(blocks_spec(
        "b4-shared-prefix",
        &["a", "b", "c", "d"],
        &[b(&["a"]), b(&["b"]), b(&["c"]), b(&["d"])],
        vec![
            tower(&["a", "b", "c", "d"]),
            tower(&["a", "b", "d", "c"]),
            tower(&["a", "c", "b", "d"]),
            tower(&["a", "c", "d", "b"]),
            tower(&["a", "d", "b", "c"]),
        ],
        1,
        &[(4, "(pick-up c)"), (8, "(put-down c)")],
    ));

    // logistics
    specs.push(logistics_spec(
        "log-1p-far",
        LogisticsLayout { locations: 5, truck_at: 1, packages: packages(&[("p1", 2)]) },
        vec![
            vec![("p1", 1)],
            vec![("p1", 3)],
            vec![("p1", 4)],
            vec![("p1", 5)],
        ],
        &[],
        3,
        &[(2, "(drive t1 l2 l1)")],
    ));
    specs.push(logistics_spec(
        "log-1p-near",
        LogisticsLayout { locations: 4, truck_at: 4, packages: packages(&[("p1", 2)]) },
        vec![vec![("p1", 1)], vec![("p1", 3)], vec![("p1", 4)]],
        &[],
        0,
        &[],
    ));
    specs.push(logistics_spec(
        "log-2p-cross",
        LogisticsLayout { locations: 5, truck_at: 3, packages: packages(&[("p1", 1), ("p2", 5)]) },
        vec![
            vec![("p1", 5), ("p2", 1)],
            vec![("p1", 4), ("p2", 2)],
            vec![("p1", 5), ("p2", 3)],
            vec![("p1", 2), ("p2", 1)],
            vec![("p1", 3), ("p2", 4)],
        ],
        &[],
        0,
        &[(4, "(drive t1 l3 l4)")],
    ));
    specs.push(logistics_spec(
        "log-2p-same-dest",
        LogisticsLayout { locations: 4, truck_at: 1, packages: packages(&[("p1", 2), ("p2", 3)]) },
        vec![
            vec![("p1", 4), ("p2", 4)],
            vec![("p1", 1), ("p2", 1)],
            vec![("p1", 4), ("p2", 1)],
            vec![("p1", 1), ("p2", 4)],
        ],
        &[],
        0,
        &[],
    ));
    specs.push(logistics_spec(
        "log-unreach-hyp",
        LogisticsLayout { locations: 4, truck_at: 1, packages: packages(&[("p1", 3)]) },
        vec![vec![("p1", 1)], vec![("p1", 4)], vec![("p1", 2)]],
        // connected(l1,l3) is in the universe but never achievable
        &["(connected l1 l3)"],
        0,
        &[],
    ));
    specs.push(logistics_spec(
        "log-1p-mid",
        LogisticsLayout { locations: 5, truck_at: 5, packages: packages(&[("p1", 1)]) },
        vec![
            vec![("p1", 2)],
            vec![("p1", 3)],
            vec![("p1", 4)],
            vec![("p1", 5)],
        ],
        &[],
        1,
        &[],
    ));
    specs.push(logistics_spec(
        "log-1p-long",
        LogisticsLayout { locations: 6, truck_at: 1, packages: packages(&[("p1", 6)]) },
        vec![
            vec![("p1", 1)],
            vec![("p1", 2)],
            vec![("p1", 3)],
            vec![("p1", 4)],
            vec![("p1", 5)],
        ],
        &[],
        0,
        &[(3, "(drive t1 l2 l3)")],
    ));
    specs.push(logistics_spec(
        "log-2p-far",
        LogisticsLayout { locations: 5, truck_at: 2, packages: packages(&[("p1", 4), ("p2", 1)]) },
        vec![
            vec![("p1", 1), ("p2", 5)],
            vec![("p1", 5), ("p2", 1)],
            vec![("p1", 1), ("p2", 2)],
            vec![("p1", 2), ("p2", 5)],
            vec![("p1", 3), ("p2", 3)],
            vec![("p1", 5), ("p2", 4)],
        ],
        &[],
        0,
        &[(6, "(drive t1 l1 l2)")],
    ));
    specs.push(logistics_spec(
        "log-1p-choice",
        LogisticsLayout { locations: 4, truck_at: 2, packages: packages(&[("p1", 2)]) },
        vec![vec![("p1", 1)], vec![("p1", 3)], vec![("p1", 4)]],
        &[],
        2,
        &[],
    ));
    specs.push(logistics_spec(
        "log-2p-partial",
        LogisticsLayout { locations: 4, truck_at: 1, packages: packages(&[("p1", 2), ("p2", 2)]) },
        vec![
            vec![("p1", 3)],
            vec![("p2", 4)],
            vec![("p1", 3), ("p2", 4)],
            vec![("p1", 4), ("p2", 3)],
            vec![("p1", 1), ("p2", 1)],
            vec![("p2", 3)],
        ],
        &[],
        2,
        &[],
    ));

    // hand-analyzed toy problems
    specs.push(BundleSpec {
        name: "chain-1".to_string(),
        domain_tag: "chain",
        domain_text: chain_domain().to_string(),
        template: "(define (problem chain-1)\n  (:domain chain)\n  (:init (p))\n  (:goal (and <HYPOTHESIS>)))\n".to_string(),
        hyps: vec!["(g)".to_string(), "(q)".to_string()],
        real: 0,
        plan: vec!["(a1)".to_string(), "(a2)".to_string()],
        spurious: vec![],
        noisy_variant: false,
    });
    specs.push(BundleSpec {
        name: "fork-1".to_string(),
        domain_tag: "fork",
        domain_text: fork_domain().to_string(),
        template: "(define (problem fork-1)\n  (:domain fork)\n  (:init (p))\n  (:goal (and <HYPOTHESIS>)))\n".to_string(),
        hyps: vec!["(g)".to_string(), "(q1)".to_string(), "(q2)".to_string()],
        real: 0,
        plan: vec!["(a1)".to_string(), "(a3)".to_string()],
        spurious: vec![],
        noisy_variant: false,
    });

    specs
}

/// Even-stride sample keeping `percent`% of the plan: index `i` is kept
/// when the scaled counter crosses an integer boundary.
pub fn sample_observations(plan: &[String], percent: u8) -> Vec<String> {
    let percent = percent as usize;
    plan.iter()
        .enumerate()
        .filter(|(i, _)| ((i + 1) * percent) / 100 > (i * percent) / 100)
        .map(|(_, line)| line.clone())
        .collect()
}

/// Materializes one bundle directory at the given observability level.
pub fn write_bundle(
    dir: &Path,
    spec: &BundleSpec,
    percent: u8,
    noisy: bool,
) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut obs = sample_observations(&spec.plan, percent);
    if noisy {
        for (pos, action) in &spec.spurious {
            obs.insert((*pos).min(obs.len()), action.clone());
        }
    }
    fs::write(dir.join("domain.pddl"), &spec.domain_text)?;
    fs::write(dir.join("template.pddl"), &spec.template)?;
    fs::write(dir.join("hyps.dat"), spec.hyps.join("\n") + "\n")?;
    fs::write(dir.join("obs.dat"), obs.join("\n") + "\n")?;
    fs::write(dir.join("real_hyp.dat"), spec.hyps[spec.real].clone() + "\n")?;
    Ok(())
}

/// Writes the whole fixture suite under `root`:
/// `<tag>/<level>/<name>/` for noiseless levels and
/// `<tag>-noisy/<level>/<name>/` for the noisy sub-corpus.
/// Returns the number of bundles written.
pub fn write_suite(root: &Path) -> io::Result<usize> {
    let mut count = 0;
    for spec in bundle_specs() {
        for level in NOISELESS_LEVELS {
            let dir = root.join(spec.domain_tag).join(level.to_string()).join(&spec.name);
            write_bundle(&dir, &spec, level, false)?;
            count += 1;
        }
        if spec.noisy_variant {
            for level in NOISY_LEVELS {
                let dir = root
                    .join(format!("{}-noisy", spec.domain_tag))
                    .join(level.to_string())
                    .join(&spec.name);
                write_bundle(&dir, &spec, level, true)?;
                count += 1;
            }
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// oracle corpus

/// A (domain, problem) pair small enough for exhaustive plan enumeration.
#[derive(Debug, Clone)]
pub struct OracleInstance {
    pub name: String,
    pub domain: String,
    pub problem: String,
}

fn blocks_oracle(name: &str, blocks: &[&str], init: &[&[&str]], goal: OnPairs) -> OracleInstance {
    let init = stacks(init);
    let goal_atoms: Vec<String> =
        goal.iter().map(|(x, y)| format!("(on {x} {y})")).collect();
    let template = blocks_template(name, blocks, &init);
    OracleInstance {
        name: name.to_string(),
        domain: blocks_domain().to_string(),
        problem: template.replace("<HYPOTHESIS>", &goal_atoms.join(" ")),
    }
}

fn logistics_oracle(name: &str, layout: LogisticsLayout, goal: &[(&str, usize)]) -> OracleInstance {
    let template = logistics_template(name, &layout);
    OracleInstance {
        name: name.to_string(),
        domain: logistics_domain().to_string(),
        problem: template.replace("<HYPOTHESIS>", &at_line(goal).replace(',', " ")),
    }
}

/// Desk-scale instances for the brute-force landmark soundness check.
pub fn oracle_instances() -> Vec<OracleInstance> {
    let b = |s: &'static [&'static str]| s;
    let mut instances = vec![
        OracleInstance {
            name: "chain-1".to_string(),
            domain: chain_domain().to_string(),
            problem: chain_problem().to_string(),
        },
        OracleInstance {
            name: "fork-1".to_string(),
            domain: fork_domain().to_string(),
            problem: fork_problem().to_string(),
        },
    ];

    instances.push(blocks_oracle("o-b3-pair", &["a", "b", "c"],
        &[b(&["a"]), b(&["b"]), b(&["c"])], pair("a", "b")));
    instances.push(blocks_oracle("o-b3-tower", &["a", "b", "c"],
        &[b(&["a"]), b(&["b"]), b(&["c"])], tower(&["a", "b", "c"])));
    instances.push(blocks_oracle("o-b3-under", &["a", "b", "c"],
        &[b(&["a", "b", "c"])], pair("c", "a")));
    instances.push(blocks_oracle("o-b3-lift", &["a", "b", "c"],
        &[b(&["a", "b"]), b(&["c"])], pair("a", "c")));
    instances.push(blocks_oracle("o-b3-invert", &["a", "b", "c"],
        &[b(&["a", "b", "c"])], tower(&["c", "b", "a"])));
    instances.push(blocks_oracle("o-b3-mount", &["a", "b", "c"],
        &[b(&["b", "a"]), b(&["c"])], pair("c", "a")));
    instances.push(blocks_oracle("o-b3-swap-top", &["a", "b", "c"],
        &[b(&["c", "b"]), b(&["a"])], pair("b", "a")));
    instances.push(blocks_oracle("o-b3-single", &["a", "b", "c"],
        &[b(&["a"]), b(&["b"]), b(&["c"])], pair("c", "a")));
    instances.push(blocks_oracle("o-b3-onto-tower", &["a", "b", "c"],
        &[b(&["a"]), b(&["b", "c"])], pair("a", "c")));
    instances.push(blocks_oracle("o-b3-restack", &["a", "b", "c"],
        &[b(&["c", "a"]), b(&["b"])], tower(&["b", "c", "a"])));

    instances.push(blocks_oracle("o-b4-bridge", &["a", "b", "c", "d"],
        &[b(&["a", "b"]), b(&["c", "d"])], pair("b", "d")));
    instances.push(blocks_oracle("o-b4-flat-pairs", &["a", "b", "c", "d"],
        &[b(&["a"]), b(&["b"]), b(&["c"]), b(&["d"])],
        vec![("b".to_string(), "a".to_string()), ("d".to_string(), "c".to_string())]));
    instances.push(blocks_oracle("o-b4-cap", &["a", "b", "c", "d"],
        &[b(&["a", "b", "c"]), b(&["d"])], pair("c", "d")));
    instances.push(blocks_oracle("o-b4-mid-tower", &["a", "b", "c", "d"],
        &[b(&["a", "b"]), b(&["c"]), b(&["d"])], tower(&["c", "d", "a"])));

    instances.push(logistics_oracle("o-log-deliver",
        LogisticsLayout { locations: 3, truck_at: 1, packages: packages(&[("p1", 1)]) },
        &[("p1", 3)]));
    instances.push(logistics_oracle("o-log-fetch",
        LogisticsLayout { locations: 2, truck_at: 2, packages: packages(&[("p1", 1)]) },
        &[("p1", 2)]));
    instances.push(logistics_oracle("o-log-back",
        LogisticsLayout { locations: 3, truck_at: 3, packages: packages(&[("p1", 2)]) },
        &[("p1", 1)]));
    instances.push(logistics_oracle("o-log-swap",
        LogisticsLayout { locations: 2, truck_at: 1, packages: packages(&[("p1", 1), ("p2", 2)]) },
        &[("p1", 2), ("p2", 1)]));
    instances.push(logistics_oracle("o-log-mid",
        LogisticsLayout { locations: 3, truck_at: 2, packages: packages(&[("p1", 1)]) },
        &[("p1", 3)]));
    instances.push(logistics_oracle("o-log-stay-near",
        LogisticsLayout { locations: 3, truck_at: 1, packages: packages(&[("p1", 3)]) },
        &[("p1", 2)]));

    instances
}
