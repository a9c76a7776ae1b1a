use super::*;
use crate::model::fixtures::{e1, e2, fact_id};
use crate::model::{Fact, InstanceBuilder};

fn conj_names(instance: &PlanningInstance, set: &LandmarkSet) -> Vec<String> {
    let mut names: Vec<String> =
        set.conjunctive_facts().map(|f| instance.fact(f).to_string()).collect();
    names.sort();
    names
}

fn disj_sets(instance: &PlanningInstance, set: &LandmarkSet) -> Vec<Vec<String>> {
    set.landmarks
        .iter()
        .filter(|l| l.kind == LandmarkKind::Disjunctive)
        .map(|l| l.facts.iter().map(|&f| instance.fact(f).to_string()).collect())
        .collect()
}

/// Instance where the goal holds initially and the universe is the goal.
fn trivial_goal_instance() -> PlanningInstance {
    InstanceBuilder::new()
        .fact(Fact::nullary("g1"))
        .fact(Fact::nullary("g2"))
        .init(vec![Fact::nullary("g1"), Fact::nullary("g2")])
        .goal(vec![Fact::nullary("g1"), Fact::nullary("g2")])
        .build()
}

fn unsolvable_instance() -> PlanningInstance {
    InstanceBuilder::new()
        .fact(Fact::nullary("p"))
        .fact(Fact::nullary("g"))
        .init(vec![Fact::nullary("p")])
        .goal(vec![Fact::nullary("g")])
        .build()
}

#[test]
fn verify_candidate_on_the_chain_and_fork() {
    let chain = e1();
    assert!(verify_candidate(&chain, &Landmark::conjunctive(fact_id(&chain, "q"))));
    assert!(verify_candidate(&chain, &Landmark::conjunctive(fact_id(&chain, "p"))));

    let fork = e2();
    // a plan through q2 survives forbidding q1
    assert!(!verify_candidate(&fork, &Landmark::conjunctive(fact_id(&fork, "q1"))));
    assert!(!verify_candidate(&fork, &Landmark::conjunctive(fact_id(&fork, "q2"))));
    assert!(verify_candidate(
        &fork,
        &Landmark::disjunctive(vec![fact_id(&fork, "q1"), fact_id(&fork, "q2")])
    ));
}

#[test]
fn exhaust_finds_all_chain_facts() {
    let inst = e1();
    let set = extract_exhaust(&inst).unwrap();
    assert_eq!(conj_names(&inst, &set), ["g", "p", "q"]);
}

#[test]
fn exhaust_skips_individual_fork_branches() {
    let inst = e2();
    let set = extract_exhaust(&inst).unwrap();
    assert_eq!(conj_names(&inst, &set), ["g", "p"]);
}

#[test]
fn exhaust_on_trivial_instance_returns_goal_facts() {
    let inst = trivial_goal_instance();
    let set = extract_exhaust(&inst).unwrap();
    assert_eq!(conj_names(&inst, &set), ["g1", "g2"]);
}

#[test]
fn extractors_error_on_unsolvable_instances() {
    let inst = unsolvable_instance();
    assert!(matches!(extract_exhaust(&inst), Err(ExtractError::UnsolvableInstance)));
    assert!(matches!(extract_h1(&inst), Err(ExtractError::UnsolvableInstance)));
    assert!(matches!(extract_rhw(&inst), Err(ExtractError::UnsolvableInstance)));
    assert!(matches!(extract_zhu_givan(&inst), Err(ExtractError::UnsolvableInstance)));
    assert!(matches!(extract_hoffmann(&inst), Err(ExtractError::UnsolvableInstance)));
}

#[test]
fn h1_covers_the_chain() {
    let inst = e1();
    let set = extract_h1(&inst).unwrap();
    let names = conj_names(&inst, &set);
    for expected in ["p", "q", "g"] {
        assert!(names.iter().any(|n| n == expected), "missing {expected}");
    }
    assert_eq!(set.extractor, Extractor::Hm { m: 1 });
}

#[test]
fn h1_covers_the_fork_trunk() {
    let inst = e2();
    let set = extract_h1(&inst).unwrap();
    let names = conj_names(&inst, &set);
    assert!(names.contains(&"p".to_string()));
    assert!(names.contains(&"g".to_string()));
    assert!(!names.contains(&"q1".to_string()));
    assert!(!names.contains(&"q2".to_string()));
}

#[test]
fn h1_equals_exhaust_on_delete_free_instances() {
    // delete-free chain with a side branch
    let inst = InstanceBuilder::new()
        .fact(Fact::nullary("p"))
        .fact(Fact::nullary("q"))
        .fact(Fact::nullary("r"))
        .fact(Fact::nullary("g"))
        .action("mk-q", &[], vec![Fact::nullary("p")], vec![Fact::nullary("q")], vec![])
        .action("mk-r", &[], vec![Fact::nullary("p")], vec![Fact::nullary("r")], vec![])
        .action(
            "mk-g",
            &[],
            vec![Fact::nullary("q"), Fact::nullary("r")],
            vec![Fact::nullary("g")],
            vec![],
        )
        .init(vec![Fact::nullary("p")])
        .goal(vec![Fact::nullary("g")])
        .build();
    let h1 = extract_h1(&inst).unwrap();
    let exhaust = extract_exhaust(&inst).unwrap();
    assert_eq!(conj_names(&inst, &h1), conj_names(&inst, &exhaust));
}

#[test]
fn rhw_emits_the_fork_disjunction() {
    let inst = e2();
    let set = extract_rhw(&inst).unwrap();
    assert_eq!(conj_names(&inst, &set), ["g", "p"]);
    assert_eq!(disj_sets(&inst, &set), [["q1", "q2"]]);
}

#[test]
fn rhw_chain_has_no_disjunctions() {
    let inst = e1();
    let set = extract_rhw(&inst).unwrap();
    assert_eq!(conj_names(&inst, &set), ["g", "p", "q"]);
    assert!(disj_sets(&inst, &set).is_empty());
}

#[test]
fn rhw_trivial_goal_needs_no_achievers() {
    let inst = trivial_goal_instance();
    let set = extract_rhw(&inst).unwrap();
    assert_eq!(conj_names(&inst, &set), ["g1", "g2"]);
    assert!(disj_sets(&inst, &set).is_empty());
}

#[test]
fn rhw_disjunction_cap_is_configurable() {
    // five parallel branches: the q1..q5 disjunction exceeds the default cap
    let mut builder = InstanceBuilder::new().fact(Fact::nullary("p")).fact(Fact::nullary("g"));
    for i in 1..=5 {
        let q = format!("q{i}");
        builder = builder
            .fact(Fact::nullary(&q))
            .action(
                &format!("mk-{q}"),
                &[],
                vec![Fact::nullary("p")],
                vec![Fact::nullary(&q)],
                vec![],
            )
            .action(
                &format!("use-{q}"),
                &[],
                vec![Fact::nullary(&q)],
                vec![Fact::nullary("g")],
                vec![],
            );
    }
    let inst = builder.init(vec![Fact::nullary("p")]).goal(vec![Fact::nullary("g")]).build();

    let capped = extract_rhw(&inst).unwrap();
    assert!(disj_sets(&inst, &capped).is_empty());

    let wide = extract_rhw_with(&inst, &RhwOptions { max_disjunction_size: 5 }).unwrap();
    assert_eq!(disj_sets(&inst, &wide), [["q1", "q2", "q3", "q4", "q5"]]);
}

#[test]
fn subsumed_disjunctions_are_dropped() {
    let inst = e1();
    let kept = drop_subsumed(vec![
        Landmark::conjunctive(fact_id(&inst, "q")),
        Landmark::disjunctive(vec![fact_id(&inst, "q"), fact_id(&inst, "g")]),
        Landmark::disjunctive(vec![fact_id(&inst, "p"), fact_id(&inst, "g")]),
    ]);
    assert_eq!(kept.len(), 2);
    assert!(kept.iter().any(|l| l.kind == LandmarkKind::Conjunctive));
    // only the disjunction not containing a recorded conjunctive fact stays
    assert!(kept
        .iter()
        .filter(|l| l.kind == LandmarkKind::Disjunctive)
        .all(|l| !l.facts.contains(&fact_id(&inst, "q"))));
}

#[test]
fn zhu_givan_matches_the_label_examples() {
    let chain = e1();
    let set = extract_zhu_givan(&chain).unwrap();
    assert_eq!(conj_names(&chain, &set), ["g", "p", "q"]);

    let fork = e2();
    let set = extract_zhu_givan(&fork).unwrap();
    assert_eq!(conj_names(&fork, &set), ["g", "p"]);

    let trivial = trivial_goal_instance();
    let set = extract_zhu_givan(&trivial).unwrap();
    assert_eq!(conj_names(&trivial, &set), ["g1", "g2"]);
}

#[test]
fn hoffmann_matches_the_backchaining_examples() {
    let chain = e1();
    let set = extract_hoffmann(&chain).unwrap();
    assert_eq!(conj_names(&chain, &set), ["g", "p", "q"]);

    let fork = e2();
    let set = extract_hoffmann(&fork).unwrap();
    assert_eq!(conj_names(&fork, &set), ["g", "p"]);
}

#[test]
fn single_fact_outputs_stay_inside_exhaust() {
    for inst in [e1(), e2(), trivial_goal_instance()] {
        let exhaust: Vec<_> = extract_exhaust(&inst).unwrap().conjunctive_facts().collect();
        for algo in Extractor::ALL {
            if algo == Extractor::Exhaust {
                continue;
            }
            let set = extract(&inst, algo).unwrap();
            for fact in set.conjunctive_facts() {
                assert!(
                    exhaust.contains(&fact),
                    "{algo}: fact {} outside the exhaust baseline",
                    inst.fact(fact)
                );
            }
        }
    }
}

#[test]
fn every_extractor_includes_the_goal_facts() {
    for inst in [e1(), e2(), trivial_goal_instance()] {
        for algo in Extractor::ALL {
            let set = extract(&inst, algo).unwrap();
            let conj: Vec<_> = set.conjunctive_facts().collect();
            for g in inst.goal.ones() {
                assert!(conj.contains(&g), "{algo} lost goal fact {}", inst.fact(g));
            }
        }
    }
}

#[test]
fn extraction_is_deterministic_including_order() {
    for inst in [e1(), e2()] {
        for algo in Extractor::ALL {
            let a = extract(&inst, algo).unwrap();
            let b = extract(&inst, algo).unwrap();
            assert_eq!(a.landmarks, b.landmarks);
        }
    }
}

#[test]
fn landmarks_are_ordered_by_first_level() {
    let inst = e1();
    let set = extract_exhaust(&inst).unwrap();
    let names: Vec<String> =
        set.landmarks.iter().map(|l| inst.fact(l.facts[0]).to_string()).collect();
    // p enters at level 0, q at 1, g at 2
    assert_eq!(names, ["p", "q", "g"]);
}

#[test]
fn uniqueness_follows_the_sharing_count() {
    let inst = e2();
    let p = Landmark::conjunctive(fact_id(&inst, "p"));
    let g = Landmark::conjunctive(fact_id(&inst, "g"));
    let q1 = Landmark::conjunctive(fact_id(&inst, "q1"));
    let goal = |f: &str| inst.fact_set_from([fact_id(&inst, f)]);

    let sets = vec![
        LandmarkSet {
            goal: goal("g"),
            landmarks: vec![p.clone(), g.clone()],
            extractor: Extractor::Exhaust,
        },
        LandmarkSet {
            goal: goal("q1"),
            landmarks: vec![p.clone(), q1.clone()],
            extractor: Extractor::Exhaust,
        },
        LandmarkSet { goal: goal("q2"), landmarks: vec![p.clone()], extractor: Extractor::Exhaust },
    ];
    let uniq = compute_uniqueness(&sets);
    assert_eq!(uniq[&p], 1.0 / 3.0);
    assert_eq!(uniq[&g], 1.0);
    assert_eq!(uniq[&q1], 1.0);
}

#[test]
fn shared_landmark_sets_split_uniqueness_evenly() {
    let inst = e1();
    let p = Landmark::conjunctive(fact_id(&inst, "p"));
    let q = Landmark::conjunctive(fact_id(&inst, "q"));
    let set = |goal: &str| LandmarkSet {
        goal: inst.fact_set_from([fact_id(&inst, goal)]),
        landmarks: vec![p.clone(), q.clone()],
        extractor: Extractor::Exhaust,
    };
    let uniq = compute_uniqueness(&[set("p"), set("q")]);
    assert!(uniq.values().all(|&v| v == 0.5));
}

#[test]
fn landmark_text_format_is_line_oriented() {
    let inst = e2();
    let set = extract_rhw(&inst).unwrap();
    let text = set.to_text(&inst);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["conj p", "disj q1 q2", "conj g"]);
}

#[test]
fn extractor_names_round_trip() {
    for algo in Extractor::ALL {
        assert_eq!(algo.to_string().parse::<Extractor>().unwrap(), algo);
    }
    assert!("lama".parse::<Extractor>().is_err());
}
