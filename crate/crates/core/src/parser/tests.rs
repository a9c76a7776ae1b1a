use super::*;
use crate::model::Fact;

pub(crate) const BLOCKS_DOMAIN: &str = "
(define (domain blocks)
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
";

const TWO_BLOCK_PROBLEM: &str = "
(define (problem blocks-2)
  (:domain blocks)
  (:objects a b)
  (:init (ontable a) (ontable b) (clear a) (clear b) (handempty))
  (:goal (on a b)))
";

#[test]
fn minimal_domain_structural_echo() {
    let text = "(define (domain mini)
                  (:predicates (p ?x))
                  (:action act :parameters (?x) :precondition (p ?x) :effect (p ?x)))";
    let domain = parse_domain(text).unwrap();
    assert_eq!(domain.name, "mini");
    assert_eq!(domain.predicates.len(), 1);
    assert_eq!(domain.schemas.len(), 1);
}

#[test]
fn supported_requirements_accepted() {
    let text = "(define (domain r)
                  (:requirements :strips :typing)
                  (:predicates (p)))";
    assert!(parse_domain(text).is_ok());
}

#[test]
fn unsupported_requirement_names_the_feature() {
    let text = "(define (domain r)
                  (:requirements :strips :conditional-effects)
                  (:predicates (p)))";
    match parse_domain(text).unwrap_err() {
        ParserError::Unsupported { feature, .. } => assert_eq!(feature, ":conditional-effects"),
        other => panic!("expected unsupported-feature error, got {other:?}"),
    }
}

#[test]
fn negative_precondition_rejected() {
    let text = "(define (domain r)
                  (:predicates (p))
                  (:action a :parameters () :precondition (not (p)) :effect (p)))";
    assert!(matches!(parse_domain(text), Err(ParserError::Unsupported { .. })));
}

#[test]
fn conditional_effect_rejected() {
    let text = "(define (domain r)
                  (:predicates (p) (q))
                  (:action a :parameters () :precondition (p) :effect (when (p) (q))))";
    assert!(matches!(parse_domain(text), Err(ParserError::Unsupported { .. })));
}

#[test]
fn blocks_domain_has_four_schemas() {
    // verbatim IPC-style blocks file, untyped
    let classic = "(define (domain blocks)
  (:requirements :strips)
  (:predicates (on ?x ?y) (ontable ?x) (clear ?x) (handempty) (holding ?x))
  (:action pick-up :parameters (?x)
    :precondition (and (clear ?x) (ontable ?x) (handempty))
    :effect (and (not (ontable ?x)) (not (clear ?x)) (not (handempty)) (holding ?x)))
  (:action put-down :parameters (?x)
    :precondition (holding ?x)
    :effect (and (not (holding ?x)) (clear ?x) (handempty) (ontable ?x)))
  (:action stack :parameters (?x ?y)
    :precondition (and (holding ?x) (clear ?y))
    :effect (and (not (holding ?x)) (not (clear ?y)) (clear ?x) (handempty) (on ?x ?y)))
  (:action unstack :parameters (?x ?y)
    :precondition (and (on ?x ?y) (clear ?x) (handempty))
    :effect (and (holding ?x) (clear ?y) (not (clear ?x)) (not (handempty)) (not (on ?x ?y)))))";
    let domain = parse_domain(classic).unwrap();
    assert_eq!(domain.schemas.len(), 4);
    let names: Vec<_> = domain.schemas.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, ["pick-up", "put-down", "stack", "unstack"]);
}

#[test]
fn two_block_problem_has_one_goal_atom() {
    let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
    let problem = parse_problem(TWO_BLOCK_PROBLEM, &domain).unwrap();
    assert_eq!(problem.objects.len(), 2);
    assert_eq!(problem.goal.len(), 1);
    assert_eq!(problem.goal[0].predicate, "on");
}

#[test]
fn empty_goal_is_an_error() {
    let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
    let text = "(define (problem p) (:domain blocks) (:objects a)
                 (:init (ontable a)) (:goal (and)))";
    assert!(matches!(parse_problem(text, &domain), Err(ParserError::EmptyGoal { .. })));
}

#[test]
fn undeclared_object_is_an_error() {
    let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
    let text = "(define (problem p) (:domain blocks) (:objects a)
                 (:init (ontable a) (clear b)) (:goal (ontable a)))";
    match parse_problem(text, &domain).unwrap_err() {
        ParserError::UndeclaredObject { name, .. } => assert_eq!(name, "b"),
        other => panic!("expected undeclared-object error, got {other:?}"),
    }
}

#[test]
fn domain_name_mismatch_is_an_error() {
    let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
    let text = "(define (problem p) (:domain gripper) (:objects a)
                 (:init (ontable a)) (:goal (ontable a)))";
    assert!(matches!(parse_problem(text, &domain), Err(ParserError::DomainMismatch { .. })));
}

#[test]
fn symbols_fold_to_lower_case_and_keep_hyphens() {
    let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
    let text = "(define (problem UPPER) (:domain BLOCKS) (:objects A B)
                 (:init (ONTABLE A) (ontable b) (CLEAR a) (clear B) (HANDEMPTY))
                 (:goal (ON A B)))";
    let problem = parse_problem(text, &domain).unwrap();
    assert_eq!(problem.name, "upper");
    assert_eq!(problem.init.len(), 5);
    let instance = ground(&domain, &problem).unwrap();
    assert!(instance.actions().iter().any(|a| a.name == "pick-up"));
}

#[test]
fn two_block_grounding_yields_eight_actions_before_pruning() {
    // 2 unstack + 2 stack (x != y) + 2 pick-up + 2 put-down
    let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
    let problem = parse_problem(TWO_BLOCK_PROBLEM, &domain).unwrap();
    let instance =
        ground_with(&domain, &problem, &GroundOptions { prune_unreachable: false }).unwrap();
    assert_eq!(instance.num_actions(), 8);
}

#[test]
fn zero_ary_universe_matches_predicate_count() {
    let text = "(define (domain z) (:predicates (p) (q) (r))
                  (:action a :parameters () :precondition (p) :effect (q)))";
    let domain = parse_domain(text).unwrap();
    let problem = parse_problem(
        "(define (problem zp) (:domain z) (:init (p)) (:goal (q)))",
        &domain,
    )
    .unwrap();
    let instance = ground(&domain, &problem).unwrap();
    assert_eq!(instance.num_facts(), 3);
}

#[test]
fn e1_pddl_round_trips_to_hand_built_instance() {
    let domain = parse_domain(
        "(define (domain chain)
           (:requirements :strips)
           (:predicates (p) (q) (g))
           (:action a1 :parameters () :precondition (p) :effect (q))
           (:action a2 :parameters () :precondition (q) :effect (and (g) (not (p)))))",
    )
    .unwrap();
    let problem = parse_problem(
        "(define (problem e1) (:domain chain) (:init (p)) (:goal (g)))",
        &domain,
    )
    .unwrap();
    let parsed = ground(&domain, &problem).unwrap();
    let built = crate::model::fixtures::e1();
    assert_eq!(parsed.facts(), built.facts());
    assert_eq!(parsed.num_actions(), built.num_actions());
    for (a, b) in parsed.actions().iter().zip(built.actions()) {
        assert_eq!((&a.name, &a.pre, &a.add, &a.del), (&b.name, &b.pre, &b.add, &b.del));
    }
    assert_eq!(parsed.init, built.init);
    assert_eq!(parsed.goal, built.goal);
}

#[test]
fn goal_atom_outside_universe_is_an_error() {
    let text = "(define (domain t)
                  (:requirements :typing)
                  (:types loc veh)
                  (:predicates (at ?v - veh ?l - loc))
                  (:action drive :parameters (?v - veh ?a - loc ?b - loc)
                    :precondition (at ?v ?a)
                    :effect (and (at ?v ?b) (not (at ?v ?a)))))";
    let domain = parse_domain(text).unwrap();
    // goal uses (at l1 l1): first argument has the wrong type
    let problem = parse_problem(
        "(define (problem tp) (:domain t) (:objects v1 - veh l1 l2 - loc)
           (:init (at v1 l1)) (:goal (at l1 l1)))",
        &domain,
    )
    .unwrap();
    assert!(matches!(ground(&domain, &problem), Err(ParserError::GoalAtomOutsideUniverse { .. })));
}

#[test]
fn grounding_is_deterministic() {
    let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
    let problem = parse_problem(TWO_BLOCK_PROBLEM, &domain).unwrap();
    let a = ground(&domain, &problem).unwrap();
    let b = ground(&domain, &problem).unwrap();
    assert_eq!(a.facts(), b.facts());
    assert_eq!(a.init, b.init);
    assert_eq!(a.goal, b.goal);
    let sig = |i: &crate::model::PlanningInstance| {
        i.actions().iter().map(|a| a.signature()).collect::<Vec<_>>()
    };
    assert_eq!(sig(&a), sig(&b));
}

#[test]
fn ground_action_sets_stay_inside_universe() {
    let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
    let problem = parse_problem(TWO_BLOCK_PROBLEM, &domain).unwrap();
    let instance = ground(&domain, &problem).unwrap();
    let n = instance.num_facts();
    for action in instance.actions() {
        for set in [&action.pre, &action.add, &action.del] {
            assert!(set.ones().all(|f| f < n));
        }
    }
}

#[test]
fn pretty_print_reparse_gives_equal_asts() {
    let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
    let reparsed = parse_domain(&domain.to_string()).unwrap();
    assert_eq!(domain, reparsed);

    let problem = parse_problem(TWO_BLOCK_PROBLEM, &domain).unwrap();
    let reparsed = parse_problem(&problem.to_string(), &domain).unwrap();
    assert_eq!(problem, reparsed);
}

#[test]
fn typed_supertype_hierarchy_resolves_in_grounding() {
    let text = "(define (domain t)
                  (:requirements :typing)
                  (:types truck package - physobj location)
                  (:predicates (at ?o - physobj ?l - location))
                  (:action noop :parameters (?o - physobj ?l - location)
                    :precondition (at ?o ?l) :effect (at ?o ?l)))";
    let domain = parse_domain(text).unwrap();
    let problem = parse_problem(
        "(define (problem tp) (:domain t)
           (:objects t1 - truck p1 - package l1 - location)
           (:init (at t1 l1) (at p1 l1)) (:goal (at p1 l1)))",
        &domain,
    )
    .unwrap();
    let instance = ground(&domain, &problem).unwrap();
    // at(t1,l1) and at(p1,l1): both truck and package are physobj
    assert_eq!(instance.num_facts(), 2);
    assert!(instance.fact_id(&Fact::new("at", vec!["t1".into(), "l1".into()])).is_some());
}

#[test]
fn equality_constraint_excludes_bindings() {
    let domain = parse_domain(BLOCKS_DOMAIN).unwrap();
    let problem = parse_problem(TWO_BLOCK_PROBLEM, &domain).unwrap();
    let instance =
        ground_with(&domain, &problem, &GroundOptions { prune_unreachable: false }).unwrap();
    assert!(instance.action_id("stack", &["a".into(), "a".into()]).is_none());
    assert!(instance.action_id("stack", &["a".into(), "b".into()]).is_some());
}
