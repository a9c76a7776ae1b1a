//! Landmark-based goal recognition over STRIPS planning domains.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`parser`] reads PDDL domain/problem files (typed STRIPS subset) and
//!    grounds them into a [`model::PlanningInstance`].
//! 2. [`graphs`] provides delete-relaxation machinery: relaxed planning
//!    graphs, constrained reachability tests, and the labeled planning graph.
//! 3. [`extract`] implements five landmark extraction algorithms (exhaust,
//!    h1, rhw, zhu-givan, hoffmann) over a shared verification oracle.
//! 4. [`recognize`] scores goal hypotheses against observed actions with the
//!    goal-completion and landmark-uniqueness heuristics and applies the
//!    theta threshold filter.
//!
//! [`harness`] adds dataset ingestion, brute-force plan-enumeration oracles
//! for landmark verification, and benchmark suite reporting.

pub mod extract;
pub mod graphs;
pub mod harness;
pub mod model;
pub mod parser;
pub mod recognize;

pub use model::{Fact, GroundAction, PlanningInstance, State};
