//! Parsed PDDL structure for the typed STRIPS subset.
//!
//! The `Display` impls pretty-print back to PDDL; re-parsing the printed
//! text yields a structurally equal AST.

use std::fmt;

/// Root of the type hierarchy; untyped names default to it.
pub const ROOT_TYPE: &str = "object";

/// A name with its declared type (parameter, object, constant, or a type
/// with its supertype).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedName {
    pub name: String,
    pub ty: String,
}

impl TypedName {
    pub fn new(name: impl Into<String>, ty: impl Into<String>) -> Self {
        TypedName { name: name.into(), ty: ty.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateDecl {
    pub name: String,
    pub params: Vec<TypedName>,
}

/// A predicate template; args are `?variables` or constant symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.predicate)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        write!(f, ")")
    }
}

/// `(= a b)` or `(not (= a b))` precondition, resolved at grounding time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqConstraint {
    pub left: String,
    pub right: String,
    pub negated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    pub name: String,
    pub params: Vec<TypedName>,
    pub pre: Vec<Atom>,
    pub eq: Vec<EqConstraint>,
    pub add: Vec<Atom>,
    pub del: Vec<Atom>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainAst {
    pub name: String,
    pub requirements: Vec<String>,
    /// (type, supertype) pairs in declaration order.
    pub types: Vec<TypedName>,
    pub constants: Vec<TypedName>,
    pub predicates: Vec<PredicateDecl>,
    pub schemas: Vec<Schema>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemAst {
    pub name: String,
    pub domain: String,
    pub objects: Vec<TypedName>,
    pub init: Vec<Atom>,
    pub goal: Vec<Atom>,
}

fn write_typed_list(f: &mut fmt::Formatter<'_>, items: &[TypedName]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        if item.ty == ROOT_TYPE {
            write!(f, "{}", item.name)?;
        } else {
            write!(f, "{} - {}", item.name, item.ty)?;
        }
    }
    Ok(())
}

impl fmt::Display for DomainAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(define (domain {})", self.name)?;
        if !self.requirements.is_empty() {
            writeln!(f, "  (:requirements {})", self.requirements.join(" "))?;
        }
        if !self.types.is_empty() {
            write!(f, "  (:types ")?;
            write_typed_list(f, &self.types)?;
            writeln!(f, ")")?;
        }
        if !self.constants.is_empty() {
            write!(f, "  (:constants ")?;
            write_typed_list(f, &self.constants)?;
            writeln!(f, ")")?;
        }
        write!(f, "  (:predicates")?;
        for p in &self.predicates {
            write!(f, " ({}", p.name)?;
            if !p.params.is_empty() {
                write!(f, " ")?;
                write_typed_list(f, &p.params)?;
            }
            write!(f, ")")?;
        }
        writeln!(f, ")")?;
        for s in &self.schemas {
            writeln!(f, "  (:action {}", s.name)?;
            write!(f, "    :parameters (")?;
            write_typed_list(f, &s.params)?;
            writeln!(f, ")")?;
            write!(f, "    :precondition (and")?;
            for a in &s.pre {
                write!(f, " {a}")?;
            }
            for eq in &s.eq {
                if eq.negated {
                    write!(f, " (not (= {} {}))", eq.left, eq.right)?;
                } else {
                    write!(f, " (= {} {})", eq.left, eq.right)?;
                }
            }
            writeln!(f, ")")?;
            write!(f, "    :effect (and")?;
            for a in &s.add {
                write!(f, " {a}")?;
            }
            for a in &s.del {
                write!(f, " (not {a})")?;
            }
            writeln!(f, "))")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for ProblemAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(define (problem {})", self.name)?;
        writeln!(f, "  (:domain {})", self.domain)?;
        if !self.objects.is_empty() {
            write!(f, "  (:objects ")?;
            write_typed_list(f, &self.objects)?;
            writeln!(f, ")")?;
        }
        write!(f, "  (:init")?;
        for a in &self.init {
            write!(f, " {a}")?;
        }
        writeln!(f, ")")?;
        write!(f, "  (:goal (and")?;
        for a in &self.goal {
            write!(f, " {a}")?;
        }
        write!(f, ")))")
    }
}
