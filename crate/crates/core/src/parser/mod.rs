//! PDDL parsing and grounding for the typed STRIPS subset.
//!
//! Supported requirements: `:strips`, `:typing`, `:equality`. Equality
//! preconditions are resolved at grounding time by excluding bindings that
//! violate them; anything else (negative preconditions, conditional effects,
//! quantifiers, ...) is rejected with an unsupported-feature error.
//!
//! Errors render as `line:col: message`; callers prepend the file name to
//! obtain the `file:line:col: message` diagnostic format.

mod ast;
mod ground;
mod sexpr;

pub use ast::{Atom, DomainAst, EqConstraint, PredicateDecl, ProblemAst, Schema, TypedName, ROOT_TYPE};
pub use ground::{ground, ground_with, GroundOptions};
pub use sexpr::{read_fragment, Pos, SExpr};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParserError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: u32, col: u32, msg: String },
    #[error("{line}:{col}: unsupported feature `{feature}`")]
    Unsupported { line: u32, col: u32, feature: String },
    #[error("{line}:{col}: undeclared object `{name}`")]
    UndeclaredObject { line: u32, col: u32, name: String },
    #[error("{line}:{col}: undeclared predicate `{name}`")]
    UndeclaredPredicate { line: u32, col: u32, name: String },
    #[error("{line}:{col}: undeclared type `{name}`")]
    UndeclaredType { line: u32, col: u32, name: String },
    #[error("{line}:{col}: predicate `{name}` expects {expected} arguments, got {got}")]
    ArityMismatch { line: u32, col: u32, name: String, expected: usize, got: usize },
    #[error("{line}:{col}: empty goal")]
    EmptyGoal { line: u32, col: u32 },
    #[error("{line}:{col}: problem declares domain `{found}`, expected `{expected}`")]
    DomainMismatch { line: u32, col: u32, found: String, expected: String },
    #[error("goal atom `{atom}` is outside the grounded fact universe")]
    GoalAtomOutsideUniverse { atom: String },
    #[error("init atom `{atom}` is outside the grounded fact universe")]
    InitAtomOutsideUniverse { atom: String },
}

impl ParserError {
    pub(crate) fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        ParserError::Syntax { line: pos.line, col: pos.col, msg: msg.into() }
    }

    pub(crate) fn unsupported(pos: Pos, feature: impl Into<String>) -> Self {
        ParserError::Unsupported { line: pos.line, col: pos.col, feature: feature.into() }
    }
}

const SUPPORTED_REQUIREMENTS: [&str; 3] = [":strips", ":typing", ":equality"];

fn expect_list<'a>(expr: &'a SExpr, what: &str) -> Result<&'a [SExpr], ParserError> {
    expr.as_list().ok_or_else(|| ParserError::syntax(expr.pos(), format!("expected {what}")))
}

fn expect_atom<'a>(expr: &'a SExpr, what: &str) -> Result<&'a str, ParserError> {
    expr.as_atom().ok_or_else(|| ParserError::syntax(expr.pos(), format!("expected {what}")))
}

/// Parses `name... - type name... - type trailing...` lists. Trailing
/// untyped names default to the root type.
fn parse_typed_list(items: &[SExpr]) -> Result<Vec<TypedName>, ParserError> {
    let mut out = Vec::new();
    let mut pending: Vec<String> = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let tok = expect_atom(&items[i], "a name in a typed list")?;
        if tok == "-" {
            let ty_expr = items.get(i + 1).ok_or_else(|| {
                ParserError::syntax(items[i].pos(), "`-` not followed by a type")
            })?;
            let ty = expect_atom(ty_expr, "a type name")?;
            if pending.is_empty() {
                return Err(ParserError::syntax(items[i].pos(), "type with no names before `-`"));
            }
            for name in pending.drain(..) {
                out.push(TypedName::new(name, ty));
            }
            i += 2;
        } else {
            pending.push(tok.to_string());
            i += 1;
        }
    }
    for name in pending {
        out.push(TypedName::new(name, ROOT_TYPE));
    }
    Ok(out)
}

fn parse_atom(expr: &SExpr) -> Result<(Atom, Pos), ParserError> {
    let items = expect_list(expr, "an atom")?;
    let head = items
        .first()
        .ok_or_else(|| ParserError::syntax(expr.pos(), "empty atom"))?;
    let predicate = expect_atom(head, "a predicate name")?.to_string();
    let mut args = Vec::new();
    for item in &items[1..] {
        args.push(expect_atom(item, "an atom argument")?.to_string());
    }
    Ok((Atom { predicate, args }, expr.pos()))
}

/// Flattens `expr` (an atom or `(and ...)`) into its conjuncts.
fn conjuncts(expr: &SExpr) -> Result<Vec<&SExpr>, ParserError> {
    match expr.head() {
        Some("and") => {
            let items = expect_list(expr, "a conjunction")?;
            Ok(items[1..].iter().collect())
        }
        Some(_) => Ok(vec![expr]),
        None => Err(ParserError::syntax(expr.pos(), "expected an atom or (and ...)")),
    }
}

struct DomainContext<'a> {
    domain: &'a DomainAst,
}

impl DomainContext<'_> {
    fn predicate(&self, name: &str) -> Option<&PredicateDecl> {
        self.domain.predicates.iter().find(|p| p.name == name)
    }

    fn check_atom(&self, atom: &Atom, pos: Pos) -> Result<(), ParserError> {
        match self.predicate(&atom.predicate) {
            None => Err(ParserError::UndeclaredPredicate {
                line: pos.line,
                col: pos.col,
                name: atom.predicate.clone(),
            }),
            Some(decl) if decl.params.len() != atom.args.len() => Err(ParserError::ArityMismatch {
                line: pos.line,
                col: pos.col,
                name: atom.predicate.clone(),
                expected: decl.params.len(),
                got: atom.args.len(),
            }),
            Some(_) => Ok(()),
        }
    }
}

/// Registers every type referenced in a typed list, defaulting unknown types
/// to direct children of the root type.
fn register_types(types: &mut Vec<TypedName>, names: &[TypedName]) {
    for item in names {
        if item.ty != ROOT_TYPE && !types.iter().any(|t| t.name == item.ty) {
            types.push(TypedName::new(item.ty.clone(), ROOT_TYPE));
        }
    }
}

/// Parses a PDDL domain into a [`DomainAst`].
pub fn parse_domain(text: &str) -> Result<DomainAst, ParserError> {
    let root = sexpr::read_file(text)?;
    let items = expect_list(&root, "(define ...)")?;
    if items.first().and_then(|e| e.as_atom()) != Some("define") {
        return Err(ParserError::syntax(root.pos(), "expected (define ...)"));
    }

    let mut domain = DomainAst {
        name: String::new(),
        requirements: Vec::new(),
        types: Vec::new(),
        constants: Vec::new(),
        predicates: Vec::new(),
        schemas: Vec::new(),
    };

    for section in &items[1..] {
        let sec_items = expect_list(section, "a domain section")?;
        let tag = sec_items
            .first()
            .and_then(|e| e.as_atom())
            .ok_or_else(|| ParserError::syntax(section.pos(), "expected a section tag"))?;
        match tag {
            "domain" => {
                let name = sec_items
                    .get(1)
                    .and_then(|e| e.as_atom())
                    .ok_or_else(|| ParserError::syntax(section.pos(), "expected a domain name"))?;
                domain.name = name.to_string();
            }
            ":requirements" => {
                for req in &sec_items[1..] {
                    let name = expect_atom(req, "a requirement flag")?;
                    if !SUPPORTED_REQUIREMENTS.contains(&name) {
                        return Err(ParserError::unsupported(req.pos(), name));
                    }
                    domain.requirements.push(name.to_string());
                }
            }
            ":types" => {
                let list = parse_typed_list(&sec_items[1..])?;
                register_types(&mut domain.types, &list);
                for entry in list {
                    if !domain.types.iter().any(|t| t.name == entry.name) {
                        domain.types.push(entry);
                    } else if let Some(t) =
                        domain.types.iter_mut().find(|t| t.name == entry.name && t.ty == ROOT_TYPE)
                    {
                        // explicit declaration refines an auto-registered type
                        t.ty = entry.ty;
                    }
                }
            }
            ":constants" => {
                let list = parse_typed_list(&sec_items[1..])?;
                register_types(&mut domain.types, &list);
                domain.constants.extend(list);
            }
            ":predicates" => {
                for pred in &sec_items[1..] {
                    let p_items = expect_list(pred, "a predicate declaration")?;
                    let name = p_items
                        .first()
                        .and_then(|e| e.as_atom())
                        .ok_or_else(|| ParserError::syntax(pred.pos(), "expected a predicate name"))?;
                    let params = parse_typed_list(&p_items[1..])?;
                    register_types(&mut domain.types, &params);
                    domain.predicates.push(PredicateDecl { name: name.to_string(), params });
                }
            }
            ":action" => {
                domain.schemas.push(parse_schema(sec_items, section.pos())?);
                let params = domain.schemas.last().unwrap().params.clone();
                register_types(&mut domain.types, &params);
            }
            ":functions" | ":axioms" | ":derived" => {
                return Err(ParserError::unsupported(section.pos(), tag));
            }
            other => {
                return Err(ParserError::syntax(
                    section.pos(),
                    format!("unrecognized domain section `{other}`"),
                ));
            }
        }
    }

    if domain.name.is_empty() {
        return Err(ParserError::syntax(root.pos(), "missing (domain <name>) declaration"));
    }

    // validate schema atoms against declarations
    let ctx = DomainContext { domain: &domain };
    for schema in &domain.schemas {
        for atom in schema.pre.iter().chain(&schema.add).chain(&schema.del) {
            ctx.check_atom(atom, Pos::new(0, 0)).map_err(|e| relabel_schema_err(e, schema))?;
            for arg in &atom.args {
                let bound = arg.starts_with('?')
                    && schema.params.iter().any(|p| p.name == *arg);
                let constant = !arg.starts_with('?')
                    && domain.constants.iter().any(|c| c.name == *arg);
                if !bound && !constant {
                    return Err(ParserError::Syntax {
                        line: 0,
                        col: 0,
                        msg: format!(
                            "action `{}` references unbound symbol `{arg}`",
                            schema.name
                        ),
                    });
                }
            }
        }
    }

    Ok(domain)
}

fn relabel_schema_err(err: ParserError, schema: &Schema) -> ParserError {
    match err {
        ParserError::UndeclaredPredicate { name, .. } => ParserError::Syntax {
            line: 0,
            col: 0,
            msg: format!("action `{}` uses undeclared predicate `{name}`", schema.name),
        },
        ParserError::ArityMismatch { name, expected, got, .. } => ParserError::Syntax {
            line: 0,
            col: 0,
            msg: format!(
                "action `{}`: predicate `{name}` expects {expected} arguments, got {got}",
                schema.name
            ),
        },
        other => other,
    }
}

fn parse_schema(items: &[SExpr], pos: Pos) -> Result<Schema, ParserError> {
    let name = items
        .get(1)
        .and_then(|e| e.as_atom())
        .ok_or_else(|| ParserError::syntax(pos, "expected an action name"))?
        .to_string();
    let mut schema =
        Schema { name, params: Vec::new(), pre: Vec::new(), eq: Vec::new(), add: Vec::new(), del: Vec::new() };

    let mut i = 2;
    while i < items.len() {
        let key = expect_atom(&items[i], "an action keyword")?;
        let value = items
            .get(i + 1)
            .ok_or_else(|| ParserError::syntax(items[i].pos(), format!("`{key}` has no value")))?;
        match key {
            ":parameters" => {
                let list = expect_list(value, "a parameter list")?;
                schema.params = parse_typed_list(list)?;
                for (i, p) in schema.params.iter().enumerate() {
                    if schema.params[..i].iter().any(|q| q.name == p.name) {
                        return Err(ParserError::syntax(
                            value.pos(),
                            format!("duplicate parameter `{}`", p.name),
                        ));
                    }
                }
            }
            ":precondition" => parse_precondition(value, &mut schema)?,
            ":effect" => parse_effect(value, &mut schema)?,
            other => {
                return Err(ParserError::syntax(
                    items[i].pos(),
                    format!("unrecognized action keyword `{other}`"),
                ))
            }
        }
        i += 2;
    }
    Ok(schema)
}

fn parse_precondition(expr: &SExpr, schema: &mut Schema) -> Result<(), ParserError> {
    for part in conjuncts(expr)? {
        match part.head() {
            Some("=") => {
                let items = expect_list(part, "an equality")?;
                if items.len() != 3 {
                    return Err(ParserError::syntax(part.pos(), "equality takes two arguments"));
                }
                schema.eq.push(EqConstraint {
                    left: expect_atom(&items[1], "an equality argument")?.to_string(),
                    right: expect_atom(&items[2], "an equality argument")?.to_string(),
                    negated: false,
                });
            }
            Some("not") => {
                let items = expect_list(part, "a negation")?;
                let inner = items
                    .get(1)
                    .ok_or_else(|| ParserError::syntax(part.pos(), "empty negation"))?;
                if inner.head() == Some("=") {
                    let eq_items = expect_list(inner, "an equality")?;
                    if eq_items.len() != 3 {
                        return Err(ParserError::syntax(inner.pos(), "equality takes two arguments"));
                    }
                    schema.eq.push(EqConstraint {
                        left: expect_atom(&eq_items[1], "an equality argument")?.to_string(),
                        right: expect_atom(&eq_items[2], "an equality argument")?.to_string(),
                        negated: true,
                    });
                } else {
                    return Err(ParserError::unsupported(part.pos(), ":negative-preconditions"));
                }
            }
            Some("or") | Some("imply") | Some("exists") | Some("forall") => {
                return Err(ParserError::unsupported(part.pos(), ":adl"));
            }
            Some(_) => {
                let (atom, _) = parse_atom(part)?;
                schema.pre.push(atom);
            }
            None => return Err(ParserError::syntax(part.pos(), "expected a precondition atom")),
        }
    }
    Ok(())
}

fn parse_effect(expr: &SExpr, schema: &mut Schema) -> Result<(), ParserError> {
    for part in conjuncts(expr)? {
        match part.head() {
            Some("not") => {
                let items = expect_list(part, "a delete effect")?;
                let inner = items
                    .get(1)
                    .ok_or_else(|| ParserError::syntax(part.pos(), "empty negation"))?;
                let (atom, _) = parse_atom(inner)?;
                schema.del.push(atom);
            }
            Some("when") => return Err(ParserError::unsupported(part.pos(), ":conditional-effects")),
            Some("forall") => return Err(ParserError::unsupported(part.pos(), ":adl")),
            Some("increase") | Some("decrease") | Some("assign") => {
                return Err(ParserError::unsupported(part.pos(), ":numeric-fluents"))
            }
            Some(_) => {
                let (atom, _) = parse_atom(part)?;
                schema.add.push(atom);
            }
            None => return Err(ParserError::syntax(part.pos(), "expected an effect atom")),
        }
    }
    Ok(())
}

/// Parses a PDDL problem against its (already parsed) domain.
pub fn parse_problem(text: &str, domain: &DomainAst) -> Result<ProblemAst, ParserError> {
    let root = sexpr::read_file(text)?;
    let items = expect_list(&root, "(define ...)")?;
    if items.first().and_then(|e| e.as_atom()) != Some("define") {
        return Err(ParserError::syntax(root.pos(), "expected (define ...)"));
    }

    let mut problem = ProblemAst {
        name: String::new(),
        domain: String::new(),
        objects: Vec::new(),
        init: Vec::new(),
        goal: Vec::new(),
    };
    let mut saw_goal = false;

    for section in &items[1..] {
        let sec_items = expect_list(section, "a problem section")?;
        let tag = sec_items
            .first()
            .and_then(|e| e.as_atom())
            .ok_or_else(|| ParserError::syntax(section.pos(), "expected a section tag"))?;
        match tag {
            "problem" => {
                let name = sec_items
                    .get(1)
                    .and_then(|e| e.as_atom())
                    .ok_or_else(|| ParserError::syntax(section.pos(), "expected a problem name"))?;
                problem.name = name.to_string();
            }
            ":domain" => {
                let name = sec_items
                    .get(1)
                    .and_then(|e| e.as_atom())
                    .ok_or_else(|| ParserError::syntax(section.pos(), "expected a domain name"))?;
                if name != domain.name {
                    return Err(ParserError::DomainMismatch {
                        line: section.pos().line,
                        col: section.pos().col,
                        found: name.to_string(),
                        expected: domain.name.clone(),
                    });
                }
                problem.domain = name.to_string();
            }
            ":requirements" => {
                for req in &sec_items[1..] {
                    let name = expect_atom(req, "a requirement flag")?;
                    if !SUPPORTED_REQUIREMENTS.contains(&name) {
                        return Err(ParserError::unsupported(req.pos(), name));
                    }
                }
            }
            ":objects" => {
                let list = parse_typed_list(&sec_items[1..])?;
                for obj in &list {
                    if obj.ty != ROOT_TYPE && !domain.types.iter().any(|t| t.name == obj.ty) {
                        return Err(ParserError::UndeclaredType {
                            line: section.pos().line,
                            col: section.pos().col,
                            name: obj.ty.clone(),
                        });
                    }
                }
                problem.objects.extend(list);
            }
            ":init" => {
                for entry in &sec_items[1..] {
                    let (atom, pos) = parse_atom(entry)?;
                    check_ground_atom(&atom, pos, domain, &problem.objects)?;
                    problem.init.push(atom);
                }
            }
            ":goal" => {
                saw_goal = true;
                let value = sec_items
                    .get(1)
                    .ok_or_else(|| ParserError::syntax(section.pos(), "empty goal"))?;
                for part in conjuncts(value)? {
                    if part.head() == Some("not") {
                        return Err(ParserError::unsupported(part.pos(), ":negative-preconditions"));
                    }
                    let (atom, pos) = parse_atom(part)?;
                    check_ground_atom(&atom, pos, domain, &problem.objects)?;
                    problem.goal.push(atom);
                }
                if problem.goal.is_empty() {
                    return Err(ParserError::EmptyGoal {
                        line: section.pos().line,
                        col: section.pos().col,
                    });
                }
            }
            ":metric" => return Err(ParserError::unsupported(section.pos(), ":numeric-fluents")),
            other => {
                return Err(ParserError::syntax(
                    section.pos(),
                    format!("unrecognized problem section `{other}`"),
                ))
            }
        }
    }

    if !saw_goal {
        return Err(ParserError::EmptyGoal { line: root.pos().line, col: root.pos().col });
    }
    Ok(problem)
}

fn check_ground_atom(
    atom: &Atom,
    pos: Pos,
    domain: &DomainAst,
    objects: &[TypedName],
) -> Result<(), ParserError> {
    let ctx = DomainContext { domain };
    ctx.check_atom(atom, pos)?;
    for arg in &atom.args {
        let declared = objects.iter().any(|o| o.name == *arg)
            || domain.constants.iter().any(|c| c.name == *arg);
        if !declared {
            return Err(ParserError::UndeclaredObject {
                line: pos.line,
                col: pos.col,
                name: arg.clone(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
