//! Recognition problem bundles on disk.
//!
//! A bundle is a directory in the public dataset convention:
//!
//! ```text
//! <bundle>/
//!   domain.pddl     planning domain
//!   template.pddl   problem with a <HYPOTHESIS> goal placeholder
//!   hyps.dat        one goal per line, atoms comma-separated
//!   obs.dat         one observed ground action per line
//!   real_hyp.dat    single line matching one hypothesis
//! ```
//!
//! The observability level is read from the bundle's path (the first
//! ancestor directory named like a level percentage) and a path component
//! containing `noisy` marks the bundle as pre-noised. Bundles without a
//! level component count as fully observed.

use std::fs;
use std::path::{Path, PathBuf};

use walkdir::WalkDir;

use super::HarnessError;
use crate::model::{Fact, FactSet};
use crate::parser::{self, read_fragment, SExpr};
use crate::recognize::RecognitionProblem;

pub const BUNDLE_FILES: [&str; 5] =
    ["domain.pddl", "template.pddl", "hyps.dat", "obs.dat", "real_hyp.dat"];

/// Observability levels used by noiseless datasets.
pub const NOISELESS_LEVELS: [u8; 5] = [10, 30, 50, 70, 100];
/// Observability levels used by noisy datasets.
pub const NOISY_LEVELS: [u8; 4] = [25, 50, 75, 100];

const HYPOTHESIS_PLACEHOLDER: &str = "<hypothesis>";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleMeta {
    /// Identifier used for sorting and reporting; the path relative to the
    /// suite root when scanned, the directory name otherwise.
    pub id: String,
    /// Domain name parsed from domain.pddl.
    pub domain: String,
    pub observability: u8,
    pub noisy: bool,
}

#[derive(Debug, Clone)]
pub struct LoadedBundle {
    pub meta: BundleMeta,
    pub problem: RecognitionProblem,
}

/// Loads a bundle directory into a [`RecognitionProblem`].
///
/// The domain and template are parsed and grounded once; each hypothesis
/// line becomes a goal fact set over the shared universe. A hypothesis atom
/// outside the universe rejects the bundle.
pub fn load_bundle(dir: &Path) -> Result<LoadedBundle, HarnessError> {
    let read = |name: &str| -> Result<String, HarnessError> {
        let path = dir.join(name);
        fs::read_to_string(&path)
            .map_err(|source| HarnessError::Io { path: path.display().to_string(), source })
    };

    let domain_text = read("domain.pddl")?;
    let template_text = read("template.pddl")?;
    let hyps_text = read("hyps.dat")?;
    let obs_text = read("obs.dat")?;
    let real_text = read("real_hyp.dat")?;

    let domain = parser::parse_domain(&domain_text)
        .map_err(|e| HarnessError::parse(dir.join("domain.pddl"), e))?;

    let hypothesis_lines: Vec<&str> =
        hyps_text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if hypothesis_lines.is_empty() {
        return Err(HarnessError::EmptyHypotheses { bundle: dir.display().to_string() });
    }
    let hypotheses_atoms: Vec<Vec<Fact>> = hypothesis_lines
        .iter()
        .map(|line| parse_goal_line(line))
        .collect::<Result<_, _>>()
        .map_err(|e| HarnessError::parse(dir.join("hyps.dat"), e))?;

    // substitute the goal placeholder with the first hypothesis so the
    // template parses as an ordinary problem; grounding does not depend on
    // the goal beyond mapping it
    let template_lower = template_text.to_lowercase();
    let problem_text = if template_lower.contains(HYPOTHESIS_PLACEHOLDER) {
        let rendered: Vec<String> =
            hypotheses_atoms[0].iter().map(fact_to_pddl).collect();
        template_lower.replace(HYPOTHESIS_PLACEHOLDER, &rendered.join(" "))
    } else {
        template_text
    };

    let problem_ast = parser::parse_problem(&problem_text, &domain)
        .map_err(|e| HarnessError::parse(dir.join("template.pddl"), e))?;
    let instance = parser::ground(&domain, &problem_ast)
        .map_err(|e| HarnessError::parse(dir.join("template.pddl"), e))?;

    let mut hypotheses: Vec<FactSet> = Vec::with_capacity(hypotheses_atoms.len());
    for atoms in &hypotheses_atoms {
        let mut set = instance.empty_fact_set();
        for fact in atoms {
            match instance.fact_id(fact) {
                Some(id) => set.insert(id),
                None => {
                    return Err(HarnessError::HypothesisOutsideUniverse {
                        bundle: dir.display().to_string(),
                        atom: fact.to_string(),
                    })
                }
            }
        }
        hypotheses.push(set);
    }

    let mut observations = Vec::new();
    for (lineno, line) in obs_text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (name, args) = parse_action_line(line)
            .map_err(|e| HarnessError::parse(dir.join("obs.dat"), e))?;
        match instance.action_id(&name, &args) {
            Some(id) => observations.push(id),
            None => {
                return Err(HarnessError::ObservationNotGroundAction {
                    bundle: dir.display().to_string(),
                    line: lineno + 1,
                    text: line.to_string(),
                })
            }
        }
    }

    let real_line = real_text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| HarnessError::RealGoalNotInHypotheses {
            bundle: dir.display().to_string(),
            goal: String::new(),
        })?;
    let real_atoms =
        parse_goal_line(real_line).map_err(|e| HarnessError::parse(dir.join("real_hyp.dat"), e))?;
    let mut real_set = instance.empty_fact_set();
    for fact in &real_atoms {
        if let Some(id) = instance.fact_id(fact) {
            real_set.insert(id);
        }
    }
    let real_goal = hypotheses
        .iter()
        .position(|h| *h == real_set)
        .ok_or_else(|| HarnessError::RealGoalNotInHypotheses {
            bundle: dir.display().to_string(),
            goal: real_line.to_string(),
        })?;

    let meta = BundleMeta {
        id: dir.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default(),
        domain: domain.name.clone(),
        observability: path_observability(dir).unwrap_or(100),
        noisy: path_is_noisy(dir),
    };
    let empty_goal = instance.empty_fact_set();
    Ok(LoadedBundle {
        meta,
        problem: RecognitionProblem {
            instance: instance.with_goal(empty_goal),
            hypotheses,
            observations,
            real_goal,
        },
    })
}

/// Finds every bundle directory under `root`, sorted by suite-relative id.
/// Each bundle's observability level must belong to the level set for its
/// noise flag.
pub fn scan_suite(root: &Path) -> Result<Vec<(PathBuf, String)>, HarnessError> {
    let mut bundles = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = entry.map_err(|e| HarnessError::Io {
            path: root.display().to_string(),
            source: e.into(),
        })?;
        if !entry.file_type().is_dir() {
            continue;
        }
        let dir = entry.path();
        if !BUNDLE_FILES.iter().all(|f| dir.join(f).is_file()) {
            continue;
        }
        let id = dir
            .strip_prefix(root)
            .unwrap_or(dir)
            .to_string_lossy()
            .replace(std::path::MAIN_SEPARATOR, "/");
        let noisy = path_is_noisy(dir);
        let level = path_observability(dir).unwrap_or(100);
        let valid: &[u8] = if noisy { &NOISY_LEVELS } else { &NOISELESS_LEVELS };
        if !valid.contains(&level) {
            return Err(HarnessError::BadObservabilityLevel { bundle: id, level, noisy });
        }
        bundles.push((dir.to_path_buf(), id));
    }
    bundles.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(bundles)
}

/// Loads a scanned bundle with its suite-relative id.
pub fn load_suite_bundle(dir: &Path, id: &str) -> Result<LoadedBundle, HarnessError> {
    let mut bundle = load_bundle(dir)?;
    bundle.meta.id = id.to_string();
    Ok(bundle)
}

fn path_observability(dir: &Path) -> Option<u8> {
    dir.components().rev().find_map(|c| c.as_os_str().to_str()?.parse::<u8>().ok())
}

fn path_is_noisy(dir: &Path) -> bool {
    dir.components().any(|c| c.as_os_str().to_string_lossy().contains("noisy"))
}

/// Parses a hypothesis line: ground atoms separated by commas, e.g.
/// `(on a b),(clear c)`.
fn parse_goal_line(line: &str) -> Result<Vec<Fact>, parser::ParserError> {
    line.split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| {
            let expr = read_fragment(part)?;
            sexpr_to_fact(&expr)
        })
        .collect()
}

/// Parses an observation line: one ground action `(name arg1 arg2)`.
fn parse_action_line(line: &str) -> Result<(String, Vec<String>), parser::ParserError> {
    let expr = read_fragment(line)?;
    let fact = sexpr_to_fact(&expr)?;
    Ok((fact.predicate, fact.args))
}

fn sexpr_to_fact(expr: &SExpr) -> Result<Fact, parser::ParserError> {
    let items = expr
        .as_list()
        .ok_or_else(|| parser::ParserError::Syntax {
            line: expr.pos().line,
            col: expr.pos().col,
            msg: "expected a parenthesized atom".to_string(),
        })?;
    let mut symbols = Vec::with_capacity(items.len());
    for item in items {
        match item.as_atom() {
            Some(s) => symbols.push(s.to_string()),
            None => {
                return Err(parser::ParserError::Syntax {
                    line: item.pos().line,
                    col: item.pos().col,
                    msg: "nested expression in a ground atom".to_string(),
                })
            }
        }
    }
    if symbols.is_empty() {
        return Err(parser::ParserError::Syntax {
            line: expr.pos().line,
            col: expr.pos().col,
            msg: "empty atom".to_string(),
        });
    }
    let predicate = symbols.remove(0);
    Ok(Fact::new(predicate, symbols))
}

fn fact_to_pddl(fact: &Fact) -> String {
    if fact.args.is_empty() {
        format!("({})", fact.predicate)
    } else {
        format!("({} {})", fact.predicate, fact.args.join(" "))
    }
}
