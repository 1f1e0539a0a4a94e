//! Command-line front end: definition files, expressions and commands.

pub mod definition;
pub mod error;
pub mod expr;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use algebroid_core::calculus::{d_rho, lie_form, lie_multivector, schouten};
use algebroid_core::duality::{algebroid_from_dual_poisson, dual_poisson, DualChart};
use algebroid_core::lifts::{tangent_lift_algebroid, tangent_lift_poisson};
use algebroid_core::poisson::{cotangent_algebroid, is_poisson, poisson_bracket};
use algebroid_core::scalars::Rational;
use algebroid_core::{Algebroid, Report};
use clap::{Parser, Subcommand};
use serde::Serialize;

use definition::{
    algebroid_symbols, check_unambiguous, free_context, parse_definition, poisson_symbols,
    render_definition, Definition, Fiber,
};
use error::CliError;
use expr::{parse, parse_form, parse_multivector, parse_poly, parse_section, Basis, Symbols};

#[derive(Parser, Debug)]
#[command(
    name = "algebroid",
    version,
    about = "Exact calculus on Lie algebroids and Poisson structures"
)]
struct Cli {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the algebroid axioms or the Poisson condition.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Bracket of two sections, or Poisson bracket of two functions.
    Bracket { file: PathBuf, x: String, y: String },
    /// Exterior derivative of a form.
    D { file: PathBuf, form: String },
    /// Lie derivative of a form or multivector along a section.
    Lie {
        file: PathBuf,
        v: String,
        obj: String,
    },
    /// Schouten bracket of two multivectors.
    Schouten { file: PathBuf, p: String, q: String },
    /// Cotangent algebroid of a Poisson structure.
    Cotangent { file: PathBuf },
    /// Linear Poisson structure on the dual bundle.
    Dual { file: PathBuf },
    /// Algebroid recovered from a linear Poisson structure.
    Undual {
        file: PathBuf,
        /// Comma-separated fiber variables (overrides the file's `fiber` line).
        #[arg(long)]
        fiber: Option<String>,
        /// Comma-separated section names for the fiber variables.
        #[arg(long)]
        sections: Option<String>,
    },
    /// Tangent lift of a Poisson structure.
    LiftPoisson { file: PathBuf },
    /// Tangent lift of an algebroid.
    LiftAlgebroid { file: PathBuf },
    /// Evaluate a polynomial at a rational point.
    Eval {
        expr: String,
        /// Assignments such as `x=1,y=-2/3`.
        #[arg(long, default_value = "")]
        at: String,
    },
}

/// Exit status and the text written to each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct ResidualJson {
    identity: String,
    location: Vec<String>,
    value: String,
}

#[derive(Serialize)]
struct CheckJson {
    file: String,
    kind: &'static str,
    name: String,
    verdict: &'static str,
    residuals: Vec<ResidualJson>,
}

#[derive(Serialize)]
struct ResultJson<'a> {
    command: &'a str,
    result: String,
}

#[derive(Serialize)]
struct ErrorJson {
    error: String,
    exit: i32,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let json = cli.json;
    match execute(cli) {
        Ok((code, text)) => Outcome {
            code,
            stdout: terminate(text),
            stderr: String::new(),
        },
        Err(e) => {
            let code = e.exit_code();
            let stderr = if json {
                let body = ErrorJson {
                    error: e.to_string(),
                    exit: code,
                };
                terminate(serde_json::to_string_pretty(&body).expect("serializable"))
            } else {
                format!("error: {e}\n")
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn terminate(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn load(path: &Path) -> Result<Definition, CliError> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_definition(&src).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// The algebroid an expression lives over, with its symbol table: the
/// algebroid itself for algebroid files, the tangent algebroid of the
/// chart for Poisson files.
fn setting(def: &Definition) -> Result<(Algebroid, Symbols), CliError> {
    let (a, syms) = match def {
        Definition::Algebroid { algebroid, .. } => {
            (algebroid.clone(), algebroid_symbols(algebroid))
        }
        Definition::Poisson { structure, .. } => (structure.tangent(), poisson_symbols(structure)),
    };
    check_unambiguous(&syms).map_err(CliError::Usage)?;
    Ok((a, syms))
}

fn output(json: bool, command: &str, result: String) -> Result<(i32, String), CliError> {
    if json {
        let body = ResultJson { command, result };
        Ok((
            0,
            serde_json::to_string_pretty(&body).expect("serializable"),
        ))
    } else {
        Ok((0, result))
    }
}

fn list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|v| v.trim().to_string())
        .filter(|v| !v.is_empty())
        .collect()
}

fn require_algebroid(def: Definition, command: &str) -> Result<(String, Algebroid), CliError> {
    match def {
        Definition::Algebroid { name, algebroid } => Ok((name, algebroid)),
        _ => Err(CliError::Usage(format!(
            "`{command}` takes an algebroid definition"
        ))),
    }
}

fn require_poisson(
    def: Definition,
    command: &str,
) -> Result<(String, algebroid_core::PoissonStructure, Option<Fiber>), CliError> {
    match def {
        Definition::Poisson {
            name,
            structure,
            fiber,
        } => Ok((name, structure, fiber)),
        _ => Err(CliError::Usage(format!(
            "`{command}` takes a poisson definition"
        ))),
    }
}

fn check_one(path: &Path) -> Result<(CheckJson, Report), CliError> {
    let def = load(path)?;
    let report = match &def {
        Definition::Algebroid { algebroid, .. } => algebroid.check_axioms(),
        Definition::Poisson { structure, .. } => is_poisson(structure),
    };
    let json = CheckJson {
        file: path.display().to_string(),
        kind: def.kind(),
        name: def.name().to_string(),
        verdict: if report.is_valid() {
            "valid"
        } else {
            "invalid"
        },
        residuals: report
            .residuals
            .iter()
            .map(|r| ResidualJson {
                identity: r.identity.clone(),
                location: r.location.clone(),
                value: r.value.to_string(),
            })
            .collect(),
    };
    Ok((json, report))
}

fn execute(cli: Cli) -> Result<(i32, String), CliError> {
    let json = cli.json;
    match cli.cmd {
        Cmd::Check { files } => {
            let mut results = Vec::new();
            for f in &files {
                results.push(check_one(f)?);
            }
            let code = if results.iter().all(|(_, r)| r.is_valid()) {
                0
            } else {
                1
            };
            let text = if json {
                if results.len() == 1 {
                    serde_json::to_string_pretty(&results[0].0)
                } else {
                    serde_json::to_string_pretty(
                        &results.iter().map(|(j, _)| j).collect::<Vec<_>>(),
                    )
                }
                .expect("serializable")
            } else if results.len() == 1 {
                results[0].1.to_string()
            } else {
                results
                    .iter()
                    .map(|(j, r)| format!("{}: {}", j.file, r.to_string().trim_end()))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok((code, text))
        }
        Cmd::Bracket { file, x, y } => {
            let def = load(&file)?;
            let (a, syms) = setting(&def)?;
            let result = match &def {
                Definition::Poisson { structure, .. } => {
                    let (vx, vy) = (parse(&x, &syms)?, parse(&y, &syms)?);
                    if vx.is_scalar() && vy.is_scalar() {
                        let (f, g) = (parse_poly(&x, &syms)?, parse_poly(&y, &syms)?);
                        poisson_bracket(structure, &f, &g)?.to_string()
                    } else {
                        let (s, t) = (parse_section(&x, &syms)?, parse_section(&y, &syms)?);
                        a.bracket_sections(&s, &t)?
                            .to_multivector()
                            .render(&syms.vectors)
                    }
                }
                Definition::Algebroid { .. } => {
                    let (s, t) = (parse_section(&x, &syms)?, parse_section(&y, &syms)?);
                    a.bracket_sections(&s, &t)?
                        .to_multivector()
                        .render(&syms.vectors)
                }
            };
            output(json, "bracket", result)
        }
        Cmd::D { file, form } => {
            let def = load(&file)?;
            let (a, syms) = setting(&def)?;
            let eta = parse_form(&form, &syms)?;
            output(json, "d", d_rho(&a, &eta)?.render(&syms.forms))
        }
        Cmd::Lie { file, v, obj } => {
            let def = load(&file)?;
            let (a, syms) = setting(&def)?;
            let v = parse_section(&v, &syms)?;
            let target = parse(&obj, &syms)?;
            let result = if target.basis == Some(Basis::Vectors) {
                lie_multivector(&a, &v, &target.terms)?.render(&syms.vectors)
            } else {
                lie_form(&a, &v, &target.terms.reinterpret())?.render(&syms.forms)
            };
            output(json, "lie", result)
        }
        Cmd::Schouten { file, p, q } => {
            let def = load(&file)?;
            let (a, syms) = setting(&def)?;
            let (p, q) = (parse_multivector(&p, &syms)?, parse_multivector(&q, &syms)?);
            output(
                json,
                "schouten",
                schouten(&a, &p, &q)?.render(&syms.vectors),
            )
        }
        Cmd::Cotangent { file } => {
            let (name, l, _) = require_poisson(load(&file)?, "cotangent")?;
            let out = Definition::Algebroid {
                name: format!("{name}-cotangent"),
                algebroid: cotangent_algebroid(&l)?,
            };
            output(json, "cotangent", render_definition(&out))
        }
        Cmd::Dual { file } => {
            let (name, a) = require_algebroid(load(&file)?, "dual")?;
            let (l, chart) = dual_poisson(&a)?;
            let out = Definition::Poisson {
                name: format!("{name}-dual"),
                structure: l,
                fiber: Some(Fiber {
                    vars: chart.fiber().to_vec(),
                    sections: chart.sections().to_vec(),
                }),
            };
            output(json, "dual", render_definition(&out))
        }
        Cmd::Undual {
            file,
            fiber,
            sections,
        } => {
            let (name, l, declared) = require_poisson(load(&file)?, "undual")?;
            let vars = match (&fiber, &declared) {
                (Some(f), _) => list(f),
                (None, Some(d)) => d.vars.clone(),
                (None, None) => {
                    return Err(CliError::Usage(
                        "no fiber variables: add a `fiber` line or pass --fiber".into(),
                    ))
                }
            };
            let names = match (&sections, &declared) {
                (Some(s), _) => list(s),
                (None, Some(d)) if fiber.is_none() => d.sections.clone(),
                _ => (1..=vars.len()).map(|i| format!("s{i}")).collect(),
            };
            if names.len() != vars.len() {
                return Err(CliError::Usage(
                    "fiber variables and section names differ in number".into(),
                ));
            }
            for v in &vars {
                if l.index_of(v).is_none() {
                    return Err(CliError::Usage(format!(
                        "fiber variable `{v}` is not a coordinate"
                    )));
                }
            }
            let base: Vec<String> = l
                .coords()
                .iter()
                .filter(|x| !vars.contains(x))
                .cloned()
                .collect();
            let chart = DualChart::new(base, vars, names)?;
            let out = Definition::Algebroid {
                name: format!("{name}-undual"),
                algebroid: algebroid_from_dual_poisson(&l, &chart)?,
            };
            output(json, "undual", render_definition(&out))
        }
        Cmd::LiftPoisson { file } => {
            let (name, l, _) = require_poisson(load(&file)?, "lift-poisson")?;
            let (lift, _) = tangent_lift_poisson(&l)?;
            let out = Definition::Poisson {
                name: format!("{name}-lift"),
                structure: lift,
                fiber: None,
            };
            output(json, "lift-poisson", render_definition(&out))
        }
        Cmd::LiftAlgebroid { file } => {
            let (name, a) = require_algebroid(load(&file)?, "lift-algebroid")?;
            let out = Definition::Algebroid {
                name: format!("{name}-lift"),
                algebroid: tangent_lift_algebroid(&a)?,
            };
            output(json, "lift-algebroid", render_definition(&out))
        }
        Cmd::Eval { expr, at } => {
            let mut point = BTreeMap::new();
            for item in list(&at) {
                let Some((k, v)) = item.split_once('=') else {
                    return Err(CliError::Usage(format!(
                        "expected `name=value`, found `{item}`"
                    )));
                };
                let v: Rational = v.trim().parse().map_err(|_| {
                    CliError::Usage(format!("`{}` is not a rational number", v.trim()))
                })?;
                point.insert(k.trim().to_string(), v);
            }
            let names: Vec<String> = point.keys().cloned().collect();
            let syms = Symbols::scalars(free_context(&expr, &names));
            let f = parse_poly(&expr, &syms)?;
            output(json, "eval", f.eval(&point)?.to_string())
        }
    }
}
