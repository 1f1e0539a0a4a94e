//! Line-oriented definition files for algebroids and Poisson structures.
//!
//! ```text
//! algebroid so3
//! base
//! rank 3 as e1 e2 e3
//! structure [e1,e2] = e3
//! ```
//!
//! ```text
//! poisson darboux
//! base x y
//! bivector [x,y] = -1
//! ```
//!
//! `#` starts a comment. Unspecified entries are zero.

use std::collections::BTreeSet;
use std::fmt::Write;

use algebroid_core::graded::Blade;
use algebroid_core::scalars::Context;
use algebroid_core::{Algebroid, Multivector, PoissonStructure};

use crate::error::ParseError;
use crate::expr::{parse_at, Basis, Symbols};

/// Fiber variables of a linear Poisson structure and the section names
/// they stand for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub vars: Vec<String>,
    pub sections: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Definition {
    Algebroid {
        name: String,
        algebroid: Algebroid,
    },
    Poisson {
        name: String,
        structure: PoissonStructure,
        fiber: Option<Fiber>,
    },
}

impl Definition {
    pub fn name(&self) -> &str {
        match self {
            Definition::Algebroid { name, .. } | Definition::Poisson { name, .. } => name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Definition::Algebroid { .. } => "algebroid",
            Definition::Poisson { .. } => "poisson",
        }
    }
}

/// Form symbols `eps1..epsk` used for algebroid files.
pub fn form_symbols(rank: usize) -> Vec<String> {
    (1..=rank).map(|i| format!("eps{i}")).collect()
}

/// Expression symbols for an algebroid: sections and `eps` forms.
pub fn algebroid_symbols(a: &Algebroid) -> Symbols {
    Symbols {
        ctx: a.context().clone(),
        rank: a.rank(),
        vectors: a.section_names().to_vec(),
        forms: form_symbols(a.rank()),
        constants: Default::default(),
    }
}

/// Expression symbols for a Poisson chart: `d_x` vectors, `dx` forms and
/// the constant `Lambda`.
pub fn poisson_symbols(l: &PoissonStructure) -> Symbols {
    let mut constants = std::collections::BTreeMap::new();
    constants.insert("Lambda".to_string(), l.bivector());
    Symbols {
        ctx: l.context().clone(),
        rank: l.dim(),
        vectors: l.coords().iter().map(|x| format!("d_{x}")).collect(),
        forms: l.coords().iter().map(|x| format!("d{x}")).collect(),
        constants,
    }
}

/// Fails if a name could mean two different things in an expression.
pub fn check_unambiguous(syms: &Symbols) -> Result<(), String> {
    let mut seen = BTreeSet::new();
    let all = syms
        .ctx
        .names()
        .iter()
        .chain(&syms.vectors)
        .chain(&syms.forms)
        .chain(syms.constants.keys());
    for n in all {
        if !seen.insert(n) {
            return Err(format!("symbol `{n}` is ambiguous in this chart"));
        }
    }
    Ok(())
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_')
}

/// 1-based column of byte offset `off` in `line`.
fn col_of(line: &str, off: usize) -> usize {
    line[..off].chars().count() + 1
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, off: usize, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.no, col_of(self.text, off), msg)
    }

    /// Offset of `sub` (a subslice of the line) within the line.
    fn off(&self, sub: &str) -> usize {
        sub.as_ptr() as usize - self.text.as_ptr() as usize
    }

    fn names(&self, rest: &str) -> Result<Vec<String>, ParseError> {
        let mut out = Vec::new();
        for w in rest.split_whitespace() {
            if !is_ident(w) {
                return Err(self.err(self.off(w), format!("`{w}` is not a valid name")));
            }
            out.push(w.to_string());
        }
        Ok(out)
    }

    /// Parses `[a,b] = expr`, returning the two names and the expression
    /// with its offset.
    fn pair_entry<'s>(&self, rest: &'s str) -> Result<(String, String, &'s str), ParseError> {
        let open = rest.find('[').filter(|&i| rest[..i].trim().is_empty());
        let close = rest.find(']');
        let (Some(open), Some(close)) = (open, close) else {
            return Err(self.err(self.off(rest), "expected `[a,b] = expression`"));
        };
        let inner = &rest[open + 1..close];
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 2 || !parts.iter().all(|p| is_ident(p)) {
            return Err(self.err(self.off(inner), "expected two names separated by a comma"));
        }
        let after = &rest[close + 1..];
        let Some(eq) = after.find('=').filter(|&i| after[..i].trim().is_empty()) else {
            return Err(self.err(self.off(after), "expected `=`"));
        };
        Ok((parts[0].to_string(), parts[1].to_string(), &after[eq + 1..]))
    }
}

fn expression(line: &Line, src: &str, syms: &Symbols) -> Result<crate::expr::Value, ParseError> {
    parse_at(src, syms, line.no, col_of(line.text, line.off(src)))
}

/// Parses a definition file.
pub fn parse_definition(src: &str) -> Result<Definition, ParseError> {
    let lines: Vec<Line> = src
        .lines()
        .enumerate()
        .map(|(i, l)| Line {
            no: i + 1,
            text: l.split('#').next().unwrap_or(""),
        })
        .filter(|l| !l.text.trim().is_empty())
        .collect();
    let Some(head) = lines.first() else {
        return Err(ParseError::new(1, 1, "empty definition"));
    };
    let mut words = head.text.split_whitespace();
    let kind = words.next().unwrap_or("");
    let name = words.next();
    let (Some(name), None) = (name, words.next()) else {
        return Err(head.err(0, "expected `algebroid NAME` or `poisson NAME`"));
    };
    match kind {
        "algebroid" => parse_algebroid(name, &lines[1..]),
        "poisson" => parse_poisson(name, &lines[1..]),
        _ => Err(head.err(
            head.off(head.text.trim_start()),
            format!("unknown definition kind `{kind}`"),
        )),
    }
}

fn keyword<'a>(line: &Line<'a>) -> (&'a str, &'a str) {
    let t = line.text.trim_start();
    match t.find(char::is_whitespace) {
        Some(i) => (&t[..i], &t[i..]),
        None => (t, &t[t.len()..]),
    }
}

fn parse_algebroid(name: &str, lines: &[Line]) -> Result<Definition, ParseError> {
    let mut base: Option<Vec<String>> = None;
    let mut a: Option<Algebroid> = None;
    let mut anchors = BTreeSet::new();
    let mut structures = BTreeSet::new();
    for line in lines {
        let (kw, rest) = keyword(line);
        let kw_off = line.off(kw);
        match kw {
            "base" => {
                if base.is_some() || a.is_some() {
                    return Err(line.err(kw_off, "`base` must appear once, before `rank`"));
                }
                base = Some(line.names(rest)?);
            }
            "rank" => {
                if a.is_some() {
                    return Err(line.err(kw_off, "duplicate `rank`"));
                }
                let mut ws = rest.split_whitespace();
                let n_str = ws.next().unwrap_or("");
                let k: usize = n_str
                    .parse()
                    .map_err(|_| line.err(line.off(rest), "expected `rank N [as s1 .. sN]`"))?;
                let sections = match ws.next() {
                    None => (1..=k).map(|i| format!("s{i}")).collect(),
                    Some("as") => {
                        let as_off = line.off(rest) + rest.find(" as").map(|i| i + 3).unwrap_or(0);
                        let names = line.names(&line.text[as_off..])?;
                        if names.len() != k {
                            return Err(line.err(
                                as_off,
                                format!("expected {k} section names, found {}", names.len()),
                            ));
                        }
                        names
                    }
                    Some(w) => return Err(line.err(line.off(w), "expected `as`")),
                };
                let coords = base.clone().unwrap_or_default();
                let built = Algebroid::new(coords, sections)
                    .map_err(|e| line.err(kw_off, e.to_string()))?;
                check_unambiguous(&algebroid_symbols(&built)).map_err(|e| line.err(kw_off, e))?;
                a = Some(built);
            }
            "anchor" => {
                let Some(alg) = a.as_mut() else {
                    return Err(line.err(kw_off, "`anchor` before `rank`"));
                };
                let (Some(arrow), Some(colon)) = (rest.find("->"), rest.find(':')) else {
                    return Err(line.err(line.off(rest), "expected `anchor s -> x: expression`"));
                };
                if colon < arrow {
                    return Err(line.err(line.off(rest), "expected `anchor s -> x: expression`"));
                }
                let s = rest[..arrow].trim();
                let x = rest[arrow + 2..colon].trim();
                let r = alg
                    .section_names()
                    .iter()
                    .position(|n| n == s)
                    .ok_or_else(|| line.err(line.off(rest), format!("unknown section `{s}`")))?;
                let b = alg.coords().iter().position(|n| n == x).ok_or_else(|| {
                    line.err(
                        line.off(rest) + arrow + 2,
                        format!("unknown coordinate `{x}`"),
                    )
                })?;
                if !anchors.insert((r, b)) {
                    return Err(line.err(kw_off, format!("duplicate anchor entry for {s} -> {x}")));
                }
                let syms = algebroid_symbols(alg);
                let src = &rest[colon + 1..];
                let v = expression(line, src, &syms)?;
                let f = v.as_poly(&syms.ctx).ok_or_else(|| {
                    line.err(line.off(src), "anchor entries are scalar expressions")
                })?;
                alg.set_anchor(r, b, f)
                    .map_err(|e| line.err(line.off(src), e.to_string()))?;
            }
            "structure" => {
                let Some(alg) = a.as_mut() else {
                    return Err(line.err(kw_off, "`structure` before `rank`"));
                };
                let (si, sj, src) = line.pair_entry(rest)?;
                let idx = |s: &str| alg.section_names().iter().position(|n| n == s);
                let (Some(i), Some(j)) = (idx(&si), idx(&sj)) else {
                    let bad = if idx(&si).is_none() { &si } else { &sj };
                    return Err(line.err(line.off(rest), format!("unknown section `{bad}`")));
                };
                if i >= j {
                    return Err(line.err(
                        line.off(rest),
                        "structure entries need [si,sj] with si declared before sj",
                    ));
                }
                if !structures.insert((i, j)) {
                    return Err(
                        line.err(kw_off, format!("duplicate structure entry for [{si},{sj}]"))
                    );
                }
                let syms = algebroid_symbols(alg);
                let v = expression(line, src, &syms)?;
                if v.basis == Some(Basis::Forms) || v.terms.terms().any(|(b, _)| b.degree() != 1) {
                    return Err(line.err(line.off(src), "structure entries are sections"));
                }
                for m in 0..alg.rank() {
                    let c = v.terms.coeff_or_zero(Blade::single(m));
                    alg.set_structure(i, j, m, c)
                        .map_err(|e| line.err(line.off(src), e.to_string()))?;
                }
            }
            _ => {
                return Err(line.err(
                    kw_off,
                    format!("unexpected `{kw}` in an algebroid definition"),
                ))
            }
        }
    }
    let algebroid = match a {
        Some(a) => a,
        None => {
            let coords = base.unwrap_or_default();
            Algebroid::new(coords, vec![]).map_err(|e| ParseError::new(1, 1, e.to_string()))?
        }
    };
    Ok(Definition::Algebroid {
        name: name.to_string(),
        algebroid,
    })
}

fn parse_poisson(name: &str, lines: &[Line]) -> Result<Definition, ParseError> {
    let mut l: Option<PoissonStructure> = None;
    let mut fiber: Option<Fiber> = None;
    let mut entries = BTreeSet::new();
    for line in lines {
        let (kw, rest) = keyword(line);
        let kw_off = line.off(kw);
        match kw {
            "base" => {
                if l.is_some() {
                    return Err(line.err(kw_off, "duplicate `base`"));
                }
                let coords = line.names(rest)?;
                let built =
                    PoissonStructure::new(coords).map_err(|e| line.err(kw_off, e.to_string()))?;
                check_unambiguous(&poisson_symbols(&built)).map_err(|e| line.err(kw_off, e))?;
                l = Some(built);
            }
            "fiber" => {
                let Some(ps) = l.as_ref() else {
                    return Err(line.err(kw_off, "`fiber` before `base`"));
                };
                if fiber.is_some() {
                    return Err(line.err(kw_off, "duplicate `fiber`"));
                }
                let (vars_src, sections_src) = match rest.find(" as ") {
                    Some(i) => (&rest[..i], Some(&rest[i + 4..])),
                    None => (rest, None),
                };
                let vars = line.names(vars_src)?;
                for v in &vars {
                    if ps.index_of(v).is_none() {
                        return Err(
                            line.err(kw_off, format!("fiber variable `{v}` is not a coordinate"))
                        );
                    }
                }
                let sections = match sections_src {
                    Some(s) => line.names(s)?,
                    None => (1..=vars.len()).map(|i| format!("s{i}")).collect(),
                };
                if sections.len() != vars.len() {
                    return Err(
                        line.err(kw_off, "fiber variables and section names differ in number")
                    );
                }
                fiber = Some(Fiber { vars, sections });
            }
            "bivector" => {
                let Some(ps) = l.as_mut() else {
                    return Err(line.err(kw_off, "`bivector` before `base`"));
                };
                let (x, y, src) = line.pair_entry(rest)?;
                let (Some(i), Some(j)) = (ps.index_of(&x), ps.index_of(&y)) else {
                    let bad = if ps.index_of(&x).is_none() { &x } else { &y };
                    return Err(line.err(line.off(rest), format!("unknown coordinate `{bad}`")));
                };
                if i >= j {
                    return Err(line.err(
                        line.off(rest),
                        "bivector entries need [x,y] with x declared before y",
                    ));
                }
                if !entries.insert((i, j)) {
                    return Err(line.err(kw_off, format!("duplicate bivector entry for [{x},{y}]")));
                }
                let syms = Symbols::scalars(ps.context().clone());
                let v = expression(line, src, &syms)?;
                let f = v.as_poly(&syms.ctx).expect("scalar symbols only");
                ps.set(i, j, f)
                    .map_err(|e| line.err(line.off(src), e.to_string()))?;
            }
            _ => return Err(line.err(kw_off, format!("unexpected `{kw}` in a poisson definition"))),
        }
    }
    let structure = match l {
        Some(l) => l,
        None => PoissonStructure::new(vec![]).expect("empty chart"),
    };
    Ok(Definition::Poisson {
        name: name.to_string(),
        structure,
        fiber,
    })
}

/// Canonical text of a definition; parsing it gives the same definition.
pub fn render_definition(d: &Definition) -> String {
    let mut out = String::new();
    match d {
        Definition::Algebroid { name, algebroid: a } => {
            writeln!(out, "algebroid {name}").unwrap();
            writeln!(out, "{}", join_line("base", a.coords())).unwrap();
            writeln!(out, "rank {} as{}", a.rank(), prefixed(a.section_names())).unwrap();
            for r in 0..a.rank() {
                for (b, x) in a.coords().iter().enumerate() {
                    let f = a.anchor(r, b);
                    if !f.is_zero() {
                        writeln!(out, "anchor {} -> {x}: {f}", a.section_names()[r]).unwrap();
                    }
                }
            }
            let names = a.section_names();
            for i in 0..a.rank() {
                for j in i + 1..a.rank() {
                    let v = Multivector::from_terms(
                        a.rank(),
                        (0..a.rank()).map(|m| (Blade::single(m), a.structure(i, j, m).clone())),
                    );
                    if !v.is_zero() {
                        writeln!(
                            out,
                            "structure [{},{}] = {}",
                            names[i],
                            names[j],
                            v.render(names)
                        )
                        .unwrap();
                    }
                }
            }
        }
        Definition::Poisson {
            name,
            structure: l,
            fiber,
        } => {
            writeln!(out, "poisson {name}").unwrap();
            writeln!(out, "{}", join_line("base", l.coords())).unwrap();
            if let Some(f) = fiber {
                writeln!(
                    out,
                    "fiber{} as{}",
                    prefixed(&f.vars),
                    prefixed(&f.sections)
                )
                .unwrap();
            }
            let syms = poisson_symbols(l);
            writeln!(out, "# Lambda = {}", l.bivector().render(&syms.vectors)).unwrap();
            for i in 0..l.dim() {
                for j in i + 1..l.dim() {
                    let f = l.get(i, j);
                    if !f.is_zero() {
                        writeln!(out, "bivector [{},{}] = {f}", l.coords()[i], l.coords()[j])
                            .unwrap();
                    }
                }
            }
        }
    }
    out
}

fn prefixed(names: &[String]) -> String {
    names.iter().map(|n| format!(" {n}")).collect()
}

fn join_line(kw: &str, names: &[String]) -> String {
    format!("{kw}{}", prefixed(names))
}

/// The context of an expression typed at the command line for `eval`:
/// every identifier is a variable.
pub fn free_context(src: &str, extra: &[String]) -> Context {
    let idents = src
        .split(|c: char| !(c.is_alphanumeric() || c == '_'))
        .filter(|w| is_ident(w))
        .map(str::to_string);
    Context::new(idents.chain(extra.iter().cloned()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebroid_core::library;

    const SO3: &str = "algebroid so3\nbase\nrank 3 as e1 e2 e3\nstructure [e1,e2] = e3\nstructure [e2,e3] = e1\nstructure [e1,e3] = -e2\n";

    #[test]
    fn parses_so3() {
        let Definition::Algebroid { name, algebroid } = parse_definition(SO3).unwrap() else {
            panic!("expected an algebroid");
        };
        assert_eq!(name, "so3");
        assert_eq!(algebroid, library::so3());
    }

    #[test]
    fn parses_poisson_with_comments() {
        let src = "# Darboux\npoisson d  # plane\nbase x y\n\nbivector [x,y] = -1\n";
        let Definition::Poisson {
            structure, fiber, ..
        } = parse_definition(src).unwrap()
        else {
            panic!("expected a poisson structure");
        };
        assert_eq!(structure, library::darboux(1));
        assert_eq!(fiber, None);
    }

    #[test]
    fn renders_canonically() {
        let d = parse_definition(SO3).unwrap();
        let text = render_definition(&d);
        assert_eq!(
            text,
            "algebroid so3\nbase\nrank 3 as e1 e2 e3\nstructure [e1,e2] = e3\nstructure [e1,e3] = -e2\nstructure [e2,e3] = e1\n"
        );
        assert_eq!(parse_definition(&text).unwrap(), d);
    }

    fn err(src: &str) -> ParseError {
        parse_definition(src).unwrap_err()
    }

    #[test]
    fn rejects_malformed_definitions() {
        let e = err("algebroid a\nbase x\nrank 1 as s\nanchor s -> x: 1\nanchor s -> x: 2\n");
        assert_eq!(e.line, 5);
        assert!(e.msg.contains("duplicate"));
        let e = err("algebroid a\nrank 2 as s t\nstructure [t,s] = s\n");
        assert_eq!(e.line, 3);
        let e = err("algebroid a\nrank 2 as s t\nstructure [s,t] = s + q\n");
        assert_eq!((e.line, e.col), (3, 23));
        let e = err("algebroid a\nrank 2 as s t\nstructure [s,t] = s^t\n");
        assert!(e.msg.contains("sections"));
        let e = err("algebroid a\nbase x\nrank 2 as s\n");
        assert!(e.msg.contains("expected 2"));
        let e = err("algebroid a\nbase x\nrank 1 as x\n");
        assert_eq!(e.line, 3);
        let e = err("poisson p\nbase x y\nbivector [x,y] = 1\nbivector [x,y] = 2\n");
        assert_eq!(e.line, 4);
        let e = err("poisson p\nbase x y\nbivector [y,x] = 1\n");
        assert_eq!(e.line, 3);
        let e = err("poisson p\nbase x y\nstructure [x,y] = 1\n");
        assert!(e.msg.contains("unexpected"));
        let e = err("lattice p\n");
        assert!(e.msg.contains("unknown definition kind"));
        assert!(parse_definition("").is_err());
        assert!(parse_definition("poisson p\nbase x dx\n").is_err());
        assert!(parse_definition("algebroid a\nanchor s -> x: 1\n").is_err());
    }

    #[test]
    fn fiber_line() {
        let src = "poisson p\nbase x xi\nfiber xi as s\nbivector [x,xi] = -1\n";
        let Definition::Poisson { fiber, .. } = parse_definition(src).unwrap() else {
            panic!("expected a poisson structure");
        };
        assert_eq!(
            fiber,
            Some(Fiber {
                vars: vec!["xi".into()],
                sections: vec!["s".into()]
            })
        );
        assert!(parse_definition("poisson p\nbase x\nfiber q\n").is_err());
    }
}
