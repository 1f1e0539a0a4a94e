//! Shared table of golden-file cases: name, arguments, exit code.

use std::path::PathBuf;

use algebroid_cli::run;

pub const GOLDEN: &[(&str, &[&str], i32)] = &[
    ("check_so3", &["check", "defs/so3.alg"], 0),
    ("check_tampered", &["check", "defs/tampered_so3.alg"], 1),
    ("check_json", &["--json", "check", "defs/non_jacobi.poi"], 1),
    (
        "check_batch",
        &[
            "check",
            "defs/so3.alg",
            "defs/tampered_anchor.alg",
            "defs/darboux.poi",
        ],
        1,
    ),
    (
        "bracket_so3",
        &["bracket", "defs/so3.alg", "e1", "e2 + e3"],
        0,
    ),
    (
        "bracket_sl2",
        &["bracket", "defs/sl2_line.alg", "x*s1", "s3"],
        0,
    ),
    (
        "bracket_poisson",
        &["bracket", "defs/lie_poisson_so3.poi", "x1^2", "x2*x3"],
        0,
    ),
    ("d_so3", &["d", "defs/so3.alg", "eps3"], 0),
    (
        "d_poisson",
        &["d", "defs/quadratic_plane.poi", "u^2*v*dv"],
        0,
    ),
    (
        "lie_form",
        &["lie", "defs/scaling_line.alg", "s", "x^2*eps1"],
        0,
    ),
    (
        "lie_multivector",
        &["lie", "defs/so3.alg", "e1", "e2^e3 + e1"],
        0,
    ),
    (
        "schouten_darboux",
        &["schouten", "defs/darboux.poi", "Lambda", "Lambda"],
        0,
    ),
    (
        "schouten_so3",
        &["schouten", "defs/so3.alg", "e1^e2", "e1"],
        0,
    ),
    ("cotangent", &["cotangent", "defs/lie_poisson_so3.poi"], 0),
    ("dual", &["dual", "defs/sl2_line.alg"], 0),
    ("undual", &["undual", "defs/sl2_line_dual.poi"], 0),
    ("lift_poisson", &["lift-poisson", "defs/darboux1.poi"], 0),
    (
        "lift_poisson_json",
        &["--json", "lift-poisson", "defs/darboux1.poi"],
        0,
    ),
    (
        "lift_algebroid",
        &["lift-algebroid", "defs/sl2_line.alg"],
        0,
    ),
    ("eval", &["eval", "x^2*y + 1/2", "--at", "x=2,y=-1/3"], 0),
];

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Runs one golden case from the crate directory; with `UPDATE_GOLDEN`
/// set, rewrites the expected output first.
pub fn golden_case(name: &str, args: &[&str], code: i32) -> Result<(), String> {
    std::env::set_current_dir(manifest_dir()).map_err(|e| e.to_string())?;
    let out = run(std::iter::once("algebroid").chain(args.iter().copied()));
    if out.code != code {
        return Err(format!(
            "{name}: exit {} (expected {code}); {}",
            out.code,
            out.stderr.trim()
        ));
    }
    let path = manifest_dir()
        .join("tests/golden")
        .join(format!("{name}.out"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).map_err(|e| e.to_string())?;
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{name}: {e}"))?;
    if out.stdout != expected {
        return Err(format!(
            "{name}: output differs from golden file\n{}",
            out.stdout
        ));
    }
    Ok(())
}
