//! Command-line front end. One logical command per invocation; all output
//! is deterministic UTF-8 on standard out.
//!
//! Exit codes: 0 for success, 1 when a verification fails or a comparison
//! finds a difference, 2 for usage or input errors.

use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::{self, FiniteSingquandle};
use crate::diagram::{self, SingularDiagram};
use crate::fixtures;
use crate::invariants;
use crate::polynomial::{render, render_multiset};
use crate::shadow::{self, ShadowStructure};

pub struct Outcome {
    pub code: i32,
    pub output: String,
}

fn ok(output: String) -> Outcome {
    Outcome { code: 0, output }
}

fn reported(output: String) -> Outcome {
    Outcome { code: 1, output }
}

fn usage_error(msg: impl Into<String>) -> Outcome {
    Outcome {
        code: 2,
        output: format!("error: {}\n\n{}", msg.into(), USAGE),
    }
}

const USAGE: &str = "\
usage:
  singquandle verify (singquandle|shadow) <file>
  singquandle colorings <diagram> --structure <file> [--list] [--workers N]
  singquandle invariant count <diagram> --structure <file> [--json] [--workers N]
  singquandle invariant ssqp <diagram> --structure <file> [--json] [--workers N]
  singquandle invariant sp-struct --shadow <file> [--json]
  singquandle invariant shadow-count <diagram> --shadow <file> [--json] [--workers N]
  singquandle invariant SP <diagram> --shadow <file> [--json] [--workers N]
  singquandle regions <diagram>
  singquandle distinguish <d1> <d2> --shadow <file> [--json]
  singquandle search linear --modulus <n>
  singquandle search shadows --structure <file> --size <m>
  singquandle builtin list

<diagram> is a builtin name (see `builtin list`) or a JSON file path.
<file> arguments are JSON file paths; the names of the embedded example
structures and shadows are accepted too.
";

/// Parsed flags: every `--key value` pair plus boolean flags.
struct Flags {
    positional: Vec<String>,
    structure: Option<String>,
    shadow: Option<String>,
    modulus: Option<u64>,
    size: Option<u64>,
    workers: usize,
    list: bool,
    json: bool,
}

fn parse_flags(args: &[String]) -> Result<Flags, String> {
    let mut flags = Flags {
        positional: Vec::new(),
        structure: None,
        shadow: None,
        modulus: None,
        size: None,
        workers: 1,
        list: false,
        json: false,
    };
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--structure" => {
                flags.structure = Some(it.next().ok_or("--structure needs a value")?.clone())
            }
            "--shadow" => flags.shadow = Some(it.next().ok_or("--shadow needs a value")?.clone()),
            "--modulus" => {
                flags.modulus = Some(
                    it.next()
                        .ok_or("--modulus needs a value")?
                        .parse()
                        .map_err(|_| "--modulus needs an integer")?,
                )
            }
            "--size" => {
                flags.size = Some(
                    it.next()
                        .ok_or("--size needs a value")?
                        .parse()
                        .map_err(|_| "--size needs an integer")?,
                )
            }
            "--workers" => {
                flags.workers = it
                    .next()
                    .ok_or("--workers needs a value")?
                    .parse()
                    .map_err(|_| "--workers needs an integer")?;
                if flags.workers == 0 {
                    return Err("--workers must be at least 1".into());
                }
            }
            "--list" => flags.list = true,
            "--json" => flags.json = true,
            other if other.starts_with("--") => {
                return Err(format!("unknown flag `{other}`"));
            }
            other => flags.positional.push(other.to_string()),
        }
    }
    Ok(flags)
}

fn load_diagram(arg: &str) -> Result<SingularDiagram, String> {
    if let Ok(d) = diagram::builtin(arg) {
        return Ok(d);
    }
    if Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
        return diagram::parse_diagram(&text).map_err(|e| format!("{arg}: {e}"));
    }
    Err(format!(
        "`{arg}` is neither a builtin diagram nor an existing file"
    ))
}

fn load_structure(arg: &str) -> Result<FiniteSingquandle, String> {
    if Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
        return algebra::from_json_str(&text).map_err(|e| format!("{arg}: {e}"));
    }
    if let Some(q) = fixtures::structure(arg) {
        return Ok(q);
    }
    Err(format!(
        "`{arg}` is neither an existing file nor an embedded structure"
    ))
}

fn load_shadow_impl(arg: &str, validated: bool) -> Result<ShadowStructure, String> {
    if Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
        let dir = Path::new(arg).parent().map(Path::to_path_buf);
        let resolve = move |name: &str| -> Result<String, String> {
            if let Some(dir) = &dir {
                let candidate = dir.join(name);
                if candidate.exists() {
                    return std::fs::read_to_string(&candidate)
                        .map_err(|e| format!("{}: {e}", candidate.display()));
                }
            }
            if Path::new(name).exists() {
                return std::fs::read_to_string(name).map_err(|e| format!("{name}: {e}"));
            }
            fixtures::structure_text(name)
                .map(String::from)
                .ok_or_else(|| format!("cannot resolve host `{name}`"))
        };
        let result = if validated {
            shadow::from_json_str(&text, &resolve)
        } else {
            shadow::from_json_str_unvalidated(&text, &resolve)
        };
        return result.map_err(|e| format!("{arg}: {e}"));
    }
    if let Some(sh) = fixtures::shadow(arg) {
        return Ok(sh);
    }
    Err(format!(
        "`{arg}` is neither an existing file nor an embedded shadow"
    ))
}

fn load_shadow(arg: &str) -> Result<ShadowStructure, String> {
    load_shadow_impl(arg, true)
}

fn load_shadow_unvalidated(arg: &str) -> Result<ShadowStructure, String> {
    load_shadow_impl(arg, false)
}

pub fn run(args: &[String]) -> Outcome {
    let Some((command, rest)) = args.split_first() else {
        return usage_error("missing command");
    };
    let flags = match parse_flags(rest) {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    match command.as_str() {
        "verify" => cmd_verify(&flags),
        "colorings" => cmd_colorings(&flags),
        "invariant" => cmd_invariant(&flags),
        "regions" => cmd_regions(&flags),
        "distinguish" => cmd_distinguish(&flags),
        "search" => cmd_search(&flags),
        "builtin" => cmd_builtin(&flags),
        other => usage_error(format!("unknown command `{other}`")),
    }
}

fn load_structure_text(arg: &str) -> Result<String, String> {
    if Path::new(arg).exists() {
        return std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"));
    }
    fixtures::structure_text(arg)
        .map(String::from)
        .ok_or_else(|| format!("`{arg}` is neither an existing file nor an embedded structure"))
}

fn cmd_verify(flags: &Flags) -> Outcome {
    let [what, file] = flags.positional.as_slice() else {
        return usage_error("verify takes a kind and a file");
    };
    match what.as_str() {
        "singquandle" => {
            let text = match load_structure_text(file) {
                Ok(t) => t,
                Err(e) => return usage_error(e),
            };
            let loaded = match algebra::verify_from_json_str(&text) {
                Ok(l) => l,
                Err(e) => return usage_error(e.to_string()),
            };
            let mut out = String::new();
            for check in &loaded.report.checks {
                match check.witness {
                    None => writeln!(out, "{}: ok", check.axiom).unwrap(),
                    Some(w) => writeln!(
                        out,
                        "{}: FAIL at ({}, {}, {})",
                        check.axiom,
                        loaded.elements[w[0].0],
                        loaded.elements[w[1].0],
                        loaded.elements[w[2].0]
                    )
                    .unwrap(),
                }
            }
            if loaded.report.all_pass() {
                writeln!(
                    out,
                    "all axioms hold for `{}` (n = {})",
                    loaded.name,
                    loaded.elements.len()
                )
                .unwrap();
                ok(out)
            } else {
                writeln!(out, "axiom violations found in `{}`", loaded.name).unwrap();
                reported(out)
            }
        }
        "shadow" => {
            let sh = match load_shadow_unvalidated(file) {
                Ok(sh) => sh,
                Err(e) => return usage_error(e),
            };
            let report = shadow::verify_shadow_axioms(&sh);
            let mut out = String::new();
            for check in &report.checks {
                match check.witness {
                    None => writeln!(out, "{}: ok", check.axiom).unwrap(),
                    Some((a, b, c)) => {
                        let w = match check.axiom {
                            shadow::ShadowAxiom::ActionBijective => format!(
                                "x1 = {}, x2 = {}, s = {}",
                                sh.x_labels()[a],
                                sh.x_labels()[b],
                                sh.host().labels()[c]
                            ),
                            _ => format!(
                                "x = {}, s1 = {}, s2 = {}",
                                sh.x_labels()[a],
                                sh.host().labels()[b],
                                sh.host().labels()[c]
                            ),
                        };
                        writeln!(out, "{}: FAIL at ({w})", check.axiom).unwrap();
                    }
                }
            }
            if report.all_pass() {
                writeln!(
                    out,
                    "shadow axioms hold over `{}` (|X| = {})",
                    sh.host().name(),
                    sh.x_size()
                )
                .unwrap();
                ok(out)
            } else {
                writeln!(out, "shadow axiom violations found").unwrap();
                reported(out)
            }
        }
        other => usage_error(format!("verify does not know `{other}`")),
    }
}

fn cmd_colorings(flags: &Flags) -> Outcome {
    let [diagram] = flags.positional.as_slice() else {
        return usage_error("colorings takes a diagram");
    };
    let Some(structure) = &flags.structure else {
        return usage_error("colorings needs --structure");
    };
    let d = match load_diagram(diagram) {
        Ok(d) => d,
        Err(e) => return usage_error(e),
    };
    let q = match load_structure(structure) {
        Ok(q) => q,
        Err(e) => return usage_error(e),
    };
    let found = diagram::colorings_with_workers(&d, &q, flags.workers);
    let mut out = String::new();
    writeln!(
        out,
        "{} colorings of {} by {} on arcs ({})",
        found.len(),
        d.name(),
        q.name(),
        d.arcs().join(", ")
    )
    .unwrap();
    if flags.list {
        for c in &found {
            writeln!(out, "{}", c.render(&q)).unwrap();
        }
    }
    ok(out)
}

fn cmd_invariant(flags: &Flags) -> Outcome {
    let Some((kind, rest)) = flags.positional.split_first() else {
        return usage_error("invariant takes a kind");
    };
    let json_value = |diagram: &str, value: String| -> String {
        serde_json::json!({
            "invariant": kind,
            "diagram": diagram,
            "value": value,
        })
        .to_string()
            + "\n"
    };
    let diagram_arg = rest.first();
    let result: Result<(String, String), String> = match kind.as_str() {
        "count" | "ssqp" => {
            let Some(darg) = diagram_arg else {
                return usage_error(format!("invariant {kind} takes a diagram"));
            };
            let Some(sarg) = &flags.structure else {
                return usage_error(format!("invariant {kind} needs --structure"));
            };
            load_diagram(darg).and_then(|d| {
                let q = load_structure(sarg)?;
                let value = if kind == "count" {
                    invariants::counting_with_workers(&d, &q, flags.workers).to_string()
                } else {
                    render_multiset(&invariants::ssqp_invariant_with_workers(
                        &d,
                        &q,
                        flags.workers,
                    ))
                };
                Ok((d.name().to_string(), value))
            })
        }
        "sp-struct" => {
            if diagram_arg.is_some() {
                return usage_error("invariant sp-struct takes no diagram");
            }
            let Some(sharg) = &flags.shadow else {
                return usage_error("invariant sp-struct needs --shadow");
            };
            load_shadow(sharg).map(|sh| ("-".to_string(), render(&shadow::sp(&sh))))
        }
        "shadow-count" | "SP" => {
            let Some(darg) = diagram_arg else {
                return usage_error(format!("invariant {kind} takes a diagram"));
            };
            let Some(sharg) = &flags.shadow else {
                return usage_error(format!("invariant {kind} needs --shadow"));
            };
            load_diagram(darg).and_then(|d| {
                let sh = load_shadow(sharg)?;
                let value = if kind == "shadow-count" {
                    invariants::shadow_counting_with_workers(&d, &sh, flags.workers).to_string()
                } else {
                    let m = invariants::sp_invariant_with_workers(&d, &sh, flags.workers)
                        .map_err(|e| e.to_string())?;
                    render_multiset(&m)
                };
                Ok((d.name().to_string(), value))
            })
        }
        other => return usage_error(format!("unknown invariant `{other}`")),
    };
    match result {
        Ok((dname, value)) => {
            if flags.json {
                ok(json_value(&dname, value))
            } else {
                ok(format!("{value}\n"))
            }
        }
        Err(e) => usage_error(e),
    }
}

fn cmd_regions(flags: &Flags) -> Outcome {
    let [diagram] = flags.positional.as_slice() else {
        return usage_error("regions takes a diagram");
    };
    let d = match load_diagram(diagram) {
        Ok(d) => d,
        Err(e) => return usage_error(e),
    };
    let rm = match diagram::trace_regions(&d) {
        Ok(rm) => rm,
        Err(e) => return usage_error(e.to_string()),
    };
    let mut out = String::new();
    writeln!(
        out,
        "{}: {} vertices, {} semi-arcs, {} faces",
        d.name(),
        d.vertices().len(),
        d.semi_arcs().len(),
        rm.face_count()
    )
    .unwrap();
    for (face, corners) in rm.face_corners.iter().enumerate() {
        let desc: Vec<String> = corners.iter().map(|&(v, s)| format!("v{v}.{s}")).collect();
        writeln!(out, "face {face}: corners [{}]", desc.join(", ")).unwrap();
    }
    for (si, s) in d.semi_arcs().iter().enumerate() {
        let (left, right) = rm.sides[si];
        writeln!(
            out,
            "semi-arc {}: left face {left}, right face {right}",
            s.label
        )
        .unwrap();
    }
    writeln!(
        out,
        "euler check: faces = vertices + 2: {}",
        rm.face_count() == d.vertices().len() + 2
    )
    .unwrap();
    ok(out)
}

fn cmd_distinguish(flags: &Flags) -> Outcome {
    let [d1arg, d2arg] = flags.positional.as_slice() else {
        return usage_error("distinguish takes two diagrams");
    };
    let Some(sharg) = &flags.shadow else {
        return usage_error("distinguish needs --shadow");
    };
    let (d1, d2, sh) = match (load_diagram(d1arg), load_diagram(d2arg), load_shadow(sharg)) {
        (Ok(a), Ok(b), Ok(sh)) => (a, b, sh),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return usage_error(e),
    };
    let report = match invariants::distinguish(&d1, &d2, &sh) {
        Ok(r) => r,
        Err(e) => return usage_error(e.to_string()),
    };
    let mut out = String::new();
    if flags.json {
        let value = serde_json::json!({
            "left": d1.name(),
            "right": d2.name(),
            "report": report,
            "distinguished": !report.all_equal(),
        });
        writeln!(out, "{value}").unwrap();
    } else {
        let verdict = |eq: bool| if eq { "equal" } else { "DIFFERENT" };
        writeln!(out, "comparing {} and {}", d1.name(), d2.name()).unwrap();
        writeln!(
            out,
            "counting:        {} | {} -> {}",
            report.counting.left,
            report.counting.right,
            verdict(report.counting.equal)
        )
        .unwrap();
        writeln!(
            out,
            "shadow counting: {} | {} -> {}",
            report.shadow_counting.left,
            report.shadow_counting.right,
            verdict(report.shadow_counting.equal)
        )
        .unwrap();
        writeln!(
            out,
            "ssqp:            {} | {} -> {}",
            report.ssqp.left,
            report.ssqp.right,
            verdict(report.ssqp.equal)
        )
        .unwrap();
        writeln!(
            out,
            "SP:              {} | {} -> {}",
            report.sp.left,
            report.sp.right,
            verdict(report.sp.equal)
        )
        .unwrap();
        writeln!(
            out,
            "{}",
            if report.all_equal() {
                "no invariant distinguishes the diagrams"
            } else {
                "the diagrams are distinguished"
            }
        )
        .unwrap();
    }
    if report.all_equal() {
        ok(out)
    } else {
        reported(out)
    }
}

fn polynomial_action_formula(spec: &shadow::PolynomialActionSpec) -> String {
    let names = ["", "x", "s", "x^2", "s^2", "x*s"];
    let mut parts = Vec::new();
    for (i, &c) in spec.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let part = if names[i].is_empty() {
            format!("{c}")
        } else if c == 1 {
            names[i].to_string()
        } else {
            format!("{c}*{}", names[i])
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn cmd_search(flags: &Flags) -> Outcome {
    let Some((what, _)) = flags.positional.split_first() else {
        return usage_error("search takes `linear` or `shadows`");
    };
    match what.as_str() {
        "linear" => {
            let Some(n) = flags.modulus else {
                return usage_error("search linear needs --modulus");
            };
            if n == 0 {
                return usage_error("--modulus must be positive");
            }
            let specs = algebra::enumerate_linear(n);
            let mut out = String::new();
            for s in &specs {
                writeln!(out, "(a = {}, b = {}, c = {})", s.a, s.b, s.c).unwrap();
            }
            writeln!(out, "{} linear structures pass over Z{n}", specs.len()).unwrap();
            ok(out)
        }
        "shadows" => {
            let Some(sarg) = &flags.structure else {
                return usage_error("search shadows needs --structure");
            };
            let Some(m) = flags.size else {
                return usage_error("search shadows needs --size");
            };
            if m == 0 {
                return usage_error("--size must be positive");
            }
            let q = match load_structure(sarg) {
                Ok(q) => q,
                Err(e) => return usage_error(e),
            };
            let specs = shadow::search_polynomial_shadows(&q, m, 2);
            let mut out = String::new();
            for s in &specs {
                writeln!(
                    out,
                    "coeffs = {:?}  x·s = {}",
                    s.coeffs,
                    polynomial_action_formula(s)
                )
                .unwrap();
            }
            writeln!(
                out,
                "{} polynomial actions of Z{m} over {}",
                specs.len(),
                q.name()
            )
            .unwrap();
            ok(out)
        }
        other => usage_error(format!("search does not know `{other}`")),
    }
}

fn cmd_builtin(flags: &Flags) -> Outcome {
    match flags.positional.as_slice() {
        [cmd] if cmd == "list" => {
            let mut out = String::new();
            for name in diagram::builtin_names() {
                writeln!(out, "{name}").unwrap();
            }
            ok(out)
        }
        _ => usage_error("builtin takes `list`"),
    }
}
