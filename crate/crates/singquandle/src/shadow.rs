//! Shadow structures: a finite set acted on by a singquandle, presented as
//! an action matrix. Region colors of a diagram live in the shadow set.
//!
//! Rows follow the declared order of the acted-on set, columns the host's
//! element order, and entries are element values, matching how the printed
//! matrices read.

use std::collections::BTreeSet;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{self, AlgebraError, ElementId, FiniteSingquandle};
use crate::polynomial::{canonical_form, Monomial, MultiPoly};

/// Index into the shadow set's declared element order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XId(pub usize);

impl fmt::Display for XId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShadowAxiom {
    /// Every column acts as a bijection of the shadow set.
    ActionBijective,
    /// `(x·s1)·s2 = (x·s2)·(s1*s2)`.
    StarCompatibility,
    /// `(x·s1)·s2 = (x·R1(s1,s2))·R2(s1,s2)`.
    SingularCompatibility,
}

impl fmt::Display for ShadowAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShadowAxiom::ActionBijective => write!(f, "action-bijective"),
            ShadowAxiom::StarCompatibility => write!(f, "star-compatibility"),
            ShadowAxiom::SingularCompatibility => write!(f, "singular-compatibility"),
        }
    }
}

/// Verifier line for one shadow axiom. For the bijectivity check the
/// witness is `(x1, x2, s)` with `x1·s = x2·s`; otherwise `(x, s1, s2)`.
#[derive(Debug, Clone, Copy)]
pub struct ShadowCheck {
    pub axiom: ShadowAxiom,
    pub witness: Option<(usize, usize, usize)>,
}

impl ShadowCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct ShadowReport {
    pub checks: Vec<ShadowCheck>,
}

impl ShadowReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(ShadowCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&ShadowCheck> {
        self.checks.iter().find(|c| !c.passed())
    }
}

#[derive(Debug, Error)]
pub enum ShadowError {
    #[error("column {0} of the action matrix is not a bijection")]
    NonBijectiveAction(usize),
    #[error("shadow axiom {axiom} fails at witness ({}, {}, {})", witness.0, witness.1, witness.2)]
    ShadowAxiomViolation {
        axiom: ShadowAxiom,
        witness: (usize, usize, usize),
    },
    #[error("invalid subshadow: {0}")]
    InvalidSubshadow(String),
    #[error("action matrix is not {m}x{n}")]
    MalformedMatrix { m: usize, n: usize },
    #[error("unknown shadow element label `{0}`")]
    UnknownLabel(String),
    #[error("shadow element labels are not distinct")]
    DuplicateLabel,
    #[error(
        "host element `{0}` is not a residue; polynomial actions need the canonical residue order"
    )]
    NonResidueHost(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("shadow file is malformed: {0}")]
    MalformedFile(String),
}

/// Coefficients of `x·s = α + βx + γs + δx² + εs² + ζxs (mod m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub struct PolynomialActionSpec {
    pub modulus: u64,
    pub coeffs: [u64; 6],
}

impl PolynomialActionSpec {
    pub fn eval(&self, x: u64, s: u64) -> u64 {
        let m = self.modulus;
        let (x, s) = (x % m, s % m);
        let [al, be, ga, de, ep, ze] = self.coeffs;
        (al + be * x + ga * s + de * x * x + ep * s * s + ze * x * s) % m
    }

    pub fn degree(&self) -> u32 {
        let [_, be, ga, de, ep, ze] = self.coeffs;
        if de != 0 || ep != 0 || ze != 0 {
            2
        } else if be != 0 || ga != 0 {
            1
        } else {
            0
        }
    }
}

/// A pair of closed subsets: a subsingquandle of the host together with a
/// subset of the shadow set stable under its action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subshadow {
    pub s_subset: BTreeSet<ElementId>,
    pub x_subset: BTreeSet<XId>,
}

/// A validated shadow structure over a host singquandle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowStructure {
    host: FiniteSingquandle,
    x_elements: Vec<String>,
    action: Vec<Vec<XId>>,
}

impl ShadowStructure {
    pub fn host(&self) -> &FiniteSingquandle {
        &self.host
    }

    pub fn x_size(&self) -> usize {
        self.x_elements.len()
    }

    pub fn x_elements(&self) -> impl Iterator<Item = XId> {
        (0..self.x_size()).map(XId)
    }

    pub fn x_label(&self, x: XId) -> &str {
        &self.x_elements[x.0]
    }

    pub fn x_labels(&self) -> &[String] {
        &self.x_elements
    }

    pub fn x_index_of(&self, label: &str) -> Option<XId> {
        self.x_elements.iter().position(|l| l == label).map(XId)
    }

    /// The action `x·s`.
    pub fn act(&self, x: XId, s: ElementId) -> XId {
        self.action[x.0][s.0]
    }

    /// Preimage under the column bijection `·s`.
    pub fn act_inverse(&self, x: XId, s: ElementId) -> XId {
        XId(self
            .action
            .iter()
            .position(|row| row[s.0] == x)
            .expect("columns are bijections"))
    }
}

fn validate(sh: &ShadowStructure) -> Result<(), ShadowError> {
    let report = verify_shadow_axioms(sh);
    if let Some(fail) = report.first_failure() {
        return Err(match fail.axiom {
            ShadowAxiom::ActionBijective => {
                ShadowError::NonBijectiveAction(fail.witness.unwrap().2)
            }
            axiom => ShadowError::ShadowAxiomViolation {
                axiom,
                witness: fail.witness.unwrap(),
            },
        });
    }
    Ok(())
}

/// Build a shadow from an explicit matrix of shadow-element labels.
pub fn build_shadow(
    host: FiniteSingquandle,
    x_elements: Vec<String>,
    matrix: Vec<Vec<String>>,
) -> Result<ShadowStructure, ShadowError> {
    let sh = assemble_shadow(host, x_elements, matrix)?;
    validate(&sh)?;
    Ok(sh)
}

fn assemble_shadow(
    host: FiniteSingquandle,
    x_elements: Vec<String>,
    matrix: Vec<Vec<String>>,
) -> Result<ShadowStructure, ShadowError> {
    let m = x_elements.len();
    let n = host.size();
    if x_elements.iter().collect::<BTreeSet<_>>().len() != m {
        return Err(ShadowError::DuplicateLabel);
    }
    if matrix.len() != m || matrix.iter().any(|row| row.len() != n) {
        return Err(ShadowError::MalformedMatrix { m, n });
    }
    let action: Vec<Vec<XId>> = matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|label| {
                    x_elements
                        .iter()
                        .position(|e| e == label)
                        .map(XId)
                        .ok_or_else(|| ShadowError::UnknownLabel(label.clone()))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ShadowStructure {
        host,
        x_elements,
        action,
    })
}

/// Build a shadow from a polynomial action formula. The host's elements
/// must be residues listed in the canonical order `1, …, n-1, 0`, and the
/// shadow set becomes `1, …, m-1, 0` over `Z_m`.
pub fn build_polynomial_action(
    host: FiniteSingquandle,
    spec: PolynomialActionSpec,
) -> Result<ShadowStructure, ShadowError> {
    let sh = assemble_polynomial_action(host, spec)?;
    validate(&sh)?;
    Ok(sh)
}

fn assemble_polynomial_action(
    host: FiniteSingquandle,
    spec: PolynomialActionSpec,
) -> Result<ShadowStructure, ShadowError> {
    let host_residues: Vec<u64> = host
        .labels()
        .iter()
        .map(|l| {
            l.parse::<u64>()
                .map_err(|_| ShadowError::NonResidueHost(l.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = spec.modulus as usize;
    let x_elements: Vec<String> = (0..m)
        .map(|i| (((i as u64) + 1) % spec.modulus).to_string())
        .collect();
    let x_index = |r: u64| -> XId { XId(((r + spec.modulus - 1) % spec.modulus) as usize) };
    let action: Vec<Vec<XId>> = (0..m)
        .map(|i| {
            let x = ((i as u64) + 1) % spec.modulus;
            host_residues
                .iter()
                .map(|&s| x_index(spec.eval(x, s)))
                .collect()
        })
        .collect();
    Ok(ShadowStructure {
        host,
        x_elements,
        action,
    })
}

/// The shadow a singquandle carries on itself, acting by `*`. For an
/// axiom-passing host the result always verifies; run
/// [`verify_shadow_axioms`] to check other hosts.
pub fn canonical_shadow(host: &FiniteSingquandle) -> ShadowStructure {
    let action: Vec<Vec<XId>> = host
        .star_table()
        .iter()
        .map(|row| row.iter().map(|e| XId(e.0)).collect())
        .collect();
    ShadowStructure {
        x_elements: host.labels().to_vec(),
        host: host.clone(),
        action,
    }
}

/// Check the bijectivity and both compatibility axioms, reporting the
/// smallest witness per failing axiom.
pub fn verify_shadow_axioms(sh: &ShadowStructure) -> ShadowReport {
    let host = &sh.host;
    let mut checks = Vec::new();

    let mut witness = None;
    'bij: for s in host.elements() {
        let mut seen: Vec<Option<usize>> = vec![None; sh.x_size()];
        for x in sh.x_elements() {
            let img = sh.act(x, s);
            if let Some(prev) = seen[img.0] {
                witness = Some((prev, x.0, s.0));
                break 'bij;
            }
            seen[img.0] = Some(x.0);
        }
    }
    checks.push(ShadowCheck {
        axiom: ShadowAxiom::ActionBijective,
        witness,
    });

    let mut star_witness = None;
    let mut sing_witness = None;
    'outer: for x in sh.x_elements() {
        for s1 in host.elements() {
            for s2 in host.elements() {
                let lhs = sh.act(sh.act(x, s1), s2);
                if star_witness.is_none() && lhs != sh.act(sh.act(x, s2), host.star(s1, s2)) {
                    star_witness = Some((x.0, s1.0, s2.0));
                }
                if sing_witness.is_none()
                    && lhs != sh.act(sh.act(x, host.r1(s1, s2)), host.r2(s1, s2))
                {
                    sing_witness = Some((x.0, s1.0, s2.0));
                }
                if star_witness.is_some() && sing_witness.is_some() {
                    break 'outer;
                }
            }
        }
    }
    checks.push(ShadowCheck {
        axiom: ShadowAxiom::StarCompatibility,
        witness: star_witness,
    });
    checks.push(ShadowCheck {
        axiom: ShadowAxiom::SingularCompatibility,
        witness: sing_witness,
    });

    ShadowReport { checks }
}

/// Smallest superset of `xs` stable under the action of `ss`. On a finite
/// set forward closure reaches inverses too, so this is the orbit union.
pub fn forward_closure(
    sh: &ShadowStructure,
    xs: &BTreeSet<XId>,
    ss: &BTreeSet<ElementId>,
) -> BTreeSet<XId> {
    let mut set = xs.clone();
    loop {
        let mut added = Vec::new();
        for &x in &set {
            for &s in ss {
                let y = sh.act(x, s);
                if !set.contains(&y) {
                    added.push(y);
                }
            }
        }
        if added.is_empty() {
            return set;
        }
        set.extend(added);
    }
}

/// Number of host elements fixing `x`, counted over `ss`.
fn fix_count(sh: &ShadowStructure, x: XId, ss: &BTreeSet<ElementId>) -> u32 {
    ss.iter().filter(|&&s| sh.act(x, s) == x).count() as u32
}

/// Sum of `t^{r(x)}` over a subset of the shadow set, with `r` counted over
/// a chosen subset of host columns. No closedness is assumed here; the
/// public polynomials add their own validation.
pub(crate) fn restricted_poly(
    sh: &ShadowStructure,
    xs: &BTreeSet<XId>,
    ss: &BTreeSet<ElementId>,
) -> MultiPoly {
    canonical_form(
        xs.iter()
            .map(|&x| (Monomial::var(6, fix_count(sh, x, ss)), 1)),
    )
}

/// The shadow polynomial `Σ_x t^{r(x)}` over the whole structure.
pub fn sp(sh: &ShadowStructure) -> MultiPoly {
    let all_s: BTreeSet<ElementId> = sh.host.elements().collect();
    let all_x: BTreeSet<XId> = sh.x_elements().collect();
    restricted_poly(sh, &all_x, &all_s)
}

/// The shadow polynomial of a subshadow, with `r` counted over the
/// subshadow's host part only.
pub fn subsp(sh: &ShadowStructure, sub: &Subshadow) -> Result<MultiPoly, ShadowError> {
    algebra::check_closed(&sh.host, &sub.s_subset)
        .map_err(|e| ShadowError::InvalidSubshadow(e.to_string()))?;
    for &x in &sub.x_subset {
        for &s in &sub.s_subset {
            let y = sh.act(x, s);
            if !sub.x_subset.contains(&y) {
                return Err(ShadowError::InvalidSubshadow(format!(
                    "{}·{} = {} escapes the shadow subset",
                    sh.x_label(x),
                    sh.host.label(s),
                    sh.x_label(y)
                )));
            }
        }
    }
    Ok(restricted_poly(sh, &sub.x_subset, &sub.s_subset))
}

/// All isomorphism pairs `(f, φ)` between two shadows: `f` a host
/// isomorphism and `φ` an equivariant bijection of the shadow sets.
pub fn shadow_isomorphisms(
    sh1: &ShadowStructure,
    sh2: &ShadowStructure,
) -> Vec<(Vec<ElementId>, Vec<XId>)> {
    let mut out = Vec::new();
    if sh1.x_size() != sh2.x_size() {
        return out;
    }
    let m = sh1.x_size();
    for f in algebra::isomorphisms(&sh1.host, &sh2.host) {
        // With f fixed, φ is determined on each orbit by the image of one
        // point: propagate φ(x·s) = φ(x)·f(s) to a fixpoint and backtrack
        // over the seed choices.
        fn assign(
            sh1: &ShadowStructure,
            sh2: &ShadowStructure,
            f: &[ElementId],
            phi: &mut Vec<Option<XId>>,
            used: &mut Vec<bool>,
            out: &mut Vec<(Vec<ElementId>, Vec<XId>)>,
        ) {
            let m = sh1.x_size();
            let next = match phi.iter().position(|p| p.is_none()) {
                Some(i) => XId(i),
                None => {
                    out.push((f.to_vec(), phi.iter().map(|p| p.unwrap()).collect()));
                    return;
                }
            };
            for v in 0..m {
                if used[v] {
                    continue;
                }
                let mut trail = Vec::new();
                let mut ok = true;
                let mut queue = vec![(next, XId(v))];
                while let Some((x, y)) = queue.pop() {
                    match phi[x.0] {
                        Some(existing) => {
                            if existing != y {
                                ok = false;
                                break;
                            }
                        }
                        None => {
                            if used[y.0] {
                                ok = false;
                                break;
                            }
                            phi[x.0] = Some(y);
                            used[y.0] = true;
                            trail.push((x, y));
                            for s in sh1.host().elements() {
                                queue.push((sh1.act(x, s), sh2.act(y, f[s.0])));
                            }
                        }
                    }
                }
                if ok {
                    assign(sh1, sh2, f, phi, used, out);
                }
                for (x, y) in trail {
                    phi[x.0] = None;
                    used[y.0] = false;
                }
            }
        }
        let mut phi: Vec<Option<XId>> = vec![None; m];
        let mut used = vec![false; m];
        assign(sh1, sh2, &f, &mut phi, &mut used, &mut out);
    }
    out
}

/// All polynomial action formulas of degree at most `max_degree` (≤ 2) that
/// give a valid shadow over the host, in lexicographic coefficient order.
pub fn search_polynomial_shadows(
    host: &FiniteSingquandle,
    m: u64,
    max_degree: u32,
) -> Vec<PolynomialActionSpec> {
    assert!(max_degree <= 2, "only degree <= 2 formulas are searched");
    let mut out = Vec::new();
    let mut coeffs = [0u64; 6];
    fn rec(
        host: &FiniteSingquandle,
        m: u64,
        max_degree: u32,
        pos: usize,
        coeffs: &mut [u64; 6],
        out: &mut Vec<PolynomialActionSpec>,
    ) {
        if pos == 6 {
            let spec = PolynomialActionSpec {
                modulus: m,
                coeffs: *coeffs,
            };
            if spec.degree() <= max_degree && build_polynomial_action(host.clone(), spec).is_ok() {
                out.push(spec);
            }
            return;
        }
        let quadratic = pos >= 3;
        let linear = pos == 1 || pos == 2;
        let range = if (quadratic && max_degree < 2) || (linear && max_degree < 1) {
            0..1
        } else {
            0..m
        };
        for v in range {
            coeffs[pos] = v;
            rec(host, m, max_degree, pos + 1, coeffs, out);
        }
    }
    rec(host, m, max_degree, 0, &mut coeffs, &mut out);
    out
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(untagged)]
enum HostRef {
    Name(String),
    Inline(serde_json::Value),
}

#[derive(Deserialize)]
struct ShadowFile {
    host: HostRef,
    #[serde(default)]
    x_elements: Option<Vec<String>>,
    #[serde(default)]
    matrix: Option<Vec<Vec<String>>>,
    #[serde(default)]
    polynomial_action: Option<PolynomialActionSpec>,
}

/// Load a shadow from its JSON file form. A string-valued `host` is handed
/// to `resolve`, which returns the referenced structure's JSON text.
pub fn from_json_str(
    text: &str,
    resolve: &dyn Fn(&str) -> Result<String, String>,
) -> Result<ShadowStructure, ShadowError> {
    let sh = load_unvalidated(text, resolve)?;
    validate(&sh)?;
    Ok(sh)
}

/// As [`from_json_str`] but without running the shadow axiom verifier, for
/// diagnosing files that fail it.
pub fn from_json_str_unvalidated(
    text: &str,
    resolve: &dyn Fn(&str) -> Result<String, String>,
) -> Result<ShadowStructure, ShadowError> {
    load_unvalidated(text, resolve)
}

fn load_unvalidated(
    text: &str,
    resolve: &dyn Fn(&str) -> Result<String, String>,
) -> Result<ShadowStructure, ShadowError> {
    let f: ShadowFile =
        serde_json::from_str(text).map_err(|e| ShadowError::MalformedFile(e.to_string()))?;
    let host = match f.host {
        HostRef::Name(name) => {
            let text = resolve(&name).map_err(ShadowError::MalformedFile)?;
            algebra::from_json_str(&text)?
        }
        HostRef::Inline(value) => algebra::from_json_str(&value.to_string())?,
    };
    match (f.matrix, f.polynomial_action) {
        (Some(matrix), None) => {
            let x_elements = f
                .x_elements
                .ok_or_else(|| ShadowError::MalformedFile("matrix form needs x_elements".into()))?;
            assemble_shadow(host, x_elements, matrix)
        }
        (None, Some(spec)) => assemble_polynomial_action(host, spec),
        _ => Err(ShadowError::MalformedFile(
            "expected exactly one of `matrix` or `polynomial_action`".into(),
        )),
    }
}
