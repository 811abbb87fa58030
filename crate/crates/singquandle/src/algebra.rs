//! Finite oriented singquandles presented as operation tables.
//!
//! A structure is an ordered element list with four `n`×`n` tables: the
//! quandle operation `*`, its inverse `*̄` (derived by inverting the right
//! translations), and the two singular-crossing maps `R1`, `R2`. Everything
//! downstream — closures, structure polynomials, isomorphism search, the
//! linear family over `Z_n` — lives here.

use std::collections::BTreeSet;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::polynomial::{canonical_form, Monomial, MultiPoly};

/// Index into a structure's declared element order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The axioms checked by the verifier, in checking order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// `x*x = x`.
    Idempotency,
    /// Every right translation `-*y` is a bijection.
    RightTranslationBijective,
    /// `(x*y)*̄y = x` and `(x*̄y)*y = x`.
    BarStarInverse,
    /// `(x*y)*z = (x*z)*(y*z)`.
    SelfDistributivity,
    /// The five compatibility conditions between `*` and `R1`, `R2`,
    /// numbered 1–5.
    SingularCompat(u8),
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Idempotency => write!(f, "idempotency"),
            Axiom::RightTranslationBijective => write!(f, "right-translation-bijective"),
            Axiom::BarStarInverse => write!(f, "bar-star-inverse"),
            Axiom::SelfDistributivity => write!(f, "self-distributivity"),
            Axiom::SingularCompat(i) => write!(f, "singular-compatibility-{i}"),
        }
    }
}

/// One verifier line: the axiom and, on failure, the lexicographically
/// smallest witness triple under the element order.
#[derive(Debug, Clone, Copy)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub witness: Option<[ElementId; 3]>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Outcome of checking every axiom.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("column {column} of `{op}` is not a bijection; *̄ is underivable")]
    NonBijectiveColumn { op: &'static str, column: usize },
    #[error("axiom {axiom} fails at witness ({}, {}, {})", witness[0], witness[1], witness[2])]
    AxiomViolation {
        axiom: Axiom,
        witness: [ElementId; 3],
    },
    #[error("supplied *̄ table disagrees with the derived inverse at ({x}, {y})")]
    BarStarMismatch { x: usize, y: usize },
    #[error("a = {a} is not invertible mod {modulus}")]
    NonInvertibleA { a: u64, modulus: u64 },
    #[error("subset is not closed: contains {x} and {y} but not {op}({x},{y}) = {result}")]
    NotClosed {
        op: &'static str,
        x: usize,
        y: usize,
        result: usize,
    },
    #[error("table `{op}` is not {n}x{n}")]
    MalformedTable { op: &'static str, n: usize },
    #[error("element labels are not distinct")]
    DuplicateLabel,
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("structure file is neither a table form nor a linear form: {0}")]
    MalformedFile(String),
}

/// Parameters of the linear family over `Z_n`: `x*y = ax+(1-a)y`,
/// `R1(x,y) = bx+cy`, `R2(x,y) = acx + (b+c(1-a))y`, with `a` invertible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub struct LinearSingquandleSpec {
    pub modulus: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

/// The six fixed-point counts attached to one element: `r^i` counts the
/// elements acting trivially on it and `c^i` the elements it acts trivially
/// on, for `*`, `R1`, `R2` in turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementProfile {
    pub r1c: usize,
    pub c1c: usize,
    pub r2c: usize,
    pub c2c: usize,
    pub r3c: usize,
    pub c3c: usize,
}

impl ElementProfile {
    pub fn as_array(&self) -> [usize; 6] {
        [self.r1c, self.c1c, self.r2c, self.c2c, self.r3c, self.c3c]
    }
}

/// A finite oriented singquandle as validated operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSingquandle {
    name: String,
    elements: Vec<String>,
    star: Vec<Vec<ElementId>>,
    bar_star: Vec<Vec<ElementId>>,
    r1: Vec<Vec<ElementId>>,
    r2: Vec<Vec<ElementId>>,
}

impl FiniteSingquandle {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.size()).map(ElementId)
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.elements[x.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, label: &str) -> Option<ElementId> {
        self.elements.iter().position(|l| l == label).map(ElementId)
    }

    pub fn star(&self, x: ElementId, y: ElementId) -> ElementId {
        self.star[x.0][y.0]
    }

    pub fn bar_star(&self, x: ElementId, y: ElementId) -> ElementId {
        self.bar_star[x.0][y.0]
    }

    pub fn r1(&self, x: ElementId, y: ElementId) -> ElementId {
        self.r1[x.0][y.0]
    }

    pub fn r2(&self, x: ElementId, y: ElementId) -> ElementId {
        self.r2[x.0][y.0]
    }

    pub fn star_table(&self) -> &[Vec<ElementId>] {
        &self.star
    }
}

fn check_shape(table: &[Vec<ElementId>], n: usize, op: &'static str) -> Result<(), AlgebraError> {
    if table.len() != n || table.iter().any(|row| row.len() != n) {
        return Err(AlgebraError::MalformedTable { op, n });
    }
    if table.iter().flatten().any(|e| e.0 >= n) {
        return Err(AlgebraError::MalformedTable { op, n });
    }
    Ok(())
}

/// Invert the right translations of `star`: `bar[x][y]` is the unique `z`
/// with `z*y = x`.
fn derive_bar_star(star: &[Vec<ElementId>]) -> Result<Vec<Vec<ElementId>>, AlgebraError> {
    let n = star.len();
    let mut bar = vec![vec![ElementId(0); n]; n];
    for y in 0..n {
        let mut seen = vec![false; n];
        for (z, row) in star.iter().enumerate() {
            let x = row[y].0;
            if seen[x] {
                return Err(AlgebraError::NonBijectiveColumn {
                    op: "star",
                    column: y,
                });
            }
            seen[x] = true;
            bar[x][y] = ElementId(z);
        }
    }
    Ok(bar)
}

/// Build a structure from tables, deriving `*̄` when absent and verifying
/// every axiom. A supplied `*̄` is cross-checked against the derived one.
pub fn build_from_tables(
    name: impl Into<String>,
    elements: Vec<String>,
    star: Vec<Vec<ElementId>>,
    r1: Vec<Vec<ElementId>>,
    r2: Vec<Vec<ElementId>>,
    bar_star: Option<Vec<Vec<ElementId>>>,
) -> Result<FiniteSingquandle, AlgebraError> {
    let n = elements.len();
    if elements.iter().collect::<BTreeSet<_>>().len() != n {
        return Err(AlgebraError::DuplicateLabel);
    }
    check_shape(&star, n, "star")?;
    check_shape(&r1, n, "r1")?;
    check_shape(&r2, n, "r2")?;
    let derived = derive_bar_star(&star)?;
    if let Some(given) = bar_star {
        check_shape(&given, n, "bar_star")?;
        for x in 0..n {
            for y in 0..n {
                if given[x][y] != derived[x][y] {
                    return Err(AlgebraError::BarStarMismatch { x, y });
                }
            }
        }
    }
    let q = FiniteSingquandle {
        name: name.into(),
        elements,
        star,
        bar_star: derived,
        r1,
        r2,
    };
    let report = verify_axioms(&q);
    if let Some(fail) = report.first_failure() {
        return Err(AlgebraError::AxiomViolation {
            axiom: fail.axiom,
            witness: fail.witness.unwrap(),
        });
    }
    Ok(q)
}

/// Unvalidated constructor for the verifier's own tests.
#[cfg(test)]
pub(crate) fn from_tables_unchecked(
    elements: Vec<String>,
    star: Vec<Vec<ElementId>>,
    r1: Vec<Vec<ElementId>>,
    r2: Vec<Vec<ElementId>>,
) -> FiniteSingquandle {
    let bar_star = derive_bar_star(&star).unwrap_or_else(|_| star.clone());
    FiniteSingquandle {
        name: "unchecked".into(),
        elements,
        star,
        bar_star,
        r1,
        r2,
    }
}

fn modinv(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(n as i128) as u64)
}

/// Build a member of the linear family. Elements are labelled
/// `1, 2, …, n-1, 0` in that order.
///
/// Construction only requires `a` invertible; run [`verify_axioms`] to learn
/// whether a given parameter triple actually satisfies the compatibility
/// axioms (exactly the triples with `(a-1)(b+c-1) ≡ 0 mod n` do).
pub fn build_linear(spec: LinearSingquandleSpec) -> Result<FiniteSingquandle, AlgebraError> {
    let n = spec.modulus;
    assert!(n >= 1, "modulus must be positive");
    let a_inv = modinv(spec.a, n).ok_or(AlgebraError::NonInvertibleA {
        a: spec.a,
        modulus: n,
    })?;
    let nn = n as usize;
    let residue = |i: usize| -> u64 { ((i as u64) + 1) % n };
    let index = |r: u64| -> ElementId { ElementId(((r + n - 1) % n) as usize) };
    let elements: Vec<String> = (0..nn).map(|i| residue(i).to_string()).collect();
    let lin = |p: u64, q: u64, x: u64, y: u64| -> u64 { (p * x + q * y) % n };
    let mut star = vec![vec![ElementId(0); nn]; nn];
    let mut bar = vec![vec![ElementId(0); nn]; nn];
    let mut r1 = vec![vec![ElementId(0); nn]; nn];
    let mut r2 = vec![vec![ElementId(0); nn]; nn];
    let one_minus_a = (n + 1 - spec.a % n) % n;
    let one_minus_a_inv = (n + 1 - a_inv) % n;
    let r2_y = (spec.b + spec.c * one_minus_a) % n;
    let r2_x = (spec.a * spec.c) % n;
    for i in 0..nn {
        for j in 0..nn {
            let (x, y) = (residue(i), residue(j));
            star[i][j] = index(lin(spec.a % n, one_minus_a, x, y));
            bar[i][j] = index(lin(a_inv, one_minus_a_inv, x, y));
            r1[i][j] = index(lin(spec.b % n, spec.c % n, x, y));
            r2[i][j] = index(lin(r2_x, r2_y, x, y));
        }
    }
    Ok(FiniteSingquandle {
        name: format!("Z{}(a={},b={},c={})", n, spec.a % n, spec.b % n, spec.c % n),
        elements,
        star,
        bar_star: bar,
        r1,
        r2,
    })
}

/// Check every axiom and report pass/fail per axiom with the smallest
/// failing witness. For the bijectivity check the witness is `(x1, x2, y)`
/// with `x1*y = x2*y`; for the bar-star check it is `(x, y, y)`.
pub fn verify_axioms(q: &FiniteSingquandle) -> AxiomReport {
    verify_tables(q.size(), &q.star, Some(&q.bar_star), &q.r1, &q.r2)
}

/// Axiom checks on raw tables. Without a `*̄` table only the star-side
/// axioms and the two bar-free compatibility conditions can be evaluated;
/// the rest are omitted from the report.
fn verify_tables(
    n: usize,
    star: &[Vec<ElementId>],
    bar_star: Option<&[Vec<ElementId>]>,
    r1: &[Vec<ElementId>],
    r2: &[Vec<ElementId>],
) -> AxiomReport {
    struct Tables<'a> {
        star: &'a [Vec<ElementId>],
        bar_star: Option<&'a [Vec<ElementId>]>,
        r1: &'a [Vec<ElementId>],
        r2: &'a [Vec<ElementId>],
    }
    impl Tables<'_> {
        fn star(&self, x: ElementId, y: ElementId) -> ElementId {
            self.star[x.0][y.0]
        }
        fn bar_star(&self, x: ElementId, y: ElementId) -> ElementId {
            self.bar_star.unwrap()[x.0][y.0]
        }
        fn r1(&self, x: ElementId, y: ElementId) -> ElementId {
            self.r1[x.0][y.0]
        }
        fn r2(&self, x: ElementId, y: ElementId) -> ElementId {
            self.r2[x.0][y.0]
        }
    }
    let q = Tables {
        star,
        bar_star,
        r1,
        r2,
    };
    let has_bar = bar_star.is_some();
    let ids: Vec<ElementId> = (0..n).map(ElementId).collect();
    let mut checks = Vec::new();

    let mut witness = None;
    for &x in &ids {
        if q.star(x, x) != x {
            witness = Some([x, x, x]);
            break;
        }
    }
    checks.push(AxiomCheck {
        axiom: Axiom::Idempotency,
        witness,
    });

    let mut witness = None;
    'bij: for &y in &ids {
        let mut seen: Vec<Option<ElementId>> = vec![None; n];
        for &x in &ids {
            let img = q.star(x, y);
            if let Some(prev) = seen[img.0] {
                witness = Some([prev, x, y]);
                break 'bij;
            }
            seen[img.0] = Some(x);
        }
    }
    checks.push(AxiomCheck {
        axiom: Axiom::RightTranslationBijective,
        witness,
    });

    if has_bar {
        let mut witness = None;
        'bar: for &x in &ids {
            for &y in &ids {
                if q.bar_star(q.star(x, y), y) != x || q.star(q.bar_star(x, y), y) != x {
                    witness = Some([x, y, y]);
                    break 'bar;
                }
            }
        }
        checks.push(AxiomCheck {
            axiom: Axiom::BarStarInverse,
            witness,
        });
    }

    let mut witness = None;
    'sd: for &x in &ids {
        for &y in &ids {
            for &z in &ids {
                if q.star(q.star(x, y), z) != q.star(q.star(x, z), q.star(y, z)) {
                    witness = Some([x, y, z]);
                    break 'sd;
                }
            }
        }
    }
    checks.push(AxiomCheck {
        axiom: Axiom::SelfDistributivity,
        witness,
    });

    // The five compatibility conditions between the quandle operation and
    // the singular maps. Conditions 1-3 need `*̄`.
    type Cond<'a> = &'a dyn Fn(ElementId, ElementId, ElementId) -> bool;
    let conds: [(Cond, u8, bool); 5] = [
        (
            &|a, b, c| q.star(q.r1(q.bar_star(a, b), c), b) == q.r1(a, q.star(c, b)),
            1,
            true,
        ),
        (
            &|a, b, c| q.r2(q.bar_star(a, b), c) == q.bar_star(q.r2(a, q.star(c, b)), b),
            2,
            true,
        ),
        (
            &|a, b, c| q.star(q.bar_star(b, q.r1(a, c)), a) == q.bar_star(q.star(b, q.r2(a, c)), c),
            3,
            true,
        ),
        (&|a, b, _| q.r2(a, b) == q.r1(b, q.star(a, b)), 4, false),
        (
            &|a, b, _| q.star(q.r1(a, b), q.r2(a, b)) == q.r2(b, q.star(a, b)),
            5,
            false,
        ),
    ];
    for (cond, tag, needs_bar) in conds {
        if needs_bar && !has_bar {
            continue;
        }
        let mut witness = None;
        'outer: for &a in &ids {
            for &b in &ids {
                for &c in &ids {
                    if !cond(a, b, c) {
                        witness = Some([a, b, c]);
                        break 'outer;
                    }
                }
            }
        }
        checks.push(AxiomCheck {
            axiom: Axiom::SingularCompat(tag),
            witness,
        });
    }

    AxiomReport { checks }
}

/// Smallest superset of `seed` closed under `*`, `*̄`, `R1`, `R2`.
pub fn closure(q: &FiniteSingquandle, seed: &BTreeSet<ElementId>) -> BTreeSet<ElementId> {
    let mut set = seed.clone();
    loop {
        let mut added = Vec::new();
        for &x in &set {
            for &y in &set {
                for z in [q.star(x, y), q.bar_star(x, y), q.r1(x, y), q.r2(x, y)] {
                    if !set.contains(&z) {
                        added.push(z);
                    }
                }
            }
        }
        if added.is_empty() {
            return set;
        }
        set.extend(added);
    }
}

/// Check that `subset` is closed, reporting the first escaping product.
pub fn check_closed(
    q: &FiniteSingquandle,
    subset: &BTreeSet<ElementId>,
) -> Result<(), AlgebraError> {
    for &x in subset {
        for &y in subset {
            let ops: [(&'static str, ElementId); 4] = [
                ("star", q.star(x, y)),
                ("bar_star", q.bar_star(x, y)),
                ("r1", q.r1(x, y)),
                ("r2", q.r2(x, y)),
            ];
            for (op, z) in ops {
                if !subset.contains(&z) {
                    return Err(AlgebraError::NotClosed {
                        op,
                        x: x.0,
                        y: y.0,
                        result: z.0,
                    });
                }
            }
        }
    }
    Ok(())
}

/// The six fixed-point counts for every element, in element order. Counts
/// always range over the whole ambient structure.
pub fn profiles(q: &FiniteSingquandle) -> Vec<ElementProfile> {
    q.elements()
        .map(|x| {
            let mut p = ElementProfile {
                r1c: 0,
                c1c: 0,
                r2c: 0,
                c2c: 0,
                r3c: 0,
                c3c: 0,
            };
            for y in q.elements() {
                if q.star(x, y) == x {
                    p.r1c += 1;
                }
                if q.star(y, x) == y {
                    p.c1c += 1;
                }
                if q.r1(x, y) == x {
                    p.r2c += 1;
                }
                if q.r1(y, x) == y {
                    p.c2c += 1;
                }
                if q.r2(x, y) == x {
                    p.r3c += 1;
                }
                if q.r2(y, x) == y {
                    p.c3c += 1;
                }
            }
            p
        })
        .collect()
}

fn profile_monomial(p: &ElementProfile) -> Monomial {
    let a = p.as_array();
    Monomial::profile([
        a[0] as u32,
        a[1] as u32,
        a[2] as u32,
        a[3] as u32,
        a[4] as u32,
        a[5] as u32,
    ])
}

/// The structure polynomial: one profile monomial per element, summed.
pub fn sqp(q: &FiniteSingquandle) -> MultiPoly {
    let ps = profiles(q);
    canonical_form(ps.iter().map(|p| (profile_monomial(p), 1)))
}

/// The structure polynomial restricted to a closed subset. The fixed-point
/// counts still range over the whole structure.
pub fn ssqp(
    q: &FiniteSingquandle,
    subset: &BTreeSet<ElementId>,
) -> Result<MultiPoly, AlgebraError> {
    check_closed(q, subset)?;
    let ps = profiles(q);
    Ok(canonical_form(
        subset.iter().map(|&x| (profile_monomial(&ps[x.0]), 1)),
    ))
}

/// All bijections `q1 → q2` preserving `*`, `R1`, `R2`, as image vectors in
/// lexicographic order. Preservation of `*̄` follows. The search assigns
/// images in element order, pruned by per-element profiles.
pub fn isomorphisms(q1: &FiniteSingquandle, q2: &FiniteSingquandle) -> Vec<Vec<ElementId>> {
    let n = q1.size();
    let found = Vec::new();
    if q2.size() != n {
        return found;
    }
    let p1 = profiles(q1);
    let p2 = profiles(q2);
    {
        let mut m1 = p1.clone();
        let mut m2 = p2.clone();
        m1.sort();
        m2.sort();
        if m1 != m2 {
            return found;
        }
    }

    struct Search<'a> {
        q1: &'a FiniteSingquandle,
        q2: &'a FiniteSingquandle,
        p1: Vec<ElementProfile>,
        p2: Vec<ElementProfile>,
        image: Vec<Option<ElementId>>,
        used: Vec<bool>,
        found: Vec<Vec<ElementId>>,
    }

    impl Search<'_> {
        // Consistency of the partial map after assigning f(k): whenever all
        // of x, y and op(x,y) have images, the images must satisfy the op;
        // when op(x,y) is still unassigned its eventual image is pinned, so
        // the value must not already be taken by a different preimage.
        fn consistent(&self, k: usize) -> bool {
            type Op<'b> = &'b dyn Fn(ElementId, ElementId) -> ElementId;
            let (q1, q2) = (self.q1, self.q2);
            let ops: [(Op, Op); 3] = [
                (&|x, y| q1.star(x, y), &|x, y| q2.star(x, y)),
                (&|x, y| q1.r1(x, y), &|x, y| q2.r1(x, y)),
                (&|x, y| q1.r2(x, y), &|x, y| q2.r2(x, y)),
            ];
            for (op1, op2) in ops {
                for i in 0..=k {
                    for (x, y) in [(i, k), (k, i)] {
                        let w = op1(ElementId(x), ElementId(y));
                        let v = op2(self.image[x].unwrap(), self.image[y].unwrap());
                        match self.image[w.0] {
                            Some(fw) => {
                                if fw != v {
                                    return false;
                                }
                            }
                            None => {
                                if self.used[v.0] {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
            true
        }

        fn run(&mut self, k: usize) {
            let n = self.q1.size();
            if k == n {
                self.found
                    .push(self.image.iter().map(|i| i.unwrap()).collect());
                return;
            }
            for v in 0..n {
                if self.used[v] || self.p1[k] != self.p2[v] {
                    continue;
                }
                self.image[k] = Some(ElementId(v));
                self.used[v] = true;
                if self.consistent(k) {
                    self.run(k + 1);
                }
                self.image[k] = None;
                self.used[v] = false;
            }
        }
    }

    let mut search = Search {
        q1,
        q2,
        p1,
        p2,
        image: vec![None; n],
        used: vec![false; n],
        found,
    };
    search.run(0);
    search.found
}

/// All linear parameter triples mod `n` with invertible `a` whose tables
/// pass the axiom verifier, in lexicographic order.
pub fn enumerate_linear(n: u64) -> Vec<LinearSingquandleSpec> {
    let mut out = Vec::new();
    for a in 0..n.max(1) {
        if modinv(a, n).is_none() {
            continue;
        }
        for b in 0..n.max(1) {
            for c in 0..n.max(1) {
                let spec = LinearSingquandleSpec {
                    modulus: n,
                    a,
                    b,
                    c,
                };
                if let Ok(q) = build_linear(spec) {
                    if verify_axioms(&q).all_pass() {
                        out.push(spec);
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct TableFile {
    name: String,
    elements: Vec<String>,
    star: Vec<Vec<String>>,
    r1: Vec<Vec<String>>,
    r2: Vec<Vec<String>>,
    #[serde(default)]
    bar_star: Option<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
struct LinearFile {
    #[serde(default)]
    name: Option<String>,
    linear: LinearSingquandleSpec,
}

fn labels_to_ids(
    elements: &[String],
    table: &[Vec<String>],
) -> Result<Vec<Vec<ElementId>>, AlgebraError> {
    table
        .iter()
        .map(|row| {
            row.iter()
                .map(|label| {
                    elements
                        .iter()
                        .position(|e| e == label)
                        .map(ElementId)
                        .ok_or_else(|| AlgebraError::UnknownLabel(label.clone()))
                })
                .collect()
        })
        .collect()
}

/// A structure file loaded for diagnosis: the axiom report is produced
/// even when the tables violate axioms and could not be used to build a
/// [`FiniteSingquandle`].
pub struct VerifiedLoad {
    pub name: String,
    pub elements: Vec<String>,
    pub report: AxiomReport,
}

/// Parse a structure file and run the verifier on whatever well-formed
/// tables it contains. Only malformed files (bad JSON, wrong shapes,
/// unknown labels) are errors; axiom violations land in the report. When
/// the star columns are not bijections no `*̄` exists, so the bar-dependent
/// checks are omitted and the bijectivity line carries the failure.
pub fn verify_from_json_str(text: &str) -> Result<VerifiedLoad, AlgebraError> {
    if let Ok(f) = serde_json::from_str::<LinearFile>(text) {
        let q = build_linear(f.linear)?;
        return Ok(VerifiedLoad {
            name: f.name.unwrap_or_else(|| q.name().to_string()),
            elements: q.labels().to_vec(),
            report: verify_axioms(&q),
        });
    }
    let f = serde_json::from_str::<TableFile>(text)
        .map_err(|e| AlgebraError::MalformedFile(e.to_string()))?;
    let n = f.elements.len();
    if f.elements.iter().collect::<BTreeSet<_>>().len() != n {
        return Err(AlgebraError::DuplicateLabel);
    }
    let star = labels_to_ids(&f.elements, &f.star)?;
    let r1 = labels_to_ids(&f.elements, &f.r1)?;
    let r2 = labels_to_ids(&f.elements, &f.r2)?;
    check_shape(&star, n, "star")?;
    check_shape(&r1, n, "r1")?;
    check_shape(&r2, n, "r2")?;
    let supplied = f
        .bar_star
        .as_ref()
        .map(|t| labels_to_ids(&f.elements, t))
        .transpose()?;
    if let Some(b) = &supplied {
        check_shape(b, n, "bar_star")?;
    }
    let bar = supplied.or_else(|| derive_bar_star(&star).ok());
    let report = verify_tables(n, &star, bar.as_deref(), &r1, &r2);
    Ok(VerifiedLoad {
        name: f.name,
        elements: f.elements,
        report,
    })
}

/// Load a structure from its JSON file form: either explicit tables with
/// entries given as element labels, or a `{"linear": …}` parameter object.
pub fn from_json_str(text: &str) -> Result<FiniteSingquandle, AlgebraError> {
    if let Ok(f) = serde_json::from_str::<LinearFile>(text) {
        let mut q = build_linear(f.linear)?;
        if let Some(name) = f.name {
            q.name = name;
        }
        return Ok(q);
    }
    match serde_json::from_str::<TableFile>(text) {
        Ok(f) => {
            let star = labels_to_ids(&f.elements, &f.star)?;
            let r1 = labels_to_ids(&f.elements, &f.r1)?;
            let r2 = labels_to_ids(&f.elements, &f.r2)?;
            let bar = f
                .bar_star
                .as_ref()
                .map(|t| labels_to_ids(&f.elements, t))
                .transpose()?;
            build_from_tables(f.name, f.elements, star, r1, r2, bar)
        }
        Err(e) => Err(AlgebraError::MalformedFile(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::render;

    fn trivial(n: usize) -> FiniteSingquandle {
        let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let star: Vec<Vec<ElementId>> = (0..n).map(|x| vec![ElementId(x); n]).collect();
        let r1 = star.clone();
        let r2: Vec<Vec<ElementId>> = (0..n).map(|_| (0..n).map(ElementId).collect()).collect();
        build_from_tables("trivial", elements, star, r1, r2, None).unwrap()
    }

    fn z4_example() -> FiniteSingquandle {
        build_linear(LinearSingquandleSpec {
            modulus: 4,
            a: 3,
            b: 2,
            c: 3,
        })
        .unwrap()
    }

    fn z8_example() -> FiniteSingquandle {
        build_linear(LinearSingquandleSpec {
            modulus: 8,
            a: 3,
            b: 7,
            c: 6,
        })
        .unwrap()
    }

    #[test]
    fn trivial_tables_are_valid() {
        let q = trivial(3);
        assert!(verify_axioms(&q).all_pass());
    }

    #[test]
    fn linear_z4_tables_match_closed_forms() {
        // x*y = 3x-2y, R1 = 2x+3y, R2 = x over Z4 with order [1,2,3,0].
        let q = z4_example();
        assert_eq!(q.labels(), ["1", "2", "3", "0"]);
        let val = |id: ElementId| q.label(id).parse::<i64>().unwrap();
        for x in q.elements() {
            for y in q.elements() {
                let (vx, vy) = (val(x), val(y));
                assert_eq!(val(q.star(x, y)), (3 * vx - 2 * vy).rem_euclid(4));
                assert_eq!(val(q.r1(x, y)), (2 * vx + 3 * vy).rem_euclid(4));
                assert_eq!(val(q.r2(x, y)), vx);
            }
        }
    }

    #[test]
    fn linear_z8_r2_closed_form() {
        let q = z8_example();
        let val = |id: ElementId| q.label(id).parse::<i64>().unwrap();
        for x in q.elements() {
            for y in q.elements() {
                assert_eq!(val(q.r2(x, y)), (2 * val(x) + 3 * val(y)).rem_euclid(8));
            }
        }
    }

    #[test]
    fn linear_z10_bar_star_closed_form() {
        let q = build_linear(LinearSingquandleSpec {
            modulus: 10,
            a: 3,
            b: 4,
            c: 6,
        })
        .unwrap();
        let val = |id: ElementId| q.label(id).parse::<i64>().unwrap();
        for x in q.elements() {
            for y in q.elements() {
                assert_eq!(
                    val(q.bar_star(x, y)),
                    (7 * val(x) - 6 * val(y)).rem_euclid(10)
                );
            }
        }
    }

    #[test]
    fn non_invertible_a_rejected() {
        let err = build_linear(LinearSingquandleSpec {
            modulus: 4,
            a: 2,
            b: 0,
            c: 0,
        })
        .unwrap_err();
        assert_eq!(err, AlgebraError::NonInvertibleA { a: 2, modulus: 4 });
    }

    #[test]
    fn corrupted_star_is_rejected() {
        let q = z4_example();
        let mut star: Vec<Vec<ElementId>> = q.star_table().to_vec();
        star[0][1] = ElementId(0); // label "1"
        let err = build_from_tables(
            "broken",
            q.labels().to_vec(),
            star,
            (0..4)
                .map(|x| (0..4).map(|y| q.r1(ElementId(x), ElementId(y))).collect())
                .collect(),
            (0..4)
                .map(|x| (0..4).map(|y| q.r2(ElementId(x), ElementId(y))).collect())
                .collect(),
            None,
        )
        .unwrap_err();
        match err {
            AlgebraError::NonBijectiveColumn {
                op: "star",
                column: 1,
            } => {}
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn mutated_r1_reports_witnessed_failure() {
        let q = z8_example();
        let n = q.size();
        let table = |f: &dyn Fn(ElementId, ElementId) -> ElementId| -> Vec<Vec<ElementId>> {
            (0..n)
                .map(|x| (0..n).map(|y| f(ElementId(x), ElementId(y))).collect())
                .collect()
        };
        let mut r1 = table(&|x, y| q.r1(x, y));
        r1[0][0] = ElementId(1);
        let broken = from_tables_unchecked(
            q.labels().to_vec(),
            table(&|x, y| q.star(x, y)),
            r1,
            table(&|x, y| q.r2(x, y)),
        );
        let report = verify_axioms(&broken);
        assert!(!report.all_pass());
        let fail = report.first_failure().unwrap();
        assert!(matches!(fail.axiom, Axiom::SingularCompat(_)));
        assert!(fail.witness.is_some());
    }

    #[test]
    fn linear_family_passes_iff_obstruction_vanishes() {
        // The compatibility axioms hold for a linear triple exactly when
        // (a-1)(b+c-1) ≡ 0 mod n; enumerate_linear returns exactly those.
        for n in 1..=10u64 {
            let passing: Vec<_> = enumerate_linear(n)
                .into_iter()
                .map(|s| (s.a, s.b, s.c))
                .collect();
            let mut expected = Vec::new();
            for a in 0..n.max(1) {
                if modinv(a, n).is_none() {
                    continue;
                }
                for b in 0..n.max(1) {
                    for c in 0..n.max(1) {
                        if n == 1 || (a + n - 1) % n * ((b + c + n - 1) % n) % n == 0 {
                            expected.push((a, b, c));
                        }
                    }
                }
            }
            assert_eq!(passing, expected, "n = {n}");
        }
    }

    #[test]
    fn printed_structures_with_nonzero_obstruction_fail_verification() {
        // Constructible, colorable, but not axiom-conforming.
        for (n, a, b, c) in [(10u64, 3u64, 4u64, 6u64), (6, 5, 2, 1), (12, 5, 5, 10)] {
            let q = build_linear(LinearSingquandleSpec {
                modulus: n,
                a,
                b,
                c,
            })
            .unwrap();
            let report = verify_axioms(&q);
            assert!(!report.all_pass(), "Z{n}(a={a},b={b},c={c})");
            assert!(matches!(
                report.first_failure().unwrap().axiom,
                Axiom::SingularCompat(_)
            ));
        }
    }

    #[test]
    fn enumerate_linear_edge_cases() {
        assert_eq!(
            enumerate_linear(1),
            vec![LinearSingquandleSpec {
                modulus: 1,
                a: 0,
                b: 0,
                c: 0
            }]
        );
        let n4 = enumerate_linear(4);
        assert!(n4.contains(&LinearSingquandleSpec {
            modulus: 4,
            a: 3,
            b: 2,
            c: 3
        }));
        let n8 = enumerate_linear(8);
        assert!(n8.contains(&LinearSingquandleSpec {
            modulus: 8,
            a: 3,
            b: 7,
            c: 6
        }));
        assert!(n8.contains(&LinearSingquandleSpec {
            modulus: 8,
            a: 5,
            b: 3,
            c: 4
        }));
    }

    #[test]
    fn closure_examples() {
        let q = z8_example();
        let id = |label: &str| q.index_of(label).unwrap();
        let seed: BTreeSet<_> = [id("2")].into();
        assert_eq!(closure(&q, &seed), [id("2")].into());
        let seed: BTreeSet<_> = [id("1"), id("7")].into();
        assert_eq!(
            closure(&q, &seed),
            [id("1"), id("3"), id("5"), id("7")].into()
        );
        let all: BTreeSet<_> = q.elements().collect();
        assert_eq!(closure(&q, &all), all);
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let q = z8_example();
        for x in q.elements() {
            for y in q.elements() {
                let a: BTreeSet<_> = [x].into();
                let b: BTreeSet<_> = [x, y].into();
                let ca = closure(&q, &a);
                let cb = closure(&q, &b);
                assert_eq!(closure(&q, &ca), ca);
                assert!(ca.is_subset(&cb));
            }
        }
    }

    #[test]
    fn z4_profiles_are_uniform() {
        let q = z4_example();
        for p in profiles(&q) {
            assert_eq!(p.as_array(), [2, 2, 1, 1, 4, 4]);
        }
    }

    #[test]
    fn trivial_profiles() {
        let q = trivial(3);
        for p in profiles(&q) {
            assert_eq!(p.as_array(), [3, 3, 3, 3, 1, 1]);
        }
    }

    #[test]
    fn sqp_values() {
        assert_eq!(render(&sqp(&z4_example())), "4*s1^2*t1^2*s2*t2*s3^4*t3^4");
        assert_eq!(render(&sqp(&z8_example())), "8*s1^2*t1^2*s2^2*t2^2*s3*t3");
        assert_eq!(render(&sqp(&trivial(1))), "s1*t1*s2*t2*s3*t3");
    }

    #[test]
    fn ssqp_values() {
        let q = z4_example();
        let one: BTreeSet<_> = [q.index_of("1").unwrap()].into();
        assert_eq!(
            render(&ssqp(&q, &one).unwrap()),
            "s1^2*t1^2*s2*t2*s3^4*t3^4"
        );
        let pair = closure(
            &q,
            &[q.index_of("1").unwrap(), q.index_of("3").unwrap()].into(),
        );
        assert_eq!(pair.len(), 2);
        assert_eq!(
            render(&ssqp(&q, &pair).unwrap()),
            "2*s1^2*t1^2*s2*t2*s3^4*t3^4"
        );
        let all: BTreeSet<_> = q.elements().collect();
        assert_eq!(ssqp(&q, &all).unwrap(), sqp(&q));
        let open: BTreeSet<_> = [q.index_of("1").unwrap(), q.index_of("2").unwrap()].into();
        assert!(matches!(
            ssqp(&q, &open),
            Err(AlgebraError::NotClosed { .. })
        ));
    }

    #[test]
    fn bar_star_round_trip() {
        for q in [z4_example(), z8_example(), trivial(4)] {
            for x in q.elements() {
                for y in q.elements() {
                    assert_eq!(q.bar_star(q.star(x, y), y), x);
                    assert_eq!(q.star(q.bar_star(x, y), y), x);
                }
            }
        }
    }

    #[test]
    fn isomorphisms_identity_and_relabeling() {
        let q = z4_example();
        let isos = isomorphisms(&q, &q);
        let identity: Vec<ElementId> = q.elements().collect();
        assert!(isos.contains(&identity));
        for f in &isos {
            let ps = profiles(&q);
            for x in q.elements() {
                assert_eq!(ps[x.0], ps[f[x.0].0]);
            }
        }

        // Relabel by the permutation swapping the first two elements of a
        // structure where that is an automorphism candidate, then check the
        // search recovers it.
        let perm = [2usize, 3, 0, 1]; // x -> x+2 on residues [1,2,3,0]
        let n = q.size();
        let relabel = |t: &dyn Fn(ElementId, ElementId) -> ElementId| -> Vec<Vec<ElementId>> {
            let mut out = vec![vec![ElementId(0); n]; n];
            for x in 0..n {
                for y in 0..n {
                    out[perm[x]][perm[y]] = ElementId(perm[t(ElementId(x), ElementId(y)).0]);
                }
            }
            out
        };
        let q2 = build_from_tables(
            "relabeled",
            q.labels().to_vec(),
            relabel(&|x, y| q.star(x, y)),
            relabel(&|x, y| q.r1(x, y)),
            relabel(&|x, y| q.r2(x, y)),
            None,
        )
        .unwrap();
        let isos = isomorphisms(&q, &q2);
        assert!(!isos.is_empty());
        let as_perm: Vec<ElementId> = perm.iter().map(|&i| ElementId(i)).collect();
        assert!(isos.contains(&as_perm));
    }

    #[test]
    fn non_isomorphic_structures_give_empty() {
        let q = z4_example();
        let t4 = trivial(4);
        assert!(isomorphisms(&q, &t4).is_empty());
    }

    #[test]
    fn json_forms_load() {
        let q =
            from_json_str(r#"{"name": "z4", "linear": {"modulus": 4, "a": 3, "b": 2, "c": 3}}"#)
                .unwrap();
        assert_eq!(q.name(), "z4");
        assert_eq!(q.size(), 4);

        let tables = r#"{
            "name": "trivial2",
            "elements": ["a", "b"],
            "star": [["a", "a"], ["b", "b"]],
            "r1": [["a", "a"], ["b", "b"]],
            "r2": [["a", "b"], ["a", "b"]]
        }"#;
        let q = from_json_str(tables).unwrap();
        assert_eq!(q.size(), 2);
        assert!(verify_axioms(&q).all_pass());

        assert!(from_json_str("{\"bogus\": 1}").is_err());
    }
}
