//! Singular link diagrams as combinatorial data: rigid 4-valent vertices
//! with role-tagged ends and a counterclockwise rotation at each vertex.
//!
//! Arcs in input files follow the usual drawing convention: an arc runs from
//! an undercrossing exit to the next undercrossing entry and may pass over
//! classical crossings along the way (the merged `"over"` field). The parser
//! splits every such arc into semi-arcs so that each vertex end carries its
//! own slot; a diagram is closed when every semi-arc leaves exactly one slot
//! and enters exactly one.
//!
//! From the rotation system the planar faces are traced by corner walking,
//! which is what region (shadow) colorings propagate over.

use std::collections::{BTreeMap, VecDeque};

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{ElementId, FiniteSingquandle};
use crate::shadow::{ShadowStructure, XId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Positive,
    Negative,
    Singular,
}

impl VertexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexKind::Positive => "positive",
            VertexKind::Negative => "negative",
            VertexKind::Singular => "singular",
        }
    }
}

/// Semi-arc roles at a vertex. Classical crossings use the under/over set,
/// singular vertices the left/right set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    UnderIn,
    OverIn,
    OverOut,
    UnderOut,
    LeftIn,
    RightIn,
    LeftOut,
    RightOut,
}

impl Role {
    pub fn is_in(self) -> bool {
        matches!(
            self,
            Role::UnderIn | Role::OverIn | Role::LeftIn | Role::RightIn
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Role::UnderIn => "under_in",
            Role::OverIn => "over_in",
            Role::OverOut => "over_out",
            Role::UnderOut => "under_out",
            Role::LeftIn => "left_in",
            Role::RightIn => "right_in",
            Role::LeftOut => "left_out",
            Role::RightOut => "right_out",
        }
    }

    fn from_str(s: &str) -> Option<Role> {
        Some(match s {
            "under_in" => Role::UnderIn,
            "over_in" => Role::OverIn,
            "over_out" => Role::OverOut,
            "under_out" => Role::UnderOut,
            "left_in" => Role::LeftIn,
            "right_in" => Role::RightIn,
            "left_out" => Role::LeftOut,
            "right_out" => Role::RightOut,
            _ => return None,
        })
    }
}

/// Counterclockwise slot order used when a vertex does not override it.
/// These follow the planar pictures: strands run top to bottom, inputs at
/// the top, and the two in-slots are adjacent.
pub fn default_ccw(kind: VertexKind) -> [Role; 4] {
    match kind {
        VertexKind::Positive => [Role::UnderIn, Role::OverOut, Role::UnderOut, Role::OverIn],
        VertexKind::Negative => [Role::OverIn, Role::UnderOut, Role::OverOut, Role::UnderIn],
        VertexKind::Singular => [Role::LeftIn, Role::LeftOut, Role::RightOut, Role::RightIn],
    }
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub kind: VertexKind,
    ccw: [Role; 4],
    /// Semi-arc at each ccw slot, filled during expansion.
    semi: [usize; 4],
}

impl Vertex {
    pub fn ccw_roles(&self) -> [Role; 4] {
        self.ccw
    }

    pub fn semi_at_slot(&self, slot: usize) -> usize {
        self.semi[slot]
    }

    pub fn slot_of_role(&self, role: Role) -> usize {
        self.ccw.iter().position(|&r| r == role).unwrap()
    }

    pub fn semi_at_role(&self, role: Role) -> usize {
        self.semi[self.slot_of_role(role)]
    }
}

/// One vertex-to-vertex segment after expansion.
#[derive(Debug, Clone)]
pub struct SemiArc {
    pub label: String,
    /// Index of the original (merged) arc this piece belongs to.
    pub arc: usize,
    pub from: (usize, usize),
    pub to: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct SingularDiagram {
    name: String,
    vertices: Vec<Vertex>,
    arcs: Vec<String>,
    semi_arcs: Vec<SemiArc>,
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("vertex {index}: {reason}")]
    MalformedVertex { index: usize, reason: String },
    #[error("arc `{0}` does not close up (wrong number of in/out uses)")]
    DanglingArc(String),
    #[error("diagram has no vertices")]
    EmptyDiagram,
    #[error("unknown builtin diagram `{0}`")]
    UnknownName(String),
    #[error("diagram is not connected")]
    Disconnected,
    #[error("region coloring is inconsistent at face {face}: expected {expected}, found {found}")]
    InconsistentRegionColoring {
        face: usize,
        expected: String,
        found: String,
    },
    #[error("no face {0} in this diagram")]
    UnknownFace(usize),
    #[error("arc `{0}` is colored by a label missing from the structure")]
    UnknownColor(String),
    #[error("diagram file is malformed: {0}")]
    MalformedFile(String),
}

impl SingularDiagram {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Original arc labels in file order; these are the coloring variables.
    pub fn arcs(&self) -> &[String] {
        &self.arcs
    }

    pub fn semi_arcs(&self) -> &[SemiArc] {
        &self.semi_arcs
    }

    pub fn arc_index(&self, label: &str) -> Option<usize> {
        self.arcs.iter().position(|a| a == label)
    }
}

// ---------------------------------------------------------------------------
// Parsing and expansion
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct DiagramFile {
    name: String,
    vertices: Vec<VertexFile>,
}

#[derive(Deserialize)]
struct VertexFile {
    kind: String,
    #[serde(default)]
    under_in: Option<String>,
    #[serde(default)]
    under_out: Option<String>,
    #[serde(default)]
    over: Option<String>,
    #[serde(default)]
    over_in: Option<String>,
    #[serde(default)]
    over_out: Option<String>,
    #[serde(default)]
    left_in: Option<String>,
    #[serde(default)]
    right_in: Option<String>,
    #[serde(default)]
    left_out: Option<String>,
    #[serde(default)]
    right_out: Option<String>,
    #[serde(default)]
    ccw: Option<Vec<String>>,
}

/// Per-vertex role labels before expansion. A merged over strand supplies
/// the same label for `OverIn` and `OverOut`.
struct RawVertex {
    kind: VertexKind,
    ccw: [Role; 4],
    labels: BTreeMap<&'static str, String>,
    merged_over: bool,
}

impl RawVertex {
    fn label(&self, role: Role) -> &str {
        &self.labels[role.as_str()]
    }
}

fn malformed(index: usize, reason: impl Into<String>) -> DiagramError {
    DiagramError::MalformedVertex {
        index,
        reason: reason.into(),
    }
}

fn raw_vertex(index: usize, v: &VertexFile) -> Result<RawVertex, DiagramError> {
    let kind = match v.kind.as_str() {
        "positive" => VertexKind::Positive,
        "negative" => VertexKind::Negative,
        "singular" => VertexKind::Singular,
        other => return Err(malformed(index, format!("unknown kind `{other}`"))),
    };
    let mut labels: BTreeMap<&'static str, String> = BTreeMap::new();
    let mut merged_over = false;
    match kind {
        VertexKind::Positive | VertexKind::Negative => {
            for (field, value) in [("under_in", &v.under_in), ("under_out", &v.under_out)] {
                let value = value
                    .as_ref()
                    .ok_or_else(|| malformed(index, format!("missing `{field}`")))?;
                labels.insert(field, value.clone());
            }
            match (&v.over, &v.over_in, &v.over_out) {
                (Some(o), None, None) => {
                    labels.insert("over_in", o.clone());
                    labels.insert("over_out", o.clone());
                    merged_over = true;
                }
                (None, Some(oi), Some(oo)) => {
                    labels.insert("over_in", oi.clone());
                    labels.insert("over_out", oo.clone());
                }
                _ => {
                    return Err(malformed(
                        index,
                        "classical vertex needs `over` or both `over_in` and `over_out`",
                    ))
                }
            }
            if v.left_in.is_some()
                || v.right_in.is_some()
                || v.left_out.is_some()
                || v.right_out.is_some()
            {
                return Err(malformed(index, "classical vertex has singular roles"));
            }
        }
        VertexKind::Singular => {
            for (field, value) in [
                ("left_in", &v.left_in),
                ("right_in", &v.right_in),
                ("left_out", &v.left_out),
                ("right_out", &v.right_out),
            ] {
                let value = value
                    .as_ref()
                    .ok_or_else(|| malformed(index, format!("missing `{field}`")))?;
                labels.insert(field, value.clone());
            }
            if v.under_in.is_some() || v.over.is_some() || v.over_in.is_some() {
                return Err(malformed(index, "singular vertex has classical roles"));
            }
        }
    }
    if labels.values().any(|l| l.is_empty() || l.contains('#')) {
        return Err(malformed(index, "arc labels must be nonempty and `#`-free"));
    }
    let mut ccw = default_ccw(kind);
    if let Some(names) = &v.ccw {
        if names.len() != 4 {
            return Err(malformed(index, "`ccw` must list four roles"));
        }
        let mut roles = [Role::UnderIn; 4];
        for (i, name) in names.iter().enumerate() {
            roles[i] = Role::from_str(name)
                .ok_or_else(|| malformed(index, format!("unknown role `{name}`")))?;
        }
        let mut sorted_a: Vec<&str> = roles.iter().map(|r| r.as_str()).collect();
        let mut sorted_b: Vec<&str> = ccw.iter().map(|r| r.as_str()).collect();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return Err(malformed(index, "`ccw` must permute this vertex's roles"));
        }
        ccw = roles;
    }
    Ok(RawVertex {
        kind,
        ccw,
        labels,
        merged_over,
    })
}

fn roles_of(kind: VertexKind) -> [Role; 4] {
    // Scan order for arc discovery: inputs before outputs.
    match kind {
        VertexKind::Positive | VertexKind::Negative => {
            [Role::UnderIn, Role::OverIn, Role::OverOut, Role::UnderOut]
        }
        VertexKind::Singular => [Role::LeftIn, Role::RightIn, Role::LeftOut, Role::RightOut],
    }
}

/// Parse a diagram from its JSON text and expand merged over strands into
/// semi-arcs. An arc passing over several crossings passes them in vertex
/// file order.
pub fn parse_diagram(text: &str) -> Result<SingularDiagram, DiagramError> {
    let file: DiagramFile =
        serde_json::from_str(text).map_err(|e| DiagramError::MalformedFile(e.to_string()))?;
    if file.vertices.is_empty() {
        return Err(DiagramError::EmptyDiagram);
    }
    let raws: Vec<RawVertex> = file
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| raw_vertex(i, v))
        .collect::<Result<_, _>>()?;

    // Arc labels in order of first appearance.
    let mut arcs: Vec<String> = Vec::new();
    for raw in &raws {
        for role in roles_of(raw.kind) {
            let label = raw.label(role);
            if !arcs.iter().any(|a| a == label) {
                arcs.push(label.to_string());
            }
        }
    }

    // Occurrences per arc: the one pure out-slot, the one pure in-slot, and
    // any merged over passages in between.
    struct Uses {
        out: Vec<(usize, Role)>,
        input: Vec<(usize, Role)>,
        merges: Vec<usize>,
    }
    let mut uses: Vec<Uses> = arcs
        .iter()
        .map(|_| Uses {
            out: Vec::new(),
            input: Vec::new(),
            merges: Vec::new(),
        })
        .collect();
    for (vi, raw) in raws.iter().enumerate() {
        for role in roles_of(raw.kind) {
            let arc = arcs.iter().position(|a| a == raw.label(role)).unwrap();
            if raw.merged_over && role == Role::OverIn {
                uses[arc].merges.push(vi);
                continue;
            }
            if raw.merged_over && role == Role::OverOut {
                continue;
            }
            if role.is_in() {
                uses[arc].input.push((vi, role));
            } else {
                uses[arc].out.push((vi, role));
            }
        }
    }

    let mut vertices: Vec<Vertex> = raws
        .iter()
        .map(|raw| Vertex {
            kind: raw.kind,
            ccw: raw.ccw,
            semi: [usize::MAX; 4],
        })
        .collect();
    let slot = |vertices: &[Vertex], vi: usize, role: Role| -> usize {
        vertices[vi].ccw.iter().position(|&r| r == role).unwrap()
    };

    let mut semi_arcs: Vec<SemiArc> = Vec::new();
    for (arc, label) in arcs.iter().enumerate() {
        let u = &uses[arc];
        if u.out.len() != 1 || u.input.len() != 1 {
            return Err(DiagramError::DanglingArc(label.clone()));
        }
        let (start_v, start_role) = u.out[0];
        let (end_v, end_role) = u.input[0];
        let mut from = (start_v, slot(&vertices, start_v, start_role));
        for (k, &mv) in u.merges.iter().enumerate() {
            let to = (mv, slot(&vertices, mv, Role::OverIn));
            let piece = if k == 0 {
                label.clone()
            } else {
                format!("{label}#{k}")
            };
            semi_arcs.push(SemiArc {
                label: piece,
                arc,
                from,
                to,
            });
            from = (mv, slot(&vertices, mv, Role::OverOut));
        }
        let piece = if u.merges.is_empty() {
            label.clone()
        } else {
            format!("{label}#{}", u.merges.len())
        };
        semi_arcs.push(SemiArc {
            label: piece,
            arc,
            from,
            to: (end_v, slot(&vertices, end_v, end_role)),
        });
    }

    for (si, s) in semi_arcs.iter().enumerate() {
        for (v, sl) in [s.from, s.to] {
            if vertices[v].semi[sl] != usize::MAX {
                return Err(DiagramError::DanglingArc(s.label.clone()));
            }
            vertices[v].semi[sl] = si;
        }
    }
    if vertices.iter().any(|v| v.semi.contains(&usize::MAX)) {
        // Can only happen when some label was over-used elsewhere.
        return Err(DiagramError::DanglingArc("<unfilled slot>".into()));
    }

    Ok(SingularDiagram {
        name: file.name,
        vertices,
        arcs,
        semi_arcs,
    })
}

// ---------------------------------------------------------------------------
// Builtin fixture diagrams
// ---------------------------------------------------------------------------

const BUILTINS: [(&str, &str); 8] = [
    ("1_1^l", include_str!("../fixtures/diagram_1_1_l.json")),
    ("3_1^k", include_str!("../fixtures/diagram_3_1_k.json")),
    ("4_1^k", include_str!("../fixtures/diagram_4_1_k.json")),
    ("5_4^k", include_str!("../fixtures/diagram_5_4_k.json")),
    ("K1", include_str!("../fixtures/diagram_k1.json")),
    ("K2", include_str!("../fixtures/diagram_k2.json")),
    ("K3", include_str!("../fixtures/diagram_k3.json")),
    (
        "3_1^k_kinked",
        include_str!("../fixtures/diagram_3_1_k_kinked.json"),
    ),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|(n, _)| *n).collect()
}

/// Fixture diagrams shipped with the crate, by name.
pub fn builtin(name: &str) -> Result<SingularDiagram, DiagramError> {
    let (_, text) = BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| DiagramError::UnknownName(name.to_string()))?;
    let d = parse_diagram(text)?;
    debug_assert_eq!(d.name(), name);
    Ok(d)
}

// ---------------------------------------------------------------------------
// Coloring enumeration
// ---------------------------------------------------------------------------

/// An assignment of structure elements to the diagram's arcs, indexed in
/// the diagram's arc order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ColoringAssignment {
    values: Vec<ElementId>,
}

impl ColoringAssignment {
    pub fn value(&self, arc: usize) -> ElementId {
        self.values[arc]
    }

    pub fn values(&self) -> &[ElementId] {
        &self.values
    }

    /// The set of colors used, as structure elements.
    pub fn image(&self) -> std::collections::BTreeSet<ElementId> {
        self.values.iter().copied().collect()
    }

    /// Render as the tuple of element labels in arc order.
    pub fn render(&self, q: &FiniteSingquandle) -> String {
        let parts: Vec<&str> = self.values.iter().map(|&v| q.label(v)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Vertex relations on arc indices.
enum Relation {
    Classical {
        negative: bool,
        under_in: usize,
        over_in: usize,
        over_out: usize,
        under_out: usize,
    },
    Singular {
        left_in: usize,
        right_in: usize,
        left_out: usize,
        right_out: usize,
    },
}

fn relations(d: &SingularDiagram) -> Vec<Relation> {
    d.vertices()
        .iter()
        .map(|v| {
            let arc = |role: Role| d.semi_arcs[v.semi_at_role(role)].arc;
            match v.kind {
                VertexKind::Positive | VertexKind::Negative => Relation::Classical {
                    negative: v.kind == VertexKind::Negative,
                    under_in: arc(Role::UnderIn),
                    over_in: arc(Role::OverIn),
                    over_out: arc(Role::OverOut),
                    under_out: arc(Role::UnderOut),
                },
                VertexKind::Singular => Relation::Singular {
                    left_in: arc(Role::LeftIn),
                    right_in: arc(Role::RightIn),
                    left_out: arc(Role::LeftOut),
                    right_out: arc(Role::RightOut),
                },
            }
        })
        .collect()
}

struct Csp<'a> {
    q: &'a FiniteSingquandle,
    rels: &'a [Relation],
    assign: Vec<Option<ElementId>>,
}

impl Csp<'_> {
    fn set(&mut self, arc: usize, v: ElementId, trail: &mut Vec<usize>) -> bool {
        match self.assign[arc] {
            Some(existing) => existing == v,
            None => {
                self.assign[arc] = Some(v);
                trail.push(arc);
                true
            }
        }
    }

    /// Fire every vertex rule whose inputs are known, to a fixpoint.
    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            for i in 0..self.rels.len() {
                match self.rels[i] {
                    Relation::Classical {
                        negative,
                        under_in,
                        over_in,
                        over_out,
                        under_out,
                    } => {
                        if let Some(o) = self.assign[over_in] {
                            if self.assign[over_out].is_none() {
                                if !self.set(over_out, o, trail) {
                                    return false;
                                }
                                changed = true;
                            } else if self.assign[over_out] != Some(o) {
                                return false;
                            }
                            if let Some(u) = self.assign[under_in] {
                                let out = if negative {
                                    self.q.bar_star(u, o)
                                } else {
                                    self.q.star(u, o)
                                };
                                match self.assign[under_out] {
                                    Some(existing) => {
                                        if existing != out {
                                            return false;
                                        }
                                    }
                                    None => {
                                        self.set(under_out, out, trail);
                                        changed = true;
                                    }
                                }
                            }
                        }
                    }
                    Relation::Singular {
                        left_in,
                        right_in,
                        left_out,
                        right_out,
                    } => {
                        if let (Some(l), Some(r)) = (self.assign[left_in], self.assign[right_in]) {
                            for (out_arc, val) in
                                [(left_out, self.q.r1(l, r)), (right_out, self.q.r2(l, r))]
                            {
                                match self.assign[out_arc] {
                                    Some(existing) => {
                                        if existing != val {
                                            return false;
                                        }
                                    }
                                    None => {
                                        self.set(out_arc, val, trail);
                                        changed = true;
                                    }
                                }
                            }
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn undo(&mut self, trail: Vec<usize>) {
        for arc in trail {
            self.assign[arc] = None;
        }
    }

    fn search(&mut self, out: &mut Vec<ColoringAssignment>) {
        let next = self.assign.iter().position(|a| a.is_none());
        let arc = match next {
            None => {
                out.push(ColoringAssignment {
                    values: self.assign.iter().map(|a| a.unwrap()).collect(),
                });
                return;
            }
            Some(arc) => arc,
        };
        for v in self.q.elements() {
            let mut trail = Vec::new();
            if self.set(arc, v, &mut trail) && self.propagate(&mut trail) {
                self.search(out);
            }
            self.undo(trail);
        }
    }
}

/// Every coloring of the diagram by the structure, sorted lexicographically
/// by arc order under the structure's element order.
pub fn colorings(d: &SingularDiagram, q: &FiniteSingquandle) -> Vec<ColoringAssignment> {
    colorings_with_workers(d, q, 1)
}

/// Same enumeration with the search split over `workers` threads on the
/// first arc's value. The merged output is identical for every worker count.
pub fn colorings_with_workers(
    d: &SingularDiagram,
    q: &FiniteSingquandle,
    workers: usize,
) -> Vec<ColoringAssignment> {
    let rels = relations(d);
    let workers = workers.max(1).min(q.size().max(1));
    let run_branch = |first: Vec<ElementId>| -> Vec<ColoringAssignment> {
        let mut csp = Csp {
            q,
            rels: &rels,
            assign: vec![None; d.arcs.len()],
        };
        let mut out = Vec::new();
        for v in first {
            let mut trail = Vec::new();
            if csp.set(0, v, &mut trail) && csp.propagate(&mut trail) {
                csp.search(&mut out);
            }
            csp.undo(trail);
        }
        out
    };
    let mut found = if workers == 1 || d.arcs.is_empty() {
        run_branch(q.elements().collect())
    } else {
        let chunks: Vec<Vec<ElementId>> = (0..workers)
            .map(|w| q.elements().skip(w).step_by(workers).collect())
            .collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| scope.spawn(|| run_branch(chunk)))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("coloring worker panicked"))
                .collect()
        })
    };
    found.sort();
    found
}

// ---------------------------------------------------------------------------
// Region tracing
// ---------------------------------------------------------------------------

/// The faces of the plane diagram, traced from the rotation system, plus
/// the two faces flanking each semi-arc.
#[derive(Debug, Clone)]
pub struct RegionMap {
    /// face id -> corners, each a (vertex, slot) naming the corner between
    /// that slot and its ccw successor.
    pub face_corners: Vec<Vec<(usize, usize)>>,
    /// face id of the corner at (vertex, slot).
    face_of_corner: Vec<[usize; 4]>,
    /// semi-arc index -> (left face, right face) relative to orientation.
    pub sides: Vec<(usize, usize)>,
}

impl RegionMap {
    pub fn face_count(&self) -> usize {
        self.face_corners.len()
    }

    pub fn faces(&self) -> impl Iterator<Item = usize> {
        0..self.face_corners.len()
    }

    pub fn face_of_corner(&self, vertex: usize, slot: usize) -> usize {
        self.face_of_corner[vertex][slot]
    }
}

/// Trace the faces by corner walking: from a slot, step to its ccw
/// successor, follow that semi-arc to its far end, and repeat to closure.
pub fn trace_regions(d: &SingularDiagram) -> Result<RegionMap, DiagramError> {
    let nv = d.vertices.len();

    // Connectivity over the 4-valent graph.
    let mut seen = vec![false; nv];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for slot in 0..4 {
            let s = &d.semi_arcs[d.vertices[v].semi[slot]];
            for (w, _) in [s.from, s.to] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(DiagramError::Disconnected);
    }

    let other_end = |si: usize, at: (usize, usize)| -> (usize, usize) {
        let s = &d.semi_arcs[si];
        if s.from == at {
            s.to
        } else {
            s.from
        }
    };

    let mut face_of_corner = vec![[usize::MAX; 4]; nv];
    let mut face_corners: Vec<Vec<(usize, usize)>> = Vec::new();
    for v0 in 0..nv {
        for s0 in 0..4 {
            if face_of_corner[v0][s0] != usize::MAX {
                continue;
            }
            let face = face_corners.len();
            let mut corners = Vec::new();
            let (mut v, mut s) = (v0, s0);
            loop {
                face_of_corner[v][s] = face;
                corners.push((v, s));
                let succ = (s + 1) % 4;
                let si = d.vertices[v].semi[succ];
                let (nv_, ns) = other_end(si, (v, succ));
                (v, s) = (nv_, ns);
                if (v, s) == (v0, s0) {
                    break;
                }
            }
            face_corners.push(corners);
        }
    }

    // Flanking faces per semi-arc, read at its out end; the in end must
    // agree, which pins the walk and the side convention together.
    let mut sides = Vec::with_capacity(d.semi_arcs.len());
    for s in &d.semi_arcs {
        let (ov, os) = s.from;
        let left = face_of_corner[ov][os];
        let right = face_of_corner[ov][(os + 3) % 4];
        let (iv, is) = s.to;
        debug_assert_eq!(left, face_of_corner[iv][(is + 3) % 4]);
        debug_assert_eq!(right, face_of_corner[iv][is]);
        sides.push((left, right));
    }

    Ok(RegionMap {
        face_corners,
        face_of_corner,
        sides,
    })
}

// ---------------------------------------------------------------------------
// Region coloring
// ---------------------------------------------------------------------------

/// Propagate a shadow coloring of the faces from `(base_face, x0)`. Crossing
/// a semi-arc from its right side to its left applies the action of the
/// arc's color. Consistency is guaranteed by the shadow axioms for any
/// verified shadow; a violation is reported as an error.
pub fn region_coloring(
    d: &SingularDiagram,
    sh: &ShadowStructure,
    coloring: &ColoringAssignment,
    base_face: usize,
    x0: XId,
) -> Result<Vec<XId>, DiagramError> {
    let rm = trace_regions(d)?;
    region_coloring_with_map(d, &rm, sh, coloring, base_face, x0)
}

/// As [`region_coloring`], reusing an already-traced region map.
pub fn region_coloring_with_map(
    d: &SingularDiagram,
    rm: &RegionMap,
    sh: &ShadowStructure,
    coloring: &ColoringAssignment,
    base_face: usize,
    x0: XId,
) -> Result<Vec<XId>, DiagramError> {
    if base_face >= rm.face_count() {
        return Err(DiagramError::UnknownFace(base_face));
    }
    let mut phi: Vec<Option<XId>> = vec![None; rm.face_count()];
    phi[base_face] = Some(x0);
    let mut queue = VecDeque::from([base_face]);
    while let Some(face) = queue.pop_front() {
        let value = phi[face].unwrap();
        for (si, &(left, right)) in rm.sides.iter().enumerate() {
            if left != face && right != face {
                continue;
            }
            let color = coloring.value(d.semi_arcs[si].arc);
            let (other, expected) = if right == face {
                (left, sh.act(value, color))
            } else {
                (right, sh.act_inverse(value, color))
            };
            match phi[other] {
                None => {
                    phi[other] = Some(expected);
                    queue.push_back(other);
                }
                Some(found) => {
                    if found != expected {
                        return Err(DiagramError::InconsistentRegionColoring {
                            face: other,
                            expected: sh.x_label(expected).to_string(),
                            found: sh.x_label(found).to_string(),
                        });
                    }
                }
            }
        }
    }
    // Connectivity of the diagram makes the face adjacency connected.
    Ok(phi.into_iter().map(|p| p.unwrap()).collect())
}
