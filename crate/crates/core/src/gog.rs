//! Visual graph-of-groups decompositions: validation, reduction, compatible
//! visual splits of vertex groups, and irreducible decompositions with
//! respect to minimal splittings.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::splittings::SeparatorTable;
use crate::subset::SpecialSubset;
use crate::system::CoxeterSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GogEdge {
    pub u: usize,
    pub v: usize,
    pub label: SpecialSubset,
}

impl GogEdge {
    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// A finite tree whose vertices and edges carry special subgroups, edge
/// maps being inclusions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisualGog {
    vertices: Vec<SpecialSubset>,
    edges: Vec<GogEdge>,
}

/// Structure-only normal form: sorted vertex labels and sorted
/// `(edge label, endpoint labels)` triples.
pub type GogShape = (Vec<SpecialSubset>, Vec<(SpecialSubset, SpecialSubset, SpecialSubset)>);

impl VisualGog {
    pub fn new(vertices: Vec<SpecialSubset>, edges: Vec<GogEdge>) -> Result<Self> {
        for e in &edges {
            if e.u >= vertices.len() || e.v >= vertices.len() {
                return Err(Error::MalformedGog(format!("edge ({}, {}) has an unknown endpoint", e.u, e.v)));
            }
        }
        Ok(VisualGog { vertices, edges })
    }

    /// A path `v0 - v1 - ...` with the given edge labels.
    pub fn chain(vertices: Vec<SpecialSubset>, edge_labels: Vec<SpecialSubset>) -> Result<Self> {
        if edge_labels.len() + 1 != vertices.len() {
            return Err(Error::MalformedGog("a chain needs one fewer edge than vertices".into()));
        }
        let edges = edge_labels
            .into_iter()
            .enumerate()
            .map(|(i, label)| GogEdge { u: i, v: i + 1, label })
            .collect();
        Self::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[SpecialSubset] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GogEdge] {
        &self.edges
    }

    pub fn vertex_index(&self, label: SpecialSubset) -> Option<usize> {
        self.vertices.iter().position(|&v| v == label)
    }

    pub fn incident(&self, x: usize) -> impl Iterator<Item = &GogEdge> {
        self.edges.iter().filter(move |e| e.touches(x))
    }

    /// Whether the underlying graph is a tree (connected, `|E| = |V| − 1`,
    /// no loops).
    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 || self.edges.len() + 1 != n || self.edges.iter().any(|e| e.u == e.v) {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for e in self.incident(x) {
                let y = e.other(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    pub fn shape(&self) -> GogShape {
        let mut vertices = self.vertices.clone();
        vertices.sort();
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (self.vertices[e.u], self.vertices[e.v]);
                (e.label, a.min(b), a.max(b))
            })
            .collect();
        edges.sort();
        (vertices, edges)
    }

    /// Collapses edge `i` if its label equals an endpoint label, merging that
    /// endpoint into the other one. Returns `None` when the edge is not
    /// collapsible.
    pub fn collapse_edge(&self, i: usize) -> Option<VisualGog> {
        let e = *self.edges.get(i)?;
        let (gone, kept) = if e.label == self.vertices[e.u] {
            (e.u, e.v)
        } else if e.label == self.vertices[e.v] {
            (e.v, e.u)
        } else {
            return None;
        };
        Some(self.merge(i, gone, kept))
    }

    /// Contracts edge `i` unconditionally, labelling the merged vertex with
    /// the union of the endpoint labels.
    pub fn contract_edge(&self, i: usize) -> Option<VisualGog> {
        let e = *self.edges.get(i)?;
        let mut g = self.merge(i, e.v, e.u);
        let kept = if e.u > e.v { e.u - 1 } else { e.u };
        g.vertices[kept] = self.vertices[e.u].union(self.vertices[e.v]);
        Some(g)
    }

    fn merge(&self, edge: usize, gone: usize, kept: usize) -> VisualGog {
        let reindex = |x: usize| {
            let x = if x == gone { kept } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != edge)
            .map(|(_, e)| GogEdge { u: reindex(e.u), v: reindex(e.v), label: e.label })
            .collect();
        let mut vertices = self.vertices.clone();
        vertices.remove(gone);
        VisualGog { vertices, edges }
    }

    pub fn is_reduced(&self) -> bool {
        (0..self.edges.len()).all(|i| self.collapse_edge(i).is_none())
    }
}

/// The one-vertex decomposition `⟨S⟩`.
pub fn trivial_gog(sys: &CoxeterSystem) -> VisualGog {
    VisualGog { vertices: vec![sys.all()], edges: Vec::new() }
}

/// Repeatedly collapses the least-indexed collapsible edge.
pub fn reduce(g: &VisualGog) -> VisualGog {
    let mut g = g.clone();
    while let Some(next) = (0..g.edges.len()).find_map(|i| g.collapse_edge(i)) {
        g = next;
    }
    g
}

/// First failure found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotATree,
    LabelOutsideSystem { vertex: Option<usize>, edge: Option<usize> },
    EdgeNotContained { edge: usize },
    MissingDiagramEdge { s: usize, t: usize },
    EmptySupport { generator: usize },
    DisconnectedSupport { generator: usize },
}

impl Violation {
    pub fn describe(&self, sys: &CoxeterSystem, g: &VisualGog) -> String {
        match *self {
            Violation::NotATree => "underlying graph is not a tree".into(),
            Violation::LabelOutsideSystem { vertex, edge } => match (vertex, edge) {
                (Some(v), _) => format!("vertex {v} has a label outside the generating set"),
                (_, Some(e)) => format!("edge {e} has a label outside the generating set"),
                _ => "label outside the generating set".into(),
            },
            Violation::EdgeNotContained { edge } => {
                let e = g.edges[edge];
                format!(
                    "edge label {{{}}} is not contained in both endpoints {{{}}} and {{{}}}",
                    sys.format_subset(e.label),
                    sys.format_subset(g.vertices[e.u]),
                    sys.format_subset(g.vertices[e.v])
                )
            }
            Violation::MissingDiagramEdge { s, t } => format!(
                "diagram edge {}–{} lies in no vertex label",
                sys.name(s),
                sys.name(t)
            ),
            Violation::EmptySupport { generator } => {
                format!("generator {} appears in no vertex label", sys.name(generator))
            }
            Violation::DisconnectedSupport { generator } => format!(
                "vertices and edges containing {} do not form a subtree",
                sys.name(generator)
            ),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Violation::NotATree => "not-a-tree",
            Violation::LabelOutsideSystem { .. } => "label-outside-system",
            Violation::EdgeNotContained { .. } => "edge-not-contained",
            Violation::MissingDiagramEdge { .. } => "missing-diagram-edge",
            Violation::EmptySupport { .. } => "empty-support",
            Violation::DisconnectedSupport { .. } => "disconnected-support",
        }
    }
}

/// Checks that `g` is a visual decomposition of `W`: a tree, every edge
/// label inside both endpoint labels, every presentation-diagram edge inside
/// some vertex label, and for each generator the vertices and edges whose
/// labels contain it form a nonempty subtree.
pub fn validate(sys: &CoxeterSystem, g: &VisualGog) -> std::result::Result<(), Violation> {
    let all = sys.all();
    if let Some(v) = g.vertices.iter().position(|l| !l.is_subset(all)) {
        return Err(Violation::LabelOutsideSystem { vertex: Some(v), edge: None });
    }
    if let Some(e) = g.edges.iter().position(|e| !e.label.is_subset(all)) {
        return Err(Violation::LabelOutsideSystem { vertex: None, edge: Some(e) });
    }
    if !g.is_tree() {
        return Err(Violation::NotATree);
    }
    for (i, e) in g.edges.iter().enumerate() {
        if !e.label.is_subset(g.vertices[e.u]) || !e.label.is_subset(g.vertices[e.v]) {
            return Err(Violation::EdgeNotContained { edge: i });
        }
    }
    for (s, t, _) in sys.presentation_edges() {
        let pair = SpecialSubset::from_indices([s, t]);
        if !g.vertices.iter().any(|v| pair.is_subset(*v)) {
            return Err(Violation::MissingDiagramEdge { s, t });
        }
    }
    for s in all.iter() {
        let holders: Vec<usize> = (0..g.vertices.len()).filter(|&v| g.vertices[v].contains(s)).collect();
        let Some(&start) = holders.first() else {
            return Err(Violation::EmptySupport { generator: s });
        };
        // edges containing s already have both endpoints containing s
        let mut seen = vec![false; g.vertices.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for e in g.incident(x).filter(|e| e.label.contains(s)) {
                let y = e.other(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if holders.iter().any(|&v| !seen[v]) {
            return Err(Violation::DisconnectedSupport { generator: s });
        }
    }
    Ok(())
}

/// A compatible visual splitting of the vertex labelled `vertex` as
/// `⟨left⟩ *_⟨edge⟩ ⟨right⟩`, with `left ∩ right = edge` and
/// `left ∪ right = vertex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplitMove {
    pub vertex: SpecialSubset,
    pub edge: SpecialSubset,
    pub left: SpecialSubset,
    pub right: SpecialSubset,
}

/// Splitting and refinement of visual decompositions for one system, backed
/// by its classified separators.
pub struct Decomposer<'s> {
    sys: &'s CoxeterSystem,
    caps: Caps,
    table: SeparatorTable,
}

impl<'s> Decomposer<'s> {
    pub fn new(sys: &'s CoxeterSystem, caps: Caps) -> Result<Self> {
        let table = SeparatorTable::new(sys, &caps)?;
        Ok(Decomposer { sys, caps, table })
    }

    pub fn system(&self) -> &'s CoxeterSystem {
        self.sys
    }

    pub fn table(&self) -> &SeparatorTable {
        &self.table
    }

    /// All compatible visual splits of vertex `x` over `E ⊆ label(x)`.
    ///
    /// `E` must separate the vertex label in `Γ`. Components of `Γ − E`
    /// missing the vertex do not affect the resulting split, so assignments
    /// are taken over the components meeting it, the first one always on the
    /// left. Moves are ordered by `E` (size, then lexicographic), then by
    /// assignment.
    pub fn compatible_splits(&self, g: &VisualGog, x: usize, restrict_minimal: bool) -> Result<Vec<SplitMove>> {
        let vertex = *g
            .vertices
            .get(x)
            .ok_or_else(|| Error::MalformedGog(format!("no vertex {x}")))?;
        if vertex.len() > self.caps.generators {
            return Err(Error::resource(format!(
                "vertex with {} generators exceeds the enumeration cap {}",
                vertex.len(),
                self.caps.generators
            )));
        }
        let adjacent: Vec<SpecialSubset> = g.incident(x).map(|e| e.label).collect();
        let mut out = Vec::new();
        for e in vertex.subsets_canonical() {
            if restrict_minimal && !self.table.is_minimal(e) {
                continue;
            }
            let pieces: Vec<SpecialSubset> = self
                .sys
                .components(self.sys.all().difference(e))
                .into_iter()
                .map(|c| c.intersection(vertex))
                .filter(|c| !c.is_empty())
                .collect();
            if pieces.len() < 2 {
                continue;
            }
            if pieces.len() > 63 {
                return Err(Error::resource("too many components to assign"));
            }
            for mask in 1u64..(1u64 << (pieces.len() - 1)) {
                let (mut left, mut right) = (e, e);
                for (j, piece) in pieces.iter().enumerate() {
                    if j > 0 && mask & (1 << (j - 1)) != 0 {
                        right = right.union(*piece);
                    } else {
                        left = left.union(*piece);
                    }
                }
                if adjacent.iter().all(|d| d.is_subset(left) || d.is_subset(right)) {
                    out.push(SplitMove { vertex, edge: e, left, right });
                }
            }
        }
        Ok(out)
    }

    /// Replaces the split vertex by `left - right` joined over `edge`,
    /// reattaching each old edge to the side containing its label (the left
    /// side on ties).
    pub fn apply_split(&self, g: &VisualGog, mv: &SplitMove) -> Result<VisualGog> {
        let sys = self.sys;
        let x = g.vertex_index(mv.vertex).ok_or_else(|| {
            Error::InvalidSplit(format!("no vertex labelled {{{}}}", sys.format_subset(mv.vertex)))
        })?;
        if g.vertices.iter().filter(|&&v| v == mv.vertex).count() > 1 {
            return Err(Error::InvalidSplit("vertex label is not unique".into()));
        }
        let e = mv.edge;
        if !e.is_subset(mv.vertex)
            || mv.left.union(mv.right) != mv.vertex
            || mv.left.intersection(mv.right) != e
        {
            return Err(Error::InvalidSplit("sides must cover the vertex and meet in the edge group".into()));
        }
        if mv.left == e || mv.right == e {
            return Err(Error::InvalidSplit("split is trivial: a side equals the edge group".into()));
        }
        let (lrest, rrest) = (mv.left.difference(e), mv.right.difference(e));
        for comp in sys.components(sys.all().difference(e)) {
            if !comp.is_disjoint(lrest) && !comp.is_disjoint(rrest) {
                return Err(Error::InvalidSplit(format!(
                    "component {{{}}} of Γ − {{{}}} meets both sides",
                    sys.format_subset(comp),
                    sys.format_subset(e)
                )));
            }
        }
        let mut out = g.clone();
        out.vertices[x] = mv.left;
        let y = out.vertices.len();
        out.vertices.push(mv.right);
        for edge in out.edges.iter_mut().filter(|edge| edge.touches(x)) {
            if edge.label.is_subset(mv.left) {
                continue;
            }
            if !edge.label.is_subset(mv.right) {
                return Err(Error::InvalidSplit(format!(
                    "adjacent edge {{{}}} lies in neither side",
                    sys.format_subset(edge.label)
                )));
            }
            if edge.u == x {
                edge.u = y;
            } else {
                edge.v = y;
            }
        }
        out.edges.push(GogEdge { u: x, v: y, label: e });
        validate(sys, &out).map_err(|v| Error::InvalidSplit(v.describe(sys, &out)))?;
        Ok(out)
    }

    /// `apply_split` followed by [`reduce`].
    pub fn step(&self, g: &VisualGog, mv: &SplitMove) -> Result<VisualGog> {
        Ok(reduce(&self.apply_split(g, mv)?))
    }

    /// True iff every edge group is minimal and no vertex admits a compatible
    /// visual split over a minimal splitting subgroup. Such a decomposition
    /// is irreducible with respect to minimal splittings.
    pub fn looks_irreducible(&self, g: &VisualGog) -> Result<bool> {
        if let Some(e) = g.edges.iter().find(|e| !self.table.is_minimal(e.label)) {
            return Err(Error::Precondition(format!(
                "edge group ⟨{}⟩ is not a minimal separating subgroup",
                self.sys.format_subset(e.label)
            )));
        }
        for x in 0..g.vertices.len() {
            if !self.compatible_splits(g, x, true)?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Vertices by label order, then the first minimal move there.
    pub fn next_move(&self, g: &VisualGog) -> Result<Option<SplitMove>> {
        let mut order: Vec<usize> = (0..g.vertices.len()).collect();
        order.sort_by_key(|&x| g.vertices[x]);
        for x in order {
            if let Some(mv) = self.compatible_splits(g, x, true)?.into_iter().next() {
                return Ok(Some(mv));
            }
        }
        Ok(None)
    }

    /// Refines the trivial decomposition by canonical minimal splits,
    /// reducing after each, until it looks irreducible.
    pub fn irreducible_decomposition(&self) -> Result<(VisualGog, Vec<SplitMove>)> {
        let mut g = trivial_gog(self.sys);
        let mut trace = Vec::new();
        while let Some(mv) = self.next_move(&g)? {
            g = self.step(&g, &mv)?;
            trace.push(mv);
        }
        Ok((g, trace))
    }
}

#[derive(Serialize, Deserialize)]
struct VertexFile {
    id: Value,
    label: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct EdgeFile {
    u: Value,
    v: Value,
    label: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GogFile {
    vertices: Vec<VertexFile>,
    #[serde(default)]
    edges: Vec<EdgeFile>,
}

pub fn to_json_value(sys: &CoxeterSystem, g: &VisualGog) -> Value {
    let file = GogFile {
        vertices: g
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &l)| VertexFile { id: Value::from(i), label: sys.subset_names(l) })
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|e| EdgeFile { u: Value::from(e.u), v: Value::from(e.v), label: sys.subset_names(e.label) })
            .collect(),
    };
    serde_json::to_value(file).expect("gog serialization cannot fail")
}

/// Reads `{"vertices":[{"id":..,"label":[..]}],"edges":[{"u":..,"v":..,"label":[..]}]}`.
pub fn from_json(sys: &CoxeterSystem, text: &str) -> Result<VisualGog> {
    from_json_value(sys, serde_json::from_str(text)?)
}

pub fn from_json_value(sys: &CoxeterSystem, value: Value) -> Result<VisualGog> {
    let file: GogFile = serde_json::from_value(value)?;
    let mut ids = HashMap::new();
    let mut vertices = Vec::with_capacity(file.vertices.len());
    for (i, v) in file.vertices.iter().enumerate() {
        if ids.insert(v.id.to_string(), i).is_some() {
            return Err(Error::MalformedGog(format!("duplicate vertex id {}", v.id)));
        }
        vertices.push(sys.subset_of(&v.label)?);
    }
    let lookup = |id: &Value| {
        ids.get(&id.to_string())
            .copied()
            .ok_or_else(|| Error::MalformedGog(format!("edge refers to unknown vertex {id}")))
    };
    let edges = file
        .edges
        .iter()
        .map(|e| Ok(GogEdge { u: lookup(&e.u)?, v: lookup(&e.v)?, label: sys.subset_of(&e.label)? }))
        .collect::<Result<Vec<_>>>()?;
    VisualGog::new(vertices, edges)
}

/// Graphviz rendering; vertex and edge labels are comma-joined generators.
pub fn to_dot(sys: &CoxeterSystem, g: &VisualGog) -> String {
    let mut out = String::from("graph gog {\n");
    for (i, &l) in g.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label=\"{}\"];", sys.format_subset(l));
    }
    for e in &g.edges {
        let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.u, e.v, sys.format_subset(e.label));
    }
    out.push_str("}\n");
    out
}

/// `format` is `dot` or `json`.
pub fn export(sys: &CoxeterSystem, g: &VisualGog, format: &str) -> Result<String> {
    match format {
        "dot" => Ok(to_dot(sys, g)),
        "json" => Ok(serde_json::to_string_pretty(&to_json_value(sys, g))?),
        other => Err(Error::UnknownFormat(other.to_string())),
    }
}

#[derive(Serialize, Deserialize)]
struct MoveFile {
    vertex: Vec<String>,
    edge: Vec<String>,
    left: Vec<String>,
    right: Vec<String>,
}

pub fn moves_to_json(sys: &CoxeterSystem, moves: &[SplitMove]) -> Value {
    let files: Vec<MoveFile> = moves
        .iter()
        .map(|m| MoveFile {
            vertex: sys.subset_names(m.vertex),
            edge: sys.subset_names(m.edge),
            left: sys.subset_names(m.left),
            right: sys.subset_names(m.right),
        })
        .collect();
    serde_json::to_value(files).expect("trace serialization cannot fail")
}

/// Reads a trace, either a bare array of moves or an object with a
/// `"trace"` array (as printed by `decompose --trace`).
pub fn moves_from_json(sys: &CoxeterSystem, text: &str) -> Result<Vec<SplitMove>> {
    let mut value: Value = serde_json::from_str(text)?;
    if let Some(inner) = value.get_mut("trace") {
        value = inner.take();
    }
    let files: Vec<MoveFile> = serde_json::from_value(value)?;
    files
        .iter()
        .map(|m| {
            Ok(SplitMove {
                vertex: sys.subset_of(&m.vertex)?,
                edge: sys.subset_of(&m.edge)?,
                left: sys.subset_of(&m.left)?,
                right: sys.subset_of(&m.right)?,
            })
        })
        .collect()
}
