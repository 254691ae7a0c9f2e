//! Quivers with monomial length-two relations, the `.gq` text format,
//! gentleness / gentle-order validation and the passage to half-edge systems.
//!
//! Grammar (UTF-8, one statement per line, `#` starts a comment):
//!
//! ```text
//! vertex <id>
//! arrow <id> <source> <target>
//! rel <beta> <alpha>        # the path "alpha then beta" is zero
//! ```
//!
//! Vertex and arrow identifiers live in separate namespaces. Declarations may
//! appear in any order; all indices follow file order.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfedge::HalfEdgeSystem;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GentlePresentation {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    /// Pairs `(beta, alpha)` of arrow indices with `beta∘alpha` in the ideal.
    relations: BTreeSet<(usize, usize)>,
}

impl GentlePresentation {
    /// Builds a presentation from names, checking the structural invariants
    /// (known references, unique ids, composable relations). Gentleness is not
    /// checked here.
    pub fn new<V, A, R>(vertices: V, arrows: A, relations: R) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
        R: IntoIterator<Item = (String, String)>,
    {
        let mut builder = Builder::default();
        for v in vertices {
            builder.vertex(v.into(), 0)?;
        }
        for (name, s, t) in arrows {
            builder.arrows.push((name, s, t, 0));
        }
        for (beta, alpha) in relations {
            builder.relations.push((beta, alpha, 0));
        }
        builder.finish()
    }

    /// Parses `.gq` text.
    pub fn parse(text: &str) -> Result<Self> {
        let mut builder = Builder::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("");
            let tokens = tokenize(line);
            let Some(&(col, keyword)) = tokens.first() else {
                continue;
            };
            let expect = |n: usize, usage: &str| -> Result<()> {
                if tokens.len() == n {
                    Ok(())
                } else {
                    let column = tokens.get(n).map_or(col, |t| t.0);
                    Err(Error::Syntax {
                        line: line_no,
                        column,
                        message: format!("expected `{usage}`"),
                    })
                }
            };
            match keyword {
                "vertex" => {
                    expect(2, "vertex <id>")?;
                    builder.vertex(tokens[1].1.to_owned(), line_no)?;
                }
                "arrow" => {
                    expect(4, "arrow <id> <source> <target>")?;
                    builder.arrows.push((
                        tokens[1].1.to_owned(),
                        tokens[2].1.to_owned(),
                        tokens[3].1.to_owned(),
                        line_no,
                    ));
                }
                "rel" => {
                    expect(3, "rel <beta> <alpha>")?;
                    builder.relations.push((
                        tokens[1].1.to_owned(),
                        tokens[2].1.to_owned(),
                        line_no,
                    ));
                }
                other => {
                    return Err(Error::Syntax {
                        line: line_no,
                        column: col,
                        message: format!("unknown keyword \"{other}\""),
                    })
                }
            }
        }
        builder.finish()
    }

    /// Serializes to `.gq` text; `parse(to_gq())` reproduces `self`.
    pub fn to_gq(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let _ = writeln!(out, "vertex {v}");
        }
        for a in &self.arrows {
            let _ = writeln!(
                out,
                "arrow {} {} {}",
                a.name, self.vertices[a.source], self.vertices[a.target]
            );
        }
        for &(beta, alpha) in &self.relations {
            let _ = writeln!(
                out,
                "rel {} {}",
                self.arrows[beta].name, self.arrows[alpha].name
            );
        }
        out
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &BTreeSet<(usize, usize)> {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].source
    }

    pub fn target(&self, a: usize) -> usize {
        self.arrows[a].target
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.arrows[a].name
    }

    /// Whether `beta∘alpha` lies in the ideal.
    pub fn is_relation(&self, beta: usize, alpha: usize) -> bool {
        self.relations.contains(&(beta, alpha))
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// The arrow `beta` continuing `alpha` with `beta∘alpha` not in the ideal.
    pub fn permitted_successor(&self, alpha: usize) -> Option<usize> {
        self.out_arrows(self.target(alpha))
            .find(|&beta| !self.is_relation(beta, alpha))
    }

    /// The arrow `alpha` preceding `beta` with `beta∘alpha` not in the ideal.
    pub fn permitted_predecessor(&self, beta: usize) -> Option<usize> {
        self.in_arrows(self.source(beta))
            .find(|&alpha| !self.is_relation(beta, alpha))
    }

    /// The arrow `beta` continuing `alpha` with `beta∘alpha` in the ideal.
    pub fn forbidden_successor(&self, alpha: usize) -> Option<usize> {
        self.out_arrows(self.target(alpha))
            .find(|&beta| self.is_relation(beta, alpha))
    }

    /// Vertex sets of the connected components of the underlying undirected
    /// graph, ordered by first vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for v in 0..n {
            let root = find(&mut parent, v);
            let id = *slot.entry(root).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[id].push(v);
        }
        groups
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Reorders and renames vertices and arrows. `vertex_order[i]` is the old
    /// index of the new vertex `i` (likewise for arrows); new names are taken
    /// from the naming closures.
    pub fn permuted(
        &self,
        vertex_order: &[usize],
        arrow_order: &[usize],
        vertex_name: impl Fn(usize) -> String,
        arrow_name: impl Fn(usize) -> String,
    ) -> Self {
        let mut new_vertex = vec![0; self.vertices.len()];
        for (new, &old) in vertex_order.iter().enumerate() {
            new_vertex[old] = new;
        }
        let mut new_arrow = vec![0; self.arrows.len()];
        for (new, &old) in arrow_order.iter().enumerate() {
            new_arrow[old] = new;
        }
        Self {
            vertices: (0..vertex_order.len()).map(&vertex_name).collect(),
            arrows: arrow_order
                .iter()
                .enumerate()
                .map(|(new, &old)| Arrow {
                    name: arrow_name(new),
                    source: new_vertex[self.arrows[old].source],
                    target: new_vertex[self.arrows[old].target],
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|&(b, a)| (new_arrow[b], new_arrow[a]))
                .collect(),
        }
    }

    /// Deletes one arrow and every relation that mentions it.
    pub fn without_arrow(&self, arrow: usize) -> Self {
        let shift = |a: usize| if a > arrow { a - 1 } else { a };
        Self {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != arrow)
                .map(|(_, a)| a.clone())
                .collect(),
            relations: self
                .relations
                .iter()
                .filter(|&&(b, a)| b != arrow && a != arrow)
                .map(|&(b, a)| (shift(b), shift(a)))
                .collect(),
        }
    }
}

fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((line[..s].chars().count() + 1, &line[s..]));
    }
    out
}

#[derive(Default)]
struct Builder {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    arrows: Vec<(String, String, String, usize)>,
    relations: Vec<(String, String, usize)>,
}

impl Builder {
    fn vertex(&mut self, name: String, line: usize) -> Result<()> {
        if self.vertex_index.contains_key(&name) {
            return Err(Error::Duplicate {
                kind: "vertex",
                name,
                line,
            });
        }
        self.vertex_index.insert(name.clone(), self.vertices.len());
        self.vertices.push(name);
        Ok(())
    }

    fn finish(self) -> Result<GentlePresentation> {
        let resolve = |name: &str, line: usize| {
            self.vertex_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownVertex {
                    name: name.to_owned(),
                    line,
                })
        };
        let mut arrows = Vec::with_capacity(self.arrows.len());
        let mut arrow_index: HashMap<&str, usize> = HashMap::new();
        for (name, s, t, line) in &self.arrows {
            if arrow_index.contains_key(name.as_str()) {
                return Err(Error::Duplicate {
                    kind: "arrow",
                    name: name.clone(),
                    line: *line,
                });
            }
            arrow_index.insert(name, arrows.len());
            arrows.push(Arrow {
                name: name.clone(),
                source: resolve(s, *line)?,
                target: resolve(t, *line)?,
            });
        }
        if self.vertices.is_empty() {
            return Err(Error::EmptyQuiver);
        }
        let mut relations = BTreeSet::new();
        for (beta, alpha, line) in &self.relations {
            let lookup = |name: &str| {
                arrow_index
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::UnknownArrow {
                        name: name.to_owned(),
                        line: *line,
                    })
            };
            let (b, a) = (lookup(beta)?, lookup(alpha)?);
            if arrows[b].source != arrows[a].target {
                return Err(Error::NotComposable {
                    beta: beta.clone(),
                    alpha: alpha.clone(),
                    line: *line,
                });
            }
            if !relations.insert((b, a)) {
                return Err(Error::Duplicate {
                    kind: "relation",
                    name: format!("{beta} {alpha}"),
                    line: *line,
                });
            }
        }
        Ok(GentlePresentation {
            vertices: self.vertices,
            arrows,
            relations,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Transition,
    Crossing,
}

/// Transition/crossing tag for every vertex, indexed like the presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClass {
    kinds: Vec<VertexKind>,
}

impl VertexClass {
    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn is_transition(&self, v: usize) -> bool {
        self.kinds[v] == VertexKind::Transition
    }

    pub fn transition_vertices(&self) -> Vec<usize> {
        (0..self.kinds.len()).filter(|&v| self.is_transition(v)).collect()
    }

    pub fn crossing_vertices(&self) -> Vec<usize> {
        (0..self.kinds.len()).filter(|&v| !self.is_transition(v)).collect()
    }
}

/// Local shape of a vertex: `Some(kind)` if it is a transition or crossing vertex.
pub fn vertex_kind(p: &GentlePresentation, v: usize) -> Option<VertexKind> {
    let ins: Vec<usize> = p.in_arrows(v).collect();
    let outs: Vec<usize> = p.out_arrows(v).collect();
    match (ins.as_slice(), outs.as_slice()) {
        (&[alpha], &[beta]) if !p.is_relation(beta, alpha) => Some(VertexKind::Transition),
        (&[a1, a2], &[b1, b2]) => {
            // either b1∘a1, b2∘a2 in I and the cross terms not, or the other diagonal
            let straight = p.is_relation(b1, a1)
                && p.is_relation(b2, a2)
                && !p.is_relation(b1, a2)
                && !p.is_relation(b2, a1);
            let crossed = p.is_relation(b1, a2)
                && p.is_relation(b2, a1)
                && !p.is_relation(b1, a1)
                && !p.is_relation(b2, a2);
            (straight || crossed).then_some(VertexKind::Crossing)
        }
        _ => None,
    }
}

/// Checks the local gentleness conditions.
pub fn check_gentle(p: &GentlePresentation) -> Result<()> {
    let fail = |v: usize, detail: String| Error::NotGentle {
        vertex: p.vertices[v].clone(),
        detail,
    };
    for v in 0..p.vertex_count() {
        let ins: Vec<usize> = p.in_arrows(v).collect();
        let outs: Vec<usize> = p.out_arrows(v).collect();
        if ins.len() > 2 {
            return Err(fail(v, format!("{} arrows end here", ins.len())));
        }
        if outs.len() > 2 {
            return Err(fail(v, format!("{} arrows start here", outs.len())));
        }
        for &alpha in &ins {
            let zero = outs.iter().filter(|&&b| p.is_relation(b, alpha)).count();
            let nonzero = outs.len() - zero;
            if zero > 1 || nonzero > 1 {
                return Err(fail(
                    v,
                    format!(
                        "arrow {} has {zero} zero and {nonzero} nonzero continuations",
                        p.arrow_name(alpha)
                    ),
                ));
            }
        }
        for &beta in &outs {
            let zero = ins.iter().filter(|&&a| p.is_relation(beta, a)).count();
            let nonzero = ins.len() - zero;
            if zero > 1 || nonzero > 1 {
                return Err(fail(
                    v,
                    format!(
                        "arrow {} has {zero} zero and {nonzero} nonzero predecessors",
                        p.arrow_name(beta)
                    ),
                ));
            }
        }
    }
    Ok(())
}

/// A permitted thread: a maximal non-cyclic path avoiding the relations.
/// Trivial threads (no arrows) sit at `vertex`; otherwise `vertex` is the start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermittedThread {
    pub arrows: Vec<usize>,
    pub vertex: usize,
}

/// All permitted threads of a gentle quiver, nontrivial ones first.
pub fn permitted_threads(p: &GentlePresentation) -> Vec<PermittedThread> {
    let mut out = Vec::new();
    for start in 0..p.arrow_count() {
        if p.permitted_predecessor(start).is_some() {
            continue;
        }
        let mut path = vec![start];
        let mut cur = start;
        while let Some(next) = p.permitted_successor(cur) {
            if path.contains(&next) || path.len() > p.arrow_count() {
                break;
            }
            path.push(next);
            cur = next;
        }
        out.push(PermittedThread {
            arrows: path,
            vertex: p.source(start),
        });
    }
    for v in 0..p.vertex_count() {
        let ins: Vec<usize> = p.in_arrows(v).collect();
        let outs: Vec<usize> = p.out_arrows(v).collect();
        let trivial = match (ins.as_slice(), outs.as_slice()) {
            (&[alpha], &[beta]) => p.is_relation(beta, alpha),
            (i, o) => i.len() <= 1 && o.len() <= 1,
        };
        if trivial {
            out.push(PermittedThread {
                arrows: Vec::new(),
                vertex: v,
            });
        }
    }
    out
}

/// The three combinatorial characterisations of a gentle order, each
/// evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GentleOrderConditions {
    pub every_vertex_transition_or_crossing: bool,
    pub no_permitted_threads: bool,
    pub every_arrow_on_permitted_cycle: bool,
}

impl GentleOrderConditions {
    pub fn evaluate(p: &GentlePresentation) -> Self {
        let every_vertex_transition_or_crossing =
            (0..p.vertex_count()).all(|v| vertex_kind(p, v).is_some());
        let no_permitted_threads = permitted_threads(p).is_empty();
        let on_cycle = |a: usize| {
            let mut cur = a;
            for _ in 0..p.arrow_count() {
                match p.permitted_successor(cur) {
                    Some(next) if next == a => return true,
                    Some(next) => cur = next,
                    None => return false,
                }
            }
            false
        };
        // an arrow-free vertex lies on no permitted cycle
        let every_arrow_on_permitted_cycle = (0..p.arrow_count()).all(on_cycle)
            && (0..p.vertex_count()).all(|v| p.out_arrows(v).next().is_some());
        Self {
            every_vertex_transition_or_crossing,
            no_permitted_threads,
            every_arrow_on_permitted_cycle,
        }
    }

    pub fn all(&self) -> bool {
        self.every_vertex_transition_or_crossing
            && self.no_permitted_threads
            && self.every_arrow_on_permitted_cycle
    }

    pub fn none(&self) -> bool {
        !self.every_vertex_transition_or_crossing
            && !self.no_permitted_threads
            && !self.every_arrow_on_permitted_cycle
    }
}

/// Validates gentleness and the gentle-order property, returning the vertex
/// classification. The three characterisations are cross-checked.
pub fn validate_gentle_order(p: &GentlePresentation) -> Result<VertexClass> {
    check_gentle(p)?;
    let conditions = GentleOrderConditions::evaluate(p);
    if conditions.all() {
        let kinds = (0..p.vertex_count())
            .map(|v| vertex_kind(p, v).expect("checked above"))
            .collect();
        return Ok(VertexClass { kinds });
    }
    if !conditions.none() {
        return Err(Error::Inconsistent(format!(
            "gentle-order characterisations disagree: {conditions:?}"
        )));
    }
    let thread = permitted_threads(p)
        .into_iter()
        .next()
        .expect("condition failed without a permitted thread");
    Err(Error::NotGentleOrder {
        thread: thread
            .arrows
            .iter()
            .map(|&a| p.arrow_name(a).to_owned())
            .collect(),
        vertex: p.vertices[thread.vertex].clone(),
    })
}

/// Half-edges are arrows (same indices). `sigma(a)` is the permitted
/// successor; `theta(a)` is the other arrow leaving a crossing vertex, or `a`
/// itself at a transition vertex.
pub fn to_half_edges(p: &GentlePresentation, classes: &VertexClass) -> HalfEdgeSystem {
    let n = p.arrow_count();
    let sigma: Vec<usize> = (0..n)
        .map(|a| {
            p.permitted_successor(a)
                .expect("every arrow of a gentle order has a permitted successor")
        })
        .collect();
    let theta: Vec<usize> = (0..n)
        .map(|a| match classes.kind(p.source(a)) {
            VertexKind::Transition => a,
            VertexKind::Crossing => p
                .out_arrows(p.source(a))
                .find(|&b| b != a)
                .expect("crossing vertices have two outgoing arrows"),
        })
        .collect();
    HalfEdgeSystem::new(
        Permutation::new(sigma).expect("permitted successor is a bijection"),
        Permutation::new(theta).expect("theta is a bijection"),
    )
    .expect("theta is an involution")
}

/// The gentle order of a half-edge system: vertices are theta-orbits (named
/// `v1, v2, ..` in canonical order), arrows are half-edges (named `1, 2, ..`).
pub fn from_half_edges(h: &HalfEdgeSystem) -> GentlePresentation {
    let edges = h.theta().orbits();
    let vertex_of = |x: usize| edges.orbit_of(x).expect("theta covers every point");
    let arrows: Vec<Arrow> = (0..h.len())
        .map(|x| Arrow {
            name: (x + 1).to_string(),
            source: vertex_of(x),
            target: vertex_of(h.sigma().apply(x)),
        })
        .collect();
    let mut relations = BTreeSet::new();
    for alpha in 0..h.len() {
        for beta in 0..h.len() {
            if arrows[beta].source == arrows[alpha].target && beta != h.sigma().apply(alpha) {
                relations.insert((beta, alpha));
            }
        }
    }
    GentlePresentation {
        vertices: (1..=edges.len()).map(|i| format!("v{i}")).collect(),
        arrows,
        relations,
    }
}

/// A validated gentle order together with its vertex classes and half-edge
/// system. All invariant computations start from this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GentleOrder {
    presentation: GentlePresentation,
    classes: VertexClass,
    system: HalfEdgeSystem,
}

impl GentleOrder {
    pub fn new(presentation: GentlePresentation) -> Result<Self> {
        let classes = validate_gentle_order(&presentation)?;
        let system = to_half_edges(&presentation, &classes);
        Ok(Self {
            presentation,
            classes,
            system,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(GentlePresentation::parse(text)?)
    }

    /// Every half-edge system is the system of a gentle order.
    pub fn from_system(system: HalfEdgeSystem) -> Self {
        let presentation = from_half_edges(&system);
        let classes = validate_gentle_order(&presentation)
            .expect("presentations built from half-edge systems are gentle orders");
        Self {
            presentation,
            classes,
            system,
        }
    }

    /// Accepts either `.hep` or `.gq` text, detected by the first keyword.
    pub fn parse_any(text: &str) -> Result<Self> {
        let first = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .unwrap_or("");
        if first.starts_with("halfedges") {
            Ok(Self::from_system(HalfEdgeSystem::parse_hep(text)?))
        } else {
            Self::parse(text)
        }
    }

    pub fn presentation(&self) -> &GentlePresentation {
        &self.presentation
    }

    pub fn classes(&self) -> &VertexClass {
        &self.classes
    }

    pub fn system(&self) -> &HalfEdgeSystem {
        &self.system
    }

    pub fn is_connected(&self) -> bool {
        self.presentation.is_connected()
    }

    pub fn component_count(&self) -> usize {
        self.presentation.components().len()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        match self.component_count() {
            1 => Ok(()),
            components => Err(Error::Disconnected { components }),
        }
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.presentation.vertices()[v]
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        self.presentation.arrow_name(a)
    }
}
