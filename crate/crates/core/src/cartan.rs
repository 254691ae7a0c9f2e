//! Truncated graph of a gentle order, its incidence matrix `B` and Cartan
//! matrix `C = B·Bᵀ`, with closed-form rank and determinant.
//!
//! Graph vertices are the permitted cycles (sigma-orbits, canonical order);
//! graph edges are the quiver vertices (file order). An edge meets the graph
//! vertices containing the arrows that leave it: a crossing vertex gives an
//! ordinary edge or a loop, a transition vertex gives a truncated edge.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::presentation::{GentleOrder, GentlePresentation};

/// Default arrow bound for [`cartan_path_oracle`].
pub const PATH_ORACLE_BOUND: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Ordinary,
    Loop,
    Truncated,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeCensus {
    pub ordinary: usize,
    #[serde(rename = "loop")]
    pub loops: usize,
    pub truncated: usize,
}

/// A graph whose edges meet one or two vertices. `mu[e][v]` is the
/// multiplicity of vertex `v` on edge `e`; every row sums to 1 or 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedGraph {
    vertex_count: usize,
    mu: Vec<Vec<u8>>,
}

impl TruncatedGraph {
    pub fn new(vertex_count: usize, mu: Vec<Vec<u8>>) -> Result<Self> {
        for (e, row) in mu.iter().enumerate() {
            if row.len() != vertex_count {
                return Err(Error::InvalidConfig(format!(
                    "edge {e} has {} multiplicities for {vertex_count} vertices",
                    row.len()
                )));
            }
            let total: u32 = row.iter().map(|&x| u32::from(x)).sum();
            if !(1..=2).contains(&total) {
                return Err(Error::InvalidConfig(format!(
                    "edge {e} has total multiplicity {total}, expected 1 or 2"
                )));
            }
        }
        Ok(Self { vertex_count, mu })
    }

    /// Builds a graph from edge endpoint lists: `[v]` is truncated, `[v, v]`
    /// a loop, `[u, v]` ordinary.
    pub fn from_edges(vertex_count: usize, edges: &[Vec<usize>]) -> Result<Self> {
        let mu = edges
            .iter()
            .map(|ends| {
                let mut row = vec![0u8; vertex_count];
                for &v in ends {
                    if v >= vertex_count {
                        return Err(Error::InvalidConfig(format!("edge endpoint {v} out of range")));
                    }
                    row[v] += 1;
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertex_count, mu)
    }

    pub fn from_order(order: &GentleOrder) -> Self {
        let p = order.presentation();
        let cycles = order.system().sigma().orbits();
        let mu = (0..p.vertex_count())
            .map(|v| {
                let mut row = vec![0u8; cycles.len()];
                for a in p.out_arrows(v) {
                    row[cycles.orbit_of(a).expect("sigma covers all arrows")] += 1;
                }
                row
            })
            .collect();
        Self {
            vertex_count: cycles.len(),
            mu,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self, edge: usize, vertex: usize) -> u8 {
        self.mu[edge][vertex]
    }

    /// Vertices met by an edge, with repetition for loops.
    pub fn endpoints(&self, edge: usize) -> Vec<usize> {
        self.mu[edge]
            .iter()
            .enumerate()
            .flat_map(|(v, &k)| std::iter::repeat_n(v, usize::from(k)))
            .collect()
    }

    pub fn edge_class(&self, edge: usize) -> EdgeClass {
        match self.endpoints(edge).as_slice() {
            [_] => EdgeClass::Truncated,
            [u, v] if u == v => EdgeClass::Loop,
            _ => EdgeClass::Ordinary,
        }
    }

    pub fn edge_census(&self) -> EdgeCensus {
        let mut c = EdgeCensus::default();
        for e in 0..self.edge_count() {
            match self.edge_class(e) {
                EdgeClass::Ordinary => c.ordinary += 1,
                EdgeClass::Loop => c.loops += 1,
                EdgeClass::Truncated => c.truncated += 1,
            }
        }
        c
    }

    /// Connected components, ordered by least vertex.
    pub fn components(&self) -> Vec<GraphComponent> {
        let n = self.vertex_count;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut edges_at: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in 0..self.edge_count() {
            let ends = self.endpoints(e);
            edges_at[ends[0]].push(e);
            if let [u, v] = ends[..] {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut side: Vec<Option<bool>> = vec![None; n];
        let mut out = Vec::new();
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            let mut stack = vec![root];
            let mut vertices = Vec::new();
            let mut bipartite = true;
            while let Some(v) = stack.pop() {
                vertices.push(v);
                let s = side[v].expect("visited");
                for &w in &adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!s);
                            stack.push(w);
                        }
                        Some(t) if t == s => bipartite = false,
                        Some(_) => {}
                    }
                }
            }
            vertices.sort_unstable();
            let mut edges: Vec<usize> = vertices.iter().flat_map(|&v| edges_at[v].iter().copied()).collect();
            edges.sort_unstable();
            let truncated = edges
                .iter()
                .filter(|&&e| self.edge_class(e) == EdgeClass::Truncated)
                .count();
            out.push(GraphComponent {
                vertices,
                edges,
                truncated,
                bipartite,
            });
        }
        out
    }
}

/// One connected component of a truncated graph. `bipartite` refers to the
/// glued edges; a loop makes a component non-bipartite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphComponent {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub truncated: usize,
    pub bipartite: bool,
}

impl GraphComponent {
    pub fn glued(&self) -> usize {
        self.edges.len() - self.truncated
    }

    pub fn is_tree(&self) -> bool {
        self.glued() + 1 == self.vertices.len()
    }

    pub fn det_case(&self) -> DetCase {
        let (p, n) = (self.vertices.len(), self.edges.len());
        if self.truncated == 0 && self.is_tree() {
            DetCase::TreeWithoutTruncated { edges: n }
        } else if self.truncated == 0 && !self.bipartite && p == n {
            DetCase::OddCycleSquare
        } else if self.truncated == 1 && self.is_tree() {
            DetCase::TreeOneTruncated
        } else {
            DetCase::Other
        }
    }
}

/// Case of the closed-form determinant of `C` on a connected graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum DetCase {
    /// `det C = n + 1`.
    TreeWithoutTruncated { edges: usize },
    /// An odd cycle, no truncated edges, as many vertices as edges: `det C = 4`.
    OddCycleSquare,
    /// `det C = 1`.
    TreeOneTruncated,
    /// `det C = 0`.
    Other,
}

impl DetCase {
    pub fn det_c(self) -> BigInt {
        match self {
            DetCase::TreeWithoutTruncated { edges } => BigInt::from(edges + 1),
            DetCase::OddCycleSquare => BigInt::from(4),
            DetCase::TreeOneTruncated => BigInt::one(),
            DetCase::Other => BigInt::zero(),
        }
    }

    /// `|det B|` for a connected graph with square `B`.
    pub fn abs_det_b(self) -> u32 {
        match self {
            DetCase::OddCycleSquare => 2,
            DetCase::TreeOneTruncated => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for DetCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetCase::TreeWithoutTruncated { edges } => {
                write!(f, "tree without truncated edges, n={edges}")
            }
            DetCase::OddCycleSquare => f.write_str("odd cycle, no truncated edges, |V|=|E|"),
            DetCase::TreeOneTruncated => f.write_str("tree with one truncated edge"),
            DetCase::Other => f.write_str("other"),
        }
    }
}

/// `|E| × |V|` matrix of multiplicities.
pub fn incidence_matrix(g: &TruncatedGraph) -> IntegerMatrix {
    IntegerMatrix::from_rows(g.vertex_count, &g.mu)
}

/// `B·Bᵀ`, indexed by edges (quiver vertices).
pub fn cartan_matrix(g: &TruncatedGraph) -> IntegerMatrix {
    let b = incidence_matrix(g);
    &b * &b.transpose()
}

/// Components that are bipartite and have no truncated edges.
pub fn graph_bc(g: &TruncatedGraph) -> usize {
    g.components()
        .iter()
        .filter(|c| c.bipartite && c.truncated == 0)
        .count()
}

/// `|V| − bc(Gr)`, the rank of both `B` and `C`.
pub fn rank_formula(g: &TruncatedGraph) -> usize {
    g.vertex_count - graph_bc(g)
}

pub fn rank_oracle(m: &IntegerMatrix) -> usize {
    m.rank()
}

/// Closed-form `det C`, multiplied over components.
pub fn det_formula(g: &TruncatedGraph) -> BigInt {
    g.components().iter().map(|c| c.det_case().det_c()).product()
}

pub fn det_oracle(m: &IntegerMatrix) -> BigInt {
    m.det()
}

/// Closed-form `|det B|` when `B` is square. A component with more edges
/// than vertices forces zero.
pub fn abs_det_b_formula(g: &TruncatedGraph) -> Option<BigInt> {
    (g.edge_count() == g.vertex_count).then(|| {
        g.components()
            .iter()
            .map(|c| {
                if c.edges.len() == c.vertices.len() {
                    BigInt::from(c.det_case().abs_det_b())
                } else {
                    BigInt::zero()
                }
            })
            .product()
    })
}

/// Counts, for each pair of quiver vertices, the paths from `j` to `i` of
/// length at least one that avoid relations and use no arrow twice.
pub fn cartan_path_oracle(p: &GentlePresentation) -> Result<IntegerMatrix> {
    cartan_path_oracle_bounded(p, PATH_ORACLE_BOUND)
}

pub fn cartan_path_oracle_bounded(p: &GentlePresentation, bound: usize) -> Result<IntegerMatrix> {
    if p.arrow_count() > bound {
        return Err(Error::InstanceTooLarge {
            arrows: p.arrow_count(),
            bound,
        });
    }
    let n = p.vertex_count();
    let mut counts = vec![vec![0i64; n]; n];
    let mut used = vec![false; p.arrow_count()];
    for a in 0..p.arrow_count() {
        used[a] = true;
        extend(p, p.source(a), a, &mut used, &mut counts);
        used[a] = false;
    }
    Ok(IntegerMatrix::from_rows(n, &counts))
}

fn extend(p: &GentlePresentation, start: usize, last: usize, used: &mut [bool], counts: &mut [Vec<i64>]) {
    counts[p.target(last)][start] += 1;
    let next: Vec<usize> = p
        .out_arrows(p.target(last))
        .filter(|&b| !used[b] && !p.is_relation(b, last))
        .collect();
    for b in next {
        used[b] = true;
        extend(p, start, b, used, counts);
        used[b] = false;
    }
}

/// Everything the Cartan module computes for one order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanData {
    pub incidence: IntegerMatrix,
    pub cartan: IntegerMatrix,
    pub graph_vertices: usize,
    pub edge_census: EdgeCensus,
    pub graph_bc: usize,
    pub rank: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub det: BigInt,
    pub det_cases: Vec<DetCase>,
}

pub(crate) fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

/// JSON number when the value fits in `i64`, decimal string otherwise.
pub(crate) fn bigint_json(x: &BigInt) -> serde_json::Value {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}

impl CartanData {
    /// Matrices and closed-form values; no elimination is run.
    pub fn compute(order: &GentleOrder) -> Self {
        let g = TruncatedGraph::from_order(order);
        Self {
            incidence: incidence_matrix(&g),
            cartan: cartan_matrix(&g),
            graph_vertices: g.vertex_count(),
            edge_census: g.edge_census(),
            graph_bc: graph_bc(&g),
            rank: rank_formula(&g),
            det: det_formula(&g),
            det_cases: g.components().iter().map(GraphComponent::det_case).collect(),
        }
    }
}

/// One comparison between a closed form and an exact computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub name: &'static str,
    pub formula: String,
    pub oracle: String,
    pub pass: bool,
}

/// Runs exact rank and determinant on `B` and `C` and, when the quiver is
/// small enough, the path-count oracle.
pub fn oracle_checks(order: &GentleOrder, data: &CartanData) -> Vec<OracleCheck> {
    let mut out = Vec::new();
    let mut push = |name, formula: String, oracle: String| {
        let pass = formula == oracle;
        out.push(OracleCheck {
            name,
            formula,
            oracle,
            pass,
        });
    };
    push("rank C", data.rank.to_string(), rank_oracle(&data.cartan).to_string());
    push(
        "rank B",
        data.rank.to_string(),
        rank_oracle(&data.incidence).to_string(),
    );
    push("det C", data.det.to_string(), det_oracle(&data.cartan).to_string());
    let g = TruncatedGraph::from_order(order);
    if let Some(d) = abs_det_b_formula(&g) {
        push(
            "|det B|",
            d.to_string(),
            num_traits::Signed::abs(&det_oracle(&data.incidence)).to_string(),
        );
    }
    push(
        "C = B·Bᵀ symmetric",
        "true".into(),
        data.cartan.is_symmetric().to_string(),
    );
    match cartan_path_oracle(order.presentation()) {
        Ok(paths) => push(
            "path count = C",
            "true".into(),
            (paths == data.cartan).to_string(),
        ),
        Err(Error::InstanceTooLarge { .. }) => {}
        Err(e) => push("path count = C", "true".into(), e.to_string()),
    }
    out
}
