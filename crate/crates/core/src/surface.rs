//! The truncated ribbon graph of a half-edge system and the surface it
//! defines.
//!
//! Vertices, edges and faces are the orbits of sigma, theta and
//! `phi = theta∘sigma`. An edge is truncated when theta fixes its half-edge.
//! A face is a boundary face when it contains a truncated half-edge and a
//! punctured face otherwise.
//!
//! # Genus convention
//!
//! The genus is that of the closed surface obtained by capping every
//! boundary face with a disc. A truncated edge is a half-edge dangling into a
//! boundary face and does not separate anything, so it is dropped from the
//! count:
//!
//! ```text
//! χ = |V| − |E_g| + |F| = |V| − |E| + |E_t| + |F|,   g = (2 − χ) / 2
//! ```
//!
//! Removing the truncated half-edges from a connected system leaves a ribbon
//! graph with the same vertex and face sets (or a single vertex with one face
//! in the hereditary case), so `χ` is even and `g ≥ 0`. With `|E|` in place of
//! `|E_g|` the hereditary orders would get genus `ℓ/2`.

use std::fmt;

use serde::Serialize;

use crate::cartan::{graph_bc, rank_oracle, cartan_matrix, EdgeCensus, EdgeClass, TruncatedGraph};
use crate::error::{Error, Result};
use crate::halfedge::HalfEdgeSystem;
use crate::invariants::{ag_first_from_threads, bicolorability, forbidden_cycles, forbidden_threads};
use crate::perm::OrbitPartition;
use crate::presentation::GentleOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceClass {
    Boundary,
    Punctured,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonData {
    half_edges: usize,
    vertices: OrbitPartition,
    edges: OrbitPartition,
    faces: OrbitPartition,
    edge_classes: Vec<EdgeClass>,
    face_classes: Vec<FaceClass>,
}

impl RibbonData {
    pub fn new(h: &HalfEdgeSystem) -> Self {
        let vertices = h.sigma().orbits();
        let edges = h.theta().orbits();
        let faces = h.phi().orbits();
        let edge_classes = edges
            .iter()
            .map(|e| match e[..] {
                [_] => EdgeClass::Truncated,
                [a, b] if vertices.orbit_of(a) == vertices.orbit_of(b) => EdgeClass::Loop,
                _ => EdgeClass::Ordinary,
            })
            .collect();
        let face_classes = faces
            .iter()
            .map(|f| {
                if f.iter().any(|&x| h.is_theta_fixed(x)) {
                    FaceClass::Boundary
                } else {
                    FaceClass::Punctured
                }
            })
            .collect();
        Self {
            half_edges: h.len(),
            vertices,
            edges,
            faces,
            edge_classes,
            face_classes,
        }
    }

    pub fn half_edges(&self) -> usize {
        self.half_edges
    }

    pub fn vertices(&self) -> &OrbitPartition {
        &self.vertices
    }

    pub fn edges(&self) -> &OrbitPartition {
        &self.edges
    }

    pub fn faces(&self) -> &OrbitPartition {
        &self.faces
    }

    pub fn edge_classes(&self) -> &[EdgeClass] {
        &self.edge_classes
    }

    pub fn face_classes(&self) -> &[FaceClass] {
        &self.face_classes
    }

    pub fn edge_census(&self) -> EdgeCensus {
        let mut c = EdgeCensus::default();
        for class in &self.edge_classes {
            match class {
                EdgeClass::Ordinary => c.ordinary += 1,
                EdgeClass::Loop => c.loops += 1,
                EdgeClass::Truncated => c.truncated += 1,
            }
        }
        c
    }

    pub fn truncated_edges(&self) -> usize {
        self.edge_census().truncated
    }

    pub fn glued_edges(&self) -> usize {
        self.edges.len() - self.truncated_edges()
    }

    fn faces_of(&self, class: FaceClass) -> impl Iterator<Item = &[usize]> + '_ {
        self.faces
            .iter()
            .zip(&self.face_classes)
            .filter(move |(_, &c)| c == class)
            .map(|(f, _)| f.as_slice())
    }

    pub fn boundary_faces(&self) -> usize {
        self.faces_of(FaceClass::Boundary).count()
    }

    pub fn punctured_faces(&self) -> usize {
        self.faces_of(FaceClass::Punctured).count()
    }

    /// Total size of the boundary faces.
    pub fn boundary_face_size(&self) -> usize {
        self.faces_of(FaceClass::Boundary).map(<[usize]>::len).sum()
    }

    /// Total size of the punctured faces.
    pub fn punctured_face_size(&self) -> usize {
        self.faces_of(FaceClass::Punctured).map(<[usize]>::len).sum()
    }

    /// `|V| − |E| + |F|` with truncated edges counted, as printed in the
    /// Euler-Poincaré formula. Not always even.
    pub fn naive_euler(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// `|V| − |E_g| + |F|`, see the module documentation.
    pub fn euler(&self) -> i64 {
        self.vertices.len() as i64 - self.glued_edges() as i64 + self.faces.len() as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceProfile {
    pub genus: u64,
    pub euler: i64,
    pub boundary_faces: usize,
    pub punctured_faces: usize,
    pub edge_census: EdgeCensus,
}

impl SurfaceProfile {
    /// `(g, |F_b|, |F_p|)`, which determines the surface up to homeomorphism.
    pub fn triple(&self) -> (u64, usize, usize) {
        (self.genus, self.boundary_faces, self.punctured_faces)
    }
}

impl fmt::Display for SurfaceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.edge_census;
        write!(
            f,
            "genus={} euler={} boundary_faces={} punctured_faces={} edges: ordinary={} loop={} truncated={}",
            self.genus,
            self.euler,
            self.boundary_faces,
            self.punctured_faces,
            c.ordinary,
            c.loops,
            c.truncated
        )
    }
}

/// Profile of a connected system.
pub fn surface_profile(h: &HalfEdgeSystem) -> Result<SurfaceProfile> {
    let components = h.components().len();
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    profile_of(&RibbonData::new(h))
}

fn profile_of(r: &RibbonData) -> Result<SurfaceProfile> {
    let euler = r.euler();
    if euler % 2 != 0 || euler > 2 {
        return Err(Error::Inconsistent(format!(
            "Euler characteristic {euler} does not give a nonnegative integral genus"
        )));
    }
    Ok(SurfaceProfile {
        genus: ((2 - euler) / 2) as u64,
        euler,
        boundary_faces: r.boundary_faces(),
        punctured_faces: r.punctured_faces(),
        edge_census: r.edge_census(),
    })
}

/// One profile per connected component, in component order.
pub fn surface_profiles(h: &HalfEdgeSystem) -> Result<Vec<SurfaceProfile>> {
    h.component_systems()
        .iter()
        .map(|c| profile_of(&RibbonData::new(c)))
        .collect()
}

/// One row of the quiver/graph dictionary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DictionaryRow {
    pub row: &'static str,
    pub quiver: i64,
    pub graph: i64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DictionaryReport {
    pub rows: Vec<DictionaryRow>,
}

impl DictionaryReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DictionaryRow> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

impl fmt::Display for DictionaryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "{:<24} {:>6} = {:<6} {}",
                r.row,
                r.quiver,
                r.graph,
                if r.pass { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Compares quiver-side counts, found by walking paths in the presentation,
/// with the orbit counts of the ribbon graph. Failures are reported, not
/// raised.
pub fn dictionary_row_check(order: &GentleOrder) -> DictionaryReport {
    let p = order.presentation();
    let r = RibbonData::new(order.system());
    let threads = forbidden_threads(order);
    let cycles = forbidden_cycles(order);
    let transition = order.classes().transition_vertices().len();

    let g = TruncatedGraph::from_order(order);
    let rank_c = rank_oracle(&cartan_matrix(&g)) as i64;
    let bc_arrows: i64 = order
        .system()
        .component_systems()
        .into_iter()
        .map(|c| i64::from(bicolorability(&GentleOrder::from_system(c)).expect("component is connected").bc))
        .sum();

    let n = |x: usize| x as i64;
    let rows = [
        ("|Q1| = |H|", n(p.arrow_count()), n(r.half_edges())),
        ("|Q0| = |E|", n(p.vertex_count()), n(r.edges().len())),
        ("|Q0t| = |E_t|", n(transition), n(r.truncated_edges())),
        ("|Q0c| = |E_g|", n(p.vertex_count() - transition), n(r.glued_edges())),
        ("|Q0t/κ| = |F_b|", n(ag_first_from_threads(order).len()), n(r.boundary_faces())),
        ("|Q1fc/ρ| = |F_p|", n(cycles.len()), n(r.punctured_faces())),
        (
            "|Q1ft| = Σ_{F_b} |f|",
            n(threads.iter().map(|t| t.arrows.len()).sum()),
            n(r.boundary_face_size()),
        ),
        (
            "|Q1fc| = Σ_{F_p} |f|",
            n(cycles.iter().map(Vec::len).sum()),
            n(r.punctured_face_size()),
        ),
        ("pc = |V|", n(count_permitted_cycles(order)), n(r.vertices().len())),
        ("bc = |V| − rk C", bc_arrows, n(r.vertices().len()) - rank_c),
        ("bc = bc(Gr)", bc_arrows, n(graph_bc(&g))),
    ];
    DictionaryReport {
        rows: rows
            .into_iter()
            .map(|(row, quiver, graph)| DictionaryRow {
                row,
                quiver,
                graph,
                pass: quiver == graph,
            })
            .collect(),
    }
}

/// Permitted cycles found by following permitted successors in the quiver.
fn count_permitted_cycles(order: &GentleOrder) -> usize {
    let p = order.presentation();
    let mut seen = vec![false; p.arrow_count()];
    let mut count = 0;
    for start in 0..p.arrow_count() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut a = start;
        while !seen[a] {
            seen[a] = true;
            a = p
                .permitted_successor(a)
                .expect("every arrow of a gentle order has a permitted successor");
        }
    }
    count
}
