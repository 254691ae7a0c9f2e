//! Screening two gentle orders for derived equivalence.
//!
//! Every compared quantity is a derived invariant, so a single mismatch
//! proves the orders are not derived equivalent. Agreement on all of them
//! proves nothing.

use std::fmt;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cartan::{bigint_json, cartan_matrix, det_oracle, rank_oracle, TruncatedGraph};
use crate::error::Result;
use crate::invariants::{fmt_multiset, AgEntry, InvariantBundle, OrderClass};
use crate::presentation::GentleOrder;
use crate::surface::surface_profile;

/// The invariants compared by [`screen`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScreenProfile {
    pub ag1: Vec<AgEntry>,
    pub ag2: Vec<AgEntry>,
    pub pc: usize,
    pub bc: u8,
    pub transition_vertices: usize,
    pub crossing_vertices: usize,
    pub arrows: usize,
    pub cartan_rank: usize,
    #[serde(serialize_with = "crate::cartan::ser_bigint")]
    pub cartan_abs_det: BigInt,
    pub surface: (u64, usize, usize),
    pub hereditary: bool,
    pub ribbon: bool,
}

impl ScreenProfile {
    /// Requires a connected order.
    pub fn compute(order: &GentleOrder) -> Result<Self> {
        order.require_connected()?;
        let bundle = InvariantBundle::compute(order);
        let c = cartan_matrix(&TruncatedGraph::from_order(order));
        Ok(Self {
            ag1: bundle.ag1,
            ag2: bundle.ag2,
            pc: bundle.pc,
            bc: bundle.bc.expect("connected"),
            transition_vertices: bundle.counts.transition_vertices,
            crossing_vertices: bundle.counts.crossing_vertices,
            arrows: bundle.counts.arrows,
            cartan_rank: rank_oracle(&c),
            cartan_abs_det: num_traits::Signed::abs(&det_oracle(&c)),
            surface: surface_profile(order.system())?.triple(),
            hereditary: bundle.class == Some(OrderClass::Hereditary),
            ribbon: bundle.class == Some(OrderClass::Ribbon),
        })
    }

    /// `(name, display value, JSON value)` in report order.
    fn entries(&self) -> Vec<(&'static str, String, Value)> {
        let (g, fb, fp) = self.surface;
        vec![
            ("AG1", fmt_multiset(&self.ag1), json!(self.ag1)),
            ("AG2", fmt_multiset(&self.ag2), json!(self.ag2)),
            ("pc", self.pc.to_string(), json!(self.pc)),
            ("bc", self.bc.to_string(), json!(self.bc)),
            ("|Q0t|", self.transition_vertices.to_string(), json!(self.transition_vertices)),
            ("|Q0c|", self.crossing_vertices.to_string(), json!(self.crossing_vertices)),
            ("|Q1|", self.arrows.to_string(), json!(self.arrows)),
            ("rk C", self.cartan_rank.to_string(), json!(self.cartan_rank)),
            ("|det C|", self.cartan_abs_det.to_string(), bigint_json(&self.cartan_abs_det)),
            ("surface (g,Fb,Fp)", format!("({g},{fb},{fp})"), json!([g, fb, fp])),
            ("hereditary", self.hereditary.to_string(), json!(self.hereditary)),
            ("ribbon", self.ribbon.to_string(), json!(self.ribbon)),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Distinguished,
    Inconclusive,
}

impl Verdict {
    /// Exit code for scripting: 1 when distinguished, 0 otherwise.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Distinguished => 1,
            Verdict::Inconclusive => 0,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Distinguished => "DISTINGUISHED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub name: &'static str,
    pub a: Value,
    pub b: Value,
    pub equal: bool,
    #[serde(skip)]
    display: (String, String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScreeningReport {
    pub rows: Vec<ComparisonRow>,
    pub verdict: Verdict,
    pub failing: Vec<&'static str>,
}

impl ScreeningReport {
    pub fn from_profiles(a: &ScreenProfile, b: &ScreenProfile) -> Self {
        let rows: Vec<ComparisonRow> = a
            .entries()
            .into_iter()
            .zip(b.entries())
            .map(|((name, da, ja), (_, db, jb))| ComparisonRow {
                name,
                equal: ja == jb,
                a: ja,
                b: jb,
                display: (da, db),
            })
            .collect();
        let failing: Vec<&'static str> = rows.iter().filter(|r| !r.equal).map(|r| r.name).collect();
        let verdict = if failing.is_empty() {
            Verdict::Inconclusive
        } else {
            Verdict::Distinguished
        };
        Self {
            rows,
            verdict,
            failing,
        }
    }

    pub fn row(&self, name: &str) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

impl fmt::Display for ScreeningReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wa = self.rows.iter().map(|r| r.display.0.len()).max().unwrap_or(1).max(1);
        let wb = self.rows.iter().map(|r| r.display.1.len()).max().unwrap_or(1).max(1);
        writeln!(f, "{:<18} {:<wa$} {:<wb$}", "invariant", "A", "B")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<18} {:<wa$} {:<wb$} {}",
                r.name,
                r.display.0,
                r.display.1,
                if r.equal { "=" } else { "DIFFERS" }
            )?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

/// Compares two connected orders.
pub fn screen(a: &GentleOrder, b: &GentleOrder) -> Result<ScreeningReport> {
    let (pa, pb) = rayon::join(|| ScreenProfile::compute(a), || ScreenProfile::compute(b));
    Ok(ScreeningReport::from_profiles(&pa?, &pb?))
}

/// A copy of `order` with vertices and arrows shuffled and renamed.
pub fn random_relabeling<R: Rng + ?Sized>(order: &GentleOrder, rng: &mut R) -> GentleOrder {
    let p = order.presentation();
    let mut vertices: Vec<usize> = (0..p.vertex_count()).collect();
    let mut arrows: Vec<usize> = (0..p.arrow_count()).collect();
    vertices.shuffle(rng);
    arrows.shuffle(rng);
    let relabeled = p.permuted(&vertices, &arrows, |i| format!("u{i}"), |i| format!("x{i}"));
    GentleOrder::new(relabeled).expect("relabeling preserves gentleness")
}

/// Screens `order` against a random relabeling of itself. Always
/// inconclusive when every compared invariant is label-free.
pub fn self_screen(order: &GentleOrder, seed: u64) -> Result<ScreeningReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    screen(order, &random_relabeling(order, &mut rng))
}
