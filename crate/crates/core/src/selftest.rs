//! Property checks on random gentle orders.
//!
//! Each instance goes through every cross-check the crate can make against
//! itself: conversions, formula against exact linear algebra, path-walking
//! against orbit counting, and relabelling invariance.

use rayon::prelude::*;
use serde::Serialize;

use crate::cartan::{
    abs_det_b_formula, cartan_matrix, cartan_path_oracle, det_formula, det_oracle, graph_bc, incidence_matrix,
    rank_formula, rank_oracle, TruncatedGraph, PATH_ORACLE_BOUND,
};
use crate::halfedge::HalfEdgeSystem;
use crate::invariants::{
    ag_first, ag_first_from_threads, ag_second, bicolorability, forbidden_threads, hereditary_routes,
    InvariantBundle,
};
use crate::presentation::{to_half_edges, GentleOrder, GentleOrderConditions};
use crate::randgen::corpus;
use crate::screen::{self_screen, Verdict};
use crate::surface::{dictionary_row_check, surface_profile, RibbonData};

/// Outcome of one named check on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &'static str, left: T, right: T) {
        let pass = left == right;
        let detail = if pass {
            String::new()
        } else {
            format!("{left:?} != {right:?}")
        };
        self.0.push(CheckResult { name, pass, detail });
    }

    fn holds(&mut self, name: &'static str, pass: bool, detail: impl FnOnce() -> String) {
        let detail = if pass { String::new() } else { detail() };
        self.0.push(CheckResult { name, pass, detail });
    }
}

/// Runs every check on a connected system.
pub fn check_instance(h: &HalfEdgeSystem) -> Vec<CheckResult> {
    let mut c = Checks(Vec::new());
    let order = GentleOrder::from_system(h.clone());
    let p = order.presentation();

    // conversions
    c.eq("round trip", to_half_edges(p, order.classes()), h.clone());
    c.holds("gentle-order conditions", GentleOrderConditions::evaluate(p).all(), || {
        format!("{:?}", GentleOrderConditions::evaluate(p))
    });

    // linear algebra
    let g = TruncatedGraph::from_order(&order);
    let b = incidence_matrix(&g);
    let cm = cartan_matrix(&g);
    let bundle = InvariantBundle::compute(&order);
    let bc = bundle.bc.map(usize::from);
    c.eq("rank C = formula", rank_oracle(&cm), rank_formula(&g));
    if let Some(bc) = bc {
        c.eq("rank C = pc - bc", rank_oracle(&cm), bundle.pc - bc);
        c.eq("bc arrows = bc graph", bc, graph_bc(&g));
        c.eq("rank B = |V| - bc", rank_oracle(&b), g.vertex_count() - bc);
    }
    c.eq("det C = formula", det_oracle(&cm), det_formula(&g));
    if let Some(d) = abs_det_b_formula(&g) {
        c.eq("|det B| = formula", num_traits::Signed::abs(&det_oracle(&b)), d);
    }
    c.holds("C symmetric", cm.is_symmetric(), String::new);
    if p.arrow_count() <= PATH_ORACLE_BOUND {
        match cartan_path_oracle(p) {
            Ok(paths) => c.eq("path oracle = B·Bᵀ", paths, cm.clone()),
            Err(e) => c.holds("path oracle = B·Bᵀ", false, || e.to_string()),
        }
    }

    // counting identities
    let counts = bundle.counts;
    let sum_m = |v: &[crate::AgEntry]| v.iter().map(|e| e.m).sum::<usize>();
    c.eq("Σ AG1 m = |Q1ft|", sum_m(&bundle.ag1), counts.thread_arrows);
    c.eq(
        "Σ AG1 n = |Q0t|",
        bundle.ag1.iter().map(|e| e.n).sum::<usize>(),
        counts.transition_vertices,
    );
    c.eq("Σ AG2 m = |Q1fc|", sum_m(&bundle.ag2), counts.cycle_arrows);
    c.eq(
        "|Q1| = 2|Q0c| + |Q0t|",
        counts.arrows,
        2 * counts.crossing_vertices + counts.transition_vertices,
    );
    c.eq("|Q1| = Σ profile", counts.arrows, bundle.profile.iter().sum::<usize>());
    c.eq("#threads = |Q0t|", forbidden_threads(&order).len(), counts.transition_vertices);
    let r = RibbonData::new(h);
    c.eq("|AG1| = |F_b|", bundle.ag1.len(), r.boundary_faces());
    c.eq("|AG2| = |F_p|", bundle.ag2.len(), r.punctured_faces());
    c.eq("AG1 orbits = AG1 threads", ag_first(h), ag_first_from_threads(&order));
    c.eq("AG2 entries", ag_second(h), bundle.ag2.clone());

    // hereditary detection
    let routes = hereditary_routes(&order);
    c.holds("hereditary routes agree", routes.iter().all(|&x| x == routes[0]), || {
        format!("{routes:?}")
    });
    if !bundle.is_hereditary() {
        c.holds("m > n off hereditary", bundle.ag1.iter().all(|e| e.m > e.n), || {
            format!("{:?}", bundle.ag1)
        });
    }

    // surface
    let dict = dictionary_row_check(&order);
    c.holds("dictionary rows", dict.all_pass(), || dict.to_string());
    if order.is_connected() {
        match surface_profile(h) {
            Ok(s) => c.eq("χ = 2 − 2g", s.euler, 2 - 2 * s.genus as i64),
            Err(e) => c.holds("χ = 2 − 2g", false, || e.to_string()),
        }
        if let Ok(bc1) = bicolorability(&order) {
            c.eq("bicoloring witness", bc1.coloring.is_some(), bc1.bc == 1);
        }
        match self_screen(&order, h.len() as u64) {
            Ok(rep) => c.eq("self screen", rep.verdict, Verdict::Inconclusive),
            Err(e) => c.holds("self screen", false, || e.to_string()),
        }
    }
    c.0
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceFailure {
    pub instance: usize,
    pub system: String,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestSummary {
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<InstanceFailure>,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `cases` connected random systems with up to `max_half_edges`
/// half-edges, in parallel.
pub fn run(cases: usize, seed: u64, max_half_edges: usize) -> SelftestSummary {
    let systems = corpus(cases, max_half_edges, seed, true);
    let results: Vec<(usize, Vec<CheckResult>)> = systems
        .par_iter()
        .enumerate()
        .map(|(i, h)| (i, check_instance(h)))
        .collect();
    let checks = results.iter().map(|(_, r)| r.len()).sum();
    let failures = results
        .into_iter()
        .flat_map(|(i, rs)| {
            let system = systems[i].to_hep();
            rs.into_iter().filter(|r| !r.pass).map(move |r| InstanceFailure {
                instance: i,
                system: system.clone(),
                check: r.name,
                detail: r.detail,
            })
        })
        .collect();
    SelftestSummary {
        cases,
        checks,
        failures,
    }
}
