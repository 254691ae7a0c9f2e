//! Combinatorial derived invariants of gentle orders.
//!
//! A gentle order is given either as a quiver with zero relations
//! ([`GentlePresentation`], `.gq` files) or as a pair of permutations on
//! half-edges ([`HalfEdgeSystem`], `.hep` files). From either form the crate
//! computes AG-invariants, permitted-cycle counts, bicolorability, Cartan
//! matrices with exact rank and determinant, the associated ribbon surface,
//! and a screening report comparing two orders.

pub mod cartan;
pub mod cli;
pub mod error;
pub mod halfedge;
pub mod invariants;
pub mod matrix;
pub mod perm;
pub mod presentation;
pub mod randgen;
pub mod screen;
pub mod selftest;
pub mod surface;

pub use cartan::{CartanData, TruncatedGraph};
pub use error::{Error, Result};
pub use halfedge::HalfEdgeSystem;
pub use invariants::{AgEntry, InvariantBundle, OrderClass};
pub use matrix::IntegerMatrix;
pub use perm::{OrbitPartition, PartialPermutation, Permutation};
pub use randgen::{generate, GenConfig};
pub use presentation::{
    from_half_edges, to_half_edges, validate_gentle_order, GentleOrder, GentlePresentation,
    VertexClass, VertexKind,
};
pub use surface::{RibbonData, SurfaceProfile};
pub use screen::{screen, ScreeningReport, Verdict};
