//! Seeded random half-edge systems for property testing.
//!
//! Sampling is uniform over labelled pairs, not over isomorphism classes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::halfedge::HalfEdgeSystem;
use crate::perm::Permutation;

/// Rejection budget for connected sampling.
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenConfig {
    pub half_edges: usize,
    pub seed: u64,
    pub connected: bool,
    /// Probability that a half-edge is fixed by theta.
    pub transition_fraction: f64,
}

impl GenConfig {
    pub fn new(half_edges: usize, seed: u64) -> Self {
        Self {
            half_edges,
            seed,
            connected: false,
            transition_fraction: 0.25,
        }
    }

    pub fn connected(mut self, yes: bool) -> Self {
        self.connected = yes;
        self
    }

    pub fn transition_fraction(mut self, f: f64) -> Self {
        self.transition_fraction = f;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.half_edges == 0 {
            return Err(Error::InvalidConfig("half-edge count must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.transition_fraction) {
            return Err(Error::InvalidConfig(format!(
                "transition fraction {} is outside [0, 1]",
                self.transition_fraction
            )));
        }
        Ok(())
    }
}

/// Draws one system. The same configuration always gives the same system.
pub fn generate(cfg: &GenConfig) -> Result<HalfEdgeSystem> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..MAX_ATTEMPTS {
        let h = sample(cfg.half_edges, cfg.transition_fraction, &mut rng);
        if !cfg.connected || h.is_connected() {
            return Ok(h);
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
    })
}

/// Uniform sigma; theta fixes each point with probability `fraction` and
/// pairs the rest uniformly. With an odd number left over, one more point
/// is fixed.
pub fn sample<R: Rng + ?Sized>(n: usize, fraction: f64, rng: &mut R) -> HalfEdgeSystem {
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(rng);

    let mut theta: Vec<usize> = (0..n).collect();
    let mut free: Vec<usize> = (0..n).filter(|_| !rng.gen_bool(fraction)).collect();
    free.shuffle(rng);
    if free.len() % 2 == 1 {
        free.pop();
    }
    for pair in free.chunks_exact(2) {
        theta[pair[0]] = pair[1];
        theta[pair[1]] = pair[0];
    }
    HalfEdgeSystem::new(
        Permutation::new(sigma).expect("shuffled identity"),
        Permutation::new(theta).expect("disjoint transpositions"),
    )
    .expect("theta is an involution")
}

/// A stream of systems with sizes drawn from `1..=max_half_edges`.
pub fn corpus(count: usize, max_half_edges: usize, seed: u64, connected: bool) -> Vec<HalfEdgeSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let cfg = GenConfig {
                half_edges: rng.gen_range(1..=max_half_edges),
                seed: rng.gen(),
                connected,
                transition_fraction: rng.gen_range(0.0..=1.0),
            };
            generate(&cfg).expect("connected sampling succeeds quickly")
        })
        .collect()
}
