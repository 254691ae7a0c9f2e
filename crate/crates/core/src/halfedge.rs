//! Half-edge systems: a permutation `sigma` and an involution `theta` on a
//! finite set of half-edges, plus the derived permutations `phi = theta∘sigma`,
//! `kappa` (on theta-fixed points) and `rho` (on punctured faces).

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{parse_cycle_list, PartialPermutation, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfEdgeSystem {
    sigma: Permutation,
    theta: Permutation,
}

impl HalfEdgeSystem {
    pub fn new(sigma: Permutation, theta: Permutation) -> Result<Self> {
        if sigma.len() != theta.len() {
            return Err(Error::InvalidPermutation(format!(
                "sigma has degree {} but theta has degree {}",
                sigma.len(),
                theta.len()
            )));
        }
        if sigma.is_empty() {
            return Err(Error::InvalidPermutation("no half-edges".into()));
        }
        if !theta.is_involution() {
            return Err(Error::InvalidPermutation("theta is not an involution".into()));
        }
        Ok(Self { sigma, theta })
    }

    /// Convenience constructor from one-based cycle notation.
    pub fn from_cycles(n: usize, sigma: &str, theta: &str) -> Result<Self> {
        Self::new(
            Permutation::parse_cycles(n, sigma)?,
            Permutation::parse_cycles(n, theta)?,
        )
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn theta(&self) -> &Permutation {
        &self.theta
    }

    pub fn phi(&self) -> Permutation {
        self.theta.compose(&self.sigma)
    }

    pub fn is_theta_fixed(&self, x: usize) -> bool {
        self.theta.is_fixed(x)
    }

    pub fn theta_fixed_points(&self) -> Vec<usize> {
        self.theta.fixed_points().collect()
    }

    /// The permutation induced on theta-fixed half-edges by walking `phi`
    /// until the next theta-fixed half-edge.
    pub fn kappa(&self) -> PartialPermutation {
        let phi = self.phi();
        let map = (0..self.len())
            .map(|x| {
                if !self.is_theta_fixed(x) {
                    return None;
                }
                let mut y = phi.apply(x);
                while !self.is_theta_fixed(y) {
                    y = phi.apply(y);
                }
                Some(y)
            })
            .collect();
        PartialPermutation::from_map(map)
    }

    /// `phi` restricted to the phi-orbits that contain no theta-fixed point.
    pub fn rho(&self) -> PartialPermutation {
        let phi = self.phi();
        let faces = phi.orbits();
        let punctured: Vec<bool> = faces
            .iter()
            .map(|f| f.iter().all(|&x| !self.is_theta_fixed(x)))
            .collect();
        PartialPermutation::restrict(&phi, |x| {
            punctured[faces.orbit_of(x).expect("phi covers every point")]
        })
    }

    /// Connected components under the group generated by sigma and theta,
    /// each a sorted point list, ordered by minimal point.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for y in [self.sigma.apply(x), self.theta.apply(x)] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// The subsystem on `points` (which must be a union of components),
    /// renumbered in the order given.
    pub fn restrict_to(&self, points: &[usize]) -> Result<Self> {
        let mut local = vec![usize::MAX; self.len()];
        for (i, &x) in points.iter().enumerate() {
            local[x] = i;
        }
        let map = |p: &Permutation| -> Result<Permutation> {
            let image = points
                .iter()
                .map(|&x| match local[p.apply(x)] {
                    usize::MAX => Err(Error::InvalidPermutation(
                        "point set is not closed under sigma and theta".into(),
                    )),
                    y => Ok(y),
                })
                .collect::<Result<Vec<_>>>()?;
            Permutation::new(image)
        };
        Self::new(map(&self.sigma)?, map(&self.theta)?)
    }

    /// One subsystem per connected component, in component order.
    pub fn component_systems(&self) -> Vec<HalfEdgeSystem> {
        self.components()
            .iter()
            .map(|c| self.restrict_to(c).expect("components are closed"))
            .collect()
    }

    /// Moves half-edge `x` to `pi(x)`.
    pub fn relabel(&self, pi: &Permutation) -> Self {
        Self {
            sigma: self.sigma.conjugate_by(pi),
            theta: self.theta.conjugate_by(pi),
        }
    }

    /// A complete isomorphism invariant: two systems have equal codes iff they
    /// differ by a relabelling of half-edges.
    pub fn canonical_code(&self) -> Vec<usize> {
        let mut parts: Vec<Vec<usize>> = self
            .component_systems()
            .iter()
            .map(HalfEdgeSystem::connected_code)
            .collect();
        parts.sort();
        let mut code = Vec::new();
        for part in parts {
            code.push(part.len());
            code.extend(part);
        }
        code
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical_code() == other.canonical_code()
    }

    // Minimum over all start points of the BFS-relabelled (sigma, theta) table.
    fn connected_code(&self) -> Vec<usize> {
        let n = self.len();
        let mut best: Option<Vec<usize>> = None;
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        for start in 0..n {
            label.iter_mut().for_each(|l| *l = usize::MAX);
            order.clear();
            let mut queue = VecDeque::from([start]);
            label[start] = 0;
            order.push(start);
            while let Some(x) = queue.pop_front() {
                for y in [self.sigma.apply(x), self.theta.apply(x)] {
                    if label[y] == usize::MAX {
                        label[y] = order.len();
                        order.push(y);
                        queue.push_back(y);
                    }
                }
            }
            let code: Vec<usize> = order
                .iter()
                .flat_map(|&x| [label[self.sigma.apply(x)], label[self.theta.apply(x)]])
                .collect();
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        best.unwrap_or_default()
    }

    /// Parses the `.hep` text format:
    ///
    /// ```text
    /// halfedges 4
    /// sigma (1 2 3 4)
    /// theta (1 3)(2 4)
    /// ```
    pub fn parse_hep(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut sigma: Option<Permutation> = None;
        let mut theta: Option<Permutation> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("");
            let trimmed = line.trim_start();
            if trimmed.trim().is_empty() {
                continue;
            }
            let col = line.len() - trimmed.len() + 1;
            let (keyword, rest) = trimmed
                .split_once(char::is_whitespace)
                .unwrap_or((trimmed.trim_end(), ""));
            let syntax = |message: String| Error::Syntax {
                line: line_no,
                column: col,
                message,
            };
            match keyword {
                "halfedges" => {
                    if n.is_some() {
                        return Err(syntax("repeated `halfedges` line".into()));
                    }
                    let count: usize = rest
                        .trim()
                        .parse()
                        .map_err(|_| syntax(format!("expected a count, found \"{}\"", rest.trim())))?;
                    if count == 0 {
                        return Err(syntax("at least one half-edge is required".into()));
                    }
                    n = Some(count);
                }
                "sigma" | "theta" => {
                    let Some(count) = n else {
                        return Err(syntax(format!("`{keyword}` before `halfedges`")));
                    };
                    let cycles = parse_cycle_list(rest).map_err(|e| syntax(e.to_string()))?;
                    let perm =
                        Permutation::from_cycles(count, &cycles).map_err(|e| syntax(e.to_string()))?;
                    let slot = if keyword == "sigma" { &mut sigma } else { &mut theta };
                    if slot.replace(perm).is_some() {
                        return Err(syntax(format!("repeated `{keyword}` line")));
                    }
                }
                other => return Err(syntax(format!("unknown keyword \"{other}\""))),
            }
        }
        let missing = |what: &str| Error::Syntax {
            line: text.lines().count().max(1),
            column: 1,
            message: format!("missing `{what}` line"),
        };
        let n = n.ok_or_else(|| missing("halfedges"))?;
        let sigma = sigma.ok_or_else(|| missing("sigma"))?;
        let theta = theta.ok_or_else(|| missing("theta"))?;
        debug_assert_eq!(sigma.len(), n);
        Self::new(sigma, theta)
    }

    pub fn to_hep(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "halfedges {}", self.len());
        let _ = writeln!(out, "sigma {}", self.sigma.cycle_notation());
        let _ = writeln!(out, "theta {}", self.theta.cycle_notation());
        out
    }
}
