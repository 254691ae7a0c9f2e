//! Permutations of `{0, .., n-1}` and their orbit decompositions.
//!
//! Text forms use disjoint-cycle notation over `1..=n`, e.g. `(1 3 2)(4)`;
//! points that do not appear are fixed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its image array, checking bijectivity.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (x, &y) in image.iter().enumerate() {
            if y >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} of point {} is out of range",
                    y + 1,
                    x + 1
                )));
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidPermutation(format!(
                    "point {} is hit twice",
                    y + 1
                )));
            }
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation from zero-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for &x in cycle {
                if x >= n {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} exceeds {n}",
                        x + 1
                    )));
                }
                if std::mem::replace(&mut used[x], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} occurs in two cycles",
                        x + 1
                    )));
                }
            }
            for (i, &x) in cycle.iter().enumerate() {
                image[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self { image })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Permutation {
            image: other.image.iter().map(|&y| self.image[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        Permutation { image }
    }

    /// `pi ∘ self ∘ pi⁻¹`, i.e. the same permutation on relabelled points.
    pub fn conjugate_by(&self, pi: &Permutation) -> Permutation {
        let mut image = vec![0; self.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[pi.apply(x)] = pi.apply(y);
        }
        Permutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_involution(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| self.image[y] == x)
    }

    pub fn is_fixed(&self, x: usize) -> bool {
        self.image[x] == x
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.image
            .iter()
            .enumerate()
            .filter(|(x, y)| x == *y)
            .map(|(x, _)| x)
    }

    /// Orbits sorted by minimal element, each starting at its minimum.
    pub fn orbits(&self) -> OrbitPartition {
        let n = self.len();
        let mut index = vec![None; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if index[start].is_some() {
                continue;
            }
            let id = orbits.len();
            let mut orbit = Vec::new();
            let mut x = start;
            loop {
                index[x] = Some(id);
                orbit.push(x);
                x = self.image[x];
                if x == start {
                    break;
                }
            }
            orbits.push(orbit);
        }
        OrbitPartition { orbits, index }
    }

    /// Parses one-based cycle notation such as `(1 3 2)(4)`.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        Self::from_cycles(n, &parse_cycle_list(text)?)
    }

    /// One-based cycle notation with fixed points omitted; `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let cycles: Vec<String> = self
            .orbits()
            .iter()
            .filter(|o| o.len() > 1)
            .map(|o| {
                let pts: Vec<String> = o.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect();
        if cycles.is_empty() {
            "()".to_owned()
        } else {
            cycles.concat()
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(image: Vec<usize>) -> Result<Self> {
        Permutation::new(image)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.image
    }
}

/// Parses `(a b c)(d)` into zero-based cycles. Whitespace and commas separate points.
pub(crate) fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut token = String::new();

    fn flush(token: &mut String, current: &mut Option<Vec<usize>>) -> Result<()> {
        if token.is_empty() {
            return Ok(());
        }
        let Some(cycle) = current.as_mut() else {
            return Err(Error::InvalidPermutation(format!(
                "point \"{token}\" outside parentheses"
            )));
        };
        let value: usize = token
            .parse()
            .map_err(|_| Error::InvalidPermutation(format!("\"{token}\" is not a point")))?;
        if value == 0 {
            return Err(Error::InvalidPermutation("points are numbered from 1".into()));
        }
        cycle.push(value - 1);
        token.clear();
        Ok(())
    }

    for ch in text.chars() {
        match ch {
            '(' => {
                flush(&mut token, &mut current)?;
                if current.is_some() {
                    return Err(Error::InvalidPermutation("nested '('".into()));
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush(&mut token, &mut current)?;
                match current.take() {
                    Some(cycle) if !cycle.is_empty() => cycles.push(cycle),
                    Some(_) => {}
                    None => return Err(Error::InvalidPermutation("unmatched ')'".into())),
                }
            }
            c if c.is_whitespace() || c == ',' => flush(&mut token, &mut current)?,
            c => token.push(c),
        }
    }
    flush(&mut token, &mut current)?;
    if current.is_some() {
        return Err(Error::InvalidPermutation("unclosed '('".into()));
    }
    Ok(cycles)
}

/// A bijection defined on a subset of `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialPermutation {
    map: Vec<Option<usize>>,
}

impl PartialPermutation {
    /// Restricts `p` to a union of its orbits.
    pub fn restrict(p: &Permutation, keep: impl Fn(usize) -> bool) -> Self {
        let map = (0..p.len())
            .map(|x| keep(x).then(|| p.apply(x)))
            .collect::<Vec<_>>();
        debug_assert!(map
            .iter()
            .flatten()
            .all(|&y| keep(y)), "restriction is not closed");
        Self { map }
    }

    pub(crate) fn from_map(map: Vec<Option<usize>>) -> Self {
        Self { map }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.map.get(x).copied().flatten()
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|_| x))
    }

    pub fn domain_len(&self) -> usize {
        self.map.iter().filter(|y| y.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.domain_len() == 0
    }

    /// Orbits of the points in the domain, canonical order.
    pub fn orbits(&self) -> OrbitPartition {
        let n = self.map.len();
        let mut index = vec![None; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if self.map[start].is_none() || index[start].is_some() {
                continue;
            }
            let id = orbits.len();
            let mut orbit = Vec::new();
            let mut x = start;
            loop {
                index[x] = Some(id);
                orbit.push(x);
                x = self.map[x].expect("partial permutation leaves its domain");
                if x == start {
                    break;
                }
            }
            orbits.push(orbit);
        }
        OrbitPartition { orbits, index }
    }
}

/// Orbits of a (partial) permutation: a cyclically ordered list per orbit and
/// a point-to-orbit index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    orbits: Vec<Vec<usize>>,
    index: Vec<Option<usize>>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vec<usize>> {
        self.orbits.iter()
    }

    pub fn orbit(&self, id: usize) -> &[usize] {
        &self.orbits[id]
    }

    /// Index of the orbit containing `x`, if `x` is covered.
    pub fn orbit_of(&self, x: usize) -> Option<usize> {
        self.index.get(x).copied().flatten()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn into_vec(self) -> Vec<Vec<usize>> {
        self.orbits
    }
}

impl<'a> IntoIterator for &'a OrbitPartition {
    type Item = &'a Vec<usize>;
    type IntoIter = std::slice::Iter<'a, Vec<usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.orbits.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn orbits_of_identity_are_singletons() {
        let o = Permutation::identity(3).orbits();
        assert_eq!(o.into_vec(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn single_cycle_starts_at_minimum() {
        let o = cyc(3, "(3 2 1)").orbits();
        // (3 2 1) = (1 3 2)
        assert_eq!(o.into_vec(), vec![vec![0, 2, 1]]);
    }

    #[test]
    fn transposition_plus_fixed_point() {
        let o = cyc(3, "(1 2)").orbits();
        assert_eq!(o.into_vec(), vec![vec![0, 1], vec![2]]);
        assert_eq!(cyc(3, "(1 2)").orbits().orbit_of(2), Some(1));
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let sigma = cyc(4, "(1 2 3 4)");
        let theta = cyc(4, "(1 3)(2 4)");
        // theta∘sigma: 1 -> 2 -> 4, 4 -> 1 -> 3, 3 -> 4 -> 2, 2 -> 3 -> 1
        assert_eq!(theta.compose(&sigma).cycle_notation(), "(1 4 3 2)");
    }

    #[test]
    fn cycle_notation_round_trips() {
        for s in ["()", "(1 2)", "(1 3 2)(4 5)", "(2 7 4)(3 6)"] {
            let p = cyc(7, s);
            assert_eq!(cyc(7, &p.cycle_notation()), p);
        }
        assert_eq!(cyc(2, "(1)(2)").cycle_notation(), "()");
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(0 1)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2").is_err());
        assert!(Permutation::parse_cycles(3, "1 2").is_err());
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn partial_orbits_skip_points_outside_domain() {
        let p = cyc(5, "(1 2)(3 4 5)");
        let r = PartialPermutation::restrict(&p, |x| x >= 2);
        assert_eq!(r.domain_len(), 3);
        assert_eq!(r.orbits().into_vec(), vec![vec![2, 3, 4]]);
        assert_eq!(r.get(0), None);
    }

    #[test]
    fn inverse_and_conjugation() {
        let p = cyc(5, "(1 2 3)(4 5)");
        assert!(p.compose(&p.inverse()).is_identity());
        let pi = cyc(5, "(1 5)");
        let q = p.conjugate_by(&pi);
        // relabel 1<->5: (5 2 3)(4 1)
        assert_eq!(q, cyc(5, "(5 2 3)(4 1)"));
    }
}
