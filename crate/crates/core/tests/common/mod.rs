//! Independent oracles for integration tests. Nothing here calls the
//! library's path-walking, orbit or elimination code: quivers are read from
//! their raw arrow and relation lists and every quantity is recomputed by
//! scanning.
#![allow(dead_code)]

use std::collections::HashSet;

use gentle_orders::{GentlePresentation, HalfEdgeSystem, IntegerMatrix, Permutation};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A quiver with relations as plain arrays.
pub struct Raw {
    pub vertices: usize,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub rel: HashSet<(usize, usize)>,
}

impl Raw {
    pub fn of(p: &GentlePresentation) -> Self {
        Self {
            vertices: p.vertices().len(),
            src: p.arrows().iter().map(|a| a.source).collect(),
            tgt: p.arrows().iter().map(|a| a.target).collect(),
            rel: p.relations().iter().copied().collect(),
        }
    }

    pub fn arrows(&self) -> usize {
        self.src.len()
    }

    /// Arrows `b` with `b∘a` defined and nonzero.
    pub fn permitted_next(&self, a: usize) -> Vec<usize> {
        (0..self.arrows())
            .filter(|&b| self.src[b] == self.tgt[a] && !self.rel.contains(&(b, a)))
            .collect()
    }

    pub fn permitted_prev(&self, b: usize) -> Vec<usize> {
        (0..self.arrows())
            .filter(|&a| self.src[b] == self.tgt[a] && !self.rel.contains(&(b, a)))
            .collect()
    }

    pub fn forbidden_next(&self, a: usize) -> Vec<usize> {
        (0..self.arrows())
            .filter(|&b| self.src[b] == self.tgt[a] && self.rel.contains(&(b, a)))
            .collect()
    }

    pub fn ins(&self, v: usize) -> Vec<usize> {
        (0..self.arrows()).filter(|&a| self.tgt[a] == v).collect()
    }

    pub fn outs(&self, v: usize) -> Vec<usize> {
        (0..self.arrows()).filter(|&a| self.src[a] == v).collect()
    }

    pub fn is_transition(&self, v: usize) -> bool {
        match (&self.ins(v)[..], &self.outs(v)[..]) {
            ([a], [b]) => !self.rel.contains(&(*b, *a)),
            _ => false,
        }
    }

    /// Vertex carrying a trivial permitted thread.
    pub fn is_trivial_thread(&self, v: usize) -> bool {
        let (i, o) = (self.ins(v), self.outs(v));
        match (&i[..], &o[..]) {
            ([a], [b]) => self.rel.contains(&(*b, *a)),
            _ => i.len() <= 1 && o.len() <= 1,
        }
    }

    pub fn has_permitted_thread(&self) -> bool {
        (0..self.arrows()).any(|a| self.permitted_prev(a).is_empty())
            || (0..self.vertices).any(|v| self.is_trivial_thread(v))
    }

    /// Lengths of permitted cycles, sorted.
    pub fn permitted_cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.arrows()];
        let mut out = Vec::new();
        for start in 0..self.arrows() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                len += 1;
                let next = self.permitted_next(a);
                assert_eq!(next.len(), 1, "arrow without unique permitted successor");
                a = next[0];
            }
            assert_eq!(a, start, "permitted successor is not a permutation");
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    /// `(start, arrows, end)` per transition vertex.
    pub fn forbidden_threads(&self) -> Vec<(usize, Vec<usize>, usize)> {
        (0..self.vertices)
            .filter(|&v| self.is_transition(v))
            .map(|v| {
                let mut arrows = vec![self.outs(v)[0]];
                loop {
                    let last = *arrows.last().unwrap();
                    if self.is_transition(self.tgt[last]) {
                        break;
                    }
                    let next = self.forbidden_next(last);
                    assert_eq!(next.len(), 1);
                    arrows.push(next[0]);
                    assert!(arrows.len() <= self.arrows());
                }
                let end = self.tgt[*arrows.last().unwrap()];
                (v, arrows, end)
            })
            .collect()
    }

    pub fn forbidden_cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.arrows()];
        for (_, arrows, _) in self.forbidden_threads() {
            for a in arrows {
                seen[a] = true;
            }
        }
        let mut out = Vec::new();
        for start in 0..self.arrows() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                len += 1;
                a = self.forbidden_next(a)[0];
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    /// First-type AG-invariants by chaining forbidden threads.
    pub fn ag1(&self) -> Vec<(usize, usize)> {
        let threads = self.forbidden_threads();
        let mut used = vec![false; threads.len()];
        let mut out = Vec::new();
        for i in 0..threads.len() {
            if used[i] {
                continue;
            }
            let (mut m, mut n, mut j) = (0, 0, i);
            while !used[j] {
                used[j] = true;
                m += threads[j].1.len();
                n += 1;
                j = threads.iter().position(|t| t.0 == threads[j].2).unwrap();
            }
            out.push((m, n));
        }
        out.sort_unstable();
        out
    }

    /// Exhaustive search for an arrow colouring where composable pairs differ
    /// exactly on relations and every vertex sends out both colours.
    pub fn brute_bc(&self) -> Option<u8> {
        let n = self.arrows();
        if n > 18 {
            return None;
        }
        let ok = |mask: u32| {
            let c = |a: usize| (mask >> a) & 1;
            (0..n).all(|a| {
                (0..n).all(|b| {
                    self.src[b] != self.tgt[a] || ((c(a) != c(b)) == self.rel.contains(&(b, a)))
                })
            }) && (0..self.vertices).all(|v| {
                let cols: HashSet<u32> = self.outs(v).into_iter().map(c).collect();
                cols.len() == 2
            })
        };
        Some(u8::from((0..1u32 << n).any(ok)))
    }

    /// Arrow-distinct permitted paths of length at least one, `[target][source]`.
    pub fn path_counts(&self) -> Vec<Vec<i64>> {
        fn go(r: &Raw, start: usize, path: &mut Vec<usize>, out: &mut [Vec<i64>]) {
            let last = *path.last().unwrap();
            out[r.tgt[last]][start] += 1;
            for b in 0..r.arrows() {
                if r.src[b] == r.tgt[last] && !r.rel.contains(&(b, last)) && !path.contains(&b) {
                    path.push(b);
                    go(r, start, path, out);
                    path.pop();
                }
            }
        }
        let mut out = vec![vec![0; self.vertices]; self.vertices];
        for a in 0..self.arrows() {
            go(self, self.src[a], &mut vec![a], &mut out);
        }
        out
    }

    /// Checks a permitted-thread witness given by arrow indices (empty for a
    /// trivial thread at `vertex`).
    pub fn is_permitted_thread(&self, arrows: &[usize], vertex: usize) -> bool {
        if arrows.is_empty() {
            return self.is_trivial_thread(vertex);
        }
        let distinct: HashSet<_> = arrows.iter().collect();
        distinct.len() == arrows.len()
            && self.src[arrows[0]] == vertex
            && arrows
                .windows(2)
                .all(|w| self.src[w[1]] == self.tgt[w[0]] && !self.rel.contains(&(w[1], w[0])))
            && self.permitted_prev(arrows[0]).is_empty()
            && self.permitted_next(*arrows.last().unwrap()).is_empty()
    }
}

pub fn orbits(images: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; images.len()];
    let mut out = Vec::new();
    for s in 0..images.len() {
        if seen[s] {
            continue;
        }
        let mut o = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            o.push(x);
            x = images[x];
        }
        out.push(o);
    }
    out
}

/// `(V, E, E_t, F, F_b, F_p)` from raw permutation images.
pub fn ribbon_counts(h: &HalfEdgeSystem) -> [usize; 6] {
    let s = h.sigma().images();
    let t = h.theta().images();
    let phi: Vec<usize> = (0..s.len()).map(|x| t[s[x]]).collect();
    let faces = orbits(&phi);
    let fb = faces.iter().filter(|f| f.iter().any(|&x| t[x] == x)).count();
    let et = (0..t.len()).filter(|&x| t[x] == x).count();
    [
        orbits(s).len(),
        orbits(t).len(),
        et,
        faces.len(),
        fb,
        faces.len() - fb,
    ]
}

/// Bipartite components without truncated edges, from raw permutation data.
pub fn graph_bc(h: &HalfEdgeSystem) -> usize {
    let s = h.sigma().images();
    let t = h.theta().images();
    let cycles = orbits(s);
    let mut vertex_of = vec![0; s.len()];
    for (i, c) in cycles.iter().enumerate() {
        for &x in c {
            vertex_of[x] = i;
        }
    }
    let n = cycles.len();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut count = 0;
    for root in 0..n {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(false);
        let mut stack = vec![root];
        let (mut bip, mut trunc) = (true, false);
        while let Some(v) = stack.pop() {
            for x in (0..s.len()).filter(|&x| vertex_of[x] == v) {
                if t[x] == x {
                    trunc = true;
                    continue;
                }
                let w = vertex_of[t[x]];
                match colour[w] {
                    None => {
                        colour[w] = Some(!colour[v].unwrap());
                        stack.push(w);
                    }
                    Some(c) if c == colour[v].unwrap() => bip = false,
                    _ => {}
                }
            }
        }
        if bip && !trunc {
            count += 1;
        }
    }
    count
}

fn to_rational(m: &IntegerMatrix) -> Vec<Vec<BigRational>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| BigRational::from_integer(m.get(i, j).clone())).collect())
        .collect()
}

/// Rank and determinant by Gaussian elimination over the rationals.
pub fn rational_rank_det(m: &IntegerMatrix) -> (usize, Option<BigInt>) {
    let mut a = to_rational(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut det = BigRational::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            det = BigRational::zero();
            continue;
        };
        if p != r {
            a.swap(p, r);
            det = -det;
        }
        let pivot = a[r][c].clone();
        det *= &pivot;
        let (top, below) = a.split_at_mut(r + 1);
        for row in below {
            let f = &row[c] / &pivot;
            for (x, y) in row[c..cols].iter_mut().zip(&top[r][c..cols]) {
                *x -= y * &f;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    let det = (rows == cols).then(|| {
        if r < rows {
            BigInt::zero()
        } else {
            det.to_integer()
        }
    });
    (r, det)
}

/// A half-edge system realising a truncated graph: `[u, v]` is a glued edge,
/// `[v]` a truncated one. Half-edges at a vertex are cycled in edge order.
pub fn ribbon_from_graph(vertices: usize, edges: &[Vec<usize>]) -> HalfEdgeSystem {
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); vertices];
    let mut theta = Vec::new();
    for e in edges {
        let first = theta.len();
        match e[..] {
            [v] => {
                theta.push(first);
                at[v].push(first);
            }
            [u, v] => {
                theta.push(first + 1);
                theta.push(first);
                at[u].push(first);
                at[v].push(first + 1);
            }
            _ => panic!("bad edge"),
        }
    }
    let mut sigma = vec![0; theta.len()];
    for hs in &at {
        assert!(!hs.is_empty(), "every graph vertex needs a half-edge");
        for (i, &x) in hs.iter().enumerate() {
            sigma[x] = hs[(i + 1) % hs.len()];
        }
    }
    HalfEdgeSystem::new(Permutation::new(sigma).unwrap(), Permutation::new(theta).unwrap()).unwrap()
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn all_involutions(n: usize) -> Vec<Vec<usize>> {
    fn go(img: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(x) = img.iter().position(Option::is_none) else {
            out.push(img.iter().map(|v| v.unwrap()).collect());
            return;
        };
        img[x] = Some(x);
        go(img, out);
        for y in x + 1..img.len() {
            if img[y].is_none() {
                img[x] = Some(y);
                img[y] = Some(x);
                go(img, out);
                img[y] = None;
            }
        }
        img[x] = None;
    }
    let mut out = Vec::new();
    go(&mut vec![None; n], &mut out);
    out
}

/// Every labelled `(sigma, theta)` pair on `n` points.
pub fn all_systems(n: usize) -> Vec<HalfEdgeSystem> {
    let invs = all_involutions(n);
    all_permutations(n)
        .into_iter()
        .flat_map(|s| {
            invs.iter().map(move |t| {
                HalfEdgeSystem::new(Permutation::new(s.clone()).unwrap(), Permutation::new(t.clone()).unwrap())
                    .unwrap()
            })
        })
        .collect()
}

/// The equioriented cycle of length `l` without relations, as `.gq` text.
pub fn hereditary_gq(l: usize) -> String {
    let mut s = String::new();
    for i in 1..=l {
        s.push_str(&format!("vertex {i}\n"));
    }
    for i in 1..=l {
        s.push_str(&format!("arrow a{i} {i} {}\n", i % l + 1));
    }
    s
}
