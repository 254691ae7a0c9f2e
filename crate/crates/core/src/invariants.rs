//! Quiver-level invariants of a gentle order: permitted cycles, AG-invariants
//! of both types, forbidden threads, bicolorability, classification, the
//! sign involution, Nakayama data, simple resolutions and tilting-ideal
//! generators.
//!
//! Orbit-based quantities are read off the half-edge system; forbidden
//! threads and cycles are found independently by walking paths in the quiver.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfedge::HalfEdgeSystem;
use crate::presentation::{GentleOrder, VertexKind};

/// An AG-invariant `(m, n)`: cycle length and number of transition vertices on
/// it. Second-type entries have `n = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct AgEntry {
    pub m: usize,
    pub n: usize,
}

impl AgEntry {
    pub const fn new(m: usize, n: usize) -> Self {
        Self { m, n }
    }
}

impl From<(usize, usize)> for AgEntry {
    fn from((m, n): (usize, usize)) -> Self {
        Self { m, n }
    }
}

impl From<AgEntry> for (usize, usize) {
    fn from(e: AgEntry) -> Self {
        (e.m, e.n)
    }
}

impl fmt::Display for AgEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

pub(crate) fn fmt_multiset(entries: &[AgEntry]) -> String {
    let inner: Vec<String> = entries.iter().map(ToString::to_string).collect();
    format!("[{}]", inner.join(", "))
}

/// Number of permitted cycles up to rotation and the sorted multiset of their lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermittedCycles {
    pub pc: usize,
    pub profile: Vec<usize>,
}

pub fn permitted_cycles(h: &HalfEdgeSystem) -> PermittedCycles {
    let mut profile = h.sigma().orbits().sizes();
    profile.sort_unstable();
    PermittedCycles {
        pc: profile.len(),
        profile,
    }
}

/// One entry per phi-orbit meeting a theta-fixed half-edge (equivalently per
/// kappa-orbit), sorted.
pub fn ag_first(h: &HalfEdgeSystem) -> Vec<AgEntry> {
    let mut out: Vec<AgEntry> = h
        .phi()
        .orbits()
        .iter()
        .filter_map(|face| {
            let fixed = face.iter().filter(|&&x| h.is_theta_fixed(x)).count();
            (fixed > 0).then_some(AgEntry::new(face.len(), fixed))
        })
        .collect();
    out.sort_unstable();
    out
}

/// One entry `(|orbit|, 0)` per rho-orbit, sorted.
pub fn ag_second(h: &HalfEdgeSystem) -> Vec<AgEntry> {
    let mut out: Vec<AgEntry> = h
        .rho()
        .orbits()
        .iter()
        .map(|o| AgEntry::new(o.len(), 0))
        .collect();
    out.sort_unstable();
    out
}

/// A forbidden thread starting at a transition vertex: consecutive arrows
/// compose to zero, passing only through crossing vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenThread {
    pub start: usize,
    pub arrows: Vec<usize>,
    pub end: usize,
}

/// Path-walks the forbidden thread out of every transition vertex, in vertex order.
pub fn forbidden_threads(order: &GentleOrder) -> Vec<ForbiddenThread> {
    let p = order.presentation();
    let classes = order.classes();
    classes
        .transition_vertices()
        .into_iter()
        .map(|start| {
            let first = p
                .out_arrows(start)
                .next()
                .expect("transition vertices have an outgoing arrow");
            let mut arrows = vec![first];
            let mut cur = first;
            while classes.kind(p.target(cur)) == VertexKind::Crossing {
                cur = p
                    .forbidden_successor(cur)
                    .expect("arrows into crossing vertices have a zero continuation");
                arrows.push(cur);
                assert!(arrows.len() <= p.arrow_count(), "forbidden thread does not terminate");
            }
            ForbiddenThread {
                start,
                arrows,
                end: p.target(cur),
            }
        })
        .collect()
}

/// Path-walks the forbidden cycles: arrows on no forbidden thread, grouped by
/// following zero continuations. Each cycle starts at its least arrow.
pub fn forbidden_cycles(order: &GentleOrder) -> Vec<Vec<usize>> {
    let p = order.presentation();
    let mut used = vec![false; p.arrow_count()];
    for t in forbidden_threads(order) {
        for a in t.arrows {
            used[a] = true;
        }
    }
    let mut cycles = Vec::new();
    for start in 0..p.arrow_count() {
        if used[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        loop {
            used[cur] = true;
            cycle.push(cur);
            cur = p
                .forbidden_successor(cur)
                .expect("arrows off forbidden threads continue along a zero relation");
            if cur == start {
                break;
            }
            assert!(!used[cur], "forbidden successor is not injective");
        }
        cycles.push(cycle);
    }
    cycles
}

/// First-type AG-invariants obtained by chasing forbidden threads through
/// their end vertices, independent of the half-edge permutations.
pub fn ag_first_from_threads(order: &GentleOrder) -> Vec<AgEntry> {
    let threads = forbidden_threads(order);
    let n_vertices = order.presentation().vertex_count();
    let mut by_start = vec![None; n_vertices];
    for (i, t) in threads.iter().enumerate() {
        by_start[t.start] = Some(i);
    }
    let mut seen = vec![false; threads.len()];
    let mut out = Vec::new();
    for i in 0..threads.len() {
        if seen[i] {
            continue;
        }
        let (mut m, mut n) = (0, 0);
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            m += threads[j].arrows.len();
            n += 1;
            j = by_start[threads[j].end].expect("threads end at transition vertices");
        }
        out.push(AgEntry::new(m, n));
    }
    out.sort_unstable();
    out
}

/// kappa on transition vertices (`None` on crossing vertices), from the
/// half-edge permutation.
pub fn kappa_vertices(order: &GentleOrder) -> Vec<Option<usize>> {
    let p = order.presentation();
    let kappa = order.system().kappa();
    let mut out = vec![None; p.vertex_count()];
    for x in kappa.domain() {
        let y = kappa.get(x).expect("x is in the domain");
        out[p.source(x)] = Some(p.source(y));
    }
    out
}

/// kappa-orbits of transition vertices, each starting at its least vertex.
pub fn kappa_orbits(order: &GentleOrder) -> Vec<Vec<usize>> {
    let kappa = kappa_vertices(order);
    let mut seen = vec![false; kappa.len()];
    let mut out = Vec::new();
    for start in 0..kappa.len() {
        if seen[start] || kappa[start].is_none() {
            continue;
        }
        let mut orbit = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            orbit.push(v);
            v = kappa[v].expect("kappa maps into transition vertices");
        }
        out.push(orbit);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BicolorObstruction {
    /// Propagating the colour constraints around a closed walk through this
    /// arrow forces it to differ from itself.
    OddConstraintCycle { arrow: usize },
    /// Every arrow leaving this vertex has the same colour.
    SingleColourAtVertex { vertex: usize },
}

/// Result of the arrow-colouring search: `bc = 1` comes with a colouring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bicoloring {
    pub bc: u8,
    /// Colours `1`/`2` per arrow when `bc = 1`.
    pub coloring: Option<Vec<u8>>,
    pub obstruction: Option<BicolorObstruction>,
}

/// Searches for `f: arrows -> {1, 2}` such that for every composable pair
/// `f(beta) != f(alpha)` exactly when `beta∘alpha` is a zero relation, and the
/// arrows leaving each vertex use both colours. The second requirement fails
/// precisely at transition vertices; at crossing vertices it is implied by the
/// first.
pub fn bicolorability(order: &GentleOrder) -> Result<Bicoloring> {
    order.require_connected()?;
    let p = order.presentation();
    let n = p.arrow_count();
    // constraint edges: (other arrow, parity)
    let mut adj: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
    for v in 0..p.vertex_count() {
        for alpha in p.in_arrows(v) {
            for beta in p.out_arrows(v) {
                let parity = u8::from(p.is_relation(beta, alpha));
                adj[alpha].push((beta, parity));
                adj[beta].push((alpha, parity));
            }
        }
    }
    let mut colour: Vec<Option<u8>> = vec![None; n];
    for root in 0..n {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(a) = queue.pop_front() {
            let ca = colour[a].expect("queued arrows are coloured");
            for &(b, parity) in &adj[a] {
                match colour[b] {
                    None => {
                        colour[b] = Some(ca ^ parity);
                        queue.push_back(b);
                    }
                    Some(cb) if cb != ca ^ parity => {
                        return Ok(Bicoloring {
                            bc: 0,
                            coloring: None,
                            obstruction: Some(BicolorObstruction::OddConstraintCycle { arrow: b }),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let colour: Vec<u8> = colour.into_iter().map(|c| c.unwrap_or(0) + 1).collect();
    for v in 0..p.vertex_count() {
        let mut leaving = p.out_arrows(v).map(|a| colour[a]);
        let first = leaving.next();
        if leaving.all(|c| Some(c) == first) {
            return Ok(Bicoloring {
                bc: 0,
                coloring: None,
                obstruction: Some(BicolorObstruction::SingleColourAtVertex { vertex: v }),
            });
        }
    }
    Ok(Bicoloring {
        bc: 1,
        coloring: Some(colour),
        obstruction: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderClass {
    Hereditary,
    Ribbon,
    General,
}

impl fmt::Display for OrderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderClass::Hereditary => "hereditary",
            OrderClass::Ribbon => "ribbon",
            OrderClass::General => "general",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassWitness {
    /// A first-type AG-invariant with `m = n`.
    BalancedAgEntry { entry: AgEntry },
    /// Census of theta: fixed points and 2-orbits.
    ThetaCensus { fixed: usize, paired: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: OrderClass,
    pub witness: ClassWitness,
}

pub fn classify(order: &GentleOrder) -> Result<Classification> {
    order.require_connected()?;
    let h = order.system();
    let fixed = h.theta_fixed_points().len();
    let paired = (h.len() - fixed) / 2;
    if let Some(&entry) = ag_first(h).iter().find(|e| e.m == e.n) {
        return Ok(Classification {
            class: OrderClass::Hereditary,
            witness: ClassWitness::BalancedAgEntry { entry },
        });
    }
    let class = if fixed == 0 {
        OrderClass::Ribbon
    } else {
        OrderClass::General
    };
    Ok(Classification {
        class,
        witness: ClassWitness::ThetaCensus { fixed, paired },
    })
}

/// Three independent hereditary tests on a connected order: theta is the
/// identity; some first-type AG-invariant has `m = n`; the quiver has no
/// relations.
pub fn hereditary_routes(order: &GentleOrder) -> [bool; 3] {
    let h = order.system();
    [
        h.theta().is_identity(),
        ag_first(h).iter().any(|e| e.m == e.n),
        order.presentation().relations().is_empty(),
    ]
}

/// Signs on arrows with opposite signs on arrows sharing a source, and the
/// involution `xi(a) = sgn(sigma(a)) * sgn(a) * a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignInvolution {
    pub sgn: Vec<i8>,
    /// Coefficient of `xi(a)` on `a`.
    pub xi: Vec<i8>,
}

impl SignInvolution {
    /// `xi` as a signed arrow.
    pub fn apply(&self, arrow: usize) -> (i8, usize) {
        (self.xi[arrow], arrow)
    }

    /// `xi` applied to a signed arrow.
    pub fn apply_signed(&self, (coefficient, arrow): (i8, usize)) -> (i8, usize) {
        (coefficient * self.xi[arrow], arrow)
    }
}

/// The first arrow leaving a vertex (file order) gets `+1`, the second `-1`.
/// In characteristic two every sign is `+1` and `xi` is the identity.
pub fn sign_involution(order: &GentleOrder, char2: bool) -> SignInvolution {
    let p = order.presentation();
    let n = p.arrow_count();
    let mut sgn = vec![1i8; n];
    if !char2 {
        for v in 0..p.vertex_count() {
            for (i, a) in p.out_arrows(v).enumerate() {
                sgn[a] = if i == 0 { 1 } else { -1 };
            }
        }
    }
    let sigma = order.system().sigma();
    let xi = (0..n).map(|a| sgn[sigma.apply(a)] * sgn[a]).collect();
    SignInvolution { sgn, xi }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectiveTag {
    /// The projective goes to its radical.
    Rad,
    /// The projective is fixed.
    Id,
}

/// Combinatorial action of the Nakayama functor on indecomposable projectives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NakayamaData {
    pub tags: Vec<ProjectiveTag>,
    pub signs: Vec<i8>,
}

pub fn nakayama_data(order: &GentleOrder, char2: bool) -> NakayamaData {
    let classes = order.classes();
    let tags = classes
        .kinds()
        .iter()
        .map(|k| match k {
            VertexKind::Transition => ProjectiveTag::Rad,
            VertexKind::Crossing => ProjectiveTag::Id,
        })
        .collect();
    NakayamaData {
        tags,
        signs: sign_involution(order, char2).xi,
    }
}

/// Minimal projective resolution of a simple module at a transition vertex:
/// the vertices of its projective terms from the leftmost (at `kappa(j)`) down
/// to `j`, and the Calabi-Yau dimension `(m(j), n(j))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleResolution {
    pub vertices: Vec<usize>,
    pub cy_dimension: AgEntry,
}

pub fn simple_resolution(order: &GentleOrder, vertex: usize) -> Result<SimpleResolution> {
    if !order.classes().is_transition(vertex) {
        return Err(Error::NotTransitionVertex(order.vertex_name(vertex).to_owned()));
    }
    let p = order.presentation();
    let threads = forbidden_threads(order);
    let thread = threads
        .iter()
        .find(|t| t.start == vertex)
        .expect("one thread per transition vertex");
    let mut vertices: Vec<usize> = thread.arrows.iter().rev().map(|&a| p.target(a)).collect();
    vertices.push(vertex);

    let first_arrow = thread.arrows[0];
    let phi = order.system().phi();
    let faces = phi.orbits();
    let face = faces.orbit(faces.orbit_of(first_arrow).expect("phi covers all arrows"));
    let n = face.iter().filter(|&&x| order.system().is_theta_fixed(x)).count();
    Ok(SimpleResolution {
        vertices,
        cy_dimension: AgEntry::new(face.len(), n),
    })
}

/// Generators of the two-sided ideal attached to a kappa-stable set `X` of
/// transition vertices: idempotents off `X` and arrows starting in `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealGenerators {
    pub idempotents: Vec<usize>,
    pub arrows: Vec<usize>,
    /// Number of kappa-orbits (twist factors) of the whole order.
    pub kappa_orbit_count: usize,
}

pub fn ideal_generators(order: &GentleOrder, subset: &[usize]) -> Result<IdealGenerators> {
    let p = order.presentation();
    let kappa = kappa_vertices(order);
    let mut member = vec![false; p.vertex_count()];
    for &v in subset {
        if v >= member.len() {
            return Err(Error::NoSuchVertex(v.to_string()));
        }
        member[v] = true;
    }
    for &v in subset {
        let Some(image) = kappa[v] else {
            return Err(Error::NotTransitionVertex(order.vertex_name(v).to_owned()));
        };
        if !member[image] {
            return Err(Error::NotKappaStable {
                witness: order.vertex_name(v).to_owned(),
                image: order.vertex_name(image).to_owned(),
            });
        }
    }
    Ok(IdealGenerators {
        idempotents: (0..p.vertex_count()).filter(|&v| !member[v]).collect(),
        arrows: (0..p.arrow_count()).filter(|&a| member[p.source(a)]).collect(),
        kappa_orbit_count: kappa_orbits(order).len(),
    })
}

/// All kappa-stable subsets (unions of kappa-orbits), by bitmask over the orbits.
pub fn kappa_stable_subsets(order: &GentleOrder) -> impl Iterator<Item = Vec<usize>> {
    let orbits = kappa_orbits(order);
    assert!(orbits.len() < 32, "too many kappa-orbits to enumerate subsets");
    (0u32..(1 << orbits.len())).map(move |mask| {
        let mut set: Vec<usize> = orbits
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .flat_map(|(_, o)| o.iter().copied())
            .collect();
        set.sort_unstable();
        set
    })
}

/// `(|Q0|, |Q1|, |Q0^t|, |Q0^c|, |Q1^ft|, |Q1^fc|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Counts {
    pub vertices: usize,
    pub arrows: usize,
    pub transition_vertices: usize,
    pub crossing_vertices: usize,
    pub thread_arrows: usize,
    pub cycle_arrows: usize,
}

/// All quiver-level invariants of one order. `bc` and `class` are `None` on
/// disconnected input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBundle {
    pub pc: usize,
    pub bc: Option<u8>,
    pub ag1: Vec<AgEntry>,
    pub ag2: Vec<AgEntry>,
    pub counts: Counts,
    pub profile: Vec<usize>,
    pub class: Option<OrderClass>,
    #[serde(skip, default = "one")]
    pub components: usize,
}

fn one() -> usize {
    1
}

impl InvariantBundle {
    pub fn compute(order: &GentleOrder) -> Self {
        let h = order.system();
        let p = order.presentation();
        let PermittedCycles { pc, profile } = permitted_cycles(h);
        let ag1 = ag_first(h);
        let ag2 = ag_second(h);
        let transition = order.classes().transition_vertices().len();
        let cycle_arrows = h.rho().domain_len();
        let counts = Counts {
            vertices: p.vertex_count(),
            arrows: p.arrow_count(),
            transition_vertices: transition,
            crossing_vertices: p.vertex_count() - transition,
            thread_arrows: p.arrow_count() - cycle_arrows,
            cycle_arrows,
        };
        let components = order.component_count();
        let (bc, class) = if components == 1 {
            (
                Some(bicolorability(order).expect("connected").bc),
                Some(classify(order).expect("connected").class),
            )
        } else {
            (None, None)
        };
        Self {
            pc,
            bc,
            ag1,
            ag2,
            counts,
            profile,
            class,
            components,
        }
    }

    pub fn is_hereditary(&self) -> bool {
        self.class == Some(OrderClass::Hereditary)
    }

    pub fn is_ribbon(&self) -> bool {
        self.class == Some(OrderClass::Ribbon)
    }
}

impl fmt::Display for InvariantBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "n/a".into());
        writeln!(f, "pc={}", self.pc)?;
        writeln!(f, "bc={}", opt(self.bc.map(|b| b.to_string())))?;
        writeln!(f, "ag1={}", fmt_multiset(&self.ag1))?;
        writeln!(f, "ag2={}", fmt_multiset(&self.ag2))?;
        let c = &self.counts;
        writeln!(
            f,
            "counts: |Q0|={} |Q1|={} |Q0t|={} |Q0c|={} |Q1ft|={} |Q1fc|={}",
            c.vertices,
            c.arrows,
            c.transition_vertices,
            c.crossing_vertices,
            c.thread_arrows,
            c.cycle_arrows
        )?;
        let profile: Vec<String> = self.profile.iter().map(ToString::to_string).collect();
        writeln!(f, "profile=[{}]", profile.join(", "))?;
        write!(f, "class={}", opt(self.class.map(|c| c.to_string())))
    }
}
