//! Right-angled Artin groups and the maps from `A(C̄_n)` into braid groups.
//!
//! Vertex `v_i` is stored as `Gen(i - 1)`. Graphs are given by their
//! commutation edges: `{i, j}` is an edge when `v_i` and `v_j` commute.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::braid::{self, BraidError, BraidWord, MarkedCurve};
use crate::homology::{transvection, H1Class, SpMatrix};
use crate::surface::{SurfaceContext, SurfaceError, UtContext};
use crate::words::{Gen, GenMap, Target, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RaagError {
    #[error("a complement of a cycle needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("malformed graph: {0}")]
    BadGraph(String),
    #[error("vertex v{0} has no image")]
    MissingImage(usize),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Simple graph on vertices `1..=n`; an edge means the generators commute.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl CommGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, RaagError> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == j {
                return Err(RaagError::BadGraph(format!("self-loop at {i}")));
            }
            if i == 0 || j == 0 || i > n || j > n {
                return Err(RaagError::BadGraph(format!("edge {i}-{j} out of range")));
            }
            set.insert((i.min(j), i.max(j)));
        }
        Ok(Self { n, edges: set })
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// 1-based adjacency test.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    fn commutes(&self, a: Gen, b: Gen) -> bool {
        a != b && self.adjacent(a.0 as usize + 1, b.0 as usize + 1)
    }
}

impl fmt::Display for CommGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges.iter().map(|(i, j)| format!("{i}-{j}")).collect();
        write!(f, "{}; {}", self.n, edges.join(", "))
    }
}

impl FromStr for CommGraph {
    type Err = RaagError;

    /// `n; i-j, i-j, ...`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, rest) = s.split_once(';').unwrap_or((s, ""));
        let n: usize = n.trim().parse().map_err(|_| RaagError::BadGraph(s.to_string()))?;
        let mut edges = Vec::new();
        for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (i, j) = tok.split_once('-').ok_or_else(|| RaagError::BadGraph(tok.to_string()))?;
            let i = i.trim().parse().map_err(|_| RaagError::BadGraph(tok.to_string()))?;
            let j = j.trim().parse().map_err(|_| RaagError::BadGraph(tok.to_string()))?;
            edges.push((i, j));
        }
        Self::new(n, edges)
    }
}

/// `C̄_n`: `{i, j}` is an edge iff `|i − j| mod n ∉ {0, 1, n − 1}`.
pub fn complement_cycle(n: usize) -> Result<CommGraph, RaagError> {
    if n < 3 {
        return Err(RaagError::TooSmall(n));
    }
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let d = (j - i) % n;
            if d != 1 && d != n - 1 {
                edges.push((i, j));
            }
        }
    }
    CommGraph::new(n, edges)
}

/// Canonical form in `A(Γ)`.
///
/// First every pair `x^ε ... x^-ε` whose interior commutes with `x` is
/// cancelled; the resulting reduced word is unique up to swapping adjacent
/// commuting letters. Among those, the lexicographically least one is
/// produced by repeatedly extracting the smallest letter that can be moved to
/// the front.
pub fn raag_normal_form(w: &Word, graph: &CommGraph) -> Word {
    let mut stack: Vec<(Gen, i64)> = Vec::with_capacity(w.len());
    for (g, e) in w.unit_letters() {
        let mut cancelled = false;
        for j in (0..stack.len()).rev() {
            let (h, f) = stack[j];
            if h == g {
                if f == -e {
                    stack.remove(j);
                    cancelled = true;
                }
                break;
            }
            if !graph.commutes(g, h) {
                break;
            }
        }
        if !cancelled {
            stack.push((g, e));
        }
    }
    let mut rest = stack;
    let mut out = Word::identity();
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        let mut seen: Vec<Gen> = Vec::new();
        for (p, &(g, e)) in rest.iter().enumerate() {
            let movable = seen.iter().all(|&h| graph.commutes(g, h));
            if movable && best.is_none_or(|b| (g, e) < rest[b]) {
                best = Some(p);
            }
            seen.push(g);
        }
        let (g, e) = rest.remove(best.expect("nonempty"));
        out.push(g, e);
    }
    out
}

pub fn raag_equal(u: &Word, v: &Word, graph: &CommGraph) -> bool {
    raag_normal_form(&u.mul(&v.inverse()), graph).is_empty()
}

/// An element of `A(Γ)` kept in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RaagWord {
    graph: CommGraph,
    word: Word,
}

impl RaagWord {
    pub fn new(graph: &CommGraph, word: &Word) -> Self {
        Self { graph: graph.clone(), word: raag_normal_form(word, graph) }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn graph(&self) -> &CommGraph {
        &self.graph
    }

    pub fn mul(&self, other: &RaagWord) -> RaagWord {
        RaagWord::new(&self.graph, &self.word.mul(&other.word))
    }

    pub fn inverse(&self) -> RaagWord {
        RaagWord::new(&self.graph, &self.word.inverse())
    }
}

/// `c_1 = g2`, `c_{i+1} = [g1, c_i]`.
pub fn iterated_commutator(k: usize, g1: &Word, g2: &Word) -> Word {
    assert!(k >= 1, "iterated commutators start at k = 1");
    let mut c = g2.clone();
    for _ in 1..k {
        c = Word::commutator(g1, &c);
    }
    c
}

/// Decides triviality of words in some target group.
pub trait EqualityOracle {
    fn is_identity(&self, w: &Word) -> Result<bool, RaagError>;
}

pub struct BraidOracle {
    pub strands: usize,
    pub budget: usize,
}

impl EqualityOracle for BraidOracle {
    fn is_identity(&self, w: &Word) -> Result<bool, RaagError> {
        let b = BraidWord::from_word(self.strands, w.clone())?;
        Ok(braid::is_identity(&b, self.budget)?)
    }
}

pub struct RaagOracle(pub CommGraph);

impl EqualityOracle for RaagOracle {
    fn is_identity(&self, w: &Word) -> Result<bool, RaagError> {
        Ok(raag_normal_form(w, &self.0).is_empty())
    }
}

pub struct UtOracle(pub UtContext);

impl EqualityOracle for UtOracle {
    fn is_identity(&self, w: &Word) -> Result<bool, RaagError> {
        Ok(self.0.reduce(w).is_identity())
    }
}

pub struct SurfaceOracle(pub SurfaceContext);

impl EqualityOracle for SurfaceOracle {
    fn is_identity(&self, w: &Word) -> Result<bool, RaagError> {
        Ok(self.0.is_trivial(w)?)
    }
}

/// Words over generators with given symplectic images; product in word order.
pub struct SymplecticOracle {
    pub genus: usize,
    pub images: Vec<SpMatrix>,
}

impl SymplecticOracle {
    pub fn evaluate(&self, w: &Word) -> Result<SpMatrix, RaagError> {
        let mut m = SpMatrix::identity(self.genus);
        for &(g, e) in w.letters() {
            let img = self.images.get(g.0 as usize).ok_or(RaagError::MissingImage(g.0 as usize + 1))?;
            m = m.mul(&img.pow(e));
        }
        Ok(m)
    }
}

impl EqualityOracle for SymplecticOracle {
    fn is_identity(&self, w: &Word) -> Result<bool, RaagError> {
        Ok(self.evaluate(w)?.is_identity())
    }
}

fn image(f: &GenMap, i: usize) -> Result<&Word, RaagError> {
    f.image(Gen(i as u32 - 1)).ok_or(RaagError::MissingImage(i))
}

/// Well-definedness of a map out of `A(Γ)`: images of adjacent vertices commute.
pub fn check_raag_hom(f: &GenMap, source: &CommGraph, oracle: &dyn EqualityOracle) -> Result<bool, RaagError> {
    for (i, j) in source.edges() {
        if !oracle.is_identity(&Word::commutator(image(f, i)?, image(f, j)?))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Graph on `1..=n` whose edges are the vertex pairs with commuting images.
pub fn commutation_graph(f: &GenMap, n: usize, oracle: &dyn EqualityOracle) -> Result<CommGraph, RaagError> {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if oracle.is_identity(&Word::commutator(image(f, i)?, image(f, j)?))? {
                edges.push((i, j));
            }
        }
    }
    CommGraph::new(n, edges)
}

/// A built map together with advisories about its parameter regime.
#[derive(Clone, Debug)]
pub struct BuiltMap {
    pub map: GenMap,
    pub warnings: Vec<String>,
}

/// `Ψ_{n,p}: A(C̄_n) → B_n`, `v_i ↦ H_{c_i}^p` with `c_i = {i, i+1}` for
/// `i < n` and `c_n = δ c_{n-1} δ⁻¹` joining points `n` and `1` around the
/// circle.
pub fn build_psi(n: usize, p: i64) -> Result<BuiltMap, RaagError> {
    if n < 3 || p < 1 {
        return Err(RaagError::BadParams(format!("psi needs n >= 3 and p >= 1, got n={n}, p={p}")));
    }
    let mut warnings = Vec::new();
    if p < 3 {
        warnings.push(format!("p = {p} is below the injective range p >= 3"));
    }
    let mut map = GenMap::new(Target::Braid(n));
    for i in 1..n {
        map.insert(Gen(i as u32 - 1), Word::power(Gen(i as u32 - 1), p));
    }
    let closing = BraidWord::sigma(n, n - 1, 1)?.conjugate(&braid::rotation(n))?;
    map.insert(Gen(n as u32 - 1), closing.pow(p).word().clone());
    Ok(BuiltMap { map, warnings })
}

/// Default twist about the closing curve in `B_{2n-1}`: the triple around
/// points `2n-1, 1, 2`, obtained by rotating `c_{n-1}` two steps.
pub fn default_closing_twist(n: usize) -> Result<BraidWord, RaagError> {
    let m = 2 * n - 1;
    let last = braid::full_twist(&MarkedCurve::interval(m, m - 2, m)?);
    Ok(last.conjugate(&braid::rotation(m).pow(2))?)
}

/// `Ψ'_{n,p}: A(C̄_n) → B_{2n-1}`, `v_i ↦ T_{c_i}^{2p}` with `c_i` around
/// `{2i-1, 2i, 2i+1}` for `i < n`. `closing` overrides the twist about
/// `c_n`; the default is [`default_closing_twist`].
pub fn build_psi_prime(n: usize, p: i64, closing: Option<BraidWord>) -> Result<BuiltMap, RaagError> {
    if n < 3 || p < 1 {
        return Err(RaagError::BadParams(format!("psi' needs n >= 3 and p >= 1, got n={n}, p={p}")));
    }
    let m = 2 * n - 1;
    let mut map = GenMap::new(Target::Braid(m));
    for i in 1..n {
        let t = braid::full_twist(&MarkedCurve::interval(m, 2 * i - 1, 2 * i + 1)?);
        map.insert(Gen(i as u32 - 1), t.pow(2 * p).word().clone());
    }
    let closing = match closing {
        Some(b) if b.strands() != m => return Err(BraidError::MixedStrandCount(b.strands(), m).into()),
        Some(b) => b,
        None => default_closing_twist(n)?,
    };
    map.insert(Gen(n as u32 - 1), closing.pow(2 * p).word().clone());
    Ok(BuiltMap { map, warnings: Vec::new() })
}

/// `Ξ_{g,k}: A(C̄_{(g+1)/2}) → A(C̄_{g+1})`, `v_i ↦ c_k(v_{2i-1}, v_{2i})`.
pub fn build_xi(g: usize, k: usize) -> Result<BuiltMap, RaagError> {
    if g.is_multiple_of(2) || g.div_ceil(2) < 3 || k == 0 {
        return Err(RaagError::BadParams(format!("xi needs odd g >= 5 and k >= 1, got g={g}, k={k}")));
    }
    let mut warnings = Vec::new();
    if k < 2 {
        warnings.push("k = 1 gives the identity-like map v_i -> v_{2i}".to_string());
    }
    let mut map = GenMap::new(Target::Raag(g + 1));
    for i in 1..=g.div_ceil(2) {
        let a = Word::gen(Gen(2 * i as u32 - 2));
        let b = Word::gen(Gen(2 * i as u32 - 1));
        map.insert(Gen(i as u32 - 1), iterated_commutator(k, &a, &b));
    }
    Ok(BuiltMap { map, warnings })
}

/// Points of `B_{2n-1}` enclosed by the curve `c_i` of `Ψ'_{n,p}`.
pub fn psi_prime_support(n: usize, i: usize) -> BTreeSet<usize> {
    if i < n {
        (2 * i - 1..=2 * i + 1).collect()
    } else {
        [2 * n - 1, 1, 2].into_iter().collect()
    }
}

/// Commutation graph of `Ψ'_{n,p}` with the default closing curve.
///
/// The images are pure, and forgetting strands is a homomorphism on pure
/// braids, so a commutator that survives deletion of every strand outside
/// both supports is nontrivial. Only pairs that vanish there go through the
/// full Artin check.
pub fn psi_prime_commutation_graph(n: usize, p: i64, budget: usize) -> Result<CommGraph, RaagError> {
    let psi = build_psi_prime(n, p, None)?.map;
    let m = 2 * n - 1;
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let c = BraidWord::from_word(m, Word::commutator(image(&psi, i)?, image(&psi, j)?))?;
            let keep: BTreeSet<usize> = psi_prime_support(n, i).union(&psi_prime_support(n, j)).copied().collect();
            if !braid::is_identity(&braid::delete_strands(&c, &keep)?, budget)? {
                continue;
            }
            if braid::is_identity(&c, budget)? {
                edges.push((i, j));
            }
        }
    }
    CommGraph::new(n, edges)
}

/// Positions `1, 3, ..., 2n-1` of `B_{2n-1}`.
pub fn odd_positions(n: usize) -> BTreeSet<usize> {
    (1..=n).map(|i| 2 * i - 1).collect()
}

/// Whether forgetting the even strands turns `Ψ'_{n,p}` into `Ψ_{n,q}`
/// generator by generator. The expected identity is `q = 4p`.
pub fn forgetful_matches(n: usize, p: i64, q: i64) -> Result<bool, RaagError> {
    let prime = build_psi_prime(n, p, None)?.map;
    let psi = build_psi(n, q)?.map;
    let keep = odd_positions(n);
    for i in 1..=n {
        let big = BraidWord::from_word(2 * n - 1, image(&prime, i)?.clone())?;
        let small = BraidWord::from_word(n, image(&psi, i)?.clone())?;
        let forgot = braid::delete_strands(&big, &keep)?;
        if !braid::braid_equal(&forgot, &small)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn check_forgetful_composition(n: usize, p: i64) -> Result<bool, RaagError> {
    forgetful_matches(n, p, 4 * p)
}

/// Homology classes of a chain of `2g` curves on `Σ_g` with consecutive
/// intersection number 1: `a_1, b_1, a_2 − a_1, b_2, ..., a_g − a_{g-1}, b_g`.
pub fn chain_classes(g: usize) -> Vec<H1Class> {
    let mut out = Vec::with_capacity(2 * g);
    for k in 1..=g {
        let mut a = H1Class::a(g, k);
        if k > 1 {
            a = a.sub(&H1Class::a(g, k - 1));
        }
        out.push(a);
        out.push(H1Class::b(g, k));
    }
    out
}

/// Symplectic shadow of `Ω_g: B_{2g+1} → MCG(Σ_g)`, `s_i ↦ T_{chain_i}`.
pub fn omega_oracle(g: usize) -> SymplecticOracle {
    let images = chain_classes(g)
        .iter()
        .map(|c| transvection(c, 1, g).expect("chain class has length 2g"))
        .collect();
    SymplecticOracle { genus: g, images }
}

pub fn omega_symplectic(b: &BraidWord) -> Result<SpMatrix, RaagError> {
    if b.strands().is_multiple_of(2) || b.strands() < 3 {
        return Err(RaagError::BadParams(format!("omega needs an odd strand count >= 3, got {}", b.strands())));
    }
    omega_oracle((b.strands() - 1) / 2).evaluate(b.word())
}

/// A user-supplied `Φ: π₁(Σ_h) → A(Γ)` is well defined iff the surface
/// relator maps to the identity.
pub fn validate_surface_map(phi: &GenMap, h: usize, graph: &CommGraph) -> Result<bool, RaagError> {
    let ctx = SurfaceContext::new(h)?;
    let img = phi
        .apply(&ctx.relator())
        .map_err(|e| RaagError::BadParams(e.to_string()))?;
    Ok(raag_normal_form(&img, graph).is_empty())
}
