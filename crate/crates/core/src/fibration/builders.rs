//! Constructors for the standard families.

use crate::braid::{BraidWord, DEFAULT_BUDGET};
use crate::homology::{H1Class, SpMatrix};
use crate::raag::{self, BraidOracle, BuiltMap, CommGraph};
use crate::surface::{central_gen, t_gen};
use crate::words::{Gen, GenMap, Word};

use super::{Curve, Engine, Factor, Factorization, FibrationError, MappingClassExpr, UtModel};

const G0: usize = 2;

fn at(j: usize) -> Word {
    Word::gen(Gen(2 * j as u32 - 2))
}

fn bt(j: usize) -> Word {
    Word::gen(Gen(2 * j as u32 - 1))
}

fn pair_exprs(j: usize) -> (MappingClassExpr, MappingClassExpr) {
    (
        MappingClassExpr::twist(format!("alpha{j}-"), 1).then(format!("alpha{j}+"), -1),
        MappingClassExpr::twist(format!("beta{j}-"), 1).then(format!("beta{j}+"), -1),
    )
}

/// `T_c² [T_{α₁⁻}T_{α₁⁺}⁻¹, T_{β₁⁻}T_{β₁⁺}⁻¹][T_{α₂⁻}T_{α₂⁺}⁻¹, T_{β₂⁻}T_{β₂⁺}⁻¹]`
/// on `Σ_g`, where `c` cuts off the genus-2 subsurface carrying the
/// bounding pairs. Base genus 2, two critical points.
pub fn build_theorem1(g: usize) -> Result<Factorization, FibrationError> {
    theorem1_shape(g, 0, None)
}

/// The same relation with `T_d^n` inserted in front of the first bounding
/// pair, `d` nonseparating with class `a_g`. `n = 0` gives [`build_theorem1`].
pub fn build_xn(g: usize, n: u32) -> Result<Factorization, FibrationError> {
    build_xn_with_d(g, n, H1Class::a(g.max(1), g.max(1)))
}

/// [`build_xn`] with a caller-chosen class for `d`, which must be
/// symplectically orthogonal to `a_1, b_1, a_2, b_2`.
pub fn build_xn_with_d(g: usize, n: u32, d_class: H1Class) -> Result<Factorization, FibrationError> {
    if n > 0 && d_class.coords.iter().take(4).any(|&x| x != 0) {
        return Err(FibrationError::BadParams("d must lie outside the pushed genus-2 subsurface".into()));
    }
    theorem1_shape(g, n, Some(d_class))
}

fn theorem1_shape(g: usize, n: u32, d_class: Option<H1Class>) -> Result<Factorization, FibrationError> {
    if g < 3 {
        return Err(FibrationError::BadParams(format!("needs fiber genus g >= 3, got {g}")));
    }
    let mut f = Factorization::empty(g, Engine::UtModel);
    f.base_genus = 2;
    f.has_section = true;
    f.add_curve(
        Curve::separating("c", g)
            .with_ut(Word::gen(t_gen(G0)))
            .with_description("separates the genus-2 subsurface from the rest"),
    );
    for j in 1..=2 {
        for side in ["-", "+"] {
            f.add_curve(Curve::nonseparating(format!("alpha{j}{side}"), H1Class::a(g, j)));
            f.add_curve(Curve::nonseparating(format!("beta{j}{side}"), H1Class::b(g, j)));
        }
    }
    let mut model = UtModel::new(G0);
    f.factors.push(Factor::Twist { curve: "c".into(), power: 2 });
    for j in 1..=2 {
        let (mut a, b) = pair_exprs(j);
        let mut eta_a = at(j);
        if j == 1 && n > 0 {
            let z = central_gen(G0, 1);
            let class = d_class.clone().expect("n > 0 carries a class");
            f.add_curve(
                Curve::nonseparating("d", class)
                    .with_ut(Word::gen(z))
                    .with_description("nonseparating, in the complementary subsurface"),
            );
            a.terms.insert(0, ("d".into(), n as i64));
            eta_a.push(z, -(n as i64));
            model.central = 1;
        }
        model.images.insert(format!("a{j}"), eta_a);
        model.images.insert(format!("b{j}"), bt(j));
        f.factors.push(Factor::Commutator { a, b });
    }
    for ell in 1..=2 {
        model.images.insert(format!("g{ell}"), Word::gen(t_gen(G0)));
    }
    f.ut_model = Some(model);
    f.checked()
}

/// Product bundle `Σ_g × Σ_h`: `h` commutators of identities. With `g0`
/// set, it carries a push model in which every generator maps to 1.
pub fn build_trivial_bundle(g: usize, h: usize, g0: Option<usize>) -> Result<Factorization, FibrationError> {
    if g == 0 {
        return Err(FibrationError::BadParams("fiber genus must be positive".into()));
    }
    let mut f = Factorization::empty(g, if g0.is_some() { Engine::UtModel } else { Engine::Symplectic });
    f.base_genus = h;
    f.has_section = true;
    for _ in 0..h {
        f.factors.push(Factor::Commutator { a: MappingClassExpr::identity(), b: MappingClassExpr::identity() });
    }
    if let Some(g0) = g0 {
        let mut model = UtModel::new(g0);
        for j in 1..=h {
            model.images.insert(format!("a{j}"), Word::identity());
            model.images.insert(format!("b{j}"), Word::identity());
        }
        f.ut_model = Some(model);
    }
    f.checked()
}

/// Degree-`m` cyclic cover data used to pull back [`build_theorem1`] to
/// base genus `m + 1`.
pub fn default_theorem1_cover(base_genus: usize) -> Result<super::cover::CoverSpec, FibrationError> {
    if base_genus < 2 {
        return Err(FibrationError::BadParams("pullbacks of a genus-2 base have genus >= 2".into()));
    }
    super::cover::CoverSpec::cyclic(2, base_genus - 1)
}

/// Surface bundle data for fiber genus `g` built from
/// `Ω_g ∘ Ψ'_{g+1,p} ∘ Φ`, where `Φ: π₁(Σ_h) → A(C̄_{g+1})` is user supplied.
#[derive(Clone, Debug)]
pub struct Theorem3Data {
    pub g: usize,
    pub p: i64,
    pub psi_prime: BuiltMap,
    /// Edges of `C̄_{g+1}` go to commuting braids.
    pub raag_hom: bool,
    /// Non-edges go to non-commuting braids.
    pub pattern_exact: bool,
    /// Forgetting the even strands yields `Ψ_{g+1,4p}`.
    pub forgetful: bool,
    /// `Ω(Ψ'(v_i))` acts trivially on homology, per vertex.
    pub omega_torelli: Vec<bool>,
    /// `Ξ_{g,2}` is a homomorphism (odd `g` only).
    pub xi_hom: Option<bool>,
    pub phi: Option<GenMap>,
    pub phi_valid: Option<bool>,
}

impl Theorem3Data {
    pub fn verified(&self) -> bool {
        self.raag_hom
            && self.pattern_exact
            && self.forgetful
            && self.omega_torelli.iter().all(|&b| b)
            && self.xi_hom.unwrap_or(true)
            && self.phi_valid.unwrap_or(true)
    }

    /// Symplectic monodromy of the standard generators of `π₁(Σ_h)`.
    pub fn full_monodromy(&self) -> Result<Vec<SpMatrix>, FibrationError> {
        let phi = self.phi.as_ref().ok_or(FibrationError::MissingPhi)?;
        let n = self.g + 1;
        let mut out = Vec::new();
        for word in phi.images.values() {
            let braid = self.psi_prime.map.apply(word)?;
            let b = BraidWord::from_word(2 * n - 1, braid)?;
            out.push(raag::omega_symplectic(&b)?);
        }
        Ok(out)
    }
}

pub fn build_theorem3(g: usize, p: i64, phi: Option<GenMap>) -> Result<Theorem3Data, FibrationError> {
    if g < 4 || p < 3 {
        return Err(FibrationError::BadParams(format!("needs g >= 4 and p >= 3, got g={g}, p={p}")));
    }
    let n = g + 1;
    let graph = raag::complement_cycle(n)?;
    let psi_prime = raag::build_psi_prime(n, p, None)?;
    let oracle = BraidOracle { strands: 2 * n - 1, budget: DEFAULT_BUDGET };
    let raag_hom = raag::check_raag_hom(&psi_prime.map, &graph, &oracle)?;
    let pattern_exact = raag::psi_prime_commutation_graph(n, p, DEFAULT_BUDGET)? == graph;
    let forgetful = raag::check_forgetful_composition(n, p)?;
    let mut omega_torelli = Vec::new();
    for i in 0..n {
        let w = psi_prime.map.image(Gen(i as u32)).expect("all vertices mapped").clone();
        omega_torelli.push(raag::omega_symplectic(&BraidWord::from_word(2 * n - 1, w)?)?.is_identity());
    }
    let xi_hom = if g % 2 == 1 {
        let xi = raag::build_xi(g, 2)?;
        let source = raag::complement_cycle(g.div_ceil(2))?;
        Some(raag::check_raag_hom(&xi.map, &source, &raag::RaagOracle(graph.clone()))?)
    } else {
        None
    };
    let phi_valid = match &phi {
        Some(map) => Some(validate_phi(map, &graph)?),
        None => None,
    };
    Ok(Theorem3Data { g, p, psi_prime, raag_hom, pattern_exact, forgetful, omega_torelli, xi_hom, phi, phi_valid })
}

fn validate_phi(phi: &GenMap, graph: &CommGraph) -> Result<bool, FibrationError> {
    let k = phi.images.len();
    if k < 4 || k % 2 == 1 {
        return Err(FibrationError::BadParams(format!("phi must map a1, b1, ..., ah (h >= 2), got {k} images")));
    }
    Ok(raag::validate_surface_map(phi, k / 2, graph)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::AbelianGroup;
    use num_bigint::BigInt;

    #[test]
    fn theorem1_small_genera() {
        for g in 3..=6 {
            let f = build_theorem1(g).unwrap();
            assert!(f.verify_relation().unwrap());
        }
        assert!(build_theorem1(2).is_err());
    }

    #[test]
    fn xn_zero_is_theorem1() {
        assert_eq!(build_xn(3, 0).unwrap(), build_theorem1(3).unwrap());
    }

    #[test]
    fn xn_homology() {
        let h = build_xn(3, 2).unwrap().h1_total_space().unwrap();
        assert_eq!(h.to_string(), "Z/2 + Z^9");
        let h1 = build_xn(3, 1).unwrap().h1_total_space().unwrap();
        assert_eq!(h1, AbelianGroup::free(9));
        let moved = build_xn_with_d(4, 3, H1Class::b(4, 3)).unwrap().h1_total_space().unwrap();
        assert_eq!(moved.torsion, vec![BigInt::from(3)]);
        assert_eq!(moved.rank, 11);
    }

    #[test]
    fn xn_not_torelli_but_minimal() {
        let f = build_xn(3, 2).unwrap();
        assert!(f.verify_relation().unwrap());
        assert!(!f.is_torelli_factorization().unwrap());
        assert!(f.is_relatively_minimal().unwrap());
    }

    #[test]
    fn d_inside_pushed_subsurface_rejected() {
        assert!(build_xn_with_d(3, 1, H1Class::a(3, 1)).is_err());
    }

    #[test]
    fn theorem3_needs_phi_for_full_monodromy() {
        assert!(build_theorem3(3, 3, None).is_err());
        assert!(build_theorem3(4, 2, None).is_err());
    }
}
