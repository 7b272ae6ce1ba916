//! Finite covers of the base and pulled-back monodromy.
//!
//! A connected degree-`m` cover of `Σ_h` is a transitive action of
//! `π₁(Σ_h)` on sheets `0..m`. Loops around the punctures act trivially.
//! The pullback's fundamental group is presented by Schreier generators
//! `T_s x T_{s·x}⁻¹` over a BFS transversal `T`.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::homology::{self, AbelianGroup, H1Class, SpMatrix};
use crate::surface::{UtContext, UtElement};
use crate::words::{Gen, Word};

use super::certificate::UtMonodromy;
use super::{Factorization, FibrationError, Unit};

/// Permutations are 0-based in memory: `perm[s]` is the sheet reached from `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSpec {
    pub degree: usize,
    pub alpha: Vec<Vec<usize>>,
    pub beta: Vec<Vec<usize>>,
}

fn is_perm(p: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    p.len() == m && p.iter().all(|&x| x < m && !std::mem::replace(&mut seen[x], true))
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

impl CoverSpec {
    pub fn identity(h: usize, m: usize) -> Self {
        let id: Vec<usize> = (0..m).collect();
        Self { degree: m, alpha: vec![id.clone(); h], beta: vec![id; h] }
    }

    pub fn base_genus(&self) -> usize {
        self.alpha.len()
    }

    /// `ρ(α₁)` an `m`-cycle, every other generator trivial.
    pub fn cyclic(h: usize, m: usize) -> Result<Self, FibrationError> {
        if h == 0 || m == 0 {
            return Err(FibrationError::BadParams("cyclic cover needs h >= 1 and m >= 1".into()));
        }
        let mut c = Self::identity(h, m);
        c.alpha[0] = (0..m).map(|s| (s + 1) % m).collect();
        Ok(c)
    }

    /// A random transitive cover with `h >= 2`: `ρ(α₁), ρ(β₁)` uniform,
    /// `ρ(α₂), ρ(β₂)` chosen to cancel their commutator, other pairs commuting.
    pub fn random_transitive<R: Rng>(h: usize, m: usize, rng: &mut R) -> Result<Self, FibrationError> {
        if h < 2 || m == 0 {
            return Err(FibrationError::BadParams("random covers need h >= 2 and m >= 1".into()));
        }
        loop {
            let mut c = Self::identity(h, m);
            c.alpha[0].shuffle(rng);
            c.beta[0].shuffle(rng);
            // [ρb, ρa] cancels [ρa, ρb]
            c.alpha[1] = c.beta[0].clone();
            c.beta[1] = c.alpha[0].clone();
            for j in 2..h {
                c.alpha[j].shuffle(rng);
            }
            if c.validate().is_ok() {
                return Ok(c);
            }
        }
    }

    fn act(&self, s: usize, g: Gen, e: i64, h: usize) -> usize {
        let i = g.0 as usize;
        if i >= 2 * h {
            return s;
        }
        let p = if i.is_multiple_of(2) { &self.alpha[i / 2] } else { &self.beta[i / 2] };
        if e > 0 {
            p[s]
        } else {
            invert(p)[s]
        }
    }

    /// Sheet reached from `s` along a word over the punctured surface alphabet.
    pub fn walk(&self, s: usize, w: &Word) -> usize {
        w.unit_letters().fold(s, |s, (g, e)| self.act(s, g, e, self.base_genus()))
    }

    pub fn validate(&self) -> Result<(), FibrationError> {
        let m = self.degree;
        if m == 0 || self.alpha.len() != self.beta.len() {
            return Err(FibrationError::BadParams("cover needs degree >= 1 and matching alpha/beta".into()));
        }
        if !self.alpha.iter().chain(&self.beta).all(|p| is_perm(p, m)) {
            return Err(FibrationError::BadParams(format!("entries must be permutations of {m} sheets")));
        }
        let h = self.base_genus();
        let mut relator = Word::identity();
        for j in 0..h as u32 {
            relator.append(&Word::commutator(&Word::gen(Gen(2 * j)), &Word::gen(Gen(2 * j + 1))));
        }
        if (0..m).any(|s| self.walk(s, &relator) != s) {
            return Err(FibrationError::RelationViolation);
        }
        if self.transversal().len() != m {
            return Err(FibrationError::NotTransitive);
        }
        Ok(())
    }

    /// BFS transversal: the word `T_s` reaching each sheet `s` from sheet 0.
    pub fn transversal(&self) -> BTreeMap<usize, Word> {
        let h = self.base_genus() as u32;
        let mut out = BTreeMap::from([(0, Word::identity())]);
        let mut queue = VecDeque::from([0]);
        while let Some(s) = queue.pop_front() {
            for i in 0..2 * h {
                for e in [1, -1] {
                    let next = self.act(s, Gen(i), e, h as usize);
                    if !out.contains_key(&next) {
                        let mut w = out[&s].clone();
                        w.push(Gen(i), e);
                        out.insert(next, w);
                        queue.push_back(next);
                    }
                }
            }
        }
        out
    }

    /// 1-based permutations, as stored in cover files.
    pub fn to_one_based(&self) -> Self {
        let bump = |v: &Vec<Vec<usize>>| v.iter().map(|p| p.iter().map(|x| x + 1).collect()).collect();
        Self { degree: self.degree, alpha: bump(&self.alpha), beta: bump(&self.beta) }
    }

    pub fn from_one_based(&self) -> Result<Self, FibrationError> {
        let drop = |v: &Vec<Vec<usize>>| -> Result<Vec<Vec<usize>>, FibrationError> {
            v.iter()
                .map(|p| {
                    p.iter()
                        .map(|&x| x.checked_sub(1).ok_or_else(|| FibrationError::Parse("sheets are numbered from 1".into())))
                        .collect()
                })
                .collect()
        };
        Ok(Self { degree: self.degree, alpha: drop(&self.alpha)?, beta: drop(&self.beta)? })
    }
}

/// A puncture of the pulled-back base: the loop `T_s g_ℓ T_s⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peripheral {
    pub sheet: usize,
    pub puncture: usize,
    pub transversal: Word,
    pub word: Word,
    /// The base twist curve whose conjugate this monodromy is.
    pub curve: String,
}

#[derive(Clone, Debug)]
pub struct CoveredMonodromy {
    pub degree: usize,
    pub base_genus: usize,
    pub fiber_genus: usize,
    pub transversal: BTreeMap<usize, Word>,
    /// Schreier generators as words in the base group, with their monodromy.
    pub schreier: Vec<(Word, SpMatrix)>,
    pub peripherals: Vec<Peripheral>,
    pub vanishing: Vec<H1Class>,
    pub has_section: bool,
    pub ut: Option<UtMonodromy>,
}

impl CoveredMonodromy {
    pub fn critical_points(&self) -> usize {
        self.peripherals.len()
    }

    /// Push-model images of the peripheral loops.
    pub fn peripheral_images(&self) -> Result<Vec<UtElement>, FibrationError> {
        let ut = self.ut.as_ref().ok_or(FibrationError::NoUtModel)?;
        let ctx = UtContext::new(ut.g0)?;
        self.peripherals.iter().map(|p| Ok(ctx.reduce(&ut.eta.apply(&p.word)?))).collect()
    }

    /// Each peripheral is the recorded transversal conjugate of its puncture
    /// loop and maps to `t^{±1}`.
    pub fn verify_peripherals(&self) -> Result<bool, FibrationError> {
        let h = (self.base_genus - 1) / self.degree + 1;
        for p in &self.peripherals {
            let g = Word::gen(Gen((2 * h + p.puncture - 1) as u32));
            if p.word != g.conjugate(&p.transversal) || self.transversal.get(&p.sheet) != Some(&p.transversal) {
                return Ok(false);
            }
        }
        Ok(self
            .peripheral_images()?
            .iter()
            .all(|x| x.is_fiber_power() && x.t_exp.abs() == 1))
    }

    pub fn h1_total_space(&self) -> Result<AbelianGroup, FibrationError> {
        let mats: Vec<SpMatrix> = self.schreier.iter().map(|(_, m)| m.clone()).collect();
        Ok(homology::h1_total_space(self.base_genus, self.fiber_genus, &mats, &self.vanishing, self.has_section)?)
    }
}

/// Symplectic monodromy `μ` of a base word: an anti-homomorphism with
/// `μ(a_j) = A_j⁻¹`, `μ(b_j) = B_j⁻¹` and `μ(g_ℓ)` the twist about the
/// `ℓ`-th vanishing cycle.
pub fn base_symplectic(f: &Factorization, w: &Word) -> Result<SpMatrix, FibrationError> {
    let mut gens = Vec::new();
    for m in f.base_monodromy()? {
        gens.push(m.inverse());
    }
    for u in f.units() {
        if let Unit::Twist { curve, .. } = u {
            gens.push(homology::transvection(&f.curves[&curve].h1, 1, f.fiber_genus)?);
        }
    }
    let mut out = SpMatrix::identity(f.fiber_genus);
    for (g, e) in w.unit_letters().collect::<Vec<_>>().into_iter().rev() {
        let m = &gens[g.0 as usize];
        out = out.mul(&if e > 0 { m.clone() } else { m.inverse() });
    }
    Ok(out)
}

pub fn pullback(f: &Factorization, cover: &CoverSpec) -> Result<CoveredMonodromy, FibrationError> {
    cover.validate()?;
    let h = f.base_genus;
    if cover.base_genus() != h {
        return Err(FibrationError::BadParams(format!(
            "cover is over genus {}, factorization over genus {h}",
            cover.base_genus()
        )));
    }
    let m = cover.degree;
    let k = f.critical_points();
    let transversal = cover.transversal();
    let twist_curves: Vec<String> = f
        .units()
        .into_iter()
        .filter_map(|u| match u {
            Unit::Twist { curve, .. } => Some(curve),
            Unit::Commutator { .. } => None,
        })
        .collect();

    // surface generators plus all but one puncture generate the punctured group
    let mut schreier = Vec::new();
    let free_gens = 2 * h + k.saturating_sub(1);
    for (&s, ts) in &transversal {
        for i in 0..free_gens as u32 {
            let x = Gen(i);
            let target = cover.act(s, x, 1, h);
            let mut w = ts.clone();
            w.push(x, 1);
            w.append(&transversal[&target].inverse());
            if !w.is_identity() {
                let mat = base_symplectic(f, &w)?;
                schreier.push((w, mat));
            }
        }
    }

    let mut peripherals = Vec::new();
    let mut vanishing = Vec::new();
    for (&s, ts) in &transversal {
        for (ell, curve) in twist_curves.iter().enumerate() {
            let g = Gen((2 * h + ell) as u32);
            let word = Word::gen(g).conjugate(ts);
            peripherals.push(Peripheral { sheet: s, puncture: ell + 1, transversal: ts.clone(), word, curve: curve.clone() });
            vanishing.push(base_symplectic(f, ts)?.inverse().apply(&f.curves[curve].h1)?);
        }
    }

    let ut = match &f.ut_model {
        Some(_) => {
            let mut u = UtMonodromy::from_factorization(f)?;
            u.subgroup_gens = schreier.iter().map(|(w, _)| w.clone()).collect();
            u.peripherals = peripherals.iter().map(|p| p.word.clone()).collect();
            Some(u)
        }
        None => None,
    };

    Ok(CoveredMonodromy {
        degree: m,
        base_genus: m * (h - 1) + 1,
        fiber_genus: f.fiber_genus,
        transversal,
        schreier,
        peripherals,
        vanishing,
        has_section: f.has_section,
        ut,
    })
}

#[cfg(test)]
mod tests {
    use super::super::builders::build_theorem1;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cyclic_cover_counts() {
        let f = build_theorem1(3).unwrap();
        for (m, genus) in [(1, 2), (2, 3), (3, 4)] {
            let p = pullback(&f, &CoverSpec::cyclic(2, m).unwrap()).unwrap();
            assert_eq!(p.base_genus, genus);
            assert_eq!(p.critical_points(), 2 * m);
        }
    }

    #[test]
    fn degree_one_is_identity_pullback() {
        let f = build_theorem1(3).unwrap();
        let p = pullback(&f, &CoverSpec::identity(2, 1)).unwrap();
        assert_eq!(p.base_genus, 2);
        assert_eq!(p.h1_total_space().unwrap(), f.h1_total_space().unwrap());
    }

    #[test]
    fn bad_covers() {
        let mut c = CoverSpec::identity(2, 2);
        assert_eq!(c.validate(), Err(FibrationError::NotTransitive));
        c.alpha[0] = vec![1, 0];
        c.alpha[1] = vec![1, 0];
        c.beta[0] = vec![0, 1];
        assert!(c.validate().is_ok());
        let mut s3 = CoverSpec::identity(2, 3);
        s3.alpha[0] = vec![1, 0, 2];
        s3.beta[0] = vec![0, 2, 1];
        assert_eq!(s3.validate(), Err(FibrationError::RelationViolation));
    }

    #[test]
    fn random_covers_are_transitive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 1..=5 {
            let c = CoverSpec::random_transitive(2, m, &mut rng).unwrap();
            assert_eq!(c.transversal().len(), m);
        }
    }

    #[test]
    fn schreier_words_return_to_base_sheet() {
        let f = build_theorem1(3).unwrap();
        let c = CoverSpec::cyclic(2, 3).unwrap();
        let p = pullback(&f, &c).unwrap();
        for (w, _) in &p.schreier {
            assert_eq!(c.walk(0, w), 0);
        }
    }
}
