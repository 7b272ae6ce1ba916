//! Indecomposability certificates in the push model.
//!
//! The certificate checks four algebraic facts about
//! `η: π₁(Σ_{h,k}) → π₁(UT(Σ_g0))`:
//!
//! 1. the surface relator maps to 1, so `η` is well defined;
//! 2. each puncture loop maps to `t^{±1}`;
//! 3. random products of conjugates of all puncture loops, which lie in the
//!    kernel of the filling map to `π₁(Σ_h)`, map to a fixed nonzero power of `t`;
//! 4. projecting `η` to `π₁(Σ_g0)` agrees with the filled base map.
//!
//! These are the algebraic inputs of the indecomposability argument. The
//! topological step from them is cited, not checked.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::surface::{SurfaceContext, UtContext};
use crate::words::{Alphabet, Gen, GenMap, Word};

use super::{Factorization, FibrationError};

/// `η` together with the loops the certificate samples from.
#[derive(Clone, Debug)]
pub struct UtMonodromy {
    pub g0: usize,
    pub base_genus: usize,
    pub punctures: usize,
    pub eta: GenMap,
    pub relators: Vec<Word>,
    /// Generators of the group whose loops are sampled as conjugators.
    pub subgroup_gens: Vec<Word>,
    pub peripherals: Vec<Word>,
}

impl UtMonodromy {
    pub fn from_factorization(f: &Factorization) -> Result<Self, FibrationError> {
        let model = f.ut_model.as_ref().ok_or(FibrationError::NoUtModel)?;
        let k = f.critical_points();
        let source = Alphabet::punctured_surface(f.base_genus, k);
        Ok(Self {
            g0: model.g0,
            base_genus: f.base_genus,
            punctures: k,
            eta: f.eta_map()?,
            relators: vec![f.source_relator()],
            subgroup_gens: source.gens().map(Word::gen).collect(),
            peripherals: (0..k).map(|l| Word::gen(Gen((2 * f.base_genus + l) as u32))).collect(),
        })
    }

    /// Base map `π₁(Σ_{h,k}) → π₁(Σ_h)`; only compared against `η` when `h = g0`.
    fn fill(&self, w: &Word) -> Word {
        let h = 2 * self.base_genus as u32;
        Word::reduce(w.letters().iter().copied().filter(|(g, _)| g.0 < h))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub items: Vec<CertificateItem>,
    pub samples: usize,
    pub seed: u64,
    /// Rendered sample images with their counts.
    pub sampled_images: BTreeMap<String, usize>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn conclusion(&self) -> Option<&'static str> {
        self.passed().then_some(
            "the filling kernel contains loops with nontrivial central monodromy; \
             indecomposability then follows from the published fiber sum criterion (cited, not machine-checked)",
        )
    }
}

fn random_word<R: Rng>(gens: &[Word], rng: &mut R) -> Word {
    let mut w = Word::identity();
    if gens.is_empty() {
        return w;
    }
    for _ in 0..rng.gen_range(0..=8) {
        let g = &gens[rng.gen_range(0..gens.len())];
        w.append(&if rng.gen_bool(0.5) { g.clone() } else { g.inverse() });
    }
    w
}

pub fn certify(m: &UtMonodromy, samples: usize, seed: u64) -> Result<CertificateReport, FibrationError> {
    let ctx = UtContext::new(m.g0)?;
    let image = |w: &Word| -> Result<_, FibrationError> { Ok(ctx.reduce(&m.eta.apply(w)?)) };
    let mut items = Vec::new();

    let bad: Vec<String> = m
        .relators
        .iter()
        .map(image)
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|x| !x.is_identity())
        .map(|x| x.render())
        .collect();
    items.push(CertificateItem {
        name: "well-defined".into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} relator(s) map to the identity", m.relators.len())
        } else {
            format!("relator images: {}", bad.join(", "))
        },
    });

    let peripheral_images = m.peripherals.iter().map(image).collect::<Result<Vec<_>, _>>()?;
    let peripheral_ok = peripheral_images.iter().all(|x| x.is_fiber_power() && x.t_exp.abs() == 1);
    let rendered: Vec<String> = peripheral_images.iter().map(|x| x.render()).collect();
    items.push(CertificateItem {
        name: "peripherals".into(),
        passed: peripheral_ok,
        detail: if m.peripherals.is_empty() {
            "no puncture loops".into()
        } else {
            format!("puncture loops map to {}", rendered.join(", "))
        },
    });

    let expected: i64 = peripheral_images.iter().map(|x| x.t_exp).sum();
    let mut sampled_images = BTreeMap::new();
    let mut all_match = true;
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let mut loop_word = Word::identity();
        for p in &m.peripherals {
            loop_word.append(&p.conjugate(&random_word(&m.subgroup_gens, &mut rng)));
        }
        let x = image(&loop_word)?;
        all_match &= x.is_fiber_power() && x.t_exp == expected;
        *sampled_images.entry(x.render()).or_insert(0) += 1;
    }
    items.push(CertificateItem {
        name: "kernel loops".into(),
        passed: samples > 0 && all_match && expected != 0,
        detail: format!(
            "{samples} products of conjugated puncture loops; expected t^{expected}; images {}",
            sampled_images.iter().map(|(k, v)| format!("{k} x{v}")).collect::<Vec<_>>().join(", ")
        ),
    });

    let projection = if m.base_genus != m.g0 {
        CertificateItem {
            name: "projection".into(),
            passed: false,
            detail: format!("base genus {} differs from the pushed genus {}", m.base_genus, m.g0),
        }
    } else {
        let surface = SurfaceContext::new(m.g0)?;
        let mut mismatches = Vec::new();
        for w in &m.subgroup_gens {
            let projected = ctx.project_word(&m.eta.apply(w)?);
            let diff = projected.mul(&m.fill(w).inverse());
            if !surface.is_trivial(&diff)? {
                mismatches.push(w.display(&Alphabet::punctured_surface(m.base_genus, m.punctures)).to_string());
            }
        }
        CertificateItem {
            name: "projection".into(),
            passed: mismatches.is_empty(),
            detail: if mismatches.is_empty() {
                format!("{} generators project to their filled images", m.subgroup_gens.len())
            } else {
                format!("mismatch on {}", mismatches.join(", "))
            },
        }
    };
    items.push(projection);

    Ok(CertificateReport { items, samples, seed, sampled_images })
}

pub fn certify_indecomposable(f: &Factorization, samples: usize, seed: u64) -> Result<CertificateReport, FibrationError> {
    certify(&UtMonodromy::from_factorization(f)?, samples, seed)
}
