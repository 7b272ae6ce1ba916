//! Monodromy factorizations and the checks run on them.
//!
//! A factorization is an ordered list of factors `F_1 F_2 ⋯ F_r` in the
//! mapping class group, composed right to left, that multiplies to the
//! identity. Each factor is a power of a Dehn twist or a commutator of two
//! mapping classes. Mapping classes are evaluated in one of three engines:
//!
//! * `ut-model`: exact, for factors in the image of the push map from
//!   `π₁(UT(Σ_g0))`, extended by central letters for twists about curves
//!   disjoint from the pushed subsurface;
//! * `symplectic`: the action on `H₁(Σ_g; ℤ)`, exact on homology only;
//! * `braid-induced`: curves carry braid words and products are compared
//!   with the Artin action.
//!
//! The push map is an anti-homomorphism, so a product `Push(u_1)⋯Push(u_r)`
//! is `Push(u_r⋯u_1)`. [`Factorization::evaluate_units`] is the only place
//! that order reversal happens.
//!
//! Factors are also read as the images of the generators of
//! `π₁(Σ_{h,k})`: the `ℓ`-th twist unit (counted left to right, with a
//! power-`p` twist contributing `p` units) is the monodromy around the
//! puncture `g_ℓ`, and the `j`-th commutator is `[μ(a_j)⁻¹, μ(b_j)⁻¹]`.

pub mod builders;
pub mod certificate;
pub mod commlen;
pub mod cover;
pub mod io;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{self, BraidError, BraidWord};
use crate::homology::{self, AbelianGroup, H1Class, HomologyError, SpMatrix};
use crate::raag::RaagError;
use crate::surface::{SurfaceError, UtContext, UtElement};
use crate::words::{Alphabet, Gen, GenMap, Target, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FibrationError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("missing {engine} evaluation for {what}")]
    MissingEvaluation { engine: Engine, what: String },
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("curve `{0}` has no essentiality witness (nonzero class or push-model word)")]
    UnwitnessedCurve(String),
    #[error("invalid curve `{0}`: {1}")]
    InvalidCurve(String, String),
    #[error("fiber genera differ: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("the factors do not multiply to the identity in the {0} engine")]
    RelationFails(Engine),
    #[error("cover is not transitive")]
    NotTransitive,
    #[error("cover permutations violate the surface relation")]
    RelationViolation,
    #[error("factorization has no push model")]
    NoUtModel,
    #[error("the full monodromy needs a user-supplied map from the surface group")]
    MissingPhi,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Raag(#[from] RaagError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    UtModel,
    Symplectic,
    BraidInduced,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::UtModel => "ut-model",
            Engine::Symplectic => "symplectic",
            Engine::BraidInduced => "braid-induced",
        })
    }
}

impl FromStr for Engine {
    type Err = FibrationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ut-model" => Ok(Engine::UtModel),
            "symplectic" => Ok(Engine::Symplectic),
            "braid-induced" => Ok(Engine::BraidInduced),
            other => Err(FibrationError::Parse(format!("unknown engine `{other}`"))),
        }
    }
}

/// A simple closed curve on the fiber, described by the data the engines use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    pub h1: H1Class,
    pub separating: bool,
    /// Declared not nullhomotopic. Needs a witness, see [`Curve::essential_witness`].
    pub essential: bool,
    /// Preimage of the twist under the push map, over the unit tangent alphabet.
    pub ut_word: Option<Word>,
    pub braid: Option<BraidWord>,
    pub description: Option<String>,
}

impl Curve {
    pub fn nonseparating(name: impl Into<String>, h1: H1Class) -> Self {
        Self {
            name: name.into(),
            h1,
            separating: false,
            essential: true,
            ut_word: None,
            braid: None,
            description: None,
        }
    }

    pub fn separating(name: impl Into<String>, genus: usize) -> Self {
        Self { separating: true, ..Self::nonseparating(name, H1Class::zero(genus)) }
    }

    pub fn with_ut(mut self, w: Word) -> Self {
        self.ut_word = Some(w);
        self
    }

    pub fn with_description(mut self, d: impl Into<String>) -> Self {
        self.description = Some(d.into());
        self
    }

    fn validate(&self, genus: usize) -> Result<(), FibrationError> {
        if self.h1.coords.len() != 2 * genus {
            return Err(FibrationError::InvalidCurve(
                self.name.clone(),
                format!("class has length {}, expected {}", self.h1.coords.len(), 2 * genus),
            ));
        }
        if self.separating && !self.h1.is_zero() {
            return Err(FibrationError::InvalidCurve(
                self.name.clone(),
                "separating curves are null-homologous".to_string(),
            ));
        }
        Ok(())
    }

    /// `Some(true)` when essentiality is witnessed, `Some(false)` when the
    /// curve is known to bound a disk, `None` when nothing decides it.
    pub fn essential_witness(&self, ut: Option<&UtContext>) -> Option<bool> {
        if !self.essential {
            return Some(false);
        }
        if !self.h1.is_zero() {
            return Some(true);
        }
        match (&self.ut_word, ut) {
            (Some(w), Some(ctx)) => Some(!ctx.reduce(w).is_identity()),
            _ => None,
        }
    }
}

/// Formal product of twists `T_{x1}^{e1} ⋯ T_{xr}^{er}`, applied right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MappingClassExpr {
    pub terms: Vec<(String, i64)>,
}

impl MappingClassExpr {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn twist(curve: impl Into<String>, power: i64) -> Self {
        Self { terms: vec![(curve.into(), power)] }
    }

    pub fn then(mut self, curve: impl Into<String>, power: i64) -> Self {
        self.terms.push((curve.into(), power));
        self
    }

    /// Whitespace-separated curve names with optional `^k` or `'`; `1` is
    /// the identity.
    pub fn parse(text: &str) -> Result<Self, FibrationError> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Self::identity());
        }
        let mut alphabet = Alphabet::new();
        let w = Word::parse_interning(text, &mut alphabet)?;
        let terms = w
            .letters()
            .iter()
            .map(|&(g, e)| (alphabet.name(g).unwrap_or_default().to_string(), e))
            .collect();
        Ok(Self { terms })
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "1".to_string();
        }
        self.terms
            .iter()
            .map(|(c, e)| if *e == 1 { c.clone() } else { format!("{c}^{e}") })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn curves(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|(c, _)| c.as_str())
    }

    pub fn symplectic(&self, curves: &BTreeMap<String, Curve>, genus: usize) -> Result<SpMatrix, FibrationError> {
        let mut m = SpMatrix::identity(genus);
        for (name, e) in &self.terms {
            let c = curves.get(name).ok_or_else(|| FibrationError::UnknownCurve(name.clone()))?;
            m = m.mul(&homology::transvection(&c.h1, *e, genus)?);
        }
        Ok(m)
    }

    pub fn braid(&self, curves: &BTreeMap<String, Curve>, strands: usize) -> Result<BraidWord, FibrationError> {
        let mut b = BraidWord::identity(strands);
        for (name, e) in &self.terms {
            let c = curves.get(name).ok_or_else(|| FibrationError::UnknownCurve(name.clone()))?;
            let t = c.braid.as_ref().ok_or_else(|| FibrationError::MissingEvaluation {
                engine: Engine::BraidInduced,
                what: format!("curve `{name}`"),
            })?;
            b = b.mul(&t.pow(*e))?;
        }
        Ok(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Twist { curve: String, power: u32 },
    Commutator { a: MappingClassExpr, b: MappingClassExpr },
}

/// The push model: images of the generators `a_j, b_j, g_ℓ` of `π₁(Σ_{h,k})`
/// in `π₁(UT(Σ_g0))` (times `central` extra central letters).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UtModel {
    pub g0: usize,
    pub central: usize,
    pub images: BTreeMap<String, Word>,
}

impl UtModel {
    pub fn new(g0: usize) -> Self {
        Self { g0, central: 0, images: BTreeMap::new() }
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::unit_tangent(self.g0, self.central)
    }

    pub fn context(&self) -> Result<UtContext, FibrationError> {
        Ok(UtContext::new(self.g0)?)
    }

    pub fn image(&self, generator: &str) -> Option<&Word> {
        self.images.get(generator)
    }
}

/// One elementary piece of the product: a single twist or one commutator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unit {
    /// `index` is the 1-based puncture number `ℓ`.
    Twist { factor: usize, curve: String, index: usize },
    /// `pair` is the 1-based handle number `j`.
    Commutator { factor: usize, pair: usize },
}

/// The value of a product in one engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Ut(UtElement),
    Symplectic(SpMatrix),
    Braid(BraidWord),
}

impl Evaluation {
    pub fn is_identity(&self) -> Result<bool, FibrationError> {
        Ok(match self {
            Evaluation::Ut(x) => x.is_identity(),
            Evaluation::Symplectic(m) => m.is_identity(),
            Evaluation::Braid(b) => braid::is_identity(b, braid::DEFAULT_BUDGET)?,
        })
    }

    pub fn render(&self) -> String {
        match self {
            Evaluation::Ut(x) => x.render(),
            Evaluation::Symplectic(m) => {
                if m.is_identity() {
                    "I".to_string()
                } else {
                    m.matrix().render().trim_end().replace('\n', "; ")
                }
            }
            Evaluation::Braid(b) => b.display(),
        }
    }
}

/// A monodromy factorization of a genus-`g` fibration over a genus-`h` base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub fiber_genus: usize,
    pub base_genus: usize,
    pub engine: Engine,
    pub curves: BTreeMap<String, Curve>,
    pub factors: Vec<Factor>,
    pub ut_model: Option<UtModel>,
    pub has_section: bool,
    /// Drafts skip the identity check at construction.
    pub draft: bool,
    pub braid_strands: Option<usize>,
}

impl Factorization {
    pub fn empty(fiber_genus: usize, engine: Engine) -> Self {
        Self {
            fiber_genus,
            base_genus: 0,
            engine,
            curves: BTreeMap::new(),
            factors: Vec::new(),
            ut_model: None,
            has_section: false,
            draft: false,
            braid_strands: None,
        }
    }

    pub fn add_curve(&mut self, c: Curve) {
        self.curves.insert(c.name.clone(), c);
    }

    /// Structural checks, then the identity check unless this is a draft.
    pub fn checked(self) -> Result<Self, FibrationError> {
        let f = self.validated()?;
        if !f.draft && !f.verify_relation()? {
            return Err(FibrationError::RelationFails(f.engine));
        }
        Ok(f)
    }

    pub fn validated(self) -> Result<Self, FibrationError> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), FibrationError> {
        for c in self.curves.values() {
            c.validate(self.fiber_genus)?;
        }
        let mut pairs = 0;
        for f in &self.factors {
            match f {
                Factor::Twist { curve, power } => {
                    if !self.curves.contains_key(curve) {
                        return Err(FibrationError::UnknownCurve(curve.clone()));
                    }
                    if *power == 0 {
                        return Err(FibrationError::BadParams("twist powers must be positive".into()));
                    }
                }
                Factor::Commutator { a, b } => {
                    pairs += 1;
                    for name in a.curves().chain(b.curves()) {
                        if !self.curves.contains_key(name) {
                            return Err(FibrationError::UnknownCurve(name.to_string()));
                        }
                    }
                }
            }
        }
        if pairs != self.base_genus {
            return Err(FibrationError::BadParams(format!(
                "base genus {} but {} commutator pairs",
                self.base_genus, pairs
            )));
        }
        Ok(())
    }

    pub fn units(&self) -> Vec<Unit> {
        let mut out = Vec::new();
        let (mut ell, mut j) = (0, 0);
        for (i, f) in self.factors.iter().enumerate() {
            match f {
                Factor::Twist { curve, power } => {
                    for _ in 0..*power {
                        ell += 1;
                        out.push(Unit::Twist { factor: i, curve: curve.clone(), index: ell });
                    }
                }
                Factor::Commutator { .. } => {
                    j += 1;
                    out.push(Unit::Commutator { factor: i, pair: j });
                }
            }
        }
        out
    }

    /// Number of critical points `ℓ`.
    pub fn critical_points(&self) -> usize {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Twist { power, .. } => *power as usize,
                Factor::Commutator { .. } => 0,
            })
            .sum()
    }

    fn curve(&self, name: &str) -> Result<&Curve, FibrationError> {
        self.curves.get(name).ok_or_else(|| FibrationError::UnknownCurve(name.to_string()))
    }

    fn commutator_exprs(&self, pair: usize) -> (&MappingClassExpr, &MappingClassExpr) {
        self.factors
            .iter()
            .filter_map(|f| match f {
                Factor::Commutator { a, b } => Some((a, b)),
                Factor::Twist { .. } => None,
            })
            .nth(pair - 1)
            .expect("pair index from units()")
    }

    fn missing_ut(what: String) -> FibrationError {
        FibrationError::MissingEvaluation { engine: Engine::UtModel, what }
    }

    /// Push-model image of a generator `a_j`, `b_j` or `g_ℓ`; punctures fall
    /// back to the twist curve's own push word.
    pub fn eta_image(&self, generator: &str) -> Result<Word, FibrationError> {
        let model = self.ut_model.as_ref().ok_or(FibrationError::NoUtModel)?;
        if let Some(w) = model.image(generator) {
            return Ok(w.clone());
        }
        if let Some(ell) = generator.strip_prefix('g').and_then(|d| d.parse::<usize>().ok()) {
            for u in self.units() {
                if let Unit::Twist { curve, index, .. } = u {
                    if index == ell {
                        return self
                            .curve(&curve)?
                            .ut_word
                            .clone()
                            .ok_or_else(|| Self::missing_ut(format!("puncture g{ell}")));
                    }
                }
            }
        }
        Err(Self::missing_ut(format!("generator {generator}")))
    }

    /// Preimage of one unit under the push map.
    fn unit_ut(&self, unit: &Unit) -> Result<Word, FibrationError> {
        match unit {
            Unit::Twist { index, .. } => self.eta_image(&format!("g{index}")),
            Unit::Commutator { pair, .. } => {
                let a = self.eta_image(&format!("a{pair}"))?;
                let b = self.eta_image(&format!("b{pair}"))?;
                Ok(Word::commutator(&b, &a))
            }
        }
    }

    fn unit_symplectic(&self, unit: &Unit) -> Result<SpMatrix, FibrationError> {
        match unit {
            Unit::Twist { curve, .. } => {
                Ok(homology::transvection(&self.curve(curve)?.h1, 1, self.fiber_genus)?)
            }
            Unit::Commutator { pair, .. } => {
                let (a, b) = self.commutator_exprs(*pair);
                let ma = a.symplectic(&self.curves, self.fiber_genus)?;
                let mb = b.symplectic(&self.curves, self.fiber_genus)?;
                Ok(ma.mul(&mb).mul(&ma.inverse()).mul(&mb.inverse()))
            }
        }
    }

    fn unit_braid(&self, unit: &Unit, strands: usize) -> Result<BraidWord, FibrationError> {
        match unit {
            Unit::Twist { curve, .. } => MappingClassExpr::twist(curve.clone(), 1).braid(&self.curves, strands),
            Unit::Commutator { pair, .. } => {
                let (a, b) = self.commutator_exprs(*pair);
                Ok(a.braid(&self.curves, strands)?.commutator(&b.braid(&self.curves, strands)?)?)
            }
        }
    }

    /// Product of the selected units (indices into [`Factorization::units`],
    /// kept in their original order) in `engine`.
    pub fn evaluate_units(&self, engine: Engine, selected: &[usize]) -> Result<Evaluation, FibrationError> {
        let units = self.units();
        let picked: Vec<&Unit> = selected.iter().map(|&i| &units[i]).collect();
        match engine {
            Engine::UtModel => {
                let model = self.ut_model.as_ref().ok_or(FibrationError::NoUtModel)?;
                let ctx = model.context()?;
                let mut w = Word::identity();
                for u in picked.iter().rev() {
                    w.append(&self.unit_ut(u)?);
                }
                Ok(Evaluation::Ut(ctx.reduce(&w)))
            }
            Engine::Symplectic => {
                let mut m = SpMatrix::identity(self.fiber_genus);
                for u in picked {
                    m = m.mul(&self.unit_symplectic(u)?);
                }
                Ok(Evaluation::Symplectic(m))
            }
            Engine::BraidInduced => {
                let n = self.braid_strands.ok_or_else(|| FibrationError::MissingEvaluation {
                    engine: Engine::BraidInduced,
                    what: "strand count".to_string(),
                })?;
                let mut b = BraidWord::identity(n);
                for u in picked {
                    b = b.mul(&self.unit_braid(u, n)?)?;
                }
                Ok(Evaluation::Braid(b))
            }
        }
    }

    pub fn evaluate(&self, engine: Engine) -> Result<Evaluation, FibrationError> {
        let all: Vec<usize> = (0..self.units().len()).collect();
        self.evaluate_units(engine, &all)
    }

    /// The factors multiply to the identity in the declared engine.
    pub fn verify_relation(&self) -> Result<bool, FibrationError> {
        self.verify_relation_in(self.engine)
    }

    pub fn verify_relation_in(&self, engine: Engine) -> Result<bool, FibrationError> {
        self.evaluate(engine)?.is_identity()
    }

    /// Every vanishing cycle separating and every commutator entry acting
    /// trivially on homology.
    pub fn is_torelli_factorization(&self) -> Result<bool, FibrationError> {
        for f in &self.factors {
            match f {
                Factor::Twist { curve, .. } => {
                    if !self.curve(curve)?.separating {
                        return Ok(false);
                    }
                }
                Factor::Commutator { a, b } => {
                    for e in [a, b] {
                        if !e.symplectic(&self.curves, self.fiber_genus)?.is_identity() {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// No vanishing cycle bounds a disk. In the push model each puncture must
    /// also map to `t^{±1}`.
    pub fn is_relatively_minimal(&self) -> Result<bool, FibrationError> {
        let ctx = match &self.ut_model {
            Some(m) => Some(m.context()?),
            None => None,
        };
        for f in &self.factors {
            if let Factor::Twist { curve, .. } = f {
                match self.curve(curve)?.essential_witness(ctx.as_ref()) {
                    Some(true) => {}
                    Some(false) => return Ok(false),
                    None => return Err(FibrationError::UnwitnessedCurve(curve.clone())),
                }
            }
        }
        if self.engine == Engine::UtModel {
            let ctx = ctx.ok_or(FibrationError::NoUtModel)?;
            for ell in 1..=self.critical_points() {
                let x = ctx.reduce(&self.eta_image(&format!("g{ell}"))?);
                if !(x.is_fiber_power() && x.t_exp.abs() == 1) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Symplectic images of the commutator entries, i.e. `μ(a_j)⁻¹` and `μ(b_j)⁻¹`.
    pub fn base_monodromy(&self) -> Result<Vec<SpMatrix>, FibrationError> {
        let mut out = Vec::new();
        for f in &self.factors {
            if let Factor::Commutator { a, b } = f {
                out.push(a.symplectic(&self.curves, self.fiber_genus)?);
                out.push(b.symplectic(&self.curves, self.fiber_genus)?);
            }
        }
        Ok(out)
    }

    pub fn vanishing_classes(&self) -> Result<Vec<H1Class>, FibrationError> {
        let mut out = Vec::new();
        for f in &self.factors {
            if let Factor::Twist { curve, .. } = f {
                out.push(self.curve(curve)?.h1.clone());
            }
        }
        Ok(out)
    }

    pub fn h1_total_space(&self) -> Result<AbelianGroup, FibrationError> {
        Ok(homology::h1_total_space(
            self.base_genus,
            self.fiber_genus,
            &self.base_monodromy()?,
            &self.vanishing_classes()?,
            self.has_section,
        )?)
    }

    /// `η` as a map out of `π₁(Σ_{h,k})` (alphabet [`Alphabet::punctured_surface`]).
    pub fn eta_map(&self) -> Result<GenMap, FibrationError> {
        let model = self.ut_model.as_ref().ok_or(FibrationError::NoUtModel)?;
        let source = Alphabet::punctured_surface(self.base_genus, self.critical_points());
        let mut map = GenMap::new(Target::UnitTangent(model.g0));
        for g in source.gens() {
            let name = source.name(g).expect("generator in range");
            map.insert(g, self.eta_image(name)?);
        }
        Ok(map)
    }

    /// The relator of `π₁(Σ_{h,k})` matching the factor order: `u_r ⋯ u_1`
    /// with `u = g_ℓ` for twist units and `u = [b_j, a_j]` for commutators.
    pub fn source_relator(&self) -> Word {
        let h = self.base_genus as u32;
        let mut w = Word::identity();
        for u in self.units().iter().rev() {
            match u {
                Unit::Twist { index, .. } => w.push(Gen(2 * h + *index as u32 - 1), 1),
                Unit::Commutator { pair, .. } => {
                    let a = Word::gen(Gen(2 * *pair as u32 - 2));
                    let b = Word::gen(Gen(2 * *pair as u32 - 1));
                    w.append(&Word::commutator(&b, &a));
                }
            }
        }
        w
    }
}

/// Mapping class used to glue the second summand in a fiber sum.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Gluing {
    pub curves: Vec<Curve>,
    pub expr: MappingClassExpr,
    /// Push preimage of the gluing class.
    pub ut: Option<Word>,
}

impl Gluing {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.expr.terms.is_empty() && self.ut.as_ref().is_none_or(Word::is_identity)
    }
}

/// Fiber sum: the factors of `f2`, conjugated by the gluing class `φ`,
/// follow those of `f1`. A twist `T_x` of `f2` becomes `T_{φ(x)}`.
pub fn fiber_sum(f1: &Factorization, f2: &Factorization, gluing: &Gluing) -> Result<Factorization, FibrationError> {
    if f1.fiber_genus != f2.fiber_genus {
        return Err(FibrationError::GenusMismatch(f1.fiber_genus, f2.fiber_genus));
    }
    let g = f1.fiber_genus;
    let engine = if f1.engine == f2.engine { f1.engine } else { Engine::Symplectic };
    let mut out = Factorization {
        fiber_genus: g,
        base_genus: f1.base_genus + f2.base_genus,
        engine,
        curves: f1.curves.clone(),
        factors: f1.factors.clone(),
        ut_model: None,
        has_section: f1.has_section && f2.has_section,
        draft: false,
        braid_strands: f1.braid_strands.filter(|n| Some(*n) == f2.braid_strands),
    };
    let mut glue_curves = BTreeMap::new();
    for c in &gluing.curves {
        c.validate(g)?;
        glue_curves.insert(c.name.clone(), c.clone());
    }
    let phi = gluing.expr.symplectic(&glue_curves, g)?;
    let identity = gluing.is_identity();

    // transformed copies of f2's curves
    let mut rename = BTreeMap::new();
    for (name, c) in &f2.curves {
        let mut moved = c.clone();
        if !identity {
            moved.h1 = phi.apply(&c.h1)?;
            moved.ut_word = match (&c.ut_word, &gluing.ut) {
                (Some(w), Some(u)) => Some(u.inverse().mul(w).mul(u)),
                (Some(_), None) if engine == Engine::UtModel => {
                    return Err(FibrationError::MissingEvaluation {
                        engine: Engine::UtModel,
                        what: "gluing class".to_string(),
                    })
                }
                _ => None,
            };
            moved.braid = None;
        }
        let mut new_name = name.clone();
        while out.curves.get(&new_name).is_some_and(|existing| *existing != Curve { name: new_name.clone(), ..moved.clone() }) {
            new_name.push_str(".2");
        }
        moved.name = new_name.clone();
        out.curves.insert(new_name.clone(), moved);
        rename.insert(name.clone(), new_name);
    }
    for c in &gluing.curves {
        out.curves.entry(c.name.clone()).or_insert_with(|| c.clone());
    }
    let renamed = |e: &MappingClassExpr| MappingClassExpr {
        terms: e.terms.iter().map(|(c, k)| (rename[c].clone(), *k)).collect(),
    };
    for f in &f2.factors {
        out.factors.push(match f {
            Factor::Twist { curve, power } => Factor::Twist { curve: rename[curve].clone(), power: *power },
            Factor::Commutator { a, b } => Factor::Commutator { a: renamed(a), b: renamed(b) },
        });
    }

    if let (Some(m1), Some(m2)) = (&f1.ut_model, &f2.ut_model) {
        if m1.g0 == m2.g0 {
            let u = gluing.ut.clone().unwrap_or_default();
            let conj = |w: &Word| u.inverse().mul(w).mul(&u);
            let mut model = UtModel { g0: m1.g0, central: m1.central.max(m2.central), images: BTreeMap::new() };
            let (h1, k1) = (f1.base_genus, f1.critical_points());
            for j in 1..=h1 {
                for p in ["a", "b"] {
                    model.images.insert(format!("{p}{j}"), f1.eta_image(&format!("{p}{j}"))?);
                }
            }
            for ell in 1..=k1 {
                model.images.insert(format!("g{ell}"), f1.eta_image(&format!("g{ell}"))?);
            }
            for j in 1..=f2.base_genus {
                for p in ["a", "b"] {
                    model.images.insert(format!("{p}{}", h1 + j), conj(&f2.eta_image(&format!("{p}{j}"))?));
                }
            }
            for ell in 1..=f2.critical_points() {
                model.images.insert(format!("g{}", k1 + ell), conj(&f2.eta_image(&format!("g{ell}"))?));
            }
            out.ut_model = Some(model);
        }
    }
    if out.engine == Engine::UtModel && out.ut_model.is_none() {
        out.engine = Engine::Symplectic;
    }
    out.checked()
}

/// Units contributed by the first summand of a fiber sum.
pub fn seam_selection(f1: &Factorization) -> BTreeSet<usize> {
    (0..f1.units().len()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubfactorizationVerdict {
    pub engine: Engine,
    /// Selected units form one cyclically contiguous block.
    pub admissible: bool,
    pub commutators: usize,
    pub twists: usize,
    pub identity: bool,
    /// `1 ≤ 2m + n < 2h + ℓ`.
    pub inequality: bool,
}

impl SubfactorizationVerdict {
    pub fn is_witness(&self) -> bool {
        self.admissible && self.identity && self.inequality
    }
}

fn cyclically_contiguous(selected: &BTreeSet<usize>, total: usize) -> bool {
    if selected.is_empty() {
        return false;
    }
    let starts = selected.iter().filter(|&&i| !selected.contains(&((i + total - 1) % total))).count();
    starts <= 1
}

/// Whether `selected` (indices into [`Factorization::units`]) witnesses a
/// fiber sum decomposition.
pub fn check_subfactorization(f: &Factorization, selected: &BTreeSet<usize>) -> Result<SubfactorizationVerdict, FibrationError> {
    let units = f.units();
    if let Some(&bad) = selected.iter().find(|&&i| i >= units.len()) {
        return Err(FibrationError::BadParams(format!("unit {bad} out of range")));
    }
    let (mut m, mut n) = (0, 0);
    for &i in selected {
        match units[i] {
            Unit::Twist { .. } => n += 1,
            Unit::Commutator { .. } => m += 1,
        }
    }
    let idx: Vec<usize> = selected.iter().copied().collect();
    let identity = f.evaluate_units(f.engine, &idx)?.is_identity()?;
    let weight = 2 * m + n;
    Ok(SubfactorizationVerdict {
        engine: f.engine,
        admissible: cyclically_contiguous(selected, units.len()),
        commutators: m,
        twists: n,
        identity,
        inequality: weight >= 1 && weight < 2 * f.base_genus + f.critical_points(),
    })
}

/// Parses a word over the unit tangent alphabet for `g0`, accepting any
/// number of central letters `z<i>`.
pub fn parse_ut_word(text: &str, g0: usize) -> Result<(Word, usize), FibrationError> {
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok((Word::identity(), 0));
    }
    let central = text
        .split_whitespace()
        .filter_map(|tok| {
            let name = tok.split(['^', '\'']).next()?;
            name.strip_prefix('z')?.parse::<usize>().ok()
        })
        .max()
        .unwrap_or(0);
    Ok((Word::parse(text, &Alphabet::unit_tangent(g0, central))?, central))
}
