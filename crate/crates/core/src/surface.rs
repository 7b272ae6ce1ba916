//! Word problems for closed surface groups and their unit tangent bundles.
//!
//! `π₁(Σ_h)` has the single relator `R = [a1,b1]⋯[ah,bh]`. Its symmetrized
//! closure (all cyclic rotations of `R` and `R⁻¹`) has pieces of length one,
//! so Dehn's algorithm decides the word problem: a freely reduced word is
//! trivial iff repeatedly replacing a subword that is more than half of a
//! relator by the inverse of the remaining part empties it.
//!
//! `π₁(UT(Σ_g0))` adds a central letter `t` and turns the relation into
//! `R = t^(2g0-2)`. Every rotation of `R^ε` is then `t^(ε(2g0-2))`, so each
//! Dehn substitution is an exact identity in the extension once the
//! corresponding power of `t` is recorded. [`UtContext`] runs that
//! instrumented reduction.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use thiserror::Error;

use crate::words::{Alphabet, Gen, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("surface genus must be at least 2, got {0}")]
    GenusTooSmall(usize),
    #[error("generator #{0} is not part of this surface group")]
    ForeignGenerator(u32),
    #[error("elements live over different surfaces (g0 = {0} vs {1})")]
    MixedContext(usize, usize),
}

/// Signed unit letter: `+(i+1)` for generator `i`, `-(i+1)` for its inverse.
type Letter = i32;

fn to_letters(w: &Word, rank: usize) -> Result<Vec<Letter>, SurfaceError> {
    let mut out = Vec::with_capacity(w.len());
    for (g, e) in w.unit_letters() {
        if g.0 as usize >= rank {
            return Err(SurfaceError::ForeignGenerator(g.0));
        }
        out.push((g.0 as i32 + 1) * e as i32);
    }
    Ok(out)
}

fn from_letters(letters: &[Letter]) -> Word {
    Word::reduce(letters.iter().map(|&l| (Gen(l.unsigned_abs() - 1), l.signum() as i64)))
}

/// Closed genus-`h` surface group with its symmetrized relator table.
#[derive(Clone, Debug)]
pub struct SurfaceContext {
    genus: usize,
    /// All `8h` rotations of `R` and `R⁻¹`, with the sign of the power of `R`.
    relators: Vec<(Vec<Letter>, i64)>,
    /// Window of length `2h+1` at the start of a relator -> relator index.
    half_plus_one: HashMap<Vec<Letter>, usize>,
    /// Two-letter subword -> relator starting with it.
    pairs: HashMap<(Letter, Letter), usize>,
}

impl SurfaceContext {
    pub fn new(genus: usize) -> Result<Self, SurfaceError> {
        if genus < 2 {
            return Err(SurfaceError::GenusTooSmall(genus));
        }
        let base: Vec<Letter> = (1..=genus as i32)
            .flat_map(|i| {
                let a = 2 * i - 1;
                let b = 2 * i;
                [a, b, -a, -b]
            })
            .collect();
        let inv: Vec<Letter> = base.iter().rev().map(|l| -l).collect();
        let len = base.len();
        let mut relators = Vec::with_capacity(2 * len);
        for (word, eps) in [(&base, 1), (&inv, -1)] {
            for shift in 0..len {
                let rot: Vec<Letter> = (0..len).map(|j| word[(shift + j) % len]).collect();
                relators.push((rot, eps));
            }
        }
        let mut half_plus_one = HashMap::new();
        let mut pairs = HashMap::new();
        for (id, (r, _)) in relators.iter().enumerate() {
            half_plus_one.insert(r[..2 * genus + 1].to_vec(), id);
            pairs.insert((r[0], r[1]), id);
        }
        Ok(Self { genus, relators, half_plus_one, pairs })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::surface(self.genus)
    }

    pub fn a(&self, i: usize) -> Gen {
        Gen(2 * (i as u32 - 1))
    }

    pub fn b(&self, i: usize) -> Gen {
        Gen(2 * (i as u32 - 1) + 1)
    }

    /// The defining relator `[a1,b1]⋯[ah,bh]`.
    pub fn relator(&self) -> Word {
        from_letters(&self.relators[0].0)
    }

    /// The symmetrized relators with the sign of the relator power each one is
    /// a rotation of.
    pub fn symmetrized(&self) -> impl Iterator<Item = (Word, i64)> + '_ {
        self.relators.iter().map(|(r, eps)| (from_letters(r), *eps))
    }

    /// Dehn-reduces `w`; the result is empty iff `w = 1` in `π₁(Σ_h)`.
    pub fn dehn_reduce(&self, w: &Word) -> Result<Word, SurfaceError> {
        let letters = to_letters(w, 2 * self.genus)?;
        let (out, _) = self.stack_reduce(letters);
        Ok(from_letters(&out))
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool, SurfaceError> {
        Ok(self.dehn_reduce(w)?.is_identity())
    }

    /// Streaming Dehn reduction. Letters are pushed onto a stack with free
    /// cancellation; whenever the top `2h+1` letters open a symmetrized
    /// relator they are replaced by the inverse of the relator's remaining
    /// `2h-1` letters, which are themselves pushed through the same
    /// procedure. Returns the reduced letters and the signed count of relator
    /// substitutions.
    fn stack_reduce(&self, input: Vec<Letter>) -> (Vec<Letter>, i64) {
        let window = 2 * self.genus + 1;
        let mut stack: Vec<Letter> = Vec::with_capacity(input.len());
        let mut pending: Vec<Letter> = input;
        pending.reverse();
        let mut relator_count = 0i64;
        while let Some(l) = pending.pop() {
            if stack.last() == Some(&-l) {
                stack.pop();
                continue;
            }
            stack.push(l);
            if stack.len() < window {
                continue;
            }
            let tail = &stack[stack.len() - window..];
            if let Some(&id) = self.half_plus_one.get(tail) {
                let (r, eps) = &self.relators[id];
                stack.truncate(stack.len() - window);
                relator_count += eps;
                // pending pops from the back, so the last relator letter comes off first
                for &x in &r[window..] {
                    pending.push(-x);
                }
            }
        }
        (stack, relator_count)
    }

    /// Dehn reduction with a caller-chosen substitution order. At every step
    /// all applicable substitutions (a subword of length `> 2h` that opens a
    /// symmetrized relator) are listed and `choose` picks one. Used to test
    /// that the outcome does not depend on rule order.
    pub fn reduce_with_order(
        &self,
        w: &Word,
        order: &mut dyn RuleOrder,
    ) -> Result<(Word, i64), SurfaceError> {
        let mut letters = free_reduce(to_letters(w, 2 * self.genus)?);
        let mut relator_count = 0i64;
        loop {
            let matches = self.matches(&letters);
            if matches.is_empty() {
                break;
            }
            let m = matches[order.choose(&matches)];
            let (r, eps) = &self.relators[m.relator];
            let mut next = Vec::with_capacity(letters.len());
            next.extend_from_slice(&letters[..m.start]);
            next.extend(r[m.len..].iter().rev().map(|x| -x));
            next.extend_from_slice(&letters[m.start + m.len..]);
            letters = free_reduce(next);
            relator_count += eps;
        }
        Ok((from_letters(&letters), relator_count))
    }

    fn matches(&self, letters: &[Letter]) -> Vec<RuleMatch> {
        let half = 2 * self.genus;
        let mut out = Vec::new();
        for start in 0..letters.len().saturating_sub(1) {
            let Some(&id) = self.pairs.get(&(letters[start], letters[start + 1])) else {
                continue;
            };
            let r = &self.relators[id].0;
            let max = r
                .iter()
                .zip(&letters[start..])
                .take_while(|(x, y)| x == y)
                .count();
            for len in half + 1..=max {
                out.push(RuleMatch { start, len, relator: id });
            }
        }
        out
    }
}

fn free_reduce(letters: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// One applicable Dehn substitution: `letters[start..start+len]` is the
/// prefix of symmetrized relator `relator`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleMatch {
    pub start: usize,
    pub len: usize,
    pub relator: usize,
}

pub trait RuleOrder {
    /// Index into `matches` (never empty) of the substitution to apply.
    fn choose(&mut self, matches: &[RuleMatch]) -> usize;
}

/// Leftmost start first, longest match among those.
pub struct LeftmostLongest;

impl RuleOrder for LeftmostLongest {
    fn choose(&mut self, matches: &[RuleMatch]) -> usize {
        let mut best = 0;
        for (i, m) in matches.iter().enumerate() {
            let b = &matches[best];
            if m.start < b.start || (m.start == b.start && m.len > b.len) {
                best = i;
            }
        }
        best
    }
}

/// Uniformly random substitution.
pub struct RandomOrder<R: Rng>(pub R);

impl<R: Rng> RuleOrder for RandomOrder<R> {
    fn choose(&mut self, matches: &[RuleMatch]) -> usize {
        self.0.gen_range(0..matches.len())
    }
}

/// Element of `π₁(UT(Σ_g0))`, optionally times a free abelian group of extra
/// central letters `z1, z2, ...`.
///
/// The extra letters model Dehn twists about curves disjoint from the genus
/// `g0` subsurface: they commute with the whole push subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UtElement {
    pub g0: usize,
    /// Dehn-reduced word over `at_i, bt_i`.
    pub base: Word,
    pub t_exp: i64,
    /// Exponents of `z_i`, zero entries omitted.
    pub central: BTreeMap<u32, i64>,
}

impl UtElement {
    pub fn identity(g0: usize) -> Self {
        Self { g0, base: Word::identity(), t_exp: 0, central: BTreeMap::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.base.is_identity() && self.t_exp == 0 && self.central.is_empty()
    }

    /// True when the element is `t^k` for some `k` (including `k = 0`).
    pub fn is_fiber_power(&self) -> bool {
        self.base.is_identity() && self.central.is_empty()
    }

    /// Back to a word over the unit tangent alphabet.
    pub fn to_word(&self) -> Word {
        let mut w = self.base.clone();
        w.push(t_gen(self.g0), self.t_exp);
        for (&i, &e) in &self.central {
            w.push(central_gen(self.g0, i), e);
        }
        w
    }

    pub fn render(&self) -> String {
        let central = self.central.keys().copied().max().unwrap_or(0) as usize;
        self.to_word().display(&Alphabet::unit_tangent(self.g0, central)).to_string()
    }
}

/// Handle of `t` in [`Alphabet::unit_tangent`].
pub fn t_gen(g0: usize) -> Gen {
    Gen(2 * g0 as u32)
}

/// Handle of the extra central letter `z_i` (1-based).
pub fn central_gen(g0: usize, i: u32) -> Gen {
    Gen(2 * g0 as u32 + i)
}

/// Instrumented Dehn reduction in `π₁(UT(Σ_g0))`.
#[derive(Clone, Debug)]
pub struct UtContext {
    surface: SurfaceContext,
}

impl UtContext {
    pub fn new(g0: usize) -> Result<Self, SurfaceError> {
        Ok(Self { surface: SurfaceContext::new(g0)? })
    }

    pub fn g0(&self) -> usize {
        self.surface.genus
    }

    pub fn surface(&self) -> &SurfaceContext {
        &self.surface
    }

    fn euler(&self) -> i64 {
        2 * self.g0() as i64 - 2
    }

    /// Splits `w` into base letters, `t` and extra central letters.
    fn split(&self, w: &Word) -> (Vec<Letter>, i64, BTreeMap<u32, i64>) {
        let g0 = self.g0() as u32;
        let mut base = Vec::with_capacity(w.len());
        let mut t_exp = 0;
        let mut central = BTreeMap::new();
        for &(g, e) in w.letters() {
            if g.0 < 2 * g0 {
                let l = g.0 as i32 + 1;
                let unit = if e > 0 { l } else { -l };
                base.extend(std::iter::repeat_n(unit, e.unsigned_abs() as usize));
            } else if g.0 == 2 * g0 {
                t_exp += e;
            } else {
                *central.entry(g.0 - 2 * g0).or_insert(0) += e;
            }
        }
        central.retain(|_, e| *e != 0);
        (base, t_exp, central)
    }

    /// Canonical reduction: `t` and `z` letters are pulled out (they are
    /// central) and the base is Dehn-reduced, each substitution of a piece of
    /// a rotation of `R^ε` contributing `ε(2g0-2)` to the `t` exponent.
    pub fn reduce(&self, w: &Word) -> UtElement {
        let (base, t_exp, central) = self.split(w);
        let (out, count) = self.surface.stack_reduce(base);
        UtElement {
            g0: self.g0(),
            base: from_letters(&out),
            t_exp: t_exp + count * self.euler(),
            central,
        }
    }

    /// Same as [`UtContext::reduce`] but with a caller-chosen rule order.
    pub fn reduce_with_order(&self, w: &Word, order: &mut dyn RuleOrder) -> UtElement {
        let (base, t_exp, central) = self.split(w);
        let base_word = from_letters(&base);
        let (out, count) = self
            .surface
            .reduce_with_order(&base_word, order)
            .expect("split keeps only base letters");
        UtElement { g0: self.g0(), base: out, t_exp: t_exp + count * self.euler(), central }
    }

    pub fn mul(&self, x: &UtElement, y: &UtElement) -> Result<UtElement, SurfaceError> {
        check_same(x, y)?;
        Ok(self.reduce(&x.to_word().mul(&y.to_word())))
    }

    pub fn inverse(&self, x: &UtElement) -> UtElement {
        self.reduce(&x.to_word().inverse())
    }

    /// Exact equality: `x = y` iff `x·y⁻¹` reduces to the identity.
    ///
    /// Dehn-reduced words are not unique for nontrivial elements, so this
    /// does not compare reduced forms directly.
    pub fn equal(&self, x: &UtElement, y: &UtElement) -> Result<bool, SurfaceError> {
        check_same(x, y)?;
        if x == y {
            return Ok(true);
        }
        let diff = x.to_word().mul(&y.to_word().inverse());
        Ok(self.reduce(&diff).is_identity())
    }

    /// Drops `t` and the extra central letters: the image in `π₁(Σ_g0)`.
    pub fn project(&self, x: &UtElement) -> Word {
        x.base.clone()
    }

    /// Drops `t` and central letters from a raw word.
    pub fn project_word(&self, w: &Word) -> Word {
        let (base, _, _) = self.split(w);
        from_letters(&base)
    }
}

fn check_same(x: &UtElement, y: &UtElement) -> Result<(), SurfaceError> {
    if x.g0 != y.g0 {
        return Err(SurfaceError::MixedContext(x.g0, y.g0));
    }
    Ok(())
}

/// Convenience wrapper around [`UtContext::reduce`].
pub fn ut_reduce(w: &Word, g0: usize) -> Result<UtElement, SurfaceError> {
    Ok(UtContext::new(g0)?.reduce(w))
}

/// Convenience wrapper around [`UtContext::equal`].
pub fn ut_equal(x: &UtElement, y: &UtElement) -> Result<bool, SurfaceError> {
    check_same(x, y)?;
    UtContext::new(x.g0)?.equal(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn relator_is_trivial() {
        let ctx = SurfaceContext::new(2).unwrap();
        let alpha = ctx.alphabet();
        let r = Word::parse("a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1", &alpha).unwrap();
        assert_eq!(r, ctx.relator());
        assert!(ctx.is_trivial(&r).unwrap());
        assert!(ctx.is_trivial(&r.inverse()).unwrap());
    }

    #[test]
    fn generator_survives() {
        let ctx = SurfaceContext::new(2).unwrap();
        let a1 = Word::gen(ctx.a(1));
        assert_eq!(ctx.dehn_reduce(&a1).unwrap(), a1);
    }

    #[test]
    fn single_commutator_nontrivial() {
        let ctx = SurfaceContext::new(2).unwrap();
        let w = Word::parse("a1 b1 a1^-1 b1^-1", &ctx.alphabet()).unwrap();
        assert!(!ctx.is_trivial(&w).unwrap());
    }

    #[test]
    fn genus_one_rejected() {
        assert_eq!(SurfaceContext::new(1).unwrap_err(), SurfaceError::GenusTooSmall(1));
    }

    #[test]
    fn foreign_generator_rejected() {
        let ctx = SurfaceContext::new(2).unwrap();
        assert!(ctx.dehn_reduce(&Word::gen(Gen(4))).is_err());
    }

    #[test]
    fn symmetrized_table_size() {
        for h in 2..5 {
            let ctx = SurfaceContext::new(h).unwrap();
            assert_eq!(ctx.symmetrized().count(), 8 * h);
        }
    }

    #[test]
    fn ut_relator_is_t_power() {
        let ctx = UtContext::new(2).unwrap();
        let alpha = Alphabet::unit_tangent(2, 0);
        let r = Word::parse("at1 bt1 at1^-1 bt1^-1 at2 bt2 at2^-1 bt2^-1", &alpha).unwrap();
        let x = ctx.reduce(&r);
        assert!(x.base.is_identity());
        assert_eq!(x.t_exp, 2);
        let y = ctx.reduce(&r.inverse());
        assert!(y.base.is_identity());
        assert_eq!(y.t_exp, -2);
    }

    #[test]
    fn t_is_central() {
        let ctx = UtContext::new(2).unwrap();
        let alpha = Alphabet::unit_tangent(2, 0);
        let w = Word::parse("t at1 t^-1 at1^-1", &alpha).unwrap();
        assert!(ctx.reduce(&w).is_identity());
    }

    #[test]
    fn ut_equality_examples() {
        let ctx = UtContext::new(2).unwrap();
        let alpha = Alphabet::unit_tangent(2, 0);
        let t2 = ctx.reduce(&Word::parse("t^2", &alpha).unwrap());
        let tt = ctx.reduce(&Word::parse("t t", &alpha).unwrap());
        assert!(ctx.equal(&t2, &tt).unwrap());
        let id = UtElement::identity(2);
        assert!(ctx.equal(&ctx.reduce(&Word::identity()), &id).unwrap());
        let a = ctx.reduce(&Word::parse("at1", &alpha).unwrap());
        let t = ctx.reduce(&Word::parse("t", &alpha).unwrap());
        assert!(!ctx.equal(&a, &t).unwrap());
        let other = UtElement::identity(3);
        assert_eq!(ctx.equal(&a, &other).unwrap_err(), SurfaceError::MixedContext(2, 3));
    }

    #[test]
    fn stack_and_ordered_reductions_agree_on_t() {
        let ctx = UtContext::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let alpha = Alphabet::unit_tangent(3, 0);
        let r = Word::parse(
            "at1 bt1 at1' bt1' at2 bt2 at2' bt2' at3 bt3 at3' bt3'",
            &alpha,
        )
        .unwrap();
        for _ in 0..50 {
            let u: Word = Word::reduce((0..6).map(|_| (Gen(rng.gen_range(0..6)), if rng.gen() { 1 } else { -1 })));
            let w = r.conjugate(&u);
            let x = ctx.reduce(&w);
            let y = ctx.reduce_with_order(&w, &mut LeftmostLongest);
            assert_eq!((x.base.clone(), x.t_exp), (Word::identity(), 4));
            assert_eq!(x, y);
        }
    }

    #[test]
    fn central_letters_commute() {
        let ctx = UtContext::new(2).unwrap();
        let alpha = Alphabet::unit_tangent(2, 1);
        let w = Word::parse("z1^3 at1 z1^-3 at1^-1 t", &alpha).unwrap();
        let x = ctx.reduce(&w);
        assert!(x.is_fiber_power());
        assert_eq!(x.t_exp, 1);
        let y = ctx.reduce(&Word::parse("z1 at1", &alpha).unwrap());
        assert_eq!(y.central.get(&1), Some(&1));
        assert_eq!(ctx.project(&y), Word::gen(Gen(0)));
    }
}
