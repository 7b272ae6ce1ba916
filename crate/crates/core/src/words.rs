//! Free-group words.
//!
//! A [`Word`] is a freely reduced, run-length encoded product of generator
//! powers. Generators are small integer handles ([`Gen`]); their printable
//! names live in an [`Alphabet`]. Every group engine in the crate stores its
//! elements as words over some alphabet and adds its own quotient logic on
//! top.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

/// Interned generator handle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(pub u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed token `{0}`")]
    BadToken(String),
}

/// Maps generator names to handles and back.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, Gen>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Self::new();
        for name in names {
            alphabet.intern(name);
        }
        alphabet
    }

    /// Returns the handle for `name`, allocating the next free one if needed.
    pub fn intern(&mut self, name: impl Into<String>) -> Gen {
        let name = name.into();
        if let Some(&g) = self.lookup.get(&name) {
            return g;
        }
        let g = Gen(self.names.len() as u32);
        self.lookup.insert(name.clone(), g);
        self.names.push(name);
        g
    }

    pub fn get(&self, name: &str) -> Option<Gen> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, g: Gen) -> Option<&str> {
        self.names.get(g.0 as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.names.len() as u32).map(Gen)
    }

    /// `a1, b1, ..., ah, bh` for the closed genus-`h` surface group.
    pub fn surface(h: usize) -> Self {
        Self::from_names((1..=h).flat_map(|i| [format!("a{i}"), format!("b{i}")]))
    }

    /// `a1, b1, ..., ah, bh, g1, ..., gk` for the `k`-punctured genus-`h`
    /// surface group.
    pub fn punctured_surface(h: usize, k: usize) -> Self {
        let mut alphabet = Self::surface(h);
        for l in 1..=k {
            alphabet.intern(format!("g{l}"));
        }
        alphabet
    }

    /// `at1, bt1, ..., at{g0}, bt{g0}, t` followed by `central` extra central
    /// letters `z1, z2, ...`.
    pub fn unit_tangent(g0: usize, central: usize) -> Self {
        let mut alphabet =
            Self::from_names((1..=g0).flat_map(|i| [format!("at{i}"), format!("bt{i}")]));
        alphabet.intern("t");
        for i in 1..=central {
            alphabet.intern(format!("z{i}"));
        }
        alphabet
    }

    /// `s1, ..., s{n-1}` for the braid group on `n` strands.
    pub fn braid(n: usize) -> Self {
        Self::from_names((1..n).map(|i| format!("s{i}")))
    }

    /// `x1, ..., xn` for the free group acted on by `B_n`.
    pub fn free_x(n: usize) -> Self {
        Self::from_names((1..=n).map(|i| format!("x{i}")))
    }

    /// `v1, ..., vn` for a right-angled Artin group on `n` vertices.
    pub fn raag(n: usize) -> Self {
        Self::from_names((1..=n).map(|i| format!("v{i}")))
    }
}

/// A freely reduced word, run-length encoded as `(generator, exponent)` pairs.
///
/// Invariants: adjacent entries have distinct generators and no exponent is 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<(Gen, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn gen(g: Gen) -> Self {
        Self::power(g, 1)
    }

    pub fn power(g: Gen, exp: i64) -> Self {
        if exp == 0 {
            Self::identity()
        } else {
            Self { letters: vec![(g, exp)] }
        }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (Gen, i64)>,
    {
        let mut w = Self::identity();
        for (g, e) in raw {
            w.push(g, e);
        }
        w
    }

    /// Appends `g^e`, merging with (and possibly cancelling against) the tail.
    pub fn push(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((last, exp)) if *last == g => {
                *exp += e;
                if *exp == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn letters(&self) -> &[(Gen, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn len(&self) -> usize {
        self.letters.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of run-length entries.
    pub fn syllables(&self) -> usize {
        self.letters.len()
    }

    /// Expands to unit letters `(g, ±1)`.
    pub fn unit_letters(&self) -> impl Iterator<Item = (Gen, i64)> + '_ {
        self.letters
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.append(other);
        out
    }

    pub fn append(&mut self, other: &Word) {
        for &(g, e) in &other.letters {
            self.push(g, e);
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// `u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        let mut out = u.mul(v);
        out.append(&u.inverse());
        out.append(&v.inverse());
        out
    }

    /// `u w u⁻¹`.
    pub fn conjugate(&self, by: &Word) -> Word {
        let mut out = by.mul(self);
        out.append(&by.inverse());
        out
    }

    /// Sum of exponents of `g`.
    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.letters.iter().filter(|(h, _)| *h == g).map(|(_, e)| e).sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        self.letters.iter().map(|(g, _)| *g)
    }

    /// Substitutes every generator by its image under `f`.
    pub fn map_gens(&self, f: impl Fn(Gen) -> Word) -> Word {
        let mut out = Word::identity();
        for &(g, e) in &self.letters {
            out.append(&f(g).pow(e));
        }
        out
    }

    /// Parses whitespace-separated tokens `name`, `name^k`, or `name'`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Word, WordError> {
        let mut w = Word::identity();
        for tok in text.split_whitespace() {
            let (name, exp) = split_token(tok)?;
            let g = alphabet
                .get(name)
                .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
            w.push(g, exp);
        }
        Ok(w)
    }

    /// Like [`Word::parse`] but interns unseen names.
    pub fn parse_interning(text: &str, alphabet: &mut Alphabet) -> Result<Word, WordError> {
        let mut w = Word::identity();
        for tok in text.split_whitespace() {
            let (name, exp) = split_token(tok)?;
            let g = alphabet.intern(name);
            w.push(g, exp);
        }
        Ok(w)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }
}

fn split_token(tok: &str) -> Result<(&str, i64), WordError> {
    let bad = || WordError::BadToken(tok.to_string());
    if let Some(name) = tok.strip_suffix('\'') {
        if name.is_empty() || name.contains('^') {
            return Err(bad());
        }
        return Ok((name, -1));
    }
    match tok.split_once('^') {
        None => Ok((tok, 1)),
        Some((name, exp)) => {
            if name.is_empty() {
                return Err(bad());
            }
            let exp: i64 = exp.parse().map_err(|_| bad())?;
            Ok((name, exp))
        }
    }
}

/// Renders a word in the `a1 b1 a1^-1` token syntax; the identity prints as `1`.
pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match self.alphabet.name(g) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "#{}", g.0)?,
            }
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// What kind of group a [`GenMap`] lands in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Free,
    Surface(usize),
    UnitTangent(usize),
    Raag(usize),
    Braid(usize),
}

/// A homomorphism given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMap {
    pub images: BTreeMap<Gen, Word>,
    pub target: Target,
}

impl GenMap {
    pub fn new(target: Target) -> Self {
        Self { images: BTreeMap::new(), target }
    }

    pub fn with(mut self, g: Gen, image: Word) -> Self {
        self.images.insert(g, image);
        self
    }

    pub fn insert(&mut self, g: Gen, image: Word) {
        self.images.insert(g, image);
    }

    pub fn image(&self, g: Gen) -> Option<&Word> {
        self.images.get(&g)
    }

    /// Applies the map letter by letter, respecting exponents, and reduces.
    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        let mut out = Word::identity();
        for &(g, e) in w.letters() {
            let img = self
                .images
                .get(&g)
                .ok_or_else(|| WordError::UnknownGenerator(format!("#{}", g.0)))?;
            out.append(&img.pow(e));
        }
        Ok(out)
    }

    /// Parses `v1 -> <target word>` lines.
    pub fn parse(
        text: &str,
        source: &Alphabet,
        target_alphabet: &Alphabet,
        target: Target,
    ) -> Result<GenMap, WordError> {
        let mut map = GenMap::new(target);
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| WordError::BadToken(line.to_string()))?;
            let lhs = lhs.trim();
            let g = source
                .get(lhs)
                .ok_or_else(|| WordError::UnknownGenerator(lhs.to_string()))?;
            let rhs = rhs.trim();
            let img = if rhs == "1" {
                Word::identity()
            } else {
                Word::parse(rhs, target_alphabet)?
            };
            map.insert(g, img);
        }
        Ok(map)
    }

    pub fn render(&self, source: &Alphabet, target_alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for (g, img) in &self.images {
            let name = source.name(*g).unwrap_or("?");
            out.push_str(&format!("{name} -> {}\n", img.display(target_alphabet)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> (Alphabet, Gen, Gen, Gen) {
        let alpha = Alphabet::from_names(["a", "b", "c"]);
        (alpha.clone(), alpha.get("a").unwrap(), alpha.get("b").unwrap(), alpha.get("c").unwrap())
    }

    #[test]
    fn reduce_full_cancellation() {
        let (_, a, b, _) = ab();
        let w = Word::reduce([(a, 1), (b, 1), (b, -1), (a, -1)]);
        assert!(w.is_identity());
    }

    #[test]
    fn reduce_merges_exponents() {
        let (_, a, _, _) = ab();
        let w = Word::reduce([(a, 1), (a, 1), (a, 1)]);
        assert_eq!(w.letters(), &[(a, 3)]);
    }

    #[test]
    fn reduce_keeps_reduced_word() {
        let (_, a, b, _) = ab();
        let w = Word::reduce([(a, 1), (b, 1), (a, -1)]);
        assert_eq!(w.letters(), &[(a, 1), (b, 1), (a, -1)]);
    }

    #[test]
    fn group_operations() {
        let (alpha, a, b, c) = ab();
        assert!(Word::commutator(&Word::gen(a), &Word::power(a, 2)).is_identity());
        let ab = Word::parse("a b", &alpha).unwrap();
        let bc = Word::parse("b^-1 c", &alpha).unwrap();
        assert_eq!(ab.mul(&bc).letters(), &[(a, 1), (c, 1)]);
        let w = Word::parse("a b^2", &alpha).unwrap();
        assert_eq!(w.inverse().letters(), &[(b, -2), (a, -1)]);
    }

    #[test]
    fn apply_map_examples() {
        let mut src = Alphabet::from_names(["a", "b"]);
        let tgt = Alphabet::from_names(["x", "y"]);
        let a = src.intern("a");
        let b = src.intern("b");
        let f = GenMap::new(Target::Free)
            .with(a, Word::parse("x y", &tgt).unwrap())
            .with(b, Word::parse("x^-1", &tgt).unwrap());
        let out = f.apply(&Word::power(a, 2)).unwrap();
        assert_eq!(out.display(&tgt).to_string(), "x y x y");

        let g = GenMap::new(Target::Free)
            .with(a, Word::parse("x", &tgt).unwrap())
            .with(b, Word::parse("x^-1", &tgt).unwrap());
        assert!(g.apply(&Word::parse("a b", &src).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn apply_map_unknown_generator() {
        let (alpha, a, b, _) = ab();
        let f = GenMap::new(Target::Free).with(a, Word::gen(a));
        let err = f.apply(&Word::parse("a b", &alpha).unwrap()).unwrap_err();
        assert!(matches!(err, WordError::UnknownGenerator(_)));
        let _ = b;
    }

    #[test]
    fn parse_inverse_syntaxes() {
        let (alpha, a, b, _) = ab();
        let w1 = Word::parse("a b'", &alpha).unwrap();
        let w2 = Word::parse("a b^-1", &alpha).unwrap();
        assert_eq!(w1, w2);
        assert_eq!(w1.letters(), &[(a, 1), (b, -1)]);
        assert!(Word::parse("q", &alpha).is_err());
        assert!(Word::parse("a^x", &alpha).is_err());
        assert_eq!(Word::parse("a^3 b^-2", &alpha).unwrap().display(&alpha).to_string(), "a^3 b^-2");
    }

    #[test]
    fn genmap_text_roundtrip() {
        let src = Alphabet::raag(2);
        let tgt = Alphabet::braid(3);
        let text = "v1 -> s1^4\nv2 -> s1 s2 s1^-1\n";
        let m = GenMap::parse(text, &src, &tgt, Target::Braid(3)).unwrap();
        assert_eq!(m.render(&src, &tgt), text);
    }
}
