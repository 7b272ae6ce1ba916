//! Braid groups on marked disks.
//!
//! Equality is decided with the Artin action on the free group
//! `F(x1, ..., xn)`. The action is faithful, so two braids are equal exactly
//! when they induce the same automorphism.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::words::{Alphabet, Gen, Word, WordError};

/// Default cap on the total letter count of Artin images.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("generator s{index} is out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("braids on {0} and {1} strands cannot be compared")]
    MixedStrandCount(usize, usize),
    #[error("Artin images exceeded the budget of {0} letters")]
    Budget(usize),
    #[error("braid is not pure")]
    NotPure,
    #[error("marked points {0:?} do not form an interval of at least two points")]
    NotAnInterval(Vec<usize>),
    #[error(transparent)]
    Parse(#[from] WordError),
}

/// A word in the standard generators `s1, ..., s{n-1}` of `B_n`.
///
/// Generator `s_i` is stored as `Gen(i - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    word: Word,
}

impl BraidWord {
    pub fn identity(n: usize) -> Self {
        Self { n, word: Word::identity() }
    }

    /// `s_i^e` (1-based `i`).
    pub fn sigma(n: usize, i: usize, e: i64) -> Result<Self, BraidError> {
        check_index(n, i)?;
        Ok(Self { n, word: Word::power(Gen(i as u32 - 1), e) })
    }

    pub fn from_word(n: usize, word: Word) -> Result<Self, BraidError> {
        for g in word.generators() {
            check_index(n, g.0 as usize + 1)?;
        }
        Ok(Self { n, word })
    }

    pub fn parse(n: usize, text: &str) -> Result<Self, BraidError> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Self::identity(n));
        }
        let mut alphabet = Alphabet::new();
        let raw = Word::parse_interning(text, &mut alphabet)?;
        let mut word = Word::identity();
        for &(g, e) in raw.letters() {
            let name = alphabet.name(g).unwrap_or_default();
            let index = name
                .strip_prefix('s')
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
            check_index(n, index)?;
            word.push(Gen(index as u32 - 1), e);
        }
        Ok(Self { n, word })
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn mul(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        same_n(self, other)?;
        Ok(Self { n: self.n, word: self.word.mul(&other.word) })
    }

    pub fn inverse(&self) -> BraidWord {
        Self { n: self.n, word: self.word.inverse() }
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        Self { n: self.n, word: self.word.pow(k) }
    }

    pub fn conjugate(&self, by: &BraidWord) -> Result<BraidWord, BraidError> {
        same_n(self, by)?;
        Ok(Self { n: self.n, word: self.word.conjugate(&by.word) })
    }

    pub fn commutator(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        same_n(self, other)?;
        Ok(Self { n: self.n, word: Word::commutator(&self.word, &other.word) })
    }

    /// Unit crossings `(i, ±1)` in order.
    pub fn crossings(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.word.unit_letters().map(|(g, e)| (g.0 as usize + 1, e))
    }

    /// `s_i^e` becomes `s_{i+shift}^e`, for embedding into a larger braid group.
    pub fn shifted(&self, shift: usize, n: usize) -> Result<BraidWord, BraidError> {
        BraidWord::from_word(n, self.word.map_gens(|g| Word::gen(Gen(g.0 + shift as u32))))
    }

    pub fn display(&self) -> String {
        if self.word.is_empty() {
            return "1".to_string();
        }
        self.word.display(&Alphabet::braid(self.n)).to_string()
    }
}

fn check_index(n: usize, i: usize) -> Result<(), BraidError> {
    if i == 0 || i >= n {
        return Err(BraidError::IndexOutOfRange { index: i, strands: n });
    }
    Ok(())
}

fn same_n(a: &BraidWord, b: &BraidWord) -> Result<(), BraidError> {
    if a.n != b.n {
        return Err(BraidError::MixedStrandCount(a.n, b.n));
    }
    Ok(())
}

/// Images `φ_b(x_1), ..., φ_b(x_n)` of the Artin automorphism of `b`, where
/// `s_i` sends `x_i ↦ x_i x_{i+1} x_i⁻¹`, `x_{i+1} ↦ x_i` and `φ_{uv} = φ_u ∘ φ_v`.
pub fn artin_images(b: &BraidWord, budget: usize) -> Result<Vec<Word>, BraidError> {
    let n = b.n;
    let mut images: Vec<Word> = (0..n as u32).map(|j| Word::gen(Gen(j))).collect();
    let mut total = n;
    for (i, e) in b.crossings() {
        // images[k] holds T(x_k); precomposing with s_i^{±1} only touches x_i, x_{i+1}
        let (l, r) = (i - 1, i);
        let xi = images[l].clone();
        let xj = images[r].clone();
        let before = xi.len() + xj.len();
        if e > 0 {
            images[l] = xi.mul(&xj).mul(&xi.inverse());
            images[r] = xi;
        } else {
            images[r] = xj.inverse().mul(&xi).mul(&xj);
            images[l] = xj;
        }
        total = total + images[l].len() + images[r].len() - before;
        if total > budget {
            return Err(BraidError::Budget(budget));
        }
    }
    Ok(images)
}

/// [`artin_images`] packaged as an endomorphism of the free group.
pub fn artin_action(b: &BraidWord, budget: usize) -> Result<crate::words::GenMap, BraidError> {
    let images = artin_images(b, budget)?;
    let mut map = crate::words::GenMap::new(crate::words::Target::Free);
    for (j, img) in images.into_iter().enumerate() {
        map.insert(Gen(j as u32), img);
    }
    Ok(map)
}

pub fn is_identity(b: &BraidWord, budget: usize) -> Result<bool, BraidError> {
    if b.word.is_empty() {
        return Ok(true);
    }
    let images = artin_images(b, budget)?;
    Ok(images.iter().enumerate().all(|(j, w)| *w == Word::gen(Gen(j as u32))))
}

pub fn braid_equal(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    braid_equal_with_budget(a, b, DEFAULT_BUDGET)
}

pub fn braid_equal_with_budget(a: &BraidWord, b: &BraidWord, budget: usize) -> Result<bool, BraidError> {
    same_n(a, b)?;
    if a == b {
        return Ok(true);
    }
    is_identity(&a.mul(&b.inverse())?, budget)
}

/// `perm[k]` is the final position of the strand that starts at position `k`
/// (0-based).
pub fn permutation(b: &BraidWord) -> Vec<usize> {
    // at[p] = strand currently at position p
    let mut at: Vec<usize> = (0..b.n).collect();
    for (i, _) in b.crossings() {
        at.swap(i - 1, i);
    }
    let mut perm = vec![0; b.n];
    for (p, &s) in at.iter().enumerate() {
        perm[s] = p;
    }
    perm
}

pub fn is_pure(b: &BraidWord) -> bool {
    permutation(b).iter().enumerate().all(|(k, &p)| k == p)
}

/// Consecutive marked points `first..=last` (1-based) on a disk with `n` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedCurve {
    pub n: usize,
    pub first: usize,
    pub last: usize,
}

impl MarkedCurve {
    pub fn interval(n: usize, first: usize, last: usize) -> Result<Self, BraidError> {
        if first == 0 || last > n || last <= first {
            return Err(BraidError::NotAnInterval((first..=last).collect()));
        }
        Ok(Self { n, first, last })
    }

    /// Accepts any point set and rejects the ones that are not intervals.
    pub fn from_points(n: usize, points: &BTreeSet<usize>) -> Result<Self, BraidError> {
        let first = *points.iter().next().ok_or_else(|| BraidError::NotAnInterval(Vec::new()))?;
        let last = *points.iter().next_back().expect("nonempty");
        if points.len() != last - first + 1 {
            return Err(BraidError::NotAnInterval(points.iter().copied().collect()));
        }
        Self::interval(n, first, last)
    }

    pub fn size(&self) -> usize {
        self.last - self.first + 1
    }
}

/// Positive half twist on the interval: `(s_a ⋯ s_{b-1})(s_a ⋯ s_{b-2}) ⋯ (s_a)`.
pub fn half_twist(c: &MarkedCurve) -> BraidWord {
    let mut word = Word::identity();
    for top in (c.first..c.last).rev() {
        for i in c.first..=top {
            word.push(Gen(i as u32 - 1), 1);
        }
    }
    BraidWord { n: c.n, word }
}

/// Dehn twist about the curve: `(s_a ⋯ s_{b-1})^k` for `k` enclosed points.
pub fn full_twist(c: &MarkedCurve) -> BraidWord {
    let mut cycle = Word::identity();
    for i in c.first..c.last {
        cycle.push(Gen(i as u32 - 1), 1);
    }
    BraidWord { n: c.n, word: cycle.pow(c.size() as i64) }
}

/// `s_1 s_2 ⋯ s_{n-1}`, which rotates points placed on a circle:
/// `δ s_i δ⁻¹ = s_{i+1}`.
pub fn rotation(n: usize) -> BraidWord {
    let mut word = Word::identity();
    for i in 1..n {
        word.push(Gen(i as u32 - 1), 1);
    }
    BraidWord { n, word }
}

/// Image of a pure braid under forgetting every strand outside `keep`
/// (1-based starting positions). Crossings between two kept strands are
/// replayed with renumbered indices; all others are dropped.
pub fn delete_strands(b: &BraidWord, keep: &BTreeSet<usize>) -> Result<BraidWord, BraidError> {
    if !is_pure(b) {
        return Err(BraidError::NotPure);
    }
    if let Some(&bad) = keep.iter().find(|&&k| k == 0 || k > b.n) {
        return Err(BraidError::IndexOutOfRange { index: bad, strands: b.n });
    }
    let kept: Vec<bool> = (0..b.n).map(|s| keep.contains(&(s + 1))).collect();
    let mut at: Vec<usize> = (0..b.n).collect();
    let mut word = Word::identity();
    for (i, e) in b.crossings() {
        let (l, r) = (at[i - 1], at[i]);
        if kept[l] && kept[r] {
            let index = at[..i].iter().filter(|&&s| kept[s]).count();
            word.push(Gen(index as u32 - 1), e);
        }
        at.swap(i - 1, i);
    }
    Ok(BraidWord { n: keep.len(), word })
}

/// Signed crossing count between strands `i < j` (0-based starting positions),
/// halved. Defined for pure braids, where every pair crosses an even number
/// of times.
pub fn linking_numbers(b: &BraidWord) -> Result<Vec<Vec<i64>>, BraidError> {
    if !is_pure(b) {
        return Err(BraidError::NotPure);
    }
    let mut counts = vec![vec![0i64; b.n]; b.n];
    let mut at: Vec<usize> = (0..b.n).collect();
    for (i, e) in b.crossings() {
        let (l, r) = (at[i - 1], at[i]);
        counts[l][r] += e;
        counts[r][l] += e;
        at.swap(i - 1, i);
    }
    Ok(counts.into_iter().map(|row| row.into_iter().map(|c| c / 2).collect()).collect())
}
