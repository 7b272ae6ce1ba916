//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use lefschetz::braid::BraidWord;
use lefschetz::raag::CommGraph;
use lefschetz::words::{Gen, Word};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

pub type Letter = (u32, i64);

pub fn units(w: &Word) -> Vec<Letter> {
    w.unit_letters().map(|(g, e)| (g.0, e)).collect()
}

pub fn from_units(v: &[Letter]) -> Word {
    Word::reduce(v.iter().map(|&(g, e)| (Gen(g), e)))
}

/// Freely reduced random word of exactly `len` letters over `rank` generators.
pub fn random_reduced<R: Rng>(rng: &mut R, rank: u32, len: usize) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let x = (rng.gen_range(0..rank), if rng.gen_bool(0.5) { 1 } else { -1 });
        if out.last().is_some_and(|&(g, e)| g == x.0 && e == -x.1) {
            continue;
        }
        out.push(x);
    }
    out
}

pub fn random_word<R: Rng>(rng: &mut R, rank: u32, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    from_units(&random_reduced(rng, rank, len))
}

/// `[a1,b1]⋯[ah,bh]` as unit letters, with `a_j = 2j-2`, `b_j = 2j-1`.
pub fn surface_relator(h: usize) -> Vec<Letter> {
    let mut r = Vec::new();
    for j in 0..h as u32 {
        let (a, b) = (2 * j, 2 * j + 1);
        r.extend([(a, 1), (b, 1), (a, -1), (b, -1)]);
    }
    r
}

/// All cyclic rotations of the relator and its inverse.
pub fn symmetrized(h: usize) -> Vec<Vec<Letter>> {
    let r = surface_relator(h);
    let inv: Vec<Letter> = r.iter().rev().map(|&(g, e)| (g, -e)).collect();
    let mut out = Vec::new();
    for base in [r, inv] {
        for k in 0..base.len() {
            let mut rot = base[k..].to_vec();
            rot.extend_from_slice(&base[..k]);
            out.push(rot);
        }
    }
    out
}

/// Longest subword of `w` that is also a subword of some symmetrized relator.
pub fn longest_relator_piece(w: &[Letter], h: usize) -> usize {
    let table = symmetrized(h);
    let mut best = 0;
    for i in 0..w.len() {
        for r in &table {
            let k = w[i..].iter().zip(r).take_while(|(x, y)| x == y).count();
            best = best.max(k);
        }
    }
    best
}

/// Freely reduced and never more than half a relator: nontrivial by Greendlinger's lemma.
pub fn greendlinger_certified(w: &[Letter], h: usize) -> bool {
    let reduced = w.windows(2).all(|p| !(p[0].0 == p[1].0 && p[0].1 == -p[1].1));
    !w.is_empty() && reduced && longest_relator_piece(w, h) <= 2 * h
}

/// Product of `k` conjugates of the relator or its inverse.
pub fn normal_closure_product<R: Rng>(rng: &mut R, h: usize, k: usize, conj_len: usize) -> Word {
    let r = from_units(&surface_relator(h));
    let mut w = Word::identity();
    for _ in 0..k {
        let u = random_word(rng, 2 * h as u32, conj_len);
        let piece = if rng.gen_bool(0.5) { r.clone() } else { r.inverse() };
        w.append(&piece.conjugate(&u));
    }
    w
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Geodesic length in `A(Γ)` by breadth-first search over commuting swaps
/// and free cancellations. Exponential; short words only.
pub fn raag_geodesic_bfs(w: &[Letter], graph: &CommGraph) -> usize {
    let commute = |x: u32, y: u32| graph.adjacent(x as usize + 1, y as usize + 1);
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut queue = VecDeque::from([w.to_vec()]);
    let mut best = w.len();
    seen.insert(w.to_vec());
    while let Some(cur) = queue.pop_front() {
        best = best.min(cur.len());
        for i in 0..cur.len().saturating_sub(1) {
            let (x, y) = (cur[i], cur[i + 1]);
            let mut next = None;
            if x.0 == y.0 && x.1 == -y.1 {
                let mut v = cur.clone();
                v.drain(i..i + 2);
                next = Some(v);
            } else if x.0 != y.0 && commute(x.0, y.0) {
                let mut v = cur.clone();
                v.swap(i, i + 1);
                next = Some(v);
            }
            if let Some(v) = next {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    best
}

/// Random rewriting by commuting swaps of adjacent commuting letters.
pub fn random_swaps<R: Rng>(rng: &mut R, w: &[Letter], graph: &CommGraph, steps: usize) -> Vec<Letter> {
    let mut v = w.to_vec();
    if v.len() < 2 {
        return v;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..v.len() - 1);
        if v[i].0 != v[i + 1].0 && graph.adjacent(v[i].0 as usize + 1, v[i + 1].0 as usize + 1) {
            v.swap(i, i + 1);
        }
    }
    v
}

/// `A_{ij} = (σ_{j-1}⋯σ_{i+1}) σ_i² (σ_{j-1}⋯σ_{i+1})⁻¹`, 1-based `i < j`.
pub fn pure_generator(n: usize, i: usize, j: usize) -> BraidWord {
    let mut conj = BraidWord::identity(n);
    for k in (i + 1..j).rev() {
        conj = conj.mul(&BraidWord::sigma(n, k, 1).unwrap()).unwrap();
    }
    BraidWord::sigma(n, i, 2).unwrap().conjugate(&conj).unwrap()
}

pub fn random_pure<R: Rng>(rng: &mut R, n: usize, k: usize) -> BraidWord {
    let mut b = BraidWord::identity(n);
    for _ in 0..k {
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(i + 1..=n);
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        b = b.mul(&pure_generator(n, i, j).pow(e)).unwrap();
    }
    b
}

pub fn random_braid<R: Rng>(rng: &mut R, n: usize, len: usize) -> BraidWord {
    BraidWord::from_word(n, from_units(&random_reduced(rng, n as u32 - 1, len))).unwrap()
}

/// Applies random braid relations (and inserts trivial pairs) without
/// changing the element. Letters are `σ_{g+1}^{±1}`.
pub fn rewrite_braid<R: Rng>(rng: &mut R, b: &BraidWord, steps: usize) -> BraidWord {
    let n = b.strands();
    let mut v = units(b.word());
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 => {
                let pos = rng.gen_range(0..=v.len());
                let g = rng.gen_range(0..n as u32 - 1);
                let e = if rng.gen_bool(0.5) { 1 } else { -1 };
                v.splice(pos..pos, [(g, e), (g, -e)]);
            }
            1 if v.len() >= 2 => {
                let i = rng.gen_range(0..v.len() - 1);
                let (x, y) = (v[i], v[i + 1]);
                if x.0.abs_diff(y.0) >= 2 {
                    v.swap(i, i + 1);
                }
            }
            2 if v.len() >= 3 => {
                let i = rng.gen_range(0..v.len() - 2);
                let (x, y, z) = (v[i], v[i + 1], v[i + 2]);
                if x == z && x.1 == y.1 && x.0.abs_diff(y.0) == 1 {
                    v[i] = y;
                    v[i + 1] = x;
                    v[i + 2] = y;
                }
            }
            _ => {}
        }
    }
    BraidWord::from_word(n, from_units(&v)).unwrap()
}

pub fn strand_set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}
