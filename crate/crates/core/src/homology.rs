//! The symplectic representation on `H₁(Σ_g; ℤ)` and exact integer linear
//! algebra.
//!
//! Homology vectors use the interleaved basis `a1, b1, a2, b2, ...` with the
//! algebraic intersection form `î(a_i, b_i) = 1`. A positive (right) Dehn
//! twist about `c` acts by the transvection `x ↦ x + î(c, x)·c`, so that
//! `T_{a1}(b1) = b1 + a1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the H1 splitting formula needs a section; none was asserted")]
    SectionRequired,
    #[error("matrix is not symplectic")]
    NotSymplectic,
}

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = x.into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMatrix::identity(self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Vertically stacks matrices with equal column counts.
    pub fn stack(cols: usize, blocks: &[IntMatrix]) -> IntMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        IntMatrix { rows, cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let x = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += x;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let x = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += x;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let x = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = x;
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries, including trailing zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form by gcd-driven row and column elimination, always
/// pivoting on an entry of least nonzero absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            // pivot: first entry of least nonzero |.| in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pj)| x.abs() < d.get(pi, pj).abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return SmithForm { d, u, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = d.get(i, t) / &p;
                if !q.is_zero() {
                    let k = -q;
                    d.add_row(i, t, &k);
                    u.add_row(i, t, &k);
                }
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = d.get(t, j) / &p;
                if !q.is_zero() {
                    let k = -q;
                    d.add_col(j, t, &k);
                    v.add_col(j, t, &k);
                }
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold a row holding a non-multiple into the pivot row
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { d, u, v }
}

/// Finitely generated abelian group `ℤ/d1 ⊕ ... ⊕ ℤ/ds ⊕ ℤ^r` with
/// `d1 | d2 | ... | ds` and every `di ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub torsion: Vec<BigInt>,
    pub rank: usize,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        Self { torsion: Vec::new(), rank }
    }

    /// `ℤ^n` modulo the row span of `relations` (an `k × n` matrix).
    pub fn cokernel(n: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.cols(), n);
        if relations.rows() == 0 {
            return Self::free(n);
        }
        let snf = smith_normal_form(relations);
        let diag = snf.diagonal();
        let nonzero: Vec<BigInt> = diag.into_iter().filter(|x| !x.is_zero()).collect();
        let rank = n - nonzero.len();
        let torsion = nonzero.into_iter().filter(|x| !x.is_one()).collect();
        Self { torsion, rank }
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders: Vec<&BigInt> = self.torsion.iter().chain(&other.torsion).collect();
        let k = orders.len();
        let mut rel = IntMatrix::zeros(k, k);
        for (i, x) in orders.into_iter().enumerate() {
            rel.set(i, i, x.clone());
        }
        let mut out = Self::cokernel(k, &rel);
        out.rank += self.rank + other.rank;
        out
    }

    pub fn betti(&self) -> usize {
        self.rank
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Integer homology class in `H₁(Σ_g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct H1Class {
    pub coords: Vec<i64>,
}

impl H1Class {
    pub fn zero(g: usize) -> Self {
        Self { coords: vec![0; 2 * g] }
    }

    pub fn new(coords: Vec<i64>) -> Self {
        assert!(coords.len().is_multiple_of(2), "homology vectors have even length");
        Self { coords }
    }

    /// Basis vector `a_i` (1-based).
    pub fn a(g: usize, i: usize) -> Self {
        let mut c = Self::zero(g);
        c.coords[2 * (i - 1)] = 1;
        c
    }

    /// Basis vector `b_i` (1-based).
    pub fn b(g: usize, i: usize) -> Self {
        let mut c = Self::zero(g);
        c.coords[2 * (i - 1) + 1] = 1;
        c
    }

    pub fn genus(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &H1Class) -> H1Class {
        H1Class::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &H1Class) -> H1Class {
        H1Class::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    fn column(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self.coords.iter().map(|&x| vec![x]).collect();
        IntMatrix::from_rows(&rows)
    }

    fn from_column(m: &IntMatrix) -> Option<H1Class> {
        let coords: Option<Vec<i64>> = (0..m.rows()).map(|i| m.get(i, 0).to_i64()).collect();
        coords.map(H1Class::new)
    }
}

/// Algebraic intersection number `î(x, y) = Σ (x_{a_i} y_{b_i} − x_{b_i} y_{a_i})`.
pub fn intersection(x: &H1Class, y: &H1Class) -> Result<i64, HomologyError> {
    if x.coords.len() != y.coords.len() {
        return Err(HomologyError::DimensionMismatch {
            expected: x.coords.len(),
            got: y.coords.len(),
        });
    }
    Ok(x.coords
        .chunks(2)
        .zip(y.coords.chunks(2))
        .map(|(p, q)| p[0] * q[1] - p[1] * q[0])
        .sum())
}

/// The standard form `J`, block-diagonal with blocks `[[0, 1], [-1, 0]]`.
pub fn standard_form(g: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        j.set(2 * i, 2 * i + 1, BigInt::one());
        j.set(2 * i + 1, 2 * i, -BigInt::one());
    }
    j
}

/// `2g × 2g` integer matrix preserving the intersection form (`MᵀJM = J`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpMatrix {
    g: usize,
    m: IntMatrix,
}

impl SpMatrix {
    pub fn identity(g: usize) -> Self {
        Self { g, m: IntMatrix::identity(2 * g) }
    }

    /// Validates the symplectic condition.
    pub fn new(g: usize, m: IntMatrix) -> Result<Self, HomologyError> {
        if m.rows() != 2 * g || m.cols() != 2 * g {
            return Err(HomologyError::DimensionMismatch { expected: 2 * g, got: m.rows() });
        }
        if !is_symplectic(&m, g) {
            return Err(HomologyError::NotSymplectic);
        }
        Ok(Self { g, m })
    }

    fn trusted(g: usize, m: IntMatrix) -> Self {
        debug_assert!(is_symplectic(&m, g));
        Self { g, m }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn mul(&self, other: &SpMatrix) -> SpMatrix {
        assert_eq!(self.g, other.g, "genus mismatch");
        Self::trusted(self.g, self.m.mul(&other.m))
    }

    /// `M⁻¹ = −J Mᵀ J`.
    pub fn inverse(&self) -> SpMatrix {
        let j = standard_form(self.g);
        let inv = j.mul(&self.m.transpose()).mul(&j);
        let neg = IntMatrix {
            rows: inv.rows,
            cols: inv.cols,
            data: inv.data.into_iter().map(|x| -x).collect(),
        };
        Self::trusted(self.g, neg)
    }

    pub fn pow(&self, k: i64) -> SpMatrix {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = SpMatrix::identity(self.g);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn apply(&self, x: &H1Class) -> Result<H1Class, HomologyError> {
        if x.coords.len() != 2 * self.g {
            return Err(HomologyError::DimensionMismatch {
                expected: 2 * self.g,
                got: x.coords.len(),
            });
        }
        Ok(H1Class::from_column(&self.m.mul(&x.column())).expect("class fits in i64"))
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    /// `M − I`, the matrix whose image generates the coinvariant relations.
    pub fn minus_identity(&self) -> IntMatrix {
        self.m.sub(&IntMatrix::identity(2 * self.g))
    }
}

pub fn is_symplectic(m: &IntMatrix, g: usize) -> bool {
    let j = standard_form(g);
    m.transpose().mul(&j).mul(m) == j
}

/// Matrix of `T_c^power`: `x ↦ x + power·î(c, x)·c`.
pub fn transvection(c: &H1Class, power: i64, g: usize) -> Result<SpMatrix, HomologyError> {
    if c.coords.len() != 2 * g {
        return Err(HomologyError::DimensionMismatch { expected: 2 * g, got: c.coords.len() });
    }
    // row functional x ↦ î(c, x)
    let functional: Vec<i64> = (0..2 * g)
        .map(|s| if s % 2 == 0 { -c.coords[s + 1] } else { c.coords[s - 1] })
        .collect();
    let mut m = IntMatrix::identity(2 * g);
    for r in 0..2 * g {
        for s in 0..2 * g {
            let x = power * c.coords[r] * functional[s];
            if x != 0 {
                let v = m.get(r, s) + BigInt::from(x);
                m.set(r, s, v);
            }
        }
    }
    Ok(SpMatrix::trusted(g, m))
}

/// Homology-level Torelli test. Necessary for membership in the Torelli
/// group; for mapping classes known only through their action it is all
/// that can be checked.
pub fn is_torelli(m: &SpMatrix) -> bool {
    m.is_identity()
}

/// `H₁(X) ≅ H₁(Σ_h) ⊕ H₁(F)/⟨(M_i − I)x, vanishing classes⟩` for a fibration
/// with a section.
pub fn h1_total_space(
    base_genus: usize,
    fiber_genus: usize,
    monodromy: &[SpMatrix],
    vanishing: &[H1Class],
    has_section: bool,
) -> Result<AbelianGroup, HomologyError> {
    if !has_section {
        return Err(HomologyError::SectionRequired);
    }
    let n = 2 * fiber_genus;
    let mut blocks = Vec::new();
    for m in monodromy {
        if m.genus() != fiber_genus {
            return Err(HomologyError::DimensionMismatch { expected: n, got: 2 * m.genus() });
        }
        // rows of (M - I)^T are the images (M - I) e_j
        blocks.push(m.minus_identity().transpose());
    }
    for c in vanishing {
        if c.coords.len() != n {
            return Err(HomologyError::DimensionMismatch { expected: n, got: c.coords.len() });
        }
        blocks.push(IntMatrix::from_rows(std::slice::from_ref(&c.coords)));
    }
    let relations = IntMatrix::stack(n, &blocks);
    let fiber_part = AbelianGroup::cokernel(n, &relations);
    Ok(AbelianGroup::free(2 * base_genus).direct_sum(&fiber_part))
}

/// Sufficient condition for a total space to carry no complex structure:
/// odd first Betti number, fiber genus at least 2, positive base genus and a
/// relatively minimal fibration.
pub fn noncomplex_flag(h1: &AbelianGroup, fiber_genus: usize, base_genus: usize, relatively_minimal: bool) -> bool {
    h1.betti() % 2 == 1 && fiber_genus >= 2 && base_genus >= 1 && relatively_minimal
}
