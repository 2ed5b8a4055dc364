//! Dense matrices over the integers with exact arbitrary-precision entries.
//!
//! The central routine is [`smith`], which diagonalises a matrix `A` as
//! `U * A * V = D` with unimodular `U`, `V` and a divisibility chain on the
//! diagonal of `D`. Kernels, integer system solving and everything in the
//! abelian group layer are built on top of it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Row-major integer matrix. Zero rows or zero columns are allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.entries[i * cols + i] = d.clone();
        }
        m
    }

    /// Builds a matrix from small integer rows. All rows must share a length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Builds an `rows x columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.entries[i * cols + j] = x.clone();
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

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> Vec<BigInt> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = BigInt::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        *out.at_mut(r, c) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!(
                "hstack of {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[r * cols + c] = self.get(r, c).clone();
            }
            for c in 0..other.cols {
                out.entries[r * cols + self.cols + c] = other.get(r, c).clone();
            }
        }
        Ok(out)
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!(
                "vstack of {} columns with {} columns",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn block_diagonal(blocks: &[IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.entries[(r0 + r) * cols + c0 + c] = b.get(r, c).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut entries = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            entries.extend_from_slice(&self.entries[r * self.cols..(r + 1) * self.cols]);
        }
        IntMatrix {
            rows: idx.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.entries[r * idx.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        smith(self).rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(src, c);
            if !v.is_zero() {
                let delta = v * k;
                *self.at_mut(dst, c) += delta;
            }
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, src);
            if !v.is_zero() {
                let delta = v * k;
                *self.at_mut(r, dst) += delta;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = self.at_mut(r, c);
            *v = -std::mem::take(v);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = self.at_mut(r, c);
            *v = -std::mem::take(v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl<'a> Mul for &'a IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<'a> Add for &'a IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub for &'a IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixRepr::deserialize(d)?;
        let entries = repr
            .entries
            .iter()
            .map(|s| s.trim().parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| D::Error::custom(format!("bad matrix entry: {e}")))?;
        IntMatrix::new(repr.rows, repr.cols, entries).map_err(D::Error::custom)
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` in Smith normal form.
///
/// The inverses of both transforms are carried along since the group layer
/// needs to move coordinates in both directions.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    d: IntMatrix,
    rank: usize,
}

impl SmithDecomposition {
    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    pub fn v_inv(&self) -> &IntMatrix {
        &self.v_inv
    }

    pub fn d(&self) -> &IntMatrix {
        &self.d
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn source_dims(&self) -> (usize, usize) {
        (self.d.rows, self.d.cols)
    }

    /// `d_i` for `i < min(rows, cols)`; zeros trail.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().take(self.rank).collect()
    }

    /// Some integer `x` with `A x = b`, or `None` if no integer solution exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let (m, n) = self.source_dims();
        assert_eq!(b.len(), m, "right-hand side length mismatch");
        let y = self.u.mul_vec(b);
        let mut z = vec![BigInt::zero(); n];
        for (i, yi) in y.iter().enumerate() {
            if i < self.rank {
                let di = self.d.get(i, i);
                let (q, r) = yi.div_rem(di);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&z))
    }
}

/// Quotient rounded to the nearest integer, so the remainder has minimal
/// absolute value.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_mod_floor(b);
    let twice: BigInt = &r * 2;
    if twice.abs() > b.abs() {
        q += 1;
    }
    q
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are chosen with minimal absolute value among the remaining
/// submatrix, ties broken by lowest row then lowest column.
pub fn smith(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // Every elementary operation on `d` is mirrored on the transforms:
    // a row op E acts as U <- E U, U^-1 <- U^-1 E^-1; column ops dually.
    let row_add = |d: &mut IntMatrix,
                   u: &mut IntMatrix,
                   u_inv: &mut IntMatrix,
                   dst: usize,
                   src: usize,
                   k: &BigInt| {
        d.add_row_multiple(dst, src, k);
        u.add_row_multiple(dst, src, k);
        u_inv.add_col_multiple(src, dst, &-k);
    };
    let col_add = |d: &mut IntMatrix,
                   v: &mut IntMatrix,
                   v_inv: &mut IntMatrix,
                   dst: usize,
                   src: usize,
                   k: &BigInt| {
        d.add_col_multiple(dst, src, k);
        v.add_col_multiple(dst, src, k);
        v_inv.add_row_multiple(src, dst, &-k);
    };

    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            // minimal nonzero pivot in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for r in t..m {
                for c in t..n {
                    let x = d.get(r, c);
                    if x.is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((br, bc)) => x.abs() < d.get(br, bc).abs(),
                    };
                    if better {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                break;
            };
            if pr != t {
                d.swap_rows(t, pr);
                u.swap_rows(t, pr);
                u_inv.swap_cols(t, pr);
            }
            if pc != t {
                d.swap_cols(t, pc);
                v.swap_cols(t, pc);
                v_inv.swap_rows(t, pc);
            }

            let mut clean = true;
            for r in t + 1..m {
                if d.get(r, t).is_zero() {
                    continue;
                }
                let q = nearest_quotient(d.get(r, t), d.get(t, t));
                row_add(&mut d, &mut u, &mut u_inv, r, t, &-q);
                if !d.get(r, t).is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..n {
                if d.get(t, c).is_zero() {
                    continue;
                }
                let q = nearest_quotient(d.get(t, c), d.get(t, t));
                col_add(&mut d, &mut v, &mut v_inv, c, t, &-q);
                if !d.get(t, c).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // enforce divisibility of the trailing block by the pivot
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..m).find(|&r| {
                (t + 1..n).any(|c| !d.get(r, c).is_multiple_of(&pivot))
            });
            match offender {
                Some(r) => row_add(&mut d, &mut u, &mut u_inv, t, r, &BigInt::one()),
                None => break,
            }
        }
        if d.get(t, t).is_zero() {
            break;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank += 1;
    }

    SmithDecomposition {
        u,
        u_inv,
        v,
        v_inv,
        d,
        rank,
    }
}

/// Columns form a basis of the integer kernel `{x : A x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith(a);
    let idx: Vec<usize> = (s.rank..a.cols).collect();
    s.v.select_columns(&idx)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Rank of `A` over the field with `p` elements.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let modulus = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = (0..a.rows)
        .map(|r| {
            (0..a.cols)
                .map(|c| {
                    a.get(r, c)
                        .mod_floor(&modulus)
                        .to_u64()
                        .expect("residue fits in u64")
                })
                .collect()
        })
        .collect();
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let inv = |x: u64| {
        // Fermat
        let (mut base, mut e, mut acc) = (x, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..a.cols {
        let Some(pr) = (rank..a.rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let pinv = inv(m[rank][c]);
        for r in 0..a.rows {
            if r == rank || m[r][c] == 0 {
                continue;
            }
            let f = mul(m[r][c], pinv);
            for k in c..a.cols {
                let sub = mul(f, m[rank][k]);
                m[r][k] = (m[r][k] + p - sub) % p;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(a: &IntMatrix) -> SmithDecomposition {
        let s = smith(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d, "U A V != D for {a}");
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols));
        assert_eq!(s.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.determinant().unwrap().abs(), BigInt::one());
        for r in 0..a.rows {
            for c in 0..a.cols {
                if r != c {
                    assert!(s.d.get(r, c).is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else if w[0].is_zero() {
                assert!(w[1].is_zero());
            }
        }
        assert!(diag.iter().all(|x| !x.is_negative()));
        s
    }

    #[test]
    fn diag_two_three() {
        let s = check_smith(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[[1, 0], [0, 6]]));
    }

    #[test]
    fn zero_matrix_has_identity_transforms() {
        let s = check_smith(&IntMatrix::zeros(3, 3));
        assert_eq!(s.d, IntMatrix::zeros(3, 3));
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(3));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn identity_is_its_own_form() {
        for n in 0..5 {
            let s = check_smith(&IntMatrix::identity(n));
            assert_eq!(s.d, IntMatrix::identity(n));
        }
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let s = check_smith(&IntMatrix::zeros(r, c));
            assert_eq!(s.rank(), 0);
        }
        assert_eq!(kernel_basis(&IntMatrix::zeros(0, 2)), IntMatrix::identity(2));
        assert_eq!(kernel_basis(&IntMatrix::zeros(2, 0)).cols(), 0);
    }

    #[test]
    fn known_forms() {
        let a = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let s = check_smith(&a);
        assert_eq!(s.invariant_factors(), vec![2.into(), 6.into(), 12.into()]);
        let b = IntMatrix::from_rows(&[[4, 6]]);
        assert_eq!(check_smith(&b).invariant_factors(), vec![BigInt::from(2)]);
    }

    #[test]
    fn deterministic() {
        let a = IntMatrix::from_rows(&[[3, 5, 7], [2, 2, 9], [0, 4, 1]]);
        let s1 = smith(&a);
        let s2 = smith(&a);
        assert_eq!(s1.u, s2.u);
        assert_eq!(s1.v, s2.v);
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel_basis(&IntMatrix::from_rows(&[[2]])).cols(), 0);
        let k = kernel_basis(&IntMatrix::from_rows(&[[1, 1]]));
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        assert!(
            col == vec![BigInt::from(1), BigInt::from(-1)]
                || col == vec![BigInt::from(-1), BigInt::from(1)]
        );
        assert_eq!(kernel_basis(&IntMatrix::zeros(1, 2)), IntMatrix::identity(2));
    }

    #[test]
    fn kernel_is_saturated() {
        // ker [2 4] is spanned by (2,-1); (1,0) alone is not in it
        let a = IntMatrix::from_rows(&[[2, 4]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        let s = smith(&k);
        assert_eq!(s.invariant_factors(), vec![BigInt::one()]);
    }

    #[test]
    fn solve_integer_systems() {
        let a = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let s = smith(&a);
        assert_eq!(s.solve(&[4.into(), 9.into()]), Some(vec![2.into(), 3.into()]));
        assert_eq!(s.solve(&[1.into(), 0.into()]), None);
        let z = IntMatrix::zeros(2, 1);
        assert_eq!(smith(&z).solve(&[0.into(), 1.into()]), None);
    }

    #[test]
    fn mod_p_ranks() {
        assert_eq!(rank_mod_p(&IntMatrix::from_rows(&[[2]]), 2).unwrap(), 0);
        assert_eq!(rank_mod_p(&IntMatrix::from_rows(&[[2]]), 3).unwrap(), 1);
        assert_eq!(
            rank_mod_p(&IntMatrix::from_rows(&[[1, 0], [0, 6]]), 3).unwrap(),
            1
        );
        assert_eq!(
            rank_mod_p(&IntMatrix::from_rows(&[[1, 0], [0, 6]]), 5).unwrap(),
            2
        );
        assert_eq!(
            rank_mod_p(&IntMatrix::from_rows(&[[-1, 0]]), 7).unwrap(),
            1
        );
        assert_eq!(rank_mod_p(&IntMatrix::zeros(1, 1), 4), Err(Error::NotPrime(4)));
        assert_eq!(rank_mod_p(&IntMatrix::zeros(1, 1), 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn determinant_matches_hand_values() {
        let a = IntMatrix::from_rows(&[[2, -3, 1], [2, 0, -1], [1, 4, 5]]);
        assert_eq!(a.determinant().unwrap(), BigInt::from(49));
        let b = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(b.determinant().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn json_round_trip_keeps_big_entries() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let m = IntMatrix::new(1, 2, vec![big, BigInt::from(-3)]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"rows":1,"cols":2,"entries":["123456789012345678901234567890","-3"]}"#
        );
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<IntMatrix>(r#"{"rows":1,"cols":2,"entries":["1"]}"#).is_err());
    }
}
