//! Dense exact linear algebra over prime fields.
//!
//! Every matrix carries its modulus. Entries are stored reduced in `[0, p)`
//! as `u32`; all arithmetic widens to `u64` and reduces after each
//! multiply-add, which cannot overflow because `p < 2^31`.
//!
//! Matrices with zero rows or zero columns are ordinary values here: they
//! describe maps into or out of the zero space and show up everywhere in
//! representation theory.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not invertible")]
    NotInvertible,
}

/// A validated prime modulus `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if !(2..(1 << 31)).contains(&p) {
            return Err(LinalgError::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(LinalgError::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A residue class modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: Prime,
}

impl FpScalar {
    pub fn new(value: i64, p: Prime) -> Self {
        FpScalar { value: reduce_signed(value, p.0), p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.p
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar { value: inv_mod(self.value, self.p.0), p: self.p })
    }
}

impl core::ops::Add for FpScalar {
    type Output = Self;
    fn add(self, other: Self) -> Self {
        FpScalar { value: add_mod(self.value, other.value, self.p.0), p: self.p }
    }
}

impl core::ops::Mul for FpScalar {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        FpScalar { value: mul_mod(self.value, other.value, self.p.0), p: self.p }
    }
}

impl core::ops::Neg for FpScalar {
    type Output = Self;
    fn neg(self) -> Self {
        FpScalar { value: neg_mod(self.value, self.p.0), p: self.p }
    }
}

#[inline]
pub(crate) fn reduce_signed(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Inverse of a nonzero residue by Fermat's little theorem.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[{}x{}]", self.p, self.rows, self.cols)?;
        let mut list = f.debug_list();
        for r in 0..self.rows {
            list.entry(&self.row(r));
        }
        list.finish()
    }
}

/// Output of [`FpMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

/// Output of [`FpMatrix::cokernel_projection`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cokernel {
    /// Surjection `F_p^rows -> F_p^dim` whose kernel is the column space.
    pub proj: FpMatrix,
    pub dim: usize,
    /// Standard coordinates not used as pivots of the column space, in
    /// increasing order. `proj` sends the unit vector at `complement[k]`
    /// to the `k`-th unit vector.
    pub complement: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix { p: p.0, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed row-major entries, reducing them mod `p`.
    pub fn from_entries(p: Prime, rows: usize, cols: usize, entries: &[i64]) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch("entry count does not match shape"));
        }
        let data = entries.iter().map(|&v| reduce_signed(v, p.0)).collect();
        Ok(FpMatrix { p: p.0, rows, cols, data })
    }

    /// Convenience constructor for literal matrices; panics on ragged rows.
    pub fn from_rows(p: Prime, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix literal");
            data.extend(r.iter().map(|&v| reduce_signed(v, p.0)));
        }
        FpMatrix { p: p.0, rows: rows.len(), cols, data }
    }

    /// Single column from a vector of residues.
    pub fn column_vector(p: Prime, v: &[u32]) -> Self {
        FpMatrix { p: p.0, rows: v.len(), cols: 1, data: v.iter().map(|&x| x % p.0).collect() }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        Prime(self.p)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    fn check_same_modulus(&self, other: &Self) -> Result<(), LinalgError> {
        if self.p != other.p {
            return Err(LinalgError::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_modulus(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch("inner dimensions differ in product"));
        }
        let p = self.p as u64;
        let mut out = vec![0u32; self.rows * other.cols];
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out[r * other.cols + c] = v as u32;
            }
        }
        Ok(FpMatrix { p: self.p, rows: self.rows, cols: other.cols, data: out })
    }

    /// Product, panicking on shape or modulus mismatch.
    ///
    /// Used on internally constructed matrices whose shapes are guaranteed
    /// by representation invariants.
    pub fn dot(&self, other: &Self) -> Self {
        self.mul(other).expect("matrix product of incompatible operands")
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, add_mod)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, sub_mod)
    }

    fn zip_with(&self, other: &Self, op: fn(u32, u32, u32) -> u32) -> Result<Self, LinalgError> {
        self.check_same_modulus(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::DimensionMismatch("operands of sum have different shapes"));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b, self.p)).collect();
        Ok(FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Self {
        self.map(neg_mod)
    }

    pub fn scale(&self, s: u32) -> Self {
        self.map(|v, p| mul_mod(v, s % p, p))
    }

    fn map(&self, f: impl Fn(u32, u32) -> u32) -> Self {
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v, self.p)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = vec![0u32; self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        FpMatrix { p: self.p, rows: self.cols, cols: self.rows, data: out }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_modulus(other)?;
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch("hstack of matrices with different row counts"));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(FpMatrix { p: self.p, rows: self.rows, cols, data })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_modulus(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch("vstack of matrices with different column counts"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Block-diagonal matrix with the given blocks in order.
    pub fn block_diag(p: Prime, blocks: &[&FpMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Overwrites the block starting at `(r0, c0)` with `block`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    /// The `rows x cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let mut data = Vec::with_capacity(rows * cols);
        for r in r0..r0 + rows {
            data.extend_from_slice(&self.data[r * self.cols + c0..r * self.cols + c0 + cols]);
        }
        FpMatrix { p: self.p, rows, cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        FpMatrix { p: self.p, rows: self.rows, cols: cols.len(), data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        FpMatrix { p: self.p, rows: rows.len(), cols: self.cols, data }
    }

    /// In-place Gauss-Jordan elimination; returns the pivot columns.
    fn eliminate(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(src) = (pr..rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if src != pr {
                for k in 0..cols {
                    self.data.swap(src * cols + k, pr * cols + k);
                }
            }
            let inv = inv_mod(self.data[pr * cols + c], self.p) as u64;
            for k in c..cols {
                let v = &mut self.data[pr * cols + k];
                *v = (*v as u64 * inv % p) as u32;
            }
            for r in 0..rows {
                if r == pr {
                    continue;
                }
                let factor = self.data[r * cols + c] as u64;
                if factor == 0 {
                    continue;
                }
                let neg = p - factor;
                for k in c..cols {
                    let pv = self.data[pr * cols + k] as u64;
                    if pv != 0 {
                        let v = &mut self.data[r * cols + k];
                        *v = ((*v as u64 + neg * pv) % p) as u32;
                    }
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    /// Reduced row echelon form, its pivot columns and the rank.
    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let pivot_columns = reduced.eliminate();
        Rref { rank: pivot_columns.len(), reduced, pivot_columns }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, one basis vector per column.
    ///
    /// Basis vector `k` has a 1 in the `k`-th free column and zeros in the
    /// other free columns.
    pub fn kernel_basis(&self) -> FpMatrix {
        self.kernel_basis_with_free().0
    }

    /// [`Self::kernel_basis`] together with the free columns; the kernel
    /// coordinates of a null vector are its entries at those columns.
    pub fn kernel_basis_with_free(&self) -> (FpMatrix, Vec<usize>) {
        let Rref { reduced, pivot_columns, rank } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_columns.contains(c)).collect();
        let mut out = Self::zeros(self.prime(), self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.data[fc * free.len() + k] = 1;
            for (r, &pc) in pivot_columns.iter().enumerate().take(rank) {
                out.data[pc * free.len() + k] = neg_mod(reduced.get(r, fc), self.p);
            }
        }
        (out, free)
    }

    /// Some `x` with `self * x = b`; free variables are set to zero.
    pub fn solve_right(&self, b: &FpMatrix) -> Result<FpMatrix, LinalgError> {
        self.check_same_modulus(b)?;
        if self.rows != b.rows {
            return Err(LinalgError::DimensionMismatch("solve_right: row counts differ"));
        }
        let n = self.cols;
        let mut aug = self.hstack(b)?;
        let pivots = aug.eliminate();
        if pivots.last().is_some_and(|&c| c >= n) {
            return Err(LinalgError::NoSolution);
        }
        let mut x = Self::zeros(self.prime(), n, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for k in 0..b.cols {
                x.data[pc * b.cols + k] = aug.get(r, n + k);
            }
        }
        Ok(x)
    }

    /// Projection onto the cokernel of `self` (as a map `F_p^cols -> F_p^rows`).
    ///
    /// The column space is reduced via the rref of the transpose; the pivot
    /// coordinates of that rref are eliminated and the remaining coordinates
    /// are read off.
    pub fn cokernel_projection(&self) -> Cokernel {
        let Rref { reduced, pivot_columns, .. } = self.transpose().rref();
        let complement: Vec<usize> = (0..self.rows).filter(|c| !pivot_columns.contains(c)).collect();
        let mut proj = Self::zeros(self.prime(), complement.len(), self.rows);
        for (qi, &q) in complement.iter().enumerate() {
            proj.data[qi * self.rows + q] = 1;
            for (k, &pk) in pivot_columns.iter().enumerate() {
                proj.data[qi * self.rows + pk] = neg_mod(reduced.get(k, q), self.p);
            }
        }
        Cokernel { dim: complement.len(), proj, complement }
    }

    pub fn invert(&self) -> Result<FpMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(self.prime(), n))?;
        let pivots = aug.eliminate();
        if pivots.len() < n || pivots.get(n.wrapping_sub(1)).is_some_and(|&c| c >= n) {
            return Err(LinalgError::NotInvertible);
        }
        Ok(aug.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Prime {
        Prime::new(2).unwrap()
    }

    fn f3() -> Prime {
        Prime::new(3).unwrap()
    }

    #[test]
    fn primes_validate() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(2_147_483_629).is_ok());
        assert_eq!(Prime::new(1), Err(LinalgError::NotPrime(1)));
        assert_eq!(Prime::new(9), Err(LinalgError::NotPrime(9)));
        assert!(Prime::new(1 << 31).is_err());
    }

    #[test]
    fn scalar_arithmetic() {
        let p = Prime::new(5).unwrap();
        let a = FpScalar::new(-1, p);
        assert_eq!(a.value(), 4);
        assert_eq!((a * a).value(), 1);
        assert_eq!(a.inv().unwrap().value(), 4);
        assert_eq!(FpScalar::new(0, p).inv(), None);
        assert_eq!((a + FpScalar::new(1, p)).value(), 0);
        assert_eq!((-a).value(), 1);
    }

    #[test]
    fn rref_examples() {
        let id = FpMatrix::identity(f2(), 2);
        let r = id.rref();
        assert_eq!((r.reduced, r.pivot_columns, r.rank), (id, vec![0, 1], 2));

        let z = FpMatrix::zeros(f3(), 3, 2);
        let r = z.rref();
        assert_eq!((r.reduced, r.pivot_columns, r.rank), (z, vec![], 0));

        let m = FpMatrix::from_rows(f2(), &[&[1, 1], &[1, 1]]);
        let r = m.rref();
        assert_eq!(r.reduced, FpMatrix::from_rows(f2(), &[&[1, 1], &[0, 0]]));
        assert_eq!((r.pivot_columns, r.rank), (vec![0], 1));
    }

    #[test]
    fn kernel_examples() {
        let m = FpMatrix::from_rows(f2(), &[&[1, 1]]);
        assert_eq!(m.kernel_basis(), FpMatrix::from_rows(f2(), &[&[1], &[1]]));

        let k = FpMatrix::identity(f3(), 4).kernel_basis();
        assert_eq!(k.shape(), (4, 0));

        let k = FpMatrix::zeros(f3(), 2, 3).kernel_basis();
        assert_eq!(k.shape(), (3, 3));
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn solve_examples() {
        let b = FpMatrix::from_rows(f3(), &[&[1, 2], &[0, 2]]);
        assert_eq!(FpMatrix::identity(f3(), 2).solve_right(&b).unwrap(), b);

        let a = FpMatrix::from_rows(f2(), &[&[1, 1]]);
        let x = a.solve_right(&FpMatrix::from_rows(f2(), &[&[1]])).unwrap();
        assert_eq!(x, FpMatrix::from_rows(f2(), &[&[1], &[0]]));

        let z = FpMatrix::zeros(f2(), 1, 1);
        assert_eq!(z.solve_right(&FpMatrix::from_rows(f2(), &[&[1]])), Err(LinalgError::NoSolution));

        let bad = FpMatrix::zeros(f2(), 2, 1);
        assert!(matches!(z.solve_right(&bad), Err(LinalgError::DimensionMismatch(_))));
    }

    #[test]
    fn cokernel_examples() {
        let c = FpMatrix::identity(f3(), 3).cokernel_projection();
        assert_eq!(c.dim, 0);

        let c = FpMatrix::zeros(f3(), 2, 4).cokernel_projection();
        assert_eq!((c.dim, c.proj), (2, FpMatrix::identity(f3(), 2)));

        // Brute force: the only nonzero 1x2 map over F_2 killing (1,1) is [1 1].
        let m = FpMatrix::from_rows(f2(), &[&[1], &[1]]);
        let c = m.cokernel_projection();
        assert_eq!(c.dim, 1);
        let mut killers = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                let f = FpMatrix::from_rows(f2(), &[&[a, b]]);
                if (a, b) != (0, 0) && f.dot(&m).is_zero() {
                    killers.push(f);
                }
            }
        }
        assert_eq!(killers, vec![c.proj]);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(FpMatrix::identity(f2(), 3).invert().unwrap(), FpMatrix::identity(f2(), 3));
        let shear = FpMatrix::from_rows(f2(), &[&[1, 1], &[0, 1]]);
        assert_eq!(shear.invert().unwrap(), shear);
        let sing = FpMatrix::from_rows(f2(), &[&[1, 1], &[1, 1]]);
        assert_eq!(sing.invert(), Err(LinalgError::NotInvertible));
        assert_eq!(FpMatrix::zeros(f2(), 2, 3).invert(), Err(LinalgError::NotSquare(2, 3)));
        assert_eq!(FpMatrix::zeros(f2(), 0, 0).invert().unwrap().shape(), (0, 0));
    }

    #[test]
    fn zero_sized_products() {
        let a = FpMatrix::zeros(f3(), 2, 0);
        let b = FpMatrix::zeros(f3(), 0, 3);
        assert_eq!(a.dot(&b), FpMatrix::zeros(f3(), 2, 3));
        assert_eq!(b.dot(&FpMatrix::zeros(f3(), 3, 1)).shape(), (0, 1));
    }

    #[test]
    fn modulus_mismatch_is_reported() {
        let a = FpMatrix::identity(f2(), 1);
        let b = FpMatrix::identity(f3(), 1);
        assert_eq!(a.mul(&b), Err(LinalgError::ModulusMismatch(2, 3)));
    }
}
