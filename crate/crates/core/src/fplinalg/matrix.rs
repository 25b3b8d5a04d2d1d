use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::scalar::{inv_mod, is_prime, reduce, FpScalar};
use super::LinalgError;

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// How many products `< (p-1)^2` fit in a u64 accumulator before reducing.
#[inline]
fn lazy_budget(p: u32) -> usize {
    let sq = (p as u64 - 1).max(1).pow(2);
    ((u64::MAX - p as u64) / sq).min(usize::MAX as u64) as usize
}

pub(crate) fn check_modulus(p: u32) -> Result<(), LinalgError> {
    if p < 3 || !is_prime(p as u64) || p >= (1 << 31) {
        return Err(LinalgError::InvalidModulus(p));
    }
    Ok(())
}

impl FpMatrix {
    pub fn new(rows: usize, cols: usize, p: u32, data: Vec<u32>) -> Result<Self, LinalgError> {
        check_modulus(p)?;
        if data.len() != rows * cols {
            return Err(LinalgError::Shape {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= p) {
            return Err(LinalgError::EntryOutOfRange { entry: bad as i64, p });
        }
        Ok(FpMatrix { rows, cols, p, data })
    }

    /// Build from signed rows, reducing every entry mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        check_modulus(p)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::RaggedRows);
        }
        let data = rows.iter().flatten().map(|&x| reduce(x, p)).collect();
        Ok(FpMatrix {
            rows: rows.len(),
            cols,
            p,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, p: u32, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(reduce(f(i, j), p));
            }
        }
        FpMatrix { rows, cols, p, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        let mut data = vec![0; rows * cols];
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &x) in c.iter().enumerate() {
                data[i * cols + j] = x;
            }
        }
        FpMatrix { rows, cols, p, data }
    }

    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        FpMatrix {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> FpScalar {
        FpScalar::new(self.get(i, j) as i64, self.p)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = reduce(v, self.p);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn scale(&self, s: i64) -> FpMatrix {
        let s = reduce(s, self.p) as u64;
        let p = self.p as u64;
        FpMatrix {
            data: self.data.iter().map(|&x| (x as u64 * s % p) as u32).collect(),
            ..self.clone()
        }
    }

    fn same_modulus(&self, other: &FpMatrix) -> Result<(), LinalgError> {
        if self.p != other.p {
            return Err(LinalgError::ModulusMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FpMatrix) -> Result<FpMatrix, LinalgError> {
        self.same_modulus(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::dims("add", self, other));
        }
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        Ok(FpMatrix { data, ..self.clone() })
    }

    pub fn try_sub(&self, other: &FpMatrix) -> Result<FpMatrix, LinalgError> {
        self.same_modulus(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::dims("sub", self, other));
        }
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| if a >= b { a - b } else { a + p - b })
            .collect();
        Ok(FpMatrix { data, ..self.clone() })
    }

    pub fn try_mul(&self, other: &FpMatrix) -> Result<FpMatrix, LinalgError> {
        self.same_modulus(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::dims("mul", self, other));
        }
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let p = self.p as u64;
        let budget = lazy_budget(self.p);
        let mut out = vec![0u32; n * m];
        let mut acc = vec![0u64; m];
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0usize;
            for l in 0..k {
                let a = self.data[i * k + l] as u64;
                if a == 0 {
                    continue;
                }
                if pending == budget {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
                let brow = &other.data[l * m..(l + 1) * m];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x += a * b as u64;
                }
                pending += 1;
            }
            for (o, &x) in out[i * m..(i + 1) * m].iter_mut().zip(&acc) {
                *o = (x % p) as u32;
            }
        }
        Ok(FpMatrix {
            rows: n,
            cols: m,
            p: self.p,
            data: out,
        })
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length");
        let p = self.p as u64;
        let budget = lazy_budget(self.p);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (chunk_a, chunk_v) in self.row(i).chunks(budget.max(1)).zip(v.chunks(budget.max(1))) {
                    let s: u64 = chunk_a.iter().zip(chunk_v).map(|(&a, &b)| a as u64 * b as u64).sum();
                    acc = (acc + s % p) % p;
                }
                acc as u32
            })
            .collect()
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows, self.p);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Kronecker product; realizes the tensor product of action matrices.
    pub fn kron(&self, other: &FpMatrix) -> Result<FpMatrix, LinalgError> {
        self.same_modulus(other)?;
        let (ra, ca, rb, cb) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = Self::zeros(ra * rb, ca * cb, self.p);
        let p = self.p as u64;
        let width = ca * cb;
        for i in 0..ra {
            for j in 0..ca {
                let a = self.data[i * ca + j] as u64;
                if a == 0 {
                    continue;
                }
                for k in 0..rb {
                    let row = (i * rb + k) * width + j * cb;
                    for l in 0..cb {
                        out.data[row + l] = (a * other.data[k * cb + l] as u64 % p) as u32;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn hstack(blocks: &[&FpMatrix]) -> Result<FpMatrix, LinalgError> {
        let first = blocks.first().ok_or(LinalgError::Empty)?;
        let rows = first.rows;
        let p = first.p;
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols, p);
        let mut off = 0;
        for b in blocks {
            first.same_modulus(b)?;
            if b.rows != rows {
                return Err(LinalgError::dims("hstack", first, b));
            }
            for i in 0..rows {
                out.data[i * cols + off..i * cols + off + b.cols].copy_from_slice(b.row(i));
            }
            off += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(blocks: &[&FpMatrix]) -> Result<FpMatrix, LinalgError> {
        let first = blocks.first().ok_or(LinalgError::Empty)?;
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            first.same_modulus(b)?;
            if b.cols != cols {
                return Err(LinalgError::dims("vstack", first, b));
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Ok(FpMatrix {
            rows,
            cols,
            p: first.p,
            data,
        })
    }

    pub fn block_diag(blocks: &[&FpMatrix], p: u32) -> FpMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols, p);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            assert_eq!(b.p, p, "block modulus");
            for i in 0..b.rows {
                out.data[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + b.cols].copy_from_slice(b.row(i));
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> FpMatrix {
        Self::from_fn(self.rows, idx.len(), self.p, |i, j| self.get(i, idx[j]) as i64)
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        FpMatrix {
            rows: idx.len(),
            cols: self.cols,
            p: self.p,
            data,
        }
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m.data, m.rows, m.cols, m.p);
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Indices of columns that form a basis of the column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// Columns spanning `{v : self * v = 0}`; a `cols x (cols - rank)` matrix.
    pub fn kernel_basis(&self) -> FpMatrix {
        let Rref { matrix, pivots, .. } = self.rref();
        kernel_from_rref(&matrix, &pivots)
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Shape {
                expected: self.rows,
                got: b.len(),
            });
        }
        let rhs = FpMatrix::from_columns(self.p, self.rows, &[b.iter().map(|&x| x % self.p).collect()]);
        Ok(self.solve_matrix(&rhs)?.map(|x| x.column(0)))
    }

    /// Some `X` with `self * X = rhs`, or `None` when inconsistent.
    pub fn solve_matrix(&self, rhs: &FpMatrix) -> Result<Option<FpMatrix>, LinalgError> {
        self.same_modulus(rhs)?;
        if rhs.rows != self.rows {
            return Err(LinalgError::dims("solve", self, rhs));
        }
        let aug = FpMatrix::hstack(&[self, rhs])?;
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = FpMatrix::zeros(self.cols, rhs.cols, self.p);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.data[c * rhs.cols + j] = matrix.get(r, self.cols + j);
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = FpMatrix::hstack(&[self, &Self::identity(n, self.p)]).ok()?;
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(FpMatrix::from_fn(n, n, self.p, |i, j| matrix.get(i, n + j) as i64))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

pub(crate) fn kernel_from_rref(r: &FpMatrix, pivots: &[usize]) -> FpMatrix {
    let (n, p) = (r.cols, r.p);
    let mut is_pivot = vec![false; n];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut k = FpMatrix::zeros(n, free.len(), p);
    for (j, &f) in free.iter().enumerate() {
        k.data[f * free.len() + j] = 1;
        for (row, &c) in pivots.iter().enumerate() {
            let v = r.get(row, f);
            if v != 0 {
                k.data[c * free.len() + j] = p - v;
            }
        }
    }
    k
}

/// Gauss-Jordan elimination in place; returns pivot columns.
fn rref_in_place(data: &mut [u32], rows: usize, cols: usize, p: u32) -> Vec<usize> {
    let pp = p as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut pivot_row = vec![0u32; cols];
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if i != r {
            for j in c..cols {
                data.swap(i * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(data[r * cols + c], p).unwrap() as u64;
        for j in c..cols {
            let v = &mut data[r * cols + j];
            *v = (*v as u64 * inv % pp) as u32;
        }
        pivot_row[c..].copy_from_slice(&data[r * cols + c..(r + 1) * cols]);
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = data[i * cols + c];
            if f == 0 {
                continue;
            }
            let nf = (p - f) as u64;
            let row = &mut data[i * cols + c..(i + 1) * cols];
            for (x, &y) in row.iter_mut().zip(&pivot_row[c..]) {
                if y != 0 {
                    *x = ((*x as u64 + nf * y as u64) % pp) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl Mul for &FpMatrix {
    type Output = FpMatrix;
    /// Panics on modulus or shape mismatch; use [`FpMatrix::try_mul`] otherwise.
    fn mul(self, rhs: &FpMatrix) -> FpMatrix {
        self.try_mul(rhs).unwrap()
    }
}

impl Add for &FpMatrix {
    type Output = FpMatrix;
    fn add(self, rhs: &FpMatrix) -> FpMatrix {
        self.try_add(rhs).unwrap()
    }
}

impl Sub for &FpMatrix {
    type Output = FpMatrix;
    fn sub(self, rhs: &FpMatrix) -> FpMatrix {
        self.try_sub(rhs).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn empty_matrix_has_rank_zero() {
        let z = FpMatrix::zeros(0, 0, 3);
        let r = z.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
        assert_eq!(z.kernel_basis().cols(), 0);
    }

    #[test]
    fn identity_is_its_own_rref() {
        let i = FpMatrix::identity(3, 3);
        let r = i.rref();
        assert_eq!(r.matrix, i);
        assert_eq!(r.rank, 3);
        assert_eq!(i.kernel_basis().cols(), 0);
    }

    #[test]
    fn dependent_rows_over_f3() {
        // second row is twice the first mod 3
        let a = m(3, &[&[1, 2], &[2, 1]]);
        let r = a.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix, m(3, &[&[1, 2], &[0, 0]]));
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        // kernel vector must be a nonzero multiple of (1,1)
        let v = k.column(0);
        assert!(v[0] != 0 && v[0] == v[1]);
        assert!((&a * &k).is_zero());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let z = FpMatrix::zeros(2, 2, 3);
        let k = z.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn solve_cases() {
        let i = FpMatrix::identity(3, 5);
        assert_eq!(i.solve(&[1, 2, 3]).unwrap(), Some(vec![1, 2, 3]));
        let z = FpMatrix::zeros(2, 2, 5);
        assert_eq!(z.solve(&[1, 0]).unwrap(), None);
        let a = m(3, &[&[1, 2], &[2, 1]]);
        let x = a.solve(&[0, 0]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), vec![0, 0]);
        assert!(matches!(a.solve(&[1]), Err(LinalgError::Shape { .. })));
    }

    #[test]
    fn kron_identities() {
        let i6 = FpMatrix::identity(2, 7).kron(&FpMatrix::identity(3, 7)).unwrap();
        assert_eq!(i6, FpMatrix::identity(6, 7));
        let a = m(5, &[&[1, 2, 3], &[4, 0, 1]]);
        assert_eq!(a.kron(&FpMatrix::identity(1, 5)).unwrap(), a);
        let b = FpMatrix::identity(2, 3);
        assert!(matches!(a.kron(&b), Err(LinalgError::ModulusMismatch { .. })));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(7, &[&[2, 1, 0], &[0, 3, 1], &[1, 0, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, FpMatrix::identity(3, 7));
        let sing = m(3, &[&[1, 2], &[2, 1]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn invalid_modulus_rejected() {
        assert!(matches!(FpMatrix::new(1, 1, 4, vec![0]), Err(LinalgError::InvalidModulus(4))));
        assert!(matches!(FpMatrix::new(1, 1, 2, vec![0]), Err(LinalgError::InvalidModulus(2))));
        assert!(matches!(FpMatrix::new(1, 1, 3, vec![3]), Err(LinalgError::EntryOutOfRange { .. })));
    }

    #[test]
    fn lazy_reduction_with_large_prime() {
        // near the 2^31 bound products overflow a u64 after a handful of terms
        let p = 2_147_483_629u32;
        let a = FpMatrix::from_fn(1, 40, p, |_, _| p as i64 - 1);
        let b = FpMatrix::from_fn(40, 1, p, |_, _| p as i64 - 1);
        // (-1)(-1) summed 40 times
        assert_eq!((&a * &b).get(0, 0), 40);
    }
}
