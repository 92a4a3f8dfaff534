//! Dense matrices over a prime field.
//!
//! Entries are stored row-major as `u32` residues in `0..p`. All arithmetic
//! widens to `u64` before reducing, so any prime below `2^31` is safe.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Row-reduced echelon data: the reduced matrix and its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: FpMatrix,
    pub pivots: Vec<usize>,
}

#[inline]
fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

/// Multiplicative inverse of a nonzero residue via Fermat.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Reduce a signed integer into `0..p`.
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// True iff `p` is a prime that fits the arithmetic.
pub fn is_prime(p: u32) -> bool {
    if p < 2 || p >= 1 << 31 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Build from row-major residues; entries are reduced mod `p`.
    pub fn from_data(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(FpMatrix { p, rows, cols, data })
    }

    /// Build from signed rows.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| reduce(x, p)).collect();
        Ok(FpMatrix { p, rows: rows.len(), cols, data })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn scale(&self, s: u32) -> Self {
        let s = s % self.p;
        let data = self.data.iter().map(|&x| mul_mod(x, s, self.p)).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        self.scale(self.p - 1)
    }

    /// Multiply by `(-1)^k`.
    pub fn signed(&self, k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| add_mod(a, b, self.p))
            .collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul: inner dimension mismatch");
        let p = self.p as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for r in 0..self.rows {
            let acc = &mut out[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in acc.iter_mut().zip(brow) {
                    if b != 0 {
                        *o = (*o + a as u64 * b as u64) % p;
                    }
                }
            }
        }
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|x| x as u32).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % self.p as u64)
                    as u32
            })
            .collect()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack: row mismatch");
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(self.p, self.rows, cols);
        for r in 0..self.rows {
            m.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            m.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        m
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack: column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Assemble a matrix from a grid of blocks with the given row and column sizes.
    /// Missing blocks are zero.
    pub fn from_blocks(
        p: u32,
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[(usize, usize, &FpMatrix)],
    ) -> Self {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let row_off: Vec<usize> = offsets(row_sizes);
        let col_off: Vec<usize> = offsets(col_sizes);
        let mut m = Self::zeros(p, rows, cols);
        for &(bi, bj, b) in blocks {
            assert_eq!((b.rows, b.cols), (row_sizes[bi], col_sizes[bj]), "block shape");
            m.paste(row_off[bi], col_off[bj], b);
        }
        m
    }

    /// Overwrite the block starting at `(r0, c0)` with `b`.
    pub fn paste(&mut self, r0: usize, c0: usize, b: &FpMatrix) {
        for r in 0..b.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(r));
        }
    }

    /// Extract the block of rows `r0..r0+nr` and columns `c0..c0+nc`.
    pub fn block(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Self {
        let mut m = Self::zeros(self.p, nr, nc);
        for r in 0..nr {
            let src = (r0 + r) * self.cols + c0;
            m.data[r * nc..(r + 1) * nc].copy_from_slice(&self.data[src..src + nc]);
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.p, idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            m.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.p, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.data[r * idx.len() + j] = self.get(r, c);
            }
        }
        m
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(p: u32, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (r, &x) in v.iter().enumerate() {
                m.data[r * cols.len() + j] = x % p;
            }
        }
        m
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m.data[r * m.cols + col] != 0) else {
                continue;
            };
            if piv != row {
                for c in 0..m.cols {
                    m.data.swap(piv * m.cols + c, row * m.cols + c);
                }
            }
            let inv = inv_mod(m.data[row * m.cols + col], p);
            for c in col..m.cols {
                let idx = row * m.cols + c;
                m.data[idx] = mul_mod(m.data[idx], inv, p);
            }
            let pivot_row: Vec<u32> = m.data[row * m.cols + col..(row + 1) * m.cols].to_vec();
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.data[r * m.cols + col];
                if f == 0 {
                    continue;
                }
                let nf = (p - f) as u64;
                let base = r * m.cols + col;
                for (c, &pv) in pivot_row.iter().enumerate() {
                    if pv != 0 {
                        let x = &mut m.data[base + c];
                        *x = ((*x as u64 + nf * pv as u64) % p as u64) as u32;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminate along the shorter side.
        let mut m = if self.rows > self.cols { self.transpose() } else { self.clone() };
        let p = m.p as u64;
        let (rows, cols) = (m.rows, m.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| m.data[r * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for c in col..cols {
                    m.data.swap(piv * cols + c, rank * cols + c);
                }
            }
            let inv = inv_mod(m.data[rank * cols + col], m.p) as u64;
            for r in rank + 1..rows {
                let f = m.data[r * cols + col];
                if f == 0 {
                    continue;
                }
                let factor = (p - f as u64 * inv % p) % p;
                for c in col..cols {
                    let pv = m.data[rank * cols + c];
                    if pv != 0 {
                        let x = &mut m.data[r * cols + c];
                        *x = ((*x as u64 + factor * pv as u64) % p) as u32;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the null space, as the columns of a `cols x nullity` matrix.
    pub fn kernel(&self) -> FpMatrix {
        let e = self.echelon();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut k = Self::zeros(p, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, 1);
            for (i, &pc) in e.pivots.iter().enumerate() {
                let v = e.reduced.get(i, f);
                if v != 0 {
                    k.set(pc, j, p - v);
                }
            }
        }
        k
    }

    /// A basis of the column space, as a subset of the columns.
    pub fn column_basis(&self) -> FpMatrix {
        let e = self.echelon();
        self.select_cols(&e.pivots)
    }

    /// Solve `self * x = b` for a matrix right-hand side; `None` if inconsistent.
    pub fn solve(&self, b: &FpMatrix) -> Option<FpMatrix> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let aug = self.hstack(b);
        let e = aug.echelon();
        if e.pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.p, self.cols, b.cols);
        for (i, &pc) in e.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, e.reduced.get(i, self.cols + j));
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix; `None` if singular.
    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Self::identity(self.p, self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }

    /// Columns of `candidates` that extend the column space of `base`,
    /// chosen greedily left to right.
    pub fn extend_basis(base: &FpMatrix, candidates: &FpMatrix) -> Vec<usize> {
        // Pivot columns of the echelon form are exactly the greedy choice.
        let e = base.hstack(candidates).echelon();
        e.pivots
            .into_iter()
            .filter(|&c| c >= base.cols)
            .map(|c| c - base.cols)
            .collect()
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|&s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rank_and_kernel_agree() {
        let a = m(5, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn rank_mod_two_differs_from_rationals() {
        // det = 2, singular only in characteristic 2.
        let a = m(2, &[&[1, 1], &[1, -1]]);
        assert_eq!(a.rank(), 1);
        let a = m(5, &[&[1, 1], &[1, -1]]);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(7, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), FpMatrix::identity(7, 2));
        assert!(m(7, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = m(3, &[&[1, 0], &[0, 0]]);
        let b = m(3, &[&[1], &[1]]);
        assert!(a.solve(&b).is_none());
        let b = m(3, &[&[2], &[0]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn inverse_mod_prime() {
        for p in [2u32, 3, 5, 7, 101] {
            for a in 1..p {
                assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
            }
        }
    }

    #[test]
    fn empty_shapes() {
        let z = FpMatrix::zeros(2, 0, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().cols(), 3);
        let z = FpMatrix::zeros(2, 3, 0);
        assert_eq!(z.kernel().cols(), 0);
        assert_eq!(z.mul(&FpMatrix::zeros(2, 0, 4)).rows(), 3);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn matrix() -> impl Strategy<Value = FpMatrix> {
        (prop::sample::select(vec![2u32, 3, 5, 7]), 0usize..6, 0usize..6).prop_flat_map(|(p, r, c)| {
            proptest::collection::vec(0..p, r * c)
                .prop_map(move |data| FpMatrix::from_data(p, r, c, data).expect("shape"))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in matrix()) {
            let k = a.kernel();
            prop_assert_eq!(a.rank() + k.cols(), a.cols());
            prop_assert!(a.mul(&k).is_zero());
        }

        #[test]
        fn row_rank_is_column_rank(a in matrix()) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn solutions_solve(a in matrix(), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let x: Vec<u32> = (0..a.cols()).map(|_| rng.gen_range(0..a.p())).collect();
            let b = FpMatrix::from_columns(a.p(), a.rows(), &[a.mul_vec(&x)]);
            let y = a.solve(&b).expect("b lies in the column space");
            prop_assert_eq!(a.mul(&y), b);
        }

        #[test]
        fn inverses_invert(a in matrix()) {
            if a.rows() == a.cols() {
                match a.inverse() {
                    Some(b) => prop_assert_eq!(a.mul(&b), FpMatrix::identity(a.p(), a.rows())),
                    None => prop_assert!(a.rank() < a.rows()),
                }
            }
        }
    }
}
