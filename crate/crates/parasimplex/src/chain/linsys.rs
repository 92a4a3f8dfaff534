//! Homogeneous linear systems in unknown matrix blocks.
//!
//! Each equation is a sum of terms `L · X_b · R` that must vanish, where
//! `X_b` is an unknown block. Solutions are sampled uniformly from the null
//! space, which is how chain maps and strict diagrams are generated.

use rand::Rng;

use super::matrix::FpMatrix;

pub struct BlockSystem {
    p: u32,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    rows: Vec<Vec<(usize, u32)>>,
}

/// One term `left · X[block] · right` of an equation.
pub struct Term<'a> {
    pub block: usize,
    pub left: &'a FpMatrix,
    pub right: &'a FpMatrix,
}

impl BlockSystem {
    pub fn new(p: u32) -> Self {
        BlockSystem { p, shapes: Vec::new(), offsets: Vec::new(), rows: Vec::new() }
    }

    /// Register an unknown `rows x cols` block; returns its handle.
    pub fn block(&mut self, rows: usize, cols: usize) -> usize {
        let off = self.offsets.last().copied().unwrap_or(0)
            + self.shapes.last().map_or(0, |&(r, c)| r * c);
        self.shapes.push((rows, cols));
        self.offsets.push(off);
        self.shapes.len() - 1
    }

    pub fn unknowns(&self) -> usize {
        self.offsets.last().copied().unwrap_or(0) + self.shapes.last().map_or(0, |&(r, c)| r * c)
    }

    /// Add the matrix equation `Σ terms = 0` (all terms share one output shape).
    pub fn equation(&mut self, terms: &[Term<'_>]) {
        let Some(first) = terms.first() else { return };
        let (m, q) = (first.left.rows(), first.right.cols());
        let p = self.p as u64;
        for a in 0..m {
            for b in 0..q {
                let mut row: std::collections::BTreeMap<usize, u64> = Default::default();
                for t in terms {
                    assert_eq!((t.left.rows(), t.right.cols()), (m, q), "equation shape");
                    let (r, c) = self.shapes[t.block];
                    assert_eq!((t.left.cols(), t.right.rows()), (r, c), "term shape");
                    for u in 0..r {
                        let l = t.left.get(a, u);
                        if l == 0 {
                            continue;
                        }
                        for v in 0..c {
                            let rr = t.right.get(v, b);
                            if rr != 0 {
                                let idx = self.offsets[t.block] + u * c + v;
                                let e = row.entry(idx).or_insert(0);
                                *e = (*e + l as u64 * rr as u64) % p;
                            }
                        }
                    }
                }
                let row: Vec<(usize, u32)> =
                    row.into_iter().filter(|&(_, v)| v != 0).map(|(k, v)| (k, v as u32)).collect();
                if !row.is_empty() {
                    self.rows.push(row);
                }
            }
        }
    }

    /// Basis of the solution space as columns.
    pub fn solution_basis(&self) -> FpMatrix {
        let n = self.unknowns();
        let mut m = FpMatrix::zeros(self.p, self.rows.len(), n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                m.set(i, j, v);
            }
        }
        m.kernel()
    }

    /// A uniformly random solution, split back into blocks.
    pub fn sample(&self, rng: &mut impl Rng) -> Vec<FpMatrix> {
        let basis = self.solution_basis();
        let coeffs: Vec<u32> = (0..basis.cols()).map(|_| rng.gen_range(0..self.p)).collect();
        let x = basis.mul_vec(&coeffs);
        self.split(&x)
    }

    pub fn split(&self, x: &[u32]) -> Vec<FpMatrix> {
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &off)| {
                FpMatrix::from_data(self.p, r, c, x[off..off + r * c].to_vec())
                    .expect("block shape")
            })
            .collect()
    }
}
