//! Bounded chain complexes and chain maps over `F_p`.
//!
//! Homological grading: `d_i: C_i -> C_{i-1}`. A complex is stored on the
//! smallest degree range carrying nonzero vector spaces; the zero complex has
//! an empty range starting at degree 0.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::matrix::FpMatrix;
use crate::error::{Error, Result};

/// Graded dimensions, finitely supported; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedDims(pub BTreeMap<i32, usize>);

impl GradedDims {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i32, usize)>) -> Self {
        let mut m = BTreeMap::new();
        for (deg, d) in pairs {
            if d > 0 {
                *m.entry(deg).or_insert(0) += d;
            }
        }
        GradedDims(m)
    }

    pub fn get(&self, deg: i32) -> usize {
        self.0.get(&deg).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// Dimensions of the `j`-fold suspension.
    pub fn shifted(&self, j: i32) -> Self {
        GradedDims(self.0.iter().map(|(&k, &v)| (k + j, v)).collect())
    }

    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .map(|(&k, &v)| if k.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }
}

impl std::fmt::Display for GradedDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}:{v}")?;
        }
        write!(f, "}}")
    }
}

/// A bounded chain complex of finite-dimensional `F_p`-vector spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainComplex {
    p: u32,
    lo: i32,
    dims: Vec<usize>,
    /// `d[j]` is the differential out of degree `lo + j`.
    d: Vec<FpMatrix>,
}

impl ChainComplex {
    pub fn zero(p: u32) -> Self {
        ChainComplex { p, lo: 0, dims: Vec::new(), d: Vec::new() }
    }

    /// `F_p^dim` concentrated in one degree.
    pub fn concentrated(p: u32, degree: i32, dim: usize) -> Self {
        Self::from_parts_unchecked(p, degree, vec![dim], vec![FpMatrix::zeros(p, 0, dim)])
    }

    /// Build and validate. `d[j]` maps degree `lo + j` to `lo + j - 1`.
    pub fn new(p: u32, lo: i32, dims: Vec<usize>, d: Vec<FpMatrix>) -> Result<Self> {
        if dims.len() != d.len() {
            return Err(Error::NotChain(format!(
                "{} degrees but {} differentials",
                dims.len(),
                d.len()
            )));
        }
        for (j, m) in d.iter().enumerate() {
            let below = if j == 0 { 0 } else { dims[j - 1] };
            if m.rows() != below || m.cols() != dims[j] || m.p() != p {
                return Err(Error::NotChain(format!(
                    "differential out of degree {} has shape {}x{}, expected {}x{}",
                    lo + j as i32,
                    m.rows(),
                    m.cols(),
                    below,
                    dims[j]
                )));
            }
        }
        for j in 1..d.len() {
            if !d[j - 1].mul(&d[j]).is_zero() {
                return Err(Error::NotChain(format!("d∘d ≠ 0 at degree {}", lo + j as i32)));
            }
        }
        Ok(Self::from_parts_unchecked(p, lo, dims, d))
    }

    /// Build without checking `d∘d = 0`; shapes must be consistent.
    pub(crate) fn from_parts_unchecked(
        p: u32,
        lo: i32,
        mut dims: Vec<usize>,
        mut d: Vec<FpMatrix>,
    ) -> Self {
        while dims.last() == Some(&0) {
            dims.pop();
            d.pop();
        }
        let lead = dims.iter().take_while(|&&x| x == 0).count();
        if lead == dims.len() {
            return Self::zero(p);
        }
        dims.drain(..lead);
        d.drain(..lead);
        let first = dims[0];
        d[0] = FpMatrix::zeros(p, 0, first);
        ChainComplex { p, lo: lo + lead as i32, dims, d }
    }

    /// Build from a per-degree closure over the inclusive range `lo..=hi`.
    pub(crate) fn from_fn(
        p: u32,
        lo: i32,
        hi: i32,
        dim: impl Fn(i32) -> usize,
        diff: impl Fn(i32) -> FpMatrix,
    ) -> Self {
        if hi < lo {
            return Self::zero(p);
        }
        let dims: Vec<usize> = (lo..=hi).map(&dim).collect();
        let d = (lo..=hi)
            .map(|i| if i == lo { FpMatrix::zeros(p, 0, dim(lo)) } else { diff(i) })
            .collect();
        Self::from_parts_unchecked(p, lo, dims, d)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn lo(&self) -> i32 {
        self.lo
    }
    /// Top degree; `lo - 1` for the zero complex.
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }
    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }
    pub fn dims_vec(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: i32) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.dims[(i - self.lo) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The differential `d_i: C_i -> C_{i-1}`, zero outside the support.
    pub fn d(&self, i: i32) -> FpMatrix {
        if i <= self.lo || i > self.hi() {
            FpMatrix::zeros(self.p, self.dim(i - 1), self.dim(i))
        } else {
            self.d[(i - self.lo) as usize].clone()
        }
    }

    /// Borrow `d_i` when it is stored.
    pub fn d_ref(&self, i: i32) -> Option<&FpMatrix> {
        if i <= self.lo || i > self.hi() {
            None
        } else {
            Some(&self.d[(i - self.lo) as usize])
        }
    }

    pub fn rank_d(&self, i: i32) -> usize {
        self.d_ref(i).map_or(0, FpMatrix::rank)
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    /// `dim H_i = dim C_i - rank d_i - rank d_{i+1}`.
    pub fn homology(&self) -> GradedDims {
        let ranks: Vec<usize> = (self.lo..=self.hi() + 1).map(|i| self.rank_d(i)).collect();
        GradedDims::from_pairs(self.degrees().map(|i| {
            let j = (i - self.lo) as usize;
            (i, self.dim(i) - ranks[j] - ranks[j + 1])
        }))
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology().is_zero()
    }

    pub fn euler(&self) -> i64 {
        GradedDims::from_pairs(self.degrees().map(|i| (i, self.dim(i)))).euler()
    }

    /// `Σ^j C`: `(Σ^j C)_i = C_{i-j}` with differentials multiplied by `(-1)^j`.
    pub fn shift(&self, j: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let d = self.d.iter().map(|m| m.signed(j as i64)).collect();
        ChainComplex { p: self.p, lo: self.lo + j, dims: self.dims.clone(), d }
    }

    /// `A ⊕ B`, basis of `A` first in each degree.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let p = self.p;
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        Self::from_fn(
            p,
            lo,
            hi,
            |i| self.dim(i) + other.dim(i),
            |i| {
                let (a, b) = (self.d(i), other.d(i));
                FpMatrix::from_blocks(
                    p,
                    &[self.dim(i - 1), other.dim(i - 1)],
                    &[self.dim(i), other.dim(i)],
                    &[(0, 0, &a), (1, 1, &b)],
                )
            },
        )
    }

    /// Linear dual: `(C^∨)_i = (C_{-i})^*` with `d^∨_i = (d_{1-i})^T`.
    pub fn dual(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self::from_fn(self.p, -self.hi(), -self.lo, |i| self.dim(-i), |i| self.d(1 - i).transpose())
    }

    /// Basis data for homology in degree `i`.
    pub fn homology_basis(&self, i: i32) -> HomologyBasis {
        let boundaries = self.d(i + 1).column_basis();
        let cycles = self.d(i).kernel();
        let picked = FpMatrix::extend_basis(&boundaries, &cycles);
        let reps = cycles.select_cols(&picked);
        HomologyBasis { boundaries, reps }
    }
}

/// Cycle representatives of a homology basis together with a boundary basis.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub boundaries: FpMatrix,
    pub reps: FpMatrix,
}

impl HomologyBasis {
    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Coordinates of cycles (columns of `z`) in the representative basis.
    pub fn coordinates(&self, z: &FpMatrix) -> FpMatrix {
        let full = self.boundaries.hstack(&self.reps);
        let x = full.solve(z).expect("coordinates requested for a non-cycle");
        x.block(self.boundaries.cols(), self.reps.cols(), 0, z.cols())
    }
}

/// Per-degree components of a degree-zero graded linear map.
///
/// Components are stored over the source's degree range; shapes are
/// `tgt.dim(i) x src.dim(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap {
    lo: i32,
    comps: Vec<FpMatrix>,
}

impl GradedMap {
    pub fn zero(src: &ChainComplex, tgt: &ChainComplex) -> Self {
        Self::from_fn(src, tgt, |i| FpMatrix::zeros(src.p, tgt.dim(i), src.dim(i)))
    }

    pub fn identity(c: &ChainComplex) -> Self {
        Self::from_fn(c, c, |i| FpMatrix::identity(c.p, c.dim(i)))
    }

    pub fn from_fn(
        src: &ChainComplex,
        tgt: &ChainComplex,
        comp: impl Fn(i32) -> FpMatrix,
    ) -> Self {
        let comps: Vec<FpMatrix> = src.degrees().map(comp).collect();
        for (j, m) in comps.iter().enumerate() {
            let i = src.lo + j as i32;
            assert_eq!((m.rows(), m.cols()), (tgt.dim(i), src.dim(i)), "graded map shape at {i}");
        }
        GradedMap { lo: src.lo, comps }
    }

    pub fn comp(&self, i: i32) -> Option<&FpMatrix> {
        let j = i - self.lo;
        if j < 0 || j as usize >= self.comps.len() {
            None
        } else {
            Some(&self.comps[j as usize])
        }
    }

    pub fn comp_or_zero(&self, i: i32, src: &ChainComplex, tgt: &ChainComplex) -> FpMatrix {
        self.comp(i)
            .cloned()
            .unwrap_or_else(|| FpMatrix::zeros(src.p, tgt.dim(i), src.dim(i)))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(FpMatrix::is_zero)
    }

    /// `g ∘ f` where `f: a -> b`, `g: b -> c`.
    pub fn then(&self, g: &GradedMap, a: &ChainComplex, b: &ChainComplex, c: &ChainComplex) -> Self {
        Self::from_fn(a, c, |i| g.comp_or_zero(i, b, c).mul(&self.comp_or_zero(i, a, b)))
    }

    pub fn add(&self, other: &GradedMap, src: &ChainComplex, tgt: &ChainComplex) -> Self {
        Self::from_fn(src, tgt, |i| {
            self.comp_or_zero(i, src, tgt).add(&other.comp_or_zero(i, src, tgt))
        })
    }

    pub fn scale(&self, s: u32) -> Self {
        GradedMap { lo: self.lo, comps: self.comps.iter().map(|m| m.scale(s)).collect() }
    }

    pub fn neg(&self) -> Self {
        GradedMap { lo: self.lo, comps: self.comps.iter().map(FpMatrix::neg).collect() }
    }

    /// The same components viewed as a map `Σ^j src -> Σ^j tgt`.
    pub fn shifted(&self, j: i32) -> Self {
        GradedMap { lo: self.lo + j, comps: self.comps.clone() }
    }

    /// Transpose, viewed as a map between dual complexes.
    pub fn dual(&self, src: &ChainComplex, tgt: &ChainComplex) -> Self {
        let (tsrc, ttgt) = (tgt.dual(), src.dual());
        Self::from_fn(&tsrc, &ttgt, |i| self.comp_or_zero(-i, src, tgt).transpose())
    }

    pub fn is_chain_map(&self, src: &ChainComplex, tgt: &ChainComplex) -> bool {
        let lo = src.lo.min(tgt.lo);
        let hi = src.hi().max(tgt.hi()) + 1;
        (lo..=hi).all(|i| {
            let lhs = tgt.d(i).mul(&self.comp_or_zero(i, src, tgt));
            let rhs = self.comp_or_zero(i - 1, src, tgt).mul(&src.d(i));
            lhs == rhs
        })
    }

    /// Rank of the induced map on `H_i`.
    pub fn homology_rank(&self, i: i32, src: &ChainComplex, tgt: &ChainComplex) -> usize {
        let z = src.d(i).kernel();
        if z.cols() == 0 {
            return 0;
        }
        let b = tgt.d(i + 1);
        let fz = self.comp_or_zero(i, src, tgt).mul(&z);
        b.hstack(&fz).rank() - b.rank()
    }

    /// Homology ranks in every degree where the source is nonzero.
    pub fn homology_ranks(&self, src: &ChainComplex, tgt: &ChainComplex) -> GradedDims {
        GradedDims::from_pairs(src.degrees().map(|i| (i, self.homology_rank(i, src, tgt))))
    }

    /// Matrix of `H_i(f)` in the given bases.
    pub fn homology_matrix(
        &self,
        i: i32,
        src: &ChainComplex,
        tgt: &ChainComplex,
        sb: &HomologyBasis,
        tb: &HomologyBasis,
    ) -> FpMatrix {
        let img = self.comp_or_zero(i, src, tgt).mul(&sb.reps);
        tb.coordinates(&img)
    }
}

/// A chain map bundled with its source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub src: ChainComplex,
    pub tgt: ChainComplex,
    pub map: GradedMap,
}

impl ChainMap {
    pub fn new(src: ChainComplex, tgt: ChainComplex, map: GradedMap) -> Result<Self> {
        if !map.is_chain_map(&src, &tgt) {
            return Err(Error::NotChain("map does not commute with differentials".into()));
        }
        Ok(ChainMap { src, tgt, map })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap { src: c.clone(), tgt: c.clone(), map: GradedMap::identity(c) }
    }

    pub fn zero(src: &ChainComplex, tgt: &ChainComplex) -> Self {
        ChainMap { src: src.clone(), tgt: tgt.clone(), map: GradedMap::zero(src, tgt) }
    }

    pub fn compose(&self, g: &ChainMap) -> ChainMap {
        ChainMap {
            src: self.src.clone(),
            tgt: g.tgt.clone(),
            map: self.map.then(&g.map, &self.src, &self.tgt, &g.tgt),
        }
    }

    pub fn homology_ranks(&self) -> GradedDims {
        self.map.homology_ranks(&self.src, &self.tgt)
    }

    pub fn shift(&self, j: i32) -> ChainMap {
        ChainMap { src: self.src.shift(j), tgt: self.tgt.shift(j), map: self.map.shifted(j) }
    }

    pub fn cone(&self) -> ChainComplex {
        cone(&self.src, &self.tgt, &self.map)
    }

    pub fn cocone(&self) -> ChainComplex {
        cocone(&self.src, &self.tgt, &self.map)
    }

    /// True iff the cone is acyclic.
    pub fn is_qiso(&self) -> bool {
        self.cone().is_acyclic()
    }
}

/// `cone(f)_i = Y_i ⊕ X_{i-1}` with `d = [[d_Y, f], [0, -d_X]]`.
pub fn cone(x: &ChainComplex, y: &ChainComplex, f: &GradedMap) -> ChainComplex {
    let p = x.p;
    if x.is_zero() {
        return y.clone();
    }
    let lo = y.lo.min(x.lo + 1);
    let hi = if y.is_zero() { x.hi() + 1 } else { y.hi().max(x.hi() + 1) };
    ChainComplex::from_fn(
        p,
        lo,
        hi,
        |i| y.dim(i) + x.dim(i - 1),
        |i| {
            let dy = y.d(i);
            let fi = f.comp_or_zero(i - 1, x, y);
            let dx = x.d(i - 1).neg();
            FpMatrix::from_blocks(
                p,
                &[y.dim(i - 1), x.dim(i - 2)],
                &[y.dim(i), x.dim(i - 1)],
                &[(0, 0, &dy), (0, 1, &fi), (1, 1, &dx)],
            )
        },
    )
}

/// `cocone(f) = Σ^{-1} cone(f)`: degree `i` is `Y_{i+1} ⊕ X_i`,
/// `d = [[-d_Y, -f], [0, d_X]]`.
pub fn cocone(x: &ChainComplex, y: &ChainComplex, f: &GradedMap) -> ChainComplex {
    cone(x, y, f).shift(-1)
}

/// Inclusion `Y -> cone(f)`.
pub fn cone_inclusion(x: &ChainComplex, y: &ChainComplex, f: &GradedMap) -> GradedMap {
    let c = cone(x, y, f);
    GradedMap::from_fn(y, &c, |i| {
        let id = FpMatrix::identity(x.p, y.dim(i));
        FpMatrix::from_blocks(x.p, &[y.dim(i), x.dim(i - 1)], &[y.dim(i)], &[(0, 0, &id)])
    })
}

/// Projection `cone(f) -> ΣX`.
pub fn cone_projection(x: &ChainComplex, y: &ChainComplex, f: &GradedMap) -> GradedMap {
    let c = cone(x, y, f);
    let sx = x.shift(1);
    GradedMap::from_fn(&c, &sx, |i| {
        let id = FpMatrix::identity(x.p, x.dim(i - 1));
        FpMatrix::from_blocks(x.p, &[x.dim(i - 1)], &[y.dim(i), x.dim(i - 1)], &[(0, 1, &id)])
    })
}

/// Projection `cocone(f) -> X`.
pub fn cocone_projection(x: &ChainComplex, y: &ChainComplex, f: &GradedMap) -> GradedMap {
    let c = cocone(x, y, f);
    GradedMap::from_fn(&c, x, |i| {
        let id = FpMatrix::identity(x.p, x.dim(i));
        FpMatrix::from_blocks(x.p, &[x.dim(i)], &[y.dim(i + 1), x.dim(i)], &[(0, 1, &id)])
    })
}

/// Inclusion `ΩY -> cocone(f)`.
pub fn cocone_inclusion(x: &ChainComplex, y: &ChainComplex, f: &GradedMap) -> GradedMap {
    let c = cocone(x, y, f);
    let oy = y.shift(-1);
    GradedMap::from_fn(&oy, &c, |i| {
        let id = FpMatrix::identity(x.p, y.dim(i + 1));
        FpMatrix::from_blocks(x.p, &[y.dim(i + 1), x.dim(i)], &[y.dim(i + 1)], &[(0, 0, &id)])
    })
}

/// The map `cone(f) -> cone(f')` induced by a commutative square
/// `a: X -> X'`, `b: Y -> Y'` with `b f = f' a`.
pub fn cone_functorial(
    (x, y, _f): (&ChainComplex, &ChainComplex, &GradedMap),
    (x2, y2, f2): (&ChainComplex, &ChainComplex, &GradedMap),
    a: &GradedMap,
    b: &GradedMap,
    f: &GradedMap,
) -> GradedMap {
    let c1 = cone(x, y, f);
    let c2 = cone(x2, y2, f2);
    let p = x.p;
    GradedMap::from_fn(&c1, &c2, |i| {
        let bi = b.comp_or_zero(i, y, y2);
        let ai = a.comp_or_zero(i - 1, x, x2);
        FpMatrix::from_blocks(
            p,
            &[y2.dim(i), x2.dim(i - 1)],
            &[y.dim(i), x.dim(i - 1)],
            &[(0, 0, &bi), (1, 1, &ai)],
        )
    })
}

/// The map between cocones induced by a commutative square.
pub fn cocone_functorial(
    (x, y): (&ChainComplex, &ChainComplex),
    (x2, y2): (&ChainComplex, &ChainComplex),
    f: &GradedMap,
    f2: &GradedMap,
    a: &GradedMap,
    b: &GradedMap,
) -> GradedMap {
    cone_functorial((x, y, f), (x2, y2, f2), a, b, f).shifted(-1)
}

// Serialized form: {"p","lo","hi","dims","d"} where `d` lists the row-major
// differentials out of degrees lo+1..=hi.
#[derive(Serialize, Deserialize)]
struct ComplexJson {
    p: u32,
    lo: i32,
    hi: i32,
    dims: Vec<usize>,
    d: Vec<Vec<u32>>,
}

impl Serialize for ChainComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson {
            p: self.p,
            lo: self.lo,
            hi: self.hi(),
            dims: self.dims.clone(),
            d: self.d.iter().skip(1).map(|m| m.data().to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChainComplex {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ComplexJson::deserialize(de)?;
        if !super::matrix::is_prime(j.p) {
            return Err(D::Error::custom(format!("p: {} is not a supported prime", j.p)));
        }
        if j.hi - j.lo + 1 != j.dims.len() as i32 {
            return Err(D::Error::custom("dims: hi - lo + 1 must equal the length of dims"));
        }
        if j.d.len() != j.dims.len().saturating_sub(1) {
            return Err(D::Error::custom("d: expected one differential per degree above lo"));
        }
        let mut d = Vec::with_capacity(j.dims.len());
        if let Some(&first) = j.dims.first() {
            d.push(FpMatrix::zeros(j.p, 0, first));
        }
        for (k, entries) in j.d.into_iter().enumerate() {
            let m = FpMatrix::from_data(j.p, j.dims[k], j.dims[k + 1], entries)
                .map_err(|e| D::Error::custom(format!("d_{}: {e}", j.lo + k as i32 + 1)))?;
            d.push(m);
        }
        ChainComplex::new(j.p, j.lo, j.dims, d).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval(p: u32) -> ChainComplex {
        // F -> F by the identity, degrees 1 -> 0.
        ChainComplex::new(
            p,
            0,
            vec![1, 1],
            vec![FpMatrix::zeros(p, 0, 1), FpMatrix::identity(p, 1)],
        )
        .unwrap()
    }

    #[test]
    fn homology_of_basic_complexes() {
        assert!(ChainComplex::zero(2).homology().is_zero());
        let pt = ChainComplex::concentrated(5, 0, 1);
        assert_eq!(pt.homology(), GradedDims::from_pairs([(0, 1)]));
        assert!(interval(5).is_acyclic());
    }

    #[test]
    fn shift_round_trip_and_degrees() {
        let c = interval(3);
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).shift(-1), c);
        let pt = ChainComplex::concentrated(3, 0, 1).shift(2);
        assert_eq!(pt.homology(), GradedDims::from_pairs([(2, 1)]));
    }

    #[test]
    fn cones_of_trivial_maps() {
        let x = ChainComplex::concentrated(5, 0, 2);
        let z = ChainComplex::zero(5);
        assert!(ChainMap::identity(&x).cone().is_acyclic());
        assert_eq!(cone(&z, &x, &GradedMap::zero(&z, &x)), x);
        assert_eq!(cone(&x, &z, &GradedMap::zero(&x, &z)), x.shift(1));
    }

    #[test]
    fn cocone_is_desuspended_cone() {
        let x = interval(5);
        let f = GradedMap::identity(&x);
        assert_eq!(cocone(&x, &x, &f), cone(&x, &x, &f).shift(-1));
    }

    #[test]
    fn dual_is_involutive() {
        let c = interval(7).shift(3);
        assert_eq!(c.dual().dual(), c);
        assert_eq!(c.dual().lo(), -c.hi());
    }

    #[test]
    fn structure_maps_are_chain_maps() {
        let x = interval(5);
        let y = ChainComplex::concentrated(5, 1, 1);
        // The projection of the interval onto its top degree is a chain map.
        let f = GradedMap::from_fn(&x, &y, |i| {
            if i == 1 {
                FpMatrix::identity(5, 1)
            } else {
                FpMatrix::zeros(5, y.dim(i), x.dim(i))
            }
        });
        assert!(f.is_chain_map(&x, &y));
        let c = cone(&x, &y, &f);
        assert!(cone_inclusion(&x, &y, &f).is_chain_map(&y, &c));
        assert!(cone_projection(&x, &y, &f).is_chain_map(&c, &x.shift(1)));
        let cc = cocone(&x, &y, &f);
        assert!(cocone_projection(&x, &y, &f).is_chain_map(&cc, &x));
        assert!(cocone_inclusion(&x, &y, &f).is_chain_map(&y.shift(-1), &cc));
    }

    #[test]
    fn json_round_trip() {
        let c = interval(5).shift(-2);
        let s = serde_json::to_string(&c).unwrap();
        let back: ChainComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let bad = r#"{"p":5,"lo":0,"hi":1,"dims":[1,1],"d":[[1,1]]}"#;
        assert!(serde_json::from_str::<ChainComplex>(bad).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::chain::{random_complex, random_map};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn complex(seed: u64, p: u32) -> ChainComplex {
        random_complex(p, 3, 3, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    proptest! {
        #[test]
        fn homology_keeps_the_euler_characteristic(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5])) {
            let c = complex(seed, p);
            prop_assert_eq!(c.homology().euler(), c.euler());
        }

        #[test]
        fn shift_moves_homology(seed in any::<u64>(), j in -3i32..3) {
            let c = complex(seed, 5);
            prop_assert_eq!(c.shift(j).homology(), c.homology().shifted(j));
        }

        #[test]
        fn cone_of_identity_is_acyclic(seed in any::<u64>()) {
            prop_assert!(ChainMap::identity(&complex(seed, 3)).cone().is_acyclic());
        }

        #[test]
        fn cone_sequence_is_exact_in_homology(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 5])) {
            // Rank-nullity along X -> Y -> cone(f) -> ΣX forces
            // dim H(cone) = (dim H(Y) - rank H(f)) + (dim H(ΣX) - rank H(Σf)) pointwise.
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_complex(p, 2, 2, &mut rng);
            let y = random_complex(p, 2, 2, &mut rng);
            let f = random_map(&x, &y, &mut rng);
            let r = f.homology_ranks();
            let (hx, hy, hc) = (x.homology(), y.homology(), f.cone().homology());
            for i in -1..=4 {
                let want = (hy.get(i) - r.get(i)) + (hx.get(i - 1) - r.get(i - 1));
                prop_assert_eq!(hc.get(i), want, "degree {}", i);
            }
        }
    }
}
