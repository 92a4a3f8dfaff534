//! The corner comparison of a cube with acyclic inner vertices.
//!
//! For `X` over `□^d` the total complex places `X(M)` in degree shift
//! `d - |M|`. When every vertex other than `∅` and `∞` is acyclic, the
//! inner part of the total complex is contractible and homotopy transfer
//! leaves a two-term complex whose off-diagonal component is a chain map
//! `Σ^{d-1} X(∅) -> X(∞)`. Its cone is quasi-isomorphic to `tcof(X)`.

use crate::chain::{ChainComplex, ChainMap, FpMatrix, GradedMap};
use crate::error::{Error, Result};

use super::diagram::Diagram;

/// Block layout of a total complex: per degree, the vertices in order with
/// their offsets.
pub struct TotalLayout {
    pub d: usize,
    /// Vertex bitmask `M` to index in the diagram.
    pub vertex: Vec<usize>,
}

fn bitmask_vertices(x: &Diagram) -> Result<(usize, Vec<usize>)> {
    let idx = x.index();
    let d = idx.element(0).len();
    if idx.len() != 1 << d {
        return Err(Error::Shape("expected a cube-shaped index".into()));
    }
    let vertex = (0..1usize << d)
        .map(|m| {
            let label: Vec<i64> = (0..d).map(|j| ((m >> j) & 1) as i64).collect();
            idx.index_of(&label).ok_or_else(|| Error::Shape("expected a cube-shaped index".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((d, vertex))
}

/// The sign-twisted total complex of a cube.
///
/// Degree `i` is `⊕_M X(M)_{i - d + |M|}` with `M` in bitmask order; the
/// internal differential of `X(M)` carries `(-1)^{d - |M|}` and the edge
/// `M -> M ∪ {j}` carries `(-1)^{#{l < j | l ∉ M}}`.
pub fn total_complex(x: &Diagram) -> Result<(ChainComplex, TotalLayout)> {
    let (d, vertex) = bitmask_vertices(x)?;
    let p = x.p();
    let shift = |m: usize| d as i32 - m.count_ones() as i32;
    let val = |m: usize| x.value(vertex[m]);
    let nonzero: Vec<usize> = (0..1usize << d).filter(|&m| !val(m).is_zero()).collect();
    if nonzero.is_empty() {
        return Ok((ChainComplex::zero(p), TotalLayout { d, vertex }));
    }
    let lo = nonzero.iter().map(|&m| val(m).lo() + shift(m)).min().unwrap();
    let hi = nonzero.iter().map(|&m| val(m).hi() + shift(m)).max().unwrap();
    let sizes = |i: i32| -> Vec<usize> { (0..1usize << d).map(|m| val(m).dim(i - shift(m))).collect() };
    let c = ChainComplex::from_fn(
        p,
        lo,
        hi,
        |i| sizes(i).iter().sum(),
        |i| {
            let (rs, cs) = (sizes(i - 1), sizes(i));
            let mut blocks: Vec<(usize, usize, FpMatrix)> = Vec::new();
            for m in 0..1usize << d {
                let k = i - shift(m);
                let inner = val(m).d(k).signed(shift(m) as i64);
                blocks.push((m, m, inner));
                for j in (0..d).filter(|&j| m & (1 << j) == 0) {
                    let t = m | (1 << j);
                    let sign = (0..j).filter(|&l| m & (1 << l) == 0).count() as i64;
                    let f = x
                        .map_between(vertex[m], vertex[t])
                        .expect("cube edge")
                        .comp_or_zero(k, val(m), val(t))
                        .signed(sign);
                    blocks.push((t, m, f));
                }
            }
            let refs: Vec<(usize, usize, &FpMatrix)> = blocks.iter().map(|(r, c, m)| (*r, *c, m)).collect();
            FpMatrix::from_blocks(p, &rs, &cs, &refs)
        },
    );
    Ok((c, TotalLayout { d, vertex }))
}

/// A contracting homotopy `h` of an acyclic complex: `dh + hd = id`.
/// Returns `h_i: C_{i-1} -> C_i` for each degree `i`.
fn contraction(c: &ChainComplex) -> Result<std::collections::BTreeMap<i32, FpMatrix>> {
    let p = c.p();
    let mut out = std::collections::BTreeMap::new();
    if c.is_zero() {
        return Ok(out);
    }
    // For each degree choose a complement W_i of the cycles; d maps W_i
    // isomorphically onto the boundaries in degree i-1.
    let mut complements = std::collections::BTreeMap::new();
    for i in c.lo()..=c.hi() {
        let z = c.d(i).kernel();
        let full = FpMatrix::identity(p, c.dim(i));
        let pick = FpMatrix::extend_basis(&z, &full);
        complements.insert(i, full.select_cols(&pick));
    }
    for i in c.lo()..=c.hi() + 1 {
        let w = complements.get(&i).cloned().unwrap_or_else(|| FpMatrix::zeros(p, c.dim(i), 0));
        let dw = c.d(i).mul(&w);
        let w_below =
            complements.get(&(i - 1)).cloned().unwrap_or_else(|| FpMatrix::zeros(p, c.dim(i - 1), 0));
        let basis = dw.hstack(&w_below);
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::Construction("inner part of the cube is not acyclic".into()))?;
        let target = w.hstack(&FpMatrix::zeros(p, c.dim(i), w_below.cols()));
        out.insert(i, target.mul(&inv));
    }
    Ok(out)
}

/// The canonical map `Σ^{d-1} X(∅) -> X(∞)` of a cube with acyclic inner
/// vertices (for `d = 1` this is the arrow itself).
pub fn corner_comparison(x: &Diagram) -> Result<ChainMap> {
    let (tot, layout) = total_complex(x)?;
    let d = layout.d;
    if d == 0 {
        return Err(Error::Shape("corner comparison needs a cube of dimension ≥ 1".into()));
    }
    let p = x.p();
    let full = (1usize << d) - 1;
    let val = |m: usize| x.value(layout.vertex[m]);
    for m in 1..full {
        if !val(m).is_acyclic() {
            return Err(Error::Construction("an inner vertex is not acyclic".into()));
        }
    }
    let shift = |m: usize| d as i32 - m.count_ones() as i32;
    // Index sets of the blocks in each total degree.
    let offsets = |i: i32| -> Vec<(usize, usize)> {
        let mut off = 0;
        (0..=full)
            .map(|m| {
                let n = val(m).dim(i - shift(m));
                let r = (off, n);
                off += n;
                r
            })
            .collect()
    };
    let range = |i: i32, pred: &dyn Fn(usize) -> bool| -> Vec<usize> {
        offsets(i)
            .into_iter()
            .enumerate()
            .filter(|(m, _)| pred(*m))
            .flat_map(|(_, (o, n))| o..o + n)
            .collect()
    };
    let inner_pred = |m: usize| m != 0 && m != full;
    // The inner complex (I, d_II).
    let (lo, hi) = if tot.is_zero() { (0, -1) } else { (tot.lo(), tot.hi()) };
    let inner = ChainComplex::from_fn(
        p,
        lo,
        hi,
        |i| range(i, &inner_pred).len(),
        |i| tot.d(i).select_rows(&range(i - 1, &inner_pred)).select_cols(&range(i, &inner_pred)),
    );
    let h = contraction(&inner)?;
    let src = val(0).shift(d as i32 - 1);
    let tgt = val(full).clone();
    let comp = |i: i32| -> FpMatrix {
        // Σ^{d-1} X(∅) in degree i is X(∅)_{i-d+1}, i.e. total degree i + 1.
        let from = range(i + 1, &|m| m == 0);
        let to = range(i, &|m| m == full);
        let direct = tot.d(i + 1).select_rows(&to).select_cols(&from);
        if inner.is_zero() || h.is_empty() {
            return direct;
        }
        // D' = d_{∞∅} - d_{∞I} h d_{I∅}, with h: I_i -> I_{i+1}.
        let d_inner_from = tot.d(i + 1).select_rows(&range(i, &inner_pred)).select_cols(&from);
        let d_to_inner = tot.d(i + 1).select_rows(&to).select_cols(&range(i + 1, &inner_pred));
        let h_up = match h.get(&(i + 1)) {
            Some(m) => m.clone(),
            None => FpMatrix::zeros(p, inner.dim(i + 1), inner.dim(i)),
        };
        direct.sub(&d_to_inner.mul(&h_up).mul(&d_inner_from))
    };
    let raw = GradedMap::from_fn(&src, &tgt, comp);
    if raw.is_chain_map(&src, &tgt) {
        return Ok(ChainMap { src, tgt, map: raw });
    }
    let twisted = GradedMap::from_fn(&src, &tgt, |i| raw.comp_or_zero(i, &src, &tgt).signed(i as i64));
    if twisted.is_chain_map(&src, &tgt) {
        return Ok(ChainMap { src, tgt, map: twisted });
    }
    Err(Error::Construction("transferred corner map is not a chain map".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{cone_inclusion, cone_projection, random_complex};
    use crate::dgmcalc::tcof;
    use crate::homposet::FinitePoset;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;
    use std::sync::Arc;

    /// `A -> CA -> ΣA ⊕ E` with `A -> 0` in the other direction.
    fn suspension_square(a: &ChainComplex, e: &ChainComplex) -> Diagram {
        let p = a.p();
        let id = GradedMap::identity(a);
        let ca = crate::chain::cone(a, a, &id);
        let sa = a.shift(1);
        let top = sa.direct_sum(e);
        let proj = cone_projection(a, a, &id);
        let into_top = GradedMap::from_fn(&ca, &top, |i| {
            let pi = proj.comp_or_zero(i, &ca, &sa);
            FpMatrix::from_blocks(p, &[sa.dim(i), e.dim(i)], &[ca.dim(i)], &[(0, 0, &pi)])
        });
        let idx = Arc::new(FinitePoset::cube(2));
        let z = ChainComplex::zero(p);
        // Labels in lex order: (0,0), (0,1), (1,0), (1,1).
        let values = vec![a.clone(), z.clone(), ca.clone(), top.clone()];
        let mut arrows = BTreeMap::new();
        arrows.insert((0, 2), cone_inclusion(a, a, &id));
        arrows.insert((2, 3), into_top);
        Diagram::new(p, idx, values, arrows, None).unwrap()
    }

    #[test]
    fn suspension_square_compares_by_a_qiso() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for p in [2, 5] {
            let a = random_complex(p, 2, 3, &mut rng);
            let x = suspension_square(&a, &ChainComplex::zero(p));
            let m = corner_comparison(&x).unwrap();
            assert!(m.is_qiso());
        }
    }

    #[test]
    fn corner_cone_matches_tcof() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for p in [2, 5] {
            let a = random_complex(p, 2, 2, &mut rng);
            let e = random_complex(p, 2, 2, &mut rng);
            let x = suspension_square(&a, &e);
            let m = corner_comparison(&x).unwrap();
            assert_eq!(m.cone().homology(), tcof(&x).unwrap().homology());
            let (tot, _) = total_complex(&x).unwrap();
            assert_eq!(tot.homology(), tcof(&x).unwrap().homology());
        }
    }
}
