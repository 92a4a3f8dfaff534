//! Homotopy Kan extensions via minimal semifree resolutions.
//!
//! A diagram `X` over `A` is replaced by a quasi-isomorphic diagram `QX`
//! spanned by generators `g`, each living at a point `a_g` and of degree
//! `|g|`. The differential of `g` only involves generators at points
//! strictly below `a_g`, so `QX(a) = span{g | a_g ≤ a}` with inclusions as
//! arrows. Such a diagram is cofibrant, and its strict left Kan extension
//! along any monotone `u` is again spanned by generators:
//! `(u_! X)(b) = span{g | u(a_g) ≤ b}`. Right Kan extensions are obtained
//! by linear duality over the opposite posets.

use std::collections::BTreeMap;

use crate::chain::{cone, ChainComplex, FpMatrix, GradedMap};
use crate::error::{Error, Result};
use crate::homposet::PosetMap;

use super::diagram::{Diagram, NatMap};

/// The generators of a minimal semifree resolution together with the
/// comparison `ψ: QX -> X`.
#[derive(Clone, Debug)]
pub struct Resolution {
    p: u32,
    source: Diagram,
    point: Vec<usize>,
    degree: Vec<i32>,
    /// Sparse boundary `Dg` in generator indices.
    boundary: Vec<Vec<(usize, u32)>>,
    /// `X(a_g -> b) ψ(g)` for every `b ≥ a_g`.
    images: Vec<BTreeMap<usize, Vec<u32>>>,
}

impl Resolution {
    pub fn new(x: &Diagram) -> Self {
        let p = x.p();
        let idx = x.index().clone();
        let mut r = Resolution {
            p,
            source: x.clone(),
            point: Vec::new(),
            degree: Vec::new(),
            boundary: Vec::new(),
            images: Vec::new(),
        };
        for a in 0..idx.len() {
            let lower: Vec<usize> =
                (0..r.len()).filter(|&g| idx.lt(r.point[g], a)).collect();
            let (q, order) = r.span_complex(&lower);
            let xa = x.value(a);
            let phi = GradedMap::from_fn(&q, xa, |i| {
                let cols: Vec<Vec<u32>> =
                    order.get(&i).map_or(Vec::new(), |gs| gs.iter().map(|&g| r.images[g][&a].clone()).collect());
                FpMatrix::from_columns(p, xa.dim(i), &cols)
            });
            let c = cone(&q, xa, &phi);
            for i in c.degrees() {
                let hb = c.homology_basis(i);
                for col in 0..hb.reps.cols() {
                    let v = hb.reps.column(col);
                    let (xpart, qpart) = v.split_at(xa.dim(i));
                    let below = order.get(&(i - 1)).cloned().unwrap_or_default();
                    let boundary: Vec<(usize, u32)> = qpart
                        .iter()
                        .zip(&below)
                        .filter(|(&c, _)| c != 0)
                        .map(|(&c, &g)| (g, (p - c) % p))
                        .collect();
                    r.push_generator(a, i, boundary, xpart.to_vec());
                }
            }
        }
        r
    }

    fn push_generator(&mut self, a: usize, deg: i32, boundary: Vec<(usize, u32)>, x: Vec<u32>) {
        let idx = self.source.index().clone();
        let mut images = BTreeMap::new();
        images.insert(a, x);
        for b in idx.up_set(a) {
            if b == a {
                continue;
            }
            let c = *idx
                .lower_covers(b)
                .iter()
                .find(|&&c| idx.leq(a, c))
                .expect("b > a passes a lower cover above a");
            let (xc, xb) = (self.source.value(c), self.source.value(b));
            let m = self.source.cover_arrow(c, b).comp_or_zero(deg, xc, xb);
            let v = m.mul_vec(&images[&c]);
            images.insert(b, v);
        }
        self.point.push(a);
        self.degree.push(deg);
        self.boundary.push(boundary);
        self.images.push(images);
    }

    pub fn len(&self) -> usize {
        self.point.len()
    }

    pub fn is_empty(&self) -> bool {
        self.point.is_empty()
    }

    pub fn generator_points(&self) -> &[usize] {
        &self.point
    }

    pub fn generator_degrees(&self) -> &[i32] {
        &self.degree
    }

    /// The complex spanned by `gens`, with generators grouped by degree in
    /// increasing index order. Boundary terms outside `gens` are dropped, so
    /// a set that is a difference of two boundary-closed sets yields the
    /// quotient complex.
    pub(crate) fn span_complex(&self, gens: &[usize]) -> (ChainComplex, BTreeMap<i32, Vec<usize>>) {
        let mut order: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for &g in gens {
            order.entry(self.degree[g]).or_default().push(g);
        }
        if order.is_empty() {
            return (ChainComplex::zero(self.p), order);
        }
        let lo = *order.keys().next().unwrap();
        let hi = *order.keys().last().unwrap();
        // Generator -> row within its degree.
        let pos: BTreeMap<usize, usize> = order
            .values()
            .flat_map(|gs| gs.iter().enumerate().map(|(j, &g)| (g, j)))
            .collect();
        let dim = |i: i32| order.get(&i).map_or(0, Vec::len);
        let c = ChainComplex::from_fn(self.p, lo, hi, dim, |i| {
            let mut m = FpMatrix::zeros(self.p, dim(i - 1), dim(i));
            if let Some(gs) = order.get(&i) {
                for (col, &g) in gs.iter().enumerate() {
                    for &(h, v) in &self.boundary[g] {
                        if let Some(&r) = pos.get(&h) {
                            m.set(r, col, v);
                        }
                    }
                }
            }
            m
        });
        (c, order)
    }

    /// `u_!` of the resolved diagram along any monotone `u` out of its index.
    pub fn extend(&self, u: &PosetMap) -> Diagram {
        let tgt = u.tgt.clone();
        let spans: Vec<(ChainComplex, BTreeMap<i32, Vec<usize>>)> = (0..tgt.len())
            .map(|b| {
                let gens: Vec<usize> =
                    (0..self.len()).filter(|&g| tgt.leq(u.apply(self.point[g]), b)).collect();
                self.span_complex(&gens)
            })
            .collect();
        let values: Vec<ChainComplex> = spans.iter().map(|(c, _)| c.clone()).collect();
        let arrows = tgt
            .covers()
            .into_iter()
            .map(|(b, b2)| ((b, b2), inclusion(self.p, &spans[b], &spans[b2])))
            .collect();
        Diagram::from_parts(self.p, tgt.clone(), values, arrows, vec![false; tgt.len()])
    }

    /// The resolved diagram `QX` over the original index.
    pub fn resolved(&self) -> Diagram {
        self.extend(&PosetMap::identity(self.source.index().clone()))
    }

    /// The pointwise quasi-isomorphism `QX -> X`.
    pub fn comparison(&self) -> NatMap {
        let q = self.resolved();
        let x = &self.source;
        let comps = (0..x.len())
            .map(|a| {
                let gens: Vec<usize> = (0..self.len()).filter(|&g| x.index().leq(self.point[g], a)).collect();
                let (qa, order) = self.span_complex(&gens);
                GradedMap::from_fn(&qa, x.value(a), |i| {
                    let cols: Vec<Vec<u32>> = order
                        .get(&i)
                        .map_or(Vec::new(), |gs| gs.iter().map(|&g| self.images[g][&a].clone()).collect());
                    FpMatrix::from_columns(self.p, x.value(a).dim(i), &cols)
                })
            })
            .collect();
        NatMap::from_parts(q, x.clone(), comps)
    }
}

/// The map sending each generator to itself, or to zero when the target
/// does not contain it.
pub(crate) fn inclusion(
    p: u32,
    (src, so): &(ChainComplex, BTreeMap<i32, Vec<usize>>),
    (tgt, to): &(ChainComplex, BTreeMap<i32, Vec<usize>>),
) -> GradedMap {
    GradedMap::from_fn(src, tgt, |i| {
        let mut m = FpMatrix::zeros(p, tgt.dim(i), src.dim(i));
        if let (Some(sg), Some(tg)) = (so.get(&i), to.get(&i)) {
            let pos: BTreeMap<usize, usize> = tg.iter().enumerate().map(|(j, &g)| (g, j)).collect();
            for (col, g) in sg.iter().enumerate() {
                if let Some(&r) = pos.get(g) {
                    m.set(r, col, 1);
                }
            }
        }
        m
    })
}

fn require_embedding(u: &PosetMap) -> Result<()> {
    if u.is_embedding() {
        Ok(())
    } else {
        Err(Error::Poset("Kan extensions are taken along poset embeddings".into()))
    }
}

/// Homotopy left Kan extension `u_! X` along a poset embedding.
pub fn lkan(x: &Diagram, u: &PosetMap) -> Result<Diagram> {
    require_embedding(u)?;
    left_kan_any(x, u)
}

/// Homotopy right Kan extension `u_* X` along a poset embedding.
pub fn rkan(x: &Diagram, u: &PosetMap) -> Result<Diagram> {
    require_embedding(u)?;
    right_kan_any(x, u)
}

/// `u_!` along an arbitrary monotone map.
pub fn left_kan_any(x: &Diagram, u: &PosetMap) -> Result<Diagram> {
    if *u.src != **x.index() {
        return Err(Error::Poset("Kan extension map does not start at the index".into()));
    }
    Ok(Resolution::new(x).extend(u))
}

/// `u_*` along an arbitrary monotone map, as `D u^op_! D`.
pub fn right_kan_any(x: &Diagram, u: &PosetMap) -> Result<Diagram> {
    if *u.src != **x.index() {
        return Err(Error::Poset("Kan extension map does not start at the index".into()));
    }
    let dx = x.dual();
    let uop = u.opposite();
    let ext = Resolution::new(&dx).extend(&uop).dual();
    // Reattach the caller's index so downstream equality checks see one Arc.
    Ok(Diagram::from_parts(
        ext.p(),
        u.tgt.clone(),
        ext.values().to_vec(),
        ext.cover_arrows().clone(),
        vec![false; u.tgt.len()],
    ))
}

/// Witness that `u*u_! X ≃ X`: the restriction of `u_! X` to the image is
/// literally the resolution, compared with `X` by `ψ`.
pub fn lkan_unit_witness(x: &Diagram, u: &PosetMap) -> Result<NatMap> {
    require_embedding(u)?;
    let r = Resolution::new(x);
    let back = r.extend(u).restrict(u)?;
    let cmp = r.comparison();
    Ok(NatMap::from_parts(back, x.clone(), cmp.comps))
}

/// Witness that `u*u_* X ≃ X`, dual to [`lkan_unit_witness`].
pub fn rkan_counit_witness(x: &Diagram, u: &PosetMap) -> Result<NatMap> {
    require_embedding(u)?;
    let dx = x.dual();
    let uop = u.opposite();
    let w = lkan_unit_witness(&dx, &uop)?;
    // Dualize ψ: X^∨∨ = X -> (u*u_! X^∨)^∨ = u*u_* X.
    let tgt = w.src.dual();
    let src = x.clone();
    let neg = |e: &[i64]| -> Vec<i64> { e.iter().map(|v| -v).collect() };
    let comps = (0..x.len())
        .map(|a| {
            let oa = dx.index().index_of(&neg(x.index().element(a))).expect("label");
            w.comps[oa].dual(w.src.value(oa), w.tgt.value(oa))
        })
        .collect();
    let tgt = Diagram::from_parts(
        tgt.p(),
        x.index().clone(),
        tgt.values().to_vec(),
        tgt.cover_arrows().clone(),
        vec![false; x.len()],
    );
    Ok(NatMap::from_parts(src, tgt, comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homposet::FinitePoset;
    use std::sync::Arc;
    use crate::dgmcalc::random_diagram;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn resolution_is_pointwise_qiso() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2, 5] {
            let x = random_diagram(p, Arc::new(FinitePoset::cube(2)), 2, 2, None, &mut rng);
            let r = Resolution::new(&x);
            let cmp = r.comparison();
            cmp.check().unwrap();
            assert!(cmp.is_pointwise_qiso());
        }
    }

    #[test]
    fn lkan_of_point_along_endpoint() {
        let pt = Arc::new(FinitePoset::chain(0));
        let c = ChainComplex::concentrated(2, 0, 1);
        let x = Diagram::constant(2, pt.clone(), &c);
        let u = PosetMap::new(pt, Arc::new(FinitePoset::chain(1)), vec![0]).unwrap();
        let e = lkan(&x, &u).unwrap();
        assert_eq!(e.value(1).homology().total(), 1);
        assert!(e.chain_map(0, 1).unwrap().is_qiso());
        let e2 = rkan(&x, &u).unwrap();
        assert!(e2.value(1).is_zero());
    }

    #[test]
    fn unit_and_counit_witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let sq = Arc::new(FinitePoset::cube(2));
        let x = random_diagram(3, Arc::new(FinitePoset::chain(1)), 1, 2, None, &mut rng);
        let u = PosetMap::from_fn(x.index().clone(), sq, |e| vec![0, e[0]]).unwrap();
        let w = lkan_unit_witness(&x, &u).unwrap();
        w.check().unwrap();
        assert!(w.is_pointwise_qiso());
        let w2 = rkan_counit_witness(&x, &u).unwrap();
        w2.check().unwrap();
        assert!(w2.is_pointwise_qiso());
    }
}
