//! Replacing acyclic values on a support set by exact zeros.
//!
//! Over a field an acyclic complex is contractible, but a strict diagram
//! cannot simply drop it. Instead the diagram is resolved and each value is
//! divided by the generators that factor through a support element below
//! it. The quotient is quasi-isomorphic to the original pointwise exactly
//! when those spans are acyclic, which is checked.

use std::collections::BTreeMap;

use crate::chain::{ChainComplex, GradedMap};
use crate::error::{Error, Result};
use crate::homposet::PosetMap;

use super::diagram::{Diagram, NatMap};
use super::kan::{inclusion, Resolution};

/// A diagram with exact zeros on the support, linked to the input by
/// `Z <- QZ -> Z'` with both legs pointwise quasi-isomorphisms.
#[derive(Clone, Debug)]
pub struct Collapse {
    pub diagram: Diagram,
    pub to_source: NatMap,
    pub to_collapsed: NatMap,
}

pub fn collapse_support(z: &Diagram, support: &[bool]) -> Result<Collapse> {
    let idx = z.index().clone();
    if support.len() != idx.len() {
        return Err(Error::Shape("support mask has the wrong length".into()));
    }
    for (s, _) in support.iter().enumerate().filter(|(_, &b)| b) {
        if !z.value(s).is_acyclic() {
            return Err(Error::Support {
                at: idx.element(s).clone(),
                reason: "value on the support is not acyclic".into(),
            });
        }
    }
    let r = Resolution::new(z);
    let points = r.generator_points();
    let mut spans = Vec::with_capacity(idx.len());
    let mut full_spans = Vec::with_capacity(idx.len());
    for b in 0..idx.len() {
        let all: Vec<usize> = (0..r.len()).filter(|&g| idx.leq(points[g], b)).collect();
        let (killed, kept): (Vec<usize>, Vec<usize>) = all.iter().partition(|&&g| {
            (0..idx.len()).any(|s| support[s] && idx.leq(points[g], s) && idx.leq(s, b))
        });
        if !killed.is_empty() && !r.span_complex(&killed).0.is_acyclic() {
            return Err(Error::Support {
                at: idx.element(b).clone(),
                reason: "the support below this element does not span an acyclic subcomplex".into(),
            });
        }
        spans.push(r.span_complex(&kept));
        full_spans.push(r.span_complex(&all));
    }
    let p = z.p();
    let values = spans.iter().map(|(c, _)| c.clone()).collect();
    let arrows = idx
        .covers()
        .into_iter()
        .map(|(a, b)| ((a, b), inclusion(p, &spans[a], &spans[b])))
        .collect();
    let diagram = Diagram::from_parts(p, idx.clone(), values, arrows, support.to_vec());
    let to_source = r.comparison();
    let comps = (0..idx.len()).map(|b| inclusion(p, &full_spans[b], &spans[b])).collect();
    let to_collapsed = NatMap::from_parts(to_source.src.clone(), diagram.clone(), comps);
    Ok(Collapse { diagram, to_source, to_collapsed })
}

/// `u_! X ≅ u_* X` for an embedding with convex image: `X` on the image and
/// zero elsewhere. Convexity makes the zero extension strict, and over a
/// convex image both Kan extensions are extension by zero.
pub fn extend_by_zero(x: &Diagram, u: &PosetMap) -> Result<Diagram> {
    if *u.src != **x.index() {
        return Err(Error::Poset("extension map does not start at the index".into()));
    }
    if !u.is_embedding() {
        return Err(Error::Poset("extension by zero needs an embedding".into()));
    }
    let tgt = u.tgt.clone();
    let img = u.image_mask();
    let mut pre = vec![usize::MAX; tgt.len()];
    for a in 0..u.src.len() {
        pre[u.apply(a)] = a;
    }
    for b in (0..tgt.len()).filter(|&b| !img[b]) {
        let below = tgt.down_set(b).into_iter().any(|a| img[a]);
        let above = tgt.up_set(b).into_iter().any(|c| img[c]);
        if below && above {
            return Err(Error::Poset(format!(
                "image is not convex at {:?}",
                tgt.element(b)
            )));
        }
    }
    let p = x.p();
    let values: Vec<ChainComplex> = (0..tgt.len())
        .map(|b| if img[b] { x.value(pre[b]).clone() } else { ChainComplex::zero(p) })
        .collect();
    let mut arrows = BTreeMap::new();
    for (a, b) in tgt.covers() {
        let m = if img[a] && img[b] {
            x.map_between(pre[a], pre[b])?
        } else {
            GradedMap::zero(&values[a], &values[b])
        };
        arrows.insert((a, b), m);
    }
    let support = (0..tgt.len()).map(|b| !img[b] || x.support()[pre[b]]).collect();
    Ok(Diagram::from_parts(p, tgt, values, arrows, support))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{ChainComplex, ChainMap};
    use crate::homposet::FinitePoset;
    use std::sync::Arc;

    #[test]
    fn collapsing_an_acyclic_middle() {
        // x -> cone(id) -> 0 over [2]: the middle value is acyclic.
        let c = ChainComplex::concentrated(5, 0, 1);
        let f = ChainMap::identity(&c);
        let x = crate::dgmcalc::cof_seq(&Diagram::arrow_diagram(&f)).unwrap();
        let col = collapse_support(&x, &[false, false, true]).unwrap();
        assert!(col.diagram.value(2).is_zero());
        col.to_collapsed.check().unwrap();
        assert!(col.to_collapsed.is_pointwise_qiso());
        assert!(col.to_source.is_pointwise_qiso());
        let _ = Arc::new(FinitePoset::chain(2));
    }
}
