//! Cofibers, fibers and the cube calculus.
//!
//! `cof_coord(X, j)` replaces each arrow `X(e) -> X(e + 1_j)` by
//! `X(e + 1_j) -> cone`, and `fib_coord` by `cocone -> X(e)`. Both work on
//! any index that is a product with a `{0, 1}` factor in coordinate `j`.
//! `cof¹` applies coordinates in ascending order and `fib¹` in descending
//! order, so that `fib¹ ∘ cof¹` carries an explicit unit from the identity.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chain::{
    cocone, cocone_functorial, cocone_projection, cone, cone_functorial, cone_inclusion,
    ChainComplex, ChainMap, FpMatrix, GradedMap,
};
use crate::error::{Error, Result};
use crate::homposet::{FinitePoset, PosetMap};

use super::diagram::{Diagram, NatMap};

/// `(e with e_j = 0) -> index of e + 1_j`, after checking the product shape.
fn partners(idx: &FinitePoset, j: usize) -> Result<Vec<usize>> {
    let n = idx.len();
    let mut up = vec![usize::MAX; n];
    for a in 0..n {
        let e = idx.element(a);
        if j >= e.len() || !(0..=1).contains(&e[j]) {
            return Err(Error::Shape(format!("coordinate {j} of {e:?} is not in {{0, 1}}")));
        }
        let mut f = e.clone();
        f[j] = 1 - e[j];
        let b = idx
            .index_of(&f)
            .ok_or_else(|| Error::Shape(format!("{e:?} has no partner in coordinate {j}")))?;
        if e[j] == 0 {
            up[a] = b;
        } else {
            up[a] = a;
        }
    }
    for (a, b) in idx.covers() {
        let (ea, eb) = (idx.element(a), idx.element(b));
        if ea[j] != eb[j] && up[a] != b {
            return Err(Error::Shape(format!("cover {ea:?} -> {eb:?} crosses coordinate {j} diagonally")));
        }
    }
    Ok(up)
}

fn down_partner(idx: &FinitePoset, a: usize, j: usize) -> usize {
    let mut f = idx.element(a).clone();
    f[j] = 0;
    idx.index_of(&f).expect("partner checked")
}

/// Cofiber in coordinate `j`.
pub fn cof_coord(x: &Diagram, j: usize) -> Result<Diagram> {
    let idx = x.index().clone();
    let up = partners(&idx, j)?;
    let is_top = |a: usize| idx.element(a)[j] == 1;
    let arrow = |a: usize, b: usize| x.cover_arrow(a, b);
    let values: Vec<ChainComplex> = (0..x.len())
        .map(|a| {
            if is_top(a) {
                let s = down_partner(&idx, a, j);
                cone(x.value(s), x.value(a), arrow(s, a))
            } else {
                x.value(up[a]).clone()
            }
        })
        .collect();
    let mut arrows = BTreeMap::new();
    for (a, b) in idx.covers() {
        let m = match (is_top(a), is_top(b)) {
            (false, true) => cone_inclusion(x.value(a), x.value(b), arrow(a, b)),
            (false, false) => arrow(up[a], up[b]).clone(),
            (true, true) => {
                let (sa, sb) = (down_partner(&idx, a, j), down_partner(&idx, b, j));
                cone_functorial(
                    (x.value(sa), x.value(a), arrow(sa, a)),
                    (x.value(sb), x.value(b), arrow(sb, b)),
                    arrow(sa, sb),
                    arrow(a, b),
                    arrow(sa, a),
                )
            }
            (true, false) => unreachable!("covers go up"),
        };
        arrows.insert((a, b), m);
    }
    Ok(Diagram::from_parts(x.p(), idx.clone(), values, arrows, vec![false; idx.len()]))
}

/// Fiber in coordinate `j`.
pub fn fib_coord(x: &Diagram, j: usize) -> Result<Diagram> {
    let idx = x.index().clone();
    let up = partners(&idx, j)?;
    let is_top = |a: usize| idx.element(a)[j] == 1;
    let arrow = |a: usize, b: usize| x.cover_arrow(a, b);
    let values: Vec<ChainComplex> = (0..x.len())
        .map(|a| {
            if is_top(a) {
                x.value(down_partner(&idx, a, j)).clone()
            } else {
                cocone(x.value(a), x.value(up[a]), arrow(a, up[a]))
            }
        })
        .collect();
    let mut arrows = BTreeMap::new();
    for (a, b) in idx.covers() {
        let m = match (is_top(a), is_top(b)) {
            (false, true) => cocone_projection(x.value(a), x.value(b), arrow(a, b)),
            (true, true) => {
                let (sa, sb) = (down_partner(&idx, a, j), down_partner(&idx, b, j));
                arrow(sa, sb).clone()
            }
            (false, false) => {
                let (ta, tb) = (up[a], up[b]);
                cocone_functorial(
                    (x.value(a), x.value(ta)),
                    (x.value(b), x.value(tb)),
                    arrow(a, ta),
                    arrow(b, tb),
                    arrow(a, b),
                    arrow(ta, tb),
                )
            }
            (true, false) => unreachable!("covers go up"),
        };
        arrows.insert((a, b), m);
    }
    Ok(Diagram::from_parts(x.p(), idx.clone(), values, arrows, vec![false; idx.len()]))
}

/// `fib_coord` on a morphism of diagrams.
pub fn fib_coord_map(f: &NatMap, j: usize) -> Result<NatMap> {
    let (s, t) = (&f.src, &f.tgt);
    let idx = s.index().clone();
    let up = partners(&idx, j)?;
    let fs = fib_coord(s, j)?;
    let ft = fib_coord(t, j)?;
    let comps = (0..s.len())
        .map(|a| {
            if idx.element(a)[j] == 1 {
                f.comps[down_partner(&idx, a, j)].clone()
            } else {
                let b = up[a];
                cocone_functorial(
                    (s.value(a), s.value(b)),
                    (t.value(a), t.value(b)),
                    s.cover_arrow(a, b),
                    t.cover_arrow(a, b),
                    &f.comps[a],
                    &f.comps[b],
                )
            }
        })
        .collect();
    Ok(NatMap::from_parts(fs, ft, comps))
}

/// The unit `X -> fib_j(cof_j(X))`: identity on the `1`-face and
/// `x ↦ (0, -x, f x)` on the `0`-face.
pub fn fib_cof_unit_coord(x: &Diagram, j: usize) -> Result<NatMap> {
    let idx = x.index().clone();
    let up = partners(&idx, j)?;
    let tgt = fib_coord(&cof_coord(x, j)?, j)?;
    let p = x.p();
    let comps = (0..x.len())
        .map(|a| {
            if idx.element(a)[j] == 1 {
                GradedMap::identity(x.value(a))
            } else {
                let (xa, xb) = (x.value(a), x.value(up[a]));
                let f = x.cover_arrow(a, up[a]);
                GradedMap::from_fn(xa, tgt.value(a), |i| {
                    // cocone(ι)_i = X(b)_{i+1} ⊕ X(a)_i ⊕ X(b)_i.
                    let neg = FpMatrix::identity(p, xa.dim(i)).neg();
                    let fi = f.comp_or_zero(i, xa, xb);
                    FpMatrix::from_blocks(
                        p,
                        &[xb.dim(i + 1), xa.dim(i), xb.dim(i)],
                        &[xa.dim(i)],
                        &[(1, 0, &neg), (2, 0, &fi)],
                    )
                })
            }
        })
        .collect();
    Ok(NatMap::from_parts(x.clone(), tgt, comps))
}

/// Which iterated operation to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IteratedOp {
    Cof,
    Fib,
}

/// Coordinates of a cube-shaped index (all labels 0/1).
fn cube_coords(x: &Diagram) -> Result<usize> {
    let idx = x.index();
    let m = idx.element(0).len();
    if idx.len() != 1 << m || idx.elements().iter().any(|e| e.iter().any(|&v| v != 0 && v != 1)) {
        return Err(Error::Shape("expected a cube-shaped index".into()));
    }
    Ok(m)
}

/// `cof¹` (ascending coordinates) or `fib¹` (descending coordinates).
pub fn iterated(x: &Diagram, op: IteratedOp) -> Result<Diagram> {
    let m = cube_coords(x)?;
    iterated_on(x, op, &(0..m).collect::<Vec<_>>())
}

/// Iterate over the given coordinates of a product index: `cof` in the
/// listed order, `fib` in reverse order.
pub fn iterated_on(x: &Diagram, op: IteratedOp, coords: &[usize]) -> Result<Diagram> {
    let mut y = x.clone();
    match op {
        IteratedOp::Cof => {
            for &j in coords {
                y = cof_coord(&y, j)?;
            }
        }
        IteratedOp::Fib => {
            for &j in coords.iter().rev() {
                y = fib_coord(&y, j)?;
            }
        }
    }
    Ok(y)
}

pub fn cof1(x: &Diagram) -> Result<Diagram> {
    iterated(x, IteratedOp::Cof)
}

pub fn fib1(x: &Diagram) -> Result<Diagram> {
    iterated(x, IteratedOp::Fib)
}

/// The explicit unit `X -> fib¹(cof¹(X))` of a cube or product index.
pub fn fib_cof_unit(x: &Diagram, coords: &[usize]) -> Result<NatMap> {
    let Some((&j, rest)) = coords.split_first() else {
        return Ok(NatMap::identity(x));
    };
    let first = fib_cof_unit_coord(x, j)?;
    let cx = cof_coord(x, j)?;
    let inner = fib_cof_unit(&cx, rest)?;
    let lifted = fib_coord_map(&inner, j)?;
    // `first` lands in fib_j(cof_j X) and `lifted` starts there.
    Ok(NatMap::from_parts(first.src.clone(), lifted.tgt.clone(), first.then(&lifted).comps))
}

fn top_index(x: &Diagram) -> usize {
    x.len() - 1
}

/// Total cofiber `cof¹(X)(∞)`.
pub fn tcof(x: &Diagram) -> Result<ChainComplex> {
    let y = cof1(x)?;
    Ok(y.value(top_index(&y)).clone())
}

/// Total fiber `fib¹(X)(∅)`.
pub fn tfib(x: &Diagram) -> Result<ChainComplex> {
    Ok(fib1(x)?.value(0).clone())
}

/// True iff `tcof` is acyclic; the `tfib` verdict must agree.
pub fn is_bicartesian(x: &Diagram) -> Result<bool> {
    let c = tcof(x)?.is_acyclic();
    let f = tfib(x)?.is_acyclic();
    if c != f {
        return Err(Error::Construction("tcof and tfib disagree on acyclicity".into()));
    }
    Ok(c)
}

/// `x -> y -> cone` over `[2]`.
pub fn cof_seq(x: &Diagram) -> Result<Diagram> {
    let f = arrow_of(x)?;
    let c = f.cone();
    let inc = cone_inclusion(&f.src, &f.tgt, &f.map);
    Ok(chain2(x.p(), [f.src.clone(), f.tgt.clone(), c], [f.map.clone(), inc]))
}

/// `cocone -> x -> y` over `[2]`.
pub fn fib_seq(x: &Diagram) -> Result<Diagram> {
    let f = arrow_of(x)?;
    let c = f.cocone();
    let proj = cocone_projection(&f.src, &f.tgt, &f.map);
    Ok(chain2(x.p(), [c, f.src.clone(), f.tgt.clone()], [proj, f.map.clone()]))
}

/// `cof(x -> y) = (y -> cone)`.
pub fn cof(x: &Diagram) -> Result<Diagram> {
    arrow_of(x)?;
    cof_coord(x, 0)
}

/// `fib(x -> y) = (cocone -> x)`.
pub fn fib(x: &Diagram) -> Result<Diagram> {
    arrow_of(x)?;
    fib_coord(x, 0)
}

/// The cone of the underlying arrow.
pub fn cone_pt(x: &Diagram) -> Result<ChainComplex> {
    Ok(arrow_of(x)?.cone())
}

pub fn cocone_pt(x: &Diagram) -> Result<ChainComplex> {
    Ok(arrow_of(x)?.cocone())
}

pub fn susp(x: &Diagram) -> Diagram {
    x.shift(1)
}

pub fn loop_(x: &Diagram) -> Diagram {
    x.shift(-1)
}

fn arrow_of(x: &Diagram) -> Result<ChainMap> {
    if **x.index() != FinitePoset::chain(1) {
        return Err(Error::Shape("expected a diagram over [1]".into()));
    }
    x.chain_map(0, 1)
}

fn chain2(p: u32, v: [ChainComplex; 3], m: [GradedMap; 2]) -> Diagram {
    let [f, g] = m;
    let mut arrows = BTreeMap::new();
    arrows.insert((0, 1), f);
    arrows.insert((1, 2), g);
    Diagram::from_parts(p, Arc::new(FinitePoset::chain(2)), v.to_vec(), arrows, vec![false; 3])
}

/// Outcome of the concatenation law on `□^{n-1} × [2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcatVerdict {
    /// Acyclicity of `tcof` on the faces `d₂*`, `d₁*`, `d₀*` of `[2]`.
    pub bicartesian: [bool; 3],
    /// Two acyclic faces force the third.
    pub two_of_three: bool,
    /// Rank identities of the long exact sequence of `A -> B -> C`.
    pub exact: bool,
    /// The faces agree with the cones assembled from one computation.
    pub consistent: bool,
}

impl ConcatVerdict {
    pub fn passed(&self) -> bool {
        self.two_of_three && self.exact && self.consistent
    }
}

/// Check the cofiber sequence `tcof(d₂*X) -> tcof(d₁*X) -> tcof(d₀*X)`.
pub fn concat_check(x: &Diagram) -> Result<ConcatVerdict> {
    let idx = x.index().clone();
    let w = idx.element(0).len();
    if w == 0 {
        return Err(Error::Shape("expected □^{n-1} × [2]".into()));
    }
    let m = w - 1;
    let expect = FinitePoset::cube(m).product(&FinitePoset::chain(2));
    if *idx != expect {
        return Err(Error::Shape("expected □^{n-1} × [2]".into()));
    }
    // Faces of [2] as n-cubes.
    let face = |skip: i64| -> Result<Diagram> {
        let u = PosetMap::from_fn(Arc::new(FinitePoset::cube(w)), idx.clone(), |e| {
            let mut f = e[..m].to_vec();
            let t = [0, 1, 2].into_iter().filter(|&v| v != skip).collect::<Vec<i64>>();
            f.push(t[e[m] as usize]);
            f
        })?;
        x.restrict(&u)
    };
    let faces = [face(2)?, face(1)?, face(0)?];
    let tc: Vec<ChainComplex> = faces.iter().map(tcof).collect::<Result<_>>()?;
    let bicartesian = [tc[0].is_acyclic(), tc[1].is_acyclic(), tc[2].is_acyclic()];
    let acyclic = bicartesian.iter().filter(|&&b| b).count();
    let two_of_three = acyclic != 2;

    // Total cofibers of the three slices X(-, t) and the maps between them.
    let y = iterated_on(x, IteratedOp::Cof, &(0..m).collect::<Vec<_>>())?;
    let top: Vec<i64> = vec![1; m];
    let at = |t: i64| {
        let mut e = top.clone();
        e.push(t);
        idx.index_of(&e).expect("label")
    };
    let (t0, t1, t2) = (at(0), at(1), at(2));
    let (v0, v1, v2) = (y.value(t0), y.value(t1), y.value(t2));
    let f01 = y.map_between(t0, t1)?;
    let f12 = y.map_between(t1, t2)?;
    let f02 = y.map_between(t0, t2)?;
    let a = cone(v0, v1, &f01);
    let b = cone(v0, v2, &f02);
    let c = cone(v1, v2, &f12);
    let id0 = GradedMap::identity(v0);
    let id2 = GradedMap::identity(v2);
    let alpha = cone_functorial((v0, v1, &f01), (v0, v2, &f02), &id0, &f12, &f01);
    let beta = cone_functorial((v0, v2, &f02), (v1, v2, &f12), &f01, &id2, &f02);
    let consistent = [&a, &b, &c]
        .iter()
        .zip(&tc)
        .all(|(mine, face)| mine.homology() == face.homology())
        && alpha.is_chain_map(&a, &b)
        && beta.is_chain_map(&b, &c);
    let (ha, hb, hc) = (a.homology(), b.homology(), c.homology());
    let lo = [a.lo(), b.lo(), c.lo()].into_iter().min().unwrap() - 1;
    let hi = [a.hi(), b.hi(), c.hi()].into_iter().max().unwrap() + 1;
    let exact = (lo..=hi).all(|i| {
        let ra = |i| alpha.homology_rank(i, &a, &b);
        let rb = beta.homology_rank(i, &b, &c);
        hb.get(i) == ra(i) + rb && hc.get(i) + ra(i - 1) == ha.get(i - 1) + rb
    });
    Ok(ConcatVerdict { bicartesian, two_of_three, exact, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgmcalc::random_diagram;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cone_of_identity_is_acyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = crate::chain::random_complex(5, 2, 3, &mut rng);
        let x = Diagram::arrow_diagram(&ChainMap::identity(&c));
        assert!(cof(&x).unwrap().value(1).is_acyclic());
    }

    #[test]
    fn point_square_is_not_bicartesian() {
        let idx = Arc::new(FinitePoset::cube(2));
        let mut vals = vec![ChainComplex::zero(2); 4];
        vals[0] = ChainComplex::concentrated(2, 0, 1);
        let x = Diagram::new(2, idx, vals, BTreeMap::new(), None).unwrap();
        let t = tcof(&x).unwrap();
        assert_eq!(t.homology().get(2), 1);
        assert!(!is_bicartesian(&x).unwrap());
    }

    #[test]
    fn fib_cof_units_are_natural_qisos() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for p in [2, 5] {
            let x = random_diagram(p, Arc::new(FinitePoset::cube(2)), 1, 2, None, &mut rng);
            let u = fib_cof_unit(&x, &[0, 1]).unwrap();
            u.check().unwrap();
            u.tgt.check_strict().unwrap();
            assert!(u.is_pointwise_qiso());
        }
    }

    #[test]
    fn concatenation_law_on_random_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let idx = Arc::new(FinitePoset::cube(1).product(&FinitePoset::chain(2)));
        for _ in 0..5 {
            let x = random_diagram(3, idx.clone(), 1, 2, None, &mut rng);
            let v = concat_check(&x).unwrap();
            assert!(v.passed(), "{v:?}");
        }
    }
}
