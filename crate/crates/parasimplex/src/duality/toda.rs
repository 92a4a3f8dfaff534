//! Functorial higher Toda brackets.
//!
//! Toda data of length `n ≥ 3` live on `□^{n-2} × [2]` and are acyclic off
//! the path `→^t`, which visits `(∅, 0)`, then the suffix sets `→(i-1)` at
//! level 1, then `(□-top, 2)`. Along it sit `x_n -> x_{n-1} -> … -> x_0`,
//! and the off-path values carry null-homotopies of the composites
//! `u_i ∘ u_{i+1}`. Exact zeros off the path are the special case of zero
//! null-homotopies, for which the bracket element is zero.
//!
//! Both constructions below produce an arrow between homotopy colimits.
//! Their ends are identified with `Σ^{n-2} x_n` and `x_0` through corner
//! comparisons of cubes with acyclic inner vertices and the resolution
//! comparison maps, and the result is reported as a homology class together
//! with a chain map realizing it.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::chain::{random_complex, ChainComplex, ChainMap, FpMatrix};
use crate::dgmcalc::{
    corner_comparison, extend_by_zero, random_arrows, Diagram, Resolution,
};
use crate::error::{Error, Result};
use crate::homposet::{FinitePoset, Label, PosetMap};

use super::homclass::HomClass;

/// `→^t_n(i)` as a label of `□^{n-2} × [2]`.
pub fn toda_path_point(n: usize, i: usize) -> Label {
    let m = n - 2;
    let suffix = |len: usize| -> Vec<i64> { (0..m).map(|j| (j + len >= m) as i64).collect() };
    let (set, level) = match i {
        0 => (suffix(0), 0),
        _ if i < n => (suffix(i - 1), 1),
        _ => (suffix(m), 2),
    };
    set.into_iter().chain(std::iter::once(level)).collect()
}

fn toda_index(n: usize) -> FinitePoset {
    FinitePoset::cube(n - 2).product(&FinitePoset::chain(2))
}

fn path_mask(n: usize, idx: &FinitePoset) -> Vec<bool> {
    let on: Vec<Label> = (0..=n).map(|i| toda_path_point(n, i)).collect();
    (0..idx.len()).map(|a| !on.contains(idx.element(a))).collect()
}

/// An object of the derivator of `n`-fold Toda bracket data.
#[derive(Clone, Debug, Serialize)]
pub struct TodaData {
    n: usize,
    data: Diagram,
}

impl TodaData {
    pub fn new(n: usize, data: Diagram) -> Result<Self> {
        if n < 3 {
            return Err(Error::Range(format!("Toda brackets need n ≥ 3, got {n}")));
        }
        let idx = toda_index(n);
        if **data.index() != idx {
            return Err(Error::Shape(format!("Toda data must be indexed by □^{} × [2]", n - 2)));
        }
        let mask = path_mask(n, &idx);
        for a in (0..idx.len()).filter(|&a| mask[a]) {
            if !data.value(a).is_acyclic() {
                return Err(Error::Support {
                    at: idx.element(a).clone(),
                    reason: "Toda data must be acyclic off the path".into(),
                });
            }
        }
        Ok(TodaData { n, data })
    }

    /// All-zero data.
    pub fn zero(n: usize, p: u32) -> Result<Self> {
        Self::new(n, Diagram::zero(p, Arc::new(toda_index(n.max(3)))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.data.p()
    }

    pub fn data(&self) -> &Diagram {
        &self.data
    }

    fn point(&self, i: usize) -> usize {
        self.data.index().index_of(&toda_path_point(self.n, i)).expect("path point")
    }

    /// `x_i`, sitting at `→^t(n - i)`.
    pub fn x(&self, i: usize) -> &ChainComplex {
        self.data.value(self.point(self.n - i))
    }

    /// `u_i: x_i -> x_{i-1}` for `1 ≤ i ≤ n`.
    pub fn u(&self, i: usize) -> Result<ChainMap> {
        self.data.chain_map(self.point(self.n - i), self.point(self.n - i + 1))
    }

    /// `Σ^{n-2} x_n`, the source of every bracket element.
    pub fn bracket_source(&self) -> ChainComplex {
        self.x(self.n).shift(self.n as i32 - 2)
    }
}

/// Random path complexes spread over degrees `2-n..=1`, so that
/// `Σ^{n-2} x_n` and `x_0` overlap.
fn path_complex(n: usize, p: u32, maxdim: usize, rng: &mut impl Rng) -> ChainComplex {
    random_complex(p, n as i32 - 1, maxdim, rng).shift(2 - n as i32)
}

impl<'de> Deserialize<'de> for TodaData {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            data: Diagram,
        }
        let r = Raw::deserialize(de)?;
        TodaData::new(r.n, r.data).map_err(serde::de::Error::custom)
    }
}

/// Random complexes on the path and random strict arrows with exact zeros
/// off the path. The null-homotopies of the composites are all zero here.
pub fn random_toda_data(n: usize, p: u32, maxdim: usize, rng: &mut impl Rng) -> Result<TodaData> {
    if n < 3 {
        return Err(Error::Range(format!("Toda brackets need n ≥ 3, got {n}")));
    }
    let idx = Arc::new(toda_index(n));
    let mask = path_mask(n, &idx);
    let values = (0..idx.len())
        .map(|a| if mask[a] { ChainComplex::zero(p) } else { path_complex(n, p, maxdim, rng) })
        .collect();
    TodaData::new(n, random_arrows(p, idx, values, mask, rng))
}

/// Random data with contractible off-path values `cone(id)` and freely
/// sampled arrows. Arrows through the contractible values are nonzero
/// null-homotopies of the composites.
pub fn random_toda_data_homotopic(
    n: usize,
    p: u32,
    maxdim: usize,
    rng: &mut impl Rng,
) -> Result<TodaData> {
    if n < 3 {
        return Err(Error::Range(format!("Toda brackets need n ≥ 3, got {n}")));
    }
    let idx = Arc::new(toda_index(n));
    let mask = path_mask(n, &idx);
    let values = (0..idx.len())
        .map(|a| {
            let c = path_complex(n, p, maxdim, rng);
            if mask[a] {
                ChainMap::identity(&c).cone()
            } else {
                c
            }
        })
        .collect();
    TodaData::new(n, random_arrows(p, idx, values, vec![false; mask.len()], rng))
}

/// A bracket element: the constructed arrow and its identification with a
/// map `Σ^{n-2} x_n -> x_0`.
#[derive(Clone, Debug)]
pub struct TodaMorphism {
    /// The arrow between homotopy colimits, as a diagram over `[1]`.
    pub arrow: Diagram,
    pub class: HomClass,
    /// A chain map `Σ^{n-2} x_n -> x_0` with homology class `class`.
    pub map: ChainMap,
}

fn index(idx: &FinitePoset, label: &[i64]) -> Result<usize> {
    idx.index_of(label).ok_or_else(|| Error::Range(format!("{label:?} is not in the index")))
}

fn ones(m: usize) -> Vec<i64> {
    vec![1; m]
}

/// Assemble the class `target ∘ arrow ∘ corner ∘ source^{-1}`.
fn identify(
    source_cmp: &ChainMap,
    corner: &ChainMap,
    arrow: &ChainMap,
    target: &HomClass,
) -> Result<HomClass> {
    let source = HomClass::of(source_cmp).inverse()?;
    let class = source.then(&HomClass::of(corner))?.then(&HomClass::of(arrow))?.then(target)?;
    Ok(class)
}

/// `Toda_n = e* ∘ (ι × id)_! ∘ (d_1^{n-2} × id)_*`.
pub fn toda(x: &TodaData) -> Result<TodaMorphism> {
    let n = x.n;
    let m = n - 1;
    let big = Arc::new(FinitePoset::cube(m).product(&FinitePoset::chain(2)));
    let punct = Arc::new(big.subposet(|a| big.element(a)[..m] != ones(m)[..]));
    // The face with last cube coordinate 0 is a sieve of the punctured cube.
    let face = PosetMap::from_fn(x.data.index().clone(), punct.clone(), |e| {
        e[..m - 1].iter().copied().chain([0, e[m - 1]]).collect()
    })?;
    let z = extend_by_zero(&x.data, &face)?;
    let res = Resolution::new(&z);
    let ext = res.extend(&PosetMap::inclusion(punct.clone(), big.clone())?);
    let cmp = res.comparison();

    let at = |cube: &[i64], level: i64| -> Vec<i64> {
        cube.iter().copied().chain(std::iter::once(level)).collect()
    };
    let top0 = index(&big, &at(&ones(m), 0))?;
    let top2 = index(&big, &at(&ones(m), 2))?;
    let mut coatom = ones(m);
    coatom[m - 1] = 0;
    let c2 = index(&big, &at(&coatom, 2))?;
    let arrow = ext.chain_map(top0, top2)?;

    let level0 = PosetMap::from_fn(Arc::new(FinitePoset::cube(m)), big.clone(), |d| at(d, 0))?;
    let corner = corner_comparison(&ext.restrict(&level0)?)?;
    let bottom = index(&punct, &at(&vec![0; m], 0))?;
    let source_cmp = cmp.component(bottom).shift(n as i32 - 2);

    // Level 2 of the lkan: the coatom maps to the top by a qiso.
    let climb = HomClass::of(&ext.chain_map(c2, top2)?).inverse()?;
    let land = HomClass::of(&cmp.component(index(&punct, &at(&coatom, 2))?));
    let target = climb.then(&land)?;

    let class = identify(&source_cmp, &corner, &arrow, &target)?;
    Ok(TodaMorphism { arrow: Diagram::arrow_diagram(&arrow), map: class.realize(), class })
}

/// `γ* ∘ β_! ∘ α*` through `[1] × □^{n-2} × [2]` with `(0, ∞, 1)` and
/// `(0, ∞, 2)` removed.
pub fn toda_alt(x: &TodaData) -> Result<TodaMorphism> {
    let n = x.n;
    let m = n - 2;
    let big = Arc::new(
        FinitePoset::chain(1).product(&FinitePoset::cube(m)).product(&FinitePoset::chain(2)),
    );
    let at = |t: i64, cube: &[i64], level: i64| -> Vec<i64> {
        std::iter::once(t).chain(cube.iter().copied()).chain(std::iter::once(level)).collect()
    };
    let removed = [at(0, &ones(m), 1), at(0, &ones(m), 2)];
    let part = Arc::new(big.subposet(|a| !removed.contains(big.element(a))));
    let alpha = PosetMap::from_fn(part.clone(), x.data.index().clone(), |e| e[1..].to_vec())?;
    let pulled = x.data.restrict(&alpha)?;
    let res = Resolution::new(&pulled);
    let ext = res.extend(&PosetMap::inclusion(part.clone(), big.clone())?);
    let cmp = res.comparison();

    let from = index(&big, &at(0, &ones(m), 2))?;
    let to = index(&big, &at(1, &ones(m), 2))?;
    let arrow = ext.chain_map(from, to)?;

    // The cube {0} × □^{n-2} × {0, 2}: only its initial and final vertices
    // carry homology.
    let cube = PosetMap::from_fn(Arc::new(FinitePoset::cube(m + 1)), big.clone(), |d| {
        at(0, &d[..m], 2 * d[m])
    })?;
    let corner = corner_comparison(&ext.restrict(&cube)?)?;
    let source_cmp = cmp.component(index(&part, &at(0, &vec![0; m], 0))?).shift(n as i32 - 2);
    let target = HomClass::of(&cmp.component(index(&part, &at(1, &ones(m), 2))?));

    let class = identify(&source_cmp, &corner, &arrow, &target)?;
    Ok(TodaMorphism { arrow: Diagram::arrow_diagram(&arrow), map: class.realize(), class })
}

/// Per degree: the class lies in `u_1 ∘ Hom + Hom ∘ Σ^{n-2} u_n` iff it
/// maps `ker H(Σ^{n-2} u_n)` into `im H(u_1)`.
pub fn in_indeterminacy(x: &TodaData, class: &HomClass) -> Result<bool> {
    let src = x.bracket_source();
    if class.src != src || class.tgt != *x.x(0) {
        return Err(Error::Shape("class is not a map Σ^{n-2} x_n -> x_0".into()));
    }
    let u1 = HomClass::of(&x.u(1)?);
    let un = HomClass::of(&x.u(x.n)?.shift(x.n as i32 - 2));
    for i in class.degrees() {
        let image = u1.at(i);
        let moved = class.at(i).mul(&un.at(i).kernel());
        if image.hstack(&moved).rank() != image.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of a chain map `φ: Σ^{n-2} x_n -> x_0` in the indeterminacy
/// subspace, decided on its homology class.
pub fn indeterminacy_coset(x: &TodaData, phi: &ChainMap) -> Result<bool> {
    in_indeterminacy(x, &HomClass::of(phi))
}

/// A class outside the indeterminacy subspace, when one exists: a rank-one
/// map sending a kernel vector of `H(Σ^{n-2} u_n)` outside `im H(u_1)`.
pub fn outside_indeterminacy(x: &TodaData) -> Result<Option<HomClass>> {
    let src = x.bracket_source();
    let tgt = x.x(0).clone();
    let u1 = HomClass::of(&x.u(1)?);
    let un = HomClass::of(&x.u(x.n)?.shift(x.n as i32 - 2));
    let mut class = HomClass::zero(&src, &tgt);
    for i in class.degrees() {
        let image = u1.at(i);
        let ker = un.at(i).kernel();
        let rows = image.rows();
        if ker.cols() == 0 || image.rank() == rows {
            continue;
        }
        let full = FpMatrix::identity(x.p(), rows);
        let fresh = FpMatrix::extend_basis(&image.column_basis(), &full);
        let w = full.select_cols(&fresh[..1]);
        // A functional on H_i(src) that is 1 on the first kernel vector.
        let k0 = ker.select_cols(&[0]);
        let pivot = (0..k0.rows()).find(|&r| k0.get(r, 0) != 0).expect("nonzero kernel vector");
        let mut functional = FpMatrix::zeros(x.p(), 1, k0.rows());
        functional.set(0, pivot, crate::chain::inv_mod(k0.get(pivot, 0), x.p()));
        class.mats.insert(i, w.mul(&functional));
        return Ok(Some(class));
    }
    Ok(None)
}

/// `toda` and `toda_alt` agree modulo the indeterminacy subspace.
pub fn toda_routes_agree(x: &TodaData) -> Result<bool> {
    let a = toda(x)?;
    let b = toda_alt(x)?;
    in_indeterminacy(x, &a.class.sub(&b.class)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn path_points_for_three() {
        let pts: Vec<Label> = (0..=3).map(|i| toda_path_point(3, i)).collect();
        assert_eq!(pts, [vec![0, 0], vec![0, 1], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn zero_data_give_a_zero_class() {
        for n in [3, 4] {
            let x = TodaData::zero(n, 2).unwrap();
            let t = toda(&x).unwrap();
            assert!(t.class.is_zero());
            assert!(in_indeterminacy(&x, &t.class).unwrap());
        }
    }

    #[test]
    fn bracket_has_the_expected_source_and_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let x = random_toda_data_homotopic(4, 5, 2, &mut rng).unwrap();
            let t = toda(&x).unwrap();
            assert_eq!(t.class.src, x.bracket_source());
            assert_eq!(&t.class.tgt, x.x(0));
            assert_eq!(HomClass::of(&t.map), t.class);
        }
    }

    #[test]
    fn membership_separates_inside_from_outside() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut seen_outside = false;
        for _ in 0..40 {
            let x = random_toda_data(3, 2, 2, &mut rng).unwrap();
            let zero = HomClass::zero(&x.bracket_source(), x.x(0));
            assert!(in_indeterminacy(&x, &zero).unwrap());
            if let Some(c) = outside_indeterminacy(&x).unwrap() {
                assert!(!in_indeterminacy(&x, &c).unwrap());
                seen_outside = true;
            }
        }
        assert!(seen_outside, "no instance with a proper indeterminacy");
    }

    #[test]
    fn short_data_are_rejected() {
        assert!(matches!(TodaData::zero(2, 2), Err(Error::Range(_))));
    }
}
