//! Strict poset-indexed diagrams of chain complexes and their morphisms.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::chain::{
    cone, cone_functorial, cone_inclusion, random_complex, BlockSystem, ChainComplex, ChainMap,
    FpMatrix, GradedDims, GradedMap, Term,
};
use crate::error::{Error, Result};
use crate::homposet::{FinitePoset, PosetMap};

/// A strictly commutative functor from a finite poset to chain complexes.
///
/// Arrows are stored on covering pairs only; any `a ≤ b` is reached by
/// composing along a chain of covers, and strictness makes the result
/// independent of the chain. Elements flagged in `support` carry the zero
/// complex.
#[derive(Clone, Debug)]
pub struct Diagram {
    p: u32,
    index: Arc<FinitePoset>,
    values: Vec<ChainComplex>,
    arrows: BTreeMap<(usize, usize), GradedMap>,
    support: Vec<bool>,
}

/// Compare graded maps over the union of the relevant degree ranges.
pub(crate) fn maps_equal(f: &GradedMap, g: &GradedMap, src: &ChainComplex, tgt: &ChainComplex) -> bool {
    src.degrees().all(|i| f.comp_or_zero(i, src, tgt) == g.comp_or_zero(i, src, tgt))
}

impl Diagram {
    /// Build and validate: arrows are chain maps on every cover (missing
    /// arrows are zero), strictness holds, and support values are zero.
    pub fn new(
        p: u32,
        index: Arc<FinitePoset>,
        values: Vec<ChainComplex>,
        arrows: BTreeMap<(usize, usize), GradedMap>,
        support: Option<Vec<bool>>,
    ) -> Result<Self> {
        if values.len() != index.len() {
            return Err(Error::Shape(format!(
                "{} values for {} elements",
                values.len(),
                index.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_zero() && v.p() != p) {
            return Err(Error::Shape(format!("value over F_{} in a diagram over F_{p}", v.p())));
        }
        let covers = index.covers();
        for key in arrows.keys() {
            if covers.binary_search(key).is_err() {
                return Err(Error::Shape(format!("arrow {key:?} is not a covering pair")));
            }
        }
        let mut full = BTreeMap::new();
        for &(a, b) in &covers {
            let m = match arrows.get(&(a, b)) {
                Some(m) => m.clone(),
                None => GradedMap::zero(&values[a], &values[b]),
            };
            if !m.is_chain_map(&values[a], &values[b]) {
                return Err(Error::NotChain(format!(
                    "arrow {:?} -> {:?}",
                    index.element(a),
                    index.element(b)
                )));
            }
            full.insert((a, b), m);
        }
        let support = support.unwrap_or_else(|| vec![false; index.len()]);
        if support.len() != index.len() {
            return Err(Error::Shape("support mask has the wrong length".into()));
        }
        let d = Diagram { p, index, values, arrows: full, support };
        d.check_support()?;
        d.check_strict()?;
        Ok(d)
    }

    /// Assemble without validation; callers guarantee the invariants.
    pub(crate) fn from_parts(
        p: u32,
        index: Arc<FinitePoset>,
        values: Vec<ChainComplex>,
        arrows: BTreeMap<(usize, usize), GradedMap>,
        support: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(values.len(), index.len());
        Diagram { p, index, values, arrows, support }
    }

    pub fn zero(p: u32, index: Arc<FinitePoset>) -> Self {
        Self::constant(p, index, &ChainComplex::zero(p))
    }

    /// The constant diagram with identity arrows.
    pub fn constant(p: u32, index: Arc<FinitePoset>, c: &ChainComplex) -> Self {
        let arrows = index.covers().into_iter().map(|k| (k, GradedMap::identity(c))).collect();
        let n = index.len();
        Diagram { p, index, values: vec![c.clone(); n], arrows, support: vec![false; n] }
    }

    /// A single arrow `x -> y` over `[1]`.
    pub fn arrow_diagram(f: &ChainMap) -> Self {
        let index = Arc::new(FinitePoset::chain(1));
        let mut arrows = BTreeMap::new();
        arrows.insert((0, 1), f.map.clone());
        Diagram::from_parts(
            f.src.p(),
            index,
            vec![f.src.clone(), f.tgt.clone()],
            arrows,
            vec![false; 2],
        )
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn index(&self) -> &Arc<FinitePoset> {
        &self.index
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
    pub fn value(&self, a: usize) -> &ChainComplex {
        &self.values[a]
    }
    pub fn values(&self) -> &[ChainComplex] {
        &self.values
    }
    pub fn support(&self) -> &[bool] {
        &self.support
    }

    /// Value at a label.
    pub fn value_at(&self, label: &[i64]) -> Option<&ChainComplex> {
        self.index.index_of(label).map(|a| &self.values[a])
    }

    /// The stored arrow on a covering pair.
    pub fn cover_arrow(&self, a: usize, b: usize) -> &GradedMap {
        &self.arrows[&(a, b)]
    }

    pub fn cover_arrows(&self) -> &BTreeMap<(usize, usize), GradedMap> {
        &self.arrows
    }

    /// `X(a -> b)` for `a ≤ b`, composed along a chain of covers.
    pub fn map_between(&self, a: usize, b: usize) -> Result<GradedMap> {
        let path = self.index.cover_path(a, b).ok_or_else(|| {
            Error::Poset(format!(
                "{:?} is not below {:?}",
                self.index.element(a),
                self.index.element(b)
            ))
        })?;
        let mut m = GradedMap::identity(&self.values[a]);
        for w in path.windows(2) {
            m = m.then(&self.arrows[&(w[0], w[1])], &self.values[a], &self.values[w[0]], &self.values[w[1]]);
        }
        Ok(m)
    }

    pub fn chain_map(&self, a: usize, b: usize) -> Result<ChainMap> {
        Ok(ChainMap {
            src: self.values[a].clone(),
            tgt: self.values[b].clone(),
            map: self.map_between(a, b)?,
        })
    }

    /// Mark elements as required-zero; fails if a marked value is nonzero.
    pub fn with_support(mut self, support: Vec<bool>) -> Result<Self> {
        if support.len() != self.len() {
            return Err(Error::Shape("support mask has the wrong length".into()));
        }
        self.support = support;
        self.check_support()?;
        Ok(self)
    }

    pub fn check_support(&self) -> Result<()> {
        for (a, &s) in self.support.iter().enumerate() {
            if s && !self.values[a].is_zero() {
                return Err(Error::Support {
                    at: self.index.element(a).clone(),
                    reason: "support element carries a nonzero complex".into(),
                });
            }
        }
        Ok(())
    }

    /// Every pair of cover chains between the same endpoints composes to
    /// the same map.
    pub fn check_strict(&self) -> Result<()> {
        let n = self.len();
        let mut memo: BTreeMap<(usize, usize), GradedMap> = BTreeMap::new();
        for b in 0..n {
            for a in self.index.down_set(b) {
                let m = self.map_between(a, b)?;
                memo.insert((a, b), m);
            }
        }
        for b in 0..n {
            for &c in self.index.lower_covers(b) {
                for a in self.index.down_set(c) {
                    let via = memo[&(a, c)].then(
                        &self.arrows[&(c, b)],
                        &self.values[a],
                        &self.values[c],
                        &self.values[b],
                    );
                    if !maps_equal(&via, &memo[&(a, b)], &self.values[a], &self.values[b]) {
                        return Err(Error::Construction(format!(
                            "not strict: {:?} -> {:?} depends on the path",
                            self.index.element(a),
                            self.index.element(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Pullback `u*X` along `u: A -> index`.
    pub fn restrict(&self, u: &PosetMap) -> Result<Diagram> {
        if *u.tgt != *self.index {
            return Err(Error::Poset("restriction map does not land in the index".into()));
        }
        let values: Vec<ChainComplex> =
            (0..u.src.len()).map(|a| self.values[u.apply(a)].clone()).collect();
        let mut arrows = BTreeMap::new();
        for (a, b) in u.src.covers() {
            let (ua, ub) = (u.apply(a), u.apply(b));
            let m = if ua == ub {
                GradedMap::identity(&values[a])
            } else {
                self.map_between(ua, ub)?
            };
            arrows.insert((a, b), m);
        }
        let support = (0..u.src.len()).map(|a| self.support[u.apply(a)]).collect();
        Ok(Diagram::from_parts(self.p, u.src.clone(), values, arrows, support))
    }

    /// Restrict to a full subposet given by labels (must lie in the index).
    pub fn restrict_to(&self, sub: Arc<FinitePoset>) -> Result<Diagram> {
        let u = PosetMap::inclusion(sub, self.index.clone())?;
        self.restrict(&u)
    }

    /// Pointwise `Σ^j`.
    pub fn shift(&self, j: i32) -> Diagram {
        Diagram {
            p: self.p,
            index: self.index.clone(),
            values: self.values.iter().map(|v| v.shift(j)).collect(),
            arrows: self.arrows.iter().map(|(&k, m)| (k, m.shifted(j))).collect(),
            support: self.support.clone(),
        }
    }

    /// Pointwise linear dual, indexed by the opposite poset (negated labels).
    pub fn dual(&self) -> Diagram {
        let op = Arc::new(self.index.opposite());
        let neg = |e: &[i64]| -> Vec<i64> { e.iter().map(|x| -x).collect() };
        let to_op: Vec<usize> = (0..self.len())
            .map(|a| op.index_of(&neg(self.index.element(a))).expect("negated label"))
            .collect();
        let mut values = vec![ChainComplex::zero(self.p); self.len()];
        let mut support = vec![false; self.len()];
        for a in 0..self.len() {
            values[to_op[a]] = self.values[a].dual();
            support[to_op[a]] = self.support[a];
        }
        let arrows = self
            .arrows
            .iter()
            .map(|(&(a, b), m)| ((to_op[b], to_op[a]), m.dual(&self.values[a], &self.values[b])))
            .collect();
        Diagram { p: self.p, index: op, values, arrows, support }
    }

    /// Re-index along an isomorphism `u: A -> index`, i.e. `u*X`.
    pub fn transport(&self, u: &PosetMap) -> Result<Diagram> {
        if !u.is_bijective() {
            return Err(Error::Poset("transport needs an isomorphism".into()));
        }
        self.restrict(u)
    }

    pub fn is_pointwise_acyclic(&self) -> bool {
        self.values.iter().all(ChainComplex::is_acyclic)
    }

    /// Homology dims at every element and homology ranks of arrows.
    pub fn profile(&self) -> HomologyProfile {
        let dims = self.values.iter().map(ChainComplex::homology).collect();
        let pairs: Vec<(usize, usize)> = if self.len() <= 48 {
            (0..self.len())
                .flat_map(|b| self.index.down_set(b).into_iter().filter(move |&a| a != b).map(move |a| (a, b)))
                .collect()
        } else {
            self.index.covers()
        };
        let ranks = pairs
            .into_iter()
            .map(|(a, b)| {
                let m = self.map_between(a, b).expect("comparable");
                ((a, b), m.homology_ranks(&self.values[a], &self.values[b]))
            })
            .collect();
        HomologyProfile { labels: self.index.elements().to_vec(), dims, ranks }
    }

    /// Pointwise direct sum of two diagrams over the same index.
    pub fn direct_sum(&self, other: &Diagram) -> Result<Diagram> {
        if *self.index != *other.index {
            return Err(Error::Shape("direct sum over different indices".into()));
        }
        let values: Vec<ChainComplex> =
            self.values.iter().zip(&other.values).map(|(a, b)| a.direct_sum(b)).collect();
        let p = self.p;
        let arrows = self
            .arrows
            .keys()
            .map(|&(a, b)| {
                let (f, g) = (&self.arrows[&(a, b)], &other.arrows[&(a, b)]);
                let m = GradedMap::from_fn(&values[a], &values[b], |i| {
                    let fi = f.comp_or_zero(i, &self.values[a], &self.values[b]);
                    let gi = g.comp_or_zero(i, &other.values[a], &other.values[b]);
                    FpMatrix::from_blocks(
                        p,
                        &[self.values[b].dim(i), other.values[b].dim(i)],
                        &[self.values[a].dim(i), other.values[a].dim(i)],
                        &[(0, 0, &fi), (1, 1, &gi)],
                    )
                });
                ((a, b), m)
            })
            .collect();
        let support = self.support.iter().zip(&other.support).map(|(&x, &y)| x && y).collect();
        Ok(Diagram::from_parts(p, self.index.clone(), values, arrows, support))
    }
}

/// Level-(c) equivalence data: pointwise homology dims and arrow ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub labels: Vec<Vec<i64>>,
    pub dims: Vec<GradedDims>,
    #[serde(with = "rank_entries")]
    pub ranks: BTreeMap<(usize, usize), GradedDims>,
}

/// Arrow ranks keyed by element pairs, as a JSON list of
/// `{"from", "to", "ranks"}` objects (JSON keys must be strings).
pub(crate) mod rank_entries {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::chain::GradedDims;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        from: usize,
        to: usize,
        ranks: GradedDims,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<(usize, usize), GradedDims>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> = m.iter().map(|(&(from, to), r)| Entry { from, to, ranks: r.clone() }).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(usize, usize), GradedDims>, D::Error> {
        let v = Vec::<Entry>::deserialize(d)?;
        Ok(v.into_iter().map(|e| ((e.from, e.to), e.ranks)).collect())
    }
}

impl HomologyProfile {
    /// Compare modulo degrees where both sides vanish.
    pub fn agrees_with(&self, other: &HomologyProfile) -> bool {
        let clean = |g: &GradedDims| -> Vec<(i32, usize)> {
            g.0.iter().filter(|(_, &v)| v != 0).map(|(&k, &v)| (k, v)).collect()
        };
        self.labels == other.labels
            && self.dims.len() == other.dims.len()
            && self.dims.iter().zip(&other.dims).all(|(a, b)| clean(a) == clean(b))
            && self.ranks.len() == other.ranks.len()
            && self.ranks.iter().all(|(k, v)| other.ranks.get(k).is_some_and(|w| clean(v) == clean(w)))
    }

    /// The profile with every degree moved by `j`.
    pub fn shifted(&self, j: i32) -> HomologyProfile {
        HomologyProfile {
            labels: self.labels.clone(),
            dims: self.dims.iter().map(|d| d.shifted(j)).collect(),
            ranks: self.ranks.iter().map(|(&k, v)| (k, v.shifted(j))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(GradedDims::is_zero)
    }
}

/// A morphism of diagrams over a common index.
#[derive(Clone, Debug)]
pub struct NatMap {
    pub src: Diagram,
    pub tgt: Diagram,
    pub comps: Vec<GradedMap>,
}

impl NatMap {
    /// Validate chain-map components and naturality on covers.
    pub fn new(src: Diagram, tgt: Diagram, comps: Vec<GradedMap>) -> Result<Self> {
        let m = NatMap { src, tgt, comps };
        m.check()?;
        Ok(m)
    }

    pub(crate) fn from_parts(src: Diagram, tgt: Diagram, comps: Vec<GradedMap>) -> Self {
        NatMap { src, tgt, comps }
    }

    pub fn identity(x: &Diagram) -> Self {
        let comps = x.values.iter().map(GradedMap::identity).collect();
        NatMap { src: x.clone(), tgt: x.clone(), comps }
    }

    pub fn check(&self) -> Result<()> {
        let (s, t) = (&self.src, &self.tgt);
        if *s.index != *t.index || self.comps.len() != s.len() {
            return Err(Error::Shape("natural map between different indices".into()));
        }
        for a in 0..s.len() {
            if !self.comps[a].is_chain_map(&s.values[a], &t.values[a]) {
                return Err(Error::NotChain(format!("component at {:?}", s.index.element(a))));
            }
        }
        for &(a, b) in s.arrows.keys() {
            let lhs = s.arrows[&(a, b)].then(&self.comps[b], &s.values[a], &s.values[b], &t.values[b]);
            let rhs = self.comps[a].then(&t.arrows[&(a, b)], &s.values[a], &t.values[a], &t.values[b]);
            if !maps_equal(&lhs, &rhs, &s.values[a], &t.values[b]) {
                return Err(Error::Construction(format!(
                    "naturality fails on {:?} -> {:?}",
                    s.index.element(a),
                    s.index.element(b)
                )));
            }
        }
        Ok(())
    }

    pub fn component(&self, a: usize) -> ChainMap {
        ChainMap {
            src: self.src.values[a].clone(),
            tgt: self.tgt.values[a].clone(),
            map: self.comps[a].clone(),
        }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &NatMap) -> NatMap {
        let comps = (0..self.src.len())
            .map(|a| {
                self.comps[a].then(&g.comps[a], &self.src.values[a], &self.tgt.values[a], &g.tgt.values[a])
            })
            .collect();
        NatMap { src: self.src.clone(), tgt: g.tgt.clone(), comps }
    }

    /// Pointwise cone, a diagram over the same index.
    pub fn cone(&self) -> Diagram {
        let (s, t) = (&self.src, &self.tgt);
        let values: Vec<ChainComplex> =
            (0..s.len()).map(|a| cone(&s.values[a], &t.values[a], &self.comps[a])).collect();
        let arrows = s
            .arrows
            .keys()
            .map(|&(a, b)| {
                let m = cone_functorial(
                    (&s.values[a], &t.values[a], &self.comps[a]),
                    (&s.values[b], &t.values[b], &self.comps[b]),
                    &s.arrows[&(a, b)],
                    &t.arrows[&(a, b)],
                    &self.comps[a],
                );
                ((a, b), m)
            })
            .collect();
        Diagram::from_parts(s.p, s.index.clone(), values, arrows, vec![false; s.len()])
    }

    /// The inclusion of the target into the pointwise cone.
    pub fn cone_inclusion(&self) -> NatMap {
        let c = self.cone();
        let comps = (0..self.src.len())
            .map(|a| cone_inclusion(&self.src.values[a], &self.tgt.values[a], &self.comps[a]))
            .collect();
        NatMap { src: self.tgt.clone(), tgt: c, comps }
    }

    pub fn is_pointwise_qiso(&self) -> bool {
        (0..self.src.len()).all(|a| self.component(a).is_qiso())
    }
}

/// A random strict diagram.
///
/// Values are random complexes in degrees `0..=maxdeg` (zero on `support`);
/// arrows into each element are sampled from the linear space of chain maps
/// compatible with the arrows already chosen below it.
pub fn random_diagram(
    p: u32,
    index: Arc<FinitePoset>,
    maxdeg: i32,
    maxdim: usize,
    support: Option<Vec<bool>>,
    rng: &mut impl Rng,
) -> Diagram {
    let n = index.len();
    let support = support.unwrap_or_else(|| vec![false; n]);
    let values: Vec<ChainComplex> = (0..n)
        .map(|a| {
            if support[a] {
                ChainComplex::zero(p)
            } else {
                random_complex(p, maxdeg, maxdim, rng)
            }
        })
        .collect();
    random_arrows(p, index, values, support, rng)
}

/// Random strict arrows for prescribed values.
pub fn random_arrows(
    p: u32,
    index: Arc<FinitePoset>,
    values: Vec<ChainComplex>,
    support: Vec<bool>,
    rng: &mut impl Rng,
) -> Diagram {
    let n = index.len();
    let mut arrows: BTreeMap<(usize, usize), GradedMap> = BTreeMap::new();
    // Composites from every a ≤ c, for c already processed.
    let mut below: Vec<BTreeMap<usize, GradedMap>> = vec![BTreeMap::new(); n];
    let lo = values.iter().filter(|v| !v.is_zero()).map(|v| v.lo()).min().unwrap_or(0) - 1;
    let hi = values.iter().filter(|v| !v.is_zero()).map(|v| v.hi()).max().unwrap_or(0) + 1;
    for b in 0..n {
        let covers: Vec<usize> = index.lower_covers(b).to_vec();
        let y = &values[b];
        let mut sys = BlockSystem::new(p);
        // Unknown blocks: component i of the arrow c -> b for each lower cover c.
        let mut blocks: BTreeMap<(usize, i32), usize> = BTreeMap::new();
        for &c in &covers {
            for i in lo..=hi {
                blocks.insert((c, i), sys.block(y.dim(i), values[c].dim(i)));
            }
        }
        let mut owned: Vec<(usize, FpMatrix, FpMatrix, usize, FpMatrix, FpMatrix)> = Vec::new();
        for &c in &covers {
            let x = &values[c];
            for i in lo + 1..=hi {
                // d_Y f_i - f_{i-1} d_X = 0.
                owned.push((
                    blocks[&(c, i)],
                    y.d(i),
                    FpMatrix::identity(p, x.dim(i)),
                    blocks[&(c, i - 1)],
                    FpMatrix::identity(p, y.dim(i - 1)).neg(),
                    x.d(i),
                ));
            }
        }
        for (b1, l1, r1, b2, l2, r2) in &owned {
            if l1.rows() > 0 && r1.cols() > 0 {
                sys.equation(&[
                    Term { block: *b1, left: l1, right: r1 },
                    Term { block: *b2, left: l2, right: r2 },
                ]);
            }
        }
        // Strictness against every maximal common lower bound of two covers.
        let mut strict: Vec<(usize, FpMatrix, usize, FpMatrix, FpMatrix)> = Vec::new();
        for (ix, &c1) in covers.iter().enumerate() {
            for &c2 in &covers[ix + 1..] {
                let common: Vec<usize> =
                    (0..n).filter(|&a| index.leq(a, c1) && index.leq(a, c2)).collect();
                let maximal: Vec<usize> = common
                    .iter()
                    .copied()
                    .filter(|&a| !common.iter().any(|&a2| a2 != a && index.leq(a, a2)))
                    .collect();
                for a in maximal {
                    for i in lo..=hi {
                        let m1 = below[c1][&a].comp_or_zero(i, &values[a], &values[c1]);
                        let m2 = below[c2][&a].comp_or_zero(i, &values[a], &values[c2]).neg();
                        let id = FpMatrix::identity(p, y.dim(i));
                        strict.push((blocks[&(c1, i)], m1, blocks[&(c2, i)], m2, id));
                    }
                }
            }
        }
        for (b1, r1, b2, r2, left) in &strict {
            if left.rows() > 0 && r1.cols() > 0 {
                sys.equation(&[
                    Term { block: *b1, left, right: r1 },
                    Term { block: *b2, left, right: r2 },
                ]);
            }
        }
        let sol = sys.sample(rng);
        for &c in &covers {
            let x = &values[c];
            let comps: BTreeMap<i32, FpMatrix> =
                (lo..=hi).map(|i| (i, sol[blocks[&(c, i)]].clone())).collect();
            let m = GradedMap::from_fn(x, y, |i| {
                comps.get(&i).cloned().unwrap_or_else(|| FpMatrix::zeros(p, y.dim(i), x.dim(i)))
            });
            arrows.insert((c, b), m);
        }
        // Record composites from everything below b.
        let mut mine = BTreeMap::new();
        mine.insert(b, GradedMap::identity(y));
        for a in index.down_set(b) {
            if a == b {
                continue;
            }
            let c = *covers.iter().find(|&&c| index.leq(a, c)).expect("a < b passes a cover");
            let m = below[c][&a].then(&arrows[&(c, b)], &values[a], &values[c], y);
            mine.insert(a, m);
        }
        below[b] = mine;
    }
    Diagram::from_parts(p, index, values, arrows, support)
}

// Serialized form: the index poset, values, one record per covering pair
// with the row-major component matrices over the source's degree range, and
// the support mask.
#[derive(Serialize, Deserialize)]
struct ArrowJson {
    from: usize,
    to: usize,
    comps: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    p: u32,
    index: FinitePoset,
    values: Vec<ChainComplex>,
    arrows: Vec<ArrowJson>,
    support: Vec<bool>,
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let arrows = self
            .arrows
            .iter()
            .map(|(&(a, b), m)| {
                let (x, y) = (&self.values[a], &self.values[b]);
                let comps = x.degrees().map(|i| m.comp_or_zero(i, x, y).data().to_vec()).collect();
                ArrowJson { from: a, to: b, comps }
            })
            .collect();
        DiagramJson {
            p: self.p,
            index: (*self.index).clone(),
            values: self.values.clone(),
            arrows,
            support: self.support.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = DiagramJson::deserialize(de)?;
        if j.values.len() != j.index.len() {
            return Err(D::Error::custom("one value per index element is required"));
        }
        let mut arrows = BTreeMap::new();
        for (r, a) in j.arrows.into_iter().enumerate() {
            let (x, y) = match (j.values.get(a.from), j.values.get(a.to)) {
                (Some(x), Some(y)) => (x, y),
                _ => return Err(D::Error::custom(format!("arrows[{r}]: endpoint out of range"))),
            };
            let degs: Vec<i32> = x.degrees().collect();
            if a.comps.len() != degs.len() {
                return Err(D::Error::custom(format!(
                    "arrows[{r}]: expected {} components",
                    degs.len()
                )));
            }
            let mut mats = Vec::with_capacity(degs.len());
            for (&i, data) in degs.iter().zip(a.comps) {
                let m = FpMatrix::from_data(j.p, y.dim(i), x.dim(i), data)
                    .map_err(|e| D::Error::custom(format!("arrows[{r}] degree {i}: {e}")))?;
                mats.push(m);
            }
            let lo = x.lo();
            let m = GradedMap::from_fn(x, y, |i| mats[(i - lo) as usize].clone());
            if arrows.insert((a.from, a.to), m).is_some() {
                return Err(D::Error::custom(format!("arrows[{r}]: duplicate arrow")));
            }
        }
        Diagram::new(j.p, Arc::new(j.index), j.values, arrows, Some(j.support))
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_diagrams_are_strict() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2, 5] {
            let idx = Arc::new(FinitePoset::cube(3));
            let d = random_diagram(p, idx.clone(), 2, 2, None, &mut rng);
            d.check_strict().unwrap();
            let rebuilt =
                Diagram::new(p, idx, d.values.clone(), d.arrows.clone(), None).unwrap();
            assert_eq!(rebuilt.len(), 8);
        }
    }

    #[test]
    fn restrict_along_face_composes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let idx = Arc::new(FinitePoset::chain(2));
        let x = random_diagram(5, idx.clone(), 1, 2, None, &mut rng);
        let face = PosetMap::from_fn(Arc::new(FinitePoset::chain(1)), idx, |e| vec![2 * e[0]]).unwrap();
        let r = x.restrict(&face).unwrap();
        let direct = x.map_between(0, 2).unwrap();
        assert!(maps_equal(r.cover_arrow(0, 1), &direct, x.value(0), x.value(2)));
    }

    #[test]
    fn dual_is_involutive_on_profiles() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = random_diagram(3, Arc::new(FinitePoset::cube(2)), 2, 2, None, &mut rng);
        let back = x.dual().dual();
        assert!(back.profile().agrees_with(&x.profile()));
    }
}
