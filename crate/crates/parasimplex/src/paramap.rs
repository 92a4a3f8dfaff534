//! Morphisms of the parasimplex 2-category.
//!
//! A morphism `Λ_k -> Λ_n` is a monotone map `Z -> Z` commuting with the
//! shifts `λ ↦ λ + k + 1` and `μ ↦ μ + n + 1`. It is determined by its
//! values on `0..=k`, which is how [`ParaMap`] stores it. The 2-cells are the
//! pointwise order on coordinates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest object index accepted anywhere in the crate.
pub const MAX_INDEX: usize = 1 << 20;

/// A morphism `Λ_k -> Λ_n` stored by its coordinates `f(0), …, f(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParaMap {
    k: usize,
    n: usize,
    coords: Vec<i64>,
}

/// Which of the three commuting symmetries of a hom-poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    /// Post-composition with the translation of the codomain.
    S1,
    /// Pre-composition with the translation of the domain.
    S2,
    /// `s1^{-1} ∘ s2`.
    S3,
}

/// A monotone map `[k] -> [n]` of the simplex category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplexMap {
    pub k: usize,
    pub n: usize,
    pub values: Vec<usize>,
}

/// The generating morphisms of the parasimplex category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// Translation `t: Λ_m -> Λ_m`.
    T,
    /// Inverse translation.
    TInv,
    /// First face `d_0: Λ_m -> Λ_{m+1}`.
    D0,
    /// First degeneracy `s_0: Λ_{m+1} -> Λ_m`.
    S0,
}

/// A generator together with its domain and codomain object indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub gen: Generator,
    pub dom: usize,
    pub cod: usize,
}

/// A composable word of generators, listed in order of application.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GeneratorWord {
    pub dom: usize,
    pub tokens: Vec<Token>,
}

impl fmt::Display for ParaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ_{}→Λ_{} (", self.k, self.n)?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl ParaMap {
    /// Validate coordinates for a morphism `Λ_k -> Λ_n`.
    pub fn from_coords(n: usize, k: usize, coords: Vec<i64>) -> Result<Self> {
        let bad = |reason: String| Error::Admissibility { n, coords: coords.clone(), reason };
        if n > MAX_INDEX || k > MAX_INDEX {
            return Err(bad(format!("object index exceeds {MAX_INDEX}")));
        }
        if coords.len() != k + 1 {
            return Err(bad(format!("expected {} coordinates", k + 1)));
        }
        if let Some(i) = coords.windows(2).position(|w| w[0] > w[1]) {
            return Err(bad(format!("f({i}) > f({})", i + 1)));
        }
        let wrap = coords[0].checked_add(n as i64 + 1).ok_or_else(|| bad("overflow".into()))?;
        if coords[k] > wrap {
            return Err(bad(format!("f({k}) > f(0) + {}", n + 1)));
        }
        Ok(ParaMap { k, n, coords })
    }

    fn raw(n: usize, k: usize, coords: Vec<i64>) -> Self {
        debug_assert!(Self::from_coords(n, k, coords.clone()).is_ok(), "{coords:?} into Λ_{n}");
        ParaMap { k, n, coords }
    }

    pub fn k(&self) -> usize {
        self.k
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn identity(n: usize) -> Self {
        Self::raw(n, n, (0..=n as i64).collect())
    }

    /// Translation `t: Λ_n -> Λ_n`, `λ ↦ λ + 1`, raised to `power`.
    pub fn translation(n: usize, power: i64) -> Self {
        Self::raw(n, n, (0..=n as i64).map(|i| i + power).collect())
    }

    /// Value at any integer, by equivariance.
    pub fn eval(&self, lambda: i64) -> i64 {
        let period = self.k as i64 + 1;
        let q = lambda.div_euclid(period);
        let r = lambda.rem_euclid(period) as usize;
        self.coords[r] + q * (self.n as i64 + 1)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ParaMap) -> Result<ParaMap> {
        g.compose(self)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ParaMap) -> Result<ParaMap> {
        if f.n != self.k {
            return Err(Error::Domain(format!(
                "codomain Λ_{} of the inner map differs from domain Λ_{} of the outer map",
                f.n, self.k
            )));
        }
        let coords = (0..=f.k as i64).map(|i| self.eval(f.eval(i))).collect();
        Ok(Self::raw(self.n, f.k, coords))
    }

    /// The smallest `λ` with `μ ≤ f(λ)`.
    fn least_above(&self, mu: i64) -> i64 {
        let (period, step) = (self.k as i64 + 1, self.n as i64 + 1);
        // f(q·period) = f(0) + q·step, so this block already reaches μ.
        let q = (mu - self.coords[0]).div_euclid(step) + 1;
        let mut lam = q * period;
        debug_assert!(self.eval(lam) >= mu);
        while self.eval(lam - 1) >= mu {
            lam -= 1;
        }
        lam
    }

    /// The largest `λ` with `f(λ) ≤ μ`.
    fn greatest_below(&self, mu: i64) -> i64 {
        let (period, step) = (self.k as i64 + 1, self.n as i64 + 1);
        let q = (mu - self.coords[self.k]).div_euclid(step) - 1;
        let mut lam = q * period + self.k as i64;
        debug_assert!(self.eval(lam) <= mu);
        while self.eval(lam + 1) <= mu {
            lam += 1;
        }
        lam
    }

    /// The left adjoint `Λ_n -> Λ_k`: `μ ↦ min{λ | μ ≤ f(λ)}`.
    pub fn left_adjoint(&self) -> ParaMap {
        let coords = (0..=self.n as i64).map(|mu| self.least_above(mu)).collect();
        Self::raw(self.k, self.n, coords)
    }

    /// The right adjoint `Λ_n -> Λ_k`: `μ ↦ max{λ | f(λ) ≤ μ}`.
    pub fn right_adjoint(&self) -> ParaMap {
        let coords = (0..=self.n as i64).map(|mu| self.greatest_below(mu)).collect();
        Self::raw(self.k, self.n, coords)
    }

    /// Apply `which^power`.
    pub fn symmetry(&self, which: Symmetry, power: i64) -> ParaMap {
        match which {
            Symmetry::S1 => self.shift_all(power),
            Symmetry::S2 => self.rotate(power),
            Symmetry::S3 => self.rotate(power).shift_all(-power),
        }
    }

    pub fn s1(&self) -> ParaMap {
        self.symmetry(Symmetry::S1, 1)
    }
    pub fn s2(&self) -> ParaMap {
        self.symmetry(Symmetry::S2, 1)
    }
    pub fn s3(&self) -> ParaMap {
        self.symmetry(Symmetry::S3, 1)
    }

    fn shift_all(&self, by: i64) -> ParaMap {
        Self::raw(self.n, self.k, self.coords.iter().map(|c| c + by).collect())
    }

    /// `f ∘ t^power`: coordinates `f(power), …, f(power + k)`.
    fn rotate(&self, power: i64) -> ParaMap {
        let coords = (0..=self.k as i64).map(|i| self.eval(i + power)).collect();
        Self::raw(self.n, self.k, coords)
    }

    /// The duality `D`: coordinates `n - f(k - i)`.
    pub fn duality(&self) -> ParaMap {
        let n = self.n as i64;
        let coords = (0..=self.k).rev().map(|i| n - self.coords[i]).collect();
        Self::raw(self.n, self.k, coords)
    }

    /// `ad = D ∘ r = l ∘ D`.
    pub fn ad(&self) -> ParaMap {
        self.right_adjoint().duality()
    }

    /// Pointwise order: the 2-cells of the hom-poset.
    pub fn leq(&self, other: &ParaMap) -> bool {
        self.k == other.k
            && self.n == other.n
            && self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// Injective iff `f(0) < … < f(k) < f(0) + n + 1`.
    pub fn is_injective(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] < w[1])
            && self.coords[self.k] < self.coords[0] + self.n as i64 + 1
    }

    /// The isomorphism onto the injective maps `Λ_k -> Λ_{n+k+1}`:
    /// `(f_0, f_1 + 1, …, f_k + k)`.
    pub fn inj_iso(&self) -> ParaMap {
        let coords = self.coords.iter().enumerate().map(|(i, c)| c + i as i64).collect();
        Self::raw(self.n + self.k + 1, self.k, coords)
    }

    /// Inverse of [`ParaMap::inj_iso`] on injective maps.
    pub fn inj_iso_inverse(&self) -> Result<ParaMap> {
        if !self.is_injective() || self.n < self.k + 1 {
            return Err(Error::Range(format!("{self} is not in the image of inj_iso")));
        }
        let coords = self.coords.iter().enumerate().map(|(i, c)| c - i as i64).collect();
        ParaMap::from_coords(self.n - self.k - 1, self.k, coords)
    }

    /// The unique `l` and simplex map `g` with `f = s2^l ∘ i(g)`.
    pub fn shift_decompose(&self) -> (i64, SimplexMap) {
        let (n, k) = (self.n as i64, self.k as i64);
        // g = s2^{-l} f has coordinates f(m), …, f(m + k) with m = -l, and a
        // simplex map needs 0 ≤ f(m) and f(m + k) ≤ n. Scan around the block
        // where f first becomes nonnegative.
        let centre = (-self.coords[0]).div_euclid(n + 1) * (k + 1);
        for m in (centre - 2 * (k + 1))..=(centre + 2 * (k + 1)) {
            let g: Vec<i64> = (0..=k).map(|i| self.eval(i + m)).collect();
            if g[0] >= 0 && g[k as usize] <= n {
                let values = g.into_iter().map(|x| x as usize).collect();
                return (-m, SimplexMap { k: self.k, n: self.n, values });
            }
        }
        unreachable!("every parasimplex map has a shift decomposition")
    }

    /// Structural face (`d_i: Λ_n -> Λ_{n+1}`) or degeneracy
    /// (`s_i: Λ_{n+1} -> Λ_n`) for any `i ∈ Z`, by `t`-conjugation outside
    /// the simplicial range.
    pub fn structural(n: usize, kind: StructuralKind, i: i64) -> ParaMap {
        match kind {
            StructuralKind::Face => {
                let base = |i: i64| {
                    let coords =
                        (0..=n as i64).map(|j| if j < i { j } else { j + 1 }).collect();
                    Self::raw(n + 1, n, coords)
                };
                if (0..=n as i64 + 1).contains(&i) {
                    base(i)
                } else {
                    conjugate(&base(0), i)
                }
            }
            StructuralKind::Degeneracy => {
                let base = |i: i64| {
                    let coords =
                        (0..=n as i64 + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
                    Self::raw(n, n + 1, coords)
                };
                if (0..=n as i64).contains(&i) {
                    base(i)
                } else {
                    conjugate(&base(0), i)
                }
            }
        }
    }

    /// Split into generators `t^{±1}`, `d_0`, `s_0`, in application order.
    pub fn generator_decompose(&self) -> GeneratorWord {
        let (l, g) = self.shift_decompose();
        let mut word = GeneratorWord { dom: self.k, tokens: Vec::new() };
        // f = i(g) ∘ t^l on Λ_k.
        word.push_translation(self.k, l);
        let (epis, monos) = g.factor();
        for j in epis {
            // s_j: Λ_{m+1} -> Λ_m equals t^j s_0 t^{-j}.
            let m = word.cod() - 1;
            word.push_translation(m + 1, -j);
            word.push(Generator::S0, m + 1, m);
            word.push_translation(m, j);
        }
        for i in monos {
            let m = word.cod();
            word.push_translation(m, -i);
            word.push(Generator::D0, m, m + 1);
            word.push_translation(m + 1, i);
        }
        word.simplify();
        word
    }
}

fn conjugate(base: &ParaMap, i: i64) -> ParaMap {
    let inner = ParaMap::translation(base.k, -i);
    let outer = ParaMap::translation(base.n, i);
    outer.compose(&base.compose(&inner).expect("arity")).expect("arity")
}

/// Kinds of structural morphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructuralKind {
    Face,
    Degeneracy,
}

impl SimplexMap {
    pub fn new(k: usize, n: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != k + 1 || values.windows(2).any(|w| w[0] > w[1]) || values[k] > n {
            return Err(Error::Input(format!("{values:?} is not a monotone map [{k}] -> [{n}]")));
        }
        Ok(SimplexMap { k, n, values })
    }

    pub fn identity(n: usize) -> Self {
        SimplexMap { k: n, n, values: (0..=n).collect() }
    }

    /// `self ∘ h`.
    pub fn compose(&self, h: &SimplexMap) -> Result<SimplexMap> {
        if h.n != self.k {
            return Err(Error::Domain("simplex maps do not compose".into()));
        }
        Ok(SimplexMap { k: h.k, n: self.n, values: h.values.iter().map(|&v| self.values[v]).collect() })
    }

    /// The embedding into the parasimplex category.
    pub fn embed(&self) -> ParaMap {
        ParaMap::raw(self.n, self.k, self.values.iter().map(|&v| v as i64).collect())
    }

    /// Epi-mono factorization as degeneracy indices followed by face indices,
    /// each listed in application order.
    pub fn factor(&self) -> (Vec<i64>, Vec<i64>) {
        // Degeneracies: collapse repeated values from the top down.
        let mut epis = Vec::new();
        for j in (0..self.k).rev() {
            if self.values[j] == self.values[j + 1] {
                epis.push(j as i64);
            }
        }
        // Faces: insert the missing values in increasing order.
        let image: std::collections::BTreeSet<usize> = self.values.iter().copied().collect();
        let monos = (0..=self.n).filter(|v| !image.contains(v)).map(|v| v as i64).collect();
        (epis, monos)
    }
}

impl GeneratorWord {
    pub fn cod(&self) -> usize {
        self.tokens.last().map_or(self.dom, |t| t.cod)
    }

    fn push(&mut self, gen: Generator, dom: usize, cod: usize) {
        debug_assert_eq!(dom, self.cod());
        self.tokens.push(Token { gen, dom, cod });
    }

    fn push_translation(&mut self, m: usize, power: i64) {
        let gen = if power >= 0 { Generator::T } else { Generator::TInv };
        for _ in 0..power.unsigned_abs() {
            self.push(gen, m, m);
        }
    }

    /// Cancel adjacent `t`, `t⁻¹` pairs.
    fn simplify(&mut self) {
        let mut out: Vec<Token> = Vec::with_capacity(self.tokens.len());
        for tok in self.tokens.drain(..) {
            let cancels = matches!(
                (out.last().map(|t| t.gen), tok.gen),
                (Some(Generator::T), Generator::TInv) | (Some(Generator::TInv), Generator::T)
            );
            if cancels {
                out.pop();
            } else {
                out.push(tok);
            }
        }
        self.tokens = out;
    }

    /// Compose the word back into a single morphism.
    pub fn recompose(&self) -> ParaMap {
        self.tokens.iter().fold(ParaMap::identity(self.dom), |acc, tok| {
            let step = match tok.gen {
                Generator::T => ParaMap::translation(tok.dom, 1),
                Generator::TInv => ParaMap::translation(tok.dom, -1),
                Generator::D0 => ParaMap::structural(tok.dom, StructuralKind::Face, 0),
                Generator::S0 => ParaMap::structural(tok.cod, StructuralKind::Degeneracy, 0),
            };
            step.compose(&acc).expect("adjacent tokens compose")
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

impl<'de> Deserialize<'de> for ParaMap {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            k: usize,
            n: usize,
            coords: Vec<i64>,
        }
        let r = Raw::deserialize(de)?;
        ParaMap::from_coords(r.n, r.k, r.coords).map_err(|e| serde::de::Error::custom(format!("coords: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(n: usize, k: usize, c: &[i64]) -> ParaMap {
        ParaMap::from_coords(n, k, c.to_vec()).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(ParaMap::from_coords(2, 2, vec![0, 1, 2]).is_ok());
        assert!(ParaMap::from_coords(4, 2, vec![0, 1, 2]).is_ok());
        assert!(ParaMap::from_coords(1, 1, vec![1, 0]).is_err());
        assert!(ParaMap::from_coords(1, 1, vec![0, 3]).is_err());
    }

    #[test]
    fn evaluation() {
        assert_eq!(ParaMap::identity(2).eval(5), 5);
        let f = pm(4, 2, &[0, 1, 2]);
        assert_eq!(f.eval(3), 5);
        assert_eq!(f.eval(-1), -3);
    }

    #[test]
    fn symmetry_examples() {
        let xi = pm(4, 2, &[0, 1, 2]);
        assert_eq!(xi.s2(), pm(4, 2, &[1, 2, 5]));
        assert_eq!(xi.s3(), pm(4, 2, &[0, 1, 4]));
        assert_eq!(xi.symmetry(Symmetry::S1, 0), xi);
    }

    #[test]
    fn duality_examples() {
        assert_eq!(pm(2, 2, &[0, 1, 2]).duality(), pm(2, 2, &[0, 1, 2]));
        assert_eq!(pm(2, 2, &[0, 0, 0]).duality(), pm(2, 2, &[2, 2, 2]));
    }

    #[test]
    fn adjoint_examples() {
        let d0 = ParaMap::structural(3, StructuralKind::Face, 0);
        let s0 = ParaMap::structural(3, StructuralKind::Degeneracy, 0);
        assert_eq!(d0.left_adjoint(), s0);
        assert_eq!(ParaMap::translation(3, 1).left_adjoint(), ParaMap::translation(3, -1));
    }

    #[test]
    fn face_degeneracy_identity() {
        let d0 = ParaMap::structural(1, StructuralKind::Face, 0);
        let s0 = ParaMap::structural(1, StructuralKind::Degeneracy, 0);
        assert_eq!(s0.compose(&d0).unwrap(), ParaMap::identity(1));
        // s_2: Λ_2 -> Λ_1 is not simplicial but exists.
        let s2 = ParaMap::structural(1, StructuralKind::Degeneracy, 2);
        assert_eq!(s2.k(), 2);
        assert_eq!(s2.n(), 1);
    }

    #[test]
    fn injectivity() {
        assert_eq!(pm(2, 2, &[0, 0, 0]).inj_iso(), pm(5, 2, &[0, 1, 2]));
        assert!(ParaMap::identity(3).is_injective());
        assert!(!pm(3, 1, &[0, 0]).is_injective());
    }

    #[test]
    fn shift_decomposition_example() {
        let (l, g) = pm(4, 2, &[1, 2, 5]).shift_decompose();
        assert_eq!(l, 1);
        assert_eq!(g.values, vec![0, 1, 2]);
    }

    #[test]
    fn ad_of_constant_zero() {
        assert_eq!(pm(3, 2, &[0, 0, 0]).ad(), pm(2, 3, &[0, 0, 0, 0]));
        assert_eq!(pm(3, 2, &[0, 0, 0]).duality().left_adjoint(), pm(2, 3, &[0, 0, 0, 0]));
    }

    #[test]
    fn empty_word_for_identity() {
        assert!(ParaMap::identity(3).generator_decompose().is_empty());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    /// Admissible maps `Λ_k -> Λ_n` with `n, k ≤ 6` and `f(0)` anywhere in
    /// a few periods.
    fn para_map() -> impl Strategy<Value = ParaMap> {
        (0usize..=6, 0usize..=6).prop_flat_map(|(n, k)| {
            (-20i64..20, proptest::collection::vec(0..=n as i64 + 1, k)).prop_map(move |(f0, mut steps)| {
                steps.sort_unstable();
                let coords = std::iter::once(f0).chain(steps.iter().map(|s| f0 + s)).collect();
                ParaMap::from_coords(n, k, coords).expect("sorted offsets within a period")
            })
        })
    }

    /// Maps `Λ_j -> Λ_k` for the domain of `f`, paired with `f`.
    fn composable() -> impl Strategy<Value = (ParaMap, ParaMap)> {
        para_map().prop_flat_map(|f| {
            let k = f.k();
            (0usize..=6, -10i64..10).prop_flat_map(move |(j, g0)| {
                let f = f.clone();
                proptest::collection::vec(0..=k as i64 + 1, j).prop_map(move |mut steps| {
                    steps.sort_unstable();
                    let coords = std::iter::once(g0).chain(steps.iter().map(|s| g0 + s)).collect();
                    (f.clone(), ParaMap::from_coords(k, j, coords).expect("admissible"))
                })
            })
        })
    }

    proptest! {
        #[test]
        fn equivariant(f in para_map(), lam in -50i64..50) {
            prop_assert_eq!(f.eval(lam + f.k() as i64 + 1), f.eval(lam) + f.n() as i64 + 1);
        }

        #[test]
        fn adjunctions(f in para_map(), lam in -30i64..30, mu in -30i64..30) {
            // l(f)(μ) ≤ λ iff μ ≤ f(λ); f(λ) ≤ μ iff λ ≤ r(f)(μ).
            prop_assert_eq!(f.left_adjoint().eval(mu) <= lam, mu <= f.eval(lam));
            prop_assert_eq!(f.eval(lam) <= mu, lam <= f.right_adjoint().eval(mu));
        }

        #[test]
        fn symmetry_relations(f in para_map()) {
            prop_assert_eq!(f.s1().s2(), f.s2().s1());
            prop_assert_eq!(
                f.symmetry(Symmetry::S2, f.k() as i64 + 1),
                f.symmetry(Symmetry::S1, f.n() as i64 + 1)
            );
            prop_assert_eq!(f.s3().symmetry(Symmetry::S3, -1), f.clone());
        }

        #[test]
        fn duality_is_an_order_reversing_involution(f in para_map(), g in para_map()) {
            prop_assert_eq!(f.duality().duality(), f.clone());
            if f.k() == g.k() && f.n() == g.n() {
                prop_assert_eq!(f.leq(&g), g.duality().leq(&f.duality()));
            }
        }

        #[test]
        fn duality_is_functorial((f, g) in composable()) {
            let fg = f.compose(&g).unwrap();
            prop_assert_eq!(fg.duality(), f.duality().compose(&g.duality()).unwrap());
        }

        #[test]
        fn ad_is_l_after_duality(f in para_map()) {
            prop_assert_eq!(f.ad(), f.duality().left_adjoint());
        }

        #[test]
        fn inj_iso_round_trip(f in para_map()) {
            let g = f.inj_iso();
            prop_assert!(g.is_injective());
            prop_assert_eq!(g.inj_iso_inverse().unwrap(), f);
        }

        #[test]
        fn shift_decomposition_recomposes(f in para_map()) {
            let (l, g) = f.shift_decompose();
            prop_assert_eq!(g.embed().symmetry(Symmetry::S2, l), f);
        }

        #[test]
        fn generator_words_recompose(f in para_map()) {
            let w = f.generator_decompose();
            prop_assert_eq!(w.recompose(), f);
        }
    }
}
