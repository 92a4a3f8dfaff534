//! Finite posets of integer tuples and the structural maps between slices.
//!
//! Every poset here is a finite subset of `Z^m` under the product order:
//! windows of a hom-poset of parasimplex maps, cubes `□^m` as 0/1 tuples,
//! chains `[n]` as 1-tuples, and products as concatenations. Elements are
//! kept in lexicographic order, which is a linear extension.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paramap::{ParaMap, StructuralKind};

pub type Label = Vec<i64>;

#[derive(Clone, Debug)]
pub struct FinitePoset {
    elements: Vec<Label>,
    index: HashMap<Label, usize>,
    injective: Vec<bool>,
    leq: Vec<Vec<bool>>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.injective == other.injective
    }
}
impl Eq for FinitePoset {}

fn tuple_leq(a: &[i64], b: &[i64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

impl FinitePoset {
    /// Build from tuples of a common length; duplicates are merged.
    /// Without explicit flags every element counts as injective.
    pub fn new(elements: Vec<Label>, injective: Option<Vec<bool>>) -> Result<Self> {
        let width = elements.first().map_or(0, Vec::len);
        if elements.iter().any(|e| e.len() != width) {
            return Err(Error::Poset("elements have different lengths".into()));
        }
        let mut pairs: Vec<(Label, bool)> = match injective {
            Some(flags) => {
                if flags.len() != elements.len() {
                    return Err(Error::Poset("one injectivity flag per element".into()));
                }
                elements.into_iter().zip(flags).collect()
            }
            None => elements.into_iter().map(|e| (e, true)).collect(),
        };
        pairs.sort();
        pairs.dedup_by(|a, b| a.0 == b.0);
        let (elements, injective): (Vec<Label>, Vec<bool>) = pairs.into_iter().unzip();
        Ok(Self::assemble(elements, injective))
    }

    fn assemble(elements: Vec<Label>, injective: Vec<bool>) -> Self {
        let n = elements.len();
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|a| (0..n).map(|b| tuple_leq(&elements[a], &elements[b])).collect())
            .collect();
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for b in 0..n {
            // Strictly smaller elements in decreasing linear order; an element
            // is a cover iff it lies below no cover found so far.
            let mut covers: Vec<usize> = Vec::new();
            for a in (0..b).rev() {
                if leq[a][b] && !covers.iter().any(|&c| leq[a][c]) {
                    covers.push(a);
                }
            }
            covers.sort_unstable();
            for &a in &covers {
                upper[a].push(b);
            }
            lower[b] = covers;
        }
        FinitePoset { elements, index, injective, leq, upper, lower }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
    pub fn elements(&self) -> &[Label] {
        &self.elements
    }
    pub fn element(&self, i: usize) -> &Label {
        &self.elements[i]
    }
    pub fn index_of(&self, label: &[i64]) -> Option<usize> {
        self.index.get(label).copied()
    }
    pub fn is_injective(&self, i: usize) -> bool {
        self.injective[i]
    }
    pub fn injective_flags(&self) -> &[bool] {
        &self.injective
    }
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }
    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper[a]
    }
    pub fn lower_covers(&self, b: usize) -> &[usize] {
        &self.lower[b]
    }

    /// All covering pairs `(a, b)` with `a ⋖ b`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|b| self.lower[b].iter().map(move |&a| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    /// A chain of covers from `a` up to `b` (empty when `a == b`).
    pub fn cover_path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        if !self.leq(a, b) {
            return None;
        }
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            cur = *self.upper[cur].iter().find(|&&c| self.leq(c, b))?;
            path.push(cur);
        }
        Some(path)
    }

    pub fn down_set(&self, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.leq(a, b)).collect()
    }

    pub fn up_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.leq(a, b)).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.lower[b].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.upper[a].is_empty()).collect()
    }

    pub fn is_down_closed(&self, set: &[bool]) -> bool {
        (0..self.len()).all(|b| !set[b] || self.lower[b].iter().all(|&a| set[a]))
    }

    pub fn is_up_closed(&self, set: &[bool]) -> bool {
        (0..self.len()).all(|a| !set[a] || self.upper[a].iter().all(|&b| set[b]))
    }

    /// The full subposet on elements satisfying `keep`.
    pub fn subposet(&self, keep: impl Fn(usize) -> bool) -> FinitePoset {
        let (elements, injective) = (0..self.len())
            .filter(|&i| keep(i))
            .map(|i| (self.elements[i].clone(), self.injective[i]))
            .unzip();
        Self::assemble(elements, injective)
    }

    /// The opposite poset, realized by negating every label.
    pub fn opposite(&self) -> FinitePoset {
        let elements = self.elements.iter().map(|e| e.iter().map(|x| -x).collect()).collect();
        FinitePoset::new(elements, Some(self.injective.clone())).expect("same width")
    }

    /// `[n] = {0 < 1 < … < n}`.
    pub fn chain(n: usize) -> FinitePoset {
        Self::assemble((0..=n as i64).map(|i| vec![i]).collect(), vec![true; n + 1])
    }

    /// `□^m` as characteristic 0/1 tuples.
    pub fn cube(m: usize) -> FinitePoset {
        Self::grid(&vec![1; m])
    }

    /// `[a_0] × … × [a_{m-1}]`.
    pub fn grid(sides: &[usize]) -> FinitePoset {
        let mut elements: Vec<Label> = vec![Vec::new()];
        for &s in sides {
            elements = elements
                .into_iter()
                .flat_map(|e| {
                    (0..=s as i64).map(move |x| {
                        let mut e = e.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        // Appending coordinates in increasing order keeps labels lex-sorted.
        let n = elements.len();
        Self::assemble(elements, vec![true; n])
    }

    /// Product poset with concatenated labels.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let mut elements = Vec::new();
        let mut flags = Vec::new();
        for (a, fa) in self.elements.iter().zip(&self.injective) {
            for (b, fb) in other.elements.iter().zip(&other.injective) {
                let mut e = a.clone();
                e.extend_from_slice(b);
                elements.push(e);
                flags.push(*fa && *fb);
            }
        }
        FinitePoset::new(elements, Some(flags)).expect("uniform width")
    }

    /// DOT rendering of the covering relation, nodes in element order.
    pub fn export_dot(&self) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            let label: Vec<String> = e.iter().map(i64::to_string).collect();
            let style = if self.injective[i] { "" } else { ", style=dashed" };
            let _ = writeln!(s, "  n{i} [label=\"({})\"{style}];", label.join(","));
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    elements: Vec<Label>,
    covers: Vec<[usize; 2]>,
    injective: Vec<bool>,
}

impl Serialize for FinitePoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PosetJson {
            elements: self.elements.clone(),
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            injective: self.injective.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinitePoset {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PosetJson::deserialize(de)?;
        let p = FinitePoset::new(j.elements.clone(), Some(j.injective)).map_err(D::Error::custom)?;
        if p.elements != j.elements {
            return Err(D::Error::custom("elements must be distinct and in lexicographic order"));
        }
        let covers: Vec<(usize, usize)> = j.covers.iter().map(|c| (c[0], c[1])).collect();
        let mut sorted = covers.clone();
        sorted.sort_unstable();
        if sorted != p.covers() {
            return Err(D::Error::custom("covers do not match the product order on elements"));
        }
        Ok(p)
    }
}

/// A monotone map between finite posets.
#[derive(Clone, Debug)]
pub struct PosetMap {
    pub src: Arc<FinitePoset>,
    pub tgt: Arc<FinitePoset>,
    assign: Vec<usize>,
}

impl PosetMap {
    pub fn new(src: Arc<FinitePoset>, tgt: Arc<FinitePoset>, assign: Vec<usize>) -> Result<Self> {
        if assign.len() != src.len() || assign.iter().any(|&b| b >= tgt.len()) {
            return Err(Error::Poset("assignment is not total".into()));
        }
        for (a, b) in src.covers() {
            if !tgt.leq(assign[a], assign[b]) {
                return Err(Error::Poset(format!(
                    "not monotone on {:?} ≤ {:?}",
                    src.element(a),
                    src.element(b)
                )));
            }
        }
        Ok(PosetMap { src, tgt, assign })
    }

    /// Build from a label function.
    pub fn from_fn(
        src: Arc<FinitePoset>,
        tgt: Arc<FinitePoset>,
        f: impl Fn(&[i64]) -> Label,
    ) -> Result<Self> {
        let assign = src
            .elements()
            .iter()
            .map(|e| {
                let img = f(e);
                tgt.index_of(&img).ok_or_else(|| {
                    Error::Poset(format!("{e:?} maps to {img:?}, which is not in the target"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(src, tgt, assign)
    }

    /// The inclusion of a subposet (labels must be present in `tgt`).
    pub fn inclusion(src: Arc<FinitePoset>, tgt: Arc<FinitePoset>) -> Result<Self> {
        Self::from_fn(src, tgt, |e| e.to_vec())
    }

    pub fn identity(p: Arc<FinitePoset>) -> Self {
        let n = p.len();
        PosetMap { src: p.clone(), tgt: p, assign: (0..n).collect() }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.assign[a]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assign
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &PosetMap) -> Result<PosetMap> {
        if *self.tgt != *g.src {
            return Err(Error::Poset("maps do not compose".into()));
        }
        Ok(PosetMap {
            src: self.src.clone(),
            tgt: g.tgt.clone(),
            assign: self.assign.iter().map(|&b| g.assign[b]).collect(),
        })
    }

    /// Order-embedding: `a ≤ a'` iff `u(a) ≤ u(a')`, and injective.
    pub fn is_embedding(&self) -> bool {
        let n = self.src.len();
        (0..n).all(|a| {
            (0..n).all(|b| self.src.leq(a, b) == self.tgt.leq(self.assign[a], self.assign[b]))
        }) && self.assign.iter().collect::<BTreeSet<_>>().len() == n
    }

    pub fn image_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.tgt.len()];
        for &b in &self.assign {
            m[b] = true;
        }
        m
    }

    /// Embedding with down-closed image.
    pub fn is_sieve(&self) -> bool {
        self.is_embedding() && self.tgt.is_down_closed(&self.image_mask())
    }

    /// Embedding with up-closed image.
    pub fn is_cosieve(&self) -> bool {
        self.is_embedding() && self.tgt.is_up_closed(&self.image_mask())
    }

    pub fn is_bijective(&self) -> bool {
        self.src.len() == self.tgt.len() && self.image_mask().iter().all(|&b| b)
    }

    /// Inverse of an order isomorphism.
    pub fn inverse(&self) -> Result<PosetMap> {
        if !self.is_bijective() || !self.is_embedding() {
            return Err(Error::Poset("not an isomorphism".into()));
        }
        let mut inv = vec![0; self.tgt.len()];
        for (a, &b) in self.assign.iter().enumerate() {
            inv[b] = a;
        }
        PosetMap::new(self.tgt.clone(), self.src.clone(), inv)
    }

    /// The opposite map between opposite posets.
    pub fn opposite(&self) -> PosetMap {
        let src = Arc::new(self.src.opposite());
        let tgt = Arc::new(self.tgt.opposite());
        let neg = |e: &[i64]| -> Label { e.iter().map(|x| -x).collect() };
        let assign = (0..src.len())
            .map(|a| {
                let orig = self.src.index_of(&neg(src.element(a))).expect("label");
                tgt.index_of(&neg(self.tgt.element(self.assign[orig]))).expect("label")
            })
            .collect();
        PosetMap { src, tgt, assign }
    }
}

// ---------------------------------------------------------------------------
// Hom-poset windows and slices.
//
// An object of D_{n,k} lives on the hom-poset of maps Λ_{k-1} -> Λ_{n+k-1};
// its labels are coordinate tuples of length k.

/// Injectivity of a label viewed as a map `Λ_{k-1} -> Λ_{n+k-1}`.
pub fn label_injective(n: usize, label: &[i64]) -> bool {
    let k = label.len();
    label.windows(2).all(|w| w[0] < w[1]) && label[k - 1] < label[0] + (n + k) as i64
}

/// Admissibility of a label viewed as a map `Λ_{k-1} -> Λ_{n+k-1}`.
pub fn label_admissible(n: usize, label: &[i64]) -> bool {
    let k = label.len();
    label.windows(2).all(|w| w[0] <= w[1]) && label[k - 1] <= label[0] + (n + k) as i64
}

/// The label as a parasimplex map.
pub fn label_map(n: usize, label: &[i64]) -> Result<ParaMap> {
    let k = label.len();
    ParaMap::from_coords(n + k - 1, k - 1, label.to_vec())
}

/// `ξ = (0, 1, …, k-1)`.
pub fn xi(k: usize) -> Label {
    (0..k as i64).collect()
}

/// `s3` on labels of `D_{n,k}`.
pub fn s3_label(n: usize, f: &[i64], power: i64) -> Label {
    let m = label_map(n, f).expect("admissible label");
    m.symmetry(crate::paramap::Symmetry::S3, power).coords().to_vec()
}

/// `s2` on labels of `D_{n,k}`.
pub fn s2_label(n: usize, f: &[i64], power: i64) -> Label {
    let m = label_map(n, f).expect("admissible label");
    m.symmetry(crate::paramap::Symmetry::S2, power).coords().to_vec()
}

/// `s1` on labels: add `power` to every coordinate.
pub fn s1_label(f: &[i64], power: i64) -> Label {
    f.iter().map(|x| x + power).collect()
}

/// All admissible labels of `D_{n,k}` pointwise between `lo` and `hi`.
pub fn interval(n: usize, k: usize, lo: &[i64], hi: &[i64]) -> Result<FinitePoset> {
    if lo.len() != k || hi.len() != k {
        return Err(Error::Range(format!("bounds must have {k} coordinates")));
    }
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    box_walk(lo, hi, 0, &mut cur, &mut |e| {
        if label_admissible(n, e) {
            out.push(e.to_vec());
        }
    });
    let flags = out.iter().map(|e| label_injective(n, e)).collect();
    FinitePoset::new(out, Some(flags))
}

fn box_walk(lo: &[i64], hi: &[i64], i: usize, cur: &mut Label, visit: &mut impl FnMut(&[i64])) {
    if i == lo.len() {
        visit(cur);
        return;
    }
    for x in lo[i]..=hi[i] {
        cur[i] = x;
        box_walk(lo, hi, i + 1, cur, visit);
    }
}

/// The four slice models of `D_{n,k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SliceVariant {
    Slice,
    Domain,
    Triangular,
    Cubical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SliceSpec {
    pub n: usize,
    pub k: usize,
    pub variant: SliceVariant,
}

impl SliceSpec {
    pub fn new(n: usize, k: usize, variant: SliceVariant) -> Self {
        SliceSpec { n, k, variant }
    }

    pub fn slice(n: usize, k: usize) -> Self {
        Self::new(n, k, SliceVariant::Slice)
    }

    pub fn basepoint(&self) -> Label {
        match self.variant {
            SliceVariant::Triangular => vec![0; self.k],
            _ => xi(self.k),
        }
    }

    pub fn endpoint(&self) -> Label {
        let (n, k) = (self.n, self.k);
        match self.variant {
            SliceVariant::Slice | SliceVariant::Cubical => slice_end(n, k),
            SliceVariant::Domain => s3_label(n, &xi(k), k as i64),
            SliceVariant::Triangular => {
                let mut e = vec![(n + k - 1) as i64; k];
                e[0] = 0;
                e
            }
        }
    }
}

/// `s3^{k-1} ξ = (0, n+1, n+2, …, n+k-1)`.
pub fn slice_end(n: usize, k: usize) -> Label {
    s3_label(n, &xi(k), k as i64 - 1)
}

/// The poset of a slice model, with injectivity flags.
pub fn slice_poset(spec: SliceSpec) -> Result<FinitePoset> {
    let (n, k) = (spec.n, spec.k);
    if k < 2 {
        return Err(Error::Range("slices need k ≥ 2".into()));
    }
    let (lo, hi) = (spec.basepoint(), spec.endpoint());
    match spec.variant {
        SliceVariant::Cubical => {
            let mut out = Vec::new();
            let mut cur = lo.clone();
            box_walk(&lo, &hi, 0, &mut cur, &mut |e| out.push(e.to_vec()));
            let flags = out.iter().map(|e| label_admissible(n, e) && label_injective(n, e)).collect();
            FinitePoset::new(out, Some(flags))
        }
        _ => interval(n, k, &lo, &hi),
    }
}

pub fn injective_count(spec: SliceSpec) -> Result<usize> {
    Ok(slice_poset(spec)?.injective_flags().iter().filter(|&&b| b).count())
}

/// Canonical isomorphisms between slice models and combinatorial shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalIso {
    /// `[n] -> Sl_{n,2}`, `i ↦ (0, i+1)`.
    ChainToSlice { n: usize },
    /// `□^{k-1} -> Sl_{1,k}`, `δ ↦ ξ + (0, δ)`.
    CubeToSlice { k: usize },
    /// `□^k -> Do_{1,k}`, `δ ↦ ξ + δ`.
    CubeToDomain { k: usize },
    /// `[n]^{k-1} -> Sl^□_{n,k}`, `g ↦ (0, g_0 + 1, …, g_{k-2} + k - 1)`.
    GridToCubical { n: usize, k: usize },
    /// Monotone `g: [k-1] -> [n+k-1]` with `g(0) = 0`, onto `Sl^△_{n,k}`.
    MonotoneToTriangular { n: usize, k: usize },
}

pub fn canonical_iso(which: CanonicalIso) -> Result<PosetMap> {
    match which {
        CanonicalIso::ChainToSlice { n } => {
            let src = Arc::new(FinitePoset::chain(n));
            let tgt = Arc::new(slice_poset(SliceSpec::slice(n, 2))?);
            PosetMap::from_fn(src, tgt, |e| vec![0, e[0] + 1])
        }
        CanonicalIso::CubeToSlice { k } => {
            let src = Arc::new(FinitePoset::cube(k - 1));
            let tgt = Arc::new(slice_poset(SliceSpec::slice(1, k))?);
            PosetMap::from_fn(src, tgt, |d| {
                std::iter::once(0).chain(d.iter().enumerate().map(|(i, x)| i as i64 + 1 + x)).collect()
            })
        }
        CanonicalIso::CubeToDomain { k } => {
            let src = Arc::new(FinitePoset::cube(k));
            let tgt = Arc::new(slice_poset(SliceSpec::new(1, k, SliceVariant::Domain))?);
            PosetMap::from_fn(src, tgt, |d| d.iter().enumerate().map(|(i, x)| i as i64 + x).collect())
        }
        CanonicalIso::GridToCubical { n, k } => {
            let src = Arc::new(FinitePoset::grid(&vec![n; k - 1]));
            let tgt = Arc::new(slice_poset(SliceSpec::new(n, k, SliceVariant::Cubical))?);
            PosetMap::from_fn(src, tgt, grid_to_cubical)
        }
        CanonicalIso::MonotoneToTriangular { n, k } => {
            let top = (n + k - 1) as i64;
            let mut els = Vec::new();
            let mut cur = vec![0; k];
            let hi: Label = std::iter::once(0).chain(std::iter::repeat(top).take(k - 1)).collect();
            box_walk(&vec![0; k], &hi, 0, &mut cur, &mut |e| {
                if e.windows(2).all(|w| w[0] <= w[1]) {
                    els.push(e.to_vec());
                }
            });
            let src = Arc::new(FinitePoset::new(els, None)?);
            let tgt = Arc::new(slice_poset(SliceSpec::new(n, k, SliceVariant::Triangular))?);
            PosetMap::from_fn(src, tgt, |e| e.to_vec())
        }
    }
}

/// `c_{n,k}`: grid coordinates to cubical-slice labels.
pub fn grid_to_cubical(g: &[i64]) -> Label {
    std::iter::once(0).chain(g.iter().enumerate().map(|(j, x)| x + j as i64 + 1)).collect()
}

/// Inverse of [`grid_to_cubical`].
pub fn cubical_to_grid(f: &[i64]) -> Label {
    f[1..].iter().enumerate().map(|(j, x)| x - j as i64 - 1).collect()
}

/// The embedding `□^k -> P`, `δ ↦ x + δ`, when every vertex lies in `P`.
pub fn elementary_subcube(p: &Arc<FinitePoset>, x: &[i64]) -> Option<PosetMap> {
    let cube = Arc::new(FinitePoset::cube(x.len()));
    PosetMap::from_fn(cube, p.clone(), |d| x.iter().zip(d).map(|(a, b)| a + b).collect()).ok()
}

/// Structural monotone maps between slice models and combinatorial shapes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructuralMap {
    /// `Sl_{n,k} -> Sl_{n+1,k}`, `(0, f_1, …) ↦ (0, f_1 + 1, …)`.
    Dv { n: usize, k: usize },
    /// `Sl_{n,k} -> Sl_{n+1,k}`, identity on coordinates.
    DvVee { n: usize, k: usize },
    /// `Sl_{n,k} -> Sl_{n,k+1}`, `(0, f_1, …) ↦ (0, 1, f_1 + 1, …)`.
    Dh { n: usize, k: usize },
    /// `Sl_{n,k} -> Sl_{n,k+1}`, `(0, f_1, …) ↦ (0, f_1, …, n + k)`.
    DhVee { n: usize, k: usize },
    /// `Sl_{n,k} ⊂ Do_{n,k}`.
    Sd { n: usize, k: usize },
    /// `Sl_{n,k} -> Do_{n,k}`, `f ↦ s3(f)`.
    TildeSd { n: usize, k: usize },
    /// `Sl_{n,k} ⊂ Sl^△_{n,k}`.
    TriangleIncl { n: usize, k: usize },
    /// Post-composition with a face (`Sl_{n,k} -> Sl_{n+1,k}`) or a
    /// degeneracy (`Sl^△_{n+1,k} -> Sl^△_{n,k}`) of `Λ_{n+k-1}`.
    Postcomp { n: usize, k: usize, kind: StructuralKind, i: i64 },
    /// `J: Sl_{n,k} × □^k -> Λ`-window, `J(f, δ)_i = f_i + δ_i (f_{i+1} - f_i)`.
    J { n: usize, k: usize },
    /// `[k-1]^n -> (□^n)^{k-1}`, `i ↦ ({j | 1 ≤ i_j}, …, {j | k-1 ≤ i_j})`.
    AdGrid { n: usize, k: usize },
    /// `(□^{k-1})^n -> (□^n)^{k-1}`, transposing the 0/1 matrix.
    Shuffle { n: usize, k: usize },
    /// `[n] -> □^n`, `i ↦ {σ(n-i), …, σ(n-1)}`.
    MaximalPath { perm: Vec<usize> },
    /// `p: □^n -> [n]`, `M ↦ max{i | {0, …, i-1} ⊆ M}`.
    PathAdjoint { n: usize },
    /// `q: □^n -> [n]`, `M ↦ max(M) + 1`, and `∅ ↦ 0`.
    PathRightAdjoint { n: usize },
}

fn slice(n: usize, k: usize) -> Result<Arc<FinitePoset>> {
    Ok(Arc::new(slice_poset(SliceSpec::slice(n, k))?))
}

fn variant(n: usize, k: usize, v: SliceVariant) -> Result<Arc<FinitePoset>> {
    Ok(Arc::new(slice_poset(SliceSpec::new(n, k, v))?))
}

/// The window hosting every `J`-cube: `[ξ, s2(s3^{k-1} ξ)]`.
pub fn default_window(n: usize, k: usize) -> Result<FinitePoset> {
    let hi = s2_label(n, &slice_end(n, k), 1);
    interval(n, k, &xi(k), &hi)
}

/// `J(f, δ)` for `D_{n,k}` labels.
pub fn j_map(n: usize, f: &[i64], delta: &[i64]) -> Label {
    let k = f.len();
    (0..k)
        .map(|i| {
            let next = if i + 1 < k { f[i + 1] } else { f[0] + (n + k) as i64 };
            f[i] + delta[i] * (next - f[i])
        })
        .collect()
}

pub fn structural_map(which: &StructuralMap) -> Result<PosetMap> {
    use StructuralMap as S;
    match *which {
        S::Dv { n, k } => PosetMap::from_fn(slice(n, k)?, slice(n + 1, k)?, |f| {
            std::iter::once(0).chain(f[1..].iter().map(|x| x + 1)).collect()
        }),
        S::DvVee { n, k } => PosetMap::inclusion(slice(n, k)?, slice(n + 1, k)?),
        S::Dh { n, k } => PosetMap::from_fn(slice(n, k)?, slice(n, k + 1)?, dh_label),
        S::DhVee { n, k } => PosetMap::from_fn(slice(n, k)?, slice(n, k + 1)?, |f| {
            f.iter().copied().chain(std::iter::once((n + k) as i64)).collect()
        }),
        S::Sd { n, k } => PosetMap::inclusion(slice(n, k)?, variant(n, k, SliceVariant::Domain)?),
        S::TildeSd { n, k } => PosetMap::from_fn(
            slice(n, k)?,
            variant(n, k, SliceVariant::Domain)?,
            |f| s3_label(n, f, 1),
        ),
        S::TriangleIncl { n, k } => {
            PosetMap::inclusion(slice(n, k)?, variant(n, k, SliceVariant::Triangular)?)
        }
        S::Postcomp { n, k, kind, i } => {
            let top = n + k - 1;
            match kind {
                StructuralKind::Face => {
                    if !(1..=(n + k) as i64).contains(&i) {
                        return Err(Error::Range(format!("face index {i} outside 1..={}", n + k)));
                    }
                    let d = ParaMap::structural(top, kind, i);
                    PosetMap::from_fn(slice(n, k)?, slice(n + 1, k)?, |f| {
                        f.iter().map(|&x| d.eval(x)).collect()
                    })
                }
                StructuralKind::Degeneracy => {
                    if !(0..=(n + k) as i64 - 1).contains(&i) {
                        return Err(Error::Range(format!(
                            "degeneracy index {i} outside 0..={}",
                            n + k - 1
                        )));
                    }
                    let s = ParaMap::structural(top, kind, i);
                    PosetMap::from_fn(
                        variant(n + 1, k, SliceVariant::Triangular)?,
                        variant(n, k, SliceVariant::Triangular)?,
                        |f| f.iter().map(|&x| s.eval(x)).collect(),
                    )
                }
            }
        }
        S::J { n, k } => {
            let src = Arc::new(slice(n, k)?.product(&FinitePoset::cube(k)));
            let tgt = Arc::new(default_window(n, k)?);
            PosetMap::from_fn(src, tgt, |e| j_map(n, &e[..k], &e[k..]))
        }
        S::AdGrid { n, k } => {
            let src = Arc::new(FinitePoset::grid(&vec![k - 1; n]));
            let tgt = Arc::new(FinitePoset::cube(n * (k - 1)));
            PosetMap::from_fn(src, tgt, |i| ad_grid_label(n, k, i))
        }
        S::Shuffle { n, k } => {
            let src = Arc::new(FinitePoset::cube(n * (k - 1)));
            let tgt = src.clone();
            PosetMap::from_fn(src, tgt, |e| {
                // Source blocks: n blocks of length k-1; target: k-1 blocks of length n.
                let mut out = vec![0; n * (k - 1)];
                for a in 0..n {
                    for b in 0..k - 1 {
                        out[b * n + a] = e[a * (k - 1) + b];
                    }
                }
                out
            })
        }
        S::MaximalPath { ref perm } => {
            let n = perm.len();
            let mut seen = perm.clone();
            seen.sort_unstable();
            if seen != (0..n).collect::<Vec<_>>() {
                return Err(Error::Range(format!("{perm:?} is not a permutation")));
            }
            let src = Arc::new(FinitePoset::chain(n));
            let tgt = Arc::new(FinitePoset::cube(n));
            PosetMap::from_fn(src, tgt, |i| {
                let mut m = vec![0; n];
                for &j in &perm[n - i[0] as usize..] {
                    m[j] = 1;
                }
                m
            })
        }
        S::PathAdjoint { n } => {
            let src = Arc::new(FinitePoset::cube(n));
            let tgt = Arc::new(FinitePoset::chain(n));
            PosetMap::from_fn(src, tgt, |m| vec![m.iter().take_while(|&&x| x == 1).count() as i64])
        }
        S::PathRightAdjoint { n } => {
            let src = Arc::new(FinitePoset::cube(n));
            let tgt = Arc::new(FinitePoset::chain(n));
            PosetMap::from_fn(src, tgt, |m| {
                vec![m.iter().rposition(|&x| x == 1).map_or(0, |j| j as i64 + 1)]
            })
        }
    }
}

/// `d^h` on labels: `(0, f_1, …) ↦ (0, 1, f_1 + 1, …)`.
pub fn dh_label(f: &[i64]) -> Label {
    [0, 1].into_iter().chain(f[1..].iter().map(|x| x + 1)).collect()
}

/// `ad_{n,k}` on a grid point of `[k-1]^n`, as a 0/1 label of `(□^n)^{k-1}`.
pub fn ad_grid_label(n: usize, k: usize, i: &[i64]) -> Label {
    let mut out = Vec::with_capacity(n * (k - 1));
    for level in 1..k as i64 {
        for j in 0..n {
            out.push((i[j] >= level) as i64);
        }
    }
    out
}

/// Catalogue of commuting squares between structural maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareRelation {
    /// `Λ(s_i) ∘ d^h = d^h ∘ Λ(s_{i-1})` on triangular slices.
    DegeneracyHorizontal { n: usize, k: usize, i: i64 },
    /// `Λ(d_{i+1}) ∘ d^h = d^h ∘ Λ(d_i)` on slices.
    FaceHorizontal { n: usize, k: usize, i: i64 },
    /// `d^{v∨} ∘ d^h = d^h ∘ d^{v∨}`, a pullback square.
    VeeHorizontal { n: usize, k: usize },
}

/// Exact elementwise verdict for a square in the catalogue.
pub fn check_square(rel: SquareRelation) -> Result<bool> {
    match rel {
        SquareRelation::DegeneracyHorizontal { n, k, i } => {
            if !(1..=(n + k) as i64).contains(&i) {
                return Err(Error::Range(format!("i = {i} outside 1..={}", n + k)));
            }
            let src = variant(n + 1, k, SliceVariant::Triangular)?;
            let low = variant(n, k, SliceVariant::Triangular)?;
            let corner = variant(n, k + 1, SliceVariant::Triangular)?;
            let s_big = ParaMap::structural(n + k, StructuralKind::Degeneracy, i);
            let s_small = ParaMap::structural(n + k - 1, StructuralKind::Degeneracy, i - 1);
            Ok(src.elements().iter().all(|f| {
                let up: Label = dh_label(f).iter().map(|&x| s_big.eval(x)).collect();
                let down_first: Label = f.iter().map(|&x| s_small.eval(x)).collect();
                let across = dh_label(&down_first);
                low.index_of(&down_first).is_some() && corner.index_of(&up).is_some() && up == across
            }))
        }
        SquareRelation::FaceHorizontal { n, k, i } => {
            if !(1..=(n + k) as i64).contains(&i) {
                return Err(Error::Range(format!("i = {i} outside 1..={}", n + k)));
            }
            let src = slice(n, k)?;
            let corner = slice(n + 1, k + 1)?;
            let d_small = ParaMap::structural(n + k - 1, StructuralKind::Face, i);
            let d_big = ParaMap::structural(n + k, StructuralKind::Face, i + 1);
            Ok(src.elements().iter().all(|f| {
                let right: Label = dh_label(f).iter().map(|&x| d_big.eval(x)).collect();
                let up: Label = f.iter().map(|&x| d_small.eval(x)).collect();
                let across = dh_label(&up);
                corner.index_of(&right).is_some() && right == across
            }))
        }
        SquareRelation::VeeHorizontal { n, k } => {
            let src = slice(n, k)?;
            let right = slice(n, k + 1)?;
            let up = slice(n + 1, k)?;
            let corner = slice(n + 1, k + 1)?;
            let commutes = src.elements().iter().all(|f| {
                let a = dh_label(f);
                let b = dh_label(f);
                right.index_of(&a).is_some() && a == b
            });
            // Pullback: a corner point in both images comes from the source.
            let pullback = corner.elements().iter().all(|c| {
                let pre: Label = std::iter::once(0).chain(c[2..].iter().map(|x| x - 1)).collect();
                let from_up = c[1] == 1 && up.index_of(&pre).is_some();
                !(from_up && right.index_of(c).is_some()) || src.index_of(&pre).is_some()
            });
            Ok(commutes && pullback)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_and_chain_shapes() {
        let c = FinitePoset::cube(2);
        assert_eq!(c.len(), 4);
        assert_eq!(c.covers().len(), 4);
        let ch = FinitePoset::chain(1);
        assert_eq!(ch.covers(), vec![(0, 1)]);
        assert_eq!(ch.export_dot().matches("->").count(), 1);
    }

    #[test]
    fn slice_counts() {
        assert_eq!(injective_count(SliceSpec::slice(2, 3)).unwrap(), 6);
        assert_eq!(slice_poset(SliceSpec::slice(2, 3)).unwrap().len(), 8);
        for n in 0..5 {
            assert_eq!(injective_count(SliceSpec::slice(n, 2)).unwrap(), n + 1);
        }
        for k in 2..6 {
            assert_eq!(injective_count(SliceSpec::slice(0, k)).unwrap(), 1);
        }
    }

    #[test]
    fn singleton_interval() {
        let p = interval(2, 3, &xi(3), &xi(3)).unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn dv_example() {
        let m = structural_map(&StructuralMap::Dv { n: 1, k: 2 }).unwrap();
        let imgs: Vec<&Label> = (0..m.src.len()).map(|a| m.tgt.element(m.apply(a))).collect();
        assert_eq!(imgs, vec![&vec![0, 2], &vec![0, 3]]);
        assert!(m.is_cosieve());
        assert!(structural_map(&StructuralMap::DvVee { n: 1, k: 2 }).unwrap().is_sieve());
        assert!(structural_map(&StructuralMap::Dh { n: 2, k: 2 }).unwrap().is_sieve());
        assert!(structural_map(&StructuralMap::DhVee { n: 2, k: 2 }).unwrap().is_cosieve());
    }

    #[test]
    fn maximal_path_identity() {
        let m = structural_map(&StructuralMap::MaximalPath { perm: vec![0, 1] }).unwrap();
        let imgs: Vec<&Label> = (0..3).map(|a| m.tgt.element(m.apply(a))).collect();
        assert_eq!(imgs, vec![&vec![0, 0], &vec![0, 1], &vec![1, 1]]);
    }

    #[test]
    fn ad_grid_example() {
        assert_eq!(ad_grid_label(2, 3, &[1, 0]), vec![1, 0, 0, 0]);
        assert_eq!(ad_grid_label(2, 3, &[2, 1]), vec![1, 1, 1, 0]);
    }

    #[test]
    fn elementary_subcubes() {
        let w = Arc::new(default_window(2, 3).unwrap());
        assert!(elementary_subcube(&w, &xi(3)).is_some());
        let top = w.element(w.len() - 1).clone();
        assert!(elementary_subcube(&w, &top).is_none());
        let sl = Arc::new(slice_poset(SliceSpec::slice(2, 3)).unwrap());
        for (i, e) in sl.elements().iter().enumerate() {
            if !sl.is_injective(i) {
                assert!(elementary_subcube(&w, e).is_none());
            }
        }
    }

    #[test]
    fn squares_commute_in_examples() {
        assert!(check_square(SquareRelation::DegeneracyHorizontal { n: 1, k: 2, i: 1 }).unwrap());
        assert!(check_square(SquareRelation::FaceHorizontal { n: 2, k: 2, i: 2 }).unwrap());
        assert!(check_square(SquareRelation::VeeHorizontal { n: 0, k: 2 }).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let p = slice_poset(SliceSpec::slice(2, 3)).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: FinitePoset = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
