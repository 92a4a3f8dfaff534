//! Filtered objects from path cubes, and triangle data read off windows.
//!
//! A diagram `Y` over `[n]` is an object of `D_{n,2}` through
//! `i ↦ (0, i+1)`. In its window model `Z` the labels `(0, j)` carry the
//! filtration `y_j`, the labels `(j, j+1)` carry `Σ^j x_j`, and `(j, n+2)`
//! carries `Σ y_j` through the corner comparison of the square spanned by
//! `(0, j)`, `(0, n+2)`, `(j, j)` and `(j, n+2)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chain::{ChainComplex, ChainMap, GradedDims};
use crate::dgmcalc::{corner_comparison, Diagram};
use crate::error::{Error, Result};
use crate::homposet::{canonical_iso, s2_label, CanonicalIso, FinitePoset, Label, PosetMap};
use crate::snk::{SliceObject, WindowModel};
use crate::verify::Verdict;

use super::homclass::HomClass;
use super::square::{chain_length, psi_square, PathDiagram};

/// An `(n+1)`-filtered object `0 = y_0 -> y_1 -> … -> y_{n+1}` with its
/// triangles `y_j -> y_{j+1} -> Σ^j x_j -> Σ y_j`.
#[derive(Clone, Debug)]
pub struct Filtration {
    /// `y_0, …, y_{n+1}` with `y_0 = 0`.
    pub y: Vec<ChainComplex>,
    /// `v_{j+1}: y_j -> y_{j+1}` at index `j`.
    pub v: Vec<ChainMap>,
    /// `r_{j+1}: y_{j+1} -> Σ^j x_j` at index `j`.
    pub r: Vec<ChainMap>,
    /// `q_j: Σ^j x_j -> Σ y_j` at index `j`.
    pub q: Vec<ChainMap>,
    /// `σ_y: x_0 = y_1 -> y_{n+1}`.
    pub sigma: ChainMap,
}

impl Filtration {
    /// Number of triangles, `n + 1`.
    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }
}

fn window_of(y: &Diagram) -> Result<Arc<WindowModel>> {
    let n = chain_length(y)?;
    let iso = canonical_iso(CanonicalIso::ChainToSlice { n })?.inverse()?;
    SliceObject::new(n, 2, y.transport(&iso)?)?.window()
}

fn at(w: &WindowModel, label: [i64; 2]) -> Result<usize> {
    w.window()
        .index_of(&label)
        .ok_or_else(|| Error::Range(format!("{label:?} is outside the window")))
}

/// `Ψ^□_n(Y)` together with the filtration of `(d_0)_! Y` read from the
/// window model. Triangles with even index carry `-r` and `-q`.
pub fn filtered_object(y: &Diagram) -> Result<(PathDiagram, Filtration)> {
    let n = chain_length(y)? as i64;
    let x = psi_square(y)?;
    let w = window_of(y)?;
    let z = w.data();
    let zero = ChainComplex::zero(y.p());
    let value = |label: [i64; 2]| -> Result<ChainComplex> { Ok(z.value(at(&w, label)?).clone()) };

    let mut ys = vec![zero.clone()];
    for j in 1..=n + 1 {
        ys.push(value([0, j])?);
    }
    let (mut v, mut r, mut q) = (Vec::new(), Vec::new(), Vec::new());
    for j in 0..=n {
        let vj = if j == 0 {
            ChainMap::zero(&zero, &ys[1])
        } else {
            z.chain_map(at(&w, [0, j])?, at(&w, [0, j + 1])?)?
        };
        let rj = z.chain_map(at(&w, [0, j + 1])?, at(&w, [j, j + 1])?)?;
        let qj = if j == 0 {
            ChainMap::zero(&rj.tgt, &zero)
        } else {
            let into_corner = z.chain_map(at(&w, [j, j + 1])?, at(&w, [j, n + 2])?)?;
            let square = PosetMap::from_fn(Arc::new(FinitePoset::cube(2)), w.window().clone(), |d| {
                vec![j * d[0], j + (n + 2 - j) * d[1]]
            })?;
            let corner = corner_comparison(&z.restrict(&square)?)?;
            HomClass::of(&into_corner).then(&HomClass::of(&corner).inverse()?)?.realize()
        };
        let (rj, qj) = if j % 2 == 0 { (negate(&rj), negate(&qj)) } else { (rj, qj) };
        v.push(vj);
        r.push(rj);
        q.push(qj);
    }
    let sigma = z.chain_map(at(&w, [0, 1])?, at(&w, [0, n + 1])?)?;
    Ok((x, Filtration { y: ys, v, r, q, sigma }))
}

fn negate(f: &ChainMap) -> ChainMap {
    ChainMap { src: f.src.clone(), tgt: f.tgt.clone(), map: f.map.neg() }
}

fn nonzero(g: &GradedDims) -> BTreeMap<i32, usize> {
    g.0.iter().filter(|(_, &r)| r > 0).map(|(&i, &r)| (i, r)).collect()
}

fn ranks(f: &ChainMap) -> GradedDims {
    f.homology_ranks()
}

/// Homology exactness of `A -f-> B -g-> C -h-> ΣA -Σf-> ΣB` in each degree.
fn les_exact(f: &ChainMap, g: &ChainMap, h: &ChainMap) -> bool {
    let sf = f.shift(1);
    let (rf, rg, rh, rsf) = (ranks(f), ranks(g), ranks(h), ranks(&sf));
    let (hb, hc, hsa) = (g.src.homology(), h.src.homology(), sf.src.homology());
    let mut degrees: Vec<i32> = hb.0.keys().chain(hc.0.keys()).chain(hsa.0.keys()).copied().collect();
    degrees.extend(rf.0.keys().chain(rg.0.keys()).chain(rh.0.keys()).chain(rsf.0.keys()));
    degrees.sort_unstable();
    degrees.dedup();
    degrees.into_iter().all(|i| {
        rf.get(i) + rg.get(i) == hb.get(i)
            && rg.get(i) + rh.get(i) == hc.get(i)
            && rh.get(i) + rsf.get(i) == hsa.get(i)
    })
}

/// The checks attached to a filtered object:
/// - each triangle is exact on homology,
/// - `Σ^j x_j` of the window has the dims of `Σ^j` of the path value,
/// - `Σ r_j ∘ q_j` has the homology ranks of `Σ^j u_j`,
/// - `σ_y` is the composite of the `v_j`.
pub fn filtration_checks(x: &PathDiagram, f: &Filtration) -> Result<Verdict> {
    let path = x.along_path()?;
    let n = x.n();
    // x_j sits at →(n - j); u_j: x_j -> x_{j-1}.
    let xj = |j: usize| path.value(n - j);
    for j in 0..f.len() {
        if !les_exact(&f.v[j], &f.r[j], &f.q[j]) {
            return Ok(Verdict::fail(format!("triangle {j} is not exact on homology")));
        }
        let want = xj(j).homology().shifted(j as i32);
        if f.r[j].tgt.homology() != want {
            return Ok(Verdict::fail(format!("Σ^{j} x_{j}: dims differ from the path value")));
        }
    }
    for j in 1..f.len() {
        let composite = f.q[j].compose(&f.r[j - 1].shift(1));
        let u = path.chain_map(n - j, n - j + 1)?.shift(j as i32);
        if nonzero(&composite.homology_ranks()) != nonzero(&u.homology_ranks()) {
            return Ok(Verdict::fail(format!("Σ r_{j} ∘ q_{j} and Σ^{j} u_{j} have different ranks")));
        }
    }
    let mut chain = f.v[1].clone();
    for v in &f.v[2..] {
        chain = chain.compose(v);
    }
    if chain.map != f.sigma.map {
        return Ok(Verdict::fail("σ_y is not the composite of the v_j"));
    }
    Ok(Verdict::pass(format!("{} triangles exact, ranks and σ_y agree", f.len())))
}

/// Incoherent triangle data of an object of `D_{n,k}`: the homology-level
/// diagram on the default window and the dims witness for
/// `F ∘ s2 ≅ Σ^{k-1} ∘ F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleData {
    pub n: usize,
    pub k: usize,
    pub labels: Vec<Label>,
    pub dims: Vec<GradedDims>,
    /// Homology ranks of the covering arrows, by element indices.
    #[serde(with = "crate::dgmcalc::rank_entries")]
    pub ranks: BTreeMap<(usize, usize), GradedDims>,
    /// Pairs `(f, s2 f)` inside the window, by element indices.
    pub shift_pairs: Vec<(usize, usize)>,
}

impl TriangleData {
    /// The witness: `dims(s2 f) = dims(f)` shifted by `k - 1` on every pair.
    pub fn shift_witness(&self) -> Verdict {
        let k = self.k as i32;
        for &(a, b) in &self.shift_pairs {
            if self.dims[b] != self.dims[a].shifted(k - 1) {
                return Verdict::fail(format!(
                    "dims at {:?} are not Σ^{} of dims at {:?}",
                    self.labels[b],
                    k - 1,
                    self.labels[a]
                ));
            }
        }
        Verdict::pass(format!("{} shift pairs agree", self.shift_pairs.len()))
    }

    pub fn dims_at(&self, label: &[i64]) -> Option<&GradedDims> {
        self.labels.iter().position(|l| l == label).map(|a| &self.dims[a])
    }
}

pub fn extract_triangle(x: &SliceObject) -> Result<TriangleData> {
    let (n, k) = (x.n(), x.k());
    let w = x.window()?;
    let prof = w.data().profile();
    let idx = w.window();
    let shift_pairs = (0..idx.len())
        .filter_map(|a| idx.index_of(&s2_label(n, idx.element(a), 1)).map(|b| (a, b)))
        .collect();
    Ok(TriangleData {
        n,
        k,
        labels: prof.labels,
        dims: prof.dims,
        ranks: prof.ranks,
        shift_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{random_complex, ChainComplex};
    use crate::snk::random_slice_object;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_diagram_has_a_trivial_filtration() {
        let y = Diagram::zero(2, Arc::new(FinitePoset::chain(2)));
        let (x, f) = filtered_object(&y).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.y.iter().all(ChainComplex::is_acyclic));
        assert!(filtration_checks(&x, &f).unwrap().passed);
    }

    #[test]
    fn corrupted_connecting_maps_are_caught() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = loop {
            let c = random_complex(3, 1, 2, &mut rng);
            if !c.is_acyclic() {
                break c;
            }
        };
        // The fiber of `c -> 0` maps isomorphically onto `c`, so the
        // connecting map has full rank.
        let y = Diagram::arrow_diagram(&ChainMap::zero(&c, &ChainComplex::zero(3)));
        let (x, mut f) = filtered_object(&y).unwrap();
        assert!(filtration_checks(&x, &f).unwrap().passed);
        f.q[1] = ChainMap::zero(&f.q[1].src, &f.q[1].tgt);
        assert!(!filtration_checks(&x, &f).unwrap().passed);
    }

    #[test]
    fn zero_object_has_zero_triangle_data() {
        let t = extract_triangle(&SliceObject::zero(1, 3, 2).unwrap()).unwrap();
        assert!(t.dims.iter().all(GradedDims::is_zero));
        assert!(t.ranks.values().all(GradedDims::is_zero));
        assert!(!t.shift_pairs.is_empty());
        assert!(t.shift_witness().passed);
    }

    #[test]
    fn triangle_data_serialize_and_read_back() {
        let t = extract_triangle(&random_slice_object(2, 2, 3, 2, 9).unwrap()).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<TriangleData>(&text).unwrap(), t);
    }
}
