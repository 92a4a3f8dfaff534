//! The equivalences `Φ_{n,k}: D_{n,k} -> D_{k-1,n+1}`.
//!
//! `Ψ_{n,k}` is assembled from grid pieces: extend the slice object to the
//! cubical slice, read it over `[n]^{k-1}` through `c_{n,k}`, apply `Ψ^□_n`
//! in every grid coordinate, and restrict along `ad_{n,k} ∘ c_{k-1,n+1}^{-1}`.
//! Non-injective labels of the target land on off-path vertices in some
//! factor, so their values are acyclic and get collapsed to zero.
//! `Φ_{n,k} = (s3*)^n ∘ Ψ_{n,k}`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::GradedDims;
use crate::dgmcalc::{iterated, lkan, total_complex, Diagram, IteratedOp};
use crate::error::{Error, Result};
use crate::homposet::{
    ad_grid_label, canonical_iso, cubical_to_grid, slice_poset, xi, CanonicalIso, FinitePoset,
    Label, PosetMap, SliceSpec, SliceVariant,
};
use crate::paramap::Symmetry;
use crate::snk::{
    collapse_noninjective, horizontal, random_slice_object_with, symmetry_on_slice, vertical,
    SliceObject,
};
use crate::verify::Verdict;

/// Number of leading ones of a 0/1 block: `p(M) = min{j ∉ M}`.
fn leading_ones(block: &[i64]) -> i64 {
    block.iter().take_while(|&&b| b == 1).count() as i64
}

/// `Ψ_{n,k}(X)` before the final collapse, as a diagram over `Sl_{k-1,n+1}`.
pub fn psi_nk_raw(x: &SliceObject) -> Result<Diagram> {
    let (n, k) = (x.n(), x.k());
    if n == 0 || k < 2 {
        return Err(Error::Range(format!("Ψ_{{n,k}} needs n ≥ 1 and k ≥ 2, got ({n},{k})")));
    }
    let cubical = Arc::new(slice_poset(SliceSpec::new(n, k, SliceVariant::Cubical))?);
    let hat = lkan(x.data(), &PosetMap::inclusion(x.data().index().clone(), cubical)?)?;
    let grid = hat.restrict(&canonical_iso(CanonicalIso::GridToCubical { n, k })?)?;
    let big = Arc::new(FinitePoset::cube(n * (k - 1)));
    let blocks = PosetMap::from_fn(big.clone(), grid.index().clone(), |e| {
        e.chunks(n).map(leading_ones).collect()
    })?;
    let cubes = iterated(&grid.restrict(&blocks)?, IteratedOp::Fib)?;
    let target = Arc::new(slice_poset(SliceSpec::slice(k - 1, n + 1))?);
    let ad = PosetMap::from_fn(target, big, |f| ad_grid_label(n, k, &cubical_to_grid(f)))?;
    cubes.restrict(&ad)
}

/// `Ψ_{n,k}: D_{n,k} -> D_{k-1,n+1}`.
pub fn psi_nk(x: &SliceObject) -> Result<SliceObject> {
    let (n, k) = (x.n(), x.k());
    SliceObject::new(k - 1, n + 1, collapse_noninjective(&psi_nk_raw(x)?)?)
}

/// `Φ_{n,k} = (s3*)^n ∘ Ψ_{n,k}`.
pub fn phi(x: &SliceObject) -> Result<SliceObject> {
    let n = x.n() as i64;
    symmetry_on_slice(&psi_nk(x)?, Symmetry::S3, n)
}

fn agree(what: &str, a: &SliceObject, b: &SliceObject) -> Verdict {
    let (pa, pb) = (a.profile(), b.profile());
    if pa.agrees_with(&pb) {
        Verdict::pass(format!("{what}: profiles agree"))
    } else {
        Verdict::fail(format!("{what}: profiles differ"))
    }
}

/// `Φ_{k-1,n+1} ∘ Φ_{n,k} ≅ id` on `X`.
pub fn round_trip_check(x: &SliceObject) -> Result<Verdict> {
    Ok(agree("Φ∘Φ vs id", &phi(&phi(x)?)?, x))
}

/// `s3* ∘ Φ_{n,k} ≅ Φ_{n,k} ∘ s3*` on `X`.
pub fn s3_commutes_check(x: &SliceObject) -> Result<Verdict> {
    let lhs = symmetry_on_slice(&phi(x)?, Symmetry::S3, 1)?;
    let rhs = phi(&symmetry_on_slice(x, Symmetry::S3, 1)?)?;
    Ok(agree("s3∘Φ vs Φ∘s3", &lhs, &rhs))
}

/// `ξ* Φ_{n,k}(X) ≅ ξ* X` on homology dims. For `k = 2` this is also the
/// dual Serre identity `ξ* ∘ (s3*)^{n+1} ∘ Ψ̃_n ≅ ξ*`.
pub fn xi_check(x: &SliceObject) -> Result<Verdict> {
    let y = phi(x)?;
    let at = |o: &SliceObject, k: usize| -> Result<GradedDims> {
        o.data()
            .value_at(&xi(k))
            .map(|c| c.homology())
            .ok_or_else(|| Error::Range("ξ is not a slice label".into()))
    };
    let (a, b) = (at(&y, y.k())?, at(x, x.k())?);
    Ok(Verdict::from_bool(a == b, format!("ξ*Φ: {a:?} vs ξ*: {b:?}")))
}

/// `d^v[0] ∘ Φ_{n,k+1} ≅ Φ_{n,k} ∘ d^h[0]` on `X ∈ D_{n,k+1}`.
pub fn dv_dh_check(x: &SliceObject) -> Result<Verdict> {
    let lhs = vertical(&phi(x)?, 0)?;
    let rhs = phi(&horizontal(x, 0)?)?;
    Ok(agree("d^v[0]∘Φ vs Φ∘d^h[0]", &lhs, &rhs))
}

/// Round trip, `s3` compatibility and `ξ*` compatibility on `trials`
/// random objects of `D_{n,k}`.
pub fn phi_checks(n: usize, k: usize, p: u32, trials: usize, seed: u64) -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let x = random_slice_object_with(n, k, p, 2, &mut rng)?;
        for v in [round_trip_check(&x)?, s3_commutes_check(&x)?, xi_check(&x)?] {
            if !v.passed {
                return Ok(Verdict::fail(format!("({n},{k}) trial {t}: {}", v.detail)));
            }
        }
    }
    Ok(Verdict::pass(format!("({n},{k}): {trials} trials")))
}

/// One vertex formula for `Ψ_{3,4}`: the value at `label` is `Ω^loops` of
/// the total fiber of the cube at `base` spanned by `coords`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexFormula {
    pub label: Label,
    pub loops: i32,
    pub coords: Vec<usize>,
    pub base: Label,
}

/// The vertex formulas of `Ψ_{3,4}` at the twenty injective labels.
pub fn d34_formulas() -> Vec<VertexFormula> {
    const TABLE: [(&str, i32, &str, &str); 20] = [
        ("0123", 6, "123", "0345"),
        ("0124", 5, "123", "0245"),
        ("0125", 4, "123", "0235"),
        ("0126", 3, "123", "0234"),
        ("0234", 4, "23", "0145"),
        ("0235", 3, "23", "0135"),
        ("0236", 2, "23", "0134"),
        ("0134", 4, "123", "0145"),
        ("0135", 3, "123", "0135"),
        ("0136", 2, "123", "0134"),
        ("0345", 2, "3", "0125"),
        ("0346", 1, "3", "0124"),
        ("0245", 2, "23", "0125"),
        ("0246", 1, "23", "0124"),
        ("0145", 2, "123", "0125"),
        ("0146", 1, "123", "0124"),
        ("0456", 0, "", "0123"),
        ("0356", 0, "3", "0123"),
        ("0256", 0, "23", "0123"),
        ("0156", 0, "123", "0123"),
    ];
    let digits = |s: &str| -> Vec<i64> { s.bytes().map(|b| (b - b'0') as i64).collect() };
    TABLE
        .iter()
        .map(|&(label, loops, coords, base)| VertexFormula {
            label: digits(label),
            loops,
            coords: digits(coords).into_iter().map(|c| c as usize).collect(),
            base: digits(base),
        })
        .collect()
}

/// Homology of `Ω^loops tfib` of the cube at `base` along `coords`, computed
/// from the sign-twisted total complex rather than iterated fibers.
pub fn vertex_oracle(x: &SliceObject, f: &VertexFormula) -> Result<GradedDims> {
    let idx = x.data().index().clone();
    let d = f.coords.len();
    if d == 0 {
        let v = x.data().value_at(&f.base).ok_or_else(|| Error::Range(format!("{:?} not in the slice", f.base)))?;
        return Ok(v.homology().shifted(-f.loops));
    }
    let cube = Arc::new(FinitePoset::cube(d));
    let u = PosetMap::from_fn(cube, idx, |delta| {
        let mut g = f.base.clone();
        for (&c, &b) in f.coords.iter().zip(delta) {
            g[c] += b;
        }
        g
    })?;
    let (tot, _) = total_complex(&x.data().restrict(&u)?)?;
    Ok(tot.homology().shifted(-(d as i32) - f.loops))
}

/// Compare `Ψ_{3,4}(X)` with the vertex formulas on homology dims.
pub fn d34_check(x: &SliceObject) -> Result<Verdict> {
    if (x.n(), x.k()) != (3, 4) {
        return Err(Error::Range("the vertex formulas describe Ψ_{3,4}".into()));
    }
    let y = psi_nk(x)?;
    for f in d34_formulas() {
        let got = y
            .data()
            .value_at(&f.label)
            .ok_or_else(|| Error::Range(format!("{:?} not in Sl_{{3,4}}", f.label)))?
            .homology();
        let want = vertex_oracle(x, &f)?;
        if got != want {
            return Ok(Verdict::fail(format!("at {:?}: {got:?} vs oracle {want:?}", f.label)));
        }
    }
    Ok(Verdict::pass("all 20 vertex formulas agree"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homposet::label_injective;
    use crate::snk::random_slice_object;
    use std::collections::BTreeSet;

    #[test]
    fn phi_12_keeps_the_arrow() {
        for seed in 0..10 {
            let x = random_slice_object(1, 2, 2, 2, seed).unwrap();
            let y = phi(&x).unwrap();
            assert_eq!((y.n(), y.k()), (1, 2));
            assert_eq!(y.profile().dims, x.profile().dims, "seed {seed}");
        }
    }

    #[test]
    fn phi_of_zero_is_zero() {
        for (n, k) in [(1, 2), (2, 2), (1, 3)] {
            let y = phi(&SliceObject::zero(n, k, 5).unwrap()).unwrap();
            assert_eq!((y.n(), y.k()), (k - 1, n + 1));
            assert!(y.profile().is_zero());
        }
    }

    #[test]
    fn vertex_formulas_cover_the_injective_labels_once() {
        let f = d34_formulas();
        let labels: BTreeSet<_> = f.iter().map(|v| v.label.clone()).collect();
        assert_eq!(labels.len(), 20);
        assert!(f.iter().all(|v| label_injective(3, &v.label)));
        assert!(f.iter().all(|v| v.coords.iter().all(|&c| (1..4).contains(&c))));
    }

    #[test]
    fn vertex_formulas_reject_other_parameters() {
        let x = SliceObject::zero(2, 2, 2).unwrap();
        assert!(d34_check(&x).is_err());
    }
}
