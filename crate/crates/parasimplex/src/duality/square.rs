//! Cubes with support on the standard maximal path and the equivalences
//! `Ψ^□`, `Ψ^{□,ex}` and `Ψ^{□∨}` out of diagrams over `[n]`.
//!
//! Labels of `□^n` are 0/1 tuples with coordinate `j` standing for `j ∈ M`.
//! The standard maximal path sends `i` to the suffix set `{n-i, …, n-1}`,
//! so its image is the set of non-decreasing labels. The embedding
//! `→τ(i) = {0, …, i-1}` of prefix sets has both adjoints in closed form:
//! `(→τ)_! = p*` with `p(M) = min{j ∉ M}` and `(→τ)_* = l*` with
//! `l(M) = 1 + max M`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dgmcalc::{
    collapse_support, extend_by_zero, is_bicartesian, iterated, Diagram, HomologyProfile,
    IteratedOp,
};
use crate::error::{Error, Result};
use crate::homposet::{structural_map, FinitePoset, PosetMap, StructuralMap};
use crate::verify::Verdict;

/// True when a 0/1 label lies on the standard maximal path.
pub fn on_path(label: &[i64]) -> bool {
    label.windows(2).all(|w| w[0] <= w[1])
}

/// An `n`-cube whose values vanish off the standard maximal path.
#[derive(Clone, Debug, Serialize)]
pub struct PathDiagram {
    n: usize,
    data: Diagram,
}

impl PathDiagram {
    pub fn new(n: usize, data: Diagram) -> Result<Self> {
        if **data.index() != FinitePoset::cube(n) {
            return Err(Error::Shape(format!("path diagram must be indexed by □^{n}")));
        }
        let idx = data.index().clone();
        for a in 0..idx.len() {
            if !on_path(idx.element(a)) && !data.value(a).is_zero() {
                return Err(Error::Support {
                    at: idx.element(a).clone(),
                    reason: "value off the maximal path is nonzero".into(),
                });
            }
        }
        let mask = off_path_mask(&idx);
        Ok(PathDiagram { n, data: data.with_support(mask)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &Diagram {
        &self.data
    }

    /// `→*`: the values along the path, as a diagram over `[n]`.
    pub fn along_path(&self) -> Result<Diagram> {
        let u = structural_map(&StructuralMap::MaximalPath { perm: (0..self.n).collect() })?;
        self.data.restrict(&u)
    }

    pub fn profile(&self) -> HomologyProfile {
        self.data.profile()
    }
}

impl<'de> Deserialize<'de> for PathDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            data: Diagram,
        }
        let r = Raw::deserialize(de)?;
        PathDiagram::new(r.n, r.data).map_err(serde::de::Error::custom)
    }
}

fn off_path_mask(idx: &FinitePoset) -> Vec<bool> {
    (0..idx.len()).map(|a| !on_path(idx.element(a))).collect()
}

/// Replace the acyclic off-path values of a cube by exact zeros.
fn collapse_off_path(n: usize, x: &Diagram) -> Result<PathDiagram> {
    let mask = off_path_mask(x.index());
    if (0..x.len()).all(|a| !mask[a] || x.value(a).is_zero()) {
        return PathDiagram::new(n, x.clone());
    }
    PathDiagram::new(n, collapse_support(x, &mask)?.diagram)
}

fn expect_chain(y: &Diagram, n: usize) -> Result<()> {
    if **y.index() != FinitePoset::chain(n) {
        return Err(Error::Shape(format!("expected a diagram over [{n}]")));
    }
    Ok(())
}

/// The length `n` of a diagram over `[n]`.
pub fn chain_length(y: &Diagram) -> Result<usize> {
    let n = y.len().checked_sub(1).ok_or_else(|| Error::Shape("empty index".into()))?;
    expect_chain(y, n)?;
    Ok(n)
}

/// `(→τ)_! Y = p* Y` over `□^n`.
pub fn prefix_left(y: &Diagram) -> Result<Diagram> {
    let n = chain_length(y)?;
    y.restrict(&structural_map(&StructuralMap::PathAdjoint { n })?)
}

/// `(→τ)_* Y = l* Y` over `□^n`.
pub fn prefix_right(y: &Diagram) -> Result<Diagram> {
    let n = chain_length(y)?;
    y.restrict(&structural_map(&StructuralMap::PathRightAdjoint { n })?)
}

/// `fib¹ ∘ (→τ)_!` before the off-path collapse.
pub fn psi_square_raw(y: &Diagram) -> Result<Diagram> {
    iterated(&prefix_left(y)?, IteratedOp::Fib)
}

/// `Ψ^□_n`: diagrams over `[n]` to `n`-cubes supported on the maximal path.
pub fn psi_square(y: &Diagram) -> Result<PathDiagram> {
    let n = chain_length(y)?;
    collapse_off_path(n, &psi_square_raw(y)?)
}

/// Zero extension along `[n] -> [n+1]`, `i ↦ i + shift` (`shift ∈ {0, 1}`).
fn extend_chain(y: &Diagram, shift: i64) -> Result<Diagram> {
    let n = chain_length(y)?;
    let u = PosetMap::from_fn(y.index().clone(), Arc::new(FinitePoset::chain(n + 1)), |e| {
        vec![e[0] + shift]
    })?;
    extend_by_zero(y, &u)
}

/// `Ψ^{□,ex}_n = fib¹ ∘ (→τ)_! ∘ (d_{n+1})_*`, an `(n+1)`-cube.
pub fn psi_square_ex(y: &Diagram) -> Result<PathDiagram> {
    let n = chain_length(y)?;
    let z = extend_chain(y, 0)?;
    collapse_off_path(n + 1, &iterated(&prefix_left(&z)?, IteratedOp::Fib)?)
}

/// `Ψ^{□∨}_n = cof¹ ∘ (→τ)_*`; its off-path values are acyclic as well.
pub fn psi_square_vee(y: &Diagram) -> Result<PathDiagram> {
    let n = chain_length(y)?;
    collapse_off_path(n, &iterated(&prefix_right(y)?, IteratedOp::Cof)?)
}

/// `Σ ∘ (→τ)_* ∘ (d_0)_!` against `cof¹ ∘ (→τ)_! ∘ (d_{n+1})_*` on `□^{n+1}`,
/// compared by homology dims and arrow ranks.
pub fn kappa_check(y: &Diagram) -> Result<Verdict> {
    let lhs = prefix_right(&extend_chain(y, 1)?)?.shift(1);
    let rhs = iterated(&prefix_left(&extend_chain(y, 0)?)?, IteratedOp::Cof)?;
    let (a, b) = (lhs.profile(), rhs.profile());
    Ok(Verdict::from_bool(
        a.agrees_with(&b),
        if a.agrees_with(&b) { "kappa: profiles agree".to_string() } else { format!("kappa: {:?} vs {:?}", a.dims, b.dims) },
    ))
}

/// Support, path values and bicartesianness of `Ψ^□`, `Ψ^{□,ex}` and
/// `Ψ^{□∨}` on one input.
///
/// Along the path, `→(n)*Ψ^□ Y ≅ Y(0)` and for `i < n` the value at `→(i)`
/// is `Ω^{n-i-1}` of the fiber of `Y(n-i-1) -> Y(n-i)`; the oracle computes
/// those fibers as cocones of the arrows of `Y` directly.
pub fn psi_square_check(y: &Diagram) -> Result<Verdict> {
    let n = chain_length(y)?;
    let raw = psi_square_raw(y)?;
    let idx = raw.index().clone();
    if let Some(a) = (0..idx.len()).find(|&a| !on_path(idx.element(a)) && !raw.value(a).is_acyclic()) {
        return Ok(Verdict::fail(format!("Ψ^□ is not acyclic off the path at {:?}", idx.element(a))));
    }
    let path = psi_square(y)?.along_path()?;
    for i in 0..=n {
        let want = if i == n {
            y.value(0).homology()
        } else {
            let f = y.chain_map(n - i - 1, n - i)?;
            f.cocone().homology().shifted(-((n - i - 1) as i32))
        };
        let got = path.value(i).homology();
        if got != want {
            return Ok(Verdict::fail(format!("Ψ^□ at →({i}): {got:?} vs {want:?}")));
        }
    }
    if !is_bicartesian(psi_square_ex(y)?.data())? {
        return Ok(Verdict::fail("Ψ^{□,ex} is not bicartesian"));
    }
    psi_square_vee(y)?;
    Ok(Verdict::pass(format!("n = {n}: support, path values and bicartesian extension")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{random_complex, ChainComplex, ChainMap};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn length_zero_is_the_identity() {
        let c = ChainComplex::concentrated(3, 1, 2);
        let y = Diagram::constant(3, Arc::new(FinitePoset::chain(0)), &c);
        let x = psi_square(&y).unwrap();
        assert_eq!(x.n(), 0);
        assert_eq!(x.data().value(0).homology(), c.homology());
    }

    #[test]
    fn identity_arrow_has_acyclic_fiber_on_the_path() {
        let c = ChainComplex::concentrated(2, 0, 1);
        let y = Diagram::arrow_diagram(&ChainMap::identity(&c));
        let path = psi_square(&y).unwrap().along_path().unwrap();
        assert!(path.value(0).is_acyclic());
        assert_eq!(path.value(1).homology(), c.homology());
        assert!(psi_square_check(&y).unwrap().passed);
    }

    #[test]
    fn kappa_holds_on_short_chains() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=2 {
            for p in [2, 3] {
                let y = crate::dgmcalc::random_diagram(p, Arc::new(FinitePoset::chain(n)), 2, 2, None, &mut rng);
                let v = kappa_check(&y).unwrap();
                assert!(v.passed, "n = {n}, p = {p}: {}", v.detail);
            }
        }
    }

    #[test]
    fn off_path_values_must_vanish() {
        let idx = Arc::new(FinitePoset::cube(2));
        let c = random_complex(2, 1, 2, &mut ChaCha8Rng::seed_from_u64(1));
        let c = if c.is_zero() { ChainComplex::concentrated(2, 0, 1) } else { c };
        let x = Diagram::constant(2, idx, &c);
        assert!(matches!(PathDiagram::new(2, x), Err(Error::Support { .. })));
    }
}
