//! Homology classes of chain maps in the canonical homology bases.
//!
//! The bases are the ones chosen by [`ChainComplex::homology_basis`], so two
//! classes are comparable exactly when their complexes are equal.

use std::collections::BTreeMap;

use crate::chain::{ChainComplex, ChainMap, FpMatrix, GradedMap};
use crate::error::{Error, Result};

/// `H_*(f)` as one matrix per degree of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomClass {
    pub src: ChainComplex,
    pub tgt: ChainComplex,
    pub mats: BTreeMap<i32, FpMatrix>,
}

fn hdim(c: &ChainComplex, i: i32) -> usize {
    c.homology().get(i)
}

/// Degrees in which either complex lives.
fn degree_span(a: &ChainComplex, b: &ChainComplex) -> Vec<i32> {
    let mut d: Vec<i32> = a.degrees().chain(b.degrees()).collect();
    d.sort_unstable();
    d.dedup();
    d
}

impl HomClass {
    pub fn of(f: &ChainMap) -> Self {
        let mats = degree_span(&f.src, &f.tgt)
            .into_iter()
            .map(|i| {
                let (sb, tb) = (f.src.homology_basis(i), f.tgt.homology_basis(i));
                (i, f.map.homology_matrix(i, &f.src, &f.tgt, &sb, &tb))
            })
            .collect();
        HomClass { src: f.src.clone(), tgt: f.tgt.clone(), mats }
    }

    pub fn zero(src: &ChainComplex, tgt: &ChainComplex) -> Self {
        HomClass { src: src.clone(), tgt: tgt.clone(), mats: BTreeMap::new() }
    }

    /// The matrix in degree `i`, zero where none is stored.
    pub fn at(&self, i: i32) -> FpMatrix {
        self.mats.get(&i).cloned().unwrap_or_else(|| {
            FpMatrix::zeros(self.src.p(), hdim(&self.tgt, i), hdim(&self.src, i))
        })
    }

    pub fn degrees(&self) -> Vec<i32> {
        degree_span(&self.src, &self.tgt)
    }

    pub fn is_zero(&self) -> bool {
        self.mats.values().all(FpMatrix::is_zero)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &HomClass) -> Result<HomClass> {
        if self.tgt != g.src {
            return Err(Error::Shape("homology classes do not compose".into()));
        }
        let mats = degree_span(&self.src, &g.tgt).into_iter().map(|i| (i, g.at(i).mul(&self.at(i)))).collect();
        Ok(HomClass { src: self.src.clone(), tgt: g.tgt.clone(), mats })
    }

    /// The inverse class of a quasi-isomorphism.
    pub fn inverse(&self) -> Result<HomClass> {
        let mut mats = BTreeMap::new();
        for i in self.degrees() {
            let m = self.at(i);
            let inv = if m.rows() == 0 && m.cols() == 0 {
                m.clone()
            } else {
                m.inverse().ok_or_else(|| {
                    Error::Construction(format!("comparison is not a quasi-isomorphism in degree {i}"))
                })?
            };
            mats.insert(i, inv);
        }
        Ok(HomClass { src: self.tgt.clone(), tgt: self.src.clone(), mats })
    }

    pub fn sub(&self, other: &HomClass) -> Result<HomClass> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(Error::Shape("homology classes live between different complexes".into()));
        }
        let mats = self.degrees().into_iter().map(|i| (i, self.at(i).sub(&other.at(i)))).collect();
        Ok(HomClass { src: self.src.clone(), tgt: self.tgt.clone(), mats })
    }

    /// A chain map with this class: `ι_tgt ∘ M ∘ π_src`, where `π` projects
    /// onto the chosen representatives along boundaries and a complement of
    /// the cycles.
    pub fn realize(&self) -> ChainMap {
        let (src, tgt) = (&self.src, &self.tgt);
        let map = GradedMap::from_fn(src, tgt, |i| {
            let reps = tgt.homology_basis(i).reps;
            reps.mul(&self.at(i)).mul(&homology_projection(src, i))
        });
        ChainMap { src: src.clone(), tgt: tgt.clone(), map }
    }
}

/// The projection `C_i -> H_i(C)` killing boundaries and a fixed complement
/// of the cycles; it commutes with the differentials.
pub fn homology_projection(c: &ChainComplex, i: i32) -> FpMatrix {
    let p = c.p();
    let hb = c.homology_basis(i);
    let cycles = c.d(i).kernel();
    let full = FpMatrix::identity(p, c.dim(i));
    let complement = full.select_cols(&FpMatrix::extend_basis(&cycles, &full));
    let basis = hb.boundaries.hstack(&hb.reps).hstack(&complement);
    let (b, h) = (hb.boundaries.cols(), hb.reps.cols());
    let inv = basis.inverse().expect("boundaries, representatives and a complement span");
    inv.block(b, h, 0, c.dim(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{random_complex, random_map};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn realized_class_is_a_chain_map_with_that_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for p in [2, 5] {
            for _ in 0..20 {
                let a = random_complex(p, 2, 3, &mut rng);
                let b = random_complex(p, 2, 3, &mut rng);
                let f = random_map(&a, &b, &mut rng);
                let c = HomClass::of(&f);
                let g = c.realize();
                assert!(g.map.is_chain_map(&g.src, &g.tgt));
                assert_eq!(HomClass::of(&g), c);
            }
        }
    }

    #[test]
    fn identity_class_inverts_to_itself() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let a = random_complex(5, 2, 3, &mut rng);
        let id = HomClass::of(&ChainMap::identity(&a));
        assert_eq!(id.inverse().unwrap(), id);
        assert!(id.sub(&id).unwrap().is_zero());
    }
}
