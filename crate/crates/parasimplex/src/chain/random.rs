//! Seeded random complexes and chain maps.

use rand::Rng;

use super::complex::{ChainComplex, ChainMap, GradedMap};
use super::linsys::{BlockSystem, Term};
use super::matrix::FpMatrix;

pub fn random_matrix(p: u32, rows: usize, cols: usize, rng: &mut impl Rng) -> FpMatrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
    FpMatrix::from_data(p, rows, cols, data).expect("shape")
}

/// A complex in degrees `0..=maxdeg` with each dimension in `0..=maxdim`.
///
/// Each differential is a random matrix whose columns lie in the kernel of
/// the differential below, so `d∘d = 0` holds by construction.
pub fn random_complex(p: u32, maxdeg: i32, maxdim: usize, rng: &mut impl Rng) -> ChainComplex {
    if maxdim == 0 || maxdeg < 0 {
        return ChainComplex::zero(p);
    }
    let dims: Vec<usize> = (0..=maxdeg).map(|_| rng.gen_range(0..=maxdim)).collect();
    let mut d = vec![FpMatrix::zeros(p, 0, dims[0])];
    for j in 1..dims.len() {
        let below = &d[j - 1];
        let ker = below.kernel();
        let coeffs = random_matrix(p, ker.cols(), dims[j], rng);
        d.push(ker.mul(&coeffs));
    }
    ChainComplex::new(p, 0, dims, d).expect("random complex is valid by construction")
}

/// A uniformly random chain map `src -> tgt`.
pub fn random_map(src: &ChainComplex, tgt: &ChainComplex, rng: &mut impl Rng) -> ChainMap {
    let p = src.p();
    let mut sys = BlockSystem::new(p);
    let degs: Vec<i32> = src.degrees().collect();
    let blocks: Vec<usize> = degs.iter().map(|&i| sys.block(tgt.dim(i), src.dim(i))).collect();
    let block_at = |i: i32| degs.iter().position(|&x| x == i).map(|j| blocks[j]);
    // d_Y f_i - f_{i-1} d_X = 0 for every degree.
    let lo = src.lo();
    let hi = src.hi() + 1;
    let ids: Vec<(i32, FpMatrix, FpMatrix, FpMatrix, FpMatrix)> = (lo..=hi)
        .map(|i| {
            (
                i,
                tgt.d(i),
                FpMatrix::identity(p, src.dim(i)),
                FpMatrix::identity(p, tgt.dim(i - 1)).neg(),
                src.d(i),
            )
        })
        .collect();
    for (i, dy, id_src, neg_id_tgt, dx) in &ids {
        let mut terms = Vec::new();
        if let Some(b) = block_at(*i) {
            terms.push(Term { block: b, left: dy, right: id_src });
        }
        if let Some(b) = block_at(i - 1) {
            terms.push(Term { block: b, left: neg_id_tgt, right: dx });
        }
        if dy.rows() > 0 && id_src.cols() > 0 {
            sys.equation(&terms);
        }
    }
    let comps = sys.sample(rng);
    let map = GradedMap::from_fn(src, tgt, |i| comps[(i - lo) as usize].clone());
    ChainMap::new(src.clone(), tgt.clone(), map).expect("sampled from the chain-map subspace")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seed_determinism() {
        let a = random_complex(2, 3, 4, &mut ChaCha8Rng::seed_from_u64(1));
        let b = random_complex(2, 3, 4, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(a, b);
        assert!(random_complex(5, 3, 0, &mut ChaCha8Rng::seed_from_u64(1)).is_zero());
    }

    #[test]
    fn random_maps_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let x = random_complex(5, 2, 3, &mut rng);
            let y = random_complex(5, 2, 3, &mut rng);
            let f = random_map(&x, &y, &mut rng);
            assert!(f.map.is_chain_map(&x, &y));
        }
    }
}
