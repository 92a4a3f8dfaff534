//! Library results against oracles written out in the test code: window
//! scans for parasimplex maps, coordinate enumeration for slices, Pascal's
//! rule for binomials and iterated cones for small cubes.

use std::collections::BTreeMap;
use std::sync::Arc;

use parasimplex::chain::{ChainComplex, GradedDims};
use parasimplex::dgmcalc::{is_bicartesian, tcof, tfib, Diagram};
use parasimplex::homposet::{
    injective_count, interval, label_injective, slice_poset, FinitePoset, SliceSpec, SliceVariant,
};
use parasimplex::paramap::{ParaMap, StructuralKind};

fn pm(n: usize, k: usize, c: &[i64]) -> ParaMap {
    ParaMap::from_coords(n, k, c.to_vec()).unwrap()
}

/// Every admissible map `Λ_k -> Λ_n` with `f(0) ∈ [0, n]`.
fn maps(n: usize, k: usize) -> Vec<ParaMap> {
    let mut out = Vec::new();
    let mut c = vec![0i64; k + 1];
    fn fill(n: usize, k: usize, i: usize, c: &mut Vec<i64>, out: &mut Vec<ParaMap>) {
        if i > k {
            if c[k] <= c[0] + n as i64 + 1 {
                out.push(ParaMap::from_coords(n, k, c.clone()).unwrap());
            }
            return;
        }
        let lo = if i == 0 { 0 } else { c[i - 1] };
        let hi = if i == 0 { n as i64 } else { c[0] + n as i64 + 1 };
        for v in lo..=hi {
            c[i] = v;
            fill(n, k, i + 1, c, out);
        }
    }
    fill(n, k, 0, &mut c, &mut out);
    out
}

const WINDOW: i64 = 40;

fn window_min(f: &ParaMap, mu: i64) -> i64 {
    (-WINDOW..=WINDOW).find(|&l| mu <= f.eval(l)).unwrap()
}

fn window_max(f: &ParaMap, mu: i64) -> i64 {
    (-WINDOW..=WINDOW).rev().find(|&l| f.eval(l) <= mu).unwrap()
}

#[test]
fn evaluation_unrolls_equivariance() {
    let f = pm(4, 2, &[0, 1, 2]);
    assert_eq!(f.eval(3), 5);
    assert_eq!(f.eval(-1), -3);
}

#[test]
fn adjoints_match_window_search() {
    for n in 0..=3 {
        for k in 0..=3 {
            for f in maps(n, k) {
                for mu in -6..=6 {
                    assert_eq!(f.left_adjoint().eval(mu), window_min(&f, mu), "l({f}) at {mu}");
                    assert_eq!(f.right_adjoint().eval(mu), window_max(&f, mu), "r({f}) at {mu}");
                }
            }
        }
    }
}

#[test]
fn right_adjoint_of_the_constant_map() {
    // Window search: f(λ) ≤ 0 and f(λ) ≤ 1 both hold exactly for λ ≤ 1.
    let r = pm(1, 1, &[0, 0]).right_adjoint();
    assert_eq!(r.coords(), [1, 1]);
    assert_eq!(r.coords(), [window_max(&pm(1, 1, &[0, 0]), 0), window_max(&pm(1, 1, &[0, 0]), 1)]);
}

#[test]
fn face_then_degeneracy_is_the_identity_on_a_window() {
    let d0 = ParaMap::structural(1, StructuralKind::Face, 0);
    let s0 = ParaMap::structural(1, StructuralKind::Degeneracy, 0);
    let id = s0.compose(&d0).unwrap();
    assert!((-4..=4).all(|l| id.eval(l) == l));
    assert_eq!(id, ParaMap::identity(1));
}

#[test]
fn left_adjoint_of_a_face_is_a_degeneracy() {
    for n in 0..=4 {
        let d0 = ParaMap::structural(n, StructuralKind::Face, 0);
        let s0 = ParaMap::structural(n, StructuralKind::Degeneracy, 0);
        assert_eq!(d0.left_adjoint(), s0, "n = {n}");
    }
}

/// `(l, g)` with `f = s2^l ∘ i(g)`, found by scanning `|l| ≤ 2(k+1)`.
fn brute_shift(f: &ParaMap) -> (i64, Vec<i64>) {
    let (n, k) = (f.n() as i64, f.k() as i64);
    for l in -2 * (k + 1)..=2 * (k + 1) {
        let g: Vec<i64> = (0..=k).map(|i| f.eval(i - l)).collect();
        if g[0] >= 0 && g[k as usize] <= n {
            return (l, g);
        }
    }
    panic!("no decomposition of {f}");
}

#[test]
fn shift_decomposition_matches_the_scan() {
    for (f, want) in [
        (pm(4, 2, &[1, 2, 5]), (1, vec![0, 1, 2])),
        (pm(2, 2, &[-1, 0, 1]), (-1, vec![0, 1, 2])),
    ] {
        let (l, g) = f.shift_decompose();
        assert_eq!(brute_shift(&f), want);
        assert_eq!((l, g.values.iter().map(|&v| v as i64).collect::<Vec<_>>()), want);
    }
    for n in 0..=3 {
        for k in 0..=3 {
            for f in maps(n, k) {
                let (l, g) = f.shift_decompose();
                assert_eq!(brute_shift(&f), (l, g.values.iter().map(|&v| v as i64).collect()));
            }
        }
    }
}

#[test]
fn degeneracy_outside_the_simplicial_range() {
    let s2 = ParaMap::structural(1, StructuralKind::Degeneracy, 2);
    assert_eq!((s2.k(), s2.n()), (2, 1));
    // Not the image of a monotone map [2] -> [1].
    assert_ne!(s2.shift_decompose().0, 0);
}

#[test]
fn coordinate_examples() {
    let xi = pm(4, 2, &[0, 1, 2]);
    assert_eq!(xi.s2().coords(), [1, 2, 5]);
    assert_eq!(xi.s3().coords(), [0, 1, 4]);
    assert!(xi.leq(&xi.s3()));
    assert_eq!(pm(2, 2, &[0, 1, 2]).duality().coords(), [0, 1, 2]);
    assert_eq!(pm(2, 2, &[0, 0, 0]).duality().coords(), [2, 2, 2]);
    assert_eq!(pm(2, 2, &[0, 0, 0]).inj_iso().coords(), [0, 1, 2]);
    assert!(!pm(3, 1, &[0, 0]).is_injective());
    for n in 0..=4 {
        for k in 0..=4 {
            let zero = pm(n, k, &vec![0; k + 1]);
            assert_eq!(zero.ad().coords(), vec![0; n + 1], "ad on Λ_{k} -> Λ_{n}");
        }
    }
}

/// Labels of `D_{n,k}` in the box `[lo, hi]`, by direct scan. A label is
/// a map `Λ_{k-1} -> Λ_{n+k-1}`, so its last coordinate is at most
/// `f(0) + n + k`.
fn box_labels(n: usize, lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for (a, b) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| (*a..=*b).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out.retain(|e| e.windows(2).all(|w| w[0] <= w[1]) && e[e.len() - 1] <= e[0] + (n + e.len()) as i64);
    out
}

#[test]
fn slice_and_domain_of_d23_by_enumeration() {
    let sl = interval(2, 3, &[0, 1, 2], &[0, 3, 4]).unwrap();
    assert_eq!(sl.len(), 8);
    assert_eq!(sl.len(), box_labels(2, &[0, 1, 2], &[0, 3, 4]).len());
    let spec = SliceSpec::new(2, 3, SliceVariant::Domain);
    assert_eq!(spec.endpoint(), [2, 3, 4]);
    let dom = slice_poset(spec).unwrap();
    assert_eq!(dom.len(), 21);
    assert_eq!(dom.len(), box_labels(2, &[0, 1, 2], &[2, 3, 4]).len());
}

fn binomial(n: usize, k: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![1; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

#[test]
fn injective_counts_follow_pascal() {
    assert_eq!(injective_count(SliceSpec::slice(2, 3)).unwrap(), 6);
    for n in 0..=6 {
        assert_eq!(injective_count(SliceSpec::slice(n, 2)).unwrap(), n + 1);
    }
    for k in 2..=6 {
        assert_eq!(injective_count(SliceSpec::slice(0, k)).unwrap(), 1);
    }
    for n in 0..=7 {
        for k in 2..=9 - n {
            let sl = slice_poset(SliceSpec::slice(n, k)).unwrap();
            let scanned = sl.elements().iter().filter(|e| label_injective(n, e)).count();
            assert_eq!(scanned, binomial(n + k - 1, k - 1), "Sl_{{{n},{k}}}");
        }
    }
}

fn fp(p: u32) -> ChainComplex {
    ChainComplex::concentrated(p, 0, 1)
}

/// A square with `F_p` at one corner and zeros elsewhere.
fn corner_square(p: u32, corner: &[i64]) -> Diagram {
    let idx = Arc::new(FinitePoset::cube(2));
    let values = (0..idx.len())
        .map(|a| if idx.element(a) == corner { fp(p) } else { ChainComplex::zero(p) })
        .collect();
    Diagram::new(p, idx, values, BTreeMap::new(), None).unwrap()
}

#[test]
fn corner_squares_by_iterated_cones() {
    for p in [2, 5] {
        // Initial corner: two cones suspend it twice.
        let x = corner_square(p, &[0, 0]);
        assert_eq!(tcof(&x).unwrap().homology(), GradedDims::from_pairs([(2, 1)]));
        assert!(!is_bicartesian(&x).unwrap());
        // Terminal corner: the total cofiber is the value itself.
        let y = corner_square(p, &[1, 1]);
        assert_eq!(tcof(&y).unwrap().homology(), GradedDims::from_pairs([(0, 1)]));
        assert_eq!(tfib(&y).unwrap().homology(), GradedDims::from_pairs([(-2, 1)]));
    }
}
