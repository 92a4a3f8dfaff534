//! Exhaustive checks on parasimplex maps and slice counts.

use crate::error::Result;
use crate::homposet::{
    injective_count, slice_poset, structural_map, xi, Label, SliceSpec, StructuralMap,
};
use crate::paramap::{ParaMap, SimplexMap, Symmetry};

use super::{Recorder, Suite, SuiteConfig, Verdict};

/// Every admissible map `Λ_k -> Λ_n` with coordinates in `[0, n+1]`.
pub(crate) fn all_maps(n: usize, k: usize) -> Vec<ParaMap> {
    fn grow(n: i64, k: usize, cur: &mut Vec<i64>, out: &mut Vec<ParaMap>) {
        if cur.len() == k + 1 {
            out.push(ParaMap::from_coords(n as usize, k, cur.clone()).expect("admissible by construction"));
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        let hi = cur.first().map_or(n + 1, |&f0| (f0 + n + 1).min(n + 1));
        for c in lo..=hi {
            cur.push(c);
            grow(n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(n as i64, k, &mut Vec::new(), &mut out);
    out
}

/// Every monotone map `[k] -> [n]`.
fn all_simplex_maps(n: usize, k: usize) -> Vec<SimplexMap> {
    all_maps(n, k)
        .into_iter()
        .filter(|f| f.coords()[k] <= n as i64)
        .map(|f| SimplexMap::new(k, n, f.coords().iter().map(|&c| c as usize).collect()).expect("monotone"))
        .collect()
}

/// Run `law` on every map with `n, k ≤` the configured caps.
fn sweep(cfg: &SuiteConfig, law: impl Fn(&ParaMap) -> Result<Option<String>>) -> Result<(usize, Verdict)> {
    let mut count = 0;
    for n in 0..=cfg.n_max {
        for k in 0..=cfg.k_max {
            for f in all_maps(n, k) {
                count += 1;
                if let Some(why) = law(&f)? {
                    return Ok((count, Verdict::fail(format!("{f}: {why}"))));
                }
            }
        }
    }
    Ok((count, Verdict::pass(format!("{count} maps"))))
}

fn window(f: &ParaMap) -> std::ops::RangeInclusive<i64> {
    let b = 2 * (f.n() as i64 + 1) * (f.k() as i64 + 1);
    -b..=b
}

fn fails(ok: bool, why: &str) -> Option<String> {
    (!ok).then(|| why.to_string())
}

pub struct ParamapSuite;

impl Suite for ParamapSuite {
    fn name(&self) -> &'static str {
        "paramap"
    }

    fn about(&self) -> &'static str {
        "exhaustive laws of parasimplex maps for n, k up to the caps"
    }

    fn run(&self, rec: &mut Recorder<'_>) {
        let cfg = rec.config().clone();
        let r = &cfg;

        rec.check("paramap.identity", "composition is unital", |_| sweep(r, |f| {
            let left = ParaMap::identity(f.n()).compose(f)?;
            let right = f.compose(&ParaMap::identity(f.k()))?;
            Ok(fails(&left == f && &right == f, "identity law"))
        }));
        rec.check("paramap.equivariance", "coordinate representation", |_| sweep(r, |f| {
            let (k, n) = (f.k() as i64, f.n() as i64);
            Ok(fails(window(f).all(|l| f.eval(l + k + 1) == f.eval(l) + n + 1), "eval is not equivariant"))
        }));
        rec.check("paramap.adjoint.left", "left adjoint: min{λ | μ ≤ f(λ)}", |_| sweep(r, |f| {
            let l = f.left_adjoint();
            let w = window(f);
            Ok(fails(
                w.clone().all(|mu| w.clone().all(|lam| (l.eval(mu) <= lam) == (mu <= f.eval(lam)))),
                "l(f)(μ) ≤ λ ⟺ μ ≤ f(λ) fails",
            ))
        }));
        rec.check("paramap.adjoint.right", "right adjoint: max{λ | f(λ) ≤ μ}", |_| sweep(r, |f| {
            let rf = f.right_adjoint();
            let w = window(f);
            Ok(fails(
                w.clone().all(|mu| w.clone().all(|lam| (f.eval(lam) <= mu) == (lam <= rf.eval(mu)))),
                "f(λ) ≤ μ ⟺ λ ≤ r(f)(μ) fails",
            ))
        }));
        rec.check("paramap.symmetries", "s1 s2 = s2 s1 and s2^(k+1) = s1^(n+1)", |_| sweep(r, |f| {
            let (k, n) = (f.k() as i64, f.n() as i64);
            let commute = f.s1().s2() == f.s2().s1();
            let period = f.symmetry(Symmetry::S2, k + 1) == f.symmetry(Symmetry::S1, n + 1);
            let s3 = f.s3() == f.s2().symmetry(Symmetry::S1, -1);
            Ok(fails(commute && period && s3, "symmetry relation"))
        }));
        rec.check("paramap.adjoint_square", "l(f) ∘ t = t ∘ r(f)", |_| sweep(r, |f| {
            let lhs = f.left_adjoint().compose(&ParaMap::translation(f.n(), 1))?;
            let rhs = ParaMap::translation(f.k(), 1).compose(&f.right_adjoint())?;
            Ok(fails(lhs == rhs, "square does not commute"))
        }));
        rec.check("paramap.duality", "D is an involutive 2-functor to the 2-cell opposite", |_| {
            let cfg = r;
            let mut count = 0;
            let mut bad = None;
            'outer: for k in 0..=cfg.k_max {
                for n in 0..=cfg.n_max {
                    let fs = all_maps(n, k);
                    for f in &fs {
                        count += 1;
                        if f.duality().duality() != *f {
                            bad = Some(format!("{f}: D∘D ≠ id"));
                            break 'outer;
                        }
                        for g in &fs {
                            if f.leq(g) != g.duality().leq(&f.duality()) {
                                bad = Some(format!("{f}, {g}: order not reversed"));
                                break 'outer;
                            }
                        }
                    }
                    // Composable pairs Λ_k -> Λ_n -> Λ_m with small m.
                    for m in 0..=cfg.n_max.min(3) {
                        for g in all_maps(m, n) {
                            for f in &fs {
                                count += 1;
                                let lhs = g.compose(f).map(|h| h.duality());
                                let rhs = g.duality().compose(&f.duality());
                                if lhs != rhs {
                                    bad = Some(format!("{g} ∘ {f}: D not functorial"));
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
            Ok((count, bad.map_or_else(|| Verdict::pass(format!("{count} instances")), Verdict::fail)))
        });
        rec.check("paramap.ad", "ad = D ∘ r = l ∘ D and ad(0,…,0) = (0,…,0)", |_| sweep(r, |f| {
            let ad = f.ad();
            let zero = ParaMap::from_coords(f.n(), f.k(), vec![0; f.k() + 1])?;
            let zero_ad = ParaMap::from_coords(f.k(), f.n(), vec![0; f.n() + 1])?;
            Ok(fails(
                ad == f.right_adjoint().duality() && ad == f.duality().left_adjoint() && zero.ad() == zero_ad,
                "ad relation",
            ))
        }));
        rec.check("paramap.inj_iso", "inj ∘ s1 = s1 ∘ inj and inj ∘ s2 = s2 ∘ s1⁻¹ ∘ inj", |_| sweep(r, |f| {
            let i = f.inj_iso();
            let ok = i.is_injective()
                && i.inj_iso_inverse().as_ref() == Ok(f)
                && f.s1().inj_iso() == i.s1()
                && f.s2().inj_iso() == i.symmetry(Symmetry::S1, -1).s2();
            Ok(fails(ok, "injective isomorphism relation"))
        }));
        rec.check("paramap.shift_decompose", "f = s2^l ∘ i(g) with l unique", |_| sweep(r, |f| {
            let (l, g) = f.shift_decompose();
            let exact = g.embed().symmetry(Symmetry::S2, l) == *f;
            let bound = 2 * (f.k() as i64 + 1) + f.coords()[0].abs() + 2;
            let unique = (-bound..=bound).filter(|&m| {
                let h = f.symmetry(Symmetry::S2, -m);
                h.coords()[0] >= 0 && h.coords()[f.k()] <= f.n() as i64
            });
            Ok(fails(exact && unique.eq([l]), "decomposition is not exact or not unique"))
        }));
        rec.check("paramap.generators", "words in t, t⁻¹, d0, s0 recompose exactly", |_| sweep(r, |f| {
            let w = f.generator_decompose();
            let bound = 4 * (f.n() + f.k() + 2) * (f.k() + 1);
            Ok(fails(w.recompose() == *f && w.len() <= bound, "word does not recompose within the bound"))
        }));
        rec.check("paramap.embedding", "the simplex category embeds functorially", |_| {
            let cap = r.n_max.min(3);
            let mut count = 0;
            let mut bad = None;
            'outer: for a in 0..=cap {
                for b in 0..=cap {
                    for c in 0..=cap {
                        for h in all_simplex_maps(b, a) {
                            for g in all_simplex_maps(c, b) {
                                count += 1;
                                let lhs = g.compose(&h).map(|x| x.embed());
                                if lhs != g.embed().compose(&h.embed()) {
                                    bad = Some(format!("{g:?} ∘ {h:?}"));
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
                if SimplexMap::identity(a).embed() != ParaMap::identity(a) {
                    bad = Some(format!("identity of [{a}]"));
                    break;
                }
            }
            Ok((count, bad.map_or_else(|| Verdict::pass(format!("{count} pairs")), Verdict::fail)))
        });
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn injective_labels(n: usize, k: usize) -> Result<Vec<Label>> {
    let p = slice_poset(SliceSpec::slice(n, k))?;
    Ok((0..p.len()).filter(|&a| p.is_injective(a)).map(|a| p.element(a).clone()).collect())
}

/// Images of the injective labels of `Sl_{n-1,k}` under `d^v` and of
/// `Sl_{n,k-1}` under `d^h`; for `k = 2` the second part is `{ξ}`.
fn pascal_parts(n: usize, k: usize) -> Result<(Vec<Label>, Vec<Label>)> {
    let image = |m: StructuralMap, src: Vec<Label>| -> Result<Vec<Label>> {
        let u = structural_map(&m)?;
        Ok(src
            .iter()
            .map(|l| u.tgt.element(u.apply(u.src.index_of(l).expect("source label"))).clone())
            .collect())
    };
    let vertical = image(StructuralMap::Dv { n: n - 1, k }, injective_labels(n - 1, k)?)?;
    let horizontal = if k == 2 {
        vec![xi(2)]
    } else {
        image(StructuralMap::Dh { n, k: k - 1 }, injective_labels(n, k - 1)?)?
    };
    Ok((vertical, horizontal))
}

pub struct CountingSuite;

impl Suite for CountingSuite {
    fn name(&self) -> &'static str {
        "counting"
    }

    fn about(&self) -> &'static str {
        "injective labels of slices and their Pascal partition"
    }

    fn run(&self, rec: &mut Recorder<'_>) {
        rec.check("counting.injective", "injective labels of Sl_{n,k} number C(n+k-1, k-1)", |_| {
            let mut count = 0;
            for k in 2..=9 {
                for n in 0..=9 - k {
                    count += 1;
                    let got = injective_count(SliceSpec::slice(n, k))?;
                    let want = binomial(n + k - 1, k - 1);
                    if got != want {
                        return Ok((count, Verdict::fail(format!("Sl_{{{n},{k}}}: {got} vs {want}"))));
                    }
                }
            }
            Ok((count, Verdict::pass(format!("{count} slices with n + k ≤ 9"))))
        });
        rec.check("counting.pascal", "injective labels split into the images of d^v and d^h", |_| {
            let mut count = 0;
            for k in 2..=6 {
                for n in 1..=7 - k {
                    count += 1;
                    let all = injective_labels(n, k)?;
                    let (v, h) = pascal_parts(n, k)?;
                    let mut joined: Vec<Label> = v.iter().chain(&h).cloned().collect();
                    joined.sort();
                    let disjoint = joined.windows(2).all(|w| w[0] != w[1]);
                    let mut want = all.clone();
                    want.sort();
                    if !disjoint || joined != want {
                        return Ok((count, Verdict::fail(format!("Sl_{{{n},{k}}}: images do not partition"))));
                    }
                }
            }
            Ok((count, Verdict::pass(format!("{count} slices with n + k ≤ 7"))))
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_enumeration_counts() {
        // Maps Λ_0 -> Λ_n with coordinate in [0, n+1].
        assert_eq!(all_maps(3, 0).len(), 5);
        // Λ_1 -> Λ_1: pairs 0 ≤ a ≤ b ≤ min(a+2, 2).
        assert_eq!(all_maps(1, 1).len(), 6);
        assert_eq!(all_simplex_maps(2, 1).len(), 6);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
    }

    #[test]
    fn pascal_split_of_sl_2_3() {
        let (v, h) = pascal_parts(2, 3).unwrap();
        assert_eq!(v.len() + h.len(), 6);
        assert_eq!(v.len(), binomial(3, 2));
    }
}
