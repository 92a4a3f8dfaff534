//! Randomized checks of the duality equivalences, Toda brackets and
//! filtered objects.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::dgmcalc::{random_diagram, Diagram};
use crate::duality::{
    d34_check, dv_dh_check, extract_triangle, filtered_object, filtration_checks, in_indeterminacy,
    kappa_check, outside_indeterminacy, psi_square_check, phi, random_toda_data, random_toda_data_homotopic,
    round_trip_check, s3_commutes_check, toda, toda_alt, xi_check, TodaData,
};
use crate::error::Result;
use crate::homposet::FinitePoset;
use crate::snk::{random_slice_object_with, SliceObject};

use super::engine::ENGINE_PAIRS;
use super::{over_trials, Recorder, Suite, SuiteConfig, Verdict};

fn random_chain_diagram(cfg: &SuiteConfig, n: usize, p: u32, rng: &mut ChaCha8Rng) -> Diagram {
    random_diagram(p, Arc::new(FinitePoset::chain(n)), cfg.max_degree, cfg.max_dim, None, rng)
}

/// Run `one` on `trials` random objects of each `D_{n,k}` in `pairs`.
fn on_objects(
    cfg: &SuiteConfig,
    pairs: &[(usize, usize)],
    trials: usize,
    rng: &mut ChaCha8Rng,
    mut one: impl FnMut(&SliceObject) -> Result<Verdict>,
) -> Result<(usize, Verdict)> {
    let mut total = 0;
    for &(n, k) in pairs {
        let (count, v) = over_trials(trials, |t| {
            let p = cfg.primes[t % cfg.primes.len()];
            one(&random_slice_object_with(n, k, p, cfg.max_dim, rng)?)
        })?;
        total += count;
        if !v.passed {
            return Ok((total, Verdict::fail(format!("({n},{k}): {}", v.detail))));
        }
    }
    Ok((total, Verdict::pass(format!("{total} objects over {pairs:?}"))))
}

/// The pairs on which `Φ` is checked both ways.
const PHI_PAIRS: [(usize, usize); 3] = [(1, 2), (2, 2), (1, 3)];

pub struct DualitySuite;

impl Suite for DualitySuite {
    fn name(&self) -> &'static str {
        "duality"
    }

    fn about(&self) -> &'static str {
        "the kappa identity, Φ round trips, ξ compatibility and the D_{3,4} vertex formulas"
    }

    fn run(&self, rec: &mut Recorder<'_>) {
        let cfg = rec.config().clone();
        let cfg = &cfg;
        rec.check("duality.kappa", "Σ (→τ)_* (d_0)_! ≅ cof¹ (→τ)_! (d_(n+1))_* on dims and ranks", |rng| {
            let trials = cfg.trials_or(30);
            let mut total = 0;
            for n in 1..=2 {
                let (count, v) = over_trials(trials, |t| {
                    let p = cfg.primes[t % cfg.primes.len()];
                    kappa_check(&random_chain_diagram(cfg, n, p, rng))
                })?;
                total += count;
                if !v.passed {
                    return Ok((total, Verdict::fail(format!("n = {n}: {}", v.detail))));
                }
            }
            Ok((total, Verdict::pass(format!("{total} diagrams over [1] and [2]"))))
        });
        rec.check("duality.psi_square", "Ψ^□ has path support with the expected path values", |rng| {
            let trials = cfg.trials_or(30);
            let mut total = 0;
            for n in 0..=3 {
                let (count, v) = over_trials(trials, |t| {
                    let p = cfg.primes[t % cfg.primes.len()];
                    psi_square_check(&random_chain_diagram(cfg, n, p, rng))
                })?;
                total += count;
                if !v.passed {
                    return Ok((total, Verdict::fail(format!("n = {n}: {}", v.detail))));
                }
            }
            Ok((total, Verdict::pass(format!("{total} diagrams over [n], n ≤ 3"))))
        });
        rec.check("duality.phi12_dims", "Φ_{1,2} preserves dims at every label", |rng| {
            on_objects(cfg, &[(1, 2)], cfg.trials_or(20), rng, |x| {
                let (a, b) = (phi(x)?.profile(), x.profile());
                Ok(Verdict::from_bool(a.dims == b.dims, format!("{:?} vs {:?}", a.dims, b.dims)))
            })
        });
        rec.check("duality.round_trip", "Φ_{k-1,n+1} ∘ Φ_{n,k} ≅ id on dims and ranks", |rng| {
            on_objects(cfg, &PHI_PAIRS, cfg.trials_or(20), rng, round_trip_check)
        });
        rec.check("duality.s3", "s3* ∘ Φ ≅ Φ ∘ s3*", |rng| {
            on_objects(cfg, &PHI_PAIRS, cfg.trials_or(20), rng, s3_commutes_check)
        });
        rec.check("duality.xi", "ξ* ∘ Φ ≅ ξ*", |rng| {
            on_objects(cfg, &PHI_PAIRS, cfg.trials_or(20), rng, xi_check)
        });
        rec.check("duality.dv_dh", "d^v[0] ∘ Φ_{n,k+1} ≅ Φ_{n,k} ∘ d^h[0]", |rng| {
            on_objects(cfg, &[(1, 3)], cfg.trials_or(20).min(5), rng, dv_dh_check)
        });
        rec.check("duality.d34", "Ψ_{3,4} agrees with the vertex formulas (p = 2, dim ≤ 2)", |rng| {
            over_trials(cfg.trials_or(5).min(5), |_| {
                d34_check(&random_slice_object_with(3, 4, 2, 2, rng)?)
            })
        });
    }
}

/// Instances per `(n, p)` for the bracket checks.
const TODA_TRIALS: usize = 50;

fn random_toda(n: usize, p: u32, maxdim: usize, t: usize, rng: &mut ChaCha8Rng) -> Result<TodaData> {
    // Alternate strict zeros with nonzero null-homotopies.
    if t % 2 == 0 {
        random_toda_data(n, p, maxdim, rng)
    } else {
        random_toda_data_homotopic(n, p, maxdim, rng)
    }
}

pub struct TodaSuite;

impl Suite for TodaSuite {
    fn name(&self) -> &'static str {
        "toda"
    }

    fn about(&self) -> &'static str {
        "functorial Toda brackets, filtered objects and triangle data"
    }

    fn run(&self, rec: &mut Recorder<'_>) {
        let cfg = rec.config().clone();
        let cfg = &cfg;
        rec.check("toda.bracket", "bracket elements lie in the indeterminacy; both routes agree modulo it", |rng| {
            let trials = cfg.trials_or(TODA_TRIALS);
            let (mut total, mut nonzero, mut controls) = (0, 0, 0);
            for n in [3, 4] {
                for &p in &cfg.primes {
                    let (count, v) = over_trials(trials, |t| {
                        let x = random_toda(n, p, cfg.max_dim, t, rng)?;
                        let a = toda(&x)?;
                        let b = toda_alt(&x)?;
                        nonzero += !a.class.is_zero() as usize;
                        if !in_indeterminacy(&x, &a.class)? || !in_indeterminacy(&x, &b.class)? {
                            return Ok(Verdict::fail(format!("n = {n}, p = {p}: element outside the indeterminacy")));
                        }
                        if !in_indeterminacy(&x, &a.class.sub(&b.class)?)? {
                            return Ok(Verdict::fail(format!("n = {n}, p = {p}: routes differ")));
                        }
                        // Negative control: the membership test can say no.
                        if let Some(c) = outside_indeterminacy(&x)? {
                            controls += 1;
                            if in_indeterminacy(&x, &c)? {
                                return Ok(Verdict::fail("a class built outside the indeterminacy was accepted"));
                            }
                        }
                        Ok(Verdict::pass(""))
                    })?;
                    total += count;
                    if !v.passed {
                        return Ok((total, v));
                    }
                }
            }
            Ok((total, Verdict::pass(format!("{total} instances, {nonzero} nonzero elements, {controls} proper indeterminacies"))))
        });
        rec.check("toda.filtered", "filtration triangles are exact with the expected ranks", |rng| {
            let trials = cfg.trials_or(TODA_TRIALS);
            let mut total = 0;
            for n in 1..=3 {
                let (count, v) = over_trials(trials, |t| {
                    let p = cfg.primes[t % cfg.primes.len()];
                    let y = random_chain_diagram(cfg, n, p, rng);
                    let (x, f) = filtered_object(&y)?;
                    filtration_checks(&x, &f)
                })?;
                total += count;
                if !v.passed {
                    return Ok((total, Verdict::fail(format!("n = {n}: {}", v.detail))));
                }
            }
            Ok((total, Verdict::pass(format!("{total} filtered objects"))))
        });
        rec.check("toda.triangle", "triangle data satisfy F ∘ s2 ≅ Σ^(k-1) ∘ F on dims", |rng| {
            let trials = cfg.trials_or(TODA_TRIALS).min(10);
            let mut total = 0;
            for &(n, k) in &ENGINE_PAIRS {
                let (count, v) = over_trials(trials, |_| {
                    let p = cfg.primes[rng.gen_range(0..cfg.primes.len())];
                    let x = random_slice_object_with(n, k, p, cfg.max_dim, rng)?;
                    let t = extract_triangle(&x)?;
                    let w = t.shift_witness();
                    Ok(Verdict::from_bool(w.passed && !t.shift_pairs.is_empty(), w.detail))
                })?;
                total += count;
                if !v.passed {
                    return Ok((total, Verdict::fail(format!("({n},{k}): {}", v.detail))));
                }
            }
            Ok((total, Verdict::pass(format!("{total} objects"))))
        });
    }
}
