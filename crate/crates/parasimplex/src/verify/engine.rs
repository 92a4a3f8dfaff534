//! Randomized checks of the `D_{n,k}` engine.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::snk::{
    dh_left_agreement, frac_cy_check, j_cube_check, random_slice_object_with, recollement_check,
    serre_h_check, SliceObject,
};

use super::{over_trials, Recorder, Suite, SuiteConfig, Verdict};

/// The parameter pairs swept by the window and `J`-cube checks.
pub const ENGINE_PAIRS: [(usize, usize); 6] = [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (1, 4)];

const TRIALS: usize = 30;

/// Run `one` on random objects of each `D_{n,k}`, cycling through the
/// configured primes.
fn per_pair(
    cfg: &SuiteConfig,
    pairs: &[(usize, usize)],
    rng: &mut ChaCha8Rng,
    mut one: impl FnMut(&SliceObject) -> Result<Verdict>,
) -> Result<(usize, Verdict)> {
    let trials = cfg.trials_or(TRIALS);
    let mut total = 0;
    for &(n, k) in pairs {
        let (count, v) = over_trials(trials, |t| {
            let p = cfg.primes[t % cfg.primes.len()];
            let x = random_slice_object_with(n, k, p, cfg.max_dim, rng)?;
            one(&x)
        })?;
        total += count;
        if !v.passed {
            return Ok((total, Verdict::fail(format!("({n},{k}): {}", v.detail))));
        }
    }
    Ok((total, Verdict::pass(format!("{total} objects over {pairs:?}"))))
}

pub struct SnkSuite;

impl Suite for SnkSuite {
    fn name(&self) -> &'static str {
        "snk"
    }

    fn about(&self) -> &'static str {
        "window extension, J-cubes, Serre-type relations and the recollement on D_{n,k}"
    }

    fn run(&self, rec: &mut Recorder<'_>) {
        let cfg = rec.config().clone();
        let cfg = &cfg;
        rec.check("snk.window", "window extensions satisfy P1 and P2", |rng| {
            per_pair(cfg, &ENGINE_PAIRS, rng, |x| {
                let r = x.window()?.check()?;
                Ok(Verdict::from_bool(
                    r.passed() && r.p1_checked > 0,
                    format!("P1 failures {:?}, P2 failures {:?}", r.p1_failures, r.p2_failures),
                ))
            })
        });
        rec.check("snk.j_cube", "J-cubes identify s2* with Σ^(k-1)", |rng| {
            per_pair(cfg, &ENGINE_PAIRS, rng, |x| {
                let bad: Vec<_> = j_cube_check(x)?.into_iter().filter(|p| !p.passed()).collect();
                Ok(Verdict::from_bool(bad.is_empty(), format!("{bad:?}")))
            })
        });
        rec.check("snk.frac_cy", "(s3*)^(n+k) ≅ Σ^(n(k-1))", |rng| {
            per_pair(cfg, &[(1, 2), (2, 2), (1, 3)], rng, frac_cy_check)
        });
        rec.check("snk.dh_left", "the two constructions of d^h[-1] agree", |rng| {
            per_pair(cfg, &ENGINE_PAIRS, rng, dh_left_agreement)
        });
        rec.check("snk.serre_h", "s3* ∘ d^h[-1] ≅ d^h[1] ∘ s3*", |rng| {
            per_pair(cfg, &[(1, 2), (2, 2)], rng, serre_h_check)
        });
        rec.check("snk.recollement", "d^h ∘ d^v[-2k-1] ≅ 0 and the commuting squares", |rng| {
            let trials = cfg.trials_or(TRIALS);
            let mut total = 0;
            for (n, k) in [(1, 2), (1, 3)] {
                let p = cfg.primes[total % cfg.primes.len()];
                let v = recollement_check(n, k, p, trials, rng.gen())?;
                total += trials;
                if !v.passed {
                    return Ok((total, v));
                }
            }
            Ok((total, Verdict::pass(format!("{total} objects of D_{{1,3}} and D_{{1,4}}"))))
        });
    }
}
