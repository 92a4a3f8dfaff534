//! Randomized checks of the cube calculus.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::chain::{random_complex, ChainMap};
use crate::dgmcalc::{
    cof, concat_check, fib_cof_unit, is_bicartesian, random_diagram, tcof, tfib, total_complex,
    Diagram,
};
use crate::error::Result;
use crate::homposet::{FinitePoset, PosetMap};

use super::{over_trials, Recorder, Suite, SuiteConfig, Verdict};

/// A random diagram over `index`, or with probability one half the
/// pullback of one over `coarse` along `squash`. Pullbacks along maps that
/// collapse a cube coordinate give bicartesian cubes.
fn maybe_degenerate(
    cfg: &SuiteConfig,
    p: u32,
    index: &Arc<FinitePoset>,
    coarse: &Arc<FinitePoset>,
    squash: impl Fn(&[i64]) -> Vec<i64>,
    rng: &mut ChaCha8Rng,
) -> Result<Diagram> {
    if rng.gen_bool(0.5) {
        let y = random_diagram(p, coarse.clone(), cfg.max_degree, cfg.max_dim, None, rng);
        y.restrict(&PosetMap::from_fn(index.clone(), coarse.clone(), squash)?)
    } else {
        Ok(random_diagram(p, index.clone(), cfg.max_degree, cfg.max_dim, None, rng))
    }
}

fn random_cube(cfg: &SuiteConfig, p: u32, d: usize, rng: &mut ChaCha8Rng) -> Result<Diagram> {
    let index = Arc::new(FinitePoset::cube(d));
    let coarse = Arc::new(FinitePoset::cube(d - 1));
    maybe_degenerate(cfg, p, &index, &coarse, |e| e[1..].to_vec(), rng)
}

/// Run `one` over every configured prime with the trial count split evenly.
fn per_prime(
    cfg: &SuiteConfig,
    default_trials: usize,
    rng: &mut ChaCha8Rng,
    mut one: impl FnMut(u32, &mut ChaCha8Rng) -> Result<Verdict>,
) -> Result<(usize, Verdict)> {
    let trials = cfg.trials_or(default_trials);
    let mut total = 0;
    for &p in &cfg.primes {
        let (count, v) = over_trials(trials, |_| one(p, rng))?;
        total += count;
        if !v.passed {
            return Ok((total, Verdict::fail(format!("p = {p}: {}", v.detail))));
        }
    }
    Ok((total, Verdict::pass(format!("{total} instances over p ∈ {:?}", cfg.primes))))
}

pub struct CubesSuite;

/// Instances per prime unless the config says otherwise.
const TRIALS: usize = 200;

impl Suite for CubesSuite {
    fn name(&self) -> &'static str {
        "cubes"
    }

    fn about(&self) -> &'static str {
        "cofibers, fibers, total cofibers and the concatenation law on random cubes"
    }

    fn run(&self, rec: &mut Recorder<'_>) {
        let cfg = rec.config().clone();
        let cfg = &cfg;
        rec.check("cubes.cone_id", "the cone of an identity is acyclic", |rng| {
            per_prime(cfg, TRIALS, rng, |p, rng| {
                let c = random_complex(p, cfg.max_degree, cfg.max_dim, rng);
                let x = Diagram::arrow_diagram(&ChainMap::identity(&c));
                Ok(Verdict::from_bool(cof(&x)?.value(1).is_acyclic(), "cone(id) has homology"))
            })
        });
        rec.check("cubes.cof3", "cof³ ≅ Σ on arrows: dims and arrow ranks", |rng| {
            per_prime(cfg, TRIALS, rng, |p, rng| {
                let x = random_diagram(p, Arc::new(FinitePoset::chain(1)), cfg.max_degree, cfg.max_dim, None, rng);
                let c3 = cof(&cof(&cof(&x)?)?)?;
                Ok(Verdict::from_bool(c3.profile().agrees_with(&x.shift(1).profile()), "profiles differ"))
            })
        });
        rec.check("cubes.fib_cof_unit", "X -> fib¹ cof¹ X is a pointwise qiso", |rng| {
            per_prime(cfg, TRIALS, rng, |p, rng| {
                let d = rng.gen_range(1..=2);
                let x = random_cube(cfg, p, d, rng)?;
                let u = fib_cof_unit(&x, &(0..d).collect::<Vec<_>>())?;
                u.check()?;
                Ok(Verdict::from_bool(u.is_pointwise_qiso(), "unit is not a pointwise qiso"))
            })
        });
        rec.check("cubes.tcof_tfib", "tcof is acyclic iff tfib is acyclic", |rng| {
            let mut bicartesian = 0;
            let (count, v) = per_prime(cfg, TRIALS, rng, |p, rng| {
                let d = rng.gen_range(2..=3);
                let x = random_cube(cfg, p, d, rng)?;
                let (c, f) = (tcof(&x)?.is_acyclic(), tfib(&x)?.is_acyclic());
                bicartesian += c as usize;
                Ok(Verdict::from_bool(c == f && is_bicartesian(&x)? == c, "acyclicity differs"))
            })?;
            let detail = format!("{}; {bicartesian} bicartesian", v.detail);
            Ok((count, Verdict::from_bool(v.passed, detail)))
        });
        rec.check("cubes.total_complex", "tcof has the homology of the sign-twisted total complex", |rng| {
            per_prime(cfg, TRIALS, rng, |p, rng| {
                let d = rng.gen_range(2..=3);
                let x = random_cube(cfg, p, d, rng)?;
                let (tot, _) = total_complex(&x)?;
                let (a, b) = (tcof(&x)?.homology(), tot.homology());
                Ok(Verdict::from_bool(a == b, format!("tcof {a:?} vs total {b:?}")))
            })
        });
        rec.check("cubes.concat", "bicartesian faces of □^m × [2] satisfy two out of three", |rng| {
            per_prime(cfg, TRIALS, rng, |p, rng| {
                let m = rng.gen_range(1..=2);
                let index = Arc::new(FinitePoset::cube(m).product(&FinitePoset::chain(2)));
                // Collapse the [2] direction partly or fully so that some
                // faces are bicartesian.
                let x = match rng.gen_range(0..3) {
                    0 => random_diagram(p, index, cfg.max_degree, cfg.max_dim, None, rng),
                    1 => {
                        let coarse = Arc::new(FinitePoset::cube(m).product(&FinitePoset::chain(1)));
                        maybe_degenerate(cfg, p, &index, &coarse, |e| {
                            let mut f = e.to_vec();
                            f[m] = (f[m] == 2) as i64;
                            f
                        }, rng)?
                    }
                    _ => {
                        let coarse = Arc::new(FinitePoset::cube(m));
                        maybe_degenerate(cfg, p, &index, &coarse, |e| e[..m].to_vec(), rng)?
                    }
                };
                let v = concat_check(&x)?;
                Ok(Verdict::from_bool(v.passed(), format!("{v:?}")))
            })
        });
    }
}
