//! Named verification suites and their report records.
//!
//! A [`Suite`] groups property checks under a stable name. The standard
//! [`Registry`] holds one suite per area of the library; [`run_suite`] runs
//! the suite named in a [`SuiteConfig`] and returns a [`Report`] whose
//! records are sorted by check id. All randomness flows from the config seed
//! through per-check streams, so equal configs give equal reports up to the
//! timing fields.

mod algebra;
mod calculus;
mod engine;
mod io;
mod secondary;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use io::{canonical_json, io_roundtrip, io_roundtrip_str, JsonKind};

/// Outcome of one property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn pass(detail: impl Into<String>) -> Self {
        Verdict { passed: true, detail: detail.into() }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        Verdict { passed: false, detail: detail.into() }
    }

    pub fn from_bool(passed: bool, detail: impl Into<String>) -> Self {
        Verdict { passed, detail: detail.into() }
    }
}

/// Largest `n`, `k` accepted for sweeps.
pub const MAX_PARAM: usize = 16;
/// Largest dimension of a random complex per degree.
pub const MAX_DIM: usize = 6;
/// Largest top degree of a random complex.
pub const MAX_DEGREE: i32 = 6;

/// Parameters of a suite run. Missing fields take the defaults below; the
/// seed determines every random choice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// A registered suite name, or `all`.
    pub suite: String,
    /// Upper bound on `n` for exhaustive sweeps.
    pub n_max: usize,
    /// Upper bound on `k` for exhaustive sweeps.
    pub k_max: usize,
    pub primes: Vec<u32>,
    /// Random instances per check; `None` uses each check's own count.
    pub trials: Option<usize>,
    pub seed: u64,
    /// Random complexes live in degrees `0..=max_degree`.
    pub max_degree: i32,
    /// Largest dimension of a random complex in one degree.
    pub max_dim: usize,
    /// Where the CLI writes the JSON-lines report.
    pub output: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: "all".into(),
            n_max: 4,
            k_max: 4,
            primes: vec![2, 5],
            trials: None,
            seed: 1,
            max_degree: 2,
            max_dim: 2,
            output: None,
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl SuiteConfig {
    pub fn named(suite: &str) -> Self {
        SuiteConfig { suite: suite.into(), ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Input(m));
        if self.n_max > MAX_PARAM || self.k_max > MAX_PARAM {
            return bad(format!("n_max and k_max are capped at {MAX_PARAM}"));
        }
        if self.primes.is_empty() {
            return bad("at least one prime is needed".into());
        }
        if let Some(&p) = self.primes.iter().find(|&&p| !is_prime(p) || p >= 1 << 15) {
            return bad(format!("{p} is not a prime below 32768"));
        }
        if self.max_dim == 0 || self.max_dim > MAX_DIM {
            return bad(format!("max_dim must lie in 1..={MAX_DIM}"));
        }
        if !(0..=MAX_DEGREE).contains(&self.max_degree) {
            return bad(format!("max_degree must lie in 0..={MAX_DEGREE}"));
        }
        Ok(())
    }

    /// The configured trial count, else `default`.
    pub fn trials_or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    /// An independent random stream for one check.
    pub fn rng(&self, check_id: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ stream_key(check_id))
    }
}

/// FNV-1a over the check id; stable across platforms and releases.
fn stream_key(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// The statement the check verifies.
    pub anchor: String,
    pub passed: bool,
    /// Instances examined.
    pub count: usize,
    pub detail: String,
    /// Wall time; the only field allowed to differ between equal runs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

/// Check records sorted by id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    /// The report without timing fields.
    pub fn without_timings(&self) -> Report {
        let records =
            self.records.iter().map(|r| CheckRecord { elapsed_ms: None, ..r.clone() }).collect();
        Report { records }
    }

    /// One JSON object per line.
    pub fn to_jsonl(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
            .collect()
    }

    pub fn from_jsonl(text: &str) -> Result<Report> {
        let records = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .enumerate()
            .map(|(i, l)| {
                serde_json::from_str(l).map_err(|e| Error::Input(format!("report line {}: {e}", i + 1)))
            })
            .collect::<Result<Vec<CheckRecord>>>()?;
        Ok(Report { records })
    }

    pub fn summary(&self) -> String {
        let failed = self.failures().count();
        format!("{} checks, {} passed, {failed} failed", self.records.len(), self.records.len() - failed)
    }
}

/// Collects records while a suite runs. Errors inside a check become
/// failing records rather than aborting the suite.
pub struct Recorder<'a> {
    cfg: &'a SuiteConfig,
    records: Vec<CheckRecord>,
}

impl<'a> Recorder<'a> {
    fn new(cfg: &'a SuiteConfig) -> Self {
        Recorder { cfg, records: Vec::new() }
    }

    pub fn config(&self) -> &SuiteConfig {
        self.cfg
    }

    /// Run one check; `body` returns the number of instances and a verdict.
    pub fn check(&mut self, id: &str, anchor: &str, body: impl FnOnce(&mut ChaCha8Rng) -> Result<(usize, Verdict)>) {
        let mut rng = self.cfg.rng(id);
        let start = Instant::now();
        let (count, v) = match body(&mut rng) {
            Ok(r) => r,
            Err(e) => (0, Verdict::fail(format!("error: {e}"))),
        };
        self.records.push(CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            passed: v.passed,
            count,
            detail: v.detail,
            elapsed_ms: Some(start.elapsed().as_millis() as u64),
        });
    }
}

/// A named group of checks.
pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn run(&self, rec: &mut Recorder<'_>);
}

/// Suites by name.
pub struct Registry {
    suites: BTreeMap<&'static str, Box<dyn Suite>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { suites: BTreeMap::new() }
    }

    /// Every suite shipped with the crate.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(algebra::ParamapSuite));
        r.register(Box::new(algebra::CountingSuite));
        r.register(Box::new(calculus::CubesSuite));
        r.register(Box::new(engine::SnkSuite));
        r.register(Box::new(secondary::DualitySuite));
        r.register(Box::new(secondary::TodaSuite));
        r.register(Box::new(io::IoSuite));
        r
    }

    pub fn register(&mut self, suite: Box<dyn Suite>) {
        self.suites.insert(suite.name(), suite);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Suite> {
        self.suites.get(name).map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.keys().copied().collect()
    }

    pub fn describe(&self) -> Vec<(&'static str, &'static str)> {
        self.suites.values().map(|s| (s.name(), s.about())).collect()
    }

    /// Run the configured suite, or every suite for `all`.
    pub fn run(&self, cfg: &SuiteConfig) -> Result<Report> {
        cfg.validate()?;
        let chosen: Vec<&dyn Suite> = if cfg.suite == "all" {
            self.suites.values().map(|s| s.as_ref()).collect()
        } else {
            vec![self.get(&cfg.suite).ok_or_else(|| {
                Error::Input(format!("unknown suite {:?}; known: all, {}", cfg.suite, self.names().join(", ")))
            })?]
        };
        let mut rec = Recorder::new(cfg);
        for s in chosen {
            s.run(&mut rec);
        }
        let mut records = rec.records;
        records.sort_by(|a, b| a.id.cmp(&b.id));
        Ok(Report { records })
    }
}

/// Run a suite from the standard registry.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    Registry::standard().run(cfg)
}

/// Fold `trials` random instances into one verdict, stopping at the first
/// failure.
pub(crate) fn over_trials(
    trials: usize,
    mut one: impl FnMut(usize) -> Result<Verdict>,
) -> Result<(usize, Verdict)> {
    for t in 0..trials {
        let v = one(t)?;
        if !v.passed {
            return Ok((t + 1, Verdict::fail(format!("instance {t}: {}", v.detail))));
        }
    }
    Ok((trials, Verdict::pass(format!("{trials} instances"))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_keys_differ_by_id() {
        assert_ne!(stream_key("a"), stream_key("b"));
        assert_eq!(stream_key(""), 0xcbf2_9ce4_8422_2325);
    }

    #[test]
    fn unknown_suite_is_a_config_error() {
        assert!(matches!(run_suite(&SuiteConfig::named("nope")), Err(Error::Input(_))));
    }

    #[test]
    fn config_caps() {
        let mut c = SuiteConfig::default();
        assert!(c.validate().is_ok());
        c.primes = vec![4];
        assert!(c.validate().is_err());
        c = SuiteConfig { n_max: 17, ..SuiteConfig::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn zero_trials_pass_vacuously() {
        let (count, v) = over_trials(0, |_| Ok(Verdict::fail("unreachable"))).unwrap();
        assert_eq!(count, 0);
        assert!(v.passed);
    }

    #[test]
    fn jsonl_round_trip() {
        let r = Report {
            records: vec![CheckRecord {
                id: "x".into(),
                anchor: "a".into(),
                passed: true,
                count: 1,
                detail: String::new(),
                elapsed_ms: Some(3),
            }],
        };
        assert_eq!(Report::from_jsonl(&r.to_jsonl()).unwrap(), r);
        assert!(!r.without_timings().to_jsonl().contains("elapsed"));
    }
}
