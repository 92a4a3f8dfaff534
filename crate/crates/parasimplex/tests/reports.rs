//! The suite registry as a plugin point, report determinism and JSON
//! round trips through the public API.

use parasimplex::chain::random_complex;
use parasimplex::paramap::ParaMap;
use parasimplex::snk::random_slice_object;
use parasimplex::verify::{
    canonical_json, io_roundtrip_str, run_suite, JsonKind, Recorder, Registry, Report, Suite,
    SuiteConfig, Verdict,
};
use parasimplex::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

struct Always(bool);

impl Suite for Always {
    fn name(&self) -> &'static str {
        if self.0 {
            "always-pass"
        } else {
            "always-fail"
        }
    }

    fn about(&self) -> &'static str {
        "a fixed verdict"
    }

    fn run(&self, rec: &mut Recorder<'_>) {
        let passed = self.0;
        rec.check("fixed.b", "second", |_| Ok((1, Verdict::from_bool(passed, "fixed"))));
        rec.check("fixed.a", "first", |rng| Ok((1, Verdict::pass(format!("draw {}", rng.gen::<u32>())))));
        rec.check("fixed.err", "raises", |_| {
            if passed {
                Ok((0, Verdict::pass("")))
            } else {
                Err(Error::Construction("boom".into()))
            }
        });
    }
}

#[test]
fn custom_suites_register_and_report_failures() {
    let mut reg = Registry::empty();
    reg.register(Box::new(Always(true)));
    reg.register(Box::new(Always(false)));
    assert_eq!(reg.names(), ["always-fail", "always-pass"]);

    let ok = reg.run(&SuiteConfig::named("always-pass")).unwrap();
    assert!(ok.passed());
    let ids: Vec<&str> = ok.records.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["fixed.a", "fixed.b", "fixed.err"]);

    let bad = reg.run(&SuiteConfig::named("always-fail")).unwrap();
    assert!(!bad.passed());
    let failed: Vec<&str> = bad.failures().map(|r| r.id.as_str()).collect();
    assert_eq!(failed, ["fixed.b", "fixed.err"]);
    assert!(bad.records[2].detail.contains("boom"));

    // `all` runs both.
    assert_eq!(reg.run(&SuiteConfig::named("all")).unwrap().records.len(), 6);
}

#[test]
fn check_streams_depend_on_the_seed_only() {
    let mut reg = Registry::empty();
    reg.register(Box::new(Always(true)));
    let cfg = SuiteConfig { seed: 42, ..SuiteConfig::named("always-pass") };
    let a = reg.run(&cfg).unwrap().without_timings();
    let b = reg.run(&cfg).unwrap().without_timings();
    assert_eq!(a, b);
    let c = reg.run(&SuiteConfig { seed: 43, ..cfg }).unwrap().without_timings();
    assert_ne!(a.records[0].detail, c.records[0].detail);
}

#[test]
fn unknown_suites_and_bad_configs_are_input_errors() {
    assert!(matches!(run_suite(&SuiteConfig::named("nope")), Err(Error::Input(_))));
    for cfg in [
        SuiteConfig { n_max: 17, ..SuiteConfig::named("paramap") },
        SuiteConfig { primes: vec![], ..SuiteConfig::named("cubes") },
        SuiteConfig { primes: vec![9], ..SuiteConfig::named("cubes") },
        SuiteConfig { max_dim: 0, ..SuiteConfig::named("cubes") },
    ] {
        assert!(matches!(run_suite(&cfg), Err(Error::Input(_))), "{cfg:?}");
    }
}

#[test]
fn zero_trials_pass_vacuously() {
    let cfg = SuiteConfig { trials: Some(0), ..SuiteConfig::named("cubes") };
    let r = run_suite(&cfg).unwrap();
    assert!(r.passed());
    assert!(r.records.iter().all(|c| c.count == 0));
}

#[test]
fn reports_are_byte_identical_without_timings() {
    for suite in ["paramap", "cubes", "toda"] {
        let cfg = SuiteConfig { trials: Some(4), seed: 9, ..SuiteConfig::named(suite) };
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert!(a.passed(), "{suite}: {}", a.summary());
        assert_eq!(a.without_timings().to_jsonl(), b.without_timings().to_jsonl());
        let back = Report::from_jsonl(&a.to_jsonl()).unwrap();
        assert_eq!(back, a);
    }
}

#[test]
fn canonical_forms_are_fixpoints() {
    let c = random_complex(5, 2, 2, &mut rand_chacha::ChaCha8Rng::seed_from_u64(3));
    let x = random_slice_object(2, 2, 3, 2, 4).unwrap();
    for (kind, v) in [
        (JsonKind::Complex, serde_json::to_value(&c).unwrap()),
        (JsonKind::SliceObject, serde_json::to_value(&x).unwrap()),
        (JsonKind::SuiteConfig, serde_json::to_value(SuiteConfig::default()).unwrap()),
    ] {
        let text = canonical_json(&v);
        let (inferred, once) = io_roundtrip_str(&text, None).unwrap();
        assert_eq!(inferred, kind);
        assert_eq!(once, text);
    }
}

fn para_map() -> impl Strategy<Value = ParaMap> {
    (0usize..=5, 0usize..=5).prop_flat_map(|(n, k)| {
        (-9i64..9, proptest::collection::vec(0..=n as i64 + 1, k)).prop_map(move |(f0, mut s)| {
            s.sort_unstable();
            ParaMap::from_coords(n, k, std::iter::once(f0).chain(s.iter().map(|d| f0 + d)).collect()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn para_map_json_round_trips(f in para_map()) {
        let text = serde_json::to_string(&f).unwrap();
        let (kind, canonical) = io_roundtrip_str(&text, None).unwrap();
        prop_assert_eq!(kind, JsonKind::ParaMap);
        prop_assert_eq!(serde_json::from_str::<ParaMap>(&canonical).unwrap(), f);
    }

    #[test]
    fn inadmissible_coordinates_are_rejected(n in 0usize..4, a in 0i64..4, gap in 1i64..4) {
        // Decreasing coordinates are never admissible.
        let text = format!(r#"{{"n":{n},"k":1,"coords":[{},{a}]}}"#, a + gap);
        let e = io_roundtrip_str(&text, Some(JsonKind::ParaMap)).unwrap_err();
        prop_assert!(e.to_string().contains("coords:"));
    }
}
