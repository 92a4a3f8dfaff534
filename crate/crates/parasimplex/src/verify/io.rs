//! JSON canonical forms, round trips and report determinism.

use std::path::Path;
use std::sync::Arc;

use rand::Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::chain::{random_complex, ChainComplex};
use crate::dgmcalc::{random_diagram, Diagram};
use crate::duality::{psi_square, random_toda_data, PathDiagram, TodaData, TriangleData};
use crate::error::{Error, Result};
use crate::homposet::{slice_poset, FinitePoset, SliceSpec};
use crate::paramap::{GeneratorWord, ParaMap, SimplexMap};
use crate::snk::{random_slice_object_with, SliceObject};

use super::algebra::all_maps;
use super::{CheckRecord, Recorder, Report, Suite, SuiteConfig, Verdict};

/// The documented JSON document types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JsonKind {
    ParaMap,
    SimplexMap,
    GeneratorWord,
    Poset,
    Complex,
    Diagram,
    SliceObject,
    PathDiagram,
    TodaData,
    TriangleData,
    SuiteConfig,
    CheckRecord,
}

impl JsonKind {
    pub const ALL: [JsonKind; 12] = [
        JsonKind::ParaMap,
        JsonKind::SimplexMap,
        JsonKind::GeneratorWord,
        JsonKind::Poset,
        JsonKind::Complex,
        JsonKind::Diagram,
        JsonKind::SliceObject,
        JsonKind::PathDiagram,
        JsonKind::TodaData,
        JsonKind::TriangleData,
        JsonKind::SuiteConfig,
        JsonKind::CheckRecord,
    ];

    /// Candidate kinds for a document, from the keys of its top object.
    fn candidates(v: &Value) -> Vec<JsonKind> {
        use JsonKind as K;
        let Some(obj) = v.as_object() else { return vec![] };
        let has = |k: &str| obj.contains_key(k);
        if has("coords") {
            vec![K::ParaMap]
        } else if has("tokens") {
            vec![K::GeneratorWord]
        } else if has("index") {
            vec![K::Diagram]
        } else if has("elements") {
            vec![K::Poset]
        } else if has("dims") && has("lo") {
            vec![K::Complex]
        } else if has("shift_pairs") {
            vec![K::TriangleData]
        } else if has("values") {
            vec![K::SimplexMap]
        } else if has("data") && has("k") {
            vec![K::SliceObject]
        } else if has("data") {
            vec![K::PathDiagram, K::TodaData]
        } else if has("anchor") {
            vec![K::CheckRecord]
        } else {
            vec![K::SuiteConfig]
        }
    }
}

/// Compact JSON with object keys in sorted order.
pub fn canonical_json(v: &Value) -> String {
    // `Value` objects are ordered maps, so serializing sorts the keys.
    serde_json::to_string(v).expect("values serialize")
}

/// serde_json appends the line and column when the error has a position.
fn located(kind: JsonKind, e: &serde_json::Error) -> Error {
    Error::Input(format!("{kind:?}: {e}"))
}

/// Parse `text` as `T` and return its canonical form.
fn canonical_as<T: Serialize + DeserializeOwned>(kind: JsonKind, text: &str) -> Result<String> {
    let value: T = serde_json::from_str(text).map_err(|e| located(kind, &e))?;
    let v = serde_json::to_value(&value).map_err(|e| Error::Input(format!("{kind:?}: {e}")))?;
    Ok(canonical_json(&v))
}

fn canonical_of(kind: JsonKind, text: &str) -> Result<String> {
    use JsonKind as K;
    match kind {
        K::ParaMap => canonical_as::<ParaMap>(kind, text),
        K::SimplexMap => canonical_as::<SimplexMap>(kind, text),
        K::GeneratorWord => canonical_as::<GeneratorWord>(kind, text),
        K::Poset => canonical_as::<FinitePoset>(kind, text),
        K::Complex => canonical_as::<ChainComplex>(kind, text),
        K::Diagram => canonical_as::<Diagram>(kind, text),
        K::SliceObject => canonical_as::<SliceObject>(kind, text),
        K::PathDiagram => canonical_as::<PathDiagram>(kind, text),
        K::TodaData => canonical_as::<TodaData>(kind, text),
        K::TriangleData => canonical_as::<TriangleData>(kind, text),
        K::SuiteConfig => canonical_as::<SuiteConfig>(kind, text),
        K::CheckRecord => canonical_as::<CheckRecord>(kind, text),
    }
}

/// Parse, serialize canonically, parse again and compare. With no `kind`
/// the type is inferred from the keys; the canonical text is returned on
/// success.
pub fn io_roundtrip_str(text: &str, kind: Option<JsonKind>) -> Result<(JsonKind, String)> {
    let kinds = match kind {
        Some(k) => vec![k],
        None => {
            let v: Value = serde_json::from_str(text)
                .map_err(|e| Error::Input(e.to_string()))?;
            JsonKind::candidates(&v)
        }
    };
    let mut first_err = None;
    for k in kinds {
        match canonical_of(k, text) {
            Ok(once) => {
                let twice = canonical_of(k, &once)?;
                if once != twice {
                    return Err(Error::Input(format!("{k:?}: canonical form is not a fixpoint")));
                }
                return Ok((k, once));
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.unwrap_or_else(|| Error::Input("not a JSON object of a documented type".into())))
}

/// [`io_roundtrip_str`] on a file.
pub fn io_roundtrip(path: &Path, kind: Option<JsonKind>) -> Result<(JsonKind, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    io_roundtrip_str(&text, kind)
}

/// Reverse the key order of every object, as a reordering stress test.
fn shuffled_keys(v: &Value) -> String {
    fn render(v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                out.push('{');
                for (i, (k, x)) in m.iter().rev().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                    out.push(':');
                    render(x, out);
                }
                out.push('}');
            }
            Value::Array(a) => {
                out.push('[');
                for (i, x) in a.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    render(x, out);
                }
                out.push(']');
            }
            other => out.push_str(&other.to_string()),
        }
    }
    let mut s = String::new();
    render(v, &mut s);
    s
}

/// Serialize, round-trip, and round-trip again after reordering keys.
fn fixpoint<T: Serialize>(kind: JsonKind, value: &T) -> Result<Verdict> {
    let v = serde_json::to_value(value).map_err(|e| Error::Input(e.to_string()))?;
    let text = canonical_json(&v);
    let (_, once) = io_roundtrip_str(&text, Some(kind))?;
    let (_, shuffled) = io_roundtrip_str(&shuffled_keys(&v), None)?;
    Ok(Verdict::from_bool(
        once == text && shuffled == text,
        format!("{kind:?}: canonical form changed"),
    ))
}

pub struct IoSuite;

impl Suite for IoSuite {
    fn name(&self) -> &'static str {
        "io"
    }

    fn about(&self) -> &'static str {
        "JSON round-trip fixpoints and byte-identical seeded reports"
    }

    fn run(&self, rec: &mut Recorder<'_>) {
        let cfg = rec.config().clone();
        let cfg = &cfg;
        rec.check("io.roundtrip", "parse, serialize, parse is a fixpoint on canonical JSON", |rng| {
            let p = cfg.primes[0];
            let mut docs: Vec<(JsonKind, Verdict)> = Vec::new();
            for f in all_maps(2, 2).into_iter().take(20) {
                docs.push((JsonKind::ParaMap, fixpoint(JsonKind::ParaMap, &f)?));
                docs.push((JsonKind::GeneratorWord, fixpoint(JsonKind::GeneratorWord, &f.generator_decompose())?));
                docs.push((JsonKind::SimplexMap, fixpoint(JsonKind::SimplexMap, &f.shift_decompose().1)?));
            }
            docs.push((JsonKind::Poset, fixpoint(JsonKind::Poset, &slice_poset(SliceSpec::slice(2, 3))?)?));
            for _ in 0..5 {
                let c = random_complex(p, cfg.max_degree, cfg.max_dim, rng);
                docs.push((JsonKind::Complex, fixpoint(JsonKind::Complex, &c)?));
                let n = rng.gen_range(1..=3);
                let y = random_diagram(p, Arc::new(FinitePoset::chain(n)), cfg.max_degree, cfg.max_dim, None, rng);
                docs.push((JsonKind::Diagram, fixpoint(JsonKind::Diagram, &y)?));
                docs.push((JsonKind::PathDiagram, fixpoint(JsonKind::PathDiagram, &psi_square(&y)?)?));
                let x = random_slice_object_with(1, 3, p, cfg.max_dim, rng)?;
                docs.push((JsonKind::SliceObject, fixpoint(JsonKind::SliceObject, &x)?));
                docs.push((JsonKind::TriangleData, fixpoint(JsonKind::TriangleData, &crate::duality::extract_triangle(&x)?)?));
                docs.push((JsonKind::TodaData, fixpoint(JsonKind::TodaData, &random_toda_data(3, p, 1, rng)?)?));
            }
            docs.push((JsonKind::SuiteConfig, fixpoint(JsonKind::SuiteConfig, cfg)?));
            let count = docs.len();
            Ok(match docs.into_iter().find(|(_, v)| !v.passed) {
                Some((_, v)) => (count, v),
                None => (count, Verdict::pass(format!("{count} documents"))),
            })
        });
        rec.check("io.schema_errors", "malformed documents are rejected with a location", |_| {
            // Parse errors carry a line and column; validation errors name
            // the offending field.
            let bad = [
                (JsonKind::ParaMap, r#"{"k":1,"n":1,"coords":[1,0]}"#, "coords:"),
                (JsonKind::ParaMap, r#"{"k":1,"n":1,"coords":[0]}"#, "coords:"),
                (JsonKind::ParaMap, r#"{"k":1,"n":1,"coords":"x"}"#, "line 1 column"),
                (JsonKind::Complex, r#"{"p":4,"lo":0,"hi":0,"dims":[1],"d":[]}"#, "p:"),
                (JsonKind::SuiteConfig, r#"{"suite":"paramap","bogus":1}"#, "line 1 column"),
            ];
            for (kind, text, location) in bad {
                match io_roundtrip_str(text, Some(kind)) {
                    Ok(_) => return Ok((bad.len(), Verdict::fail(format!("accepted {text}")))),
                    Err(e) if !e.to_string().contains(location) => {
                        return Ok((bad.len(), Verdict::fail(format!("expected {location:?} in {e}"))))
                    }
                    Err(_) => {}
                }
            }
            Ok((bad.len(), Verdict::pass(format!("{} malformed documents rejected", bad.len()))))
        });
        rec.check("io.determinism", "equal seeds give byte-identical reports", |_| {
            let mut small = SuiteConfig { trials: Some(3), output: None, ..cfg.clone() };
            let mut count = 0;
            for suite in ["counting", "cubes", "toda"] {
                small.suite = suite.into();
                let a = super::run_suite(&small)?.without_timings().to_jsonl();
                let b = super::run_suite(&small)?.without_timings().to_jsonl();
                count += 1;
                if a != b {
                    return Ok((count, Verdict::fail(format!("suite {suite} is not deterministic"))));
                }
                let parsed = Report::from_jsonl(&a)?.to_jsonl();
                if parsed != a {
                    return Ok((count, Verdict::fail(format!("suite {suite}: report is not a JSON fixpoint"))));
                }
            }
            Ok((count, Verdict::pass("counting, cubes and toda reports repeat exactly")))
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paramap_json_is_canonical() {
        let text = r#"{"k":2,"n":4,"coords":[0,1,2]}"#;
        let (kind, canon) = io_roundtrip_str(text, None).unwrap();
        assert_eq!(kind, JsonKind::ParaMap);
        assert_eq!(canon, r#"{"coords":[0,1,2],"k":2,"n":4}"#);
        let shuffled = r#"{"n":4,"coords":[0,1,2],"k":2}"#;
        assert_eq!(io_roundtrip_str(shuffled, None).unwrap().1, canon);
    }

    #[test]
    fn malformed_coords_are_schema_errors() {
        let e = io_roundtrip_str(r#"{"k":1,"n":1,"coords":[1,0]}"#, None).unwrap_err();
        assert!(matches!(e, Error::Input(_)));
    }
}
