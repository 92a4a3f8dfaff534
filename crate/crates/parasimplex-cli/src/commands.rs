//! Subcommand handlers. Each returns whether every check it ran passed;
//! errors map to exit code 2.

use std::fs;
use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use parasimplex::chain::{is_prime, random_complex, ChainComplex};
use parasimplex::dgmcalc::{is_bicartesian, random_diagram, tcof, Diagram};
use parasimplex::duality::{
    extract_triangle, filtered_object, filtration_checks, in_indeterminacy, phi, random_toda_data,
    round_trip_check, s3_commutes_check, toda, toda_alt, xi_check, TodaData,
};
use parasimplex::homposet::{injective_count, slice_poset, FinitePoset, SliceSpec};
use parasimplex::paramap::ParaMap;
use parasimplex::snk::{dh_left_agreement, j_cube_check, SliceObject};
use parasimplex::verify::{io_roundtrip, Registry, SuiteConfig, Verdict, MAX_PARAM};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::{Cli, Command, Shape, Source};

const DEFAULT_PRIME: u32 = 2;
const DEFAULT_SEED: u64 = 1;

pub fn dispatch(cli: &Cli) -> Result<bool> {
    if cli.dot && !matches!(cli.command, Command::Poset { .. } | Command::Diagram { .. }) {
        bail!("--dot applies to the poset and diagram commands only");
    }
    match &cli.command {
        Command::Para { n, coords } => para(cli, *n, coords),
        Command::Poset { n, k, variant } => poset(cli, SliceSpec::new(*n, *k, (*variant).into())),
        Command::Chain { source } => chain(cli, source),
        Command::Diagram { shape, size, source } => diagram(cli, *shape, *size, source),
        Command::Snk { n, k, source } => snk(cli, *n, *k, source),
        Command::Phi { n, k, emit, source } => phi_cmd(cli, *n, *k, *emit, source),
        Command::Toda { n, source } => toda_cmd(cli, *n, source),
        Command::Filter { n, source } => filter(cli, *n, source),
        Command::Triangle { n, k, source } => triangle(cli, *n, *k, source),
        Command::Verify { suite, config, output, n_max, k_max, list } => {
            if *list {
                return list_suites(cli);
            }
            let cfg = suite_config(cli, suite, config.as_deref(), output, *n_max, *k_max)?;
            verify(cli, &cfg)
        }
        Command::Io { path, kind } => {
            let (kind, canonical) = io_roundtrip(path, *kind)?;
            if cli.json {
                println!("{canonical}");
            } else {
                println!("{kind:?}: fixpoint");
                println!("{canonical}");
            }
            Ok(true)
        }
    }
}

fn prime(cli: &Cli) -> Result<u32> {
    let p = cli.primes.first().copied().unwrap_or(DEFAULT_PRIME);
    if !is_prime(p) || p >= 1 << 15 {
        bail!("{p} is not a prime below 32768");
    }
    Ok(p)
}

fn rng(cli: &Cli) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cli.seed.unwrap_or(DEFAULT_SEED))
}

fn param(name: &str, v: Option<usize>, from_input: Option<usize>) -> Result<usize> {
    let v = match (v, from_input) {
        (_, Some(x)) => x,
        (Some(x), None) => x,
        (None, None) => bail!("{name} is required unless --input is given"),
    };
    if v > MAX_PARAM {
        bail!("{name} = {v} exceeds the cap {MAX_PARAM}");
    }
    Ok(v)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// The objects a command acts on: the input file, or `--trials` random draws.
fn objects<T: DeserializeOwned>(
    cli: &Cli,
    source: &Source,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Result<T>,
) -> Result<Vec<T>> {
    if let Some(path) = &source.input {
        return Ok(vec![read_json(path)?]);
    }
    let mut rng = rng(cli);
    (0..cli.trials.unwrap_or(1)).map(|_| draw(&mut rng)).collect()
}

fn check_source(source: &Source) -> Result<()> {
    if source.max_dim == 0 || source.max_dim > parasimplex::verify::MAX_DIM {
        bail!("--max-dim must lie in 1..={}", parasimplex::verify::MAX_DIM);
    }
    if !(0..=parasimplex::verify::MAX_DEGREE).contains(&source.max_degree) {
        bail!("--max-degree must lie in 0..={}", parasimplex::verify::MAX_DEGREE);
    }
    Ok(())
}

/// Print one result per object, as JSON lines or text blocks.
fn emit(cli: &Cli, records: &[(Value, String)]) {
    for (i, (v, text)) in records.iter().enumerate() {
        if cli.json {
            println!("{v}");
        } else {
            if records.len() > 1 {
                println!("# object {i}");
            }
            print!("{text}");
        }
    }
}

fn verdict_json(v: &Verdict) -> Value {
    json!({ "passed": v.passed, "detail": v.detail })
}

fn mark(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn profile_text(d: &Diagram) -> String {
    let idx = d.index();
    (0..idx.len())
        .map(|a| format!("  {:?}: {}\n", idx.element(a), d.value(a).homology()))
        .collect()
}

fn para(cli: &Cli, n: usize, coords: &[i64]) -> Result<bool> {
    let k = coords.len() - 1;
    param("n", Some(n), None)?;
    param("k", Some(k), None)?;
    let f = ParaMap::from_coords(n, k, coords.to_vec())?;
    let (power, simplex) = f.shift_decompose();
    let word = f.generator_decompose();
    let inj = f.is_injective().then(|| f.inj_iso());
    if cli.json {
        let v = json!({
            "map": f,
            "left_adjoint": f.left_adjoint(),
            "right_adjoint": f.right_adjoint(),
            "s1": f.s1(),
            "s2": f.s2(),
            "s3": f.s3(),
            "duality": f.duality(),
            "ad": f.ad(),
            "injective": f.is_injective(),
            "inj_iso": inj,
            "shift": { "power": power, "simplex": simplex },
            "generators": word,
        });
        println!("{v}");
    } else {
        println!("map            {f}");
        println!("left adjoint   {}", f.left_adjoint());
        println!("right adjoint  {}", f.right_adjoint());
        println!("s1, s2, s3     {}  {}  {}", f.s1(), f.s2(), f.s3());
        println!("duality        {}", f.duality());
        println!("ad             {}", f.ad());
        match &inj {
            Some(g) => println!("injective      yes, inj_iso {g}"),
            None => println!("injective      no"),
        }
        println!("shift          s2^{power} ∘ i{:?}", simplex.values);
        println!("generators     {} letters: {}", word.len(), serde_json::to_string(&word)?);
    }
    Ok(true)
}

fn poset(cli: &Cli, spec: SliceSpec) -> Result<bool> {
    param("n", Some(spec.n), None)?;
    param("k", Some(spec.k), None)?;
    let p = slice_poset(spec)?;
    if cli.dot {
        print!("{}", p.export_dot());
    } else if cli.json {
        println!("{}", serde_json::to_string(&p)?);
    } else {
        println!("{:?} model of D_{{{},{}}}", spec.variant, spec.n, spec.k);
        println!("elements   {}", p.len());
        println!("injective  {}", injective_count(spec)?);
        println!("covers     {}", p.covers().len());
        println!("bounds     {:?} .. {:?}", spec.basepoint(), spec.endpoint());
    }
    Ok(true)
}

fn chain(cli: &Cli, source: &Source) -> Result<bool> {
    check_source(source)?;
    let p = prime(cli)?;
    let cs: Vec<ChainComplex> =
        objects(cli, source, |rng| Ok(random_complex(p, source.max_degree, source.max_dim, rng)))?;
    let records: Vec<_> = cs
        .iter()
        .map(|c| {
            let h = c.homology();
            let v = json!({ "complex": c, "homology": h, "euler": c.euler() });
            let text = format!(
                "F_{} complex in degrees {}..{}, dims {:?}\nhomology {h}\neuler {}\n",
                c.p(),
                c.lo(),
                c.hi(),
                c.dims_vec(),
                c.euler()
            );
            (v, text)
        })
        .collect();
    emit(cli, &records);
    Ok(true)
}

fn cube_dim(idx: &FinitePoset) -> Option<usize> {
    let d = idx.elements().first()?.len();
    (*idx == FinitePoset::cube(d)).then_some(d)
}

fn diagram(cli: &Cli, shape: Shape, size: usize, source: &Source) -> Result<bool> {
    check_source(source)?;
    if size > MAX_PARAM.min(8) {
        bail!("--size is capped at 8");
    }
    let p = prime(cli)?;
    let index = Arc::new(match shape {
        Shape::Chain => FinitePoset::chain(size),
        Shape::Cube => FinitePoset::cube(size),
    });
    let ds: Vec<Diagram> = objects(cli, source, |rng| {
        Ok(random_diagram(p, index.clone(), source.max_degree, source.max_dim, None, rng))
    })?;
    if cli.dot {
        for d in &ds {
            print!("{}", d.index().export_dot());
        }
        return Ok(true);
    }
    let mut records = Vec::new();
    for d in &ds {
        let profile = d.profile();
        let mut v = json!({ "profile": profile });
        let mut text = format!("diagram over {} elements, F_{}\n{}", d.len(), d.p(), profile_text(d));
        if cube_dim(d.index()).is_some_and(|m| m >= 1) {
            let (t, b) = (tcof(d)?.homology(), is_bicartesian(d)?);
            v["tcof_homology"] = json!(t);
            v["bicartesian"] = json!(b);
            text += &format!("tcof homology {t}\nbicartesian {b}\n");
        }
        records.push((v, text));
    }
    emit(cli, &records);
    Ok(true)
}

fn slice_objects(cli: &Cli, n: Option<usize>, k: Option<usize>, source: &Source) -> Result<Vec<SliceObject>> {
    check_source(source)?;
    let p = prime(cli)?;
    if source.input.is_none() {
        let (n, k) = (param("n", n, None)?, param("k", k, None)?);
        if k < 2 {
            bail!("D_{{n,k}} is modeled for k ≥ 2");
        }
        return objects(cli, source, |rng| {
            Ok(parasimplex::snk::random_slice_object_with(n, k, p, source.max_dim, rng)?)
        });
    }
    let xs: Vec<SliceObject> = objects(cli, source, |_| unreachable!("input given"))?;
    for x in &xs {
        param("n", None, Some(x.n()))?;
        param("k", None, Some(x.k()))?;
    }
    Ok(xs)
}

fn snk(cli: &Cli, n: Option<usize>, k: Option<usize>, source: &Source) -> Result<bool> {
    let xs = slice_objects(cli, n, k, source)?;
    let mut all = true;
    let mut records = Vec::new();
    for x in &xs {
        let w = x.window()?.check()?;
        let cubes = j_cube_check(x)?;
        let cube_ok = cubes.iter().all(|c| c.passed());
        let dh = dh_left_agreement(x)?;
        let ok = w.passed() && cube_ok && dh.passed;
        all &= ok;
        let v = json!({
            "n": x.n(), "k": x.k(), "p": x.p(),
            "window": w, "j_cube": cubes, "dh_left": verdict_json(&dh), "passed": ok,
        });
        let text = format!(
            "object of D_{{{},{}}} over F_{}\n{}window P1/P2   {} ({} P1 checks)\nJ-cubes        {} ({} points)\nd^h[-1] routes {}\n",
            x.n(),
            x.k(),
            x.p(),
            profile_text(x.data()),
            mark(w.passed()),
            w.p1_checked,
            mark(cube_ok),
            cubes.len(),
            mark(dh.passed),
        );
        records.push((v, text));
    }
    emit(cli, &records);
    Ok(all)
}

fn phi_cmd(cli: &Cli, n: Option<usize>, k: Option<usize>, emit_image: bool, source: &Source) -> Result<bool> {
    let xs = slice_objects(cli, n, k, source)?;
    let mut all = true;
    let mut records = Vec::new();
    for x in &xs {
        let y = phi(x)?;
        let checks = [("round_trip", round_trip_check(x)?), ("s3", s3_commutes_check(x)?), ("xi", xi_check(x)?)];
        let ok = checks.iter().all(|(_, v)| v.passed);
        all &= ok;
        let mut v = json!({ "n": x.n(), "k": x.k(), "p": x.p(), "image_profile": y.profile(), "passed": ok });
        for (name, c) in &checks {
            v[*name] = verdict_json(c);
        }
        if emit_image {
            v["image"] = serde_json::to_value(&y)?;
        }
        let mut text = format!(
            "Φ: D_{{{},{}}} -> D_{{{},{}}} over F_{}\nimage\n{}",
            x.n(),
            x.k(),
            y.n(),
            y.k(),
            x.p(),
            profile_text(y.data())
        );
        for (name, c) in &checks {
            text += &format!("{name:<11}{} {}\n", mark(c.passed), c.detail);
        }
        if emit_image {
            text += &format!("{}\n", serde_json::to_string(&y)?);
        }
        records.push((v, text));
    }
    emit(cli, &records);
    Ok(all)
}

fn toda_cmd(cli: &Cli, n: Option<usize>, source: &Source) -> Result<bool> {
    check_source(source)?;
    let p = prime(cli)?;
    let xs: Vec<TodaData> = if source.input.is_some() {
        objects(cli, source, |_| unreachable!("input given"))?
    } else {
        let n = param("n", n, None)?;
        if n < 3 {
            bail!("Toda brackets need n ≥ 3");
        }
        objects(cli, source, |rng| Ok(random_toda_data(n, p, source.max_dim, rng)?))?
    };
    let mut all = true;
    let mut records = Vec::new();
    for x in &xs {
        param("n", None, Some(x.n()))?;
        let (a, b) = (toda(x)?, toda_alt(x)?);
        let inside = in_indeterminacy(x, &a.class)?;
        let agree = in_indeterminacy(x, &a.class.sub(&b.class)?)?;
        let ok = inside && agree;
        all &= ok;
        let ranks: Vec<(i32, usize)> = a.class.degrees().into_iter().map(|i| (i, a.class.at(i).rank())).collect();
        let v = json!({
            "n": x.n(), "p": x.p(),
            "source_homology": x.bracket_source().homology(),
            "target_homology": x.x(0).homology(),
            "class_ranks": ranks,
            "zero": a.class.is_zero(),
            "in_indeterminacy": inside,
            "routes_agree": agree,
            "passed": ok,
        });
        let text = format!(
            "Toda bracket of length {} over F_{}\nsource homology {}\ntarget homology {}\nclass ranks {ranks:?}{}\nin indeterminacy {}\nroutes agree     {}\n",
            x.n(),
            x.p(),
            x.bracket_source().homology(),
            x.x(0).homology(),
            if a.class.is_zero() { " (zero)" } else { "" },
            mark(inside),
            mark(agree),
        );
        records.push((v, text));
    }
    emit(cli, &records);
    Ok(all)
}

fn filter(cli: &Cli, n: Option<usize>, source: &Source) -> Result<bool> {
    check_source(source)?;
    let p = prime(cli)?;
    let ys: Vec<Diagram> = if source.input.is_some() {
        objects(cli, source, |_| unreachable!("input given"))?
    } else {
        let n = param("n", n, None)?;
        let index = Arc::new(FinitePoset::chain(n));
        objects(cli, source, |rng| {
            Ok(random_diagram(p, index.clone(), source.max_degree, source.max_dim, None, rng))
        })?
    };
    let mut all = true;
    let mut records = Vec::new();
    for y in &ys {
        let (x, f) = filtered_object(y)?;
        let v = filtration_checks(&x, &f)?;
        all &= v.passed;
        let layers: Vec<_> = f.y.iter().map(|c| c.homology()).collect();
        let text = format!(
            "filtration of length {}\n{}triangles {} {}\n",
            f.len(),
            layers.iter().enumerate().map(|(j, h)| format!("  y_{j}: {h}\n")).collect::<String>(),
            mark(v.passed),
            v.detail
        );
        records.push((json!({ "layers": layers, "check": verdict_json(&v), "passed": v.passed }), text));
    }
    emit(cli, &records);
    Ok(all)
}

fn triangle(cli: &Cli, n: Option<usize>, k: Option<usize>, source: &Source) -> Result<bool> {
    let xs = slice_objects(cli, n, k, source)?;
    let mut all = true;
    let mut records = Vec::new();
    for x in &xs {
        let t = extract_triangle(x)?;
        let w = t.shift_witness();
        all &= w.passed;
        let mut v = serde_json::to_value(&t)?;
        v["shift_witness"] = verdict_json(&w);
        v["passed"] = json!(w.passed);
        let text = format!(
            "triangle data of D_{{{},{}}}: {} labels, {} s2 pairs\nshift witness {} {}\n",
            t.n,
            t.k,
            t.labels.len(),
            t.shift_pairs.len(),
            mark(w.passed),
            w.detail
        );
        records.push((v, text));
    }
    emit(cli, &records);
    Ok(all)
}

fn list_suites(cli: &Cli) -> Result<bool> {
    for (name, about) in Registry::standard().describe() {
        if cli.json {
            println!("{}", json!({ "name": name, "about": about }));
        } else {
            println!("{name:<10} {about}");
        }
    }
    Ok(true)
}

/// The config file, then flags on top. The seed comes from `--seed` or
/// `PARASIMPLEX_SEED` when given, else from the file.
fn suite_config(
    cli: &Cli,
    suite: &Option<String>,
    config: Option<&Path>,
    output: &Option<std::path::PathBuf>,
    n_max: Option<usize>,
    k_max: Option<usize>,
) -> Result<SuiteConfig> {
    let mut cfg: SuiteConfig = match config {
        Some(path) => read_json(path)?,
        None => SuiteConfig::default(),
    };
    if let Some(s) = suite {
        cfg.suite = s.clone();
    }
    if !cli.primes.is_empty() {
        cfg.primes = cli.primes.clone();
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if cli.trials.is_some() {
        cfg.trials = cli.trials;
    }
    if let Some(n) = n_max {
        cfg.n_max = n;
    }
    if let Some(k) = k_max {
        cfg.k_max = k;
    }
    if output.is_some() {
        cfg.output = output.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn verify(cli: &Cli, cfg: &SuiteConfig) -> Result<bool> {
    let report = Registry::standard().run(cfg)?;
    let lines = report.to_jsonl();
    if let Some(path) = &cfg.output {
        fs::write(path, &lines).with_context(|| format!("writing {}", path.display()))?;
    }
    if cli.json {
        print!("{lines}");
    } else {
        for r in &report.records {
            let ms = r.elapsed_ms.map(|t| format!("{t} ms")).unwrap_or_default();
            println!("{} {:<22} {:>6} {:>8}  {}", mark(r.passed), r.id, r.count, ms, r.detail);
        }
        println!("{}", report.summary());
    }
    Ok(report.passed())
}
