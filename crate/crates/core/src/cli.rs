//! Command-line surface: session files in, one JSON report out.

use crate::error::EngineError;
use crate::homology::{homology_all, HomologyData};
use crate::koszul::{cyclic_quotient, depth_via_koszul, koszul};
use crate::level::{level_of_module, level_report, LevelOptions, LevelReport};
use crate::resolution::resolve_module;
use crate::ring::IdealHandle;
use crate::session::{parse_session_with_prime, Session};
use clap::Parser;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "homlevel",
    about = "Certified level bounds for chain complexes over graded quotient rings"
)]
pub struct Args {
    /// Command: homology | resolve | koszul | level | verify
    pub command: String,
    /// Session file; `-` reads from stdin
    pub file: String,
    #[arg(long)]
    pub complex: Option<String>,
    #[arg(long)]
    pub module: Option<String>,
    #[arg(long)]
    pub ring: Option<String>,
    #[arg(long)]
    pub ideal: Option<String>,
    /// Resolution step bound
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    /// Build the Koszul complex of the given ideal power
    #[arg(long)]
    pub power: Option<u32>,
    /// Override the prime of every ring in the session
    #[arg(long)]
    pub prime: Option<u64>,
    /// Verification suite: gaps | pd | koszul | everyn
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
}

pub fn main() -> i32 {
    let args = Args::parse();
    match run_args(&args) {
        Ok((doc, ok)) => {
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            1
        }
    }
}

fn run_args(args: &Args) -> Result<(Value, bool), EngineError> {
    if args.steps == 0 {
        return Err(EngineError::Malformed("--steps must be positive".into()));
    }
    let text = if args.file == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| EngineError::Other(e.to_string()))?;
        buf
    } else {
        std::fs::read_to_string(&args.file).map_err(|e| EngineError::Other(e.to_string()))?
    };
    let session = parse_session_with_prime(&text, args.prime)?;
    run(&args.command, &session, args)
}

fn skeleton(object: &str, command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("object".into(), json!(object));
    m.insert("command".into(), json!(command));
    m.insert("lower".into(), Value::Null);
    m.insert("upper".into(), Value::Null);
    m.insert("exact".into(), Value::Null);
    m.insert("certificates".into(), json!([]));
    m.insert("cited".into(), json!([]));
    m.insert("homology".into(), Value::Null);
    m.insert("betti".into(), Value::Null);
    m.insert("notes".into(), json!([]));
    m
}

fn homology_json(cx: &crate::complex::ChainComplex) -> Value {
    let homs = homology_all(cx);
    let ring = &cx.ring;
    let min_tw = cx
        .modules
        .iter()
        .flat_map(|m| m.twists.iter().copied())
        .min()
        .unwrap_or(0)
        .min(0);
    let max_tw = cx
        .modules
        .iter()
        .flat_map(|m| m.twists.iter().copied())
        .max()
        .unwrap_or(0);
    let margin = ring.k_length.map(|l| l as i64).unwrap_or(8);
    let rows: Vec<Value> = homs
        .iter()
        .map(|h: &HomologyData| {
            json!({
                "degree": h.degree,
                "is_zero": h.is_zero,
                "min_gens": h.min_gens,
                "finite_length": h.finite_length,
                "length": h.length,
                "hilbert": h.hf_window(min_tw, max_tw + margin),
            })
        })
        .collect();
    json!(rows)
}

fn report_into(mut doc: serde_json::Map<String, Value>, rep: &LevelReport) -> Value {
    doc.insert("lower".into(), json!(rep.lower));
    doc.insert("upper".into(), json!(rep.upper));
    doc.insert("exact".into(), json!(rep.exact));
    doc.insert(
        "certificates".into(),
        serde_json::to_value(&rep.certificates).unwrap(),
    );
    doc.insert("cited".into(), serde_json::to_value(&rep.cited).unwrap());
    let mut notes: Vec<Value> = doc["notes"].as_array().cloned().unwrap_or_default();
    notes.extend(rep.notes.iter().map(|n| json!(n)));
    doc.insert("notes".into(), json!(notes));
    Value::Object(doc)
}

pub fn run(command: &str, session: &Session, args: &Args) -> Result<(Value, bool), EngineError> {
    match command {
        "homology" => {
            let name = args
                .complex
                .as_deref()
                .ok_or_else(|| EngineError::Malformed("homology needs --complex".into()))?;
            let cx = session.complex(name)?;
            let mut doc = skeleton(name, "homology");
            doc.insert("homology".into(), homology_json(cx));
            Ok((Value::Object(doc), true))
        }
        "resolve" => {
            let (name, module) = if let Some(name) = args.module.as_deref() {
                (name.to_string(), session.module(name)?.clone())
            } else if let Some(name) = args.ideal.as_deref() {
                let ideal = session.ideal(name)?;
                (name.to_string(), cyclic_quotient(&ideal.ring, ideal))
            } else {
                return Err(EngineError::Malformed(
                    "resolve needs --module or --ideal".into(),
                ));
            };
            let res = resolve_module(&module, args.steps);
            let mut doc = skeleton(&name, "resolve");
            doc.insert("betti".into(), json!(res.betti));
            doc.insert(
                "notes".into(),
                json!([format!(
                    "resolution {} after {} steps",
                    if res.complete { "complete" } else { "truncated" },
                    res.diffs.len()
                )]),
            );
            Ok((Value::Object(doc), true))
        }
        "koszul" => {
            let name = args
                .ideal
                .as_deref()
                .ok_or_else(|| EngineError::Malformed("koszul needs --ideal".into()))?;
            let ideal = session.ideal(name)?;
            let ring = ideal.ring.clone();
            if let Some(rname) = args.ring.as_deref() {
                let r = session.ring(rname)?;
                if !std::sync::Arc::ptr_eq(r, &ring) {
                    return Err(EngineError::Malformed(
                        "the ideal does not live in the named ring".into(),
                    ));
                }
            }
            let (gens, note) = match args.power {
                Some(c) if c > 1 => (
                    ideal.power_gens(c),
                    format!("Koszul complex of the {}-th power", c),
                ),
                _ => (ideal.generators.clone(), "Koszul complex".to_string()),
            };
            let k = koszul(&ring, &gens)?;
            let mut doc = skeleton(name, "koszul");
            doc.insert("homology".into(), homology_json(&k.complex));
            let mut notes = vec![json!(note)];
            let effective = IdealHandle::new(ring.clone(), gens.clone())?;
            if let Ok(depth) = depth_via_koszul(&ring, &effective) {
                notes.push(json!(format!("depth {}", depth)));
            }
            if let Ok(beta) = effective.beta() {
                notes.push(json!(format!("beta {}", beta)));
            }
            notes.push(json!(format!(
                "ranks {:?}",
                (0..=k.complex.hi())
                    .map(|i| k.complex.rank_at(i))
                    .collect::<Vec<_>>()
            )));
            doc.insert("notes".into(), json!(notes));
            Ok((Value::Object(doc), true))
        }
        "level" => {
            if let Some(name) = args.complex.as_deref() {
                let cx = session.complex(name)?;
                let mut options = LevelOptions {
                    steps: args.steps,
                    ..Default::default()
                };
                if let Some(iname) = args.ideal.as_deref() {
                    options.nit_ideal = Some(session.ideal(iname)?.clone());
                }
                let rep = level_report(cx, &options)?;
                let mut doc = skeleton(name, "level");
                doc.insert("homology".into(), homology_json(cx));
                Ok((report_into(doc, &rep), true))
            } else if let Some(name) = args.module.as_deref() {
                let m = session.module(name)?;
                let rep = level_of_module(m, args.steps)?;
                let doc = skeleton(name, "level");
                Ok((report_into(doc, &rep), true))
            } else if let Some(iname) = args.ideal.as_deref() {
                let ideal = session.ideal(iname)?;
                let ring = ideal.ring.clone();
                let (gens, power_base) = match args.power {
                    Some(c) if c > 1 => {
                        (ideal.power_gens(c), Some((ideal.clone(), c)))
                    }
                    _ => (ideal.generators.clone(), None),
                };
                let effective = IdealHandle::new(ring.clone(), gens.clone())?;
                let k = koszul(&ring, &gens)?;
                let options = LevelOptions {
                    koszul_ideal: Some(effective.clone()),
                    power_base,
                    nit_ideal: Some(effective),
                    steps: args.steps,
                };
                let rep = level_report(&k.complex, &options)?;
                let mut doc = skeleton(iname, "level");
                doc.insert("homology".into(), homology_json(&k.complex));
                Ok((report_into(doc, &rep), true))
            } else {
                Err(EngineError::Malformed(
                    "level needs --complex, --module, or --ideal".into(),
                ))
            }
        }
        "verify" => {
            let suite = args
                .suite
                .as_deref()
                .ok_or_else(|| EngineError::Malformed("verify needs --suite".into()))?;
            let (notes, ok) = run_suite(suite, session, args)?;
            let mut doc = skeleton(suite, "verify");
            doc.insert("notes".into(), json!(notes));
            doc.insert("exact".into(), json!(ok));
            Ok((Value::Object(doc), ok))
        }
        other => Err(EngineError::Malformed(format!("unknown command `{}`", other))),
    }
}

fn run_suite(
    suite: &str,
    session: &Session,
    args: &Args,
) -> Result<(Vec<String>, bool), EngineError> {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut check = |name: String, pass: bool, notes: &mut Vec<String>| {
        notes.push(format!("{}: {}", if pass { "pass" } else { "FAIL" }, name));
        if !pass {
            ok = false;
        }
    };
    match suite {
        "everyn" => {
            let ring = match args.ring.as_deref() {
                Some(r) => session.ring(r)?.clone(),
                None => session
                    .rings
                    .values()
                    .next()
                    .cloned()
                    .ok_or_else(|| EngineError::Malformed("no ring in session".into()))?,
            };
            for n in 0..=args.max_n {
                match crate::level::everyn_example(&ring, n) {
                    Ok((_, rep)) => check(
                        format!("level of the length-{} truncation is exactly {}", n, n + 1),
                        rep.exact && rep.lower == n as i64 + 1,
                        &mut notes,
                    ),
                    Err(e) => check(format!("n = {}: {}", n, e), false, &mut notes),
                }
            }
        }
        "gaps" => {
            for (name, cx) in &session.complexes {
                match level_report(cx, &LevelOptions::default()) {
                    Ok(rep) => {
                        let upper_ok = rep.upper.is_none_or(|u| rep.lower <= u);
                        check(
                            format!("complex {}: certified sandwich is consistent", name),
                            upper_ok,
                            &mut notes,
                        );
                    }
                    Err(e) => check(format!("complex {}: {}", name, e), false, &mut notes),
                }
            }
            if session.complexes.is_empty() {
                notes.push("no complexes in session".to_string());
            }
        }
        "pd" => {
            for (name, m) in &session.modules {
                let free = crate::resolution::is_free(m);
                let (verdict, res) = crate::resolution::pd_probe(m, args.steps);
                let zero = res.betti.is_empty();
                let pd0 = matches!(verdict, crate::resolution::PdResult::Exact(d) if d <= 0);
                check(
                    format!("module {}: freeness matches projective dimension zero", name),
                    free == (pd0 || zero),
                    &mut notes,
                );
                match level_of_module(m, args.steps) {
                    Ok(rep) => check(
                        format!("module {}: level sandwich is consistent", name),
                        rep.upper.is_none_or(|u| rep.lower <= u),
                        &mut notes,
                    ),
                    Err(e) => check(format!("module {}: {}", name, e), false, &mut notes),
                }
            }
            if session.modules.is_empty() {
                notes.push("no modules in session".to_string());
            }
        }
        "koszul" => {
            for (name, ideal) in &session.ideals {
                if !ideal.is_proper() || ideal.generators.is_empty() {
                    continue;
                }
                let ring = ideal.ring.clone();
                let depth = depth_via_koszul(&ring, ideal)?;
                let dim = ideal
                    .ring
                    .krull_dim
                    .map(|d| d as i64)
                    .unwrap_or(i64::MAX);
                check(
                    format!("ideal {}: depth {} bounded by ring dimension", name, depth),
                    (depth as i64) <= dim,
                    &mut notes,
                );
                let k = koszul(&ring, &ideal.generators)?;
                let h0 = crate::homology::homology(&k.complex, 0);
                let q = cyclic_quotient(&ring, ideal);
                let window = 12;
                let lhs = h0.hf_window(0, window);
                let rhs = q.monomial_quotient().hf_window(0, window);
                check(
                    format!("ideal {}: Koszul H0 matches R/I", name),
                    lhs == rhs,
                    &mut notes,
                );
                let mult = crate::complex::ChainMap::multiplication(
                    &k.complex,
                    &ideal.generators[0],
                )?;
                let null = crate::homotopy::is_null_homotopic(&mult)?.is_some();
                check(
                    format!(
                        "ideal {}: multiplication by a generator is null-homotopic on K",
                        name
                    ),
                    null,
                    &mut notes,
                );
            }
            if session.ideals.is_empty() {
                notes.push("no ideals in session".to_string());
            }
        }
        other => {
            return Err(EngineError::Malformed(format!(
                "unknown suite `{}`",
                other
            )))
        }
    }
    Ok((notes, ok))
}
