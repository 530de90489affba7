//! Command-line front end.
//!
//! Exit codes: 0 success, 1 internal error (or FAIL entries in
//! `verify-paper`), 2 usage or parse error.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{parse_rational, Rational};
use crate::curves::{self, CurveForm, CurveSpec, CurveStatus};
use crate::error::Error;
use crate::families::{self, report::Status, FamilyMember};
use crate::solver::{
    eliminate, find_quadratic_factors_poly, pattern_sweep, CoefficientPattern, FactorSearch, Quadrinomial, SweepHit,
};
use crate::upoly::UPoly;

pub const SCHEMA: &str = "quadfactor/1";

#[derive(Parser, Debug)]
#[command(name = "quadfactor", version, about = "Quadratic factors of quadrinomials over Q")]
struct Cli {
    /// Machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for sweeps, curve searches and the report.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Accepted for compatibility; every computation is deterministic.
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,
    /// Include wall-clock timing in the output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All monic quadratic factors of a polynomial in x.
    Factor {
        #[arg(long)]
        poly: String,
    },
    /// Every (p, q, a) up to a height bound for a coefficient pattern.
    Sweep {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 50)]
        height: u64,
    },
    /// The condition on (p, q) with a eliminated.
    Eliminate {
        #[command(flatten)]
        case: CaseArgs,
    },
    /// A catalog case: a member at a parameter, or its stated solutions.
    Family {
        #[arg(long)]
        id: String,
        #[arg(long, value_name = "T", allow_hyphen_values = true)]
        param: Option<String>,
    },
    /// Rational points of bounded height on a catalog or user curve.
    Curve {
        #[arg(long, required_unless_present = "file")]
        id: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        height: u64,
    },
    /// Re-derive and re-check the whole catalog.
    VerifyPaper,
}

#[derive(Args, Debug)]
struct CaseArgs {
    /// a11, aa1, a1a or 1aa.
    #[arg(long)]
    pattern: CoefficientPattern,
    /// n,m,k with n > m > k >= 1.
    #[arg(long, value_parser = parse_exponents)]
    exponents: (u32, u32, u32),
}

fn parse_exponents(s: &str) -> Result<(u32, u32, u32), String> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [n, m, k] => Ok((*n, *m, *k)),
        _ => Err(format!("expected n,m,k, got {s:?}")),
    }
}

struct Output {
    json: Value,
    text: String,
    code: i32,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, code: 0 }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Output goes to stdout, errors to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let started = Instant::now();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(Error::Internal(e.to_string())),
        },
        None => dispatch(&cli.command),
    };
    match result {
        Ok(mut out) => {
            if cli.json {
                if let Value::Object(map) = &mut out.json {
                    if cli.timing {
                        map.insert("timing_ms".into(), json!(started.elapsed().as_millis() as u64));
                    }
                }
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
                if cli.timing {
                    println!("elapsed: {} ms", started.elapsed().as_millis());
                }
            }
            out.code
        }
        Err(e) => {
            if cli.json {
                let v = json!({ "schema": SCHEMA, "error": e.to_string() });
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            }
            eprintln!("error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

fn envelope(command: &str, inputs: Value, result: Value, diagnostics: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "result": result,
        "diagnostics": diagnostics,
    })
}

fn dispatch(cmd: &Command) -> Result<Output, Error> {
    match cmd {
        Command::Factor { poly } => factor(poly),
        Command::Sweep { case, height } => sweep(case, *height),
        Command::Eliminate { case } => elim(case),
        Command::Family { id, param } => family(id, param.as_deref()),
        Command::Curve { id, file, height } => curve(id.as_deref(), file.as_ref(), *height),
        Command::VerifyPaper => verify(),
    }
}

fn factor(text: &str) -> Result<Output, Error> {
    let f = UPoly::parse(text)?;
    let FactorSearch { factors, complete } = find_quadratic_factors_poly(&f)?;
    let mut out = format!("f = {f}\n");
    if factors.is_empty() {
        out.push_str("no quadratic factor over Q\n");
    }
    for ff in &factors {
        let mult = if ff.multiplicity > 1 {
            format!("  [multiplicity {}]", ff.multiplicity)
        } else {
            String::new()
        };
        out.push_str(&format!("  = ({}) * ({}){mult}\n", ff.factor, ff.cofactor));
    }
    if !complete {
        out.push_str("warning: an integer factorization was abandoned; the list may be incomplete\n");
    }
    let result: Vec<Value> = factors
        .iter()
        .map(|ff| {
            json!({
                "p": ff.factor.p.to_string(),
                "q": ff.factor.q.to_string(),
                "factor": ff.factor.to_string(),
                "cofactor": ff.cofactor.to_string(),
                "multiplicity": ff.multiplicity,
            })
        })
        .collect();
    Ok(Output::ok(
        envelope(
            "factor",
            json!({ "poly": text, "parsed": f.to_string() }),
            json!({ "factors": result }),
            json!({ "complete": complete }),
        ),
        out,
    ))
}

fn factorization_line(pattern: CoefficientPattern, exps: (u32, u32, u32), h: &SweepHit) -> Result<String, Error> {
    let f = Quadrinomial::from_pattern(pattern, exps.0, exps.1, exps.2, &h.a)?;
    let cof = f
        .to_upoly()
        .exact_div(&h.factor.to_upoly())?
        .ok_or_else(|| Error::Internal(format!("{} does not divide {f}", h.factor)))?;
    Ok(format!("{f} = ({}) * ({cof})", h.factor))
}

fn sweep(case: &CaseArgs, height: u64) -> Result<Output, Error> {
    let r = pattern_sweep(case.pattern, case.exponents, height)?;
    let (n, m, k) = case.exponents;
    let mut text = format!(
        "{} ({n},{m},{k}), height <= {height}: {} solutions\n",
        case.pattern,
        r.hits.len()
    );
    for h in &r.hits {
        text.push_str(&format!(
            "  p = {}, q = {}, a = {}: {}\n",
            h.factor.p,
            h.factor.q,
            h.a,
            factorization_line(case.pattern, case.exponents, h)?
        ));
    }
    for fl in &r.diagnostics.free_loci {
        text.push_str(&format!("  ({fl}) divides for every a\n"));
    }
    Ok(Output::ok(
        envelope(
            "sweep",
            json!({ "pattern": case.pattern, "exponents": [n, m, k], "height": height }),
            json!({ "hits": r.hits }),
            to_value(&r.diagnostics),
        ),
        text,
    ))
}

fn elim(case: &CaseArgs) -> Result<Output, Error> {
    let e = eliminate(case.pattern, case.exponents)?;
    let (n, m, k) = case.exponents;
    let mut text = format!("{} ({n},{m},{k}): {} = 0\n", case.pattern, e.condition.render());
    for l in &e.excluded_loci {
        text.push_str(&format!("  a-denominator locus: {} = 0\n", l.render()));
    }
    Ok(Output::ok(
        envelope(
            "eliminate",
            json!({ "pattern": case.pattern, "exponents": [n, m, k] }),
            json!({ "condition": e.condition }),
            json!({ "excluded_loci": e.excluded_loci }),
        ),
        text,
    ))
}

fn member_text(m: &FamilyMember) -> String {
    let tag = if m.conjectural { "  [conjectural]" } else { "" };
    format!(
        "  a = {}: {} = ({}) * ({}){tag}\n",
        m.a, m.quadrinomial, m.factor, m.cofactor
    )
}

fn family(id: &str, param: Option<&str>) -> Result<Output, Error> {
    let c = families::case(id)?;
    let (n, m, k) = c.exps;
    let head = format!(
        "{} {} ({n},{m},{k}), {}{}\n",
        c.id,
        c.pattern,
        c.kind_name(),
        if families::effective_conjectural(c) { ", conjectural" } else { "" }
    );
    let info = json!({
        "id": c.id,
        "pattern": c.pattern,
        "exponents": [n, m, k],
        "kind": c.kind_name(),
        "conjectural": families::effective_conjectural(c),
    });
    let (members, inputs) = match param {
        Some(t) => {
            let t: Rational = parse_rational(t)?;
            let mem = families::family_member(id, &t)?;
            (vec![mem], json!({ "id": id, "param": t.to_string() }))
        }
        None => (families::isolated_solutions(id)?, json!({ "id": id })),
    };
    let mut text = head;
    if members.is_empty() {
        text.push_str("  no quadratic factor\n");
    }
    for mem in &members {
        text.push_str(&member_text(mem));
    }
    Ok(Output::ok(
        envelope("family", inputs, json!({ "case": info, "members": members }), json!({})),
        text,
    ))
}

fn curve_result(c: &CurveSpec, height: u64) -> Result<(Value, String), Error> {
    let points = c.search(height);
    let solutions = match c.map {
        Some(_) => Some(c.points_to_solutions(&points)?),
        None => None,
    };
    let extra: Vec<_> = points.iter().filter(|p| !c.points.contains(p)).cloned().collect();
    let missing: Vec<_> = c
        .points
        .iter()
        .filter(|p| !points.contains(p) && within(c, p, height))
        .cloned()
        .collect();
    let status = match c.status {
        CurveStatus::Complete => "complete",
        CurveStatus::Conjectural => "conjectural",
        CurveStatus::Infinite => "infinite",
    };
    let mut text = format!("{} [{status}] {}, height <= {height}: {} points\n", c.id, c.form.render(), points.len());
    for p in &points {
        let tag = if c.points.contains(p) { "" } else { "  [not in the stored list]" };
        text.push_str(&format!("  {p}{tag}\n"));
    }
    for p in &missing {
        text.push_str(&format!("  missing stored point {p}\n"));
    }
    if let Some(sol) = &solutions {
        for h in sol {
            text.push_str(&format!("  -> p = {}, q = {}, a = {}\n", h.factor.p, h.factor.q, h.a));
        }
    }
    let v = json!({
        "id": c.id,
        "status": c.status,
        "form": c.form.render(),
        "height": height,
        "points": points,
        "solutions": solutions,
        "stored_points": c.points,
        "extra": extra,
        "missing": missing,
    });
    Ok((v, text))
}

fn within(c: &CurveSpec, p: &curves::CurvePoint, h: u64) -> bool {
    use crate::arith::height_u64;
    match c.form {
        CurveForm::Square(_) => height_u64(&p.0) <= h,
        CurveForm::Plane(_) => height_u64(&p.0) <= h && height_u64(&p.1) <= h,
    }
}

fn curve(id: Option<&str>, file: Option<&PathBuf>, height: u64) -> Result<Output, Error> {
    if height == 0 {
        return Err(Error::Malformed("height bound must be at least 1".into()));
    }
    let loaded;
    let selected: Vec<&CurveSpec> = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::CurveData(format!("{}: {e}", path.display())))?;
            loaded = curves::load_catalog(&text)?;
            match id {
                Some(id) => vec![loaded
                    .iter()
                    .find(|c| c.id.eq_ignore_ascii_case(id))
                    .ok_or_else(|| Error::UnknownId(id.to_string()))?],
                None => loaded.iter().collect(),
            }
        }
        None => vec![curves::get(id.expect("clap requires --id or --file"))?],
    };
    let mut values = Vec::new();
    let mut text = String::new();
    for c in selected {
        let (v, t) = curve_result(c, height)?;
        values.push(v);
        text.push_str(&t);
    }
    let inputs = json!({
        "id": id,
        "file": file.map(|p| p.display().to_string()),
        "height": height,
    });
    Ok(Output::ok(
        envelope("curve", inputs, json!({ "curves": values }), json!({})),
        text,
    ))
}

fn verify() -> Result<Output, Error> {
    let report = families::verify_paper();
    let mut text = String::new();
    for e in &report.entries {
        text.push_str(&format!("{:<8} {}\n", e.id, e.status));
        for d in &e.discrepancy {
            text.push_str(&format!("    {}: {}\n", d.kind.name(), d.detail));
            if !d.printed.is_empty() {
                text.push_str(&format!("      printed:  {}\n", d.printed));
            }
            text.push_str(&format!("      computed: {}\n", d.computed));
        }
        for f in &e.failures {
            text.push_str(&format!("    failure: {f}\n"));
        }
    }
    text.push_str(&format!(
        "{} PASS, {} PASS-WITH-DISCREPANCY, {} FAIL; {} discrepancies\n",
        report.pass,
        report.pass_with_discrepancy,
        report.fail,
        report.discrepancies.len()
    ));
    let code = if report.entries.iter().any(|e| e.status == Status::Fail) { 1 } else { 0 };
    Ok(Output {
        json: envelope(
            "verify-paper",
            json!({}),
            to_value(&report.entries),
            json!({
                "discrepancies": report.discrepancies,
                "pass": report.pass,
                "pass_with_discrepancy": report.pass_with_discrepancy,
                "fail": report.fail,
            }),
        ),
        text,
        code,
    })
}
