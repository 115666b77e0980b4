//! symgb: Gröbner bases of symmetric ideals in infinitely many variables,
//! generic initial ideals, and the stratification of coefficient space.
//!
//! Exit codes: 0 success, 1 input parse error, 2 precondition violation,
//! 3 level-cap / indeterminate-vote / harvest diagnostics.

use clap::{Parser, Subcommand};
use serde_json::json;
use symgb::coeff::FieldCoeff;
use symgb::error::Error;
use symgb::gin::{fp_entries, gin_random, rational_entries, GinReport};
use symgb::invariant::{remainder, Representation};
use symgb::monomial::Monomial;
use symgb::poly::Poly;
use symgb::stillman::{stillman_enumerate, StillmanOptions};
use symgb::symmetric::{symmetric_buchberger, SymmetricBasis, DEFAULT_LEVEL_CAP};
use symgb::text::{
    parse_fp_poly, parse_fp_rep, parse_qq_poly, parse_qq_rep, FieldSpec,
};
use symgb::Result;

#[derive(Parser)]
#[command(name = "symgb", version, about = "equivariant Gröbner bases and generic initial ideal strata", long_about = None)]
struct Cli {
    /// Output format: text or json
    #[arg(long, global = true, default_value = "text")]
    format: String,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Gröbner basis of the ideal generated by eventually invariant series,
    /// given as representation bodies at a common level
    Gb {
        /// Coefficient field: QQ or F<p>
        #[arg(long)]
        field: String,
        /// Representation level n of the input bodies
        #[arg(long)]
        level: u32,
        /// Level cap (default 12; SYMGB_LEVEL_CAP overrides the default)
        #[arg(long)]
        cap: Option<u32>,
        /// Homogeneous polynomials, each the body of an n-representation
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Generic initial ideal of concrete polynomials by random change of
    /// coordinates with majority vote
    Gin {
        #[arg(long)]
        field: String,
        /// Number of variables
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        #[arg(long)]
        seed: u64,
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Enumerate the possible generic initial ideals of k forms of the
    /// given degrees, with their characteristic and coefficient strata
    Stillman {
        #[arg(long)]
        k: u32,
        /// Comma-separated degrees, one per form
        #[arg(long)]
        degrees: String,
        /// Level cap (default 6; SYMGB_LEVEL_CAP overrides the default)
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Re-encode a representation at a higher level
    Expand {
        #[arg(long)]
        field: String,
        /// Target level
        #[arg(long)]
        m: u32,
        /// Representation: rep(n=<level>, d=<degree>) <polynomial>
        input: String,
    },
    /// Remainder of a representation after division by monic
    /// representations whose leading monomials live in x1..xn
    Reduce {
        #[arg(long)]
        field: String,
        input: String,
        /// Divisors (repeatable)
        #[arg(long = "by", required = true)]
        divisors: Vec<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    let json = match cli.format.as_str() {
        "text" => false,
        "json" => true,
        other => {
            eprintln!("error: unknown format '{other}' (expected text or json)");
            std::process::exit(2);
        }
    };
    match dispatch(cli.cmd, json) {
        Ok(out) => {
            println!("{out}");
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse { .. } => 1,
                Error::Precondition(_) => 2,
                Error::LevelCap(_) | Error::IndeterminateGin(_) | Error::HarvestCheck(_) => 3,
            };
            std::process::exit(code);
        }
    }
}

fn env_cap(default: u32) -> u32 {
    std::env::var("SYMGB_LEVEL_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn set_text(ms: &[Monomial]) -> String {
    symgb::text::monomial_set_text(ms)
}

fn set_json(ms: &[Monomial]) -> serde_json::Value {
    json!(symgb::text::display_order(ms).iter().map(|m| m.to_string()).collect::<Vec<_>>())
}

fn dispatch(cmd: Cmd, json: bool) -> Result<String> {
    match cmd {
        Cmd::Gb { field, level, cap, inputs } => {
            let cap = cap.unwrap_or_else(|| env_cap(DEFAULT_LEVEL_CAP));
            match FieldSpec::parse(&field)? {
                FieldSpec::QQ => {
                    let gens = parse_bodies(&inputs, level, |s| parse_qq_poly(s))?;
                    let gb = symmetric_buchberger(&gens, cap)?;
                    Ok(render_gb(&field, &gb, |r| r.to_string(), json))
                }
                FieldSpec::Fp(p) => {
                    let gens = parse_bodies(&inputs, level, |s| parse_fp_poly(s, p))?;
                    let gb = symmetric_buchberger(&gens, cap)?;
                    Ok(render_gb(&field, &gb, |r| r.to_string(), json))
                }
            }
        }
        Cmd::Gin { field, n, trials, seed, inputs } => match FieldSpec::parse(&field)? {
            FieldSpec::QQ => {
                let gens: Result<Vec<Poly<_>>> =
                    inputs.iter().map(|s| parse_qq_poly(s)).collect();
                let report = gin_random(&gens?, n, trials, seed, &rational_entries())?;
                Ok(render_gin(&field, n, &report, json))
            }
            FieldSpec::Fp(p) => {
                let gens: Result<Vec<Poly<_>>> =
                    inputs.iter().map(|s| parse_fp_poly(s, p)).collect();
                let report = gin_random(&gens?, n, trials, seed, &fp_entries(p))?;
                Ok(render_gin(&field, n, &report, json))
            }
        },
        Cmd::Stillman { k, degrees, cap } => {
            let cap = cap.unwrap_or_else(|| env_cap(6));
            let degrees: Vec<u32> = degrees
                .split(',')
                .map(|d| {
                    d.trim().parse::<u32>().map_err(|_| Error::Parse {
                        pos: 0,
                        msg: format!("bad degree '{d}'"),
                    })
                })
                .collect::<Result<_>>()?;
            let opts = StillmanOptions { level_cap: cap, validate_consistency: true };
            let report = stillman_enumerate(k, &degrees, opts)?;
            let mut distinct: Vec<Vec<Monomial>> = report.distinct_lead_sets();
            distinct.dedup();
            if json {
                let strata: Vec<serde_json::Value> = report
                    .strata
                    .iter()
                    .map(|s| {
                        json!({
                            "S": set_json(&s.leads),
                            "Y": match &s.chars {
                                symgb::stillman::ConstructibleZ::Finite(set) => json!({
                                    "kind": "primes",
                                    "primes": set.iter().collect::<Vec<_>>(),
                                }),
                                symgb::stillman::ConstructibleZ::CofiniteWithZero { excluded } => json!({
                                    "kind": "cofinite",
                                    "excluded": excluded.iter().collect::<Vec<_>>(),
                                }),
                            },
                            "Z": s.vanishing.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                            "N": s.nonvanishing.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                            "m": s.level,
                        })
                    })
                    .collect();
                Ok(serde_json::to_string_pretty(&json!({
                    "command": "stillman",
                    "k": k,
                    "degrees": degrees,
                    "cap": cap,
                    "strata": strata,
                    "leaves": report.leaves,
                    "nodes": report.nodes,
                    "distinct_s": distinct.len(),
                }))
                .unwrap())
            } else {
                let mut out = String::new();
                out.push_str(&format!("k: {k}\ndegrees: {degrees:?}\ncap: {cap}\n"));
                for s in &report.strata {
                    out.push_str(&render_stratum(s));
                    out.push('\n');
                }
                out.push_str(&format!(
                    "leaves: {}\nnodes: {}\ndistinct S: {}",
                    report.leaves,
                    report.nodes,
                    distinct.len()
                ));
                Ok(out)
            }
        }
        Cmd::Expand { field, m, input } => match FieldSpec::parse(&field)? {
            FieldSpec::QQ => {
                let r = parse_qq_rep(&input)?;
                let e = symgb::invariant::expand(&r, m)?;
                Ok(render_rep(&field, &e.to_string(), "expand", json))
            }
            FieldSpec::Fp(p) => {
                let r = parse_fp_rep(&input, p)?;
                let e = symgb::invariant::expand(&r, m)?;
                Ok(render_rep(&field, &e.to_string(), "expand", json))
            }
        },
        Cmd::Reduce { field, input, divisors } => match FieldSpec::parse(&field)? {
            FieldSpec::QQ => {
                let h = parse_qq_rep(&input)?;
                let ds: Result<Vec<_>> = divisors.iter().map(|s| parse_qq_rep(s)).collect();
                let r = reduce_checked(&h, &ds?)?;
                Ok(render_rep(&field, &r.to_string(), "reduce", json))
            }
            FieldSpec::Fp(p) => {
                let h = parse_fp_rep(&input, p)?;
                let ds: Result<Vec<_>> = divisors.iter().map(|s| parse_fp_rep(s, p)).collect();
                let r = reduce_checked(&h, &ds?)?;
                Ok(render_rep(&field, &r.to_string(), "reduce", json))
            }
        },
    }
}

fn parse_bodies<C: FieldCoeff>(
    inputs: &[String],
    level: u32,
    parse: impl Fn(&str) -> Result<Poly<C>>,
) -> Result<Vec<Representation<C>>> {
    let mut out = Vec::new();
    for s in inputs {
        let body = parse(s)?;
        if body.is_zero() {
            continue;
        }
        let degree = body.homogeneous_degree().ok_or_else(|| {
            Error::Precondition(format!("generator '{s}' is not homogeneous"))
        })?;
        out.push(Representation::new(level, degree, body)?);
    }
    Ok(out)
}

fn reduce_checked<C: FieldCoeff>(
    h: &Representation<C>,
    divisors: &[Representation<C>],
) -> Result<Representation<C>> {
    remainder(h.level(), h, divisors)
}

fn render_gb<C: FieldCoeff>(
    field: &str,
    gb: &SymmetricBasis<C>,
    show: impl Fn(&Representation<C>) -> String,
    json_mode: bool,
) -> String {
    let leads = gb.lead_set();
    if json_mode {
        serde_json::to_string_pretty(&json!({
            "command": "gb",
            "field": field,
            "level": gb.level,
            "basis": gb.basis.iter().map(&show).collect::<Vec<_>>(),
            "lead_monomials": set_json(&leads),
        }))
        .unwrap()
    } else {
        let mut out = format!("field: {field}\nlevel: {}\nbasis:\n", gb.level);
        for b in &gb.basis {
            out.push_str("  ");
            out.push_str(&show(b));
            out.push('\n');
        }
        out.push_str(&format!("lead monomials: {}", set_text(&leads)));
        out
    }
}

fn render_gin(field: &str, n: u32, report: &GinReport, json_mode: bool) -> String {
    if json_mode {
        serde_json::to_string_pretty(&json!({
            "command": "gin",
            "field": field,
            "n": n,
            "trials": report.trials,
            "seed": report.seed,
            "gin": set_json(&report.gin),
            "tally": report
                .tally
                .iter()
                .map(|(set, count)| json!({"set": set_json(set), "count": count}))
                .collect::<Vec<_>>(),
        }))
        .unwrap()
    } else {
        let mut out = format!(
            "field: {field}\nn: {n}\ntrials: {}\nseed: {}\ngin: {}\ntally:\n",
            report.trials,
            report.seed,
            set_text(&report.gin)
        );
        for (set, count) in &report.tally {
            out.push_str(&format!("  {}: {count}\n", set_text(set)));
        }
        out.pop();
        out
    }
}

fn render_stratum(s: &symgb::stillman::Stratum) -> String {
    s.to_string()
}

fn render_rep(field: &str, rep: &str, command: &str, json_mode: bool) -> String {
    if json_mode {
        serde_json::to_string_pretty(&json!({
            "command": command,
            "field": field,
            "rep": rep,
        }))
        .unwrap()
    } else {
        rep.to_string()
    }
}
