//! `whframes` — command-line surface for the wh-frames toolkit.
//!
//! Every subcommand prints a machine-readable payload (JSON by default,
//! CSV where tabular) and exits 0 on success, 2 on rejected input, and 3
//! when `--strict` is set and the verdict is Inconclusive.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use wh_frames::abc::{self, AbcQuery, RealParam};
use wh_frames::conditions::{self, FrameStatus};
use wh_frames::frameset::{circle_range, is_frame_set, ExponentSet};
use wh_frames::fundamental::{sqrt_inverse_check, walnut_band, walnut_entry};
use wh_frames::gabor::{energy_ratio, frame_energy, gk_table, GaborSystem};
use wh_frames::json as wjson;
use wh_frames::scalar::parse_rat;
use wh_frames::stepfn::StepFunction;
use wh_frames::witnesses;

#[derive(Parser)]
#[command(name = "whframes", version, about = "Exact analysis of Weyl-Heisenberg systems")]
struct Cli {
    /// Number of worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format where tabular data is produced.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Accept floating-point literals (converted exactly, but the results
    /// may leave exact mode).
    #[arg(long, global = true)]
    approx: bool,

    /// Exit with status 3 when a verdict is Inconclusive.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the exact G_k correlation table of a system.
    Gk {
        /// Window as JSON triples, e.g. '[[0,2,1],[2,3,-1]]'.
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
    },
    /// Evaluate the CC-condition and report certified frame bounds.
    Cc {
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
    },
    /// Exact frame energy and energy ratio of a test vector.
    Energy {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
    },
    /// Frame-set decision for a union of integer translates of [0,1).
    Frameset {
        /// Comma-separated integer exponents, e.g. '0,1,3'.
        #[arg(long)]
        exps: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Classify a point of the a,b,c-problem.
    Abc {
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
        #[arg(long)]
        c: String,
        /// Treat --a as an irrational tag with the given approximate value.
        #[arg(long)]
        irrational_a: bool,
        /// Treat --c as an irrational tag.
        #[arg(long)]
        irrational_c: bool,
    },
    /// Classify a rational grid in the (a, c) plane at b = 1.
    Chart {
        /// Grid denominator: points k/denom for k = 1..
        #[arg(long, default_value_t = 20)]
        denom: i64,
        /// Largest a value, as a rational literal.
        #[arg(long, default_value = "1")]
        a_max: String,
        /// Largest c value, as a rational literal.
        #[arg(long, default_value = "3")]
        c_max: String,
    },
    /// Dump the banded Walnut matrix entries of a system.
    Walnut {
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
        /// How many columns k to include on each side of 0.
        #[arg(long, default_value_t = 2)]
        cols: i64,
    },
    /// Verify the S^psi = (S^b)^{-1/2} identities numerically.
    FundamentalCheck {
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
        #[arg(long, default_value_t = 30)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Emit the decay table of a built-in witness family.
    Witness {
        /// One of: case1, case2, riesz, p3, p2.
        #[arg(long)]
        family: String,
        /// Comma-separated sizes, e.g. '2,4,8,16'.
        #[arg(long, default_value = "2,4,8,16,32,64")]
        ns: String,
    },
}

fn parse_step_arg(s: &str, approx: bool) -> wh_frames::Result<StepFunction> {
    let v: serde_json::Value = serde_json::from_str(s)
        .map_err(|e| wh_frames::Error::Parse(format!("bad JSON: {e}")))?;
    wjson::parse_step(&v, approx)
}

fn parse_system(g: &str, a: &str, b: &str, approx: bool) -> wh_frames::Result<GaborSystem> {
    GaborSystem::new(
        parse_step_arg(g, approx)?,
        parse_rat(a, approx)?,
        parse_rat(b, approx)?,
    )
}

fn parse_i64_list(s: &str) -> wh_frames::Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| wh_frames::Error::Parse(format!("bad integer {t:?}")))
        })
        .collect()
}

fn parse_real_param(s: &str, irrational: bool, approx: bool) -> wh_frames::Result<RealParam> {
    if irrational {
        let x: f64 = s
            .parse()
            .map_err(|_| wh_frames::Error::Parse(format!("bad number {s:?}")))?;
        Ok(RealParam::Irr(x))
    } else {
        Ok(RealParam::Rat(parse_rat(s, approx)?))
    }
}

fn strict_code(status: FrameStatus, strict: bool) -> i32 {
    if strict && status == FrameStatus::Inconclusive {
        3
    } else {
        0
    }
}

fn run(cli: &Cli) -> wh_frames::Result<i32> {
    let approx = cli.approx;
    match &cli.cmd {
        Cmd::Gk { g, a, b } => {
            let sys = parse_system(g, a, b, approx)?;
            println!("{}", serde_json::to_string_pretty(&wjson::gk_json(&gk_table(&sys)))?);
            Ok(0)
        }
        Cmd::Cc { g, a, b } => {
            let sys = parse_system(g, a, b, approx)?;
            let report = conditions::cc_bounds(&sys)?;
            println!("{}", serde_json::to_string_pretty(&wjson::cc_json(&report))?);
            Ok(strict_code(report.status, cli.strict))
        }
        Cmd::Energy { f, g, a, b } => {
            let sys = parse_system(g, a, b, approx)?;
            let f = parse_step_arg(f, approx)?;
            let energy = frame_energy(&f, &sys)?;
            let out = json!({
                "energy": wjson::scalar_json(&energy),
                "norm_sq": wjson::scalar_json(&f.norm_sq()),
                "ratio": wjson::scalar_json(&energy_ratio(&f, &sys)?),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(0)
        }
        Cmd::Frameset { exps, tol } => {
            let e = ExponentSet::new(parse_i64_list(exps)?)?;
            let verdict = is_frame_set(&e, *tol)?;
            let mut out = wjson::verdict_json(&verdict);
            if verdict.status == FrameStatus::Frame {
                let range = circle_range(&e, *tol)?;
                out["range"] = wjson::range_json(&range);
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(strict_code(verdict.status, cli.strict))
        }
        Cmd::Abc {
            a,
            b,
            c,
            irrational_a,
            irrational_c,
        } => {
            let q = AbcQuery::new(
                parse_real_param(a, *irrational_a, approx)?,
                parse_rat(b, approx)?,
                parse_real_param(c, *irrational_c, approx)?,
            )?;
            let v = abc::classify(&q);
            println!(
                "{}",
                serde_json::to_string_pretty(&wjson::abc_json(a, c, &v))?
            );
            Ok(strict_code(v.status, cli.strict))
        }
        Cmd::Chart { denom, a_max, c_max } => {
            if *denom < 1 {
                return Err(wh_frames::Error::InvalidParameter("denom must be >= 1".into()));
            }
            let amax = parse_rat(a_max, approx)?;
            let cmax = parse_rat(c_max, approx)?;
            let grid = |max: &wh_frames::scalar::Rat| -> Vec<RealParam> {
                (1..)
                    .map(|k| wh_frames::scalar::rat(k, *denom))
                    .take_while(|r| r <= max)
                    .map(RealParam::Rat)
                    .collect()
            };
            let rows = abc::chart(&grid(&amax), &grid(&cmax));
            match cli.format {
                Format::Csv => {
                    println!("a,c,status,rule");
                    for (a, c, v) in &rows {
                        println!("{a},{c},{},{}", wjson::status_str(v.status), v.rule);
                    }
                }
                Format::Json => {
                    let arr: Vec<_> = rows
                        .iter()
                        .map(|(a, c, v)| wjson::abc_json(&a.to_string(), &c.to_string(), v))
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&arr)?);
                }
            }
            Ok(0)
        }
        Cmd::Walnut { g, a, b, cols } => {
            let sys = parse_system(g, a, b, approx)?;
            let band = walnut_band(&sys);
            let mut entries = Vec::new();
            for k in -cols..=*cols {
                for j in (k - band)..=(k + band) {
                    let entry = walnut_entry(&sys, j, k)?;
                    if !entry.is_zero() {
                        entries.push(json!({
                            "j": j,
                            "k": k,
                            "entry": wjson::periodic_json(&entry),
                        }));
                    }
                }
            }
            let out = json!({ "band_low": -band, "band_high": band, "entries": entries });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(0)
        }
        Cmd::FundamentalCheck { a, b, trials, seed } => {
            let report = sqrt_inverse_check(
                &parse_rat(a, approx)?,
                &parse_rat(b, approx)?,
                *trials,
                *seed,
            )?;
            println!(
                "{}",
                serde_json::to_string_pretty(&wjson::sqrt_inverse_json(&report))?
            );
            Ok(0)
        }
        Cmd::Witness { family, ns } => {
            let ns = parse_i64_list(ns)?;
            let fam = witnesses::builtin_families()
                .into_iter()
                .find(|f| f.name == family)
                .ok_or_else(|| {
                    wh_frames::Error::InvalidParameter(format!("unknown family {family:?}"))
                })?;
            let rows = fam.table(&ns)?;
            match cli.format {
                Format::Csv => print!("{}", wjson::decay_csv(&rows)),
                Format::Json => {
                    let arr: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            json!({
                                "n": r.n,
                                "norm_sq": r.norm_sq,
                                "energy": r.energy,
                                "ratio": r.ratio,
                            })
                        })
                        .collect();
                    let out = json!({
                        "family": fam.name,
                        "expected": fam.expected,
                        "rows": arr,
                    });
                    println!("{}", serde_json::to_string_pretty(&out)?);
                }
            }
            Ok(0)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool already initialized");
    }
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
