//! Command-line front end: reproduces every certified computation as a
//! machine-readable report. Exit codes: 0 success, 2 input error,
//! 3 certification failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use growthlab::digits::{greedy_expansion, series_value, DigitSetSequence, GeneralisedDigit};
use growthlab::families::{
    builtin_family, family_from_config, family_interval, verify_theorem1, verify_theorem2,
    FamilyError,
};
use growthlab::growth::{decimal_string, growth_rate, named_constants, EnumSequence};
use growthlab::poly::{pow_rat, rat, rat_int, Rat};
use growthlab::report::{
    constants_csv, constants_json, enclosure_json, family_csv, family_json, theorem1_csv,
    theorem1_json, theorem2_csv, theorem2_json, Report, DEFAULT_DECIMAL_PLACES,
};
use num_traits::Signed;

#[derive(Parser)]
#[command(
    name = "growthlab",
    version,
    about = "Certified growth rates of sum-closed permutation classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Enclosure width target in bits (2^-precision)
    #[arg(long, default_value_t = 40)]
    precision: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// The named constants with certified enclosures and the ordering chain
    Constants {
        #[command(flatten)]
        common: Common,
    },
    /// Growth rate of the sum closure of an eventually periodic sequence
    Growth {
        /// Sequence as `pre;period`, e.g. `1,1,2,3,5,7;8` or `;4,9`
        seq: String,
        #[command(flatten)]
        common: Common,
    },
    /// Certified interval analysis of a built-in family or a JSON config
    Family {
        /// A, B, C, D, E, Example, theorem1:<odd k>, or a config file path
        name: String,
        /// Also emit DOT Hasse diagrams of the H ground sets
        #[arg(long)]
        hasse: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run the theorem verifications end to end
    Verify {
        /// theorem1, theorem2, or all
        which: String,
        #[command(flatten)]
        common: Common,
    },
    /// Seeded greedy-expansion round-trip property suite
    Proptest {
        /// Seed for the deterministic generator
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of round-trips per digit system
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = run(cli);
    eprintln!("elapsed_ms={}", started.elapsed().as_millis());
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(common: &Common, report: &Report, csv: Option<String>) -> Result<(), String> {
    let body = match (common.format, csv) {
        (Format::Csv, Some(csv)) => csv,
        _ => report.render_json(),
    };
    match &common.out {
        Some(path) => std::fs::write(path, body).map_err(|e| e.to_string()),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn family_exit(e: &FamilyError) -> ExitCode {
    match e {
        FamilyError::UnknownFamily(_)
        | FamilyError::Config(_)
        | FamilyError::BadParams { .. }
        | FamilyError::Perm(_) => ExitCode::from(2),
        _ => ExitCode::from(3),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Constants { common } => {
            let consts = named_constants(common.precision).map_err(|e| e.to_string())?;
            let ordered = consts
                .windows(2)
                .all(|w| w[0].enclosure.certified_below(&w[1].enclosure));
            let report = Report {
                command: "constants".into(),
                inputs: json!({"precision": common.precision}),
                results: json!({
                    "constants": constants_json(&consts, DEFAULT_DECIMAL_PLACES),
                    "ordering_certified": ordered,
                }),
                pass: ordered,
            };
            emit(
                &common,
                &report,
                Some(constants_csv(&consts, DEFAULT_DECIMAL_PLACES)),
            )?;
            Ok(if ordered {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Growth { seq, common } => {
            let s = EnumSequence::parse(&seq).map_err(|e| e.to_string())?;
            let enclosure = match growth_rate(&s, common.precision) {
                Ok(e) => e,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(2));
                }
            };
            let report = Report {
                command: "growth".into(),
                inputs: json!({"sequence": seq, "precision": common.precision}),
                results: json!({
                    "sequence": s.minimized().to_string(),
                    "polynomial": enclosure.poly.to_desc_string(),
                    "growth_rate": enclosure_json(&enclosure, DEFAULT_DECIMAL_PLACES),
                }),
                pass: true,
            };
            let csv = format!(
                "sequence,polynomial,gr\n\"{}\",\"{}\",{}\n",
                s.minimized(),
                enclosure.poly.to_desc_string(),
                enclosure.decimal(DEFAULT_DECIMAL_PLACES)
            );
            emit(&common, &report, Some(csv))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Family {
            name,
            hasse,
            common,
        } => {
            let spec = if std::path::Path::new(&name).exists() {
                let text = std::fs::read_to_string(&name).map_err(|e| e.to_string())?;
                match family_from_config(&text) {
                    Ok(s) => s,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return Ok(family_exit(&e));
                    }
                }
            } else {
                match builtin_family(&name) {
                    Ok(s) => s,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return Ok(family_exit(&e));
                    }
                }
            };
            let analysis = match growthlab::families::analyze_family(&spec) {
                Ok(a) => a,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(family_exit(&e));
                }
            };
            let interval = match family_interval(&spec, common.precision) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(family_exit(&e));
                }
            };
            let mut results = family_json(&interval, DEFAULT_DECIMAL_PLACES);
            if hasse {
                let dots: Vec<serde_json::Value> = analysis
                    .h
                    .iter()
                    .flat_map(|h| h.collections.iter())
                    .enumerate()
                    .map(|(i, coll)| {
                        json!({
                            "collection": i,
                            "dot": coll.hasse_dot(&format!("{}_{}", spec.name, i)),
                            "export": coll.to_json(),
                        })
                    })
                    .collect();
                results["hasse"] = serde_json::Value::Array(dots.clone());
                if let Some(out) = &common.out {
                    for (i, d) in dots.iter().enumerate() {
                        let path = out.with_extension(format!("h{i}.dot"));
                        std::fs::write(path, d["dot"].as_str().unwrap_or_default())
                            .map_err(|e| e.to_string())?;
                    }
                }
            }
            let pass = interval.certified_nonempty();
            let report = Report {
                command: "family".into(),
                inputs: json!({"name": name, "precision": common.precision, "hasse": hasse}),
                results,
                pass,
            };
            emit(
                &common,
                &report,
                Some(family_csv(&interval, DEFAULT_DECIMAL_PLACES)),
            )?;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Verify { which, common } => {
            let mut pass = true;
            let mut results = serde_json::Map::new();
            let mut csv = None;
            if which == "theorem1" || which == "all" {
                let ks: Vec<usize> = (5..=21).step_by(2).collect();
                let rep = verify_theorem1(&ks, common.precision).map_err(|e| e.to_string())?;
                pass &= rep.all_certified;
                results.insert(
                    "theorem1".into(),
                    theorem1_json(&rep, DEFAULT_DECIMAL_PLACES),
                );
                csv = Some(theorem1_csv(&rep, DEFAULT_DECIMAL_PLACES));
            }
            if which == "theorem2" || which == "all" {
                let rep = verify_theorem2(common.precision).map_err(|e| e.to_string())?;
                pass &= rep.all_certified;
                results.insert(
                    "theorem2".into(),
                    theorem2_json(&rep, DEFAULT_DECIMAL_PLACES),
                );
                csv = Some(theorem2_csv(&rep, DEFAULT_DECIMAL_PLACES));
            }
            if results.is_empty() {
                return Err(format!("unknown verification target `{which}`"));
            }
            let report = Report {
                command: "verify".into(),
                inputs: json!({"which": which, "precision": common.precision}),
                results: serde_json::Value::Object(results),
                pass,
            };
            emit(&common, &report, csv)?;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Proptest {
            seed,
            cases,
            common,
        } => {
            let (passed, total, worst) = greedy_roundtrip_suite(seed, cases);
            let pass = passed == total;
            let report = Report {
                command: "proptest".into(),
                inputs: json!({"seed": seed, "cases": cases}),
                results: json!({
                    "passed": passed,
                    "total": total,
                    "worst_error_le": worst,
                }),
                pass,
            };
            emit(&common, &report, None)?;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
    }
}

/// Deterministic split-mix generator; good enough for sampling probes.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

fn greedy_roundtrip_suite(seed: u64, cases: usize) -> (usize, usize, String) {
    let systems: Vec<(DigitSetSequence, Rat)> = vec![
        (
            DigitSetSequence::from_int_sets(vec![], vec![vec![1, 4], vec![1, 3, 5, 7, 9]]).unwrap(),
            rat_int(3),
        ),
        (
            DigitSetSequence::new(
                vec![],
                vec![
                    ["1.1", "1.11", "1.12", "1.2", "1.21", "1.22"]
                        .iter()
                        .map(|s| s.parse::<GeneralisedDigit>().unwrap())
                        .collect(),
                    vec![GeneralisedDigit::zero()],
                ],
            )
            .unwrap(),
            rat(23, 10),
        ),
        (
            DigitSetSequence::from_int_sets(vec![], vec![(0..=9).collect()]).unwrap(),
            rat_int(10),
        ),
    ];
    let mut rng = SplitMix(seed);
    let mut passed = 0;
    let mut total = 0;
    let mut worst = Rat::from_integer(0.into());
    const M: u64 = 1 << 20;
    for (d, beta) in &systems {
        let (lo, hi) = d.value_range(beta).expect("valid systems");
        for _ in 0..cases {
            total += 1;
            let t = rat(rng.next() as i64 % M as i64, M as i64).abs();
            let x = &lo + (&hi - &lo) * t;
            let n_terms = 40;
            let Ok(g) = greedy_expansion(&x, d, beta, n_terms) else {
                continue;
            };
            let completed = g
                .completed_sequence(d, beta)
                .expect("completed sequence well-formed");
            let reached = series_value(&completed, beta).expect("series value");
            let err = (&x - &reached).abs();
            let tolerance = pow_rat(beta, -38);
            if err <= tolerance && err <= g.error_bound {
                passed += 1;
            }
            if err > worst {
                worst = err;
            }
        }
    }
    (passed, total, decimal_string(&worst, 45))
}
