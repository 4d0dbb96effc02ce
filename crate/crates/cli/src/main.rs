use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ncrep::bench::{run_bench, BenchConfig};
use ncrep::io::{self, to_json};
use ncrep::oracle::{brute_force_recover, random_family, BruteConfig, GenConfig, NcClass};
use ncrep::polyalg::expand;
use ncrep::recover::{recover, verify, AlgChoice, RecoverOptions};

const EXIT_MISMATCH: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "ncrep", version, about = "Recover nc polynomial representations of commutative polynomial families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Alg {
    Auto,
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    TwoLetter,
}

#[derive(Subcommand)]
enum Command {
    /// Expand p(X, Y) under an arrangement and print the family.
    Expand { ncpoly: PathBuf, arrangement: PathBuf },
    /// Recover p and an arrangement from a family and print the verdict.
    Recover {
        family: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        alg: Alg,
        /// Put the higher-numbered variable first when orienting the first
        /// off-diagonal pair (gives the transposed arrangement).
        #[arg(long)]
        transpose_tiebreak: bool,
        /// Include per-phase counters in the verdict.
        #[arg(long)]
        stats: bool,
    },
    /// Check that p expands to the family under the arrangement.
    Verify { family: PathBuf, ncpoly: PathBuf, arrangement: PathBuf },
    /// Exhaustive search over arrangements (k = 2, degree ≤ 3 unless a node
    /// budget is given).
    Brute {
        family: PathBuf,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        no_pruning: bool,
    },
    /// Generate a random polynomial, arrangement and family.
    Gen {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value = "any")]
        class: NcClass,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write p.json, arrangement.json and family.json here instead of
        /// printing one combined object.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Compare measured equality checks against the cost bound.
    Bench {
        /// Inclusive range such as 2..5 or a single k.
        #[arg(long, default_value = "2..5")]
        k_range: String,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Add the measured exhaustive search for k ≤ 2.
        #[arg(long)]
        brute: bool,
    },
}

struct Failure(u8, String);

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: fn(&str) -> Result<T, io::IoError>) -> Result<T, Failure> {
    parse(&read(path)?).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn parse_k_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure(EXIT_INVALID, format!("--k-range: expected 'a..b' or 'k', got '{s}'"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: usize = a.parse().map_err(|_| bad())?;
    let b: usize = b.parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Expand { ncpoly, arrangement } => {
            let p = load(&ncpoly, io::parse_nc_file)?;
            let arr = load(&arrangement, io::parse_arrangement)?;
            let fam = expand(&p, &arr).to_family(&arr);
            print!("{}", to_json(&io::family_to_file(&fam)));
            Ok(0)
        }
        Command::Recover {
            family,
            alg,
            transpose_tiebreak,
            stats,
        } => {
            let fam = load(&family, io::parse_family)?;
            let alg = match alg {
                Alg::Auto => AlgChoice::Auto,
                Alg::One => AlgChoice::One,
                Alg::Two => AlgChoice::Two,
                Alg::TwoLetter => AlgChoice::TwoLetter,
            };
            let v = recover(&fam, &RecoverOptions { alg, transpose_tiebreak });
            print!("{}", to_json(&io::verdict_to_file(&v, stats)));
            Ok(0)
        }
        Command::Verify { family, ncpoly, arrangement } => {
            let fam = load(&family, io::parse_family)?;
            let p = load(&ncpoly, io::parse_nc_file)?;
            let arr = load(&arrangement, io::parse_arrangement)?;
            if fam.k != arr.k {
                return Err(Failure(EXIT_INVALID, format!("family has k={} but arrangement has k={}", fam.k, arr.k)));
            }
            match verify(&fam, &arr, &p) {
                Ok(()) => {
                    print!("{}", to_json(&json!({"format": io::FORMAT, "ok": true})));
                    Ok(0)
                }
                Err(m) => {
                    let report = json!({
                        "format": io::FORMAT,
                        "ok": false,
                        "mismatch": {
                            "row": m.row,
                            "col": m.col,
                            "poly": m.poly,
                            "expected": io::poly_to_file(&m.expected),
                            "got": io::poly_to_file(&m.got),
                        }
                    });
                    print!("{}", to_json(&report));
                    eprintln!("mismatch at entry ({},{}) (polynomial {})", m.row, m.col, m.poly);
                    Ok(EXIT_MISMATCH)
                }
            }
        }
        Command::Brute {
            family,
            max_nodes,
            no_pruning,
        } => {
            let fam = load(&family, io::parse_family)?;
            let cfg = BruteConfig {
                budget: max_nodes,
                symmetry_pruning: !no_pruning,
                ..Default::default()
            };
            let v = brute_force_recover(&fam, &cfg).map_err(|e| Failure(EXIT_BUDGET, e.to_string()))?;
            print!("{}", to_json(&io::verdict_to_file(&v, false)));
            Ok(0)
        }
        Command::Gen {
            k,
            degree,
            class,
            seed,
            out_dir,
        } => {
            if k == 0 {
                return Err(Failure(EXIT_INVALID, "--k must be positive".into()));
            }
            let s = random_family(&GenConfig::new(k, degree, class), seed).map_err(|e| Failure(EXIT_BUDGET, e.to_string()))?;
            let p = io::nc_to_file(&s.p);
            let arr = io::arrangement_to_file(&s.arrangement);
            let fam = io::family_to_file(&s.family);
            match out_dir {
                Some(dir) => {
                    let write = |name: &str, body: String| {
                        fs::write(dir.join(name), body).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", dir.join(name).display())))
                    };
                    fs::create_dir_all(&dir).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", dir.display())))?;
                    write("p.json", to_json(&p))?;
                    write("arrangement.json", to_json(&arr))?;
                    write("family.json", to_json(&fam))?;
                }
                None => print!(
                    "{}",
                    to_json(&json!({"format": io::FORMAT, "class": class.name(), "seed": seed, "p": p, "arrangement": arr, "family": fam}))
                ),
            }
            Ok(0)
        }
        Command::Bench {
            k_range,
            degree,
            trials,
            seed,
            brute,
        } => {
            let (k_min, k_max) = parse_k_range(&k_range)?;
            let cfg = BenchConfig {
                k_min,
                k_max,
                degree,
                trials,
                seed,
                brute,
            };
            let report = run_bench(&cfg).map_err(|e| Failure(EXIT_BUDGET, e.to_string()))?;
            print!("{}", to_json(&report));
            for r in &report.rows {
                eprintln!(
                    "k={} d={}: max {} equality checks, bound {} ({}), brute-force bound {}",
                    r.k,
                    r.degree,
                    r.max_equality_checks,
                    r.equality_bound,
                    if r.within_bound { "ok" } else { "EXCEEDED" },
                    r.brute_force_bound
                );
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
