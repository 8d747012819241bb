//! qh: counts for finite subschemes of the smooth quadric surface and the
//! flag Hilbert schemes over it, plus a verification campaign comparing
//! exact sheaf cohomology against the combinatorial predictions.
//!
//! Exit codes: 0 success, 1 verification or table-comparison failure,
//! 2 usage or parameter-range error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qh_core::bn::{chi_bn, chi_s, chi_t, k_max, xi, BnQuery};
use qh_core::flag::{chi_flag, FlagQuery};
use qh_core::oracle::{run_campaign, run_replay, run_stratum, CampaignConfig, CampaignOutcome};
use qh_core::series::chi_hilb;
use qh_core::tables::{load_golden, Tables};

const GOLDEN_DIR_ENV: &str = "QH_GOLDEN_DIR";

#[derive(Parser)]
#[command(name = "qh", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler characteristic of the Hilbert scheme of l points
    ChiHilb { l: u32 },
    /// The weighted stratum count xi(l, m)
    Xi { l: u32, m: u32 },
    /// Euler characteristic of the flag Hilbert scheme Hilb(l, (m, n))
    ChiFlag { l: u32, m: u32, n: u32 },
    /// Euler characteristic of the Brill-Noether locus BN(k, l, (m, n))
    ChiBn { k: u32, l: u32, m: u32, n: u32 },
    /// Largest k with BN(k, l, (m, n)) nonempty
    Kmax { l: u32, m: u32, n: u32 },
    /// Euler characteristic of the vertical stratum S(k, l, n)
    ChiS { k: u32, l: u32, n: u32 },
    /// Euler characteristic of the horizontal stratum T(k, l, m)
    ChiT { k: u32, l: u32, m: u32 },
    /// Emit the four summary tables; optionally diff against golden CSVs
    Tables {
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// Compare against golden data instead of printing
        #[arg(long)]
        compare: bool,
    },
    /// Run the cohomology verification campaign
    Verify {
        #[arg(long, default_value_t = 1)]
        l_min: u32,
        #[arg(long, default_value_t = 6)]
        l_max: u32,
        /// Twists run over 0 <= m, n <= this bound with m + n >= l - 1
        #[arg(long, default_value_t = 7)]
        mn_max: u32,
        /// Random generic point sets per length
        #[arg(long, default_value_t = 40)]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Worker threads; 0 picks a default. The report does not depend
        /// on this.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the JSONL report here
        #[arg(long)]
        report: Option<PathBuf>,
        /// Re-verify one serialized instance instead of a campaign
        #[arg(long, conflicts_with_all = ["l", "m", "n", "stratum"])]
        replay: Option<PathBuf>,
        /// Focused run: fixed length (requires --m, --n, --stratum)
        #[arg(long, requires_all = ["m", "n", "stratum"])]
        l: Option<u32>,
        #[arg(long, requires = "l")]
        m: Option<u32>,
        #[arg(long, requires = "l")]
        n: Option<u32>,
        /// Jump stratum to force, written `k=<K>`
        #[arg(long, requires = "l", value_parser = parse_stratum)]
        stratum: Option<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Md,
}

fn parse_stratum(s: &str) -> Result<u32, String> {
    let rest = s.strip_prefix("k=").ok_or("expected k=<integer>")?;
    rest.parse::<u32>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> qh_core::Result<ExitCode> {
    match cli.command {
        Command::ChiHilb { l } => {
            println!("{}", chi_hilb(l));
            Ok(ExitCode::SUCCESS)
        }
        Command::Xi { l, m } => {
            println!("{}", xi(l, m)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::ChiFlag { l, m, n } => {
            let q = FlagQuery::new(l, m, n)?;
            println!("{}", chi_flag(&q));
            Ok(ExitCode::SUCCESS)
        }
        Command::ChiBn { k, l, m, n } => {
            let q = BnQuery::new(k, l, m, n)?;
            println!("{}", chi_bn(&q));
            Ok(ExitCode::SUCCESS)
        }
        Command::Kmax { l, m, n } => {
            println!("{}", k_max(l, m, n));
            Ok(ExitCode::SUCCESS)
        }
        Command::ChiS { k, l, n } => {
            println!("{}", chi_s(k, l, n));
            Ok(ExitCode::SUCCESS)
        }
        Command::ChiT { k, l, m } => {
            println!("{}", chi_t(k, l, m));
            Ok(ExitCode::SUCCESS)
        }
        Command::Tables { format, compare } => tables_cmd(format, compare),
        Command::Verify {
            l_min,
            l_max,
            mn_max,
            trials,
            seed,
            jobs,
            report,
            replay,
            l,
            m,
            n,
            stratum,
        } => {
            let outcome = if let Some(path) = replay {
                let text = std::fs::read_to_string(path)?;
                run_replay(&text, mn_max)?
            } else if let Some(l) = l {
                let (m, n, k) = (m.expect("clap"), n.expect("clap"), stratum.expect("clap"));
                run_stratum(l, m, n, k, seed)?
            } else {
                let cfg = CampaignConfig { l_min, l_max, mn_max, trials, seed };
                run_campaign(&cfg, jobs)?
            };
            finish_verify(outcome, report.as_deref())
        }
    }
}

fn golden_dir() -> PathBuf {
    std::env::var_os(GOLDEN_DIR_ENV).map_or_else(|| PathBuf::from("tables"), PathBuf::from)
}

fn tables_cmd(format: Format, compare: bool) -> qh_core::Result<ExitCode> {
    let computed = Tables::compute();
    if compare {
        let golden = load_golden(&golden_dir())?;
        let diffs = computed.compare(&golden);
        for d in &diffs {
            println!("{d}");
        }
        println!("{} cells, {} mismatches", computed.cell_count(), diffs.len());
        return Ok(if diffs.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }
    match format {
        Format::Csv => {
            for (name, content) in computed.to_csv() {
                println!("# {name}");
                print!("{content}");
            }
        }
        Format::Json => println!("{}", computed.to_json()),
        Format::Md => print!("{}", computed.to_markdown()),
    }
    Ok(ExitCode::SUCCESS)
}

fn finish_verify(outcome: CampaignOutcome, report: Option<&Path>) -> qh_core::Result<ExitCode> {
    if let Some(path) = report {
        let mut text = outcome.report_lines.join("\n");
        text.push('\n');
        std::fs::write(path, text)?;
    }
    println!("instances: {}", outcome.instances);
    println!("jobs: {}", outcome.jobs);
    println!("agreements: {}", outcome.agreements);
    println!("mismatches: {}", outcome.mismatches.len());
    for payload in &outcome.mismatches {
        eprintln!("{payload}");
    }
    Ok(if outcome.mismatches.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
