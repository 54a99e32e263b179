use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cycbound_core::bounds::{all_bounds, compute, BoundKind};
use cycbound_core::cyclic::{coset_partition, parse_defining_set, CyclicCodeSpec};
use cycbound_core::error::{Error, Result};
use cycbound_core::gf::build_field_context;
use cycbound_core::harness::{exit_code, run_table, table_csv, write_table, TableConfig, DEFAULT_DISTANCE_CAP};
use cycbound_core::oracle::true_distance;
use cycbound_core::proofcheck::{build_t, check_instance, render, ProofParams};
use cycbound_core::usemiring::{includes, pattern_expand, schaub_lower_bound, Pattern, UVec};

#[derive(Parser)]
#[command(name = "cycbound", version, about = "Lower bounds on the minimum distance of cyclic codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CodeArgs {
    /// Field size (prime).
    #[arg(long)]
    q: u32,
    /// Code length, coprime to q.
    #[arg(long)]
    n: usize,
    /// Defining set: `C1+C3` or `1,2,4`. Closed under multiplication by q.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    set: String,
}

impl CodeArgs {
    fn spec(&self) -> Result<CyclicCodeSpec> {
        let set = parse_defining_set(&self.set, self.n, self.q)?;
        CyclicCodeSpec::new(self.q, self.n, set)
    }
}

#[derive(Subcommand)]
enum Command {
    /// One bound (or all five) with its witness.
    Bound {
        #[command(flatten)]
        code: CodeArgs,
        /// bch, ht, bs, roos or bound_c. All five when omitted.
        #[arg(long)]
        kind: Option<BoundKind>,
    },
    /// Exact minimum distance by enumeration.
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = DEFAULT_DISTANCE_CAP)]
        distance_cap: u64,
    },
    /// Tightness counts for every code of each length in a range.
    Table {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_DISTANCE_CAP)]
        distance_cap: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// CSV path; a `.summary.csv` goes next to it. Stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Leave the zero code and the full space out of the counts.
        #[arg(long)]
        exclude_trivial: bool,
    },
    /// Whether pattern U is included in V, and at which shift.
    Pattern { u: String, v: String },
    /// Min-pseudo-rank bound. Exponential; small codes only.
    Schaub {
        #[command(flatten)]
        code: CodeArgs,
        /// Cap on the members of the resolution set.
        #[arg(long, default_value_t = 1 << 16)]
        a_cap: u64,
        /// Cap on the row subsets examined per matrix.
        #[arg(long, default_value_t = 1 << 24)]
        subset_cap: u64,
    },
    /// Prints the row selection of the bound I construction (or bound II
    /// with --lambda and --mu) for one normalized representative.
    Proof {
        /// Representative over 0/D/N with the pivots set.
        v: String,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long)]
        lambda: Option<usize>,
        #[arg(long)]
        mu: Option<usize>,
        #[arg(long)]
        s: usize,
    },
    /// The cyclotomic cosets of q modulo n.
    Cosets {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
    },
}

fn outcome_json(spec: &CyclicCodeSpec, kind: BoundKind) -> Value {
    serde_json::to_value(compute(kind, spec)).expect("outcomes serialize")
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Bound { code, kind } => {
            let spec = code.spec()?;
            let out = match kind {
                Some(kind) => outcome_json(&spec, kind),
                None => Value::Array(all_bounds(&spec).into_iter().map(|o| serde_json::to_value(o).expect("outcomes serialize")).collect()),
            };
            println!("{out}");
        }
        Command::Distance { code, distance_cap } => {
            let spec = code.spec()?;
            let ctx = build_field_context(spec.q(), spec.n())?;
            let res = true_distance(&spec, &ctx, distance_cap as u128)?;
            let witness = res.argmin_word.map(|w| w.symbols().to_vec());
            println!("{}", json!({ "d": res.d, "enumerated": u64::try_from(res.enumerated).unwrap_or(u64::MAX), "weight_witness": witness }));
        }
        Command::Table { q, n_min, n_max, distance_cap, jobs, out, cache_dir, exclude_trivial } => {
            let cfg = TableConfig { q, n_min, n_max, distance_cap, jobs, exclude_trivial, cache_dir };
            let report = run_table(&cfg)?;
            for line in report.warnings.iter().chain(&report.incidents) {
                eprintln!("warning: {line}");
            }
            for line in &report.violations {
                eprintln!("violation: {line}");
            }
            match out {
                Some(path) => {
                    let summary = write_table(&report, &path).map_err(|e| Error::Param(format!("{}: {e}", path.display())))?;
                    eprintln!("wrote {} and {}", path.display(), summary.display());
                }
                None => print!("{}", table_csv(&report.rows)),
            }
            if !report.failed_lengths.is_empty() {
                eprintln!("no code could be evaluated for n in {:?}", report.failed_lengths);
                return Ok(5);
            }
        }
        Command::Pattern { u, v } => {
            let u = pattern_expand(&u.parse::<Pattern>()?)?;
            let v = pattern_expand(&v.parse::<Pattern>()?)?;
            let shift = includes(&u, &v)?;
            println!("{}", json!({ "included": shift.is_some(), "shift": shift }));
        }
        Command::Schaub { code, a_cap, subset_cap } => {
            let spec = code.spec()?;
            eprintln!("note: cost grows exponentially with the code length");
            println!("{}", schaub_lower_bound(&spec, a_cap as u128, subset_cap as u128)?);
        }
        Command::Proof { v, ell, m, r, lambda, mu, s } => {
            let params = match (ell, m, lambda, mu) {
                (Some(ell), Some(m), None, None) => ProofParams::BoundI { ell, m, r, s },
                (None, None, Some(lambda), Some(mu)) => ProofParams::BoundII { lambda, mu, s },
                _ => return Err(Error::Param("give either --ell and --m, or --lambda and --mu".into())),
            };
            let v: UVec = v.parse()?;
            let inst = build_t(&v, &params)?;
            let report = check_instance(&inst)?;
            print!("{}", render(&inst));
            println!(
                "rows {} discarded {} survivors {} target {} singleton {}",
                report.rows,
                report.discarded,
                report.survivors,
                params.target(v.len())?,
                if report.success { "ok" } else { "failed" }
            );
        }
        Command::Cosets { q, n } => {
            let part = coset_partition(n, q)?;
            println!("{}", json!({ "n": n, "q": q, "cosets": part.classes() }));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
