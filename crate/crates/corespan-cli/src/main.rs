//! Command-line front end: single-partition queries plus verification
//! campaigns that stream JSON Lines.
//!
//! Exit codes: 0 on success, 1 on a verification failure, 2 on usage or
//! precondition errors. The environment variable `CORESPAN_SEED` is reserved
//! for future sampled campaigns; every check implemented here is exhaustive,
//! so it is read by nothing.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use corespan::abacus::{core, core_charges, glaisher_split, quotient};
use corespan::involution::involute;
use corespan::multigraph::{SlopeParams, Tour};
use corespan::partition::letters_to_string;
use corespan::statistics::{crit_minus, crit_plus, stat_report, Slope};
use corespan::Partition;

use corespan_cli::campaigns::{self, Options};
use corespan_cli::report::{CellRecord, VerifyReport};

#[derive(Parser)]
#[command(
    name = "corespan",
    version,
    about = "Partition cores, quotients, boundary multigraphs, and exhaustive identity verification",
    long_about = "Exact partition combinatorics on the boundary-word model.\n\
                  Data commands print human-readable summaries by default and the\n\
                  stable JSON wire format under --json. Verification campaigns\n\
                  always stream JSON Lines (one record per grid cell, then a\n\
                  summary record).\n\n\
                  CORESPAN_SEED is reserved and currently unused: every campaign\n\
                  is exhaustive over its grid, not sampled."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the JSON wire format instead of the human-readable summary.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for verification campaigns.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Suppress the wall_ms field so reports are byte-reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Args)]
struct PartitionArg {
    /// Comma-separated weakly decreasing parts, e.g. `12,12,10,8,7,4,1,1,1`;
    /// empty for the empty partition.
    #[arg(long, default_value = "")]
    partition: String,
}

impl PartitionArg {
    fn parse(&self) -> Result<Partition, String> {
        self.partition
            .parse()
            .map_err(|e| format!("--partition: {e}"))
    }
}

#[derive(Args)]
struct SlopeArgs {
    #[arg(long)]
    r: u64,
    #[arg(long)]
    s: u64,
    #[arg(long)]
    c: u32,
}

impl SlopeArgs {
    fn params(&self) -> Result<SlopeParams, String> {
        if self.r == 0 || self.s == 0 || self.c == 0 {
            return Err("--r, --s, --c must be positive".into());
        }
        if num_integer::Integer::gcd(&self.r, &self.s) != 1 {
            return Err(format!("--r {} and --s {} must be coprime", self.r, self.s));
        }
        Ok(SlopeParams::new(self.r, self.s, self.c))
    }
}

#[derive(Subcommand)]
enum Command {
    /// The c-core and its runner charges.
    Core {
        #[command(flatten)]
        partition: PartitionArg,
        #[arg(long)]
        c: u32,
    },
    /// The c-quotient together with the core and charges.
    Quotient {
        #[command(flatten)]
        partition: PartitionArg,
        #[arg(long)]
        c: u32,
    },
    /// Split part multiplicities into stacks of c and a repeat-free rest.
    Gc {
        #[command(flatten)]
        partition: PartitionArg,
        #[arg(long)]
        c: u32,
    },
    /// All slope statistics of one partition.
    Stats {
        #[command(flatten)]
        partition: PartitionArg,
        #[arg(long)]
        c: u32,
        /// Slope as `r/s`, an integer, or `inf`.
        #[arg(long)]
        slope: String,
    },
    /// Coefficient array of `sum t^stat` over one core class.
    Distribution {
        /// Statistic to tally.
        #[arg(long, value_enum)]
        stat: StatChoice,
        /// The fixed c-core, as comma-separated parts.
        #[arg(long, default_value = "")]
        core: String,
        #[arg(long)]
        c: u32,
        /// Size of the partitions in the class.
        #[arg(long)]
        n: u64,
        /// Slope as `r/s`, an integer, or `inf`.
        #[arg(long, default_value = "0")]
        slope: String,
    },
    /// Arrival and departure words of the boundary tour on the cylinder.
    Multigraph {
        #[command(flatten)]
        partition: PartitionArg,
        #[command(flatten)]
        slope: SlopeArgs,
        /// Window bound; must be a multiple of r*s*c clearing the diagram.
        #[arg(long)]
        k: Option<i64>,
        /// Emit a DOT rendering instead.
        #[arg(long)]
        dot: bool,
    },
    /// Apply the arrival-word involution at slope r/s and modulus c.
    Involute {
        #[command(flatten)]
        partition: PartitionArg,
        #[command(flatten)]
        slope: SlopeArgs,
    },
    /// Exhaustive verification campaigns (JSON Lines output).
    Verify {
        #[command(subcommand)]
        campaign: VerifyCommand,
    },
    /// Golden worked examples replayed end to end.
    Example {
        #[command(subcommand)]
        which: ExampleCommand,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// h+ and h- are equidistributed over every core class at every
    /// critical rational, witnessed by counting and by the involution.
    Equidistribution {
        #[arg(long)]
        nmax: u64,
        /// Comma-separated moduli, e.g. `1,2,3`.
        #[arg(long, value_delimiter = ',', required = true)]
        c: Vec<u32>,
    },
    /// Enumerated hook-statistic series equal the closed product formula.
    MainTheorem {
        /// The fixed c-core, as comma-separated parts (empty for the empty core).
        #[arg(long, default_value = "")]
        core: String,
        #[arg(long)]
        c: u32,
        #[arg(long, default_value_t = corespan::series::DEFAULT_TRUNCATION)]
        qmax: usize,
        #[arg(long, default_value_t = corespan::series::DEFAULT_TRUNCATION)]
        tmax: usize,
    },
    /// The critical-statistic product formula when r+s divides c.
    Bfn {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        c: u32,
        #[arg(long, default_value_t = 18)]
        qmax: usize,
    },
    /// Multigraph difference formulas against direct statistic differences.
    SuccessorLemmas {
        /// Checks every partition of size strictly below this bound.
        #[arg(long)]
        nmax: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        c: u32,
    },
    /// The multiplicity-splitting bijection and its class series.
    Glaisher {
        #[arg(long)]
        nmax: u64,
        #[arg(long)]
        c: u32,
        #[arg(long, default_value_t = corespan::series::DEFAULT_TRUNCATION)]
        qmax: usize,
    },
}

#[derive(Subcommand)]
enum ExampleCommand {
    /// The size-7 class with 2-core (2,1): involution chain, critical
    /// rationals, composite fixed point, distribution identity.
    Extended,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum StatChoice {
    HPlus,
    HMinus,
    Mid,
    CritPlus,
    CritMinus,
    LambdaBoxCstar,
}

impl From<StatChoice> for corespan::statistics::Statistic {
    fn from(choice: StatChoice) -> Self {
        use corespan::statistics::Statistic;
        match choice {
            StatChoice::HPlus => Statistic::HPlus,
            StatChoice::HMinus => Statistic::HMinus,
            StatChoice::Mid => Statistic::Mid,
            StatChoice::CritPlus => Statistic::CritPlus,
            StatChoice::CritMinus => Statistic::CritMinus,
            StatChoice::LambdaBoxCstar => Statistic::LambdaBoxCstar,
        }
    }
}

fn emit_record(record: &CellRecord) {
    println!(
        "{}",
        serde_json::to_string(record).expect("records serialize")
    );
}

fn finish_campaign(report: VerifyReport) -> ExitCode {
    println!(
        "{}",
        serde_json::to_string(&report).expect("report serializes")
    );
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    let opts = Options {
        jobs: cli.jobs.max(1),
        timing: !cli.no_timing,
    };
    match cli.command {
        Command::Core { partition, c } => {
            if c == 0 {
                return Err("--c must be positive".into());
            }
            let lambda = partition.parse()?;
            let mu = core(&lambda, c);
            let charges = core_charges(&lambda, c);
            if cli.json {
                println!("{}", json!({"core": mu, "charges": charges}));
            } else {
                println!("core: {mu}");
                println!("charges: {charges:?}");
            }
        }
        Command::Quotient { partition, c } => {
            if c == 0 {
                return Err("--c must be positive".into());
            }
            let lambda = partition.parse()?;
            let mu = core(&lambda, c);
            let charges = core_charges(&lambda, c);
            let qs = quotient(&lambda, c);
            if cli.json {
                println!(
                    "{}",
                    json!({"core": mu, "charges": charges, "quotient": qs})
                );
            } else {
                println!("core: {mu}");
                println!("charges: {charges:?}");
                for (i, q) in qs.iter().enumerate() {
                    println!("quotient[{i}]: {q}");
                }
            }
        }
        Command::Gc { partition, c } => {
            if c == 0 {
                return Err("--c must be positive".into());
            }
            let lambda = partition.parse()?;
            let (xi, nu) = glaisher_split(&lambda, c);
            if cli.json {
                println!("{}", json!({"xi": xi, "nu": nu}));
            } else {
                println!("xi: {xi}");
                println!("nu: {nu}");
            }
        }
        Command::Stats {
            partition,
            c,
            slope,
        } => {
            if c == 0 {
                return Err("--c must be positive".into());
            }
            let lambda = partition.parse()?;
            let x: Slope = slope.parse().map_err(|e| format!("--slope: {e}"))?;
            let report = stat_report(&lambda, x, c);
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string(&report).expect("report serializes")
                );
            } else {
                println!("partition {lambda} at slope {x}, modulus {c}");
                println!("  mid        = {}", report.mid);
                println!("  crit_plus  = {}", report.crit_plus);
                println!("  crit_minus = {}", report.crit_minus);
                match report.h_plus {
                    Some(v) => println!("  h_plus     = {v}"),
                    None => println!("  h_plus     = undefined at infinity"),
                }
                match report.h_minus {
                    Some(v) => println!("  h_minus    = {v}"),
                    None => println!("  h_minus    = undefined at zero"),
                }
                println!("  lambda_box_cstar = {}", report.lambda_box_cstar);
            }
        }
        Command::Distribution {
            stat,
            core: mu,
            c,
            n,
            slope,
        } => {
            if c == 0 {
                return Err("--c must be positive".into());
            }
            let mu: Partition = mu.parse().map_err(|e| format!("--core: {e}"))?;
            if !corespan::abacus::is_core(&mu, c) {
                return Err(format!("--core {mu} has a hook divisible by {c}"));
            }
            let x: Slope = slope.parse().map_err(|e| format!("--slope: {e}"))?;
            let class =
                corespan::abacus::enumerate_class(&mu, c, n).map_err(|e| e.to_string())?;
            let coeffs = corespan::statistics::distribution(stat.into(), x, c, &class)
                .map_err(|e| e.to_string())?;
            if cli.json {
                println!(
                    "{}",
                    json!({"core": mu, "c": c, "n": n, "slope": x.to_string(),
                           "class_size": class.len(), "coefficients": coeffs})
                );
            } else {
                println!("class of {} partitions; coefficients {coeffs:?}", class.len());
            }
        }
        Command::Multigraph {
            partition,
            slope,
            k,
            dot,
        } => {
            let lambda = partition.parse()?;
            let params = slope.params()?;
            let tour = Tour::build(&lambda, params, k).map_err(|e| e.to_string())?;
            let graph = tour.multigraph();
            if dot {
                print!("{}", graph.to_dot());
            } else if cli.json {
                let vertices: Vec<_> = graph
                    .stored()
                    .iter()
                    .map(|(v, counts)| {
                        let arrival = tour
                            .arrivals()
                            .get(v)
                            .map(|w| letters_to_string(w))
                            .unwrap_or_default();
                        let departure = tour
                            .departures()
                            .get(v)
                            .map(|w| letters_to_string(w))
                            .unwrap_or_default();
                        json!({
                            "v": v.level,
                            "i": v.residue,
                            "E_in": counts.e_in,
                            "S_in": counts.s_in,
                            "E_out": counts.e_out,
                            "S_out": counts.s_out,
                            "arrival": arrival,
                            "departure": departure,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({"k": tour.window_bound(), "vertices": vertices})
                );
            } else {
                println!("window bound k = {}", tour.window_bound());
                for (v, word) in tour.arrivals() {
                    let dep = tour
                        .departures()
                        .get(v)
                        .map(|w| letters_to_string(w))
                        .unwrap_or_default();
                    println!("  {v} arrival {} departure {dep}", letters_to_string(word));
                }
            }
        }
        Command::Involute { partition, slope } => {
            let lambda = partition.parse()?;
            let params = slope.params()?;
            let x = Slope::new(params.r, params.s);
            let image = involute(&lambda, params);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "input": lambda,
                        "output": image,
                        "report": {
                            "mid": corespan::statistics::mid(&lambda, x, params.c),
                            "crit_plus_in": crit_plus(&lambda, x, params.c),
                            "crit_minus_in": crit_minus(&lambda, x, params.c),
                            "crit_plus_out": crit_plus(&image, x, params.c),
                            "crit_minus_out": crit_minus(&image, x, params.c),
                        }
                    })
                );
            } else {
                println!("{lambda} -> {image}");
            }
        }
        Command::Verify { campaign } => {
            let code = match campaign {
                VerifyCommand::Equidistribution { nmax, c } => {
                    if c.contains(&0) {
                        return Err("--c entries must be positive".into());
                    }
                    finish_campaign(campaigns::equidistribution(
                        nmax,
                        &c,
                        opts,
                        &mut emit_record,
                    ))
                }
                VerifyCommand::MainTheorem {
                    core,
                    c,
                    qmax,
                    tmax,
                } => {
                    let mu: Partition = core.parse().map_err(|e| format!("--core: {e}"))?;
                    if c == 0 {
                        return Err("--c must be positive".into());
                    }
                    let report =
                        campaigns::main_theorem(&mu, c, qmax, tmax, opts, &mut emit_record)
                            .map_err(|e| e.to_string())?;
                    finish_campaign(report)
                }
                VerifyCommand::Bfn { r, s, c, qmax } => {
                    let report = campaigns::bfn(r, s, c, qmax, opts, &mut emit_record)?;
                    finish_campaign(report)
                }
                VerifyCommand::SuccessorLemmas { nmax, r, s, c } => {
                    let params = SlopeArgs { r, s, c }.params()?;
                    finish_campaign(campaigns::successor_lemmas(
                        nmax,
                        params.r,
                        params.s,
                        params.c,
                        opts,
                        &mut emit_record,
                    ))
                }
                VerifyCommand::Glaisher { nmax, c, qmax } => {
                    if c == 0 {
                        return Err("--c must be positive".into());
                    }
                    finish_campaign(campaigns::glaisher(nmax, c, qmax, opts, &mut emit_record))
                }
            };
            return Ok(code);
        }
        Command::Example { which } => {
            let code = match which {
                ExampleCommand::Extended => {
                    finish_campaign(campaigns::extended_example(opts, &mut emit_record))
                }
            };
            return Ok(code);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
