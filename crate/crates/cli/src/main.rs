use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mindiff::bench::{
    compare_tables, emit_report, parameter_sweep, rows_to_csv, run_experiment, sweep_to_csv, ExperimentConfig,
    ExperimentRow, InstanceSource, ParamOverrides, ResultTable, SweepParam,
};
use mindiff::instances::{format_instance, generate, read_instance, Family, InstanceSpec};
use mindiff::search::seconds;
use mindiff::{solve_exact, Result, DEFAULT_LIMIT, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "mindiff", version, about = "Minimum differential dispersion solver")]
struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search one instance and print the best subset found.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        search: SearchFlags,
        #[arg(long, default_value_t = 1)]
        runs: usize,
        /// Per-run CSV.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Enumerate every subset for the exact optimum.
    Exact {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        m: Option<usize>,
        /// Refuse instances with more subsets than this.
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u128,
    },
    /// Write a random instance in the canonical text format.
    Generate {
        /// som, gkd, mdg-a, mdg-b or mdg-c.
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Defaults to standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Repeated runs over a set of instances with per-instance statistics.
    Bench {
        #[arg(long = "instance", required = true, num_args = 1..)]
        instances: Vec<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        search: SearchFlags,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, env = "MINDIFF_JOBS", default_value_t = 1)]
        jobs: usize,
        /// Statistics CSV; the comparison CSV goes next to it with a `.comparison.csv` suffix.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Published results to compare against.
        #[arg(long)]
        baseline: Option<PathBuf>,
    },
    /// Vary one parameter and report f_best / f_avg per value.
    Sweep {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        m: Option<usize>,
        /// nbr_max, p_w or alpha.
        #[arg(long)]
        param: SweepParam,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        #[command(flatten)]
        search: SearchFlags,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, env = "MINDIFF_JOBS", default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sign test between one column of two result tables (smaller wins).
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value = "f_best")]
        column: String,
    },
}

#[derive(Args, Debug, Clone)]
struct SearchFlags {
    /// Seconds per run, fractions allowed. Default: n.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    nbr_max: Option<usize>,
    #[arg(long)]
    pw: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Cap on search cycles per run.
    #[arg(long)]
    max_iters: Option<u64>,
    /// Stop a run once its objective reaches this value.
    #[arg(long)]
    target: Option<f64>,
    /// Seed of the first run; run k uses seed + k.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl SearchFlags {
    fn overrides(&self) -> Result<ParamOverrides> {
        Ok(ParamOverrides {
            t_max: self.time_limit.map(seconds).transpose()?,
            nbr_max: self.nbr_max,
            p_w: self.pw,
            alpha: self.alpha,
            max_iterations: self.max_iters,
            target_objective: self.target,
        })
    }

    fn config(&self, runs: usize, jobs: usize) -> Result<ExperimentConfig> {
        Ok(ExperimentConfig::new(runs, self.seed).with_jobs(jobs).with_overrides(self.overrides()?))
    }
}

fn join(subset: &[usize]) -> String {
    subset.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn write_or_print(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve { instance, m, search, runs, output } => {
            // loaded up front so read errors surface with their own exit code
            let named = InstanceSource::File { path: instance, m }.load()?;
            let row = run_experiment(&[named.into()], &search.config(runs, 1)?)?.remove(0);
            let ExperimentRow::Completed { stats, runs } = row else { unreachable!("instance already loaded") };
            let best = runs
                .iter()
                .min_by(|a, b| a.objective.total_cmp(&b.objective))
                .expect("at least one run");
            println!("objective={}", best.objective);
            println!("subset={}", join(&best.subset));
            println!("seed={} time_to_best_s={:.3} iterations={}", best.seed, best.elapsed_to_best.as_secs_f64(), best.iterations);
            if runs.len() > 1 {
                println!("runs={} f_avg={} f_worst={} sigma={}", stats.runs, stats.f_avg, stats.f_worst, stats.sigma);
            }
            if let Some(path) = output {
                let mut csv = String::from("run,seed,objective,time_to_best_s,time_total_s,iterations,subset\n");
                for (k, r) in runs.iter().enumerate() {
                    csv += &format!(
                        "{k},{},{},{:.3},{:.3},{},\"{}\"\n",
                        r.seed,
                        r.objective,
                        r.elapsed_to_best.as_secs_f64(),
                        r.elapsed_total.as_secs_f64(),
                        r.iterations,
                        join(&r.subset)
                    );
                }
                fs::write(path, csv)?;
            }
        }
        Command::Exact { instance, m, limit } => {
            let inst = read_instance::<f64>(&instance, m)?;
            let res = solve_exact(&inst, limit)?;
            println!("optimum={}", res.optimum);
            println!("subset={}", join(&res.optimal_subset));
            println!("subsets={}", res.subsets_enumerated);
        }
        Command::Generate { family, n, m, seed, output } => {
            let inst = generate(&InstanceSpec::new(family, n, m, seed))?;
            write_or_print(output.as_deref(), &format_instance(&inst))?;
        }
        Command::Bench { instances, m, search, runs, jobs, output, baseline } => {
            let baseline = baseline.map(ResultTable::read).transpose()?;
            let sources: Vec<InstanceSource> =
                instances.into_iter().map(|path| InstanceSource::File { path, m }).collect();
            let rows = run_experiment(&sources, &search.config(runs, jobs)?)?;
            let failed = rows.iter().filter(|r| r.stats().is_none()).count();
            let stats: Vec<_> = rows.iter().filter_map(|r| r.stats().cloned()).collect();
            let report = emit_report(&stats, baseline.as_ref())?;
            match &output {
                Some(path) => {
                    fs::write(path, rows_to_csv(&rows)?)?;
                    if let Some(cmp) = &report.comparison_csv {
                        fs::write(path.with_extension("comparison.csv"), cmp)?;
                    }
                }
                None => print!("{}", rows_to_csv(&rows)?),
            }
            print!("{}", report.text);
            if failed > 0 {
                log::warn!("{failed} instance(s) could not be read");
            }
        }
        Command::Sweep { instance, m, param, values, search, runs, jobs, output } => {
            let named = InstanceSource::File { path: instance, m }.load()?;
            let rows = parameter_sweep(&named, param, &values, &search.config(runs, jobs)?)?;
            write_or_print(output.as_deref(), &sweep_to_csv(&rows)?)?;
        }
        Command::Compare { a, b, column } => {
            let (ta, tb) = (ResultTable::read(&a)?, ResultTable::read(&b)?);
            let (joined, r) = compare_tables(&ta, &tb, &column)?;
            println!("column {column}: {} paired instances, {} unmatched", r.x, joined.unmatched.len());
            println!("wins a={} b={} ties={}", r.wins_a, r.wins_b, r.ties);
            let verdict = match r.winner_is_a() {
                Some(true) => "a significantly better",
                Some(false) => "b significantly better",
                None => "no significant difference",
            };
            println!("CV={} (X={}, alpha=0.05) p={:.4}: {verdict}", r.critical_value, r.x, r.p_value);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
