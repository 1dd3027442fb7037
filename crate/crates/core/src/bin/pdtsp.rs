use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pdtsp_kit::cli::{self, GenOptions, Method, SolveOptions};
use pdtsp_kit::instance::{parse_coordinates, GenerateOptions, PairGroup};
use pdtsp_kit::search::SearchParams;
use pdtsp_kit::{Error, Rounding, TourMode};

#[derive(Parser)]
#[command(name = "pdtsp", version, about = "Pickup-and-delivery TSP solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance for every seed and print run records.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Solve every `*.pdtsp` file of a directory and print a summary.
    Bench {
        dir: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Also write the raw run records here.
        #[arg(long)]
        records: Option<PathBuf>,
        /// Time relocate scans and phase-one sweeps on synthetic instances
        /// instead.
        #[arg(long)]
        scaling: bool,
        #[arg(long, value_delimiter = ',', default_value = "256,512,1024")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
    /// Generate canonical instances.
    Gen {
        /// Points file (TSPLIB or `x y` lines), depot first.
        #[arg(long)]
        coords: Option<PathBuf>,
        /// Pairs for synthetic points.
        #[arg(long, default_value_t = 10)]
        pairs: usize,
        /// Synthetic points are drawn from `[0, side]^2`.
        #[arg(long, default_value_t = 1000)]
        side: u32,
        #[arg(long, default_value = "C")]
        group: PairGroup,
        #[arg(long, default_value = "closed")]
        mode: TourMode,
        #[arg(long, default_value = "nearest")]
        rounding: Rounding,
        #[arg(long, default_value = "1")]
        seeds: String,
        #[arg(long)]
        name: Option<String>,
        /// Directory for `<name>.pdtsp` files; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact optimum by enumeration (up to 8 pairs).
    Oracle {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value = "hgs")]
    method: Method,
    #[arg(long, default_value = "1")]
    seeds: String,
    /// Time budget in seconds (default: number of visits).
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long = "budget-noimprove")]
    budget_noimprove: Option<u64>,
    #[arg(long)]
    iterations: Option<u64>,
    #[arg(long)]
    target: Option<f64>,
    #[arg(long, default_value_t = 30)]
    kor: usize,
    #[arg(long, default_value_t = 3)]
    kbs: usize,
    #[arg(long, default_value_t = 0.1)]
    plarge: f64,
    /// CSV of `instance,cost` reference values for gaps.
    #[arg(long = "ref")]
    reference: Option<PathBuf>,
    /// Directory for solution files.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn options(&self) -> Result<SolveOptions, Error> {
        let search = SearchParams {
            k_or: self.kor,
            k_bs: self.kbs,
            p_large: self.plarge,
        };
        search.validate()?;
        Ok(SolveOptions {
            method: self.method,
            seeds: cli::parse_seeds(&self.seeds)?,
            tmax: self.tmax,
            no_improve: self.budget_noimprove,
            iterations: self.iterations,
            search,
            target: self.target,
        })
    }

    fn references(&self) -> Result<HashMap<String, f64>, Error> {
        match &self.reference {
            Some(p) => cli::parse_reference_costs(&std::fs::read_to_string(p)?),
            None => Ok(HashMap::new()),
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Solve { instance, run } => {
            let inst = cli::read_instance(&instance)?;
            let refs = run.references()?;
            let records = cli::solve(
                &inst,
                &run.options()?,
                refs.get(inst.name()).copied(),
                run.out.as_deref(),
            )?;
            print!("{}", cli::render_records(&records));
        }
        Command::Bench {
            dir,
            run,
            threads,
            records,
            scaling,
            sizes,
            reps,
        } => {
            if scaling {
                print!("{}", cli::render_scaling(&cli::scaling(&sizes, reps, 1)));
                return Ok(());
            }
            let dir = dir.ok_or_else(|| Error::InvalidParams("bench needs an instance directory".into()))?;
            let instances = cli::load_instances(&dir)?;
            let recs = cli::bench(&instances, &run.options()?, &run.references()?, threads)?;
            if let Some(path) = records {
                std::fs::write(path, cli::render_records(&recs))?;
            }
            print!("{}", cli::render_summary(&cli::summarize(&recs)));
        }
        Command::Gen {
            coords,
            pairs,
            side,
            group,
            mode,
            rounding,
            seeds,
            name,
            out,
        } => {
            let points = match &coords {
                Some(p) => Some(parse_coordinates(&std::fs::read_to_string(p)?)?),
                None => None,
            };
            let base = name.unwrap_or_else(|| match &coords {
                Some(p) => stem(p),
                None => format!("rand{pairs}"),
            });
            let seeds = cli::parse_seeds(&seeds)?;
            for &seed in &seeds {
                let name = if seeds.len() > 1 { format!("{base}-s{seed}{group:?}") } else { format!("{base}{group:?}") };
                let gen = GenOptions {
                    name: name.clone(),
                    options: GenerateOptions { group, rounding, mode },
                    seed,
                    coords: points.clone(),
                    pairs,
                    side,
                };
                let text = cli::generate(&gen)?.render();
                match &out {
                    Some(dir) => {
                        std::fs::create_dir_all(dir)?;
                        std::fs::write(dir.join(format!("{name}.{}", cli::INSTANCE_EXTENSION)), text)?;
                    }
                    None => print!("{text}"),
                }
            }
        }
        Command::Oracle { instance, out } => {
            let inst = cli::read_instance(&instance)?;
            let options = SolveOptions {
                method: Method::Oracle,
                ..SolveOptions::default()
            };
            let records = cli::solve(&inst, &options, None, out.as_deref())?;
            print!("{}", cli::render_records(&records));
        }
    }
    Ok(())
}

fn stem(p: &Path) -> String {
    p.file_stem().map_or_else(|| "points".into(), |s| s.to_string_lossy().into_owned())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
