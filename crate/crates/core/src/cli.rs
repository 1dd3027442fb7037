//! Solver dispatch, run records, benchmarking, scaling measurements and
//! instance generation behind the `pdtsp` binary.
//!
//! Record CSVs start with the version line [`CSV_VERSION`] followed by the
//! header `instance,method,seed,cost,gap,ttb,total`. Only the two timing
//! columns vary between identical invocations.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{
    generate_pairs, parse_instance, random_points, render_solution, Coordinates, GenerateOptions, Instance,
    PairGroup,
};
use crate::metaheuristics::{greedy_construct, hgs_run, rr_run, HgsParams, InsertionEval, RrParams};
use crate::neighborhoods::relocate_pair_best;
use crate::oracle::brute_force_optimal;
use crate::search::{local_search, phase_one_sweep, SearchParams};
use crate::tour::Tour;

pub const CSV_VERSION: &str = "# pdtsp-kit v1";
pub const RECORD_HEADER: &str = "instance,method,seed,cost,gap,ttb,total";
pub const SUMMARY_HEADER: &str = "level,key,runs,avg_gap,best_gap,mean_time";
/// File extension of canonical instance files picked up by `bench`.
pub const INSTANCE_EXTENSION: &str = "pdtsp";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Hgs,
    /// Ruin-and-Recreate with enumerated insertion evaluation.
    Rr,
    /// Ruin-and-Recreate with linear-time insertion evaluation.
    RrFast,
    /// One greedy construction followed by a full local search.
    LsOnly,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Hgs => "hgs",
            Method::Rr => "rr",
            Method::RrFast => "rr-fast",
            Method::LsOnly => "ls-only",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hgs" => Ok(Method::Hgs),
            "rr" => Ok(Method::Rr),
            "rr-fast" => Ok(Method::RrFast),
            "ls-only" => Ok(Method::LsOnly),
            "oracle" => Ok(Method::Oracle),
            other => Err(Error::InvalidParams(format!("unknown method `{other}`"))),
        }
    }
}

/// One solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub instance: String,
    pub method: Method,
    pub seed: u64,
    pub cost: f64,
    /// `100 (cost - ref) / ref` when a reference cost is known.
    pub gap: Option<f64>,
    /// Seconds until the best tour was found.
    pub ttb: f64,
    /// Seconds for the whole run.
    pub total: f64,
}

pub fn gap_percent(cost: f64, reference: f64) -> f64 {
    100.0 * (cost - reference) / reference
}

impl RunRecord {
    pub fn csv_row(&self) -> String {
        let gap = self.gap.map(|g| format!("{g:.4}")).unwrap_or_default();
        format!(
            "{},{},{},{},{},{:.6},{:.6}",
            self.instance, self.method, self.seed, self.cost, gap, self.ttb, self.total
        )
    }
}

/// Renders records with the version line and header.
pub fn render_records(records: &[RunRecord]) -> String {
    let mut out = format!("{CSV_VERSION}\n{RECORD_HEADER}\n");
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Settings shared by `solve` and `bench`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub method: Method,
    pub seeds: Vec<u64>,
    /// Wall-clock budget in seconds; defaults to `N` seconds when no other
    /// budget is given.
    pub tmax: Option<f64>,
    /// Generations (HGS) without improvement before stopping.
    pub no_improve: Option<u64>,
    /// Iterations (RR) or generations (HGS).
    pub iterations: Option<u64>,
    pub search: SearchParams,
    /// Stop as soon as this cost is reached.
    pub target: Option<f64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            method: Method::Hgs,
            seeds: vec![1],
            tmax: None,
            no_improve: None,
            iterations: None,
            search: SearchParams::default(),
            target: None,
        }
    }
}

impl SolveOptions {
    fn time_limit(&self, instance: &Instance) -> Option<Duration> {
        match self.tmax {
            Some(t) => Some(Duration::from_secs_f64(t)),
            None if self.no_improve.is_none() && self.iterations.is_none() => {
                Some(Duration::from_secs(instance.n_visits() as u64))
            }
            None => None,
        }
    }
}

/// Parses `a..b` / `a..=b` (both inclusive), comma lists, or a single seed.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidParams(format!("cannot read seeds from `{text}`"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    if let Some((a, b)) = text.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    text.split(',').map(num).collect()
}

/// Reads `instance,cost` lines; `#` comments and a header line are skipped.
pub fn parse_reference_costs(text: &str) -> Result<HashMap<String, f64>> {
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, cost) = line
            .split_once(',')
            .ok_or_else(|| Error::parse(i + 1, "expected `instance,cost`"))?;
        match cost.trim().parse::<f64>() {
            Ok(c) => {
                out.insert(name.trim().to_string(), c);
            }
            Err(_) if i == 0 || out.is_empty() => continue,
            Err(_) => return Err(Error::parse(i + 1, format!("cannot parse cost `{}`", cost.trim()))),
        }
    }
    Ok(out)
}

/// Runs one method with one seed.
pub fn run_once(instance: &Instance, options: &SolveOptions, seed: u64, reference: Option<f64>) -> Result<(RunRecord, Tour)> {
    options.search.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    let time_limit = options.time_limit(instance);
    let (tour, ttb) = match options.method {
        Method::Hgs => {
            let params = HgsParams {
                search: options.search,
                time_limit,
                max_generations: options.iterations,
                no_improve: options.no_improve,
                target: options.target,
                ..HgsParams::default()
            };
            let out = hgs_run(instance, &params, &mut rng)?;
            (out.best, out.time_to_best)
        }
        Method::Rr | Method::RrFast => {
            if options.no_improve.is_some() {
                return Err(Error::InvalidParams(
                    "--budget-noimprove applies to hgs; use --iterations or --tmax for rr".into(),
                ));
            }
            let params = RrParams {
                insertion: if options.method == Method::Rr {
                    InsertionEval::Naive
                } else {
                    InsertionEval::Fast
                },
                max_iterations: options.iterations,
                time_limit,
                target: options.target,
                ..RrParams::default()
            };
            let out = rr_run(instance, &params, &mut rng)?;
            (out.best, out.time_to_best)
        }
        Method::LsOnly => {
            let start_tour = greedy_construct(instance, &mut rng);
            let tour = local_search(instance, &start_tour, &options.search, true, &mut rng);
            (tour, start.elapsed())
        }
        Method::Oracle => {
            let out = brute_force_optimal(instance)?;
            (out.tour, start.elapsed())
        }
    };
    let total = start.elapsed().as_secs_f64();
    let record = RunRecord {
        instance: instance.name().to_string(),
        method: options.method,
        seed,
        cost: tour.cost(),
        gap: reference.map(|r| gap_percent(tour.cost(), r)),
        ttb: ttb.as_secs_f64().min(total),
        total,
    };
    Ok((record, tour))
}

/// Solution file name for a run.
pub fn solution_path(dir: &Path, record: &RunRecord) -> PathBuf {
    dir.join(format!("{}.{}.{}.sol", record.instance, record.method, record.seed))
}

/// Runs every seed on one instance; writes solution files into `out_dir`
/// when given.
pub fn solve(
    instance: &Instance,
    options: &SolveOptions,
    reference: Option<f64>,
    out_dir: Option<&Path>,
) -> Result<Vec<RunRecord>> {
    let mut records = Vec::with_capacity(options.seeds.len());
    for &seed in &options.seeds {
        let (record, tour) = run_once(instance, options, seed, reference)?;
        if let Some(dir) = out_dir {
            std::fs::create_dir_all(dir)?;
            std::fs::write(solution_path(dir, &record), render_solution(instance, &tour))?;
        }
        records.push(record);
    }
    Ok(records)
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

/// Instance files (`*.pdtsp`) of a directory, sorted by file name.
pub fn load_instances(dir: &Path) -> Result<Vec<Instance>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().map_or(false, |x| x == INSTANCE_EXTENSION))
        .collect();
    paths.sort();
    paths.iter().map(|p| read_instance(p)).collect()
}

/// Runs all `(instance, seed)` jobs on `threads` workers. Records come back
/// in job order regardless of completion order.
pub fn bench(
    instances: &[Instance],
    options: &SolveOptions,
    references: &HashMap<String, f64>,
    threads: usize,
) -> Result<Vec<RunRecord>> {
    let jobs: Vec<(usize, u64)> = (0..instances.len())
        .flat_map(|i| options.seeds.iter().map(move |&s| (i, s)))
        .collect();
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();
    std::thread::scope(|scope| {
        for _ in 0..threads.max(1) {
            let tx = tx.clone();
            let (next, jobs) = (&next, &jobs);
            scope.spawn(move || loop {
                let j = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(i, seed)) = jobs.get(j) else { break };
                let inst = &instances[i];
                let result = run_once(inst, options, seed, references.get(inst.name()).copied());
                if tx.send((j, result.map(|(r, _)| r))).is_err() {
                    break;
                }
            });
        }
    });
    drop(tx);
    let mut out: Vec<(usize, RunRecord)> = Vec::with_capacity(jobs.len());
    for (j, r) in rx {
        out.push((j, r?));
    }
    out.sort_by_key(|(j, _)| *j);
    Ok(out.into_iter().map(|(_, r)| r).collect())
}

/// Group of an instance: the trailing `A`, `B` or `C` of its name, else `-`.
pub fn instance_group(name: &str) -> &str {
    match name.chars().last() {
        Some(c @ ('A' | 'B' | 'C')) => &name[name.len() - c.len_utf8()..],
        _ => "-",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    /// `instance` or `group`.
    pub level: &'static str,
    pub key: String,
    pub runs: usize,
    pub avg_gap: Option<f64>,
    pub best_gap: Option<f64>,
    pub mean_time: f64,
}

fn mean(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (sum, count) = xs.into_iter().fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

/// Per-instance averages (gap mean, gap minimum, mean total time), then
/// per-group means of those instance figures. Gaps stay empty whenever a
/// run lacks a reference cost.
pub fn summarize(records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut order: Vec<&str> = Vec::new();
    let mut by_instance: HashMap<&str, Vec<&RunRecord>> = HashMap::new();
    for r in records {
        by_instance
            .entry(&r.instance)
            .or_insert_with(|| {
                order.push(&r.instance);
                Vec::new()
            })
            .push(r);
    }
    let mut rows: Vec<SummaryRow> = order
        .iter()
        .map(|name| {
            let runs = &by_instance[name];
            let gaps: Option<Vec<f64>> = runs.iter().map(|r| r.gap).collect();
            SummaryRow {
                level: "instance",
                key: name.to_string(),
                runs: runs.len(),
                avg_gap: gaps.as_ref().map(|g| mean(g.iter().copied())),
                best_gap: gaps.as_ref().map(|g| g.iter().copied().fold(f64::INFINITY, f64::min)),
                mean_time: mean(runs.iter().map(|r| r.total)),
            }
        })
        .collect();
    let mut groups: Vec<String> = Vec::new();
    for row in &rows {
        let g = instance_group(&row.key).to_string();
        if !groups.contains(&g) {
            groups.push(g);
        }
    }
    groups.sort();
    let group_rows: Vec<SummaryRow> = groups
        .into_iter()
        .map(|g| {
            let members: Vec<&SummaryRow> = rows.iter().filter(|r| instance_group(&r.key) == g).collect();
            let avg: Option<Vec<f64>> = members.iter().map(|r| r.avg_gap).collect();
            let best: Option<Vec<f64>> = members.iter().map(|r| r.best_gap).collect();
            SummaryRow {
                level: "group",
                key: g,
                runs: members.iter().map(|r| r.runs).sum(),
                avg_gap: avg.map(mean),
                best_gap: best.map(mean),
                mean_time: mean(members.iter().map(|r| r.mean_time)),
            }
        })
        .collect();
    rows.extend(group_rows);
    rows
}

pub fn render_summary(rows: &[SummaryRow]) -> String {
    let opt = |x: Option<f64>| x.map(|v| format!("{v:.4}")).unwrap_or_default();
    let mut out = format!("{CSV_VERSION}\n{SUMMARY_HEADER}\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{:.6}\n",
            r.level,
            r.key,
            r.runs,
            opt(r.avg_gap),
            opt(r.best_gap),
            r.mean_time
        ));
    }
    out
}

/// Mean timings on one synthetic instance size.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub n_visits: usize,
    /// Seconds for Relocate-Pair evaluated on every pair.
    pub relocate_scan: f64,
    /// Seconds for one phase-one sweep from a random feasible tour.
    pub sweep: f64,
}

/// Times the relocate scan and one phase-one sweep on uniform random
/// instances with roughly `N` visits each (`N / 2` pairs). Every repetition
/// draws a fresh instance and random feasible tour; timings are means.
/// Repetitions cycle through the sizes so that slow drifts of the machine
/// speed weigh on every size alike.
pub fn scaling(sizes: &[usize], reps: usize, seed: u64) -> Vec<ScalingRow> {
    let params = SearchParams::default();
    let mut rows: Vec<ScalingRow> = sizes
        .iter()
        .map(|&size| ScalingRow {
            n_visits: 2 * (size / 2).max(1) + 1,
            relocate_scan: 0.0,
            sweep: 0.0,
        })
        .collect();
    let reps = reps.max(1);
    for rep in 0..reps {
        for (row, &size) in rows.iter_mut().zip(sizes) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((size as u64) << 32) ^ rep as u64);
            let n = (size / 2).max(1);
            let inst = crate::instance::random_instance(
                format!("scale{size}"),
                n,
                1000,
                crate::instance::Rounding::Nearest,
                crate::instance::TourMode::Closed,
                &mut rng,
            );
            let tour = Tour::random_feasible(&inst, &mut rng);
            let start = Instant::now();
            let mut sink = 0.0;
            for x in 1..=n {
                sink += relocate_pair_best(&inst, &tour, x).delta;
            }
            row.relocate_scan += start.elapsed().as_secs_f64() / reps as f64;
            std::hint::black_box(sink);
            let mut t = tour;
            let start = Instant::now();
            phase_one_sweep(&inst, &mut t, &params, &mut rng);
            row.sweep += start.elapsed().as_secs_f64() / reps as f64;
        }
    }
    rows
}

/// CSV with each timing and its ratio to the previous size.
pub fn render_scaling(rows: &[ScalingRow]) -> String {
    let mut out = format!("{CSV_VERSION}\nn_visits,relocate_scan_s,relocate_ratio,sweep_s,sweep_ratio\n");
    for (i, r) in rows.iter().enumerate() {
        let ratio = |f: fn(&ScalingRow) -> f64| {
            if i == 0 {
                String::new()
            } else {
                format!("{:.3}", f(r) / f(&rows[i - 1]))
            }
        };
        out.push_str(&format!(
            "{},{:.6},{},{:.6},{}\n",
            r.n_visits,
            r.relocate_scan,
            ratio(|x| x.relocate_scan),
            r.sweep,
            ratio(|x| x.sweep)
        ));
    }
    out
}

/// Instance generation settings.
#[derive(Debug, Clone, PartialEq)]
pub struct GenOptions {
    pub name: String,
    pub options: GenerateOptions,
    pub seed: u64,
    /// Raw points; when absent `2 * pairs + 1` uniform integer points in
    /// `[0, side]^2` are drawn.
    pub coords: Option<Coordinates>,
    pub pairs: usize,
    pub side: u32,
}

/// Deterministic per seed.
pub fn generate(gen: &GenOptions) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(gen.seed);
    let coords = match &gen.coords {
        Some(c) => c.clone(),
        None => {
            if gen.pairs == 0 {
                return Err(Error::InvalidParams("at least one pair is required".into()));
            }
            random_points(2 * gen.pairs + 1, gen.side, &mut rng)
        }
    };
    generate_pairs(gen.name.clone(), &coords, gen.options, &mut rng)
}

/// Parses `A`, `B` or `C`.
pub fn parse_group(s: &str) -> Result<PairGroup> {
    s.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds() {
        assert_eq!(parse_seeds("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_seeds("1..=3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_seeds("4,9").unwrap(), vec![4, 9]);
        assert_eq!(parse_seeds("7").unwrap(), vec![7]);
        assert!(parse_seeds("3..1").is_err());
        assert!(parse_seeds("x").is_err());
    }

    #[test]
    fn references_skip_header() {
        let refs = parse_reference_costs("instance,cost\nprob5a,3585\n# note\nx, 2.5\n").unwrap();
        assert_eq!(refs["prob5a"], 3585.0);
        assert_eq!(refs["x"], 2.5);
        assert!(parse_reference_costs("a,1\nb,zz\n").is_err());
    }

    #[test]
    fn groups() {
        assert_eq!(instance_group("X-n101-k25C"), "C");
        assert_eq!(instance_group("prob5a"), "-");
    }

    #[test]
    fn record_row() {
        let r = RunRecord {
            instance: "i".into(),
            method: Method::RrFast,
            seed: 3,
            cost: 110.0,
            gap: Some(gap_percent(110.0, 100.0)),
            ttb: 0.5,
            total: 1.0,
        };
        assert_eq!(r.csv_row(), "i,rr-fast,3,110,10.0000,0.500000,1.000000");
    }
}
