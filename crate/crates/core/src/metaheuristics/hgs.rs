use std::time::{Duration, Instant};

use rand::Rng;

use super::construct::greedy_construct;
use super::{reaches, RunOutcome};
use crate::error::{Error, Result};
use crate::instance::{Instance, TourMode};
use crate::neighborhoods::{best_insertion, best_type1_unchecked, insert_pair};
use crate::search::{local_search, SearchParams};
use crate::tour::{apply_move, Tour};

#[derive(Debug, Clone, PartialEq)]
pub struct HgsParams {
    /// Population size after trimming.
    pub mu: usize,
    /// Offspring added before each trim.
    pub lambda: usize,
    /// Individuals guaranteed to survive; weighs diversity in the fitness.
    pub mu_elite: usize,
    pub search: SearchParams,
    pub time_limit: Option<Duration>,
    pub max_generations: Option<u64>,
    /// Stop after this many generations without a new best.
    pub no_improve: Option<u64>,
    /// Stop once the best cost reaches this value.
    pub target: Option<f64>,
}

impl Default for HgsParams {
    fn default() -> Self {
        HgsParams {
            mu: 25,
            lambda: 40,
            mu_elite: 1,
            search: SearchParams::default(),
            time_limit: None,
            max_generations: None,
            no_improve: None,
            target: None,
        }
    }
}

impl HgsParams {
    pub fn validate(&self) -> Result<()> {
        self.search.validate()?;
        if self.mu < 2 || self.lambda < 1 || self.mu_elite >= self.mu {
            return Err(Error::InvalidParams("need mu >= 2, lambda >= 1 and mu_elite < mu".into()));
        }
        if self.time_limit.is_none() && self.max_generations.is_none() && self.no_improve.is_none() {
            return Err(Error::InvalidParams("a time, generation or no-improvement budget is required".into()));
        }
        Ok(())
    }
}

/// A population member with its set of consecutive location pairs.
#[derive(Debug, Clone)]
pub struct Individual {
    pub tour: Tour,
    /// Sorted, deduplicated unordered location pairs; same-location steps
    /// and the free closing arc of open tours are left out.
    pub edges: Vec<(usize, usize)>,
}

impl Individual {
    pub fn new(instance: &Instance, tour: Tour) -> Individual {
        let seq = tour.sequence();
        let arcs = match instance.mode() {
            TourMode::Closed => seq.len() - 1,
            TourMode::Open => seq.len() - 2,
        };
        let mut edges: Vec<(usize, usize)> = seq[..=arcs]
            .windows(2)
            .map(|w| (instance.location(w[0]), instance.location(w[1])))
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Individual { tour, edges }
    }

    pub fn cost(&self) -> f64 {
        self.tour.cost()
    }
}

/// `1 - |A ∩ B| / |A ∪ B|` on sorted, deduplicated edge lists; zero when
/// both are empty.
pub fn jaccard_distance(a: &[(usize, usize)], b: &[(usize, usize)]) -> f64 {
    let (mut i, mut j, mut common) = (0, 0, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    let union = a.len() + b.len() - common;
    if union == 0 {
        0.0
    } else {
        (union - common) as f64 / union as f64
    }
}

/// Ranks with ties broken by index: `rank[i]` is the place of `i` when
/// sorted by `key` ascending.
fn ranks(key: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..key.len()).collect();
    order.sort_by(|&a, &b| key[a].total_cmp(&key[b]));
    let mut rank = vec![0; key.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    rank
}

fn fitness_from(costs: &[f64], dist: &[Vec<f64>], mu_elite: usize) -> Vec<f64> {
    let size = costs.len();
    let contribution: Vec<f64> = (0..size)
        .map(|i| {
            let mut d: Vec<f64> = (0..size).filter(|&j| j != i).map(|j| dist[i][j]).collect();
            d.sort_by(f64::total_cmp);
            (d[0] + d[1]) / 2.0
        })
        .collect();
    let rc = ranks(costs);
    let negated: Vec<f64> = contribution.iter().map(|c| -c).collect();
    let rd = ranks(&negated);
    let weight = 1.0 - mu_elite as f64 / size as f64;
    (0..size).map(|i| rc[i] as f64 + weight * rd[i] as f64).collect()
}

/// Biased fitness: cost rank plus weighted diversity rank, both 0-based;
/// diversity is the mean distance to the two closest other members. Lower
/// is better.
pub fn biased_fitness(population: &[Individual], mu_elite: usize) -> Result<Vec<f64>> {
    if population.len() < 3 {
        return Err(Error::InvalidParams("biased fitness needs at least three individuals".into()));
    }
    let dist: Vec<Vec<f64>> = population
        .iter()
        .map(|a| population.iter().map(|b| jaccard_distance(&a.edges, &b.edges)).collect())
        .collect();
    let costs: Vec<f64> = population.iter().map(Individual::cost).collect();
    Ok(fitness_from(&costs, &dist, mu_elite))
}

/// Linear order crossover with an explicit window `start..end` of
/// `parent1`: the window is copied in place and the other slots are filled
/// left to right with the missing visits in `parent2`'s order.
pub fn lox_with_window(parent1: &[usize], parent2: &[usize], start: usize, end: usize) -> Vec<usize> {
    let len = parent1.len();
    let max = parent1.iter().chain(parent2).copied().max().unwrap_or(0);
    let mut in_window = vec![false; max + 1];
    for &v in &parent1[start..end] {
        in_window[v] = true;
    }
    let mut fill = parent2.iter().copied().filter(|&v| !in_window[v]);
    (0..len)
        .map(|p| {
            if (start..end).contains(&p) {
                parent1[p]
            } else {
                fill.next().expect("parents hold the same visits")
            }
        })
        .collect()
}

/// Linear order crossover on visit lists with a uniformly drawn non-empty
/// window.
pub fn lox_crossover<R: Rng + ?Sized>(parent1: &[usize], parent2: &[usize], rng: &mut R) -> Vec<usize> {
    if parent1.is_empty() {
        return Vec::new();
    }
    let a = rng.gen_range(0..parent1.len());
    let b = rng.gen_range(0..parent1.len());
    lox_with_window(parent1, parent2, a.min(b), a.max(b) + 1)
}

/// Applies the cheapest Type-1 4-Opt move if it lowers the cost, ignoring
/// precedence, then reinserts every pair whose delivery comes first at its
/// best position, in increasing order of pickup position.
pub fn mutate_and_repair(instance: &Instance, visits: &[usize]) -> Result<Tour> {
    let mut tour = Tour::from_visits(instance, visits)?;
    if let Some(mv) = best_type1_unchecked(instance, &tour) {
        if mv.delta < -crate::IMPROVEMENT_EPS {
            let forced = crate::tour::MoveDelta { feasible: true, ..mv };
            tour = apply_move(instance, &tour, &forced)?;
        }
    }
    let violated = tour.violated_pairs(instance);
    if violated.is_empty() {
        return Ok(tour);
    }
    let mut seq = tour.sequence().to_vec();
    for x in violated {
        let d = instance.delivery_of(x);
        seq.retain(|&v| v != x && v != d);
        let at = best_insertion(instance, &seq, x);
        seq = insert_pair(instance, &seq, x, &at);
    }
    Tour::from_sequence(instance, seq)
}

struct Population {
    members: Vec<Individual>,
    dist: Vec<Vec<f64>>,
    mu_elite: usize,
}

impl Population {
    fn add(&mut self, ind: Individual) {
        let row: Vec<f64> = self.members.iter().map(|m| jaccard_distance(&m.edges, &ind.edges)).collect();
        for (r, &d) in self.dist.iter_mut().zip(&row) {
            r.push(d);
        }
        let mut row = row;
        row.push(0.0);
        self.dist.push(row);
        self.members.push(ind);
    }

    fn remove(&mut self, i: usize) {
        self.members.remove(i);
        self.dist.remove(i);
        for r in &mut self.dist {
            r.remove(i);
        }
    }

    fn fitness(&self) -> Vec<f64> {
        let costs: Vec<f64> = self.members.iter().map(Individual::cost).collect();
        if self.members.len() < 3 {
            return ranks(&costs).into_iter().map(|r| r as f64).collect();
        }
        fitness_from(&costs, &self.dist, self.mu_elite)
    }

    fn best_index(&self) -> usize {
        (0..self.members.len())
            .min_by(|&a, &b| self.members[a].cost().total_cmp(&self.members[b].cost()))
            .expect("population is never empty")
    }

    /// Removes the worst biased fitness until `mu` remain, sparing the best.
    fn trim(&mut self, mu: usize) {
        while self.members.len() > mu {
            let fit = self.fitness();
            let keep = self.best_index();
            let worst = (0..fit.len())
                .filter(|&i| i != keep)
                .max_by(|&a, &b| fit[a].total_cmp(&fit[b]))
                .expect("more than one member");
            self.remove(worst);
        }
    }

    fn tournament<R: Rng + ?Sized>(&self, fit: &[f64], rng: &mut R) -> usize {
        let a = rng.gen_range(0..self.members.len());
        let b = rng.gen_range(0..self.members.len());
        if fit[b] < fit[a] {
            b
        } else {
            a
        }
    }
}

/// Hybrid genetic search.
pub fn hgs_run<R: Rng + ?Sized>(instance: &Instance, params: &HgsParams, rng: &mut R) -> Result<RunOutcome> {
    hgs_run_with_observer(instance, params, rng, |_, _| {})
}

/// [`hgs_run`] calling `observe(generation, population size)` after every
/// generation.
pub fn hgs_run_with_observer<R: Rng + ?Sized>(
    instance: &Instance,
    params: &HgsParams,
    rng: &mut R,
    mut observe: impl FnMut(u64, usize),
) -> Result<RunOutcome> {
    params.validate()?;
    let start = Instant::now();
    let out_of_time = |start: &Instant| params.time_limit.map_or(false, |t| start.elapsed() >= t);
    let mut pop = Population {
        members: Vec::new(),
        dist: Vec::new(),
        mu_elite: params.mu_elite,
    };
    let mut best: Option<Tour> = None;
    let mut time_to_best = Duration::ZERO;
    let mut consider = |tour: &Tour, best: &mut Option<Tour>| {
        if best.as_ref().map_or(true, |b| tour.cost() < b.cost() - crate::IMPROVEMENT_EPS) {
            *best = Some(tour.clone());
            time_to_best = start.elapsed();
            true
        } else {
            false
        }
    };
    for _ in 0..params.mu {
        let use_large = rng.gen_bool(params.search.p_large);
        let tour = local_search(instance, &greedy_construct(instance, rng), &params.search, use_large, rng);
        consider(&tour, &mut best);
        pop.add(Individual::new(instance, tour));
        if out_of_time(&start) || reaches(best.as_ref().expect("set").cost(), params.target) {
            break;
        }
    }
    let mut generation = 0u64;
    let mut since_improvement = 0u64;
    loop {
        let best_cost = best.as_ref().expect("population is non-empty").cost();
        if params.max_generations.map_or(false, |m| generation >= m)
            || params.no_improve.map_or(false, |m| since_improvement >= m)
            || out_of_time(&start)
            || reaches(best_cost, params.target)
            || instance.n_pairs() == 0
        {
            break;
        }
        let fit = pop.fitness();
        let p1 = pop.tournament(&fit, rng);
        let p2 = pop.tournament(&fit, rng);
        let child = lox_crossover(pop.members[p1].tour.visits(), pop.members[p2].tour.visits(), rng);
        let child = mutate_and_repair(instance, &child)?;
        let use_large = rng.gen_bool(params.search.p_large);
        let child = local_search(instance, &child, &params.search, use_large, rng);
        if consider(&child, &mut best) {
            since_improvement = 0;
        } else {
            since_improvement += 1;
        }
        pop.add(Individual::new(instance, child));
        if pop.members.len() >= params.mu + params.lambda {
            pop.trim(params.mu);
        }
        generation += 1;
        observe(generation, pop.members.len());
    }
    Ok(RunOutcome {
        best: best.expect("population is non-empty"),
        iterations: generation,
        time_to_best,
        elapsed: start.elapsed(),
    })
}
