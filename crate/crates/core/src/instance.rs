//! Instance model, canonical text format and instance generation.
//!
//! Visits are numbered `0..=2n`: `0` is the depot, pickups are `1..=n` and
//! the delivery paired with pickup `p` is `p + n`. Files may list their
//! pairing in any order; parsing relabels visits into this canonical layout.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::tour::Tour;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TourMode {
    /// The vehicle returns to the depot; the closing arc is paid.
    Closed,
    /// The tour ends at the last delivery; arcs back to the depot are free.
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rounding {
    None,
    /// Round-half-up of the Euclidean distance.
    Nearest,
}

/// Pair generation groups: deliveries are drawn among the 5 (A) or 10 (B)
/// nearest unassigned vertices, or among all unassigned vertices (C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairGroup {
    A,
    B,
    C,
}

impl PairGroup {
    pub fn candidate_limit(self) -> Option<usize> {
        match self {
            PairGroup::A => Some(5),
            PairGroup::B => Some(10),
            PairGroup::C => None,
        }
    }
}

impl std::str::FromStr for PairGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(PairGroup::A),
            "B" => Ok(PairGroup::B),
            "C" => Ok(PairGroup::C),
            _ => Err(Error::InvalidParams(format!("unknown pair group `{s}`"))),
        }
    }
}

impl std::str::FromStr for TourMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(TourMode::Closed),
            "open" => Ok(TourMode::Open),
            _ => Err(Error::InvalidParams(format!("unknown tour mode `{s}`"))),
        }
    }
}

impl std::str::FromStr for Rounding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Rounding::None),
            "nearest" => Ok(Rounding::Nearest),
            _ => Err(Error::InvalidParams(format!("unknown rounding `{s}`"))),
        }
    }
}

impl TourMode {
    fn keyword(self) -> &'static str {
        match self {
            TourMode::Closed => "closed",
            TourMode::Open => "open",
        }
    }
}

impl Rounding {
    fn keyword(self) -> &'static str {
        match self {
            Rounding::None => "none",
            Rounding::Nearest => "nearest",
        }
    }
}

/// Planar points, depot first.
#[derive(Debug, Clone, PartialEq)]
pub struct Coordinates {
    points: Vec<(f64, f64)>,
}

impl Coordinates {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidInstance(
                "at least two points (depot and one visit) are required".into(),
            ));
        }
        if let Some(i) = points
            .iter()
            .position(|&(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(Error::InvalidInstance(format!(
                "point {i} has a non-finite coordinate"
            )));
        }
        Ok(Coordinates { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        euclidean(self.points[a], self.points[b])
    }
}

pub fn euclidean(a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    (dx * dx + dy * dy).sqrt()
}

pub fn round_half_up(x: f64) -> f64 {
    (x + 0.5).floor()
}

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    side: usize,
    values: Vec<f64>,
}

impl CostMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let side = rows.len();
        if let Some(r) = rows.iter().position(|row| row.len() != side) {
            return Err(Error::InvalidInstance(format!(
                "matrix row {r} has {} entries, expected {side}",
                rows[r].len()
            )));
        }
        Ok(CostMatrix {
            side,
            values: rows.into_iter().flatten().collect(),
        })
    }

    pub(crate) fn from_flat(side: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), side * side);
        CostMatrix { side, values }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.side + j]
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.fract() == 0.0)
    }

    /// Checks squareness-independent invariants: finite, non-negative,
    /// zero diagonal, symmetric. Returns the first offending row.
    fn validate(&self) -> std::result::Result<(), (usize, String)> {
        let n = self.side;
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j);
                if !v.is_finite() || v < 0.0 {
                    return Err((i, format!("entry ({i},{j}) = {v} is not a finite non-negative cost")));
                }
                if i == j && v != 0.0 {
                    return Err((i, format!("diagonal entry ({i},{i}) = {v} is not zero")));
                }
                if v != self.get(j, i) {
                    return Err((i, format!("matrix is not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(())
    }
}

pub fn build_cost_matrix(coords: &Coordinates, rounding: Rounding) -> CostMatrix {
    let n = coords.len();
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = coords.distance(i, j);
            let d = match rounding {
                Rounding::None => d,
                Rounding::Nearest => round_half_up(d),
            };
            values[i * n + j] = d;
            values[j * n + i] = d;
        }
    }
    CostMatrix::from_flat(n, values)
}

/// A validated PDTSP instance. Immutable once built.
#[derive(Debug, Clone)]
pub struct Instance {
    name: String,
    n_pairs: usize,
    mode: TourMode,
    rounding: Rounding,
    coords: Option<Coordinates>,
    cost: CostMatrix,
    /// `(N+1) x (N+1)` matrix including the terminal sentinel `N`.
    arcs: Vec<f64>,
    location: Vec<usize>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.n_pairs == other.n_pairs
            && self.mode == other.mode
            && self.rounding == other.rounding
            && self.coords == other.coords
            && self.cost == other.cost
    }
}

impl Instance {
    /// Builds an instance from points already in canonical order
    /// (depot, pickups `1..=n`, deliveries `n+1..=2n`).
    pub fn from_coordinates(
        name: impl Into<String>,
        coords: Coordinates,
        rounding: Rounding,
        mode: TourMode,
    ) -> Result<Self> {
        let cost = build_cost_matrix(&coords, rounding);
        Self::assemble(name.into(), cost, Some(coords), rounding, mode)
    }

    /// Builds an instance from an explicit cost matrix in canonical order.
    pub fn from_matrix(name: impl Into<String>, cost: CostMatrix, mode: TourMode) -> Result<Self> {
        if let Err((_, msg)) = cost.validate() {
            return Err(Error::InvalidInstance(msg));
        }
        Self::assemble(name.into(), cost, None, Rounding::None, mode)
    }

    fn assemble(
        name: String,
        cost: CostMatrix,
        coords: Option<Coordinates>,
        rounding: Rounding,
        mode: TourMode,
    ) -> Result<Self> {
        let side = cost.side();
        if side < 3 || side % 2 == 0 {
            return Err(Error::InvalidInstance(format!(
                "{side} visits: expected an odd count 2n+1 with n >= 1"
            )));
        }
        let n_pairs = (side - 1) / 2;
        let ext = side + 1;
        let mut arcs = vec![0.0; ext * ext];
        for i in 0..ext {
            for j in 0..ext {
                let a = if i == side { 0 } else { i };
                let b = if j == side { 0 } else { j };
                let touches_terminal = i == side || j == side;
                arcs[i * ext + j] = if touches_terminal && mode == TourMode::Open {
                    0.0
                } else {
                    cost.get(a, b)
                };
            }
        }
        let mut location: Vec<usize> = match &coords {
            Some(c) => {
                let mut ids: HashMap<(u64, u64), usize> = HashMap::new();
                c.points()
                    .iter()
                    .map(|&(x, y)| {
                        let next = ids.len();
                        *ids.entry((x.to_bits(), y.to_bits())).or_insert(next)
                    })
                    .collect()
            }
            None => (0..side).collect(),
        };
        location.push(location[0]);
        Ok(Instance {
            name,
            n_pairs,
            mode,
            rounding,
            coords,
            cost,
            arcs,
            location,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    /// `N = 2n + 1`, depot included.
    pub fn n_visits(&self) -> usize {
        2 * self.n_pairs + 1
    }

    /// Identifier of the terminal sentinel closing every extended sequence.
    pub fn terminal(&self) -> usize {
        2 * self.n_pairs + 1
    }

    pub fn mode(&self) -> TourMode {
        self.mode
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }

    pub fn coords(&self) -> Option<&Coordinates> {
        self.coords.as_ref()
    }

    pub fn cost_matrix(&self) -> &CostMatrix {
        &self.cost
    }

    /// Travel cost between two visits (terminal excluded).
    pub fn cost(&self, a: usize, b: usize) -> f64 {
        self.cost.get(a, b)
    }

    /// Arc cost in the extended graph; either endpoint may be the terminal.
    #[inline]
    pub fn arc(&self, a: usize, b: usize) -> f64 {
        self.arcs[a * (self.n_visits() + 1) + b]
    }

    #[inline]
    pub fn is_pickup(&self, v: usize) -> bool {
        v >= 1 && v <= self.n_pairs
    }

    #[inline]
    pub fn is_delivery(&self, v: usize) -> bool {
        v > self.n_pairs && v <= 2 * self.n_pairs
    }

    /// Partner of a customer visit; `None` for the depot and the terminal.
    pub fn partner(&self, v: usize) -> Option<usize> {
        if self.is_pickup(v) {
            Some(v + self.n_pairs)
        } else if self.is_delivery(v) {
            Some(v - self.n_pairs)
        } else {
            None
        }
    }

    #[inline]
    pub fn delivery_of(&self, pickup: usize) -> usize {
        pickup + self.n_pairs
    }

    #[inline]
    pub fn pickup_of(&self, delivery: usize) -> usize {
        delivery - self.n_pairs
    }

    /// Location key used for diversity measures: visits sharing coordinates
    /// share a key.
    pub fn location(&self, v: usize) -> usize {
        self.location[v]
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let n = self.n_pairs;
        let side = self.n_visits();
        let _ = writeln!(out, "NAME {}", self.name);
        let _ = writeln!(out, "PAIRS {n}");
        let _ = writeln!(out, "MODE {}", self.mode.keyword());
        let _ = writeln!(out, "ROUNDING {}", self.rounding.keyword());
        match &self.coords {
            Some(coords) => {
                let _ = writeln!(out, "EDGE_SOURCE coords");
                let _ = writeln!(out, "COORDS");
                for (i, (x, y)) in coords.points().iter().enumerate() {
                    let _ = writeln!(out, "{i} {x} {y}");
                }
            }
            None => {
                let _ = writeln!(out, "EDGE_SOURCE matrix");
                let _ = writeln!(out, "MATRIX");
                for i in 0..side {
                    let row: Vec<String> = (0..side).map(|j| self.cost(i, j).to_string()).collect();
                    let _ = writeln!(out, "{}", row.join(" "));
                }
            }
        }
        let _ = writeln!(out, "PAIRING");
        for p in 1..=n {
            let _ = writeln!(out, "{p} {}", p + n);
        }
        let _ = writeln!(out, "EOF");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeSource {
    Coords,
    Matrix,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next non-blank, non-comment line with its 1-based number.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            return Some((i + 1, trimmed));
        }
        None
    }
}

fn parse_number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("cannot parse {what} from `{token}`")))
}

/// Parses the canonical instance format.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let mut name = String::from("unnamed");
    let mut pairs: Option<usize> = None;
    let mut mode = TourMode::Closed;
    let mut rounding = Rounding::None;
    let mut source: Option<EdgeSource> = None;

    let (section_line, section) = loop {
        let Some((ln, line)) = lines.next_content() else {
            return Err(Error::parse(text.lines().count().max(1), "missing COORDS or MATRIX section"));
        };
        let mut parts = line.split_whitespace();
        let key = parts.next().unwrap_or_default();
        let value = parts.collect::<Vec<_>>().join(" ");
        match key {
            "NAME" => name = value,
            "PAIRS" => {
                let n: usize = parse_number(ln, &value, "pair count")?;
                if n == 0 {
                    return Err(Error::parse(ln, "PAIRS must be at least 1"));
                }
                pairs = Some(n);
            }
            "MODE" => mode = value.parse().map_err(|_| Error::parse(ln, format!("unknown MODE `{value}`")))?,
            "ROUNDING" => {
                rounding = value
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("unknown ROUNDING `{value}`")))?
            }
            "EDGE_SOURCE" => {
                source = Some(match value.as_str() {
                    "coords" => EdgeSource::Coords,
                    "matrix" => EdgeSource::Matrix,
                    _ => return Err(Error::parse(ln, format!("unknown EDGE_SOURCE `{value}`"))),
                })
            }
            "COORDS" | "MATRIX" => break (ln, key),
            _ => return Err(Error::parse(ln, format!("unexpected header `{key}`"))),
        }
    };

    let n = pairs.ok_or_else(|| Error::parse(section_line, "PAIRS header missing"))?;
    let source = source.ok_or_else(|| Error::parse(section_line, "EDGE_SOURCE header missing"))?;
    let side = 2 * n + 1;
    let expected = match source {
        EdgeSource::Coords => "COORDS",
        EdgeSource::Matrix => "MATRIX",
    };
    if section != expected {
        return Err(Error::parse(
            section_line,
            format!("section {section} does not match EDGE_SOURCE (expected {expected})"),
        ));
    }

    let mut points = Vec::new();
    let mut matrix = Vec::new();
    let mut row_lines = Vec::new();
    match source {
        EdgeSource::Coords => {
            for expected_index in 0..side {
                let (ln, line) = lines
                    .next_content()
                    .ok_or_else(|| Error::parse(section_line, format!("expected {side} coordinate lines")))?;
                let tokens: Vec<&str> = line.split_whitespace().collect();
                if tokens.len() != 3 {
                    return Err(Error::parse(ln, "coordinate line must be `<index> <x> <y>`"));
                }
                let index: usize = parse_number(ln, tokens[0], "point index")?;
                if index != expected_index {
                    return Err(Error::parse(ln, format!("expected point index {expected_index}, found {index}")));
                }
                let x: f64 = parse_number(ln, tokens[1], "x coordinate")?;
                let y: f64 = parse_number(ln, tokens[2], "y coordinate")?;
                if !x.is_finite() || !y.is_finite() {
                    return Err(Error::parse(ln, "non-finite coordinate"));
                }
                points.push((x, y));
            }
        }
        EdgeSource::Matrix => {
            while matrix.len() < side * side {
                let (ln, line) = lines.next_content().ok_or_else(|| {
                    Error::parse(section_line, format!("expected {} matrix entries", side * side))
                })?;
                for token in line.split_whitespace() {
                    matrix.push(parse_number::<f64>(ln, token, "matrix entry")?);
                    row_lines.push(ln);
                }
            }
            if matrix.len() != side * side {
                return Err(Error::parse(*row_lines.last().unwrap(), "too many matrix entries"));
            }
        }
    }

    let (pairing_line, line) = lines
        .next_content()
        .ok_or_else(|| Error::parse(text.lines().count(), "missing PAIRING section"))?;
    if line != "PAIRING" {
        return Err(Error::parse(pairing_line, format!("expected PAIRING, found `{line}`")));
    }
    let mut seen = vec![false; side];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, line) = lines
            .next_content()
            .ok_or_else(|| Error::parse(pairing_line, format!("expected {n} pairing lines")))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::parse(ln, "pairing line must be `<pickup> <delivery>`"));
        }
        let p: usize = parse_number(ln, tokens[0], "pickup index")?;
        let d: usize = parse_number(ln, tokens[1], "delivery index")?;
        for v in [p, d] {
            if v == 0 || v >= side {
                return Err(Error::parse(ln, format!("pair index {v} out of range 1..={}", side - 1)));
            }
        }
        if p == d {
            return Err(Error::parse(ln, format!("pairing is not an involution: {p} paired with itself")));
        }
        for v in [p, d] {
            if seen[v] {
                return Err(Error::parse(ln, format!("pairing is not an involution: {v} appears twice")));
            }
            seen[v] = true;
        }
        order.push((p, d));
    }
    let (eof_line, line) = lines
        .next_content()
        .ok_or_else(|| Error::parse(text.lines().count(), "missing EOF terminator"))?;
    if line != "EOF" {
        return Err(Error::parse(eof_line, format!("expected EOF, found `{line}`")));
    }

    // perm[new id] = id in the file
    let mut perm = vec![0; side];
    for (k, &(p, d)) in order.iter().enumerate() {
        perm[k + 1] = p;
        perm[k + 1 + n] = d;
    }

    match source {
        EdgeSource::Coords => {
            let coords = Coordinates::new(perm.iter().map(|&old| points[old]).collect())?;
            Instance::from_coordinates(name, coords, rounding, mode)
        }
        EdgeSource::Matrix => {
            let raw = CostMatrix::from_flat(side, matrix);
            if let Err((row, msg)) = raw.validate() {
                return Err(Error::parse(row_lines[row * side], msg));
            }
            let mut values = vec![0.0; side * side];
            for i in 0..side {
                for j in 0..side {
                    values[i * side + j] = raw.get(perm[i], perm[j]);
                }
            }
            let inst = Instance::from_matrix(name, CostMatrix::from_flat(side, values), mode)?;
            Ok(Instance { rounding, ..inst })
        }
    }
}

/// Reads raw points for [`generate_pairs`], depot first.
///
/// Accepts TSPLIB files (`NODE_COORD_SECTION`, optional `DEPOT_SECTION`
/// naming the depot by its 1-based id) as well as plain lines `x y` or
/// `id x y`.
pub fn parse_coordinates(text: &str) -> Result<Coordinates> {
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut depot: Option<usize> = None;
    let tsplib = text.lines().any(|l| l.trim().starts_with("NODE_COORD_SECTION"));
    let mut section = if tsplib { "" } else { "NODE_COORD_SECTION" };
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.ends_with("_SECTION") || line == "EOF" {
            section = line;
            continue;
        }
        match section {
            "NODE_COORD_SECTION" => {
                let tokens: Vec<&str> = line.split_whitespace().collect();
                if tokens.len() < 2 || tokens.len() > 3 {
                    return Err(Error::parse(ln, "expected `x y` or `id x y`"));
                }
                let x = parse_number(ln, tokens[tokens.len() - 2], "x coordinate")?;
                let y = parse_number(ln, tokens[tokens.len() - 1], "y coordinate")?;
                points.push((x, y));
            }
            "DEPOT_SECTION" if depot.is_none() => {
                let id: i64 = parse_number(ln, line, "depot id")?;
                if id >= 1 {
                    depot = Some(id as usize - 1);
                }
            }
            _ => {}
        }
    }
    if let Some(d) = depot {
        if d >= points.len() {
            return Err(Error::InvalidInstance(format!("depot {} is not a listed node", d + 1)));
        }
        let p = points.remove(d);
        points.insert(0, p);
    }
    Coordinates::new(points)
}

/// Renders a solution file: `COST <value>` then `TOUR 0 ... [0]`.
pub fn render_solution(instance: &Instance, tour: &Tour) -> String {
    let mut ids: Vec<String> = vec!["0".into()];
    ids.extend(tour.visits().iter().map(|v| v.to_string()));
    if instance.mode() == TourMode::Closed {
        ids.push("0".into());
    }
    format!("COST {}\nTOUR {}\n", tour.cost(), ids.join(" "))
}

/// Parses a solution file and returns the reported cost with the tour.
/// Precedence is not checked here.
pub fn parse_solution(instance: &Instance, text: &str) -> Result<(f64, Tour)> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (ln, line) = lines.next_content().ok_or_else(|| Error::parse(1, "empty solution"))?;
    let cost_text = line
        .strip_prefix("COST")
        .ok_or_else(|| Error::parse(ln, "expected `COST <value>`"))?;
    let cost: f64 = parse_number(ln, cost_text.trim(), "cost")?;
    let (ln, line) = lines
        .next_content()
        .ok_or_else(|| Error::parse(ln, "missing TOUR line"))?;
    let tour_text = line
        .strip_prefix("TOUR")
        .ok_or_else(|| Error::parse(ln, "expected `TOUR <visits>`"))?;
    let mut ids = tour_text
        .split_whitespace()
        .map(|t| parse_number::<usize>(ln, t, "visit id"))
        .collect::<Result<Vec<_>>>()?;
    if ids.first() != Some(&0) {
        return Err(Error::parse(ln, "tour must start at the depot 0"));
    }
    ids.remove(0);
    if instance.mode() == TourMode::Closed {
        if ids.last() != Some(&0) {
            return Err(Error::parse(ln, "closed tour must end at the depot 0"));
        }
        ids.pop();
    }
    let tour = Tour::from_visits(instance, &ids).map_err(|e| Error::parse(ln, e.to_string()))?;
    Ok((cost, tour))
}

/// Options for [`generate_pairs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateOptions {
    pub group: PairGroup,
    pub rounding: Rounding,
    pub mode: TourMode,
}

/// Draws a pickup-delivery pairing over the non-depot points.
///
/// Points are scanned in index order; an unassigned point becomes a pickup
/// and its delivery is drawn uniformly among the `k` nearest points still
/// unassigned at that moment (ties by index), or among all of them for group
/// C. Returned pairs use the input point indices.
pub fn generate_pairing<R: Rng + ?Sized>(
    coords: &Coordinates,
    group: PairGroup,
    rng: &mut R,
) -> Result<Vec<(usize, usize)>> {
    let customers = coords.len() - 1;
    if customers == 0 || customers % 2 != 0 {
        return Err(Error::Generation(format!(
            "{customers} non-depot points: an even, positive count is required"
        )));
    }
    let mut assigned = vec![false; coords.len()];
    assigned[0] = true;
    let mut pairs = Vec::with_capacity(customers / 2);
    for pickup in 1..coords.len() {
        if assigned[pickup] {
            continue;
        }
        assigned[pickup] = true;
        let mut candidates: Vec<(f64, usize)> = (1..coords.len())
            .filter(|&v| !assigned[v])
            .map(|v| (coords.distance(pickup, v), v))
            .collect();
        if candidates.is_empty() {
            return Err(Error::Generation(format!("no unassigned vertex left for pickup {pickup}")));
        }
        candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        if let Some(k) = group.candidate_limit() {
            candidates.truncate(k);
        }
        let delivery = candidates[rng.gen_range(0..candidates.len())].1;
        assigned[delivery] = true;
        pairs.push((pickup, delivery));
    }
    Ok(pairs)
}

/// Generates a canonical instance from raw points by drawing a pairing with
/// [`generate_pairing`] and relabeling points into canonical order.
pub fn generate_pairs<R: Rng + ?Sized>(
    name: impl Into<String>,
    coords: &Coordinates,
    options: GenerateOptions,
    rng: &mut R,
) -> Result<Instance> {
    let pairs = generate_pairing(coords, options.group, rng)?;
    let n = pairs.len();
    let mut points = vec![coords.points()[0]; 2 * n + 1];
    for (k, &(p, d)) in pairs.iter().enumerate() {
        points[k + 1] = coords.points()[p];
        points[k + 1 + n] = coords.points()[d];
    }
    Instance::from_coordinates(name, Coordinates::new(points)?, options.rounding, options.mode)
}

/// Uniform random points in `[0, side]^2` with integer coordinates.
pub fn random_points<R: Rng + ?Sized>(count: usize, side: u32, rng: &mut R) -> Coordinates {
    let points = (0..count)
        .map(|_| (rng.gen_range(0..=side) as f64, rng.gen_range(0..=side) as f64))
        .collect();
    Coordinates::new(points).expect("generated points are finite")
}

/// Random Euclidean instance with `n_pairs` pairs drawn uniformly (group C).
pub fn random_instance<R: Rng + ?Sized>(
    name: impl Into<String>,
    n_pairs: usize,
    side: u32,
    rounding: Rounding,
    mode: TourMode,
    rng: &mut R,
) -> Instance {
    let coords = random_points(2 * n_pairs + 1, side, rng);
    let options = GenerateOptions {
        group: PairGroup::C,
        rounding,
        mode,
    };
    generate_pairs(name, &coords, options, rng).expect("odd point count by construction")
}
