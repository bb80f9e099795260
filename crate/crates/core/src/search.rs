//! Exact existence decisions for equitable 2-partitions by backtracking.
//!
//! Vertices are labeled in breadth-first order from a pinned root, which is
//! placed in cell 0; since the cubes are vertex-transitive this loses no
//! solutions. Each assignment updates per-vertex neighbor counts, and a
//! vertex whose count into some cell has reached its target forces the rest
//! of its neighborhood. Cell cardinalities are enforced globally.
//!
//! Symmetry breaking uses orbital branching under the group generated by
//! coordinate transpositions that fix the current partial labeling: for a
//! branching vertex `v` with orbit `O`, the two children are `v ↦ 0` and
//! `O ↦ 1`.
//!
//! The tree is cut into a fixed frontier of subproblems that are solved
//! independently (in parallel when requested). The frontier does not depend
//! on the worker count, and the reported solution and statistics come from
//! the lowest-indexed successful subproblem, so completed runs are
//! reproducible across thread counts. Limits are shared, so runs that abort
//! may stop at different points.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CubeGraph, CubeKind};
use crate::partition::Partition;
use crate::quotient::{cell_sizes, check_admissibility, enumerate_admissible, theta, QuotientMatrix};
use crate::verify::verify_equitable;

const UNSET: u8 = 2;
/// Frontier size aimed for before handing subproblems to workers.
const FRONTIER_TARGET: usize = 128;
const FRONTIER_MAX_DEPTH: usize = 24;
/// Nodes between checks of the shared limits.
const CHECK_INTERVAL: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Orbital branching under coordinate permutations.
    pub symmetry: bool,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Enumerate solutions instead of stopping at the first.
    pub find_all: bool,
    /// Cap on solutions kept when `find_all` is set (all are counted).
    pub max_solutions: usize,
    /// Worker threads; `None` uses the global pool, `Some(1)` runs inline.
    pub threads: Option<usize>,
    /// Ordinal of the pinned root vertex.
    pub root: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetry: true,
            node_limit: None,
            time_limit: None,
            find_all: false,
            max_solutions: 64,
            threads: None,
            root: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchProblem {
    pub graph: CubeGraph,
    pub matrix: QuotientMatrix,
    pub options: SearchOptions,
}

impl SearchProblem {
    pub fn new(graph: CubeGraph, matrix: QuotientMatrix) -> Result<Self> {
        Self::with_options(graph, matrix, SearchOptions::default())
    }

    pub fn with_options(graph: CubeGraph, matrix: QuotientMatrix, options: SearchOptions) -> Result<Self> {
        matrix.abcd()?;
        if graph.n() > crate::graph::MAX_TABLE_N {
            return Err(Error::Shape(format!("search is limited to n <= {}", crate::graph::MAX_TABLE_N)));
        }
        if options.root >= graph.vertex_count() {
            return Err(Error::Index { index: options.root as usize, max: graph.vertex_count() as usize - 1 });
        }
        Ok(SearchProblem { graph, matrix, options })
    }

    /// `(|C₀|, |C₁|)` implied by the matrix.
    pub fn cell_sizes(&self) -> Option<(u64, u64)> {
        let (_, b, c, _) = self.matrix.abcd().ok()?;
        cell_sizes(self.graph.vertex_count(), b, c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SearchStatus {
    Found,
    ExhaustedNone,
    PreFilteredNonexistent { reason: String },
    Aborted { limit: String },
}

impl SearchStatus {
    pub fn label(&self) -> &'static str {
        match self {
            SearchStatus::Found => "found",
            SearchStatus::ExhaustedNone => "exhausted-none",
            SearchStatus::PreFilteredNonexistent { .. } => "prefiltered-nonexistent",
            SearchStatus::Aborted { .. } => "aborted",
        }
    }

    /// `+`, `-` or `?` as in existence tables.
    pub fn mark(&self) -> char {
        match self {
            SearchStatus::Found => '+',
            SearchStatus::ExhaustedNone | SearchStatus::PreFilteredNonexistent { .. } => '-',
            SearchStatus::Aborted { .. } => '?',
        }
    }
}

/// Counters that do not depend on timing or worker count for completed runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Branches tried.
    pub nodes: u64,
    /// Branches closed by a neighbor-count violation.
    pub count_prunes: u64,
    /// Branches closed by the cardinality bound.
    pub cardinality_prunes: u64,
    /// Labels set by propagation.
    pub forced: u64,
    /// Extra vertices fixed by orbit branches.
    pub orbit_fixings: u64,
    /// Subproblems in the frontier.
    pub subproblems: u64,
    pub solutions: u64,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.count_prunes += o.count_prunes;
        self.cardinality_prunes += o.cardinality_prunes;
        self.forced += o.forced;
        self.orbit_fixings += o.orbit_fixings;
        self.solutions += o.solutions;
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub graph: CubeGraph,
    pub matrix: QuotientMatrix,
    pub status: SearchStatus,
    /// First solution, verified against the target matrix.
    pub partition: Option<Partition>,
    /// All kept solutions when enumerating.
    pub solutions: Vec<Partition>,
    pub stats: SearchStats,
    pub symmetry: bool,
    pub elapsed: Duration,
}

/// Reason a matrix cannot be realized, from the arithmetic conditions.
fn prefilter(g: CubeGraph, s: &QuotientMatrix) -> Result<Option<String>> {
    let (a, b, c, d) = s.abcd()?;
    if g.kind().is_halved() {
        let r = check_admissibility(s, g)?;
        for (name, v) in [
            ("condition 1", &r.cond1_integrality),
            ("condition 2", &r.cond2_proportion),
            ("condition 3", &r.cond3_eigenvalue),
        ] {
            if !v.pass {
                return Ok(Some(format!("{name}: {}", v.detail)));
            }
        }
        let c4 = r.cond4_recursion.expect("computed");
        if !c4.pass {
            let at = c4.first_offending.unwrap_or(0);
            return Ok(Some(format!("condition 4: S^({at}) is not a nonnegative integer matrix")));
        }
        return Ok(None);
    }
    let n = g.n() as i64;
    if [a, b, c, d].iter().any(|&x| x < 0) || b == 0 || c == 0 {
        return Ok(Some("entries must be nonnegative with b, c > 0".into()));
    }
    if a + b != n || c + d != n {
        return Ok(Some(format!("rows must sum to the degree {n}")));
    }
    if (n - (a - c)) % 2 != 0 || (a - c).abs() > n {
        return Ok(Some(format!("a - c = {} is not an eigenvalue of {g}", a - c)));
    }
    if cell_sizes(g.vertex_count(), b, c).is_none() {
        return Ok(Some("cell sizes are not integral".into()));
    }
    Ok(None)
}

/// Per-distance target counts `S⁽ᵈ⁾` for `d = 0..=diameter`, or the reason
/// they are not nonnegative integers.
fn distance_targets(g: CubeGraph, s: &QuotientMatrix) -> std::result::Result<Vec<[[u32; 2]; 2]>, String> {
    let to_u32 = |m: [[i128; 2]; 2], d: u32| -> std::result::Result<[[u32; 2]; 2], String> {
        let mut out = [[0u32; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = u32::try_from(m[i][j]).map_err(|_| format!("distance-{d} counts are negative"))?;
            }
        }
        Ok(out)
    };
    let diam = g.diameter();
    if g.kind().is_halved() {
        let table = crate::quotient::recursion_table(s, g.n());
        return (0..=diam)
            .map(|d| {
                let m = table
                    .layer(2 * d)
                    .and_then(|l| l.to_integer())
                    .ok_or_else(|| format!("distance-{d} counts are not integral"))?;
                to_u32([[m[(0, 0)] as i128, m[(0, 1)] as i128], [m[(1, 0)] as i128, m[(1, 1)] as i128]], d)
            })
            .collect();
    }
    // H(n): A·A_i = (i+1)·A_{i+1} + (n−i+1)·A_{i−1}
    let n = g.n() as i128;
    let (a, b, c, d) = s.abcd().map_err(|e| e.to_string())?;
    let base = [[a as i128, b as i128], [c as i128, d as i128]];
    let mut prev = [[1i128, 0], [0, 1]];
    let mut cur = base;
    let mut out = vec![to_u32(prev, 0)?, to_u32(cur, 1)?];
    for i in 1..diam as i128 {
        let mut next = [[0i128; 2]; 2];
        for r in 0..2 {
            for col in 0..2 {
                let prod = base[r][0] * cur[0][col] + base[r][1] * cur[1][col];
                let num = prod - (n - i + 1) * prev[r][col];
                if num % (i + 1) != 0 {
                    return Err(format!("distance-{} counts are not integral", i + 1));
                }
                next[r][col] = num / (i + 1);
            }
        }
        out.push(to_u32(next, (i + 1) as u32)?);
        prev = cur;
        cur = next;
    }
    Ok(out)
}

/// Read-only data shared by all workers.
struct Shared {
    graph: CubeGraph,
    nbrs: Vec<u32>,
    deg: usize,
    vcount: usize,
    bits: Vec<u64>,
    /// Hamming distance of one graph step.
    step: u32,
    /// Graph diameter; distance layers are `1..=layers`.
    layers: usize,
    /// `targets[d][l][j]`: cell-`j` vertices at distance `d` from a cell-`l` vertex.
    targets: Vec<[[u32; 2]; 2]>,
    /// XOR masks reaching the distance-`d` sphere.
    spheres: Vec<Vec<u64>>,
    target: [u32; 2],
    order: Vec<u32>,
    /// Position of each vertex in `order`.
    rank: Vec<u32>,
    symmetry: bool,
    find_all: bool,
    max_solutions: usize,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    nodes_total: AtomicU64,
    /// Lowest subproblem index known to have a solution.
    found_min: AtomicUsize,
    abort: AtomicBool,
    abort_reason: std::sync::Mutex<Option<String>>,
}

type Decision = (u32, u8);

#[derive(Clone, Debug)]
struct Frame {
    mark: usize,
    v: u32,
    cursor: usize,
    orbit: Option<Vec<u32>>,
    sym_active: bool,
    stage: u8,
}

enum Stop {
    Exhausted,
    Found,
    Aborted,
    Cancelled,
}

struct Engine<'a> {
    sh: &'a Shared,
    labels: Vec<u8>,
    /// Flat `[vertex][layer][cell]` counts of processed labels.
    cnt: Vec<u32>,
    size: [u32; 2],
    trail: Vec<u32>,
    qhead: usize,
    stats: SearchStats,
    solutions: Vec<Vec<u8>>,
    index: usize,
    unflushed: u64,
}

impl<'a> Engine<'a> {
    fn new(sh: &'a Shared, index: usize) -> Self {
        Engine {
            sh,
            labels: vec![UNSET; sh.vcount],
            cnt: vec![0; sh.vcount * (sh.layers + 1) * 2],
            size: [0, 0],
            trail: Vec::with_capacity(sh.vcount),
            qhead: 0,
            stats: SearchStats::default(),
            solutions: Vec::new(),
            index,
            unflushed: 0,
        }
    }

    #[inline]
    fn nbrs(&self, v: usize) -> &'a [u32] {
        &self.sh.nbrs[v * self.sh.deg..(v + 1) * self.sh.deg]
    }

    #[inline]
    fn at(&self, u: usize, d: usize) -> usize {
        (u * (self.sh.layers + 1) + d) * 2
    }

    #[inline]
    fn dist(&self, u: usize, v: usize) -> usize {
        ((self.sh.bits[u] ^ self.sh.bits[v]).count_ones() / self.sh.step) as usize
    }

    /// Sets a label without propagating; false on a clash or a full cell.
    fn assign(&mut self, v: u32, l: u8) -> bool {
        let cur = self.labels[v as usize];
        if cur != UNSET {
            if cur != l {
                self.stats.count_prunes += 1;
            }
            return cur == l;
        }
        if self.size[l as usize] == self.sh.target[l as usize] {
            self.stats.cardinality_prunes += 1;
            return false;
        }
        self.labels[v as usize] = l;
        self.size[l as usize] += 1;
        self.trail.push(v);
        true
    }

    /// Forces every unset vertex at distance `d` from `v` to `l`.
    fn force_sphere(&mut self, v: usize, d: usize, l: u8) -> bool {
        let sh = self.sh;
        let g = sh.graph;
        for &mask in &sh.spheres[d] {
            let u = g.ordinal_of(sh.bits[v] ^ mask);
            if self.labels[u] == UNSET {
                if !self.assign(u as u32, l) {
                    return false;
                }
                self.stats.forced += 1;
            }
        }
        true
    }

    /// Checks layer `d` of a labeled vertex and forces its sphere when one
    /// count has reached its target.
    fn check_labeled(&mut self, v: usize, d: usize) -> bool {
        let l = self.labels[v] as usize;
        let i = self.at(v, d);
        let (c0, c1) = (self.cnt[i], self.cnt[i + 1]);
        let t = self.sh.targets[d][l];
        if c0 > t[0] || c1 > t[1] {
            self.stats.count_prunes += 1;
            return false;
        }
        if c0 == t[0] && c1 < t[1] && !self.force_sphere(v, d, 1) {
            return false;
        }
        if c1 == t[1] && c0 < t[0] && !self.force_sphere(v, d, 0) {
            return false;
        }
        true
    }

    /// Rules out labels of an unset vertex made infeasible by layer `d`.
    fn check_unset(&mut self, u: usize, d: usize) -> bool {
        let i = self.at(u, d);
        let (c0, c1) = (self.cnt[i], self.cnt[i + 1]);
        let t = &self.sh.targets[d];
        let ok0 = c0 <= t[0][0] && c1 <= t[0][1];
        let ok1 = c0 <= t[1][0] && c1 <= t[1][1];
        match (ok0, ok1) {
            (true, true) => true,
            (false, false) => {
                self.stats.count_prunes += 1;
                false
            }
            _ => {
                self.stats.forced += 1;
                self.assign(u as u32, u8::from(ok1))
            }
        }
    }

    fn propagate(&mut self) -> bool {
        let vcount = self.sh.vcount;
        while self.qhead < self.trail.len() {
            let v = self.trail[self.qhead] as usize;
            let l = self.labels[v] as usize;
            for d in 1..=self.sh.layers {
                if !self.check_labeled(v, d) {
                    return false;
                }
            }
            // counts of a processed vertex are all-or-nothing so undo stays exact
            self.qhead += 1;
            for u in 0..vcount {
                if u != v {
                    let i = self.at(u, self.dist(u, v));
                    self.cnt[i + l] += 1;
                }
            }
            for u in 0..vcount {
                if u == v {
                    continue;
                }
                let d = self.dist(u, v);
                let ok = if self.labels[u] == UNSET { self.check_unset(u, d) } else { self.check_labeled(u, d) };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("nonempty") as usize;
            let l = self.labels[v] as usize;
            if self.trail.len() < self.qhead {
                for u in 0..self.sh.vcount {
                    if u != v {
                        let i = self.at(u, self.dist(u, v));
                        self.cnt[i + l] -= 1;
                    }
                }
            }
            self.labels[v] = UNSET;
            self.size[l] -= 1;
        }
        self.qhead = self.qhead.min(mark);
    }

    fn apply(&mut self, decisions: &[Decision]) -> bool {
        decisions.iter().all(|&(v, l)| self.assign(v, l)) && self.propagate()
    }

    fn complete(&self) -> bool {
        self.trail.len() == self.sh.vcount && self.qhead == self.sh.vcount
    }

    /// Classes of coordinates whose transpositions fix the labeling.
    fn coordinate_blocks(&self) -> Vec<u64> {
        let g = self.sh.graph;
        let valid = |i: u32, j: u32| {
            let m = (1u64 << i) | (1u64 << j);
            self.trail.iter().all(|&v| {
                let b = g.bits_at(v as usize);
                if (b >> i & 1) == (b >> j & 1) {
                    return true;
                }
                self.labels[g.ordinal_of(b ^ m)] == self.labels[v as usize]
            })
        };
        let mut reps: Vec<(u32, u64)> = Vec::new();
        for i in 0..g.n() {
            match reps.iter_mut().find(|(r, _)| valid(*r, i)) {
                Some((_, mask)) => *mask |= 1 << i,
                None => reps.push((i, 1 << i)),
            }
        }
        reps.into_iter().map(|(_, m)| m).collect()
    }

    /// Orbit of `v` under the product of symmetric groups on `blocks`.
    fn orbit(&self, v: u32, blocks: &[u64]) -> Vec<u32> {
        let g = self.sh.graph;
        let bits = g.bits_at(v as usize);
        let mut words = vec![0u64];
        for &block in blocks {
            let positions: Vec<u32> = (0..64).filter(|&p| block >> p & 1 == 1).collect();
            let k = (bits & block).count_ones();
            let patterns: Vec<u64> = crate::graph::masks_of_weight(positions.len() as u32, k)
                .map(|pat| {
                    positions.iter().enumerate().filter(|(q, _)| pat >> q & 1 == 1).fold(0u64, |acc, (_, &p)| acc | 1 << p)
                })
                .collect();
            words = words.iter().flat_map(|&w| patterns.iter().map(move |&p| w | p)).collect();
        }
        let mut out: Vec<u32> = words.into_iter().map(|w| g.ordinal_of(w) as u32).collect();
        out.sort_unstable();
        out
    }

    fn tick(&mut self) -> Option<Stop> {
        self.stats.nodes += 1;
        self.unflushed += 1;
        let over = self.sh.node_limit.is_some_and(|l| self.sh.nodes_total.load(Ordering::Relaxed) + self.unflushed > l);
        if self.unflushed < CHECK_INTERVAL && !over {
            return None;
        }
        self.flush()
    }

    fn flush(&mut self) -> Option<Stop> {
        let sh = self.sh;
        let total = sh.nodes_total.fetch_add(self.unflushed, Ordering::Relaxed) + self.unflushed;
        self.unflushed = 0;
        if !sh.find_all && sh.found_min.load(Ordering::Relaxed) < self.index {
            return Some(Stop::Cancelled);
        }
        if sh.abort.load(Ordering::Relaxed) {
            return Some(Stop::Aborted);
        }
        let reason = match (sh.node_limit, sh.deadline) {
            (Some(limit), _) if total > limit => Some(format!("node limit {limit}")),
            (_, Some(t)) if Instant::now() > t => Some("time limit".to_string()),
            _ => None,
        };
        if let Some(r) = reason {
            let mut slot = sh.abort_reason.lock().expect("unpoisoned");
            slot.get_or_insert(r);
            sh.abort.store(true, Ordering::Relaxed);
            return Some(Stop::Aborted);
        }
        None
    }

    /// Branching vertex: the lowest-ranked unset neighbor of the first
    /// vertex (in breadth-first order) whose neighborhood is incomplete.
    /// Completing neighborhoods early lets the count constraints bite.
    fn next_var(&self, mut cursor: usize) -> Option<(u32, usize)> {
        while cursor < self.sh.order.len() {
            let w = self.sh.order[cursor] as usize;
            if self.labels[w] == UNSET {
                return Some((w as u32, cursor));
            }
            let best = self
                .nbrs(w)
                .iter()
                .copied()
                .filter(|&u| self.labels[u as usize] == UNSET)
                .min_by_key(|&u| self.sh.rank[u as usize]);
            if let Some(u) = best {
                return Some((u, cursor));
            }
            cursor += 1;
        }
        None
    }

    fn path_decisions(stack: &[Frame]) -> Vec<Decision> {
        let mut out = Vec::new();
        for f in stack {
            if f.stage == 1 {
                out.push((f.v, 0));
            } else {
                match &f.orbit {
                    Some(o) => out.extend(o.iter().map(|&u| (u, 1))),
                    None => out.push((f.v, 1)),
                }
            }
        }
        out
    }

    fn try_branch(&mut self, f: &Frame) -> bool {
        if f.stage == 1 {
            return self.assign(f.v, 0) && self.propagate();
        }
        match &f.orbit {
            Some(o) => {
                self.stats.orbit_fixings += o.len() as u64 - 1;
                o.iter().all(|&u| self.assign(u, 1)) && self.propagate()
            }
            None => self.assign(f.v, 1) && self.propagate(),
        }
    }

    /// Depth-first search from the current (propagated) state. With
    /// `frontier` set, nodes at that depth are recorded instead of expanded.
    fn dfs(&mut self, sym_at_root: bool, mut frontier: Option<&mut Frontier>) -> Stop {
        let mut stack: Vec<Frame> = Vec::new();
        let mut sym_parent = sym_at_root;
        let mut cursor = 0usize;
        'node: loop {
            let at_cap = frontier.as_ref().is_some_and(|f| stack.len() == f.cap);
            if at_cap || (frontier.is_some() && self.complete()) {
                let sink = frontier.as_mut().expect("frontier mode");
                sink.out.push(Self::path_decisions(&stack));
                sink.capped += usize::from(at_cap);
            } else if self.complete() {
                self.stats.solutions += 1;
                if self.solutions.len() < self.sh.max_solutions.max(1) {
                    self.solutions.push(self.labels.clone());
                }
                if !self.sh.find_all {
                    return Stop::Found;
                }
            } else {
                let (v, cur) = self.next_var(cursor).expect("incomplete state has an unset vertex");
                let (orbit, sym_active) = if self.sh.symmetry && sym_parent {
                    let blocks = self.coordinate_blocks();
                    if blocks.len() as u32 == self.sh.graph.n() {
                        (None, false)
                    } else {
                        let o = self.orbit(v, &blocks);
                        (if o.len() > 1 { Some(o) } else { None }, true)
                    }
                } else {
                    (None, false)
                };
                stack.push(Frame { mark: self.trail.len(), v, cursor: cur, orbit, sym_active, stage: 0 });
            }
            loop {
                let Some(f) = stack.last_mut() else { return Stop::Exhausted };
                let mark = f.mark;
                self.undo(mark);
                if f.stage >= 2 {
                    stack.pop();
                    continue;
                }
                f.stage += 1;
                let f = f.clone();
                if let Some(stop) = self.tick() {
                    return stop;
                }
                if self.try_branch(&f) {
                    sym_parent = f.sym_active;
                    cursor = f.cursor;
                    continue 'node;
                }
            }
        }
    }
}

/// Nodes recorded at depth `cap` (or complete earlier) as subproblems.
struct Frontier {
    cap: usize,
    out: Vec<Vec<Decision>>,
    capped: usize,
}

struct SubResult {
    stop: Stop,
    stats: SearchStats,
    solutions: Vec<Vec<u8>>,
}

fn solve_subproblem(sh: &Shared, index: usize, base: &[Decision], decisions: &[Decision]) -> SubResult {
    let mut e = Engine::new(sh, index);
    if !sh.find_all && sh.found_min.load(Ordering::Relaxed) < index {
        return SubResult { stop: Stop::Cancelled, stats: e.stats, solutions: vec![] };
    }
    let stop = if e.apply(base) && e.apply(decisions) {
        e.dfs(sh.symmetry, None)
    } else {
        Stop::Exhausted
    };
    let _ = e.flush();
    if matches!(stop, Stop::Found) {
        sh.found_min.fetch_min(index, Ordering::Relaxed);
    }
    SubResult { stop, stats: e.stats, solutions: e.solutions }
}

fn bfs_order(nbrs: &[u32], deg: usize, vcount: usize, root: u32) -> Vec<u32> {
    let mut dist = vec![u32::MAX; vcount];
    dist[root as usize] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &u in &nbrs[v as usize * deg..(v as usize + 1) * deg] {
            if dist[u as usize] == u32::MAX {
                dist[u as usize] = dist[v as usize] + 1;
                queue.push_back(u);
            }
        }
    }
    let mut order: Vec<u32> = (0..vcount as u32).collect();
    order.sort_by_key(|&v| (dist[v as usize], v));
    order
}

/// Decides whether an equitable partition with the target matrix exists.
///
/// A `Found` outcome always carries a partition that has been re-verified
/// against the exact target matrix.
pub fn search(problem: &SearchProblem) -> Result<SearchOutcome> {
    let start = Instant::now();
    let opts = &problem.options;
    let g = problem.graph;
    let mut outcome = SearchOutcome {
        graph: g,
        matrix: problem.matrix.clone(),
        status: SearchStatus::ExhaustedNone,
        partition: None,
        solutions: Vec::new(),
        stats: SearchStats::default(),
        symmetry: opts.symmetry,
        elapsed: Duration::ZERO,
    };
    let targets = match prefilter(g, &problem.matrix)?.map_or_else(|| distance_targets(g, &problem.matrix), Err) {
        Ok(t) => t,
        Err(reason) => {
            outcome.status = SearchStatus::PreFilteredNonexistent { reason };
            outcome.elapsed = start.elapsed();
            return Ok(outcome);
        }
    };
    let (_, b, c, _) = problem.matrix.abcd()?;
    let (n0, n1) = cell_sizes(g.vertex_count(), b, c).expect("prefilter checked sizes");

    // the odd halved cube is searched on the even one, shifted by the last unit vector
    let (sg, shift) = match g.kind() {
        CubeKind::HalvedOdd => (CubeGraph::halved(g.n()), 1u64),
        _ => (g, 0),
    };
    let table = sg.adjacency_table()?;
    let vcount = table.vertex_count();
    let deg = table.degree();
    let nbrs: Vec<u32> = (0..vcount).flat_map(|o| table.neighbors(o).to_vec()).collect();
    let root = sg.ordinal_of(g.bits_at(opts.root as usize) ^ shift) as u32;
    let order = bfs_order(&nbrs, deg, vcount, root);
    let mut rank = vec![0u32; vcount];
    for (i, &v) in order.iter().enumerate() {
        rank[v as usize] = i as u32;
    }
    let sh = Shared {
        graph: sg,
        nbrs,
        deg,
        vcount,
        bits: (0..vcount).map(|o| sg.bits_at(o)).collect(),
        step: sg.step(),
        layers: sg.diameter() as usize,
        spheres: (0..=sg.diameter()).map(|d| crate::graph::masks_of_weight(sg.n(), d * sg.step()).collect()).collect(),
        targets,
        target: [n0 as u32, n1 as u32],
        order,
        rank,
        symmetry: opts.symmetry,
        find_all: opts.find_all,
        max_solutions: opts.max_solutions,
        node_limit: opts.node_limit,
        deadline: opts.time_limit.map(|t| start + t),
        nodes_total: AtomicU64::new(0),
        found_min: AtomicUsize::new(usize::MAX),
        abort: AtomicBool::new(false),
        abort_reason: std::sync::Mutex::new(None),
    };
    let base = vec![(root, 0u8)];

    // frontier: deepen until it is wide enough or nothing reaches the cap
    let mut frontier = Vec::new();
    let mut gen_stats = SearchStats::default();
    let mut stopped = false;
    for depth in 1..=FRONTIER_MAX_DEPTH {
        let mut e = Engine::new(&sh, 0);
        let mut sink = Frontier { cap: depth, out: Vec::new(), capped: 0 };
        let stop = if e.apply(&base) { e.dfs(opts.symmetry, Some(&mut sink)) } else { Stop::Exhausted };
        let _ = e.flush();
        gen_stats = e.stats;
        if matches!(stop, Stop::Aborted) {
            stopped = true;
            break;
        }
        frontier = sink.out;
        if frontier.len() >= FRONTIER_TARGET || sink.capped == 0 {
            break;
        }
    }
    outcome.stats = gen_stats;
    outcome.stats.subproblems = frontier.len() as u64;

    let results: Vec<SubResult> = if stopped {
        Vec::new()
    } else {
        let run = |(i, dec): (usize, &Vec<Decision>)| solve_subproblem(&sh, i, &base, dec);
        match opts.threads {
            Some(1) => {
                let mut rs = Vec::new();
                for item in frontier.iter().enumerate() {
                    let r = run(item);
                    let stop_now = !opts.find_all && matches!(r.stop, Stop::Found | Stop::Aborted);
                    rs.push(r);
                    if stop_now {
                        break;
                    }
                }
                rs
            }
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| Error::Shape(format!("thread pool: {e}")))?;
                pool.install(|| frontier.par_iter().enumerate().map(run).collect())
            }
            None => frontier.par_iter().enumerate().map(run).collect(),
        }
    };

    let mut aborted = stopped;
    let mut found_any = false;
    for r in &results {
        match r.stop {
            Stop::Cancelled => continue,
            Stop::Aborted => aborted = true,
            Stop::Found => found_any = true,
            Stop::Exhausted => {}
        }
        outcome.stats.add(&r.stats);
        for labels in &r.solutions {
            if outcome.solutions.len() < opts.max_solutions.max(1) {
                outcome.solutions.push(to_partition(g, sg, shift, labels, &problem.matrix)?);
            }
        }
        if found_any && !opts.find_all {
            break;
        }
    }
    if !opts.find_all {
        outcome.solutions.truncate(1);
    }
    outcome.partition = outcome.solutions.first().cloned();
    outcome.status = if outcome.partition.is_some() {
        SearchStatus::Found
    } else if aborted {
        let limit = sh.abort_reason.lock().expect("unpoisoned").clone().unwrap_or_else(|| "limit".into());
        SearchStatus::Aborted { limit }
    } else {
        SearchStatus::ExhaustedNone
    };
    if !opts.find_all {
        outcome.solutions.clear();
    }
    outcome.elapsed = start.elapsed();
    Ok(outcome)
}

fn to_partition(g: CubeGraph, sg: CubeGraph, shift: u64, labels: &[u8], s: &QuotientMatrix) -> Result<Partition> {
    let p = Partition::from_fn(g, 2, |b| labels[sg.ordinal_of(b ^ shift)])?;
    let p = p.with_claim(s.clone());
    verify_equitable(&p)?.into_matrix()?;
    Ok(p)
}

/// One row of a classification table.
#[derive(Clone, Debug)]
pub struct ClassificationRow {
    pub eigen_index: u32,
    pub eigenvalue: i64,
    pub matrix: QuotientMatrix,
    pub cond4: bool,
    pub outcome: SearchOutcome,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub n: u32,
    pub kind: CubeKind,
    pub rows: Vec<ClassificationRow>,
}

/// Searches every admissible matrix (conditions 1–3, `b ≥ c`) for ½H(n) or
/// ½H(n)'.
///
/// With `thm2_filter` the minimum-eigenvalue row is restricted to images of
/// H(n−1) matrices; without it those matrices are decided by search too.
pub fn classify(n: u32, kind: CubeKind, thm2_filter: bool, options: &SearchOptions) -> Result<Classification> {
    if !kind.is_halved() {
        return Err(Error::Shape("classification is defined for halved cubes".into()));
    }
    let g = CubeGraph::new(kind, n)?;
    let mut rows = Vec::new();
    for i in 1..=n / 2 {
        for report in enumerate_admissible(n, i, false, thm2_filter)? {
            let cond4 = report.cond4_recursion.as_ref().is_some_and(|c| c.pass);
            let problem = SearchProblem::with_options(g, report.matrix.clone(), options.clone())?;
            let outcome = search(&problem)?;
            rows.push(ClassificationRow { eigen_index: i, eigenvalue: theta(n, i)?, matrix: report.matrix, cond4, outcome });
        }
    }
    Ok(Classification { n, kind, rows })
}
