//! Exact extremal numbers at desk scale: branch-and-bound over the candidate
//! edges in colex order, with incremental pattern detection seeded at each
//! added edge and canonical-representative isomorph rejection.
//!
//! Soundness of the isomorph rejection rests on two facts. First, if an edge
//! set is the lexicographically least member of its orbit (as a sorted list
//! of colex ranks), then so is every prefix of that sorted list, so pruning
//! non-least partial sets at the moment an edge is added never removes the
//! least representative of any orbit. Second, pattern-freeness must be
//! constant on orbits: tight-path freeness is invariant under all vertex
//! permutations, while zigzag and stack freeness is invariant under rotations
//! only — reflections can destroy a zigzag (see the chirality test in
//! `patterns`) — so geometric pattern searches prune with the cyclic group.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use itertools::Itertools;
use serde::Serialize;

use crate::comb;
use crate::error::{CghError, Result};
use crate::ground::{CyclicGround, Vertex};
use crate::hypergraph::{Edge, Hypergraph};
use crate::patterns::{find_pattern, zigzag_arrangement_ok_at, PathWitness, PatternKind};

/// Vertex relabeling groups available for canonicalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryGroup {
    /// The `n` rotations of the circle.
    Cyclic,
    /// Rotations and reflections, order `2n`.
    Dihedral,
    /// All `n!` vertex permutations.
    Symmetric,
}

impl SymmetryGroup {
    fn permutations(&self, n: u32) -> Result<Vec<Vec<Vertex>>> {
        let mut perms = Vec::new();
        match self {
            SymmetryGroup::Cyclic => {
                for t in 0..n {
                    perms.push((0..n).map(|v| (v + t) % n).collect());
                }
            }
            SymmetryGroup::Dihedral => {
                for t in 0..n {
                    perms.push((0..n).map(|v| (v + t) % n).collect());
                }
                for t in 0..n {
                    perms.push((0..n).map(|v| (t + n - v) % n).collect());
                }
            }
            SymmetryGroup::Symmetric => {
                if n > 8 {
                    return Err(CghError::domain(format!(
                        "the symmetric group on {n} vertices is too large; canonicalization \
                         supports n <= 8"
                    )));
                }
                for p in (0..n).permutations(n as usize) {
                    perms.push(p);
                }
            }
        }
        Ok(perms)
    }
}

fn relabel(h: &Hypergraph, perm: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut edges: Vec<Vec<Vertex>> = h
        .edges()
        .map(|e| {
            let mut vs: Vec<Vertex> = e.vertices().iter().map(|&v| perm[v as usize]).collect();
            vs.sort_unstable();
            vs
        })
        .collect();
    edges.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    edges
}

/// The lexicographically least relabeling of `h` under `group`, comparing
/// edge lists in colex order. Two hypergraphs have equal canonical forms iff
/// they lie in the same orbit.
pub fn canonical_form(h: &Hypergraph, group: SymmetryGroup) -> Result<Hypergraph> {
    if matches!(group, SymmetryGroup::Symmetric) && h.is_geometric() {
        return Err(CghError::domain(
            "the symmetric group ignores the cyclic order; use it only on abstract instances",
        ));
    }
    let perms = group.permutations(h.n())?;
    let best = perms
        .iter()
        .map(|p| relabel(h, p))
        .min_by(|a, b| {
            a.iter()
                .map(|e| e.iter().rev().collect::<Vec<_>>())
                .cmp(b.iter().map(|e| e.iter().rev().collect::<Vec<_>>()))
        })
        .expect("groups are nonempty");
    Hypergraph::from_edges(h.ground(), h.r(), h.is_geometric(), best)
}

/// Whether the search provably covered every isomorphism class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    Exhaustive,
    Bounded,
}

/// An exact extremal value with a witness and an exhaustiveness certificate.
#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub value: usize,
    pub witness: Hypergraph,
    pub certificate: Certificate,
    pub nodes_explored: u64,
    pub wall_time_s: f64,
}

/// Search controls. `budget` caps the number of explored nodes; on
/// exhaustion the result carries `Certificate::Bounded` and the best value
/// found so far (a valid lower bound). `canon_cadence` is how many added
/// edges pass between canonicity checks (default 1 for the symmetric group,
/// 3 for cyclic).
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: Option<u64>,
    pub threads: usize,
    pub canon_cadence: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            threads: 1,
            canon_cadence: None,
        }
    }
}

struct BitSet(Vec<u64>);

impl BitSet {
    fn new(m: usize) -> Self {
        BitSet(vec![0; m.div_ceil(64)])
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn unset(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    fn test(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
}

/// Incremental pattern detector: looks only for patterns that use the edge
/// `through` as one of their windows, which is complete when the host minus
/// `through` was pattern-free.
struct SeededDetector<'a> {
    bits: &'a BitSet,
    kind: PatternKind,
    k: usize,
    r: usize,
    n: u32,
    target_len: usize,
    geometric_check: bool,
    run: VecDeque<Vertex>,
    start: usize,
    used: Vec<bool>,
}

impl<'a> SeededDetector<'a> {
    fn new(bits: &'a BitSet, kind: PatternKind, k: usize, r: usize, n: u32) -> Self {
        let target_len = match kind {
            PatternKind::Stack => k * r,
            _ => k + r - 1,
        };
        SeededDetector {
            bits,
            kind,
            k,
            r,
            n,
            target_len,
            geometric_check: matches!(kind, PatternKind::Zigzag | PatternKind::Stack),
            run: VecDeque::new(),
            start: 0,
            used: vec![false; n as usize],
        }
    }

    fn window_rank(&self, window: impl Iterator<Item = Vertex>) -> u64 {
        let mut vs: Vec<Vertex> = window.collect();
        vs.sort_unstable();
        comb::colex_rank(&vs)
    }

    fn arrangement_ok(&self) -> bool {
        if !self.geometric_check {
            return true;
        }
        let seq: Vec<Vertex> = self.run.iter().copied().collect();
        zigzag_arrangement_ok_at(&seq, self.r as u32, self.start)
    }

    /// True if some pattern of the configured kind uses `edge` as a window.
    fn pattern_through(&mut self, edge: &Edge) -> bool {
        if self.target_len > self.n as usize {
            return false;
        }
        let window_offsets: Vec<usize> = match self.kind {
            PatternKind::Stack => (0..self.k).map(|i| i * self.r).collect(),
            _ => (0..self.k).collect(),
        };
        let verts = edge.vertices().to_vec();
        for &offset in &window_offsets {
            for perm in verts.iter().copied().permutations(self.r) {
                self.run.clear();
                self.used.fill(false);
                for &v in &perm {
                    self.run.push_back(v);
                    self.used[v as usize] = true;
                }
                self.start = offset;
                if self.arrangement_ok() && self.forward() {
                    return true;
                }
            }
        }
        false
    }

    fn forward(&mut self) -> bool {
        let next = self.start + self.run.len();
        if next == self.target_len {
            return self.backward();
        }
        let completes = match self.kind {
            PatternKind::Stack => next % self.r == self.r - 1,
            _ => true,
        };
        for v in 0..self.n {
            if self.used[v as usize] {
                continue;
            }
            if completes {
                let head = self.run.iter().copied().skip(self.run.len() + 1 - self.r);
                let rank = self.window_rank(head.chain(std::iter::once(v)));
                if !self.bits.test(rank as usize) {
                    continue;
                }
            }
            self.run.push_back(v);
            self.used[v as usize] = true;
            if self.arrangement_ok() && self.forward() {
                return true;
            }
            self.run.pop_back();
            self.used[v as usize] = false;
        }
        false
    }

    fn backward(&mut self) -> bool {
        if self.start == 0 {
            return true;
        }
        let pos = self.start - 1;
        let completes = match self.kind {
            PatternKind::Stack => pos % self.r == 0,
            _ => true,
        };
        for v in 0..self.n {
            if self.used[v as usize] {
                continue;
            }
            if completes {
                let head = self.run.iter().copied().take(self.r - 1);
                let rank = self.window_rank(std::iter::once(v).chain(head));
                if !self.bits.test(rank as usize) {
                    continue;
                }
            }
            self.run.push_front(v);
            self.start = pos;
            self.used[v as usize] = true;
            if self.arrangement_ok() && self.backward() {
                return true;
            }
            self.run.pop_front();
            self.start = pos + 1;
            self.used[v as usize] = false;
        }
        false
    }
}

struct Engine<'a> {
    edges: &'a [Edge],
    tables: &'a [Vec<u32>],
    cadence: usize,
    kind: PatternKind,
    k: usize,
    r: usize,
    n: u32,
    m: usize,
    bits: BitSet,
    added: Vec<u32>,
    best_value: usize,
    best_witness: Vec<u32>,
    has_local_best: bool,
    nodes: u64,
    budget: Option<u64>,
    exhausted: bool,
    /// Shared best value across top-level subtrees; pruning against it is
    /// strict so tying witnesses stay deterministic per subtree.
    shared_best: Option<&'a AtomicUsize>,
    scratch: Vec<u32>,
}

impl<'a> Engine<'a> {
    #[allow(clippy::too_many_arguments)]
    fn new(
        edges: &'a [Edge],
        tables: &'a [Vec<u32>],
        cadence: usize,
        kind: PatternKind,
        k: usize,
        r: usize,
        n: u32,
        budget: Option<u64>,
        shared_best: Option<&'a AtomicUsize>,
    ) -> Self {
        let m = edges.len();
        Engine {
            edges,
            tables,
            cadence,
            kind,
            k,
            r,
            n,
            m,
            bits: BitSet::new(m.max(1)),
            added: Vec::new(),
            best_value: 0,
            best_witness: Vec::new(),
            has_local_best: false,
            nodes: 0,
            budget,
            exhausted: false,
            shared_best,
            scratch: Vec::new(),
        }
    }

    fn prune_bound(&self, pos: usize) -> bool {
        let potential = self.added.len() + (self.m - pos);
        match self.shared_best {
            // Strict pruning under sharing: subtrees keep exploring ties so
            // the reduced witness does not depend on thread timing.
            Some(best) => potential < best.load(Ordering::Relaxed),
            None => potential <= self.best_value && self.has_local_best,
        }
    }

    fn record_leaf(&mut self) {
        let value = self.added.len();
        if !self.has_local_best || value > self.best_value {
            self.best_value = value;
            self.best_witness = self.added.clone();
            self.has_local_best = true;
            if let Some(best) = self.shared_best {
                best.fetch_max(value, Ordering::Relaxed);
            }
        }
    }

    fn is_canonical(&mut self) -> bool {
        let first = self.added[0];
        for table in self.tables {
            let mut min = u32::MAX;
            for &e in &self.added {
                min = min.min(table[e as usize]);
            }
            match min.cmp(&first) {
                std::cmp::Ordering::Greater => continue,
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Equal => {
                    self.scratch.clear();
                    self.scratch
                        .extend(self.added.iter().map(|&e| table[e as usize]));
                    self.scratch.sort_unstable();
                    if self.scratch.as_slice() < self.added.as_slice() {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn completes_pattern(&mut self, idx: usize) -> bool {
        self.bits.set(idx);
        let mut detector = SeededDetector::new(&self.bits, self.kind, self.k, self.r, self.n);
        let found = detector.pattern_through(&self.edges[idx]);
        self.bits.unset(idx);
        found
    }

    fn dfs(&mut self, pos: usize) {
        self.nodes += 1;
        if let Some(budget) = self.budget {
            if self.nodes > budget {
                self.exhausted = true;
                return;
            }
        }
        if pos == self.m {
            self.record_leaf();
            return;
        }
        if self.prune_bound(pos) {
            return;
        }
        if !self.completes_pattern(pos) {
            self.added.push(pos as u32);
            self.bits.set(pos);
            let check = self.added.len() % self.cadence == 0;
            if !check || self.is_canonical() {
                self.dfs(pos + 1);
            }
            self.added.pop();
            self.bits.unset(pos);
            if self.exhausted {
                return;
            }
        }
        self.dfs(pos + 1);
    }
}

fn candidate_edges(n: u32, r: u32) -> Vec<Edge> {
    if r > n {
        return Vec::new();
    }
    let total = comb::binomial(n as u64, r as u64);
    (0..total)
        .map(|rank| Edge::new(comb::colex_unrank(rank, r)).expect("unrank yields valid sets"))
        .collect()
}

fn action_tables(perms: &[Vec<Vertex>], edges: &[Edge]) -> Vec<Vec<u32>> {
    perms
        .iter()
        .map(|perm| {
            edges
                .iter()
                .map(|e| {
                    let mut vs: Vec<Vertex> =
                        e.vertices().iter().map(|&v| perm[v as usize]).collect();
                    vs.sort_unstable();
                    comb::colex_rank(&vs) as u32
                })
                .collect()
        })
        .collect()
}

/// Compute `ex(n, pattern)` (abstract) or `ex_⟳(n, pattern)` (geometric)
/// exactly: the maximum number of edges in a pattern-free host, with an
/// extremal witness. Deterministic for fixed inputs and options.
pub fn exact_extremal(
    n: u32,
    r: u32,
    k: usize,
    kind: PatternKind,
    geometric: bool,
    options: &SearchOptions,
) -> Result<SearchResult> {
    let started = Instant::now();
    if k == 0 {
        return Err(CghError::domain("patterns need at least one edge"));
    }
    if r < 2 {
        return Err(CghError::domain("search needs uniformity at least 2"));
    }
    let ground = CyclicGround::new(n)?;
    match kind {
        PatternKind::GoodPath => {
            return Err(CghError::unsupported(
                "good paths are tied to a coloring and have no extremal search",
            ));
        }
        PatternKind::Zigzag | PatternKind::Stack => {
            if !geometric {
                return Err(CghError::unsupported(format!(
                    "{} patterns need a geometric hypergraph",
                    kind.label()
                )));
            }
            if r % 2 != 0 {
                return Err(CghError::unsupported(format!(
                    "{} patterns are defined only for even uniformity",
                    kind.label()
                )));
            }
        }
        PatternKind::TightPath => {}
    }
    // Tight-path freeness is invariant under every relabeling; zigzag and
    // stack freeness only under rotations.
    let group = match kind {
        PatternKind::TightPath if n <= 8 => SymmetryGroup::Symmetric,
        PatternKind::TightPath => SymmetryGroup::Cyclic,
        _ => SymmetryGroup::Cyclic,
    };
    let cadence = options.canon_cadence.unwrap_or(match group {
        SymmetryGroup::Symmetric => 1,
        _ => 3,
    });
    if cadence == 0 {
        return Err(CghError::domain("the canonicity cadence must be positive"));
    }
    let edges = candidate_edges(n, r);
    let perms = group.permutations(n)?;
    let tables = action_tables(&perms, &edges);

    let threads = options.threads.max(1);
    let (value, witness_ranks, nodes, exhausted) = if threads == 1 {
        let mut engine = Engine::new(
            &edges,
            &tables,
            cadence,
            kind,
            k,
            r as usize,
            n,
            options.budget,
            None,
        );
        engine.dfs(0);
        (
            engine.best_value,
            engine.best_witness,
            engine.nodes,
            engine.exhausted,
        )
    } else {
        run_split(&edges, &tables, cadence, kind, k, r as usize, n, options, threads)
    };

    let mut witness = Hypergraph::empty(ground, r, geometric)?;
    for rank in &witness_ranks {
        witness.insert(edges[*rank as usize].clone())?;
    }
    Ok(SearchResult {
        value,
        witness,
        certificate: if exhausted {
            Certificate::Bounded
        } else {
            Certificate::Exhaustive
        },
        nodes_explored: nodes,
        wall_time_s: started.elapsed().as_secs_f64(),
    })
}

/// Per-subproblem outcome: best value, witness ranks, nodes, exhausted flag.
type SubResult = (usize, Vec<u32>, u64, bool);

/// Top-level split: enumerate the decision tree to a fixed depth, then solve
/// the frontier subproblems on a thread pool with a shared monotone best
/// value. The reduction is deterministic: maximum value, ties broken by the
/// colex-least witness.
#[allow(clippy::too_many_arguments)]
fn run_split(
    edges: &[Edge],
    tables: &[Vec<u32>],
    cadence: usize,
    kind: PatternKind,
    k: usize,
    r: usize,
    n: u32,
    options: &SearchOptions,
    threads: usize,
) -> SubResult {
    let m = edges.len();
    let depth = (threads * 4).next_power_of_two().trailing_zeros() as usize;
    let depth = depth.min(m);

    // Frontier states: (added ranks) after deciding edges 0..depth.
    let mut frontier: Vec<Vec<u32>> = Vec::new();
    let mut prefix_nodes = 0u64;
    {
        let mut engine = Engine::new(edges, tables, cadence, kind, k, r, n, None, None);
        collect_frontier(&mut engine, 0, depth, &mut frontier, &mut prefix_nodes);
    }
    let shared = AtomicUsize::new(0);
    let sub_budget = options.budget.map(|b| b / frontier.len().max(1) as u64);
    let next = AtomicUsize::new(0);
    let results: Vec<std::sync::Mutex<Option<SubResult>>> =
        frontier.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= frontier.len() {
                    break;
                }
                let mut engine =
                    Engine::new(edges, tables, cadence, kind, k, r, n, sub_budget, Some(&shared));
                for &rank in &frontier[i] {
                    engine.added.push(rank);
                    engine.bits.set(rank as usize);
                }
                engine.dfs(depth);
                *results[i].lock().unwrap() = Some((
                    engine.best_value,
                    engine.best_witness,
                    engine.nodes,
                    engine.exhausted,
                ));
            });
        }
    });
    let mut best_value = 0;
    let mut best_witness: Vec<u32> = Vec::new();
    let mut has_best = false;
    let mut nodes = prefix_nodes;
    let mut exhausted = false;
    for cell in results {
        let (value, witness, sub_nodes, sub_exhausted) =
            cell.into_inner().unwrap().expect("all subproblems solved");
        nodes += sub_nodes;
        exhausted |= sub_exhausted;
        let better = !has_best
            || value > best_value
            || (value == best_value && witness.as_slice() < best_witness.as_slice());
        if better {
            best_value = value;
            best_witness = witness;
            has_best = true;
        }
    }
    (best_value, best_witness, nodes, exhausted)
}

fn collect_frontier(
    engine: &mut Engine<'_>,
    pos: usize,
    depth: usize,
    frontier: &mut Vec<Vec<u32>>,
    nodes: &mut u64,
) {
    if pos == depth {
        frontier.push(engine.added.clone());
        return;
    }
    *nodes += 1;
    if !engine.completes_pattern(pos) {
        engine.added.push(pos as u32);
        engine.bits.set(pos);
        let check = engine.added.len() % engine.cadence == 0;
        if !check || engine.is_canonical() {
            collect_frontier(engine, pos + 1, depth, frontier, nodes);
        }
        engine.added.pop();
        engine.bits.unset(pos);
    }
    collect_frontier(engine, pos + 1, depth, frontier, nodes);
}

/// Test hook: run the seeded detector against a concrete host and probe
/// edge. Semantics: is there a pattern using `probe` as a window?
#[doc(hidden)]
pub fn pattern_through_edge_for_tests(
    h: &Hypergraph,
    probe: &Edge,
    kind: PatternKind,
    k: usize,
) -> bool {
    let edges = candidate_edges(h.n(), h.r());
    let mut bits = BitSet::new(edges.len().max(1));
    for e in h.edges() {
        bits.set(e.colex_rank() as usize);
    }
    let mut detector = SeededDetector::new(&bits, kind, k, h.r() as usize, h.n());
    detector.pattern_through(probe)
}

/// A freeness certificate for a concrete family.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyCertificate {
    Free { edge_count: usize },
    Contains { witness: PathWitness },
}

impl FamilyCertificate {
    pub fn is_free(&self) -> bool {
        matches!(self, FamilyCertificate::Free { .. })
    }
}

/// Run the pattern finder over a family and certify the outcome.
pub fn verify_family(h: &Hypergraph, kind: PatternKind, k: usize) -> Result<FamilyCertificate> {
    Ok(match find_pattern(h, kind, k)? {
        None => FamilyCertificate::Free { edge_count: h.len() },
        Some(witness) => FamilyCertificate::Contains { witness },
    })
}
