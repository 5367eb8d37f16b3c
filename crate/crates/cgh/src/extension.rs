//! End-extension machinery: ends of zigzags and good paths, extension
//! intervals and sets, the families `S_k` and `T_k`, the injections `f` and
//! `g`, verification of the counting inequalities, and the random partition
//! experiment.
//!
//! The *end* of a k-zigzag `v_0 v_1 ... v_{k+r-2}` is the ordered tuple of
//! its last r vertices `(v_{k-1}, ..., v_{k+r-2})`. An end can be extended by
//! any vertex of its extension set `X`: the vertices inside a specific
//! interval `I` that complete the last `r - 1` tuple vertices to an edge.
//! `S_k` collects the ends of all k-zigzags (or good k-paths), `T_k` the
//! stuck ones with empty `X`. Counting `S_k` against `T_k` yields the lower
//! bound `|S_k| ≥ r|H| - (r-1)(k-1)|∂H|`, whose emptiness at a pattern-free
//! host forces the extremal upper bounds.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CghError, Result};
use crate::ground::Vertex;
use crate::hypergraph::Hypergraph;
use crate::patterns::{
    good_path_arrangement_ok, good_path_block, zigzag_arrangement_ok, BlockColoring,
    CompletionIndex,
};

/// Which path notion an end belongs to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EndMode {
    Zigzag,
    GoodPath(BlockColoring),
}

impl EndMode {
    pub fn coloring(&self) -> Option<&BlockColoring> {
        match self {
            EndMode::Zigzag => None,
            EndMode::GoodPath(c) => Some(c),
        }
    }
}

/// The ordered last-edge tuple `(v_{k-1}, ..., v_{k+r-2})` of a k-zigzag or
/// good k-path.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct End {
    tuple: Vec<Vertex>,
    k: usize,
    mode: EndMode,
}

impl End {
    pub fn new(tuple: Vec<Vertex>, k: usize, mode: EndMode) -> Result<Self> {
        if k == 0 {
            return Err(CghError::domain("ends exist only for k >= 1"));
        }
        let r = tuple.len() as u32;
        if r < 2 || r % 2 != 0 {
            return Err(CghError::unsupported(
                "ends are defined for even uniformity at least 2",
            ));
        }
        let mut sorted = tuple.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(CghError::domain("end tuple vertices must be distinct"));
        }
        if let EndMode::GoodPath(coloring) = &mode {
            if coloring.s() != r / 2 {
                return Err(CghError::domain(format!(
                    "coloring has {} blocks but the end has uniformity {r}",
                    coloring.s()
                )));
            }
            let expected = good_path_block(k - 1, coloring.s());
            match coloring.block_of(tuple[0]) {
                Some(b) if b == expected => {}
                Some(b) => {
                    return Err(CghError::domain(format!(
                        "end vertex v_{} lies in block {b}, good paths demand block {expected}",
                        k - 1
                    )));
                }
                None => {
                    return Err(CghError::domain(format!(
                        "vertex {} missing from coloring",
                        tuple[0]
                    )));
                }
            }
        }
        Ok(End { tuple, k, mode })
    }

    pub fn tuple(&self) -> &[Vertex] {
        &self.tuple
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> u32 {
        self.tuple.len() as u32
    }

    pub fn mode(&self) -> &EndMode {
        &self.mode
    }

    /// `v_{k-1}`, the tuple vertex that drops out on extension.
    pub fn first(&self) -> Vertex {
        self.tuple[0]
    }

    /// `(v_k, ..., v_{k+r-2})`: the tuple minus its first vertex.
    pub fn rest(&self) -> &[Vertex] {
        &self.tuple[1..]
    }
}

/// The interval `I` and extension set `X` of an end.
///
/// `I = [v_{k-1}, v_k]` for odd `k` and `I = [v_{k+r-2}, v_{k-1}]` for even
/// `k`, taken in the ground's cyclic order (zigzag mode) or inside the block
/// `B_{h(k-1)}` (good-path mode). `X` keeps the vertices of `I` outside the
/// end's own tuple that complete `(v_k, ..., v_{k+r-2})` to an edge of `h`.
pub fn interval_and_x(h: &Hypergraph, end: &End) -> Result<(Vec<Vertex>, BTreeSet<Vertex>)> {
    if end.r() != h.r() {
        return Err(CghError::domain(format!(
            "end has uniformity {}, host has {}",
            end.r(),
            h.r()
        )));
    }
    for &v in end.tuple() {
        h.ground().check_vertex(v)?;
    }
    let k = end.k;
    let v_first = end.first();
    let v_k = end.tuple[1];
    let v_last = *end.tuple.last().unwrap();
    let interval = match &end.mode {
        EndMode::Zigzag => {
            if !h.is_geometric() {
                return Err(CghError::unsupported(
                    "zigzag ends need a geometric hypergraph",
                ));
            }
            if k % 2 == 1 {
                h.ground().segment(v_first, v_k)?
            } else {
                h.ground().segment(v_last, v_first)?
            }
        }
        EndMode::GoodPath(coloring) => {
            if coloring.n() != h.n() {
                return Err(CghError::domain(
                    "coloring does not cover the ground set".to_string(),
                ));
            }
            if k % 2 == 1 {
                coloring.block_segment(v_first, v_k)?
            } else {
                coloring.block_segment(v_last, v_first)?
            }
        }
    };
    let mut x = BTreeSet::new();
    for &v in &interval {
        if end.tuple.contains(&v) {
            continue;
        }
        let mut candidate = end.rest().to_vec();
        candidate.push(v);
        if h.contains_set(&candidate) {
            x.insert(v);
        }
    }
    Ok((interval, x))
}

/// The extension injection `f`: pick the vertex of `X` closest to `v_{k-1}`
/// along `I` and return the (k+1)-end `(v_k, ..., v_{k+r-1})`.
///
/// Errors with [`CghError::StuckEnd`] when `X` is empty.
pub fn extend_f(h: &Hypergraph, end: &End) -> Result<End> {
    let (interval, x) = interval_and_x(h, end)?;
    if x.is_empty() {
        return Err(CghError::StuckEnd);
    }
    // For odd k the interval starts at v_{k-1}; for even k it ends there.
    // Either way "closest to v_{k-1}" is measured along the interval.
    let chosen = if end.k % 2 == 1 {
        *interval.iter().find(|v| x.contains(v)).expect("x nonempty")
    } else {
        *interval
            .iter()
            .rev()
            .find(|v| x.contains(v))
            .expect("x nonempty")
    };
    let mut tuple = end.rest().to_vec();
    tuple.push(chosen);
    End::new(tuple, end.k + 1, end.mode.clone())
}

/// The projection injection `g`: drop `v_{k-1}` from the tuple. For a stuck
/// end the image `(v_k, ..., v_{k+r-2})` is an ordered element of the shadow.
pub fn project_g(end: &End) -> Vec<Vertex> {
    end.rest().to_vec()
}

/// The families `S_k` (all ends) and `T_k` (stuck ends), with one witness
/// path per end.
#[derive(Clone, Debug)]
pub struct EndEnumeration {
    pub k: usize,
    /// `S_k`: ends of all k-zigzags (or good k-paths), sorted by tuple.
    pub ends: Vec<End>,
    /// `T_k ⊆ S_k`: the stuck ends, whose extension set is empty.
    pub stuck: Vec<End>,
    witnesses: BTreeMap<Vec<Vertex>, Vec<Vertex>>,
}

impl EndEnumeration {
    pub fn s_count(&self) -> usize {
        self.ends.len()
    }

    pub fn t_count(&self) -> usize {
        self.stuck.len()
    }

    /// Ends of `S_k \ T_k`, the extendable ones.
    pub fn extendable(&self) -> impl Iterator<Item = &End> {
        let stuck: BTreeSet<&[Vertex]> = self.stuck.iter().map(|e| e.tuple()).collect();
        self.ends.iter().filter(move |e| !stuck.contains(e.tuple()))
    }

    /// One full path sequence ending in `end`, if `end` is in `S_k`.
    pub fn witness_for(&self, end: &End) -> Option<&[Vertex]> {
        self.witnesses.get(end.tuple()).map(|w| w.as_slice())
    }
}

struct EndDfs<'a> {
    h: &'a Hypergraph,
    mode: &'a EndMode,
    r: usize,
    target_len: usize,
    completions: CompletionIndex,
    seq: Vec<Vertex>,
    used: Vec<bool>,
    found: BTreeMap<Vec<Vertex>, Vec<Vertex>>,
}

impl EndDfs<'_> {
    fn arrangement_ok(&self) -> bool {
        match self.mode {
            EndMode::Zigzag => zigzag_arrangement_ok(&self.seq, self.r as u32),
            EndMode::GoodPath(coloring) => {
                good_path_arrangement_ok(&self.seq, coloring, self.r as u32)
            }
        }
    }

    fn run(&mut self) {
        let p = self.seq.len();
        if p == self.target_len {
            let end = self.seq[p - self.r..].to_vec();
            self.found.entry(end).or_insert_with(|| self.seq.clone());
            return;
        }
        if p >= self.r - 1 {
            let cands = self.completions.complete(&self.seq[p + 1 - self.r..p]).to_vec();
            for v in cands {
                self.step(v);
            }
        } else {
            for v in 0..self.h.n() {
                self.step(v);
            }
        }
    }

    fn step(&mut self, v: Vertex) {
        if self.used[v as usize] {
            return;
        }
        self.seq.push(v);
        self.used[v as usize] = true;
        if self.arrangement_ok() {
            self.run();
        }
        self.seq.pop();
        self.used[v as usize] = false;
    }
}

/// Enumerate `S_k` and `T_k` by exhaustive path search.
pub fn enumerate_ends(h: &Hypergraph, k: usize, mode: &EndMode) -> Result<EndEnumeration> {
    if k == 0 {
        return Err(CghError::domain("ends exist only for k >= 1"));
    }
    let r = h.r();
    if r < 2 || r % 2 != 0 {
        return Err(CghError::unsupported(
            "end enumeration is defined for even uniformity at least 2",
        ));
    }
    match mode {
        EndMode::Zigzag => {
            if !h.is_geometric() {
                return Err(CghError::unsupported(
                    "zigzag ends need a geometric hypergraph",
                ));
            }
        }
        EndMode::GoodPath(coloring) => {
            if coloring.s() != r / 2 {
                return Err(CghError::domain(format!(
                    "coloring has {} blocks, good paths of uniformity {r} need {}",
                    coloring.s(),
                    r / 2
                )));
            }
            if coloring.n() != h.n() {
                return Err(CghError::domain(
                    "coloring does not cover the ground set".to_string(),
                ));
            }
        }
    }
    let target_len = k + r as usize - 1;
    let mut found = BTreeMap::new();
    if target_len <= h.n() as usize {
        let mut dfs = EndDfs {
            h,
            mode,
            r: r as usize,
            target_len,
            completions: CompletionIndex::build(h),
            seq: Vec::with_capacity(target_len),
            used: vec![false; h.n() as usize],
            found: BTreeMap::new(),
        };
        dfs.run();
        found = dfs.found;
    }
    let mut ends = Vec::with_capacity(found.len());
    let mut stuck = Vec::new();
    for tuple in found.keys() {
        let end = End::new(tuple.clone(), k, mode.clone())?;
        let (_, x) = interval_and_x(h, &end)?;
        if x.is_empty() {
            stuck.push(end.clone());
        }
        ends.push(end);
    }
    Ok(EndEnumeration {
        k,
        ends,
        stuck,
        witnesses: found,
    })
}

/// One row of a [`CountingReport`]: the measured sizes and the three checks
/// for a single path length `k`.
#[derive(Clone, Debug, Serialize)]
pub struct CountingRow {
    pub k: usize,
    pub s_k: usize,
    pub t_k: usize,
    pub s_next: usize,
    /// `|S_k| >= lower_bound` where `lower_bound` is
    /// `r|H| - (r-1)(k-1)|∂H|` (zigzag) or
    /// `2^s|G| - 2^{s-1} Σ_{i<k-1} |∂_{h(i)}G|` (good paths).
    pub lower_bound: i64,
    pub lower_ok: bool,
    /// `|S_{k+1}| >= |S_k \ T_k|`.
    pub extend_ok: bool,
    /// `|T_k| <= stuck_bound` where `stuck_bound` is `(r-1)|∂H|` (zigzag) or
    /// `2^{s-1}|∂_{h(k-1)}G|` (good paths).
    pub stuck_bound: u64,
    pub stuck_ok: bool,
}

/// The full verification report for the counting inequalities.
#[derive(Clone, Debug, Serialize)]
pub struct CountingReport {
    pub mode: String,
    /// `|H|` in zigzag mode; `|G|` (the block-balanced subgraph) in good-path
    /// mode.
    pub edge_count: usize,
    /// `|∂H|` in zigzag mode; `|∂G|` in good-path mode.
    pub shadow_count: usize,
    /// Good-path mode only: the partial shadow sizes `|∂_i G|` per block.
    pub shadow_parts: Option<Vec<usize>>,
    pub rows: Vec<CountingRow>,
    pub all_ok: bool,
}

impl CountingReport {
    pub fn violations(&self) -> usize {
        self.rows
            .iter()
            .map(|r| [r.lower_ok, r.extend_ok, r.stuck_ok].iter().filter(|ok| !**ok).count())
            .sum()
    }
}

/// Verify the counting inequalities for `k = 1..=k_max`:
/// `|S_{k+1}| >= |S_k \ T_k|`, the stuck-end bound, and the cumulative lower
/// bound on `|S_k|`.
pub fn verify_counting(h: &Hypergraph, k_max: usize, mode: &EndMode) -> Result<CountingReport> {
    if k_max == 0 {
        return Err(CghError::domain("k_max must be at least 1"));
    }
    let r = h.r();
    if r < 2 || r % 2 != 0 {
        return Err(CghError::unsupported(
            "counting verification is defined for even uniformity",
        ));
    }
    let s = r / 2;
    // In good-path mode all path edges automatically have two vertices per
    // block, so enumeration over h and over its block-balanced subgraph G
    // agree; the bounds are stated for G, so measure G explicitly.
    let (host, shadow_count, shadow_parts, label) = match mode {
        EndMode::Zigzag => {
            let shadow = h.shadow()?;
            (h.clone(), shadow.len(), None, "zigzag".to_string())
        }
        EndMode::GoodPath(coloring) => {
            if coloring.n() != h.n() {
                return Err(CghError::domain(
                    "coloring does not cover the ground set".to_string(),
                ));
            }
            let g = block_balanced_subgraph(h, coloring)?;
            let shadow = g.shadow()?;
            let mut parts = vec![0usize; s as usize];
            for e in shadow.edges() {
                for (i, part) in parts.iter_mut().enumerate() {
                    let hits = e
                        .vertices()
                        .iter()
                        .filter(|&&v| coloring.block_of(v) == Some(i as u32))
                        .count();
                    if hits == 1 {
                        *part += 1;
                    }
                }
            }
            (g, shadow.len(), Some(parts), "good_path".to_string())
        }
    };

    let mut enumerations = Vec::with_capacity(k_max + 1);
    for k in 1..=k_max + 1 {
        enumerations.push(enumerate_ends(&host, k, mode)?);
    }

    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let s_k = enumerations[k - 1].s_count();
        let t_k = enumerations[k - 1].t_count();
        let s_next = enumerations[k].s_count();
        let (lower_bound, stuck_bound) = match (&mode, &shadow_parts) {
            (EndMode::Zigzag, _) => {
                let lower = r as i64 * host.len() as i64
                    - (r as i64 - 1) * (k as i64 - 1) * shadow_count as i64;
                (lower, (r as u64 - 1) * shadow_count as u64)
            }
            (EndMode::GoodPath(_), Some(parts)) => {
                let pow_s = 1i64 << s;
                let pow_s1 = 1i64 << (s - 1);
                let sum: i64 = (0..k.saturating_sub(1))
                    .map(|i| parts[good_path_block(i, s) as usize] as i64)
                    .sum();
                let lower = pow_s * host.len() as i64 - pow_s1 * sum;
                let stuck = (1u64 << (s - 1)) * parts[good_path_block(k - 1, s) as usize] as u64;
                (lower, stuck)
            }
            _ => unreachable!(),
        };
        rows.push(CountingRow {
            k,
            s_k,
            t_k,
            s_next,
            lower_bound,
            lower_ok: s_k as i64 >= lower_bound,
            extend_ok: s_next >= s_k - t_k,
            stuck_bound,
            stuck_ok: t_k as u64 <= stuck_bound,
        });
    }
    let all_ok = rows.iter().all(|r| r.lower_ok && r.extend_ok && r.stuck_ok);
    Ok(CountingReport {
        mode: label,
        edge_count: host.len(),
        shadow_count,
        shadow_parts,
        rows,
        all_ok,
    })
}

/// The subgraph `G = {e ∈ H : |e ∩ B_i| = 2 for all i}`.
pub fn block_balanced_subgraph(h: &Hypergraph, coloring: &BlockColoring) -> Result<Hypergraph> {
    let s = h.r() / 2;
    let mut g = Hypergraph::empty(h.ground(), h.r(), h.is_geometric())?;
    for e in h.edges() {
        let mut counts = vec![0u32; s as usize];
        let mut ok = true;
        for &v in e.vertices() {
            match coloring.block_of(v) {
                Some(b) if b < s => counts[b as usize] += 1,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && counts.iter().all(|&c| c == 2) {
            g.insert(e.clone())?;
        }
    }
    Ok(g)
}

/// Statistics of the random s-coloring experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub seed: u64,
    pub trials: u64,
    /// Empirical mean of `|G|` and its standard error.
    pub mean_g: f64,
    pub stderr_g: f64,
    /// Exact expectation `r!/(2^s s^r) |H|`.
    pub target_g: f64,
    /// Empirical mean of `|∂_i G|` per block, with standard errors.
    pub mean_shadow: Vec<f64>,
    pub stderr_shadow: Vec<f64>,
    /// Upper bound `(r-1)!/(2^{s-1} s^{r-1}) |∂H|` on every `E|∂_i G|`.
    pub bound_shadow: f64,
}

/// Repeat `trials` times: color the vertices uniformly with `s = r/2` colors
/// (an independent seeded stream per trial), form the block-balanced
/// subgraph `G` and its partial shadows `∂_i G`, and record the sizes.
pub fn random_partition_experiment(
    h: &Hypergraph,
    seed: u64,
    trials: u64,
) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(CghError::domain("the experiment needs at least one trial"));
    }
    let r = h.r();
    if r < 2 || r % 2 != 0 {
        return Err(CghError::unsupported(
            "the partition experiment is defined for even uniformity",
        ));
    }
    let s = r / 2;
    let mut g_sizes = Vec::with_capacity(trials as usize);
    let mut shadow_sizes = vec![Vec::with_capacity(trials as usize); s as usize];
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let coloring = BlockColoring::random(h.ground(), s, &mut rng)?;
        let g = block_balanced_subgraph(h, &coloring)?;
        g_sizes.push(g.len() as f64);
        let shadow = g.shadow()?;
        for i in 0..s {
            let count = shadow
                .edges()
                .filter(|e| {
                    e.vertices()
                        .iter()
                        .filter(|&&v| coloring.block_of(v) == Some(i))
                        .count()
                        == 1
                })
                .count();
            shadow_sizes[i as usize].push(count as f64);
        }
    }
    let (mean_g, stderr_g) = mean_and_stderr(&g_sizes);
    let mut mean_shadow = Vec::with_capacity(s as usize);
    let mut stderr_shadow = Vec::with_capacity(s as usize);
    for sizes in &shadow_sizes {
        let (m, se) = mean_and_stderr(sizes);
        mean_shadow.push(m);
        stderr_shadow.push(se);
    }
    let target_g = factorial(r) as f64 / (2f64.powi(s as i32) * (s as f64).powi(r as i32))
        * h.len() as f64;
    let bound_shadow = factorial(r - 1) as f64
        / (2f64.powi(s as i32 - 1) * (s as f64).powi(r as i32 - 1))
        * h.shadow()?.len() as f64;
    Ok(ExperimentReport {
        seed,
        trials,
        mean_g,
        stderr_g,
        target_g,
        mean_shadow,
        stderr_shadow,
        bound_shadow,
    })
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

fn mean_and_stderr(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
