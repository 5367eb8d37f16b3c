//! Pattern recognition and search: tight paths, zigzags, stacks, good paths.
//!
//! A tight k-path is a sequence of `k + r - 1` distinct vertices whose every
//! window of `r` consecutive vertices is an edge. A zigzag is a tight path
//! whose vertices are additionally arranged around the circle in a specific
//! way: the residue classes of the sequence indices mod `r` occupy disjoint
//! segments in cyclic order, even classes ascending by index and odd classes
//! descending. A k-stack keeps every r-th edge of a zigzag layout; a good
//! path is the block-colored analogue used by the random partition argument.
//!
//! Zigzag recognition uses a rotation predicate: the clockwise circular order
//! of the sequence's vertices must equal, up to rotation, the concatenation
//! (class 0 ascending)(class 1 descending)(class 2 ascending)... An
//! exhaustive cross-check against the segment-assignment definition lives in
//! the test suite.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CghError, Result};
use crate::ground::{CyclicGround, Vertex};
use crate::hypergraph::{Edge, Hypergraph};

/// The four pattern kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    TightPath,
    Zigzag,
    Stack,
    GoodPath,
}

impl PatternKind {
    pub fn label(&self) -> &'static str {
        match self {
            PatternKind::TightPath => "tight_path",
            PatternKind::Zigzag => "zigzag",
            PatternKind::Stack => "stack",
            PatternKind::GoodPath => "good_path",
        }
    }
}

/// An ordered vertex sequence certifying a pattern with `k` edges.
///
/// For stacks the sequence is the full `k*r`-vertex underlying zigzag layout
/// and `edges` holds only the `k` stride windows; the intermediate windows
/// need not be edges of the host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub kind: PatternKind,
    pub k: usize,
    pub sequence: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl PathWitness {
    /// Check the witness against a host: distinct vertices, the edge list is
    /// exactly the windows demanded by `kind`, every edge is in `host`, and
    /// the arrangement predicate for the kind holds.
    pub fn check(&self, host: &Hypergraph, coloring: Option<&BlockColoring>) -> Result<bool> {
        let r = host.r() as usize;
        let expected_len = match self.kind {
            PatternKind::Stack => self.k * r,
            _ => self.k + r - 1,
        };
        if self.sequence.len() != expected_len || !distinct(&self.sequence) {
            return Ok(false);
        }
        for &v in &self.sequence {
            host.ground().check_vertex(v)?;
        }
        let windows: Vec<&[Vertex]> = match self.kind {
            PatternKind::Stack => (0..self.k).map(|i| &self.sequence[i * r..(i + 1) * r]).collect(),
            _ => self.sequence.windows(r).collect(),
        };
        if windows.len() != self.edges.len() {
            return Ok(false);
        }
        for (w, e) in windows.iter().zip(&self.edges) {
            let mut sorted = w.to_vec();
            sorted.sort_unstable();
            if sorted != e.vertices() || !host.contains(e) {
                return Ok(false);
            }
        }
        match self.kind {
            PatternKind::TightPath => Ok(true),
            PatternKind::Zigzag | PatternKind::Stack => {
                is_zigzag_sequence(host.ground(), &self.sequence, host.r())
            }
            PatternKind::GoodPath => {
                let coloring = coloring.ok_or_else(|| {
                    CghError::domain("good path witnesses need a block coloring")
                })?;
                is_good_path(host.ground(), &self.sequence, coloring, host.r())
            }
        }
    }
}

/// A partition of the ground set into `s` color blocks, each block carrying
/// the cyclic order induced from the ground order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BlockColoring {
    s: u32,
    assignment: Vec<u32>,
}

impl BlockColoring {
    pub fn new(s: u32, assignment: Vec<u32>) -> Result<Self> {
        if s == 0 {
            return Err(CghError::domain("a coloring needs at least one block"));
        }
        if let Some(&bad) = assignment.iter().find(|&&b| b >= s) {
            return Err(CghError::domain(format!(
                "block index {bad} out of range for s = {s}"
            )));
        }
        Ok(BlockColoring { s, assignment })
    }

    /// A uniform independent coloring of the ground, one color per vertex.
    pub fn random(ground: CyclicGround, s: u32, rng: &mut impl Rng) -> Result<Self> {
        if s == 0 {
            return Err(CghError::domain("a coloring needs at least one block"));
        }
        let assignment = ground.vertices().map(|_| rng.random_range(0..s)).collect();
        BlockColoring::new(s, assignment)
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn n(&self) -> u32 {
        self.assignment.len() as u32
    }

    pub fn block_of(&self, v: Vertex) -> Option<u32> {
        self.assignment.get(v as usize).copied()
    }

    /// The vertices of block `i` in induced cyclic order (ascending id).
    pub fn block_vertices(&self, i: u32) -> Vec<Vertex> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|&(_, &b)| b == i)
            .map(|(v, _)| v as Vertex)
            .collect()
    }

    /// The segment `[u, v]` inside the block containing both `u` and `v`,
    /// walked in the block's induced cyclic order, endpoints included.
    pub fn block_segment(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
        let bu = self
            .block_of(u)
            .ok_or_else(|| CghError::domain(format!("vertex {u} missing from coloring")))?;
        let bv = self
            .block_of(v)
            .ok_or_else(|| CghError::domain(format!("vertex {v} missing from coloring")))?;
        if bu != bv {
            return Err(CghError::domain(format!(
                "segment endpoints {u} and {v} lie in different blocks"
            )));
        }
        let members = self.block_vertices(bu);
        let iu = members.binary_search(&u).unwrap();
        let iv = members.binary_search(&v).unwrap();
        let m = members.len();
        let mut walk = Vec::new();
        let mut i = iu;
        loop {
            walk.push(members[i]);
            if i == iv {
                break;
            }
            i = (i + 1) % m;
        }
        Ok(walk)
    }
}

/// Block index prescribed for sequence position `j` of a good path:
/// `h(j) = ⌊j/2⌋ mod s`.
pub fn good_path_block(j: usize, s: u32) -> u32 {
    ((j / 2) % s as usize) as u32
}

fn distinct(seq: &[Vertex]) -> bool {
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// True if `target` is a rotation of the ascending circular order of its own
/// support set.
fn rotation_of_sorted(target: &[Vertex]) -> bool {
    let m = target.len();
    if m <= 1 {
        return true;
    }
    let mut sorted = target.to_vec();
    sorted.sort_unstable();
    let start = sorted.binary_search(&target[0]).expect("by construction");
    (0..m).all(|i| sorted[(start + i) % m] == target[i])
}

/// Arrangement part of the zigzag definition, valid for prefixes of any
/// length (classes beyond the prefix are simply empty).
pub(crate) fn zigzag_arrangement_ok(seq: &[Vertex], r: u32) -> bool {
    zigzag_arrangement_ok_at(seq, r, 0)
}

/// Arrangement check for a contiguous run of a zigzag sequence whose first
/// element sits at absolute position `offset`. Residue classes are taken
/// from absolute positions, so partial runs built outward from a middle
/// window can be checked incrementally.
pub(crate) fn zigzag_arrangement_ok_at(seq: &[Vertex], r: u32, offset: usize) -> bool {
    let m = seq.len();
    let r = r as usize;
    let mut target = Vec::with_capacity(m);
    for class in 0..r {
        let first = (class + r - offset % r) % r;
        if class % 2 == 0 {
            let mut i = first;
            while i < m {
                target.push(seq[i]);
                i += r;
            }
        } else if first < m {
            let count = (m - 1 - first) / r + 1;
            let mut i = first + (count - 1) * r;
            loop {
                target.push(seq[i]);
                if i == first {
                    break;
                }
                i -= r;
            }
        }
    }
    rotation_of_sorted(&target)
}

/// Arrangement part of the good-path definition for prefixes: every vertex
/// in its prescribed block, and each block's vertices cyclically ordered as
/// (even class ascending)(odd class descending) within the block.
pub(crate) fn good_path_arrangement_ok(seq: &[Vertex], coloring: &BlockColoring, r: u32) -> bool {
    let s = r / 2;
    for (j, &v) in seq.iter().enumerate() {
        if coloring.block_of(v) != Some(good_path_block(j, s)) {
            return false;
        }
    }
    let m = seq.len();
    let r = r as usize;
    for block in 0..s as usize {
        let even = 2 * block;
        let odd = even + 1;
        let mut target = Vec::new();
        let mut i = even;
        while i < m {
            target.push(seq[i]);
            i += r;
        }
        if odd < m {
            let count = (m - 1 - odd) / r + 1;
            let mut i = odd + (count - 1) * r;
            loop {
                target.push(seq[i]);
                if i == odd {
                    break;
                }
                i -= r;
            }
        }
        if !rotation_of_sorted(&target) {
            return false;
        }
    }
    true
}

fn check_sequence(ground: CyclicGround, seq: &[Vertex], r: u32) -> Result<()> {
    if r < 2 {
        return Err(CghError::domain("uniformity must be at least 2"));
    }
    if r % 2 != 0 {
        return Err(CghError::unsupported(
            "zigzag and good-path orderings are defined only for even uniformity",
        ));
    }
    if seq.len() < r as usize {
        return Err(CghError::domain(format!(
            "sequence of length {} is shorter than one edge (r = {r})",
            seq.len()
        )));
    }
    for &v in seq {
        ground.check_vertex(v)?;
    }
    if !distinct(seq) {
        return Err(CghError::domain("sequence vertices must be distinct"));
    }
    Ok(())
}

/// Decide whether `seq` (of length `k + r - 1`) is arranged as a k-zigzag on
/// the cyclic ground. Only the arrangement is checked here; edge membership
/// is the caller's business.
pub fn is_zigzag_sequence(ground: CyclicGround, seq: &[Vertex], r: u32) -> Result<bool> {
    check_sequence(ground, seq, r)?;
    Ok(zigzag_arrangement_ok(seq, r))
}

/// Decide whether `seq` satisfies the good-path conditions for `coloring`:
/// consecutive pairs sit in the prescribed color blocks and each block's
/// vertices follow the prescribed within-block cyclic order.
pub fn is_good_path(
    ground: CyclicGround,
    seq: &[Vertex],
    coloring: &BlockColoring,
    r: u32,
) -> Result<bool> {
    check_sequence(ground, seq, r)?;
    if coloring.s() != r / 2 {
        return Err(CghError::domain(format!(
            "coloring has {} blocks, good paths of uniformity {r} need {}",
            coloring.s(),
            r / 2
        )));
    }
    if coloring.n() != ground.n() {
        return Err(CghError::domain(
            "coloring does not cover the ground set".to_string(),
        ));
    }
    Ok(good_path_arrangement_ok(seq, coloring, r))
}

/// Completion index: maps each (r-1)-subset of an edge to the vertices that
/// complete it to an edge, ascending.
pub(crate) struct CompletionIndex {
    map: HashMap<Vec<Vertex>, Vec<Vertex>>,
}

impl CompletionIndex {
    pub(crate) fn build(h: &Hypergraph) -> Self {
        let mut map: HashMap<Vec<Vertex>, Vec<Vertex>> = HashMap::new();
        for e in h.edges() {
            for &v in e.vertices() {
                map.entry(e.without(v).vertices().to_vec()).or_default().push(v);
            }
        }
        for cands in map.values_mut() {
            cands.sort_unstable();
        }
        CompletionIndex { map }
    }

    pub(crate) fn complete(&self, window_head: &[Vertex]) -> &[Vertex] {
        let mut key = window_head.to_vec();
        key.sort_unstable();
        self.map.get(&key).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

struct PatternDfs<'a> {
    h: &'a Hypergraph,
    kind: PatternKind,
    r: usize,
    target_len: usize,
    completions: CompletionIndex,
    seq: Vec<Vertex>,
    used: Vec<bool>,
}

impl PatternDfs<'_> {
    fn arrangement_ok(&self) -> bool {
        match self.kind {
            PatternKind::TightPath => true,
            _ => zigzag_arrangement_ok(&self.seq, self.r as u32),
        }
    }

    /// Deterministic DFS, candidates ascending by vertex id at every
    /// position; returns true with the witness sequence left in `self.seq`.
    fn run(&mut self) -> bool {
        let p = self.seq.len();
        if p == self.target_len {
            return true;
        }
        let completing = match self.kind {
            PatternKind::Stack => p % self.r == self.r - 1,
            _ => p >= self.r - 1,
        };
        if completing {
            let cands = self.completions.complete(&self.seq[p + 1 - self.r..p]).to_vec();
            for v in cands {
                if self.step(v) {
                    return true;
                }
            }
        } else {
            for v in 0..self.h.n() {
                if self.step(v) {
                    return true;
                }
            }
        }
        false
    }

    fn step(&mut self, v: Vertex) -> bool {
        if self.used[v as usize] {
            return false;
        }
        self.seq.push(v);
        self.used[v as usize] = true;
        let found = self.arrangement_ok() && self.run();
        if !found {
            self.seq.pop();
            self.used[v as usize] = false;
        }
        found
    }
}

/// Find a pattern with exactly `k` edges in `h`, returning the first witness
/// in deterministic DFS order (lexicographic by start vertex, then by each
/// next vertex id), or `None` if the host is pattern-free.
pub fn find_pattern(h: &Hypergraph, kind: PatternKind, k: usize) -> Result<Option<PathWitness>> {
    if k == 0 {
        return Err(CghError::domain("patterns need at least one edge"));
    }
    let r = h.r();
    if r < 2 {
        return Err(CghError::domain("patterns need uniformity at least 2"));
    }
    match kind {
        PatternKind::GoodPath => {
            return Err(CghError::unsupported(
                "good paths are searched via extension::enumerate_ends, which needs a coloring",
            ));
        }
        PatternKind::Zigzag | PatternKind::Stack => {
            if !h.is_geometric() {
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
    let target_len = match kind {
        PatternKind::Stack => k * r as usize,
        _ => k + r as usize - 1,
    };
    if target_len > h.n() as usize {
        return Ok(None);
    }
    let mut dfs = PatternDfs {
        h,
        kind,
        r: r as usize,
        target_len,
        completions: CompletionIndex::build(h),
        seq: Vec::with_capacity(target_len),
        used: vec![false; h.n() as usize],
    };
    if !dfs.run() {
        return Ok(None);
    }
    let sequence = dfs.seq;
    let edges = witness_edges(kind, k, r as usize, &sequence);
    Ok(Some(PathWitness { kind, k, sequence, edges }))
}

pub(crate) fn witness_edges(kind: PatternKind, k: usize, r: usize, seq: &[Vertex]) -> Vec<Edge> {
    let windows: Vec<&[Vertex]> = match kind {
        PatternKind::Stack => (0..k).map(|i| &seq[i * r..(i + 1) * r]).collect(),
        _ => seq.windows(r).collect(),
    };
    windows
        .into_iter()
        .map(|w| Edge::new(w.to_vec()).expect("windows of a distinct sequence are valid edges"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;

    fn ground(n: u32) -> CyclicGround {
        CyclicGround::new(n).unwrap()
    }

    #[test]
    fn zigzag_examples_r2() {
        let g = ground(3);
        assert!(is_zigzag_sequence(g, &[0, 2, 1], 2).unwrap());
        assert!(!is_zigzag_sequence(g, &[0, 1, 2], 2).unwrap());
    }

    #[test]
    fn zigzag_example_r4() {
        // Layout with class order v0,v4,v8 | v9,v5,v1 | v2,v6 | v7,v3.
        let g = ground(10);
        assert!(is_zigzag_sequence(g, &[0, 5, 6, 9, 1, 4, 7, 8, 2, 3], 4).unwrap());
    }

    #[test]
    fn zigzag_rejects_bad_input() {
        let g = ground(6);
        assert!(matches!(
            is_zigzag_sequence(g, &[0, 1, 2], 3),
            Err(CghError::Unsupported(_))
        ));
        assert!(matches!(
            is_zigzag_sequence(g, &[0, 1, 0], 2),
            Err(CghError::Domain(_))
        ));
        assert!(is_zigzag_sequence(g, &[0], 2).is_err());
        assert!(is_zigzag_sequence(g, &[0, 9], 2).is_err());
    }

    #[test]
    fn single_edge_has_exactly_r_zigzag_orderings() {
        use itertools::Itertools;
        for (n, r, edge) in [
            (6u32, 2u32, vec![1u32, 4]),
            (8, 4, vec![0, 2, 5, 7]),
            (9, 6, vec![0, 2, 3, 5, 7, 8]),
        ] {
            let g = ground(n);
            let count = edge
                .iter()
                .copied()
                .permutations(r as usize)
                .filter(|p| is_zigzag_sequence(g, p, r).unwrap())
                .count();
            assert_eq!(count as u32, r);
        }
    }

    #[test]
    fn good_path_examples() {
        // r=2, one block, block order 0<1<2: good paths are 2-uniform zigzags.
        let g = ground(3);
        let c = BlockColoring::new(1, vec![0, 0, 0]).unwrap();
        assert!(is_good_path(g, &[0, 2, 1], &c, 2).unwrap());
        assert!(!is_good_path(g, &[0, 1, 2], &c, 2).unwrap());

        // r=4: v0 and v1 must share block 0.
        let g8 = ground(8);
        let c2 = BlockColoring::new(2, vec![0, 1, 0, 1, 0, 1, 0, 1]).unwrap();
        assert!(!is_good_path(g8, &[0, 1, 3, 5], &c2, 4).unwrap());

        // Repeated vertex is a domain error.
        assert!(is_good_path(g8, &[0, 2, 1, 0], &c2, 4).is_err());
    }

    #[test]
    fn good_path_needs_matching_block_count() {
        let g = ground(4);
        let c = BlockColoring::new(1, vec![0, 0, 0, 0]).unwrap();
        assert!(is_good_path(g, &[0, 1, 2, 3], &c, 4).is_err());
    }

    #[test]
    fn block_segment_wraps_within_block() {
        let c = BlockColoring::new(2, vec![0, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(c.block_vertices(0), vec![0, 2, 4]);
        assert_eq!(c.block_segment(4, 2).unwrap(), vec![4, 0, 2]);
        assert_eq!(c.block_segment(2, 2).unwrap(), vec![2]);
        assert!(c.block_segment(0, 1).is_err());
    }

    #[test]
    fn find_tight_path_in_complete_3_graph() {
        let h = Hypergraph::complete(ground(6), 3, false).unwrap();
        let w = find_pattern(&h, PatternKind::TightPath, 4).unwrap().unwrap();
        assert_eq!(w.sequence.len(), 6);
        assert_eq!(w.edges.len(), 4);
        assert!(w.check(&h, None).unwrap());
    }

    #[test]
    fn find_pattern_is_deterministic_and_lex_first() {
        let h = Hypergraph::complete(ground(6), 3, false).unwrap();
        let w = find_pattern(&h, PatternKind::TightPath, 4).unwrap().unwrap();
        // In a complete host the very first sequence lexicographically wins.
        assert_eq!(w.sequence, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn zigzag_needs_geometry() {
        let h = Hypergraph::complete(ground(6), 2, false).unwrap();
        assert!(matches!(
            find_pattern(&h, PatternKind::Zigzag, 2),
            Err(CghError::Unsupported(_))
        ));
        let h3 = Hypergraph::complete(ground(6), 3, true).unwrap();
        assert!(find_pattern(&h3, PatternKind::Zigzag, 2).is_err());
    }

    #[test]
    fn good_path_kind_is_not_searched_here() {
        let h = Hypergraph::complete(ground(4), 2, true).unwrap();
        assert!(find_pattern(&h, PatternKind::GoodPath, 1).is_err());
    }

    #[test]
    fn too_few_vertices_means_pattern_free() {
        let h = Hypergraph::complete(ground(5), 3, false).unwrap();
        // A tight 4-path needs 6 vertices.
        assert!(find_pattern(&h, PatternKind::TightPath, 4).unwrap().is_none());
        assert!(find_pattern(&h, PatternKind::TightPath, 3).unwrap().is_some());
    }

    #[test]
    fn monotone_containment_on_prefixes() {
        let h = Hypergraph::random(8, 2, 0.6, true, 3).unwrap();
        for k in (1..=4).rev() {
            if let Some(w) = find_pattern(&h, PatternKind::Zigzag, k).unwrap() {
                for shorter in 1..k {
                    let w2 = find_pattern(&h, PatternKind::Zigzag, shorter).unwrap();
                    assert!(w2.is_some(), "zigzag {k} exists but {shorter} missing");
                    // The prefix of the longer witness is itself a witness.
                    let prefix = &w.sequence[..shorter + 1];
                    assert!(is_zigzag_sequence(h.ground(), prefix, 2).unwrap());
                }
            }
        }
    }

    #[test]
    fn zigzag_containment_is_rotation_invariant_but_chiral() {
        // Rotating the circle preserves zigzags.
        let h = Hypergraph::from_edges(
            ground(4),
            2,
            true,
            [[0u32, 3], [1, 3], [1, 2]],
        )
        .unwrap();
        assert!(find_pattern(&h, PatternKind::Zigzag, 3).unwrap().is_some());
        for t in 0..4u32 {
            let rotated = Hypergraph::from_edges(
                ground(4),
                2,
                true,
                h.edges().map(|e| {
                    e.vertices().iter().map(|&v| (v + t) % 4).collect::<Vec<_>>()
                }),
            )
            .unwrap();
            assert!(find_pattern(&rotated, PatternKind::Zigzag, 3).unwrap().is_some());
        }
        // Reflection does not: the mirror image of this host has no 3-zigzag,
        // so zigzag containment is chirality-sensitive and reflections cannot
        // be used for isomorph rejection in zigzag searches.
        let mirrored = Hypergraph::from_edges(
            ground(4),
            2,
            true,
            h.edges().map(|e| {
                e.vertices().iter().map(|&v| (4 - v) % 4).collect::<Vec<_>>()
            }),
        )
        .unwrap();
        assert!(find_pattern(&mirrored, PatternKind::Zigzag, 3).unwrap().is_none());
    }

    #[test]
    fn zigzag_witness_is_a_tight_path() {
        let h = Hypergraph::random(8, 2, 0.7, true, 9).unwrap();
        if let Some(w) = find_pattern(&h, PatternKind::Zigzag, 3).unwrap() {
            for win in w.sequence.windows(2) {
                assert!(h.contains_set(win));
            }
        }
    }
}
