//! Uniform hypergraphs over a cyclic ground set.
//!
//! A [`Hypergraph`] is identified with its edge set: a deduplicated family of
//! r-element subsets of the ground. The `geometric` flag records whether the
//! cyclic order of the ground is semantically meaningful (a convex geometric
//! hypergraph, "cgh") or ignored (an abstract r-graph). Detectors and the
//! search engine share this one representation.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::comb;
use crate::error::{CghError, Result};
use crate::ground::{CyclicGround, Vertex};

/// An edge: distinct vertices stored sorted ascending.
///
/// Edges are canonical set values; orderings of edge vertices (path windows,
/// ends) are always separate sequence values, never encoded in the edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Edge(Vec<Vertex>);

impl Edge {
    pub fn new(vertices: impl Into<Vec<Vertex>>) -> Result<Self> {
        let mut vs: Vec<Vertex> = vertices.into();
        vs.sort_unstable();
        if vs.is_empty() {
            return Err(CghError::domain("an edge needs at least one vertex"));
        }
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return Err(CghError::domain("edge vertices must be distinct"));
        }
        Ok(Edge(vs))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn arity(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The edge with `v` removed. Panics if `v` is not a member.
    pub fn without(&self, v: Vertex) -> Edge {
        let i = self.0.binary_search(&v).expect("vertex not in edge");
        let mut vs = self.0.clone();
        vs.remove(i);
        Edge(vs)
    }

    /// The edge with `v` inserted; `v` must be fresh.
    pub fn with(&self, v: Vertex) -> Result<Edge> {
        if self.contains(v) {
            return Err(CghError::domain(format!("vertex {v} already in edge")));
        }
        let mut vs = self.0.clone();
        vs.push(v);
        vs.sort_unstable();
        Ok(Edge(vs))
    }

    /// Rank of this edge in colex order among all sets of its arity.
    pub fn colex_rank(&self) -> u64 {
        comb::colex_rank(&self.0)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

/// An r-uniform hypergraph on a cyclic ground set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    #[serde(rename = "n")]
    ground: CyclicGround,
    r: u32,
    geometric: bool,
    edges: BTreeSet<Edge>,
}

impl Hypergraph {
    /// An empty r-uniform hypergraph.
    pub fn empty(ground: CyclicGround, r: u32, geometric: bool) -> Result<Self> {
        if r == 0 {
            return Err(CghError::domain("uniformity must be at least 1"));
        }
        Ok(Hypergraph {
            ground,
            r,
            geometric,
            edges: BTreeSet::new(),
        })
    }

    pub fn from_edges<I, E>(ground: CyclicGround, r: u32, geometric: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<Vertex>>,
    {
        let mut h = Hypergraph::empty(ground, r, geometric)?;
        for e in edges {
            h.insert(Edge::new(e)?)?;
        }
        Ok(h)
    }

    /// The complete r-graph on `ground`.
    pub fn complete(ground: CyclicGround, r: u32, geometric: bool) -> Result<Self> {
        let mut h = Hypergraph::empty(ground, r, geometric)?;
        if r <= ground.n() {
            for combo in ground.vertices().combinations(r as usize) {
                h.edges.insert(Edge(combo));
            }
        }
        Ok(h)
    }

    /// A seeded random hypergraph: each of the `C(n, r)` possible edges is
    /// kept independently with probability `p`.
    pub fn random(n: u32, r: u32, p: f64, geometric: bool, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(CghError::domain("edge probability must lie in [0, 1]"));
        }
        let ground = CyclicGround::new(n)?;
        let mut h = Hypergraph::empty(ground, r, geometric)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if r <= n {
            for combo in ground.vertices().combinations(r as usize) {
                if rng.random_bool(p) {
                    h.edges.insert(Edge(combo));
                }
            }
        }
        Ok(h)
    }

    /// A seeded random hypergraph with exactly `m` distinct edges.
    pub fn random_with_edges(n: u32, r: u32, m: u64, geometric: bool, seed: u64) -> Result<Self> {
        let ground = CyclicGround::new(n)?;
        let total = comb::binomial(n as u64, r as u64);
        if m > total {
            return Err(CghError::domain(format!(
                "cannot pick {m} distinct edges out of {total}"
            )));
        }
        let mut h = Hypergraph::empty(ground, r, geometric)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Partial Fisher-Yates over colex ranks.
        let mut ranks: Vec<u64> = (0..total).collect();
        for i in 0..m as usize {
            let j = rng.random_range(i..ranks.len());
            ranks.swap(i, j);
            h.edges.insert(Edge(comb::colex_unrank(ranks[i], r)));
        }
        Ok(h)
    }

    pub fn ground(&self) -> CyclicGround {
        self.ground
    }

    pub fn n(&self) -> u32 {
        self.ground.n()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn is_geometric(&self) -> bool {
        self.geometric
    }

    /// Reinterpret the same edge family with the other geometry flag.
    pub fn with_geometric(&self, geometric: bool) -> Hypergraph {
        let mut h = self.clone();
        h.geometric = geometric;
        h
    }

    /// `|H|`, the number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn contains_set(&self, vertices: &[Vertex]) -> bool {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        vs.len() == self.r as usize && self.edges.contains(&Edge(vs))
    }

    /// Insert an edge; `Ok(true)` if it was new.
    pub fn insert(&mut self, e: Edge) -> Result<bool> {
        if e.arity() != self.r {
            return Err(CghError::domain(format!(
                "edge {{{e}}} has arity {}, hypergraph is {}-uniform",
                e.arity(),
                self.r
            )));
        }
        if let Some(&v) = e.vertices().last() {
            self.ground.check_vertex(v)?;
        }
        Ok(self.edges.insert(e))
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.edges.remove(e)
    }

    /// The shadow `∂H`: all (r-1)-sets obtained by deleting one vertex from
    /// an edge, deduplicated. Requires `r ≥ 2`.
    pub fn shadow(&self) -> Result<Hypergraph> {
        if self.r < 2 {
            return Err(CghError::domain(
                "shadow needs uniformity at least 2".to_string(),
            ));
        }
        let mut shadow = Hypergraph::empty(self.ground, self.r - 1, self.geometric)?;
        for e in &self.edges {
            for &v in e.vertices() {
                shadow.edges.insert(e.without(v));
            }
        }
        Ok(shadow)
    }

    /// The link `H_v`: edges through `v` with `v` removed. `|H_v|` is the
    /// degree of `v`.
    pub fn link(&self, v: Vertex) -> Result<Hypergraph> {
        self.ground.check_vertex(v)?;
        if self.r < 2 {
            return Err(CghError::domain(
                "link needs uniformity at least 2".to_string(),
            ));
        }
        let mut link = Hypergraph::empty(self.ground, self.r - 1, self.geometric)?;
        for e in &self.edges {
            if e.contains(v) {
                link.edges.insert(e.without(v));
            }
        }
        Ok(link)
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.ground.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.contains(v)).count())
    }

    /// The neighborhood `N(v) = ∪_{v ∈ e} (e \ {v})`.
    pub fn neighborhood(&self, v: Vertex) -> Result<BTreeSet<Vertex>> {
        self.ground.check_vertex(v)?;
        let mut nbrs = BTreeSet::new();
        for e in &self.edges {
            if e.contains(v) {
                nbrs.extend(e.vertices().iter().copied().filter(|&u| u != v));
            }
        }
        Ok(nbrs)
    }

    /// Parse the plain text format:
    ///
    /// ```text
    /// # comment lines start with '#'
    /// n r g          (g ∈ {cgh, abstract})
    /// v_1 ... v_r    (one edge per line, ascending)
    /// ```
    pub fn parse(text: &str) -> Result<Hypergraph> {
        let mut header: Option<(u32, u32, bool)> = None;
        let mut h: Option<Hypergraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if header.is_none() {
                if tokens.len() != 3 {
                    return Err(CghError::Parse {
                        line: line_no,
                        column: 1,
                        message: format!(
                            "expected header `n r g` with 3 fields, got {}",
                            tokens.len()
                        ),
                    });
                }
                let n = parse_u32(raw, line_no, tokens[0])?;
                let r = parse_u32(raw, line_no, tokens[1])?;
                let geometric = match tokens[2] {
                    "cgh" => true,
                    "abstract" => false,
                    other => {
                        return Err(CghError::Parse {
                            line: line_no,
                            column: column_of(raw, other),
                            message: format!("geometry must be `cgh` or `abstract`, got `{other}`"),
                        });
                    }
                };
                let ground = CyclicGround::new(n).map_err(|e| CghError::Parse {
                    line: line_no,
                    column: 1,
                    message: e.to_string(),
                })?;
                header = Some((n, r, geometric));
                h = Some(
                    Hypergraph::empty(ground, r, geometric).map_err(|e| CghError::Parse {
                        line: line_no,
                        column: 1,
                        message: e.to_string(),
                    })?,
                );
                continue;
            }
            let hg = h.as_mut().unwrap();
            let mut vs = Vec::with_capacity(tokens.len());
            for t in &tokens {
                vs.push(parse_u32(raw, line_no, t)?);
            }
            let edge = Edge::new(vs).map_err(|e| CghError::Parse {
                line: line_no,
                column: 1,
                message: e.to_string(),
            })?;
            hg.insert(edge).map_err(|e| CghError::Parse {
                line: line_no,
                column: 1,
                message: e.to_string(),
            })?;
        }
        h.ok_or(CghError::Parse {
            line: 1,
            column: 1,
            message: "missing header line `n r g`".to_string(),
        })
    }

    /// Canonical text output: header, then edges in sorted order. The output
    /// is byte-stable, so write-read-write round-trips are identical.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} {} {}\n",
            self.n(),
            self.r,
            if self.geometric { "cgh" } else { "abstract" }
        ));
        for e in &self.edges {
            out.push_str(&format!("{e}\n"));
        }
        out
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-uniform {} on {} vertices with {} edges",
            self.r,
            if self.geometric { "cgh" } else { "hypergraph" },
            self.n(),
            self.len()
        )
    }
}

fn column_of(line: &str, token: &str) -> usize {
    line.find(token).map(|i| i + 1).unwrap_or(1)
}

fn parse_u32(line: &str, line_no: usize, token: &str) -> Result<u32> {
    token.parse::<u32>().map_err(|_| CghError::Parse {
        line: line_no,
        column: column_of(line, token),
        message: format!("expected a nonnegative integer, got `{token}`"),
    })
}
