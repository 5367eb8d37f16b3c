//! Explicit extremal families: the stack-free construction, the odd-k short
//! side construction, clique unions, the transversal block construction, and
//! the uniformity lift with its length budget `phi`.

use itertools::Itertools;

use crate::error::{CghError, Result};
use crate::ground::{CyclicGround, Vertex};
use crate::hypergraph::{Edge, Hypergraph};

fn require_even_r(r: u32, what: &str) -> Result<()> {
    if r < 2 {
        return Err(CghError::domain(format!("{what} needs uniformity at least 2")));
    }
    if r % 2 != 0 {
        return Err(CghError::unsupported(format!(
            "{what} is defined only for even uniformity"
        )));
    }
    Ok(())
}

/// The k-stack-free family `H(n, r, k) = H_0 ∪ ... ∪ H_{k-1}` as separate
/// parts, edges written ascending `v_0 < ... < v_{r-1}`:
///
/// * `H_0`: edges with `v_0 = 0`;
/// * `H_j` for `1 <= j <= k-2`: edges outside `H_0` with some cyclically
///   adjacent pair at arc length exactly `j` (the pair `(v_{r-1}, v_0)` is
///   the wraparound position `h = r-1`);
/// * `H_{k-1}`: edges outside `H_0` with `ℓ(v_{2h-1}, v_{2h}) ∈ {k-1, k}`
///   for some `1 <= h <= r/2 - 1`.
pub fn stack_free_parts(n: u32, r: u32, k: u32) -> Result<Vec<Hypergraph>> {
    require_even_r(r, "the stack-free construction")?;
    if k == 0 {
        return Err(CghError::domain("the stack-free construction needs k >= 1"));
    }
    if n < r {
        return Err(CghError::domain(format!(
            "ground of {n} points cannot host {r}-sets"
        )));
    }
    let ground = CyclicGround::new(n)?;
    let mut parts: Vec<Hypergraph> = (0..k)
        .map(|_| Hypergraph::empty(ground, r, true))
        .collect::<Result<_>>()?;
    for combo in ground.vertices().combinations(r as usize) {
        let edge = Edge::new(combo.clone())?;
        if combo[0] == 0 {
            parts[0].insert(edge)?;
            continue;
        }
        let adjacent_lengths: Vec<u32> = (0..r as usize)
            .map(|h| {
                let u = combo[h];
                let v = combo[(h + 1) % r as usize];
                ground.arc_length(u, v).expect("valid vertices")
            })
            .collect();
        for j in 1..=k.saturating_sub(2) {
            if adjacent_lengths.contains(&j) {
                parts[j as usize].insert(edge.clone())?;
            }
        }
        if k >= 2 {
            let in_last = (1..r / 2).any(|h| {
                let len = ground
                    .arc_length(combo[(2 * h - 1) as usize], combo[(2 * h) as usize])
                    .expect("valid vertices");
                len == k - 1 || len == k
            });
            if in_last {
                parts[(k - 1) as usize].insert(edge)?;
            }
        }
    }
    Ok(parts)
}

/// The union `H(n, r, k)` of [`stack_free_parts`]: a geometric family with
/// no k-stack, hence no zigzag with `(k-1)r + 1` edges.
pub fn stack_free(n: u32, r: u32, k: u32) -> Result<Hypergraph> {
    let parts = stack_free_parts(n, r, k)?;
    let ground = parts[0].ground();
    let mut h = Hypergraph::empty(ground, r, true)?;
    for part in parts {
        for e in part.edges() {
            h.insert(e.clone())?;
        }
    }
    Ok(h)
}

/// The short-side family for odd `k >= 3`: all r-sets containing a pair at
/// arc length at most `k - 1`. Stack-free because the middle stack edge has
/// all pairwise arc lengths at least `k`.
pub fn short_side(n: u32, r: u32, k: u32) -> Result<Hypergraph> {
    require_even_r(r, "the short-side construction")?;
    if k % 2 == 0 || k < 3 {
        return Err(CghError::domain(
            "the short-side construction is defined for odd k >= 3",
        ));
    }
    if n < r {
        return Err(CghError::domain(format!(
            "ground of {n} points cannot host {r}-sets"
        )));
    }
    let ground = CyclicGround::new(n)?;
    let mut h = Hypergraph::empty(ground, r, true)?;
    for combo in ground.vertices().combinations(r as usize) {
        let close_pair = combo
            .iter()
            .tuple_combinations()
            .any(|(&u, &v)| ground.arc_length(u, v).expect("valid") < k);
        if close_pair {
            h.insert(Edge::new(combo)?)?;
        }
    }
    Ok(h)
}

/// A disjoint union of cliques of order `k` on consecutive arcs; when `k`
/// does not divide `n` the last clique is smaller. Contains no path with `k`
/// edges, hence no k-zigzag; meets the `(k-1)n/2` bound when `k | n`.
pub fn clique_union(n: u32, k: u32) -> Result<Hypergraph> {
    if k == 0 {
        return Err(CghError::domain("cliques need order at least 1"));
    }
    let ground = CyclicGround::new(n)?;
    let mut h = Hypergraph::empty(ground, 2, true)?;
    let mut block_start = 0;
    while block_start < n {
        let block_end = (block_start + k).min(n);
        for u in block_start..block_end {
            for v in u + 1..block_end {
                h.insert(Edge::new(vec![u, v])?)?;
            }
        }
        block_start = block_end;
    }
    Ok(h)
}

/// The transversal block construction: blocks `B_0, ..., B_{s-1}` of size
/// `n/s`, transversal prefixes `A_i` of size `a = (k-1)/r`, and
/// `G_i` = all r-sets with one vertex in `A_i`, one in `B_i \ A_i`, and two
/// in each other `B_j \ A_j`. The union is abstract, the `G_i` are pairwise
/// disjoint, and there is no tight k-path.
pub fn transversal_blocks(n: u32, r: u32, k: u32) -> Result<Hypergraph> {
    require_even_r(r, "the transversal block construction")?;
    let s = r / 2;
    if n % s != 0 {
        return Err(CghError::domain(format!(
            "block count s = {s} must divide n = {n}"
        )));
    }
    if k < 1 || (k - 1) % r != 0 {
        return Err(CghError::domain(format!(
            "uniformity r = {r} must divide k - 1 = {}",
            k as i64 - 1
        )));
    }
    let block_size = n / s;
    let a = (k - 1) / r;
    if a >= block_size {
        return Err(CghError::domain(format!(
            "transversal size a = {a} must be smaller than the block size {block_size}"
        )));
    }
    let ground = CyclicGround::new(n)?;
    let mut g = Hypergraph::empty(ground, r, false)?;
    let block = |i: u32| (i * block_size)..((i + 1) * block_size);
    for i in 0..s {
        let a_i: Vec<Vertex> = block(i).take(a as usize).collect();
        let rest_i: Vec<Vertex> = block(i).skip(a as usize).collect();
        let mut others: Vec<Vec<Vec<Vertex>>> = Vec::new();
        for j in 0..s {
            if j != i {
                let rest_j: Vec<Vertex> = block(j).skip(a as usize).collect();
                others.push(rest_j.into_iter().combinations(2).collect());
            }
        }
        for &x in &a_i {
            for &y in &rest_i {
                for choice in others.iter().multi_cartesian_product() {
                    let mut verts = vec![x, y];
                    for pair in &choice {
                        verts.extend_from_slice(pair);
                    }
                    g.insert(Edge::new(verts)?)?;
                }
                // multi_cartesian_product yields nothing for s = 1; the
                // r = 2 case has no other blocks to fill.
                if others.is_empty() {
                    g.insert(Edge::new(vec![x, y])?)?;
                }
            }
        }
    }
    Ok(g)
}

/// The lift `H⁺`: add `m` fresh vertices `X = {n, ..., n+m-1}` and take
/// `{ {x} ∪ e : x ∈ X, e ∈ H }` as an abstract `(r+1)`-graph. Satisfies
/// `|H⁺| = m|H|` and `|∂H⁺| = m|∂H| + |H|` exactly.
pub fn lift_plus(h: &Hypergraph, m: u32) -> Result<Hypergraph> {
    if m == 0 {
        return Err(CghError::domain("the lift needs at least one new vertex"));
    }
    let n = h.n();
    let ground = CyclicGround::new(n + m)?;
    let mut lifted = Hypergraph::empty(ground, h.r() + 1, false)?;
    for x in n..n + m {
        for e in h.edges() {
            lifted.insert(e.with(x)?)?;
        }
    }
    Ok(lifted)
}

/// The length budget `φ(ℓ) = ⌈(ℓ + r) / (r + 1)⌉`: a tight ℓ-path in the
/// lift uses at most `φ(ℓ)` new vertices, and deleting them leaves a tight
/// path of length at least `ℓ + 1 - φ(ℓ)` in the base.
pub fn phi(ell: u64, r: u64) -> u64 {
    debug_assert!(ell >= 1 && r >= 2);
    (ell + r).div_ceil(r + 1)
}
