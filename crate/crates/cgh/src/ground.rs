//! The cyclic ground set: `n` points in convex position.
//!
//! Vertices are the ranks `0..n` taken clockwise around a circle. No planar
//! coordinates are stored; every geometric notion in this crate reduces to
//! the cyclic order.

use serde::{Deserialize, Serialize};

use crate::error::{CghError, Result};

/// A vertex id, a rank in `0..n` on the circle.
pub type Vertex = u32;

/// The point set `Ω_n`: vertices `0..n` in clockwise cyclic order.
///
/// The cyclic successor of `n - 1` is `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CyclicGround {
    n: u32,
}

impl CyclicGround {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(CghError::domain("ground set needs at least one point"));
        }
        Ok(CyclicGround { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(CghError::InvalidVertex { vertex: v, n: self.n })
        }
    }

    /// Clockwise successor.
    pub fn successor(&self, v: Vertex) -> Vertex {
        debug_assert!(v < self.n);
        if v + 1 == self.n {
            0
        } else {
            v + 1
        }
    }

    /// Number of clockwise steps from `u` to `v`.
    pub fn steps(&self, u: Vertex, v: Vertex) -> Result<u32> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok((v + self.n - u) % self.n)
    }

    /// The segment `[u, v]`: the clockwise walk from `u` to `v`, both
    /// endpoints included. `[u, u]` is the single point `u`.
    pub fn segment(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
        let steps = self.steps(u, v)?;
        let mut walk = Vec::with_capacity(steps as usize + 1);
        let mut w = u;
        for _ in 0..=steps {
            walk.push(w);
            w = self.successor(w);
        }
        Ok(walk)
    }

    /// `|[u, v]|` without materializing the walk.
    pub fn segment_len(&self, u: Vertex, v: Vertex) -> Result<u32> {
        Ok(self.steps(u, v)? + 1)
    }

    /// The arc length `ℓ(u, v)`: the number of sides of the shorter of the
    /// two segments between `u` and `v`. Symmetric, `0` iff `u = v`, and at
    /// most `⌊n/2⌋`.
    pub fn arc_length(&self, u: Vertex, v: Vertex) -> Result<u32> {
        let d = self.steps(u, v)?;
        Ok(d.min(self.n - d))
    }
}
