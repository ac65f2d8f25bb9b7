//! Hom and Ext dimensions between indecomposables, computed by knitting the
//! mesh recursion away from a source vertex.
//!
//! The knitting rule: the source carries 1, everything at or below the
//! source's level carries 0, and above it
//!
//! ```text
//! h(z) = max(0, sum over mesh predecessors of z - h(translate(z, 1)))
//! ```
//!
//! with the clipped value feeding subsequent meshes. First extension groups
//! come for free through the translation: `ext1(x, y) = hom(y, translate(x, 1))`,
//! so no shift functor is ever computed.

use std::collections::BTreeMap;

use crate::error::{Error, GridKind, Result};
use crate::quiver::{Repetition, Vertex};

/// The Hom functor from a fixed source, knitted over a bounded level window
/// and memoized per target. Values outside the window were never computed;
/// query within it.
#[derive(Debug, Clone)]
pub struct Hammock {
    source: Vertex,
    p_hi: i64,
    dims: BTreeMap<Vertex, i64>,
}

impl Hammock {
    /// Knit from `source` up to level `p_hi` inclusive.
    pub fn knit(rep: &Repetition, source: Vertex, p_hi: i64) -> Result<Hammock> {
        if !rep.on_y_grid(source) {
            return Err(Error::WrongGrid {
                i: source.i,
                p: source.p,
                expected: GridKind::Y,
            });
        }
        let mut dims = BTreeMap::new();
        dims.insert(source, 1);
        for level in source.p + 1..=p_hi {
            for i in 1..=rep.rank() {
                let z = Vertex::new(i, level);
                if !rep.on_y_grid(z) {
                    continue;
                }
                let mut value: i64 = 0;
                for w in rep.mesh_predecessors(z) {
                    value += dims.get(&w).copied().unwrap_or(0);
                }
                value -= dims.get(&z.translate(1)).copied().unwrap_or(0);
                if value > 0 {
                    dims.insert(z, value);
                }
            }
        }
        Ok(Hammock { source, p_hi, dims })
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn window_top(&self) -> i64 {
        self.p_hi
    }

    pub fn dim(&self, target: Vertex) -> i64 {
        self.dims.get(&target).copied().unwrap_or(0)
    }

    /// Supported entries `(vertex, dim)` in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (Vertex, i64)> + '_ {
        self.dims.iter().map(|(&v, &d)| (v, d))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "source": [self.source.i, self.source.p],
            "window_top": self.p_hi,
            "dims": self.entries().map(|(v, d)| serde_json::json!([v.i, v.p, d])).collect::<Vec<_>>(),
        })
    }
}

/// Dimension of the morphism space from `x` to `y`. Sentinel endpoints give 0.
pub fn hom_dim(rep: &Repetition, x: Vertex, y: Vertex) -> Result<i64> {
    if rep.is_sentinel(x.i) || rep.is_sentinel(y.i) {
        return Ok(0);
    }
    for v in [x, y] {
        if !rep.on_y_grid(v) {
            return Err(Error::WrongGrid {
                i: v.i,
                p: v.p,
                expected: GridKind::Y,
            });
        }
    }
    if y.p < x.p {
        return Ok(0);
    }
    Ok(Hammock::knit(rep, x, y.p)?.dim(y))
}

/// Dimension of the first extension group of `x` by `y`, computed as
/// `hom_dim(y, translate(x, 1))`.
pub fn ext1_dim(rep: &Repetition, x: Vertex, y: Vertex) -> Result<i64> {
    if rep.is_sentinel(x.i) || rep.is_sentinel(y.i) {
        return Ok(0);
    }
    hom_dim(rep, y, x.translate(1))
}
