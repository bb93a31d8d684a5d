use serde::{Deserialize, Serialize};

use super::closure::AxisClosureDiagram;
use super::QuotientError;
use crate::diagram_core::LayerBuilder;

/// One layer of a tangle picture, acting on strand positions counted from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TangleOp {
    /// Crossing between positions `at` and `at + 1`; `over_left` puts the strand
    /// from the upper left on top.
    Cross { at: usize, over_left: bool },
    /// New strand pair opened at positions `at, at + 1`.
    Cap { at: usize },
    /// Positions `at, at + 1` joined and closed.
    Cup { at: usize },
}

/// A tangle with `k` endpoints on top and `k` on the bottom, given as a
/// sequence of layers read top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleDiagram {
    pub k: usize,
    pub ops: Vec<TangleOp>,
}

impl TangleDiagram {
    pub fn new(k: usize, ops: Vec<TangleOp>) -> Result<Self, QuotientError> {
        let t = Self { k, ops };
        t.check()?;
        Ok(t)
    }

    /// `k` parallel strands.
    pub fn trivial(k: usize) -> Self {
        Self { k, ops: Vec::new() }
    }

    /// Checks that every layer acts on existing positions and the width returns to `k`.
    pub fn check(&self) -> Result<(), QuotientError> {
        if self.k == 0 {
            return Err(QuotientError::Malformed("tangle needs at least one strand".into()));
        }
        let mut w = self.k;
        for (i, op) in self.ops.iter().enumerate() {
            let ok = match *op {
                TangleOp::Cross { at, .. } => at + 1 < w,
                TangleOp::Cap { at } => {
                    let ok = at <= w;
                    w += 2;
                    ok
                }
                TangleOp::Cup { at } => {
                    let ok = at + 1 < w && w >= 2;
                    w = w.saturating_sub(2);
                    ok
                }
            };
            if !ok {
                return Err(QuotientError::Malformed(format!("layer {} acts outside the strand positions", i)));
            }
        }
        if w != self.k {
            return Err(QuotientError::Malformed(format!("tangle ends with {} strands instead of {}", w, self.k)));
        }
        Ok(())
    }

    pub fn crossing_count(&self) -> usize {
        self.ops.iter().filter(|o| matches!(o, TangleOp::Cross { .. })).count()
    }

    pub(crate) fn apply(&self, b: &mut LayerBuilder) {
        for op in &self.ops {
            match *op {
                TangleOp::Cross { at, over_left } => b.cross(at, over_left),
                TangleOp::Cap { at } => b.cap(at),
                TangleOp::Cup { at } => b.cup(at),
            }
        }
    }

    /// Stacks `self` above `other`.
    pub fn then(&self, other: &TangleDiagram) -> Result<TangleDiagram, QuotientError> {
        if self.k != other.k {
            return Err(QuotientError::Malformed("stacked tangles differ in size".into()));
        }
        let mut ops = self.ops.clone();
        ops.extend(other.ops.iter().copied());
        Ok(TangleDiagram { k: self.k, ops })
    }

    /// Closure of the tangle by `k` arcs around the axis.
    pub fn closure(&self) -> Result<AxisClosureDiagram, QuotientError> {
        AxisClosureDiagram::close(self, 1)
    }
}
