use serde::{Deserialize, Serialize};

use super::tangle::TangleDiagram;
use super::QuotientError;
use crate::diagram_core::{
    face_by_arcs, face_distance, face_of, faces, find_nugatory, isomorphisms, validate, Arc, Corner, FaceMark, LayerBuilder, PlanarDiagram,
};

/// A tangle of size `k` closed by `k` arcs running around a marked axis face.
///
/// Both special faces are stored as arc cycles in face-walk order. A
/// crossingless closure (a single circle) stores empty cycles: its two faces are
/// the two sides of the circle, the axis on one and infinity on the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisClosureDiagram {
    #[serde(flatten)]
    pub diagram: PlanarDiagram,
    pub axis_face: Vec<Arc>,
    pub infinity_face: Vec<Arc>,
    pub k: usize,
}

impl AxisClosureDiagram {
    /// Closure of `copies` stacked copies of `t`.
    pub(crate) fn close(t: &TangleDiagram, copies: usize) -> Result<Self, QuotientError> {
        t.check()?;
        let k = t.k;
        let mut b = LayerBuilder::new();
        for i in 0..k {
            b.cap(i);
        }
        let axis = b.mark_gap(k - 1);
        // the region left of strand 0 is the outside of the picture
        let outer = b.mark_gap_left_of(0);
        for _ in 0..copies {
            t.apply(&mut b);
        }
        for j in 0..k {
            b.cup(k - 1 - j);
        }
        let (d, marks) = b.finish()?;
        let axis = marks[axis].map(FaceMark::Corner).unwrap_or(FaceMark::LoopSide(0));
        let outer = marks[outer].map(FaceMark::Corner).unwrap_or(FaceMark::LoopSide(1));
        Self::from_marks(d, axis, outer, k)
    }

    pub fn from_marks(diagram: PlanarDiagram, axis: FaceMark, infinity: FaceMark, k: usize) -> Result<Self, QuotientError> {
        let cycle = |m: FaceMark| -> Result<Vec<Arc>, QuotientError> {
            match m {
                FaceMark::Corner(c) => {
                    let fs = faces(&diagram)?;
                    let f = face_of(&fs, c).ok_or_else(|| QuotientError::Malformed("marked corner is not in the diagram".into()))?;
                    Ok(fs[f].arcs.clone())
                }
                FaceMark::LoopSide(_) => Ok(Vec::new()),
            }
        };
        let out = Self { axis_face: cycle(axis)?, infinity_face: cycle(infinity)?, diagram, k };
        Ok(out)
    }

    /// Corner identifying the axis face, or `None` for a crossingless closure.
    pub fn axis_corner(&self) -> Result<Option<Corner>, QuotientError> {
        self.corner_of(&self.axis_face)
    }

    pub fn infinity_corner(&self) -> Result<Option<Corner>, QuotientError> {
        self.corner_of(&self.infinity_face)
    }

    fn corner_of(&self, cycle: &[Arc]) -> Result<Option<Corner>, QuotientError> {
        if self.diagram.crossings.is_empty() {
            return Ok(None);
        }
        let fs = faces(&self.diagram)?;
        let f = face_by_arcs(&fs, cycle).ok_or_else(|| QuotientError::Malformed(format!("{:?} is not a face", cycle)))?;
        Ok(Some(fs[f].id()))
    }

    /// Face markers usable with tracked moves.
    pub fn marks(&self) -> Result<(FaceMark, FaceMark), QuotientError> {
        let a = self.axis_corner()?.map(FaceMark::Corner).unwrap_or(FaceMark::LoopSide(0));
        let i = self.infinity_corner()?.map(FaceMark::Corner).unwrap_or(FaceMark::LoopSide(1));
        Ok((a, i))
    }

    /// Least number of arcs separating the axis from infinity.
    pub fn separation(&self) -> Result<usize, QuotientError> {
        match (self.axis_corner()?, self.infinity_corner()?) {
            (Some(a), Some(i)) => {
                let fs = faces(&self.diagram)?;
                Ok(face_distance(&self.diagram, &fs, face_of(&fs, a).unwrap(), face_of(&fs, i).unwrap())?)
            }
            _ => Ok(1),
        }
    }

    /// Structural checks: valid diagram, a single knot component, two distinct
    /// marked faces separated by `k` arcs.
    pub fn check(&self) -> Result<(), QuotientError> {
        let r = validate(&self.diagram);
        if !r.passed() {
            let f = r.failures().into_iter().map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>();
            return Err(QuotientError::Malformed(f.join("; ")));
        }
        if self.diagram.component_count()? != 1 {
            return Err(QuotientError::Malformed("the quotient knot must have one component".into()));
        }
        if !self.diagram.crossings.is_empty() {
            let a = self.axis_corner()?.unwrap();
            let i = self.infinity_corner()?.unwrap();
            let fs = faces(&self.diagram)?;
            if face_of(&fs, a) == face_of(&fs, i) {
                return Err(QuotientError::Malformed("axis and infinity are the same face".into()));
            }
        }
        let s = self.separation()?;
        if s != self.k {
            return Err(QuotientError::Malformed(format!("k = {} but the axis is {} arcs from infinity", self.k, s)));
        }
        Ok(())
    }

    /// Isomorphism of the underlying diagrams taking axis to axis and infinity
    /// to infinity.
    pub fn is_isomorphic(&self, other: &AxisClosureDiagram) -> Result<bool, QuotientError> {
        if self.diagram.crossings.is_empty() || other.diagram.crossings.is_empty() {
            return Ok(self.diagram.crossings.len() == other.diagram.crossings.len()
                && self.diagram.free_loops == other.diagram.free_loops);
        }
        let (fa, fb) = (faces(&self.diagram)?, faces(&other.diagram)?);
        let face = |fs: &[crate::diagram_core::Face], c: Option<Corner>| c.and_then(|c| face_of(fs, c));
        let (a0, i0) = (face(&fa, self.axis_corner()?), face(&fa, self.infinity_corner()?));
        let (a1, i1) = (face(&fb, other.axis_corner()?), face(&fb, other.infinity_corner()?));
        Ok(isomorphisms(&self.diagram, &other.diagram, false).iter().any(|g| {
            face(&fb, Some(g.map_corner(fa[a0.unwrap()].id()))) == a1
                && face(&fb, Some(g.map_corner(fa[i0.unwrap()].id()))) == i1
        }))
    }

    /// True when the axis and infinity each lie in a one-sided loop at a
    /// nugatory crossing, or the diagram has no crossing.
    pub fn end_loops_nugatory(&self) -> Result<bool, QuotientError> {
        if self.diagram.crossings.is_empty() {
            return Ok(true);
        }
        let fs = faces(&self.diagram)?;
        let nug = find_nugatory(&self.diagram)?;
        let ok = |c: Option<Corner>| {
            c.and_then(|c| face_of(&fs, c)).is_some_and(|f| fs[f].corners.len() == 1 && nug.contains(&fs[f].corners[0].crossing))
        };
        Ok(ok(self.axis_corner()?) && ok(self.infinity_corner()?))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("closure serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, QuotientError> {
        serde_json::from_str(s).map_err(|e| QuotientError::Malformed(e.to_string()))
    }
}
