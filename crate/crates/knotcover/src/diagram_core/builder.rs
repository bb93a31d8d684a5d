use std::collections::BTreeMap;

use super::diagram::{Arc, PlanarDiagram, Slot};
use super::faces::Corner;
use super::DiagramError;

/// Ports of a layered crossing, counterclockwise from the lower left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Port {
    SW,
    SE,
    NE,
    NW,
}

const PORTS: [Port; 4] = [Port::SW, Port::SE, Port::NE, Port::NW];

#[derive(Clone, Copy, Debug)]
enum End {
    Cross(usize, Port),
    /// leg of a cap or cup, joined to the other leg's segment
    Turn(u32),
    Open,
}

#[derive(Clone, Debug)]
struct Segment {
    top: End,
    bottom: End,
}

#[derive(Clone, Debug)]
struct Layered {
    ports: [u32; 4],
    over_nw_se: bool,
}

/// Builds diagrams layer by layer, top to bottom, from caps, cups and crossings
/// between adjacent strand positions, like a plat or tangle picture.
#[derive(Clone, Debug, Default)]
pub struct LayerBuilder {
    pos: Vec<u32>,
    segs: Vec<Segment>,
    crossings: Vec<Layered>,
    marks: Vec<u32>,
}

impl LayerBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of strand positions at the current level.
    pub fn width(&self) -> usize {
        self.pos.len()
    }

    fn segment(&mut self, top: End) -> u32 {
        self.segs.push(Segment { top, bottom: End::Open });
        (self.segs.len() - 1) as u32
    }

    /// Opens a cap at positions `i, i + 1`.
    pub fn cap(&mut self, i: usize) {
        let l = self.segment(End::Open);
        let r = self.segment(End::Turn(l));
        self.segs[l as usize].top = End::Turn(r);
        self.pos.splice(i..i, [l, r]);
    }

    /// Closes positions `i, i + 1` with a cup.
    pub fn cup(&mut self, i: usize) {
        let (l, r) = (self.pos[i], self.pos[i + 1]);
        self.segs[l as usize].bottom = End::Turn(r);
        self.segs[r as usize].bottom = End::Turn(l);
        self.pos.drain(i..i + 2);
    }

    /// Crossing between positions `i, i + 1`; with `over_left` the strand coming
    /// from the upper left passes over.
    pub fn cross(&mut self, i: usize, over_left: bool) {
        let (a, b) = (self.pos[i], self.pos[i + 1]);
        let x = self.crossings.len();
        self.segs[a as usize].bottom = End::Cross(x, Port::NW);
        self.segs[b as usize].bottom = End::Cross(x, Port::NE);
        let c = self.segment(End::Cross(x, Port::SW));
        let d = self.segment(End::Cross(x, Port::SE));
        self.crossings.push(Layered { ports: [c, d, b, a], over_nw_se: over_left });
        self.pos[i] = c;
        self.pos[i + 1] = d;
    }

    /// `|e|` crossings between positions `i, i + 1`, upper-left strand over when `e > 0`.
    pub fn sigma(&mut self, i: usize, e: i64) {
        for _ in 0..e.unsigned_abs() {
            self.cross(i, e > 0);
        }
    }

    /// Horizontal twist of `c` crossings joining the strands at `i` and `i + 1`
    /// to two new strands below them.
    pub fn hbox(&mut self, i: usize, c: u32, sign: i8) {
        self.cap(i + 2);
        for _ in 0..c {
            self.cross(i + 1, sign > 0);
        }
        self.cup(i);
    }

    /// Marks the region between positions `p` and `p + 1` at the current level.
    /// Returns the mark index for [`LayerBuilder::finish`].
    pub fn mark_gap(&mut self, p: usize) -> usize {
        self.mark_gap_left_of(p + 1)
    }

    /// Marks the region immediately left of the strand at position `q`.
    pub fn mark_gap_left_of(&mut self, q: usize) -> usize {
        self.marks.push(self.pos[q]);
        self.marks.len() - 1
    }

    fn slot_of(&self, x: usize, port: Port) -> u8 {
        let l = &self.crossings[x];
        let start = if l.over_nw_se { Port::NE } else { Port::NW };
        let s = PORTS.iter().position(|p| *p == start).unwrap();
        let q = PORTS.iter().position(|p| *p == port).unwrap();
        ((q + 4 - s) % 4) as u8
    }

    /// Walks up from a segment keeping the marked region on the left until a
    /// crossing is reached; the region is then the corner before the arrival slot.
    fn resolve(&self, seg: u32) -> Option<Corner> {
        let mut cur = seg;
        let mut up = true;
        for _ in 0..=2 * self.segs.len() {
            let s = &self.segs[cur as usize];
            let end = if up { s.top } else { s.bottom };
            match end {
                End::Cross(x, port) => return Some(Slot::new(x, self.slot_of(x, port) + 3)),
                End::Turn(other) => {
                    cur = other;
                    up = !up;
                }
                End::Open => return None,
            }
        }
        None
    }

    /// Finishes the diagram. Positions must all be closed. Arcs are relabelled
    /// 1..2n along components; marks resolve to corners (or `None` when the
    /// marked region touches no crossing).
    pub fn finish(&self) -> Result<(PlanarDiagram, Vec<Option<Corner>>), DiagramError> {
        if !self.pos.is_empty() {
            return Err(DiagramError::Invalid(format!("{} open strand positions", self.pos.len())));
        }
        // union segments joined by caps and cups
        let mut parent: Vec<u32> = (0..self.segs.len() as u32).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        for (i, s) in self.segs.iter().enumerate() {
            for e in [s.top, s.bottom] {
                if let End::Turn(o) = e {
                    let (a, b) = (find(&mut parent, i as u32), find(&mut parent, o));
                    if a != b {
                        parent[a as usize] = b;
                    }
                }
            }
        }
        let mut roots_with_crossing = BTreeMap::new();
        let mut crossings = Vec::with_capacity(self.crossings.len());
        for (x, l) in self.crossings.iter().enumerate() {
            let mut pd = [0 as Arc; 4];
            for (k, port) in PORTS.iter().enumerate() {
                let slot = self.slot_of(x, *port);
                let r = find(&mut parent, l.ports[k]);
                roots_with_crossing.insert(r, ());
                pd[slot as usize] = r + 1;
            }
            crossings.push(pd);
        }
        let mut roots = BTreeMap::new();
        for i in 0..self.segs.len() as u32 {
            roots.insert(find(&mut parent, i), ());
        }
        let free_loops = roots.keys().filter(|r| !roots_with_crossing.contains_key(*r)).count() as u32;
        let mut d = PlanarDiagram::new(crossings);
        d.free_loops = free_loops;
        let d = if d.crossings.is_empty() { d } else { d.relabeled()? };
        let marks = self.marks.iter().map(|m| self.resolve(*m)).collect();
        Ok((d, marks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_core::bracket::jones;
    use crate::diagram_core::examples;
    use crate::diagram_core::faces::{face_of, faces};
    use crate::diagram_core::iso::find_isomorphism;
    use crate::diagram_core::validate::validate;

    fn plat(word: &[(usize, i64)]) -> PlanarDiagram {
        let mut b = LayerBuilder::new();
        b.cap(0);
        b.cap(2);
        for (i, e) in word {
            b.sigma(i - 1, *e);
        }
        b.cup(0);
        b.cup(0);
        b.finish().unwrap().0
    }

    #[test]
    fn plat_sigma2_squared_is_hopf() {
        let d = plat(&[(2, 2)]);
        assert!(validate(&d).passed());
        assert_eq!(d.components().unwrap().len(), 2);
        assert!(find_isomorphism(&d, &examples::hopf(), false).is_some());
    }

    #[test]
    fn plat_of_three_twists_is_a_trefoil() {
        let d = plat(&[(2, 3)]);
        assert!(validate(&d).passed());
        let o = d.oriented(&[false]).unwrap();
        let j = jones(&o).unwrap();
        let t = jones(&examples::trefoil().with_sequential_orientation().unwrap()).unwrap();
        assert!(j == t || j == t.mirror());
    }

    #[test]
    fn cap_cup_is_a_free_loop() {
        let mut b = LayerBuilder::new();
        b.cap(0);
        b.cup(0);
        let (d, _) = b.finish().unwrap();
        assert_eq!(d, PlanarDiagram::unknot());
    }

    #[test]
    fn marks_resolve_to_faces() {
        let mut b = LayerBuilder::new();
        b.cap(0);
        b.cross(0, true);
        let inner = b.mark_gap(0);
        b.cross(0, true);
        b.cup(0);
        let (d, marks) = b.finish().unwrap();
        let fs = faces(&d).unwrap();
        let f = face_of(&fs, marks[inner].unwrap()).unwrap();
        assert_eq!(fs[f].corners.len(), 2);
    }
}
