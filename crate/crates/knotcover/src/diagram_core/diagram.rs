use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::DiagramError;

pub type Arc = u32;

/// A crossing slot: crossing index plus position 0..4 in counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub crossing: usize,
    pub pos: u8,
}

impl Slot {
    pub fn new(crossing: usize, pos: u8) -> Self {
        Self { crossing, pos: pos % 4 }
    }
}

/// Link diagram in PD form.
///
/// Each crossing lists four arc ids counterclockwise, starting at the incoming
/// under-strand: slots 0 and 2 carry the under-strand, slots 1 and 3 the over-strand.
/// `orientations`, when present, holds one sign per crossing: `+1` when the
/// over-strand runs from slot 3 to slot 1 (a positive crossing), `-1` when it runs
/// from slot 1 to slot 3. `free_loops` counts crossingless circles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarDiagram {
    pub crossings: Vec<[Arc; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientations: Option<Vec<i8>>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub free_loops: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub marked_faces: Vec<Vec<Arc>>,
}

fn is_zero(v: &u32) -> bool {
    *v == 0
}

/// One closed strand: the sequence of slots through which it enters crossings.
/// The strand leaves each crossing through the opposite slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub entries: Vec<Slot>,
}

impl Component {
    pub fn arcs(&self, d: &PlanarDiagram) -> Vec<Arc> {
        self.entries.iter().map(|s| d.arc_at(*s)).collect()
    }

    pub fn crossings(&self) -> BTreeSet<usize> {
        self.entries.iter().map(|s| s.crossing).collect()
    }
}

impl PlanarDiagram {
    pub fn new(crossings: Vec<[Arc; 4]>) -> Self {
        Self { crossings, orientations: None, free_loops: 0, marked_faces: Vec::new() }
    }

    pub fn unknot() -> Self {
        Self { crossings: Vec::new(), orientations: None, free_loops: 1, marked_faces: Vec::new() }
    }

    pub fn with_orientations(mut self, signs: Vec<i8>) -> Self {
        self.orientations = Some(signs);
        self
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_at(&self, s: Slot) -> Arc {
        self.crossings[s.crossing][s.pos as usize]
    }

    /// Map from arc id to the slots where it occurs.
    pub fn occurrences(&self) -> BTreeMap<Arc, Vec<Slot>> {
        let mut occ: BTreeMap<Arc, Vec<Slot>> = BTreeMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for (p, a) in x.iter().enumerate() {
                occ.entry(*a).or_default().push(Slot::new(c, p as u8));
            }
        }
        occ
    }

    /// Endpoint table: for each slot, the slot at the other end of its arc.
    /// Requires every arc to occur exactly twice.
    pub fn partner_table(&self) -> Result<Vec<[Slot; 4]>, DiagramError> {
        let occ = self.occurrences();
        let mut table = vec![[Slot::new(0, 0); 4]; self.crossings.len()];
        for (a, slots) in &occ {
            if slots.len() != 2 {
                return Err(DiagramError::Invalid(format!(
                    "arc multiplicity: arc {} occurs {} times",
                    a,
                    slots.len()
                )));
            }
            table[slots[0].crossing][slots[0].pos as usize] = slots[1];
            table[slots[1].crossing][slots[1].pos as usize] = slots[0];
        }
        Ok(table)
    }

    /// Closed strands of the crossing part, each traversed from its smallest
    /// arc id, entering the first crossing at the lowest slot carrying that arc.
    pub fn components(&self) -> Result<Vec<Component>, DiagramError> {
        let partner = self.partner_table()?;
        let occ = self.occurrences();
        let mut seen = vec![[false; 4]; self.crossings.len()];
        let mut comps = Vec::new();
        for slots in occ.values() {
            let start = slots[0];
            if seen[start.crossing][start.pos as usize] || seen[start.crossing][((start.pos + 2) % 4) as usize] {
                continue;
            }
            let mut entries = Vec::new();
            let mut cur = start;
            loop {
                seen[cur.crossing][cur.pos as usize] = true;
                let exit = Slot::new(cur.crossing, cur.pos + 2);
                seen[exit.crossing][exit.pos as usize] = true;
                entries.push(cur);
                cur = partner[exit.crossing][exit.pos as usize];
                if cur == start {
                    break;
                }
            }
            comps.push(Component { entries });
        }
        Ok(comps)
    }

    pub fn component_count(&self) -> Result<usize, DiagramError> {
        Ok(self.components()?.len() + self.free_loops as usize)
    }

    /// Entry slots implied by the orientation data: the under-strand enters at
    /// slot 0, the over-strand at slot 3 for sign `+1` and at slot 1 otherwise.
    pub fn entry_slots(&self, c: usize) -> Option<[u8; 2]> {
        let signs = self.orientations.as_ref()?;
        Some([0, if signs[c] > 0 { 3 } else { 1 }])
    }

    /// Checks that the orientation data traverses every arc in one direction.
    pub fn orientation_consistent(&self) -> Result<bool, DiagramError> {
        let Some(signs) = &self.orientations else {
            return Ok(true);
        };
        if signs.len() != self.crossings.len() || signs.iter().any(|s| *s != 1 && *s != -1) {
            return Ok(false);
        }
        let partner = self.partner_table()?;
        for c in 0..self.crossings.len() {
            for e in self.entry_slots(c).unwrap() {
                // the slot we arrive from must be an exit of its crossing
                let from = partner[c][e as usize];
                let from_entries = self.entry_slots(from.crossing).unwrap();
                if from_entries.contains(&from.pos) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Assigns orientation data by traversing each component in its default
    /// direction, reversed where `reverse[i]` is set. Crossings whose under-strand
    /// would enter at slot 2 are rotated by two slots so that slot 0 stays the
    /// incoming under-strand.
    pub fn oriented(&self, reverse: &[bool]) -> Result<PlanarDiagram, DiagramError> {
        let comps = self.components()?;
        if reverse.len() != comps.len() {
            return Err(DiagramError::Invalid(format!(
                "orientation: {} components but {} direction flags",
                comps.len(),
                reverse.len()
            )));
        }
        let mut entering: Vec<Vec<u8>> = vec![Vec::new(); self.crossings.len()];
        for (comp, rev) in comps.iter().zip(reverse) {
            for s in &comp.entries {
                let p = if *rev { (s.pos + 2) % 4 } else { s.pos };
                entering[s.crossing].push(p);
            }
        }
        let mut out = self.clone();
        let mut signs = Vec::with_capacity(self.crossings.len());
        for (c, ent) in entering.iter().enumerate() {
            let under = *ent.iter().find(|p| *p % 2 == 0).expect("each crossing has an under entry");
            let over = *ent.iter().find(|p| *p % 2 == 1).expect("each crossing has an over entry");
            let x = self.crossings[c];
            if under == 2 {
                out.crossings[c] = [x[2], x[3], x[0], x[1]];
            }
            let over_rel = (over + 4 - under) % 4;
            signs.push(if over_rel == 3 { 1 } else { -1 });
        }
        out.orientations = Some(signs);
        Ok(out)
    }

    /// Orientation read off a sequential labelling: along every component the
    /// arc ids increase by one, wrapping from the largest id to the smallest.
    pub fn with_sequential_orientation(&self) -> Result<PlanarDiagram, DiagramError> {
        let comps = self.components()?;
        let mut reverse = Vec::new();
        for comp in &comps {
            let arcs = comp.arcs(self);
            let lo = *arcs.iter().min().unwrap();
            let hi = *arcs.iter().max().unwrap();
            let succ = |a: Arc| if a == hi { lo } else { a + 1 };
            let n = arcs.len();
            let fwd = (0..n).all(|i| arcs[(i + 1) % n] == succ(arcs[i]));
            let bwd = (0..n).all(|i| arcs[i] == succ(arcs[(i + 1) % n]));
            match (fwd, bwd) {
                (true, _) => reverse.push(false),
                (false, true) => reverse.push(true),
                _ => {
                    return Err(DiagramError::Invalid(
                        "labels are not sequential along a component".into(),
                    ))
                }
            }
        }
        self.oriented(&reverse)
    }

    /// Crossing signs; requires orientation data.
    pub fn signs(&self) -> Result<Vec<i8>, DiagramError> {
        self.orientations.clone().ok_or(DiagramError::MissingOrientation)
    }

    pub fn writhe(&self) -> Result<i64, DiagramError> {
        Ok(self.signs()?.iter().map(|s| *s as i64).sum())
    }

    /// Relabels arcs 1..2n following component traversals, keeping geometry and
    /// orientation data.
    pub fn relabeled(&self) -> Result<PlanarDiagram, DiagramError> {
        let comps = self.components()?;
        let mut map = BTreeMap::new();
        let mut next = 1;
        for comp in &comps {
            for s in &comp.entries {
                let a = self.arc_at(*s);
                map.entry(a).or_insert_with(|| {
                    let v = next;
                    next += 1;
                    v
                });
            }
        }
        let mut out = self.clone();
        for x in &mut out.crossings {
            for a in x.iter_mut() {
                *a = map[a];
            }
        }
        for f in &mut out.marked_faces {
            for a in f.iter_mut() {
                if let Some(v) = map.get(a) {
                    *a = *v;
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, DiagramError> {
        serde_json::from_str(s).map_err(|e| DiagramError::Parse(e.to_string()))
    }
}
