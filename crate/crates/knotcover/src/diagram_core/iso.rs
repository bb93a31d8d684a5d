use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::diagram::{PlanarDiagram, Slot};
use super::faces::Corner;

/// Combinatorial isomorphism between two diagrams: crossing `c` of the source
/// goes to `crossings[c]`, with its slots rotated by `rotation[c]` (0 or 2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isomorphism {
    pub crossings: Vec<usize>,
    pub rotation: Vec<u8>,
}

impl Isomorphism {
    pub fn map_slot(&self, s: Slot) -> Slot {
        Slot::new(self.crossings[s.crossing], s.pos + self.rotation[s.crossing])
    }

    pub fn map_corner(&self, c: Corner) -> Corner {
        self.map_slot(c)
    }

    pub fn is_identity(&self) -> bool {
        self.crossings.iter().enumerate().all(|(i, c)| *c == i) && self.rotation.iter().all(|r| *r == 0)
    }
}

/// All isomorphisms of the projection graphs that preserve the cyclic order at
/// every crossing (an orientation preserving homeomorphism of the sphere) and the
/// over/under data. With `oriented`, strand directions must be preserved too.
///
/// Only diagrams whose projection is connected are handled; for a split
/// projection the result is empty.
pub fn isomorphisms(a: &PlanarDiagram, b: &PlanarDiagram, oriented: bool) -> Vec<Isomorphism> {
    let n = a.crossings.len();
    if n != b.crossings.len() || a.free_loops != b.free_loops {
        return Vec::new();
    }
    if n == 0 {
        return vec![Isomorphism { crossings: Vec::new(), rotation: Vec::new() }];
    }
    let (Ok(pa), Ok(pb)) = (a.partner_table(), b.partner_table()) else {
        return Vec::new();
    };
    if oriented && (a.orientations.is_none() || b.orientations.is_none()) {
        return Vec::new();
    }
    let rotations: &[u8] = if oriented { &[0] } else { &[0, 2] };
    let mut out = Vec::new();
    for target in 0..n {
        for &r in rotations {
            if let Some(iso) = extend(a, b, &pa, &pb, target, r, oriented) {
                out.push(iso);
            }
        }
    }
    out
}

pub fn find_isomorphism(a: &PlanarDiagram, b: &PlanarDiagram, oriented: bool) -> Option<Isomorphism> {
    isomorphisms(a, b, oriented).into_iter().next()
}

fn extend(
    a: &PlanarDiagram,
    b: &PlanarDiagram,
    pa: &[[Slot; 4]],
    pb: &[[Slot; 4]],
    target: usize,
    r: u8,
    oriented: bool,
) -> Option<Isomorphism> {
    let n = a.crossings.len();
    let mut map = vec![usize::MAX; n];
    let mut rot = vec![0u8; n];
    let mut used = vec![false; n];
    map[0] = target;
    rot[0] = r;
    used[target] = true;
    let mut q = VecDeque::from([0usize]);
    while let Some(c) = q.pop_front() {
        if oriented && a.orientations.as_ref()?[c] != b.orientations.as_ref()?[map[c]] {
            return None;
        }
        for p in 0..4u8 {
            let sa = pa[c][p as usize];
            let img = Slot::new(map[c], p + rot[c]);
            let sb = pb[img.crossing][img.pos as usize];
            let need = (sb.pos + 4 - sa.pos) % 4;
            if !need.is_multiple_of(2) || (oriented && need != 0) {
                return None;
            }
            if map[sa.crossing] == usize::MAX {
                if used[sb.crossing] {
                    return None;
                }
                map[sa.crossing] = sb.crossing;
                rot[sa.crossing] = need;
                used[sb.crossing] = true;
                q.push_back(sa.crossing);
            } else if map[sa.crossing] != sb.crossing || rot[sa.crossing] != need {
                return None;
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    Some(Isomorphism { crossings: map, rotation: rot })
}

/// Reflection of the diagram in a line of the projection plane: cyclic orders
/// reverse, over/under data is kept, crossing signs flip. The result presents
/// the mirror image.
pub fn mirror_image(d: &PlanarDiagram) -> PlanarDiagram {
    let mut out = d.clone();
    for x in &mut out.crossings {
        *x = [x[0], x[3], x[2], x[1]];
    }
    if let Some(s) = &mut out.orientations {
        for v in s.iter_mut() {
            *v = -*v;
        }
    }
    for f in &mut out.marked_faces {
        f.reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_core::bracket::kauffman_bracket;
    use crate::diagram_core::examples;

    fn shuffled(d: &PlanarDiagram) -> PlanarDiagram {
        let mut c = d.crossings.clone();
        c.rotate_left(1);
        let x = c[0];
        c[0] = [x[2], x[3], x[0], x[1]];
        PlanarDiagram::new(c.into_iter().map(|x| x.map(|a| a + 100)).collect())
    }

    #[test]
    fn relabelled_trefoil_is_isomorphic() {
        let t = examples::trefoil();
        assert!(find_isomorphism(&t, &shuffled(&t), false).is_some());
        // three rotations times two directions
        assert_eq!(isomorphisms(&t, &t, false).len(), 6);
    }

    #[test]
    fn trefoil_is_not_isomorphic_to_its_mirror() {
        let t = examples::trefoil();
        let m = mirror_image(&t);
        assert!(find_isomorphism(&t, &m, false).is_none());
        assert_eq!(kauffman_bracket(&m).unwrap(), kauffman_bracket(&t).unwrap().mirror());
    }

    #[test]
    fn figure_eight_is_not_a_trefoil() {
        assert!(find_isomorphism(&examples::trefoil(), &examples::figure_eight(), false).is_none());
    }
}
