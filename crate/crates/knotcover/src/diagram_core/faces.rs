use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::diagram::{Arc, PlanarDiagram, Slot};
use super::DiagramError;

/// A corner `(c, i)` is the sector of crossing `c` between slots `i` and `i + 1`.
pub type Corner = Slot;

/// A face of the diagram, listed by the corners met while walking its boundary
/// with the face on the left; the walk starts at the smallest corner, which is
/// the face's canonical identifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub corners: Vec<Corner>,
    pub arcs: Vec<Arc>,
}

impl Face {
    pub fn id(&self) -> Corner {
        self.corners[0]
    }

    pub fn touches(&self, crossing: usize) -> bool {
        self.corners.iter().any(|c| c.crossing == crossing)
    }
}

/// Faces of the crossing part, in order of their identifiers.
///
/// Leaving crossing `c` along slot `i` keeps corner `(c, i)` on the left; arriving
/// at slot `j` of the next crossing, the face continues in corner `(c', j - 1)`.
pub fn faces(d: &PlanarDiagram) -> Result<Vec<Face>, DiagramError> {
    let partner = d.partner_table()?;
    let n = d.crossings.len();
    let mut seen = vec![[false; 4]; n];
    let mut out = Vec::new();
    for c in 0..n {
        for i in 0..4u8 {
            if seen[c][i as usize] {
                continue;
            }
            let mut corners = Vec::new();
            let mut arcs = Vec::new();
            let mut cur = Slot::new(c, i);
            while !seen[cur.crossing][cur.pos as usize] {
                seen[cur.crossing][cur.pos as usize] = true;
                corners.push(cur);
                arcs.push(d.arc_at(cur));
                let arrive = partner[cur.crossing][cur.pos as usize];
                cur = Slot::new(arrive.crossing, arrive.pos + 3);
            }
            out.push(Face { corners, arcs });
        }
    }
    Ok(out)
}

/// Index of the face containing a corner.
pub fn face_of(faces: &[Face], corner: Corner) -> Option<usize> {
    faces.iter().position(|f| f.corners.contains(&corner))
}

/// Resolves an arc cycle (as produced in `Face::arcs`) to a face index, up to
/// cyclic rotation.
pub fn face_by_arcs(faces: &[Face], cycle: &[Arc]) -> Option<usize> {
    faces.iter().position(|f| {
        f.arcs.len() == cycle.len()
            && (0..cycle.len()).any(|r| (0..cycle.len()).all(|i| f.arcs[(i + r) % cycle.len()] == cycle[i]))
    })
}

/// Dual-graph distance between two faces: the least number of arcs a path in
/// the projection sphere must cross to get from one face to the other.
pub fn face_distance(d: &PlanarDiagram, faces: &[Face], from: usize, to: usize) -> Result<usize, DiagramError> {
    let partner = d.partner_table()?;
    let mut corner_face = vec![[0usize; 4]; d.crossings.len()];
    for (fi, f) in faces.iter().enumerate() {
        for c in &f.corners {
            corner_face[c.crossing][c.pos as usize] = fi;
        }
    }
    let mut dist = vec![usize::MAX; faces.len()];
    dist[from] = 0;
    let mut q = VecDeque::from([from]);
    while let Some(f) = q.pop_front() {
        for c in &faces[f].corners {
            // the arc leaving slot c.pos separates this face from the corner on its other side
            let p = partner[c.crossing][c.pos as usize];
            let other = corner_face[p.crossing][p.pos as usize];
            if dist[other] == usize::MAX {
                dist[other] = dist[f] + 1;
                q.push_back(other);
            }
        }
    }
    Ok(dist[to])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_core::examples;

    #[test]
    fn trefoil_has_five_faces() {
        let f = faces(&examples::trefoil()).unwrap();
        assert_eq!(f.len(), 5);
        let sizes: Vec<usize> = f.iter().map(|f| f.corners.len()).collect();
        assert_eq!(sizes.iter().filter(|s| **s == 2).count(), 3);
        assert_eq!(sizes.iter().filter(|s| **s == 3).count(), 2);
    }

    #[test]
    fn kink_faces() {
        let f = faces(&examples::kink_positive()).unwrap();
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn arc_cycle_lookup() {
        let t = examples::trefoil();
        let f = faces(&t).unwrap();
        for (i, face) in f.iter().enumerate() {
            let mut rotated = face.arcs.clone();
            rotated.rotate_left(1);
            assert_eq!(face_by_arcs(&f, &rotated), Some(i));
        }
    }

    #[test]
    fn trefoil_triangles_are_two_apart() {
        let t = examples::trefoil();
        let f = faces(&t).unwrap();
        let tri: Vec<usize> = (0..f.len()).filter(|i| f[*i].corners.len() == 3).collect();
        assert_eq!(face_distance(&t, &f, tri[0], tri[1]).unwrap(), 2);
    }
}
