use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::diagram::{Arc, PlanarDiagram, Slot};
use super::faces::{face_by_arcs, face_of, faces, Corner, Face};
use super::DiagramError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2,
    R3,
    Flype,
    BoxSlide,
    ParityMove,
    Rotation,
}

/// One step of an audit trail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub kind: MoveKind,
    /// Crossing, arc, box or clasp identifiers the move acts on.
    pub site: Vec<i64>,
    /// Sign of the move where it has one (kink handedness, twist direction).
    pub direction: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub before: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub after: Option<String>,
}

impl MoveRecord {
    pub fn new(kind: MoveKind, site: Vec<i64>, direction: i8) -> Self {
        Self { kind, site, direction, before: None, after: None }
    }
}

/// A face marker that survives moves: a corner while crossings remain, or a
/// side of the last circle once every crossing is gone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceMark {
    Corner(Corner),
    LoopSide(u8),
}

/// True iff the crossings met along every component alternate over and under.
pub fn is_alternating(d: &PlanarDiagram) -> Result<bool, DiagramError> {
    for comp in d.components()? {
        let n = comp.entries.len();
        for k in 0..n {
            let a = comp.entries[k].pos % 2;
            let b = comp.entries[(k + 1) % n].pos % 2;
            if a == b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Crossings met twice on the boundary of a single face.
pub fn find_nugatory(d: &PlanarDiagram) -> Result<BTreeSet<usize>, DiagramError> {
    let fs = faces(d)?;
    Ok(nugatory_from_faces(&fs))
}

fn nugatory_from_faces(fs: &[Face]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for f in fs {
        let mut seen = BTreeSet::new();
        for c in &f.corners {
            if !seen.insert(c.crossing) {
                out.insert(c.crossing);
            }
        }
    }
    out
}

/// The corner `j` of a nugatory crossing whose face returns to it at `j + 2`.
fn separating_corner(fs: &[Face], c: usize) -> Option<u8> {
    for f in fs {
        let at: Vec<u8> = f.corners.iter().filter(|k| k.crossing == c).map(|k| k.pos).collect();
        if at.len() >= 2 {
            return Some(*at.iter().min().unwrap());
        }
    }
    None
}

/// Crossings lying on the side of nugatory crossing `c` reached through slots
/// `j + 1` and `j + 2`, where `j` is its separating corner.
pub fn nugatory_side(d: &PlanarDiagram, c: usize) -> Result<(u8, BTreeSet<usize>), DiagramError> {
    let fs = faces(d)?;
    let j = separating_corner(&fs, c).ok_or(DiagramError::NotNugatory(c))?;
    let partner = d.partner_table()?;
    let mut side = BTreeSet::new();
    let mut q = VecDeque::new();
    for p in [j + 1, j + 2] {
        let o = partner[c][(p % 4) as usize];
        if o.crossing != c && side.insert(o.crossing) {
            q.push_back(o.crossing);
        }
    }
    while let Some(x) = q.pop_front() {
        for s in 0..4 {
            let o = partner[x][s];
            if o.crossing != c && side.insert(o.crossing) {
                q.push_back(o.crossing);
            }
        }
    }
    Ok((j, side))
}

/// Removes a nugatory crossing by a Reidemeister I move.
pub fn reduce_r1(d: &PlanarDiagram, c: usize) -> Result<PlanarDiagram, DiagramError> {
    let marks = marks_from_arc_cycles(d)?;
    let (mut out, new_marks) = reduce_r1_tracked(d, c, &marks)?;
    out.marked_faces = arc_cycles_from_marks(&out, &new_marks)?;
    Ok(out)
}

fn marks_from_arc_cycles(d: &PlanarDiagram) -> Result<Vec<FaceMark>, DiagramError> {
    if d.marked_faces.is_empty() {
        return Ok(Vec::new());
    }
    let fs = faces(d)?;
    d.marked_faces
        .iter()
        .map(|cyc| {
            face_by_arcs(&fs, cyc)
                .map(|i| FaceMark::Corner(fs[i].id()))
                .ok_or_else(|| DiagramError::Invalid(format!("marked face {:?} is not a face", cyc)))
        })
        .collect()
}

fn arc_cycles_from_marks(d: &PlanarDiagram, marks: &[FaceMark]) -> Result<Vec<Vec<Arc>>, DiagramError> {
    if marks.is_empty() || d.crossings.is_empty() {
        return Ok(Vec::new());
    }
    let fs = faces(d)?;
    Ok(marks
        .iter()
        .filter_map(|m| match m {
            FaceMark::Corner(k) => face_of(&fs, *k).map(|i| fs[i].arcs.clone()),
            FaceMark::LoopSide(_) => None,
        })
        .collect())
}

/// Reidemeister I removal of nugatory crossing `c`, carrying face markers along.
///
/// The side of the diagram behind the crossing is turned over (a half turn about
/// an axis in the projection plane) so the two strands no longer cross; the
/// turned crossings reverse their cyclic order and swap over and under, which
/// keeps their signs.
pub fn reduce_r1_tracked(
    d: &PlanarDiagram,
    c: usize,
    marks: &[FaceMark],
) -> Result<(PlanarDiagram, Vec<FaceMark>), DiagramError> {
    let fs = faces(d)?;
    if !nugatory_from_faces(&fs).contains(&c) {
        return Err(DiagramError::NotNugatory(c));
    }
    let (j, side_q) = nugatory_side(d, c)?;
    let side_p: BTreeSet<usize> = (0..d.crossings.len()).filter(|x| *x != c && !side_q.contains(x)).collect();
    let flip = if side_q.len() <= side_p.len() { side_q } else { side_p };

    // Resolve markers sitting at c to corners elsewhere on the same (merged) face.
    let x = d.crossings[c];
    let mut resolved = Vec::with_capacity(marks.len());
    for m in marks {
        let FaceMark::Corner(k) = *m else {
            resolved.push(*m);
            continue;
        };
        if k.crossing != c {
            resolved.push(*m);
            continue;
        }
        let rel = (k.pos + 4 - j) % 4;
        let candidates: Vec<usize> = if rel % 2 == 0 {
            vec![face_of(&fs, Slot::new(c, j)).unwrap()]
        } else {
            vec![face_of(&fs, Slot::new(c, j + 1)).unwrap(), face_of(&fs, Slot::new(c, j + 3)).unwrap()]
        };
        let found = candidates
            .iter()
            .flat_map(|fi| fs[*fi].corners.iter())
            .find(|k2| k2.crossing != c)
            .copied();
        resolved.push(match found {
            Some(k2) => FaceMark::Corner(k2),
            None => FaceMark::LoopSide(if rel % 2 == 0 { 0 } else { 1 }),
        });
    }

    // Merge the arcs through c: slots j ~ j+2 and j+1 ~ j+3.
    let mut root: BTreeMap<Arc, Arc> = BTreeMap::new();
    let find = |root: &BTreeMap<Arc, Arc>, mut a: Arc| {
        while let Some(p) = root.get(&a) {
            if *p == a {
                break;
            }
            a = *p;
        }
        a
    };
    for (u, v) in [(x[0], x[2]), (x[1], x[3])] {
        let (ru, rv) = (find(&root, u), find(&root, v));
        if ru != rv {
            let (lo, hi) = if ru < rv { (ru, rv) } else { (rv, ru) };
            root.insert(hi, lo);
        }
    }

    let signs = d.orientations.as_ref();
    let mut crossings = Vec::with_capacity(d.crossings.len() - 1);
    let mut new_signs = Vec::new();
    let mut index_map = vec![usize::MAX; d.crossings.len()];
    // slot permutation applied to each old crossing
    let mut perm: Vec<[u8; 4]> = Vec::new();
    for (i, y) in d.crossings.iter().enumerate() {
        if i == c {
            continue;
        }
        index_map[i] = crossings.len();
        let y: [Arc; 4] = [find(&root, y[0]), find(&root, y[1]), find(&root, y[2]), find(&root, y[3])];
        if flip.contains(&i) {
            let positive = signs.map(|s| s[i] > 0).unwrap_or(false);
            if positive {
                crossings.push([y[3], y[2], y[1], y[0]]);
                perm.push([3, 2, 1, 0]);
            } else {
                crossings.push([y[1], y[0], y[3], y[2]]);
                perm.push([1, 0, 3, 2]);
            }
        } else {
            crossings.push(y);
            perm.push([0, 1, 2, 3]);
        }
        if let Some(s) = signs {
            new_signs.push(s[i]);
        }
    }
    let old_components = d.components()?.len();
    let mut out = PlanarDiagram {
        crossings,
        orientations: signs.map(|_| new_signs),
        free_loops: d.free_loops,
        marked_faces: Vec::new(),
    };
    let new_components = if out.crossings.is_empty() { 0 } else { out.components()?.len() };
    out.free_loops += (old_components - new_components) as u32;

    let new_marks = resolved
        .into_iter()
        .map(|m| match m {
            FaceMark::Corner(k) => {
                if out.crossings.is_empty() {
                    // only reachable when the marker already sat on c
                    FaceMark::LoopSide(0)
                } else {
                    let ni = index_map[k.crossing];
                    let p = perm[ni];
                    let pos = if p == [0, 1, 2, 3] { k.pos } else { p[((k.pos + 1) % 4) as usize] };
                    FaceMark::Corner(Slot::new(ni, pos))
                }
            }
            other => other,
        })
        .collect();
    Ok((out, new_marks))
}

/// Repeatedly removes nugatory crossings; true iff no crossing remains.
///
/// For connected alternating knot diagrams this decides whether the knot is
/// trivial: a reduced alternating diagram of the unknot has no crossings, and any
/// alternating unknot diagram with crossings has a nugatory one.
pub fn alternating_unknot_check(d: &PlanarDiagram) -> Result<(bool, Vec<MoveRecord>), DiagramError> {
    if !is_alternating(d)? {
        return Err(DiagramError::NotAlternating);
    }
    if d.component_count()? != 1 {
        return Err(DiagramError::ComponentCount { expected: 1, found: d.component_count()? });
    }
    let mut cur = d.clone();
    cur.marked_faces.clear();
    let mut log = Vec::new();
    loop {
        if cur.crossings.is_empty() {
            return Ok((true, log));
        }
        let nug = find_nugatory(&cur)?;
        let Some(&c) = nug.iter().next() else {
            return Ok((false, log));
        };
        let dir = kink_sign(&cur, c)?;
        log.push(MoveRecord::new(MoveKind::R1Remove, vec![c as i64], dir));
        cur = reduce_r1(&cur, c)?;
    }
}

/// Sign of a self-crossing of a knot, which does not depend on the orientation.
pub fn kink_sign(d: &PlanarDiagram, c: usize) -> Result<i8, DiagramError> {
    let o = match &d.orientations {
        Some(_) => d.clone(),
        None => d.oriented(&vec![false; d.components()?.len()])?,
    };
    Ok(o.signs()?[c])
}

fn next_arc_id(d: &PlanarDiagram) -> Arc {
    d.crossings.iter().flat_map(|x| x.iter()).copied().max().unwrap_or(0) + 1
}

/// Entry slots of the old crossings, used to carry orientation data across moves.
fn entry_anchors(d: &PlanarDiagram) -> Option<Vec<[u8; 2]>> {
    d.orientations.as_ref()?;
    Some((0..d.crossings.len()).map(|c| d.entry_slots(c).unwrap()).collect())
}

/// Orients `new` so that the crossings listed in `anchors` (new index, old entry
/// slots) keep the directions they had before the move.
fn orient_like(new: &PlanarDiagram, anchors: &[(usize, [u8; 2])]) -> Result<PlanarDiagram, DiagramError> {
    let comps = new.components()?;
    let mut reverse = Vec::with_capacity(comps.len());
    for comp in &comps {
        let mut rev = false;
        for s in &comp.entries {
            if let Some((_, ent)) = anchors.iter().find(|(i, _)| *i == s.crossing) {
                rev = !ent.contains(&s.pos);
                break;
            }
        }
        reverse.push(rev);
    }
    let out = new.oriented(&reverse)?;
    Ok(out)
}

/// Adds a kink on the arc leaving `corner.pos` of `corner.crossing`, with its
/// loop inside the face of that corner. `under_first` chooses whether the strand
/// first passes under (a positive kink) or over (a negative kink). Returns the
/// new diagram and the corner of the new one-sided face.
pub fn r1_add(d: &PlanarDiagram, corner: Corner, under_first: bool) -> Result<(PlanarDiagram, Corner), DiagramError> {
    let partner = d.partner_table()?;
    let x = d.arc_at(corner);
    let head = partner[corner.crossing][corner.pos as usize];
    let y = next_arc_id(d);
    let l = y + 1;
    let mut out = d.clone();
    out.marked_faces.clear();
    out.crossings[head.crossing][head.pos as usize] = y;
    let k = out.crossings.len();
    let (pd, mono) = if under_first { ([x, y, l, l], 2) } else { ([l, x, y, l], 3) };
    out.crossings.push(pd);
    if let Some(anchors) = entry_anchors(d) {
        out.orientations = None;
        let a: Vec<(usize, [u8; 2])> = anchors.into_iter().enumerate().collect();
        out = orient_like(&out, &a)?;
    }
    let mono_corner = if out.crossings[k] == pd { Slot::new(k, mono) } else { Slot::new(k, mono + 2) };
    Ok((out, mono_corner))
}

/// Reidemeister II: pushes the arc leaving `c1` across their common face over
/// (or under) the arc leaving `c2`, creating two crossings and a bigon.
pub fn r2_add(d: &PlanarDiagram, c1: Corner, c2: Corner, over: bool) -> Result<PlanarDiagram, DiagramError> {
    let fs = faces(d)?;
    let f1 = face_of(&fs, c1).ok_or_else(|| DiagramError::Invalid("unknown corner".into()))?;
    if face_of(&fs, c2) != Some(f1) {
        return Err(DiagramError::Invalid("R2 corners lie on different faces".into()));
    }
    let a = d.arc_at(c1);
    let b = d.arc_at(c2);
    if a == b {
        return Err(DiagramError::Invalid("R2 needs two distinct arcs".into()));
    }
    let partner = d.partner_table()?;
    let ha = partner[c1.crossing][c1.pos as usize];
    let hb = partner[c2.crossing][c2.pos as usize];
    let base = next_arc_id(d);
    let (am, a2, bm, b2) = (base, base + 1, base + 2, base + 3);
    let mut out = d.clone();
    out.marked_faces.clear();
    out.orientations = None;
    out.crossings[ha.crossing][ha.pos as usize] = a2;
    out.crossings[hb.crossing][hb.pos as usize] = b2;
    let (x1, x2) = if over {
        ([bm, am, b2, a], [b, am, bm, a2])
    } else {
        ([a, bm, am, b2], [am, bm, a2, b])
    };
    out.crossings.push(x1);
    out.crossings.push(x2);
    if let Some(anchors) = entry_anchors(d) {
        let a: Vec<(usize, [u8; 2])> = anchors.into_iter().enumerate().collect();
        out = orient_like(&out, &a)?;
    }
    Ok(out)
}

/// Triangular faces with three distinct crossings where one strand passes over
/// (equivalently, another passes under) both of its triangle crossings.
pub fn find_r3_sites(d: &PlanarDiagram) -> Result<Vec<Corner>, DiagramError> {
    let fs = faces(d)?;
    let partner = d.partner_table()?;
    let mut out = Vec::new();
    for f in &fs {
        if f.corners.len() != 3 {
            continue;
        }
        let cs: BTreeSet<usize> = f.corners.iter().map(|k| k.crossing).collect();
        if cs.len() != 3 {
            continue;
        }
        let mut ok = false;
        for k in &f.corners {
            let far = partner[k.crossing][k.pos as usize];
            if k.pos % 2 == far.pos % 2 {
                ok = true;
            }
        }
        if ok {
            out.push(f.id());
        }
    }
    Ok(out)
}

/// Reidemeister III across the triangular face containing `corner`.
///
/// Every crossing keeps its position and cyclic order; along each strand the
/// two triangle crossings trade places, so the triangle edge moves to the outer
/// slots and the outer arcs swap ends.
pub fn r3(d: &PlanarDiagram, corner: Corner) -> Result<PlanarDiagram, DiagramError> {
    let sites = find_r3_sites(d)?;
    let fs = faces(d)?;
    let fi = face_of(&fs, corner).ok_or_else(|| DiagramError::Invalid("unknown corner".into()))?;
    if !sites.contains(&fs[fi].id()) {
        return Err(DiagramError::Invalid("face does not admit a Reidemeister III move".into()));
    }
    let partner = d.partner_table()?;
    let mut out = d.clone();
    out.marked_faces.clear();
    for k in &fs[fi].corners {
        let head = partner[k.crossing][k.pos as usize];
        let tail_outer = Slot::new(k.crossing, k.pos + 2);
        let head_outer = Slot::new(head.crossing, head.pos + 2);
        let m = d.arc_at(*k);
        let p1 = d.arc_at(tail_outer);
        let p2 = d.arc_at(head_outer);
        out.crossings[k.crossing][k.pos as usize] = p2;
        out.crossings[head.crossing][head.pos as usize] = p1;
        out.crossings[tail_outer.crossing][tail_outer.pos as usize] = m;
        out.crossings[head_outer.crossing][head_outer.pos as usize] = m;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_core::bracket::{jones, kauffman_bracket};
    use crate::diagram_core::examples;
    use crate::diagram_core::poly::LaurentPolynomial;
    use crate::diagram_core::validate::validate;

    #[test]
    fn trefoil_alternates() {
        assert!(is_alternating(&examples::trefoil()).unwrap());
        assert!(is_alternating(&PlanarDiagram::unknot()).unwrap());
    }

    #[test]
    fn switched_trefoil_does_not_alternate() {
        let mut t = examples::trefoil();
        let x = t.crossings[0];
        t.crossings[0] = [x[1], x[2], x[3], x[0]];
        assert!(!is_alternating(&t).unwrap());
    }

    #[test]
    fn nugatory_sets() {
        assert_eq!(find_nugatory(&examples::kink_positive()).unwrap(), BTreeSet::from([0]));
        assert!(find_nugatory(&examples::trefoil()).unwrap().is_empty());
        assert_eq!(find_nugatory(&examples::kink_chain(2)).unwrap(), BTreeSet::from([0, 1]));
    }

    #[test]
    fn kink_reduces_to_circle() {
        let u = reduce_r1(&examples::kink_positive(), 0).unwrap();
        assert_eq!(u, PlanarDiagram::unknot());
    }

    #[test]
    fn stacked_kinks_reduce_one_at_a_time() {
        let d = examples::kink_chain(2);
        let r = reduce_r1(&d, 0).unwrap();
        assert_eq!(r.crossings.len(), 1);
        assert!(validate(&r).passed());
        assert_eq!(find_nugatory(&r).unwrap().len(), 1);
    }

    #[test]
    fn trefoil_has_no_r1() {
        for c in 0..3 {
            assert!(matches!(reduce_r1(&examples::trefoil(), c), Err(DiagramError::NotNugatory(_))));
        }
    }

    #[test]
    fn kink_chain_unknot_check() {
        let (ok, log) = alternating_unknot_check(&examples::kink_chain(4)).unwrap();
        assert!(ok);
        assert_eq!(log.len(), 4);
        let (ok, log) = alternating_unknot_check(&examples::trefoil()).unwrap();
        assert!(!ok);
        assert!(log.is_empty());
        let (ok, log) = alternating_unknot_check(&PlanarDiagram::unknot()).unwrap();
        assert!(ok && log.is_empty());
    }

    #[test]
    fn r1_add_multiplies_bracket() {
        let t = examples::trefoil().with_sequential_orientation().unwrap();
        let b = kauffman_bracket(&t).unwrap();
        let j = jones(&t).unwrap();
        for c in 0..3 {
            for p in 0..4 {
                for under_first in [true, false] {
                    let (k, mono) = r1_add(&t, Slot::new(c, p), under_first).unwrap();
                    assert!(validate(&k).passed());
                    let sign = if under_first { 1 } else { -1 };
                    assert_eq!(kink_sign(&k, k.crossings.len() - 1).unwrap(), sign);
                    let expected = &LaurentPolynomial::monomial(-1, 3 * sign as i64) * &b;
                    assert_eq!(kauffman_bracket(&k).unwrap(), expected);
                    assert_eq!(jones(&k).unwrap(), j);
                    let fs = faces(&k).unwrap();
                    assert_eq!(fs[face_of(&fs, mono).unwrap()].corners.len(), 1);
                }
            }
        }
    }

    #[test]
    fn r2_and_r3_keep_bracket() {
        let t = examples::figure_eight().with_sequential_orientation().unwrap();
        let b = kauffman_bracket(&t).unwrap();
        let j = jones(&t).unwrap();
        let fs = faces(&t).unwrap();
        let mut r3_done = 0;
        for f in &fs {
            for (i, c1) in f.corners.iter().enumerate() {
                for c2 in f.corners.iter().skip(i + 1) {
                    for over in [true, false] {
                        let Ok(r) = r2_add(&t, *c1, *c2, over) else { continue };
                        assert!(validate(&r).passed());
                        assert_eq!(kauffman_bracket(&r).unwrap(), b);
                        assert_eq!(jones(&r).unwrap(), j);
                        for site in find_r3_sites(&r).unwrap() {
                            let s = r3(&r, site).unwrap();
                            assert!(validate(&s).passed());
                            assert_eq!(kauffman_bracket(&s).unwrap(), b);
                            assert_eq!(jones(&s).unwrap(), j);
                            r3_done += 1;
                        }
                    }
                }
            }
        }
        assert!(r3_done > 0);
    }
}
