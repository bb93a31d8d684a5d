use serde::{Deserialize, Serialize};

use super::closure::AxisClosureDiagram;
use super::tangle::TangleDiagram;
use super::QuotientError;
use crate::diagram_core::{face_of, faces, isomorphisms, Arc, FaceMark, Isomorphism, PlanarDiagram, Slot};

/// A diagram with a combinatorial rotation of order `n` of the projection
/// sphere: the rotation fixes exactly two faces (where the axis meets the
/// sphere) and no crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicDiagram {
    pub diagram: PlanarDiagram,
    pub n: usize,
    pub automorphism: Isomorphism,
    /// The two fixed faces: the axis face first, then infinity.
    pub fixed_faces: [Vec<Arc>; 2],
}

fn compose(a: &Isomorphism, b: &Isomorphism) -> Isomorphism {
    // a after b
    let n = a.crossings.len();
    let mut crossings = vec![0; n];
    let mut rotation = vec![0; n];
    for c in 0..n {
        let m = b.crossings[c];
        crossings[c] = a.crossings[m];
        rotation[c] = (b.rotation[c] + a.rotation[m]) % 4;
    }
    Isomorphism { crossings, rotation }
}

/// Order of an automorphism, or `None` above `limit`.
fn order(g: &Isomorphism, limit: usize) -> Option<usize> {
    let mut p = g.clone();
    for j in 1..=limit {
        if p.is_identity() {
            return Some(j);
        }
        p = compose(g, &p);
    }
    None
}

/// Faces (by index) mapped to themselves.
fn fixed_faces(d: &PlanarDiagram, g: &Isomorphism) -> Result<Vec<usize>, QuotientError> {
    let fs = faces(d)?;
    Ok((0..fs.len()).filter(|i| face_of(&fs, g.map_corner(fs[*i].id())) == Some(*i)).collect())
}

impl PeriodicDiagram {
    /// Checks order, fixed faces and fixed crossings of the recorded rotation.
    pub fn check(&self) -> Result<(), QuotientError> {
        let d = &self.diagram;
        let n = d.crossings.len();
        if self.n < 2 {
            return Err(QuotientError::PeriodTooSmall(self.n));
        }
        if n == 0 {
            return Ok(());
        }
        if self.automorphism.crossings.len() != n {
            return Err(QuotientError::BadRotation("automorphism size differs from the diagram".into()));
        }
        let valid = isomorphisms(d, d, false).contains(&self.automorphism);
        if !valid {
            return Err(QuotientError::BadRotation("map does not preserve the diagram".into()));
        }
        if order(&self.automorphism, self.n) != Some(self.n) {
            return Err(QuotientError::BadRotation(format!("map does not have order {}", self.n)));
        }
        let mut p = self.automorphism.clone();
        for _ in 1..self.n {
            if (0..n).any(|c| p.crossings[c] == c) {
                return Err(QuotientError::BadRotation("a power of the map fixes a crossing".into()));
            }
            p = compose(&self.automorphism, &p);
        }
        if fixed_faces(d, &self.automorphism)?.len() != 2 {
            return Err(QuotientError::BadRotation("map does not fix exactly two faces".into()));
        }
        Ok(())
    }
}

/// `n` copies of `t` arranged around the axis; copy `j` feeds copy `j + 1`.
pub fn build_periodic(t: &TangleDiagram, n: usize) -> Result<PeriodicDiagram, QuotientError> {
    if n < 2 {
        return Err(QuotientError::PeriodTooSmall(n));
    }
    let c = AxisClosureDiagram::close(t, n)?;
    let m = t.crossing_count();
    let total = m * n;
    let automorphism = Isomorphism {
        crossings: (0..total).map(|x| (x + m) % total).collect(),
        rotation: vec![0; total],
    };
    Ok(PeriodicDiagram {
        diagram: c.diagram,
        n,
        automorphism,
        fixed_faces: [c.axis_face, c.infinity_face],
    })
}

/// Orbit diagram of a periodic diagram: one crossing per orbit, one arc per
/// arc orbit, with the images of the two fixed faces as axis and infinity.
pub fn quotient(p: &PeriodicDiagram) -> Result<AxisClosureDiagram, QuotientError> {
    p.check()?;
    let d = &p.diagram;
    let n = d.crossings.len();
    if n == 0 {
        return Ok(AxisClosureDiagram {
            diagram: PlanarDiagram::unknot(),
            axis_face: Vec::new(),
            infinity_face: Vec::new(),
            k: 1,
        });
    }
    let g = &p.automorphism;
    // representative and accumulated slot rotation taking each crossing to it
    let mut rep = vec![usize::MAX; n];
    let mut rot = vec![0u8; n];
    for c in 0..n {
        if rep[c] != usize::MAX {
            continue;
        }
        let mut x = c;
        let mut r = 0u8;
        loop {
            rep[x] = c;
            rot[x] = (4 - r) % 4;
            r = (r + g.rotation[x]) % 4;
            x = g.crossings[x];
            if x == c {
                break;
            }
        }
    }
    // rot[x] takes slot p of x to slot p + rot[x] of rep[x]
    let reps: Vec<usize> = (0..n).filter(|c| rep[*c] == *c).collect();
    let index: Vec<usize> = (0..n).map(|c| reps.iter().position(|r| *r == rep[c]).unwrap()).collect();
    let to_quotient = |s: Slot| Slot::new(index[s.crossing], s.pos + rot[s.crossing]);

    let partner = d.partner_table()?;
    let mut crossings = vec![[0 as Arc; 4]; reps.len()];
    let mut assigned = vec![[false; 4]; reps.len()];
    let mut next: Arc = 1;
    for c in 0..n {
        for q in 0..4u8 {
            let a = to_quotient(Slot::new(c, q));
            if assigned[a.crossing][a.pos as usize] {
                continue;
            }
            let b = to_quotient(partner[c][q as usize]);
            if a == b || assigned[b.crossing][b.pos as usize] {
                return Err(QuotientError::BadRotation("an arc meets the axis".into()));
            }
            crossings[a.crossing][a.pos as usize] = next;
            crossings[b.crossing][b.pos as usize] = next;
            assigned[a.crossing][a.pos as usize] = true;
            assigned[b.crossing][b.pos as usize] = true;
            next += 1;
        }
    }
    let q = PlanarDiagram::new(crossings).relabeled()?;
    let fs = faces(d)?;
    let mark = |cycle: &[Arc]| -> Result<FaceMark, QuotientError> {
        let f = crate::diagram_core::face_by_arcs(&fs, cycle)
            .ok_or_else(|| QuotientError::BadRotation("fixed face missing".into()))?;
        Ok(FaceMark::Corner(to_quotient(fs[f].id())))
    };
    let axis = mark(&p.fixed_faces[0])?;
    let inf = mark(&p.fixed_faces[1])?;
    let mut out = AxisClosureDiagram::from_marks(q, axis, inf, 0)?;
    out.k = out.separation()?;
    Ok(out)
}

/// Searches the automorphisms of `d` for a rotation of order `n` fixing exactly
/// two faces and no crossing. The fixed face with the smaller identifier is
/// reported as the axis face.
pub fn detect_period(d: &PlanarDiagram, n: usize) -> Result<Option<PeriodicDiagram>, QuotientError> {
    Ok(period_witnesses(d, n)?.into_iter().next())
}

/// Every rotation of order `n` of `d` with two fixed faces and no fixed crossing.
pub fn period_witnesses(d: &PlanarDiagram, n: usize) -> Result<Vec<PeriodicDiagram>, QuotientError> {
    if n < 2 {
        return Err(QuotientError::PeriodTooSmall(n));
    }
    let m = d.crossings.len();
    if m == 0 || !m.is_multiple_of(n) {
        return Ok(Vec::new());
    }
    let fs = faces(d)?;
    let mut out = Vec::new();
    for g in isomorphisms(d, d, false) {
        if order(&g, n) != Some(n) {
            continue;
        }
        let fixed = fixed_faces(d, &g)?;
        if fixed.len() != 2 {
            continue;
        }
        let p = PeriodicDiagram {
            diagram: d.clone(),
            n,
            automorphism: g,
            fixed_faces: [fs[fixed[0]].arcs.clone(), fs[fixed[1]].arcs.clone()],
        };
        if p.check().is_ok() {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_core::{examples, jones};
    use crate::periodic_quotient::{nf_to_tangle, QuotientNormalForm, TangleOp};

    fn corpus() -> Vec<TangleDiagram> {
        let x = |at, over_left| TangleOp::Cross { at, over_left };
        let mut out = vec![
            TangleDiagram::trivial(1),
            TangleDiagram::new(2, vec![x(0, true)]).unwrap(),
            TangleDiagram::new(2, vec![x(0, false), x(0, false)]).unwrap(),
            TangleDiagram::new(3, vec![x(0, true), x(1, false)]).unwrap(),
            TangleDiagram::new(3, vec![x(0, true), x(1, true), x(0, true)]).unwrap(),
            TangleDiagram::new(4, vec![x(0, true), x(1, false), x(2, true)]).unwrap(),
        ];
        for q in ["2;1;+", "2;3;-", "3;2,2;+", "3;1,3;-", "4;1,2,1;+", "4;2,1,3;-"] {
            out.push(nf_to_tangle(&q.parse::<QuotientNormalForm>().unwrap()).unwrap());
        }
        out
    }

    #[test]
    fn period_one_is_rejected() {
        assert_eq!(build_periodic(&TangleDiagram::trivial(1), 1), Err(QuotientError::PeriodTooSmall(1)));
    }

    #[test]
    fn crossingless_tangle_gives_the_round_unknot() {
        let p = build_periodic(&TangleDiagram::trivial(1), 3).unwrap();
        assert!(p.diagram.crossings.is_empty());
        assert_eq!(quotient(&p).unwrap().k, 1);
    }

    #[test]
    fn three_copies_of_one_crossing_make_a_trefoil() {
        let t = nf_to_tangle(&"2;1;+".parse().unwrap()).unwrap();
        let p = build_periodic(&t, 3).unwrap();
        assert_eq!(p.diagram.crossings.len(), 3);
        assert!(crate::diagram_core::is_alternating(&p.diagram).unwrap());
        let j = jones(&p.diagram.with_sequential_orientation().unwrap()).unwrap();
        let tr = jones(&examples::trefoil().with_sequential_orientation().unwrap()).unwrap();
        assert!(j == tr || j == tr.mirror());
    }

    #[test]
    fn quotient_of_periodic_is_the_closure() {
        for t in corpus() {
            let c = t.closure().unwrap();
            for n in 2..=6 {
                let p = build_periodic(&t, n).unwrap();
                p.check().unwrap();
                let q = quotient(&p).unwrap();
                assert!(q.is_isomorphic(&c).unwrap(), "{:?} n={}", t, n);
                if t.crossing_count() > 0 {
                    let w = period_witnesses(&p.diagram, n).unwrap();
                    assert!(w.iter().any(|x| x.automorphism == p.automorphism), "{:?} n={}", t, n);
                }
            }
        }
    }

    #[test]
    fn identity_is_not_a_rotation() {
        let t = nf_to_tangle(&"2;1;+".parse().unwrap()).unwrap();
        let mut p = build_periodic(&t, 3).unwrap();
        p.automorphism = Isomorphism { crossings: vec![0, 1, 2], rotation: vec![0; 3] };
        assert!(matches!(quotient(&p), Err(QuotientError::BadRotation(_))));
    }

    #[test]
    fn trefoil_has_period_three_and_figure_eight_not_five() {
        assert!(detect_period(&examples::trefoil(), 3).unwrap().is_some());
        assert!(detect_period(&examples::figure_eight(), 5).unwrap().is_none());
    }

    #[test]
    fn six_copies_of_a_size_three_tangle() {
        let t = nf_to_tangle(&"3;1,1;+".parse().unwrap()).unwrap();
        let p = build_periodic(&t, 6).unwrap();
        assert_eq!(quotient(&p).unwrap().k, 3);
    }
}
