use serde::Serialize;

use super::diagram::PlanarDiagram;
use super::faces::{face_by_arcs, faces, Face};

/// Outcome of one structural check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Structural report on a diagram together with its face list.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub faces: Vec<Face>,
    pub components: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name, passed, detail: detail.into() }
}

/// Checks arc multiplicity, planarity (Euler characteristic of every connected
/// piece of the projection), orientation data and marked faces.
pub fn validate(d: &PlanarDiagram) -> ValidationReport {
    let mut checks = Vec::new();
    let partner = match d.partner_table() {
        Ok(p) => {
            checks.push(check("arc-multiplicity", true, "every arc has two ends"));
            p
        }
        Err(e) => {
            checks.push(check("arc-multiplicity", false, e.to_string()));
            return ValidationReport { checks, faces: Vec::new(), components: 0 };
        }
    };
    if d.crossings.is_empty() && d.free_loops == 0 {
        checks.push(check("non-empty", false, "diagram has neither crossings nor loops"));
    }

    let fs = faces(d).unwrap_or_default();
    // connected pieces of the projection graph
    let n = d.crossings.len();
    let mut piece = vec![usize::MAX; n];
    let mut pieces = 0;
    for s in 0..n {
        if piece[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        piece[s] = pieces;
        while let Some(c) = stack.pop() {
            for o in partner[c] {
                if piece[o.crossing] == usize::MAX {
                    piece[o.crossing] = pieces;
                    stack.push(o.crossing);
                }
            }
        }
        pieces += 1;
    }
    let v = n as i64;
    let e = 2 * n as i64;
    let f = fs.len() as i64;
    let planar = v - e + f == 2 * pieces as i64;
    checks.push(check(
        "planarity",
        planar,
        format!("V - E + F = {} - {} + {} over {} connected piece(s)", v, e, f, pieces),
    ));

    match &d.orientations {
        None => checks.push(check("orientation", true, "no orientation data")),
        Some(s) if s.len() != n => checks.push(check(
            "orientation",
            false,
            format!("{} signs for {} crossings", s.len(), n),
        )),
        Some(_) => {
            let ok = d.orientation_consistent().unwrap_or(false);
            checks.push(check(
                "orientation",
                ok,
                if ok { "under-strands enter at slot 0 and every arc has one direction" } else { "orientation data contradicts the arc structure" },
            ))
        }
    }

    let missing: Vec<String> = d
        .marked_faces
        .iter()
        .filter(|cyc| face_by_arcs(&fs, cyc).is_none())
        .map(|cyc| format!("{:?}", cyc))
        .collect();
    checks.push(check(
        "marked-faces",
        missing.is_empty(),
        if missing.is_empty() { format!("{} marked face(s) found", d.marked_faces.len()) } else { format!("not faces: {}", missing.join(", ")) },
    ));

    let components = d.component_count().unwrap_or(0);
    ValidationReport { checks, faces: fs, components }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_core::examples;

    #[test]
    fn examples_validate() {
        for d in [examples::trefoil(), examples::hopf(), examples::figure_eight(), examples::kink_positive()] {
            let r = validate(&d);
            assert!(r.passed(), "{:?}", r.failures());
        }
        assert!(validate(&PlanarDiagram::unknot()).passed());
    }

    #[test]
    fn bad_multiplicity_fails() {
        let d = PlanarDiagram::new(vec![[1, 2, 3, 4]]);
        assert!(!validate(&d).passed());
    }

    #[test]
    fn non_planar_gluing_fails() {
        // two crossings glued like a Hopf link but with one crossing's cyclic order permuted
        let d = PlanarDiagram::new(vec![[1, 3, 2, 4], [3, 1, 2, 4]]);
        let r = validate(&d);
        assert!(!r.passed());
        assert_eq!(r.failures()[0].name, "planarity");
    }

    #[test]
    fn wrong_marked_face_fails() {
        let mut t = examples::trefoil();
        t.marked_faces = vec![vec![1, 2, 3]];
        assert!(!validate(&t).passed());
    }
}
