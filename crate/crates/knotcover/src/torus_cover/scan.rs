use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::signature::{classify_case, cover_signature};
use super::{CaseTag, TorusKnot};

/// Signature collisions and case counts for one cover degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: u64,
    pub knots: usize,
    pub collisions: Vec<(TorusKnot, TorusKnot)>,
    pub tallies: BTreeMap<CaseTag, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub a_max: u64,
    pub n_max: u64,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn collision_count(&self) -> usize {
        self.rows.iter().map(|r| r.collisions.len()).sum()
    }

    /// Case counts summed over all degrees.
    pub fn tallies(&self) -> BTreeMap<CaseTag, usize> {
        let mut out = BTreeMap::new();
        for r in &self.rows {
            for (t, c) in &r.tallies {
                *out.entry(*t).or_insert(0) += c;
            }
        }
        out
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let col: Vec<String> = r.collisions.iter().map(|(a, b)| format!("{a}={b}")).collect();
            let tal: Vec<String> = r.tallies.iter().map(|(t, c)| format!("{t}:{c}")).collect();
            writeln!(f, "n={} knots={} collisions=[{}] cases {}", r.n, r.knots, col.join(" "), tal.join(" "))?;
        }
        write!(f, "collisions: {}", self.collision_count())
    }
}

/// Coprime pairs `2 <= a1 < a2 <= a_max`, ascending.
pub(crate) fn knots_up_to(a_max: u64) -> Vec<TorusKnot> {
    let mut out = Vec::new();
    for a2 in 3..=a_max {
        for a1 in 2..a2 {
            if a1.gcd(&a2) == 1 {
                out.push(TorusKnot { a1, a2 });
            }
        }
    }
    out.sort();
    out
}

fn scan_degree(knots: &[TorusKnot], n: u64) -> ScanRow {
    let mut seen = BTreeMap::new();
    let mut collisions = Vec::new();
    let mut tallies = BTreeMap::new();
    for k in knots {
        let (case, _) = classify_case(k, n).expect("scan inputs are valid");
        *tallies.entry(case.tag).or_insert(0) += 1;
        let s = cover_signature(k, n).expect("scan inputs are valid");
        if let Some(prev) = seen.insert(s, *k) {
            collisions.push((prev, *k));
        }
    }
    ScanRow { n, knots: knots.len(), collisions, tallies }
}

/// Signatures of every torus knot with parameters up to `a_max` for each
/// degree `2..=n_max`, with the pairs that share one. Degrees are scanned in
/// parallel; rows come out ordered by `n`.
pub fn injectivity_scan(a_max: u64, n_max: u64) -> ScanReport {
    let knots = knots_up_to(a_max);
    let rows = (2..=n_max.max(1)).into_par_iter().map(|n| scan_degree(&knots, n)).collect();
    ScanReport { a_max, n_max, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scans() {
        let r = injectivity_scan(5, 3);
        assert_eq!(r.collision_count(), 0);
        assert_eq!(r.rows.iter().map(|x| x.n).collect::<Vec<_>>(), vec![2, 3]);
        // with n <= 3 a proper divisor d1 < a1 can only equal n, so 2a and 2c are empty
        let t: Vec<CaseTag> = r.tallies().into_keys().collect();
        assert_eq!(t, vec![CaseTag::C1, CaseTag::C2b, CaseTag::C2d]);
        let wide: Vec<CaseTag> = injectivity_scan(10, 12).tallies().into_keys().collect();
        assert_eq!(wide, CaseTag::ALL.to_vec());
        let single = injectivity_scan(3, 10);
        assert!(single.rows.iter().all(|r| r.knots == 1 && r.collisions.is_empty()));
    }

    #[test]
    fn report_ends_with_the_total() {
        let s = injectivity_scan(4, 2).to_string();
        assert!(s.ends_with("collisions: 0"), "{s}");
        assert!(s.starts_with("n=2 knots=2 collisions=[]"), "{s}");
    }
}
