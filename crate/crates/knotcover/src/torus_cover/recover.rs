use serde::{Deserialize, Serialize};

use super::signature::{classify_case, cover_signature, euler_check};
use super::{check_degree, CaseTag, CoverCase, SeifertSignature, SignatureFlag, TorusError, TorusKnot};

fn not_cover(msg: impl Into<String>) -> TorusError {
    TorusError::NotACoverSignature(msg.into())
}

fn div_exact(a: u64, b: u64) -> Option<u64> {
    (b != 0 && a.is_multiple_of(b)).then(|| a / b)
}

/// Positive integer roots `x <= y` of `x * y = p`, `x + y = s`.
fn solve_sum_product(s: i64, p: u64) -> Option<(u64, u64)> {
    let disc = s.checked_mul(s)? - 4 * p as i64;
    if s <= 0 || disc < 0 {
        return None;
    }
    let r = disc.isqrt();
    if r * r != disc || (s - r) % 2 != 0 {
        return None;
    }
    let x = ((s - r) / 2) as u64;
    let y = ((s + r) / 2) as u64;
    (x >= 1 && x * y == p).then_some((x, y))
}

/// Candidate knot and tag read off the signature shape, before cross-checks.
fn candidate(sig: &SeifertSignature, n: u64) -> Result<(u64, u64, CaseTag), TorusError> {
    let cl = sig.classes();
    let g = sig.genus;
    let bad = || not_cover(format!("no case matches {sig} for n = {n}"));
    if g == 0 {
        match cl.len() {
            3 if sig.fibres.len() == 3 => {
                let rest: Vec<u64> = cl.iter().map(|(o, _)| *o).filter(|o| *o != n).collect();
                if rest.len() != 2 {
                    return Err(bad());
                }
                Ok((rest[0], rest[1], CaseTag::C1))
            }
            3 => {
                let (a2, d) = *cl.iter().find(|(_, c)| *c > 1).ok_or_else(bad)?;
                let singles: Vec<u64> = cl.iter().filter(|(_, c)| *c == 1).map(|(o, _)| *o).collect();
                if singles.len() != 2 {
                    return Err(bad());
                }
                let nd = div_exact(n, d).ok_or_else(bad)?;
                let other = if singles[0] == nd { singles[1] } else if singles[1] == nd { singles[0] } else { return Err(bad()) };
                Ok((d * other, a2, CaseTag::C2a))
            }
            2 => {
                // the repeated order is a2; it occurs n times in 2b and d < n times in 2c
                let (rep, single) = if cl[0].1 > 1 { (cl[0], cl[1]) } else { (cl[1], cl[0]) };
                if single.1 != 1 {
                    return Err(bad());
                }
                let (a2, count) = rep;
                if count == n {
                    Ok((n * single.0, a2, CaseTag::C2b))
                } else {
                    Ok((count, a2, CaseTag::C2c))
                }
            }
            1 => {
                let (a2, count) = cl[0];
                if count != n {
                    return Err(bad());
                }
                Ok((n, a2, CaseTag::C2d))
            }
            _ => Err(bad()),
        }
    } else {
        match cl.len() {
            3 => {
                let s = *cl.iter().find(|(_, c)| *c == 1).ok_or_else(bad)?;
                let big: Vec<(u64, u64)> = cl.iter().copied().filter(|x| *x != s).collect();
                let ((oa, ca), (ob, cb)) = (big[0], big[1]);
                Ok((ca * ob, cb * oa, CaseTag::C3a))
            }
            2 => {
                if let Some(s) = cl.iter().copied().find(|(_, c)| *c == 1) {
                    let (order, d1) = *cl.iter().find(|x| **x != s).unwrap();
                    let d = div_exact(n, s.0).ok_or_else(bad)?;
                    let d2 = div_exact(d, d1).ok_or_else(bad)?;
                    Ok((d1, d2 * order, CaseTag::C3c))
                } else {
                    let ((oa, ca), (ob, cb)) = (cl[0], cl[1]);
                    Ok((ca * ob, cb * oa, CaseTag::C3b))
                }
            }
            1 => {
                let (order, count) = cl[0];
                if count > 1 {
                    let d2 = div_exact(n, count).ok_or_else(bad)?;
                    Ok((count, d2 * order, CaseTag::C3d))
                } else {
                    let d = div_exact(n, order).ok_or_else(bad)?;
                    let (x, y) = solve_sum_product(d as i64 + 1 - 2 * g as i64, d).ok_or_else(bad)?;
                    Ok((x, y, CaseTag::C3e))
                }
            }
            0 => {
                let (x, y) = solve_sum_product(n as i64 + 1 - 2 * g as i64, n).ok_or_else(bad)?;
                Ok((x, y, CaseTag::C3f))
            }
            _ => Err(bad()),
        }
    }
}

/// The unique torus knot whose `n`-fold cover has signature `sig`, read off the
/// fibre data case by case. The candidate is accepted only if it is a valid
/// knot whose forward signature, case tag and Euler characteristic agree.
/// Flags are implied by the case; an empty flag set matches any.
pub fn recover_torus_knot(sig: &SeifertSignature, n: u64) -> Result<(TorusKnot, CoverCase), TorusError> {
    check_degree(n)?;
    if !sig.is_well_formed() {
        return Err(not_cover(format!("{sig} is not a valid fibre list")));
    }
    let (a, b, tag) = candidate(sig, n)?;
    let knot = TorusKnot::new(a, b).map_err(|e| not_cover(format!("case {tag} gives ({a}, {b}): {e}")))?;
    let (case, _) = classify_case(&knot, n)?;
    if case.tag != tag {
        return Err(not_cover(format!("case {tag} gives {knot}, which is in case {}", case.tag)));
    }
    let fwd = cover_signature(&knot, n)?;
    let flags_ok = sig.flags.is_empty() || sig.flags == fwd.flags;
    if fwd.genus != sig.genus || fwd.fibres != sig.fibres || !flags_ok || !euler_check(sig, &knot, n) {
        return Err(not_cover(format!("{knot} does not reproduce {sig}")));
    }
    Ok((knot, case))
}

/// Where two signatures first differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    Genus { left: u64, right: u64 },
    FibreMultiplicity { order: u64, left: u64, right: u64 },
    Flags { left: Vec<SignatureFlag>, right: Vec<SignatureFlag> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    EquivalentKnots,
    NotTwins { left: SeifertSignature, right: SeifertSignature, evidence: Evidence },
    /// Distinct knots with equal coarse signatures; never produced in the
    /// scanned range.
    SignaturesAgree { signature: SeifertSignature },
}

/// Decides whether two torus knots have homeomorphic `n`-fold covers.
pub fn twins_decision(k1: &TorusKnot, k2: &TorusKnot, n: u64) -> Result<Verdict, TorusError> {
    let (k1, k2) = (TorusKnot::new(k1.a1, k1.a2)?, TorusKnot::new(k2.a1, k2.a2)?);
    check_degree(n)?;
    if k1 == k2 {
        return Ok(Verdict::EquivalentKnots);
    }
    let (s1, s2) = (cover_signature(&k1, n)?, cover_signature(&k2, n)?);
    let evidence = if s1.genus != s2.genus {
        Some(Evidence::Genus { left: s1.genus, right: s2.genus })
    } else {
        let mut orders: Vec<u64> = s1.fibres.iter().chain(&s2.fibres).copied().collect();
        orders.sort_unstable();
        orders.dedup();
        let count = |s: &SeifertSignature, o: u64| s.fibres.iter().filter(|x| **x == o).count() as u64;
        orders
            .into_iter()
            .find(|o| count(&s1, *o) != count(&s2, *o))
            .map(|o| Evidence::FibreMultiplicity { order: o, left: count(&s1, o), right: count(&s2, o) })
            .or_else(|| {
                (s1.flags != s2.flags).then(|| Evidence::Flags {
                    left: s1.flags.iter().copied().collect(),
                    right: s2.flags.iter().copied().collect(),
                })
            })
    };
    Ok(match evidence {
        Some(evidence) => Verdict::NotTwins { left: s1, right: s2, evidence },
        None => Verdict::SignaturesAgree { signature: s1 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u64, b: u64) -> TorusKnot {
        TorusKnot::new(a, b).unwrap()
    }

    fn sig(g: u64, f: &[u64]) -> SeifertSignature {
        SeifertSignature::new(g, f.to_vec(), Default::default())
    }

    #[test]
    fn recovery_examples() {
        assert_eq!(recover_torus_knot(&sig(0, &[2, 3, 5]), 5).unwrap(), (t(2, 3), CoverCase { tag: CaseTag::C1, swapped: false }));
        assert_eq!(recover_torus_knot(&sig(1, &[]), 6).unwrap().0, t(2, 3));
        assert_eq!(recover_torus_knot(&sig(1, &[]), 6).unwrap().1.tag, CaseTag::C3f);
        let lens = cover_signature(&t(2, 3), 2).unwrap();
        assert_eq!(recover_torus_knot(&lens, 2).unwrap(), (t(2, 3), CoverCase { tag: CaseTag::C2d, swapped: false }));
        assert_eq!(recover_torus_knot(&sig(0, &[3, 3]), 2).unwrap().0, t(2, 3));
        assert!(matches!(recover_torus_knot(&sig(2, &[7]), 21), Err(TorusError::NotACoverSignature(_))));
        let mut flagged = sig(0, &[2, 3, 5]);
        flagged.flags.insert(SignatureFlag::LensSpace);
        assert!(recover_torus_knot(&flagged, 5).is_err());
    }

    #[test]
    fn shapes_that_are_not_covers() {
        for (g, f, n) in [(0, &[2, 3][..], 7), (0, &[4, 6, 5][..], 5), (0, &[2, 2, 3][..], 2), (3, &[][..], 6), (0, &[1, 2, 3][..], 5)] {
            assert!(recover_torus_knot(&sig(g, f), n).is_err(), "{g} {f:?} {n}");
        }
        assert!(matches!(recover_torus_knot(&sig(0, &[2, 3, 5]), 1), Err(TorusError::InvalidDegree(1))));
    }

    #[test]
    fn two_b_with_a_non_coprime_order() {
        // (4, 5) with n = 2: the order a1 / d = 2 shares a factor with n
        let s = cover_signature(&t(4, 5), 2).unwrap();
        assert_eq!(classify_case(&t(4, 5), 2).unwrap().0.tag, CaseTag::C2b);
        assert_eq!(s.fibres, vec![2, 5, 5]);
        assert_eq!(recover_torus_knot(&s, 2).unwrap().0, t(4, 5));
    }

    #[test]
    fn sum_product_roots() {
        assert_eq!(solve_sum_product(5, 6), Some((2, 3)));
        assert_eq!(solve_sum_product(0, 3), None);
        assert_eq!(solve_sum_product(4, 5), None);
    }

    #[test]
    fn twins_examples() {
        assert_eq!(twins_decision(&t(2, 3), &TorusKnot { a1: 3, a2: 2 }, 4).unwrap(), Verdict::EquivalentKnots);
        match twins_decision(&t(2, 3), &t(2, 5), 3).unwrap() {
            Verdict::NotTwins { left, right, evidence } => {
                assert_eq!(left.fibres, vec![2, 2, 2]);
                assert_eq!(right.fibres, vec![2, 3, 5]);
                assert_eq!(evidence, Evidence::FibreMultiplicity { order: 2, left: 3, right: 1 });
            }
            v => panic!("{v:?}"),
        }
        match twins_decision(&t(2, 3), &t(2, 7), 2).unwrap() {
            Verdict::NotTwins { left, right, evidence } => {
                assert_eq!((left.fibres, right.fibres), (vec![3, 3], vec![7, 7]));
                assert_eq!(evidence, Evidence::FibreMultiplicity { order: 3, left: 2, right: 0 });
            }
            v => panic!("{v:?}"),
        }
        assert!(matches!(
            twins_decision(&t(2, 3), &t(3, 4), 6).unwrap(),
            Verdict::NotTwins { evidence: Evidence::FibreMultiplicity { order: 2, left: 0, right: 3 }, .. }
        ));
        assert!(matches!(twins_decision(&t(2, 3), &t(3, 5), 15).unwrap(), Verdict::NotTwins { evidence: Evidence::Genus { .. }, .. }));
    }
}
