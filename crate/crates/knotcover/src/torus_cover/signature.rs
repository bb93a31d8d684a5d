use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{check_degree, CaseTag, CoverCase, CoverParams, SeifertSignature, SignatureFlag, TorusError, TorusKnot};

/// Case tag and gcd data of the `n`-fold cover of `knot`. When exactly one `di`
/// exceeds 1, or in the both-nontrivial cases exactly one `di` equals `ai`, the
/// roles are exchanged so that this is `d1`.
pub fn classify_case(knot: &TorusKnot, n: u64) -> Result<(CoverCase, CoverParams), TorusError> {
    let knot = TorusKnot::new(knot.a1, knot.a2)?;
    check_degree(n)?;
    let (a1, a2) = (knot.a1, knot.a2);
    let (g1, g2) = (a1.gcd(&n), a2.gcd(&n));
    let swapped = match (g1 > 1, g2 > 1) {
        (false, true) => true,
        (true, true) => g1 != a1 && g2 == a2,
        _ => false,
    };
    let (a1, a2, d1, d2) = if swapped { (a2, a1, g2, g1) } else { (a1, a2, g1, g2) };
    let d = d1 * d2;
    let tag = if d1 == 1 && d2 == 1 {
        CaseTag::C1
    } else if d2 == 1 {
        match (d1 == a1, d == n) {
            (false, false) => CaseTag::C2a,
            (false, true) => CaseTag::C2b,
            (true, false) => CaseTag::C2c,
            (true, true) => CaseTag::C2d,
        }
    } else {
        match (d1 == a1, d2 == a2, d == n) {
            (false, false, false) => CaseTag::C3a,
            (false, false, true) => CaseTag::C3b,
            (true, false, false) => CaseTag::C3c,
            (true, false, true) => CaseTag::C3d,
            (true, true, false) => CaseTag::C3e,
            (true, true, true) => CaseTag::C3f,
            (false, true, _) => unreachable!("swap puts the full divisor first"),
        }
    };
    Ok((CoverCase { tag, swapped }, CoverParams { n, d1, d2, d }))
}

/// Genus and exceptional fibres of the `n`-fold cyclic branched cover of `knot`.
pub fn cover_signature(knot: &TorusKnot, n: u64) -> Result<SeifertSignature, TorusError> {
    let (case, p) = classify_case(knot, n)?;
    let (a1, a2) = if case.swapped { (knot.a2, knot.a1) } else { (knot.a1, knot.a2) };
    let CoverParams { d1, d2, d, .. } = p;
    let rep = |count: u64, order: u64| std::iter::repeat_n(order, count as usize);
    let mut flags = BTreeSet::new();
    let (genus, fibres): (u64, Vec<u64>) = match case.tag {
        CaseTag::C1 => (0, vec![a1, a2, n]),
        CaseTag::C2a => (0, rep(d, a2).chain([a1 / d, n / d]).collect()),
        CaseTag::C2b => (0, rep(n, a2).chain([a1 / d]).collect()),
        CaseTag::C2c => (0, rep(d, a2).chain([n / d]).collect()),
        CaseTag::C2d => {
            if n == 2 {
                flags.insert(SignatureFlag::LensSpace);
                flags.insert(SignatureFlag::MultipleFibrationsPossible);
            }
            (0, rep(n, a2).collect())
        }
        tag => {
            let g = (d1 - 1) * (d2 - 1) / 2;
            let fib = match tag {
                CaseTag::C3a => rep(d1, a2 / d2).chain(rep(d2, a1 / d1)).chain([n / d]).collect(),
                CaseTag::C3b => rep(d1, a2 / d2).chain(rep(d2, a1 / d1)).collect(),
                CaseTag::C3c => rep(d1, a2 / d2).chain([n / d]).collect(),
                CaseTag::C3d => rep(d1, a2 / d2).collect(),
                CaseTag::C3e => vec![n / d],
                _ => Vec::new(),
            };
            (g, fib)
        }
    };
    debug_assert!(fibres.iter().all(|o| *o >= 2), "order-1 fibre in case {}", case.tag);
    Ok(SeifertSignature::new(genus, fibres, flags))
}

/// Orbifold Euler characteristic of the base, `2 - 2g - sum(1 - 1/order)`,
/// compared exactly with `d * (1/a1 + 1/a2 + 1/n - 1)`.
pub fn euler_check(sig: &SeifertSignature, knot: &TorusKnot, n: u64) -> bool {
    let r = |a: u64| Ratio::new(1i128, a as i128);
    if knot.a1 == 0 || knot.a2 == 0 || n == 0 || sig.fibres.contains(&0) {
        return false;
    }
    let d = (knot.a1 * knot.a2).gcd(&n) as i128;
    let lhs = sig.fibres.iter().fold(Ratio::from_integer(2 - 2 * sig.genus as i128), |acc, o| acc - (Ratio::from_integer(1) - r(*o)));
    let rhs = Ratio::from_integer(d) * (r(knot.a1) + r(knot.a2) + r(n) - Ratio::from_integer(1));
    lhs == rhs
}

/// The machine-readable form of one cover computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub a1: u64,
    pub a2: u64,
    pub n: u64,
    pub case: CaseTag,
    pub swapped: bool,
    pub d1: u64,
    pub d2: u64,
    pub d: u64,
    pub genus: u64,
    pub fibres: Vec<u64>,
    pub flags: Vec<SignatureFlag>,
}

pub fn cover_report(knot: &TorusKnot, n: u64) -> Result<CoverReport, TorusError> {
    let (case, p) = classify_case(knot, n)?;
    let sig = cover_signature(knot, n)?;
    Ok(CoverReport {
        a1: knot.a1,
        a2: knot.a2,
        n,
        case: case.tag,
        swapped: case.swapped,
        d1: p.d1,
        d2: p.d2,
        d: p.d,
        genus: sig.genus,
        fibres: sig.fibres,
        flags: sig.flags.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u64, b: u64) -> TorusKnot {
        TorusKnot::new(a, b).unwrap()
    }

    fn tag(a: u64, b: u64, n: u64) -> CaseTag {
        classify_case(&t(a, b), n).unwrap().0.tag
    }

    #[test]
    fn case_examples() {
        let (c, p) = classify_case(&t(2, 3), 5).unwrap();
        assert_eq!((c.tag, p.d1, p.d2, p.d), (CaseTag::C1, 1, 1, 1));
        let (c, p) = classify_case(&t(2, 5), 4).unwrap();
        assert_eq!((c.tag, c.swapped, p.d1, p.d2, p.d), (CaseTag::C2c, false, 2, 1, 2));
        let (c, p) = classify_case(&t(4, 15), 10).unwrap();
        assert_eq!((c.tag, p.d1, p.d2, p.d), (CaseTag::C3b, 2, 5, 10));
        assert_eq!(tag(3, 4, 6), CaseTag::C3d);
        assert_eq!(tag(2, 3, 12), CaseTag::C3e);
        assert_eq!(tag(2, 3, 6), CaseTag::C3f);
        // only a2 meets n: the roles are exchanged
        let (c, p) = classify_case(&t(2, 3), 3).unwrap();
        assert_eq!((c.tag, c.swapped, p.d1), (CaseTag::C2d, true, 3));
        // both meet n, only a2 fully: exchanged so that d1 = a1
        let (c, p) = classify_case(&t(4, 5), 10).unwrap();
        assert_eq!((c.tag, c.swapped, p.d1, p.d2), (CaseTag::C3d, true, 5, 2));
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(TorusKnot::new(1, 3), Err(TorusError::InvalidKnot(_))));
        assert!(matches!(TorusKnot::new(4, 6), Err(TorusError::InvalidKnot(_))));
        assert!(matches!(classify_case(&t(2, 3), 1), Err(TorusError::InvalidDegree(1))));
        assert!(classify_case(&TorusKnot { a1: 4, a2: 6 }, 3).is_err());
    }

    #[test]
    fn signature_examples() {
        let s = cover_signature(&t(2, 3), 5).unwrap();
        assert_eq!((s.genus, s.fibres.clone(), s.flags.is_empty()), (0, vec![2, 3, 5], true));
        let s = cover_signature(&t(2, 3), 2).unwrap();
        assert_eq!((s.genus, s.fibres.clone()), (0, vec![3, 3]));
        assert_eq!(s.flags, [SignatureFlag::LensSpace, SignatureFlag::MultipleFibrationsPossible].into_iter().collect());
        let s = cover_signature(&t(3, 4), 6).unwrap();
        assert_eq!((s.genus, s.fibres.clone()), (1, vec![2, 2, 2]));
        let s = cover_signature(&t(2, 3), 6).unwrap();
        assert_eq!((s.genus, s.fibres.clone()), (1, vec![]));
        // three fibre orders
        let s = cover_signature(&t(9, 10), 12).unwrap();
        assert_eq!(tag(9, 10, 12), CaseTag::C3a);
        assert_eq!((s.genus, s.fibres.clone()), (1, vec![2, 3, 3, 5, 5, 5]));
        // 2d with n > 2 is not a lens space
        assert!(cover_signature(&t(3, 5), 3).unwrap().flags.is_empty());
    }

    #[test]
    fn euler_examples() {
        assert!(euler_check(&cover_signature(&t(2, 3), 5).unwrap(), &t(2, 3), 5));
        let mut s = cover_signature(&t(3, 4), 6).unwrap();
        assert!(euler_check(&s, &t(3, 4), 6));
        s.genus = 0;
        assert!(!euler_check(&s, &t(3, 4), 6));
    }

    #[test]
    fn report_json_fields() {
        let j = serde_json::to_value(cover_report(&t(2, 3), 5).unwrap()).unwrap();
        assert_eq!(j["case"], "1");
        assert_eq!(j["genus"], 0);
        assert_eq!(j["fibres"], serde_json::json!([2, 3, 5]));
        assert_eq!(j["flags"], serde_json::json!([]));
    }
}
