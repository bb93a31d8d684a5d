use std::collections::{BTreeMap, HashMap};

use super::diagram::{Arc, PlanarDiagram};
use super::poly::{DensePoly, LaurentPolynomial};
use super::DiagramError;

/// Default crossing cap for bracket evaluation.
pub const DEFAULT_BRACKET_CAP: usize = 26;

/// Environment variable overriding the crossing cap.
pub const BRACKET_CAP_ENV: &str = "KNOTCOVER_BRACKET_CAP";

/// Crossing cap from the environment, falling back to the default.
pub fn bracket_cap_from_env() -> usize {
    std::env::var(BRACKET_CAP_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BRACKET_CAP)
}

fn check_cap(d: &PlanarDiagram, cap: usize) -> Result<(), DiagramError> {
    if d.crossings.len() > cap {
        return Err(DiagramError::CrossingCap { cap, found: d.crossings.len() });
    }
    Ok(())
}

/// Kauffman bracket with the default cap.
pub fn kauffman_bracket(d: &PlanarDiagram) -> Result<LaurentPolynomial, DiagramError> {
    kauffman_bracket_capped(d, DEFAULT_BRACKET_CAP)
}

/// Kauffman bracket `<D>` with `<O> = 1`, `<X> = A<=> + A^-1<||>` and loop value
/// `-A^2 - A^-2`.
///
/// The state sum is evaluated by contracting crossings one at a time and keeping,
/// for every pairing of the open arc ends, the partial sum over the states seen so
/// far. The result equals the plain enumeration in [`bracket_state_sum`].
pub fn kauffman_bracket_capped(d: &PlanarDiagram, cap: usize) -> Result<LaurentPolynomial, DiagramError> {
    check_cap(d, cap)?;
    d.partner_table()?;
    let delta = DensePoly { low: -2, coeffs: vec![-1, 0, 0, 0, -1] };
    if d.crossings.is_empty() {
        return Ok(free_loop_bracket(d.free_loops));
    }
    let order = contraction_order(d);
    // pairing of open arc ends, kept as a sorted list of (end, partner) with end < partner
    let mut states: HashMap<Vec<(Arc, Arc)>, DensePoly> = HashMap::new();
    states.insert(Vec::new(), DensePoly::one());
    for c in order {
        let x = d.crossings[c];
        let smoothings = [([(x[0], x[1]), (x[2], x[3])], 1i64), ([(x[0], x[3]), (x[1], x[2])], -1i64)];
        let mut next: HashMap<Vec<(Arc, Arc)>, DensePoly> = HashMap::with_capacity(states.len() * 2);
        for (pairing, poly) in &states {
            let base: BTreeMap<Arc, Arc> =
                pairing.iter().flat_map(|(a, b)| [(*a, *b), (*b, *a)]).collect();
            for (pairs, exp) in &smoothings {
                let mut m = base.clone();
                let mut closed = 0u32;
                for (u, v) in pairs {
                    closed += join(&mut m, *u, *v);
                }
                let mut key: Vec<(Arc, Arc)> = m.iter().filter(|(a, b)| a < b).map(|(a, b)| (*a, *b)).collect();
                key.sort_unstable();
                let mut term = poly.mul(&DensePoly::monomial(*exp));
                for _ in 0..closed {
                    term = term.mul(&delta);
                }
                next.entry(key).or_insert_with(|| DensePoly { low: 0, coeffs: Vec::new() }).add_assign(&term);
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    let total = states.remove(&Vec::new()).map(|p| p.to_laurent()).unwrap_or_default();
    let mut result = total.div_exact(&LaurentPolynomial::delta()).ok_or_else(|| {
        DiagramError::Invalid("bracket state sum not divisible by the loop value".into())
    })?;
    if d.free_loops > 0 {
        result = &result * &LaurentPolynomial::delta().pow(d.free_loops);
    }
    Ok(result)
}

fn free_loop_bracket(loops: u32) -> LaurentPolynomial {
    LaurentPolynomial::delta().pow(loops.saturating_sub(1))
}

/// Adds the path `u -- v` to a pairing of open ends; returns 1 if it closes a loop.
fn join(m: &mut BTreeMap<Arc, Arc>, u: Arc, v: Arc) -> u32 {
    if u == v {
        return 1;
    }
    match (m.remove(&u), m.remove(&v)) {
        (Some(pu), Some(pv)) => {
            if pu == v {
                1
            } else {
                m.insert(pu, pv);
                m.insert(pv, pu);
                0
            }
        }
        (Some(pu), None) => {
            m.insert(pu, v);
            m.insert(v, pu);
            0
        }
        (None, Some(pv)) => {
            m.insert(pv, u);
            m.insert(u, pv);
            0
        }
        (None, None) => {
            m.insert(u, v);
            m.insert(v, u);
            0
        }
    }
}

/// Greedy order keeping the boundary of the contracted region small.
fn contraction_order(d: &PlanarDiagram) -> Vec<usize> {
    let n = d.crossings.len();
    let mut done = vec![false; n];
    let mut open: BTreeMap<Arc, u32> = BTreeMap::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = None;
        let mut best_score = i64::MIN;
        for c in 0..n {
            if done[c] {
                continue;
            }
            let shared = d.crossings[c].iter().filter(|a| open.contains_key(a)).count() as i64;
            let score = if order.is_empty() { -(c as i64) } else { shared * 8 - c as i64 / 1024 };
            if best.is_none() || score > best_score {
                best = Some(c);
                best_score = score;
            }
        }
        let c = best.unwrap();
        done[c] = true;
        order.push(c);
        for a in d.crossings[c] {
            let e = open.entry(a).or_insert(0);
            *e += 1;
            if *e == 2 {
                open.remove(&a);
            }
        }
    }
    order
}

/// Plain `2^n` state enumeration, used as an independent oracle.
pub fn bracket_state_sum(d: &PlanarDiagram) -> Result<LaurentPolynomial, DiagramError> {
    let n = d.crossings.len();
    if n > 24 {
        return Err(DiagramError::CrossingCap { cap: 24, found: n });
    }
    d.partner_table()?;
    if n == 0 {
        return Ok(free_loop_bracket(d.free_loops));
    }
    let mut ids: BTreeMap<Arc, usize> = BTreeMap::new();
    for x in &d.crossings {
        for a in x {
            let k = ids.len();
            ids.entry(*a).or_insert(k);
        }
    }
    let mut counts: BTreeMap<(i64, u32), i64> = BTreeMap::new();
    for state in 0u64..(1u64 << n) {
        let mut uf: Vec<usize> = (0..ids.len()).collect();
        let mut a_count = 0i64;
        for (c, x) in d.crossings.iter().enumerate() {
            let i = |k: usize| ids[&x[k]];
            if state >> c & 1 == 0 {
                a_count += 1;
                union(&mut uf, i(0), i(1));
                union(&mut uf, i(2), i(3));
            } else {
                union(&mut uf, i(0), i(3));
                union(&mut uf, i(1), i(2));
            }
        }
        let loops = (0..uf.len()).filter(|k| find(&mut uf, *k) == *k).count() as u32;
        let exp = a_count - (n as i64 - a_count);
        *counts.entry((exp, loops + d.free_loops)).or_insert(0) += 1;
    }
    let delta = LaurentPolynomial::delta();
    let mut total = LaurentPolynomial::zero();
    for ((exp, loops), mult) in counts {
        let term = &LaurentPolynomial::monomial(mult, exp) * &delta.pow(loops.saturating_sub(1));
        total = &total + &term;
    }
    Ok(total)
}

fn find(uf: &mut [usize], mut x: usize) -> usize {
    while uf[x] != x {
        uf[x] = uf[uf[x]];
        x = uf[x];
    }
    x
}

fn union(uf: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(uf, a), find(uf, b));
    if ra != rb {
        uf[ra] = rb;
    }
}

/// Jones polynomial in the variable `A`: `(-A^3)^(-w) <D>`; substitute `t = A^-4`.
pub fn jones(d: &PlanarDiagram) -> Result<LaurentPolynomial, DiagramError> {
    jones_capped(d, DEFAULT_BRACKET_CAP)
}

pub fn jones_capped(d: &PlanarDiagram, cap: usize) -> Result<LaurentPolynomial, DiagramError> {
    let w = d.writhe()?;
    let b = kauffman_bracket_capped(d, cap)?;
    Ok(normalize_writhe(&b, w))
}

/// Multiplies a bracket by `(-A^3)^(-w)`.
pub fn normalize_writhe(bracket: &LaurentPolynomial, writhe: i64) -> LaurentPolynomial {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    &LaurentPolynomial::monomial(sign, -3 * writhe) * bracket
}
