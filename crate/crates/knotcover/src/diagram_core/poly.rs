use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Laurent polynomial in one variable with exact integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * A^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// The loop value `-A^2 - A^-2`.
    pub fn delta() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by `A^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// Substitutes `A -> A^-1`.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact division; returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (dlo, dhi) = (divisor.min_degree()?, divisor.max_degree()?);
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rhi) = rem.max_degree() {
            let rlo = rem.min_degree().unwrap_or(rhi);
            if rhi - rlo < dhi - dlo {
                return None;
            }
            let c = rem.coeff(rhi);
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let e = rhi - dhi;
            let term = Self::monomial(q, e);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// Rewrites a polynomial in `A` whose exponents share a residue mod 4 in the
    /// variable `t = A^-4`, returning pairs of (exponent of `t` times 4, coefficient)
    /// so that half-integral powers of `t` remain representable.
    pub fn to_t_quarter_exponents(&self) -> Vec<(i64, BigInt)> {
        self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect()
    }

    /// Human readable form in the variable `t = A^-4`, e.g. `t + t^3 - t^4` or
    /// `-t^(-5/2) - t^(-1/2)`.
    pub fn format_in_t(&self) -> String {
        let parts: Vec<(String, BigInt)> = self
            .to_t_quarter_exponents()
            .into_iter()
            .map(|(q, c)| {
                let e = if q % 4 == 0 {
                    format!("{}", q / 4)
                } else if q % 2 == 0 {
                    format!("({}/2)", q / 2)
                } else {
                    format!("({}/4)", q)
                };
                (e, c)
            })
            .collect();
        format_terms(&parts, "t")
    }
}

fn format_terms(parts: &[(String, BigInt)], var: &str) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in parts.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = mag.is_one();
        if e == "0" {
            out.push_str(&mag.to_string());
            continue;
        }
        if !unit {
            out.push_str(&mag.to_string());
        }
        out.push_str(var);
        if e != "1" {
            out.push('^');
            out.push_str(e);
        }
    }
    out
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(String, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let s = if *e < 0 { format!("({})", e) } else { e.to_string() };
                (s, c.clone())
            })
            .collect();
        f.write_str(&format_terms(&parts, "A"))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// Dense polynomial with machine coefficients used inside the bracket contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DensePoly {
    pub(crate) low: i64,
    pub(crate) coeffs: Vec<i128>,
}

impl DensePoly {
    pub(crate) fn one() -> Self {
        Self { low: 0, coeffs: vec![1] }
    }

    pub(crate) fn monomial(exp: i64) -> Self {
        Self { low: exp, coeffs: vec![1] }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    pub(crate) fn add_assign(&mut self, other: &DensePoly) {
        if other.coeffs.is_empty() {
            return;
        }
        if self.coeffs.is_empty() {
            *self = other.clone();
            return;
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i64).max(other.low + other.coeffs.len() as i64);
        if low < self.low || high > self.low + self.coeffs.len() as i64 {
            let mut v = vec![0i128; (high - low) as usize];
            for (i, c) in self.coeffs.iter().enumerate() {
                v[(self.low - low) as usize + i] = *c;
            }
            self.coeffs = v;
            self.low = low;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let idx = (other.low - self.low) as usize + i;
            self.coeffs[idx] = self.coeffs[idx].checked_add(*c).expect("bracket coefficient overflow");
        }
    }

    pub(crate) fn mul(&self, other: &DensePoly) -> DensePoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return DensePoly { low: 0, coeffs: Vec::new() };
        }
        let mut v = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let p = a.checked_mul(*b).expect("bracket coefficient overflow");
                v[i + j] = v[i + j].checked_add(p).expect("bracket coefficient overflow");
            }
        }
        DensePoly { low: self.low + other.low, coeffs: v }
    }

    pub(crate) fn to_laurent(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| (self.low + i as i64, BigInt::from(*c))),
        )
    }
}
