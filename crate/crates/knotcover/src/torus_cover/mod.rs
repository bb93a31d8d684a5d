//! Seifert invariants of cyclic branched covers of torus knots: the forward
//! map from `(a1, a2, n)`, its inverse, and exhaustive injectivity scans.

mod recover;
mod scan;
mod signature;

pub use recover::{recover_torus_knot, twins_decision, Evidence, Verdict};
pub use scan::{injectivity_scan, ScanReport, ScanRow};
pub use signature::{classify_case, cover_report, cover_signature, euler_check, CoverReport};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("invalid torus knot: {0}")]
    InvalidKnot(String),
    #[error("cover degree must be at least 2, got {0}")]
    InvalidDegree(u64),
    #[error("not the signature of a torus knot cover: {0}")]
    NotACoverSignature(String),
}

/// The `(a1, a2)` torus knot, stored with `a1 < a2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusKnot {
    pub a1: u64,
    pub a2: u64,
}

impl TorusKnot {
    pub fn new(a: u64, b: u64) -> Result<Self, TorusError> {
        if a < 2 || b < 2 {
            return Err(TorusError::InvalidKnot(format!("({a}, {b}): both parameters must be at least 2")));
        }
        if a.gcd(&b) != 1 {
            return Err(TorusError::InvalidKnot(format!("({a}, {b}) are not coprime")));
        }
        Ok(Self { a1: a.min(b), a2: a.max(b) })
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.a1, self.a2)
    }
}

/// Degree `n` with `d1 = gcd(a1, n)`, `d2 = gcd(a2, n)` and `d = d1 * d2`, in the
/// (possibly swapped) order used by the case conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverParams {
    pub n: u64,
    pub d1: u64,
    pub d2: u64,
    pub d: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    C1,
    C2a,
    C2b,
    C2c,
    C2d,
    C3a,
    C3b,
    C3c,
    C3d,
    C3e,
    C3f,
}

impl CaseTag {
    pub const ALL: [CaseTag; 11] = [
        CaseTag::C1,
        CaseTag::C2a,
        CaseTag::C2b,
        CaseTag::C2c,
        CaseTag::C2d,
        CaseTag::C3a,
        CaseTag::C3b,
        CaseTag::C3c,
        CaseTag::C3d,
        CaseTag::C3e,
        CaseTag::C3f,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::C1 => "1",
            CaseTag::C2a => "2a",
            CaseTag::C2b => "2b",
            CaseTag::C2c => "2c",
            CaseTag::C2d => "2d",
            CaseTag::C3a => "3a",
            CaseTag::C3b => "3b",
            CaseTag::C3c => "3c",
            CaseTag::C3d => "3d",
            CaseTag::C3e => "3e",
            CaseTag::C3f => "3f",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = TorusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| TorusError::NotACoverSignature(format!("unknown case tag {s:?}")))
    }
}

impl Serialize for CaseTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CaseTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A case tag and whether `a1` and `a2` were exchanged to meet its conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCase {
    pub tag: CaseTag,
    pub swapped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SignatureFlag {
    LensSpace,
    MultipleFibrationsPossible,
}

/// Genus of the orientable base and the orders of the exceptional fibres.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeifertSignature {
    pub genus: u64,
    /// Sorted, with multiplicity.
    pub fibres: Vec<u64>,
    pub flags: BTreeSet<SignatureFlag>,
}

impl SeifertSignature {
    pub fn new(genus: u64, mut fibres: Vec<u64>, flags: BTreeSet<SignatureFlag>) -> Self {
        fibres.sort_unstable();
        Self { genus, fibres, flags }
    }

    /// Distinct orders with their multiplicities, ascending by order.
    pub fn classes(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        for o in &self.fibres {
            match out.last_mut() {
                Some((p, c)) if p == o => *c += 1,
                _ => out.push((*o, 1)),
            }
        }
        out
    }

    /// Every order at least 2, at most three distinct orders, pairwise coprime.
    pub fn is_well_formed(&self) -> bool {
        let cl = self.classes();
        cl.len() <= 3
            && self.fibres.iter().all(|o| *o >= 2)
            && cl.iter().enumerate().all(|(i, (a, _))| cl[i + 1..].iter().all(|(b, _)| a.gcd(b) == 1))
    }
}

impl fmt::Display for SeifertSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fib: Vec<String> = self.fibres.iter().map(|o| o.to_string()).collect();
        write!(f, "g={} fibres={{{}}}", self.genus, fib.join(","))?;
        if !self.flags.is_empty() {
            let fl: Vec<String> = self.flags.iter().map(|x| format!("{x:?}")).collect();
            write!(f, " flags={{{}}}", fl.join(","))?;
        }
        Ok(())
    }
}

pub(crate) fn check_degree(n: u64) -> Result<(), TorusError> {
    if n < 2 {
        return Err(TorusError::InvalidDegree(n));
    }
    Ok(())
}
