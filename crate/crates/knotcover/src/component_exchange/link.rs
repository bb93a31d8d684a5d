use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ExchangeError;
use crate::diagram_core::{Arc, LayerBuilder, PlanarDiagram};
use crate::periodic_quotient::QuotientNormalForm;

/// Which component of the link a strand belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    Knot,
    Axis,
}

/// Roles of the box-carrying component and of the clasping circle, in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Labels {
    /// The boxes sit on the knot quotient.
    KA,
    /// The boxes sit on the axis.
    AK,
}

impl Labels {
    pub fn swapped(self) -> Self {
        match self {
            Labels::KA => Labels::AK,
            Labels::AK => Labels::KA,
        }
    }

    /// Role of the box-carrying component.
    pub fn boxed(self) -> Role {
        match self {
            Labels::KA => Role::Knot,
            Labels::AK => Role::Axis,
        }
    }
}

/// Parameters of a knot-quotient and axis link drawn as a 4-plat.
///
/// Box `i` (1-based, from the top) holds `boxes[i - 1]` half-twists; its plat
/// exponent is `mirror * (-1)^(i - 1) * boxes[i - 1]`. Clasp `j` (0-based, between
/// boxes `j` and `j + 1`) is a full twist of sign `mirror * (-1)^j`, flipped once
/// for each neighbouring box whose `moved` flag is set. Boxes with `on_axis` set
/// twist the clasping circle instead of the boxed component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalFormLink {
    pub k: usize,
    pub boxes: Vec<i64>,
    pub mirror: i8,
    pub labels: Labels,
    #[serde(default)]
    pub moved: Vec<bool>,
    #[serde(default)]
    pub on_axis: Vec<bool>,
}

impl NormalFormLink {
    pub fn new(k: usize, boxes: Vec<i64>, mirror: i8, labels: Labels) -> Result<Self, ExchangeError> {
        let n = boxes.len();
        let l = Self { k, boxes, mirror, labels, moved: vec![false; n], on_axis: vec![false; n] };
        l.check()?;
        Ok(l)
    }

    /// The link of an alternating quotient diagram together with the axis.
    pub fn from_quotient(q: &QuotientNormalForm) -> Result<Self, ExchangeError> {
        Self::new(q.k, q.boxes.iter().map(|c| *c as i64).collect(), q.mirror, Labels::KA)
    }

    pub fn check(&self) -> Result<(), ExchangeError> {
        let bad = |m: String| Err(ExchangeError::Malformed(m));
        if self.k == 0 {
            return bad("k must be positive".into());
        }
        if self.boxes.len() + 1 != self.k {
            return bad(format!("k = {} needs {} boxes, got {}", self.k, self.k - 1, self.boxes.len()));
        }
        if self.moved.len() != self.boxes.len() || self.on_axis.len() != self.boxes.len() {
            return bad("one position flag per box is required".into());
        }
        if self.mirror != 1 && self.mirror != -1 {
            return bad("mirror must be + or -".into());
        }
        Ok(())
    }

    /// True when no box has been moved across the axis or transferred.
    pub fn is_plain(&self) -> bool {
        !self.moved.iter().any(|m| *m) && !self.on_axis.iter().any(|m| *m)
    }

    /// Sign of clasp `j`, `0 <= j < k`.
    pub fn clasp_sign(&self, j: usize) -> i64 {
        let base = if j.is_multiple_of(2) { self.mirror as i64 } else { -(self.mirror as i64) };
        let flips = (j > 0 && self.moved[j - 1]) as usize + (j < self.boxes.len() && self.moved[j]) as usize;
        if flips % 2 == 1 {
            -base
        } else {
            base
        }
    }

    /// Plat exponent of box `i` (1-based).
    pub fn box_exponent(&self, i: usize) -> i64 {
        self.box_factor(i) * self.boxes[i - 1]
    }

    /// `+-1` converting between box counts and plat exponents.
    pub(crate) fn box_factor(&self, i: usize) -> i64 {
        if i % 2 == 1 {
            self.mirror as i64
        } else {
            -(self.mirror as i64)
        }
    }

    pub fn crossing_count(&self) -> u64 {
        self.boxes.iter().map(|c| c.unsigned_abs()).sum::<u64>() + 2 * self.k as u64
    }

    pub fn swap_labels(&self) -> Self {
        Self { labels: self.labels.swapped(), ..self.clone() }
    }

    /// The same link read from the bottom: the plat turned upside down. Box
    /// order reverses and every box count changes sign.
    pub fn reversed(&self) -> Self {
        let rev = |v: &[bool]| v.iter().rev().copied().collect::<Vec<_>>();
        let mirror = if self.k.is_multiple_of(2) { -self.mirror } else { self.mirror };
        Self {
            k: self.k,
            boxes: self.boxes.iter().rev().map(|c| -c).collect(),
            mirror,
            labels: self.labels,
            moved: rev(&self.moved),
            on_axis: rev(&self.on_axis),
        }
    }

    /// Least of the parameters and their upside-down reading, ordered by
    /// boxes, position flags and then `+` before `-`.
    pub fn canonical(&self) -> Self {
        let key = |l: &Self| (l.boxes.clone(), l.moved.clone(), l.on_axis.clone(), -l.mirror);
        let r = self.reversed();
        if key(&r) < key(self) {
            r
        } else {
            self.clone()
        }
    }
}

fn flag_list(v: &[bool]) -> String {
    v.iter().enumerate().filter(|(_, f)| **f).map(|(i, _)| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for NormalFormLink {
    /// `k;c1,...;+|-;labels=KA|AK`, followed by `;moved=i,...` and
    /// `;axis=i,...` (1-based box indices) when any flag is set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let boxes: Vec<String> = self.boxes.iter().map(|c| c.to_string()).collect();
        let labels = match self.labels {
            Labels::KA => "KA",
            Labels::AK => "AK",
        };
        write!(f, "{};{};{};labels={}", self.k, boxes.join(","), if self.mirror > 0 { "+" } else { "-" }, labels)?;
        if self.moved.iter().any(|m| *m) {
            write!(f, ";moved={}", flag_list(&self.moved))?;
        }
        if self.on_axis.iter().any(|m| *m) {
            write!(f, ";axis={}", flag_list(&self.on_axis))?;
        }
        Ok(())
    }
}

impl FromStr for NormalFormLink {
    type Err = ExchangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExchangeError::Malformed(format!("expected k;c1,...;+|-;labels=KA|AK, got {:?}", s));
        let parts: Vec<&str> = s.trim().split(';').map(str::trim).collect();
        if parts.len() < 3 {
            return Err(bad());
        }
        let k: usize = parts[0].parse().map_err(|_| bad())?;
        let boxes: Vec<i64> = if parts[1].is_empty() {
            Vec::new()
        } else {
            parts[1].split(',').map(|c| c.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<_, _>>()?
        };
        let mirror = match parts[2] {
            "+" => 1,
            "-" => -1,
            _ => return Err(bad()),
        };
        let n = boxes.len();
        let mut l = Self { k, boxes, mirror, labels: Labels::KA, moved: vec![false; n], on_axis: vec![false; n] };
        let mut seen = BTreeSet::new();
        for p in &parts[3..] {
            let (key, val) = p.split_once('=').ok_or_else(bad)?;
            if !seen.insert(key) {
                return Err(bad());
            }
            match key {
                "labels" => {
                    l.labels = match val {
                        "KA" => Labels::KA,
                        "AK" => Labels::AK,
                        _ => return Err(bad()),
                    }
                }
                "moved" | "axis" => {
                    let flags = if key == "moved" { &mut l.moved } else { &mut l.on_axis };
                    for i in val.split(',').filter(|x| !x.is_empty()) {
                        let i: usize = i.trim().parse().map_err(|_| bad())?;
                        if i == 0 || i > n {
                            return Err(bad());
                        }
                        flags[i - 1] = true;
                    }
                }
                _ => return Err(bad()),
            }
        }
        l.check()?;
        Ok(l)
    }
}

/// An oriented two-component diagram with the arcs of each component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledLink {
    pub diagram: PlanarDiagram,
    pub knot_arcs: Vec<Arc>,
    pub axis_arcs: Vec<Arc>,
}

impl LabeledLink {
    pub fn role_of(&self, a: Arc) -> Option<Role> {
        if self.knot_arcs.contains(&a) {
            Some(Role::Knot)
        } else if self.axis_arcs.contains(&a) {
            Some(Role::Axis)
        } else {
            None
        }
    }
}

/// The plat diagram of `l`, oriented so that the linking number is `>= 0`.
///
/// Crossing count is the sum of `|boxes|` plus `2k` knot-axis crossings.
pub fn nfl_to_pd(l: &NormalFormLink) -> Result<LabeledLink, ExchangeError> {
    l.check()?;
    let mut b = LayerBuilder::new();
    b.cap(0);
    b.cap(2);
    b.sigma(1, 2 * l.clasp_sign(0));
    for i in 1..l.k {
        b.sigma(if l.on_axis[i - 1] { 2 } else { 0 }, l.box_exponent(i));
        b.sigma(1, 2 * l.clasp_sign(i));
    }
    b.cup(0);
    b.cup(0);
    let (d, _) = b.finish()?;
    let comps = d.components()?;
    if comps.len() != 2 || d.free_loops != 0 {
        return Err(ExchangeError::WrongComponentCount(comps.len() + d.free_loops as usize));
    }
    // the strand from position 1 enters the first clasp crossing at its
    // north-west port, slot 1 when the upper-left strand passes over
    let boxed_arc = d.crossings[0][if l.clasp_sign(0) > 0 { 1 } else { 0 }];
    let arcs: Vec<Vec<Arc>> = comps.iter().map(|c| c.arcs(&d)).collect();
    let boxed = if arcs[0].contains(&boxed_arc) { 0 } else { 1 };
    let mut o = d.oriented(&[false, false])?;
    if linking_number(&o)? < 0 {
        o = d.oriented(&[false, true])?;
    }
    let (mut knot, mut axis) = (arcs[boxed].clone(), arcs[1 - boxed].clone());
    if l.labels.boxed() == Role::Axis {
        std::mem::swap(&mut knot, &mut axis);
    }
    knot.sort_unstable();
    axis.sort_unstable();
    Ok(LabeledLink { diagram: o, knot_arcs: knot, axis_arcs: axis })
}

/// Half the signed count of crossings between the two components.
pub fn linking_number(d: &PlanarDiagram) -> Result<i64, ExchangeError> {
    let comps = d.components()?;
    let n = comps.len() + d.free_loops as usize;
    if n != 2 {
        return Err(ExchangeError::WrongComponentCount(n));
    }
    if comps.len() < 2 {
        return Ok(0);
    }
    let signs = d.signs()?;
    let first: BTreeSet<Arc> = comps[0].arcs(d).into_iter().collect();
    let twice: i64 = d
        .crossings
        .iter()
        .zip(&signs)
        .filter(|(x, _)| first.contains(&x[0]) != first.contains(&x[1]))
        .map(|(_, s)| *s as i64)
        .sum();
    Ok(twice / 2)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::diagram_core::{examples, jones, kauffman_bracket, LaurentPolynomial};
    use crate::periodic_quotient::nf_to_tangle;

    fn nfl(s: &str) -> NormalFormLink {
        s.parse().unwrap()
    }

    /// Bracket up to the unit `(-A^3)^m`.
    pub(crate) fn unit_free(p: &LaurentPolynomial) -> LaurentPolynomial {
        let m = p.min_degree().unwrap();
        let sh = m.div_euclid(3);
        let q = p.shift(-3 * sh);
        if sh % 2 != 0 {
            &q * &LaurentPolynomial::monomial(-1, 0)
        } else {
            q
        }
    }

    /// The quotient closure with a circle around its `k` closure arcs, built
    /// directly from the pinwheel tangle.
    fn ringed_closure(q: &QuotientNormalForm) -> PlanarDiagram {
        let t = nf_to_tangle(q).unwrap();
        let k = q.k;
        let mut b = LayerBuilder::new();
        for i in 0..k {
            b.cap(i);
        }
        b.cap(k);
        for j in 0..k {
            b.cross(k + 1 + j, true);
        }
        for j in 0..k {
            b.cross(2 * k - j, true);
        }
        b.cup(k);
        t.apply(&mut b);
        for j in 0..k {
            b.cup(k - 1 - j);
        }
        b.finish().unwrap().0
    }

    #[test]
    fn text_format_round_trips() {
        for s in ["1;;+;labels=KA", "3;2,3;-;labels=AK", "4;3,-1,0;+;labels=KA;moved=1,3", "3;2,2;+;labels=AK;axis=2"] {
            assert_eq!(nfl(s).to_string(), s);
        }
        assert_eq!(nfl("2;4;+").labels, Labels::KA);
        for s in ["2;;+", "0;;+", "2;1;x", "2;1;+;labels=XX", "2;1;+;moved=2", "2;1;+;labels=KA;labels=AK"] {
            assert!(s.parse::<NormalFormLink>().is_err(), "{s}");
        }
    }

    #[test]
    fn crossing_counts() {
        assert_eq!(nfl_to_pd(&nfl("1;;+")).unwrap().diagram.crossing_count(), 2);
        assert_eq!(nfl_to_pd(&nfl("2;2;+")).unwrap().diagram.crossing_count(), 6);
        assert_eq!(nfl_to_pd(&nfl("3;2,2;+")).unwrap().diagram.crossing_count(), 10);
        assert_eq!(nfl("4;3,1,2;-").crossing_count(), 14);
    }

    #[test]
    fn size_one_is_the_hopf_link() {
        let l = nfl_to_pd(&nfl("1;;+")).unwrap();
        assert_eq!(linking_number(&l.diagram).unwrap(), 1);
        let hopf = examples::hopf().oriented(&[false, true]).unwrap();
        assert_eq!(linking_number(&hopf).unwrap(), 1);
        assert_eq!(jones(&l.diagram).unwrap().format_in_t(), "-t^(1/2) - t^(5/2)");
        assert_eq!(jones(&hopf).unwrap(), jones(&l.diagram).unwrap());
        assert_eq!(l.knot_arcs.len() + l.axis_arcs.len(), 4);
    }

    #[test]
    fn linking_numbers() {
        assert_eq!(linking_number(&examples::hopf().with_sequential_orientation().unwrap()).unwrap().abs(), 1);
        let mut unlink = PlanarDiagram::unknot();
        unlink.free_loops = 2;
        assert_eq!(linking_number(&unlink).unwrap(), 0);
        assert!(matches!(linking_number(&examples::trefoil()), Err(ExchangeError::WrongComponentCount(1))));
        // each even box reverses the direction of the knot through the next clasp
        for (s, lk) in [("2;1;+", 2), ("2;2;+", 0), ("2;3;+", 2), ("3;1,1;+", 3), ("3;2,1;+", 1), ("3;2,2;+", 1), ("4;1,2,1;+", 0), ("4;3,1,2;+", 2)] {
            let l = nfl_to_pd(&nfl(s)).unwrap();
            assert_eq!(linking_number(&l.diagram).unwrap(), lk, "{s}");
        }
    }

    #[test]
    fn all_odd_boxes_link_k_times() {
        for s in ["2;1;-", "3;1,3;+", "4;1,1,1;+", "5;3,1,1,3;-"] {
            let l = nfl(s);
            assert_eq!(linking_number(&nfl_to_pd(&l).unwrap().diagram).unwrap(), l.k as i64, "{s}");
        }
    }

    #[test]
    fn plat_matches_the_ringed_quotient_closure() {
        for s in ["1;;+", "2;1;+", "2;2;-", "3;2,1;+", "3;1,3;-", "4;1,2,1;+", "4;3,1,2;-"] {
            let q: QuotientNormalForm = s.parse().unwrap();
            let ring = kauffman_bracket(&ringed_closure(&q)).unwrap();
            let plat = kauffman_bracket(&nfl_to_pd(&NormalFormLink::from_quotient(&q).unwrap()).unwrap().diagram).unwrap();
            assert_eq!(unit_free(&ring), unit_free(&plat), "{s}");
        }
    }

    #[test]
    fn labels_follow_the_boxes() {
        let l = nfl("3;2,3;+");
        let a = nfl_to_pd(&l).unwrap();
        let b = nfl_to_pd(&l.swap_labels()).unwrap();
        assert_eq!(a.knot_arcs, b.axis_arcs);
        assert_eq!(a.axis_arcs, b.knot_arcs);
        // the boxed component carries all self-crossings
        let d = &a.diagram;
        let selfx = d.crossings.iter().filter(|x| a.role_of(x[0]) == a.role_of(x[1])).count();
        assert_eq!(selfx, 5);
        assert!(d.crossings.iter().filter(|x| a.role_of(x[0]) == a.role_of(x[1])).all(|x| a.role_of(x[0]) == Some(Role::Knot)));
    }

    #[test]
    fn reading_upside_down_keeps_the_link() {
        for s in ["2;3;+", "3;2,3;-", "4;3,1,2;+;moved=2", "5;1,2,3,4;-;moved=1,4"] {
            let l = nfl(s);
            let r = l.reversed();
            assert_eq!(r.reversed(), l);
            let a = kauffman_bracket(&nfl_to_pd(&l).unwrap().diagram).unwrap();
            let b = kauffman_bracket(&nfl_to_pd(&r).unwrap().diagram).unwrap();
            assert_eq!(unit_free(&a), unit_free(&b), "{s}");
            assert_eq!(l.canonical(), r.canonical());
        }
    }
}
