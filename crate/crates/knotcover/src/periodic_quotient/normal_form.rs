use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::closure::AxisClosureDiagram;
use super::tangle::{TangleDiagram, TangleOp};
use super::QuotientError;
use crate::diagram_core::{
    alternating_unknot_check, face_of, faces, is_alternating, kink_sign, r1_add, reduce_r1_tracked, Corner, FaceMark, MoveKind, MoveRecord, PlanarDiagram,
};

/// Pinwheel parameters of an alternating quotient diagram of the trivial knot:
/// `k` closure arcs and `k - 1` twist boxes listed from the axis outwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientNormalForm {
    pub k: usize,
    pub boxes: Vec<u32>,
    /// `+1` or `-1`: the twist direction of the first box.
    pub mirror: i8,
}

impl QuotientNormalForm {
    /// Checked constructor; with `k = 1` there is no crossing and the mirror
    /// bit is stored as `+`.
    pub fn new(k: usize, boxes: Vec<u32>, mirror: i8) -> Result<Self, QuotientError> {
        let mirror = if k == 1 && mirror == -1 { 1 } else { mirror };
        let q = Self { k, boxes, mirror };
        q.check()?;
        Ok(q)
    }

    pub fn check(&self) -> Result<(), QuotientError> {
        if self.k == 0 {
            return Err(QuotientError::Malformed("k must be positive".into()));
        }
        if self.boxes.len() + 1 != self.k {
            return Err(QuotientError::Malformed(format!(
                "k = {} needs {} boxes, got {}",
                self.k,
                self.k - 1,
                self.boxes.len()
            )));
        }
        if self.boxes.contains(&0) {
            return Err(QuotientError::Malformed("box entries must be positive".into()));
        }
        if self.mirror != 1 && self.mirror != -1 {
            return Err(QuotientError::Malformed("mirror must be + or -".into()));
        }
        Ok(())
    }

    pub fn crossing_count(&self) -> u32 {
        self.boxes.iter().sum()
    }

    /// Twist direction of box `i` (0-based); consecutive boxes alternate.
    pub fn box_sign(&self, i: usize) -> i8 {
        if i.is_multiple_of(2) {
            self.mirror
        } else {
            -self.mirror
        }
    }
}

impl fmt::Display for QuotientNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let boxes: Vec<String> = self.boxes.iter().map(|c| c.to_string()).collect();
        write!(f, "{};{};{}", self.k, boxes.join(","), if self.mirror > 0 { "+" } else { "-" })
    }
}

impl FromStr for QuotientNormalForm {
    type Err = QuotientError;

    /// Parses `k;c1,...,c(k-1);+|-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || QuotientError::Malformed(format!("expected k;c1,...;+|-, got {:?}", s));
        let parts: Vec<&str> = s.trim().split(';').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let k: usize = parts[0].trim().parse().map_err(|_| bad())?;
        let boxes = if parts[1].trim().is_empty() {
            Vec::new()
        } else {
            parts[1].split(',').map(|c| c.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<_, _>>()?
        };
        let mirror = match parts[2].trim() {
            "+" => 1,
            "-" => -1,
            _ => return Err(bad()),
        };
        Self::new(k, boxes, mirror)
    }
}

/// The pinwheel tangle: box `b` (1-based, counted from the axis) twists tangle
/// positions `k - b - 1` and `k - b`; even boxes sit in the upper layer and odd
/// boxes in the lower one.
pub fn nf_to_tangle(q: &QuotientNormalForm) -> Result<TangleDiagram, QuotientError> {
    q.check()?;
    let k = q.k;
    let mut ops = Vec::new();
    for upper in [true, false] {
        for b in 1..k {
            if (b % 2 == 0) != upper {
                continue;
            }
            let i = k - b - 1;
            ops.push(TangleOp::Cap { at: i + 2 });
            for _ in 0..q.boxes[b - 1] {
                ops.push(TangleOp::Cross { at: i + 1, over_left: q.box_sign(b - 1) > 0 });
            }
            ops.push(TangleOp::Cup { at: i });
        }
    }
    TangleDiagram::new(k, ops)
}

/// The pinwheel diagram: the pinwheel tangle closed around the axis.
pub fn nf_to_diagram(q: &QuotientNormalForm) -> Result<AxisClosureDiagram, QuotientError> {
    nf_to_tangle(q)?.closure()
}

/// Parameters of the same diagram read with the axis and infinity exchanged:
/// the boxes appear in reverse order and the outermost box, whose twist sign is
/// `mirror * (-1)^(k - 2)`, sets the new mirror bit.
pub fn nf_swap_ends(q: &QuotientNormalForm) -> QuotientNormalForm {
    let mut boxes = q.boxes.clone();
    boxes.reverse();
    let mirror = if q.k % 2 == 1 && q.k > 1 { -q.mirror } else { q.mirror };
    QuotientNormalForm { k: q.k, boxes, mirror }
}

/// The smaller of `q` and its end-swapped form, comparing boxes first and then
/// the mirror bit.
pub fn nf_canonical(q: &QuotientNormalForm) -> QuotientNormalForm {
    let s = nf_swap_ends(q);
    let key = |x: &QuotientNormalForm| (x.boxes.clone(), -x.mirror);
    if key(&s) < key(q) {
        s
    } else {
        q.clone()
    }
}

/// One removal step of the normalization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Strip {
    /// Index of the removed crossing in the diagram it was removed from.
    pub crossing: usize,
    pub sign: i8,
    /// Box (0-based, from the axis outwards) the crossing belonged to.
    pub box_index: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Normalization {
    pub form: QuotientNormalForm,
    pub log: Vec<MoveRecord>,
    pub strips: Vec<Strip>,
}

/// The crossing and corner of a one-sided face containing `m`, if any.
fn monogon_at(d: &PlanarDiagram, m: FaceMark) -> Result<Option<Corner>, QuotientError> {
    let FaceMark::Corner(k) = m else { return Ok(None) };
    let fs = faces(d)?;
    let f = face_of(&fs, k).unwrap();
    Ok(if fs[f].corners.len() == 1 { Some(fs[f].corners[0]) } else { None })
}

struct StringStrip {
    diagram: PlanarDiagram,
    axis: FaceMark,
    infinity: FaceMark,
    count: u32,
    sign: i8,
    log: Vec<MoveRecord>,
    removed: Vec<usize>,
}

/// Contracts the one-sided loop around the axis across it and removes the
/// maximal half-twist string behind the loop.
fn strip_string(d: &PlanarDiagram, axis: FaceMark, inf: FaceMark) -> Result<StringStrip, QuotientError> {
    let Some(loop_corner) = monogon_at(d, axis)? else {
        return Err(QuotientError::InternalNugatory);
    };
    let mut d = d.clone();
    let mut x = loop_corner.crossing;
    // the axis joins the face outside the loop
    let mut axis = FaceMark::Corner(Corner::new(x, loop_corner.pos + 1));
    let mut inf = inf;
    let mut log = Vec::new();
    let mut removed = Vec::new();
    let mut sign = None;
    loop {
        let fs = faces(&d)?;
        let mono = fs.iter().find(|f| f.corners.len() == 1 && f.corners[0].crossing == x).map(|f| f.corners[0]);
        let Some(mono) = mono else {
            return Err(QuotientError::InternalNugatory);
        };
        let behind = face_of(&fs, Corner::new(x, mono.pos + 2)).unwrap();
        let continues = fs[behind].corners.len() == 2;
        let next = fs[behind].corners.iter().find(|k| k.crossing != x).copied();
        let s = kink_sign(&d, x)?;
        sign.get_or_insert(s);
        let mut marks = vec![axis, inf];
        marks.extend(next.map(FaceMark::Corner));
        let (nd, nm) = reduce_r1_tracked(&d, x, &marks)?;
        log.push(MoveRecord::new(MoveKind::R1Remove, vec![x as i64], s));
        removed.push(x);
        d = nd;
        axis = nm[0];
        inf = nm[1];
        match (continues, nm.get(2)) {
            (true, Some(FaceMark::Corner(n))) if !d.crossings.is_empty() => x = n.crossing,
            _ => break,
        }
    }
    let count = removed.len() as u32;
    Ok(StringStrip { diagram: d, axis, infinity: inf, count, sign: sign.unwrap(), log, removed })
}

/// Reduces an alternating axis-closure diagram of the trivial knot to its
/// pinwheel parameters.
///
/// Each step finds the one-sided loop containing the axis, contracts it across
/// the axis (the axis moves to the face outside the loop), and then removes the
/// maximal string of half-twists behind it, one Reidemeister I move per
/// crossing. The string becomes one box and the tangle loses one arc. A
/// one-sided loop anywhere else means a removable crossing inside the tangle.
pub fn normalize_unknot_quotient(a: &AxisClosureDiagram) -> Result<Normalization, QuotientError> {
    let d0 = &a.diagram;
    if !crate::diagram_core::validate(d0).passed() || d0.component_count()? != 1 {
        return Err(QuotientError::Malformed("expected a valid one-component diagram".into()));
    }
    if !is_alternating(d0)? {
        return Err(QuotientError::NotAlternating);
    }
    if !alternating_unknot_check(d0)?.0 {
        return Err(QuotientError::NontrivialKnot);
    }
    let mut d = d0.clone();
    d.marked_faces.clear();
    let (mut axis, mut inf) = a.marks()?;
    let mut log = Vec::new();
    let mut strips = Vec::new();
    let mut boxes: Vec<u32> = Vec::new();
    let mut mirror = None;
    while !d.crossings.is_empty() {
        let s = strip_string(&d, axis, inf)?;
        mirror.get_or_insert(s.sign);
        log.extend(s.log);
        for (x, r) in s.removed.iter().zip(&log[log.len() - s.removed.len()..]) {
            strips.push(Strip { crossing: *x, sign: r.direction, box_index: boxes.len() });
        }
        boxes.push(s.count);
        d = s.diagram;
        axis = s.axis;
        inf = s.infinity;
    }
    let k = boxes.len() + 1;
    let form = QuotientNormalForm { k, boxes, mirror: mirror.unwrap_or(1) };
    Ok(Normalization { form, log, strips })
}

/// Removes the twist string nearest the axis (one induction step of the
/// normalization). Returns the smaller closure, the string length and the sign
/// of its crossings.
pub fn strip_first_box(a: &AxisClosureDiagram) -> Result<(AxisClosureDiagram, u32, i8), QuotientError> {
    let mut d = a.diagram.clone();
    d.marked_faces.clear();
    let (axis, inf) = a.marks()?;
    if d.crossings.is_empty() {
        return Err(QuotientError::Malformed("a crossingless closure has no box".into()));
    }
    let s = strip_string(&d, axis, inf)?;
    let out = AxisClosureDiagram::from_marks(s.diagram, s.axis, s.infinity, a.k.saturating_sub(1).max(1))?;
    Ok((out, s.count, s.sign))
}

/// Inverse of [`strip_first_box`]: adds a string of `count` kinks of the given
/// sign next to the axis, one Reidemeister I move at a time, and then passes
/// the innermost loop over the axis so that the axis lies inside it.
pub fn reinsert_string(a: &AxisClosureDiagram, count: u32, sign: i8) -> Result<AxisClosureDiagram, QuotientError> {
    if count == 0 {
        return Err(QuotientError::Malformed("a twist string needs at least one crossing".into()));
    }
    let mut d = a.diagram.clone();
    d.marked_faces.clear();
    d.orientations = None;
    let (axis, inf) = a.marks()?;
    let under_first = sign > 0;
    let (mut d, mut mono, inf) = match axis {
        FaceMark::Corner(c) => {
            let (nd, m) = r1_add(&d, c, under_first)?;
            (nd, m, inf)
        }
        FaceMark::LoopSide(side) => {
            // a single circle: the first kink's outside takes the axis side
            let kink = if under_first { [1, 1, 2, 2] } else { [1, 2, 2, 1] };
            let mono = if under_first { Corner::new(0, 2) } else { Corner::new(0, 3) };
            let nd = PlanarDiagram::new(vec![kink]);
            let _ = side;
            (nd, mono, FaceMark::Corner(Corner::new(0, mono.pos + 2)))
        }
    };
    for _ in 1..count {
        let (nd, m) = r1_add(&d, Corner::new(mono.crossing, mono.pos + 1), under_first)?;
        d = nd;
        mono = m;
    }
    let out = AxisClosureDiagram::from_marks(d, FaceMark::Corner(mono), inf, a.k + 1)?;
    Ok(out)
}
