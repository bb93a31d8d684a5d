use serde::{Deserialize, Serialize};

use super::link::{linking_number, nfl_to_pd, NormalFormLink};
use super::ExchangeError;
use crate::diagram_core::{jones, LaurentPolynomial};

/// One step of the exchange procedure. Box indices are 1-based from the top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum ExchangeMove {
    /// Changes the parity of box `target` by moving the listed boxes around
    /// the axis strand.
    ParityMove { target: usize, moved: Vec<usize> },
    /// Flypes the twists of box `box_index` onto the other component.
    Flype { box_index: usize },
    /// Turns the link about a vertical axis in the projection plane.
    Rotation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    #[serde(flatten)]
    pub kind: ExchangeMove,
    pub before: NormalFormLink,
    pub after: NormalFormLink,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExchangeLog(pub Vec<LogEntry>);

impl ExchangeLog {
    pub fn entries(&self) -> &[LogEntry] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("log serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, ExchangeError> {
        serde_json::from_str(s).map_err(|e| ExchangeError::Malformed(e.to_string()))
    }

    /// Applies every move to `input`, checking each recorded before/after pair.
    pub fn replay(&self, input: &NormalFormLink) -> Result<NormalFormLink, ExchangeError> {
        let mut cur = input.clone();
        for (step, e) in self.0.iter().enumerate() {
            if e.before != cur {
                return Err(ExchangeError::ReplayMismatch { step });
            }
            let next = apply(&cur, &e.kind)?;
            if next != e.after {
                return Err(ExchangeError::ReplayMismatch { step });
            }
            cur = next;
        }
        Ok(cur)
    }
}

fn apply(l: &NormalFormLink, m: &ExchangeMove) -> Result<NormalFormLink, ExchangeError> {
    match m {
        ExchangeMove::ParityMove { moved, .. } => {
            let mut cur = l.clone();
            for i in moved {
                cur = move_box(&cur, *i)?;
            }
            Ok(cur)
        }
        ExchangeMove::Flype { box_index } => transfer_box(l, *box_index),
        ExchangeMove::Rotation => rotate(l),
    }
}

fn require_unflyped(l: &NormalFormLink) -> Result<(), ExchangeError> {
    l.check()?;
    if l.on_axis.iter().any(|f| *f) {
        return Err(ExchangeError::Malformed("boxes already sit on the other component".into()));
    }
    Ok(())
}

/// Moves box `i` around the axis strand. Both clasps next to it change sign
/// and each boxed neighbour of a flipped clasp gains or loses one half-twist.
pub fn move_box(l: &NormalFormLink, i: usize) -> Result<NormalFormLink, ExchangeError> {
    require_unflyped(l)?;
    if i == 0 || i >= l.k {
        return Err(ExchangeError::Malformed(format!("no box {i} in a link with k = {}", l.k)));
    }
    let mut out = l.clone();
    for clasp in [i - 1, i] {
        // flipping a full twist of sign e shifts the neighbouring exponents by -e
        let delta = -l.clasp_sign(clasp);
        for b in [clasp, clasp + 1] {
            if b >= 1 && b < l.k {
                out.boxes[b - 1] += delta * l.box_factor(b);
            }
        }
    }
    out.moved[i - 1] = !out.moved[i - 1];
    Ok(out)
}

/// Makes every box below the first one even, working from the bottom up.
/// Fixing box `j` moves boxes `j - 1, j - 3, ...`, which changes the parity of
/// box `j` and, when the chain stops at box 2, of box 1.
pub fn parity_normalize(l: &NormalFormLink) -> Result<(NormalFormLink, ExchangeLog), ExchangeError> {
    require_unflyped(l)?;
    let mut cur = l.clone();
    let mut log = Vec::new();
    for target in (2..l.k).rev() {
        if cur.boxes[target - 1] % 2 == 0 {
            continue;
        }
        let moved: Vec<usize> = (1..target).rev().step_by(2).collect();
        let kind = ExchangeMove::ParityMove { target, moved };
        let next = apply(&cur, &kind)?;
        log.push(LogEntry { kind, before: cur, after: next.clone() });
        cur = next;
    }
    Ok((cur, ExchangeLog(log)))
}

/// Flypes box `i` from the boxed component onto the clasping circle.
pub fn transfer_box(l: &NormalFormLink, i: usize) -> Result<NormalFormLink, ExchangeError> {
    l.check()?;
    if i == 0 || i >= l.k || l.on_axis[i - 1] {
        return Err(ExchangeError::Malformed(format!("box {i} cannot be transferred")));
    }
    let mut out = l.clone();
    out.on_axis[i - 1] = true;
    Ok(out)
}

/// Transfers every box, top to bottom. Needs all boxes but the first to be even.
pub fn transfer_all(l: &NormalFormLink) -> Result<(NormalFormLink, ExchangeLog), ExchangeError> {
    require_unflyped(l)?;
    if let Some(i) = (2..l.k).find(|i| l.boxes[i - 1] % 2 != 0) {
        return Err(ExchangeError::PreconditionParity { index: i, count: l.boxes[i - 1] });
    }
    let mut cur = l.clone();
    let mut log = Vec::new();
    for i in 1..l.k {
        let kind = ExchangeMove::Flype { box_index: i };
        let next = apply(&cur, &kind)?;
        log.push(LogEntry { kind, before: cur, after: next.clone() });
        cur = next;
    }
    Ok((cur, ExchangeLog(log)))
}

/// Turning the plat about a vertical axis in its plane swaps strand positions
/// `i` and `3 - i`: the circle now carries the boxes in their original places.
pub fn rotate(l: &NormalFormLink) -> Result<NormalFormLink, ExchangeError> {
    l.check()?;
    if !l.on_axis.iter().all(|f| *f) {
        return Err(ExchangeError::Malformed("rotation needs every box on the clasping circle".into()));
    }
    let mut out = l.swap_labels();
    out.on_axis = vec![false; l.boxes.len()];
    Ok(out)
}

/// Parity normalization, transfer of all boxes and the final rotation.
pub fn exchange_components(l: &NormalFormLink) -> Result<(NormalFormLink, ExchangeLog), ExchangeError> {
    let (p, mut log) = parity_normalize(l)?;
    let (t, tlog) = transfer_all(&p)?;
    log.0.extend(tlog.0);
    let r = rotate(&t)?;
    log.0.push(LogEntry { kind: ExchangeMove::Rotation, before: t, after: r.clone() });
    Ok((r, log))
}

fn invariants(l: &NormalFormLink) -> Result<(LaurentPolynomial, i64), ExchangeError> {
    let d = nfl_to_pd(l)?.diagram;
    Ok((jones(&d)?, linking_number(&d)?))
}

/// Replays `log` from `input` and checks that every step keeps the Jones
/// polynomial and the linking number.
pub fn verify_log(input: &NormalFormLink, log: &ExchangeLog) -> Result<NormalFormLink, ExchangeError> {
    let out = log.replay(input)?;
    let mut prev = invariants(input)?;
    for (step, e) in log.entries().iter().enumerate() {
        let next = invariants(&e.after)?;
        if next != prev {
            return Err(ExchangeError::InvariantChanged { step });
        }
        prev = next;
    }
    Ok(out)
}
