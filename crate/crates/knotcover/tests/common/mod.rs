#![allow(dead_code)]

use knotcover::diagram_core::{LayerBuilder, PlanarDiagram};
use knotcover::periodic_quotient::{nf_to_tangle, QuotientNormalForm, TangleDiagram, TangleOp};
use rand::Rng;

/// Plat closure of a braid word on `2 * pairs` strands; `(i, over_left)`
/// crosses positions `i, i + 1`.
pub fn plat(pairs: usize, word: &[(usize, bool)]) -> PlanarDiagram {
    let mut b = LayerBuilder::new();
    for j in 0..pairs {
        b.cap(2 * j);
    }
    for (i, o) in word {
        b.cross(*i, *o);
    }
    for _ in 0..pairs {
        b.cup(0);
    }
    b.finish().unwrap().0
}

/// Random connected plat diagram with at most `max` crossings.
pub fn random_diagram<R: Rng>(rng: &mut R, max: usize) -> PlanarDiagram {
    let pairs = rng.gen_range(1..=3usize).min(max.div_ceil(2));
    let width = 2 * pairs;
    // every gap crossed at least once keeps the projection connected
    let mut word: Vec<(usize, bool)> = (0..width - 1).map(|i| (i, rng.gen())).collect();
    let extra = rng.gen_range(0..=max - word.len());
    for _ in 0..extra {
        word.push((rng.gen_range(0..width - 1), rng.gen()));
    }
    for i in (1..word.len()).rev() {
        let j = rng.gen_range(0..=i);
        word.swap(i, j);
    }
    plat(pairs, &word)
}

/// Every normal form with `k <= k_max` and box entries in `1..=c_max`.
pub fn all_quotient_forms(k_max: usize, c_max: u32) -> Vec<QuotientNormalForm> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        let mut boxes = vec![1u32; k - 1];
        loop {
            for m in [1i8, -1] {
                if k == 1 && m == -1 {
                    continue;
                }
                out.push(QuotientNormalForm::new(k, boxes.clone(), m).unwrap());
            }
            let Some(i) = boxes.iter().position(|c| *c < c_max) else { break };
            boxes[i] += 1;
            for c in &mut boxes[..i] {
                *c = 1;
            }
        }
    }
    out
}

/// Random tangle of width `2..=k_max` whose crossings cross every gap, with at
/// most `max` crossings.
pub fn random_tangle<R: Rng>(rng: &mut R, k_max: usize, max: usize) -> TangleDiagram {
    let k = rng.gen_range(2..=k_max);
    let mut ops: Vec<TangleOp> = (0..k - 1).map(|at| TangleOp::Cross { at, over_left: rng.gen() }).collect();
    let extra = rng.gen_range(0..=max - ops.len());
    for _ in 0..extra {
        ops.push(TangleOp::Cross { at: rng.gen_range(0..k - 1), over_left: rng.gen() });
    }
    for i in (1..ops.len()).rev() {
        let j = rng.gen_range(0..=i);
        ops.swap(i, j);
    }
    TangleDiagram::new(k, ops).unwrap()
}

/// Fixed tangle corpus: hand-picked shapes, pinwheel tangles and a seeded
/// random sample, all of size at most 4 with at most 6 crossings.
pub fn tangle_corpus() -> Vec<TangleDiagram> {
    use rand::SeedableRng;
    let x = |at, over_left| TangleOp::Cross { at, over_left };
    let mut out = vec![
        TangleDiagram::new(2, vec![x(0, true)]).unwrap(),
        TangleDiagram::new(2, vec![x(0, false), x(0, false)]).unwrap(),
        TangleDiagram::new(3, vec![x(0, true), x(1, false)]).unwrap(),
        TangleDiagram::new(3, vec![x(0, true), x(1, true), x(0, true)]).unwrap(),
        TangleDiagram::new(4, vec![x(0, true), x(1, false), x(2, true)]).unwrap(),
        TangleDiagram::new(4, vec![x(1, true), x(0, false), x(2, false), x(1, true), x(0, true), x(2, true)]).unwrap(),
    ];
    for q in ["2;1;+", "2;3;-", "3;2,2;+", "3;1,3;-", "4;1,2,1;+", "4;2,1,3;-"] {
        out.push(nf_to_tangle(&q.parse::<QuotientNormalForm>().unwrap()).unwrap());
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for _ in 0..20 {
        out.push(random_tangle(&mut rng, 4, 6));
    }
    out
}
