//! Small reference diagrams.

use super::diagram::PlanarDiagram;

/// Right-handed trefoil; all crossings positive under the sequential orientation.
pub fn trefoil() -> PlanarDiagram {
    PlanarDiagram::new(vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]])
}

/// Hopf link with both components labelled sequentially.
pub fn hopf() -> PlanarDiagram {
    PlanarDiagram::new(vec![[1, 3, 2, 4], [3, 1, 4, 2]])
}

pub fn figure_eight() -> PlanarDiagram {
    PlanarDiagram::new(vec![[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]])
}

/// One-crossing unknot diagram with bracket `-A^3`.
pub fn kink_positive() -> PlanarDiagram {
    PlanarDiagram::new(vec![[1, 1, 2, 2]])
}

/// One-crossing unknot diagram with bracket `-A^-3`.
pub fn kink_negative() -> PlanarDiagram {
    PlanarDiagram::new(vec![[1, 2, 2, 1]])
}

/// `n` positive kinks in a row on one circle, labelled sequentially.
pub fn kink_chain(n: u32) -> PlanarDiagram {
    let crossings = (0..n)
        .map(|i| {
            let out = if i + 1 == n { 1 } else { 2 * i + 3 };
            [2 * i + 1, out, 2 * i + 2, 2 * i + 2]
        })
        .collect();
    PlanarDiagram::new(crossings)
}
