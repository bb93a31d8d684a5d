mod common;

use knotcover::diagram_core::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn kink_factor(sign: i64) -> LaurentPolynomial {
    LaurentPolynomial::monomial(-1, 3 * sign)
}

/// R2 on a random pair of corners of one face, when the face allows it.
fn random_r2(d: &PlanarDiagram, rng: &mut StdRng) -> Option<PlanarDiagram> {
    let fs = faces(d).ok()?;
    let cands: Vec<(Corner, Corner)> = fs
        .iter()
        .flat_map(|f| {
            f.corners.iter().enumerate().flat_map(move |(i, a)| f.corners[i + 1..].iter().map(move |b| (*a, *b)))
        })
        .filter(|(a, b)| d.arc_at(*a) != d.arc_at(*b))
        .collect();
    if cands.is_empty() {
        return None;
    }
    let (a, b) = cands[rng.gen_range(0..cands.len())];
    r2_add(d, a, b, rng.gen()).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_invariant_under_r2_and_r3(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = common::random_diagram(&mut rng, 10);
        let b = kauffman_bracket(&d).unwrap();
        if let Some(r) = random_r2(&d, &mut rng) {
            prop_assert!(validate(&r).passed());
            prop_assert_eq!(&kauffman_bracket(&r).unwrap(), &b);
            for site in find_r3_sites(&r).unwrap() {
                let s = r3(&r, site).unwrap();
                prop_assert!(validate(&s).passed());
                prop_assert_eq!(&kauffman_bracket(&s).unwrap(), &b);
            }
        }
    }

    #[test]
    fn r1_multiplies_the_bracket_by_a_kink_factor(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = common::random_diagram(&mut rng, 11);
        let b = kauffman_bracket(&d).unwrap();
        let c = Slot::new(rng.gen_range(0..d.crossings.len()), rng.gen_range(0..4));
        let positive: bool = rng.gen();
        let (k, _) = r1_add(&d, c, positive).unwrap();
        let expected = &kink_factor(if positive { 1 } else { -1 }) * &b;
        prop_assert_eq!(kauffman_bracket(&k).unwrap(), expected);
    }

    #[test]
    fn contraction_matches_the_state_sum(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = common::random_diagram(&mut rng, 9);
        prop_assert_eq!(kauffman_bracket(&d).unwrap(), bracket_state_sum(&d).unwrap());
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = common::random_diagram(&mut rng, 12).with_sequential_orientation().unwrap();
        prop_assert_eq!(PlanarDiagram::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn mirror_image_mirrors_the_bracket(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = common::random_diagram(&mut rng, 10);
        prop_assert_eq!(kauffman_bracket(&mirror_image(&d)).unwrap(), kauffman_bracket(&d).unwrap().mirror());
    }
}

#[test]
fn reference_jones_values_agree_with_the_state_sum() {
    let t = examples::trefoil().with_sequential_orientation().unwrap();
    let w = t.writhe().unwrap();
    assert_eq!(normalize_writhe(&bracket_state_sum(&t).unwrap(), w).format_in_t(), "t + t^3 - t^4");
    assert_eq!(jones(&t).unwrap().format_in_t(), "t + t^3 - t^4");
    let h = examples::hopf().with_sequential_orientation().unwrap();
    let w = h.writhe().unwrap();
    assert_eq!(normalize_writhe(&bracket_state_sum(&h).unwrap(), w).format_in_t(), "-t^(-5/2) - t^(-1/2)");
    assert_eq!(jones(&h).unwrap().format_in_t(), "-t^(-5/2) - t^(-1/2)");
}

#[test]
fn isomorphism_survives_relabelling() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..20 {
        let d = common::random_diagram(&mut rng, 8);
        let r = d.relabeled().unwrap();
        assert!(find_isomorphism(&d, &r, false).is_some());
    }
}
