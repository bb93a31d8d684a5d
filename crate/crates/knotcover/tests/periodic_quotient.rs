mod common;

use knotcover::diagram_core::{alternating_unknot_check, is_alternating};
use knotcover::periodic_quotient::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn form() -> impl Strategy<Value = QuotientNormalForm> {
    (1usize..=6, prop::bool::ANY)
        .prop_flat_map(|(k, m)| (Just(k), prop::collection::vec(1u32..=4, k - 1), Just(if m { 1i8 } else { -1 })))
        .prop_map(|(k, b, m)| QuotientNormalForm::new(k, b, m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_form_is_idempotent_and_end_blind(f in form()) {
        let c = nf_canonical(&f);
        prop_assert_eq!(nf_canonical(&c), c.clone());
        prop_assert_eq!(nf_canonical(&nf_swap_ends(&f)), c);
    }

    #[test]
    fn pinwheels_normalize_back(f in form()) {
        let a = nf_to_diagram(&f).unwrap();
        prop_assert!(is_alternating(&a.diagram).unwrap());
        prop_assert!(alternating_unknot_check(&a.diagram).unwrap().0);
        let n = normalize_unknot_quotient(&a).unwrap();
        prop_assert_eq!(nf_canonical(&n.form), nf_canonical(&f));
        prop_assert_eq!(n.log.len() as u32, f.crossing_count());
    }

    #[test]
    fn reinsertion_undoes_a_strip(f in form().prop_filter("needs a box", |f| f.k >= 2)) {
        let a = nf_to_diagram(&f).unwrap();
        let (b, c, s) = strip_first_box(&a).unwrap();
        prop_assert_eq!(c, f.boxes[0]);
        let r = reinsert_string(&b, c, s).unwrap();
        prop_assert!(is_alternating(&r.diagram).unwrap());
        prop_assert_eq!(nf_canonical(&normalize_unknot_quotient(&r).unwrap().form), nf_canonical(&f));
    }

    #[test]
    fn quotient_recovers_a_random_closure(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let t = common::random_tangle(&mut rng, 3, 5);
        let p = build_periodic(&t, n).unwrap();
        p.check().unwrap();
        prop_assert!(quotient(&p).unwrap().is_isomorphic(&t.closure().unwrap()).unwrap());
    }
}

#[test]
fn closures_round_trip_through_json() {
    for t in common::tangle_corpus() {
        let c = t.closure().unwrap();
        assert_eq!(AxisClosureDiagram::from_json(&c.to_json()).unwrap(), c);
        let p = build_periodic(&t, 3).unwrap();
        let back: PeriodicDiagram = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}

#[test]
fn detection_lists_the_constructed_rotation() {
    for s in ["2;1;+", "3;2,2;-", "4;1,1,1;+"] {
        let t = nf_to_tangle(&s.parse().unwrap()).unwrap();
        for n in 2..=5 {
            let p = build_periodic(&t, n).unwrap();
            assert!(detect_period(&p.diagram, n).unwrap().is_some(), "{s} n={n}");
            let w = period_witnesses(&p.diagram, n).unwrap();
            assert!(w.iter().any(|x| x.automorphism == p.automorphism), "{s} n={n}");
            // a diagram can carry several rotations of the same order
            for x in &w {
                x.check().unwrap();
                quotient(x).unwrap().check().unwrap();
            }
        }
    }
}
