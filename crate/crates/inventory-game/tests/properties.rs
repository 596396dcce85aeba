//! Randomized invariants of the dynamics, the notation, and the variation
//! engine, checked over generated inputs.

use proptest::prelude::*;

use inventory_game::dynamics::{orbit, step};
use inventory_game::multiset::{format_notation, parse_notation, Multiset};
use inventory_game::variations::{
    enumerate_tnr, sigma_from_multiset, tnr_shift, variation_step, VariationConfig,
};

fn small_multiset() -> impl Strategy<Value = Multiset> {
    prop::collection::vec(1u64..=30, 1..=12).prop_map(|v| Multiset::from_elems(v).unwrap())
}

fn wide_multiset() -> impl Strategy<Value = Multiset> {
    prop::collection::vec(1u64..=999, 1..=50).prop_map(|v| Multiset::from_elems(v).unwrap())
}

proptest! {
    #[test]
    fn notation_round_trips(s in wide_multiset()) {
        prop_assert_eq!(parse_notation(&format_notation(&s)).unwrap(), s);
    }

    #[test]
    fn multiplicities_partition_the_order(s in wide_multiset()) {
        let mu = s.mu();
        let total: u64 = mu.iter().map(|(m, c)| m * c).sum();
        prop_assert_eq!(total, s.order());
        prop_assert_eq!(mu.order(), s.distinct());
    }

    #[test]
    fn support_survives_a_step(s in wide_multiset()) {
        let next = step(&s);
        for (e, _) in s.iter() {
            prop_assert!(next.iter().any(|(f, _)| f == e), "{e} dropped from {s}");
        }
    }

    #[test]
    fn orbit_trace_invariants(s in small_multiset()) {
        let max1 = step(&s).max_elem().unwrap();
        let report = orbit(&s, (2 * max1 + 61) as usize).unwrap();
        prop_assert!((1..=3).contains(&report.period), "period {}", report.period);
        // from the first generation on: order never drops, height climbs by
        // at most one, and the distinct-adjective count climbs by at most one
        for w in report.trace.windows(2).skip(1) {
            prop_assert!(w[1].order >= w[0].order);
            prop_assert!(w[1].height <= w[0].height + 1);
            prop_assert!(w[1].distinct_adjectives <= w[0].distinct_adjectives + 1);
        }
    }

    #[test]
    fn classic_engine_embeds_the_dynamics(s in small_multiset()) {
        let cfg = VariationConfig::classic();
        let stepped = variation_step(&sigma_from_multiset(&s), &cfg).unwrap();
        prop_assert_eq!(stepped, sigma_from_multiset(&step(&s)));
    }

    #[test]
    fn sigma_embedding_is_canonical(s in wide_multiset()) {
        let sigma = sigma_from_multiset(&s);
        // no override ever equals the default, and rebuilding is a no-op
        let d = sigma.default_value();
        prop_assert!(sigma.overrides().all(|(_, v)| v != d));
        prop_assert_eq!(sigma_from_multiset(&s), sigma);
    }

    #[test]
    fn mention_count_shift_is_injective_into_target(n in 1u64..=7, r in 0u64..=3, dt in 0u64..=3) {
        let t = r + dt;
        let src = enumerate_tnr(n, r);
        let dst: std::collections::BTreeSet<Vec<u64>> = enumerate_tnr(n, t).into_iter().collect();
        let mut image = std::collections::BTreeSet::new();
        for s in &src {
            let shifted = tnr_shift(s, r, t).unwrap();
            prop_assert!(dst.contains(&shifted), "{shifted:?} not an order-{n} state at {t}");
            prop_assert!(image.insert(shifted), "shift collided");
        }
        // adding t-r everywhere is invertible, so the image is the whole list
        prop_assert_eq!(image, dst);
    }
}
