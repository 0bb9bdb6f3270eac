//! Randomized structural properties of the core operations.

use proptest::prelude::*;
use std::collections::BTreeMap;

use offord::dist::{Family, LatticeDistribution};
use offord::entropy::{entropy_power, renyi_entropy, RenyiOrder};
use offord::majorization::{
    certificate_pushforward, dominance_gap, pushforward_distribution, DescendingProfile,
};
use offord::rational::{format_rational, parse_rational, Rational};
use offord::verify::{ap_sup_probability, ap_sup_via_convolution};

fn dist_strategy() -> impl Strategy<Value = LatticeDistribution> {
    (
        -20i64..20,
        proptest::collection::vec(0.05f64..1.0, 1..8),
    )
        .prop_map(|(offset, weights)| {
            let total: f64 = weights.iter().sum();
            let pmf: Vec<f64> = weights.iter().map(|w| w / total).collect();
            Family::Explicit { offset, pmf }.build().unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_adds_moments(a in dist_strategy(), b in dist_strategy()) {
        let c = a.convolve(&b).unwrap();
        let (ma, mb, mc) = (a.moments(), b.moments(), c.moments());
        let mass: f64 = c.pmf().iter().sum();
        prop_assert!((mass - 1.0).abs() < 1e-12);
        prop_assert!((mc.mean - (ma.mean + mb.mean)).abs() < 1e-9);
        prop_assert!((mc.variance - (ma.variance + mb.variance)).abs() < 1e-9);
    }

    #[test]
    fn dilation_scales_variance_and_keeps_profile(d in dist_strategy(), k in prop_oneof![-5i64..=-1, 1i64..=5]) {
        let scaled = d.scale_support(k).unwrap();
        let kk = (k * k) as f64;
        prop_assert!((scaled.variance() - kk * d.variance()).abs() <= 1e-9 * kk.max(1.0));
        let scaled_profile = DescendingProfile::from_distribution(&scaled);
        let original_profile = DescendingProfile::from_distribution(&d);
        prop_assert_eq!(scaled_profile.probs(), original_profile.probs());
        let order = RenyiOrder::new(2.0).unwrap();
        prop_assert_eq!(renyi_entropy(&scaled, order).to_bits(), renyi_entropy(&d, order).to_bits());
    }

    #[test]
    fn squeeze_preserves_the_probability_sequence(d in dist_strategy()) {
        let squeezed = d.squeeze();
        prop_assert_eq!(squeezed.support_min(), 0);
        prop_assert_eq!(squeezed.support_size(), d.support_size());
        let original: Vec<f64> = d.atoms().map(|(_, p)| p).collect();
        let packed: Vec<f64> = squeezed.atoms().map(|(_, p)| p).collect();
        prop_assert_eq!(original, packed);
    }

    #[test]
    fn entropy_is_nonincreasing_in_the_order(d in dist_strategy()) {
        let grid = [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 10.0, f64::INFINITY];
        let values: Vec<f64> = grid
            .iter()
            .map(|&a| renyi_entropy(&d, RenyiOrder::new(a).unwrap()))
            .collect();
        for pair in values.windows(2) {
            prop_assert!(pair[0] >= pair[1] - 1e-12);
        }
    }

    #[test]
    fn pushforward_images_are_majorized(d in dist_strategy(), labels in proptest::collection::vec(0i64..4, 8)) {
        let map: BTreeMap<i64, i64> = d
            .atoms()
            .enumerate()
            .map(|(i, (x, _))| (x, labels[i % labels.len()]))
            .collect();
        let image = pushforward_distribution(&d, &map).unwrap();
        let gap = dominance_gap(
            &DescendingProfile::from_distribution(&image),
            &DescendingProfile::from_distribution(&d),
        );
        prop_assert!(gap >= -1e-12);
        let cert = certificate_pushforward(&d, &map).unwrap();
        prop_assert!(cert.verify().is_ok());
    }

    #[test]
    fn rationals_round_trip(p in -4000i64..4000, q in 1i64..400) {
        let r = Rational::new(p, q);
        let parsed = parse_rational(&format_rational(&r)).unwrap();
        prop_assert_eq!(parsed, r);
    }

    #[test]
    fn progression_oracles_agree_on_random_inputs(
        d in dist_strategy(),
        l in 1u32..=4,
        p in prop_oneof![-3i64..=-1, 1i64..=3],
        q in 1i64..=3,
    ) {
        let m = Rational::new(p, q);
        let (sup, witness) = ap_sup_probability(&d, l, m).unwrap();
        let conv = ap_sup_via_convolution(&d, l, m).unwrap();
        prop_assert!((sup - conv).abs() <= 1e-12);
        let replay = offord::verify::ap_probability_at(&d, l, m, witness);
        prop_assert!((replay - sup).abs() <= 1e-12);
        prop_assert!(sup <= 1.0 + 1e-12);
        prop_assert!(sup >= d.max_prob() - 1e-12);
    }

    #[test]
    fn entropy_power_never_undercuts_the_largest_atom_inverse(d in dist_strategy()) {
        // N_alpha >= N_inf = 1/M^2 for every order.
        let floor = entropy_power(&d, RenyiOrder::Infinity);
        for a in [0.0, 0.5, 1.0, 2.0, 5.0] {
            prop_assert!(entropy_power(&d, RenyiOrder::new(a).unwrap()) >= floor - 1e-12);
        }
        let m = d.max_prob();
        prop_assert!((floor - 1.0 / (m * m)).abs() <= 1e-9 * floor);
    }
}
