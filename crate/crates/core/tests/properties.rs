use proptest::prelude::*;

use entropy_lab::bounds::{fano_bound, fano_bound_assembled, pinsker_lower_bound, pinsker_series_bound, upper_bound_thm3};
use entropy_lab::classical::{
    maximal_coupling, error_probability, renyi_entropy, trace_distance_classical, tsallis_entropy, tsallis_rel_entropy,
    Distribution,
};
use entropy_lab::io::{parse_f64, render_f64};
use entropy_lab::operator::DensityOperator;
use entropy_lab::scalar::{alpha_log, binary_tsallis};
use entropy_lab::{ExtendedValue, Order};

fn order() -> impl Strategy<Value = Order> {
    prop_oneof![0.05f64..0.95, 1.05f64..6.0].prop_map(|a| Order::new(a).unwrap())
}

fn sub_unit_order() -> impl Strategy<Value = Order> {
    (0.05f64..0.95).prop_map(|a| Order::new(a).unwrap())
}

fn distribution(n: usize) -> impl Strategy<Value = Distribution> {
    prop::collection::vec(0.01f64..1.0, n).prop_map(|w| Distribution::from_weights(&w).unwrap())
}

fn pair() -> impl Strategy<Value = (Distribution, Distribution)> {
    (2usize..7).prop_flat_map(|n| (distribution(n), distribution(n)))
}

proptest! {
    #[test]
    fn alpha_log_product_rule(x in 0.01f64..50.0, y in 0.01f64..50.0, o in order()) {
        // ln_α(xy) = ln_α x + x^{1−α} ln_α y
        let a = o.alpha();
        let lhs = alpha_log(x * y, o).unwrap();
        let rhs = alpha_log(x, o).unwrap() + x.powf(1.0 - a) * alpha_log(y, o).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
    }

    #[test]
    fn binary_tsallis_symmetric(u in 0.0f64..=1.0, o in order()) {
        let a = binary_tsallis(u, o).unwrap();
        let b = binary_tsallis(1.0 - u, o).unwrap();
        prop_assert!((a - b).abs() <= 1e-14);
        prop_assert!(a >= -1e-15);
    }

    #[test]
    fn tsallis_renyi_relation((p, _) in pair(), o in order()) {
        let h = tsallis_entropy(&p, o);
        let r = renyi_entropy(&p, o);
        let s = 1.0 - o.alpha();
        prop_assert!((r - (s * h).ln_1p() / s).abs() <= 1e-10 * (1.0 + r.abs()));
    }

    #[test]
    fn trace_distance_is_a_metric((p, q) in pair()) {
        let d = trace_distance_classical(&p, &q).unwrap();
        prop_assert!((0.0..=1.0 + 1e-15).contains(&d));
        prop_assert!((d - trace_distance_classical(&q, &p).unwrap()).abs() <= 1e-15);
        prop_assert_eq!(trace_distance_classical(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn coupling_error_equals_distance((p, q) in pair()) {
        let j = maximal_coupling(&p, &q).unwrap();
        let d = trace_distance_classical(&p, &q).unwrap();
        prop_assert!((error_probability(&j) - d).abs() <= 1e-12);
    }

    #[test]
    fn pinsker_bound_holds_classically((p, q) in pair(), o in sub_unit_order()) {
        let h = tsallis_rel_entropy(&p.to_weights(), &q.to_weights(), o).unwrap().to_f64();
        let tau = trace_distance_classical(&p, &q).unwrap();
        let bound = pinsker_lower_bound(1.0, tau, o).unwrap();
        prop_assert!(h >= bound - 1e-9, "H = {h}, bound = {bound}");
        for n in 1..5 {
            prop_assert!(pinsker_series_bound(1.0, tau, o, n).unwrap() <= bound + 1e-12);
        }
    }

    #[test]
    fn thm3_bound_holds_on_full_support((p, q) in pair(), a in 1.05f64..5.0) {
        let o = Order::new(a).unwrap();
        let h = tsallis_rel_entropy(&p.to_weights(), &q.to_weights(), o).unwrap().to_f64();
        let tau = trace_distance_classical(&p, &q).unwrap();
        let q0 = q.probs().iter().copied().fold(1.0, f64::min);
        prop_assume!(tau <= 1.0 - q0);
        let bound = upper_bound_thm3(q0, tau, o).unwrap();
        prop_assert!(h <= bound + 1e-9 * (1.0 + bound), "H = {h}, bound = {bound}");
    }

    #[test]
    fn fano_forms_agree(pe in 0.0f64..=1.0, n in 2usize..10, o in sub_unit_order()) {
        let stated = fano_bound(pe, n, o).unwrap();
        let assembled = fano_bound_assembled(pe, n, o).unwrap();
        prop_assert!((stated - assembled).abs() <= 1e-12 * (1.0 + stated.abs()));
    }

    #[test]
    fn rendering_round_trips(x in prop::num::f64::NORMAL) {
        prop_assert_eq!(parse_f64(&render_f64(x)), Some(x));
    }

    #[test]
    fn distribution_json_round_trips(p in (1usize..8).prop_flat_map(distribution)) {
        let back = Distribution::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(back.probs(), p.probs());
    }

    #[test]
    fn density_json_round_trips(p in (1usize..5).prop_flat_map(distribution)) {
        let rho = DensityOperator::from_distribution(&p).unwrap();
        let back = DensityOperator::from_json(&rho.to_json()).unwrap();
        prop_assert!((back.matrix() - rho.matrix()).norm() <= 1e-15);
    }

    #[test]
    fn disjoint_support_is_infinite_above_one(a in 1.05f64..5.0) {
        let o = Order::new(a).unwrap();
        let p = Distribution::new(vec![1.0, 0.0]).unwrap();
        let q = Distribution::new(vec![0.0, 1.0]).unwrap();
        prop_assert_eq!(tsallis_rel_entropy(&p.to_weights(), &q.to_weights(), o).unwrap(), ExtendedValue::Infinite);
    }
}
