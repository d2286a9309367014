use proptest::prelude::*;

use pinch4::curvature::random_algebraic_tensor;
use pinch4::forms::{Form2, Frame4};
use pinch4::models::{pinched_sample, Perturbation};
use pinch4::pinching::{f_eval, theorem1_verdict};
use pinch4::scan::{scan_extremes, Budget};
use pinch4::topology::integrands;
use pinch4::weitzenbock::Lemma1;
use pinch4::{decompose, CurvatureOperator};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn form() -> impl Strategy<Value = Form2> {
    prop::array::uniform6(-10.0f64..10.0).prop_map(Form2::new)
}

proptest! {
    #[test]
    fn star_is_an_isometric_involution(w in form(), v in form()) {
        prop_assert!((w.star().star().coeffs.iter().zip(w.coeffs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)) < 1e-12);
        prop_assert!((w.star().dot(&v.star()) - w.dot(&v)).abs() < 1e-9);
    }

    #[test]
    fn splitting_is_orthogonal_and_complete(w in form()) {
        let (p, m) = w.split();
        prop_assert!(p.dot(&m).abs() < 1e-9);
        prop_assert!((p.norm_squared() + m.norm_squared() - w.norm_squared()).abs() < 1e-9);
        prop_assert!(((p - p.star()).norm()) < 1e-12 && ((m + m.star()).norm()) < 1e-12);
    }

    #[test]
    fn decomposition_reassembles(seed in any::<u64>(), scale in 0.01f64..10.0) {
        let r = random_algebraic_tensor(seed, scale);
        let d = decompose(&r).unwrap();
        let op = CurvatureOperator::from_tensor(&r).unwrap();
        prop_assert!((d.reassemble().matrix - op.matrix).abs().max() < 1e-12 * scale.max(1.0));
        prop_assert!(d.wplus.trace().abs() < 1e-12 * scale.max(1.0));
        prop_assert!(d.wminus.trace().abs() < 1e-12 * scale.max(1.0));
        prop_assert!((d.z_norm2() - 0.5 * d.ric0_norm2()).abs() < 1e-10 * scale.max(1.0).powi(2));
    }

    #[test]
    fn invariant_densities_are_rotation_invariant(seed in any::<u64>(), frame_seed in any::<u64>()) {
        let r = random_algebraic_tensor(seed, 1.0);
        let g = Frame4::random(&mut ChaCha8Rng::seed_from_u64(frame_seed));
        let (a, b) = (integrands(&decompose(&r).unwrap()), integrands(&decompose(&r.rotated(&g)).unwrap()));
        prop_assert!((a.gbc - b.gbc).abs() < 1e-10);
        prop_assert!((a.sig - b.sig).abs() < 1e-10);
    }

    #[test]
    fn weitzenbock_lower_bound(seed in any::<u64>(), w in form()) {
        let r = random_algebraic_tensor(seed, 1.0);
        let sides = Lemma1::new(&r).unwrap().sides(&w);
        prop_assert!(sides.lhs >= sides.intermediate - 1e-9 * w.norm_squared().max(1.0));
        prop_assert!(sides.intermediate >= sides.rhs - 1e-9 * w.norm_squared().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn half_flat_pinched_samples_satisfy_the_pointwise_bound(seed in any::<u64>(), scale in 0.05f64..1.5) {
        let r = pinched_sample(seed, 0.2, scale, Perturbation::SelfDualWeyl).unwrap();
        let d = decompose(&r).unwrap();
        let scan = scan_extremes(&r, &Budget::default()).unwrap();
        let v = theorem1_verdict(&d, &scan).unwrap();
        prop_assert!(v.hypotheses_hold);
        let p = v.pointwise.unwrap();
        prop_assert!(p.holds, "{:?}", p);
        prop_assert!((p.f_at_v - f_eval(p.v[0], p.v[1], p.v[2], p.delta)).abs() < 1e-15);
    }
}
