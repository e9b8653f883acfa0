mod common;

use common::*;
use flopcalc::factor::h4_reduction;
use flopcalc::matrix::Sign;
use flopcalc::planner::StepKind;
use flopcalc::subgroup::k6_lift;
use flopcalc::surgery::normalize_to_h2;
use flopcalc::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn framing_only(x: &IntMat2) -> bool {
    x.c().is_zero() && x.a().abs().is_one() && x.d().abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn det_is_multiplicative(x in gl2(12), y in gl2(12)) {
        prop_assert_eq!(x.mul(&y).det(), x.det() * y.det());
    }

    #[test]
    fn inverse_is_two_sided(x in gl2(16)) {
        prop_assert!(x.mul(&x.inverse()).is_identity());
        prop_assert!(x.inverse().mul(&x).is_identity());
    }

    #[test]
    fn subgroup_chain(x in prop_oneof![gl2(10), h1(10), h2(10), h4(10)]) {
        if membership(&x, SubgroupTag::H4) {
            prop_assert!(x.det().is_one());
            prop_assert!(membership(&x, SubgroupTag::H2));
        }
        if membership(&x, SubgroupTag::H2) {
            prop_assert!(membership(&x, SubgroupTag::H1));
        }
        if membership(&x, SubgroupTag::K4) {
            prop_assert!(membership(&x, SubgroupTag::H2));
            prop_assert!(membership(&x, SubgroupTag::SolidTorusExtendable));
        }
        if membership(&x, SubgroupTag::H4) || membership(&x, SubgroupTag::Sl2z) {
            prop_assert!(x.det().is_one());
        }
    }

    #[test]
    fn generated_samples_lie_in_their_subgroups(a in h1(12), b in h2(12), c in h4(12)) {
        prop_assert!(membership(&a, SubgroupTag::H1));
        prop_assert!(membership(&b, SubgroupTag::H2));
        prop_assert!(membership(&c, SubgroupTag::H4));
    }

    #[test]
    fn h2_is_normal_in_gl2(g in gl2(10), h in h2(10)) {
        let conj = g.mul(&h).mul(&g.inverse());
        prop_assert!(membership(&conj, SubgroupTag::H2));
    }

    #[test]
    fn h4_is_normal_in_h2(g in h2(10), h in h4(10)) {
        let conj = g.mul(&h).mul(&g.inverse());
        prop_assert!(membership(&conj, SubgroupTag::H4));
    }

    #[test]
    fn gl2_decomposition(x in gl2(20)) {
        let (k, h) = decompose_gl2(&x);
        prop_assert_eq!(k.mul(&h), x.clone());
        prop_assert!(membership(&k, SubgroupTag::K6));
        prop_assert!(membership(&h, SubgroupTag::H2));
        let congruent: Vec<_> = k6_elements().into_iter().filter(|e| e.mod2() == x.mod2()).collect();
        prop_assert_eq!(congruent, vec![k]);
    }

    #[test]
    fn h2_decomposition(x in h2(20)) {
        let (k, h) = decompose_h2(&x).unwrap();
        prop_assert_eq!(k.mul(&h), x.clone());
        prop_assert!(membership(&k, SubgroupTag::K4));
        prop_assert!(membership(&h, SubgroupTag::H4));
        let fits: Vec<_> = k4_elements()
            .into_iter()
            .filter(|e| membership(&e.mul(&x), SubgroupTag::H4))
            .collect();
        prop_assert_eq!(fits, vec![k]);
    }

    #[test]
    fn h4_round_trip_and_purity(x in h4(24)) {
        let w = factor_h4(&x).unwrap();
        prop_assert_eq!(eval_word(&w), x);
        for letter in w.letters() {
            let ok = matches!(letter.letter(), Letter::U | Letter::L);
            prop_assert!(ok, "unexpected letter {}", letter);
            prop_assert_eq!(letter.exponent().abs(), 1);
        }
    }

    #[test]
    fn h4_reduction_variant_decreases(x in h4(24)) {
        let steps = h4_reduction(&x).unwrap();
        let mut prev = x.a().abs().max(x.b().abs());
        for s in &steps {
            let next = s.row.0.abs().max(s.row.1.abs());
            prop_assert!(next < prev, "{} !< {}", next, prev);
            prev = next;
        }
        if let Some(last) = steps.last() {
            prop_assert_eq!(&last.row, &(BigInt::one(), BigInt::zero()));
        }
    }

    #[test]
    fn h1_round_trip_and_purity(x in h1(20)) {
        let w = factor_h1(&x).unwrap();
        prop_assert_eq!(eval_word(&w), x);
        for letter in w.letters() {
            let ok = matches!(letter.letter(), Letter::L | Letter::Framing { .. });
            prop_assert!(ok, "unexpected letter {}", letter);
        }
    }

    #[test]
    fn h2_transport_round_trip_and_purity(x in h2(20)) {
        let w = factor_h2_transport(&x).unwrap();
        prop_assert_eq!(eval_word(&w), x);
        for letter in w.letters() {
            let ok = matches!(letter.letter(), Letter::Transport { .. });
            prop_assert!(ok, "unexpected letter {}", letter);
        }
    }

    #[test]
    fn outsiders_are_rejected(x in gl2(12)) {
        prop_assert_eq!(factor_h4(&x).is_ok(), membership(&x, SubgroupTag::H4));
        prop_assert_eq!(factor_h1(&x).is_ok(), membership(&x, SubgroupTag::H1));
        prop_assert_eq!(factor_h2_transport(&x).is_ok(), membership(&x, SubgroupTag::H2));
        prop_assert_eq!(decompose_h2(&x).is_ok(), membership(&x, SubgroupTag::H2));
    }

    #[test]
    fn framing_invariance(x in gl2(16), shift in -1000i64..1000, s1 in sign(), s2 in sign()) {
        prop_assume!(x.det().is_one());
        let s = SurgeryDescriptor::new(x).unwrap();
        let t = change_framing(&s, &BigInt::from(shift), s1, s2);
        prop_assert!(t.matrix().det().is_one());
        prop_assert_eq!(surgery_invariants(&t), surgery_invariants(&s));
        prop_assert_eq!(t.meridian_image(), s.meridian_image());
    }

    #[test]
    fn flop_implies_trivial_mod2(x in prop_oneof![gl2(14), h1(14)]) {
        prop_assume!(x.det().is_one());
        let s = SurgeryDescriptor::new(x).unwrap();
        if is_topological_flop(&s) {
            prop_assert!(is_trivial_mod2(&s));
        }
    }

    #[test]
    fn flop_decomposition_is_sound(x in h1(16)) {
        prop_assume!(x.det().is_one());
        let s = SurgeryDescriptor::new(x.clone()).unwrap();
        let w = flop_decomposition(&s).unwrap();
        prop_assert_eq!(eval_word(&w), x);
        for letter in w.letters() {
            match letter.letter() {
                Letter::L => {
                    let flop = SurgeryDescriptor::new(letter.matrix()).unwrap();
                    prop_assert!(is_topological_flop(&flop));
                }
                Letter::Framing { .. } => {}
                other => prop_assert!(false, "unexpected letter {}", other),
            }
        }
    }

    #[test]
    fn normalization_is_a_framing_change(x in h1(16)) {
        prop_assume!(x.det().is_one());
        let s = SurgeryDescriptor::new(x.clone()).unwrap();
        let n = normalize_to_h2(&s).unwrap();
        let y = n.descriptor.matrix();
        prop_assert!(membership(y, SubgroupTag::H2));
        prop_assert!(framing_only(&x.inverse().mul(y)));
        prop_assert!(membership(&n.sign, SubgroupTag::K4));
        prop_assert!(membership(&n.sign.mul(y), SubgroupTag::H4));
        prop_assert_eq!(surgery_invariants(&n.descriptor), surgery_invariants(&s));
    }

    #[test]
    fn lens_parity_ignores_c(a in -400i64..400, c in -400i64..400) {
        let (a, c) = (BigInt::from(a), BigInt::from(c));
        match lens_space_h1(&a, &c) {
            Ok(h) => {
                prop_assert_eq!(&h.order, &a.abs());
                prop_assert_eq!(h.mod2_rank, u8::from(a.is_even()));
                let shifted = lens_space_h1(&a, &(&c + &a * 2)).unwrap();
                prop_assert_eq!(shifted.mod2_rank, h.mod2_rank);
            }
            Err(_) => prop_assert!(!a.gcd(&c).is_one()),
        }
    }

    #[test]
    fn plan_soundness(x in gl2(24)) {
        let p = plan_monodromy(&x);
        prop_assert!(verify_plan(&p));
        let (k, _) = decompose_gl2(&x);
        prop_assert_eq!(p.twist(), k);
        let allowed: Vec<IntMat2> = [Ruling::First, Ruling::Second]
            .into_iter()
            .flat_map(|r| [Shift::MINUS, Shift::ZERO, Shift::PLUS].map(|n| flopcalc::word::transport_matrix(r, n)))
            .collect();
        for (i, step) in p.steps.iter().enumerate() {
            match &step.kind {
                StepKind::DelPezzoTwist { .. } => prop_assert_eq!(i, 0),
                StepKind::QuadricTransform { .. } => prop_assert!(allowed.contains(&step.matrix)),
            }
        }
    }

    #[test]
    fn plans_compose(x in gl2(14), y in gl2(14)) {
        let p = plan_monodromy(&x).compose(&plan_monodromy(&y)).unwrap();
        prop_assert_eq!(&p.target, &x.mul(&y));
        prop_assert!(verify_plan(&p));
    }

    #[test]
    fn plan_json_round_trip(x in gl2(16)) {
        let p = plan_monodromy(&x);
        let text = serde_json::to_string(&p).unwrap();
        let back: MonodromyPlan = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert!(verify_plan(&back));
    }

    #[test]
    fn matrix_text_and_json_round_trip(x in gl2(40)) {
        prop_assert_eq!(x.to_string().parse::<IntMat2>().unwrap(), x.clone());
        let text = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntMat2>(&text).unwrap(), x);
    }

    #[test]
    fn word_text_and_json_round_trip(x in h1(16)) {
        let w = factor_h1(&x).unwrap();
        prop_assert_eq!(w.to_string().parse::<GeneratorWord>().unwrap(), w.clone());
        let text = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<GeneratorWord>(&text).unwrap(), w.clone());
        prop_assert!(eval_word(&w.inverse()).mul(&x).is_identity());
    }

    #[test]
    fn k6_lift_matches_reduction(x in gl2(12)) {
        prop_assert_eq!(k6_lift(x.mod2()).mod2(), x.mod2());
    }
}

#[test]
fn k6_table_is_a_group() {
    let k6 = k6_elements();
    for x in &k6 {
        assert!(k6.contains(&x.inverse()));
        for y in &k6 {
            assert!(k6.contains(&x.mul(y)), "{x} * {y}");
        }
    }
}

#[test]
fn sign_framing_changes_preserve_det() {
    let s = SurgeryDescriptor::new(m([[3, 1], [8, 3]])).unwrap();
    for s1 in [Sign::Plus, Sign::Minus] {
        for s2 in [Sign::Plus, Sign::Minus] {
            let t = change_framing(&s, &BigInt::from(5), s1, s2);
            assert!(t.matrix().det().is_one());
        }
    }
}
