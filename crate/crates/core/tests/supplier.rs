use std::collections::HashSet;

use centerkit::gen::{random_supplier_instance, SupplierParams};
use centerkit::oracles::{integral_solutions, opt_robust_supplier};
use centerkit::scalar::within_one_plus_sqrt3;
use centerkit::supplier::{round_or_cut, solve_robust_supplier_with, RoundOrCut};
use centerkit::{EitherOr, Rational, SqRadius, SupplierInstance};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> SupplierInstance<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = SupplierParams {
        clients: rng.gen_range(1..=8),
        facilities: rng.gen_range(1..=5),
        k: rng.gen_range(1..=3),
        ..Default::default()
    };
    random_supplier_instance(&mut rng, params).unwrap()
}

fn check_cuts(
    inst: &SupplierInstance<Rational>,
    r2: &SqRadius<Rational>,
    run: &RoundOrCut<Rational>,
) {
    let sols = integral_solutions(inst, r2).unwrap();
    let mut seen = HashSet::new();
    for (cut, clustering) in &run.cuts {
        assert!(seen.insert(clustering.clone()), "clustering repeated");
        for s in &sols {
            assert!(
                cut.lhs_integral(&s.served) <= cut.rhs,
                "cut {cut:?} cuts off {s:?}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratio_and_certificates(seed in any::<u64>()) {
        let inst = instance(seed);
        let opt = opt_robust_supplier(&inst).unwrap();
        let run = solve_robust_supplier_with(&inst, 1000).unwrap();
        let sol = &run.solution;
        prop_assert!(sol.centers.len() <= inst.k());
        prop_assert!(sol.covered.len() >= inst.p());
        prop_assert!(within_one_plus_sqrt3(&sol.achieved_sq_radius, &opt.value));

        let r2 = SqRadius::new(opt.value.clone()).unwrap();
        let at_opt = round_or_cut(&inst, &r2, 1000).unwrap();
        prop_assert!(matches!(at_opt.outcome, EitherOr::Solved(_)));
        check_cuts(&inst, &r2, &at_opt);
    }

    #[test]
    fn infeasible_radii_have_valid_cuts(seed in any::<u64>()) {
        let inst = instance(seed);
        let opt = opt_robust_supplier(&inst).unwrap();
        for r2 in centerkit::geometry::candidate_radii_supplier(&inst) {
            if *r2.value() >= opt.value {
                break;
            }
            let run = round_or_cut(&inst, &r2, 1000).unwrap();
            check_cuts(&inst, &r2, &run);
        }
    }
}

#[test]
fn machine_rationals_work_too() {
    let pt = |x: i64, y: i64| vec![Ratio::from_integer(x), Ratio::from_integer(y)];
    let inst = SupplierInstance::new(
        2,
        vec![pt(0, 0), pt(2, 0), pt(9, 9)],
        vec![pt(1, 0), pt(9, 8)],
        1,
        2,
    )
    .unwrap();
    let run = solve_robust_supplier_with(&inst, 100).unwrap();
    assert_eq!(run.solution.centers, vec![0]);
    assert!(within_one_plus_sqrt3(
        &run.solution.achieved_sq_radius,
        &Ratio::from_integer(1)
    ));
}

#[test]
fn triangle_gadget_emits_valid_cut() {
    use centerkit::gen::triangle_gadget_supplier;
    let mut emitted = 0;
    for seed in 0..60 {
        let inst = triangle_gadget_supplier(&mut ChaCha8Rng::seed_from_u64(seed), 4).unwrap();
        let opt = opt_robust_supplier(&inst).unwrap();
        for r2 in centerkit::geometry::candidate_radii_supplier(&inst) {
            let run = round_or_cut(&inst, &r2, 1000).unwrap();
            check_cuts(&inst, &r2, &run);
            emitted += run.cuts.len();
            if *r2.value() >= opt.value {
                assert!(matches!(run.outcome, EitherOr::Solved(_)));
                break;
            }
        }
    }
    assert!(emitted > 0);
}
