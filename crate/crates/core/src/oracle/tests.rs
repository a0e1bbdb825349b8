use super::*;
use crate::divisor_model::BoundarySpec;
use crate::families::realization::SemiInvariantKind;
use crate::families::{circular_complexes_model, determinantal_realization, monoid_model};
use proptest::prelude::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn order(real: &MatrixRealization, f: &SemiInvariantSpec, curve: &str) -> i64 {
    let t = t_order(real, f, curve, DEFAULT_TRIALS, 11).unwrap();
    assert!(t.stable, "{} along {curve}: {:?}", f.name, t.per_trial);
    t.order.unwrap()
}

#[test]
fn monoid_orders() {
    let (model, real) = monoid_model(3).unwrap();
    let d = real.semi_invariant("d").unwrap();
    assert_eq!(order(&real, d, "lambda_1"), 1);
    let one = SemiInvariantSpec::constant(model.lattice(), q(1));
    for curve in &real.curves {
        assert_eq!(order(&real, &one, &curve.label), 0);
    }
    assert_eq!(order(&real, real.semi_invariant("Delta_2").unwrap(), "lambda_0"), 2);
}

#[test]
fn vanishing_functions_are_reported() {
    let (model, real) = monoid_model(2).unwrap();
    let zero = SemiInvariantSpec::constant(model.lattice(), q(0));
    assert!(matches!(t_order(&real, &zero, "lambda_0", 4, 0), Err(Error::Oracle(_))));
    assert!(t_order(&real, &zero, "no_such_curve", 4, 0).is_err());
}

#[test]
fn limits() {
    for m in 1..=5 {
        let (_, real) = monoid_model(m).unwrap();
        for r in 0..=m {
            let sig = limit_signature(&real, &format!("lambda_{r}")).unwrap();
            assert_eq!(sig.rank_profile, vec![r, m - r]);
        }
        let id = limit_signature(&real, "identity").unwrap();
        assert_eq!(id.limit_point, real.base_point);
    }
    let (_, real) = circular_complexes_model(2, 2, 1, 1).unwrap();
    let sig = limit_signature(&real, "lambda_1").unwrap();
    assert_eq!(sig.rank_profile, vec![0, 1]);
    assert!(sig.limit_point[0].is_zero());
}

#[test]
fn negative_powers_have_no_limit() {
    let (_, mut real) = monoid_model(2).unwrap();
    real.push_curve("inverse", None, vec![vec![-1, 0], vec![0, 0], vec![0, 0], vec![0, 0]]);
    assert_eq!(
        limit_signature(&real, "inverse"),
        Err(Error::NoLimit {
            curve: "inverse".into(),
            block: 0
        })
    );
}

#[test]
fn orbit_dimensions() {
    let (_, real) = circular_complexes_model(2, 2, 1, 1).unwrap();
    assert_eq!(orbit_dimension(&real, 0), 4);
    let (_, real) = circular_complexes_model(3, 3, 1, 1).unwrap();
    assert_eq!(orbit_dimension(&real, 0), 8);
    let (real, _) = determinantal_realization(3, 3, 2).unwrap();
    assert_eq!(orbit_dimension(&real, 0), 8);
    let (_, real) = monoid_model(3).unwrap();
    // the monoid's open orbit is dense in a variety of dimension m^2 + 1
    assert_eq!(orbit_dimension(&real, 0), 10);
}

#[test]
fn semi_invariance() {
    let (model, real) = monoid_model(3).unwrap();
    let lat = model.lattice();
    let d = real.semi_invariant("d").unwrap();
    assert_eq!(semiinvariance_check(&real, d, 20, 1).unwrap(), lat.parse_character("eps_1:1,eps_4:1").unwrap());
    let one = SemiInvariantSpec::constant(lat, q(7));
    assert!(semiinvariance_check(&real, &one, 20, 1).unwrap().is_zero());
    let delta1 = real.semi_invariant("Delta_1").unwrap();
    assert_eq!(semiinvariance_check(&real, delta1, 20, 1).unwrap(), lat.parse_character("eps_1:1").unwrap());

    let wrong = SemiInvariantSpec {
        claimed_weight: lat.parse_character("eps_2:1").unwrap(),
        ..delta1.clone()
    };
    assert!(semiinvariance_check(&real, &wrong, 20, 1).is_err());
    let entry = SemiInvariantSpec {
        name: "A_21".into(),
        kind: SemiInvariantKind::Minor {
            block: 0,
            rows: vec![1],
            cols: vec![0],
        },
        claimed_weight: Character::zero(lat),
    };
    assert!(detect_weight(&real, &entry, 20, 1).is_err());
}

#[test]
fn monoid_boundaries_match_the_oracle() {
    let (model, real) = monoid_model(3).unwrap();
    let report = verify_boundary_valuations(&model, &real, &real.semi_invariants, DEFAULT_TRIALS, 0).unwrap();
    assert!(report.passed);
    let d_records: Vec<&CheckRecord> = report
        .checks
        .iter()
        .filter(|c| c.check == "boundary_valuation" && c.inputs["semi_invariant"] == "d")
        .collect();
    assert_eq!(d_records.len(), 4);
    assert!(d_records.iter().all(|c| c.model_value == json!(1) && c.oracle_value == json!(1)));
    let delta1: Vec<i64> = report
        .checks
        .iter()
        .filter(|c| c.check == "boundary_valuation" && c.inputs["semi_invariant"] == "Delta_1")
        .map(|c| c.model_value.as_i64().unwrap())
        .collect();
    assert_eq!(delta1, vec![1, 0, 0, 0]);
}

/// The monoid model with the valuation of `X_1` doubled.
fn corrupted_monoid(m: usize) -> (SphericalDivisorModel, MatrixRealization) {
    let (model, real) = monoid_model(m).unwrap();
    let boundaries = model
        .boundaries()
        .iter()
        .map(|b| {
            if b.id == "X_1" {
                BoundarySpec::new(b.id.clone(), b.valuation.scale(&q(2)))
            } else {
                b.clone()
            }
        })
        .collect();
    let corrupted = SphericalDivisorModel::new(
        model.name(),
        model.lattice().clone(),
        model.basis_characters().to_vec(),
        model.simple_roots().clone(),
        model.colors().to_vec(),
        boundaries,
    );
    (corrupted, real)
}

#[test]
fn corrupted_valuation_is_caught_at_its_boundary() {
    let (model, real) = corrupted_monoid(3);
    let report = verify_boundary_valuations(&model, &real, &real.semi_invariants, DEFAULT_TRIALS, 0).unwrap();
    assert!(!report.passed);
    let failing: Vec<&str> = report.failures().map(|c| c.inputs["boundary"].as_str().unwrap()).collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|b| *b == "X_1"));
}

#[test]
fn circular_boundaries_match_the_oracle() {
    for (m, r, s) in [(2, 1, 1), (3, 1, 2), (3, 2, 1)] {
        let (model, real) = circular_complexes_model(m, m, r, s).unwrap();
        let report = verify_boundary_valuations(&model, &real, &real.semi_invariants, 4, 2).unwrap();
        assert!(report.passed, "{}", serde_json::to_string_pretty(&report).unwrap());
    }
}

#[test]
fn stabilizers() {
    let (_, real) = circular_complexes_model(2, 2, 1, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        assert!(stabilizer_check(&real, &real.sample_stabilizer(&mut rng, false).unwrap()));
        assert!(!stabilizer_check(&real, &real.sample_stabilizer(&mut rng, true).unwrap()));
    }
    assert!(stabilizer_check(&real, &GroupElement::identity(&[2, 2])));
}

#[test]
fn reports_are_deterministic() {
    let (model, real) = monoid_model(2).unwrap();
    let a = verify_boundary_valuations(&model, &real, &real.semi_invariants, 4, 77).unwrap();
    let b = verify_boundary_valuations(&model, &real, &real.semi_invariants, 4, 77).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(verify_stabilizer(&real, 3, 5), verify_stabilizer(&real, 3, 5));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orders_are_valuations(m in 1usize..=3, r_pick in 0usize..4, a in 0usize..8, b in 0usize..8, c in 1i64..50, seed in 0u64..1000) {
        let (_, real) = monoid_model(m).unwrap();
        let r = r_pick % (m + 1);
        let curve = format!("lambda_{r}");
        let f = &real.semi_invariants[a % real.semi_invariants.len()];
        let g = &real.semi_invariants[b % real.semi_invariants.len()];
        let of = t_order(&real, f, &curve, 4, seed).unwrap();
        let og = t_order(&real, g, &curve, 4, seed).unwrap();
        let ofg = t_order(&real, &f.product(g).unwrap(), &curve, 4, seed).unwrap();
        let oc = t_order(&real, &f.scaled(q(c)), &curve, 4, seed).unwrap();
        prop_assert!(of.stable && og.stable && ofg.stable);
        prop_assert_eq!(ofg.order.unwrap(), of.order.unwrap() + og.order.unwrap());
        prop_assert_eq!(oc.order, of.order);
    }

    #[test]
    fn oracle_agrees_with_the_monoid_model(m in 1usize..=3, r_pick in 0usize..4, a in 0usize..8, seed in 0u64..1000) {
        let (model, real) = monoid_model(m).unwrap();
        let boundary = &model.boundaries()[r_pick % (m + 1)];
        let curve = real.curve_for_boundary(&boundary.id).unwrap();
        let f = &real.semi_invariants[a % real.semi_invariants.len()];
        let t = t_order(&real, f, &curve.label, 4, seed).unwrap();
        prop_assert!(t.stable);
        let expected = pair_integral(&f.claimed_weight, &boundary.valuation).unwrap();
        prop_assert_eq!(BigInt::from(t.order.unwrap()), expected);
    }
}
