use super::*;

#[test]
fn parse_family_specs() {
    assert_eq!("monoid:m=3".parse::<FamilySpec>().unwrap(), FamilySpec::Monoid { m: 3 });
    assert_eq!("monoid:3".parse::<FamilySpec>().unwrap(), FamilySpec::Monoid { m: 3 });
    assert_eq!(
        "circular:n=3,m=2,s=1,r=1".parse::<FamilySpec>().unwrap(),
        FamilySpec::Circular { m: 2, n: 3, r: 1, s: 1 }
    );
    assert_eq!(
        "determinantal:3,3,2".parse::<FamilySpec>().unwrap(),
        FamilySpec::Determinantal { m: 3, n: 3, r: 2 }
    );
    assert_eq!(
        "complexes:2,3,2,1,1".parse::<FamilySpec>().unwrap().to_string(),
        "complexes:l=2,m=3,n=2,r=1,s=1"
    );
    assert!(matches!("torus:1".parse::<FamilySpec>(), Err(Error::Parse(_))));
    assert!(matches!("monoid:m=-1".parse::<FamilySpec>(), Err(Error::InvalidParameters(_))));
    assert!("monoid:m=1,m=2".parse::<FamilySpec>().is_err());
    assert!("circular:m=2,2,1,1".parse::<FamilySpec>().is_err());
    assert!("monoid".parse::<FamilySpec>().is_err());
}

#[test]
fn exact_logarithms() {
    let two = BigRational::from_integer(2.into());
    assert_eq!(log2_exact(&BigRational::new(1.into(), 8.into()), &two).unwrap(), -3);
    assert_eq!(log2_exact(&BigRational::from_integer(16.into()), &two).unwrap(), 4);
    assert!(log2_exact(&BigRational::from_integer(3.into()), &two).is_err());
}

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::divisor_model::{
    canonical_divisor, class_group, class_of, is_gorenstein, principal_divisor, validate_model, DivisorLabel,
    SphericalDivisorModel,
};
use crate::oracle;

fn chi(model: &SphericalDivisorModel, spec: &str) -> Character {
    model.lattice().parse_character(spec).unwrap()
}

fn div(model: &SphericalDivisorModel, spec: &str) -> crate::divisor_model::Divisor {
    model.parse_divisor(spec).unwrap()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Every curve passes through the base point at `t = 1`.
fn curves_start_at_base_point(real: &MatrixRealization) {
    let one = BigRational::one();
    for curve in &real.curves {
        let at_one: Vec<_> = curve.point.iter().map(|m| m.map(|p| p.evaluate(&one).unwrap())).collect();
        assert_eq!(at_one, real.base_point, "curve {}", curve.label);
    }
}

#[test]
fn monoid_tables() {
    let (model, real) = monoid_model(3).unwrap();
    assert_eq!(model.boundaries().len(), 4);
    assert_eq!(model.colors().len(), 2);
    assert_eq!(principal_divisor(&model, &chi(&model, "eps_2:1")).unwrap(), div(&model, "X_0:1,X_1:1,D_2:1,D_1:-1"));
    assert_eq!(
        principal_divisor(&model, &chi(&model, "eps_1:1,eps_4:1")).unwrap(),
        div(&model, "X_0:1,X_1:1,X_2:1,X_3:1")
    );
    assert!(validate_model(&model).is_valid());
    assert!(real.contains(&real.base_point));
    curves_start_at_base_point(&real);

    let (one, _) = monoid_model(1).unwrap();
    assert_eq!((one.boundaries().len(), one.colors().len()), (2, 0));
    assert!(class_group(&one).unwrap().presentation.is_trivial());
    assert!(matches!(monoid_model(0), Err(Error::InvalidParameters(_))));
}

#[test]
fn monoid_semi_invariants_are_discovered() {
    let (model, real) = monoid_model(3).unwrap();
    assert_eq!(real.semi_invariant("d").unwrap().claimed_weight, chi(&model, "eps_1:1,eps_4:1"));
    assert_eq!(real.semi_invariant("Delta_1").unwrap().claimed_weight, chi(&model, "eps_1:1"));
    assert_eq!(real.semi_invariant("Delta_2").unwrap().claimed_weight, chi(&model, "eps_1:1,eps_2:1"));
    assert_eq!(
        real.semi_invariant("Delta_3").unwrap().claimed_weight,
        chi(&model, "eps_1:1,eps_2:1,eps_3:1")
    );
    for f in &real.semi_invariants {
        assert_eq!(oracle::semiinvariance_check(&real, f, 8, 3).unwrap(), f.claimed_weight, "{}", f.name);
    }
}

#[test]
fn circular_equal_sizes() {
    let (model, real) = circular_complexes_model(2, 2, 1, 1).unwrap();
    let ids: Vec<&str> = model.boundaries().iter().map(|b| b.id.as_str()).collect();
    assert_eq!(ids, ["X_{0,1}", "X_{1,0}"]);
    let colors: Vec<&str> = model.colors().iter().map(|c| c.id.as_str()).collect();
    assert_eq!(colors, ["D_r1", "D_r2"]);
    assert_eq!(model.resolve("D_s1").unwrap(), DivisorLabel::color("D_r1"));
    assert_eq!(model.resolve("D_s2").unwrap(), DivisorLabel::color("D_r2"));

    let cl = class_group(&model).unwrap();
    assert_eq!((cl.presentation.free_rank, cl.presentation.invariant_factors.len()), (2, 0));
    let generators: Vec<&str> = cl.generators.iter().map(String::as_str).collect();
    assert_eq!(generators, ["D_r1", "D_r2"]);
    let k = canonical_divisor(&model).unwrap();
    assert_eq!(k, div(&model, "X_{0,1}:-1,X_{1,0}:-1,D_r1:-2,D_r2:-2"));
    assert!(class_of(&model, &k).unwrap().is_zero());
    assert!(is_gorenstein(&model).unwrap());
    assert!(real.contains(&real.base_point));
    curves_start_at_base_point(&real);
}

#[test]
fn circular_unequal_sizes() {
    let (model, _) = circular_complexes_model(2, 3, 1, 1).unwrap();
    assert!(model.boundaries().is_empty());
    let cl = class_group(&model).unwrap();
    assert_eq!(cl.presentation.free_rank, 1);
    assert_eq!(cl.generators, ["D_r1"]);
    let k = canonical_divisor(&model).unwrap();
    assert_eq!(k, div(&model, "D_r1:-2,D_r2:-2,D_s2:-2"));
    assert_eq!(class_of(&model, &k).unwrap().free, ints(&[2]));
    assert!(!is_gorenstein(&model).unwrap());

    let (model, _) = circular_complexes_model(3, 3, 1, 1).unwrap();
    assert!(model.boundaries().is_empty());
    assert_eq!(model.colors().len(), 4);
    assert!(class_of(&model, &canonical_divisor(&model).unwrap()).unwrap().is_zero());
}

#[test]
fn circular_swaps_to_m_at_most_n() {
    let (swapped, real) = circular_complexes_model(3, 2, 1, 1).unwrap();
    let (direct, _) = circular_complexes_model(2, 3, 1, 1).unwrap();
    assert_eq!(swapped.name(), direct.name());
    assert_eq!(real.action, Action::Circular { m: 2, n: 3, r: 1, s: 1 });
    assert!(CircularParams::new(3, 2, 1, 0).unwrap().swapped);
    assert_eq!(CircularParams::new(3, 2, 0, 1).unwrap(), CircularParams { m: 2, n: 3, r: 1, s: 0, swapped: true });
}

#[test]
fn circular_parameter_errors() {
    for (m, n, r, s) in [(2, 2, 0, 0), (2, 3, 2, 1), (2, 2, 2, 0), (3, 3, 0, 3), (2, 2, 3, 0)] {
        assert!(
            matches!(circular_complexes_model(m, n, r, s), Err(Error::InvalidParameters(_))),
            "{m},{n},{r},{s}"
        );
    }
}

#[test]
fn circular_boundary_count_and_validation() {
    for (m, n, r, s) in CircularParams::admissible(4) {
        let (model, real) = circular_complexes_model(m, n, r, s).unwrap();
        let p = CircularParams::new(m, n, r, s).unwrap();
        let expected = if p.m == p.n && p.r + p.s == p.m { 2 } else { 0 };
        assert_eq!(model.boundaries().len(), expected, "{m},{n},{r},{s}");
        assert!(validate_model(&model).is_valid(), "{m},{n},{r},{s}");
        assert!(real.contains(&real.base_point));
        curves_start_at_base_point(&real);
        for b in model.boundaries() {
            assert!(real.curve_for_boundary(&b.id).is_some());
        }
    }
}

#[test]
fn circular_edge_cases_with_one_side_empty() {
    // s = 0: only the eps side, D_s1 and D_s2 omitted
    let (model, _) = circular_complexes_model(3, 4, 1, 0).unwrap();
    let colors: Vec<&str> = model.colors().iter().map(|c| c.id.as_str()).collect();
    assert_eq!(colors, ["D_r1", "D_r2"]);
    let k = canonical_divisor(&model).unwrap();
    assert_eq!(class_of(&model, &k).unwrap().free, ints(&[1]));
    // r = 0: D_r1 and D_r2 omitted
    let (model, _) = circular_complexes_model(3, 3, 0, 2).unwrap();
    let colors: Vec<&str> = model.colors().iter().map(|c| c.id.as_str()).collect();
    assert_eq!(colors, ["E_1", "D_s1", "D_s2"]);
    assert!(is_gorenstein(&model).unwrap());
}

#[test]
fn determinantal_realization_examples() {
    let (real, model) = determinantal_realization(2, 2, 1).unwrap();
    assert!(model.is_provisional());
    assert!(matches!(class_group(&model), Err(Error::ProvisionalModel(_))));
    assert!(real.contains(&real.base_point));
    curves_start_at_base_point(&real);
    let limit = oracle::limit_signature(&real, "lambda_1").unwrap();
    assert_eq!(limit.rank_profile, vec![0]);

    let (real, _) = determinantal_realization(3, 3, 2).unwrap();
    assert_eq!(oracle::orbit_dimension(&real, 1), 8);
    for (m, n, r) in [(1, 2, 1), (2, 2, 0), (3, 2, 2)] {
        assert!(matches!(determinantal_realization(m, n, r), Err(Error::InvalidParameters(_))));
    }
}

#[test]
fn determinantal_model_is_finalized_by_the_oracle() {
    let (model, _, evidence) = determinantal_model(3, 4, 2).unwrap();
    assert!(!model.is_provisional());
    assert_eq!(evidence.valuation, vec![0, 1]);
    assert_eq!(evidence.open_orbit_dimension, 2 * (3 + 4 - 2));
    assert_eq!(evidence.codimension, 3 + 4 - 4 + 1);
    assert!(!evidence.boundary_added);
    assert!(model.boundaries().is_empty());
    assert!(validate_model(&model).is_valid());
    let cl = class_group(&model).unwrap();
    assert_eq!(cl.presentation.free_rank, 1);
    let k = canonical_divisor(&model).unwrap();
    assert_eq!(class_of(&model, &k).unwrap(), class_of(&model, &div(&model, "D_r1:1")).unwrap());
}

#[test]
fn complexes_examples() {
    let real = complexes_realization(2, 3, 2, 1, 1).unwrap();
    assert!(real.contains(&real.base_point));
    assert!(real.base_point[0].mul(&real.base_point[1]).is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let g = real.sample_stabilizer(&mut rng, false).unwrap();
        assert!(oracle::stabilizer_check(&real, &g));
        let h = real.sample_stabilizer(&mut rng, true).unwrap();
        assert_ne!(h.factors[0].select(&[0], &[0]), h.factors[1].select(&[0], &[0]));
        assert!(!oracle::stabilizer_check(&real, &h));
    }
    assert!(complexes_realization(2, 3, 2, 0, 0).unwrap().sample_stabilizer(&mut rng, true).is_none());
    assert!(matches!(complexes_realization(2, 3, 2, 2, 2), Err(Error::InvalidParameters(_))));
}

#[test]
fn stabilizer_samples_for_every_family() {
    let mut reals = vec![monoid_model(2).unwrap().1, determinantal_realization(3, 2, 1).unwrap().0];
    reals.push(circular_complexes_model(2, 2, 1, 1).unwrap().1);
    reals.push(circular_complexes_model(3, 4, 0, 2).unwrap().1);
    for real in reals {
        let report = oracle::verify_stabilizer(&real, 4, 9);
        assert!(report.passed, "{}", real.family);
        assert_eq!(report.checks.len(), 9);
    }
}
