use super::*;
use crate::lattice::AbelianGroupPresentation;

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Hand transcription of the rank-3 monoid table, independent of the family
/// constructor.
fn monoid3() -> SphericalDivisorModel {
    let lat = TorusLattice::new(["eps_1", "eps_2", "eps_3", "eps_4"]).unwrap();
    let f = |v: &[i64]| CovectorFunctional::from_i64(&lat, v).unwrap();
    let d1 = f(&[1, -1, 0, -1]);
    let d2 = f(&[0, 1, -1, 0]);
    let roots = SimpleRootSet::new(
        lat.clone(),
        vec![
            ("alpha_1".into(), Character::from_i64(&lat, &[1, -1, 0, 0]).unwrap(), d1.clone()),
            ("alpha_2".into(), Character::from_i64(&lat, &[0, 1, -1, 0]).unwrap(), d2.clone()),
        ],
    )
    .unwrap();
    let basis = (0..4)
        .map(|i| Character::basis(&lat, &lat.labels()[i].clone()).unwrap())
        .collect();
    SphericalDivisorModel::new(
        "monoid3",
        lat.clone(),
        basis,
        roots,
        vec![ColorSpec::new("D_1", d1, -2), ColorSpec::new("D_2", d2, -2)],
        vec![
            BoundarySpec::new("X_0", f(&[1, 1, 1, 0])),
            BoundarySpec::new("X_1", f(&[0, 1, 1, 1])),
            BoundarySpec::new("X_2", f(&[0, 0, 1, 1])),
            BoundarySpec::new("X_3", f(&[0, 0, 0, 1])),
        ],
    )
}

fn monoid1() -> SphericalDivisorModel {
    let lat = TorusLattice::new(["eps_1", "eps_2"]).unwrap();
    let f = |v: &[i64]| CovectorFunctional::from_i64(&lat, v).unwrap();
    SphericalDivisorModel::new(
        "monoid1",
        lat.clone(),
        vec![
            Character::basis(&lat, "eps_1").unwrap(),
            Character::basis(&lat, "eps_2").unwrap(),
        ],
        SimpleRootSet::empty(&lat),
        vec![],
        vec![BoundarySpec::new("X_0", f(&[1, 0])), BoundarySpec::new("X_1", f(&[0, 1]))],
    )
}

fn div(model: &SphericalDivisorModel, spec: &str) -> Divisor {
    model.parse_divisor(spec).unwrap()
}

fn chi(model: &SphericalDivisorModel, coords: &[i64]) -> Character {
    Character::from_i64(model.lattice(), coords).unwrap()
}

#[test]
fn monoid_relations() {
    let m = monoid3();
    assert_eq!(principal_divisor(&m, &chi(&m, &[1, 0, 0, 0])).unwrap(), div(&m, "X_0:1,D_1:1"));
    assert_eq!(
        principal_divisor(&m, &chi(&m, &[0, 0, 0, 1])).unwrap(),
        div(&m, "X_1:1,X_2:1,X_3:1,D_1:-1")
    );
    assert_eq!(
        principal_divisor(&m, &chi(&m, &[0, 1, 0, 0])).unwrap(),
        div(&m, "X_0:1,X_1:1,D_2:1,D_1:-1")
    );
    assert!(principal_divisor(&m, &chi(&m, &[0, 0, 0, 0])).unwrap().is_zero());
}

#[test]
fn monoid_class_group_is_free_on_colors() {
    let m = monoid3();
    let cl = class_group(&m).unwrap();
    assert_eq!(cl.presentation.free_rank, 2);
    assert!(cl.presentation.invariant_factors.is_empty());
    assert_eq!(cl.generators, vec!["D_1", "D_2"]);
    assert!(cl.has_named_generators());

    let d1 = class_of(&m, &div(&m, "D_1:1")).unwrap();
    assert_eq!(d1.free, vec![int(1), int(0)]);
    let x0 = class_of(&m, &div(&m, "X_0:1")).unwrap();
    assert_eq!(x0.free, vec![int(-1), int(0)]);
}

#[test]
fn monoid_canonical_and_gorenstein() {
    let m = monoid3();
    let k = canonical_divisor(&m).unwrap();
    assert_eq!(k, div(&m, "X_0:-1,X_1:-1,X_2:-1,X_3:-1,D_1:-2,D_2:-2"));
    // -sum X is principal, so K is equivalent to -2(D_1 + D_2)
    assert_eq!(class_of(&m, &k).unwrap(), class_of(&m, &div(&m, "D_1:-2,D_2:-2")).unwrap());
    assert!(!is_gorenstein(&m).unwrap());
    assert!(is_gorenstein(&monoid1()).unwrap());
    assert!(class_group(&monoid1()).unwrap().presentation.is_trivial());
}

#[test]
fn principality_with_witness() {
    let m = monoid3();
    let w = is_principal(&m, &m.boundary_sum()).unwrap().unwrap();
    assert_eq!(w, chi(&m, &[1, 0, 0, 1]));
    assert!(is_principal(&m, &div(&m, "D_1:1")).unwrap().is_none());
    assert_eq!(is_principal(&m, &Divisor::zero()).unwrap().unwrap(), chi(&m, &[0, 0, 0, 0]));
}

#[test]
fn foreign_labels_are_rejected() {
    let m = monoid3();
    assert!(matches!(m.parse_divisor("D_9:1"), Err(Error::ForeignLabel(_))));
    let stray = Divisor::single(DivisorLabel::color("E_1"));
    assert!(matches!(class_of(&m, &stray), Err(Error::ForeignLabel(_))));
    assert!(matches!(is_principal(&m, &stray), Err(Error::ForeignLabel(_))));
}

#[test]
fn validation_reports() {
    assert!(validate_model(&monoid3()).is_valid());

    let m = monoid3();
    let mut bad = m.clone();
    bad.boundaries[1].valuation = CovectorFunctional::dual(m.lattice(), "eps_1").unwrap();
    let report = validate_model(&bad);
    assert!(report.has_failure(ValidationCheck::BoundaryAntidominant));

    let mut dup = m.clone();
    dup.colors[1].id = "X_2".into();
    assert!(validate_model(&dup).has_failure(ValidationCheck::LabelsUnique));

    let mut half = m.clone();
    half.colors[0].functional = half.colors[0]
        .functional
        .scale(&num_rational::BigRational::new(int(1), int(2)));
    assert!(validate_model(&half).has_failure(ValidationCheck::FunctionalsIntegral));

    let mut thin = m.clone();
    thin.basis_characters[0] = thin.basis_characters[0].scale(&int(2));
    assert!(validate_model(&thin).has_failure(ValidationCheck::BasisGenerates));
}

#[test]
fn torsion_uses_smith_coordinates() {
    // one boundary with valuation 2 on a rank-one lattice: Cl = Z/2
    let lat = TorusLattice::new(["e"]).unwrap();
    let m = SphericalDivisorModel::new(
        "z2",
        lat.clone(),
        vec![Character::basis(&lat, "e").unwrap()],
        SimpleRootSet::empty(&lat),
        vec![],
        vec![BoundarySpec::new("X", CovectorFunctional::from_i64(&lat, &[2]).unwrap())],
    );
    let cl = class_group(&m).unwrap();
    assert_eq!(cl.presentation, AbelianGroupPresentation::new(0, vec![int(2)]).unwrap());
    assert!(!cl.has_named_generators());
    assert_eq!(class_of(&m, &div(&m, "X:1")).unwrap().torsion, vec![int(1)]);
    assert!(class_of(&m, &div(&m, "X:4")).unwrap().is_zero());
    assert!(!is_gorenstein(&m).unwrap());
}

#[test]
fn provisional_models_refuse_class_queries() {
    let m = monoid3().into_provisional("waiting for oracle");
    assert!(matches!(class_group(&m), Err(Error::ProvisionalModel(_))));
    assert!(matches!(canonical_divisor(&m), Err(Error::ProvisionalModel(_))));
    assert!(principal_divisor(&m, &chi(&m, &[1, 0, 0, 0])).is_ok());
}

#[test]
fn json_round_trip_is_exact() {
    let mut m = monoid3();
    m.colors[1].aliases.push("E_1".into());
    m.boundaries[0].valuation = m.boundaries[0]
        .valuation
        .scale(&num_rational::BigRational::new(int(3), int(2)));
    let text = model_to_json(&m);
    assert!(text.contains("\"3/2\""));
    assert!(text.contains("\"1/1\""));
    let back = model_from_json(&text).unwrap();
    assert_eq!(back, m);
    assert_eq!(model_to_json(&back), text);
    assert!(model_from_json("{\"lattice\": 3}").is_err());
}

#[test]
fn aliases_resolve_to_their_color() {
    let mut m = monoid3();
    m.colors[0].aliases.push("D_s1".into());
    assert_eq!(m.resolve("D_s1").unwrap(), m.resolve("D_1").unwrap());
    assert_eq!(div(&m, "D_s1:1,D_1:1"), div(&m, "D_1:2"));
}

#[test]
fn wonderful_sections() {
    let w = WonderfulModel::synthetic(2, 1).unwrap();
    let lat = w.lattice().clone();
    for (label, chi) in w.picard_basis().unwrap() {
        assert_eq!(wonderful_section_divisor(&w, &chi).unwrap(), Divisor::single(label));
    }
    assert!(wonderful_section_divisor(&w, &Character::zero(&lat)).unwrap().is_zero());
    let lone = Character::basis(&lat, "w_1_1").unwrap();
    assert!(matches!(wonderful_section_divisor(&w, &lone), Err(Error::OutsidePicard(_))));
    // the simple roots themselves pair through the Cartan matrix
    let a = &w.simple_roots().roots()[0].1;
    assert_eq!(a.coords()[0], int(2));
    assert_eq!(a.coords()[1], int(-1));
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn coords() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-12i64..=12, 4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn principal_divisor_is_additive(a in coords(), b in coords()) {
            let m = monoid3();
            let (a, b) = (chi(&m, &a), chi(&m, &b));
            prop_assert_eq!(
                principal_divisor(&m, &a.add(&b).unwrap()).unwrap(),
                principal_divisor(&m, &a).unwrap().add(&principal_divisor(&m, &b).unwrap())
            );
        }

        #[test]
        fn principal_classes_vanish(a in coords()) {
            let m = monoid3();
            let d = principal_divisor(&m, &chi(&m, &a)).unwrap();
            prop_assert!(class_of(&m, &d).unwrap().is_zero());
            let w = is_principal(&m, &d).unwrap().unwrap();
            prop_assert_eq!(principal_divisor(&m, &w).unwrap(), d);
        }

        #[test]
        fn classes_detect_principal_differences(a in coords(), v in proptest::collection::vec(-5i64..=5, 6)) {
            let m = monoid3();
            let d = m.divisor_from_vector(&v.iter().map(|&x| int(x)).collect::<Vec<_>>());
            let e = d.add(&principal_divisor(&m, &chi(&m, &a)).unwrap());
            prop_assert_eq!(class_of(&m, &d).unwrap(), class_of(&m, &e).unwrap());
            prop_assert_eq!(class_of(&m, &d).unwrap().is_zero(), is_principal(&m, &d).unwrap().is_some());
        }

        #[test]
        fn class_group_ignores_ordering(seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = monoid3();
            let mut p = m.clone();
            p.basis_characters.shuffle(&mut rng);
            p.colors.shuffle(&mut rng);
            p.boundaries.shuffle(&mut rng);
            prop_assert_eq!(class_group(&m).unwrap().presentation, class_group(&p).unwrap().presentation);
        }

        #[test]
        fn wonderful_sections_are_additive(a in proptest::collection::vec(-9i64..=9, 3), b in proptest::collection::vec(-9i64..=9, 3)) {
            let w = WonderfulModel::synthetic(2, 1).unwrap();
            let basis = w.picard_basis().unwrap();
            let combo = |c: &[i64]| {
                basis.iter().zip(c).fold(Character::zero(w.lattice()), |acc, ((_, x), k)| acc.add(&x.scale(&int(*k))).unwrap())
            };
            let (x, y) = (combo(&a), combo(&b));
            prop_assert_eq!(
                wonderful_section_divisor(&w, &x.add(&y).unwrap()).unwrap(),
                wonderful_section_divisor(&w, &x).unwrap().add(&wonderful_section_divisor(&w, &y).unwrap())
            );
        }
    }
}
