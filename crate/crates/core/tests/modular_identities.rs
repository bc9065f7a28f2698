use aperylab_core::holonomic::{
    apery_pair, mirror_map, mukai_operator, tabulated_constant, Variety,
};
use aperylab_core::modular::{
    f_form, l_f_3, phi_form, verify_phi_identity, verify_ratio_identity, QSeries,
};
use aperylab_core::Rational;

#[test]
fn both_identities_through_q20() {
    for v in Variety::RATIONAL {
        let phi = verify_phi_identity(v, 20).unwrap();
        let ratio = verify_ratio_identity(v, 20).unwrap();
        assert!(phi.passed(), "{v}: {:?}", phi.first_mismatch);
        assert!(ratio.passed(), "{v}: {:?}", ratio.first_mismatch);
        assert_eq!(phi.order_checked, 20);
    }
}

#[test]
fn mirror_map_round_trip() {
    for v in Variety::RATIONAL {
        let (q_of_t, t_of_q) = mirror_map(&mukai_operator(v), 20).unwrap();
        assert_eq!(q_of_t.compose(&t_of_q).unwrap(), QSeries::var(20), "{v}");
        assert_eq!(q_of_t.coeff(1), Rational::from_integer(1.into()));
    }
}

/// A one-coefficient perturbation of `A` is caught at exactly that power.
#[test]
fn a_perturbed_series_is_caught_at_its_first_wrong_power() {
    let v = Variety::V12;
    let pair = apery_pair(v, 20).unwrap();
    let mut a = pair.a.clone();
    a[7] += Rational::from_integer(1.into());
    let (_, t_of_q) = mirror_map(&mukai_operator(v), 20).unwrap();
    let lhs = QSeries::new(a, 20).compose(&t_of_q).unwrap();
    assert_eq!(lhs.first_mismatch(&phi_form(v, 20).unwrap()), Some(7));
}

#[test]
fn f_is_normalized_and_l_f_3_is_the_apery_constant() {
    for v in Variety::RATIONAL {
        let f = f_form(v, 5).unwrap();
        assert_eq!(f.coeff(0), Rational::from_integer(0.into()), "{v}");
        assert_eq!(f.coeff(1), Rational::from_integer(1.into()), "{v}");
        let agree = l_f_3(v, 50)
            .unwrap()
            .agreement_digits(&tabulated_constant(v).value(50).unwrap());
        assert!(agree >= 40, "{v}: {agree}");
    }
}
