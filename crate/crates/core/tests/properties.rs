use aperylab_core::holonomic::{mukai_operator, op_to_recurrence, solve, Variety};
use aperylab_core::modular::QSeries;
use aperylab_core::precision::{PolyN, Rational, Real};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..5_000).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn real_arithmetic_tracks_exact_rationals(x in rational(), y in rational()) {
        let wd = 40;
        let (rx, ry) = (Real::from_rational(&x, wd), Real::from_rational(&y, wd));
        let exact = Real::from_rational(&(&x * &y + &x), wd);
        prop_assert!((&(&rx * &ry) + &rx).close_to(&exact, wd - 3));
        if !y.is_zero() {
            let q = Real::from_rational(&(&x / &y), wd);
            prop_assert!((&rx / &ry).close_to(&q, wd - 3));
        }
    }

    #[test]
    fn poly_shift_is_translation(c in prop::collection::vec(rational(), 1..6), s in -20i64..20, n in -50i64..50) {
        let p = PolyN::new(c);
        prop_assert_eq!(p.shift(s).eval_int(n), p.eval_int(n + s));
    }

    #[test]
    fn series_reversion_inverts_composition(c in prop::collection::vec(-9i64..9, 6)) {
        let order = 8;
        let mut coeffs = vec![Rational::from_integer(0.into()), Rational::from_integer(1.into())];
        coeffs.extend(c.iter().map(|&k| Rational::from_integer(k.into())));
        let s = QSeries::new(coeffs, order);
        let r = s.reverse().unwrap();
        prop_assert_eq!(s.compose(&r).unwrap(), QSeries::var(order));
        prop_assert_eq!(r.compose(&s).unwrap(), QSeries::var(order));
    }

    #[test]
    fn solutions_are_linear_in_initial_terms(a in rational(), b in rational(), k in rational()) {
        let rec = op_to_recurrence(&mukai_operator(Variety::V16));
        let n = 25;
        let init = |x: &Rational| vec![x.clone()];
        let ua = solve(&rec, &init(&a), n).unwrap();
        let ub = solve(&rec, &init(&b), n).unwrap();
        let mix = solve(&rec, &init(&(&a + &(&k * &b))), n).unwrap();
        for i in 0..=n {
            prop_assert_eq!(&mix[i], &(&ua[i] + &(&k * &ub[i])));
        }
    }
}
