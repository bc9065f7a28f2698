use aperylab_core::deresonate::{
    grassmann_apery_limit, grassmann_pair, grassmann_pair_at_depth, pac_limit, perturbed_series,
    sine_ratio_check, wronskian, ExponentSet, PerturbedSeries,
};
use aperylab_core::precision::{factorial, pi, Rational, Real};

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn target(n: i64, p: u32) -> Real {
    pi(p + 5).square().div_i64(n * n * (n + 1)).with_digits(p)
}

#[test]
fn wronskian_is_bilinear_and_antisymmetric() {
    let ex = ExponentSet::new(5, q(1, 8), q(1, 12)).unwrap();
    let wd = 50;
    let plus = perturbed_series(&ex, &ex.plus_e(), 20, wd).unwrap();
    let minus = perturbed_series(&ex, &ex.minus_e(), 20, wd).unwrap();
    let w = wronskian(&plus, &minus, 20).unwrap();
    let c = Real::from_rational(&q(-7, 3), wd);
    let scaled = PerturbedSeries {
        coeffs: plus.coeffs.iter().map(|x| x * &c).collect(),
        ..plus.clone()
    };
    let ws = wronskian(&scaled, &minus, 20).unwrap();
    let wr = wronskian(&minus, &plus, 20).unwrap();
    for n in 0..=20 {
        assert!(
            ws.coeffs[n].close_to(&(&w.coeffs[n] * &c), wd - 8),
            "scale n = {n}"
        );
        assert!(
            wr.coeffs[n].close_to(&-&w.coeffs[n], wd - 8),
            "swap n = {n}"
        );
    }
}

#[test]
fn two_routes_to_the_grassmannian_constant() {
    for n in [5usize, 6, 7] {
        let g = grassmann_apery_limit(n, 40, 25).unwrap();
        let r = pac_limit(n, 25).unwrap();
        let t = target(n as i64, 40);
        assert!(
            g.certified_digits() >= 20 && g.value.agreement_digits(&t) >= 20,
            "N = {n}"
        );
        assert!(r.value.agreement_digits(&g.value) >= 20, "N = {n}");
        assert!(r.value.agreement_digits(&t) >= 20, "N = {n}");
    }
}

#[test]
fn grassmann_pairs_start_with_the_normalization() {
    for n in [5usize, 6, 7] {
        let g = grassmann_pair(n, 6, 20).unwrap();
        assert_eq!(g.a[0], 1.into());
        assert!(g.b[0].is_zero() || g.b[0].log10_abs() < -15.0);
        let f = Real::from_int(&factorial(n as u64 - 1), 30);
        assert!(g.b[1].close_to(&f, 15), "N = {n}: {}", g.b[1]);
    }
}

#[test]
fn integrality_survives_a_deeper_perturbation_at_n6() {
    let g = grassmann_pair(6, 20, 24).unwrap();
    let deeper = grassmann_pair_at_depth(6, 20, 24, g.k + 10).unwrap();
    assert_eq!(g.a, deeper.a);
    assert!(g.max_residual.log10_abs() < -10.0);
    for (x, y) in g.b.iter().zip(&deeper.b).skip(1) {
        assert!(x.close_to(y, 20));
    }
}

#[test]
fn too_shallow_a_perturbation_breaks_integrality() {
    // e = 10^{-3}: the e² deviation is far above 1 for a_{5n}.
    let err = grassmann_pair_at_depth(5, 20, 24, 3).unwrap_err();
    assert!(
        matches!(err, aperylab_core::Error::Integrality { .. }),
        "{err:?}"
    );
}

#[test]
fn sine_ratio_inverts_when_e_and_u_swap() {
    let a = sine_ratio_check(&ExponentSet::new(5, q(1, 8), q(1, 12)).unwrap(), 120, 20).unwrap();
    let b = sine_ratio_check(&ExponentSet::new(5, q(1, 12), q(1, 8)).unwrap(), 120, 20).unwrap();
    assert!(a.matches && b.matches);
    assert!((&a.limit.value * &b.limit.value).close_to(&Real::one(20), 15));
}
