use aperylab_core::holonomic::{
    apery_binomial_oracle, apery_limit, apery_pair, mukai_operator, op_to_recurrence,
    pair_from_recurrence, regularize_recurrence, tabulated_constant, Normalization, Variety,
};
use aperylab_core::precision::{factorial, pi, Rational, Real};
use aperylab_core::special::zeta_int;

#[test]
fn v12_equals_binomial_sums_through_50() {
    let rec = apery_pair(Variety::V12, 50).unwrap();
    let oracle = apery_binomial_oracle(50);
    assert_eq!(rec.a, oracle.a);
    assert_eq!(rec.b, oracle.b);
}

#[test]
fn a_is_integral_for_all_five_through_500() {
    for v in Variety::ALL {
        let p = apery_pair(v, 500).unwrap();
        assert_eq!(p.a.len(), 501);
        assert!(p.a.iter().all(|x| x.is_integer()), "{v}");
        assert_eq!(p.b[1], Rational::from_integer(1.into()));
    }
}

/// Against a_n ~ (1+√2)^{4n+2} / (2^{9/4} π^{3/2} n^{3/2}), and the ratio
/// against the characteristic root.
#[test]
fn v12_growth() {
    let p = apery_pair(Variety::V12, 500).unwrap();
    let wd = 40;
    let a = |n: usize| Real::from_rational(&p.a[n], wd);
    let s2 = Real::from_i64(2, wd).sqrt();
    let silver = &Real::one(wd) + &s2;
    let alpha = silver.powi(4);
    let n = Real::from_i64(500, wd);
    let den = &(&Real::from_i64(2, wd).powf(&Real::from_f64(2.25, wd))
        * &pi(wd).powf(&Real::from_f64(1.5, wd)))
        * &n.powf(&Real::from_f64(1.5, wd));
    let predicted = &silver.powi(2002) / &den;
    let rel = (&(&a(500) / &predicted) - &Real::one(wd)).abs().to_f64();
    assert!(rel < 0.01, "asymptotic ratio off by {rel}");
    let ratio = &a(500) / &a(499);
    assert!((&(&ratio - &alpha) / &alpha).abs().to_f64() < 0.01);
    // the n-th root converges too, but only like log(n)/n
    let root = |k: usize| a(k).ln().div_i64(k as i64).exp();
    let gap = |k: usize| (&alpha - &root(k)).to_f64();
    assert!(gap(100) > gap(200) && gap(200) > gap(500) && gap(500) > 0.0);
}

/// ζ(3)a_n/6 − b_n = a_n Σ_{k>n} 1/(k³ a_k a_{k−1}).
#[test]
fn v12_error_term_is_the_tail_sum() {
    let p = apery_pair(Variety::V12, 80).unwrap();
    // the left side loses about 2·log10(a_n) digits to cancellation
    let wd = 170;
    let z3 = zeta_int(3, wd + 10).unwrap().div_i64(6);
    for n in 0..=30usize {
        let an = Real::from_rational(&p.a[n], wd + 10);
        let lhs = &(&z3 * &an) - &Real::from_rational(&p.b[n], wd + 10);
        let mut tail = Real::zero(wd + 10);
        for k in n + 1..=80 {
            let d = &(&p.a[k] * &p.a[k - 1]) * Rational::from_integer(((k * k * k) as i64).into());
            tail = &tail + &Real::from_rational(&d.recip(), wd + 10);
        }
        let rhs = &an * &tail;
        assert!(lhs.close_to(&rhs, 50), "n = {n}: {lhs} vs {rhs}");
    }
}

#[test]
fn regularization_multiplies_solutions_by_factorial() {
    for v in Variety::ALL {
        let rec = op_to_recurrence(&mukai_operator(v));
        let reg = regularize_recurrence(&rec);
        let norm = Normalization::standard();
        let plain = pair_from_recurrence(&rec, &norm, "plain", 30).unwrap();
        let borel = pair_from_recurrence(&reg, &norm, "reg", 30).unwrap();
        for n in 0..=30 {
            let f = Rational::from_integer(factorial(n as u64));
            assert_eq!(borel.a[n], &plain.a[n] * &f, "{v} a_{n}");
            assert_eq!(borel.b[n], &plain.b[n] * &f, "{v} b_{n}");
        }
    }
}

#[test]
fn limits_match_the_table_at_moderate_length() {
    for v in Variety::ALL {
        let lim = apery_limit(&apery_pair(v, 150).unwrap(), 30).unwrap();
        let c = tabulated_constant(v)
            .value(lim.value.digits() + 10)
            .unwrap();
        assert!(lim.contains(&c), "{v}");
        assert!(lim.certified_digits() >= 30, "{v}");
    }
}
