use k3periods::hyperfun::{
    eta_value, harmonic_sums, hyp2f1, pi, pow10, tanh_sinh, theta_const, PrecComplex, Precision,
};
use k3periods::pfode::eval_series;
use k3periods::qseries::{theta_series, ThetaKind};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};

fn rat(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

#[test]
fn doubling_precision_is_consistent() {
    let p = Precision::new(60).unwrap();
    let (b1, b2) = (p.bits(), p.doubled().bits());
    let tol = pow10(b1, -(p.digits() as i32) + 5);
    let z = |b| PrecComplex::new(Float::with_val(b, rat(3, 10)), Float::with_val(b, rat(-1, 5)));
    let f1 = hyp2f1(&rat(1, 8), &rat(3, 8), &rat(1, 1), &z(b1)).unwrap();
    let f2 = hyp2f1(&rat(1, 8), &rat(3, 8), &rat(1, 1), &z(b2)).unwrap();
    assert!((&f1 - &f2.with_prec(b1)).abs() < tol);
    let q = |b| PrecComplex::new(Float::with_val(b, rat(1, 5)), Float::with_val(b, rat(1, 4)));
    let t1 = theta_const(ThetaKind::Two, &q(b1)).unwrap();
    let t2 = theta_const(ThetaKind::Two, &q(b2)).unwrap();
    assert!((&t1 - &t2.with_prec(b1)).abs() < tol);
    let tau = |b| PrecComplex::new(Float::with_val(b, rat(1, 3)), Float::with_val(b, rat(4, 5)));
    let e1 = eta_value(&tau(b1)).unwrap();
    let e2 = eta_value(&tau(b2)).unwrap();
    assert!((&e1 - &e2.with_prec(b1)).abs() < tol);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn theta3_squared_series_matches_numeric(r in 0.0f64..0.5, arg in 0.0f64..std::f64::consts::TAU) {
        let p = Precision::new(40).unwrap();
        let bits = p.bits();
        let q = PrecComplex::from_f64(bits, r * arg.cos(), r * arg.sin());
        let numeric = theta_const(ThetaKind::Three, &q).unwrap().square();
        // |q| <= 1/2 and 200 terms leave a tail below 2^-200
        let t = theta_series(ThetaKind::Three, 201);
        let s = eval_series(&t.mul(&t), &q);
        prop_assert!((&numeric - &s).abs() < pow10(bits, -(p.digits() as i32) + 10));
    }
}

#[test]
fn harmonic_brackets_match_polygamma_integrals() {
    // psi(4n+1) - psi(n+1) = int_0^1 (t^n - t^(4n)) / (1 - t) dt
    // psi'(n+1) = int_0^1 t^n (-log t) / (1 - t) dt = pi^2/6 - H2_n
    let bits = 256;
    let zero = Float::with_val(bits, 0);
    let one = Float::with_val(bits, 1);
    let tol = Float::with_val(bits, 1e-60);
    let pi2_6 = Float::with_val(bits, pi(bits).square_ref()) / 6u32;
    for n in 1..=20u32 {
        let bracket = tanh_sinh(
            |t| {
                if *t == 1 {
                    return Float::with_val(bits, 3 * n);
                }
                let num = Float::with_val(bits, t.pow(n)) - Float::with_val(bits, t.pow(4 * n));
                num / Float::with_val(bits, 1u32 - t)
            },
            &zero,
            &one,
            &tol,
            12,
        )
        .unwrap();
        let trigamma = tanh_sinh(
            |t| {
                if t.is_zero() {
                    return Float::new(bits);
                }
                if *t == 1 {
                    return Float::with_val(bits, 1);
                }
                let l = Float::with_val(bits, t.ln_ref());
                Float::with_val(bits, t.pow(n)) * -l / Float::with_val(bits, 1u32 - t)
            },
            &zero,
            &one,
            &tol,
            12,
        )
        .unwrap();
        let (h4, _) = harmonic_sums(4 * n as u64);
        let (h1, h1sq) = harmonic_sums(n as u64);
        let exact = Float::with_val(bits, h4 - h1);
        assert!(Float::with_val(bits, &bracket.value - &exact).abs() < 1e-55, "n = {n}");
        let exact2 = Float::with_val(bits, &pi2_6 - Float::with_val(bits, &h1sq));
        assert!(Float::with_val(bits, &trigamma.value - &exact2).abs() < 1e-55, "n = {n}");
    }
}

#[test]
fn harmonic_sum_examples() {
    assert_eq!(harmonic_sums(0), (Rational::new(), Rational::new()));
    assert_eq!(harmonic_sums(1), (Rational::from(1), Rational::from(1)));
    assert_eq!(harmonic_sums(4), (rat(25, 12), rat(205, 144)));
}

#[test]
fn theta_quartic_at_lambda_two_is_imaginary() {
    let bits = Precision::new(60).unwrap().bits();
    let e = Float::with_val(bits, -Float::with_val(bits, pi(bits) / 2u32)).exp();
    let q = PrecComplex::new(Float::new(bits), -e);
    let t = theta_const(ThetaKind::Three, &q).unwrap().powi(4);
    assert!(t.re.clone().abs() < 1e-55);
    assert!(t.im < 0);
}
