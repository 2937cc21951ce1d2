use k3periods::hyperfun::{hyp2f1, pi, pow10, theta_const, PrecComplex, Precision};
use k3periods::periods::{
    bps_series, check_identity, dwork_periods, h_series, lambda_q_series, legendre_periods, pi0_series, pi_triple,
    q_of_lambda_series, quad_map, varpi0_series, w0_series, w_pi_residual, QuadMap,
};
use k3periods::pfode::eval_series;
use k3periods::qseries::{theta_series, RationalSeries, ThetaKind};
use rug::ops::Pow;
use rug::{Float, Rational};

fn prec(d: u32) -> (Precision, u32) {
    let p = Precision::new(d).unwrap();
    (p, p.bits())
}

fn agm(a: &Float, b: &Float) -> Float {
    let bits = a.prec();
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..200 {
        let an = Float::with_val(bits, &a + &b) / 2u32;
        let bn = Float::with_val(bits, &a * &b).sqrt();
        if an == a {
            break;
        }
        a = an;
        b = bn;
    }
    a
}

#[test]
fn varpi0_at_half_is_inverse_agm() {
    let (_, bits) = prec(80);
    let lam = PrecComplex::from_rational(bits, &Rational::from((1, 2)));
    let v = legendre_periods(&lam).unwrap().varpi0;
    let m = agm(&Float::with_val(bits, 1), &Float::with_val(bits, 0.5).sqrt());
    let want = m.recip();
    assert!(Float::with_val(bits, &v.re - &want).abs() < 1e-75);
    assert!(v.im.clone().abs() < 1e-75);
}

#[test]
fn h_coefficient_by_cauchy_integral_of_varpi1() {
    // h = pi i varpi1 - varpi0 (log lambda - log 16); extract [lambda^4] by the
    // trapezoidal rule on |lambda| = 1/10 with 30 nodes
    let (_, bits) = prec(60);
    let n = 30;
    let r = Float::with_val(bits, Rational::from((1, 10)));
    let log16 = Float::with_val(bits, 16).ln();
    let pii = PrecComplex::new(Float::new(bits), pi(bits));
    let mut acc = PrecComplex::zero(bits);
    for k in 0..n {
        let ang: Float = Float::with_val(bits, pi(bits) * 2u32) * k / n;
        let unit = PrecComplex::new(Float::with_val(bits, ang.cos_ref()), Float::with_val(bits, ang.sin_ref()));
        let lam = unit.scale(&r);
        let p = legendre_periods(&lam).unwrap();
        let mut logl = lam.ln();
        logl.re -= &log16;
        let h = &(&pii * &p.varpi1) - &(&p.varpi0 * &logl);
        acc += &(&h * &unit.powi(-4));
    }
    let c4 = acc.scale(&Float::with_val(bits, Float::with_val(bits, r.clone()).pow(4u32) * n).recip());
    let exact = PrecComplex::from_rational(bits, &h_series(5).coeffs()[4]);
    assert!((&c4 - &exact).abs() < 1e-25, "{:?} vs {:?}", c4.to_f64_pair(), exact.to_f64_pair());
}

#[test]
fn tau_at_two_sqrt_two_minus_two_from_series() {
    let (_, bits) = prec(60);
    let l = PrecComplex::from_real(Float::with_val(bits, 2).sqrt() * 2u32 - 2u32);
    let tau = legendre_periods(&l).unwrap().tau;
    let want = PrecComplex::new(Float::new(bits), Float::with_val(bits, 0.5).sqrt());
    assert!((&tau - &want).abs() < 1e-30);
}

#[test]
fn lambda_series_properties() {
    let lam = lambda_q_series(40).unwrap();
    assert!(lam.order() >= 40);
    assert_eq!(lam.coeff_at(&Rational::new()).unwrap(), 0);
    for c in lam.coeffs() {
        assert_eq!(*c.denom(), 1);
        assert!((c.numer().clone() % 16u32) == 0);
    }
    // truncation stability
    let short = lambda_q_series(12).unwrap();
    let long = lambda_q_series(24).unwrap();
    for k in 7..=10 {
        let e = Rational::from(k);
        assert_eq!(short.coeff_at(&e), long.coeff_at(&e));
    }
    // compositional inverse of q(lambda)
    let q = q_of_lambda_series(20).unwrap();
    let l = lambda_q_series(20).unwrap();
    let id = q.compose(&l).unwrap();
    assert!(id.try_sub(&RationalSeries::variable(id.order())).unwrap().is_zero());
}

#[test]
fn exp_h_over_varpi0_by_term_expansion() {
    // exp(x) = sum x^k/k! with x = h/varpi0 expanded independently
    let order = 6;
    let x = h_series(order).div(&varpi0_series(order + 1)).unwrap().truncate(order);
    let mut term = RationalSeries::one(order);
    let mut sum = RationalSeries::one(order);
    for k in 1..order {
        term = term.mul(&x).scale(&Rational::from((1, k as i64)));
        sum = sum.try_add(&term).unwrap();
    }
    let e = x.exp().unwrap();
    assert!(e.try_sub(&sum).unwrap().is_zero());
    assert_eq!(e.coeffs()[1], Rational::from((1, 2)));
    assert_eq!(e.coeffs()[2], Rational::from((21, 64)));
}

#[test]
fn registry_holds_at_order_thirty() {
    for id in ["QT1", "QT2", "QT3", "THETA-V", "THETA-24", "DLDTAU", "DELTA-LAMBDA", "BPS"] {
        let r = check_identity(id, 30, Precision::default()).unwrap();
        assert!(r.pass && r.exact_zero == Some(true), "{id}: {r:?}");
    }
}

#[test]
fn bps_series_shape() {
    let b = bps_series(8).unwrap();
    assert_eq!(*b.offset(), -1);
    let want: Vec<Rational> = [1, 24, 324, 3200, 25650].iter().map(|&c| Rational::from(c)).collect();
    assert_eq!(&b.coeffs()[..5], &want[..]);
}

#[test]
fn pi0_of_lambda_q_is_theta_prediction() {
    // Pi0(lambda(q)) = (1 - lambda/2) theta3^4
    let order = 20;
    let lam = lambda_q_series(order).unwrap();
    let lhs = pi0_series(order + 1).compose(&lam).unwrap();
    let half = RationalSeries::one(order + 2).try_sub(&lam.scale(&Rational::from((1, 2)))).unwrap();
    let rhs = half.mul(&theta_series(ThetaKind::Three, order + 1).powi(4).unwrap());
    let d = lhs.try_sub(&rhs).unwrap();
    assert!(d.is_zero() && d.order() >= order);
}

#[test]
fn pi_triple_structure() {
    let (p, bits) = prec(60);
    let tol = pow10(bits, -(p.digits() as i32) + 10);
    for (re, im) in [(0.3, 0.0), (0.1, 0.2), (-0.2, -0.1)] {
        let l = PrecComplex::from_f64(bits, re, im);
        let t = pi_triple(&l).unwrap();
        assert!((&(&t.pi0 * &t.pi2) - &t.pi1.square()).abs() < tol);
        let lp = legendre_periods(&l).unwrap();
        assert!((&(&t.pi1 / &t.pi0) - &lp.tau).abs() < tol);
    }
}

#[test]
fn w0_is_square_of_pi0_at_psi_three() {
    let (p, bits) = prec(60);
    let psi = PrecComplex::from_f64(bits, 3.0, 0.0);
    let w = dwork_periods(&psi).unwrap();
    let t = psi.powi(-4);
    let f = hyp2f1(&Rational::from((1, 8)), &Rational::from((3, 8)), &Rational::from(1), &t).unwrap();
    assert!((&w.w0 - &f.square()).abs() < pow10(bits, -(p.digits() as i32) + 10));
    // and the exact series agree with Clausen's square
    let pi0t = k3periods::hyperfun::hyp2f1_series(&Rational::from((1, 8)), &Rational::from((3, 8)), &Rational::from(1), 12)
        .unwrap();
    assert!(w0_series(12).try_sub(&pi0t.mul(&pi0t)).unwrap().is_zero());
}

/// Small-branch solution of `t(lambda) = t0` by Newton's method from `sqrt(t0)`.
fn lambda_for_t(t0: &PrecComplex) -> PrecComplex {
    let bits = t0.prec();
    let one = PrecComplex::one(bits);
    let t_of = |l: &PrecComplex| -> PrecComplex {
        let den = (&one - &l.scale(&Float::with_val(bits, 0.5))).powi(4);
        &(&l.square() * &(&one - l)) / &den
    };
    let mut l = t0.sqrt();
    let h = Float::with_val(bits, 1) >> (bits / 2);
    for _ in 0..200 {
        let f = &t_of(&l) - t0;
        let dl = PrecComplex::from_real(h.clone());
        let df = &(&t_of(&(&l + &dl)) - &t_of(&(&l - &dl))) / &dl.scale(&Float::with_val(bits, 2));
        let step = &f / &df;
        l = &l - &step;
        if step.abs() < (Float::with_val(bits, 1) >> (bits - 4)) {
            break;
        }
    }
    l
}

#[test]
fn mirror_map_at_psi_five() {
    let (p, bits) = prec(60);
    let psi = PrecComplex::from_f64(bits, 5.0, 0.0);
    let t0 = psi.powi(-4);
    let l = lambda_for_t(&t0);
    match quad_map(&l) {
        QuadMap::Point { t, psi: psi_l } => {
            assert!((&t - &t0).abs() < 1e-40);
            assert!((&psi_l - &psi).abs() < 1e-40);
        }
        other => panic!("unexpected {other:?}"),
    }
    let tw = dwork_periods(&psi).unwrap().tau;
    let tl = legendre_periods(&l).unwrap().tau;
    assert!((&tw - &tl).abs() < pow10(bits, -(p.digits() as i32) + 25));
}

#[test]
fn mirror_map_equals_period_map_on_grid() {
    let (p, bits) = prec(60);
    let tol = pow10(bits, -(p.digits() as i32) + 15);
    for k in 0..20 {
        let r = [0.1, 0.2, 0.3][k % 3];
        let ang = 0.15 + k as f64 * std::f64::consts::TAU / 20.0;
        let l = PrecComplex::from_f64(bits, r * ang.cos(), r * ang.sin());
        let psi = match quad_map(&l) {
            QuadMap::Point { psi, .. } => psi,
            other => panic!("unexpected {other:?}"),
        };
        let tw = dwork_periods(&psi).unwrap().tau;
        let tl = legendre_periods(&l).unwrap().tau;
        assert!((&tw - &tl).abs() < tol, "lambda = {:?}", l.to_f64_pair());
        let (res, _) = w_pi_residual(&l).unwrap();
        assert!(res < tol);
    }
}

#[test]
fn numeric_identities_pass() {
    for id in ["DELTA-THETA", "W-PI"] {
        let r = check_identity(id, 0, Precision::new(60).unwrap()).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn theta3_squared_against_varpi0_numerically() {
    // varpi0(lambda(q)) = theta3(q)^2 at q = 0.1 via the truncated lambda series
    let (_, bits) = prec(40);
    let q = PrecComplex::from_f64(bits, 0.01, 0.0);
    let lam = eval_series(&lambda_q_series(60).unwrap(), &q);
    let v = legendre_periods(&lam).unwrap().varpi0;
    let t = theta_const(ThetaKind::Three, &q).unwrap().square();
    assert!((&v - &t).abs() < 1e-40);
}
