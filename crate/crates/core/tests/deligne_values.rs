use std::time::Instant;

use k3periods::deligne::{
    deligne_periods, lvalue, lvalue_with, theta3_fourth_at_lambda_two, verify_ratios, LMethod,
};
use k3periods::hyperfun::{parse_float, Precision};
use k3periods::DeligneError;
use rug::{Float, Rational};

const THETA4_IM: &str = "-1.3932039296856768591842462603253682426574812175156";
const L1: &str = "0.5471099038066191597091924851761161358148431807064";
const L2: &str = "0.8593982272525466034362619724763196497376070564774";

fn close(x: &Float, reference: &str, digits: i32) -> bool {
    let r = parse_float(x.prec(), reference).unwrap();
    Float::with_val(x.prec(), x - &r).abs() < Float::with_val(x.prec(), 10f64.powi(-digits))
}

#[test]
fn theta_value_printed_digits() {
    let bits = Precision::new(60).unwrap().bits();
    let t = theta3_fourth_at_lambda_two(bits).unwrap();
    assert!(t.re.clone().abs() < 1e-55);
    assert!(close(&t.im, THETA4_IM, 49));
}

#[test]
fn lvalues_printed_digits() {
    let l1 = lvalue(1, 60).unwrap();
    let l2 = lvalue(2, 60).unwrap();
    assert!(close(&l1.value, L1, 49), "{}", l1.value);
    assert!(close(&l2.value, L2, 49), "{}", l2.value);
}

#[test]
fn termwise_and_quadrature_agree() {
    let digits = 40;
    let start = Instant::now();
    for s in [1, 2] {
        let a = lvalue_with(s, digits, LMethod::TermwiseGamma).unwrap();
        let b = lvalue_with(s, digits, LMethod::Quadrature).unwrap();
        let diff = Float::with_val(a.value.prec(), &a.value - &b.value).abs();
        assert!(diff < 10f64.powi(-(digits as i32) + 5), "s = {s}: {diff}");
    }
    eprintln!("quadrature cross-check took {:?}", start.elapsed());
}

#[test]
fn periods_have_the_expected_shape() {
    let p = deligne_periods(50).unwrap();
    assert!(p.c_plus.im.clone().abs() < 1e-45);
    assert!(p.c_minus.re.clone().abs() < 1e-45);
    assert!(p.c_plus_tate1.re > 0);
    assert!(p.c_plus_tate1.im.clone().abs() < 1e-45);
    assert!(p.cross_check_residual < 1e-30);
}

#[test]
fn ratios_are_sixteen_and_minus_sixty_four() {
    let (r1, r2, report) = verify_ratios(50).unwrap();
    assert_eq!(r1, Rational::from(16));
    assert_eq!(r2, Rational::from(-64));
    assert!(report.checks.iter().all(|c| c.pass), "{:?}", report.checks);
    let (d1, d2, _) = verify_ratios(100).unwrap();
    assert_eq!((d1, d2), (r1, r2));
}

#[test]
fn too_few_digits_rejected() {
    assert!(matches!(verify_ratios(35), Err(DeligneError::TooFewDigits { .. })));
}

#[test]
fn partial_sums_head_towards_l2() {
    // sum b_n / n^2 converges slowly; the error should shrink with N
    let l2 = lvalue(2, 40).unwrap().value;
    let b = k3periods::arith::eta46_coefficients(4000);
    let partial = |n: usize| -> f64 {
        b.iter().enumerate().skip(1).take(n).map(|(k, c)| *c as f64 / (k * k) as f64).sum()
    };
    let target = l2.to_f64();
    let e1 = (partial(400) - target).abs();
    let e2 = (partial(4000) - target).abs();
    assert!(e2 < e1 && e2 < 0.05, "{e1} {e2}");
}
