use k3periods::hyperfun::{pi, theta_const, PrecComplex, Precision};
use k3periods::periods::{legendre_frame, legendre_periods};
use k3periods::pfode::{continue_solution, tau_at, ContinuationPath, FuchsianOperator, SolutionFrame};
use k3periods::qseries::ThetaKind;
use k3periods::OdeError;
use rug::Float;

fn bits() -> u32 {
    Precision::new(50).unwrap().bits()
}

fn dist(a: &PrecComplex, b: &PrecComplex) -> f64 {
    (a - b).abs().to_f64()
}

fn lower_path_to_two(b: u32) -> ContinuationPath {
    ContinuationPath::from_f64(b, &[(0.1, 0.0), (0.1, -1.2), (2.0, 0.0)])
}

fn max_frame_gap(a: &SolutionFrame, b: &SolutionFrame) -> f64 {
    a.values
        .iter()
        .flatten()
        .zip(b.values.iter().flatten())
        .map(|(x, y)| dist(x, y))
        .fold(0.0, f64::max)
}

#[test]
fn tau_at_two_sqrt_two_minus_two() {
    let b = bits();
    let target = PrecComplex::from_real(Float::with_val(b, 2).sqrt() * 2u32 - 2u32);
    let path = ContinuationPath::new(vec![PrecComplex::from_f64(b, 0.1, 0.0), target.clone()]);
    let tau = tau_at(&target, &path).unwrap();
    let want = PrecComplex::new(Float::new(b), Float::with_val(b, 0.5).sqrt());
    assert!(dist(&tau, &want) < 1e-30);
}

#[test]
fn tau_at_two_needs_the_lower_detour() {
    let b = bits();
    let two = PrecComplex::from_f64(b, 2.0, 0.0);
    let tau = tau_at(&two, &lower_path_to_two(b)).unwrap();
    assert!(dist(&tau, &PrecComplex::from_f64(b, -0.5, 0.5)) < 1e-30);
    // the mirror-image detour lands on the other side of the imaginary axis
    let upper = ContinuationPath::from_f64(b, &[(0.1, 0.0), (0.1, 1.2), (2.0, 0.0)]);
    let tau_up = tau_at(&two, &upper).unwrap();
    assert!(dist(&tau_up, &PrecComplex::from_f64(b, 0.5, 0.5)) < 1e-30);
}

#[test]
fn varpi0_at_two_is_theta3_squared() {
    let b = bits();
    let start = legendre_frame(&PrecComplex::from_f64(b, 0.1, 0.0)).unwrap();
    let end = continue_solution(&FuchsianOperator::legendre(), &lower_path_to_two(b), &start).unwrap();
    // q = exp(pi i tau) at tau = (-1+i)/2
    let q = PrecComplex::new(Float::new(b), -(-Float::with_val(b, pi(b) / 2u32)).exp());
    let t3 = theta_const(ThetaKind::Three, &q).unwrap();
    assert!(dist(end.value(0), &t3.square()) < 1e-30);
}

#[test]
fn degenerate_path_matches_series() {
    let b = bits();
    let l = PrecComplex::from_f64(b, 0.05, 0.0);
    let tau = tau_at(&l, &ContinuationPath::new(vec![l.clone()])).unwrap();
    assert_eq!(tau, legendre_periods(&l).unwrap().tau);
}

#[test]
fn loop_around_zero_shifts_tau_by_two() {
    let b = bits();
    let path = ContinuationPath::from_f64(
        b,
        &[(0.1, 0.0), (0.1, 0.1), (-0.1, 0.1), (-0.1, -0.1), (0.1, -0.1), (0.1, 0.0)],
    )
    .with_clearance(0.05);
    let start = legendre_frame(path.start()).unwrap();
    let end = continue_solution(&FuchsianOperator::legendre(), &path, &start).unwrap();
    assert!(dist(end.value(0), start.value(0)) < 1e-40);
    let shifted = start.value(1) + &start.value(0).scale(&Float::with_val(b, 2));
    assert!(dist(end.value(1), &shifted) < 1e-40);
}

#[test]
fn contractible_loop_is_identity() {
    let b = bits();
    let path = ContinuationPath::from_f64(b, &[(0.3, 0.0), (0.5, 0.2), (0.6, -0.1), (0.3, 0.0)]);
    let start = legendre_frame(path.start()).unwrap();
    let end = continue_solution(&FuchsianOperator::legendre(), &path, &start).unwrap();
    assert!(max_frame_gap(&start, &end) < 1e-45);
}

#[test]
fn transport_is_path_multiplicative() {
    let b = bits();
    let first = ContinuationPath::from_f64(b, &[(0.1, 0.0), (0.1, -1.2)]);
    let second = ContinuationPath::from_f64(b, &[(0.1, -1.2), (2.0, 0.0)]);
    let op = FuchsianOperator::legendre();
    let start = legendre_frame(first.start()).unwrap();
    let two_pass = continue_solution(&op, &second, &continue_solution(&op, &first, &start).unwrap()).unwrap();
    let one_pass = continue_solution(&op, &first.concat(&second), &start).unwrap();
    assert!(max_frame_gap(&two_pass, &one_pass) < 1e-40);
}

#[test]
fn wronskian_times_exponential_factor_is_constant() {
    // W' = -(1-2x)/(x(1-x)) W, so x(1-x) W is constant
    let b = bits();
    let op = FuchsianOperator::legendre();
    let start = legendre_frame(&PrecComplex::from_f64(b, 0.1, 0.0)).unwrap();
    let invariant = |f: &SolutionFrame| {
        let x = &f.base;
        let one_minus = &PrecComplex::one(b) - x;
        &(x * &one_minus) * &f.wronskian()
    };
    let w0 = invariant(&start);
    for stop in [(0.1, -0.6), (0.1, -1.2), (1.0, -0.6), (2.0, 0.0)] {
        let path = ContinuationPath::from_f64(b, &[(0.1, 0.0), (0.1, -0.6), stop]);
        let end = continue_solution(&op, &path, &start).unwrap();
        assert!(dist(&invariant(&end), &w0) < 1e-40, "at {stop:?}");
    }
}

#[test]
fn clearance_violation_is_reported() {
    let b = bits();
    let path = ContinuationPath::from_f64(b, &[(0.5, 0.0), (1.5, 0.0)]);
    let start = legendre_frame(path.start()).unwrap();
    let err = continue_solution(&FuchsianOperator::legendre(), &path, &start).unwrap_err();
    assert!(matches!(err, OdeError::ClearanceViolation { .. }));
}

#[test]
fn path_from_json() {
    let b = bits();
    let p = ContinuationPath::from_json(r#"[["0.1","0"],["0.1","-1.2"],["2","0"]]"#, b).unwrap();
    assert_eq!(p.waypoints.len(), 3);
    assert!(ContinuationPath::from_json(r#"[["0.1","0"]]"#, b).is_err());
    assert!(ContinuationPath::from_json("not json", b).is_err());
}

#[test]
fn error_estimate_is_small() {
    let b = bits();
    let start = legendre_frame(&PrecComplex::from_f64(b, 0.1, 0.0)).unwrap();
    let end = continue_solution(&FuchsianOperator::legendre(), &lower_path_to_two(b), &start).unwrap();
    let e = k3periods::pfode::error_digits(&end);
    assert!(e < -40.0, "log10 error estimate {e}");
}
