use rug::Rational;

/// Exact harmonic numbers `H_n = sum 1/k` and `H_n^(2) = sum 1/k^2`.
///
/// `Psi(n+1) - Psi(1) = H_n` and `Psi'(n+1) = pi^2/6 - H_n^(2)`, so the
/// polygamma brackets in the Dwork periods reduce to these plus `pi^2`.
pub fn harmonic_sums(n: u64) -> (Rational, Rational) {
    let mut h1 = Rational::new();
    let mut h2 = Rational::new();
    for k in 1..=n {
        h1 += Rational::from((1, k));
        h2 += Rational::from((1, k * k));
    }
    (h1, h2)
}

/// Running table of `(H_k, H_k^(2))` for `k = 0..=n`.
pub fn harmonic_table(n: u64) -> Vec<(Rational, Rational)> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut h1 = Rational::new();
    let mut h2 = Rational::new();
    out.push((h1.clone(), h2.clone()));
    for k in 1..=n {
        h1 += Rational::from((1, k));
        h2 += Rational::from((1, k * k));
        out.push((h1.clone(), h2.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(harmonic_sums(0), (Rational::new(), Rational::new()));
        assert_eq!(harmonic_sums(1), (Rational::from(1), Rational::from(1)));
        assert_eq!(
            harmonic_sums(4),
            (Rational::from((25, 12)), Rational::from((205, 144)))
        );
    }

    #[test]
    fn table_agrees() {
        let t = harmonic_table(9);
        for (k, row) in t.iter().enumerate() {
            assert_eq!(*row, harmonic_sums(k as u64));
        }
    }
}
