//! Exact series representations of the dimensionless integral `I(a)` and of
//! the expansion coefficients `b_n`, used both as fast evaluators and as
//! independent oracles for the contour quadrature.
//!
//! Two representations of the same function:
//!
//! * Fourier type, efficient for large `a`:
//!   `I(a) = 1 - Σ_{n≥0} (-1)^n / ((2n+1)π/4) · exp(-(2n+1)² (π²/4) a)`;
//! * alternating erfc sum, efficient for small `a`:
//!   `I(a) = 2 Σ_{m≥0} (-1)^m erfc((2m+1) / (2√a))`.
//!
//! Both are exact; truncation is purely a cost decision, with the crossover
//! at [`FOURIER_ERFC_CROSSOVER`].

use crate::error::{Error, Result};
use crate::specfn::erfc;
use std::f64::consts::PI;

pub(crate) const FOUR_OVER_PI: f64 = 4.0 / PI;
pub(crate) const FOUR_OVER_PI_SQ: f64 = 4.0 / (PI * PI);
pub(crate) const PI_SQ_OVER_4: f64 = PI * PI / 4.0;

/// Below this `a` the erfc sum is the primary evaluator, above it the
/// Fourier series (term counts explode in the opposite regimes).
pub const FOURIER_ERFC_CROSSOVER: f64 = 0.05;

/// Truncation policy: stop as soon as the next term magnitude drops below
/// `term_tol`; hitting `max_terms` first is an error.
#[derive(Clone, Copy, Debug)]
pub struct SeriesTruncation {
    pub term_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        SeriesTruncation {
            term_tol: 1e-16,
            max_terms: 10_000,
        }
    }
}

impl SeriesTruncation {
    fn validate(&self) -> Result<()> {
        if !(self.term_tol > 0.0) {
            return Err(Error::Domain("term_tol must be positive".into()));
        }
        if self.max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        Ok(())
    }
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("a must be positive, got {a}")));
    }
    Ok(())
}

pub(crate) fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("c must lie in (0,1), got {c}")));
    }
    Ok(())
}

/// First-order inversion point `a*(c) = (4/π²) ln(4 / (π(1-c)))`.
///
/// Positive on all of `(0,1)` since `ln(4/π) > 0`.
pub(crate) fn a_star(c: f64) -> f64 {
    FOUR_OVER_PI_SQ * (4.0 / (PI * (1.0 - c))).ln()
}

/// Fourier-type series for `I(a)`; the remainder of the alternating sum is
/// bounded by the first omitted term.
pub fn i_fourier(a: f64, tr: &SeriesTruncation) -> Result<f64> {
    check_a(a)?;
    tr.validate()?;
    let mut sum = 0.0;
    for n in 0..tr.max_terms {
        let m = (2 * n + 1) as f64;
        let term = FOUR_OVER_PI / m * (-m * m * PI_SQ_OVER_4 * a).exp();
        if term < tr.term_tol {
            return Ok(1.0 - sum);
        }
        sum += if n % 2 == 0 { term } else { -term };
    }
    Err(Error::Truncation(format!(
        "Fourier series for I({a}) needs more than {} terms",
        tr.max_terms
    )))
}

/// Alternating erfc representation of `I(a)`.
pub fn i_erfc_sum(a: f64, tr: &SeriesTruncation) -> Result<f64> {
    check_a(a)?;
    tr.validate()?;
    let half_inv_sqrt = 0.5 / a.sqrt();
    let mut sum = 0.0;
    for m in 0..tr.max_terms {
        let term = 2.0 * erfc((2 * m + 1) as f64 * half_inv_sqrt);
        if term < tr.term_tol {
            return Ok(sum);
        }
        sum += if m % 2 == 0 { term } else { -term };
    }
    Err(Error::Truncation(format!(
        "erfc sum for I({a}) needs more than {} terms",
        tr.max_terms
    )))
}

/// `I(a)` through whichever exact series converges fastest. Total on `a > 0`
/// with default truncation.
pub fn i_exact(a: f64) -> Result<f64> {
    let tr = SeriesTruncation::default();
    if a < FOURIER_ERFC_CROSSOVER {
        i_erfc_sum(a, &tr)
    } else {
        i_fourier(a, &tr)
    }
}

/// Residue-series value of the expansion coefficient `b_n(c)`.
///
/// For `n = 0` this is just `I(a*(c))` by definition. For `n ≥ 1` the
/// contour collapses onto the simple poles of `1/cos k` at
/// `k_m = π/2 + mπ` (residue `(-1)^{m+1}`), giving
///
/// ```text
/// b_n(c) = -(2/n!) Σ_{m≥0} (-1)^m k_m^{2n-1} exp(-a* k_m²).
/// ```
///
/// Serves as the independent oracle for `contour::eval_bn`.
pub fn eval_bn_residue(n: u32, c: f64, tr: &SeriesTruncation) -> Result<f64> {
    check_c(c)?;
    tr.validate()?;
    if n > 4 {
        return Err(Error::Unsupported(format!(
            "b_n is provided for 0 <= n <= 4, got n = {n}"
        )));
    }
    let astar = a_star(c);
    if n == 0 {
        return i_fourier(astar, tr);
    }
    let mut factorial = 1.0;
    for j in 2..=n {
        factorial *= j as f64;
    }
    let mut sum = 0.0;
    for m in 0..tr.max_terms {
        let k = (2 * m + 1) as f64 * PI / 2.0;
        let term = 2.0 / factorial * k.powi(2 * n as i32 - 1) * (-astar * k * k).exp();
        if term < tr.term_tol {
            return Ok(-sum);
        }
        sum += if m % 2 == 0 { term } else { -term };
    }
    Err(Error::Truncation(format!(
        "residue series for b_{n}({c}) needs more than {} terms",
        tr.max_terms
    )))
}

/// Series form of the water-table profile factor: the value of
/// `(i/π) ∮ e^{-a k²} cos(k(ξ-1)) / (k cos k) dk` as a residue sum,
///
/// `1 - (4/π) Σ_m (-1)^m cos(k_m (ξ-1)) e^{-a k_m²} / (2m+1)`,  `k_m = (2m+1)π/2`.
pub(crate) fn h_profile_series(xi: f64, a: f64, tr: &SeriesTruncation) -> Result<f64> {
    check_a(a)?;
    tr.validate()?;
    let mut sum = 0.0;
    for m in 0..tr.max_terms {
        let odd = (2 * m + 1) as f64;
        let k = odd * PI / 2.0;
        let envelope = FOUR_OVER_PI / odd * (-a * k * k).exp();
        if envelope < tr.term_tol {
            return Ok(1.0 - sum);
        }
        let term = envelope * (k * (xi - 1.0)).cos();
        sum += if m % 2 == 0 { term } else { -term };
    }
    Err(Error::Truncation(format!(
        "profile series at a = {a} needs more than {} terms",
        tr.max_terms
    )))
}

/// Series form of the moisture profile factor: the value of
/// `(i/π) ∮ e^{-a k²} sin(k(1-ξ)) / (k sin k) dk`,
///
/// `(1-ξ) + (2/π) Σ_{m≥1} (-1)^m e^{-a m²π²} sin(mπ(1-ξ)) / m`.
pub(crate) fn theta_profile_series(xi: f64, a: f64, tr: &SeriesTruncation) -> Result<f64> {
    check_a(a)?;
    tr.validate()?;
    let mut sum = 0.0;
    for m in 1..=tr.max_terms {
        let mf = m as f64;
        let envelope = 2.0 / (PI * mf) * (-a * mf * mf * PI * PI).exp();
        if envelope < tr.term_tol {
            return Ok(1.0 - xi + sum);
        }
        let term = envelope * (mf * PI * (1.0 - xi)).sin();
        sum += if m % 2 == 1 { -term } else { term };
    }
    Err(Error::Truncation(format!(
        "profile series at a = {a} needs more than {} terms",
        tr.max_terms
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourier_single_term_regime() {
        // a = 10: one term dominates, the rest is below 1e-15
        let tr = SeriesTruncation::default();
        let want = 1.0 - FOUR_OVER_PI * (-10.0 * PI_SQ_OVER_4).exp();
        assert!((i_fourier(10.0, &tr).unwrap() - want).abs() <= 1e-15);
    }

    #[test]
    fn fourier_threshold_value() {
        // a = 4/pi^2: the point where the second Fourier term is e^-8/3 of the first
        let a = 4.0 / (PI * PI);
        let v = i_fourier(a, &SeriesTruncation::default()).unwrap();
        assert!((v - 0.5318).abs() < 5e-4, "I(4/pi^2) = {v}");
    }

    #[test]
    fn erfc_sum_small_a() {
        let tr = SeriesTruncation::default();
        // frozen from the two independent representations agreeing:
        // 2 erfc(1.5811388) - 2 erfc(4.7434164) + ... at a = 0.1
        let v = i_erfc_sum(0.1, &tr).unwrap();
        assert!((v - 0.05069463731552965).abs() < 1e-14, "got {v}");
        // same value through the Fourier route
        let w = i_fourier(0.1, &tr).unwrap();
        assert!((v - w).abs() <= 1e-13);
        // a -> 0+ gives 0+
        assert!(i_erfc_sum(1e-6, &tr).unwrap() >= 0.0);
        assert!(i_erfc_sum(1e-6, &tr).unwrap() < 1e-10);
        // the matching boundary of the one-term truncation: a = 0.238 pairs
        // with c near 0.295
        assert!((i_erfc_sum(0.238, &tr).unwrap() - 0.295).abs() < 1e-3);
    }

    #[test]
    fn representations_agree_on_grid() {
        let tr = SeriesTruncation::default();
        let mut a = 0.01;
        while a <= 0.3 {
            let f = i_fourier(a, &tr).unwrap();
            let e = i_erfc_sum(a, &tr).unwrap();
            assert!((f - e).abs() <= 1e-12, "mismatch at a = {a}: {f} vs {e}");
            a += 0.01;
        }
    }

    #[test]
    fn alternating_remainder_bound() {
        // truncation error of the Fourier series is bounded by the first
        // omitted term: compare successive partial tolerances
        let a = 0.08;
        let coarse = i_fourier(a, &SeriesTruncation { term_tol: 1e-6, max_terms: 10_000 }).unwrap();
        let fine = i_fourier(a, &SeriesTruncation::default()).unwrap();
        assert!((coarse - fine).abs() <= 1e-6);
    }

    #[test]
    fn truncation_error_reported() {
        let tr = SeriesTruncation {
            term_tol: 1e-16,
            max_terms: 3,
        };
        assert!(matches!(i_fourier(1e-4, &tr), Err(Error::Truncation(_))));
    }

    #[test]
    fn bn_residue_identity_b0() {
        let tr = SeriesTruncation::default();
        // b0(c) = I(a*(c)) by definition
        for &c in &[0.1, 0.3, 0.5, 0.7, 0.9] {
            let lhs = eval_bn_residue(0, c, &tr).unwrap();
            let rhs = i_fourier(a_star(c), &tr).unwrap();
            assert_eq!(lhs, rhs);
        }
        // c -> 1- forces a* -> inf and b0 -> 1 (b0 tracks c from above)
        let mut gap_prev = 1.0;
        for &c in &[0.9, 0.99, 0.999, 0.9999] {
            let v = eval_bn_residue(0, c, &tr).unwrap();
            assert!(v >= c && v < 1.0, "b0({c}) = {v}");
            let gap = 1.0 - v;
            assert!(gap < gap_prev);
            gap_prev = gap;
        }
    }

    #[test]
    fn bn_residue_matches_derivative_of_fourier() {
        // b1 = -I'(a*), checked against a central difference of the series
        let tr = SeriesTruncation::default();
        let c = 0.5;
        let astar = a_star(c);
        let h = 1e-6;
        let deriv = (i_fourier(astar + h, &tr).unwrap() - i_fourier(astar - h, &tr).unwrap())
            / (2.0 * h);
        let b1 = eval_bn_residue(1, c, &tr).unwrap();
        assert!((b1 + deriv).abs() < 1e-8, "b1 = {b1}, -I' = {}", -deriv);
    }

    #[test]
    fn profile_series_boundary_values() {
        let tr = SeriesTruncation::default();
        // xi = 0 reduces the h-profile factor to I-like behaviour: value 1 at
        // the drain end for any a (Dirichlet boundary)
        let v = h_profile_series(0.0, 0.3, &tr).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        // xi = 1 reproduces I(a)
        let v = h_profile_series(1.0, 0.3, &tr).unwrap();
        assert!((v - i_fourier(0.3, &tr).unwrap()).abs() < 1e-13);
        // theta profile: xi = 1 gives 0, xi = 0 gives 1
        assert!((theta_profile_series(1.0, 0.2, &tr).unwrap()).abs() < 1e-12);
        assert!((theta_profile_series(0.0, 0.2, &tr).unwrap() - 1.0).abs() < 1e-12);
        // large a: linear steady profile
        let v = theta_profile_series(0.25, 50.0, &tr).unwrap();
        assert!((v - 0.75).abs() < 1e-12);
    }

    #[test]
    fn theta_midpoint_matches_i_of_4a() {
        // at xi = 1/2 the sine ratio halves the cosine kernel:
        // profile(1/2, a) = I(4a)/2
        let tr = SeriesTruncation::default();
        for &a in &[0.05, 0.1, 0.2] {
            let lhs = theta_profile_series(0.5, a, &tr).unwrap();
            let rhs = 0.5 * i_fourier(4.0 * a, &tr).unwrap();
            assert!((lhs - rhs).abs() < 1e-12, "a = {a}: {lhs} vs {rhs}");
        }
    }
}
