//! Inversion schemes for the small-`a` regime (`c` toward 0), where all
//! algebraic terms of the expansion vanish and the behaviour is governed by
//! the exponentially small leading term `I(a) ~ 2 erfc(1/(2√a))`.

use crate::error::{Error, Result};
use crate::specfn::{erfc_inv, lambert_w0, SQRT_PI};

fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("c must lie in (0,1), got {c}")));
    }
    Ok(())
}

/// Inverts the leading erfc term exactly: `a = 1 / (4 erfc⁻¹(c/2)²)`.
///
/// Strictly increasing, `a → 0⁺` as `c → 0⁺`. The dominant small-`a` scheme:
/// its only error is the neglected alternating tail of the erfc sum.
pub fn invert_erfc(c: f64) -> Result<f64> {
    check_c(c)?;
    let u = erfc_inv(c / 2.0)?;
    Ok(1.0 / (4.0 * u * u))
}

/// Lambert-type inversion of the one-term asymptotic
/// `I(a) ~ (4/√π) √a e^{-1/(4a)}`.
///
/// With `use_w` set, returns the Lambert form `a = 1/(2 W₀(8/(π c²)))`;
/// otherwise the explicit log-log form
/// `a = 1/(2 ln[(8/(π c²)) / ln(8/(π c²))])`, which is what the composite
/// solvers quote.
pub fn invert_lambert(c: f64, use_w: bool) -> Result<f64> {
    check_c(c)?;
    let u = 8.0 / (std::f64::consts::PI * c * c);
    if use_w {
        return Ok(1.0 / (2.0 * lambert_w0(u)?));
    }
    let inner = u.ln();
    if inner <= 0.0 {
        return Err(Error::Domain(format!(
            "log-log form needs ln(8/(pi c^2)) > 0, got {inner} at c = {c}"
        )));
    }
    Ok(1.0 / (2.0 * (u / inner).ln()))
}

/// The `P`-expansion terms in `P = ln(2/(c√π))`.
#[derive(Clone, Copy, Debug)]
pub struct PExpansionTerms {
    pub p: f64,
    /// Number of bracket terms kept (1, 2 or 3).
    pub order: u8,
}

impl PExpansionTerms {
    /// Requires `P > 1`; beyond that the expansion parameter `ln P / P`
    /// stops being small and the series is meaningless.
    pub fn new(c: f64, order: u8) -> Result<Self> {
        check_c(c)?;
        if !(1..=3).contains(&order) {
            return Err(Error::Unsupported(format!(
                "P-expansion keeps 1 to 3 bracket terms, got {order}"
            )));
        }
        let p = (2.0 / (c * SQRT_PI)).ln();
        if p <= 1.0 {
            return Err(Error::Domain(format!(
                "P-expansion needs P > 1, got P = {p} at c = {c}"
            )));
        }
        Ok(PExpansionTerms { p, order })
    }

    /// `a ≈ (1/(4P)) [1 + ln P/(2P) + (ln²P - ln P + 2)/(4P²)]`, truncated to
    /// `order` bracket terms.
    pub fn a_estimate(&self) -> f64 {
        let p = self.p;
        let lp = p.ln();
        let mut bracket = 1.0;
        if self.order >= 2 {
            bracket += lp / (2.0 * p);
        }
        if self.order >= 3 {
            bracket += (lp * lp - lp + 2.0) / (4.0 * p * p);
        }
        bracket / (4.0 * p)
    }
}

/// Three-term `P`-expansion inversion; the most accurate explicit small-`c`
/// formula. Domain error once `P = ln(2/(c√π)) ≤ 1` (c above ≈ 0.415).
pub fn invert_p_expansion(c: f64) -> Result<f64> {
    Ok(PExpansionTerms::new(c, 3)?.a_estimate())
}

/// Intermediate expansion `w(c) = P - ln P / 2 + (ln P - 2)/(4P)` of the
/// variable `w = 1/(4a)`; exposed for the consistency check of the bracket
/// form against its derivation.
pub fn p_expansion_w(c: f64) -> Result<f64> {
    let terms = PExpansionTerms::new(c, 3)?;
    let p = terms.p;
    let lp = p.ln();
    Ok(p - 0.5 * lp + (lp - 2.0) / (4.0 * p))
}
