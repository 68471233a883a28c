//! Ground-truth inversion of `I(a) = c` by bracketed root finding on the
//! exact series, scheme dispatch, and error-curve sweeps.

use crate::composite::{self, CompositeId, CompositeScheme, ErrorReport};
use crate::contour::{DimensionlessPair, QuadratureSpec};
use crate::error::{Error, Result};
use crate::invert_large;
use crate::invert_small;
use crate::series;
use std::fmt;
use std::str::FromStr;

/// Bracketed root-finder parameters.
#[derive(Clone, Copy, Debug)]
pub struct RootFindSpec {
    pub a_lo: f64,
    pub a_hi: f64,
    /// Absolute tolerance on `a`.
    pub tol_a: f64,
    pub max_iter: usize,
}

impl Default for RootFindSpec {
    fn default() -> Self {
        RootFindSpec {
            a_lo: 1e-8,
            a_hi: 50.0,
            tol_a: 1e-13,
            max_iter: 240,
        }
    }
}

impl RootFindSpec {
    fn validate(&self) -> Result<()> {
        if !(self.a_lo > 0.0 && self.a_lo < self.a_hi) {
            return Err(Error::Domain("need 0 < a_lo < a_hi".into()));
        }
        if !(self.tol_a > 0.0) {
            return Err(Error::Domain("tol_a must be positive".into()));
        }
        Ok(())
    }
}

/// The numerically exact `a` with `I(a) = c`, found by bisection with
/// interleaved secant steps on the exact series evaluators. Unique by
/// monotonicity of `I`.
pub fn true_a(c: f64, spec: &RootFindSpec) -> Result<f64> {
    spec.validate()?;
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("c must lie in (0,1), got {c}")));
    }
    let f = |a: f64| -> Result<f64> { Ok(series::i_exact(a)? - c) };
    let mut lo = spec.a_lo;
    let mut hi = spec.a_hi;
    let mut f_lo = f(lo)?;
    let mut f_hi = f(hi)?;
    if f_lo > 0.0 || f_hi < 0.0 {
        return Err(Error::Bracket(format!(
            "c = {c} outside (I({lo}), I({hi}))"
        )));
    }
    // alternate secant and bisection so the bracket provably halves every
    // other step while the secant supplies the fast local convergence
    for iter in 0..spec.max_iter {
        if hi - lo <= spec.tol_a {
            break;
        }
        let mid = if iter % 2 == 0 && f_hi != f_lo {
            let s = lo - f_lo * (hi - lo) / (f_hi - f_lo);
            let margin = 0.01 * (hi - lo);
            if s > lo + margin && s < hi - margin {
                s
            } else {
                0.5 * (lo + hi)
            }
        } else {
            0.5 * (lo + hi)
        };
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm < 0.0 {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Solves `I(a) = c` and returns the linked pair.
pub fn solve_pair(c: f64, spec: &RootFindSpec) -> Result<DimensionlessPair> {
    DimensionlessPair::new(true_a(c, spec)?, c)
}

/// Identifier of one inversion scheme: the six elementary families, the
/// three composites, or the root-finding oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolverId {
    FirstOrder,
    /// Series inversion of order `N` (1..=3).
    Fourier(u8),
    /// Quadratic `ε`-polynomial refinement.
    Quadratic,
    /// Quartic `ε`-polynomial refinement (Ferrari).
    Quartic,
    InvErfc,
    /// Lambert form `1/(2 W₀(8/(π c²)))`.
    LambertW,
    /// Explicit log-log form of the Lambert scheme.
    LogLog,
    PExpansion,
    Composite(CompositeId),
    Oracle,
}

impl SolverId {
    pub const ALL_NAMES: &'static [&'static str] = &[
        "first-order",
        "fourier-1",
        "fourier-2",
        "fourier-3",
        "quadratic",
        "quartic",
        "inv-erfc",
        "lambert-w",
        "log-log",
        "p-expansion",
        "perfect-match",
        "explicit-1",
        "explicit-2",
        "oracle",
    ];
}

impl FromStr for SolverId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "first-order" => SolverId::FirstOrder,
            "fourier-1" => SolverId::Fourier(1),
            "fourier-2" => SolverId::Fourier(2),
            "fourier-3" => SolverId::Fourier(3),
            "quadratic" => SolverId::Quadratic,
            "quartic" => SolverId::Quartic,
            "inv-erfc" => SolverId::InvErfc,
            "lambert-w" => SolverId::LambertW,
            "log-log" => SolverId::LogLog,
            "p-expansion" => SolverId::PExpansion,
            "perfect-match" => SolverId::Composite(CompositeId::PerfectMatch),
            "explicit-1" => SolverId::Composite(CompositeId::Explicit1),
            "explicit-2" => SolverId::Composite(CompositeId::Explicit2),
            "oracle" => SolverId::Oracle,
            other => {
                return Err(Error::Unsupported(format!(
                    "unknown scheme '{other}'; expected one of {:?}",
                    SolverId::ALL_NAMES
                )))
            }
        })
    }
}

impl fmt::Display for SolverId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SolverId::FirstOrder => "first-order",
            SolverId::Fourier(1) => "fourier-1",
            SolverId::Fourier(2) => "fourier-2",
            SolverId::Fourier(_) => "fourier-3",
            SolverId::Quadratic => "quadratic",
            SolverId::Quartic => "quartic",
            SolverId::InvErfc => "inv-erfc",
            SolverId::LambertW => "lambert-w",
            SolverId::LogLog => "log-log",
            SolverId::PExpansion => "p-expansion",
            SolverId::Composite(CompositeId::PerfectMatch) => "perfect-match",
            SolverId::Composite(CompositeId::Explicit1) => "explicit-1",
            SolverId::Composite(CompositeId::Explicit2) => "explicit-2",
            SolverId::Oracle => "oracle",
        };
        f.write_str(s)
    }
}

/// Unified scheme dispatch: estimate `a` from `c`.
pub fn invert_with(id: SolverId, c: f64, q: &QuadratureSpec) -> Result<f64> {
    match id {
        SolverId::FirstOrder => invert_large::invert_first_order(c),
        SolverId::Fourier(n) => invert_large::invert_fourier_n(c, n),
        SolverId::Quadratic => invert_large::invert_epsilon_poly(c, 2, q),
        SolverId::Quartic => invert_large::invert_epsilon_poly(c, 4, q),
        SolverId::InvErfc => invert_small::invert_erfc(c),
        SolverId::LambertW => invert_small::invert_lambert(c, true),
        SolverId::LogLog => invert_small::invert_lambert(c, false),
        SolverId::PExpansion => invert_small::invert_p_expansion(c),
        SolverId::Composite(cid) => {
            composite::composite_invert(c, &CompositeScheme::for_id(cid), q)
        }
        SolverId::Oracle => true_a(c, &RootFindSpec::default()),
    }
}

/// One row of an error sweep; per-point failures are recorded in-row so a
/// sweep never aborts.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub c: f64,
    pub outcome: Result<ErrorReport>,
}

/// Runs the named scheme over the grid and reports the reconstruction error
/// point by point. The grid must be strictly increasing inside `(0,1)`.
pub fn error_sweep(id: SolverId, c_grid: &[f64], q: &QuadratureSpec) -> Result<Vec<SweepRow>> {
    if c_grid.is_empty() {
        return Err(Error::Domain("empty sweep grid".into()));
    }
    let mut prev = 0.0;
    for &c in c_grid {
        if !(c > 0.0 && c < 1.0) || c <= prev {
            return Err(Error::Domain(
                "sweep grid must be strictly increasing inside (0,1)".into(),
            ));
        }
        prev = c;
    }
    Ok(c_grid
        .iter()
        .map(|&c| SweepRow {
            c,
            outcome: invert_with(id, c, q).and_then(|a| composite::relative_error(c, a)),
        })
        .collect())
}

/// The documented default sweep grid: 999 uniform points `c = i/1000`.
pub fn default_grid() -> Vec<f64> {
    (1..=999).map(|i| i as f64 / 1000.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_on_grid() {
        let spec = RootFindSpec::default();
        for i in 1..=19 {
            let c = i as f64 / 20.0;
            let a = true_a(c, &spec).unwrap();
            assert!(
                (series::i_exact(a).unwrap() - c).abs() <= 1e-12,
                "residual too large at c = {c}"
            );
        }
    }

    #[test]
    fn inverse_consistency() {
        let spec = RootFindSpec::default();
        let mut a = 0.05;
        while a <= 5.0 {
            let c = series::i_exact(a).unwrap();
            let back = true_a(c, &spec).unwrap();
            assert!((back - a).abs() <= 1e-10, "a = {a}: got {back}");
            a += 0.25;
        }
    }

    #[test]
    fn bracket_and_spec_validation() {
        // a bracket that cannot enclose the root is reported as such
        let narrow = RootFindSpec {
            a_lo: 1.0,
            a_hi: 2.0,
            ..RootFindSpec::default()
        };
        assert!(matches!(true_a(0.05, &narrow), Err(Error::Bracket(_))));
        let bad = RootFindSpec {
            a_lo: 2.0,
            a_hi: 1.0,
            ..RootFindSpec::default()
        };
        assert!(matches!(true_a(0.5, &bad), Err(Error::Domain(_))));
        // the linked pair carries the solved root
        let pair = solve_pair(0.4, &RootFindSpec::default()).unwrap();
        assert_eq!(pair.c, 0.4);
        assert!((series::i_exact(pair.a).unwrap() - 0.4).abs() <= 1e-12);
    }

    #[test]
    fn known_inversion_points() {
        let spec = RootFindSpec::default();
        // c = 0.532 pairs with a near 4/pi^2 = 0.405
        let a = true_a(0.532, &spec).unwrap();
        assert!((a - 0.405).abs() < 1e-3, "a(0.532) = {a}");
        let a = true_a(0.258, &spec).unwrap();
        assert!((a - 0.217).abs() < 1e-3, "a(0.258) = {a}");
        let a = true_a(0.5, &spec).unwrap();
        assert!((a - 0.37875).abs() < 1e-4, "a(0.5) = {a}");
    }

    #[test]
    fn strictly_increasing() {
        let spec = RootFindSpec::default();
        let mut prev = 0.0;
        for i in 1..=99 {
            let c = i as f64 / 100.0;
            let a = true_a(c, &spec).unwrap();
            assert!(a > prev);
            prev = a;
        }
    }

    #[test]
    fn sweep_never_aborts() {
        // p-expansion fails for c past its P > 1 domain; rows record it
        let q = QuadratureSpec::default();
        let grid = [0.05, 0.2, 0.5, 0.9];
        let rows = error_sweep(SolverId::PExpansion, &grid, &q).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows[0].outcome.is_ok());
        assert!(rows[3].outcome.is_err());
    }

    #[test]
    fn sweep_oracle_round_trip() {
        let q = QuadratureSpec::default();
        let rows = error_sweep(SolverId::Oracle, &[0.4], &q).unwrap();
        let rep = rows[0].outcome.as_ref().unwrap();
        assert!(rep.re_percent < 1e-9);
    }

    #[test]
    fn sweep_rejects_bad_grid() {
        let q = QuadratureSpec::default();
        assert!(error_sweep(SolverId::Oracle, &[0.5, 0.4], &q).is_err());
        assert!(error_sweep(SolverId::Oracle, &[], &q).is_err());
        assert!(error_sweep(SolverId::Oracle, &[1.5], &q).is_err());
    }

    #[test]
    fn every_scheme_is_total_or_fails_cleanly() {
        // each scheme either produces a positive estimate or reports a clean
        // domain/validity error at every grid point; nothing panics and no
        // estimate comes back non-finite
        let q = QuadratureSpec::default();
        for name in SolverId::ALL_NAMES {
            let id: SolverId = name.parse().unwrap();
            for i in (1..1000).step_by(7) {
                let c = i as f64 / 1000.0;
                match invert_with(id, c, &q) {
                    Ok(a) => assert!(a.is_finite() && a > 0.0, "{name} at c = {c}: a = {a}"),
                    Err(Error::Domain(_)) | Err(Error::NoRoot(_)) => {}
                    Err(e) => panic!("{name} at c = {c}: unexpected {e}"),
                }
            }
        }
    }

    #[test]
    fn scheme_names_round_trip() {
        for name in SolverId::ALL_NAMES {
            let id: SolverId = name.parse().unwrap();
            assert_eq!(id.to_string(), *name);
        }
        assert!("bogus".parse::<SolverId>().is_err());
    }

    #[test]
    fn first_order_sweep_narrative() {
        let q = QuadratureSpec::default();
        let rows = error_sweep(SolverId::FirstOrder, &[0.1, 0.2, 0.53], &q).unwrap();
        let re: Vec<f64> = rows
            .iter()
            .map(|r| r.outcome.as_ref().unwrap().re_percent)
            .collect();
        assert!((re[0] - 18.7).abs() < 0.3);
        assert!((re[1] - 3.2).abs() < 0.1);
        assert!(re[2] < 0.011 + 0.002, "RE(0.53) = {}", re[2]);
    }
}
