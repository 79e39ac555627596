//! Bracketed scalar root finding shared by every spectral route.
//!
//! The quantization conditions solved in this crate are smooth, monotone (or
//! at worst piecewise-monotone) functions of the energy, so a guarded
//! bracketing method is both sufficient and the most robust choice: no
//! derivative evaluations, guaranteed convergence once a sign change is in
//! hand, and superlinear convergence near simple roots thanks to the
//! Illinois weighting.

use crate::domain::{Error, Result};

/// Hard cap on bracketing iterations. The Illinois method halves the bracket
/// at worst every other step, so 200 iterations resolve any f64 interval to
/// machine precision with a wide margin.
const MAX_ITER: usize = 200;

/// Finds a root of `f` inside `(lo, hi)` using the Illinois variant of
/// regula falsi (bisection fallback on degenerate steps, secant-like
/// interpolation otherwise).
///
/// Stops when the bracket width drops below `xtol` or below machine
/// resolution of the endpoints, whichever is larger. Endpoint values that
/// are exactly zero are returned immediately. Evaluation errors from `f`
/// propagate unchanged.
///
/// Errors with [`Error::NoSignChange`] when `f(lo)` and `f(hi)` have the
/// same sign, and [`Error::Domain`] for malformed brackets or tolerances.
pub fn bisect_then_secant<F>(mut f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!(
            "root bracket must satisfy lo < hi with finite endpoints, got ({lo}, {hi})"
        )));
    }
    if !(xtol > 0.0) {
        return Err(Error::Domain(format!(
            "root tolerance must be positive, got {xtol}"
        )));
    }

    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }

    // `side` tracks which endpoint was retained on the previous step; the
    // Illinois trick halves that endpoint's stored value when it is about to
    // be retained twice in a row, which prevents the stagnation classic
    // regula falsi suffers on convex functions.
    let mut side: i8 = 0;
    for _ in 0..MAX_ITER {
        let width = b - a;
        let floor = f64::EPSILON * (a.abs() + b.abs() + 1.0);
        if width <= xtol.max(floor) {
            break;
        }

        let denom = fb - fa;
        let mut x = if denom != 0.0 {
            b - fb * width / denom
        } else {
            0.5 * (a + b)
        };
        // Keep the trial strictly interior so the bracket always shrinks.
        let margin = 0.01 * width;
        if !x.is_finite() || x <= a + margin || x >= b - margin {
            x = 0.5 * (a + b);
        }

        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fb.signum() {
            b = x;
            fb = fx;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        } else {
            a = x;
            fa = fx;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        }
    }

    // Return the endpoint with the smaller residual rather than the midpoint:
    // for very flat functions the midpoint can be measurably worse.
    Ok(if fa.abs() <= fb.abs() { a } else { b })
}

/// Outcome of a panel scan for sign changes of a functional over an interval.
#[derive(Debug)]
pub struct ScanReport {
    /// Sub-intervals `(x_left, x_right)` over which the functional changed
    /// sign between two successful evaluations (degenerate pairs `(x, x)`
    /// mark grid points where it vanished exactly).
    pub brackets: Vec<(f64, f64)>,
    /// Grid points where evaluation failed, with the error; the scan skips
    /// over them instead of aborting.
    pub failures: Vec<(f64, Error)>,
}

/// Evaluates `f` on `panels + 1` equally spaced points across `[lo, hi]` and
/// reports every sign change between consecutive successful evaluations.
///
/// Evaluation failures are recorded in the report, not propagated: scanning
/// an energy window routinely crosses points where an auxiliary quantity is
/// singular, and those must not abort the search for brackets elsewhere.
pub fn scan_sign_changes<F>(mut f: F, lo: f64, hi: f64, panels: usize) -> Result<ScanReport>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!(
            "scan interval must satisfy lo < hi with finite endpoints, got ({lo}, {hi})"
        )));
    }
    if panels == 0 {
        return Err(Error::Domain("scan needs at least one panel".to_string()));
    }

    let mut report = ScanReport {
        brackets: Vec::new(),
        failures: Vec::new(),
    };
    let mut last_good: Option<(f64, f64)> = None;
    for i in 0..=panels {
        let x = lo + (hi - lo) * (i as f64) / (panels as f64);
        match f(x) {
            Err(e) => report.failures.push((x, e)),
            Ok(fx) if fx == 0.0 => {
                report.brackets.push((x, x));
                last_good = Some((x, fx));
            }
            Ok(fx) => {
                if let Some((xp, fp)) = last_good {
                    if fp != 0.0 && fp.signum() != fx.signum() {
                        report.brackets.push((xp, x));
                    }
                }
                last_good = Some((x, fx));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn finds_cosine_root() {
        let root = bisect_then_secant(|x| Ok(x.cos()), 1.0, 2.0, 1e-15).unwrap();
        assert_abs_diff_eq!(root, std::f64::consts::FRAC_PI_2, epsilon = 1e-13);
    }

    #[test]
    fn finds_cubic_root() {
        let root = bisect_then_secant(|x| Ok(x * x * x - 8.0), 0.0, 3.0, 1e-15).unwrap();
        assert_abs_diff_eq!(root, 2.0, epsilon = 1e-13);
    }

    #[test]
    fn survives_flat_ninth_power() {
        // Classic regula-falsi stagnation case: x^9 is extremely flat at the
        // root, so the un-weighted method barely moves the far endpoint.
        let root = bisect_then_secant(|x| Ok(x.powi(9)), -1.0, 1.5, 1e-14).unwrap();
        assert_abs_diff_eq!(root, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn reports_missing_sign_change() {
        let err = bisect_then_secant(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-12).unwrap_err();
        match err {
            Error::NoSignChange { lo, hi } => {
                assert_eq!(lo, -1.0);
                assert_eq!(hi, 1.0);
            }
            other => panic!("expected NoSignChange, got {other:?}"),
        }
    }

    #[test]
    fn exact_endpoint_zero_is_returned_verbatim() {
        let root = bisect_then_secant(|x| Ok(x - 1.0), 1.0, 5.0, 1e-12).unwrap();
        assert_eq!(root, 1.0);
    }

    #[test]
    fn propagates_evaluation_errors() {
        let err = bisect_then_secant(
            |x| {
                if x > 1.9 {
                    Err(Error::Domain("synthetic failure".to_string()))
                } else {
                    Ok(x.cos())
                }
            },
            1.0,
            2.0,
            1e-12,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn rejects_malformed_bracket() {
        assert!(matches!(
            bisect_then_secant(|x| Ok(x), 2.0, 1.0, 1e-12),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            bisect_then_secant(|x| Ok(x), 1.0, 2.0, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn scan_finds_every_sine_bracket() {
        let hi = 3.0 * std::f64::consts::PI + 0.1;
        let report = scan_sign_changes(|x| Ok(x.sin()), 0.1, hi, 64).unwrap();
        assert_eq!(report.brackets.len(), 3);
        assert!(report.failures.is_empty());
        for (k, (a, b)) in report.brackets.iter().enumerate() {
            let target = (k + 1) as f64 * std::f64::consts::PI;
            assert!(*a < target && target < *b, "bracket {k} misses {target}");
        }
    }

    #[test]
    fn scan_records_failures_without_aborting() {
        let report = scan_sign_changes(
            |x| {
                if (2.0..3.0).contains(&x) {
                    Err(Error::Domain("hole".to_string()))
                } else {
                    Ok(x - 5.0)
                }
            },
            0.0,
            8.0,
            16,
        )
        .unwrap();
        assert!(!report.failures.is_empty());
        assert_eq!(report.brackets.len(), 1);
        // The root sits exactly on a grid node, so the scan records the
        // degenerate bracket (5, 5).
        let (a, b) = report.brackets[0];
        assert!(a <= 5.0 && 5.0 <= b);
    }

    #[test]
    fn scan_marks_exact_grid_zeros() {
        let report = scan_sign_changes(|x| Ok(x), -1.0, 1.0, 2).unwrap();
        assert!(report.brackets.contains(&(0.0, 0.0)));
    }
}
