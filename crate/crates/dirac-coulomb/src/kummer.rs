//! Confluent hypergeometric route to the bound spectrum.
//!
//! Both second-order radial equations whose origin exponents are
//! `±sqrt(nu^2 - e^2)` collapse, after pulling out the origin branch
//! `x^a` and the decaying exponential `e^{-x/2}` in the scaled variable
//! `x = 2 lambda r`, to the confluent hypergeometric (Kummer) equation
//!
//! ```text
//! x Y'' + (gamma - x) Y' - alpha Y = 0
//! ```
//!
//! with the same `alpha = a - e E / lambda` for both mixing cases and
//! `gamma = 2a` (case 1) or `gamma = 2a + 1` (case 2). The regular solution
//! is `M(alpha, gamma, x)`; it degenerates to a polynomial exactly when
//! `alpha = -n`, which is the bound-state quantization condition this module
//! solves for `E`.

use crate::domain::{validate_pair, Energy, Error, PhysicalParams, QuantumNumbers, Result};
use crate::solve::bisect_then_secant;

/// Hard cap on series terms. The spectral workloads here evaluate the series
/// for moderate `x` (a few tens at most), where convergence takes well under
/// a hundred terms; hitting this cap indicates a misuse, not a hard problem.
const MAX_TERMS: usize = 20_000;

/// Parameters of one confluent hypergeometric equation instance, together
/// with the substitution data that produced it.
///
/// `a_sub` and `b_sub` record the factor `x^{a_sub} e^{b_sub x}` that was
/// divided out of the radial solution; the radial function is recovered as
/// `G(x) = x^{a_sub} e^{b_sub x} M(alpha, gamma, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerParams {
    pub alpha: f64,
    pub gamma: f64,
    pub a_sub: f64,
    pub b_sub: f64,
}

impl KummerParams {
    /// Builds the equation reached from the case-1 second-order form (the
    /// one with no first-derivative term), where `gamma = 2a`.
    pub fn case1(qn: &QuantumNumbers, ph: &PhysicalParams, energy: Energy) -> Result<Self> {
        Self::build(qn, ph, energy, 0.0)
    }

    /// Builds the equation reached from the case-2 second-order form (the
    /// one with a pure `1/r` first-derivative coefficient), where
    /// `gamma = 2a + 1`. The termination parameter `alpha` is identical to
    /// case 1; that redundancy is exploited by the cross-checks.
    pub fn case2(qn: &QuantumNumbers, ph: &PhysicalParams, energy: Energy) -> Result<Self> {
        Self::build(qn, ph, energy, 1.0)
    }

    fn build(
        qn: &QuantumNumbers,
        ph: &PhysicalParams,
        energy: Energy,
        gamma_offset: f64,
    ) -> Result<Self> {
        validate_pair(qn, ph)?;
        Energy::bound(energy.value, ph.mass)?;
        let a = ph.exponent_s(qn);
        let lambda = energy.lambda(ph.mass);
        Ok(Self {
            alpha: a - ph.coupling * energy.value / lambda,
            gamma: 2.0 * a + gamma_offset,
            a_sub: a,
            b_sub: -0.5,
        })
    }
}

/// Evaluates the regular confluent hypergeometric function
/// `M(alpha, gamma, x) = sum_k (alpha)_k / (gamma)_k x^k / k!` by direct
/// term recursion, truncating once two consecutive terms fall below
/// `tol * |partial sum|`.
///
/// When `alpha` is a non-positive integer the series terminates exactly (the
/// term after degree `-alpha` is exactly zero), so any positive `tol` works.
///
/// Errors with [`Error::GammaPole`] when `gamma` is zero or a negative
/// integer (the series coefficients divide by `(gamma)_k`).
pub fn kummer_series(params: &KummerParams, x: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "series tolerance must be positive, got {tol}"
        )));
    }
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "series argument must be finite, got {x}"
        )));
    }
    let gamma = params.gamma;
    if gamma <= 0.0 && gamma.fract() == 0.0 {
        return Err(Error::GammaPole { gamma });
    }

    let mut sum = 1.0_f64;
    let mut term = 1.0_f64;
    let mut small_streak = 0u8;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (params.alpha + kf) / ((gamma + kf) * (kf + 1.0)) * x;
        if term == 0.0 {
            // Polynomial cutoff: alpha + k hit zero (or x == 0), and every
            // later term carries the same factor.
            return Ok(sum);
        }
        sum += term;
        if !sum.is_finite() {
            return Err(Error::Domain(format!(
                "confluent hypergeometric series overflowed at x = {x} \
                 (alpha = {}, gamma = {gamma})",
                params.alpha
            )));
        }
        if term.abs() <= tol * sum.abs() {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::RecurrenceBreakdown {
        k: MAX_TERMS,
        context: format!(
            "confluent hypergeometric series did not converge \
             (alpha = {}, gamma = {gamma}, x = {x})",
            params.alpha
        ),
    })
}

/// Evaluates `M(alpha, gamma, x)` together with its first two derivatives,
/// using the contiguous relations `M' = (alpha/gamma) M(alpha+1, gamma+1, x)`
/// and `M'' = alpha (alpha+1) / (gamma (gamma+1)) M(alpha+2, gamma+2, x)`.
pub fn kummer_series_with_derivatives(
    params: &KummerParams,
    x: f64,
    tol: f64,
) -> Result<(f64, f64, f64)> {
    let value = kummer_series(params, x, tol)?;
    let up1 = KummerParams {
        alpha: params.alpha + 1.0,
        gamma: params.gamma + 1.0,
        ..*params
    };
    let up2 = KummerParams {
        alpha: params.alpha + 2.0,
        gamma: params.gamma + 2.0,
        ..*params
    };
    let d1 = params.alpha / params.gamma * kummer_series(&up1, x, tol)?;
    let d2 = params.alpha * (params.alpha + 1.0) / (params.gamma * (params.gamma + 1.0))
        * kummer_series(&up2, x, tol)?;
    Ok((value, d1, d2))
}

/// The polynomial-termination residual `alpha + n`: zero exactly when the
/// series solution truncates to a degree-`n` polynomial.
pub fn termination_residual(params: &KummerParams, n: u32) -> f64 {
    params.alpha + n as f64
}

/// Solves the termination condition `alpha(E) = -n` for the bound-state
/// energy of level `n` by bracketed root finding on `(0, m)`.
///
/// `alpha(E) = a - e E / sqrt(m^2 - E^2)` decreases strictly from `a > 0`
/// (at `E -> 0+`) to `-inf` (at `E -> m-`), so the root exists, is unique,
/// and bracketing cannot fail — except when the coupling is so small
/// (below roughly `2e-8 * (a + n)`) that the binding energy drops under the
/// floating-point resolution of `m` itself; the largest representable energy
/// below `m` is returned in that regime. A coupling of exactly zero returns
/// `E = m` (no binding).
pub fn spectrum_via_kummer(qn: &QuantumNumbers, ph: &PhysicalParams, n: u32) -> Result<Energy> {
    validate_pair(qn, ph)?;
    if ph.coupling == 0.0 {
        return Ok(Energy::new(ph.mass));
    }
    let m = ph.mass;
    let lo = 1e-15 * m;
    let hi = m * (1.0 - f64::EPSILON);
    let residual = |e_val: f64| -> Result<f64> {
        let params = KummerParams::case1(qn, ph, Energy::new(e_val))?;
        Ok(termination_residual(&params, n))
    };
    match bisect_then_secant(residual, lo, hi, 1e-15 * m) {
        Ok(root) => Energy::bound(root, m),
        Err(Error::NoSignChange { .. }) => Energy::bound(hi, m),
        Err(e) => Err(e),
    }
}
