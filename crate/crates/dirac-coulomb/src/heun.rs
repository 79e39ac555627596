//! Confluent Heun route to the bound spectrum.
//!
//! All three second-order reductions of the radial problem — the two
//! mixing-angle routes (after mapping the companion singular point to 1 via
//! x = r/R) and the direct route (already in its scaled variable) — take the
//! same canonical confluent Heun form after the substitution
//! `y = x^a e^{b x} phi`:
//!
//! ```text
//! phi'' + (alpha + (1+beta)/z + (1+gamma)/(z-1)) phi'
//!       + (u/z + v/(z-1)) phi = 0
//! ```
//!
//! where the two accessory pole strengths are fixed by the five named
//! parameters:
//!
//! ```text
//! u = (alpha + alpha*beta - beta - beta*gamma - gamma)/2 - eta
//! v = (alpha + alpha*gamma + beta + beta*gamma + gamma)/2 + delta + eta
//! ```
//!
//! Every instance built here has `gamma = -2` (the point z = 1 then carries
//! exponents {0, 2} and is never crossed: the physical half-line maps to
//! z < 0). Bound states are picked out by the polynomial-termination
//! condition `delta + alpha*(n + (gamma + beta + 2)/2) = 0`, which this
//! module solves for the energy.

use crate::domain::{
    mixing_angle, validate_pair, Energy, Error, MixingAngle, PhysicalParams, QuantumNumbers,
    Result, RotationCase,
};
use crate::flat::{additional_point_case1, additional_point_case2};
use crate::rational::{PoleTable, SecondOrderODE};
use crate::solve::bisect_then_secant;

/// The five named parameters of one confluent Heun equation instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfluentHeunParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub eta: f64,
}

/// The factor `x^{exponent_a} e^{rate_b x}` divided out of the radial
/// solution on the way to the canonical form, plus the companion singular
/// point `R` (in the original radial variable) that the map x = r/R sent to
/// 1 — `None` for the direct route, whose variable change fixes that point
/// before any substitution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteSubstitution {
    pub exponent_a: f64,
    pub rate_b: f64,
    pub companion_point: Option<f64>,
}

/// Truncated Frobenius solution of the canonical equation at z = 0 on the
/// analytic branch (exponent 0, normalized to `c_0 = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct HeunLocalSolution {
    pub coefficients: Vec<f64>,
    pub expansion_point: f64,
    pub exponent: f64,
}

impl HeunLocalSolution {
    /// Horner evaluation of the truncated series.
    pub fn eval(&self, z: f64) -> f64 {
        let mut y = 0.0;
        for &c in self.coefficients.iter().rev() {
            y = y * z + c;
        }
        y
    }

    /// Horner evaluation of the truncated series and its first two
    /// derivatives.
    pub fn eval_with_derivatives(&self, z: f64) -> (f64, f64, f64) {
        let mut y = 0.0;
        let mut d1 = 0.0;
        let mut d2 = 0.0;
        for &c in self.coefficients.iter().rev() {
            d2 = d2 * z + 2.0 * d1;
            d1 = d1 * z + y;
            y = y * z + c;
        }
        (y, d1, d2)
    }
}

/// The simple-pole strengths `(u, v)` of the canonical equation's potential
/// term, as functions of the five named parameters.
pub fn accessory_pole_strengths(params: &ConfluentHeunParams) -> (f64, f64) {
    let ConfluentHeunParams {
        alpha,
        beta,
        gamma,
        delta,
        eta,
    } = *params;
    let u = 0.5 * (alpha + alpha * beta - beta - beta * gamma - gamma) - eta;
    let v = 0.5 * (alpha + alpha * gamma + beta + beta * gamma + gamma) + delta + eta;
    (u, v)
}

/// The canonical equation itself as coefficient tables in z, with its
/// singular-point profiles attached (regular points at 0 and 1, irregular
/// point at infinity).
pub fn canonical_ode(params: &ConfluentHeunParams) -> SecondOrderODE {
    let (u, v) = accessory_pole_strengths(params);
    let p = PoleTable::with_simple_poles(
        params.alpha,
        &[(0.0, 1.0 + params.beta), (1.0, 1.0 + params.gamma)],
    );
    let q = PoleTable::with_simple_poles(0.0, &[(0.0, u), (1.0, v)]);
    SecondOrderODE::new(p, q, "z (canonical confluent Heun variable)")
}

fn require_strictly_bound(energy: Energy, mass: f64) -> Result<()> {
    if !energy.value.is_finite() || energy.value.abs() >= mass {
        return Err(Error::Domain(format!(
            "confluent Heun parameters need |E| < m for a real decay rate, got E = {}, m = {mass}",
            energy.value
        )));
    }
    Ok(())
}

fn params_from_rotation(
    angle: &MixingAngle,
    r_point: f64,
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> (ConfluentHeunParams, RouteSubstitution) {
    let a = ph.exponent_s(qn);
    let b = -energy.lambda(ph.mass) * r_point;
    let delta = 2.0 * ph.coupling * energy.value * r_point;
    let eta = 1.0 + ph.mass * r_point * angle.sin_a - delta - qn.nu_f() * angle.cos_a;
    (
        ConfluentHeunParams {
            alpha: 2.0 * b,
            beta: 2.0 * a,
            gamma: -2.0,
            delta,
            eta,
        },
        RouteSubstitution {
            exponent_a: a,
            rate_b: b,
            companion_point: Some(r_point),
        },
    )
}

/// Canonical parameters reached from the case-1 mixing route (sin A = e/nu),
/// in the variable z = r/R with R = -2e/(E + m cos A). Also returns the
/// substitution record (origin exponent `a`, exponential rate `b`, and R).
pub fn params_case1_full(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<(ConfluentHeunParams, RouteSubstitution)> {
    validate_pair(qn, ph)?;
    require_strictly_bound(energy, ph.mass)?;
    let angle = mixing_angle(RotationCase::Case1, qn, ph, energy)?;
    let r_point = additional_point_case1(qn, ph, energy)?;
    Ok(params_from_rotation(&angle, r_point, qn, ph, energy))
}

/// Case-1 parameters alone; see [`params_case1_full`].
pub fn params_case1(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<ConfluentHeunParams> {
    params_case1_full(qn, ph, energy).map(|(p, _)| p)
}

/// Canonical parameters reached from the case-2 mixing route (cos A = E/m),
/// in the variable z = r/R with R = -(e + nu sin A)/(2E). Also returns the
/// substitution record.
pub fn params_case2_full(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<(ConfluentHeunParams, RouteSubstitution)> {
    validate_pair(qn, ph)?;
    require_strictly_bound(energy, ph.mass)?;
    let angle = mixing_angle(RotationCase::Case2, qn, ph, energy)?;
    let r_point = additional_point_case2(qn, ph, energy)?;
    Ok(params_from_rotation(&angle, r_point, qn, ph, energy))
}

/// Case-2 parameters alone; see [`params_case2_full`].
pub fn params_case2(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<ConfluentHeunParams> {
    params_case2_full(qn, ph, energy).map(|(p, _)| p)
}

/// Canonical parameters reached from the direct elimination route in its own
/// scaled variable x = -(E+m) r / e (no companion-point map needed). The
/// substitution factor is `x^A e^{C x}` with `A = sqrt(nu^2 - e^2)` and
/// `C = e sqrt((m-E)/(m+E))`; physical radii map to x < 0, where the factor
/// decays.
pub fn params_direct_full(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<(ConfluentHeunParams, RouteSubstitution)> {
    validate_pair(qn, ph)?;
    require_strictly_bound(energy, ph.mass)?;
    let a_exp = ph.exponent_s(qn);
    let c_rate = ph.coupling * ((ph.mass - energy.value) / (ph.mass + energy.value)).sqrt();
    let delta = -2.0 * energy.value * ph.coupling * ph.coupling / (energy.value + ph.mass);
    let eta = 1.0 - qn.nu_f() - delta;
    Ok((
        ConfluentHeunParams {
            alpha: 2.0 * c_rate,
            beta: 2.0 * a_exp,
            gamma: -2.0,
            delta,
            eta,
        },
        RouteSubstitution {
            exponent_a: a_exp,
            rate_b: c_rate,
            companion_point: None,
        },
    ))
}

/// Direct-route parameters alone; see [`params_direct_full`].
pub fn params_direct(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<ConfluentHeunParams> {
    params_direct_full(qn, ph, energy).map(|(p, _)| p)
}

/// Frobenius coefficients `c_0 ..= c_K` (exponent 0, `c_0 = 1`) of the
/// canonical equation at z = 0, from the three-term recurrence
///
/// ```text
/// (k+1)(k+1+beta) c_{k+1} = [k(k-1) + (2 + beta + gamma - alpha) k - u] c_k
///                         + [alpha (k-1) + u + v] c_{k-1}
/// ```
///
/// with `c_1 = -u / (1 + beta)`.
///
/// Errors with [`Error::RecurrenceBreakdown`] when a leading factor
/// `(k+1)(k+1+beta)` with `k < K` vanishes, i.e. when `1 + beta` is a
/// non-positive integer inside the requested range.
pub fn heun_series(params: &ConfluentHeunParams, max_terms: usize) -> Result<HeunLocalSolution> {
    let beta = params.beta;
    let head = 1.0 + beta;
    if head <= 0.0 && head.fract() == 0.0 {
        let k_bad = (-head) as usize;
        if k_bad < max_terms {
            return Err(Error::RecurrenceBreakdown {
                k: k_bad,
                context: format!(
                    "leading recurrence factor (k+1)(k+1+beta) vanishes (beta = {beta})"
                ),
            });
        }
    }
    let (u, v) = accessory_pole_strengths(params);
    let mut c = Vec::with_capacity(max_terms + 1);
    c.push(1.0_f64);
    if max_terms >= 1 {
        c.push(-u / head);
    }
    for k in 1..max_terms {
        let kf = k as f64;
        let lead = (kf + 1.0) * (kf + 1.0 + beta);
        let row = (kf * (kf - 1.0) + (2.0 + beta + params.gamma - params.alpha) * kf - u) * c[k]
            + (params.alpha * (kf - 1.0) + u + v) * c[k - 1];
        c.push(row / lead);
    }
    Ok(HeunLocalSolution {
        coefficients: c,
        expansion_point: 0.0,
        exponent: 0.0,
    })
}

/// The polynomial-termination residual
/// `delta + alpha*(n + (gamma + beta + 2)/2)`: zero exactly when the series
/// recurrence loses its `c_{k-1}` feed at k = n+1, the algebraic condition
/// for a degree-n polynomial solution.
pub fn polynomial_residual(params: &ConfluentHeunParams, n: u32) -> f64 {
    params.delta + params.alpha * (n as f64 + 0.5 * (params.gamma + params.beta + 2.0))
}

/// Which reduction route supplies the parameters for the quantization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeunRoute {
    Case1,
    Case2,
    Direct,
}

/// Solves the termination condition `polynomial_residual(params(E), n) = 0`
/// for the level-n bound energy by bracketed root finding on `(0, m)`.
///
/// The residual is positive as E -> 0+ and negative as E -> m- for every
/// route (it is a positive multiple of `lambda (n + a) - e E`, a strictly
/// decreasing function of E), so the bracket is guaranteed. As with the
/// confluent hypergeometric route, a coupling so small that the binding
/// drops below the floating-point resolution of m returns the largest
/// representable bound energy, and a coupling of exactly zero returns E = m.
pub fn spectrum_via_heun(
    route: HeunRoute,
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    n: u32,
) -> Result<Energy> {
    validate_pair(qn, ph)?;
    if ph.coupling == 0.0 {
        return Ok(Energy::new(ph.mass));
    }
    let m = ph.mass;
    let lo = 1e-15 * m;
    let hi = m * (1.0 - f64::EPSILON);
    let residual = |e_val: f64| -> Result<f64> {
        let energy = Energy::new(e_val);
        let params = match route {
            HeunRoute::Case1 => params_case1(qn, ph, energy)?,
            HeunRoute::Case2 => params_case2(qn, ph, energy)?,
            HeunRoute::Direct => params_direct(qn, ph, energy)?,
        };
        Ok(polynomial_residual(&params, n))
    };
    match bisect_then_secant(residual, lo, hi, 1e-14 * m) {
        Ok(root) => Energy::bound(root, m),
        Err(Error::NoSignChange { .. }) => Energy::bound(hi, m),
        Err(e) => Err(e),
    }
}
