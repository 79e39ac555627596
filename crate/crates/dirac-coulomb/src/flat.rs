//! The flat-space radial system, its constant-angle rotations, and the
//! second-order equations obtained by eliminating one component.
//!
//! A first-order system is stored as four partial-fraction tables
//!
//! ```text
//! u' = a u + b v,
//! v' = c u + d v,
//! ```
//!
//! over the radial variable. Eliminating either component yields
//! `y'' + p y' + q y = 0` with rational (p, q), which is what the
//! singular-point analysis and the series solutions consume.

use crate::domain::{
    mixing_angle, validate_pair, Energy, Error, MixingAngle, PhysicalParams, QuantumNumbers,
    Result, RotationCase,
};
use crate::rational::{eliminate, scale_variable, Location, PoleTable, SecondOrderODE};

/// The two radial amplitudes at one radius. For rotated systems, read
/// `f` as the first (F) and `g` as the second (G) rotated component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialState {
    pub f: f64,
    pub g: f64,
}

impl RadialState {
    pub fn new(f: f64, g: f64) -> Self {
        Self { f, g }
    }

    pub fn norm_sq(&self) -> f64 {
        self.f * self.f + self.g * self.g
    }

    pub fn max_abs(&self) -> f64 {
        self.f.abs().max(self.g.abs())
    }
}

/// Right-hand side of the first-order radial system:
///   f' = -(nu/r) f - (E + e/r + m) g,
///   g' = +(nu/r) g + (E + e/r - m) f.
pub fn rhs_flat(
    r: f64,
    state: RadialState,
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> RadialState {
    debug_assert!(r > 0.0, "radial coordinate must be positive");
    let nu = qn.nu_f();
    let coulomb = energy.value + ph.coupling / r;
    RadialState {
        f: -(nu / r) * state.f - (coulomb + ph.mass) * state.g,
        g: (nu / r) * state.g + (coulomb - ph.mass) * state.f,
    }
}

/// Applies the half-angle rotation to a state:
///   F = cos(A/2) f - sin(A/2) g,
///   G = sin(A/2) f + cos(A/2) g.
pub fn rotate_state(state: RadialState, angle: &MixingAngle) -> RadialState {
    RadialState {
        f: angle.cos_half * state.f - angle.sin_half * state.g,
        g: angle.sin_half * state.f + angle.cos_half * state.g,
    }
}

/// Inverse of [`rotate_state`]: recovers (f, g) from (F, G).
pub fn unrotate_state(state: RadialState, angle: &MixingAngle) -> RadialState {
    RadialState {
        f: angle.cos_half * state.f + angle.sin_half * state.g,
        g: -angle.sin_half * state.f + angle.cos_half * state.g,
    }
}

/// Right-hand side of the rotated system for an arbitrary mixing angle:
///   F' = -[(nu/r) cos A - m sin A] F + [-(nu/r) sin A - e/r - E - m cos A] G,
///   G' = +[(nu/r) cos A - m sin A] G + [-(nu/r) sin A + e/r + E - m cos A] F.
pub fn rhs_flat_rotated(
    r: f64,
    state: RadialState,
    angle: &MixingAngle,
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> RadialState {
    debug_assert!(r > 0.0, "radial coordinate must be positive");
    let nu = qn.nu_f();
    let m = ph.mass;
    let e = ph.coupling;
    let ee = energy.value;
    let diag = (nu / r) * angle.cos_a - m * angle.sin_a;
    RadialState {
        f: -diag * state.f + (-(nu / r) * angle.sin_a - e / r - ee - m * angle.cos_a) * state.g,
        g: diag * state.g + (-(nu / r) * angle.sin_a + e / r + ee - m * angle.cos_a) * state.f,
    }
}

/// A 2x2 first-order system with partial-fraction coefficient tables.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstOrderSystem {
    pub a: PoleTable,
    pub b: PoleTable,
    pub c: PoleTable,
    pub d: PoleTable,
}

impl FirstOrderSystem {
    pub fn rhs(&self, r: f64, state: RadialState) -> RadialState {
        RadialState {
            f: self.a.eval(r) * state.f + self.b.eval(r) * state.g,
            g: self.c.eval(r) * state.f + self.d.eval(r) * state.g,
        }
    }

    /// (p, q) of the second-order equation satisfied by the first component.
    pub fn eliminate_first(&self) -> Result<(PoleTable, PoleTable)> {
        eliminate(&self.a, &self.b, &self.c, &self.d)
    }

    /// (p, q) of the second-order equation satisfied by the second component.
    pub fn eliminate_second(&self) -> Result<(PoleTable, PoleTable)> {
        eliminate(&self.d, &self.c, &self.b, &self.a)
    }

    /// Tables (T_u, T_v) with u'' = T_u u + T_v v, obtained by
    /// differentiating the system once and substituting it back.
    pub fn second_derivative_first(&self) -> (PoleTable, PoleTable) {
        let tu = self
            .a
            .derivative()
            .add(&self.a.mul(&self.a))
            .add(&self.b.mul(&self.c));
        let tv = self
            .a
            .mul(&self.b)
            .add(&self.b.derivative())
            .add(&self.b.mul(&self.d));
        (tu, tv)
    }

    /// Tables (T_u, T_v) with v'' = T_u u + T_v v.
    pub fn second_derivative_second(&self) -> (PoleTable, PoleTable) {
        let tu = self
            .c
            .derivative()
            .add(&self.c.mul(&self.a))
            .add(&self.d.mul(&self.c));
        let tv = self
            .c
            .mul(&self.b)
            .add(&self.d.derivative())
            .add(&self.d.mul(&self.d));
        (tu, tv)
    }
}

/// Coefficient tables of the unrotated radial system (u = f, v = g).
pub fn flat_system(qn: &QuantumNumbers, ph: &PhysicalParams, energy: Energy) -> FirstOrderSystem {
    let nu = qn.nu_f();
    let e = ph.coupling;
    let m = ph.mass;
    let ee = energy.value;
    FirstOrderSystem {
        a: PoleTable::with_simple_poles(0.0, &[(0.0, -nu)]),
        b: PoleTable::with_simple_poles(-(ee + m), &[(0.0, -e)]),
        c: PoleTable::with_simple_poles(ee - m, &[(0.0, e)]),
        d: PoleTable::with_simple_poles(0.0, &[(0.0, nu)]),
    }
}

/// Coefficient tables of the rotated system (u = F, v = G):
///   a = m sin A - (nu cos A)/r,
///   b = -(nu sin A + e)/r - (E + m cos A),
///   c = (e - nu sin A)/r + (E - m cos A),
///   d = -a.
///
/// The products nu*sin A, nu*cos A, m*sin A, m*cos A are evaluated through
/// the defining identities of each angle case so that coefficients that
/// cancel exactly (for instance the c-pole in case 1, where nu sin A = e)
/// are exact zeros rather than rounding residue; a stray 1e-17 residue
/// would otherwise fabricate a spurious singular point in the eliminations.
pub fn rotated_system(
    angle: &MixingAngle,
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> FirstOrderSystem {
    let nu = qn.nu_f();
    let e = ph.coupling;
    let m = ph.mass;
    let ee = energy.value;
    let (nu_sin, nu_cos, m_sin, m_cos) = match angle.case_tag {
        RotationCase::Case1 => {
            let s_tilde = nu * angle.cos_a;
            (e, s_tilde, m * e / nu, m * s_tilde / nu)
        }
        RotationCase::Case1Prime => {
            let s_tilde = nu * angle.cos_a;
            (-e, s_tilde, -m * e / nu, m * s_tilde / nu)
        }
        RotationCase::Case2 => (nu * angle.sin_a, nu * ee / m, m * angle.sin_a, ee),
        RotationCase::Case2Prime => (nu * angle.sin_a, -nu * ee / m, m * angle.sin_a, -ee),
    };
    let a = PoleTable::with_simple_poles(m_sin, &[(0.0, -nu_cos)]);
    FirstOrderSystem {
        d: a.scaled(-1.0),
        b: PoleTable::with_simple_poles(-(ee + m_cos), &[(0.0, -(nu_sin + e))]),
        c: PoleTable::with_simple_poles(ee - m_cos, &[(0.0, e - nu_sin)]),
        a,
    }
}

/// Rotated system at the coupling-aligned angle (sin A = e/nu):
///   F' = -(nu cos A / r - m sin A) F + (-2e/r - E - m cos A) G,
///   G' = +(nu cos A / r - m sin A) G + (E - m cos A) F.
pub fn case1_system(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<FirstOrderSystem> {
    let angle = mixing_angle(RotationCase::Case1, qn, ph, energy)?;
    Ok(rotated_system(&angle, qn, ph, energy))
}

/// Rotated system at the energy-aligned angle (cos A = E/m):
///   F' = -(nu cos A / r - m sin A) F + (-(nu sin A + e)/r - 2m cos A) G,
///   G' = +(nu cos A / r - m sin A) G + ((e - nu sin A)/r) F.
pub fn case2_system(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<FirstOrderSystem> {
    let angle = mixing_angle(RotationCase::Case2, qn, ph, energy)?;
    Ok(rotated_system(&angle, qn, ph, energy))
}

/// Location of the companion singular point of the case-1 F-equation,
///   R = -2e / (E + m cos A),
/// negative whenever E > 0 and e < nu, hence off the physical half-line.
pub fn additional_point_case1(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<f64> {
    validate_pair(qn, ph)?;
    let m_cos = ph.mass * ph.exponent_s(qn) / qn.nu_f();
    let denom = energy.value + m_cos;
    if denom == 0.0 {
        return Err(Error::ApparentPointAtInfinity(format!(
            "E + m cos A = 0 at E = {}: the companion singular point escapes",
            energy.value
        )));
    }
    Ok(-2.0 * ph.coupling / denom)
}

/// Location of the companion singular point of the case-2 F-equation,
///   R = -(e + nu sin A) / (2 m cos A) = -(e + nu sin A) / (2E).
pub fn additional_point_case2(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<f64> {
    validate_pair(qn, ph)?;
    let ee = energy.value;
    let m = ph.mass;
    if ee.abs() >= m {
        return Err(Error::Domain(format!(
            "energy-aligned rotation needs |E| < m, got E = {ee}, m = {m}"
        )));
    }
    if ee == 0.0 {
        return Err(Error::Domain(
            "companion point of the case-2 F-equation is undefined at E = 0".into(),
        ));
    }
    let nu_sin = qn.nu_f() * energy.lambda(m) / m;
    Ok(-(ph.coupling + nu_sin) / (2.0 * ee))
}

fn annotate(ode: &mut SecondOrderODE, location: Location, note: &str) {
    if let Some(profile) = ode
        .singular_points
        .iter_mut()
        .find(|s| s.location == location)
    {
        profile.physical_branch = note.to_string();
    }
}

/// Second-order equation for the G component at the coupling-aligned angle:
///   G'' + [E^2 - m^2 + 2eE/r + (nu cos A - nu^2 cos^2 A)/r^2] G = 0.
///
/// Errors: coupling >= nu (rotation undefined), and the degenerate energy
/// E = m cos A where the G row decouples and no second-order equation for G
/// alone exists (the F-coupling in the G row vanishes identically).
pub fn second_order_case1_g(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<SecondOrderODE> {
    validate_pair(qn, ph)?;
    let sys = case1_system(qn, ph, energy)?;
    let (p, q) = sys.eliminate_second().map_err(|err| match err {
        Error::Domain(_) => Error::Domain(format!(
            "at E = m cos A (E = {}) the G row decouples; no reduction for G exists",
            energy.value
        )),
        other => other,
    })?;
    let mut ode = SecondOrderODE::new(p, q, "r (physical radius)");
    annotate(
        &mut ode,
        Location::Finite(0.0),
        "r^(nu cos A): the branch continuous with the system solution that is finite at the origin",
    );
    annotate(
        &mut ode,
        Location::Infinity,
        "irregular point; bound states decay like exp(-sqrt(m^2-E^2) r)",
    );
    Ok(ode)
}

/// Second-order equation for the F component at the coupling-aligned angle,
/// in the physical radius. Its companion singular point sits at
/// R = -2e/(E + m cos A); rescale by R to study it at x = 1.
pub fn second_order_case1_f(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<SecondOrderODE> {
    validate_pair(qn, ph)?;
    let m_cos = ph.mass * ph.exponent_s(qn) / qn.nu_f();
    if energy.value + m_cos == 0.0 {
        return Err(Error::ApparentPointAtInfinity(format!(
            "E + m cos A = 0 at E = {}: the companion singular point escapes",
            energy.value
        )));
    }
    let sys = case1_system(qn, ph, energy)?;
    let (p, q) = sys.eliminate_first()?;
    let mut ode = SecondOrderODE::new(p, q, "r (physical radius)");
    annotate(
        &mut ode,
        Location::Finite(0.0),
        "r^(+sqrt(nu^2-e^2)): regular branch at the origin",
    );
    if ph.coupling > 0.0 {
        let r_point = additional_point_case1(qn, ph, energy)?;
        annotate(
            &mut ode,
            Location::Finite(r_point),
            "apparent point off the physical half-line (exponents 0 and 2, no logarithm)",
        );
    }
    Ok(ode)
}

/// Second-order equation for the G component at the energy-aligned angle:
///   G'' + (1/r) G' + [E^2 - m^2 + (e^2 - nu^2)/r^2 + (2eE + sqrt(m^2-E^2))/r] G = 0.
///
/// Errors: |E| >= m, and the degenerate energy where e = nu sin A (the
/// F-coupling in the G row vanishes identically).
pub fn second_order_case2_g(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<SecondOrderODE> {
    validate_pair(qn, ph)?;
    if energy.value.abs() >= ph.mass {
        return Err(Error::Domain(format!(
            "energy-aligned reduction needs |E| < m, got E = {}, m = {}",
            energy.value, ph.mass
        )));
    }
    let sys = case2_system(qn, ph, energy)?;
    let (p, q) = sys.eliminate_second().map_err(|err| match err {
        Error::Domain(_) => Error::Domain(format!(
            "at e = nu sin A (E = {}) the G row decouples; no reduction for G exists",
            energy.value
        )),
        other => other,
    })?;
    let mut ode = SecondOrderODE::new(p, q, "r (physical radius)");
    annotate(
        &mut ode,
        Location::Finite(0.0),
        "r^(+sqrt(nu^2-e^2)): regular branch at the origin",
    );
    Ok(ode)
}

/// Second-order equation for the F component at the energy-aligned angle,
/// in the physical radius. Its companion singular point sits at
/// R = -(e + nu sin A)/(2E).
pub fn second_order_case2_f(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<SecondOrderODE> {
    validate_pair(qn, ph)?;
    let ee = energy.value;
    if ee.abs() >= ph.mass {
        return Err(Error::Domain(format!(
            "energy-aligned reduction needs |E| < m, got E = {ee}, m = {}",
            ph.mass
        )));
    }
    if ee == 0.0 {
        return Err(Error::Domain(
            "energy-aligned F-reduction is undefined at E = 0 (companion point escapes)".into(),
        ));
    }
    let sys = case2_system(qn, ph, energy)?;
    let (p, q) = sys.eliminate_first()?;
    let mut ode = SecondOrderODE::new(p, q, "r (physical radius)");
    annotate(
        &mut ode,
        Location::Finite(0.0),
        "r^(+sqrt(nu^2-e^2)): regular branch at the origin",
    );
    let r_point = additional_point_case2(qn, ph, energy)?;
    annotate(
        &mut ode,
        Location::Finite(r_point),
        "apparent point off the physical half-line (exponents 0 and 2, no logarithm)",
    );
    Ok(ode)
}

/// Scale factor of the direct-route variable map x = r / scale, with
/// scale = -e/(E + m); physical radii map to negative x.
pub fn direct_variable_scale(ph: &PhysicalParams, energy: Energy) -> Result<f64> {
    if ph.coupling <= 0.0 {
        return Err(Error::Domain(
            "direct-route variable map x = -(E+m) r/e needs coupling > 0".into(),
        ));
    }
    if energy.value + ph.mass == 0.0 {
        return Err(Error::Domain(
            "direct-route variable map is undefined at E = -m".into(),
        ));
    }
    Ok(-ph.coupling / (energy.value + ph.mass))
}

/// Second-order equation for the unrotated f component, eliminated directly
/// (no rotation) and expressed in x = -(E+m) r / e. The eliminated point
/// lands at x = 1 with exponents {0, 2}; the origin keeps +/- sqrt(nu^2-e^2).
pub fn second_order_direct_f(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<SecondOrderODE> {
    validate_pair(qn, ph)?;
    let scale = direct_variable_scale(ph, energy)?;
    let sys = flat_system(qn, ph, energy);
    let (p_r, q_r) = sys.eliminate_first()?;
    let mut ode = SecondOrderODE::new(
        scale_variable(&p_r, scale, 1),
        scale_variable(&q_r, scale, 2),
        format!("x = -(E+m) r / e = r / ({scale})"),
    );
    annotate(
        &mut ode,
        Location::Finite(0.0),
        "x^(+sqrt(nu^2-e^2)): regular branch at the origin",
    );
    annotate(
        &mut ode,
        Location::Finite(1.0),
        "apparent point off the physical ray (physical radii map to x < 0)",
    );
    Ok(ode)
}
