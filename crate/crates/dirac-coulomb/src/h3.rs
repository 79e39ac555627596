//! The radial problem on hyperbolic 3-space (curvature radius 1).
//!
//! The radius beta enters the first-order system only through nu/sinh(beta)
//! and e/tanh(beta), so beta -> 0 recovers the flat system. The compact
//! coordinate z = tanh(beta/2) maps (0, infinity) to (0, 1) and turns every
//! coefficient into a rational function of z.
//!
//! Eliminating the lower component from the z-system yields a second-order
//! equation for f with regular singular points at {0, +1, -1, z1, z2,
//! infinity}: the pair z1, z2 (roots of z^2 + 2*sigma*z + 1 = 0 with
//! sigma = (E+m)/e, so z1*z2 = 1) is an artifact of the elimination and
//! carries exponents {0, 2}. Rotating the components by the constant mixing
//! angle with sin A = e/nu before eliminating collapses the artifact pair
//! into a single point z0 = (m cos A - E)/e, leaving a five-point equation
//! whose double-pole strengths reproduce the same decay exponents
//! M^2 = m^2 - (E+e)^2 and N^2 = m^2 - (E-e)^2 at z = +1 and z = -1.
//!
//! Bound states are computed by two-sided shooting on the first-order
//! z-system: a power-law start z^s (s = sqrt(nu^2 - e^2)) at z_in and the
//! decaying branch (1-z)^sqrt(M^2) at z_out, with the continuum edge at
//! E = m - e (real decay exponent requires (E+e)^2 < m^2).
//!
//! Only the parity variant delta = +1 of the angular reduction is
//! implemented; delta = -1 inputs are rejected.

use crate::domain::{validate_pair, Energy, Error, PhysicalParams, QuantumNumbers, Result};
use crate::flat::RadialState;
use crate::ode::{shoot, ShootingProblem, SystemKind};
use crate::rational::{eliminate, shift_substitution, ExponentPair, PoleTable, SecondOrderODE};

/// Default inner cutoff for shooting in z.
const Z_IN_DEFAULT: f64 = 1e-4;
/// Default outer cutoff for shooting in z.
const Z_OUT_DEFAULT: f64 = 1.0 - 1e-4;
/// Energy tolerance used by [`h3_bound_states`], relative to the mass.
const BOUND_STATE_TOL: f64 = 1e-9;

/// Derived scalars shared by every construction in this module.
///
/// `sigma = (E+m)/e` locates the elimination artifact points through
/// z^2 + 2 sigma z + 1 = 0. The mixing angle A with sin A = e/nu gives
/// `s_small = m sin A`, `c_small = m cos A`, `nu_eff = nu cos A`
/// (note nu_eff = sqrt(nu^2 - e^2), the flat origin exponent), and
/// `z0 = (c_small - E)/e`, the single artifact point of the rotated route.
///
/// Identities (up to rounding): sigma*e = E + m, nu*(s_small/m) = e,
/// s_small^2 + c_small^2 = m^2, nu_eff^2 + e^2 = nu^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H3Params {
    pub mass: f64,
    pub coupling: f64,
    pub energy: f64,
    pub nu: f64,
    pub sigma: f64,
    pub z0: f64,
    pub s_small: f64,
    pub c_small: f64,
    pub nu_eff: f64,
}

impl H3Params {
    /// Validates the channel and derives the shared scalars.
    ///
    /// Errors: the usual pair validation, `Domain` for zero coupling (sigma
    /// and z0 are build on 1/e), for a non-finite energy, and for the
    /// parity variant delta = -1, which this module does not implement.
    pub fn build(qn: &QuantumNumbers, ph: &PhysicalParams, energy: Energy) -> Result<Self> {
        validate_pair(qn, ph)?;
        require_plus_parity(qn)?;
        if ph.coupling == 0.0 {
            return Err(Error::Domain(
                "the hyperbolic constructions divide by the coupling; \
                 the free limit must be taken through small couplings"
                    .to_string(),
            ));
        }
        if !energy.value.is_finite() {
            return Err(Error::Domain(format!(
                "energy must be finite, got {}",
                energy.value
            )));
        }
        let nu = qn.nu_f();
        let e = ph.coupling;
        let m = ph.mass;
        let sin_a = e / nu;
        let nu_eff = (nu * nu - e * e).sqrt();
        let cos_a = nu_eff / nu;
        let c_small = m * cos_a;
        Ok(Self {
            mass: m,
            coupling: e,
            energy: energy.value,
            nu,
            sigma: (energy.value + m) / e,
            z0: (c_small - energy.value) / e,
            s_small: m * sin_a,
            c_small,
            nu_eff,
        })
    }
}

fn require_plus_parity(qn: &QuantumNumbers) -> Result<()> {
    if qn.parity_delta() != 1 {
        return Err(Error::Domain(
            "only the parity variant delta = +1 of the angular reduction is \
             implemented; delta = -1 channels are not supported here"
                .to_string(),
        ));
    }
    Ok(())
}

/// Right-hand side of the first-order radial system in the radius beta
/// (parity variant delta = +1):
///
///   f' = -(nu/sinh beta) f - (E + e/tanh beta + m) g,
///   g' = +(nu/sinh beta) g + (E + e/tanh beta - m) f.
///
/// As beta -> 0 this reproduces the flat system (1/sinh, 1/tanh -> 1/beta);
/// as beta -> infinity the coefficients freeze at nu/sinh -> 0 and
/// e/tanh -> e, so the continuum edge sits at |E + e| = m.
pub fn rhs_h3_beta(
    beta: f64,
    state: RadialState,
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> RadialState {
    debug_assert!(beta > 0.0, "hyperbolic radius must be positive");
    let nu = qn.nu_f();
    let centrifugal = nu / beta.sinh();
    let coulomb = energy.value + ph.coupling / beta.tanh();
    RadialState {
        f: -centrifugal * state.f - (coulomb + ph.mass) * state.g,
        g: centrifugal * state.g + (coulomb - ph.mass) * state.f,
    }
}

/// The same system in the compact coordinate z = tanh(beta/2), 0 < z < 1:
///
///   f' = -(nu/z) f - [ e/z - (E+e+m)/(z-1) + (E-e+m)/(z+1) ] g,
///   g' = +(nu/z) g + [ e/z + (m-E-e)/(z-1) + (E-e-m)/(z+1) ] f.
///
/// Pulling back through z = tanh(beta/2) (dz/dbeta = (1-z^2)/2) reproduces
/// [`rhs_h3_beta`] exactly.
pub fn rhs_h3_z(
    z: f64,
    state: RadialState,
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> RadialState {
    debug_assert!(z > 0.0 && z < 1.0, "compact coordinate must lie in (0, 1)");
    let nu = qn.nu_f();
    let e = ph.coupling;
    let m = ph.mass;
    let ev = energy.value;
    let b = -(e / z) + (ev + e + m) / (z - 1.0) - (ev - e + m) / (z + 1.0);
    let c = e / z + (m - ev - e) / (z - 1.0) + (ev - e - m) / (z + 1.0);
    RadialState {
        f: -(nu / z) * state.f + b * state.g,
        g: (nu / z) * state.g + c * state.f,
    }
}

/// Coefficient tables (a, b, c, d) of the z-system written as
/// f' = a f + b g, g' = c f + d g.
fn z_system_tables(p: &H3Params) -> (PoleTable, PoleTable, PoleTable, PoleTable) {
    let (nu, e, m, ev) = (p.nu, p.coupling, p.mass, p.energy);
    let a = PoleTable::with_simple_poles(0.0, &[(0.0, -nu)]);
    let b =
        PoleTable::with_simple_poles(0.0, &[(0.0, -e), (1.0, ev + e + m), (-1.0, -(ev - e + m))]);
    let c = PoleTable::with_simple_poles(0.0, &[(0.0, e), (1.0, m - ev - e), (-1.0, ev - e - m)]);
    let d = PoleTable::with_simple_poles(0.0, &[(0.0, nu)]);
    (a, b, c, d)
}

/// Moves pole locations that sit within rounding distance of a canonical
/// target onto the target exactly, merging coefficients when two entries
/// land on the same spot. Elimination finds artifact points by polynomial
/// root extraction, which can differ from the closed forms in the last few
/// bits; canonicalising makes `c1_at`/`profile_at` queries reliable.
fn snap_poles(table: &PoleTable, targets: &[f64]) -> PoleTable {
    let mut out = PoleTable::constant(table.constant);
    for pole in &table.poles {
        let mut loc = pole.location;
        for &t in targets {
            if (loc - t).abs() <= 1e-9 * (1.0 + t.abs()) {
                loc = t;
                break;
            }
        }
        out.add_c1(loc, pole.c1);
        out.add_c2(loc, pole.c2);
    }
    out
}

/// The second-order equation for the upper component f of the z-system,
/// with its six regular singular points {0, +1, -1, z1, z2, infinity} and
/// the named constants of its pole table.
#[derive(Debug, Clone)]
pub struct H3SixPointEquation {
    pub params: H3Params,
    /// f'' + p f' + q f = 0 in z; the artifact points z1, z2 carry
    /// exponents {0, 2}.
    pub ode: SecondOrderODE,
    /// Artifact point inside (-1, 0): z1 = -1/(sigma + sqrt(sigma^2 - 1)).
    pub z1: f64,
    /// Artifact point below -1: z2 = -(sigma + sqrt(sigma^2 - 1)).
    pub z2: f64,
    /// Residue of q at z1; equals -nu/z1 = nu (sigma + sqrt(sigma^2-1)).
    pub a_res: f64,
    /// Residue of q at z2; equals -nu/z2.
    pub b_res: f64,
    /// C = (E+e)^2 - m^2, the double-pole strength of q at z = +1. A bound
    /// state needs C < 0 so that the decay exponent sqrt(-C) is real.
    pub c_const: f64,
    /// D = (E-e)^2 - m^2, the double-pole strength of q at z = -1.
    pub d_const: f64,
}

/// Eliminates g from the z-system and names the constants of the resulting
/// six-point equation.
///
/// Errors: `ComplexAuxiliaryPoints` when sigma^2 <= 1 (the artifact points
/// leave the real axis; happens only for E + m <= e), plus the validation
/// errors of [`H3Params::build`].
pub fn build_six_point(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<H3SixPointEquation> {
    let params = H3Params::build(qn, ph, energy)?;
    let sigma = params.sigma;
    let disc = sigma * sigma - 1.0;
    if disc <= 0.0 {
        return Err(Error::ComplexAuxiliaryPoints { discriminant: disc });
    }
    // Cancellation-stable roots of z^2 + 2 sigma z + 1 = 0 (product 1).
    let z2 = -(sigma + disc.sqrt());
    let z1 = 1.0 / z2;

    let (a, b, c, d) = z_system_tables(&params);
    let (p_raw, q_raw) = eliminate(&a, &b, &c, &d)?;
    let targets = [0.0, 1.0, -1.0, z1, z2];
    let p = snap_poles(&p_raw, &targets);
    let q = snap_poles(&q_raw, &targets);

    let a_res = q.c1_at(z1);
    let b_res = q.c1_at(z2);
    let ev = params.energy;
    let e = params.coupling;
    let m = params.mass;
    Ok(H3SixPointEquation {
        params,
        ode: SecondOrderODE::new(p, q, "z = tanh(beta/2); upper component f"),
        z1,
        z2,
        a_res,
        b_res,
        c_const: (ev + e) * (ev + e) - m * m,
        d_const: (ev - e) * (ev - e) - m * m,
    })
}

/// Frobenius exponents of the six-point equation at its physical singular
/// points, plus the exponent data of the angle-reduced route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H3ExponentSet {
    /// Exponents at z = 0: +/- sqrt(nu^2 - e^2).
    pub at_zero: ExponentPair,
    /// Exponents at z = +1: +/- sqrt(-C); complex when C > 0 (no bound
    /// branch).
    pub at_plus_one: ExponentPair,
    /// Exponents at z = -1: +/- sqrt(-D). The point z = -1 lies outside the
    /// physical interval (0, 1).
    pub at_minus_one: ExponentPair,
    /// Exponents at infinity: +/- sqrt(nu^2 - e^2), matching the origin pair
    /// (the equation is symmetric under z -> 1/z up to the artifact points).
    pub at_infinity: ExponentPair,
    /// Exponents of the angle-reduced equation at z = 0: (nu_eff,
    /// 1 - nu_eff), the first being the regular bound branch.
    pub reduced_at_zero: (f64, f64),
    /// Decay exponent sqrt(-C) at z = +1, shared by both routes; `None`
    /// when C >= 0 and no decaying branch exists.
    pub m_exp: Option<f64>,
    /// The analogous sqrt(-D) at z = -1.
    pub n_exp: Option<f64>,
    /// True exactly when a decaying (bound-capable) branch exists at z -> 1.
    pub bound_branch_at_plus_one: bool,
}

/// Reads the exponent pairs off a built six-point equation.
pub fn exponents_six_point(eq: &H3SixPointEquation) -> H3ExponentSet {
    let pair_at = |loc: f64| -> ExponentPair {
        eq.ode
            .profile_at(loc)
            .expect("the six-point equation has poles at 0 and +/-1")
            .exponents
    };
    let at_infinity = eq
        .ode
        .profile_at_infinity()
        .expect("singular-point analysis always includes infinity")
        .exponents;
    let c = eq.c_const;
    let d = eq.d_const;
    let nu_eff = eq.params.nu_eff;
    H3ExponentSet {
        at_zero: pair_at(0.0),
        at_plus_one: pair_at(1.0),
        at_minus_one: pair_at(-1.0),
        at_infinity,
        reduced_at_zero: (nu_eff, 1.0 - nu_eff),
        m_exp: (c < 0.0).then(|| (-c).sqrt()),
        n_exp: (d < 0.0).then(|| (-d).sqrt()),
        bound_branch_at_plus_one: c < 0.0,
    }
}

/// Applies f = z^(exp_at_zero) (z-1)^(exp_at_plus_one) (z+1)^(exp_at_minus_one) phi
/// to the six-point equation and returns the phi-equation.
///
/// When each exponent is an indicial root of its point, the corresponding
/// double pole of the potential cancels identically; the equation keeps six
/// singular points but only simple potential poles. The residue at an
/// artifact point z_k becomes (q-residue there) - L(z_k), with
/// L(z) = exp0/z + exp_plus/(z-1) + exp_minus/(z+1).
pub fn substitute_three_factor(
    eq: &H3SixPointEquation,
    exp_at_zero: f64,
    exp_at_plus_one: f64,
    exp_at_minus_one: f64,
) -> SecondOrderODE {
    let (p, q) = shift_substitution(
        &eq.ode.p,
        &eq.ode.q,
        &[
            (0.0, exp_at_zero),
            (1.0, exp_at_plus_one),
            (-1.0, exp_at_minus_one),
        ],
        0.0,
    );
    SecondOrderODE::new(
        p,
        q,
        "z = tanh(beta/2); f = z^a (z-1)^b (z+1)^c phi, power-stripped",
    )
}

/// The angle-reduced second-order equation (lower rotated component G)
/// obtained by rotating the z-system with the constant mixing angle
/// sin A = e/nu before elimination. Five singular points: {0, +1, -1, z0,
/// infinity}, with the single artifact point z0 = (m cos A - E)/e.
#[derive(Debug, Clone)]
pub struct H3ReducedCase1 {
    pub params: H3Params,
    /// G'' + p G' + q G = 0 in z. p has simple poles only at {+1, -1, z0}
    /// (residues +1, +1, -1; none at the origin); q has double poles
    /// -nu_eff(nu_eff - 1)/z^2, -M^2/(z-1)^2, -N^2/(z+1)^2 and simple poles
    /// at {0, z0, +1, -1}.
    pub ode: SecondOrderODE,
    /// Simple-pole residue of q at z = 0.
    pub k_at_zero: f64,
    /// Simple-pole residue of q at the artifact point z0.
    pub k_at_z0: f64,
    /// Simple-pole residue of q at z = +1.
    pub k_at_plus_one: f64,
    /// Simple-pole residue of q at z = -1.
    pub k_at_minus_one: f64,
    /// M^2 = s^2 - (1 - z0)(e^2 + e c + e E) with s = m sin A, c = m cos A;
    /// identically equal to -C = m^2 - (E+e)^2.
    pub m_exp_sq: f64,
    /// N^2 = s^2 - (1 + z0)(e^2 - e c - e E); identically -D.
    pub n_exp_sq: f64,
}

/// Builds the angle-reduced five-point equation.
///
/// Errors: validation errors of [`H3Params::build`]; `Domain` when the
/// artifact point z0 collides with a physical singular point (the rotated
/// coupling degenerates there).
pub fn build_reduced_case1(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<H3ReducedCase1> {
    let params = H3Params::build(qn, ph, energy)?;
    let (ev, e) = (params.energy, params.coupling);
    let (s, c) = (params.s_small, params.c_small);
    let nu_eff = params.nu_eff;

    // Rotated system coefficients, G' = a G + b F, F' = c F-coeff...
    // Specifically: G' = m22 G + m21 F and F' = m11 F + m12 G with
    //   m22 = nu_eff/z + s/(z-1) - s/(z+1) = -m11,
    //   m21 = -(E+e-c)/(z-1) + (E-e-c)/(z+1)   (zero exactly at z0),
    //   m12 = -2e/z + (E+e+c)/(z-1) - (E-e+c)/(z+1).
    let m22 = PoleTable::with_simple_poles(0.0, &[(0.0, nu_eff), (1.0, s), (-1.0, -s)]);
    let m11 = m22.scaled(-1.0);
    let m21 = PoleTable::with_simple_poles(0.0, &[(1.0, -(ev + e - c)), (-1.0, ev - e - c)]);
    let m12 = PoleTable::with_simple_poles(
        0.0,
        &[(0.0, -2.0 * e), (1.0, ev + e + c), (-1.0, -(ev - e + c))],
    );

    let (p_raw, q_raw) = eliminate(&m22, &m21, &m12, &m11)?;
    let z0 = params.z0;
    let targets = [0.0, 1.0, -1.0, z0];
    let p = snap_poles(&p_raw, &targets);
    let q = snap_poles(&q_raw, &targets);

    let k_at_zero = q.c1_at(0.0);
    let k_at_z0 = q.c1_at(z0);
    let k_at_plus_one = q.c1_at(1.0);
    let k_at_minus_one = q.c1_at(-1.0);
    let m_exp_sq = s * s - (1.0 - z0) * (e * e + e * c + e * ev);
    let n_exp_sq = s * s - (1.0 + z0) * (e * e - e * c - e * ev);
    Ok(H3ReducedCase1 {
        params,
        ode: SecondOrderODE::new(p, q, "z = tanh(beta/2); rotated component G, sin A = e/nu"),
        k_at_zero,
        k_at_z0,
        k_at_plus_one,
        k_at_minus_one,
        m_exp_sq,
        n_exp_sq,
    })
}

/// Applies G = z^a_exp (z-1)^m_exp (z+1)^n_exp phi to the angle-reduced
/// equation and returns the phi-equation.
///
/// When (a_exp, m_exp, n_exp) solve their indicial constraints
/// a(a-1) = nu_eff(nu_eff - 1), m_exp^2 = M^2, n_exp^2 = N^2, all three
/// double poles of the potential cancel and the derivative coefficient
/// acquires weights 2 a_exp at 0, 1 + 2 m_exp at +1, 1 + 2 n_exp at -1,
/// and -1 at z0.
pub fn reduce_case1(eq: &H3ReducedCase1, a_exp: f64, m_exp: f64, n_exp: f64) -> SecondOrderODE {
    let (p, q) = shift_substitution(
        &eq.ode.p,
        &eq.ode.q,
        &[(0.0, a_exp), (1.0, m_exp), (-1.0, n_exp)],
        0.0,
    );
    SecondOrderODE::new(
        p,
        q,
        "z = tanh(beta/2); G = z^a (z-1)^M (z+1)^N phi, power-stripped",
    )
}

/// Regular (power-law) start for shooting at a small z: the branch
/// z^s (1, -(s + nu)/e) with s = sqrt(nu^2 - e^2), identical in form to the
/// flat inner start because the z-system has the same origin structure.
pub fn h3_inner_start(qn: &QuantumNumbers, ph: &PhysicalParams, z_in: f64) -> Result<RadialState> {
    validate_pair(qn, ph)?;
    require_plus_parity(qn)?;
    if ph.coupling == 0.0 {
        return Err(Error::Domain(
            "power-law start ratio -(s + nu)/e degenerates at zero coupling".to_string(),
        ));
    }
    if !(z_in > 0.0 && z_in < 1.0) {
        return Err(Error::Domain(format!(
            "inner start must lie in (0, 1), got {z_in}"
        )));
    }
    let s = ph.exponent_s(qn);
    let f = z_in.powf(s);
    Ok(RadialState::new(f, -f * (s + qn.nu_f()) / ph.coupling))
}

/// Decaying start for shooting near z = 1: the branch
/// (1-z)^mu (1, mu/(E+e+m)) with mu = sqrt(m^2 - (E+e)^2), normalised to
/// f = 1. Requires (E+e)^2 < m^2, i.e. an energy below the continuum edge.
pub fn h3_outer_start(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<RadialState> {
    validate_pair(qn, ph)?;
    require_plus_parity(qn)?;
    let ev = energy.value;
    let edge = ev + ph.coupling;
    if !(edge * edge < ph.mass * ph.mass) {
        return Err(Error::Domain(format!(
            "no decaying branch at z -> 1: need (E + e)^2 < m^2, got E + e = {edge}, m = {}",
            ph.mass
        )));
    }
    let mu = (ph.mass * ph.mass - edge * edge).sqrt();
    Ok(RadialState::new(1.0, mu / (edge + ph.mass)))
}

/// Outcome of shooting over one energy bracket.
#[derive(Debug)]
pub struct BracketScan {
    pub bracket: (f64, f64),
    /// The bound-state energy, or `NoSignChange` for an empty bracket, or
    /// a domain/integration error describing why the bracket is unusable.
    pub outcome: Result<Energy>,
}

/// Shoots the z-system over each energy bracket and reports every outcome.
/// Brackets must sit inside the bound window (0, m - e); the spectrum is
/// genuinely finite, so empty brackets (`NoSignChange`) are ordinary
/// results, not failures.
pub fn h3_bound_states(
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    brackets: &[(f64, f64)],
) -> Vec<BracketScan> {
    brackets
        .iter()
        .map(|&bracket| {
            let outcome = require_plus_parity(qn).and_then(|()| {
                let problem = ShootingProblem {
                    system: SystemKind::H3Z {
                        qn: *qn,
                        ph: *ph,
                        z_in: Z_IN_DEFAULT,
                        z_out: Z_OUT_DEFAULT,
                    },
                    inner_start: None,
                    outer_end: None,
                    energy_bracket: bracket,
                    match_point: None,
                    match_functional: "normalised cross product f_in g_out - g_in f_out of \
                                       the power-law and decaying trajectories at the \
                                       matching abscissa in z"
                        .to_string(),
                };
                shoot(&problem, BOUND_STATE_TOL * ph.mass)
            });
            BracketScan { bracket, outcome }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat::rhs_flat;
    use crate::ode::integrate;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn channel(two_j: u32) -> QuantumNumbers {
        QuantumNumbers::new(two_j, 1, 0).unwrap()
    }

    fn reference() -> (QuantumNumbers, PhysicalParams, Energy) {
        (
            channel(1),
            PhysicalParams::new(1.0, 0.3).unwrap(),
            Energy::new(0.5),
        )
    }

    #[test]
    fn params_carry_the_angle_identities() {
        for (m, ev, e, two_j) in [
            (1.0, 0.5, 0.3, 1),
            (2.0, 1.3, 0.7, 3),
            (1.0, 0.2, 0.8, 5),
            (100.0, 96.5, 0.5, 1),
        ] {
            let qn = channel(two_j);
            let ph = PhysicalParams::new(m, e).unwrap();
            let p = H3Params::build(&qn, &ph, Energy::new(ev)).unwrap();
            assert_relative_eq!(p.sigma * e, ev + m, max_relative = 1e-15);
            assert_relative_eq!(p.nu * (p.s_small / m), e, max_relative = 1e-14);
            assert_relative_eq!(
                p.s_small * p.s_small + p.c_small * p.c_small,
                m * m,
                max_relative = 1e-14
            );
            assert_relative_eq!(
                p.nu_eff * p.nu_eff + e * e,
                p.nu * p.nu,
                max_relative = 1e-14
            );
            assert_relative_eq!(p.z0 * e, p.c_small - ev, max_relative = 1e-14);
        }
        // The reference triple round-trips sigma * e bitwise.
        let (qn, ph, energy) = reference();
        let p = H3Params::build(&qn, &ph, energy).unwrap();
        assert_eq!(p.sigma, 5.0);
        assert_eq!(p.sigma * ph.coupling, energy.value + ph.mass);
    }

    #[test]
    fn minus_parity_channels_are_rejected_everywhere() {
        let qn = QuantumNumbers::new(1, -1, 0).unwrap();
        let ph = PhysicalParams::new(1.0, 0.3).unwrap();
        let energy = Energy::new(0.5);
        assert!(matches!(
            H3Params::build(&qn, &ph, energy),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            build_six_point(&qn, &ph, energy),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            h3_inner_start(&qn, &ph, 1e-4),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            h3_outer_start(&qn, &ph, energy),
            Err(Error::Domain(_))
        ));
        let scans = h3_bound_states(&qn, &ph, &[(0.3, 0.6)]);
        assert!(matches!(scans[0].outcome, Err(Error::Domain(_))));
    }

    #[test]
    fn small_radius_coefficients_approach_the_flat_ones() {
        // Relative deviation of the 1/beta-type coefficients is below
        // beta^2/3 for beta < 0.1 (Taylor remainders of sinh and tanh).
        let nu = 1.0f64;
        let e = 0.3f64;
        for beta in [0.01_f64, 0.05, 0.099] {
            let centrifugal = (nu / beta.sinh() - nu / beta).abs() / (nu / beta);
            let coulomb = (e / beta.tanh() - e / beta).abs() / (e / beta);
            let bound = beta * beta / 3.0;
            assert!(
                centrifugal < bound,
                "centrifugal deviation {centrifugal} exceeds {bound} at beta = {beta}"
            );
            assert!(
                coulomb < bound,
                "coulomb deviation {coulomb} exceeds {bound} at beta = {beta}"
            );
        }

        // Whole right-hand sides agree to the same order: the difference is
        // bounded by beta^2/3 times the singular coefficients' contribution.
        let (qn, ph, energy) = reference();
        let beta = 0.05;
        let state = RadialState::new(0.8, -0.6);
        let curved = rhs_h3_beta(beta, state, &qn, &ph, energy);
        let flat = rhs_flat(beta, state, &qn, &ph, energy);
        let singular = qn.nu_f() / beta * state.f.abs() + ph.coupling / beta * state.g.abs();
        let bound = beta * beta / 3.0 * singular;
        assert!((curved.f - flat.f).abs() < bound);
        assert!((curved.g - flat.g).abs() < bound);
    }

    #[test]
    fn large_radius_coefficients_freeze() {
        let (qn, ph, energy) = reference();
        let state = RadialState::new(0.4, 1.1);
        let got = rhs_h3_beta(40.0, state, &qn, &ph, energy);
        // Frozen system: f' = -(E+e+m) g, g' = (E+e-m) f.
        let edge = energy.value + ph.coupling;
        assert_abs_diff_eq!(got.f, -(edge + ph.mass) * state.g, epsilon = 1e-13);
        assert_abs_diff_eq!(got.g, (edge - ph.mass) * state.f, epsilon = 1e-13);
    }

    #[test]
    fn compact_and_radial_forms_agree_through_the_chain_rule() {
        let cases = [
            (channel(1), PhysicalParams::new(1.0, 0.3).unwrap(), 0.5),
            (channel(3), PhysicalParams::new(1.0, 0.8).unwrap(), 0.2),
        ];
        let states = [
            RadialState::new(1.0, 0.0),
            RadialState::new(0.0, 1.0),
            RadialState::new(0.6, -0.8),
        ];
        for (qn, ph, ev) in &cases {
            let energy = Energy::new(*ev);
            for beta in [0.3_f64, 1.0, 2.5] {
                let z = (0.5 * beta).tanh();
                let jacobian = 0.5 * (1.0 - z * z);
                for state in states {
                    let via_beta = rhs_h3_beta(beta, state, qn, ph, energy);
                    let via_z = rhs_h3_z(z, state, qn, ph, energy);
                    assert_relative_eq!(
                        via_z.f * jacobian,
                        via_beta.f,
                        max_relative = 1e-10,
                        epsilon = 1e-12
                    );
                    assert_relative_eq!(
                        via_z.g * jacobian,
                        via_beta.g,
                        max_relative = 1e-10,
                        epsilon = 1e-12
                    );
                }
            }
        }
        // beta = 1 maps to z = tanh(1/2).
        assert_relative_eq!((0.5f64).tanh(), 0.46211715726000974, max_relative = 1e-15);
    }

    #[test]
    fn compact_form_substitution_example() {
        let (qn, ph, energy) = reference();
        let got = rhs_h3_z(0.5, RadialState::new(1.0, 0.0), &qn, &ph, energy);
        // Pure upper-component data at z = 1/2: f' = -nu/z = -2 exactly.
        assert_eq!(got.f, -2.0);
        // g' = c(1/2) = e/z + (m-E-e)/(z-1) + (E-e-m)/(z+1) = 0.6 - 0.4 - 0.8/1.5.
        assert_relative_eq!(got.g, 0.6 - 0.4 - 0.8 / 1.5, max_relative = 1e-14);
    }

    #[test]
    fn six_point_constants_match_the_reference_values() {
        let (qn, ph, energy) = reference();
        let eq = build_six_point(&qn, &ph, energy).unwrap();
        assert_eq!(eq.params.sigma, 5.0);
        assert_relative_eq!(eq.z1 * eq.z2, 1.0, max_relative = 1e-12);
        assert_relative_eq!(eq.z1 + eq.z2, -10.0, max_relative = 1e-12);
        assert!((-1.0..0.0).contains(&eq.z1) && eq.z2 < -1.0);
        // A + B = 2 sigma nu and the closed forms of each residue.
        assert_relative_eq!(eq.a_res + eq.b_res, 10.0, max_relative = 1e-12);
        assert_relative_eq!(eq.a_res, -1.0 / eq.z1, max_relative = 1e-12);
        let two_nu_form = 2.0
            * (eq.params.sigma * eq.z1 + 2.0 * eq.params.sigma * eq.params.sigma - 1.0)
            / (eq.z1 - eq.z2);
        assert_relative_eq!(eq.a_res, two_nu_form, max_relative = 1e-12);
        // C = (E+e)^2 - m^2 = -0.36, D = (E-e)^2 - m^2 = -0.96, C - D = 4Ee.
        assert_relative_eq!(eq.c_const, -0.36, max_relative = 1e-14);
        assert_relative_eq!(eq.d_const, -0.96, max_relative = 1e-14);
        assert_relative_eq!(
            eq.c_const - eq.d_const,
            4.0 * energy.value * ph.coupling,
            max_relative = 1e-12
        );
        // The double-pole strengths of q are exactly C, D, e^2 - nu^2.
        assert_relative_eq!(eq.ode.q.c2_at(1.0), eq.c_const, max_relative = 1e-12);
        assert_relative_eq!(eq.ode.q.c2_at(-1.0), eq.d_const, max_relative = 1e-12);
        assert_relative_eq!(
            eq.ode.q.c2_at(0.0),
            ph.coupling * ph.coupling - 1.0,
            max_relative = 1e-12
        );
        // Derivative coefficient: residues +1 at {0, +1, -1}, -1 at {z1, z2}.
        for (loc, want) in [
            (0.0, 1.0),
            (1.0, 1.0),
            (-1.0, 1.0),
            (eq.z1, -1.0),
            (eq.z2, -1.0),
        ] {
            assert_relative_eq!(eq.ode.p.c1_at(loc), want, max_relative = 1e-12);
        }
        assert_eq!(eq.ode.q.constant, 0.0);
    }

    #[test]
    fn six_point_invariants_hold_on_a_grid() {
        for m in [1.0, 2.0] {
            for e in [0.2, 0.6] {
                for ev_frac in [0.3, 0.7] {
                    for two_j in [1, 3] {
                        let qn = channel(two_j);
                        let ph = PhysicalParams::new(m, e).unwrap();
                        let ev = ev_frac * m;
                        let eq = build_six_point(&qn, &ph, Energy::new(ev)).unwrap();
                        let sigma = eq.params.sigma;
                        let nu = qn.nu_f();
                        assert_relative_eq!(eq.z1 * eq.z2, 1.0, max_relative = 1e-12);
                        assert_relative_eq!(eq.z1 + eq.z2, -2.0 * sigma, max_relative = 1e-12);
                        assert_relative_eq!(
                            eq.a_res + eq.b_res,
                            2.0 * sigma * nu,
                            max_relative = 1e-12
                        );
                        assert_relative_eq!(
                            eq.c_const - eq.d_const,
                            4.0 * ev * e,
                            max_relative = 1e-12
                        );
                        // Origin and infinity share the exponent pair
                        // +/- sqrt(nu^2 - e^2).
                        let s = ph.exponent_s(&qn);
                        let set = exponents_six_point(&eq);
                        for pair in [set.at_zero, set.at_infinity] {
                            match pair {
                                ExponentPair::Real(lo, hi) => {
                                    assert_relative_eq!(hi, s, max_relative = 1e-10);
                                    assert_relative_eq!(lo, -s, max_relative = 1e-10);
                                }
                                other => panic!("expected a real pair, got {other:?}"),
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn complex_artifact_points_are_reported() {
        // sigma = (E + m)/e = 0.5 here, so the auxiliary quadratic has no
        // real roots.
        let qn = channel(1);
        let ph = PhysicalParams::new(0.1, 0.3).unwrap();
        match build_six_point(&qn, &ph, Energy::new(0.05)) {
            Err(Error::ComplexAuxiliaryPoints { discriminant }) => {
                assert_relative_eq!(discriminant, -0.75, max_relative = 1e-12);
            }
            other => panic!("expected ComplexAuxiliaryPoints, got {other:?}"),
        }
    }

    #[test]
    fn exponent_set_matches_the_reference_values() {
        let (qn, ph, energy) = reference();
        let eq = build_six_point(&qn, &ph, energy).unwrap();
        let set = exponents_six_point(&eq);
        let s = 0.91f64.sqrt();
        match set.at_zero {
            ExponentPair::Real(lo, hi) => {
                assert_relative_eq!(hi, s, max_relative = 1e-12);
                assert_relative_eq!(hi, 0.9539392014169457, max_relative = 1e-12);
                assert_relative_eq!(lo, -s, max_relative = 1e-12);
            }
            other => panic!("unexpected pair at zero: {other:?}"),
        }
        match set.at_plus_one {
            ExponentPair::Real(lo, hi) => {
                assert_relative_eq!(hi, 0.6, max_relative = 1e-12);
                assert_relative_eq!(lo, -0.6, max_relative = 1e-12);
            }
            other => panic!("unexpected pair at +1: {other:?}"),
        }
        match set.at_minus_one {
            ExponentPair::Real(lo, hi) => {
                assert_relative_eq!(hi, 0.96f64.sqrt(), max_relative = 1e-12);
                assert_relative_eq!(lo, -(0.96f64.sqrt()), max_relative = 1e-12);
            }
            other => panic!("unexpected pair at -1: {other:?}"),
        }
        assert_eq!(set.reduced_at_zero.0, eq.params.nu_eff);
        assert_relative_eq!(set.m_exp.unwrap(), 0.6, max_relative = 1e-12);
        assert_relative_eq!(set.n_exp.unwrap(), 0.96f64.sqrt(), max_relative = 1e-12);
        assert!(set.bound_branch_at_plus_one);

        // Every advertised pair really solves its indicial equation.
        for profile in &eq.ode.singular_points {
            if let crate::rational::Location::Finite(loc) = profile.location {
                let residual = profile
                    .exponents
                    .indicial_residual(eq.ode.p.c1_at(loc), eq.ode.q.c2_at(loc));
                assert!(residual < 1e-10, "indicial residual {residual} at {loc}");
            }
        }
    }

    #[test]
    fn above_edge_energies_lose_the_bound_branch() {
        // E + e > m: C > 0, exponents at +1 become complex.
        let qn = channel(1);
        let ph = PhysicalParams::new(1.0, 0.3).unwrap();
        let eq = build_six_point(&qn, &ph, Energy::new(0.8)).unwrap();
        let set = exponents_six_point(&eq);
        assert!(matches!(set.at_plus_one, ExponentPair::Complex { .. }));
        assert!(set.m_exp.is_none());
        assert!(!set.bound_branch_at_plus_one);
        assert!(h3_outer_start(&qn, &ph, Energy::new(0.8)).is_err());
    }

    #[test]
    fn numerical_solution_satisfies_the_six_point_equation() {
        let (qn, ph, energy) = reference();
        let eq = build_six_point(&qn, &ph, energy).unwrap();
        let rhs = |z: f64, s: RadialState| rhs_h3_z(z, s, &qn, &ph, energy);
        let trajectory = integrate(rhs, 0.1, 0.9, RadialState::new(1.0, 0.7), 1e-11).unwrap();
        let (nu, e, m, ev) = (qn.nu_f(), ph.coupling, ph.mass, energy.value);
        for &(z, state) in &trajectory.nodes {
            let derivative = rhs(z, state);
            // f'' from differentiating f' = a f + b g along the solution.
            let a = -nu / z;
            let da = nu / (z * z);
            let b = -(e / z) + (ev + e + m) / (z - 1.0) - (ev - e + m) / (z + 1.0);
            let db = e / (z * z) - (ev + e + m) / ((z - 1.0) * (z - 1.0))
                + (ev - e + m) / ((z + 1.0) * (z + 1.0));
            let d2f = da * state.f + a * derivative.f + db * state.g + b * derivative.g;
            let residual = eq.ode.relative_residual(z, state.f, derivative.f, d2f);
            assert!(residual < 1e-7, "six-point residual {residual} at z = {z}");
        }
    }

    #[test]
    fn three_factor_substitution_kills_every_double_pole() {
        let (qn, ph, energy) = reference();
        let eq = build_six_point(&qn, &ph, energy).unwrap();
        let s = ph.exponent_s(&qn);
        let (mu, nu_exp) = (0.6, 0.96f64.sqrt());
        // Any indicial root at each point must cancel its double pole.
        for (a, b, c) in [(s, mu, nu_exp), (-s, -mu, nu_exp), (s, -mu, -nu_exp)] {
            let phi_eq = substitute_three_factor(&eq, a, b, c);
            let scale = eq.ode.q.magnitude();
            for loc in [0.0, 1.0, -1.0] {
                assert!(
                    phi_eq.q.c2_at(loc).abs() <= 1e-12 * scale,
                    "double pole at {loc} survived for exponents ({a}, {b}, {c})"
                );
            }
            // Derivative weights pick up twice the exponents.
            assert_relative_eq!(phi_eq.p.c1_at(0.0), 1.0 + 2.0 * a, max_relative = 1e-10);
            assert_relative_eq!(phi_eq.p.c1_at(1.0), 1.0 + 2.0 * b, max_relative = 1e-10);
            assert_relative_eq!(phi_eq.p.c1_at(-1.0), 1.0 + 2.0 * c, max_relative = 1e-10);
        }
    }

    #[test]
    fn artifact_residue_after_substitution_matches_the_closed_form() {
        let (qn, ph, energy) = reference();
        let eq = build_six_point(&qn, &ph, energy).unwrap();
        let s = ph.exponent_s(&qn);
        let (mu, nu_exp) = (0.6, 0.96f64.sqrt());
        let phi_eq = substitute_three_factor(&eq, s, mu, nu_exp);
        let shift = |z: f64| s / z + mu / (z - 1.0) + nu_exp / (z + 1.0);
        assert_relative_eq!(
            phi_eq.q.c1_at(eq.z1),
            eq.a_res - shift(eq.z1),
            max_relative = 1e-10
        );
        assert_relative_eq!(
            phi_eq.q.c1_at(eq.z2),
            eq.b_res - shift(eq.z2),
            max_relative = 1e-10
        );
    }

    /// Simple-pole residue of a table at `loc` recovered from evaluations
    /// alone: the odd part of t(loc +/- h) isolates c1 up to O(h^2).
    fn residue_by_sampling(t: &PoleTable, loc: f64) -> f64 {
        let h = 1e-5;
        0.5 * h * (t.eval(loc + h) - t.eval(loc - h))
    }

    #[test]
    fn reduced_equation_matches_its_advertised_table() {
        let (qn, ph, energy) = reference();
        let red = build_reduced_case1(&qn, &ph, energy).unwrap();
        let p = &red.ode.p;
        let q = &red.ode.q;
        let z0 = red.params.z0;
        assert_relative_eq!(z0, 1.5131306713899195, max_relative = 1e-12);

        // Derivative coefficient: poles only at {+1, -1, z0}.
        assert_eq!(p.c1_at(0.0), 0.0);
        assert_relative_eq!(p.c1_at(1.0), 1.0, max_relative = 1e-12);
        assert_relative_eq!(p.c1_at(-1.0), 1.0, max_relative = 1e-12);
        assert_relative_eq!(p.c1_at(z0), -1.0, max_relative = 1e-12);

        // Double-pole strengths: -nu_eff(nu_eff-1), -M^2 = C, -N^2 = D.
        let nu_eff = red.params.nu_eff;
        assert_relative_eq!(q.c2_at(0.0), -nu_eff * (nu_eff - 1.0), max_relative = 1e-12);
        assert_relative_eq!(q.c2_at(1.0), -red.m_exp_sq, max_relative = 1e-12);
        assert_relative_eq!(q.c2_at(-1.0), -red.n_exp_sq, max_relative = 1e-12);
        assert!(q.c2_at(z0).abs() <= 1e-12 * q.magnitude());

        // The closed forms for M^2, N^2 coincide with -C, -D.
        let (ev, e, m) = (energy.value, ph.coupling, ph.mass);
        assert_relative_eq!(
            red.m_exp_sq,
            m * m - (ev + e) * (ev + e),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            red.n_exp_sq,
            m * m - (ev - e) * (ev - e),
            max_relative = 1e-12
        );

        // Exponents at 0 are {1 - nu_eff, nu_eff}; z0 is apparent with {0, 2}.
        match red.ode.profile_at(0.0).unwrap().exponents {
            ExponentPair::Real(lo, hi) => {
                assert_relative_eq!(lo, 1.0 - nu_eff, max_relative = 1e-10);
                assert_relative_eq!(hi, nu_eff, max_relative = 1e-10);
            }
            other => panic!("unexpected exponents at zero: {other:?}"),
        }
        match red.ode.profile_at(z0).unwrap().exponents {
            ExponentPair::Real(lo, hi) => {
                assert_abs_diff_eq!(lo, 0.0, epsilon = 1e-10);
                assert_abs_diff_eq!(hi, 2.0, epsilon = 1e-10);
            }
            other => panic!("unexpected exponents at z0: {other:?}"),
        }

        // Independent residue recomputation by sampling the table.
        for (loc, stored) in [
            (0.0, red.k_at_zero),
            (z0, red.k_at_z0),
            (1.0, red.k_at_plus_one),
            (-1.0, red.k_at_minus_one),
        ] {
            // Remove the double-pole part before sampling the odd part.
            let mut simple_only = q.clone();
            for pole in &mut simple_only.poles {
                pole.c2 = 0.0;
            }
            let sampled = residue_by_sampling(&simple_only, loc);
            assert_relative_eq!(sampled, stored, max_relative = 1e-7, epsilon = 1e-9);
        }
    }

    #[test]
    fn reduced_substitution_keeps_only_simple_poles() {
        let (qn, ph, energy) = reference();
        let red = build_reduced_case1(&qn, &ph, energy).unwrap();
        let nu_eff = red.params.nu_eff;
        let (m_exp, n_exp) = (red.m_exp_sq.sqrt(), red.n_exp_sq.sqrt());
        let phi_eq = reduce_case1(&red, nu_eff, m_exp, n_exp);
        let z0 = red.params.z0;

        let scale = red.ode.q.magnitude();
        for loc in [0.0, 1.0, -1.0, z0] {
            assert!(
                phi_eq.q.c2_at(loc).abs() <= 1e-12 * scale,
                "double pole survived at {loc}"
            );
        }
        // Derivative weights: 2a at 0, 1+2M at +1, 1+2N at -1, -1 at z0.
        assert_relative_eq!(phi_eq.p.c1_at(0.0), 2.0 * nu_eff, max_relative = 1e-10);
        assert_relative_eq!(phi_eq.p.c1_at(1.0), 1.0 + 2.0 * m_exp, max_relative = 1e-10);
        assert_relative_eq!(
            phi_eq.p.c1_at(-1.0),
            1.0 + 2.0 * n_exp,
            max_relative = 1e-10
        );
        assert_relative_eq!(phi_eq.p.c1_at(z0), -1.0, max_relative = 1e-10);

        // The artifact-point residue after substitution.
        let predicted = red.k_at_z0 - nu_eff / z0 - m_exp / (z0 - 1.0) - n_exp / (z0 + 1.0);
        assert_relative_eq!(phi_eq.q.c1_at(z0), predicted, max_relative = 1e-10);
    }

    #[test]
    fn shooting_starts_sit_on_their_branches() {
        let (qn, ph, energy) = reference();
        let s = ph.exponent_s(&qn);

        let inner = h3_inner_start(&qn, &ph, 1e-4).unwrap();
        assert_relative_eq!(
            inner.g / inner.f,
            -(s + qn.nu_f()) / ph.coupling,
            max_relative = 1e-12
        );
        let halved = h3_inner_start(&qn, &ph, 5e-5).unwrap();
        assert_relative_eq!(halved.f / inner.f, 0.5f64.powf(s), max_relative = 1e-12);
        // The power-law jet approximates the true derivative to O(z); the
        // O(1) coefficient parts contribute a relative O(z) correction with
        // a prefactor of order (s + nu)/e, about 20 here.
        let derivative = rhs_h3_z(1e-4, inner, &qn, &ph, energy);
        assert_relative_eq!(derivative.f, s / 1e-4 * inner.f, max_relative = 1e-2);
        let free = PhysicalParams::new(1.0, 0.0).unwrap();
        assert!(h3_inner_start(&qn, &free, 1e-4).is_err());

        let outer = h3_outer_start(&qn, &ph, energy).unwrap();
        let mu = red_mu(&ph, energy);
        assert_eq!(outer.f, 1.0);
        assert_relative_eq!(
            outer.g,
            mu / (energy.value + ph.coupling + ph.mass),
            max_relative = 1e-14
        );
        // The two branch-ratio forms agree: mu/(E+e+m) = (m-E-e)/mu.
        assert_relative_eq!(
            outer.g,
            (ph.mass - energy.value - ph.coupling) / mu,
            max_relative = 1e-14
        );
    }

    fn red_mu(ph: &PhysicalParams, energy: Energy) -> f64 {
        let edge = energy.value + ph.coupling;
        (ph.mass * ph.mass - edge * edge).sqrt()
    }

    #[test]
    fn flat_limit_regime_reproduces_the_flat_level() {
        // Bohr scale 1/(m e) = 0.02 is far below the curvature scale 1, so
        // the lowest hyperbolic level must sit within a percent of the
        // lowest flat level on this branch. The flat spectrum here starts
        // at the first excited radial index (the would-be lowest state is
        // not normalisable on this parity branch), E/m = 0.96592582...
        let qn = channel(1);
        let ph = PhysicalParams::new(100.0, 0.5).unwrap();
        let scans = h3_bound_states(&qn, &ph, &[(95.0, 99.4), (50.0, 95.0)]);

        let energy = scans[0].outcome.as_ref().expect("bound state expected");
        let flat_binding = 100.0 * (1.0 - 0.9659258262890683);
        let h3_binding = 100.0 - energy.value;
        assert!(
            (h3_binding - flat_binding).abs() / flat_binding < 0.01,
            "hyperbolic binding {h3_binding} vs flat {flat_binding}"
        );
        // No deeper state exists.
        assert!(matches!(scans[1].outcome, Err(Error::NoSignChange { .. })));
    }

    #[test]
    fn spectrum_is_finite_and_matching_point_independent() {
        // At m e = 10 the window (0, m - e) holds exactly one level: the
        // flat first-excited energy 19.3185 sits below the edge 19.5, the
        // next one (19.7768) above it.
        let qn = channel(1);
        let ph = PhysicalParams::new(20.0, 0.5).unwrap();
        let scans = h3_bound_states(&qn, &ph, &[(15.0, 19.45), (1.0, 15.0)]);
        let energy = scans[0].outcome.as_ref().expect("one level expected");
        assert!(
            (19.0..19.45).contains(&energy.value),
            "level {} outside the expected window",
            energy.value
        );
        assert!(matches!(scans[1].outcome, Err(Error::NoSignChange { .. })));

        // The eigenvalue does not move when the matching point does.
        let mut roots = Vec::new();
        for factor in [0.5, 1.0, 2.0] {
            let system = SystemKind::H3Z {
                qn,
                ph,
                z_in: Z_IN_DEFAULT,
                z_out: Z_OUT_DEFAULT,
            };
            let problem = ShootingProblem {
                system,
                inner_start: None,
                outer_end: None,
                energy_bracket: (19.0, 19.45),
                match_point: Some(factor * 0.02),
                match_functional: "cross-product mismatch".to_string(),
            };
            roots.push(shoot(&problem, 1e-10 * ph.mass).unwrap().value);
        }
        for &root in &roots[1..] {
            assert_abs_diff_eq!(root, roots[0], epsilon = 1e-6 * ph.mass);
        }
        assert_abs_diff_eq!(roots[0], energy.value, epsilon = 1e-6 * ph.mass);
    }
}
