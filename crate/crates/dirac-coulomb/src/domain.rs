//! Shared domain types: quantum numbers, physical parameters, bound-state
//! energies, rotation angles, and the crate-wide error vocabulary.

use thiserror::Error;

/// Crate-wide error vocabulary. Every fallible operation speaks it; nothing
/// returns a silent NaN.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coupling {coupling} >= nu={nu}: sqrt(nu^2 - e^2) would be imaginary (fall-to-center regime, unsupported)")]
    CouplingTooLarge { coupling: f64, nu: u32 },

    #[error("mass must be positive and finite, got {mass}")]
    NonPositiveMass { mass: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("additional singular point escapes to infinity: {0}")]
    ApparentPointAtInfinity(String),

    #[error("series parameter gamma = {gamma} is a non-positive integer (pole of the coefficient ratio)")]
    GammaPole { gamma: f64 },

    #[error("no root found in bracket ({lo}, {hi}): {context}")]
    NoRoot { lo: f64, hi: f64, context: String },

    #[error("recurrence breakdown at k = {k}: {context}")]
    RecurrenceBreakdown { k: usize, context: String },

    #[error("step size underflow at t = {t} (h = {h}); singular or stiff point reached")]
    StepUnderflow { t: f64, h: f64 },

    #[error("non-finite state during integration at t = {t}")]
    NonFiniteState { t: f64 },

    #[error("match functional has no sign change over bracket ({lo}, {hi})")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("auxiliary singular points are complex: discriminant {discriminant} < 0")]
    ComplexAuxiliaryPoints { discriminant: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Angular and radial labels of one bound level.
///
/// The half-integer j is stored as the exact integer 2j, so nu = j + 1/2 is
/// (2j + 1)/2 exactly and no floating-point j exists anywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    two_j: u32,
    parity_delta: i8,
    n_radial: u32,
}

impl QuantumNumbers {
    /// `two_j` must be odd (j half-integer), `parity_delta` in {+1, -1}.
    pub fn new(two_j: u32, parity_delta: i8, n_radial: u32) -> Result<Self> {
        if two_j % 2 == 0 {
            return Err(Error::Domain(format!(
                "2j must be an odd positive integer, got {two_j}"
            )));
        }
        if parity_delta != 1 && parity_delta != -1 {
            return Err(Error::Domain(format!(
                "parity must be +1 or -1, got {parity_delta}"
            )));
        }
        Ok(Self {
            two_j,
            parity_delta,
            n_radial,
        })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn j(&self) -> f64 {
        f64::from(self.two_j) / 2.0
    }

    /// nu = j + 1/2, always a positive integer.
    pub fn nu(&self) -> u32 {
        (self.two_j + 1) / 2
    }

    pub fn nu_f(&self) -> f64 {
        f64::from(self.nu())
    }

    pub fn parity_delta(&self) -> i8 {
        self.parity_delta
    }

    pub fn n_radial(&self) -> u32 {
        self.n_radial
    }

    pub fn with_n(&self, n_radial: u32) -> Self {
        Self { n_radial, ..*self }
    }
}

/// Mass and coupling of the Hamiltonian (units hbar = c = 1; coupling is the
/// dimensionless e = Z*alpha, positive meaning attraction). `coupling = 0`
/// is accepted for free-limit checks; operations that genuinely need e > 0
/// reject it themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub mass: f64,
    pub coupling: f64,
}

impl PhysicalParams {
    pub fn new(mass: f64, coupling: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::NonPositiveMass { mass });
        }
        if !(coupling >= 0.0) || !coupling.is_finite() {
            return Err(Error::Domain(format!(
                "coupling must be finite and >= 0 (attractive convention), got {coupling}"
            )));
        }
        Ok(Self { mass, coupling })
    }

    /// sqrt(nu^2 - e^2), the regular Frobenius exponent at the origin.
    /// Requires a validated pair (e < nu).
    pub fn exponent_s(&self, qn: &QuantumNumbers) -> f64 {
        let nu = qn.nu_f();
        (nu * nu - self.coupling * self.coupling).sqrt()
    }
}

/// A bound-state energy must satisfy 0 < E < m so that sqrt(m^2 - E^2) is a
/// real decay rate.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Energy {
    pub value: f64,
}

impl Energy {
    pub fn new(value: f64) -> Self {
        Self { value }
    }

    pub fn bound(value: f64, mass: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 || value >= mass {
            return Err(Error::Domain(format!(
                "bound-state energy must satisfy 0 < E < m, got E = {value}, m = {mass}"
            )));
        }
        Ok(Self { value })
    }

    /// Decay rate sqrt(m^2 - E^2) of the exponential tail.
    pub fn lambda(&self, mass: f64) -> f64 {
        ((mass - self.value) * (mass + self.value)).sqrt()
    }
}

/// Checks that (qn, ph) can be paired at all: e < nu keeps the origin
/// exponent sqrt(nu^2 - e^2) real, and the mass is positive. Total: every
/// input yields the pair or a typed error.
pub fn validate_pair(qn: &QuantumNumbers, ph: &PhysicalParams) -> Result<()> {
    if !(ph.mass > 0.0) {
        return Err(Error::NonPositiveMass { mass: ph.mass });
    }
    if ph.coupling >= qn.nu_f() {
        return Err(Error::CouplingTooLarge {
            coupling: ph.coupling,
            nu: qn.nu(),
        });
    }
    Ok(())
}

/// The four constant rotation angles that decouple the radial system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RotationCase {
    /// sin A = e/nu, cos A = +sqrt(1 - e^2/nu^2)
    Case1,
    /// sin A = -e/nu, cos A = +sqrt(1 - e^2/nu^2)
    Case1Prime,
    /// cos A = +E/m, sin A = +sqrt(1 - E^2/m^2)
    Case2,
    /// cos A = -E/m, sin A = +sqrt(1 - E^2/m^2)
    Case2Prime,
}

impl std::fmt::Display for RotationCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RotationCase::Case1 => "Case1",
            RotationCase::Case1Prime => "Case1'",
            RotationCase::Case2 => "Case2",
            RotationCase::Case2Prime => "Case2'",
        };
        f.write_str(s)
    }
}

/// A fully evaluated mixing angle: full-angle and half-angle trigonometry.
/// Invariants (tested): sin^2 + cos^2 = 1 and the half-angle identities
/// cos A = cos^2(A/2) - sin^2(A/2), sin A = 2 sin(A/2) cos(A/2), to 1e-14.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingAngle {
    pub case_tag: RotationCase,
    pub sin_a: f64,
    pub cos_a: f64,
    pub sin_half: f64,
    pub cos_half: f64,
}

/// Builds the mixing angle for the requested case.
///
/// Case1/1' need e < nu; Case2/2' need |E| <= m (the E = m boundary is the
/// degenerate identity rotation and is allowed here; reductions that need
/// |E| < m strictly enforce that themselves).
pub fn mixing_angle(
    case: RotationCase,
    qn: &QuantumNumbers,
    ph: &PhysicalParams,
    energy: Energy,
) -> Result<MixingAngle> {
    let nu = qn.nu_f();
    let e = ph.coupling;
    let m = ph.mass;
    let ee = energy.value;
    match case {
        RotationCase::Case1 | RotationCase::Case1Prime => {
            if e >= nu {
                return Err(Error::Domain(format!(
                    "rotation {case} needs coupling < nu, got e = {e}, nu = {nu}"
                )));
            }
            let s_tilde = (nu * nu - e * e).sqrt();
            // Half angles from cos A = s_tilde/nu; the primed case has A in
            // (-pi/2, 0), so its half-angle sine is negative.
            let cos_half = ((nu + s_tilde) / (2.0 * nu)).sqrt();
            let sin_half_mag = ((nu - s_tilde) / (2.0 * nu)).sqrt();
            let (sin_a, sin_half) = match case {
                RotationCase::Case1 => (e / nu, sin_half_mag),
                _ => (-e / nu, -sin_half_mag),
            };
            Ok(MixingAngle {
                case_tag: case,
                sin_a,
                cos_a: s_tilde / nu,
                sin_half,
                cos_half,
            })
        }
        RotationCase::Case2 | RotationCase::Case2Prime => {
            if ee.abs() > m {
                return Err(Error::Domain(format!(
                    "rotation {case} needs |E| <= m, got E = {ee}, m = {m}"
                )));
            }
            let sin_a = ((m - ee) * (m + ee)).sqrt() / m;
            match case {
                RotationCase::Case2 => Ok(MixingAngle {
                    case_tag: case,
                    sin_a,
                    cos_a: ee / m,
                    sin_half: ((m - ee) / (2.0 * m)).sqrt(),
                    cos_half: ((m + ee) / (2.0 * m)).sqrt(),
                }),
                // A in (pi/2, pi): cos A = -E/m, both half-angle values positive.
                _ => Ok(MixingAngle {
                    case_tag: case,
                    sin_a,
                    cos_a: -ee / m,
                    sin_half: ((m + ee) / (2.0 * m)).sqrt(),
                    cos_half: ((m - ee) / (2.0 * m)).sqrt(),
                }),
            }
        }
    }
}
