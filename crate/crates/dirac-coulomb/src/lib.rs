//! Bound states of a relativistic electron in an attractive Coulomb field,
//! computed by four mutually checking routes, plus the constant-negative-
//! curvature (Lobachevsky H3) analogue of the radial problem.
//!
//! The flat-space two-component radial system is quantized by
//!
//! 1. the closed-form fine-structure formula,
//! 2. termination of a confluent hypergeometric (Kummer) series,
//! 3. polynomial termination of a confluent Heun series, reached through
//!    three distinct reductions (two rotation angles and one direct
//!    elimination),
//! 4. two-sided shooting with an adaptive embedded-pair integrator.
//!
//! The H3 analogue is reduced to a Fuchs-class equation with six regular
//! singular points; the crate builds that equation as an exact
//! partial-fraction table, derives its Frobenius exponents, performs the
//! angle-reduced five-point reduction, and searches bound states numerically.
//!
//! Routes are deliberately redundant: every analytic path has an
//! independently constructed counterpart, and the test suite holds all of
//! them to tight mutual tolerances. See the `examples/` directory for
//! runnable entry points into each capability.

pub mod cli;
pub mod domain;
pub mod flat;
pub mod h3;
pub mod heun;
pub mod kummer;
pub mod ode;
pub mod rational;
pub mod solve;
pub mod spectra;

pub use domain::{
    mixing_angle, validate_pair, Energy, Error, MixingAngle, PhysicalParams, QuantumNumbers,
    Result, RotationCase,
};
pub use flat::{rhs_flat, rotate_state, unrotate_state, RadialState};
pub use heun::ConfluentHeunParams;
pub use rational::{ExponentPair, Location, PoleTable, SecondOrderODE, SingularPointProfile};
pub use spectra::{enumerate_levels, sommerfeld_energy, LevelRecord};
