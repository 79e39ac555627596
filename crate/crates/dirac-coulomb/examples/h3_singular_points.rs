//! Maps the singular-point landscape of the hyperbolic-space radial problem.
//! Eliminating one component of the first-order system in the compact
//! variable z = tanh(beta/2) produces a second-order equation with six
//! regular singular points; two of them are artifacts of the elimination
//! (exponents {0, 2}, no logarithms) and sit at reciprocal locations z1 z2
//! = 1. A constant rotation of the system instead yields a four-point
//! equation whose extra pole carries the rotation parameter.
//!
//! Run with: cargo run --example h3_singular_points

use dirac_coulomb::h3::{build_reduced_case1, build_six_point, exponents_six_point};
use dirac_coulomb::{Energy, PhysicalParams, QuantumNumbers};

fn main() {
    let qn = QuantumNumbers::new(1, 1, 0).expect("valid labels");
    let ph = PhysicalParams::new(1.0, 0.3).expect("valid parameters");
    let energy = Energy::new(0.5);

    let eq = build_six_point(&qn, &ph, energy).expect("valid regime");
    println!(
        "six-point equation at m = {}, e = {}, E = {} (sigma = {:.6}):",
        ph.mass, ph.coupling, energy.value, eq.params.sigma
    );
    let set = exponents_six_point(&eq);
    println!("  z = 0      exponents {:?}", set.at_zero);
    println!("  z = +1     exponents {:?}", set.at_plus_one);
    println!("  z = -1     exponents {:?}", set.at_minus_one);
    println!("  z = inf    exponents {:?}", set.at_infinity);
    println!(
        "  artifacts  z1 = {:.6}, z2 = {:.6} (z1 z2 = {:.3e} from 1), exponents {{0, 2}}",
        eq.z1,
        eq.z2,
        eq.z1 * eq.z2 - 1.0
    );
    println!(
        "  residue identity: A + B = {:.12} vs 2 sigma nu = {:.12}",
        eq.a_res + eq.b_res,
        2.0 * eq.params.sigma * qn.nu_f()
    );
    println!(
        "  constant identity: C - D = {:.12} vs 4 E e = {:.12}",
        eq.c_const - eq.d_const,
        4.0 * energy.value * ph.coupling
    );

    let red = build_reduced_case1(&qn, &ph, energy).expect("valid regime");
    println!();
    println!("rotated (four-point) reduction:");
    println!(
        "  poles at 0, +1, -1 and the rotation point z0 = {:.6}",
        red.params.z0
    );
    println!(
        "  exponents at 0: {{{:.6}, {:.6}}} with nu_eff = {:.6}",
        1.0 - red.params.nu_eff,
        red.params.nu_eff,
        red.params.nu_eff
    );
    println!(
        "  decay exponents M = {:.6}, N = {:.6} (M^2 = -C, N^2 = -D)",
        red.m_exp_sq.sqrt(),
        red.n_exp_sq.sqrt()
    );
    println!("  z0 exponents {{0, 2}}: an apparent singularity, like the artifacts above");
}
