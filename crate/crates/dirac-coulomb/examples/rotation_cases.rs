//! Prints the four constant-rotation choices that decouple the radial
//! system's second-order reduction. Each case fixes the mixing angle A by a
//! different algebraic condition; the half-angle values feed the rotated
//! series substitutions, and the identities below are what the rest of the
//! crate relies on.
//!
//! Run with: cargo run --example rotation_cases

use dirac_coulomb::{mixing_angle, Energy, PhysicalParams, QuantumNumbers, RotationCase};

fn main() {
    let qn = QuantumNumbers::new(1, 1, 0).expect("valid labels");
    let ph = PhysicalParams::new(1.0, 0.5).expect("valid parameters");
    let energy = Energy::new(0.9);

    println!(
        "mixing angles at m = {}, e = {}, E = {}, nu = {}",
        ph.mass,
        ph.coupling,
        energy.value,
        qn.nu()
    );
    println!(
        "{:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "case", "sin A", "cos A", "sin A/2", "cos A/2", "identity"
    );
    for case in [
        RotationCase::Case1,
        RotationCase::Case1Prime,
        RotationCase::Case2,
        RotationCase::Case2Prime,
    ] {
        let angle = mixing_angle(case, &qn, &ph, energy).expect("angle exists");
        let pythagoras = angle.sin_a * angle.sin_a + angle.cos_a * angle.cos_a - 1.0;
        println!(
            "{:>12} {:>+12.8} {:>+12.8} {:>+12.8} {:>+12.8} {:>12.3e}",
            angle.case_tag, angle.sin_a, angle.cos_a, angle.sin_half, angle.cos_half, pythagoras
        );
    }
    println!();
    println!("case 1 pins sin A with the coupling-to-nu ratio; case 2 pins cos A");
    println!("with the energy-to-mass ratio; the primed variants flip the branch.");
}
