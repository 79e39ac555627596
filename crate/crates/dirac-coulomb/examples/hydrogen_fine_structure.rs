//! Evaluates the spectrum at the hydrogen-like coupling e = 1/137.035999 and
//! compares the exact binding energy with the nonrelativistic Rydberg
//! estimate m e^2 / (2 (n + nu)^2). The binding is computed through a
//! cancellation-free rearrangement of the closed form, so it keeps full
//! precision even though m - E eats eleven leading digits.
//!
//! Run with: cargo run --example hydrogen_fine_structure

use dirac_coulomb::spectra::{binding_energy, nonrel_binding_estimate};
use dirac_coulomb::{sommerfeld_energy, PhysicalParams, QuantumNumbers};

fn main() {
    let coupling = 1.0 / 137.035999;
    let ph = PhysicalParams::new(1.0, coupling).expect("valid parameters");

    println!("hydrogen-like coupling e = {coupling:.12}");
    println!(
        "{:>4} {:>2} {:>24} {:>24} {:>24} {:>12}",
        "2j", "n", "E", "binding m - E", "Rydberg estimate", "fine-structure shift"
    );
    for (two_j, n) in [(1u32, 0u32), (1, 1), (3, 0), (1, 2), (3, 1), (5, 0)] {
        let qn = QuantumNumbers::new(two_j, 1, n).expect("valid labels");
        let e_val = sommerfeld_energy(&qn, &ph, n).unwrap().value;
        let binding = binding_energy(&qn, &ph, n).unwrap();
        let estimate = nonrel_binding_estimate(&qn, &ph, n);
        println!(
            "{:>4} {:>2} {:>24.17} {:>24.17e} {:>24.17e} {:>12.5e}",
            two_j,
            n,
            e_val,
            binding,
            estimate,
            (binding - estimate) / estimate
        );
    }
    println!();
    println!(
        "the relative shift against the Rydberg value is order e^2 = {:.3e},",
        coupling * coupling
    );
    println!("and levels of equal n + nu split by their 2j: the fine structure.");
}
