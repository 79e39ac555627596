//! Cross-checks the analytic spectrum against two-sided shooting on the
//! first-order radial system: integrate from the origin and from far out,
//! match logarithmic slopes in the middle, and scan energy brackets for the
//! matching condition's sign changes.
//!
//! The n = 0 bracket is scanned too; on this branch of the radial system it
//! holds no two-sided eigenvalue, and the scan reports that honestly.
//!
//! Run with: cargo run --example shooting_flat

use dirac_coulomb::ode::{shoot, ShootingProblem};
use dirac_coulomb::{sommerfeld_energy, PhysicalParams, QuantumNumbers};

fn main() {
    let ph = PhysicalParams::new(1.0, 0.5).expect("valid parameters");
    let brackets = [(0.80, 0.90), (0.93, 0.975), (0.975, 0.9905)];

    println!(
        "two-sided shooting at m = {}, e = {}, 2j = 1",
        ph.mass, ph.coupling
    );
    for n in 0..=2u32 {
        let qn = QuantumNumbers::new(1, 1, n).expect("valid labels");
        let closed = sommerfeld_energy(&qn, &ph, n).unwrap().value;
        let problem = ShootingProblem::flat(qn, ph, brackets[n as usize]);
        match shoot(&problem, 1e-8) {
            Ok(found) => println!(
                "n = {n}: shooting E = {:.12}, closed form E = {closed:.12}, |dE|/m = {:.3e}",
                found.value,
                (found.value - closed).abs() / ph.mass
            ),
            Err(err) => println!(
                "n = {n}: no eigenvalue in {:?} (closed-form value {closed:.12}): {err}",
                brackets[n as usize]
            ),
        }
    }
}
