//! Computes one bound level through every independent analytic route - the
//! closed form, the confluent-hypergeometric termination condition, and the
//! three confluent-Heun termination routes - and prints the pairwise
//! agreement. The routes share no code past the input validation, so their
//! agreement is a strong end-to-end check.
//!
//! Run with: cargo run --example route_agreement

use dirac_coulomb::heun::{spectrum_via_heun, HeunRoute};
use dirac_coulomb::kummer::spectrum_via_kummer;
use dirac_coulomb::{sommerfeld_energy, PhysicalParams, QuantumNumbers};

fn main() {
    let qn = QuantumNumbers::new(1, 1, 1).expect("valid labels");
    let ph = PhysicalParams::new(1.0, 0.5).expect("valid parameters");
    let n = qn.n_radial();

    let routes: Vec<(&str, f64)> = vec![
        ("closed form", sommerfeld_energy(&qn, &ph, n).unwrap().value),
        (
            "hypergeometric",
            spectrum_via_kummer(&qn, &ph, n).unwrap().value,
        ),
        (
            "heun (direct)",
            spectrum_via_heun(HeunRoute::Direct, &qn, &ph, n)
                .unwrap()
                .value,
        ),
        (
            "heun (case 1)",
            spectrum_via_heun(HeunRoute::Case1, &qn, &ph, n)
                .unwrap()
                .value,
        ),
        (
            "heun (case 2)",
            spectrum_via_heun(HeunRoute::Case2, &qn, &ph, n)
                .unwrap()
                .value,
        ),
    ];

    println!(
        "level 2j = {}, n = {} at m = {}, e = {}",
        qn.two_j(),
        n,
        ph.mass,
        ph.coupling
    );
    for (name, value) in &routes {
        println!("{name:>16}: E = {value:.16}");
    }

    let mut worst = 0.0_f64;
    for i in 0..routes.len() {
        for j in i + 1..routes.len() {
            worst = worst.max((routes[i].1 - routes[j].1).abs() / routes[i].1);
        }
    }
    println!("worst pairwise relative disagreement: {worst:.3e}");
}
