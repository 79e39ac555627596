//! Shows the polynomial-termination mechanism of the confluent-Heun route:
//! at a closed-form bound energy the canonical series coefficient c_{n+1}
//! collapses, leaving a degree-n polynomial. The n = 0 cell demonstrates the
//! opposite - the termination residual vanishes but the series does not
//! truncate, which is why this branch has no n = 0 bound state.
//!
//! Run with: cargo run --example heun_termination

use dirac_coulomb::heun::{heun_series, params_direct, polynomial_residual};
use dirac_coulomb::{sommerfeld_energy, PhysicalParams, QuantumNumbers};

fn main() {
    let ph = PhysicalParams::new(1.0, 0.5).expect("valid parameters");

    for n in 0..=3u32 {
        let qn = QuantumNumbers::new(1, 1, n).expect("valid labels");
        let energy = sommerfeld_energy(&qn, &ph, n).unwrap();
        let params = params_direct(&qn, &ph, energy).unwrap();
        let residual = polynomial_residual(&params, n);
        let series = heun_series(&params, n as usize + 3).unwrap();

        println!("n = {n}: E = {:.15}", energy.value);
        println!("  termination residual: {:.3e}", residual.abs());
        print!("  series coefficients:");
        for (k, c) in series.coefficients.iter().enumerate() {
            print!(" c{k} = {c:.6e}");
            if k > n as usize + 1 {
                break;
            }
        }
        println!();
        let head = series.coefficients[..=n as usize]
            .iter()
            .fold(0.0_f64, |acc, c| acc.max(c.abs()));
        let ratio = series.coefficients[n as usize + 1].abs() / head;
        if ratio < 1e-9 {
            println!("  -> truncates after degree {n} (|c_(n+1)|/max = {ratio:.3e})");
        } else {
            println!(
                "  -> does NOT truncate (|c_(n+1)|/max = {ratio:.3e}): \
                 no bound state carries this label on this branch"
            );
        }
        println!();
    }
}
