//! Enumerates the bound-state spectrum of the flat radial system on a small
//! quantum-number grid and prints one row per level, with the closed-form
//! energy, every independent analytic route, and their worst disagreement.
//!
//! Run with: cargo run --example levels_table

use dirac_coulomb::{enumerate_levels, PhysicalParams};

fn main() {
    let ph = PhysicalParams::new(1.0, 0.5).expect("valid parameters");
    let report = enumerate_levels(&ph, 1.5, 2);

    println!("bound levels for m = {}, e = {}", ph.mass, ph.coupling);
    println!(
        "{:>4} {:>7} {:>2} {:>20} {:>20} {:>13}",
        "2j", "parity", "n", "E (closed form)", "E (series route)", "max residual"
    );
    for rec in &report.levels {
        println!(
            "{:>4} {:>7} {:>2} {:>20.15} {:>20.15} {:>13.3e}",
            rec.qn.two_j(),
            rec.qn.parity_delta(),
            rec.qn.n_radial(),
            rec.energy_closed.value,
            rec.energy_heun_direct.value,
            rec.max_cross_residual,
        );
    }
    for note in &report.notes {
        println!("note: {note}");
    }
}
