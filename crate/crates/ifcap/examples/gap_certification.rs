//! Reproduce the constant-gap guarantees numerically: sweep the
//! certification grid (SNR in decades 10..10^6, alpha 0.1..3.0) and report
//! the worst corner gap per feedback architecture together with its budget,
//! plus the worst sum-rate gaps.
//!
//! Run with: `cargo run --release --example gap_certification`

use ifcap::gauss_ach::gap_budget;
use ifcap::sweep::{gap_sweep, sum_gap_rows, Grid};
use ifcap::FeedbackState;

fn main() {
    let grid = Grid::certification();
    println!(
        "grid: {} SNR values x {} alpha values\n",
        grid.snr_values.len(),
        grid.alpha_values.len()
    );

    println!(
        "{:<7} {:>8} {:>12}  worst at (snr, alpha)",
        "state", "budget", "worst gap"
    );
    let mut all_pass = true;
    for s in ["1000", "1100", "1110", "1001", "1101", "1111", "0110"] {
        let f: FeedbackState = s.parse().unwrap();
        let budget = gap_budget(f).unwrap();
        let sweep = gap_sweep(f, &grid, budget).unwrap();
        all_pass &= sweep.pass;
        println!(
            "{:<7} {:>8.2} {:>12.4}  ({}, {})  {}",
            s,
            budget,
            sweep.worst_gap,
            sweep.worst_point.0,
            sweep.worst_point.1,
            if sweep.pass { "PASS" } else { "FAIL" }
        );
    }

    println!("\nsum-rate gap (budget 4.17 weak / 3.00 strong):");
    let f: FeedbackState = "1000".parse().unwrap();
    let mut worst_weak: f64 = 0.0;
    let mut worst_strong: f64 = 0.0;
    for (_, _, gap, cap) in sum_gap_rows(f, &grid).unwrap() {
        if cap == 3.0 {
            worst_strong = worst_strong.max(gap);
        } else {
            worst_weak = worst_weak.max(gap);
        }
    }
    println!("  weak interference: worst {worst_weak:.4}");
    println!("  strong interference: worst {worst_strong:.4}");

    println!("\noverall: {}", if all_pass { "PASS" } else { "FAIL" });
    std::process::exit(if all_pass { 0 } else { 1 });
}
