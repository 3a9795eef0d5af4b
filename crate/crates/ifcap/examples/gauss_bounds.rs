//! Evaluate the Gaussian outer bounds across the interference exponent α
//! (INR = SNR^α) at fixed SNR, including the correlation that attains each
//! ρ-supremum, and place them next to their deterministic counterparts.
//!
//! Run with: `cargo run --example gauss_bounds`

use ifcap::det_model::{det_sum_capacity, DetParams};
use ifcap::gauss_outer::{cutset_bound, p2p_rate_bound, sum_rate_bound, two_r1_r2_bound};
use ifcap::GaussParams;

fn main() {
    let snr = 1e4;
    println!("SNR = {snr:.0} (~{:.1} bits point-to-point)\n", p2p_rate_bound(GaussParams::new(snr, 0.0).unwrap()));
    println!(
        "{:>5} {:>12} {:>10} {:>8} {:>12} {:>10} {:>10}",
        "alpha", "sum bound", "rho*", "cutset", "2R1+R2", "rho*", "p2p"
    );
    for a10 in (1..=30).step_by(2) {
        let alpha = a10 as f64 / 10.0;
        let g = GaussParams::new(snr, snr.powf(alpha)).unwrap();
        let srb = sum_rate_bound(g);
        let trb = two_r1_r2_bound(g);
        println!(
            "{:>5.1} {:>12.4} {:>10.6} {:>8.3} {:>12.4} {:>10.6} {:>10.4}",
            alpha,
            srb.value,
            srb.rho_star,
            cutset_bound(g),
            trb.value,
            trb.rho_star,
            p2p_rate_bound(g),
        );
    }

    // The bounds track the deterministic model within a constant.
    println!("\nsum bound at SNR = 2^n, INR = 2^m vs the deterministic sum capacity:\n");
    println!("{:>3} {:>3} {:>10} {:>6} {:>7}", "n", "m", "gauss", "det", "diff");
    for (n, m) in [(12u32, 4u32), (12, 8), (12, 12), (8, 12), (4, 12)] {
        let g = GaussParams::new((2f64).powi(n as i32), (2f64).powi(m as i32)).unwrap();
        let gauss = sum_rate_bound(g).value;
        let det = det_sum_capacity("1111".parse().unwrap(), DetParams::new(n, m));
        println!("{n:>3} {m:>3} {gauss:>10.4} {det:>6} {:>7.3}", gauss - det);
    }
}
