//! Inspect the achievable-scheme internals: per-regime power splits, layer
//! rates, and the decoding constraints that certify them, for one corner
//! point as interference grows.
//!
//! Run with: `cargo run --example power_splits`

use ifcap::gauss_ach::{
    achievable_pair, alpha_of, mac_feasible, power_split, rate_allocation, CornerId,
};
use ifcap::GaussParams;

fn main() {
    let snr = 1e5;
    println!("corner R2 ∩ sum-rate at SNR = {snr:.0}:\n");
    println!(
        "{:>5} {:>10} {:>8} {:>8} {:>8} {:>9} {:>9} {:>9}  feasible",
        "alpha", "INR", "lam_p", "lam_c", "lam_r", "Rp", "Rr", "R1+R2"
    );
    for a10 in [2, 5, 8, 10, 15, 25] {
        let alpha = a10 as f64 / 10.0;
        let g = GaussParams::new(snr, snr.powf(alpha)).unwrap();
        let ps = power_split(CornerId::R2Sum, g).unwrap();
        let rs = rate_allocation(CornerId::R2Sum, g).unwrap();
        let (ok, _) = mac_feasible(&rs, &ps, g, 1e-9);
        println!(
            "{:>5.1} {:>10.3e} {:>8.5} {:>8.5} {:>8.5} {:>9.4} {:>9.4} {:>9.4}  {}",
            alpha,
            g.inr,
            ps.u2.p,
            ps.u2.c,
            ps.u2.r,
            rs.u2.p,
            rs.u2.r,
            rs.pair().sum(),
            ok
        );
    }

    // All corners defined in a weak and a strong regime.
    for (snr, inr) in [(1e5, 1e2), (1e2, 1e5)] {
        let g = GaussParams::new(snr, inr).unwrap();
        let a = alpha_of(g);
        println!(
            "\nSNR = {snr:.0}, INR = {inr:.0} (alpha = {:.2}, {:?}):",
            a.value, a.regime
        );
        for c in CornerId::ALL {
            match achievable_pair(c, g) {
                Ok(p) => println!("  {:<8} -> ({:.4}, {:.4})", c.name(), p.0, p.1),
                Err(e) => println!("  {:<8} -> {e}", c.name()),
            }
        }
    }
}
