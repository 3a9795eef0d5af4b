//! Drive the bit-exact block simulator: print a short transcript of the
//! relay scheme at n = 1, m = 3, then sweep the block count to watch the
//! achieved rates converge to the corner points.
//!
//! Run with: `cargo run --example simulate_relay`

use ifcap::det_sim::{simulate, trace, SchemeId};
use ifcap::DetParams;

fn main() {
    // Strong interference: all traffic routed T2 -> D1 -> feedback -> T1 -> D2.
    let p = DetParams::new(1, 3);
    println!("strong-relay-only transcript at n = 1, m = 3, B = 4:\n");
    println!("{:>5}  {:<4} {:<4} {:<4} {:<4}  decoded (d2)", "block", "x1", "x2", "y1", "y2");
    for r in trace(SchemeId::StrongRelayOnly, p, 4, 1).unwrap() {
        println!(
            "{:>5}  {:<4} {:<4} {:<4} {:<4}  {}",
            r.index,
            r.x1,
            r.x2,
            r.y1,
            r.y2,
            r.d2_decodes.join(",")
        );
    }

    println!("\nconvergence of achieved rates to the corner points:\n");
    let cases = [
        (SchemeId::WeakR2Sum, DetParams::new(5, 3)),
        (SchemeId::WeakSum2R, DetParams::new(5, 3)),
        (SchemeId::StrongRelayOnly, DetParams::new(1, 3)),
        (SchemeId::StrongR1Sum, DetParams::new(2, 7)),
    ];
    for (scheme, p) in cases {
        let target = scheme.target(p);
        println!(
            "{} at n={}, m={} -> target ({}, {})",
            scheme.name(),
            p.n,
            p.m,
            target.0,
            target.1
        );
        for b in [2u32, 10, 100, 1000] {
            let res = simulate(scheme, p, b, 7).unwrap();
            assert!(res.decode_ok);
            println!(
                "  B = {b:>4}: achieved ({:.4}, {:.4})",
                res.achieved.0, res.achieved.1
            );
        }
    }
}
