//! Exact deterministic capacity regions across feedback architectures:
//! build the polytopes, compare them, and list the corner points that only
//! feedback makes achievable.
//!
//! Run with: `cargo run --example det_regions`

use ifcap::det_model::{corner_gain_points, det_outer_polytope, det_sum_capacity, DetParams};
use ifcap::FeedbackState;

fn main() {
    let p = DetParams::new(5, 3);
    println!("deterministic channel: n = {}, m = {}\n", p.n, p.m);

    println!("{:<8} {:>12}  vertices", "state", "sum cap");
    for s in ["0000", "1000", "1100", "1001", "1111", "0110"] {
        let f: FeedbackState = s.parse().unwrap();
        let region = det_outer_polytope(f, p).unwrap();
        let verts: Vec<String> = region
            .vertices
            .iter()
            .map(|v| format!("({}, {})", v.0, v.1))
            .collect();
        println!(
            "{:<8} {:>12}  {}",
            s,
            det_sum_capacity(f, p),
            verts.join(" ")
        );
    }

    // All architectures with both direct links share one region.
    let c1001 = det_outer_polytope("1001".parse().unwrap(), p).unwrap();
    let c1111 = det_outer_polytope("1111".parse().unwrap(), p).unwrap();
    println!(
        "\nC(1001) == C(1111): {}",
        c1001.same_vertices(&c1111, 0.0)
    );

    // One direct link is strictly weaker: find a witness rate pair.
    let c1000 = det_outer_polytope("1000".parse().unwrap(), p).unwrap();
    if let Some(w) = c1001.subset_witness(&c1000, 1e-9) {
        println!(
            "C(1000) is strictly smaller: ({}, {}) is in C(1001) but not C(1000)",
            w.0, w.1
        );
    }

    // Corner points unreachable without feedback.
    for s in ["1000", "1001"] {
        let gains = corner_gain_points(s.parse().unwrap(), p).unwrap();
        let txt: Vec<String> = gains.iter().map(|v| format!("({}, {})", v.0, v.1)).collect();
        println!("feedback-only corners of {s}: {}", txt.join(" "));
    }
}
