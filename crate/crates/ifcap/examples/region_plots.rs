//! Write region artifacts to disk: the JSON form of a deterministic region
//! and an SVG overlaying no-feedback, single-link, and all-links regions.
//!
//! Run with: `cargo run --example region_plots`

use ifcap::det_model::det_outer_polytope;
use ifcap::svg::render_regions;
use ifcap::DetParams;

fn main() -> std::io::Result<()> {
    let p = DetParams::new(5, 3);
    let c0000 = det_outer_polytope("0000".parse().unwrap(), p).unwrap();
    let c1000 = det_outer_polytope("1000".parse().unwrap(), p).unwrap();
    let c1111 = det_outer_polytope("1111".parse().unwrap(), p).unwrap();

    std::fs::write("region_1000.json", serde_json::to_string_pretty(&c1000)?)?;
    let svg = render_regions(&[
        ("no feedback".to_string(), &c0000),
        ("one direct link (1000)".to_string(), &c1000),
        ("all links (1111)".to_string(), &c1111),
    ]);
    std::fs::write("regions_n5_m3.svg", svg)?;

    println!("wrote region_1000.json and regions_n5_m3.svg");
    println!(
        "vertices of the single-link region: {}",
        c1000
            .vertices
            .iter()
            .map(|v| format!("({}, {})", v.0, v.1))
            .collect::<Vec<_>>()
            .join(" ")
    );
    Ok(())
}
