//! Static SVG plots of rate-region polytopes: fixed 640×640 viewport,
//! linear axes auto-scaled to the regions' bounding box plus a 10% margin,
//! labeled vertices, and up to three overlaid regions for side-by-side
//! comparisons.

use crate::rate_region::RatePolytope;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

/// Render one or more regions (at most three) into an SVG 1.1 document.
pub fn render_regions(regions: &[(String, &RatePolytope)]) -> String {
    assert!(!regions.is_empty() && regions.len() <= 3, "1..=3 regions");

    let mut max_r = 1e-9f64;
    for (_, p) in regions {
        for v in &p.vertices {
            max_r = max_r.max(v.0).max(v.1);
        }
    }
    let scale_max = max_r * 1.1;
    let plot = SIZE - 2.0 * MARGIN;
    let sx = |r1: f64| MARGIN + r1 / scale_max * plot;
    let sy = |r2: f64| SIZE - MARGIN - r2 / scale_max * plot;

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    ));
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Axes with five ticks each.
    s.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        sx(0.0),
        sy(0.0),
        sx(scale_max),
        sy(0.0)
    ));
    s.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        sx(0.0),
        sy(0.0),
        sx(0.0),
        sy(scale_max)
    ));
    for k in 1..=5 {
        let r = scale_max * k as f64 / 5.0;
        s.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/><text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{:.2}</text>\n",
            sx(r), sy(0.0) - 4.0, sx(r), sy(0.0) + 4.0, sx(r), sy(0.0) + 18.0, r
        ));
        s.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/><text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{:.2}</text>\n",
            sx(0.0) - 4.0, sy(r), sx(0.0) + 4.0, sy(r), sx(0.0) - 8.0, sy(r) + 4.0, r
        ));
    }
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">R1 (bits)</text>\n",
        SIZE / 2.0,
        SIZE - 14.0
    ));
    s.push_str(&format!(
        "<text x=\"16\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">R2 (bits)</text>\n",
        SIZE / 2.0,
        SIZE / 2.0
    ));

    for (k, (label, region)) in regions.iter().enumerate() {
        let color = COLORS[k];
        let pts: Vec<String> = region
            .vertices
            .iter()
            .map(|v| format!("{:.4},{:.4}", sx(v.0), sy(v.1)))
            .collect();
        s.push_str(&format!(
            "<polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.15\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            pts.join(" ")
        ));
        for v in &region.vertices {
            s.push_str(&format!(
                "<circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"3.5\" fill=\"{color}\"/>\n",
                sx(v.0),
                sy(v.1)
            ));
            s.push_str(&format!(
                "<text x=\"{:.4}\" y=\"{:.4}\" font-size=\"11\" fill=\"{color}\">({}, {})</text>\n",
                sx(v.0) + 6.0,
                sy(v.1) - 6.0,
                trim(v.0),
                trim(v.1)
            ));
        }
        // Legend entry.
        s.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"14\" height=\"14\" fill=\"{color}\" fill-opacity=\"0.5\"/><text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n",
            SIZE - 180.0,
            24.0 + 20.0 * k as f64,
            SIZE - 160.0,
            35.0 + 20.0 * k as f64,
            label
        ));
    }
    s.push_str("</svg>\n");
    s
}

fn trim(v: f64) -> String {
    if (v - v.round()).abs() < 1e-9 {
        format!("{}", v.round() as i64)
    } else {
        format!("{v:.3}")
    }
}
