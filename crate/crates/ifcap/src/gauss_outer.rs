//! Gaussian outer bounds and their assembly into per-architecture outer
//! polytopes.
//!
//! Two of the bounds are suprema over the input correlation ρ ∈ [0, 1] of a
//! smooth objective. The objective is not proven unimodal, so the supremum
//! is taken by a coarse 1024-point scan followed by golden-section
//! refinement of the best bracket down to |Δρ| ≤ 1e-10. All logs are base 2
//! and every bound is in bits per channel use.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::det_model::FeedbackState;
use crate::rate_region::{build_polytope, HalfPlane, RatePolytope};

/// Linear (not dB) signal- and interference-to-noise power ratios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussParams {
    pub snr: f64,
    pub inr: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum GaussError {
    #[error("SNR and INR must be finite and nonnegative, got snr={snr}, inr={inr}")]
    InvalidParams { snr: f64, inr: f64 },
    #[error("uncharacterized feedback state {0}")]
    Uncharacterized(FeedbackState),
}

impl GaussParams {
    pub fn new(snr: f64, inr: f64) -> Result<Self, GaussError> {
        if !(snr.is_finite() && inr.is_finite() && snr >= 0.0 && inr >= 0.0) {
            return Err(GaussError::InvalidParams { snr, inr });
        }
        Ok(GaussParams { snr, inr })
    }

    /// Convenience constructor from dB values.
    pub fn from_db(snr_db: f64, inr_db: f64) -> Result<Self, GaussError> {
        GaussParams::new(10f64.powf(snr_db / 10.0), 10f64.powf(inr_db / 10.0))
    }
}

/// Result of a ρ-supremum: the maximizer, the value in bits, and how many
/// objective evaluations the search spent.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RhoOpt {
    pub rho_star: f64,
    #[serde(rename = "value_bits")]
    pub value: f64,
    pub iterations: u32,
}

fn log2(x: f64) -> f64 {
    x.log2()
}

/// Sum-rate objective at correlation `rho`:
/// `log2(1 + (1−ρ²)·SNR / (1 + (1−ρ²)·INR)) + log2(1 + SNR + INR + 2ρ√(SNR·INR))`.
pub fn sum_rate_objective(g: GaussParams, rho: f64) -> f64 {
    let one_minus = 1.0 - rho * rho;
    let first = log2(1.0 + one_minus * g.snr / (1.0 + one_minus * g.inr));
    let second = log2(1.0 + g.snr + g.inr + 2.0 * rho * (g.snr * g.inr).sqrt());
    first + second
}

/// `2R1 + R2` objective: the sum-rate objective plus a third term whose log
/// argument is a conditional variance plus one. The printed form of that
/// argument can dip fractionally below 1 for INR < 1, so it is floored at
/// `1 − 1e-12` before taking the log.
pub fn two_r1_r2_objective(g: GaussParams, rho: f64) -> f64 {
    let third_arg = 1.0
        + g.inr
        + (g.snr - (1.0 + rho * rho) * g.inr + 2.0 * rho * (g.snr * g.inr).sqrt())
            / (1.0 + g.inr);
    let third = log2(third_arg.max(1.0 - 1e-12).max(1e-300));
    sum_rate_objective(g, rho) + third
}

const GRID_POINTS: usize = 1024;
const GOLDEN_TOL: f64 = 1e-10;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Coarse grid over [0, 1] followed by golden-section refinement around the
/// best grid cell.
fn maximize_over_rho(f: impl Fn(f64) -> f64) -> RhoOpt {
    let mut evals = 0u32;
    let mut eval = |x: f64| {
        evals += 1;
        f(x)
    };

    let mut best_i = 0usize;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=GRID_POINTS {
        let x = i as f64 / GRID_POINTS as f64;
        let v = eval(x);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }

    // Bracket one cell on each side of the best grid point.
    let mut lo = (best_i.saturating_sub(1)) as f64 / GRID_POINTS as f64;
    let mut hi = ((best_i + 1).min(GRID_POINTS)) as f64 / GRID_POINTS as f64;

    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = eval(x1);
    let mut f2 = eval(x2);
    while hi - lo > GOLDEN_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = eval(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = eval(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    let fm = eval(mid);
    let (rho_star, value) = [(mid, fm), (x1, f1), (x2, f2)]
        .into_iter()
        .fold((best_i as f64 / GRID_POINTS as f64, best_v), |acc, c| {
            if c.1 > acc.1 {
                c
            } else {
                acc
            }
        });
    RhoOpt {
        rho_star,
        value,
        iterations: evals,
    }
}

/// Sum-rate outer bound for any architecture with at least one feedback
/// link: `sup_ρ` of [`sum_rate_objective`].
pub fn sum_rate_bound(g: GaussParams) -> RhoOpt {
    maximize_over_rho(|rho| sum_rate_objective(g, rho))
}

/// `2R1 + R2` outer bound for the single-direct-link architecture:
/// `sup_ρ` of [`two_r1_r2_objective`].
pub fn two_r1_r2_bound(g: GaussParams) -> RhoOpt {
    maximize_over_rho(|rho| two_r1_r2_objective(g, rho))
}

/// `log2(1 + SNR)`: cap on the rate of a user whose interfering receiver
/// has no feedback link to that user's transmitter.
pub fn p2p_rate_bound(g: GaussParams) -> f64 {
    log2(1.0 + g.snr)
}

/// `2·log2(1 + SNR)`: sum cap when only the two cross feedback links exist
/// (two-way point-to-point decomposition).
pub fn cross_only_sum_bound(g: GaussParams) -> f64 {
    2.0 * log2(1.0 + g.snr)
}

/// `log2(1 + SNR + INR)`: the per-user cutset bound.
pub fn cutset_bound(g: GaussParams) -> f64 {
    log2(1.0 + g.snr + g.inr)
}

/// Outer polytope of a characterized feedback architecture.
pub fn gauss_outer_polytope(f: FeedbackState, g: GaussParams) -> Result<RatePolytope, GaussError> {
    let (planes, mirrored) = gauss_planes(f, g)?;
    let region = build_polytope(&planes).expect("Gaussian outer regions are bounded");
    Ok(if mirrored { region.reflected() } else { region })
}

fn gauss_planes(f: FeedbackState, g: GaussParams) -> Result<(Vec<HalfPlane>, bool), GaussError> {
    let cut = cutset_bound(g);
    let p2p = p2p_rate_bound(g);
    let plane = |a: f64, b: f64, c: f64| HalfPlane::new(a, b, c);

    if f.f11 && f.f22 {
        let srb = sum_rate_bound(g).value;
        return Ok((
            vec![plane(1.0, 0.0, cut), plane(0.0, 1.0, cut), plane(1.0, 1.0, srb)],
            false,
        ));
    }
    let canonical = |f: FeedbackState| (f.f11, f.f12, f.f21, f.f22);
    let (mirrored, key) = match canonical(f) {
        (true, _, _, _) => (false, canonical(f)),
        (false, false, false, false) => (false, canonical(f)),
        (false, true, true, false) => (false, canonical(f)),
        _ => (true, canonical(f.mirrored())),
    };
    let planes = match key {
        (true, false, false, false) => {
            let srb = sum_rate_bound(g).value;
            let trb = two_r1_r2_bound(g).value;
            vec![
                plane(1.0, 0.0, p2p),
                plane(0.0, 1.0, cut),
                plane(1.0, 1.0, srb),
                plane(2.0, 1.0, trb),
            ]
        }
        (true, true, false, false) | (true, true, true, false) => {
            let srb = sum_rate_bound(g).value;
            vec![plane(1.0, 0.0, p2p), plane(0.0, 1.0, cut), plane(1.0, 1.0, srb)]
        }
        (false, true, true, false) => {
            // Both sum caps apply; the polytope takes the min.
            let srb = sum_rate_bound(g).value;
            vec![
                plane(1.0, 0.0, p2p),
                plane(0.0, 1.0, p2p),
                plane(1.0, 1.0, srb),
                plane(1.0, 1.0, cross_only_sum_bound(g)),
            ]
        }
        _ => return Err(GaussError::Uncharacterized(f)),
    };
    Ok((planes, mirrored))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det_model::DetParams;
    use crate::rate_region::{RatePair, TOL};

    fn fs(s: &str) -> FeedbackState {
        s.parse().unwrap()
    }

    /// Test-only dense-grid oracle, independent of the golden-section path.
    fn grid_oracle(f: impl Fn(f64) -> f64, points: usize) -> f64 {
        (0..=points)
            .map(|i| f(i as f64 / points as f64))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn sum_rate_closed_forms() {
        let g = GaussParams::new(100.0, 0.0).unwrap();
        let r = sum_rate_bound(g);
        assert!((r.value - 2.0 * 101f64.log2()).abs() < 1e-12);
        assert!(r.rho_star.abs() < 1e-6);

        let g = GaussParams::new(0.0, 15.0).unwrap();
        let r = sum_rate_bound(g);
        assert!((r.value - 4.0).abs() < 1e-12);
    }

    #[test]
    fn two_r1_r2_closed_forms() {
        let g = GaussParams::new(0.0, 0.0).unwrap();
        assert!(two_r1_r2_bound(g).value.abs() < 1e-12);

        let g = GaussParams::new(100.0, 0.0).unwrap();
        assert!((two_r1_r2_bound(g).value - 3.0 * 101f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn optimizer_matches_grid_oracle() {
        for (snr, inr) in [
            (100.0, 10.0),
            (1000.0, 31.6),
            (10.0, 1000.0),
            (1e6, 300.0),
            (3.0, 7.0),
        ] {
            let g = GaussParams::new(snr, inr).unwrap();
            let oracle = grid_oracle(|r| sum_rate_objective(g, r), 200_000);
            assert!(
                (sum_rate_bound(g).value - oracle).abs() < 1e-6,
                "sum bound at snr={snr}, inr={inr}"
            );
            let oracle = grid_oracle(|r| two_r1_r2_objective(g, r), 200_000);
            assert!(
                (two_r1_r2_bound(g).value - oracle).abs() < 1e-6,
                "2R1+R2 bound at snr={snr}, inr={inr}"
            );
        }
    }

    #[test]
    fn optimizer_dominates_probe_points() {
        for exp_s in 0..=6 {
            for exp_i in 0..=6 {
                let g = GaussParams::new(10f64.powi(exp_s), 10f64.powi(exp_i)).unwrap();
                let v = sum_rate_bound(g).value;
                for rho in [0.0, 0.25, 0.5, 0.75, 1.0] {
                    assert!(v >= sum_rate_objective(g, rho) - 1e-9);
                }
                let v = two_r1_r2_bound(g).value;
                for rho in [0.0, 0.25, 0.5, 0.75, 1.0] {
                    assert!(v >= two_r1_r2_objective(g, rho) - 1e-9);
                }
            }
        }
    }

    #[test]
    fn monotone_in_snr() {
        for inr in [1.0, 30.0, 1000.0] {
            let mut prev_sum = 0.0;
            let mut prev_two = 0.0;
            for k in 0..=12 {
                let g = GaussParams::new(10f64.powf(k as f64 / 2.0), inr).unwrap();
                let s = sum_rate_bound(g).value;
                let t = two_r1_r2_bound(g).value;
                assert!(s >= prev_sum - 1e-9);
                assert!(t >= prev_two - 1e-9);
                prev_sum = s;
                prev_two = t;
            }
        }
    }

    #[test]
    fn simple_bounds() {
        let g = |s, i| GaussParams::new(s, i).unwrap();
        assert_eq!(p2p_rate_bound(g(1.0, 0.0)), 1.0);
        assert_eq!(p2p_rate_bound(g(0.0, 0.0)), 0.0);
        assert_eq!(p2p_rate_bound(g(255.0, 0.0)), 8.0);
        assert_eq!(cross_only_sum_bound(g(1.0, 0.0)), 2.0);
        assert_eq!(cross_only_sum_bound(g(0.0, 9.0)), 0.0);
        assert_eq!(cross_only_sum_bound(g(3.0, 0.0)), 4.0);
        assert_eq!(cutset_bound(g(1.0, 2.0)), 2.0);
        assert_eq!(cutset_bound(g(0.0, 0.0)), 0.0);
        assert!((cutset_bound(g(100.0, 10.0)) - 111f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn outer_polytope_shapes() {
        let g = GaussParams::new(100.0, 10.0).unwrap();
        let p = gauss_outer_polytope(fs("1000"), g).unwrap();
        assert_eq!(p.planes.len(), 4);
        for v in &p.vertices {
            assert!(p.contains(*v, TOL));
        }

        let degenerate = gauss_outer_polytope(fs("1111"), GaussParams::new(0.0, 0.0).unwrap())
            .unwrap();
        assert_eq!(degenerate.vertices, vec![RatePair(0.0, 0.0)]);

        // Dominant cross bound turns (0110) into a box.
        let g = GaussParams::new(10.0, 1e6).unwrap();
        let p = gauss_outer_polytope(fs("0110"), g).unwrap();
        let cap = 11f64.log2();
        assert_eq!(p.vertices.len(), 4);
        assert!(p.contains(RatePair(cap, cap), TOL));
        assert!(!p.contains(RatePair(cap + 0.01, cap), TOL));

        assert!(gauss_outer_polytope(fs("0010"), g).is_err());
        assert!(gauss_outer_polytope(fs("0000"), g).is_err());
    }

    #[test]
    fn both_direct_states_identical() {
        let g = GaussParams::new(250.0, 40.0).unwrap();
        let full = gauss_outer_polytope(fs("1111"), g).unwrap();
        for s in ["1001", "1101", "1011"] {
            let p = gauss_outer_polytope(fs(s), g).unwrap();
            assert!(p.same_vertices(&full, 0.0), "{s}");
        }
    }

    #[test]
    fn deterministic_correspondence_sample() {
        // Constant-offset check against the deterministic sum capacity at
        // SNR = 2^n, INR = 2^m.
        for (n, m) in [(5u32, 3u32), (3, 7), (10, 10), (0, 4)] {
            let g = GaussParams::new((2f64).powi(n as i32), (2f64).powi(m as i32)).unwrap();
            let det = crate::det_model::det_sum_capacity(fs("1111"), DetParams::new(n, m));
            let gauss = sum_rate_bound(g).value;
            assert!((gauss - det).abs() <= 4.0, "n={n} m={m}: {gauss} vs {det}");
        }
    }
}
