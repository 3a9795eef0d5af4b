//! Grid sweeps over `(SNR, α)` with `INR = SNR^α`: gap certification and
//! outer-bound evaluation, with CSV output. Grid points are independent and
//! evaluated in parallel; row order in the output is deterministic.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::det_model::FeedbackState;
use crate::gauss_ach::{
    alpha_of, certify_gap, certify_sum_gap, mac_feasible, power_split, rate_allocation, AchError,
    CornerId, GapReport, Violation,
};
use crate::gauss_outer::{
    cross_only_sum_bound, cutset_bound, p2p_rate_bound, sum_rate_bound, two_r1_r2_bound,
    GaussParams,
};

/// Inclusive sweep grid: SNR by decades, α by a fixed step.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Grid {
    pub snr_values: Vec<f64>,
    pub alpha_values: Vec<f64>,
}

impl Grid {
    /// Decades from `snr_lo` to `snr_hi`, α from `alpha_lo` to `alpha_hi`
    /// in steps of `alpha_step`.
    pub fn new(snr_lo: f64, snr_hi: f64, alpha_lo: f64, alpha_hi: f64, alpha_step: f64) -> Grid {
        let mut snr_values = Vec::new();
        if snr_lo <= 0.0 || snr_hi <= 0.0 {
            snr_values.push(snr_lo.max(0.0));
        } else {
            let mut s = snr_lo;
            while s <= snr_hi * (1.0 + 1e-9) {
                snr_values.push(s);
                s *= 10.0;
            }
        }
        let mut alpha_values = Vec::new();
        let mut a = alpha_lo;
        while a <= alpha_hi + 1e-9 {
            alpha_values.push((a * 1e9).round() / 1e9);
            a += alpha_step;
        }
        Grid { snr_values, alpha_values }
    }

    /// The grid the gap constants are certified on: SNR ∈ {10¹..10⁶},
    /// α ∈ {0.1, 0.2, …, 3.0}.
    pub fn certification() -> Grid {
        Grid::new(10.0, 1e6, 0.1, 3.0, 0.1)
    }

    pub fn points(&self) -> Vec<(f64, f64, GaussParams)> {
        let mut out = Vec::new();
        for &snr in &self.snr_values {
            for &alpha in &self.alpha_values {
                let inr = if snr == 0.0 { 0.0 } else { snr.powf(alpha) };
                out.push((snr, alpha, GaussParams::new(snr, inr).unwrap()));
            }
        }
        out
    }
}

/// Result of certifying one state over a grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapSweep {
    pub state: FeedbackState,
    pub budget: f64,
    /// Worst corner gap over the grid.
    pub worst_gap: f64,
    pub worst_point: (f64, f64),
    /// Worst sum gap over the grid (states with a direct link only).
    pub worst_sum_gap: Option<f64>,
    pub pass: bool,
    pub reports: Vec<(f64, f64, GapReport)>,
}

/// Run gap (and, where defined, sum-gap) certification for `state` over the
/// grid against `budget` bits.
pub fn gap_sweep(state: FeedbackState, grid: &Grid, budget: f64) -> Result<GapSweep, AchError> {
    let pts = grid.points();
    let reports: Vec<(f64, f64, GapReport)> = pts
        .par_iter()
        .map(|&(snr, alpha, g)| certify_gap(state, g).map(|r| (snr, alpha, r)))
        .collect::<Result<_, _>>()?;

    let sum_gaps: Option<Vec<f64>> = if state.has_direct() {
        Some(
            pts.par_iter()
                .map(|&(_, _, g)| certify_sum_gap(state, g))
                .collect::<Result<_, _>>()?,
        )
    } else {
        None
    };

    let (mut worst_gap, mut worst_point) = (0.0f64, (0.0, 0.0));
    for (snr, alpha, r) in &reports {
        if r.gap > worst_gap {
            worst_gap = r.gap;
            worst_point = (*snr, *alpha);
        }
    }
    let mut pass = worst_gap <= budget;
    let worst_sum_gap = sum_gaps.map(|v| {
        let mut worst = f64::NEG_INFINITY;
        for (g, (_, _, pt)) in v.iter().zip(pts.iter()) {
            let cap = crate::gauss_ach::sum_gap_budget(*pt);
            if *g > cap {
                pass = false;
            }
            worst = worst.max(*g);
        }
        worst
    });
    Ok(GapSweep {
        state,
        budget,
        worst_gap,
        worst_point,
        worst_sum_gap,
        pass,
        reports,
    })
}

/// CSV rows for a gap sweep: one row per outer-region corner, with the best
/// achievable point chosen for it.
/// Header: `snr,inr,alpha,state,corner,r1,r2,outer_c1,outer_c2,gap_bits,feasible`
pub fn gap_csv(sweep: &GapSweep) -> String {
    let mut out = String::from("snr,inr,alpha,state,corner,r1,r2,outer_c1,outer_c2,gap_bits,feasible\n");
    for (snr, alpha, report) in &sweep.reports {
        for c in &report.corners {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                snr,
                report.inr,
                alpha,
                report.state,
                c.pair.label,
                c.pair.pair.0,
                c.pair.pair.1,
                c.vertex.0,
                c.vertex.1,
                c.gap,
                true
            ));
        }
    }
    out
}

/// CSV of the outer bounds over a grid, one row per bound.
/// Header: `snr,inr,state,bound_name,value_bits,rho_star`
pub fn bounds_csv(state: FeedbackState, grid: &Grid) -> String {
    let rows: Vec<String> = grid
        .points()
        .par_iter()
        .map(|&(snr, _, g)| {
            let mut s = String::new();
            let mut row = |name: &str, value: f64, rho: Option<f64>| {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    snr,
                    g.inr,
                    state,
                    name,
                    value,
                    rho.map(|r| r.to_string()).unwrap_or_default()
                ));
            };
            let srb = sum_rate_bound(g);
            row("sum_rate", srb.value, Some(srb.rho_star));
            if state == "1000".parse().unwrap() || state == "0001".parse().unwrap() {
                let t = two_r1_r2_bound(g);
                row("two_r1_r2", t.value, Some(t.rho_star));
            }
            row("cutset", cutset_bound(g), None);
            row("p2p", p2p_rate_bound(g), None);
            if state.is_cross_only() {
                row("cross_only_sum", cross_only_sum_bound(g), None);
            }
            s
        })
        .collect();
    let mut out = String::from("snr,inr,state,bound_name,value_bits,rho_star\n");
    for r in rows {
        out.push_str(&r);
    }
    out
}

/// Evaluate the decoding constraints of every regime-valid corner over the
/// grid. Returns one row per violated inequality.
pub fn feasibility_violations(
    grid: &Grid,
    slack: f64,
) -> Vec<(f64, f64, &'static str, Violation)> {
    grid.points()
        .par_iter()
        .flat_map(|&(snr, alpha, g)| {
            let regime = alpha_of(g).regime;
            let mut out = Vec::new();
            for c in CornerId::ALL {
                if !c.valid_in(regime) {
                    continue;
                }
                let rs = rate_allocation(c, g).expect("corner is regime-valid");
                let ps = power_split(c, g).expect("corner is regime-valid");
                let (ok, violations) = mac_feasible(&rs, &ps, g, slack);
                if !ok {
                    for v in violations {
                        out.push((snr, alpha, c.name(), v));
                    }
                }
            }
            out
        })
        .collect()
}

/// The per-point sum-gap sweep used by the acceptance gate: returns
/// `(snr, alpha, gap, cap)` rows.
pub fn sum_gap_rows(state: FeedbackState, grid: &Grid) -> Result<Vec<(f64, f64, f64, f64)>, AchError> {
    grid.points()
        .par_iter()
        .map(|&(snr, alpha, g)| {
            certify_sum_gap(state, g).map(|v| (snr, alpha, v, crate::gauss_ach::sum_gap_budget(g)))
        })
        .collect()
}

/// α of a grid point, for reporting.
pub fn point_alpha(g: GaussParams) -> f64 {
    alpha_of(g).value
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shapes() {
        let grid = Grid::certification();
        assert_eq!(grid.snr_values.len(), 6);
        assert_eq!(grid.alpha_values.len(), 30);
        assert_eq!(grid.points().len(), 180);
        let single = Grid::new(100.0, 100.0, 1.0, 1.0, 0.1);
        assert_eq!(single.points().len(), 1);
        let zero = Grid::new(0.0, 0.0, 1.0, 1.0, 0.1);
        assert_eq!(zero.points()[0].2.inr, 0.0);
    }

    #[test]
    fn single_point_sweep() {
        let state: FeedbackState = "1001".parse().unwrap();
        let grid = Grid::new(100.0, 100.0, 1.0, 1.0, 0.1);
        let sweep = gap_sweep(state, &grid, 3.59).unwrap();
        assert!(sweep.pass, "{:?}", sweep.worst_gap);
        let csv = gap_csv(&sweep);
        assert!(csv.lines().count() > 1);
        assert!(csv.starts_with("snr,inr,alpha,state,corner"));
    }

    #[test]
    fn bounds_csv_shape() {
        let grid = Grid::new(100.0, 100.0, 0.5, 0.5, 0.1);
        let csv = bounds_csv("1000".parse().unwrap(), &grid);
        assert!(csv.contains("sum_rate"));
        assert!(csv.contains("two_r1_r2"));
        assert!(csv.contains("cutset"));
    }
}
