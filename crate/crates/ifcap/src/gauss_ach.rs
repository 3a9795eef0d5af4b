//! Achievable rate pairs for the Gaussian channel: explicit power splits per
//! corner point and interference regime, the multiple-access decoding
//! constraints that certify them, and constant-gap certification against the
//! outer polytopes.
//!
//! Encoding follows the three-layer split (private / common / relay). The
//! relay layer originates at transmitter 2, is decoded at transmitter 1 from
//! its feedback signal, and is retransmitted one block later, so the relay
//! stream has a single rate and counts toward user 2's total:
//! `R1 = R1p + R1c`, `R2 = R2p + R2c + R2r`.
//!
//! Feasibility of an allocation is an explicit list of inequalities:
//! the seven joint-decoding constraints of the three-stream MAC at each
//! receiver (with the stream powers appropriate to the interference
//! regime), the three relay-decoding constraints at transmitter 1, and one
//! private-stream constraint per user. `mac_feasible` evaluates all of them
//! and names the violated ones.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::det_model::FeedbackState;
use crate::gauss_outer::{
    cutset_bound, gauss_outer_polytope, p2p_rate_bound, sum_rate_bound, GaussError, GaussParams,
};
use crate::rate_region::RatePair;

/// Interference regime, classified by direct power comparisons so that
/// `SNR ≤ 1` never divides by a vanishing log: `INR² vs SNR` separates
/// α < 1/2, `INR³ vs SNR²` separates α < 2/3, `INR vs SNR²` separates
/// α ≤ 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// α ∈ [0, 1/2)
    A0Half,
    /// α ∈ [1/2, 2/3)
    HalfTwoThirds,
    /// α ∈ [2/3, 1]
    TwoThirdsOne,
    /// α ∈ (1, 2]
    OneTwo,
    /// α ∈ (2, ∞)
    TwoInf,
}

impl Regime {
    pub fn is_weak(&self) -> bool {
        matches!(self, Regime::A0Half | Regime::HalfTwoThirds | Regime::TwoThirdsOne)
    }
}

/// Interference exponent `α` with `INR = SNR^α`, plus its regime tag.
/// `value` is `NaN` when `SNR ≤ 1` (the tag is still meaningful).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Alpha {
    pub value: f64,
    pub regime: Regime,
}

pub fn alpha_of(g: GaussParams) -> Alpha {
    let regime = if g.inr <= g.snr {
        if g.inr * g.inr < g.snr {
            Regime::A0Half
        } else if g.inr * g.inr * g.inr < g.snr * g.snr {
            Regime::HalfTwoThirds
        } else {
            Regime::TwoThirdsOne
        }
    } else if g.inr <= g.snr * g.snr {
        Regime::OneTwo
    } else {
        Regime::TwoInf
    };
    let value = if g.snr > 1.0 && g.inr > 0.0 {
        g.inr.ln() / g.snr.ln()
    } else {
        f64::NAN
    };
    Alpha { value, regime }
}

/// Which outer-bound corner an allocation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CornerId {
    /// Intersection of the `R2` cap with the sum-rate bound.
    R2Sum,
    /// Intersection of the sum-rate bound with the `2R1 + R2` bound (weak
    /// interference only).
    Sum2R,
    /// Intersection of the `2R1 + R2` bound with the `R1` cap (weak only).
    TwoRR1,
    /// Intersection of the `R1` cap with the sum-rate bound (strong only).
    R1Sum,
}

impl CornerId {
    pub const ALL: [CornerId; 4] = [
        CornerId::R2Sum,
        CornerId::Sum2R,
        CornerId::TwoRR1,
        CornerId::R1Sum,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CornerId::R2Sum => "r2-sum",
            CornerId::Sum2R => "sum-2r",
            CornerId::TwoRR1 => "2r-r1",
            CornerId::R1Sum => "r1-sum",
        }
    }

    pub fn valid_in(&self, regime: Regime) -> bool {
        match self {
            CornerId::R2Sum => true,
            CornerId::Sum2R | CornerId::TwoRR1 => regime.is_weak(),
            CornerId::R1Sum => !regime.is_weak(),
        }
    }
}

/// Per-layer power fractions for one user.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LayerFractions {
    pub p: f64,
    pub c: f64,
    pub r: f64,
}

impl LayerFractions {
    const ZERO: LayerFractions = LayerFractions { p: 0.0, c: 0.0, r: 0.0 };
    fn total(&self) -> f64 {
        self.p + self.c + self.r
    }
}

/// Power split for both users. Each user's fractions sum to at most 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerSplit {
    pub u1: LayerFractions,
    pub u2: LayerFractions,
}

/// Per-layer rates in bits. The relay stream is single-rate
/// (`u1.r == u2.r`); it contributes to user 2's total only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateSplit {
    pub u1: LayerFractions,
    pub u2: LayerFractions,
}

impl RateSplit {
    pub fn r1(&self) -> f64 {
        self.u1.p + self.u1.c
    }
    pub fn r2(&self) -> f64 {
        self.u2.p + self.u2.c + self.u2.r
    }
    pub fn pair(&self) -> RatePair {
        RatePair(self.r1(), self.r2())
    }
}

#[derive(Debug, Error)]
pub enum AchError {
    #[error("corner {corner} is not defined in regime {regime:?}")]
    RegimeMismatch { corner: &'static str, regime: Regime },
    #[error("allocation infeasible; violated: {}",
            .violations.iter().map(|v| v.name.clone()).collect::<Vec<_>>().join(", "))]
    Infeasible { violations: Vec<Violation> },
    #[error("state {0} has no direct feedback link")]
    NoDirectLink(FeedbackState),
    #[error(transparent)]
    Outer(#[from] GaussError),
}

/// One violated decoding inequality: `lhs ≤ rhs + slack` failed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
}

fn log2p(x: f64) -> f64 {
    (1.0 + x).log2()
}

fn pos(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// Power split for a corner in the regime of `g`.
pub fn power_split(c: CornerId, g: GaussParams) -> Result<PowerSplit, AchError> {
    let regime = alpha_of(g).regime;
    if !c.valid_in(regime) {
        return Err(AchError::RegimeMismatch { corner: c.name(), regime });
    }
    let lp = 1f64.min(1.0 / g.inr); // min(1, 1/INR); 1 when INR = 0
    let sym = |f: LayerFractions| PowerSplit { u1: f, u2: f };
    let split = match (c, regime) {
        (CornerId::R2Sum, r) if r.is_weak() => {
            sym(LayerFractions { p: lp, c: 0.0, r: 1.0 - lp })
        }
        (CornerId::R2Sum, _) => sym(LayerFractions { p: 0.0, c: 0.0, r: 1.0 }),
        (CornerId::Sum2R, Regime::A0Half) => {
            sym(LayerFractions { p: lp, c: 0.0, r: 1.0 - lp })
        }
        (CornerId::Sum2R, Regime::HalfTwoThirds) => sym(LayerFractions {
            p: lp,
            c: (1.0 - lp) / 2.0,
            r: (1.0 - lp) / 2.0,
        }),
        (CornerId::Sum2R, _) => sym(LayerFractions { p: lp, c: 1.0 - lp, r: 0.0 }),
        (CornerId::TwoRR1, Regime::A0Half) => PowerSplit {
            u1: LayerFractions { p: 1.0, c: 0.0, r: 0.0 },
            u2: LayerFractions { p: lp, c: 0.0, r: 0.0 },
        },
        // Remaining weak sub-regimes: the trivially achievable point
        // (log2(1 + SNR), 0); user 2 stays silent.
        (CornerId::TwoRR1, _) => PowerSplit {
            u1: LayerFractions { p: 1.0, c: 0.0, r: 0.0 },
            u2: LayerFractions::ZERO,
        },
        // Full-power common streams; the deliberate common-only joint
        // decode that the feasibility analysis certifies for α ∈ (1, 2].
        (CornerId::R1Sum, Regime::OneTwo) => sym(LayerFractions { p: 0.0, c: 1.0, r: 0.0 }),
        (CornerId::R1Sum, _) => sym(LayerFractions { p: 0.0, c: 0.5, r: 0.5 }),
    };
    debug_assert!(split.u1.total() <= 1.0 + 1e-12 && split.u2.total() <= 1.0 + 1e-12);
    Ok(split)
}

/// Rate allocation for a corner in the regime of `g`. Formula values are
/// clamped at zero via `(·)⁺`.
pub fn rate_allocation(c: CornerId, g: GaussParams) -> Result<RateSplit, AchError> {
    let regime = alpha_of(g).regime;
    if !c.valid_in(regime) {
        return Err(AchError::RegimeMismatch { corner: c.name(), regime });
    }
    if g.snr == 0.0 && g.inr == 0.0 {
        return Ok(RateSplit { u1: LayerFractions::ZERO, u2: LayerFractions::ZERO });
    }
    let (s, i) = (g.snr, g.inr);
    let lp = 1f64.min(1.0 / i);
    // Private rate at the treat-interference-as-noise level; equals
    // log2(1 + SNR/(2·INR)) whenever INR ≥ 1.
    let rp = log2p(lp * s / (lp * i + 1.0));
    let sym = |f: LayerFractions| RateSplit { u1: f, u2: f };
    let rs = match (c, regime) {
        (CornerId::R2Sum, r) if r.is_weak() => sym(LayerFractions {
            p: rp,
            c: 0.0,
            r: pos(i.log2() - 3f64.log2()),
        }),
        (CornerId::R2Sum, _) => sym(LayerFractions { p: 0.0, c: 0.0, r: log2p(i) }),
        (CornerId::Sum2R, Regime::A0Half) => sym(LayerFractions {
            p: rp,
            c: 0.0,
            r: pos(i.log2() - 3f64.log2()),
        }),
        (CornerId::Sum2R, Regime::HalfTwoThirds) => sym(LayerFractions {
            p: rp,
            c: pos(log2p(i * i / s) - 2.0),
            r: pos(log2p(s * s / (i * i * i)) - 2.0),
        }),
        (CornerId::Sum2R, _) => RateSplit {
            u1: LayerFractions { p: rp, c: pos((i * i / s).log2() - 3f64.log2()), r: 0.0 },
            u2: LayerFractions { p: rp, c: pos((s / i).log2() - 1.5f64.log2()), r: 0.0 },
        },
        (CornerId::TwoRR1, Regime::A0Half) => RateSplit {
            u1: LayerFractions { p: pos(s.log2() - 1.0), c: 0.0, r: 0.0 },
            u2: LayerFractions { p: pos((s / (i * i)).log2() - 1.0), c: 0.0, r: 0.0 },
        },
        (CornerId::TwoRR1, _) => RateSplit {
            u1: LayerFractions { p: log2p(s), c: 0.0, r: 0.0 },
            u2: LayerFractions::ZERO,
        },
        (CornerId::R1Sum, Regime::OneTwo) => RateSplit {
            u1: LayerFractions { p: 0.0, c: pos(s.log2()), r: 0.0 },
            u2: LayerFractions { p: 0.0, c: pos((i / s).log2()), r: 0.0 },
        },
        (CornerId::R1Sum, _) => sym(LayerFractions {
            p: 0.0,
            c: pos(s.log2() - 1.0),
            r: pos((i / (s * s)).log2() - 1.0),
        }),
    };
    Ok(rs)
}

/// Evaluate every decoding inequality for the allocation. Returns whether
/// all hold with the given slack (in bits), plus the violated ones.
pub fn mac_feasible(
    rs: &RateSplit,
    ps: &PowerSplit,
    g: GaussParams,
    slack: f64,
) -> (bool, Vec<Violation>) {
    assert!(slack >= 0.0);
    let (s, i) = (g.snr, g.inr);
    let weak = i <= s;
    let mut violations = Vec::new();
    let mut check = |name: String, lhs: f64, rhs: f64| {
        if lhs > rhs + slack {
            violations.push(Violation { name, lhs, rhs });
        }
    };

    // Streams jointly decoded at each receiver: the relay and common of
    // whichever transmitter the receiver must strip, plus its own common.
    // In the weak regime the relay/common pair rides the direct link; in
    // the strong regime it arrives on the cross link.
    let n1 = ps.u1.p * s + ps.u2.p * i + 1.0; // private-as-noise floor at D1
    let n2 = ps.u2.p * s + ps.u1.p * i + 1.0;
    let d1: [(&str, f64, f64); 3] = if weak {
        [
            ("relay", rs.u1.r, ps.u1.r * s),
            ("common1", rs.u1.c, ps.u1.c * s),
            ("common2", rs.u2.c, ps.u2.c * i),
        ]
    } else {
        [
            ("relay", rs.u2.r, ps.u2.r * i),
            ("common2", rs.u2.c, ps.u2.c * i),
            ("common1", rs.u1.c, ps.u1.c * s),
        ]
    };
    let d2: [(&str, f64, f64); 3] = if weak {
        [
            ("relay", rs.u2.r, ps.u2.r * s),
            ("common2", rs.u2.c, ps.u2.c * s),
            ("common1", rs.u1.c, ps.u1.c * i),
        ]
    } else {
        [
            ("relay", rs.u1.r, ps.u1.r * i),
            ("common1", rs.u1.c, ps.u1.c * i),
            ("common2", rs.u2.c, ps.u2.c * s),
        ]
    };
    for (rx, streams, noise) in [("d1", d1, n1), ("d2", d2, n2)] {
        // All seven nonempty subsets of the three streams.
        for mask in 1u8..8 {
            let mut rate = 0.0;
            let mut power = 0.0;
            let mut names = Vec::new();
            for (b, (name, r, p)) in streams.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    rate += r;
                    power += p;
                    names.push(*name);
                }
            }
            check(format!("mac:{rx}:{}", names.join("+")), rate, log2p(power / noise));
        }
    }

    // Relay decoding at T1: own signal subtracted, T2's private as noise.
    let nt = ps.u2.p * i + 1.0;
    check("t1:relay".into(), rs.u2.r, log2p(ps.u2.r * i / nt));
    check("t1:common2".into(), rs.u2.c, log2p(ps.u2.c * i / nt));
    check(
        "t1:relay+common2".into(),
        rs.u2.r + rs.u2.c,
        log2p((ps.u2.r + ps.u2.c) * i / nt),
    );

    // Private streams, everything else decoded and removed.
    check("private1".into(), rs.u1.p, log2p(ps.u1.p * s / (ps.u2.p * i + 1.0)));
    check("private2".into(), rs.u2.p, log2p(ps.u2.p * s / (ps.u1.p * i + 1.0)));

    (violations.is_empty(), violations)
}

/// Slack used when asserting feasibility of the built-in allocations.
pub const FEASIBILITY_SLACK: f64 = 1e-9;

/// The rate pair for a corner, with feasibility asserted.
pub fn achievable_pair(c: CornerId, g: GaussParams) -> Result<RatePair, AchError> {
    let ps = power_split(c, g)?;
    let rs = rate_allocation(c, g)?;
    let (ok, violations) = mac_feasible(&rs, &ps, g, FEASIBILITY_SLACK);
    if !ok {
        return Err(AchError::Infeasible { violations });
    }
    Ok(rs.pair())
}

/// A labeled achievable point used in gap certification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledPair {
    pub label: String,
    pub pair: RatePair,
}

/// Achievable points licensed for a feedback state at the given powers.
///
/// A state runs the direct scheme if receiver 1 feeds back to transmitter 1,
/// or (in weak interference) to transmitter 2: the cross link emulates the
/// direct one there. Mirrors likewise. A cross-only state in strong
/// interference gets no relaying benefit and falls back to the
/// no-feedback corner points.
pub fn candidate_pairs(f: FeedbackState, g: GaussParams) -> Vec<LabeledPair> {
    let regime = alpha_of(g).regime;
    let weak = g.inr <= g.snr;
    let direct_ok = f.f11 || (f.f21 && weak);
    let mirror_ok = f.f22 || (f.f12 && weak);
    let mut out = Vec::new();
    let mut push = |label: String, pair: RatePair| out.push(LabeledPair { label, pair });

    let corner_points: Vec<(CornerId, RatePair)> = CornerId::ALL
        .iter()
        .filter(|c| c.valid_in(regime))
        .map(|&c| (c, achievable_pair(c, g).expect("built-in allocations are feasible")))
        .collect();
    if direct_ok {
        for (c, p) in &corner_points {
            push(c.name().to_string(), *p);
        }
    }
    if mirror_ok {
        for (c, p) in &corner_points {
            push(format!("{}-mirror", c.name()), p.swapped());
        }
    }
    if !weak && f.is_cross_only() {
        let p = no_feedback_strong_pair(g);
        push("no-fb".into(), p);
        push("no-fb-mirror".into(), p.swapped());
    }
    out
}

/// Corner of the no-feedback capacity region in strong interference: both
/// common streams at full power, jointly decoded at both receivers.
fn no_feedback_strong_pair(g: GaussParams) -> RatePair {
    let a = p2p_rate_bound(g);
    let r2 = pos((cutset_bound(g) - a).min(a));
    RatePair(a, r2)
}

/// Per-vertex detail from a gap certification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CornerGap {
    pub vertex: RatePair,
    pub pair: LabeledPair,
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapReport {
    pub state: FeedbackState,
    pub snr: f64,
    pub inr: f64,
    /// Worst per-vertex gap, in bits.
    pub gap: f64,
    pub corners: Vec<CornerGap>,
}

/// Distance of the outer polytope's corners from the achievable points:
/// for each nontrivial vertex, the best achievable point's component gap,
/// and the worst such gap over vertices.
pub fn certify_gap(f: FeedbackState, g: GaussParams) -> Result<GapReport, AchError> {
    let region = gauss_outer_polytope(f, g)?;
    let pairs = candidate_pairs(f, g);
    assert!(!pairs.is_empty(), "no achievable points for {f}");
    let mut corners = Vec::new();
    let mut worst: f64 = 0.0;
    for v in region.nontrivial_vertices() {
        let best = pairs
            .iter()
            .min_by(|a, b| {
                let ga = (v.0 - a.pair.0).max(v.1 - a.pair.1);
                let gb = (v.0 - b.pair.0).max(v.1 - b.pair.1);
                ga.partial_cmp(&gb).unwrap()
            })
            .unwrap();
        let gap = pos((v.0 - best.pair.0).max(v.1 - best.pair.1));
        worst = worst.max(gap);
        corners.push(CornerGap { vertex: v, pair: best.clone(), gap });
    }
    debug_assert!({
        let pts: Vec<RatePair> = pairs.iter().map(|p| p.pair).collect();
        (region.max_gap_to_vertices(&pts) - worst).abs() < 1e-12
    });
    Ok(GapReport { state: f, snr: g.snr, inr: g.inr, gap: worst, corners })
}

/// Distance of the sum-rate outer bound from the sum-capacity-targeting
/// achievable pair. Defined for states with a direct feedback link.
pub fn certify_sum_gap(f: FeedbackState, g: GaussParams) -> Result<f64, AchError> {
    if !f.has_direct() {
        return Err(AchError::NoDirectLink(f));
    }
    let pair = achievable_pair(CornerId::R2Sum, g)?;
    Ok(sum_rate_bound(g).value - pair.sum())
}

/// Certified gap budget for a characterized state, in bits.
pub fn gap_budget(f: FeedbackState) -> Option<f64> {
    if f.f11 && f.f22 {
        return Some(3.59);
    }
    let c = if f.f11 { f } else { f.mirrored() };
    match (c.f11, c.f12, c.f21, c.f22) {
        (true, false, false, false) => Some(6.0),
        (true, true, false, false) | (true, true, true, false) => Some(3.59),
        (false, true, true, false) => Some(3.59),
        _ => None,
    }
}

/// Certified sum-gap budget: 4.17 bits overall, 3.00 in strong interference.
pub fn sum_gap_budget(g: GaussParams) -> f64 {
    if g.snr < g.inr {
        3.0
    } else {
        4.17
    }
}
