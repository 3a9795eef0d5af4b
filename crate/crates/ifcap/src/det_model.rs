//! Linear deterministic interference channel: parameters, the shift-matrix
//! channel map over GF(2), and exact capacity polytopes / sum capacities for
//! every characterized feedback architecture.
//!
//! The symmetric channel carries `n` bit levels on each direct link and `m`
//! on each cross link; signals are `q = max(n, m)`-bit columns, most
//! significant bit first, and a link of strength `k` delivers the top `k`
//! bits of its input shifted to the bottom of the output. A feedback
//! architecture is the 4-tuple of booleans saying which receiver→transmitter
//! feedback links exist, written as a bit string `F11 F12 F21 F22`
//! (e.g. `"1000"`: one link, from receiver 1 to its own transmitter).
//!
//! Region formulas are assembled in exact integer arithmetic and only
//! converted to floating point when handed to [`rate_region`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rate_region::{build_polytope, HalfPlane, RatePair, RatePolytope, TOL};

/// Which receiver→transmitter feedback links exist. `f{k}{u}` is the link
/// from receiver `k` to transmitter `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FeedbackState {
    pub f11: bool,
    pub f12: bool,
    pub f21: bool,
    pub f22: bool,
}

impl FeedbackState {
    pub const fn new(f11: bool, f12: bool, f21: bool, f22: bool) -> Self {
        FeedbackState { f11, f12, f21, f22 }
    }

    /// At least one receiver feeds back to its own transmitter.
    pub fn has_direct(&self) -> bool {
        self.f11 || self.f22
    }

    /// Only cross links (receiver to the interfering transmitter) exist.
    pub fn is_cross_only(&self) -> bool {
        !self.f11 && !self.f22 && (self.f12 || self.f21)
    }

    pub fn has_any(&self) -> bool {
        self.f11 || self.f12 || self.f21 || self.f22
    }

    /// Swap the two user indices (reflect the architecture).
    pub fn mirrored(&self) -> Self {
        FeedbackState::new(self.f22, self.f21, self.f12, self.f11)
    }

    pub fn all() -> impl Iterator<Item = FeedbackState> {
        (0u8..16).map(|b| {
            FeedbackState::new(b & 8 != 0, b & 4 != 0, b & 2 != 0, b & 1 != 0)
        })
    }
}

impl fmt::Display for FeedbackState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in [self.f11, self.f12, self.f21, self.f22] {
            write!(f, "{}", if bit { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for FeedbackState {
    type Err = DetError;

    fn from_str(s: &str) -> Result<Self, DetError> {
        let b: Vec<char> = s.chars().collect();
        if b.len() != 4 || b.iter().any(|c| *c != '0' && *c != '1') {
            return Err(DetError::BadStateString(s.to_string()));
        }
        Ok(FeedbackState::new(
            b[0] == '1',
            b[1] == '1',
            b[2] == '1',
            b[3] == '1',
        ))
    }
}

impl Serialize for FeedbackState {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FeedbackState {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Deterministic channel levels: `n` direct, `m` cross, `q = max(n, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetParams {
    pub n: u32,
    pub m: u32,
}

impl DetParams {
    pub const fn new(n: u32, m: u32) -> Self {
        DetParams { n, m }
    }
    pub fn q(&self) -> u32 {
        self.n.max(self.m)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DetError {
    #[error("feedback state must be a 4-character bit string, got {0:?}")]
    BadStateString(String),
    #[error("uncharacterized feedback state {0}")]
    Uncharacterized(FeedbackState),
    #[error("input length mismatch: expected {expected} bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Fixed-length bit column, index 0 = most significant level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitVec(pub Vec<u8>);

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec(vec![0; len])
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        assert!(bits.iter().all(|&b| b <= 1));
        BitVec(bits.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.len(), other.len());
        BitVec(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    /// Shift down by `s` levels, zero-filling the top: output level `s + j`
    /// carries input level `j`.
    pub fn shifted_down(&self, s: usize) -> BitVec {
        let q = self.len();
        let mut out = vec![0u8; q];
        let keep = q.saturating_sub(s);
        out[q - keep..].copy_from_slice(&self.0[..keep]);
        BitVec(out)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> &[u8] {
        &self.0[range]
    }

    /// Render as a bit string, MSB first.
    pub fn bit_string(&self) -> String {
        self.0.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
    }
}

/// One channel use: `y1 = S^{q−n} x1 ⊕ S^{q−m} x2`, `y2` symmetric.
pub fn channel_output(
    x1: &BitVec,
    x2: &BitVec,
    p: DetParams,
) -> Result<(BitVec, BitVec), DetError> {
    let q = p.q() as usize;
    for x in [x1, x2] {
        if x.len() != q {
            return Err(DetError::LengthMismatch {
                expected: q,
                got: x.len(),
            });
        }
    }
    let sn = q - p.n as usize;
    let sm = q - p.m as usize;
    let y1 = x1.shifted_down(sn).xor(&x2.shifted_down(sm));
    let y2 = x2.shifted_down(sn).xor(&x1.shifted_down(sm));
    Ok((y1, y2))
}

// Integer building blocks, kept exact until the polytope boundary.
fn pos(v: i64) -> i64 {
    v.max(0)
}

/// `(n − m)⁺ + max(n, m)`: the sum-capacity of every architecture with at
/// least one direct feedback link.
fn direct_sum(p: DetParams) -> i64 {
    let (n, m) = (p.n as i64, p.m as i64);
    pos(n - m) + n.max(m)
}

/// `max(n, m) + (n − m)⁺ + max(m, n − m)`: the `2R1 + R2` cap for the single
/// direct link, which equals the no-feedback `2R1 + R2` / `R1 + 2R2` cap.
fn weighted_sum(p: DetParams) -> i64 {
    let (n, m) = (p.n as i64, p.m as i64);
    n.max(m) + pos(n - m) + m.max(n - m)
}

/// No-feedback sum-rate cap from the two competing bounds.
fn no_feedback_sum(p: DetParams) -> i64 {
    let (n, m) = (p.n as i64, p.m as i64);
    direct_sum(p).min(2 * m.max(n - m))
}

fn plane(a: i64, b: i64, c: i64) -> HalfPlane {
    HalfPlane::new(a as f64, b as f64, c as f64)
}

fn build(planes: &[HalfPlane]) -> RatePolytope {
    build_polytope(planes).expect("deterministic regions are bounded")
}

/// Canonical classification of a feedback state for region purposes.
enum StateClass {
    /// Both direct links present: `(1, ×, ×, 1)`.
    BothDirect,
    /// Direct link at user 1 plus possibly cross links, no relay route back:
    /// `(1100)` / `(1110)`.
    OneDirectPlus,
    /// Exactly the single direct link `(1000)`.
    OneDirect,
    /// Cross links only, both present: `(0110)`.
    CrossPair,
    /// No feedback at all.
    None,
}

/// Classify `f`, returning the class and whether it is the mirror image of
/// the canonical representative.
fn classify(f: FeedbackState) -> Result<(StateClass, bool), DetError> {
    use StateClass::*;
    if f.f11 && f.f22 {
        return Ok((BothDirect, false));
    }
    match (f.f11, f.f12, f.f21, f.f22) {
        (false, false, false, false) => Ok((None, false)),
        (true, false, false, false) => Ok((OneDirect, false)),
        (false, false, false, true) => Ok((OneDirect, true)),
        (true, true, false, false) | (true, true, true, false) => Ok((OneDirectPlus, false)),
        (false, false, true, true) | (false, true, true, true) => Ok((OneDirectPlus, true)),
        (false, true, true, false) => Ok((CrossPair, false)),
        // (0010), (0100), (1010), (0101): left open.
        _ => Err(DetError::Uncharacterized(f)),
    }
}

/// Exact capacity region of a characterized feedback state.
///
/// Errors with [`DetError::Uncharacterized`] for the `(0010)` / `(1010)`
/// families (and mirrors), whose regions are not known.
pub fn det_outer_polytope(f: FeedbackState, p: DetParams) -> Result<RatePolytope, DetError> {
    let (class, mirrored) = classify(f)?;
    let (n, m) = (p.n as i64, p.m as i64);
    let q = n.max(m);
    let region = match class {
        StateClass::BothDirect => build(&[
            plane(1, 0, q),
            plane(0, 1, q),
            plane(1, 1, direct_sum(p)),
        ]),
        StateClass::OneDirectPlus => build(&[
            plane(1, 0, n),
            plane(0, 1, q),
            plane(1, 1, direct_sum(p)),
        ]),
        StateClass::OneDirect => build(&[
            plane(1, 0, n),
            plane(0, 1, q),
            plane(1, 1, direct_sum(p)),
            plane(2, 1, weighted_sum(p)),
        ]),
        StateClass::CrossPair => {
            if n >= m {
                // Cross links can emulate the direct scheme here; the region
                // equals the all-links region.
                return det_outer_polytope(FeedbackState::new(true, true, true, true), p);
            }
            // Stronger interference: cross feedback buys nothing.
            return det_outer_polytope(FeedbackState::new(false, false, false, false), p);
        }
        StateClass::None => build(&[
            plane(1, 0, n),
            plane(0, 1, n),
            plane(1, 1, no_feedback_sum(p)),
            plane(1, 2, weighted_sum(p)),
            plane(2, 1, weighted_sum(p)),
        ]),
    };
    Ok(if mirrored { region.reflected() } else { region })
}

/// Exact sum capacity for any feedback state (all sixteen are covered by the
/// sum-capacity results even where the full region is open).
pub fn det_sum_capacity(f: FeedbackState, p: DetParams) -> f64 {
    let n = p.n as i64;
    let v = if f.has_direct() {
        direct_sum(p)
    } else if f.is_cross_only() {
        (2 * n).min(direct_sum(p))
    } else {
        // No feedback. The trivial per-user caps also bind the sum.
        no_feedback_sum(p).min(2 * n)
    };
    v as f64
}

/// Vertices of the feedback region that lie outside the no-feedback region:
/// the corner points gained by feedback alone.
pub fn corner_gain_points(f: FeedbackState, p: DetParams) -> Result<Vec<RatePair>, DetError> {
    let region = det_outer_polytope(f, p)?;
    let baseline = det_outer_polytope(FeedbackState::new(false, false, false, false), p)?;
    Ok(region
        .nontrivial_vertices()
        .filter(|v| !baseline.contains(*v, TOL))
        .collect())
}
