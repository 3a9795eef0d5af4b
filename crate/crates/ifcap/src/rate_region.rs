//! Exact 2-D rate-region polytopes.
//!
//! A region is the intersection of half-planes `a·R1 + b·R2 ≤ c` (with
//! `a, b ≥ 0` and `c ≥ 0` for everything this crate produces) together with
//! the nonnegativity constraints `R1 ≥ 0`, `R2 ≥ 0`. Vertices are found by
//! intersecting every pair of boundary lines (including the two axes) and
//! keeping the points that satisfy all constraints. The plane counts here
//! are tiny (k ≤ 6), so the O(k²) enumeration is both the simplest and the
//! most transparent choice.
//!
//! All rates are in bits per channel use. Comparisons use a fixed tolerance
//! of [`TOL`] bits; deterministic regions feed integer-valued planes through
//! this module, so their vertices come out exact in `f64`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Fixed tolerance, in bits, for vertex dedup and containment checks.
pub const TOL: f64 = 1e-9;

/// Half-plane constraint `a·R1 + b·R2 ≤ c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HalfPlane {
    /// New constraint `a·R1 + b·R2 ≤ c`. Requires `(a, b) ≠ (0, 0)`.
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        assert!(
            a != 0.0 || b != 0.0,
            "half-plane must constrain at least one coordinate"
        );
        assert!(a >= 0.0 && b >= 0.0, "coefficients must be nonnegative");
        HalfPlane { a, b, c }
    }

    /// Left-hand side `a·r1 + b·r2` at a point.
    pub fn eval(&self, r: RatePair) -> f64 {
        self.a * r.0 + self.b * r.1
    }

    /// Whether the point satisfies the constraint within `tol` bits.
    pub fn holds(&self, r: RatePair, tol: f64) -> bool {
        self.eval(r) <= self.c + tol
    }
}

/// A rate pair `(R1, R2)` in bits per channel use. Serialized as `[r1, r2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair(pub f64, pub f64);

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Self {
        RatePair(r1, r2)
    }
    pub fn r1(&self) -> f64 {
        self.0
    }
    pub fn r2(&self) -> f64 {
        self.1
    }
    pub fn sum(&self) -> f64 {
        self.0 + self.1
    }
    /// Mirror image across the `R1 = R2` diagonal.
    pub fn swapped(&self) -> Self {
        RatePair(self.1, self.0)
    }
    fn close_to(&self, other: RatePair, tol: f64) -> bool {
        (self.0 - other.0).abs() <= tol && (self.1 - other.1).abs() <= tol
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegionError {
    #[error("no planes given")]
    Empty,
    #[error("region is unbounded: no finite cap on {axis}")]
    Unbounded { axis: &'static str },
}

/// A bounded 2-D rate region: its defining half-planes plus the derived
/// vertex list (counterclockwise, starting at the origin).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatePolytope {
    pub planes: Vec<HalfPlane>,
    pub vertices: Vec<RatePair>,
}

/// Intersect the constraint set and enumerate vertices.
///
/// Candidates are all pairwise intersections of the boundary lines of
/// `planes` and the two axes; a candidate survives if it satisfies every
/// plane and nonnegativity within [`TOL`]. Redundant planes stay in the
/// returned `planes` list but contribute no vertices.
pub fn build_polytope(planes: &[HalfPlane]) -> Result<RatePolytope, RegionError> {
    if planes.is_empty() {
        return Err(RegionError::Empty);
    }
    if !planes.iter().any(|p| p.a > 0.0) {
        return Err(RegionError::Unbounded { axis: "R1" });
    }
    if !planes.iter().any(|p| p.b > 0.0) {
        return Err(RegionError::Unbounded { axis: "R2" });
    }

    // Boundary lines: each plane at equality, plus R1 = 0 and R2 = 0.
    let mut lines: Vec<(f64, f64, f64)> = planes.iter().map(|p| (p.a, p.b, p.c)).collect();
    lines.push((1.0, 0.0, 0.0));
    lines.push((0.0, 1.0, 0.0));

    let mut vertices: Vec<RatePair> = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let (a1, b1, c1) = lines[i];
            let (a2, b2, c2) = lines[j];
            let det = a1 * b2 - a2 * b1;
            if det.abs() < 1e-12 {
                continue; // parallel
            }
            let r1 = (c1 * b2 - c2 * b1) / det;
            let r2 = (a1 * c2 - a2 * c1) / det;
            // Snap roundoff-level negatives onto the axes.
            let r1 = if r1.abs() <= TOL { 0.0 } else { r1 };
            let r2 = if r2.abs() <= TOL { 0.0 } else { r2 };
            if r1 < 0.0 || r2 < 0.0 {
                continue;
            }
            let cand = RatePair(r1, r2);
            if planes.iter().all(|p| p.holds(cand, TOL))
                && !vertices.iter().any(|v| v.close_to(cand, TOL))
            {
                vertices.push(cand);
            }
        }
    }

    sort_ccw(&mut vertices);
    Ok(RatePolytope {
        planes: planes.to_vec(),
        vertices,
    })
}

/// Counterclockwise order, starting at the origin when present (otherwise at
/// the lexicographically smallest vertex). Regions here always contain the
/// origin, so angles around the centroid give a consistent ordering.
fn sort_ccw(vertices: &mut [RatePair]) {
    if vertices.len() <= 2 {
        vertices.sort_by(|u, v| u.0.partial_cmp(&v.0).unwrap().then(u.1.partial_cmp(&v.1).unwrap()));
        return;
    }
    let n = vertices.len() as f64;
    let cx = vertices.iter().map(|v| v.0).sum::<f64>() / n;
    let cy = vertices.iter().map(|v| v.1).sum::<f64>() / n;
    vertices.sort_by(|u, v| {
        let au = (u.1 - cy).atan2(u.0 - cx);
        let av = (v.1 - cy).atan2(v.0 - cx);
        au.partial_cmp(&av).unwrap()
    });
    let start = vertices
        .iter()
        .position(|v| v.close_to(RatePair(0.0, 0.0), TOL))
        .unwrap_or_else(|| {
            let mut best = 0;
            for (i, v) in vertices.iter().enumerate() {
                let b = vertices[best];
                if (v.0, v.1) < (b.0, b.1) {
                    best = i;
                }
            }
            best
        });
    vertices.rotate_left(start);
}

impl RatePolytope {
    /// Whether `r` satisfies every plane within `tol` bits.
    pub fn contains(&self, r: RatePair, tol: f64) -> bool {
        self.planes.iter().all(|p| p.holds(r, tol))
    }

    /// Whether every vertex of `self` lies inside `other` (within `tol`).
    pub fn is_subset_of(&self, other: &RatePolytope, tol: f64) -> bool {
        self.subset_witness(other, tol).is_none()
    }

    /// First vertex of `self` that falls outside `other`, if any.
    pub fn subset_witness(&self, other: &RatePolytope, tol: f64) -> Option<RatePair> {
        self.vertices
            .iter()
            .copied()
            .find(|v| !other.contains(*v, tol))
    }

    /// Maximum of `R1 + R2` over the vertices.
    pub fn max_sum_rate(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.sum())
            .fold(0.0, f64::max)
    }

    /// Vertices other than the origin.
    pub fn nontrivial_vertices(&self) -> impl Iterator<Item = RatePair> + '_ {
        self.vertices
            .iter()
            .copied()
            .filter(|v| v.0 > TOL || v.1 > TOL)
    }

    /// Worst-case per-vertex gap to a set of achievable points.
    ///
    /// For each nontrivial vertex `(C1, C2)` the gap is the best (smallest)
    /// value of `max(C1 − r1, C2 − r2)` over `inner_points`, clamped at 0
    /// when a point dominates the vertex. The result is the maximum of
    /// those per-vertex gaps, 0 for a degenerate region.
    pub fn max_gap_to_vertices(&self, inner_points: &[RatePair]) -> f64 {
        assert!(!inner_points.is_empty(), "need at least one inner point");
        let mut worst: f64 = 0.0;
        for v in self.nontrivial_vertices() {
            let best = inner_points
                .iter()
                .map(|p| (v.0 - p.0).max(v.1 - p.1))
                .fold(f64::INFINITY, f64::min)
                .max(0.0);
            worst = worst.max(best);
        }
        worst
    }

    /// Reflection across `R1 = R2` (swap the two users).
    pub fn reflected(&self) -> RatePolytope {
        let planes: Vec<HalfPlane> = self
            .planes
            .iter()
            .map(|p| HalfPlane { a: p.b, b: p.a, c: p.c })
            .collect();
        build_polytope(&planes).expect("reflection preserves boundedness")
    }

    /// Vertex-set equality within `tol` (order-insensitive).
    pub fn same_vertices(&self, other: &RatePolytope, tol: f64) -> bool {
        self.vertices.len() == other.vertices.len()
            && self
                .vertices
                .iter()
                .all(|v| other.vertices.iter().any(|w| v.close_to(*w, tol)))
    }
}
