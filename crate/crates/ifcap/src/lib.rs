//! Capacity regions of the two-user symmetric interference channel under
//! channel-output feedback, in both the linear deterministic and Gaussian
//! models.
//!
//! A feedback architecture is a 4-bit string `F11 F12 F21 F22` naming which
//! receiver→transmitter feedback links exist. This crate provides, per
//! architecture:
//!
//! * exact deterministic capacity polytopes and sum capacities
//!   ([`det_model`]), on top of a small exact 2-D polytope kernel
//!   ([`rate_region`]);
//! * a bit-exact B-block simulator of the relay-layer coding schemes that
//!   achieve the feedback-only corner points ([`det_sim`]);
//! * Gaussian outer bounds with the correlation supremum solved
//!   numerically, assembled into outer polytopes ([`gauss_outer`]);
//! * the explicit power/rate splits of the achievable schemes, their
//!   multiple-access feasibility checks, and numeric certification of the
//!   constant-gap guarantees: 6 bits for the single direct link, 3.59 for
//!   the richer architectures, 4.17 on the sum rate ([`gauss_ach`],
//!   [`sweep`]).
//!
//! The `examples/` directory exercises each capability end to end; the
//! `ifcap` binary exposes the same operations as subcommands (`region`,
//! `sumcap`, `simulate`, `gap`, `sweep`).

pub mod cli;
pub mod det_model;
pub mod det_sim;
pub mod gauss_ach;
pub mod gauss_outer;
pub mod rate_region;
pub mod svg;
pub mod sweep;

pub use det_model::{DetParams, FeedbackState};
pub use gauss_outer::GaussParams;
pub use rate_region::{HalfPlane, RatePair, RatePolytope};
