//! Q-cell analysis for wireless networks.
//!
//! For a set of transmitter locations and a QoS target (SIR threshold,
//! reliability, path-loss exponent, fading model), this crate constructs
//! Q cells — intersections of equal-distance-ratio disks that outer-bound
//! the coverage region of each transmitter — together with their refined
//! (corner-cut) and scaled variants, closed-form covered-area fractions,
//! universal bounds, and an independent reliability oracle for validation.

pub mod analytics;
pub mod deploy;
pub mod error;
pub mod geom;
pub mod mathfn;
pub mod oracle;
pub mod qos;
pub mod render;

pub use error::{Error, Result};
