//! Singular-link calculus for links in the 3-sphere.
//!
//! Diagrams are planar-diagram codes whose crossings may be double points.
//! The crate resolves double points, derives singular invariants
//! `f(L×) = F(L+) - F(L-)` from link invariants, checks the two local
//! integrability conditions on generated corpora, and integrates singular
//! invariants back along crossing-change paths.

pub mod bridge;
pub mod canon;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod integrability;
pub mod integrator;
pub mod invariants;
pub mod moves;
pub(crate) mod net;
pub mod ring;
pub mod tables;

pub use diagram::{ArcId, Crossing, CrossingId, CrossingKind, Diagram};
pub use error::{Error, Result};
pub use ring::RingElem;
