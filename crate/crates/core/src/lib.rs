//! Teaching the topology of manifolds to two kinds of learners.
//!
//! * A union-of-balls learner builds `U_eps(D)`, the union of radius-`eps` balls
//!   around a point sample, and reads its topology off the Čech nerve.
//! * A demonstration learner receives sequences (and sequences of sequences) of
//!   labelled points and glues curves and quads into a cell complex.
//!
//! The crate contains the target shapes ([`shapes`]), complex builders
//! ([`complex`]), GF(2) homology and persistence ([`homology`]), teacher-side
//! constructions ([`teaching`]), learner policies ([`learners`]) and the
//! seeded experiment harness ([`experiments`]).

pub mod complex;
pub mod error;
pub mod experiments;
pub mod homology;
pub mod io;
pub mod learners;
pub mod rng;
pub mod shapes;
pub mod svg;
pub mod teaching;

pub use error::{Error, Result};
pub use shapes::{Point, ReachProfile, Shape};
