//! Instance-level verification of the good-edge argument for distinct
//! distances from a point in convex position.
//!
//! Modules, bottom up:
//! - [`geom`]: exact rational kernel and a tolerance-based float kernel;
//! - [`instance`]: convex instances with their distance classes;
//! - [`enclosing`]: smallest enclosing circle and its support points;
//! - [`caps`]: caps, witnesses, good and bad edges;
//! - [`census`]: isosceles census `Z(P)` and distinct-distance statistics;
//! - [`lemmas`]: checkers for the witness lemmas;
//! - [`theorem`]: the stripping procedure and the constant chain;
//! - [`constructions`]: instance generators;
//! - [`ap3`]: bichromatic arithmetic progressions and their arc embedding;
//! - [`campaign`]: seeded, parallel verification campaigns;
//! - [`io`]: JSON formats.

pub mod ap3;
pub mod campaign;
pub mod caps;
pub mod census;
pub mod constructions;
pub mod enclosing;
pub mod error;
pub mod geom;
pub mod instance;
pub mod io;
pub mod lemmas;
pub mod theorem;

pub use error::{Error, Result};
pub use geom::{Exact, Float, FloatPoint, Kernel, Point, Rational};
pub use instance::{ConvexInstance, ExactInstance, FloatInstance};
