//! Decorated flat spacetimes of dimension 2+1: the Epstein–Penner convex
//! hull in Minkowski space, flat cone surfaces and their Delaunay
//! cellulations, and the suspension that goes back from surfaces to
//! holonomy representations.

pub mod cli;
pub mod decoration;
pub mod error;
pub mod fixtures;
pub mod flatsurf;
pub mod holonomy;
pub mod io;
pub mod hull;
pub mod minkowski;
pub mod suspension;
pub mod tol;

pub use error::{Error, Result};
pub use minkowski::{AffineIsometry, LinearIsometry, MinkVec};
