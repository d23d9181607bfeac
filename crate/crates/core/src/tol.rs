//! Numerical tolerances shared across modules.

/// Form-level tolerance on normalized quantities (isometry checks, classification ties).
pub const EPS_FORM: f64 = 1e-9;
/// Relation residual tolerance for representations built from exact rationals.
pub const EPS_REL: f64 = 1e-8;
/// Relative point-deduplication tolerance for orbit enumeration.
pub const DEDUP: f64 = 1e-8;
/// Relative coplanarity tolerance for merging hull triangles into polygons.
pub const COPLANAR: f64 = 1e-8;
/// Relative band for the in-circle test that classifies an edge as cocyclic.
pub const EPS_CYC: f64 = 1e-9;
/// Relative tolerance for equality of glued side lengths.
pub const EPS_GLUE: f64 = 1e-7;
/// Relative tolerance for round-trip edge lengths.
pub const TOL_RT: f64 = 1e-6;
/// Tolerance used when reading isometries from documents.
pub const EPS_SCHEMA: f64 = 1e-6;
