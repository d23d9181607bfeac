//! Minkowski space E^{1,2}: the form of signature (-,+,+), causal predicates,
//! Lorentz isometries and their classification.
//!
//! Orientation convention: [`mink_cross`] is `J·(u × v)` with the Euclidean
//! cross product and `J = diag(-1, 1, 1)`. Every element of `SO_0(1,2)`
//! commutes with it, `γ(u ⊠ v) = γu ⊠ γv`, which is what fixes the side
//! condition of [`align_wedge`].

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::EPS_FORM;

/// A vector (or point) of E^{1,2}.
#[derive(Copy, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MinkVec {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

impl MinkVec {
    pub const ZERO: MinkVec = MinkVec { t: 0.0, x: 0.0, y: 0.0 };

    pub const fn new(t: f64, x: f64, y: f64) -> Self {
        MinkVec { t, x, y }
    }

    /// The quadratic form `-t² + x² + y²`.
    pub fn q(&self) -> f64 {
        mink_form(*self, *self)
    }

    pub fn dot(&self, other: MinkVec) -> f64 {
        mink_form(*self, other)
    }

    /// Euclidean sup-norm of the coordinates.
    pub fn norm_inf(&self) -> f64 {
        self.t.abs().max(self.x.abs()).max(self.y.abs())
    }

    /// Euclidean length of the coordinate vector.
    pub fn norm_euclid(&self) -> f64 {
        (self.t * self.t + self.x * self.x + self.y * self.y).sqrt()
    }

    pub fn to_vector(&self) -> Vector3<f64> {
        Vector3::new(self.t, self.x, self.y)
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        MinkVec::new(v[0], v[1], v[2])
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.t, self.x, self.y]
    }

    /// Future lightlike: `|q| ≤ tol·‖v‖²` and `t > 0`.
    pub fn is_future_lightlike(&self, tol: f64) -> bool {
        let scale = self.norm_euclid().powi(2);
        self.t > 0.0 && self.q().abs() <= tol * scale.max(f64::MIN_POSITIVE)
    }

    pub fn is_future_timelike(&self) -> bool {
        self.t > 0.0 && self.q() < 0.0
    }

    pub fn is_spacelike(&self) -> bool {
        self.q() > 0.0
    }
}

impl Add for MinkVec {
    type Output = MinkVec;
    fn add(self, o: MinkVec) -> MinkVec {
        MinkVec::new(self.t + o.t, self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for MinkVec {
    fn add_assign(&mut self, o: MinkVec) {
        *self = *self + o;
    }
}

impl Sub for MinkVec {
    type Output = MinkVec;
    fn sub(self, o: MinkVec) -> MinkVec {
        MinkVec::new(self.t - o.t, self.x - o.x, self.y - o.y)
    }
}

impl Neg for MinkVec {
    type Output = MinkVec;
    fn neg(self) -> MinkVec {
        MinkVec::new(-self.t, -self.x, -self.y)
    }
}

impl Mul<f64> for MinkVec {
    type Output = MinkVec;
    fn mul(self, s: f64) -> MinkVec {
        MinkVec::new(self.t * s, self.x * s, self.y * s)
    }
}

impl Mul<MinkVec> for f64 {
    type Output = MinkVec;
    fn mul(self, v: MinkVec) -> MinkVec {
        v * self
    }
}

/// The bilinear form `-u.t v.t + u.x v.x + u.y v.y`.
pub fn mink_form(u: MinkVec, v: MinkVec) -> f64 {
    -u.t * v.t + u.x * v.x + u.y * v.y
}

/// Minkowski cross product `J·(u × v)`; pairs to zero with both arguments.
pub fn mink_cross(u: MinkVec, v: MinkVec) -> MinkVec {
    let c = u.to_vector().cross(&v.to_vector());
    MinkVec::new(-c[0], c[1], c[2])
}

/// `J = diag(-1, 1, 1)`.
pub fn gram() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(-1.0, 1.0, 1.0))
}

/// `‖mᵀJm − J‖∞` (entrywise maximum).
pub fn form_residual(m: &Matrix3<f64>) -> f64 {
    let j = gram();
    (m.transpose() * j * m - j).abs().max()
}

/// Element of `SO_0(1,2)`. Serialized as rows without validation.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "[[f64; 3]; 3]", from = "[[f64; 3]; 3]")]
pub struct LinearIsometry(Matrix3<f64>);

impl From<LinearIsometry> for [[f64; 3]; 3] {
    fn from(m: LinearIsometry) -> Self {
        m.rows()
    }
}

impl From<[[f64; 3]; 3]> for LinearIsometry {
    fn from(r: [[f64; 3]; 3]) -> Self {
        LinearIsometry(Matrix3::from_fn(|i, j| r[i][j]))
    }
}

impl LinearIsometry {
    pub fn identity() -> Self {
        LinearIsometry(Matrix3::identity())
    }

    /// Wraps `m` after checking `mᵀJm = J`, `det m = 1` and `m[0][0] > 0` at `tol`.
    pub fn new(m: Matrix3<f64>, tol: f64) -> Result<Self> {
        let residual = form_residual(&m).max((m.determinant() - 1.0).abs());
        if residual > tol || m[(0, 0)] <= 0.0 {
            return Err(Error::InvalidIsometry { residual });
        }
        Ok(LinearIsometry(m))
    }

    /// Wraps `m` without validation. Used for products of validated matrices.
    pub fn from_matrix_unchecked(m: Matrix3<f64>) -> Self {
        LinearIsometry(m)
    }

    pub fn from_rows(rows: [[f64; 3]; 3], tol: f64) -> Result<Self> {
        Self::new(Matrix3::from_fn(|i, j| rows[i][j]), tol)
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        let m = &self.0;
        [
            [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
            [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
            [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
        ]
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn apply(&self, v: MinkVec) -> MinkVec {
        MinkVec::from_vector(&(self.0 * v.to_vector()))
    }

    pub fn compose(&self, other: &LinearIsometry) -> LinearIsometry {
        LinearIsometry(self.0 * other.0)
    }

    /// `J mᵀ J`, exact for isometries.
    pub fn inverse(&self) -> LinearIsometry {
        let j = gram();
        LinearIsometry(j * self.0.transpose() * j)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn form_residual(&self) -> f64 {
        form_residual(&self.0)
    }

    pub fn distance_to_identity(&self) -> f64 {
        (self.0 - Matrix3::identity()).abs().max()
    }

    /// Rotation by `theta` about the time axis.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        LinearIsometry(Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c))
    }

    /// Boost of rapidity `eta` in the (t, x) plane.
    pub fn boost_x(eta: f64) -> Self {
        let (sh, ch) = (eta.sinh(), eta.cosh());
        LinearIsometry(Matrix3::new(ch, sh, 0.0, sh, ch, 0.0, 0.0, 0.0, 1.0))
    }

    /// Null rotation fixing the lightlike direction (1, 1, 0); `null_rotation(1.0)`
    /// is `[[1.5,-0.5,1],[0.5,0.5,1],[1,-1,1]]`.
    pub fn null_rotation(s: f64) -> Self {
        let h = 0.5 * s * s;
        LinearIsometry(Matrix3::new(
            1.0 + h,
            -h,
            s,
            h,
            1.0 - h,
            s,
            s,
            -s,
            1.0,
        ))
    }
}

/// `x ↦ linear·x + translation`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineIsometry {
    pub linear: LinearIsometry,
    pub translation: MinkVec,
}

impl AffineIsometry {
    pub fn identity() -> Self {
        AffineIsometry { linear: LinearIsometry::identity(), translation: MinkVec::ZERO }
    }

    pub fn new(linear: LinearIsometry, translation: MinkVec) -> Self {
        AffineIsometry { linear, translation }
    }

    pub fn linear(linear: LinearIsometry) -> Self {
        AffineIsometry { linear, translation: MinkVec::ZERO }
    }

    pub fn translation(v: MinkVec) -> Self {
        AffineIsometry { linear: LinearIsometry::identity(), translation: v }
    }

    pub fn apply(&self, p: MinkVec) -> MinkVec {
        self.linear.apply(p) + self.translation
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineIsometry) -> AffineIsometry {
        AffineIsometry {
            linear: self.linear.compose(&other.linear),
            translation: self.linear.apply(other.translation) + self.translation,
        }
    }

    pub fn inverse(&self) -> AffineIsometry {
        let inv = self.linear.inverse();
        AffineIsometry { linear: inv, translation: -inv.apply(self.translation) }
    }

    /// Sup-norm distance between the linear parts and between the translations.
    pub fn distance(&self, other: &AffineIsometry) -> f64 {
        let dl = (self.linear.matrix() - other.linear.matrix()).abs().max();
        let dt = (self.translation - other.translation).norm_inf();
        dl.max(dt)
    }

    pub fn is_linear(&self) -> bool {
        self.translation == MinkVec::ZERO
    }
}

/// Conjugacy class of the linear part.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Fixed-point behaviour of the affine map.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AffineFixity {
    HasFixedPoint,
    FixedLightlikeLine,
    NoFixedPoint,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub linear: CausalClass,
    pub affine: AffineFixity,
}

/// Linear class from the trace; `|trace − 3| ≤ tol` resolves to parabolic or identity.
pub fn classify_linear(m: &LinearIsometry, tol: f64) -> CausalClass {
    let tr = m.trace();
    if (tr - 3.0).abs() <= tol {
        if m.distance_to_identity() <= tol {
            CausalClass::Identity
        } else {
            CausalClass::Parabolic
        }
    } else if tr < 3.0 {
        CausalClass::Elliptic
    } else {
        CausalClass::Hyperbolic
    }
}

pub fn classify(phi: &AffineIsometry, tol: f64) -> Result<Classification> {
    let residual = phi.linear.form_residual().max((phi.linear.matrix().determinant() - 1.0).abs());
    if residual > tol.max(EPS_FORM) || phi.linear.matrix()[(0, 0)] <= 0.0 {
        return Err(Error::InvalidIsometry { residual });
    }
    let linear = classify_linear(&phi.linear, tol);
    let scale = 1.0 + phi.translation.norm_inf();
    let affine = match linear {
        CausalClass::Identity => {
            if phi.translation.norm_inf() <= tol * scale {
                AffineFixity::HasFixedPoint
            } else {
                AffineFixity::NoFixedPoint
            }
        }
        CausalClass::Parabolic => match parabolic_fixed_line(phi, tol)? {
            Some(_) => AffineFixity::FixedLightlikeLine,
            None => AffineFixity::NoFixedPoint,
        },
        CausalClass::Elliptic | CausalClass::Hyperbolic => {
            // ⟨τ|e⟩ for the unit axis e of L is a conjugation invariant; φ fixes a point iff it vanishes.
            let e = linear_axis(&phi.linear);
            if mink_form(phi.translation, e).abs() <= tol * scale {
                AffineFixity::HasFixedPoint
            } else {
                AffineFixity::NoFixedPoint
            }
        }
    };
    Ok(Classification { linear, affine })
}

/// Fixed axis of an elliptic or hyperbolic `L`, normalized to `|q| = 1`.
fn linear_axis(m: &LinearIsometry) -> MinkVec {
    let svd = (Matrix3::identity() - m.matrix()).svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let e = MinkVec::from_vector(&vt.row(svd.singular_values.imin()).transpose());
    e * (1.0 / e.q().abs().sqrt())
}

/// Least-squares solution of `(I − L)x = τ` and its residual.
fn solve_fixed_point(phi: &AffineIsometry) -> (MinkVec, f64) {
    let a = Matrix3::identity() - phi.linear.matrix();
    let tau = phi.translation.to_vector();
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let x = svd
        .solve(&tau, 1e-10 * smax.max(1.0))
        .unwrap_or_else(|_| Vector3::zeros());
    let res = (a * x - tau).amax();
    (MinkVec::from_vector(&x), res)
}

/// Future lightlike direction fixed by a parabolic linear part, normalized to `t = 1`.
pub fn parabolic_direction(m: &LinearIsometry) -> MinkVec {
    let n = m.matrix() - Matrix3::identity();
    let n2 = n * n;
    // (L − I)² has rank one, with image the fixed line.
    let mut best = 0;
    for j in 1..3 {
        if n2.column(j).norm() > n2.column(best).norm() {
            best = j;
        }
    }
    let v = if n2.column(best).norm() > 1e-14 {
        n2.column(best).into_owned()
    } else {
        let svd = n.svd(false, true);
        let vt = svd.v_t.expect("requested V^T");
        let k = svd.singular_values.imin();
        vt.row(k).transpose()
    };
    let v = MinkVec::from_vector(&v);
    v * (1.0 / v.t)
}

/// For a parabolic `φ`, the line of fixed points `(point, direction)` when the
/// translation is orthogonal to the fixed lightlike direction, otherwise `None`.
pub fn parabolic_fixed_line(phi: &AffineIsometry, tol: f64) -> Result<Option<(MinkVec, MinkVec)>> {
    if classify_linear(&phi.linear, tol) != CausalClass::Parabolic {
        return Err(Error::NotParabolic);
    }
    let v = parabolic_direction(&phi.linear);
    let scale = 1.0f64.max(phi.translation.norm_euclid());
    if mink_form(phi.translation, v).abs() > tol.max(EPS_FORM) * scale {
        return Ok(None);
    }
    let (x, _) = solve_fixed_point(phi);
    Ok(Some((x, v)))
}

/// The unique `γ ∈ SO_0(1,2)` with `γA1 = B2`, `γB1 = A2`.
///
/// The third frame vector is forced by `det γ = 1`: `γ(A1 ⊠ B1) = B2 ⊠ A2`.
/// For directly oriented cells this puts `γC1` and `C2` on opposite sides of
/// the plane through `O, B2, A2`.
pub fn align_wedge(a1: MinkVec, b1: MinkVec, a2: MinkVec, b2: MinkVec) -> Result<LinearIsometry> {
    let n1 = mink_cross(a1, b1);
    let n2 = mink_cross(b2, a2);
    let rel = |n: MinkVec, u: MinkVec, v: MinkVec| n.norm_euclid() <= 1e-12 * u.norm_euclid() * v.norm_euclid();
    if rel(n1, a1, b1) || rel(n2, a2, b2) {
        return Err(Error::DegenerateFrame);
    }
    let p1 = mink_form(a1, b1);
    let p2 = mink_form(a2, b2);
    if (p1 - p2).abs() > crate::tol::EPS_GLUE * p1.abs().max(p2.abs()) {
        return Err(Error::PairingMismatch { left: p1, right: p2 });
    }
    let f1 = Matrix3::from_columns(&[a1.to_vector(), b1.to_vector(), n1.to_vector()]);
    let f2 = Matrix3::from_columns(&[b2.to_vector(), a2.to_vector(), n2.to_vector()]);
    let inv = f1.try_inverse().ok_or(Error::DegenerateFrame)?;
    Ok(LinearIsometry::from_matrix_unchecked(f2 * inv))
}

/// Image of `±[[a, b], [c, d]] ∈ PSL(2,ℝ)` under the adjoint cover onto `SO_0(1,2)`,
/// acting on `(t, x, y) ↔ [[t+x, y], [y, t−x]]` by `X ↦ A X Aᵀ`.
pub fn psl2_to_so12(a: f64, b: f64, c: f64, d: f64) -> Result<LinearIsometry> {
    let det = a * d - b * c;
    if (det - 1.0).abs() > EPS_FORM * (1.0 + a.abs().max(b.abs()).max(c.abs()).max(d.abs()).powi(2)) {
        return Err(Error::NotUnimodular { det });
    }
    let act = |t: f64, x: f64, y: f64| -> Vector3<f64> {
        let (p, r, s) = (t + x, y, t - x);
        // A X Aᵀ for X = [[p, r], [r, s]]
        let y00 = a * (a * p + b * r) + b * (a * r + b * s);
        let y01 = c * (a * p + b * r) + d * (a * r + b * s);
        let y11 = c * (c * p + d * r) + d * (c * r + d * s);
        Vector3::new(0.5 * (y00 + y11), 0.5 * (y00 - y11), y01)
    };
    let m = Matrix3::from_columns(&[act(1.0, 0.0, 0.0), act(0.0, 1.0, 0.0), act(0.0, 0.0, 1.0)]);
    Ok(LinearIsometry::from_matrix_unchecked(m))
}

/// Lightlike vector `w wᵀ` of the boundary point `w₁/w₂` of the upper half plane.
pub fn boundary_point(w1: f64, w2: f64) -> MinkVec {
    let (p, r, s) = (w1 * w1, w1 * w2, w2 * w2);
    MinkVec::new(0.5 * (p + s), 0.5 * (p - s), r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n1() -> LinearIsometry {
        LinearIsometry::from_rows([[1.5, -0.5, 1.0], [0.5, 0.5, 1.0], [1.0, -1.0, 1.0]], 1e-12).unwrap()
    }

    #[test]
    fn form_examples() {
        assert_eq!(mink_form(MinkVec::new(1.0, 0.0, 0.0), MinkVec::new(1.0, 0.0, 0.0)), -1.0);
        assert_eq!(mink_form(MinkVec::new(1.0, 1.0, 0.0), MinkVec::new(1.0, 1.0, 0.0)), 0.0);
        assert_eq!(mink_form(MinkVec::new(1.25, 0.75, 0.0), MinkVec::new(1.0, 1.0, 0.0)), -0.5);
    }

    #[test]
    fn cross_examples() {
        let w = mink_cross(MinkVec::new(1.0, 0.0, 0.0), MinkVec::new(0.0, 1.0, 0.0));
        assert_eq!(w, MinkVec::new(0.0, 0.0, 1.0));
        let u = MinkVec::new(0.3, 0.6, -0.2);
        assert_eq!(mink_cross(u, u * 2.0).norm_inf(), 0.0);
        let (a, b) = (MinkVec::new(1.0, 1.0, 0.0), MinkVec::new(1.0, 0.0, 1.0));
        let w = mink_cross(a, b);
        assert!(mink_form(w, a).abs() < 1e-12 && mink_form(w, b).abs() < 1e-12);
    }

    #[test]
    fn null_rotation_matches_fixture() {
        assert_eq!(LinearIsometry::null_rotation(1.0), n1());
        assert!(n1().form_residual() < 1e-15);
        assert_eq!(n1().apply(MinkVec::new(1.0, 1.0, 0.0)), MinkVec::new(1.0, 1.0, 0.0));
    }

    #[test]
    fn classify_examples() {
        let id = AffineIsometry::identity();
        assert_eq!(classify(&id, EPS_FORM).unwrap().linear, CausalClass::Identity);
        let c = classify(&AffineIsometry::linear(n1()), EPS_FORM).unwrap();
        assert_eq!(c.linear, CausalClass::Parabolic);
        assert_eq!(c.affine, AffineFixity::FixedLightlikeLine);
        assert!((n1().trace() - 3.0).abs() < 1e-15);
        let rot = LinearIsometry::rotation(std::f64::consts::PI);
        assert!((rot.trace() + 1.0).abs() < 1e-15);
        assert_eq!(classify(&AffineIsometry::linear(rot), EPS_FORM).unwrap().linear, CausalClass::Elliptic);
        let boost = AffineIsometry::linear(LinearIsometry::boost_x(0.7));
        assert_eq!(classify(&boost, EPS_FORM).unwrap().linear, CausalClass::Hyperbolic);
    }

    #[test]
    fn classify_rejects_non_isometry() {
        let m = LinearIsometry::from_matrix_unchecked(Matrix3::identity() * 2.0);
        assert!(matches!(classify(&AffineIsometry::linear(m), EPS_FORM), Err(Error::InvalidIsometry { .. })));
    }

    #[test]
    fn fixed_line_examples() {
        // τ = (1,1,0): fixed line {(s, s, -1)} along (1,1,0).
        let phi = AffineIsometry::new(n1(), MinkVec::new(1.0, 1.0, 0.0));
        let (p, v) = parabolic_fixed_line(&phi, EPS_FORM).unwrap().unwrap();
        assert!((phi.apply(p) - p).norm_inf() < 1e-12);
        assert!((p.t - p.x).abs() < 1e-12 && (p.y + 1.0).abs() < 1e-12);
        assert!((v - MinkVec::new(1.0, 1.0, 0.0)).norm_inf() < 1e-12);
        for s in [-3.0, 0.5, 10.0] {
            let q = p + v * s;
            assert!((phi.apply(q) - q).norm_inf() < 1e-10);
        }

        let lin = AffineIsometry::linear(n1());
        let (p, v) = parabolic_fixed_line(&lin, EPS_FORM).unwrap().unwrap();
        assert!(mink_cross(p, v).norm_inf() < 1e-12, "line passes through the origin");

        let off = AffineIsometry::new(n1(), MinkVec::new(1.0, 0.0, 0.0));
        assert_eq!(parabolic_fixed_line(&off, EPS_FORM).unwrap(), None);

        let hyp = AffineIsometry::linear(LinearIsometry::boost_x(1.0));
        assert_eq!(parabolic_fixed_line(&hyp, EPS_FORM), Err(Error::NotParabolic));
    }

    #[test]
    fn align_wedge_examples() {
        let a = MinkVec::new(1.0, 1.0, 0.0);
        let b = MinkVec::new(1.0, -1.0, 0.0);
        let g = align_wedge(a, b, a, b).unwrap();
        assert!((g.apply(a) - b).norm_inf() < 1e-12);
        assert!((g.apply(b) - a).norm_inf() < 1e-12);
        assert!(g.form_residual() < 1e-12);
        assert!((g.matrix().determinant() - 1.0).abs() < 1e-12);

        let err = align_wedge(a, b, a * 2.0, b).unwrap_err();
        assert!(matches!(err, Error::PairingMismatch { .. }));
        assert_eq!(align_wedge(a, a * 3.0, a, b), Err(Error::DegenerateFrame));
    }

    #[test]
    fn psl2_examples() {
        let id = psl2_to_so12(1.0, 0.0, 0.0, 1.0).unwrap();
        assert!(id.distance_to_identity() < 1e-15);
        let p = psl2_to_so12(1.0, 1.0, 0.0, 1.0).unwrap();
        assert!((p.trace() - 3.0).abs() < 1e-12);
        assert_eq!(classify_linear(&p, EPS_FORM), CausalClass::Parabolic);
        let h = psl2_to_so12(2.0, 1.0, 1.0, 1.0).unwrap();
        assert!((h.trace() - 8.0).abs() < 1e-12);
        assert!(h.form_residual() < 1e-12);
        let neg = psl2_to_so12(-2.0, -1.0, -1.0, -1.0).unwrap();
        assert_eq!(neg, h);
        assert!(matches!(psl2_to_so12(1.0, 1.0, 1.0, 1.0), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn boundary_points_are_lightlike() {
        for (a, b) in [(1.0, 0.0), (0.0, 1.0), (3.0, -2.0)] {
            let p = boundary_point(a, b);
            assert!(p.is_future_lightlike(1e-14));
        }
    }
}
