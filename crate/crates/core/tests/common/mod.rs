//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, Matrix3};
use penner_hull::MinkVec;

/// A facet found by exhaustive search: sorted vertex indices and normalized support.
#[derive(Clone, Debug)]
pub struct OracleFacet {
    pub vertices: Vec<usize>,
    pub u: MinkVec,
    pub c: f64,
}

fn arr(p: &MinkVec) -> [f64; 3] {
    [p.t, p.x, p.y]
}

/// Every future-facing spacelike support plane through three of `pts`, by
/// checking all other points against it with the exact orientation predicate.
pub fn brute_force_facets(pts: &[MinkVec]) -> Vec<OracleFacet> {
    let n = pts.len();
    let c3 = |p: &MinkVec| robust::Coord3D { x: p.t, y: p.x, z: p.y };
    let mut out: Vec<OracleFacet> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (arr(&pts[i]), arr(&pts[j]), arr(&pts[k]));
                let e1 = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
                let e2 = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
                let nrm = [
                    e1[1] * e2[2] - e1[2] * e2[1],
                    e1[2] * e2[0] - e1[0] * e2[2],
                    e1[0] * e2[1] - e1[1] * e2[0],
                ];
                if nrm == [0.0; 3] {
                    continue;
                }
                // orient3d(a, b, c, d) has the sign of −n·(d − a).
                let mut above = false;
                let mut below = false;
                let mut on = vec![i, j, k];
                for l in 0..n {
                    if l == i || l == j || l == k {
                        continue;
                    }
                    let o = robust::orient3d(c3(&pts[i]), c3(&pts[j]), c3(&pts[k]), c3(&pts[l]));
                    if o > 0.0 {
                        below = true;
                    } else if o < 0.0 {
                        above = true;
                    } else {
                        on.push(l);
                    }
                }
                let outward = match (above, below) {
                    (false, _) => nrm,
                    (true, false) => [-nrm[0], -nrm[1], -nrm[2]],
                    (true, true) => continue,
                };
                let u = MinkVec::new(-outward[0], outward[1], outward[2]);
                if !(u.q() < 0.0 && u.t > 0.0) {
                    continue;
                }
                let u = u * (1.0 / (-u.q()).sqrt());
                on.sort_unstable();
                if out.iter().any(|f| f.vertices == on) {
                    continue;
                }
                let cval = pts[i].dot(u);
                out.push(OracleFacet { vertices: on, u, c: cval });
            }
        }
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

/// The linear map with `γA1 = B2`, `γB1 = A2` and `γᵀJγ = J`, found as the
/// least-squares solution of the nine-unknown linear system given by the two
/// vector constraints plus the preserved Minkowski cross product.
pub fn align_wedge_by_solve(a1: MinkVec, b1: MinkVec, a2: MinkVec, b2: MinkVec) -> Matrix3<f64> {
    let j = Matrix3::from_diagonal(&nalgebra::Vector3::new(-1.0, 1.0, 1.0));
    let cross = |u: MinkVec, v: MinkVec| {
        let e = u.to_vector().cross(&v.to_vector());
        MinkVec::from_vector(&(j * e))
    };
    let pairs = [(a1, b2), (b1, a2), (cross(a1, b1), cross(b2, a2))];
    let mut m = DMatrix::zeros(9, 9);
    let mut rhs = DVector::zeros(9);
    for (r, (src, dst)) in pairs.iter().enumerate() {
        let s = src.to_array();
        let d = dst.to_array();
        for row in 0..3 {
            for col in 0..3 {
                m[(3 * r + row, 3 * row + col)] = s[col];
            }
            rhs[3 * r + row] = d[row];
        }
    }
    let x = m.svd(true, true).solve(&rhs, 1e-14).expect("solvable");
    Matrix3::from_row_slice(x.as_slice())
}

/// The classical 4×4 in-circle determinant with rows `(x, y, x² + y², 1)`;
/// positive when `d` is inside the circle through counterclockwise `a, b, c`.
pub fn incircle_det(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> f64 {
    let rows = [a, b, c, d];
    let m = nalgebra::Matrix4::from_fn(|r, k| {
        let p = rows[r];
        match k {
            0 => p[0],
            1 => p[1],
            2 => p[0] * p[0] + p[1] * p[1],
            _ => 1.0,
        }
    });
    m.determinant()
}

/// Triangle angle opposite side `c` by the law of cosines.
pub fn angle_opposite(a: f64, b: f64, c: f64) -> f64 {
    ((a * a + b * b - c * c) / (2.0 * a * b)).clamp(-1.0, 1.0).acos()
}
