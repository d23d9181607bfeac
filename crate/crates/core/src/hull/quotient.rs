use serde::{Deserialize, Serialize};

use super::{FundamentalFacet, HullSurface, Pairing};
use crate::error::{Error, Result};
use crate::flatsurf::{ConeSurface, CyclicCell, SideRef, Triangle};
use crate::minkowski::{mink_form, MinkVec};
use crate::tol::EPS_GLUE;

/// A fundamental facet developed into the Euclidean plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientCell {
    pub cusps: Vec<usize>,
    pub lengths: Vec<f64>,
    pub angles: Vec<f64>,
    pub points: Vec<[f64; 2]>,
}

impl From<&QuotientCell> for CyclicCell {
    fn from(c: &QuotientCell) -> Self {
        CyclicCell { labels: c.cusps.clone(), lengths: c.lengths.clone() }
    }
}

/// The flat cone surface `∂K / Γ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientSurfaceReport {
    pub cells: Vec<QuotientCell>,
    pub pairings: Vec<Pairing>,
    /// Indexed by cusp.
    pub cone_angles: Vec<f64>,
    /// Cells split into fans of triangles.
    pub surface: ConeSurface,
}

impl QuotientSurfaceReport {
    pub fn cyclic_cells(&self) -> Vec<CyclicCell> {
        self.cells.iter().map(CyclicCell::from).collect()
    }
}

/// Isometric coordinates on the spacelike plane of the polygon, counterclockwise.
fn develop(points: &[MinkVec]) -> Vec<[f64; 2]> {
    let o = points[0];
    let d1 = points[1] - o;
    let e1 = d1 * (1.0 / d1.q().sqrt());
    let d2 = points[2] - o;
    let w = d2 - e1 * mink_form(d2, e1);
    let e2 = w * (1.0 / w.q().sqrt());
    let mut out: Vec<[f64; 2]> = points.iter().map(|p| [mink_form(*p - o, e1), mink_form(*p - o, e2)]).collect();
    let area: f64 = (0..out.len())
        .map(|i| {
            let (a, b) = (out[i], out[(i + 1) % out.len()]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    if area < 0.0 {
        for p in &mut out {
            p[1] = -p[1];
        }
    }
    out
}

fn cell(ff: &FundamentalFacet) -> QuotientCell {
    QuotientCell {
        cusps: ff.cusps.clone(),
        lengths: (0..ff.len()).map(|i| ff.side_length(i)).collect(),
        angles: (0..ff.len()).map(|i| ff.angle(i)).collect(),
        points: develop(&ff.points),
    }
}

/// Slot of polygon side `k` in the fan triangulation starting at `base`.
fn fan_slot(base: usize, m: usize, k: usize) -> SideRef {
    if k == 0 {
        SideRef::new(base, 0)
    } else if k == m - 1 {
        SideRef::new(base + m - 3, 2)
    } else {
        SideRef::new(base + k - 1, 1)
    }
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Develops the fundamental facets and glues them along the pairings.
pub fn quotient_surface(h: &HullSurface) -> Result<QuotientSurfaceReport> {
    if h.fundamental.is_empty() {
        return Err(Error::InvalidSurface("hull has no fundamental facets".into()));
    }
    let cells: Vec<QuotientCell> = h.fundamental.iter().map(cell).collect();
    let n_cusps = cells.iter().flat_map(|c| c.cusps.iter()).max().map_or(0, |m| m + 1);
    let mut cone_angles = vec![0.0; n_cusps];
    for c in &cells {
        for (k, a) in c.cusps.iter().zip(&c.angles) {
            cone_angles[*k] += a;
        }
    }
    let mut triangles = Vec::new();
    let mut gluing: Vec<[Option<SideRef>; 3]> = Vec::new();
    let mut bases = Vec::new();
    for c in &cells {
        let base = triangles.len();
        bases.push(base);
        let m = c.points.len();
        for i in 0..m - 2 {
            let (a, b, d) = (0, i + 1, i + 2);
            triangles.push(Triangle {
                vertices: [c.cusps[a], c.cusps[b], c.cusps[d]],
                sides: [dist(c.points[a], c.points[b]), c.lengths[b], dist(c.points[d], c.points[a])],
            });
            if b == 1 {
                triangles.last_mut().expect("pushed").sides[0] = c.lengths[0];
            }
            if d == m - 1 {
                triangles.last_mut().expect("pushed").sides[2] = c.lengths[m - 1];
            }
            gluing.push([None, None, None]);
        }
        for i in 0..m.saturating_sub(3) {
            gluing[base + i][2] = Some(SideRef::new(base + i + 1, 0));
            gluing[base + i + 1][0] = Some(SideRef::new(base + i, 2));
        }
    }
    for p in &h.pairings {
        let (a, b) = (&cells[p.facet], &cells[p.other]);
        let (la, lb) = (a.lengths[p.side], b.lengths[p.other_side]);
        if (la - lb).abs() > EPS_GLUE * la.max(lb) {
            return Err(Error::GluingMismatch(format!("cell {} side {}: {la} vs {lb}", p.facet, p.side)));
        }
        let s = fan_slot(bases[p.facet], a.points.len(), p.side);
        let t = fan_slot(bases[p.other], b.points.len(), p.other_side);
        gluing[s.tri][s.side] = Some(t);
    }
    let surface = ConeSurface::new(triangles, gluing)?;
    Ok(QuotientSurfaceReport { cells, pairings: h.pairings.clone(), cone_angles, surface })
}
