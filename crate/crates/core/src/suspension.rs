//! Suspensions: cocyclic cells inscribed in the light cone and glued along
//! their sides, giving a holonomy representation with a decoration; and the
//! hyperbolic suspension of a linear representation.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::decoration::Decoration;
use crate::error::{Error, Result};
use crate::flatsurf::{delaunay, same_cells, Cell, Cellulation, ConeSurface, CyclicCell};
use crate::holonomy::{
    check_admissible, check_relation, AffineRepresentation, Letter, MarkedGroupPresentation, Presentation, Word,
};
use crate::hull::{quotient_surface, stabilize_hull, HullSurface, QuotientSurfaceReport};
use crate::minkowski::{align_wedge, AffineIsometry, LinearIsometry, MinkVec};
use crate::tol::{EPS_GLUE, EPS_REL, TOL_RT};

/// A cocyclic polygon placed on the future light cone, its plane at `t = r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuspendedCell {
    pub labels: Vec<usize>,
    pub radius: f64,
    /// Angles of the vertices on the circumcircle.
    pub angles: Vec<f64>,
    pub vertices: Vec<MinkVec>,
    pub center: [f64; 2],
}

impl SuspendedCell {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn side_length(&self, i: usize) -> f64 {
        (self.vertices[(i + 1) % self.len()] - self.vertices[i]).q().max(0.0).sqrt()
    }
}

/// Inscribes planar points lying on the circle `(center, radius)`.
pub fn inscribe_on_circle(labels: Vec<usize>, points: &[[f64; 2]], center: [f64; 2], radius: f64) -> Result<SuspendedCell> {
    let spread = points
        .iter()
        .map(|p| ((p[0] - center[0]).hypot(p[1] - center[1]) - radius).abs())
        .fold(0.0f64, f64::max);
    if radius.is_nan() || radius <= 0.0 || spread > 1e-9 * radius {
        return Err(Error::NotCocyclic { spread });
    }
    let angles: Vec<f64> = points.iter().map(|p| (p[1] - center[1]).atan2(p[0] - center[0])).collect();
    let vertices = angles.iter().map(|a| MinkVec::new(radius, radius * a.cos(), radius * a.sin())).collect();
    Ok(SuspendedCell { labels, radius, angles, vertices, center })
}

pub fn inscribe_cocyclic(cell: &Cell) -> Result<SuspendedCell> {
    inscribe_on_circle(cell.vertices.clone(), &cell.points, cell.center, cell.radius)
}

/// `q` of the inscribed point over `x`: `|x − center|² − r²`, negative strictly inside.
pub fn susp_metric_coefficient(cell: &SuspendedCell, x: [f64; 2]) -> Result<f64> {
    let d2 = (x[0] - cell.center[0]).powi(2) + (x[1] - cell.center[1]).powi(2);
    let q = d2 - cell.radius * cell.radius;
    if q >= 0.0 {
        return Err(Error::OnOrOutsideCircumcircle(q));
    }
    Ok(q)
}

/// The isometry taking `c1` to the position adjacent to `c2` across side `i` of `c1` and side `j` of `c2`.
pub fn glue_cells(c1: &SuspendedCell, i: usize, c2: &SuspendedCell, j: usize) -> Result<LinearIsometry> {
    let (a, b) = (c1.side_length(i), c2.side_length(j));
    if (a - b).abs() > EPS_GLUE * a.max(b) {
        return Err(Error::PairingMismatch { left: a, right: b });
    }
    let n1 = c1.len();
    let n2 = c2.len();
    align_wedge(c1.vertices[i], c1.vertices[(i + 1) % n1], c2.vertices[j], c2.vertices[(j + 1) % n2])
}

/// Side `a` of one cell glued to side `b` of another; `generator` is set for non-tree gluings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellGluing {
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub generator: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuspendedSpacetime {
    pub representation: AffineRepresentation,
    pub decoration: Decoration,
    pub cells: Vec<SuspendedCell>,
    /// Placement of each cell in the base development.
    pub placements: Vec<LinearIsometry>,
    pub gluings: Vec<CellGluing>,
    /// Surface vertex label of each decoration point.
    pub vertex_labels: Vec<usize>,
    /// Peripheral words in the free generators, one per decoration point.
    pub free_peripherals: Vec<Word>,
    /// Largest disagreement between peripheral words and the developed holonomy.
    pub peripheral_residual: f64,
    pub cellulation: Cellulation,
}

struct Assembly {
    cells: Vec<SuspendedCell>,
    placements: Vec<LinearIsometry>,
    gluings: Vec<CellGluing>,
    generators: Vec<LinearIsometry>,
    partner: HashMap<(usize, usize), (usize, usize)>,
    gluing_of: HashMap<(usize, usize), usize>,
}

fn assemble(cellulation: &Cellulation) -> Result<Assembly> {
    let cells: Vec<SuspendedCell> = cellulation.cells.iter().map(inscribe_cocyclic).collect::<Result<_>>()?;
    let mut partner = HashMap::new();
    let mut gluings = Vec::new();
    let mut gluing_of = HashMap::new();
    for e in &cellulation.edges {
        let b = e.b.ok_or_else(|| Error::InvalidSurface("surface has boundary".into()))?;
        partner.insert(e.a, b);
        partner.insert(b, e.a);
        gluing_of.insert(e.a, gluings.len());
        gluing_of.insert(b, gluings.len());
        gluings.push(CellGluing { a: e.a, b, generator: None });
    }
    let n = cells.len();
    let mut placements: Vec<Option<LinearIsometry>> = vec![None; n];
    placements[0] = Some(LinearIsometry::identity());
    let mut tree = vec![false; gluings.len()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for i in 0..cells[c].len() {
            let (d, j) = partner[&(c, i)];
            if placements[d].is_some() {
                continue;
            }
            let p = placements[c].expect("placed").compose(&glue_cells(&cells[d], j, &cells[c], i)?);
            placements[d] = Some(p);
            tree[gluing_of[&(c, i)]] = true;
            queue.push_back(d);
        }
    }
    let placements: Vec<LinearIsometry> = placements
        .into_iter()
        .map(|p| p.ok_or_else(|| Error::InvalidSurface("surface is not connected".into())))
        .collect::<Result<_>>()?;
    let mut generators = Vec::new();
    for (k, g) in gluings.iter_mut().enumerate() {
        if tree[k] {
            continue;
        }
        let ((a, i), (b, j)) = (g.a, g.b);
        let gen = placements[a].compose(&glue_cells(&cells[b], j, &cells[a], i)?).compose(&placements[b].inverse());
        g.generator = Some(generators.len());
        generators.push(gen);
    }
    Ok(Assembly { cells, placements, gluings, generators, partner, gluing_of })
}

/// Peripheral word, developed holonomy and visited corners of one vertex.
type VertexWalk = (Word, LinearIsometry, Vec<(usize, usize)>);

/// Walk counterclockwise around the vertex at corner `(cell, k)`: the peripheral word
/// and the developed holonomy.
fn walk_vertex(asm: &Assembly, start: (usize, usize)) -> Result<VertexWalk> {
    let mut word = Vec::new();
    let mut m = asm.placements[start.0];
    let mut corners = vec![start];
    let (mut c, mut k) = start;
    loop {
        let len = asm.cells[c].len();
        let side = (k + len - 1) % len;
        let (d, j) = asm.partner[&(c, side)];
        m = m.compose(&glue_cells(&asm.cells[d], j, &asm.cells[c], side)?);
        let g = &asm.gluings[asm.gluing_of[&(c, side)]];
        if let Some(gen) = g.generator {
            word.push(Letter::new(gen, g.a != (c, side)));
        }
        c = d;
        k = j;
        if (c, k) == start {
            break;
        }
        corners.push((c, k));
        if corners.len() > 4 * asm.cells.iter().map(SuspendedCell::len).sum::<usize>() {
            return Err(Error::InvalidSurface("vertex walk does not close".into()));
        }
    }
    let h = m.compose(&asm.placements[start.0].inverse());
    Ok((Word(word), h, corners))
}

struct VertexData {
    label: usize,
    /// One entry per corner: (corner, word, holonomy).
    rotations: Vec<((usize, usize), Word, LinearIsometry)>,
}

fn vertex_data(asm: &Assembly) -> Result<Vec<VertexData>> {
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut out: Vec<VertexData> = Vec::new();
    for c in 0..asm.cells.len() {
        for k in 0..asm.cells[c].len() {
            if seen.contains_key(&(c, k)) {
                continue;
            }
            let (_, _, corners) = walk_vertex(asm, (c, k))?;
            let mut rotations = Vec::new();
            for &corner in &corners {
                seen.insert(corner, out.len());
                let (w, h, _) = walk_vertex(asm, corner)?;
                rotations.push((corner, w, h));
            }
            out.push(VertexData { label: asm.cells[c].labels[k], rotations });
        }
    }
    Ok(out)
}

fn free_rep(asm: &Assembly, peripherals: Vec<Word>) -> AffineRepresentation {
    AffineRepresentation {
        presentation: Presentation::Free { rank: asm.generators.len(), peripherals },
        images: asm.generators.iter().map(|g| AffineIsometry::linear(*g)).collect(),
    }
}

/// Searches corner choices and orders with `c_1 ⋯ c_s = 1` in the free group,
/// preferring the best-conditioned choice (smallest product of image norms).
///
/// Depth-first over vertices, pruned when the reduced partial product is longer
/// than what the remaining vertices could cancel.
fn genus_zero_marking(vertices: &[VertexData]) -> Option<Vec<usize>> {
    struct Search<'a> {
        vertices: &'a [VertexData],
        max_len: Vec<usize>,
        used: Vec<bool>,
        picks: Vec<(usize, usize)>,
        best: Option<(f64, Vec<(usize, usize)>)>,
        nodes: usize,
    }
    impl Search<'_> {
        fn cost(&self, v: usize, c: usize) -> f64 {
            self.vertices[v].rotations[c].2.matrix().norm().ln()
        }

        fn go(&mut self, cur: &Word, spent: f64) {
            self.nodes += 1;
            if self.nodes > 200_000 || self.best.as_ref().is_some_and(|(b, _)| spent >= *b) {
                return;
            }
            if self.picks.len() == self.vertices.len() {
                if cur.is_empty() {
                    self.best = Some((spent, self.picks.clone()));
                }
                return;
            }
            let room: usize = (0..self.vertices.len()).filter(|&v| !self.used[v]).map(|v| self.max_len[v]).sum();
            if cur.len() > room {
                return;
            }
            for v in 0..self.vertices.len() {
                if self.used[v] || (self.picks.is_empty() && v != 0) {
                    continue;
                }
                for c in 0..self.vertices[v].rotations.len() {
                    let next = cur.concat(&self.vertices[v].rotations[c].1).reduced();
                    let step = self.cost(v, c);
                    self.used[v] = true;
                    self.picks.push((v, c));
                    self.go(&next, spent + step);
                    self.picks.pop();
                    self.used[v] = false;
                }
            }
        }
    }
    let mut search = Search {
        vertices,
        max_len: vertices.iter().map(|v| v.rotations.iter().map(|r| r.1.len()).max().unwrap_or(0)).collect(),
        used: vec![false; vertices.len()],
        picks: Vec::new(),
        best: None,
        nodes: 0,
    };
    search.go(&Word::empty(), 0.0);
    search.best.map(|(_, f)| f.into_iter().flat_map(|(v, c)| [v, c]).collect())
}

fn genus(cellulation: &Cellulation, n_vertices: usize) -> usize {
    let chi = n_vertices as i64 - cellulation.edges.len() as i64 + cellulation.cells.len() as i64;
    ((2 - chi) / 2).max(0) as usize
}

/// Suspends the Delaunay cells of `s` and assembles holonomy and decoration.
///
/// Genus-zero surfaces are marked with `c_1 ⋯ c_s = 1` when a corner choice achieves it;
/// otherwise the representation is on the free generators of the dual-graph cycles.
pub fn susp_surface(s: &ConeSurface) -> Result<SuspendedSpacetime> {
    let cellulation = delaunay(s)?;
    let asm = assemble(&cellulation)?;
    let vertices = vertex_data(&asm)?;
    let mut residual = 0.0f64;
    let free_all = free_rep(&asm, Vec::new());
    for v in &vertices {
        for (_, w, h) in &v.rotations {
            let r = free_all.evaluate_word(w)?;
            residual = residual.max(r.linear.matrix().metric_distance(h.matrix()) / h.matrix().norm().max(1.0));
            residual = residual.max((h.trace() - 3.0).abs() / h.matrix().norm().max(1.0));
        }
    }
    if residual > EPS_REL {
        return Err(Error::RelationResidualTooLarge(residual));
    }
    let point = |corner: (usize, usize)| asm.placements[corner.0].apply(asm.cells[corner.0].vertices[corner.1]);
    let marking = if genus(&cellulation, vertices.len()) == 0 { genus_zero_marking(&vertices) } else { None };
    let (representation, points, labels, free_peripherals) = match marking {
        Some(flat) => {
            let picks: Vec<(usize, usize)> = flat.chunks(2).map(|c| (c[0], c[1])).collect();
            let words: Vec<Word> = picks.iter().map(|&(v, c)| vertices[v].rotations[c].1.clone()).collect();
            let images = words.iter().map(|w| free_all.evaluate_word(w)).collect::<Result<Vec<_>>>()?;
            let p = MarkedGroupPresentation::new(0, picks.len())?;
            let rep = AffineRepresentation::surface(p, images)?;
            let pts = picks.iter().map(|&(v, c)| point(vertices[v].rotations[c].0)).collect();
            let labels = picks.iter().map(|&(v, _)| vertices[v].label).collect();
            (rep, pts, labels, words)
        }
        None => {
            let words: Vec<Word> = vertices.iter().map(|v| v.rotations[0].1.clone()).collect();
            let pts = vertices.iter().map(|v| point(v.rotations[0].0)).collect();
            let labels = vertices.iter().map(|v| v.label).collect();
            (free_rep(&asm, words.clone()), pts, labels, words)
        }
    };
    // Rounding in the relation product grows with the norms of its factors.
    let scale: f64 = (0..representation.presentation.punctures())
        .map(|j| representation.peripheral(j).map(|p| p.linear.matrix().norm().max(1.0)))
        .product::<Result<f64>>()?;
    let rel = check_relation(&representation) / scale;
    if rel > EPS_REL {
        return Err(Error::RelationResidualTooLarge(rel));
    }
    let decoration = Decoration::new(&representation, points)?;
    Ok(SuspendedSpacetime {
        representation,
        decoration,
        cells: asm.cells,
        placements: asm.placements,
        gluings: asm.gluings,
        vertex_labels: labels,
        free_peripherals,
        peripheral_residual: residual,
        cellulation,
    })
}

/// The linear spacetime `ℝ₊ × H²/Γ` of a linear representation; the level set
/// of cosmological time one is the hyperbolic surface itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearSpacetime {
    pub representation: AffineRepresentation,
}

pub fn susp_h2(rep: &AffineRepresentation) -> Result<LinearSpacetime> {
    if !rep.is_linear() {
        return Err(Error::NotAdmissible("representation has translation parts".into()));
    }
    let report = check_admissible(rep);
    if !report.is_admissible() {
        return Err(Error::NotAdmissible(format!("peripheral classes {:?}", report.peripheral_classes)));
    }
    Ok(LinearSpacetime { representation: rep.clone() })
}

pub fn susp_h2_inv(s: &LinearSpacetime) -> AffineRepresentation {
    s.representation.clone()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundTripReport {
    pub stabilized_at: Option<usize>,
    pub cells: usize,
    pub max_relative_error: f64,
    pub cone_angle_error: f64,
    pub quotient: QuotientSurfaceReport,
}

fn best_match_error(a: &CyclicCell, b: &CyclicCell) -> Option<f64> {
    let n = a.labels.len();
    if n != b.labels.len() {
        return None;
    }
    (0..n)
        .filter(|&r| (0..n).all(|k| a.labels[k] == b.labels[(k + r) % n]))
        .map(|r| {
            (0..n)
                .map(|k| {
                    let (x, y) = (a.lengths[k], b.lengths[(k + r) % n]);
                    (x - y).abs() / x.abs().max(y.abs())
                })
                .fold(0.0, f64::max)
        })
        .min_by(f64::total_cmp)
}

/// Surface → suspension → hull → quotient, compared with the Delaunay cells of the input.
pub fn penner_roundtrip(s: &ConeSurface, max_radius: usize) -> Result<RoundTripReport> {
    let st = susp_surface(s)?;
    let hull: HullSurface = stabilize_hull(&st.representation, &st.decoration, 1, max_radius)?;
    let q = quotient_surface(&hull)?;
    let relabel = |c: CyclicCell| CyclicCell { labels: c.labels.iter().map(|&j| st.vertex_labels[j]).collect(), lengths: c.lengths };
    let got: Vec<CyclicCell> = q.cyclic_cells().into_iter().map(relabel).collect();
    let want = st.cellulation.cyclic_cells();
    if !same_cells(&got, &want, TOL_RT) {
        return Err(Error::Mismatch(format!("recovered cells {got:?} differ from Delaunay cells {want:?}")));
    }
    let mut max_err = 0.0f64;
    for g in &got {
        let e = want.iter().filter_map(|w| best_match_error(g, w)).min_by(f64::total_cmp).unwrap_or(f64::INFINITY);
        max_err = max_err.max(e);
    }
    let mut angle_err = 0.0f64;
    for (j, &label) in st.vertex_labels.iter().enumerate() {
        let expected = crate::flatsurf::cone_angle(s, label)?;
        angle_err = angle_err.max((q.cone_angles[j] - expected).abs());
    }
    Ok(RoundTripReport {
        stabilized_at: hull.stabilized_at,
        cells: got.len(),
        max_relative_error: max_err,
        cone_angle_error: angle_err,
        quotient: q,
    })
}
