//! Flat cone surfaces built from glued Euclidean triangles, and their
//! Delaunay cellulation.

use std::collections::{HashMap, HashSet, VecDeque};
use std::f64::consts::PI;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::{EPS_CYC, EPS_GLUE};

/// Corner labels and side lengths; side `i` runs from corner `i` to corner `i+1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub vertices: [usize; 3],
    pub sides: [f64; 3],
}

impl Triangle {
    /// Angle at corner `k` by the law of cosines.
    pub fn angle(&self, k: usize) -> f64 {
        let a = self.sides[k];
        let b = self.sides[(k + 2) % 3];
        let o = self.sides[(k + 1) % 3];
        ((a * a + b * b - o * o) / (2.0 * a * b)).clamp(-1.0, 1.0).acos()
    }

    pub fn area(&self) -> f64 {
        let [a, b, c] = self.sides;
        // Kahan's stable Heron formula.
        let mut s = [a, b, c];
        s.sort_by(|x, y| y.total_cmp(x));
        let [a, b, c] = s;
        0.25 * ((a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))).max(0.0).sqrt()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SideRef {
    pub tri: usize,
    pub side: usize,
}

impl SideRef {
    pub fn new(tri: usize, side: usize) -> Self {
        SideRef { tri, side }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeSurface {
    pub triangles: Vec<Triangle>,
    /// Partner of each side; `None` on the boundary.
    pub gluing: Vec<[Option<SideRef>; 3]>,
}

fn strict_triangle(s: &[f64; 3]) -> bool {
    let p = s[0] + s[1] + s[2];
    s.iter().all(|&x| x > 0.0 && x.is_finite()) && (0..3).all(|i| p - 2.0 * s[i] > 1e-11 * p)
}

impl ConeSurface {
    pub fn new(triangles: Vec<Triangle>, gluing: Vec<[Option<SideRef>; 3]>) -> Result<Self> {
        if gluing.len() != triangles.len() {
            return Err(Error::InvalidSurface("gluing table size differs from triangle count".into()));
        }
        for (i, t) in triangles.iter().enumerate() {
            if !strict_triangle(&t.sides) {
                return Err(Error::DegenerateTriangle(i));
            }
        }
        let s = ConeSurface { triangles, gluing };
        for t in 0..s.triangles.len() {
            for i in 0..3 {
                let Some(p) = s.gluing[t][i] else { continue };
                if p.tri >= s.triangles.len() || p.side >= 3 {
                    return Err(Error::InvalidSurface(format!("side ({t},{i}) glued out of range")));
                }
                if p == SideRef::new(t, i) || s.gluing[p.tri][p.side] != Some(SideRef::new(t, i)) {
                    return Err(Error::InvalidSurface(format!("gluing at ({t},{i}) is not an involution")));
                }
                let (a, b) = (s.triangles[t].sides[i], s.triangles[p.tri].sides[p.side]);
                if (a - b).abs() > EPS_GLUE * a.max(b) {
                    return Err(Error::GluingMismatch(format!("({t},{i}) has length {a}, ({},{}) has {b}", p.tri, p.side)));
                }
                let (u, v) = s.side_ends(SideRef::new(t, i));
                let (x, y) = s.side_ends(p);
                if u != y || v != x {
                    return Err(Error::InvalidSurface(format!("side ({t},{i}) joins {u}-{v} but its partner joins {x}-{y}")));
                }
            }
        }
        Ok(s)
    }

    /// Glues sides with opposite vertex pairs; each directed pair must occur once.
    pub fn from_faces(faces: &[[usize; 3]], sides: &[[f64; 3]]) -> Result<Self> {
        let mut by_pair: HashMap<(usize, usize), SideRef> = HashMap::new();
        for (t, f) in faces.iter().enumerate() {
            for i in 0..3 {
                if by_pair.insert((f[i], f[(i + 1) % 3]), SideRef::new(t, i)).is_some() {
                    return Err(Error::InvalidSurface(format!("directed edge {}-{} occurs twice", f[i], f[(i + 1) % 3])));
                }
            }
        }
        let gluing = faces
            .iter()
            .map(|f| [0, 1, 2].map(|i| by_pair.get(&(f[(i + 1) % 3], f[i])).copied()))
            .collect();
        let triangles = faces.iter().zip(sides).map(|(f, s)| Triangle { vertices: *f, sides: *s }).collect();
        Self::new(triangles, gluing)
    }

    pub fn side_ends(&self, r: SideRef) -> (usize, usize) {
        let v = self.triangles[r.tri].vertices;
        (v[r.side], v[(r.side + 1) % 3])
    }

    pub fn length(&self, r: SideRef) -> f64 {
        self.triangles[r.tri].sides[r.side]
    }

    pub fn partner(&self, r: SideRef) -> Option<SideRef> {
        self.gluing[r.tri][r.side]
    }

    /// One slot per edge: the smaller of the two sides of an interior edge.
    pub fn edges(&self) -> Vec<SideRef> {
        let mut out = Vec::new();
        for t in 0..self.triangles.len() {
            for i in 0..3 {
                let r = SideRef::new(t, i);
                match self.partner(r) {
                    Some(p) if p < r => {}
                    _ => out.push(r),
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.triangles.iter().flat_map(|t| t.vertices).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_closed(&self) -> bool {
        self.gluing.iter().all(|g| g.iter().all(|p| p.is_some()))
    }

    pub fn area(&self) -> f64 {
        self.triangles.iter().map(Triangle::area).sum()
    }

    /// `V − E + F` with vertices identified by label.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices().len() as i64 - self.edges().len() as i64 + self.triangles.len() as i64
    }

    /// Sum of `(a² + b² + c²) / 4A` over triangles, i.e. of all corner cotangents;
    /// strictly decreases under each Lawson flip.
    pub fn delaunay_energy(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| t.sides.iter().map(|s| s * s).sum::<f64>() / (4.0 * t.area()))
            .sum()
    }
}

pub fn cone_angle(s: &ConeSurface, vertex: usize) -> Result<f64> {
    let mut total = 0.0;
    let mut found = false;
    for t in &s.triangles {
        for k in 0..3 {
            if t.vertices[k] == vertex {
                total += t.angle(k);
                found = true;
            }
        }
    }
    if found {
        Ok(total)
    } else {
        Err(Error::UnknownVertex(vertex))
    }
}

/// Cone angles of every vertex label, in label order.
pub fn cone_angles(s: &ConeSurface) -> Vec<(usize, f64)> {
    s.vertices().into_iter().map(|v| (v, cone_angle(s, v).expect("listed vertex"))).collect()
}

/// Both triangles of an edge laid out in the plane: `a`, `b` span the edge,
/// `c` is the third corner of the first triangle (above), `d` of the second (below).
#[derive(Clone, Debug, PartialEq)]
pub struct Hinge {
    pub edge: SideRef,
    pub other: SideRef,
    pub points: [[f64; 2]; 4],
}

fn place(len: f64, d0: f64, d1: f64, sign: f64) -> [f64; 2] {
    let x = (len * len + d0 * d0 - d1 * d1) / (2.0 * len);
    [x, sign * (d0 * d0 - x * x).max(0.0).sqrt()]
}

pub fn develop_hinge(s: &ConeSurface, edge: SideRef) -> Result<Hinge> {
    let other = s.partner(edge).ok_or(Error::BoundaryEdge(edge.tri * 3 + edge.side))?;
    let t = &s.triangles[edge.tri];
    let u = &s.triangles[other.tri];
    let i = edge.side;
    let j = other.side;
    let l = t.sides[i];
    let c = place(l, t.sides[(i + 2) % 3], t.sides[(i + 1) % 3], 1.0);
    let d = place(l, u.sides[(j + 1) % 3], u.sides[(j + 2) % 3], -1.0);
    Ok(Hinge { edge, other, points: [[0.0, 0.0], [l, 0.0], c, d] })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Legality {
    Legal,
    Illegal,
    Cocyclic,
}

/// In-circle determinant of `d` against the counterclockwise triangle `abc`,
/// positive inside, normalized by the fourth power of the largest coordinate span.
pub fn incircle_normalized(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> f64 {
    let det = robust::incircle(
        robust::Coord { x: a[0], y: a[1] },
        robust::Coord { x: b[0], y: b[1] },
        robust::Coord { x: c[0], y: c[1] },
        robust::Coord { x: d[0], y: d[1] },
    );
    let span = [a, b, c, d]
        .iter()
        .flat_map(|p| [a, b, c, d].map(|q| (p[0] - q[0]).abs().max((p[1] - q[1]).abs())))
        .fold(0.0f64, f64::max);
    det / span.powi(4)
}

pub fn is_legal(s: &ConeSurface, edge: SideRef, tol: f64) -> Result<Legality> {
    let h = develop_hinge(s, edge)?;
    let [a, b, c, d] = h.points;
    let v = incircle_normalized(a, b, c, d);
    Ok(if v.abs() <= tol {
        Legality::Cocyclic
    } else if v > 0.0 {
        Legality::Illegal
    } else {
        Legality::Legal
    })
}

fn cross2(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Whether the hinge quadrilateral is strictly convex, so the edge can be flipped.
pub fn is_flippable(s: &ConeSurface, edge: SideRef) -> Result<bool> {
    let h = develop_hinge(s, edge)?;
    if h.other.tri == edge.tri {
        return Ok(false);
    }
    let [a, b, c, d] = h.points;
    let scale = h.points.iter().map(|p| p[0].abs().max(p[1].abs())).fold(0.0, f64::max).powi(2);
    Ok(cross2(a, d, c) > 1e-9 * scale && cross2(b, c, d) > 1e-9 * scale)
}

/// Replaces the diagonal of the hinge by the other diagonal.
pub fn flip(s: &mut ConeSurface, edge: SideRef) -> Result<()> {
    let h = develop_hinge(s, edge)?;
    let (t, i) = (edge.tri, edge.side);
    let (u, j) = (h.other.tri, h.other.side);
    if t == u {
        return Err(Error::InvalidSurface(format!("edge ({t},{i}) is glued to its own triangle")));
    }
    let [a, b, c, d] = h.points;
    let (va, vb) = s.side_ends(edge);
    let vc = s.triangles[t].vertices[(i + 2) % 3];
    let vd = s.triangles[u].vertices[(j + 2) % 3];
    let cd = dist(c, d);
    let old = |tri: usize, side: usize| SideRef::new(tri, side % 3);
    // Old outer slots and where they land.
    let moves = [
        (old(t, i + 2), SideRef::new(t, 0)),
        (old(u, j + 1), SideRef::new(t, 1)),
        (old(u, j + 2), SideRef::new(u, 0)),
        (old(t, i + 1), SideRef::new(u, 1)),
    ];
    let remap = |r: SideRef| moves.iter().find(|(o, _)| *o == r).map(|(_, n)| *n).unwrap_or(r);
    let partners: Vec<Option<SideRef>> = moves.iter().map(|(o, _)| s.partner(*o)).collect();
    s.triangles[t] = Triangle { vertices: [vc, va, vd], sides: [dist(c, a), dist(a, d), cd] };
    s.triangles[u] = Triangle { vertices: [vd, vb, vc], sides: [dist(d, b), dist(b, c), cd] };
    s.gluing[t] = [None, None, Some(SideRef::new(u, 2))];
    s.gluing[u] = [None, None, Some(SideRef::new(t, 2))];
    for ((_, n), p) in moves.iter().zip(partners) {
        let p = p.map(remap);
        s.gluing[n.tri][n.side] = p;
        if let Some(p) = p {
            s.gluing[p.tri][p.side] = Some(*n);
        }
    }
    Ok(())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FlipOrder {
    /// Lexicographically smallest illegal edge first.
    Lexicographic,
    /// Uniformly random illegal edge, seeded.
    Random(u64),
}

/// A maximal cocyclic cell, vertices counterclockwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub vertices: Vec<usize>,
    /// Side `k` runs from vertex `k` to vertex `k+1`.
    pub sides: Vec<f64>,
    pub points: Vec<[f64; 2]>,
    pub center: [f64; 2],
    pub radius: f64,
    pub triangles: Vec<usize>,
    pub boundary: Vec<SideRef>,
}

impl Cell {
    pub fn angles(&self) -> Vec<f64> {
        let n = self.points.len();
        (0..n)
            .map(|k| {
                let p = self.points[k];
                let a = self.points[(k + 1) % n];
                let b = self.points[(k + n - 1) % n];
                let (u, v) = ([a[0] - p[0], a[1] - p[1]], [b[0] - p[0], b[1] - p[1]]);
                (u[0] * v[1] - u[1] * v[0]).atan2(u[0] * v[0] + u[1] * v[1])
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellEdge {
    pub a: (usize, usize),
    pub b: Option<(usize, usize)>,
    pub length: f64,
    pub status: Legality,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cellulation {
    pub triangulation: ConeSurface,
    pub cells: Vec<Cell>,
    pub edges: Vec<CellEdge>,
    pub flips: usize,
}

pub fn delaunay(s: &ConeSurface) -> Result<Cellulation> {
    delaunay_with(s, FlipOrder::Lexicographic)
}

pub fn delaunay_with(s: &ConeSurface, order: FlipOrder) -> Result<Cellulation> {
    let mut w = s.clone();
    let n_edges = w.edges().len();
    let cap = 100 * n_edges * n_edges;
    let mut rng = match order {
        FlipOrder::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        FlipOrder::Lexicographic => None,
    };
    let mut flips = 0;
    loop {
        let mut illegal = Vec::new();
        for e in w.edges() {
            if w.partner(e).is_some() && is_legal(&w, e, EPS_CYC)? == Legality::Illegal {
                illegal.push(e);
                if rng.is_none() {
                    break;
                }
            }
        }
        let pick = match rng.as_mut() {
            Some(r) => illegal.choose(r).copied(),
            None => illegal.first().copied(),
        };
        let Some(e) = pick else { break };
        if flips >= cap {
            return Err(Error::FlipLimitExceeded(cap));
        }
        flip(&mut w, e)?;
        flips += 1;
    }
    let (cells, edges) = cocyclic_cells(&w)?;
    Ok(Cellulation { triangulation: w, cells, edges, flips })
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, i: usize) -> usize {
        if self.0[i] != i {
            let r = self.find(self.0[i]);
            self.0[i] = r;
        }
        self.0[i]
    }
}

fn circumcenter(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> [f64; 2] {
    let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    let (a2, b2, c2) = (a[0] * a[0] + a[1] * a[1], b[0] * b[0] + b[1] * b[1], c[0] * c[0] + c[1] * c[1]);
    [
        (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d,
        (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d,
    ]
}

/// Lays out the triangles of a cluster in the plane, breadth first across internal sides.
fn develop_cluster(s: &ConeSurface, internal: &HashSet<SideRef>, root: usize) -> HashMap<usize, [[f64; 2]; 3]> {
    let mut pos: HashMap<usize, [[f64; 2]; 3]> = HashMap::new();
    let t = &s.triangles[root];
    let c = place(t.sides[0], t.sides[2], t.sides[1], 1.0);
    pos.insert(root, [[0.0, 0.0], [t.sides[0], 0.0], c]);
    let mut queue = VecDeque::from([root]);
    while let Some(t) = queue.pop_front() {
        for i in 0..3 {
            if !internal.contains(&SideRef::new(t, i)) {
                continue;
            }
            let Some(p) = s.partner(SideRef::new(t, i)) else { continue };
            if pos.contains_key(&p.tri) {
                continue;
            }
            let here = pos[&t];
            let (a, b) = (here[i], here[(i + 1) % 3]);
            // Partner side runs b → a.
            let u = &s.triangles[p.tri];
            let j = p.side;
            let l = dist(a, b);
            let local = place(l, u.sides[(j + 1) % 3], u.sides[(j + 2) % 3], -1.0);
            let (ex, ey) = ([(b[0] - a[0]) / l, (b[1] - a[1]) / l], [-(b[1] - a[1]) / l, (b[0] - a[0]) / l]);
            let d = [a[0] + local[0] * ex[0] + local[1] * ey[0], a[1] + local[0] * ex[1] + local[1] * ey[1]];
            let mut pts = [[0.0; 2]; 3];
            pts[j] = b;
            pts[(j + 1) % 3] = a;
            pts[(j + 2) % 3] = d;
            pos.insert(p.tri, pts);
            queue.push_back(p.tri);
        }
    }
    pos
}

fn cocyclic_cells(s: &ConeSurface) -> Result<(Vec<Cell>, Vec<CellEdge>)> {
    let n = s.triangles.len();
    let mut dsu = Dsu((0..n).collect());
    let mut internal: HashSet<SideRef> = HashSet::new();
    let mut status: HashMap<SideRef, Legality> = HashMap::new();
    for e in s.edges() {
        let Some(p) = s.partner(e) else { continue };
        let l = is_legal(s, e, EPS_CYC)?;
        status.insert(e, l);
        if l == Legality::Cocyclic {
            internal.insert(e);
            internal.insert(p);
            let (a, b) = (dsu.find(e.tri), dsu.find(p.tri));
            dsu.0[a.max(b)] = a.min(b);
        }
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut root_of: HashMap<usize, usize> = HashMap::new();
    for t in 0..n {
        let r = dsu.find(t);
        let k = *root_of.entry(r).or_insert_with(|| {
            clusters.push(Vec::new());
            clusters.len() - 1
        });
        clusters[k].push(t);
    }
    let mut cells = Vec::new();
    let mut slot_cell: HashMap<SideRef, (usize, usize)> = HashMap::new();
    for members in &clusters {
        let start = members
            .iter()
            .flat_map(|&t| (0..3).map(move |i| SideRef::new(t, i)))
            .find(|r| !internal.contains(r))
            .ok_or_else(|| Error::InvalidSurface("cocyclic cluster without boundary".into()))?;
        let mut boundary = vec![start];
        let mut cur = start;
        loop {
            let mut nx = SideRef::new(cur.tri, (cur.side + 1) % 3);
            while internal.contains(&nx) {
                let p = s.partner(nx).expect("internal side is glued");
                nx = SideRef::new(p.tri, (p.side + 1) % 3);
            }
            if nx == start {
                break;
            }
            boundary.push(nx);
            if boundary.len() > 3 * members.len() {
                return Err(Error::InvalidSurface("cell boundary does not close".into()));
            }
            cur = nx;
        }
        if boundary.len() != members.len() + 2 {
            return Err(Error::InvalidSurface(format!(
                "cocyclic cluster of {} triangles is not a disk ({} boundary sides)",
                members.len(),
                boundary.len()
            )));
        }
        let pos = develop_cluster(s, &internal, members[0]);
        let points: Vec<[f64; 2]> = boundary.iter().map(|r| pos[&r.tri][r.side]).collect();
        let center = circumcenter(points[0], points[1], points[2]);
        let radius = dist(center, points[0]);
        let spread = points.iter().map(|p| (dist(center, *p) - radius).abs()).fold(0.0, f64::max);
        if spread > 1e-6 * radius {
            return Err(Error::NotCocyclic { spread });
        }
        let k = cells.len();
        for (side, r) in boundary.iter().enumerate() {
            slot_cell.insert(*r, (k, side));
        }
        cells.push(Cell {
            vertices: boundary.iter().map(|r| s.side_ends(*r).0).collect(),
            sides: boundary.iter().map(|r| s.length(*r)).collect(),
            points,
            center,
            radius,
            triangles: members.clone(),
            boundary,
        });
    }
    let mut edges = Vec::new();
    for e in s.edges() {
        if internal.contains(&e) {
            continue;
        }
        edges.push(CellEdge {
            a: slot_cell[&e],
            b: s.partner(e).map(|p| slot_cell[&p]),
            length: s.length(e),
            status: status.get(&e).copied().unwrap_or(Legality::Legal),
        });
    }
    Ok((cells, edges))
}

/// Cell as a cyclic sequence of vertex labels and side lengths.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclicCell {
    pub labels: Vec<usize>,
    pub lengths: Vec<f64>,
}

impl From<&Cell> for CyclicCell {
    fn from(c: &Cell) -> Self {
        CyclicCell { labels: c.vertices.clone(), lengths: c.sides.clone() }
    }
}

impl CyclicCell {
    /// Equal up to cyclic rotation, labels exactly and lengths within relative `tol`.
    pub fn matches(&self, other: &CyclicCell, tol: f64) -> bool {
        let n = self.labels.len();
        if n != other.labels.len() {
            return false;
        }
        (0..n).any(|r| {
            (0..n).all(|k| {
                let m = (k + r) % n;
                let (a, b) = (self.lengths[k], other.lengths[m]);
                self.labels[k] == other.labels[m] && (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
            })
        })
    }
}

/// Multiset equality of cells under [`CyclicCell::matches`].
pub fn same_cells(a: &[CyclicCell], b: &[CyclicCell], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|c| {
        if let Some(k) = (0..b.len()).find(|&k| !used[k] && c.matches(&b[k], tol)) {
            used[k] = true;
            true
        } else {
            false
        }
    })
}

impl Cellulation {
    pub fn cyclic_cells(&self) -> Vec<CyclicCell> {
        self.cells.iter().map(CyclicCell::from).collect()
    }
}

/// Gauss–Bonnet defect `Σ(2π − θ_v) − 2πχ`.
pub fn gauss_bonnet_defect(s: &ConeSurface) -> f64 {
    let total: f64 = cone_angles(s).iter().map(|(_, a)| 2.0 * PI - a).sum();
    total - 2.0 * PI * s.euler_characteristic() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn kite() -> ConeSurface {
        let l = 1.04f64.sqrt();
        ConeSurface::from_faces(&[[0, 1, 2], [1, 0, 3]], &[[2.0, l, l], [2.0, l, l]]).unwrap()
    }

    #[test]
    fn hinge_examples() {
        let sq = fixtures::square_torus();
        let h = develop_hinge(&sq, SideRef::new(0, 2)).unwrap();
        let want = [[0.0, 0.0], [2f64.sqrt(), 0.0]];
        assert!(dist(h.points[0], want[0]) < 1e-12 && dist(h.points[1], want[1]) < 1e-12);
        assert!((dist(h.points[2], h.points[3]) - 2f64.sqrt()).abs() < 1e-12);

        let a = 2.0;
        let tet = fixtures::tetrahedron(a);
        let h = develop_hinge(&tet, SideRef::new(0, 0)).unwrap();
        assert!((dist(h.points[2], h.points[3]) - a * 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_triangle_rejected() {
        let r = ConeSurface::from_faces(&[[0, 1, 2]], &[[1.0, 1.0, 2.0 - 1e-12]]);
        assert_eq!(r, Err(Error::DegenerateTriangle(0)));
    }

    #[test]
    fn legality_examples() {
        let sq = fixtures::square_torus();
        assert_eq!(is_legal(&sq, SideRef::new(0, 2), EPS_CYC).unwrap(), Legality::Cocyclic);
        let tet = fixtures::tetrahedron(1.0);
        for e in tet.edges() {
            assert_eq!(is_legal(&tet, e, EPS_CYC).unwrap(), Legality::Legal);
        }
        // Flat kite: long diagonal with both apexes close to it.
        let kite = kite();
        assert_eq!(is_legal(&kite, SideRef::new(0, 0), EPS_CYC).unwrap(), Legality::Illegal);
        assert_eq!(is_legal(&kite, SideRef::new(0, 1), EPS_CYC), Err(Error::BoundaryEdge(1)));
    }

    #[test]
    fn tetrahedron_delaunay() {
        let tet = fixtures::tetrahedron(1.0);
        let c = delaunay(&tet).unwrap();
        assert_eq!(c.flips, 0);
        assert_eq!(c.cells.len(), 4);
        for v in tet.vertices() {
            assert!((cone_angle(&tet, v).unwrap() - PI).abs() < 1e-12);
        }
        assert!(gauss_bonnet_defect(&tet).abs() < 1e-10);
    }

    #[test]
    fn pillowcase_delaunay() {
        let p = fixtures::pillowcase();
        let c = delaunay(&p).unwrap();
        assert_eq!(c.cells.len(), 2);
        assert!(c.cells.iter().all(|c| c.vertices.len() == 4));
        for v in 0..4 {
            assert!((cone_angle(&p, v).unwrap() - PI).abs() < 1e-12);
        }
        assert_eq!(cone_angle(&p, 9), Err(Error::UnknownVertex(9)));
    }

    #[test]
    fn flat_interior_vertex() {
        // Hexagon of six equilateral triangles around vertex 0.
        let faces: Vec<[usize; 3]> = (0..6).map(|k| [0, 1 + k, 1 + (k + 1) % 6]).collect();
        let s = ConeSurface::from_faces(&faces, &[[1.0; 3]; 6]).unwrap();
        assert!((cone_angle(&s, 0).unwrap() - 2.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn flip_kite_restores_legality() {
        let mut kite = kite();
        let e0 = kite.delaunay_energy();
        let area = kite.area();
        flip(&mut kite, SideRef::new(0, 0)).unwrap();
        let kite = ConeSurface::new(kite.triangles, kite.gluing).unwrap();
        assert!(kite.delaunay_energy() < e0);
        assert!((kite.area() - area).abs() < 1e-12);
        assert_eq!(is_legal(&kite, SideRef::new(0, 2), EPS_CYC).unwrap(), Legality::Legal);
    }
}
