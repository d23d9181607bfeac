//! Euclidean convex hull in ℝ³ with exact orientation signs.

use std::collections::HashMap;

use robust::{orient3d, Coord3D};

use crate::error::{Error, Result};
use crate::tol::COPLANAR;

/// Hull facet as a convex polygon, counterclockwise seen from outside.
#[derive(Clone, Debug, PartialEq)]
pub struct HullFacet {
    pub vertices: Vec<usize>,
    /// Unit outward normal.
    pub normal: [f64; 3],
}

fn c3(p: &[f64; 3]) -> Coord3D<f64> {
    Coord3D { x: p[0], y: p[1], z: p[2] }
}

/// Positive when `d` lies on the inner side of the counterclockwise-from-outside triangle `abc`.
fn orient(pts: &[[f64; 3]], a: usize, b: usize, c: usize, d: usize) -> f64 {
    orient3d(c3(&pts[a]), c3(&pts[b]), c3(&pts[c]), c3(&pts[d]))
}

fn sub(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: &[f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

struct Face {
    v: [usize; 3],
    alive: bool,
    outside: Vec<usize>,
}

struct Builder<'a> {
    pts: &'a [[f64; 3]],
    faces: Vec<Face>,
    edges: HashMap<(usize, usize), usize>,
}

impl Builder<'_> {
    fn add_face(&mut self, v: [usize; 3]) -> usize {
        let id = self.faces.len();
        for k in 0..3 {
            self.edges.insert((v[k], v[(k + 1) % 3]), id);
        }
        self.faces.push(Face { v, alive: true, outside: Vec::new() });
        id
    }

    fn kill(&mut self, f: usize) {
        let v = self.faces[f].v;
        for k in 0..3 {
            if self.edges.get(&(v[k], v[(k + 1) % 3])) == Some(&f) {
                self.edges.remove(&(v[k], v[(k + 1) % 3]));
            }
        }
        self.faces[f].alive = false;
    }

    fn visible(&self, f: usize, p: usize) -> bool {
        let v = self.faces[f].v;
        orient(self.pts, v[0], v[1], v[2], p) < 0.0
    }

    fn insert(&mut self, f0: usize, p: usize) {
        let mut visible = vec![f0];
        let mut seen: HashMap<usize, bool> = HashMap::new();
        seen.insert(f0, true);
        let mut horizon = Vec::new();
        let mut i = 0;
        while i < visible.len() {
            let f = visible[i];
            i += 1;
            let v = self.faces[f].v;
            for k in 0..3 {
                let (a, b) = (v[k], v[(k + 1) % 3]);
                let g = self.edges[&(b, a)];
                let vis = *seen.entry(g).or_insert_with(|| self.visible(g, p));
                if vis {
                    if !visible.contains(&g) {
                        visible.push(g);
                    }
                } else {
                    horizon.push((a, b));
                }
            }
        }
        let mut orphans = Vec::new();
        for &f in &visible {
            orphans.extend(std::mem::take(&mut self.faces[f].outside));
            self.kill(f);
        }
        let new: Vec<usize> = horizon.iter().map(|&(a, b)| self.add_face([a, b, p])).collect();
        for q in orphans {
            if q == p {
                continue;
            }
            if let Some(&f) = new.iter().find(|&&f| self.visible(f, q)) {
                self.faces[f].outside.push(q);
            }
        }
    }
}

/// Picks four affinely independent points or reports the affine rank.
fn initial_simplex(pts: &[[f64; 3]]) -> std::result::Result<[usize; 4], usize> {
    let n = pts.len();
    if n == 0 {
        return Err(0);
    }
    let a = 0;
    let Some(b) = (0..n).max_by(|&i, &j| norm(&sub(&pts[i], &pts[a])).total_cmp(&norm(&sub(&pts[j], &pts[a])))) else {
        return Err(0);
    };
    if pts[b] == pts[a] {
        return Err(0);
    }
    let ab = sub(&pts[b], &pts[a]);
    let area = |i: usize| norm(&cross(&ab, &sub(&pts[i], &pts[a])));
    let c = (0..n).max_by(|&i, &j| area(i).total_cmp(&area(j))).expect("nonempty");
    if area(c) == 0.0 {
        return Err(1);
    }
    let d = (0..n).max_by(|&i, &j| orient(pts, a, b, c, i).abs().total_cmp(&orient(pts, a, b, c, j).abs()));
    match d {
        Some(d) if orient(pts, a, b, c, d) != 0.0 => Ok([a, b, c, d]),
        _ => Err(2),
    }
}

/// Triangulated hull: triangles counterclockwise from outside.
pub fn hull_triangles(pts: &[[f64; 3]]) -> Result<Vec<[usize; 3]>> {
    let [a, b, c, d] = initial_simplex(pts).map_err(|r| Error::Degenerate(format!("points have affine rank {r} < 3")))?;
    let mut bld = Builder { pts, faces: Vec::new(), edges: HashMap::new() };
    // Orient abc so that d is inside.
    let (b, c) = if orient(pts, a, b, c, d) > 0.0 { (b, c) } else { (c, b) };
    let init = [
        bld.add_face([a, b, c]),
        bld.add_face([a, d, b]),
        bld.add_face([b, d, c]),
        bld.add_face([c, d, a]),
    ];
    for q in 0..pts.len() {
        if [a, b, c, d].contains(&q) {
            continue;
        }
        if let Some(&f) = init.iter().find(|&&f| bld.visible(f, q)) {
            bld.faces[f].outside.push(q);
        }
    }
    let mut pending: Vec<usize> = init.to_vec();
    while let Some(f) = pending.pop() {
        if !bld.faces[f].alive || bld.faces[f].outside.is_empty() {
            continue;
        }
        let p = bld.faces[f].outside[0];
        let first_new = bld.faces.len();
        bld.insert(f, p);
        pending.extend(first_new..bld.faces.len());
    }
    Ok(bld.faces.iter().filter(|f| f.alive).map(|f| f.v).collect())
}

fn tri_diam(pts: &[[f64; 3]], t: &[usize; 3]) -> f64 {
    (0..3).map(|k| norm(&sub(&pts[t[k]], &pts[t[(k + 1) % 3]]))).fold(0.0f64, f64::max)
}

fn tri_normal(pts: &[[f64; 3]], t: &[usize; 3]) -> [f64; 3] {
    cross(&sub(&pts[t[1]], &pts[t[0]]), &sub(&pts[t[2]], &pts[t[0]]))
}

/// Convex hull with coplanar triangles merged into convex polygons.
///
/// Facets are sorted by vertex list, each rotated to start at its smallest index.
pub fn convex_hull_3d(pts: &[[f64; 3]]) -> Result<Vec<HullFacet>> {
    let tris = hull_triangles(pts)?;
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, t) in tris.iter().enumerate() {
        for k in 0..3 {
            owner.insert((t[k], t[(k + 1) % 3]), i);
        }
    }
    // Region growing against the plane of each seed triangle, so that
    // nearly flat chains of facets are not merged transitively.
    let mut group = vec![usize::MAX; tris.len()];
    for seed in 0..tris.len() {
        if group[seed] != usize::MAX {
            continue;
        }
        group[seed] = seed;
        let t0 = tris[seed];
        let n0 = tri_normal(pts, &t0);
        let nn = norm(&n0);
        let a0 = pts[t0[0]];
        let diam = tri_diam(pts, &t0);
        let mut stack = vec![seed];
        let mut region: Vec<usize> = t0.to_vec();
        while let Some(i) = stack.pop() {
            let t = tris[i];
            for k in 0..3 {
                let j = owner[&(t[(k + 1) % 3], t[k])];
                if group[j] != usize::MAX {
                    continue;
                }
                // A convex polygon gains a new vertex with every triangle; anything else would pinch.
                let apex = tris[j].iter().copied().find(|w| *w != t[k] && *w != t[(k + 1) % 3]).expect("apex");
                if region.contains(&apex) {
                    continue;
                }
                // Band scaled by the smaller triangle, so a huge seed cannot absorb small neighbours.
                let band = COPLANAR * diam.min(tri_diam(pts, &tris[j])) * nn;
                let flat = tris[j].iter().all(|&w| dot(&n0, &sub(&pts[w], &a0)).abs() <= band);
                if flat && dot(&n0, &tri_normal(pts, &tris[j])) > 0.0 {
                    group[j] = seed;
                    region.push(apex);
                    stack.push(j);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for (i, &g) in group.iter().enumerate() {
        groups.entry(g).or_default().push(i);
    }
    let mut out = Vec::new();
    for members in groups.values() {
        let inside: std::collections::HashSet<(usize, usize)> = members
            .iter()
            .flat_map(|&i| {
                let t = tris[i];
                (0..3).map(move |k| (t[k], t[(k + 1) % 3]))
            })
            .collect();
        let mut next: HashMap<usize, usize> = HashMap::new();
        for &(a, b) in &inside {
            if !inside.contains(&(b, a)) {
                next.insert(a, b);
            }
        }
        let start = *next.keys().min().expect("boundary");
        let mut poly = vec![start];
        let mut cur = next[&start];
        while cur != start {
            poly.push(cur);
            cur = next[&cur];
            if poly.len() > next.len() {
                return Err(Error::Degenerate("coplanar region is not a disk".into()));
            }
        }
        let mut n = [0.0; 3];
        for &i in members {
            let m = tri_normal(pts, &tris[i]);
            n = [n[0] + m[0], n[1] + m[1], n[2] + m[2]];
        }
        let l = norm(&n);
        out.push(HullFacet { vertices: poly, normal: [n[0] / l, n[1] / l, n[2] / l] });
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(out)
}

/// Counterclockwise convex hull of planar points given in 2D coordinates.
pub fn convex_hull_2d(pts: &[[f64; 2]]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| pts[i][0].total_cmp(&pts[j][0]).then(pts[i][1].total_cmp(&pts[j][1])));
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let turn = |o: usize, a: usize, b: usize| {
        robust::orient2d(
            robust::Coord { x: pts[o][0], y: pts[o][1] },
            robust::Coord { x: pts[a][0], y: pts[a][1] },
            robust::Coord { x: pts[b][0], y: pts[b][1] },
        )
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], i) <= 0.0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], i) <= 0.0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
