//! The convex hull of a decorated orbit, its spacelike boundary and the
//! flat cone surface obtained as its quotient.

pub mod kernel;
mod quotient;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decoration::{orbit_ball, Decoration, OrbitPointSet};
use crate::error::{Error, Result};
use crate::holonomy::{AffineRepresentation, Word};
use crate::minkowski::{mink_cross, mink_form, parabolic_direction, MinkVec};

pub use kernel::{convex_hull_3d, HullFacet};
pub use quotient::{quotient_surface, QuotientCell, QuotientSurfaceReport};

/// Support plane `{x : ⟨x|u⟩ = c}` with `u` future timelike and `q(u) = −1`;
/// the orbit lies in `{⟨x|u⟩ ≤ c}`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Support {
    pub u: MinkVec,
    pub c: f64,
}

/// Spacelike hull facet; vertices index the orbit, counterclockwise in the `(x, y)` projection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub vertices: Vec<usize>,
    pub support: Support,
}

/// Representative of a group orbit of facets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FundamentalFacet {
    pub facet: usize,
    pub words: Vec<Word>,
    pub cusps: Vec<usize>,
    pub points: Vec<MinkVec>,
}

impl FundamentalFacet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Lorentzian length of side `i`.
    pub fn side_length(&self, i: usize) -> f64 {
        let d = self.points[(i + 1) % self.len()] - self.points[i];
        d.q().max(0.0).sqrt()
    }

    /// Interior angle at vertex `i`.
    pub fn angle(&self, i: usize) -> f64 {
        let n = self.len();
        let p = self.points[i];
        let a = self.points[(i + 1) % n] - p;
        let b = self.points[(i + n - 1) % n] - p;
        (mink_form(a, b) / (a.q() * b.q()).sqrt()).clamp(-1.0, 1.0).acos()
    }
}

/// Side `side` of fundamental facet `facet` is glued to side `other_side` of `other`;
/// `ρ(word)` carries the representative of `other` onto the facet adjacent to `facet` across that side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pairing {
    pub facet: usize,
    pub side: usize,
    pub other: usize,
    pub other_side: usize,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullSurface {
    pub orbit: OrbitPointSet,
    pub facets: Vec<Facet>,
    pub fundamental: Vec<FundamentalFacet>,
    pub pairings: Vec<Pairing>,
    pub stabilized_at: Option<usize>,
}

fn to3(p: &MinkVec) -> [f64; 3] {
    [p.t, p.x, p.y]
}

/// Support of the plane through `pts`, if spacelike, from a Euclidean normal `n` pointing away from the orbit.
fn spacelike_support(n: [f64; 3], p0: MinkVec) -> Option<Support> {
    // ⟨x|Jn⟩ equals the Euclidean n·x.
    let u = MinkVec::new(-n[0], n[1], n[2]);
    let scale = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
    if u.q() >= -1e-12 * scale || u.t <= 0.0 {
        return None;
    }
    let u = u * (1.0 / (-u.q()).sqrt());
    Some(Support { u, c: mink_form(p0, u) })
}

fn ep_from_points(pts: &[MinkVec], order: &[usize]) -> Result<Vec<Facet>> {
    let coords: Vec<[f64; 3]> = order.iter().map(|&i| to3(&pts[i])).collect();
    let mut out = Vec::new();
    match convex_hull_3d(&coords) {
        Ok(hull) => {
            for f in hull {
                let verts: Vec<usize> = f.vertices.iter().rev().map(|&k| order[k]).collect();
                if let Some(support) = spacelike_support(f.normal, pts[verts[0]]) {
                    out.push(Facet { vertices: verts, support });
                }
            }
        }
        Err(Error::Degenerate(_)) => out.extend(planar_facet(pts)?),
        Err(e) => return Err(e),
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    if out.is_empty() {
        return Err(Error::Degenerate("no spacelike facet".into()));
    }
    Ok(out)
}

/// All points in one plane: a single facet when that plane is spacelike.
fn planar_facet(pts: &[MinkVec]) -> Result<Option<Facet>> {
    let n = pts.len();
    let mut normal = None;
    'outer: for i in 1..n {
        for j in i + 1..n {
            let m = mink_cross(pts[i] - pts[0], pts[j] - pts[0]);
            if m.norm_euclid() > 1e-12 * (pts[i] - pts[0]).norm_euclid() * (pts[j] - pts[0]).norm_euclid() {
                normal = Some(m);
                break 'outer;
            }
        }
    }
    let Some(u) = normal else {
        return Err(Error::Degenerate("points are collinear".into()));
    };
    // mink_cross gives the Lorentz normal directly.
    if u.q() >= 0.0 {
        return Err(Error::Degenerate("points span a non-spacelike plane".into()));
    }
    let u = if u.t > 0.0 { u } else { -u };
    let u = u * (1.0 / (-u.q()).sqrt());
    let flat: Vec<[f64; 2]> = pts.iter().map(|p| [p.x, p.y]).collect();
    let verts = kernel::convex_hull_2d(&flat);
    Ok(Some(Facet { support: Support { u, c: mink_form(pts[verts[0]], u) }, vertices: verts }))
}

/// Spacelike facets of the convex hull of the orbit.
pub fn ep_surface(o: &OrbitPointSet) -> Result<HullSurface> {
    let order: Vec<usize> = (0..o.len()).collect();
    ep_surface_ordered(o, &order)
}

/// Same as [`ep_surface`] with the points fed to the hull kernel in a seeded random order.
pub fn ep_surface_shuffled(o: &OrbitPointSet, seed: u64) -> Result<HullSurface> {
    let mut order: Vec<usize> = (0..o.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    ep_surface_ordered(o, &order)
}

fn ep_surface_ordered(o: &OrbitPointSet, order: &[usize]) -> Result<HullSurface> {
    if o.is_empty() {
        return Err(Error::Degenerate("empty orbit".into()));
    }
    let facets = ep_from_points(&o.points(), order)?;
    Ok(HullSurface { orbit: o.clone(), facets, fundamental: Vec::new(), pairings: Vec::new(), stabilized_at: None })
}

/// Horocyclic coordinate at a cusp: `h(x) = ⟨x−p|e⟩ / ⟨x−p|v⟩` shifts by `s` under the peripheral.
#[derive(Clone, Debug)]
struct CuspFrame {
    p: MinkVec,
    v: MinkVec,
    e: MinkVec,
    shift: f64,
    lo: f64,
    peripheral: Word,
}

const WINDOW_OFFSET: f64 = 0.381_966_011_250_105_1;

impl CuspFrame {
    fn h(&self, x: MinkVec) -> f64 {
        let d = x - self.p;
        mink_form(d, self.e) / mink_form(d, self.v)
    }

    /// Reduces `h` into the window; returns the residue and the peripheral power `m`
    /// with `x = ρ(c)^m · x_residue`.
    fn reduce(&self, h: f64) -> (f64, i64) {
        let s = self.shift.abs();
        let n = ((h - self.lo) / s).floor();
        let m = if self.shift > 0.0 { n as i64 } else { -(n as i64) };
        (h - n * s, m)
    }

    fn same_key(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-7 * self.shift.abs()
    }

    fn power(&self, m: i64) -> Word {
        let base = if m >= 0 { self.peripheral.clone() } else { self.peripheral.inverse() };
        let mut w = Word::empty();
        for _ in 0..m.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }
}

fn cusp_frames(rep: &AffineRepresentation, o: &OrbitPointSet, ids: &[usize]) -> Result<Vec<CuspFrame>> {
    let words = rep.presentation.peripheral_words();
    let mut frames = Vec::new();
    for (j, &id) in ids.iter().enumerate() {
        let phi = rep.peripheral(j)?;
        let p = o.entries[id].point;
        let v = parabolic_direction(&phi.linear);
        let e = MinkVec::new(0.0, -v.y, v.x);
        let mut frame = CuspFrame { p, v, e, shift: 0.0, lo: 0.0, peripheral: words[j].clone() };
        let x_ref = o.entries.iter().map(|e| e.point).find(|&x| {
            let d = x - p;
            mink_form(d, v).abs() > 1e-9 * d.norm_euclid() * v.norm_euclid()
                && (phi.apply(x) - x).norm_inf() > 1e-9 * x.norm_inf().max(1.0)
        });
        let Some(x_ref) = x_ref else {
            return Err(Error::Degenerate(format!("orbit too small to frame cusp {}", j + 1)));
        };
        let h0 = frame.h(x_ref);
        frame.shift = frame.h(phi.apply(x_ref)) - h0;
        if frame.shift.abs() < 1e-12 {
            return Err(Error::Degenerate(format!("peripheral {} does not shift its horocycle", j + 1)));
        }
        frame.lo = h0 - WINDOW_OFFSET * frame.shift.abs();
        frames.push(frame);
    }
    Ok(frames)
}

#[derive(Clone, Debug)]
struct Corner {
    key: f64,
    facet: usize,
    assigned: Option<(usize, usize)>,
}

fn identity_entries(o: &OrbitPointSet, punctures: usize) -> Result<Vec<usize>> {
    (0..punctures)
        .map(|j| {
            o.entries
                .iter()
                .position(|e| e.word.is_empty() && e.puncture == j)
                .ok_or_else(|| Error::Degenerate(format!("decoration point {} coincides with another", j + 1)))
        })
        .collect()
}

fn lookup(corners: &mut [Corner], frame: &CuspFrame, key: f64) -> Option<usize> {
    corners.iter().position(|c| frame.same_key(c.key, key))
}

/// Extracts one facet per group orbit and the side pairings between them.
pub fn fundamental_domain(rep: &AffineRepresentation, hs: &mut HullSurface) -> Result<()> {
    let o = &hs.orbit;
    let ids = identity_entries(o, rep.presentation.punctures())?;
    let frames = cusp_frames(rep, o, &ids)?;
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); o.len()];
    for (f, facet) in hs.facets.iter().enumerate() {
        for (k, &v) in facet.vertices.iter().enumerate() {
            incident[v].push((f, k));
        }
    }
    let mut corners: Vec<Vec<Corner>> = Vec::new();
    for (j, &id) in ids.iter().enumerate() {
        let mut list = Vec::new();
        for &(f, pos) in &incident[id] {
            let vs = &hs.facets[f].vertices;
            let prev = vs[(pos + vs.len() - 1) % vs.len()];
            let h = frames[j].h(o.entries[prev].point);
            if frames[j].reduce(h).1 == 0 {
                list.push(Corner { key: h, facet: f, assigned: None });
            }
        }
        list.sort_by(|a, b| a.key.total_cmp(&b.key));
        corners.push(list);
    }
    if let Some(j) = corners.iter().position(|c| c.is_empty()) {
        return Err(Error::Degenerate(format!("no facet of the window fan at cusp {}", j + 1)));
    }
    let missing = |j: usize| Error::Degenerate(format!("facet fan at cusp {} is incomplete", j + 1));
    let mut fundamental: Vec<FundamentalFacet> = Vec::new();
    for j in 0..corners.len() {
        for c in 0..corners[j].len() {
            if corners[j][c].assigned.is_some() {
                continue;
            }
            let f = corners[j][c].facet;
            let vs = hs.facets[f].vertices.clone();
            let m = vs.len();
            let r = fundamental.len();
            for (i, &v) in vs.iter().enumerate() {
                let entry = &o.entries[v];
                let k = entry.puncture;
                let back = rep.evaluate_word(&entry.word)?.inverse();
                let prev = back.apply(o.entries[vs[(i + m - 1) % m]].point);
                let (key, _) = frames[k].reduce(frames[k].h(prev));
                let slot = lookup(&mut corners[k], &frames[k], key).ok_or_else(|| missing(k))?;
                match corners[k][slot].assigned {
                    None => corners[k][slot].assigned = Some((r, i)),
                    Some(a) if a == (r, i) => {}
                    Some(_) => return Err(Error::Degenerate("facet orbits overlap".into())),
                }
            }
            fundamental.push(FundamentalFacet {
                facet: f,
                words: vs.iter().map(|&v| o.entries[v].word.clone()).collect(),
                cusps: vs.iter().map(|&v| o.entries[v].puncture).collect(),
                points: vs.iter().map(|&v| o.entries[v].point).collect(),
            });
        }
    }
    let mut pairings = Vec::new();
    for (r, ff) in fundamental.iter().enumerate() {
        let m = ff.len();
        for i in 0..m {
            let k = ff.cusps[i];
            let back = rep.evaluate_word(&ff.words[i])?.inverse();
            let x = back.apply(ff.points[(i + 1) % m]);
            let (key, power) = frames[k].reduce(frames[k].h(x));
            let slot = lookup(&mut corners[k], &frames[k], key).ok_or_else(|| missing(k))?;
            let (g, pos) = corners[k][slot].assigned.ok_or_else(|| missing(k))?;
            let other_side = (pos + fundamental[g].len() - 1) % fundamental[g].len();
            let (a, b) = (ff.side_length(i), fundamental[g].side_length(other_side));
            if (a - b).abs() > crate::tol::EPS_GLUE * a.max(b) {
                return Err(Error::GluingMismatch(format!("facet {r} side {i}: {a} vs {b}")));
            }
            let word = ff.words[i].concat(&frames[k].power(power)).concat(&fundamental[g].words[pos].inverse()).reduced();
            pairings.push(Pairing { facet: r, side: i, other: g, other_side, word });
        }
    }
    hs.fundamental = fundamental;
    hs.pairings = pairings;
    Ok(())
}

fn same_fundamental(a: &[FundamentalFacet], b: &[FundamentalFacet], linear: bool, hs_a: &HullSurface, hs_b: &HullSurface) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1.0);
    let mut used = vec![false; b.len()];
    a.iter().all(|fa| {
        let hit = (0..b.len()).find(|&k| {
            let fb = &b[k];
            if used[k] || fa.len() != fb.len() {
                return false;
            }
            if linear && !close(hs_a.facets[fa.facet].support.c, hs_b.facets[fb.facet].support.c) {
                return false;
            }
            let n = fa.len();
            (0..n).any(|rot| {
                (0..n).all(|i| {
                    let i2 = (i + rot) % n;
                    fa.cusps[i] == fb.cusps[i2] && close(fa.side_length(i), fb.side_length(i2))
                })
            })
        });
        match hit {
            Some(k) => {
                used[k] = true;
                true
            }
            None => false,
        }
    })
}

/// Orbit size beyond which stabilization gives up.
pub const MAX_ORBIT_POINTS: usize = 200_000;

/// Options for [`stabilize_hull_with`].
#[derive(Copy, Clone, Debug, Default)]
pub struct StabilizeOptions {
    /// Feed points to the hull kernel in a seeded random order.
    pub shuffle: Option<u64>,
}

/// Grows the orbit ball until the fundamental facets agree for two consecutive radii.
pub fn stabilize_hull(rep: &AffineRepresentation, d: &Decoration, r0: usize, r_max: usize) -> Result<HullSurface> {
    stabilize_hull_with(rep, d, r0, r_max, StabilizeOptions::default())
}

pub fn stabilize_hull_with(
    rep: &AffineRepresentation,
    d: &Decoration,
    r0: usize,
    r_max: usize,
    opts: StabilizeOptions,
) -> Result<HullSurface> {
    let mut prev: Option<HullSurface> = None;
    let mut counts = Vec::new();
    for r in r0..=r_max {
        let orbit = orbit_ball(rep, d, r);
        if orbit.len() > MAX_ORBIT_POINTS {
            break;
        }
        let built = match opts.shuffle {
            Some(seed) => ep_surface_shuffled(&orbit, seed.wrapping_add(r as u64)),
            None => ep_surface(&orbit),
        };
        let cur = built.and_then(|mut hs| fundamental_domain(rep, &mut hs).map(|_| hs));
        match cur {
            Ok(mut hs) => {
                counts.push(hs.fundamental.len());
                if let Some(p) = &prev {
                    if same_fundamental(&p.fundamental, &hs.fundamental, rep.is_linear(), p, &hs) {
                        hs.stabilized_at = Some(r);
                        return Ok(hs);
                    }
                }
                prev = Some(hs);
            }
            Err(Error::Degenerate(_)) => {
                counts.push(0);
                prev = None;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::NotStabilized { max_radius: r_max, facet_counts: counts })
}

/// Whether `x` lies in the facet polygon, tested in the `(x, y)` projection.
fn facet_contains(hs: &HullSurface, f: &Facet, x: MinkVec) -> bool {
    let pts: Vec<MinkVec> = f.vertices.iter().map(|&v| hs.orbit.entries[v].point).collect();
    let n = pts.len();
    let scale = pts.iter().map(|p| p.norm_inf()).fold(x.norm_inf(), f64::max);
    (0..n).all(|i| {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        (b.x - a.x) * (x.y - a.y) - (b.y - a.y) * (x.x - a.x) >= -1e-12 * scale * scale
    })
}

/// Number of distinct points where the line `base + t·dir` crosses the spacelike facets.
///
/// Crossings on facets touching words longer than `R − 2` are reported as inconclusive,
/// as are lines missing the truncated surface altogether.
pub fn ray_crossing_check(hs: &HullSurface, base: MinkVec, dir: MinkVec) -> Result<usize> {
    if !dir.is_future_timelike() {
        return Err(Error::Degenerate("ray direction must be future timelike".into()));
    }
    let frontier = hs.orbit.radius.saturating_sub(2);
    let mut hits: Vec<MinkVec> = Vec::new();
    for f in &hs.facets {
        let Support { u, c } = f.support;
        let t = (c - mink_form(base, u)) / mink_form(dir, u);
        let x = base + dir * t;
        if !facet_contains(hs, f, x) {
            continue;
        }
        if f.vertices.iter().any(|&v| hs.orbit.entries[v].word.len() > frontier) {
            return Err(Error::InconclusiveNearBoundary);
        }
        let tol = 1e-9 * x.norm_inf().max(1.0);
        if !hits.iter().any(|h| (*h - x).norm_inf() <= tol) {
            hits.push(x);
        }
    }
    if hits.is_empty() {
        return Err(Error::InconclusiveNearBoundary);
    }
    Ok(hits.len())
}
