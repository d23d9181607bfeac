//! Decorations of the cusps, the horocycle bijection and orbit enumeration.
//!
//! A future lightlike `p` determines the horocycle `{x ∈ H² : ⟨x|p⟩ = −1/2}`:
//! for `x` on the hyperboloid `⟨x−p|x−p⟩ = −1 − 2⟨x|p⟩`, so the horocycle is
//! exactly where `x` meets the boundary of the future light cone of `p`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holonomy::{AffineRepresentation, Letter, Word};
use crate::minkowski::{mink_form, parabolic_direction, parabolic_fixed_line, MinkVec};
use crate::tol::{DEDUP, EPS_FORM};

/// One point per peripheral class, on the fixed line of `ρ(c_j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decoration {
    pub points: Vec<MinkVec>,
}

impl Decoration {
    /// Validates against the representation: lightlike and fixed by `ρ(c_j)`.
    /// For affine representations the point only has to lie on the fixed line.
    pub fn new(rep: &AffineRepresentation, points: Vec<MinkVec>) -> Result<Self> {
        if points.len() != rep.presentation.punctures() {
            return Err(Error::Schema {
                pointer: "/points".into(),
                message: format!("expected {} points, got {}", rep.presentation.punctures(), points.len()),
            });
        }
        let linear = rep.is_linear();
        for (j, p) in points.iter().enumerate() {
            if linear && !p.is_future_lightlike(EPS_FORM) {
                return Err(Error::NotLightlike { q: p.q(), t: p.t });
            }
            let phi = rep.peripheral(j)?;
            let moved = (phi.apply(*p) - *p).norm_inf();
            if moved > 1e-7 * (1.0 + p.norm_inf()) {
                return Err(Error::Mismatch(format!("decoration point {} is moved by its peripheral ({moved:.3e})", j + 1)));
            }
        }
        Ok(Decoration { points })
    }

    /// Point on the fixed ray (linear case, `t = scale`) or the solved point
    /// on the fixed line shifted by `scale` along it (affine case).
    pub fn standard(rep: &AffineRepresentation, scale: f64) -> Result<Self> {
        let mut points = Vec::new();
        for j in 0..rep.presentation.punctures() {
            let phi = rep.peripheral(j)?;
            let p = if phi.is_linear() {
                parabolic_direction(&phi.linear) * scale
            } else {
                let (base, dir) = parabolic_fixed_line(&phi, 1e-7)?
                    .ok_or_else(|| Error::NotAdmissible(format!("peripheral {} has no fixed line", j + 1)))?;
                base + dir * scale
            };
            points.push(p);
        }
        Self::new(rep, points)
    }

    pub fn scaled(&self, lambda: f64) -> Decoration {
        Decoration { points: self.points.iter().map(|p| *p * lambda).collect() }
    }
}

/// Horocycle in `H²`, stored by its cone point.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Horocycle {
    pub conepoint: MinkVec,
}

impl Horocycle {
    /// Boundary angle `θ` and level `λ` with `p = λ(1, cos θ, sin θ)`.
    pub fn display(&self) -> (f64, f64) {
        let p = self.conepoint;
        (p.y.atan2(p.x), p.t)
    }

    pub fn from_display(theta: f64, level: f64) -> Horocycle {
        Horocycle { conepoint: MinkVec::new(level, level * theta.cos(), level * theta.sin()) }
    }

    /// `|⟨x|p⟩ + 1/2|`.
    pub fn residual(&self, x: MinkVec) -> f64 {
        (mink_form(x, self.conepoint) + 0.5).abs()
    }

    /// Point of the horocycle at horocyclic parameter `s`.
    pub fn point(&self, s: f64) -> MinkVec {
        let (theta, lambda) = self.display();
        let t = lambda * (1.0 + s * s) + 0.25 / lambda;
        let x = lambda * (1.0 + s * s) - 0.25 / lambda;
        let y = s;
        // Solved at θ = 0, then rotated.
        let (c, sn) = (theta.cos(), theta.sin());
        MinkVec::new(t, c * x - sn * y, sn * x + c * y)
    }
}

pub fn dec_inv(p: MinkVec) -> Result<Horocycle> {
    if !p.is_future_lightlike(EPS_FORM) {
        return Err(Error::NotLightlike { q: p.q(), t: p.t });
    }
    Ok(Horocycle { conepoint: p })
}

pub fn dec(h: &Horocycle) -> MinkVec {
    h.conepoint
}

/// An orbit point `ρ(word)·p_puncture`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub word: Word,
    pub puncture: usize,
    pub point: MinkVec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitPointSet {
    pub entries: Vec<OrbitPoint>,
    pub radius: usize,
}

#[derive(Copy, Clone, Debug)]
struct Key(f64);

impl PartialEq for Key {
    fn eq(&self, o: &Self) -> bool {
        self.0.total_cmp(&o.0) == Ordering::Equal
    }
}
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.total_cmp(&o.0)
    }
}

/// Points indexed by their `t` coordinate for relative-tolerance lookup.
#[derive(Default)]
pub struct PointIndex {
    by_t: BTreeMap<Key, Vec<usize>>,
    points: Vec<MinkVec>,
}

impl PointIndex {
    pub fn new() -> Self {
        Self::default()
    }

    fn tol(p: MinkVec) -> f64 {
        DEDUP * p.norm_inf().max(1.0)
    }

    pub fn find(&self, p: MinkVec) -> Option<usize> {
        let tol = Self::tol(p);
        self.by_t
            .range(Key(p.t - tol)..=Key(p.t + tol))
            .flat_map(|(_, v)| v.iter())
            .copied()
            .find(|&i| (self.points[i] - p).norm_inf() <= tol)
    }

    pub fn insert(&mut self, p: MinkVec) -> usize {
        let i = self.points.len();
        self.points.push(p);
        self.by_t.entry(Key(p.t)).or_default().push(i);
        i
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn word_order(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Breadth-first orbit of the decoration points under words of length `≤ radius`.
pub fn orbit_ball(rep: &AffineRepresentation, d: &Decoration, radius: usize) -> OrbitPointSet {
    let letters: Vec<(Letter, _)> = (0..rep.images.len())
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .map(|l| (l, rep.image(l).expect("generator in range")))
        .collect();
    let mut index = PointIndex::new();
    let mut entries: Vec<OrbitPoint> = Vec::new();
    for (j, p) in d.points.iter().enumerate() {
        // Coinciding decoration points keep the first puncture.
        if index.find(*p).is_some() {
            continue;
        }
        index.insert(*p);
        entries.push(OrbitPoint { word: Word::empty(), puncture: j, point: *p });
    }
    let mut frontier: Vec<usize> = (0..entries.len()).collect();
    for _ in 0..radius {
        let level_start = entries.len();
        for &i in &frontier {
            for (l, g) in &letters {
                if entries[i].word.0.first() == Some(&l.inv()) {
                    continue;
                }
                let y = g.apply(entries[i].point);
                let mut w = Vec::with_capacity(entries[i].word.len() + 1);
                w.push(*l);
                w.extend_from_slice(&entries[i].word.0);
                let word = Word(w);
                match index.find(y) {
                    Some(k) if k >= level_start => {
                        if word_order(&word, &entries[k].word) == Ordering::Less {
                            entries[k].word = word;
                            entries[k].puncture = entries[i].puncture;
                        }
                    }
                    Some(_) => {}
                    None => {
                        index.insert(y);
                        entries.push(OrbitPoint { word, puncture: entries[i].puncture, point: y });
                    }
                }
            }
        }
        frontier = (level_start..entries.len()).collect();
    }
    OrbitPointSet { entries, radius }
}

impl OrbitPointSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn points(&self) -> Vec<MinkVec> {
        self.entries.iter().map(|e| e.point).collect()
    }

    /// Index of the entry matching `p` under the dedup tolerance.
    pub fn find(&self, p: MinkVec) -> Option<usize> {
        let tol = DEDUP * p.norm_inf().max(1.0);
        self.entries.iter().position(|e| (e.point - p).norm_inf() <= tol)
    }
}

/// Number of orbit points in the causal past of `q`.
pub fn count_orbit_in_past(o: &OrbitPointSet, q: MinkVec) -> usize {
    o.entries
        .iter()
        .filter(|e| {
            let v = q - e.point;
            let eps = EPS_FORM * (1.0 + v.norm_inf().powi(2));
            v.q() <= eps && v.t > -EPS_FORM * (1.0 + v.norm_inf())
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn dec_inv_examples() {
        let h = dec_inv(MinkVec::new(1.0, 1.0, 0.0)).unwrap();
        assert!(h.residual(MinkVec::new(1.25, 0.75, 0.0)) < 1e-15);
        let h = dec_inv(MinkVec::new(1.0, 0.0, 1.0)).unwrap();
        assert!(h.residual(MinkVec::new(1.25, 0.0, 0.75)) < 1e-15);
        let h = dec_inv(MinkVec::new(2.0, 2.0, 0.0)).unwrap();
        // −2t + 2x = −1/2 and x² − t² = −1 give t − x = 1/4, t + x = 4.
        let x = MinkVec::new(17.0 / 8.0, 15.0 / 8.0, 0.0);
        assert!((x.q() + 1.0).abs() < 1e-12);
        assert!(h.residual(x) < 1e-12);
        assert!(matches!(dec_inv(MinkVec::new(1.0, 0.0, 0.0)), Err(Error::NotLightlike { .. })));
    }

    #[test]
    fn dec_round_trips() {
        let p = MinkVec::new(3.0, 3.0 * 0.6, 3.0 * 0.8);
        assert_eq!(dec(&dec_inv(p).unwrap()), p);
        let h = Horocycle::from_display(0.0, 2.5);
        assert_eq!(h.conepoint, MinkVec::new(2.5, 2.5, 0.0));
        let (th, lv) = dec_inv(p).unwrap().display();
        assert!((Horocycle::from_display(th, lv).conepoint - p).norm_inf() < 1e-12);
    }

    #[test]
    fn horocycle_points() {
        let h = Horocycle::from_display(1.1, 0.7);
        for s in [-2.0, -0.3, 0.0, 0.5, 3.0] {
            let x = h.point(s);
            assert!((x.q() + 1.0).abs() < 1e-11);
            assert!(h.residual(x) < 1e-12);
        }
    }

    #[test]
    fn orbit_small_radii() {
        let rep = fixtures::torus_rep();
        let d = fixtures::torus_decoration(1.0);
        let o0 = orbit_ball(&rep, &d, 0);
        assert_eq!(o0.len(), 1);
        let o1 = orbit_ball(&rep, &d, 1);
        assert!(o1.len() <= 5 && o1.len() > 1);
        let o3 = orbit_ball(&rep, &d, 3);
        for e in &o3.entries {
            assert!(e.point.is_future_lightlike(1e-9));
            let img = rep.evaluate_word(&e.word).unwrap().apply(d.points[e.puncture]);
            assert!((img - e.point).norm_inf() <= 1e-9 * e.point.norm_inf().max(1.0));
        }
        let o2 = orbit_ball(&rep, &d, 2);
        for e in &o2.entries {
            assert!(o3.find(e.point).is_some());
        }
    }

    #[test]
    fn past_counts() {
        let p = MinkVec::new(1.0, 1.0, 0.0);
        let o = OrbitPointSet { entries: vec![OrbitPoint { word: Word::empty(), puncture: 0, point: p }], radius: 0 };
        assert_eq!(count_orbit_in_past(&o, p + MinkVec::new(1.0, 0.0, 0.0)), 1);
        assert_eq!(count_orbit_in_past(&o, MinkVec::new(-10.0, 0.0, 0.0)), 0);
    }
}
