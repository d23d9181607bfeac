//! Standard representations, decorations and cone surfaces used by the
//! examples, the command line tool and the tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decoration::Decoration;
use crate::flatsurf::{flip, is_flippable, ConeSurface, SideRef, Triangle};
use crate::holonomy::{AffineRepresentation, Letter, MarkedGroupPresentation, Word};
use crate::hull::kernel::hull_triangles;
use crate::minkowski::{boundary_point, mink_form, parabolic_direction, psl2_to_so12, AffineIsometry, LinearIsometry, MinkVec};

fn psl2(a: f64, b: f64, c: f64, d: f64) -> LinearIsometry {
    psl2_to_so12(a, b, c, d).expect("unimodular fixture")
}

/// Once-punctured torus: `a = [[1,1],[1,2]]`, `b = [[1,-1],[-1,2]]`, `c = [a,b]⁻¹`.
pub fn torus_rep() -> AffineRepresentation {
    let a = psl2(1.0, 1.0, 1.0, 2.0);
    let b = psl2(1.0, -1.0, -1.0, 2.0);
    let comm = a.compose(&b).compose(&a.inverse()).compose(&b.inverse());
    let p = MarkedGroupPresentation::new(1, 1).expect("valid");
    AffineRepresentation::linear(p, vec![a, b, comm.inverse()]).expect("rank 3")
}

/// Decoration at the cusp `0` fixed by `c`, scaled by `scale`.
pub fn torus_decoration(scale: f64) -> Decoration {
    Decoration::new(&torus_rep(), vec![boundary_point(0.0, 1.0) * (2.0 * scale)]).expect("fixed by c")
}

/// Principal congruence subgroup `Γ(2)`: `c1 = [[1,2],[0,1]]`, `c2 = [[1,0],[-2,1]]`, `c3 = (c1 c2)⁻¹`.
pub fn gamma2_rep() -> AffineRepresentation {
    let c1 = psl2(1.0, 2.0, 0.0, 1.0);
    let c2 = psl2(1.0, 0.0, -2.0, 1.0);
    let c3 = c1.compose(&c2).inverse();
    let p = MarkedGroupPresentation::new(0, 3).expect("valid");
    AffineRepresentation::linear(p, vec![c1, c2, c3]).expect("rank 3")
}

/// Decorations at the cusps `∞`, `0`, `1`, all scaled by `scale`.
pub fn gamma2_decoration(scale: f64) -> Decoration {
    let pts = [boundary_point(1.0, 0.0), boundary_point(0.0, 1.0), boundary_point(1.0, 1.0)];
    Decoration::new(&gamma2_rep(), pts.iter().map(|p| *p * scale).collect()).expect("fixed points")
}

/// Torus representation with translation parts `τ(a)`, `τ(b)`; `c` is closed up by the relation.
pub fn torus_affine_with(ta: MinkVec, tb: MinkVec) -> AffineRepresentation {
    let lin = torus_rep();
    let a = AffineIsometry::new(lin.images[0].linear, ta);
    let b = AffineIsometry::new(lin.images[1].linear, tb);
    let comm = a.compose(&b).compose(&a.inverse()).compose(&b.inverse());
    AffineRepresentation::new(lin.presentation.clone(), vec![a, b, comm.inverse()]).expect("rank 3")
}

/// `⟨τ(c) | v_c⟩` as a function of the six translation coordinates.
fn tangency_defect(t: &[f64; 6]) -> f64 {
    let rep = torus_affine_with(MinkVec::new(t[0], t[1], t[2]), MinkVec::new(t[3], t[4], t[5]));
    let c = rep.images[2];
    mink_form(c.translation, parabolic_direction(&c.linear))
}

fn defect_gradient() -> [f64; 6] {
    let mut g = [0.0; 6];
    for (k, gk) in g.iter_mut().enumerate() {
        let mut e = [0.0; 6];
        e[k] = 1.0;
        *gk = tangency_defect(&e);
    }
    g
}

/// Tangent affine deformation of the torus representation, from a seeded random cocycle.
pub fn torus_affine_rep_seeded(seed: u64) -> AffineRepresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = [0.0; 6];
    for x in &mut t {
        *x = rng.random_range(-1.0..1.0);
    }
    let g = defect_gradient();
    let f = tangency_defect(&t);
    let gg: f64 = g.iter().map(|x| x * x).sum();
    for k in 0..6 {
        t[k] -= f / gg * g[k];
    }
    torus_affine_with(MinkVec::new(t[0], t[1], t[2]), MinkVec::new(t[3], t[4], t[5]))
}

pub fn torus_affine_rep() -> AffineRepresentation {
    torus_affine_rep_seeded(7)
}

/// Satisfies the relation but the peripheral translation is not tangent.
pub fn torus_rep_non_tangent() -> AffineRepresentation {
    let g = defect_gradient();
    torus_affine_with(MinkVec::new(g[0], g[1], g[2]), MinkVec::new(g[3], g[4], g[5]))
}

pub fn random_word(rank: usize, max_len: usize, rng: &mut impl Rng) -> Word {
    let n = rng.random_range(0..=max_len);
    Word((0..n).map(|_| Letter::new(rng.random_range(0..rank), rng.random_bool(0.5))).collect())
}

pub fn random_word_pairs(rep: &AffineRepresentation, n: usize, max_len: usize, seed: u64) -> Vec<(Word, Word)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = rep.images.len();
    (0..n).map(|_| (random_word(rank, max_len, &mut rng), random_word(rank, max_len, &mut rng))).collect()
}

/// Regular tetrahedron with side `a`: four cone points of angle `π`.
pub fn tetrahedron(a: f64) -> ConeSurface {
    let faces = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]];
    ConeSurface::from_faces(&faces, &[[a; 3]; 4]).expect("valid fixture")
}

/// Two unit squares glued along their boundary, each split by a diagonal.
pub fn pillowcase() -> ConeSurface {
    let d = 2f64.sqrt();
    let faces = [[0, 1, 2], [0, 2, 3], [0, 3, 1], [3, 2, 1]];
    let sides = [[1.0, 1.0, d], [d, 1.0, 1.0], [1.0, d, 1.0], [1.0, 1.0, d]];
    ConeSurface::from_faces(&faces, &sides).expect("valid fixture")
}

/// Unit square with opposite sides identified; a single vertex of angle `2π`.
pub fn square_torus() -> ConeSurface {
    let d = 2f64.sqrt();
    let triangles = vec![
        Triangle { vertices: [0, 0, 0], sides: [1.0, 1.0, d] },
        Triangle { vertices: [0, 0, 0], sides: [d, 1.0, 1.0] },
    ];
    let r = SideRef::new;
    let gluing = vec![[Some(r(1, 1)), Some(r(1, 2)), Some(r(1, 0))], [Some(r(0, 2)), Some(r(0, 0)), Some(r(0, 1))]];
    ConeSurface::new(triangles, gluing).expect("valid fixture")
}

/// Boundary of the convex hull of `n` random points on the unit sphere, with intrinsic lengths.
pub fn random_sphere_surface(n: usize, seed: u64) -> ConeSurface {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let p = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0f64..1.0)];
        let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        if r > 0.1 && r <= 1.0 {
            pts.push([p[0] / r, p[1] / r, p[2] / r]);
        }
    }
    let tris = hull_triangles(&pts).expect("points in general position");
    let d = |a: usize, b: usize| {
        let (p, q) = (pts[a], pts[b]);
        ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt()
    };
    let sides: Vec<[f64; 3]> = tris.iter().map(|t| [d(t[0], t[1]), d(t[1], t[2]), d(t[2], t[0])]).collect();
    ConeSurface::from_faces(&tris, &sides).expect("closed hull surface")
}

/// Same metric, different triangulation: up to `attempts` random convex-hinge flips.
pub fn random_retriangulation(s: &ConeSurface, attempts: usize, seed: u64) -> ConeSurface {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = s.clone();
    for _ in 0..attempts {
        let edges = w.edges();
        let e = edges[rng.random_range(0..edges.len())];
        if w.partner(e).is_some() && is_flippable(&w, e).unwrap_or(false) {
            flip(&mut w, e).expect("flippable hinge");
        }
    }
    w
}
