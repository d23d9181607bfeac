mod common;

use penner_hull::flatsurf::delaunay;
use penner_hull::holonomy::{AffineRepresentation, MarkedGroupPresentation};
use penner_hull::minkowski::{classify_linear, CausalClass, LinearIsometry};
use penner_hull::suspension::{
    glue_cells, inscribe_on_circle, penner_roundtrip, susp_h2, susp_h2_inv, susp_metric_coefficient, susp_surface,
};
use penner_hull::{fixtures, Error};

fn unit_polygon(n: usize, phase: f64) -> Vec<[f64; 2]> {
    (0..n)
        .map(|k| {
            let a = phase + std::f64::consts::TAU * k as f64 / n as f64;
            [a.cos(), a.sin()]
        })
        .collect()
}

#[test]
fn glued_cells_match_the_linear_solve() {
    let c1 = inscribe_on_circle(vec![0, 1, 2], &unit_polygon(3, 0.0), [0.0, 0.0], 1.0).unwrap();
    let c2 = inscribe_on_circle(vec![3, 4, 5], &unit_polygon(3, 0.7), [0.0, 0.0], 1.0).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let g = glue_cells(&c1, i, &c2, j).unwrap();
            let (a1, b1) = (c1.vertices[i], c1.vertices[(i + 1) % 3]);
            let (a2, b2) = (c2.vertices[j], c2.vertices[(j + 1) % 3]);
            assert!((g.apply(a1) - b2).norm_inf() < 1e-10);
            assert!((g.apply(b1) - a2).norm_inf() < 1e-10);
            let want = common::align_wedge_by_solve(a1, b1, a2, b2);
            assert!((g.matrix() - want).amax() < 1e-9);
        }
    }
}

#[test]
fn metric_coefficient_examples() {
    let r = 2.0;
    let cell = inscribe_on_circle(vec![0, 1, 2, 3], &unit_polygon(4, 0.3).iter().map(|p| [r * p[0], r * p[1]]).collect::<Vec<_>>(), [0.0, 0.0], r)
        .unwrap();
    assert!((susp_metric_coefficient(&cell, [0.0, 0.0]).unwrap() + r * r).abs() < 1e-12);
    assert!((susp_metric_coefficient(&cell, [r / 2.0, 0.0]).unwrap() + 0.75 * r * r).abs() < 1e-12);
    assert!(matches!(susp_metric_coefficient(&cell, [r, 0.0]), Err(Error::OnOrOutsideCircumcircle(_))));
}

#[test]
fn off_circle_points_are_rejected() {
    let mut pts = unit_polygon(4, 0.0);
    pts[2] = [-1.01, 0.0];
    assert!(matches!(inscribe_on_circle(vec![0, 1, 2, 3], &pts, [0.0, 0.0], 1.0), Err(Error::NotCocyclic { .. })));
}

#[test]
fn tetrahedron_suspension() {
    let st = susp_surface(&fixtures::tetrahedron(1.0)).unwrap();
    assert_eq!(st.cells.len(), 4);
    assert_eq!(st.gluings.len(), 6);
    assert_eq!(st.decoration.points.len(), 4);
    for j in 0..4 {
        let h = st.representation.peripheral(j).unwrap();
        assert_eq!(classify_linear(&h.linear, 1e-9 * h.linear.matrix().amax()), CausalClass::Parabolic);
    }
    // Every decoration point is fixed by its peripheral element.
    for (j, p) in st.decoration.points.iter().enumerate() {
        let h = st.representation.peripheral(j).unwrap();
        assert!((h.linear.apply(*p) - *p).norm_inf() < 1e-8 * p.norm_inf());
    }
}

#[test]
fn scaling_the_surface_scales_the_recovered_cells() {
    let base = penner_roundtrip(&fixtures::tetrahedron(1.0), 8).unwrap();
    let big = penner_roundtrip(&fixtures::tetrahedron(3.0), 8).unwrap();
    assert_eq!(base.cells, big.cells);
    let mut a: Vec<f64> = base.quotient.cyclic_cells().iter().flat_map(|c| c.lengths.clone()).collect();
    let mut b: Vec<f64> = big.quotient.cyclic_cells().iter().flat_map(|c| c.lengths.clone()).collect();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    for (x, y) in a.iter().zip(&b) {
        assert!((3.0 * x - y).abs() < 1e-8 * y);
    }
}

#[test]
fn round_trips_recover_the_delaunay_cells() {
    for s in [fixtures::tetrahedron(1.0), fixtures::pillowcase(), fixtures::square_torus()] {
        let rt = penner_roundtrip(&s, 8).unwrap();
        assert_eq!(rt.cells, delaunay(&s).unwrap().cells.len());
        assert!(rt.max_relative_error < 1e-6);
        assert!(rt.cone_angle_error < 1e-6);
    }
}

#[test]
fn linear_suspension_round_trip() {
    let rep = fixtures::gamma2_rep();
    let st = susp_h2(&rep).unwrap();
    assert_eq!(st.representation.presentation.punctures(), 3);
    assert_eq!(susp_h2_inv(&st), rep);
}

#[test]
fn elliptic_peripherals_are_not_admissible() {
    let c1 = LinearIsometry::rotation(1.0);
    let c2 = LinearIsometry::rotation(-0.5);
    let c3 = c1.compose(&c2).inverse();
    let p = MarkedGroupPresentation::new(0, 3).unwrap();
    let rep = AffineRepresentation::linear(p, vec![c1, c2, c3]).unwrap();
    assert!(matches!(susp_h2(&rep), Err(Error::NotAdmissible(_))));
    assert!(matches!(susp_h2(&fixtures::torus_affine_rep()), Err(Error::NotAdmissible(_))));
}
