mod common;

use penner_hull::flatsurf::{
    cone_angles, delaunay, delaunay_with, develop_hinge, flip, gauss_bonnet_defect, incircle_normalized, is_flippable,
    is_legal, same_cells, ConeSurface, CyclicCell, FlipOrder, Legality, SideRef,
};
use penner_hull::fixtures;
use proptest::prelude::*;

fn cells(s: &ConeSurface, order: FlipOrder) -> Vec<CyclicCell> {
    delaunay_with(s, order).unwrap().cyclic_cells()
}

fn point() -> impl Strategy<Value = [f64; 2]> {
    prop::array::uniform2(-10.0f64..10.0)
}

proptest! {
    #[test]
    fn incircle_sign_matches_the_determinant(a in point(), b in point(), c in point(), d in point()) {
        let orient = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
        prop_assume!(orient.abs() > 1e-3);
        let (b, c) = if orient > 0.0 { (b, c) } else { (c, b) };
        let det = common::incircle_det(a, b, c, d);
        prop_assume!(det.abs() > 1e-6);
        prop_assert_eq!(incircle_normalized(a, b, c, d) > 0.0, det > 0.0);
    }

    #[test]
    fn flips_preserve_the_metric(seed in 0u64..500, pick in any::<prop::sample::Index>()) {
        let mut s = fixtures::random_sphere_surface(8, seed);
        let edges: Vec<SideRef> = s.edges().into_iter().filter(|e| is_flippable(&s, *e).unwrap()).collect();
        prop_assume!(!edges.is_empty());
        let e = edges[pick.index(edges.len())];
        let (area, angles, chi) = (s.area(), cone_angles(&s), s.euler_characteristic());

        // Diagonal of the hinge from side lengths alone.
        let t = &s.triangles[e.tri];
        let o = s.partner(e).unwrap();
        let u = &s.triangles[o.tri];
        let (l, ac, bc) = (t.sides[e.side], t.sides[(e.side + 2) % 3], t.sides[(e.side + 1) % 3]);
        let (ad, bd) = (u.sides[(o.side + 1) % 3], u.sides[(o.side + 2) % 3]);
        let theta = common::angle_opposite(l, ac, bc) + common::angle_opposite(l, ad, bd);
        let want = (ac * ac + ad * ad - 2.0 * ac * ad * theta.cos()).sqrt();
        let h = develop_hinge(&s, e).unwrap();
        let [_, _, pc, pd] = h.points;
        prop_assert!(((pc[0] - pd[0]).hypot(pc[1] - pd[1]) - want).abs() < 1e-9 * want.max(1.0));

        flip(&mut s, e).unwrap();
        prop_assert!((s.area() - area).abs() < 1e-9 * area);
        prop_assert_eq!(s.euler_characteristic(), chi);
        for ((v1, a1), (v2, a2)) in angles.iter().zip(cone_angles(&s)) {
            prop_assert_eq!(*v1, v2);
            prop_assert!((a1 - a2).abs() < 1e-9);
        }
        prop_assert!(s.edges().iter().any(|r| (s.length(*r) - want).abs() < 1e-9 * want.max(1.0)));
    }

    #[test]
    fn delaunay_cells_do_not_depend_on_the_starting_triangulation(seed in 0u64..200, order in any::<u64>()) {
        let s = fixtures::random_sphere_surface(7, seed);
        let want = cells(&s, FlipOrder::Lexicographic);
        let t = fixtures::random_retriangulation(&s, 25, seed ^ 0x5eed);
        prop_assert!(same_cells(&cells(&t, FlipOrder::Lexicographic), &want, 1e-9));
        prop_assert!(same_cells(&cells(&t, FlipOrder::Random(order)), &want, 1e-9));
        prop_assert!(gauss_bonnet_defect(&t).abs() < 1e-9);
        let tri = delaunay(&t).unwrap().triangulation;
        for e in tri.edges() {
            prop_assert_ne!(is_legal(&tri, e, 1e-9).unwrap(), Legality::Illegal);
        }
    }
}

#[test]
fn rhombus_diagonals() {
    for a in [0.5, 1.0, 3.0] {
        let s = fixtures::tetrahedron(a);
        let h = develop_hinge(&s, SideRef::new(0, 0)).unwrap();
        let [pa, pb, pc, pd] = h.points;
        let d = |p: [f64; 2], q: [f64; 2]| (p[0] - q[0]).hypot(p[1] - q[1]);
        assert!((d(pa, pb) - a).abs() < 1e-12);
        assert!((d(pc, pd) - a * 3f64.sqrt()).abs() < 1e-12);
    }
}
