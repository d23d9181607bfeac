//! Classifying isometries of Minkowski space and aligning lightlike wedges.

use penner_hull::minkowski::{align_wedge, boundary_point, classify, psl2_to_so12, AffineIsometry, LinearIsometry};
use penner_hull::MinkVec;

fn main() -> Result<(), penner_hull::Error> {
    let maps = [
        ("rotation", AffineIsometry::linear(LinearIsometry::rotation(0.8))),
        ("boost", AffineIsometry::new(LinearIsometry::boost_x(1.2), MinkVec::new(0.0, 0.0, 1.0))),
        ("null rotation", AffineIsometry::new(LinearIsometry::null_rotation(1.0), MinkVec::new(0.0, 0.0, 0.5))),
        ("shear [[1,2],[0,1]]", AffineIsometry::linear(psl2_to_so12(1.0, 2.0, 0.0, 1.0)?)),
    ];
    for (name, phi) in &maps {
        let c = classify(phi, 1e-9)?;
        println!("{name:>20}: trace {:+.6}  {:?} / {:?}", phi.linear.trace(), c.linear, c.affine);
    }

    // Swap the ends of two lightlike segments of equal length.
    let (a1, b1) = (boundary_point(1.0, 0.0), boundary_point(0.0, 1.0));
    let (a2, b2) = (boundary_point(1.0, 1.0), boundary_point(1.0, -1.0));
    let lam = ((a1 - b1).q() / (a2 - b2).q()).sqrt();
    let (a2, b2) = (a2 * lam, b2 * lam);
    let g = align_wedge(a1, b1, a2, b2)?;
    println!("g a1 = {:?}\n  b2 = {:?}", g.apply(a1), b2);
    println!("g b1 = {:?}\n  a2 = {:?}", g.apply(b1), a2);
    println!("form residual {:e}", g.form_residual());
    Ok(())
}
