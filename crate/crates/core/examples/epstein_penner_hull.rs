//! Stabilized Epstein-Penner hulls of the punctured torus and of Γ(2).

use penner_hull::fixtures;
use penner_hull::hull::{quotient_surface, stabilize_hull};

fn main() -> Result<(), penner_hull::Error> {
    let cases = [
        ("torus", fixtures::torus_rep(), fixtures::torus_decoration(1.0)),
        ("Γ(2)", fixtures::gamma2_rep(), fixtures::gamma2_decoration(1.0)),
    ];
    for (name, rep, d) in cases {
        let h = stabilize_hull(&rep, &d, 2, 8)?;
        println!("{name}: stabilized at radius {:?}, {} facets in the ball", h.stabilized_at, h.facets.len());
        for (i, f) in h.fundamental.iter().enumerate() {
            let sides: Vec<String> = (0..f.len()).map(|k| format!("{:.6}", f.side_length(k))).collect();
            println!("  facet {i}: cusps {:?}, sides [{}]", f.cusps, sides.join(", "));
        }
        let q = quotient_surface(&h)?;
        println!("  area {:.6}, cone angles {:?}", q.surface.area(), q.cone_angles);
    }
    Ok(())
}
