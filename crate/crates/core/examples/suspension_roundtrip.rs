//! Suspending a cone surface and recovering it from the hull of the resulting spacetime.

use penner_hull::fixtures;
use penner_hull::suspension::{penner_roundtrip, susp_surface};

fn main() -> Result<(), penner_hull::Error> {
    let st = susp_surface(&fixtures::tetrahedron(1.0))?;
    println!("tetrahedron: {} cells, {} gluings", st.cells.len(), st.gluings.len());
    for j in 0..st.decoration.points.len() {
        let h = st.representation.peripheral(j)?;
        println!("  peripheral {j}: trace {:.12}", h.linear.trace());
    }
    let surfaces = [
        ("tetrahedron", fixtures::tetrahedron(1.0)),
        ("pillowcase", fixtures::pillowcase()),
        ("random sphere", fixtures::random_sphere_surface(5, 2)),
    ];
    for (name, s) in &surfaces {
        let rt = penner_roundtrip(s, 8)?;
        println!(
            "{name}: stabilized at {:?}, {} cells, max relative error {:.2e}",
            rt.stabilized_at, rt.cells, rt.max_relative_error
        );
    }
    Ok(())
}
