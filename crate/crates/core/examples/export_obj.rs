//! Writes the hull facet complex of the punctured torus as Wavefront OBJ.
//!
//! Usage: `cargo run --example export_obj -- [path]` (default `torus_hull.obj`).

use penner_hull::decoration::orbit_ball;
use penner_hull::fixtures;
use penner_hull::hull::ep_surface;
use penner_hull::io::write_obj;

fn main() -> Result<(), penner_hull::Error> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "torus_hull.obj".into());
    let orbit = orbit_ball(&fixtures::torus_rep(), &fixtures::torus_decoration(1.0), 4);
    let h = ep_surface(&orbit)?;
    write_obj(&h, &path)?;
    println!("wrote {} faces over {} orbit points to {path}", h.facets.len(), orbit.len());
    Ok(())
}
