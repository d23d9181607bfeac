//! Delaunay cellulations of flat cone surfaces by edge flips.

use penner_hull::fixtures;
use penner_hull::flatsurf::{cone_angles, delaunay};

fn main() -> Result<(), penner_hull::Error> {
    let base = fixtures::random_sphere_surface(8, 3);
    let surfaces = [
        ("tetrahedron", fixtures::tetrahedron(1.0)),
        ("pillowcase", fixtures::pillowcase()),
        ("square torus", fixtures::square_torus()),
        ("random sphere", base.clone()),
        ("random sphere, reflipped", fixtures::random_retriangulation(&base, 30, 1)),
    ];
    for (name, s) in &surfaces {
        let c = delaunay(s)?;
        println!("{name}: {} cells after {} flips", c.cells.len(), c.flips);
        for cell in &c.cells {
            println!("  vertices {:?}, circumradius {:.6}", cell.vertices, cell.radius);
        }
        let angles: Vec<String> = cone_angles(s).iter().map(|(v, a)| format!("{v}:{a:.4}")).collect();
        println!("  cone angles {}", angles.join(" "));
    }
    Ok(())
}
