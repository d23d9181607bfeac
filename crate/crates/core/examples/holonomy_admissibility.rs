//! Checking the necessary admissibility conditions of affine deformations.

use penner_hull::fixtures;
use penner_hull::holonomy::{check_admissible, check_relation};

fn main() {
    let reps = [
        ("linear torus", fixtures::torus_rep()),
        ("Γ(2)", fixtures::gamma2_rep()),
        ("tangent affine torus", fixtures::torus_affine_rep()),
        ("non-tangent torus", fixtures::torus_rep_non_tangent()),
    ];
    for (name, rep) in &reps {
        let r = check_admissible(rep);
        println!(
            "{name:>22}: {:?}  relation {:.1e}  peripherals {:?}  tangent {:?}",
            r.verdict,
            check_relation(rep),
            r.peripheral_classes,
            r.tangency_ok
        );
    }
    println!("note: {}", penner_hull::holonomy::DISCRETENESS_CAVEAT);
}
