//! Growth of the decorated orbit in word balls of increasing radius.

use penner_hull::decoration::{count_orbit_in_past, orbit_ball};
use penner_hull::{fixtures, MinkVec};

fn main() {
    let rep = fixtures::gamma2_rep();
    let d = fixtures::gamma2_decoration(1.0);
    for p in &d.points {
        println!("decoration point {p:?}, q = {:.1e}", p.q());
    }
    for r in 0..=5 {
        let o = orbit_ball(&rep, &d, r);
        let past = count_orbit_in_past(&o, MinkVec::new(10.0, 0.0, 0.0));
        println!("radius {r}: {:>5} points, {:>3} in the past of (10, 0, 0)", o.len(), past);
    }
}
