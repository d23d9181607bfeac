use penner_hull::decoration::{dec, dec_inv, orbit_ball, Decoration, Horocycle};
use penner_hull::holonomy::{AffineRepresentation, Letter, Word};
use penner_hull::{fixtures, MinkVec};
use proptest::prelude::*;

/// Every reduced word of length at most `radius`, applied to every decoration
/// point, with coincident points collapsed.
fn naive_orbit(rep: &AffineRepresentation, d: &Decoration, radius: usize) -> Vec<MinkVec> {
    let letters: Vec<Letter> = (0..rep.images.len()).flat_map(|g| [Letter::new(g, false), Letter::new(g, true)]).collect();
    let mut words = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &level {
            for l in &letters {
                if w.0.last() == Some(&l.inv()) {
                    continue;
                }
                let mut v = w.0.clone();
                v.push(*l);
                next.push(Word(v));
            }
        }
        words.extend(next.iter().cloned());
        level = next;
    }
    let mut out: Vec<MinkVec> = Vec::new();
    for w in &words {
        let g = rep.evaluate_word(w).unwrap();
        for p in &d.points {
            let y = g.apply(*p);
            if !out.iter().any(|q| (*q - y).norm_inf() <= 1e-9 * y.norm_inf().max(1.0)) {
                out.push(y);
            }
        }
    }
    out
}

#[test]
fn orbit_ball_matches_naive_enumeration() {
    let cases = [
        (fixtures::torus_rep(), fixtures::torus_decoration(1.0)),
        (fixtures::gamma2_rep(), fixtures::gamma2_decoration(1.0)),
    ];
    for (rep, d) in cases {
        for r in 0..=3 {
            let o = orbit_ball(&rep, &d, r);
            let want = naive_orbit(&rep, &d, r);
            assert_eq!(o.len(), want.len(), "radius {r}");
            for p in &want {
                assert!(o.find(*p).is_some());
            }
            for e in &o.entries {
                assert!(e.word.len() <= r);
                let y = rep.evaluate_word(&e.word).unwrap().apply(d.points[e.puncture]);
                assert!((y - e.point).norm_inf() <= 1e-9 * y.norm_inf().max(1.0));
            }
        }
    }
}

#[test]
fn orbit_balls_are_nested() {
    let rep = fixtures::gamma2_rep();
    let d = fixtures::gamma2_decoration(1.0);
    let mut prev = orbit_ball(&rep, &d, 0);
    for r in 1..=4 {
        let o = orbit_ball(&rep, &d, r);
        assert!(prev.entries.iter().all(|e| o.find(e.point).is_some()));
        assert!(o.len() > prev.len());
        prev = o;
    }
}

proptest! {
    #[test]
    fn decoration_map_round_trips(theta in -3.1f64..3.1, level in 0.1f64..5.0) {
        let h = Horocycle::from_display(theta, level);
        let p = dec(&h);
        prop_assert!(p.q().abs() < 1e-9 * p.t * p.t && p.t > 0.0);
        let back = dec_inv(p).unwrap();
        let (t2, l2) = back.display();
        prop_assert!((t2 - theta).abs() < 1e-9);
        prop_assert!((l2 - level).abs() < 1e-9);
    }

    #[test]
    fn horocycle_points_lie_on_the_horocycle(theta in -3.1f64..3.1, level in 0.2f64..3.0, s in -5.0f64..5.0) {
        let h = Horocycle::from_display(theta, level);
        let x = h.point(s);
        prop_assert!((x.q() + 1.0).abs() < 1e-8 * x.t * x.t);
        prop_assert!(h.residual(x).abs() < 1e-8 * x.t);
    }
}
