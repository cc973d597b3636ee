use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twinskein::alexander::conway;
use twinskein::constructions::{connect_sum_twin, load_table, twin_closure, KNOT_TABLE};
use twinskein::corpus::{random_classical_move, random_diagram, random_move, seed_pool};
use twinskein::diagram::{
    parse, serialize, validate, Component, CrossingClass, CrossingId, CrossingSign, Diagram, Mode,
};
use twinskein::moves::canonicalize;
use twinskein::skein::{evaluate, skein_sign, smooth_crossing, switch_crossing, SkeinConfig};
use twinskein::LaurentPoly;

fn pool() -> &'static [Diagram] {
    static POOL: std::sync::OnceLock<Vec<Diagram>> = std::sync::OnceLock::new();
    POOL.get_or_init(|| seed_pool(&SkeinConfig::default()))
}

fn value(d: &Diagram, cfg: &SkeinConfig) -> Option<LaurentPoly> {
    evaluate(d, cfg).unwrap().value().cloned()
}

fn perturbed(seed: u64, moves: usize) -> (Diagram, Diagram) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = pool()[rng.gen_range(0..pool().len())].clone();
    let n = rng.gen_range(0..=moves);
    let moved = (0..n).fold(base.clone(), |d, _| random_move(&mut rng, &d).1);
    (base, moved)
}

/// Normal forms of `d` over every rotation and order of its loops.
fn presentations(d: &Diagram) -> BTreeSet<String> {
    let arcs: Vec<Component> = d.arcs().map(|(_, c)| c.clone()).collect();
    let loops: Vec<Component> = d.loops().map(|(_, c)| c.clone()).collect();
    let mut out = BTreeSet::new();
    let mut orders = vec![loops.clone()];
    if loops.len() == 2 {
        orders.push(vec![loops[1].clone(), loops[0].clone()]);
    }
    for order in orders {
        let lens: Vec<usize> = order.iter().map(|c| c.passages.len().max(1)).collect();
        let total: usize = lens.iter().product();
        for mut k in 0..total {
            let mut comps = arcs.clone();
            for (i, (c, &n)) in order.iter().zip(&lens).enumerate() {
                let mut c = c.clone();
                c.label = format!("L{}", i + 1);
                c.passages.rotate_left(k % n);
                k /= n;
                comps.push(c);
            }
            out.insert(serialize(&Diagram::new(
                d.mode(),
                comps,
                d.crossings().clone(),
            )));
        }
    }
    out
}

fn has_reversible_loop(d: &Diagram) -> bool {
    let own = presentations(d);
    d.loops().any(|(_, c)| {
        let r = d.reverse_component(&c.label).unwrap();
        !presentations(&r).is_disjoint(&own)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn skein_identity(seed in any::<u64>()) {
        let (_, d) = perturbed(seed, 1);
        let cfg = SkeinConfig::default();
        for &id in d.crossings().keys() {
            if !matches!(d.classify_crossing(id), Ok(CrossingClass::ArcSelf | CrossingClass::ArcLoop)) {
                continue;
            }
            let sw = switch_crossing(&d, id).unwrap();
            let sm = smooth_crossing(&d, id).unwrap();
            if let (Some(v), Some(a), Some(b)) = (value(&d, &cfg), value(&sw, &cfg), value(&sm, &cfg)) {
                let m = &cfg.multiplier * &b;
                let rhs = if skein_sign(&d, id) == Some(CrossingSign::Positive) { &a + &m } else { &a - &m };
                prop_assert_eq!(v, rhs, "{} at {}", serialize(&d), id);
            }
        }
    }

    #[test]
    fn moves_preserve_the_invariant(seed in any::<u64>()) {
        let (base, moved) = perturbed(seed, 3);
        let cfg = SkeinConfig::default();
        if let Some(v) = value(&moved, &cfg) {
            prop_assert_eq!(Some(v), value(&base, &cfg));
        }
    }

    #[test]
    fn twin_values_are_symmetric_up_to_loop_parity(seed in any::<u64>()) {
        let (_, d) = perturbed(seed, 2);
        if d.mode() == Mode::Twin {
            if let Some(v) = value(&d, &SkeinConfig::default()) {
                let expected = if d.loop_count() % 2 == 0 { v.clone() } else { -&v };
                prop_assert_eq!(v.invert(), expected);
                if d.loop_count() == 0 {
                    prop_assert!(v.is_symmetric());
                }
            }
        }
    }

    #[test]
    fn memo_does_not_change_values(seed in any::<u64>()) {
        let (_, d) = perturbed(seed, 3);
        let cfg = SkeinConfig::default();
        let with = value(&d, &cfg);
        prop_assert_eq!(&with, &value(&d, &cfg.clone().without_memo()));
        let parallel = SkeinConfig { parallel: true, ..cfg };
        prop_assert_eq!(with, value(&d, &parallel));
    }

    #[test]
    fn parse_serialize_round_trip(seed in any::<u64>(), n in 0usize..9, loops in 0usize..3, knot in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mode = if knot { Mode::TwoKnot } else { Mode::Twin };
        let d = random_diagram(&mut rng, mode, n, loops);
        let text = serialize(&d);
        let back = parse(&text).unwrap();
        prop_assert_eq!(serialize(&back), text.clone());
        prop_assert_eq!(parse(&serialize(&back)).unwrap(), back);
    }

    #[test]
    fn canonical_form_ignores_labels_and_tracks_reversals(seed in any::<u64>(), n in 0usize..7, loops in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, Mode::Twin, n, loops);
        let c = canonicalize(&d);
        let shifted = d.relabeled(|id| CrossingId(id.0 * 7 + 3));
        prop_assert_eq!(&canonicalize(&shifted), &c);
        let label = d.loops().next().unwrap().1.label.clone();
        let reversed = d.reverse_component(&label).unwrap();
        let r = canonicalize(&reversed);
        prop_assert_eq!(&r.key, &c.key);
        // a loop that reads the same backwards has no orientation to track
        if !has_reversible_loop(&d) {
            prop_assert_eq!(r.sign, -c.sign, "{}", serialize(&d));
        }
    }

    #[test]
    fn constructions_output_valid_twins(seed in any::<u64>(), n in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = random_diagram(&mut rng, Mode::TwoKnot, n, 0);
        let closed = twin_closure(&k).unwrap();
        prop_assert!(validate(&closed).is_empty());
        prop_assert_eq!(closed.crossings(), k.crossings());
        let doubled = connect_sum_twin(&k).unwrap();
        prop_assert!(validate(&doubled).is_empty());
        prop_assert_eq!(doubled.crossing_count(), 4 * k.crossing_count());
    }

    #[test]
    fn conway_is_invariant_under_planar_moves(seed in any::<u64>(), steps in 1usize..5) {
        let table = load_table(KNOT_TABLE).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, k) = &table[rng.gen_range(0..table.len())];
        if k.crossing_count() <= 7 {
            let start = k.to_link();
            let moved = (0..steps).fold(start.clone(), |l, _| random_classical_move(&mut rng, &l));
            prop_assert_eq!(conway(&moved).unwrap(), conway(&start).unwrap());
        }
    }
}

// A torus parallel to the twin twice around: the skein relation and the
// base cases force m^3 + 2m, and after reversing the torus, -2m. These
// are not negatives of each other.
#[test]
fn reversing_a_doubly_linked_torus() {
    let d = parse("twin { arc A: O1+ U2+ O3+ U4+ ; arc B: ; loop L1: O4+ U1+ O2+ U3+ ; }").unwrap();
    let r = d.reverse_component("L1").unwrap();
    let cfg = SkeinConfig::default();
    let m = LaurentPoly::t_minus_t_inv();
    assert_eq!(value(&d, &cfg), Some(&m.pow(3) + &m.scale(2)));
    assert_eq!(value(&r, &cfg), Some(m.scale(-2)));
}

// With a single linking crossing pair the sign change does hold.
#[test]
fn reversing_a_hopf_torus_negates() {
    let d = parse("twin { arc A: O1+ U2+ ; arc B: ; loop L1: U1+ O2+ ; }").unwrap();
    let r = d.reverse_component("L1").unwrap();
    let cfg = SkeinConfig::default();
    let v = value(&d, &cfg).unwrap();
    assert!(!v.is_zero());
    assert_eq!(value(&r, &cfg), Some(-&v));
}
