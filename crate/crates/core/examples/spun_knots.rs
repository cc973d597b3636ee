//! Artin spins of the bundled knots against the Alexander polynomial at t^2.

use std::time::Instant;

use twinskein::alexander::alexander_at_t_squared;
use twinskein::constructions::{artin_spin, table_knot, table_names};
use twinskein::skein::{evaluate, SkeinConfig, Strategy};

fn main() {
    let strategy = std::env::args()
        .nth(1)
        .map(|s| s.parse::<Strategy>().unwrap())
        .unwrap_or_default();
    let cfg = SkeinConfig {
        strategy,
        ..SkeinConfig::default()
    };
    for name in table_names() {
        let k = table_knot(&name).unwrap();
        let target = alexander_at_t_squared(&k.to_link()).unwrap();
        let start = Instant::now();
        let mut tally = (0, 0, 0);
        for cut in 0..k.passages.len().max(1) {
            match evaluate(&artin_spin(&k, cut), &cfg).unwrap().value() {
                Some(v) if *v == target => tally.0 += 1,
                Some(_) => tally.1 += 1,
                None => tally.2 += 1,
            }
        }
        println!(
            "{name:>6}  agree {:>2}  differ {}  unresolved {:>2}  {:>8.2?}  {target}",
            tally.0,
            tally.1,
            tally.2,
            start.elapsed()
        );
    }
}
