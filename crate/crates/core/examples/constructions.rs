//! Building twins: spinning, closing a 2-knot, and the doubled connected sum.

use twinskein::constructions::{artin_spin, connect_sum_twin, table_knot, twin_closure};
use twinskein::diagram::{parse, serialize, validate};
use twinskein::skein::{evaluate, SkeinConfig};

fn main() {
    let cfg = SkeinConfig::default();
    let k = table_knot("4_1").unwrap();
    let spun = artin_spin(&k, 3);
    println!("spun 4_1: {}", serialize(&spun));
    println!("  I = {}", evaluate(&spun, &cfg).unwrap().value().unwrap());

    let k2 = parse("knot { arc K: O1+ U2+ O3+ U1+ O2+ U3+ ; }").unwrap();
    let closed = twin_closure(&k2).unwrap();
    println!("closure:  {}", serialize(&closed));

    let doubled = connect_sum_twin(&k2).unwrap();
    println!(
        "doubled:  {} crossings, valid {}",
        doubled.crossing_count(),
        validate(&doubled).is_empty()
    );
    match evaluate(&doubled, &cfg).unwrap().value() {
        Some(v) => println!("  I = {v}"),
        None => println!("  unresolved"),
    }
}
