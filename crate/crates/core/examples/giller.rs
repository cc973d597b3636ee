//! Giller's polynomial of a ribbon 2-knot, and the twin it closes up to.

use twinskein::constructions::twin_closure;
use twinskein::corpus::fixture;
use twinskein::diagram::serialize;
use twinskein::skein::{evaluate, SkeinConfig};

fn main() {
    let k = fixture("giller_ex").unwrap();
    let cfg = SkeinConfig::default();
    println!("{}", serialize(&k));
    println!(
        "Giller polynomial: {}",
        evaluate(&k, &cfg).unwrap().value().unwrap()
    );

    let tw = twin_closure(&k).unwrap();
    println!("{}", serialize(&tw));
    println!(
        "twin invariant:    {}",
        evaluate(&tw, &cfg).unwrap().value().unwrap()
    );

    // the multiplier is a parameter
    let z = SkeinConfig {
        multiplier: "t".parse().unwrap(),
        ..cfg
    };
    println!(
        "with m = t:        {}",
        evaluate(&k, &z).unwrap().value().unwrap()
    );
}
