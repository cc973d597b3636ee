//! Skein evaluation of the twin invariant, with the resolution tree.

use twinskein::corpus::fixture;
use twinskein::skein::{evaluate, export_trace, SkeinConfig, TraceFormat};

fn main() {
    let d = fixture("tw_giller").unwrap();
    let r = evaluate(&d, &SkeinConfig::default().with_trace()).unwrap();
    println!("I = {}", r.value().unwrap());
    println!("{:?}", r.stats);
    println!("{}", export_trace(&r, TraceFormat::Dot).unwrap());

    for (w, leaf) in r.trace.as_ref().unwrap().weighted_leaves() {
        println!(
            "leaf {:?} weight {w} value {}",
            leaf.kind,
            leaf.value.as_ref().unwrap()
        );
    }

    let u = fixture("tw_unknot_pair").unwrap();
    let cfg = SkeinConfig {
        parallel: true,
        ..SkeinConfig::default()
    };
    println!("I(Tw_U) = {}", evaluate(&u, &cfg).unwrap().value().unwrap());
}
