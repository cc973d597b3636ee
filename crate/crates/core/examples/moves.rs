//! Reidemeister, welded and F moves, simplification and canonical keys.

use twinskein::diagram::{parse, serialize, CrossingId, CrossingSign, Role};
use twinskein::moves::{
    apply_f_move, apply_welded_commute, canonicalize, insert_bigon, insert_kink, is_split,
    is_standard_twin, simplify, Gap, Position,
};

fn main() {
    let std = parse("twin { arc A: ; arc B: ; }").unwrap();
    let kinked = insert_kink(&std, &Gap::new("A", 0), Role::Over, CrossingSign::Negative).unwrap();
    let tangled = insert_bigon(
        &kinked,
        &Gap::new("B", 0),
        &Gap::new("A", 1),
        false,
        CrossingSign::Positive,
    )
    .unwrap();
    println!("built:      {}", serialize(&tangled));

    let (s, log) = simplify(&tangled);
    for e in &log {
        println!(
            "  {:?} on {:?} at {}[{}]",
            e.move_kind, e.crossings, e.position.label, e.position.index
        );
    }
    println!("simplified: {}", serialize(&s));
    println!("standard: {}", is_standard_twin(&tangled));

    // over-passages commute; a crossing of the two arcs at a marker slides off
    let d = parse("twin { arc A: O1+ O2- U3+ ; arc B: U1+ U2- ; loop L: O3+ ; }").unwrap();
    println!(
        "commuted:   {}",
        serialize(&apply_welded_commute(&d, &Position::new("A", 0)).unwrap())
    );
    println!(
        "F at 1:     {}",
        serialize(&apply_f_move(&d, CrossingId(1)).unwrap())
    );

    let split = parse("twin { arc A: U1+ U2- O3+ U3+ ; arc B: ; loop L: O2- O1+ ; }").unwrap();
    println!("split: {}", is_split(&split));

    let c = canonicalize(&split);
    let r = canonicalize(&split.reverse_component("L").unwrap());
    println!("key {} sign {} / reversed sign {}", c.key, c.sign, r.sign);
}
