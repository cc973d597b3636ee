//! Reading, checking and writing welded Gauss codes.

use twinskein::diagram::{parse, parse_lenient, serialize, validate};

fn main() {
    let text = "
        # a twin with one self-crossing on A, linked once with a torus
        twin {
            arc A: O7+ U3+ ;
            arc B: ;
            loop T: U7+ O3+ ;
        }";
    let d = parse(text).unwrap();
    println!("normal form: {}", serialize(&d));
    println!("crossings:   {}", d.crossing_count());
    println!("genus:       {}", d.supporting_genus());
    for id in d.crossings().keys() {
        println!("  {id}: {:?}", d.classify_crossing(*id).unwrap());
    }
    println!("json:        {}", d.to_json());

    let (bad, _) = parse_lenient("twin { arc A: O1+ O1+ ; arc B: ; loop T: (1, 2/4) ; }").unwrap();
    for v in validate(&bad).violations {
        println!("violation: {v}");
    }
    if let Err(e) = parse("twin { arc A: O1+ ; arc B U1+ ; }") {
        println!("parse error: {e}");
    }
}
