//! The classical oracle: Conway and Alexander polynomials from Gauss codes.

use twinskein::alexander::{alexander_symmetrized, conway};
use twinskein::constructions::{braid_closure, table_knot, table_names, ClassicalKnotCode};

fn main() {
    for name in table_names() {
        let k = table_knot(&name).unwrap();
        let l = k.to_link();
        println!(
            "{name:>6}  {:<24} {}",
            conway(&l).unwrap().display_in("z"),
            alexander_symmetrized(&l).unwrap().display_in("u")
        );
    }

    let hopf = braid_closure(2, &[1, 1]);
    println!(
        "Hopf link {hopf}: {}",
        conway(&hopf).unwrap().display_in("z")
    );
    let whitehead = braid_closure(3, &[1, 1, -2, 1, -2]);
    println!(
        "{} components: {}",
        whitehead.components.len(),
        conway(&whitehead).unwrap().display_in("z")
    );

    let k: ClassicalKnotCode = "O1-U2-O3-U1-O2-U3-".parse().unwrap();
    println!(
        "left trefoil: {}",
        conway(&k.to_link()).unwrap().display_in("z")
    );
}
