//! Exact Laurent polynomial arithmetic.

use twinskein::LaurentPoly;

fn main() {
    let m = LaurentPoly::t_minus_t_inv();
    let p: LaurentPoly = "t^-2 - 1 + t^2".parse().unwrap();
    println!("m        = {m}");
    println!("m^2 + 1  = {}", &m.pow(2) + &LaurentPoly::one());
    println!("p        = {p} (symmetric: {})", p.is_symmetric());
    println!("p(t^2)   = {}", p.substitute_square());
    println!("m(1/t)   = {}", m.invert());

    // a Conway polynomial in z, read at z = t - 1/t
    let nabla = LaurentPoly::parse_in("1 + 3z^2 + z^4", "z").unwrap();
    println!("{} at z = m: {}", nabla.display_in("z"), nabla.compose(&m));

    // big coefficients stay exact
    let big = (&m * &m).pow(20);
    println!("coefficient of t^0 in m^40: {}", big.coefficient(0));
}
