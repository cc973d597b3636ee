//! Runs the bundled acceptance suite; an optional argument overrides the multiplier.

use twinskein::corpus::{render_table, run_acceptance, SuiteOptions};

fn main() {
    let mut opts = SuiteOptions::default();
    if let Some(m) = std::env::args().nth(1) {
        opts.multiplier = m.parse().expect("a Laurent polynomial in t");
    }
    print!("{}", render_table(&run_acceptance(&opts)));
}
