//! Every verification suite on the complete graph K4.

use zonotodd::matroid::graphic_config;
use zonotodd::verify::{Verifier, VerifyOptions};

fn main() {
    let x = graphic_config(4, &[(0, 3), (1, 3), (2, 3), (0, 1), (0, 2), (1, 2)]);
    let mut v = Verifier::new(&x, VerifyOptions::default());
    for r in v.run_all() {
        println!("{:<16} {:?} ({} checks)", r.name, r.status, r.checked);
        if let Some(c) = &r.counterexample {
            println!("  {c:?}");
        }
    }
}
