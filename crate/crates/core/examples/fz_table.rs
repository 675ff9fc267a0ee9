//! f_z for every point of the shifted zonotope of K4.

use zonotodd::geometry::{short_affine_regular, Zonotope};
use zonotodd::matroid::graphic_config;
use zonotodd::toddcalc::ToddCalculator;

fn main() -> zonotodd::Result<()> {
    let x = graphic_config(4, &[(0, 3), (1, 3), (2, 3), (0, 1), (0, 2), (1, 2)]);
    let w = short_affine_regular(&x)?;
    let zonotope = Zonotope::new(&x)?;
    let interior = zonotope.interior_points();
    let mut calc = ToddCalculator::new(&x)?;
    for z in zonotope.shifted_points(&w)? {
        let tag = if interior.contains(&z) { "interior" } else { "boundary" };
        println!("{z:?} {tag}: {}", calc.f_z(&z)?);
    }
    Ok(())
}
