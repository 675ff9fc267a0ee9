//! The unique element of P_-(X) with prescribed values on Z_-(X).

use std::collections::BTreeMap;

use zonotodd::algebra::rational::{self, int};
use zonotodd::geometry::Zonotope;
use zonotodd::matroid::graphic_config;
use zonotodd::toddcalc::interpolate_internal;

fn main() -> zonotodd::Result<()> {
    let x = graphic_config(4, &[(0, 3), (1, 3), (2, 3), (0, 1), (0, 2), (1, 2)]);
    let values: BTreeMap<Vec<i64>, _> = Zonotope::new(&x)?
        .interior_points()
        .into_iter()
        .enumerate()
        .map(|(i, z)| (z, int(i as i64)))
        .collect();
    let p = interpolate_internal(&x, &values)?;
    println!("p = {p}");
    for (z, v) in &values {
        println!("  {z:?} -> {}", rational::format(v));
    }
    Ok(())
}
