//! Lattice points of a zonotope and a short affine regular direction.

use zonotodd::algebra::rational;
use zonotodd::geometry::{short_affine_regular, zonotope_volume, Zonotope};
use zonotodd::matroid::VectorConfig;

fn main() -> zonotodd::Result<()> {
    let x = VectorConfig::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, -1]])?;
    let zonotope = Zonotope::new(&x)?;
    let w = short_affine_regular(&x)?;
    let w_text: Vec<String> = w.iter().map(rational::format).collect();
    println!("volume {}", zonotope_volume(&x)?);
    println!("w = ({})", w_text.join(", "));
    println!("Z(X)   {:?}", zonotope.lattice_points());
    println!("Z_-(X) {:?}", zonotope.interior_points());
    println!("Z(X,w) {:?}", zonotope.shifted_points(&w)?);
    Ok(())
}
