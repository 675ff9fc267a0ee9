//! Vector partition function of the pentagon configuration and its
//! polynomial piece on a chamber.

use zonotodd::algebra::rational;
use zonotodd::geometry::short_affine_regular;
use zonotodd::matroid::VectorConfig;
use zonotodd::splines::MultiSpline;

fn main() -> zonotodd::Result<()> {
    let x = VectorConfig::from_rows(&[vec![1, 0, 0, 1, 0], vec![0, 1, 0, 0, 1], vec![0, 0, 1, 1, 1]])?;
    let w = short_affine_regular(&x)?;
    let mut ms = MultiSpline::new(&x)?;
    for u in [[1i64, 1, 1], [2, 2, 3], [3, 1, 4]] {
        let uq = rational::from_ints(&u);
        let piece = ms.piece_at(&uq, &w)?.poly;
        println!(
            "u = {u:?}: count {}, piece {piece}, T_X(u) = {}",
            ms.count(&u)?,
            rational::format(&piece.eval(&uq))
        );
    }
    Ok(())
}
