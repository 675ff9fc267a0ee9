//! Box spline of three directions in the plane: values, local pieces and
//! the limits of f_z(D) B_X along w.

use zonotodd::algebra::rational::{self, ratio};
use zonotodd::geometry::short_affine_regular;
use zonotodd::matroid::VectorConfig;
use zonotodd::splines::{box_spline_eval, PieceTable};
use zonotodd::toddcalc::f_z;

fn main() -> zonotodd::Result<()> {
    let x = VectorConfig::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]])?;
    for u in [[ratio(1, 2), ratio(1, 3)], [ratio(3, 2), ratio(4, 5)], [ratio(1, 3), ratio(3, 4)]] {
        let text: Vec<String> = u.iter().map(rational::format).collect();
        println!("B_X({}) = {}", text.join(", "), rational::format(&box_spline_eval(&x, &u)?));
    }
    let w = short_affine_regular(&x)?;
    let mut table = PieceTable::new(&x, &w)?;
    for z in [[1i64, 1], [1, 0], [2, 1]] {
        let f = f_z(&x, &z)?;
        let piece = table.piece_int(&z)?;
        let value = table.lim_diff_int(&f, &z)?;
        println!("z = {z:?}: piece {piece}, lim_w f_z(D) B_X(z) = {}", rational::format(&value));
    }
    Ok(())
}
