//! Central and internal spaces of the pentagon configuration, plus the
//! projection ψ_X of a polynomial of high degree.

use zonotodd::algebra::poly::Polynomial;
use zonotodd::matroid::{cocircuits, enumerate_bases, VectorConfig};
use zonotodd::pspace::{central_space, internal_space, ProjectionTable};

fn main() -> zonotodd::Result<()> {
    let x = VectorConfig::from_rows(&[vec![1, 0, 0, 1, 0], vec![0, 1, 0, 0, 1], vec![0, 0, 1, 1, 1]])?;
    for b in enumerate_bases(&x)? {
        println!("basis {:?}, externally active {:?}", b.indices, b.ext_active);
    }
    for c in cocircuits(&x) {
        println!("cocircuit {:?}", c.indices);
    }
    let central = central_space(&x)?;
    let internal = internal_space(&x)?;
    println!("dim P(X) by degree {:?}", central.dims());
    println!("dim P_-(X) by degree {:?}", internal.dims());
    for p in internal.polynomials() {
        println!("  {p}");
    }

    let s3 = Polynomial::var(3, 2);
    let cube = &(&s3 * &s3) * &s3;
    let psi = ProjectionTable::new(&x)?.project(&cube)?;
    println!("ψ_X(s3^3) = {psi}");
    Ok(())
}
