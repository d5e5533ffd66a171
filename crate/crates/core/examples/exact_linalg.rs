//! Exact rank, kernels and rational eigenvalues.

use twisted_cohomology::linalg::{char_poly_rational_roots, Matrix};

fn main() -> twisted_cohomology::Result<()> {
    let m = Matrix::from_i64(&[&[0, 2, 4]]);
    println!("kernel of [0 2 4]: {:?}", m.kernel_basis());
    let a = Matrix::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, -3]]);
    let f = char_poly_rational_roots(&a)?;
    println!("char poly {} roots {:?}", f.char_poly, f.rational_roots);
    let b = Matrix::from_i64(&[&[0, 2], &[1, 0]]);
    let f = char_poly_rational_roots(&b)?;
    println!("char poly {} has residual {}", f.char_poly, f.residual);
    Ok(())
}
