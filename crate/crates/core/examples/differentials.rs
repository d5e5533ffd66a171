//! The deformed differential assembled two ways: from the structure
//! equations plus `θ ∧ ·`, and by evaluating the representation-valued
//! cochain formula on basis vectors.

use twisted_cohomology::{differential_rep_form, differential_wedge_form, zoo, Covector, Rational, Twist};

fn main() -> twisted_cohomology::Result<()> {
    let g = zoo::g0()?.algebra;
    let twist = Twist::new(&g, Covector::basis(3, 0), Rational::new(3, 2))?;
    for q in 0..=g.dim() {
        let wedge = differential_wedge_form(&g, q, &twist)?;
        let rep = differential_rep_form(&g, q, &twist)?;
        assert_eq!(wedge.matrix, rep.matrix);
        println!("d_{q} ({}x{}):\n{:?}", wedge.matrix.rows(), wedge.matrix.cols(), wedge.matrix);
    }
    for q in 0..g.dim() {
        let d0 = differential_wedge_form(&g, q, &twist)?.matrix;
        let d1 = differential_wedge_form(&g, q + 1, &twist)?.matrix;
        println!("d_{} d_{q} = 0: {}", q + 1, d1.mul(&d0).is_zero());
    }
    Ok(())
}
