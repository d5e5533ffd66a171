//! Spectra of `adX*` on the cohomology of `ker ω` and the resulting set of λ
//! with nonvanishing twisted cohomology.

use twisted_cohomology::{nontriviality_set, operator_spectrum, split, zoo, Covector};

fn main() -> twisted_cohomology::Result<()> {
    for n in 1..=4 {
        let g = zoo::diag_example(n)?.algebra;
        let omega = Covector::basis(n + 1, 0);
        let spectrum = operator_spectrum(&split(&g, &omega)?)?;
        println!("diag_example({n})");
        for d in &spectrum.degrees {
            println!("  Spec^{} = {:?} on a space of dim {}", d.degree, d.eigenvalues, d.matrix.rows());
        }
        let set = nontriviality_set(&g, &omega)?;
        for t in &set.certified {
            println!("  lambda = {:>2}: {t}", t.twist.lambda());
        }
    }
    Ok(())
}
