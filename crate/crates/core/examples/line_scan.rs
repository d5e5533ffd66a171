//! Scans a rational grid of λ on a line and reports where cohomology survives.

use twisted_cohomology::{scan_line, zoo, Covector, Rational};

fn main() -> twisted_cohomology::Result<()> {
    let entry = zoo::diag_example(3)?;
    let g = &entry.algebra;
    let lambdas: Vec<Rational> = (-8..=4).map(|k| Rational::new(k, 2)).collect();
    let tables = scan_line(g, &Covector::basis(4, 0), &lambdas)?;
    for (l, t) in lambdas.iter().zip(&tables) {
        let mark = if t.is_zero() { "" } else { "  <- nonzero" };
        println!("{:>4}: {t}{mark}", l);
    }
    Ok(())
}
