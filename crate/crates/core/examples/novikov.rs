//! Generic-λ Betti numbers and the exceptional λ on a line, which bound from
//! below the zero counts of Morse forms in the class of `ω`.

use twisted_cohomology::{nontriviality_set, novikov_report, zoo, Covector};

fn main() -> twisted_cohomology::Result<()> {
    for (entry, omega) in [
        (zoo::g0()?, Covector::basis(3, 0)),
        (zoo::heisenberg()?, Covector::basis(3, 1)),
        (zoo::torus(3)?, Covector::basis(3, 0)),
    ] {
        let candidates = nontriviality_set(&entry.algebra, &omega)?.lambdas;
        let r = novikov_report(&entry.algebra, &omega, &candidates)?;
        println!("{}: generic lambda {} -> {:?}", entry.label(), r.generic_lambda, r.generic_betti);
        for (l, t) in &r.exceptional_lambdas {
            println!("  exceptional {l}: {t}");
        }
        println!("  lower bounds {:?}", r.morse_lower_bounds);
    }
    Ok(())
}
