//! Triangular basis of a solvable algebra, its weights, the set of weight
//! sums and the part of it where cohomology is actually nonzero.

use twisted_cohomology::{weight_system, zoo};

fn main() -> twisted_cohomology::Result<()> {
    for entry in [zoo::g0()?, zoo::diag_example(3)?, zoo::v_family(5)?] {
        let ws = weight_system(&entry.algebra)?;
        println!("{} (k = {})", entry.label(), ws.adapted.k);
        for s in &ws.adapted.structure_equations {
            println!("  dw'{} = ({}) ^ w'{} + {} quadratic terms", s.index + 1, s.weight, s.index + 1, s.quadratic.len());
        }
        let show = |v: &[twisted_cohomology::Covector]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
        println!("  Omega   = {{{}}}", show(&ws.omega_set));
        println!("  ~Omega  = {{{}}}", show(&ws.omega_tilde));
        println!("  sum     = {}  (unimodular: {})", ws.sum_of_all, entry.algebra.is_unimodular());
    }
    Ok(())
}
