//! Betti numbers of the twisted complex of a solvable algebra along one line.

use twisted_cohomology::{betti, zoo, Covector, Rational, Twist};

fn main() -> twisted_cohomology::Result<()> {
    let g = zoo::g0()?.algebra;
    let omega = Covector::basis(3, 0);
    for l in [-2, -1, 0, 1, 2] {
        let twist = Twist::new(&g, omega.clone(), Rational::from(l))?;
        let table = betti(&g, &twist)?;
        println!("lambda = {l:>2}: b = {table}  euler = {}", table.euler);
    }
    Ok(())
}
