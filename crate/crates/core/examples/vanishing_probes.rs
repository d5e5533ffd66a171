//! Twists outside `{0} ∪ Ω_g` have vanishing cohomology; probes inside it
//! are refused.

use twisted_cohomology::{verify_vanishing, zoo, Covector, Error, Rational, Twist};

fn main() -> twisted_cohomology::Result<()> {
    let g = zoo::g0()?.algebra;
    let omega = Covector::basis(3, 0);
    let probes: Vec<Twist> = [2, 3, -5]
        .into_iter()
        .map(|l| Twist::new(&g, omega.clone(), Rational::from(l)))
        .chain([Twist::new(&g, omega.clone(), Rational::new(1, 3))])
        .collect::<Result<_, _>>()?;
    let report = verify_vanishing(&g, &probes)?;
    for v in &report.verdicts {
        println!("theta = {:<8} {}  vanishes: {}", v.theta.to_string(), v.table, v.vanishes);
    }
    match verify_vanishing(&g, &[Twist::new(&g, omega, Rational::one())?]) {
        Err(e @ Error::ProbeInExceptionalSet { .. }) => println!("refused: {e}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
