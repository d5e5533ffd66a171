//! Checks `b^i = k^i + k^(i-1)` where `k^i` is the kernel dimension of
//! `adX* + λ` on the cohomology of the ideal.

use twisted_cohomology::dixmier::verify_les_grid;
use twisted_cohomology::{zoo, Rational};

fn main() -> twisted_cohomology::Result<()> {
    let lambdas: Vec<Rational> = (-3..=3).map(Rational::from).collect();
    for entry in zoo::standard_entries()? {
        for omega in zoo::probe_forms(&entry.algebra) {
            let reports = verify_les_grid(&entry.algebra, &omega, &lambdas)?;
            let ok = reports.iter().all(|r| r.holds());
            println!("{:<16} omega = {:<12} {}", entry.label(), omega.to_string(), if ok { "equal" } else { "UNEQUAL" });
        }
    }
    Ok(())
}
