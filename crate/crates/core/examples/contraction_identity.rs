//! Interior product with the transversal `X` against `adX*` and `d`.

use twisted_cohomology::{contraction_identity_check, zoo};

fn main() -> twisted_cohomology::Result<()> {
    for entry in zoo::standard_entries()? {
        for omega in zoo::probe_forms(&entry.algebra) {
            let r = contraction_identity_check(&entry.algebra, &omega, 2)?;
            println!(
                "{:<16} omega = {:<12} checked {:>3}, failures {}, forms with f_X not closed {}",
                entry.label(),
                omega.to_string(),
                r.checked,
                r.failures.len(),
                r.plus_sign_mismatches
            );
        }
    }
    Ok(())
}
