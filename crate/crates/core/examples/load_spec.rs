//! Loads algebras from JSON, validates them and classifies the valid ones.

use twisted_cohomology::{spec_format::AlgebraSpec, weight_system};

fn main() -> twisted_cohomology::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    for file in ["sl2.json", "rotation.json", "corrupted.json"] {
        let text = std::fs::read_to_string(format!("{dir}/{file}"))?;
        let spec = AlgebraSpec::from_json(&text)?;
        let alg = spec.to_algebra_unchecked()?;
        let report = alg.jacobi_check();
        if !report.passed() {
            println!("{file}: Jacobi fails on {} triple(s)", report.failures.len());
            continue;
        }
        println!(
            "{file}: {} , unimodular {}, dim [g,g] = {}, digest {}",
            alg.classify().label(),
            alg.is_unimodular(),
            alg.derived_dim(),
            &spec.digest()[..12]
        );
        if let Err(e) = weight_system(&alg) {
            println!("  weights: {e}");
        }
    }
    Ok(())
}
