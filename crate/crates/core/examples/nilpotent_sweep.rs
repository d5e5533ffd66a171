//! Nilpotent algebras: every nonzero twist kills cohomology, while the
//! untwisted Betti numbers stay at least 2 in the middle degrees.

use std::time::Instant;

use twisted_cohomology::{betti, zoo, Covector, Rational, Twist};

fn main() -> twisted_cohomology::Result<()> {
    for n in 4..=8 {
        let start = Instant::now();
        let g = zoo::v_family(n)?.algebra;
        let untwisted = betti(&g, &Twist::trivial(n))?;
        let mut all_zero = true;
        for (a, b) in [(1, 0), (0, 1), (2, -3), (-1, 5)] {
            let mut coords = vec![Rational::zero(); n];
            coords[0] = Rational::from(a);
            coords[1] = Rational::from(b);
            let t = Twist::new(&g, Covector(coords), Rational::new(1, 2))?;
            all_zero &= betti(&g, &t)?.is_zero();
        }
        println!("V_{n}: untwisted {untwisted}, twisted all zero: {all_zero} ({:?})", start.elapsed());
    }
    Ok(())
}
