//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`). The process fails when any
//! criterion outside `EXPECTED_FAILURES` fails, and also when a criterion
//! listed there unexpectedly passes, so the list cannot go stale.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twisted_cohomology::dixmier::{operator_spectrum, split, verify_les_grid};
use twisted_cohomology::exterior::Covector;
use twisted_cohomology::linalg::Matrix;
use twisted_cohomology::weights::verify_vanishing_with;
use twisted_cohomology::zoo::{self, ZooEntry};
use twisted_cohomology::{
    betti, contraction_identity_check, differential_rep_form, differential_wedge_form, nontriviality_set,
    weight_system, LieAlgebra, Rational, Twist,
};

/// The degree pair required by criterion 2 is not what the complex produces;
/// see the fixture note of `diag_example`.
const EXPECTED_FAILURES: &[u32] = &[2];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn r(x: i64) -> Rational {
    Rational::from(x)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(res: twisted_cohomology::Result<T>) -> Result<T, String> {
    res.map_err(|e| e.to_string())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn table(alg: &LieAlgebra, omega: &Covector, lambda: Rational) -> Result<Vec<usize>, String> {
    Ok(lib(betti(alg, &lib(Twist::new(alg, omega.clone(), lambda))?))?.betti)
}

fn criterion_1() -> Outcome {
    let g = lib(zoo::g0())?.algebra;
    let w1 = Covector::basis(3, 0);
    ensure(table(&g, &w1, r(0))? == [1, 1, 1, 1], || "untwisted table".into())?;
    for l in [1, -1] {
        let t = table(&g, &w1, r(l))?;
        ensure(t == [0, 1, 1, 0], || format!("lambda={l}: {t:?}"))?;
    }
    let set = lib(nontriviality_set(&g, &w1))?.lambdas;
    ensure(set == [r(-1), r(0), r(1)], || format!("nontriviality set {set:?}"))?;
    // independent sweep: nonzero exactly on the set
    for num in -12..=12 {
        for den in [1, 2, 3, 5] {
            let l = Rational::new(num, den);
            let nonzero = table(&g, &w1, l.clone())?.iter().any(|&b| b > 0);
            ensure(nonzero == set.contains(&l), || format!("sweep disagrees at {l}"))?;
        }
    }
    let mut w = lib(weight_system(&g))?.weights;
    w.sort();
    ensure(w == [Covector::from_i64(&[-1, 0, 0]), Covector::from_i64(&[1, 0, 0])], || {
        format!("weights {w:?}")
    })?;
    Ok("tables (1,1,1,1), (0,1,1,0) at +-w1; set {-1,0,1}; weights {w1,-w1}".into())
}

fn criterion_2() -> Outcome {
    let mut observed = Vec::new();
    let mut failures = Vec::new();
    for n in 2..=6 {
        let g = lib(zoo::diag_example(n))?.algebra;
        let omega = Covector::basis(n + 1, 0);
        let spectrum = lib(operator_spectrum(&lib(split(&g, &omega))?))?;
        for (p, d) in spectrum.degrees.iter().enumerate() {
            let roots: Vec<Rational> = d.eigenvalues.iter().map(|(x, _)| x.clone()).collect();
            ensure(roots == [r(p as i64)], || format!("n={n}: Spec^{p} = {roots:?}"))?;
        }
        let set = lib(nontriviality_set(&g, &omega))?;
        for p in 1..=n {
            let lambda = -r(p as i64);
            let cert = set
                .certified
                .iter()
                .find(|t| *t.twist.lambda() == lambda)
                .ok_or_else(|| format!("n={n}: lambda={lambda} not certified"))?;
            let nonzero: Vec<(usize, usize)> =
                cert.betti.iter().copied().enumerate().filter(|&(_, b)| b > 0).collect();
            let c = binomial(n, p);
            if nonzero != [(p - 1, c), (p, c)] {
                failures.push(format!("n={n} p={p}"));
                if n == 2 || observed.is_empty() {
                    observed.push(format!("n={n} p={p} lambda={lambda}: nonzero (degree, b) = {nonzero:?}"));
                }
            }
            // the opposite sign carries nothing
            let plus = table(&g, &omega, r(p as i64))?;
            ensure(plus.iter().all(|&b| b == 0), || format!("n={n}: lambda=+{p} gives {plus:?}"))?;
        }
    }
    if failures.is_empty() {
        Ok("Spec^p = {p}; pairs b^(p-1) = b^p = C(n,p)".into())
    } else {
        Err(format!(
            "Spec^p = {{p}} holds for n=2..6, but the certified lambda=-p has its two nonzero Betti numbers \
             C(n,p) in degrees (p, p+1), not (p-1, p); {} of {} cases differ, e.g. {}",
            failures.len(),
            (2..=6).sum::<usize>(),
            observed.join("; ")
        ))
    }
}

fn criterion_3() -> Outcome {
    let mut algebras = vec![(3, lib(zoo::heisenberg())?.algebra)];
    for n in 4..=8 {
        algebras.push((n, lib(zoo::v_family(n))?.algebra));
    }
    let mut v8_time = Duration::ZERO;
    for (n, g) in &algebras {
        let start = Instant::now();
        let closed: Vec<Covector> = g.closed_forms_basis().into_iter().map(Covector).collect();
        // 20 nonzero twists a*w + b*w' with a in {-2,-1,1,2}, b in {-2..2}
        let mut count = 0;
        for a in [-2, -1, 1, 2] {
            for b in -2..=2 {
                let theta = closed[0].scale(&r(a)).add(&closed[1].scale(&Rational::new(b, 3)));
                let t = lib(Twist::from_effective(g, theta.clone()))?;
                let bt = lib(betti(g, &t))?;
                ensure(bt.is_zero(), || format!("dim {n}: twist {theta} gives {bt}"))?;
                count += 1;
            }
        }
        ensure(count == 20, || "grid size".into())?;
        let untwisted = lib(betti(g, &Twist::trivial(*n)))?.betti;
        ensure((1..*n).all(|p| untwisted[p] >= 2), || format!("dim {n}: untwisted {untwisted:?}"))?;
        if *n == 8 {
            v8_time = start.elapsed();
        }
    }
    ensure(v8_time < Duration::from_secs(60), || format!("V_8 took {v8_time:?}"))?;
    Ok(format!("h3 and V_4..V_8 vanish on 20 twists each; V_8 sweep {v8_time:.2?}"))
}

fn entries() -> Result<Vec<ZooEntry>, String> {
    lib(zoo::standard_entries())
}

fn criterion_4() -> Outcome {
    let lambdas: Vec<Rational> = (-3..=3).map(r).collect();
    let mut checked = 0;
    for e in entries()? {
        for omega in zoo::probe_forms(&e.algebra) {
            for rep in lib(verify_les_grid(&e.algebra, &omega, &lambdas))? {
                ensure(rep.holds(), || {
                    format!(
                        "{} omega={omega} lambda={}: predicted {:?} actual {:?}",
                        e.label(),
                        rep.lambda,
                        rep.predicted_betti,
                        rep.actual_betti
                    )
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (algebra, form, lambda) cases agree degreewise"))
}

fn criterion_5() -> Outcome {
    let lambdas = [r(0), r(1), r(-1), Rational::new(1, 2), Rational::new(-7, 3)];
    let mut checked = 0;
    for e in entries()? {
        let g = &e.algebra;
        let forms = zoo::probe_forms(g);
        for (i, l) in lambdas.iter().enumerate() {
            let omega = forms[i % forms.len()].clone();
            let t = lib(Twist::new(g, omega, l.clone()))?;
            let mut previous: Option<Matrix> = None;
            for q in 0..=g.dim() {
                let w = lib(differential_wedge_form(g, q, &t))?.matrix;
                let rep = lib(differential_rep_form(g, q, &t))?.matrix;
                ensure(w == rep, || format!("{} q={q} lambda={l}: forms differ", e.label()))?;
                if let Some(p) = &previous {
                    ensure(w.mul(p).is_zero(), || format!("{} q={q}: d^2 != 0", e.label()))?;
                }
                previous = Some(w);
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} differential matrices agree; d^2 = 0 throughout"))
}

fn criterion_6() -> Outcome {
    let mut cases = vec![(lib(zoo::g0())?, vec![Covector::from_i64(&[-1, 0, 0]), Covector::from_i64(&[1, 0, 0])])];
    for n in 1..=4 {
        let expected = (1..=n as i64).map(|p| Covector::basis(n + 1, 0).scale(&r(p))).collect();
        cases.push((lib(zoo::diag_example(n))?, expected));
    }
    let mut probes_checked = 0;
    for (entry, expected_tilde) in cases {
        let g = &entry.algebra;
        let ws = lib(weight_system(g))?;
        ensure(ws.omega_tilde == expected_tilde, || {
            format!("{}: ~Omega = {:?}", entry.label(), ws.omega_tilde)
        })?;
        let omega = Covector::basis(g.dim(), 0);
        let mut probes = Vec::new();
        for num in -16..=16 {
            for den in [1, 2, 3] {
                let t = lib(Twist::new(g, omega.clone(), Rational::new(num, den)))?;
                if !ws.is_exceptional(&t.effective().neg()) {
                    probes.push(t);
                }
            }
        }
        let report = lib(verify_vanishing_with(g, &ws, &probes))?;
        ensure(report.passed(), || format!("{}: a probe has nonzero cohomology", entry.label()))?;
        probes_checked += probes.len();
        for theta in std::iter::once(Covector::zero(g.dim())).chain(ws.omega_tilde.iter().cloned()) {
            let t = lib(Twist::from_effective(g, theta.neg()))?;
            ensure(!lib(betti(g, &t))?.is_zero(), || format!("{}: -{theta} vanishes", entry.label()))?;
        }
    }
    Ok(format!("{probes_checked} probes off the exceptional set vanish; {{0}} u ~Omega nonzero"))
}

fn criterion_7() -> Outcome {
    let lambdas = [r(0), r(1), r(-1), r(2), Rational::new(-1, 2), r(-3)];
    let mut tables = 0;
    for e in entries()? {
        let g = &e.algebra;
        let n = g.dim();
        let untwisted = lib(betti(g, &Twist::trivial(n)))?;
        ensure(untwisted.betti[1] == n - g.derived_dim(), || format!("{}: b^1 at 0", e.label()))?;
        for omega in zoo::probe_forms(g) {
            for l in &lambdas {
                let t = lib(Twist::new(g, omega.clone(), l.clone()))?;
                let bt = lib(betti(g, &t))?;
                tables += 1;
                ensure(bt.euler == 0, || format!("{}: euler {}", e.label(), bt.euler))?;
                if !t.is_trivial() {
                    ensure(bt.betti[0] == 0, || format!("{}: H^0 at {l}", e.label()))?;
                    if g.is_unimodular() {
                        ensure(bt.betti[n] == 0, || format!("{}: H^n at {l}", e.label()))?;
                    }
                }
            }
        }
        if g.is_unimodular() {
            let ws = lib(weight_system(g))?;
            ensure(ws.sum_of_all.is_zero(), || format!("{}: sum of weights {}", e.label(), ws.sum_of_all))?;
        }
    }
    Ok(format!("{tables} tables: euler 0, H^0 and unimodular H^n vanish when twisted; b^1 and weight sums"))
}

/// Determinant by cofactor expansion.
fn det(m: &[Vec<i64>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

/// Largest size of a nonzero minor.
fn minor_rank(m: &[Vec<i64>]) -> usize {
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    (1..=rows.min(cols))
        .rev()
        .find(|&k| {
            subsets(rows, k).iter().any(|rs| {
                subsets(cols, k).iter().any(|cs| {
                    let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                    det(&sub) != 0
                })
            })
        })
        .unwrap_or(0)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7c0_4e11);
    for trial in 0..200 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        // bias toward rank deficiency by sometimes repeating combinations of rows
        let mut m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        if rows > 2 && trial % 3 == 0 {
            let (a, b) = (m[0].clone(), m[1].clone());
            m[rows - 1] = a.iter().zip(&b).map(|(x, y)| x - 2 * y).collect();
        }
        let refs: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
        let mat = Matrix::from_i64(&refs);
        let expected = minor_rank(&m);
        ensure(mat.rank() == expected, || format!("trial {trial}: rank {} != {expected}", mat.rank()))?;
        let kernel = mat.kernel_basis();
        ensure(kernel.len() == cols - expected, || format!("trial {trial}: nullity"))?;
        for v in &kernel {
            ensure(mat.mul_vec(v).iter().all(Rational::is_zero), || format!("trial {trial}: M v != 0"))?;
        }
        if !kernel.is_empty() {
            // independence of the kernel basis, by scaling to integers and using minors
            let scaled: Vec<Vec<i64>> = kernel
                .iter()
                .map(|v| {
                    let l = v.iter().fold(1, |acc, x| lcm(acc, x.denom().try_into().unwrap()));
                    v.iter().map(|x| (x * Rational::from(l)).to_i64().unwrap()).collect()
                })
                .collect();
            ensure(minor_rank(&scaled) == kernel.len(), || format!("trial {trial}: dependent kernel"))?;
        }
    }
    Ok("200 random integer matrices up to 6x6: rank and kernel match minor expansion".into())
}

fn lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for e in entries()? {
        for omega in zoo::probe_forms(&e.algebra) {
            let rep = lib(contraction_identity_check(&e.algebra, &omega, 2))?;
            ensure(rep.passed(), || format!("{} omega={omega}: {:?}", e.label(), rep.failures))?;
            checked += rep.checked;
        }
    }
    Ok(format!("{checked} forms of degree <= 2 satisfy the contraction identity"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "g0 tables, nontriviality set and weights", criterion_1),
        (2, "diag_example spectra and Betti pairs", criterion_2),
        (3, "nilpotent vanishing", criterion_3),
        (4, "dimension identity b = k + k'", criterion_4),
        (5, "two constructions of the differential", criterion_5),
        (6, "vanishing off the exceptional set", criterion_6),
        (7, "structural invariants", criterion_7),
        (8, "linear algebra against minors", criterion_8),
        (9, "contraction identity", criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (id, title, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let passed = outcome.is_ok();
        let detail = outcome.unwrap_or_else(|e| e);
        let verdict = if passed { "PASS" } else { "FAIL" };
        let known = EXPECTED_FAILURES.contains(&id);
        let tag = match (passed, known) {
            (false, true) => " [known deviation]",
            (true, true) => " [listed as expected failure]",
            _ => "",
        };
        println!("criterion {id} ({title}): {verdict}{tag} in {elapsed:.2?}: {detail}");
        if passed == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
