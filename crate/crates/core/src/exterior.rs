//! Exterior algebra of the dual space and the deformed Chevalley–Eilenberg
//! differential.
//!
//! A degree-`q` monomial `ω^{l_1} ∧ … ∧ ω^{l_q}` (`l_1 < … < l_q`) is stored as
//! a bitmask with bit `l` set for each index. Monomials of one degree are
//! enumerated in lexicographic order of their sorted index tuples, which fixes
//! the row and column order of every matrix built here.
//!
//! Forms are alternating multilinear maps with the determinant normalization,
//! `(ω^{l_1} ∧ … ∧ ω^{l_q})(e_{m_1}, …, e_{m_q}) = det(δ_{l_a m_b})`, and the
//! untwisted differential uses the sign convention
//!
//! ```text
//! df(X_1, …, X_{q+1}) = Σ_{i<j} (-1)^{i+j-1} f([X_i, X_j], X_1, …, X̂_i, …, X̂_j, …, X_{q+1})
//! ```
//!
//! so that `dω^k = Σ_{i<j} c_ij^k ω^i ∧ ω^j`. The deformed differential is
//! `d_θ a = da + θ ∧ a` for a closed 1-form `θ = λω`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// A basis monomial of `Λ(g*)`, as a bitmask of dual-basis indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub u32);

impl Monomial {
    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// Sorted indices.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |i| mask & (1 << i) != 0)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Monomial(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    /// `ω^i ∧ self`, as `(sign, monomial)`, or `None` when `i` already occurs.
    pub fn wedge_left(self, i: usize) -> Option<(i8, Monomial)> {
        if self.contains(i) {
            return None;
        }
        let below = (self.0 & ((1u32 << i) - 1)).count_ones();
        let sign = if below.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Monomial(self.0 | (1 << i))))
    }

    /// Removes `i`, returning `(sign, rest)` with `self = sign · ω^i ∧ rest`.
    pub fn split_off(self, i: usize) -> Option<(i8, Monomial)> {
        if !self.contains(i) {
            return None;
        }
        let rest = Monomial(self.0 & !(1 << i));
        let below = (rest.0 & ((1u32 << i) - 1)).count_ones();
        Some((if below.is_multiple_of(2) { 1 } else { -1 }, rest))
    }

    /// Value of the monomial on basis vectors `e_{args[0]}, …` (determinant convention).
    pub fn evaluate(self, args: &[usize]) -> i8 {
        if args.len() != self.degree() {
            return 0;
        }
        let mut seen = 0u32;
        for &a in args {
            if !self.contains(a) || seen & (1 << a) != 0 {
                return 0;
            }
            seen |= 1 << a;
        }
        // parity of the permutation sorting `args`
        let inversions = (0..args.len())
            .flat_map(|i| (i + 1..args.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| args[i] > args[j])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn label(self, names: &[String]) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        self.indices()
            .map(|i| format!("w{}", names.get(i).map_or_else(|| (i + 1).to_string(), |n| dual_suffix(n, i))))
            .collect::<Vec<_>>()
            .join("^")
    }
}

fn dual_suffix(name: &str, i: usize) -> String {
    name.strip_prefix('e').map_or_else(|| format!("[{name}]"), |_| (i + 1).to_string())
}

/// Monomials of every degree for a fixed number of generators, with a reverse index.
#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    n: usize,
    by_degree: Vec<Vec<Monomial>>,
    position: Vec<u32>,
}

impl ExteriorBasis {
    pub fn new(n: usize) -> Self {
        assert!(n <= crate::algebra::MAX_DIM, "too many generators");
        let mut by_degree = vec![Vec::new(); n + 1];
        let mut current = Vec::new();
        fn rec(start: usize, n: usize, current: &mut Vec<usize>, out: &mut [Vec<Monomial>]) {
            out[current.len()].push(Monomial::from_indices(current));
            for i in start..n {
                current.push(i);
                rec(i + 1, n, current, out);
                current.pop();
            }
        }
        rec(0, n, &mut current, &mut by_degree);
        // depth-first generation is lexicographic within each degree
        for mons in &mut by_degree {
            mons.sort_by_key(|m| m.indices().collect::<Vec<_>>());
        }
        let mut position = vec![0u32; 1 << n];
        for mons in &by_degree {
            for (p, m) in mons.iter().enumerate() {
                position[m.0 as usize] = p as u32;
            }
        }
        ExteriorBasis {
            n,
            by_degree,
            position,
        }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    /// Monomials of degree `q` (empty when `q > n`).
    pub fn monomials(&self, q: usize) -> &[Monomial] {
        self.by_degree.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, q: usize) -> usize {
        self.monomials(q).len()
    }

    /// Position of a monomial within its degree.
    pub fn index_of(&self, m: Monomial) -> usize {
        self.position[m.0 as usize] as usize
    }
}

/// A linear form on `g`, in dual-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Covector(pub Vec<Rational>);

impl Covector {
    pub fn zero(n: usize) -> Self {
        Covector(vec![Rational::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        Covector(crate::algebra::unit(n, i))
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Covector(coords.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Covector {
        Covector(self.0.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Covector) -> Covector {
        Covector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Covector {
        self.scale(&Rational::from(-1))
    }

    pub fn apply(&self, v: &[Rational]) -> Rational {
        self.0.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// `Some(μ)` with `self = μ · other` when `other != 0` and the two are proportional.
    pub fn ratio_to(&self, other: &Covector) -> Option<Rational> {
        let pivot = other.0.iter().position(|c| !c.is_zero())?;
        let mu = &self.0[pivot] / &other.0[pivot];
        (other.scale(&mu) == *self).then_some(mu)
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mag.is_integer() {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
            } else {
                write!(f, "({mag})")?;
            }
            write!(f, "w{}", i + 1)?;
        }
        Ok(())
    }
}

/// A closed 1-form `ω` with a scalar `λ`; the deformation is by `θ = λω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Twist {
    omega: Covector,
    lambda: Rational,
    effective: Covector,
}

impl Twist {
    /// Validates that `ω` has the right length and is closed in `alg`.
    pub fn new(alg: &LieAlgebra, omega: Covector, lambda: Rational) -> Result<Self> {
        check_closed(alg, &omega)?;
        let effective = omega.scale(&lambda);
        Ok(Twist {
            omega,
            lambda,
            effective,
        })
    }

    /// The zero twist (ordinary Lie algebra cohomology).
    pub fn trivial(n: usize) -> Self {
        Twist {
            omega: Covector::zero(n),
            lambda: Rational::zero(),
            effective: Covector::zero(n),
        }
    }

    /// Twist with `λω = theta`, stored as `ω = theta`, `λ = 1` (or trivial for `theta = 0`).
    pub fn from_effective(alg: &LieAlgebra, theta: Covector) -> Result<Self> {
        if theta.is_zero() {
            if theta.len() != alg.dim() {
                return Err(Error::DimensionMismatch {
                    expected: alg.dim(),
                    found: theta.len(),
                });
            }
            return Ok(Twist::trivial(alg.dim()));
        }
        Twist::new(alg, theta, Rational::one())
    }

    pub fn omega(&self) -> &Covector {
        &self.omega
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// `λω`.
    pub fn effective(&self) -> &Covector {
        &self.effective
    }

    pub fn is_trivial(&self) -> bool {
        self.effective.is_zero()
    }
}

pub(crate) fn check_closed(alg: &LieAlgebra, omega: &Covector) -> Result<()> {
    if omega.len() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: omega.len(),
        });
    }
    match alg.closedness_witness(omega.coords()) {
        Some(pair) => Err(Error::OmegaNotClosed { pair }),
        None => Ok(()),
    }
}

/// Matrix of `d_θ : Λ^q → Λ^{q+1}` on the canonical monomial bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialMatrix {
    pub degree: usize,
    pub matrix: Matrix,
    pub twist: Twist,
}

fn check_degree(alg: &LieAlgebra, q: usize) -> Result<()> {
    if q > alg.dim() {
        return Err(Error::DegreeOutOfRange {
            degree: q,
            dim: alg.dim(),
        });
    }
    Ok(())
}

/// `dω^k` as a list of `((i, j), c)` with `i < j`.
fn differential_of_generator(alg: &LieAlgebra, k: usize) -> Vec<((usize, usize), Rational)> {
    alg.brackets()
        .iter()
        .filter_map(|(&(i, j), terms)| {
            terms
                .iter()
                .find(|(kk, _)| *kk == k)
                .map(|(_, c)| ((i, j), c.clone()))
        })
        .collect()
}

/// Untwisted differential on `Λ^q` built from `dω^k = Σ c_ij^k ω^i∧ω^j` and the
/// graded Leibniz rule.
pub fn ce_matrix(alg: &LieAlgebra, basis: &ExteriorBasis, q: usize) -> Matrix {
    let n = alg.dim();
    let generator_d: Vec<_> = (0..n).map(|k| differential_of_generator(alg, k)).collect();
    let mut m = Matrix::zeros(basis.dim(q + 1), basis.dim(q));
    for (col, &mon) in basis.monomials(q).iter().enumerate() {
        // d(ω^{l_1}∧…∧ω^{l_q}) = Σ_a (-1)^a dω^{l_a} ∧ ω_{I∖l_a}; 2-forms commute past everything
        for (a, l) in mon.indices().enumerate() {
            let rest = Monomial(mon.0 & !(1 << l));
            for ((i, j), c) in &generator_d[l] {
                let Some((s1, m1)) = rest.wedge_left(*j) else { continue };
                let Some((s2, m2)) = m1.wedge_left(*i) else { continue };
                let sign = s1 * s2 * if a % 2 == 0 { 1 } else { -1 };
                let row = basis.index_of(m2);
                if sign > 0 {
                    m[(row, col)] += c;
                } else {
                    m[(row, col)] -= c;
                }
            }
        }
    }
    m
}

/// Matrix of left exterior multiplication `θ ∧ · : Λ^q → Λ^{q+1}`.
pub fn left_multiplication(basis: &ExteriorBasis, q: usize, theta: &Covector) -> Matrix {
    let mut m = Matrix::zeros(basis.dim(q + 1), basis.dim(q));
    for (col, &mon) in basis.monomials(q).iter().enumerate() {
        for (i, c) in theta.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some((sign, target)) = mon.wedge_left(i) {
                let row = basis.index_of(target);
                m[(row, col)] = if sign > 0 { c.clone() } else { -c };
            }
        }
    }
    m
}

/// Contraction `ι_v : Λ^{q+1} → Λ^q`, `(ι_v f)(X_1..X_q) = f(v, X_1..X_q)`.
pub fn contraction(basis: &ExteriorBasis, q: usize, v: &[Rational]) -> Matrix {
    let mut m = Matrix::zeros(basis.dim(q), basis.dim(q + 1));
    for (col, &mon) in basis.monomials(q + 1).iter().enumerate() {
        for (a, l) in mon.indices().enumerate() {
            if v[l].is_zero() {
                continue;
            }
            let rest = Monomial(mon.0 & !(1 << l));
            let row = basis.index_of(rest);
            if a % 2 == 0 {
                m[(row, col)] += &v[l];
            } else {
                m[(row, col)] -= &v[l];
            }
        }
    }
    m
}

/// Degree-zero derivation of `Λ^q` extending the map on 1-forms
/// `ω^i ↦ Σ_j a[i][j] ω^j` (equivalently `α ↦ α ∘ A` for the endomorphism `A`).
pub fn derivation_matrix(basis: &ExteriorBasis, q: usize, a: &Matrix) -> Matrix {
    let dim = basis.dim(q);
    let mut m = Matrix::zeros(dim, dim);
    for (col, &mon) in basis.monomials(q).iter().enumerate() {
        for (pos, i) in mon.indices().enumerate() {
            // ω_I = (-1)^pos ω^i ∧ ω_{I∖i}; replace ω^i by its image
            let rest = Monomial(mon.0 & !(1 << i));
            let pos_sign: i8 = if pos % 2 == 0 { 1 } else { -1 };
            for j in 0..basis.generators() {
                let coeff = &a[(i, j)];
                if coeff.is_zero() {
                    continue;
                }
                if let Some((s, target)) = rest.wedge_left(j) {
                    let row = basis.index_of(target);
                    if s * pos_sign > 0 {
                        m[(row, col)] += coeff;
                    } else {
                        m[(row, col)] -= coeff;
                    }
                }
            }
        }
    }
    m
}

/// Coordinates in `Λ^q` of `α_1 ∧ … ∧ α_q`: the coefficient of `ω_J` is the
/// `J`-column minor of the matrix with rows `α_a`.
pub fn wedge_covectors(basis: &ExteriorBasis, forms: &[Covector]) -> Vec<Rational> {
    let q = forms.len();
    if q == 0 {
        return vec![Rational::one()];
    }
    let rows = Matrix::from_rows(forms.iter().map(|f| f.coords().to_vec()).collect());
    let all_rows: Vec<usize> = (0..q).collect();
    basis
        .monomials(q)
        .iter()
        .map(|mon| {
            let cols: Vec<usize> = mon.indices().collect();
            rows.select(&all_rows, &cols).determinant()
        })
        .collect()
}

/// `d_θ` on `Λ^q` as `(untwisted matrix) + (left multiplication by λω)`.
pub fn differential_wedge_form(alg: &LieAlgebra, q: usize, twist: &Twist) -> Result<DifferentialMatrix> {
    check_degree(alg, q)?;
    check_closed(alg, twist.omega())?;
    let basis = ExteriorBasis::new(alg.dim());
    Ok(DifferentialMatrix {
        degree: q,
        matrix: wedge_form_with_basis(alg, &basis, q, twist),
        twist: twist.clone(),
    })
}

pub(crate) fn wedge_form_with_basis(alg: &LieAlgebra, basis: &ExteriorBasis, q: usize, twist: &Twist) -> Matrix {
    let d = ce_matrix(alg, basis, q);
    if twist.is_trivial() {
        d
    } else {
        d.add(&left_multiplication(basis, q, twist.effective()))
    }
}

/// `d_q` of the cochain complex with coefficients in the one-dimensional
/// representation `ρ(ξ) = λω(ξ)`, assembled by evaluating
///
/// ```text
/// (d_q f)(X_1..X_{q+1}) = Σ_i (-1)^{i+1} ρ(X_i) f(.., X̂_i, ..)
///                       + Σ_{i<j} (-1)^{i+j-1} f([X_i,X_j], .., X̂_i, .., X̂_j, ..)
/// ```
///
/// on basis vectors. Independent of [`differential_wedge_form`], which it must equal.
pub fn differential_rep_form(alg: &LieAlgebra, q: usize, twist: &Twist) -> Result<DifferentialMatrix> {
    check_degree(alg, q)?;
    check_closed(alg, twist.omega())?;
    let basis = ExteriorBasis::new(alg.dim());
    let rho = twist.effective().coords();
    let mut m = Matrix::zeros(basis.dim(q + 1), basis.dim(q));
    for (row, &target) in basis.monomials(q + 1).iter().enumerate() {
        let args: Vec<usize> = target.indices().collect();
        for (col, &f) in basis.monomials(q).iter().enumerate() {
            let mut value = Rational::zero();
            // representation term, 1-based sign (-1)^{i+1} = 0-based (-1)^i
            for (i, &xi) in args.iter().enumerate() {
                if rho[xi].is_zero() {
                    continue;
                }
                let rest: Vec<usize> = args.iter().copied().filter(|&x| x != xi).collect();
                let s = f.evaluate(&rest);
                if s != 0 {
                    let term = &rho[xi] * Rational::from(s as i64);
                    if i % 2 == 0 {
                        value += term;
                    } else {
                        value -= term;
                    }
                }
            }
            // bracket term, 1-based (-1)^{i+j-1} = 0-based (-1)^{i+j+1}
            for i in 0..args.len() {
                for j in i + 1..args.len() {
                    let rest: Vec<usize> = args
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != i && p != j)
                        .map(|(_, &x)| x)
                        .collect();
                    let bracket = alg.bracket_basis(args[i], args[j]);
                    let mut inner = Rational::zero();
                    for (k, c) in bracket.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut full = Vec::with_capacity(rest.len() + 1);
                        full.push(k);
                        full.extend_from_slice(&rest);
                        let s = f.evaluate(&full);
                        if s != 0 {
                            inner += c * Rational::from(s as i64);
                        }
                    }
                    if (i + j) % 2 == 1 {
                        value += inner;
                    } else {
                        value -= inner;
                    }
                }
            }
            m[(row, col)] = value;
        }
    }
    Ok(DifferentialMatrix {
        degree: q,
        matrix: m,
        twist: twist.clone(),
    })
}
