use num_traits::Pow;
use serde::Serialize;

use super::matrix::Matrix;
use super::poly::{integer_roots, Polynomial};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Characteristic polynomial split into its rational linear factors and a
/// residual factor without rational roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPolyFactorization {
    pub char_poly: Polynomial,
    /// Distinct rational roots in increasing order with their multiplicities.
    pub rational_roots: Vec<(Rational, usize)>,
    pub residual: Polynomial,
}

impl CharPolyFactorization {
    /// True when every eigenvalue is rational.
    pub fn is_split(&self) -> bool {
        self.residual.degree().unwrap_or(0) == 0
    }

    pub fn roots(&self) -> impl Iterator<Item = &Rational> {
        self.rational_roots.iter().map(|(r, _)| r)
    }
}

/// Characteristic polynomial `det(xI - m)` via reduction to upper Hessenberg form.
pub fn char_poly(m: &Matrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut h = m.clone();
    // similarity transforms to Hessenberg form
    for col in 0..n.saturating_sub(2) {
        let Some(p) = (col + 1..n).find(|&i| !h[(i, col)].is_zero()) else {
            continue;
        };
        if p != col + 1 {
            for j in 0..n {
                let t = h[(p, j)].clone();
                h[(p, j)] = h[(col + 1, j)].clone();
                h[(col + 1, j)] = t;
            }
            for i in 0..n {
                let t = h[(i, p)].clone();
                h[(i, p)] = h[(i, col + 1)].clone();
                h[(i, col + 1)] = t;
            }
        }
        let pivot = h[(col + 1, col)].clone();
        for i in col + 2..n {
            if h[(i, col)].is_zero() {
                continue;
            }
            let u = &h[(i, col)] / &pivot;
            for j in 0..n {
                if !h[(col + 1, j)].is_zero() {
                    let delta = &u * &h[(col + 1, j)];
                    h[(i, j)] -= delta;
                }
            }
            for r in 0..n {
                if !h[(r, i)].is_zero() {
                    let delta = &u * &h[(r, i)];
                    h[(r, col + 1)] += delta;
                }
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Polynomial> = vec![Polynomial::one()];
    for k in 0..n {
        let mut next = Polynomial::linear(&h[(k, k)]).mul(&polys[k]);
        let mut sub_product = Rational::one();
        for i in (0..k).rev() {
            sub_product *= &h[(i + 1, i)];
            if sub_product.is_zero() {
                break;
            }
            let coeff = &h[(i, k)] * &sub_product;
            if !coeff.is_zero() {
                next = next.sub(&polys[i].scale(&coeff));
            }
        }
        polys.push(next);
    }
    Ok(polys.pop().unwrap_or_else(Polynomial::one))
}

/// Characteristic polynomial with every rational root extracted.
///
/// The monic polynomial is rescaled to an integer polynomial whose rational
/// roots are integers; those are isolated exactly and mapped back.
pub fn char_poly_rational_roots(m: &Matrix) -> Result<CharPolyFactorization> {
    let cp = char_poly(m)?;
    Ok(factor_rational_roots(&cp))
}

/// Splits off all rational linear factors of a nonzero polynomial.
pub fn factor_rational_roots(p: &Polynomial) -> CharPolyFactorization {
    let monic = p.monic();
    let deg = monic.degree().unwrap_or(0);
    // q(y) = D^deg * monic(y / D) is monic with integer coefficients.
    let scale = monic.common_denominator();
    let scaled = Polynomial::new(
        monic
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rational::from(Pow::pow(&scale, (deg - i) as u32)))
            .collect(),
    );
    let candidates = integer_roots(&scaled.squarefree_part());
    let scale_q = Rational::from(scale);
    let mut residual = p.clone();
    let mut rational_roots = Vec::new();
    for y in candidates {
        let root = Rational::from(y) / &scale_q;
        let factor = Polynomial::linear(&root);
        let mut mult = 0;
        loop {
            let (quot, rem) = residual.div_rem(&factor);
            if !rem.is_zero() {
                break;
            }
            residual = quot;
            mult += 1;
        }
        debug_assert!(mult > 0);
        rational_roots.push((root, mult));
    }
    CharPolyFactorization {
        char_poly: p.clone(),
        rational_roots,
        residual,
    }
}
