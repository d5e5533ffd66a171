use std::fmt;
use std::ops::{Index, IndexMut};

use serde::Serialize;

use crate::rational::Rational;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Iterates over `(row, col, value)` for nonzero entries in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for (i, j, v) in self.nonzeros() {
            t[(j, i)] = v.clone();
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes for product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for (i, k, a) in self.nonzeros() {
            for j in 0..other.cols {
                let b = &other[(k, j)];
                if !b.is_zero() {
                    out[(i, j)] += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let mut out = vec![Rational::zero(); self.rows];
        for (i, j, a) in self.nonzeros() {
            if !v[j].is_zero() {
                out[i] += a * &v[j];
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Rows `self` on top of rows `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Sub-matrix with the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gaussian elimination over the rationals. Pivots are the first nonzero
    /// entry found scanning columns left to right; when `reduce` is set the
    /// result is the reduced row echelon form.
    fn eliminate(&self, reduce: bool) -> Echelon {
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            if !inv.is_one() {
                for j in col..cols {
                    if !m[(row, j)].is_zero() {
                        m[(row, j)] *= &inv;
                    }
                }
            }
            // Support of the pivot row; rows are only touched where it is nonzero.
            let support: Vec<(usize, Rational)> = (col..cols)
                .filter(|&j| !m[(row, j)].is_zero())
                .map(|j| (j, m[(row, j)].clone()))
                .collect();
            let targets: Box<dyn Iterator<Item = usize>> = if reduce {
                Box::new((0..m.rows).filter(|&i| i != row))
            } else {
                Box::new(row + 1..m.rows)
            };
            for i in targets {
                let factor = m[(i, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for (j, v) in &support {
                    let delta = &factor * v;
                    m[(i, *j)] -= delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rref(&self) -> Echelon {
        self.eliminate(true)
    }

    pub fn rank(&self) -> usize {
        self.eliminate(false).pivots.len()
    }

    /// Basis of the right null space, one vector per free column in increasing
    /// order, each scaled so that its first nonzero entry is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let Echelon { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&reduced[(r, f)];
                }
                normalize_leading(&mut v);
                v
            })
            .collect()
    }

    /// One exact solution of `self * x = b` with free variables set to zero,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Solves `self * X = rhs` column by column with one elimination.
    pub fn solve_many(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(rhs.rows, self.rows, "right-hand side row mismatch");
        let Echelon { reduced, pivots } = self.hstack(rhs).rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = reduced[(r, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    /// Determinant by exact elimination. Panics on non-square input.
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m[(i, col)].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for i in col + 1..n {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let factor = &m[(i, col)] / &pivot;
                for j in col..n {
                    if !m[(col, j)].is_zero() {
                        let delta = &factor * &m[(col, j)];
                        m[(i, j)] -= delta;
                    }
                }
            }
        }
        det
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let x = self.solve_many(&Matrix::identity(self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }
}

/// Scales `v` so its first nonzero entry is 1 (no-op on the zero vector).
pub fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            let inv = lead.recip();
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
    }
}

/// Rank of a family of vectors of equal length.
pub fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

/// Row-reduced basis of the span of `vectors` (all of length `len`).
pub fn span_basis(len: usize, vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let Echelon { reduced, pivots } = Matrix::from_rows(vectors.to_vec()).rref();
    debug_assert_eq!(reduced.cols(), len);
    (0..pivots.len()).map(|r| reduced.row(r).to_vec()).collect()
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(2, 3).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::zeros(0, 4).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(3).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(2, 2).kernel_basis(), vec![v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(Matrix::from_i64(&[&[1, 1]]).kernel_basis(), vec![v(&[1, -1])]);
        // free columns 0 and 2; the second vector (0,-2,1) is rescaled to (0,1,-1/2)
        assert_eq!(
            Matrix::from_i64(&[&[0, 2, 4]]).kernel_basis(),
            vec![v(&[1, 0, 0]), vec![Rational::zero(), Rational::one(), q(-1, 2)]]
        );
    }

    #[test]
    fn solve_examples() {
        let b = v(&[3, -1, 7]);
        assert_eq!(Matrix::identity(3).solve(&b), Some(b));
        assert_eq!(Matrix::from_i64(&[&[1, 1]]).solve(&v(&[2])), Some(v(&[2, 0])));
        assert_eq!(Matrix::from_i64(&[&[1], &[1]]).solve(&v(&[1, 2])), None);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant(), Rational::one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let p = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(p.determinant(), Rational::from(-1));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..5, r * c).prop_map(move |xs| {
                Matrix::from_rows(xs.chunks(c).map(v).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let ker = m.kernel_basis();
            prop_assert_eq!(m.rank() + ker.len(), m.cols());
            for x in &ker {
                prop_assert!(m.mul_vec(x).iter().all(Rational::is_zero));
                prop_assert!(x.iter().find(|e| !e.is_zero()).unwrap().is_one());
            }
            prop_assert_eq!(rank_of(&ker), ker.len());
        }

        #[test]
        fn solve_is_exact(m in small_matrix(), seed in proptest::collection::vec(-3i64..4, 6)) {
            let b: Vec<Rational> = (0..m.rows()).map(|i| Rational::from(seed[i])).collect();
            if let Some(x) = m.solve(&b) {
                prop_assert_eq!(m.mul_vec(&x), b);
            } else {
                // inconsistent exactly when appending b raises the rank
                let aug = m.hstack(&Matrix::from_columns(m.rows(), &[b]));
                prop_assert_eq!(aug.rank(), m.rank() + 1);
            }
        }

        #[test]
        fn transpose_preserves_rank(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
