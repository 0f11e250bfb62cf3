use std::fmt;
use std::ops::{Index, IndexMut};

use super::{det_bareiss, LinalgError};
use crate::field::Field;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.rows {
            list.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        list.finish()
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;

    fn index(&self, (i, j): (usize, usize)) -> &E {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::Shape {
                expected: format!("{cols} columns in every row"),
                rows: nrows,
                cols: bad.len(),
            });
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &E> {
        self.data.iter()
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// The block `rows.start..rows.end` × `cols.start..cols.end`.
    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows.start + i, cols.start + j)].clone()
        })
    }

    /// Leading principal `r×r` block.
    pub fn leading(&self, r: usize) -> Self {
        self.submatrix(0..r, 0..r)
    }

    fn expect_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::Shape {
                expected: "a square matrix".into(),
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
    }

    /// Anti-diagonal unit matrix (reverses vector order).
    pub fn exchange<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i + j + 1 == n { f.one() } else { f.zero() })
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|e| f.is_zero(e))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::Shape {
                expected: format!("{}x{}", self.rows, self.cols),
                rows: other.rows,
                cols: other.cols,
            });
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            f.add(&self[(i, j)], &other[(i, j)])
        }))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        self.map(|e| f.mul(s, e))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape {
                expected: format!("{} rows", self.cols),
                rows: other.rows,
                cols: other.cols,
            });
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(f.zero(), |acc, k| {
                f.add(&acc, &f.mul(&self[(i, k)], &other[(k, j)]))
            })
        }))
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Result<Vec<E>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Shape {
                expected: format!("vector of length {}", self.cols),
                rows: v.len(),
                cols: 1,
            });
        }
        Ok((0..self.rows).map(|i| dot(f, self.row(i), v)).collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul<F: Field<Elem = E>>(&self, f: &F, w: &[E]) -> Result<Vec<E>, LinalgError> {
        if w.len() != self.rows {
            return Err(LinalgError::Shape {
                expected: format!("row vector of length {}", self.rows),
                rows: 1,
                cols: w.len(),
            });
        }
        Ok((0..self.cols)
            .map(|j| {
                (0..self.rows).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&w[i], &self[(i, j)])))
            })
            .collect())
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, k: u32) -> Result<Self, LinalgError> {
        self.expect_square()?;
        let mut acc = Matrix::identity(f, self.rows);
        for _ in 0..k {
            acc = acc.mul(f, self)?;
        }
        Ok(acc)
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det<F: Field<Elem = E>>(&self, f: &F) -> Result<E, LinalgError> {
        self.expect_square()?;
        det_bareiss(f, self.clone())
    }

    /// Reduced row echelon form and the pivot columns, scanning columns
    /// left to right.
    pub fn rref<F: Field<Elem = E>>(&self, f: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !f.is_zero(&m[(i, col)])) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(&m[(row, col)]).expect("pivot is nonzero");
            for j in col..m.cols {
                m[(row, j)] = f.mul(&m[(row, j)], &inv);
            }
            for i in 0..m.rows {
                if i == row || f.is_zero(&m[(i, col)]) {
                    continue;
                }
                let factor = m[(i, col)].clone();
                for j in col..m.cols {
                    let t = f.mul(&factor, &m[(row, j)]);
                    m[(i, j)] = f.sub(&m[(i, j)], &t);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the right null space, one vector per free column in
    /// increasing column order; each vector has a 1 at its free column.
    pub fn kernel_basis<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(&r[(row, free)]);
                }
                v
            })
            .collect()
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Result<Self, LinalgError> {
        self.expect_square()?;
        let n = self.rows;
        let augmented = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let (r, pivots) = augmented.rref(f);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    /// Solves `self · x = b` for square nonsingular `self`.
    pub fn solve<F: Field<Elem = E>>(&self, f: &F, b: &[E]) -> Result<Vec<E>, LinalgError> {
        self.expect_square()?;
        if b.len() != self.rows {
            return Err(LinalgError::Shape {
                expected: format!("right-hand side of length {}", self.rows),
                rows: b.len(),
                cols: 1,
            });
        }
        let n = self.rows;
        let augmented = Matrix::from_fn(n, n + 1, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = augmented.rref(f);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        Ok(r.column(n))
    }
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn determinants() {
        let f = Rationals;
        assert_eq!(mat(&[&[2, 1], &[4, 2]]).det(&f).unwrap(), q(0));
        assert_eq!(mat(&[&[1, 1, 0], &[1, 1, 1], &[2, 1, 1]]).det(&f).unwrap(), q(1));
        assert_eq!(Matrix::identity(&f, 4).det(&f).unwrap(), q(1));
        // needs a row swap at the first pivot
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).det(&f).unwrap(), q(-1));
        assert!(matches!(
            mat(&[&[1, 2, 3]]).det(&f),
            Err(LinalgError::Shape { .. })
        ));
        assert_eq!(Matrix::<BigRational>::zeros(&f, 0, 0).det(&f).unwrap(), q(1));
    }

    #[test]
    fn ranks() {
        let f = Rationals;
        assert_eq!(Matrix::zeros(&f, 3, 2).rank(&f), 0);
        assert_eq!(mat(&[&[2, 1], &[4, 2]]).rank(&f), 1);
        assert_eq!(Matrix::identity(&f, 5).rank(&f), 5);
    }

    #[test]
    fn kernels() {
        let f = Rationals;
        let m = mat(&[&[2, 1], &[4, 2]]);
        let k = m.kernel_basis(&f);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&f, &k[0]).unwrap().iter().all(|e| f.is_zero(e)));
        // proportional to (1, -2)
        assert_eq!(f.mul(&k[0][0], &q(-2)), k[0][1]);
        assert!(Matrix::identity(&f, 3).kernel_basis(&f).is_empty());
        assert_eq!(Matrix::zeros(&f, 2, 3).kernel_basis(&f).len(), 3);
    }

    #[test]
    fn inverses() {
        let f = Rationals;
        assert_eq!(
            mat(&[&[1, 0], &[2, 1]]).inverse(&f).unwrap(),
            mat(&[&[1, 0], &[-2, 1]])
        );
        assert_eq!(Matrix::identity(&f, 3).inverse(&f).unwrap(), Matrix::identity(&f, 3));
        assert_eq!(mat(&[&[2, 1], &[4, 2]]).inverse(&f), Err(LinalgError::Singular));
    }

    #[test]
    fn solve_and_products() {
        let f = Rationals;
        let m = mat(&[&[1, 0], &[2, 1]]);
        assert_eq!(m.solve(&f, &[q(2), q(4)]).unwrap(), vec![q(2), q(0)]);
        assert_eq!(m.vec_mul(&f, &[q(1), q(1)]).unwrap(), vec![q(3), q(1)]);
        assert_eq!(m.pow(&f, 3).unwrap(), mat(&[&[1, 0], &[6, 1]]));
        assert!(m.mul(&f, &mat(&[&[1, 2, 3]])).is_err());
        assert!(Matrix::<BigRational>::from_rows(vec![vec![q(1)], vec![]]).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(vec![vec![3, 1], vec![5, 2]]).unwrap();
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv).unwrap(), Matrix::identity(&f, 2));
        assert_eq!(m.det(&f).unwrap(), 1);
    }

    #[test]
    fn exchange_matrix() {
        let f = Rationals;
        let p = Matrix::exchange(&f, 3);
        assert_eq!(p.mul_vec(&f, &[q(1), q(2), q(3)]).unwrap(), vec![q(3), q(2), q(1)]);
        assert!(p.is_symmetric());
    }
}
