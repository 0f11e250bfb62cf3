//! The Töplitz pencil `T(x) = M0 + x·M1` built from coefficients
//! `c1, …, c_{n+1}`, and the block partition of `M0`, `M1` into `Q, v, w, B`.

use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};
use crate::linalg::{det_polymat, LinalgError, Matrix, Poly, PolyMat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PencilError {
    #[error("need at least 3 coefficients (n >= 2), got {0}")]
    TooShort(usize),
    #[error("coefficient c{index} is zero; all coefficients must be nonzero")]
    ZeroCoefficient { index: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `n×n` matrix `M0` with `M0[i][j] = c_{i−j+2}` (1-based) for `j ≤ i+1`:
/// `c2` on the diagonal, `c1` on the superdiagonal, `c_{n+1}` bottom-left.
/// Accepts any coefficients, zeros included.
pub fn toeplitz_m0<F: Field>(f: &F, c: &[F::Elem]) -> Matrix<F::Elem> {
    let n = c.len() - 1;
    Matrix::from_fn(n, n, |i, j| {
        if j <= i + 1 {
            c[i + 1 - j].clone()
        } else {
            f.zero()
        }
    })
}

/// `n×n` matrix with ones on the second superdiagonal (zero when `n = 2`).
pub fn shift_m1<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |i, j| if j == i + 2 { f.one() } else { f.zero() })
}

/// `M0 + x·M1` as a polynomial matrix.
pub fn linear_pencil<F: Field>(
    f: &F,
    m0: &Matrix<F::Elem>,
    m1: &Matrix<F::Elem>,
) -> PolyMat<F::Elem> {
    Matrix::from_fn(m0.rows(), m0.cols(), |i, j| {
        Poly::from_coeffs(f, vec![m0[(i, j)].clone(), m1[(i, j)].clone()])
    })
}

/// A validated coefficient list `c1, …, c_{n+1}` with every entry nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilInstance<F: Field> {
    field: F,
    c: Vec<F::Elem>,
}

/// `M0 = [[v, Q], [c_{n+1}, w]]`, `M1 = [[0, B], [0, 0]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilPartition<E> {
    /// Lower-triangular Töplitz, `(n−1)×(n−1)`, `c1` on the diagonal.
    pub q: Matrix<E>,
    /// `(c2, …, c_n)ᵗ`
    pub v: Vec<E>,
    /// `(c_n, …, c2)`
    pub w: Vec<E>,
    /// Ones on the first superdiagonal.
    pub b: Matrix<E>,
}

impl<E: Clone + PartialEq> PencilPartition<E> {
    /// Reassembles `(M0, M1)` given the corner entry `c_{n+1}`.
    pub fn assemble<F: Field<Elem = E>>(&self, f: &F, corner: &E) -> (Matrix<E>, Matrix<E>) {
        let k = self.q.rows();
        let n = k + 1;
        let m0 = Matrix::from_fn(n, n, |i, j| match (i < k, j == 0) {
            (true, true) => self.v[i].clone(),
            (true, false) => self.q[(i, j - 1)].clone(),
            (false, true) => corner.clone(),
            (false, false) => self.w[j - 1].clone(),
        });
        let m1 = Matrix::from_fn(n, n, |i, j| {
            if i < k && j > 0 {
                self.b[(i, j - 1)].clone()
            } else {
                f.zero()
            }
        });
        (m0, m1)
    }
}

impl<F: Field> PencilInstance<F> {
    pub fn new(field: F, c: Vec<F::Elem>) -> Result<Self, PencilError> {
        if c.len() < 3 {
            return Err(PencilError::TooShort(c.len()));
        }
        if let Some(i) = c.iter().position(|x| field.is_zero(x)) {
            return Err(PencilError::ZeroCoefficient { index: i + 1 });
        }
        Ok(PencilInstance { field, c })
    }

    pub fn from_scalars(field: F, c: &[Scalar]) -> Result<Self, PencilError> {
        let elems = c
            .iter()
            .map(|s| field.from_scalar(s))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, elems)
    }

    pub fn from_i64(field: F, c: &[i64]) -> Result<Self, PencilError> {
        let elems = c.iter().map(|&v| field.from_i64(v)).collect();
        Self::new(field, elems)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.c.len() - 1
    }

    /// `c1, …, c_{n+1}` (index 0 holds `c1`).
    pub fn coefficients(&self) -> &[F::Elem] {
        &self.c
    }

    /// 1-based coefficient access, `c(1) = c1`.
    pub fn c(&self, index: usize) -> &F::Elem {
        &self.c[index - 1]
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        self.c.iter().map(|x| self.field.to_scalar(x)).collect()
    }

    pub fn m0(&self) -> Matrix<F::Elem> {
        toeplitz_m0(&self.field, &self.c)
    }

    pub fn m1(&self) -> Matrix<F::Elem> {
        shift_m1(&self.field, self.n())
    }

    pub fn pencil(&self) -> PolyMat<F::Elem> {
        linear_pencil(&self.field, &self.m0(), &self.m1())
    }

    /// `det T(x)` in canonical form.
    pub fn det_pencil(&self) -> Poly<F::Elem> {
        det_polymat(&self.field, &self.pencil()).expect("pencil is square")
    }

    pub fn partition(&self) -> PencilPartition<F::Elem> {
        let f = &self.field;
        let k = self.n() - 1;
        PencilPartition {
            q: Matrix::from_fn(k, k, |i, j| {
                if j <= i {
                    self.c[i - j].clone()
                } else {
                    f.zero()
                }
            }),
            v: self.c[1..=k].to_vec(),
            w: self.c[1..=k].iter().rev().cloned().collect(),
            b: Matrix::from_fn(k, k, |i, j| if j == i + 1 { f.one() } else { f.zero() }),
        }
    }

    /// True iff `det T(x)` is the zero polynomial.
    pub fn is_singular(&self) -> bool {
        self.det_pencil().is_zero()
    }

    /// `λ = c2/c1` when `c_{k+1} = λ·c_k` for every `k = 1..n`.
    pub fn is_geometric(&self) -> Option<F::Elem> {
        let f = &self.field;
        let lambda = f.div(&self.c[1], &self.c[0]).expect("c1 is nonzero");
        self.c
            .windows(2)
            .all(|w| w[1] == f.mul(&lambda, &w[0]))
            .then_some(lambda)
    }

    /// Every coefficient divided by `c1`.
    pub fn normalize_c1(&self) -> Self {
        let f = &self.field;
        let inv = f.inv(&self.c[0]).expect("c1 is nonzero");
        PencilInstance {
            field: f.clone(),
            c: self.c.iter().map(|x| f.mul(&inv, x)).collect(),
        }
    }

    /// Every coefficient multiplied by a nonzero `t`.
    pub fn scaled(&self, t: &F::Elem) -> Result<Self, PencilError> {
        let f = &self.field;
        Self::new(f.clone(), self.c.iter().map(|x| f.mul(t, x)).collect())
    }

    /// The geometric instance `c_k = c1·λ^{k−1}`.
    pub fn geometric(field: F, n: usize, c1: F::Elem, lambda: F::Elem) -> Result<Self, PencilError> {
        let mut c = Vec::with_capacity(n + 1);
        let mut cur = c1;
        for _ in 0..=n {
            c.push(cur.clone());
            cur = field.mul(&cur, &lambda);
        }
        Self::new(field, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::linalg::Degree;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn inst(c: &[i64]) -> PencilInstance<Rationals> {
        PencilInstance::from_i64(Rationals, c).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rationals.from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(inst(&[1, 2, 4, 8]).n(), 3);
        assert_eq!(
            PencilInstance::from_i64(Rationals, &[1, 0, 4, 8]),
            Err(PencilError::ZeroCoefficient { index: 2 })
        );
        assert_eq!(
            PencilInstance::from_i64(Rationals, &[1, 3]),
            Err(PencilError::TooShort(2))
        );
        let seven = PrimeField::new(7).unwrap();
        assert_eq!(
            PencilInstance::from_i64(seven, &[1, 7, 2]),
            Err(PencilError::ZeroCoefficient { index: 2 })
        );
    }

    #[test]
    fn matrices() {
        let p = inst(&[1, 2, 4, 8]);
        assert_eq!(p.m0(), mat(&[&[2, 1, 0], &[4, 2, 1], &[8, 4, 2]]));
        assert_eq!(p.m1(), mat(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]));
        assert!(inst(&[1, 3, 2]).m1().is_zero(&Rationals));
        let m1 = inst(&[1, 1, 1, 1, 1]).m1();
        let ones: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| !Rationals.is_zero(&m1[(i, j)]))
            .collect();
        assert_eq!(ones, vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn partition_of_geometric_three() {
        let p = inst(&[1, 2, 4, 8]);
        let part = p.partition();
        assert_eq!(part.q, mat(&[&[1, 0], &[2, 1]]));
        assert_eq!(part.v, mat(&[&[2, 4]]).row(0).to_vec());
        assert_eq!(part.w, mat(&[&[4, 2]]).row(0).to_vec());
        assert_eq!(part.b, mat(&[&[0, 1], &[0, 0]]));
        let part2 = inst(&[5, 3, 2]).partition();
        assert_eq!(part2.q, mat(&[&[5]]));
        assert_eq!(part2.v, part2.w);
        assert_eq!(part2.b, mat(&[&[0]]));
    }

    #[test]
    fn determinants_of_small_pencils() {
        let f = Rationals;
        let d = inst(&[1, 1, 1, 2]).det_pencil();
        assert_eq!(d.coeffs(), &[f.from_i64(1), f.from_i64(-1)]);
        assert!(inst(&[1, 2, 4, 8]).det_pencil().is_zero());
        assert_eq!(inst(&[1, 3, 2]).det_pencil().coeffs(), &[f.from_i64(7)]);
    }

    #[test]
    fn singularity_and_geometry() {
        let f = Rationals;
        assert!(inst(&[1, 2, 4, 8]).is_singular());
        assert!(!inst(&[1, 1, 1, 2]).is_singular());
        assert!(inst(&[2, 4, 8, 16]).is_singular());
        assert_eq!(inst(&[1, 2, 4, 8]).is_geometric(), Some(f.from_i64(2)));
        assert_eq!(inst(&[1, 1, 1, 2]).is_geometric(), None);
        assert_eq!(inst(&[3, 3, 3, 3, 3]).is_geometric(), Some(f.one()));
        assert_eq!(inst(&[2, 4, 8, 16]).normalize_c1(), inst(&[1, 2, 4, 8]));
        assert_eq!(inst(&[1, 5, 7]).normalize_c1(), inst(&[1, 5, 7]));
    }

    fn nonzero_coeffs() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(prop_oneof![-6i64..=-1, 1i64..=6], 3..9)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn partition_reassembles(c in nonzero_coeffs()) {
            let p = inst(&c);
            let part = p.partition();
            let (m0, m1) = part.assemble(&Rationals, p.c(p.n() + 1));
            prop_assert_eq!(m0, p.m0());
            prop_assert_eq!(m1, p.m1());
            let rev: Vec<_> = part.v.iter().rev().cloned().collect();
            prop_assert_eq!(&part.w, &rev);
            let exch = Matrix::exchange(&Rationals, p.n() - 1);
            prop_assert_eq!(exch.vec_mul(&Rationals, &part.v).unwrap(), part.w);
        }

        #[test]
        fn degree_bound_and_normalization(c in nonzero_coeffs()) {
            let p = inst(&c);
            let d = p.det_pencil();
            prop_assert!(d.degree() <= Degree::Finite(p.n() - 2));
            prop_assert_eq!(p.is_singular(), p.normalize_c1().is_singular());
            if p.is_geometric().is_some() {
                prop_assert!(p.is_singular());
            }
            // proven range of the conjecture
            if p.is_singular() {
                prop_assert!(p.is_geometric().is_some());
            }
        }

        #[test]
        fn homogeneity(c in nonzero_coeffs(), t in prop_oneof![-5i64..=-1, 1i64..=5]) {
            let f = Rationals;
            let p = inst(&c);
            let t = f.from_i64(t);
            let base = p.det_pencil();
            let scaled = p.scaled(&t).unwrap().det_pencil();
            for k in 0..=p.n() {
                let expect = f.mul(&f.pow(&t, (p.n() - k) as u64), &base.coeff(&f, k));
                prop_assert_eq!(scaled.coeff(&f, k), expect);
            }
        }
    }
}
