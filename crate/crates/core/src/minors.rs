//! Leading principal minors `m_r` of `M0` (with `c1 = 1`) and the objects
//! expressed through them: the closed-form inverse of `Q`, the vector
//! `Q⁻¹v`, the matrix `X` and the vector `y`.
//!
//! The minors determine the coefficients and vice versa: `m_r` is affine in
//! `c_{r+1}` with coefficient `(−1)^{r+1}`, so `c2, …, c_{n+1}` can be peeled
//! off one at a time.

use thiserror::Error;

use crate::field::Field;
use crate::linalg::Matrix;
use crate::pencil::{toeplitz_m0, PencilInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorsError {
    #[error("det X needs n >= 3, got n = {0}")]
    Dimension(usize),
    #[error("need at least 2 minors (n >= 2), got {0}")]
    TooFew(usize),
}

/// `m0 = 1, m1, …, m_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorVector<F: Field> {
    field: F,
    m: Vec<F::Elem>,
}

/// `X`, `y` and the exchange matrix `P`, all of dimension `n − 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmObjects<E> {
    pub x: Matrix<E>,
    pub y: Vec<E>,
    pub p: Matrix<E>,
}

impl<F: Field> MinorVector<F> {
    /// From `m1, …, m_n`; `m0 = 1` is prepended.
    pub fn from_minors(field: F, minors: &[F::Elem]) -> Result<Self, MinorsError> {
        if minors.len() < 2 {
            return Err(MinorsError::TooFew(minors.len()));
        }
        let mut m = Vec::with_capacity(minors.len() + 1);
        m.push(field.one());
        m.extend_from_slice(minors);
        Ok(MinorVector { field, m })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.m.len() - 1
    }

    /// `m_r` for `r = 0..=n`.
    pub fn m(&self, r: usize) -> &F::Elem {
        &self.m[r]
    }

    pub fn as_slice(&self) -> &[F::Elem] {
        &self.m
    }

    /// `(−1)^r m_r`
    fn signed(&self, r: usize) -> F::Elem {
        self.field.mul(&self.field.sign(r), &self.m[r])
    }

    /// `Q⁻¹[i][j] = (−1)^{i+j} m_{i−j}` for `i ≥ j`, zero above the diagonal.
    pub fn q_inverse_closed_form(&self) -> Matrix<F::Elem> {
        let k = self.n() - 1;
        Matrix::from_fn(k, k, |i, j| {
            if i >= j {
                self.signed(i - j)
            } else {
                self.field.zero()
            }
        })
    }

    /// `Q⁻¹v = (m1, −m2, m3, …, (−1)^{n−2} m_{n−1})ᵗ`.
    pub fn q_inv_v_closed_form(&self) -> Vec<F::Elem> {
        (1..self.n())
            .map(|r| self.field.neg(&self.signed(r)))
            .collect()
    }

    /// `X` is `Q⁻¹` without its first row and last column; `y = (−m2, m3, …,
    /// (−1)^{n−2} m_{n−1})ᵗ`. Both are empty when `n = 2`.
    pub fn sm_objects(&self) -> SmObjects<F::Elem> {
        let f = &self.field;
        let k = self.n() - 2;
        let qinv = self.q_inverse_closed_form();
        SmObjects {
            x: qinv.submatrix(1..k + 1, 0..k),
            y: (2..self.n()).map(|r| f.neg(&self.signed(r))).collect(),
            p: Matrix::exchange(f, k),
        }
    }

    pub fn det_x(&self) -> Result<F::Elem, MinorsError> {
        if self.n() < 3 {
            return Err(MinorsError::Dimension(self.n()));
        }
        Ok(self
            .sm_objects()
            .x
            .det(&self.field)
            .expect("X is square"))
    }

    /// `m2 = … = m_n = 0`.
    pub fn is_geometric_signature(&self) -> bool {
        self.m[2..].iter().all(|x| self.field.is_zero(x))
    }
}

/// Leading principal minors of `M0` after scaling to `c1 = 1`.
pub fn principal_minors<F: Field>(p: &PencilInstance<F>) -> MinorVector<F> {
    let f = p.field();
    let normalized = p.normalize_c1();
    let m0 = normalized.m0();
    let m = (0..=p.n())
        .map(|r| m0.leading(r).det(f).expect("leading block is square"))
        .collect();
    MinorVector { field: f.clone(), m }
}

/// `c2, …, c_{n+1}` (with `c1 = 1`) whose principal minors are
/// `minors = m1, …, m_n`. Zeros may appear in the output.
pub fn recover_c_from_minors<F: Field>(f: &F, minors: &[F::Elem]) -> Vec<F::Elem> {
    let n = minors.len();
    let mut c = Vec::with_capacity(n + 1);
    c.push(f.one());
    for (idx, m_r) in minors.iter().enumerate() {
        let r = idx + 1;
        // leading r×r block uses c1..c_{r+1}; evaluate with c_{r+1} = 0
        c.push(f.zero());
        let rest = toeplitz_m0(f, &c).det(f).expect("square");
        let value = f.mul(&f.sign(r + 1), &f.sub(m_r, &rest));
        *c.last_mut().expect("just pushed") = value;
    }
    c.split_off(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn inst(c: &[i64]) -> PencilInstance<Rationals> {
        PencilInstance::from_i64(Rationals, c).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn small_minors() {
        let mv = principal_minors(&inst(&[1, 1, 1, 2]));
        assert_eq!(mv.as_slice(), &ints(&[1, 1, 0, 1])[..]);
        let geo = principal_minors(&inst(&[1, 2, 4, 8]));
        assert_eq!(geo.as_slice(), &ints(&[1, 2, 0, 0])[..]);
        assert!(geo.is_geometric_signature());
        // m1 = c2, m2 = c2^2 - c3
        let mv = principal_minors(&inst(&[1, 3, 5, 7, 11]));
        assert_eq!(mv.m(1), &Rationals.from_i64(3));
        assert_eq!(mv.m(2), &Rationals.from_i64(4));
    }

    #[test]
    fn closed_forms_small() {
        let f = Rationals;
        let mv = MinorVector::from_minors(f, &ints(&[5, 6, 7, 8])).unwrap();
        let qinv = mv.q_inverse_closed_form();
        assert_eq!(qinv.to_rows(), vec![ints(&[1, 0, 0]), ints(&[-5, 1, 0]), ints(&[6, -5, 1])]);
        assert_eq!(mv.q_inv_v_closed_form(), ints(&[5, -6, 7]));
        let sm = mv.sm_objects();
        assert_eq!(sm.x.to_rows(), vec![ints(&[-5, 1]), ints(&[6, -5])]);
        assert_eq!(sm.y, ints(&[-6, 7]));

        let two = MinorVector::from_minors(f, &ints(&[3, 0])).unwrap();
        assert_eq!(two.q_inverse_closed_form().to_rows(), vec![ints(&[1])]);
        let sm2 = two.sm_objects();
        assert_eq!((sm2.x.rows(), sm2.y.len(), sm2.p.rows()), (0, 0, 0));
        assert_eq!(two.det_x(), Err(MinorsError::Dimension(2)));

        let three = MinorVector::from_minors(f, &ints(&[3, 4, 5])).unwrap();
        let sm3 = three.sm_objects();
        assert_eq!(sm3.x.to_rows(), vec![ints(&[-3])]);
        assert_eq!(sm3.y, ints(&[-4]));
        assert_eq!(sm3.p.to_rows(), vec![ints(&[1])]);
    }

    #[test]
    fn geometric_three_against_generic_inverse() {
        let f = Rationals;
        let p = inst(&[1, 2, 4, 8]);
        let mv = principal_minors(&p);
        let part = p.partition();
        assert_eq!(mv.q_inverse_closed_form(), part.q.inverse(&f).unwrap());
        assert_eq!(mv.q_inv_v_closed_form(), ints(&[2, 0]));
        assert_eq!(part.q.solve(&f, &part.v).unwrap(), ints(&[2, 0]));
        assert_eq!(mv.det_x().unwrap(), f.from_i64(-2));
    }

    #[test]
    fn det_x_four() {
        // c = (1, 1, 2, c4, c5): m1 = 1, m2 = -1, det X = m1^2 - m2 = 2 = c3
        let mv = principal_minors(&inst(&[1, 1, 2, 3, 5]));
        assert_eq!(mv.m(1), &Rationals.from_i64(1));
        assert_eq!(mv.m(2), &Rationals.from_i64(-1));
        assert_eq!(mv.det_x().unwrap(), Rationals.from_i64(2));
    }

    #[test]
    fn recovery() {
        let f = Rationals;
        assert_eq!(recover_c_from_minors(&f, &ints(&[2, 0, 0])), ints(&[2, 4, 8]));
        assert_eq!(recover_c_from_minors(&f, &ints(&[1, 0])), ints(&[1, 1]));
        let g = PrimeField::new(5).unwrap();
        assert_eq!(recover_c_from_minors(&g, &[3, 0, 0, 0]), vec![3, 4, 2, 1]);
    }

    fn nonzero_coeffs() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(prop_oneof![-7i64..=-1, 1i64..=7], 3..10)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn closed_forms_match_generic(c in nonzero_coeffs()) {
            let f = Rationals;
            let p = inst(&c);
            let mv = principal_minors(&p);
            let part = p.normalize_c1().partition();
            let qinv = mv.q_inverse_closed_form();
            prop_assert_eq!(qinv.mul(&f, &part.q).unwrap(), Matrix::identity(&f, p.n() - 1));
            prop_assert_eq!(mv.q_inv_v_closed_form(), part.q.solve(&f, &part.v).unwrap());
            if p.n() >= 3 {
                let c_norm = p.normalize_c1();
                let expect = f.mul(&f.sign(p.n()), c_norm.c(p.n() - 1));
                prop_assert_eq!(mv.det_x().unwrap(), expect);
            }
        }

        #[test]
        fn recovery_round_trips(m in prop::collection::vec(-6i64..=6, 2..9)) {
            let f = Rationals;
            let minors = ints(&m);
            let c = recover_c_from_minors(&f, &minors);
            let mut full = vec![f.one()];
            full.extend(c.iter().cloned());
            let m0 = toeplitz_m0(&f, &full);
            for (r, want) in minors.iter().enumerate() {
                prop_assert_eq!(&m0.leading(r + 1).det(&f).unwrap(), want);
            }
        }

        #[test]
        fn minors_then_recovery(c in nonzero_coeffs()) {
            let f = Rationals;
            let p = inst(&c).normalize_c1();
            let mv = principal_minors(&p);
            let back = recover_c_from_minors(&f, &mv.as_slice()[1..]);
            prop_assert_eq!(&back[..], &p.coefficients()[1..]);
        }

        #[test]
        fn exchange_times_x_powers_symmetric(m in prop::collection::vec(-5i64..=5, 3..12)) {
            let f = Rationals;
            let mv = MinorVector::from_minors(f, &ints(&m)).unwrap();
            let sm = mv.sm_objects();
            let mut xk = sm.x.clone();
            for _ in 1..4 {
                prop_assert!(sm.p.mul(&f, &xk).unwrap().is_symmetric());
                xk = xk.mul(&f, &sm.x).unwrap();
            }
        }
    }
}
