use super::{LinalgError, Matrix, Poly};
use crate::field::Field;

/// The ring operations fraction-free elimination needs.
pub trait Domain {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a / b`, where `b` is known to divide `a`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, LinalgError>;
}

impl<F: Field> Domain for F {
    type Elem = F::Elem;

    fn zero(&self) -> F::Elem {
        Field::zero(self)
    }
    fn one(&self) -> F::Elem {
        Field::one(self)
    }
    fn is_zero(&self, a: &F::Elem) -> bool {
        Field::is_zero(self, a)
    }
    fn neg(&self, a: &F::Elem) -> F::Elem {
        Field::neg(self, a)
    }
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        Field::mul(self, a, b)
    }
    fn sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        Field::sub(self, a, b)
    }
    fn exact_div(&self, a: &F::Elem, b: &F::Elem) -> Result<F::Elem, LinalgError> {
        self.div(a, b).map_err(|_| LinalgError::Singular)
    }
}

/// `F[x]` as an integral domain.
#[derive(Debug, Clone)]
pub struct PolyRing<'a, F>(pub &'a F);

impl<F: Field> Domain for PolyRing<'_, F> {
    type Elem = Poly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }
    fn one(&self) -> Self::Elem {
        Poly::constant(self.0, self.0.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(self.0)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(self.0, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(self.0, b)
    }
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, LinalgError> {
        a.exact_div(self.0, b)
    }
}

/// Determinant of a square matrix over an integral domain by Bareiss
/// elimination. Every division is exact by Sylvester's identity.
pub fn det_bareiss<D: Domain>(d: &D, mut m: Matrix<D::Elem>) -> Result<D::Elem, LinalgError> {
    let n = m.rows();
    if !m.is_square() {
        return Err(LinalgError::Shape {
            expected: "a square matrix".into(),
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if n == 0 {
        return Ok(d.one());
    }
    let mut negate = false;
    let mut prev = d.one();
    for k in 0..n - 1 {
        if d.is_zero(&m[(k, k)]) {
            let Some(p) = (k + 1..n).find(|&i| !d.is_zero(&m[(i, k)])) else {
                return Ok(d.zero());
            };
            for j in 0..n {
                let t = m[(k, j)].clone();
                m[(k, j)] = m[(p, j)].clone();
                m[(p, j)] = t;
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = d.sub(
                    &d.mul(&m[(i, j)], &m[(k, k)]),
                    &d.mul(&m[(i, k)], &m[(k, j)]),
                );
                m[(i, j)] = d.exact_div(&num, &prev)?;
            }
        }
        prev = m[(k, k)].clone();
    }
    let det = m[(n - 1, n - 1)].clone();
    Ok(if negate { d.neg(&det) } else { det })
}
