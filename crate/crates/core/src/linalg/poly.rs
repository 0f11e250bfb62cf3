use std::cmp::Ordering;
use std::fmt;

use super::{det_bareiss, LinalgError, Matrix, PolyRing};
use crate::field::Field;

/// Degree of a polynomial; the zero polynomial has degree −∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Univariate polynomial; `coeffs[k]` is the coefficient of `x^k`. The
/// highest stored coefficient is never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

pub type PolyMat<E> = Matrix<Poly<E>>;
pub type PolyVec<E> = Vec<Poly<E>>;

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(f: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Poly::from_coeffs(f, vec![c])
    }

    /// `c · x^k`
    pub fn monomial<F: Field<Elem = E>>(f: &F, c: E, k: usize) -> Self {
        let mut coeffs = vec![f.zero(); k];
        coeffs.push(c);
        Poly::from_coeffs(f, coeffs)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, k: usize) -> E {
        self.coeffs.get(k).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            f,
            (0..n).map(|k| f.add(&self.coeff(f, k), &other.coeff(f, k))).collect(),
        )
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            f,
            (0..n).map(|k| f.sub(&self.coeff(f, k), &other.coeff(f, k))).collect(),
        )
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        Poly::from_coeffs(f, self.coeffs.iter().map(|c| f.mul(s, c)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, out)
    }

    /// Euclidean division: `self = q · divisor + r` with `deg r < deg divisor`.
    pub fn div_rem<F: Field<Elem = E>>(
        &self,
        f: &F,
        divisor: &Self,
    ) -> Result<(Self, Self), LinalgError> {
        let lead = divisor.leading().ok_or(LinalgError::DivisionByZero)?;
        let lead_inv = f.inv(lead).expect("leading coefficient is nonzero");
        let dn = divisor.coeffs.len();
        if self.coeffs.len() < dn {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dn - 1], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, d));
            }
            quot[k] = c;
        }
        rem.truncate(dn - 1);
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    pub fn exact_div<F: Field<Elem = E>>(&self, f: &F, divisor: &Self) -> Result<Self, LinalgError> {
        let (q, r) = self.div_rem(f, divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(LinalgError::InexactDivision)
        }
    }

    /// Horner evaluation.
    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn display<F: Field<Elem = E>>(&self, f: &F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(k, c)| {
                let c = f.format(c);
                match k {
                    0 => c,
                    1 => format!("({c})*x"),
                    _ => format!("({c})*x^{k}"),
                }
            })
            .collect();
        terms.join(" + ")
    }
}

impl<E: Clone + PartialEq> Matrix<Poly<E>> {
    /// Entrywise evaluation at `x`.
    pub fn eval_at<F: Field<Elem = E>>(&self, f: &F, x: &E) -> Matrix<E> {
        self.map(|p| p.eval(f, x))
    }

    pub fn mul_polyvec<F: Field<Elem = E>>(
        &self,
        f: &F,
        v: &[Poly<E>],
    ) -> Result<PolyVec<E>, LinalgError> {
        if v.len() != self.cols() {
            return Err(LinalgError::Shape {
                expected: format!("vector of length {}", self.cols()),
                rows: v.len(),
                cols: 1,
            });
        }
        Ok((0..self.rows())
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Poly::zero(), |acc, (a, b)| acc.add(f, &a.mul(f, b)))
            })
            .collect())
    }
}

/// Determinant of a polynomial matrix, by fraction-free elimination in `F[x]`.
pub fn det_polymat<F: Field>(f: &F, m: &PolyMat<F::Elem>) -> Result<Poly<F::Elem>, LinalgError> {
    det_bareiss(&PolyRing(f), m.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn canonical_form() {
        let f = Rationals;
        let p = Poly::from_coeffs(&f, vec![f.from_i64(1), f.zero(), f.zero()]);
        assert_eq!(p.degree(), Degree::Finite(0));
        let z = Poly::from_coeffs(&f, vec![f.zero(), f.zero()]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn division() {
        let f = PrimeField::new(5).unwrap();
        // (x + 1)(x + 2) = x^2 + 3x + 2
        let a = Poly::from_coeffs(&f, vec![1, 1]);
        let b = Poly::from_coeffs(&f, vec![2, 1]);
        let ab = a.mul(&f, &b);
        assert_eq!(ab.coeffs(), &[2, 3, 1]);
        assert_eq!(ab.exact_div(&f, &a).unwrap(), b);
        let plus_one = ab.add(&f, &Poly::constant(&f, 1));
        assert_eq!(plus_one.exact_div(&f, &a), Err(LinalgError::InexactDivision));
        assert_eq!(a.div_rem(&f, &Poly::zero()), Err(LinalgError::DivisionByZero));
        assert_eq!(ab.eval(&f, &4), 0);
    }

    #[test]
    fn polymat_determinant() {
        let f = Rationals;
        let c = |v: i64| Poly::constant(&f, f.from_i64(v));
        let x = Poly::monomial(&f, f.one(), 1);
        // [[1,1,x],[1,1,1],[2,1,1]] has determinant 1 - x
        let t = Matrix::from_rows(vec![
            vec![c(1), c(1), x.clone()],
            vec![c(1), c(1), c(1)],
            vec![c(2), c(1), c(1)],
        ])
        .unwrap();
        let d = det_polymat(&f, &t).unwrap();
        assert_eq!(d.coeffs(), &[f.from_i64(1), f.from_i64(-1)]);
        assert!(det_polymat(&f, &Matrix::from_rows(vec![vec![c(1), c(2)]]).unwrap()).is_err());
    }
}
