//! The two algebraic singularity tests and their agreement with the direct
//! determinant test.
//!
//! * (S): `wQ⁻¹v = c_{n+1}` and `wQ⁻¹(BQ⁻¹)^k v = 0` for all `k ≥ 1`.
//! * (SM): `m_n = 0` and `yᵗ P X^k y = 0` for all `k ≥ 0`.
//!
//! The "for all k" quantifiers are truncated by Cayley–Hamilton. `BQ⁻¹` is
//! `(n−1)×(n−1)` and singular (last row of `B` is zero), so every power
//! `k ≥ n−1` is a combination of powers `1..=n−2`; checking `k = 1..=n−1` is
//! enough. `X` is `(n−2)×(n−2)`, so `k = 0..=n−3` is enough for (SM).
//!
//! (S) is evaluated on the raw coefficients with a generic matrix inverse;
//! (SM) goes through the closed-form minor expressions. The two routes share
//! no code beyond basic matrix arithmetic.

use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldDescriptor, Scalar};
use crate::linalg::dot;
use crate::minors::{principal_minors, MinorVector};
use crate::pencil::PencilInstance;

/// The first condition that fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Witness<E> {
    /// `c_{n+1} − wQ⁻¹v` for (S), `m_n` for (SM).
    Determinant { value: E },
    /// The power condition of index `k` and its nonzero value.
    Power { k: usize, value: E },
}

impl<E> Witness<E> {
    pub fn map<T>(self, f: impl FnOnce(E) -> T) -> Witness<T> {
        match self {
            Witness::Determinant { value } => Witness::Determinant { value: f(value) },
            Witness::Power { k, value } => Witness::Power { k, value: f(value) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionCheck<E> {
    pub holds: bool,
    pub witness: Option<Witness<E>>,
}

impl<E> CriterionCheck<E> {
    fn from_conditions<F: Field<Elem = E>>(
        f: &F,
        determinant: E,
        powers: impl IntoIterator<Item = (usize, E)>,
    ) -> Self {
        let witness = if f.is_zero(&determinant) {
            powers
                .into_iter()
                .find(|(_, v)| !f.is_zero(v))
                .map(|(k, value)| Witness::Power { k, value })
        } else {
            Some(Witness::Determinant { value: determinant })
        };
        CriterionCheck {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// Raw values of the (S) conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SValues<E> {
    /// `⋆ = c_{n+1} − wQ⁻¹v`
    pub star: E,
    /// `wQ⁻¹(BQ⁻¹)^k v` for `k = 1..=k_max` (index 0 holds `k = 1`).
    pub powers: Vec<E>,
}

pub fn s_values<F: Field>(p: &PencilInstance<F>, k_max: usize) -> SValues<F::Elem> {
    let f = p.field();
    let part = p.partition();
    let q_inv = part.q.inverse(f).expect("Q is invertible since c1 != 0");
    let w_q_inv = q_inv.vec_mul(f, &part.w).expect("shapes agree");
    let bq_inv = part.b.mul(f, &q_inv).expect("shapes agree");
    let star = f.sub(p.c(p.n() + 1), &dot(f, &w_q_inv, &part.v));
    let mut t = part.v.clone();
    let powers = (1..=k_max)
        .map(|_| {
            t = bq_inv.mul_vec(f, &t).expect("shapes agree");
            dot(f, &w_q_inv, &t)
        })
        .collect();
    SValues { star, powers }
}

/// Criterion (S) with `k` truncated at `n − 1`.
pub fn check_s<F: Field>(p: &PencilInstance<F>) -> CriterionCheck<F::Elem> {
    let SValues { star, powers } = s_values(p, p.n() - 1);
    CriterionCheck::from_conditions(p.field(), star, (1..).zip(powers))
}

/// `yᵗ P X^k y` for `k = 0..=k_max`; empty when `n = 2`.
pub fn sm_values<F: Field>(mv: &MinorVector<F>, k_max: usize) -> Vec<F::Elem> {
    let f = mv.field();
    let sm = mv.sm_objects();
    if sm.y.is_empty() {
        return Vec::new();
    }
    let py = sm.p.mul_vec(f, &sm.y).expect("shapes agree");
    let mut t = sm.y.clone();
    (0..=k_max)
        .map(|k| {
            if k > 0 {
                t = sm.x.mul_vec(f, &t).expect("shapes agree");
            }
            dot(f, &py, &t)
        })
        .collect()
}

/// Criterion (SM) on a minor vector, `k` truncated at `n − 3`.
pub fn check_sm_minors<F: Field>(mv: &MinorVector<F>) -> CriterionCheck<F::Elem> {
    let f = mv.field();
    let n = mv.n();
    let values = if n >= 3 { sm_values(mv, n - 3) } else { Vec::new() };
    CriterionCheck::from_conditions(f, mv.m(n).clone(), values.into_iter().enumerate())
}

/// Criterion (SM); coefficients are normalized to `c1 = 1` internally.
pub fn check_sm<F: Field>(p: &PencilInstance<F>) -> CriterionCheck<F::Elem> {
    check_sm_minors(&principal_minors(p))
}

/// All verdicts for one instance, in exchange form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub n: usize,
    pub field: FieldDescriptor,
    pub c: Vec<Scalar>,
    pub singular_det: bool,
    pub s_holds: bool,
    pub sm_holds: bool,
    pub s_witness: Option<Witness<Scalar>>,
    pub sm_witness: Option<Witness<Scalar>>,
    pub star_value: Scalar,
    pub m_n: Scalar,
    pub y_is_zero: bool,
    pub geometric: Option<Scalar>,
}

impl CriterionReport {
    /// The determinant test and both criteria agree.
    pub fn is_consistent(&self) -> bool {
        self.singular_det == self.s_holds && self.s_holds == self.sm_holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    /// The three singularity verdicts disagree. This is an implementation
    /// bug (or a field where the criteria fail), never a normal outcome.
    #[error(
        "internal consistency alarm: det test {}, (S) {}, (SM) {}",
        .0.singular_det, .0.s_holds, .0.sm_holds
    )]
    ConsistencyAlarm(Box<CriterionReport>),
}

/// Evaluates everything without judging agreement.
pub fn evaluate_unchecked<F: Field>(p: &PencilInstance<F>) -> CriterionReport {
    let f = p.field();
    let mv = principal_minors(p);
    let s = check_s(p);
    let sm = check_sm_minors(&mv);
    let star = s_values(p, 0).star;
    let y_is_zero = mv.sm_objects().y.iter().all(|e| f.is_zero(e));
    let to_scalar = |e: F::Elem| f.to_scalar(&e);
    CriterionReport {
        n: p.n(),
        field: f.descriptor(),
        c: p.to_scalars(),
        singular_det: p.is_singular(),
        s_holds: s.holds,
        sm_holds: sm.holds,
        s_witness: s.witness.map(|w| w.map(to_scalar)),
        sm_witness: sm.witness.map(|w| w.map(to_scalar)),
        star_value: f.to_scalar(&star),
        m_n: f.to_scalar(mv.m(p.n())),
        y_is_zero,
        geometric: p.is_geometric().map(|l| f.to_scalar(&l)),
    }
}

/// Evaluates the instance and raises an alarm if the verdicts disagree.
pub fn evaluate_instance<F: Field>(p: &PencilInstance<F>) -> Result<CriterionReport, CriteriaError> {
    let report = evaluate_unchecked(p);
    if report.is_consistent() {
        Ok(report)
    } else {
        Err(CriteriaError::ConsistencyAlarm(Box::new(report)))
    }
}
