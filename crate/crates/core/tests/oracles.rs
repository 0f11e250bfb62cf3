//! Cross-checks of the exact linear algebra against naive reference
//! implementations.

use num_rational::BigRational;
use proptest::prelude::*;

use tpencil_core::criteria::evaluate_instance;
use tpencil_core::field::{Field, PrimeField, Rationals};
use tpencil_core::linalg::{det_polymat, Matrix, Poly};
use tpencil_core::pencil::PencilInstance;

/// Laplace expansion along the first row.
fn cofactor_det<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> F::Elem {
    if m.is_empty() {
        return f.one();
    }
    let mut acc = f.zero();
    for (j, a) in m[0].iter().enumerate() {
        let minor: Vec<Vec<F::Elem>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = f.mul(&f.mul(&f.sign(j), a), &cofactor_det(f, &minor));
        acc = f.add(&acc, &term);
    }
    acc
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rational_matrix(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((prop_oneof![2 => Just(0i64), 3 => -6i64..=6], 1i64..=3), n * n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bareiss_matches_cofactor_expansion(
        (n, entries) in (0usize..=5).prop_flat_map(|n| (Just(n), rational_matrix(n)))
    ) {
        let f = Rationals;
        let m = Matrix::from_fn(n, n, |i, j| {
            let (a, b) = entries[i * n + j];
            rat(a, b)
        });
        prop_assert_eq!(m.det(&f).unwrap(), cofactor_det(&f, &m.to_rows()));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion_mod_p(
        (n, entries) in (1usize..=5).prop_flat_map(|n| (Just(n), prop::collection::vec(0u64..7, n * n)))
    ) {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_fn(n, n, |i, j| entries[i * n + j]);
        prop_assert_eq!(m.det(&f).unwrap(), cofactor_det(&f, &m.to_rows()));
    }

    #[test]
    fn rank_plus_nullity(
        (r, c, entries) in (1usize..=5, 1usize..=6)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(prop_oneof![Just(0i64), -2i64..=2], r * c)))
    ) {
        let f = Rationals;
        let m = Matrix::from_fn(r, c, |i, j| f.from_i64(entries[i * c + j]));
        let basis = m.kernel_basis(&f);
        prop_assert_eq!(m.rank(&f) + basis.len(), c);
        for v in &basis {
            prop_assert!(m.mul_vec(&f, v).unwrap().iter().all(|e| f.is_zero(e)));
        }
    }

    // det T(x) evaluated at a point equals det of T evaluated at that point
    #[test]
    fn pencil_determinant_commutes_with_evaluation(
        c in prop::collection::vec(prop_oneof![-5i64..=-1, 1i64..=5], 3..=7),
        x in -4i64..=4,
    ) {
        let f = Rationals;
        let p = PencilInstance::from_i64(f, &c).unwrap();
        let d = det_polymat(&f, &p.pencil()).unwrap();
        let xv = f.from_i64(x);
        let at = p.pencil().eval_at(&f, &xv);
        prop_assert_eq!(d.eval(&f, &xv), cofactor_det(&f, &at.to_rows()));
    }
}

#[test]
fn poly_division_round_trip() {
    let f = Rationals;
    let a = Poly::from_coeffs(&f, [3, 0, -2, 5, 1].iter().map(|&v| f.from_i64(v)).collect());
    let b = Poly::from_coeffs(&f, [1, 2, 3].iter().map(|&v| f.from_i64(v)).collect());
    let (q, r) = a.div_rem(&f, &b).unwrap();
    assert!(r.degree() < b.degree());
    assert_eq!(q.mul(&f, &b).add(&f, &r), a);
    assert_eq!(a.mul(&f, &b).exact_div(&f, &b).unwrap(), a);
}

// Over GF(7) there are singular Töplitz pencils with all c_i nonzero that are
// not geometric. det T(x) has degree ≤ n - 2 < 7, so vanishing at every point
// of GF(7) means it is the zero polynomial.
#[test]
fn non_geometric_singular_pencils_exist_mod_7() {
    let f = PrimeField::new(7).unwrap();
    for c in [[1u64, 2, 3, 4, 1, 4, 2], [1, 3, 6, 2, 1, 1, 1]] {
        let p = PencilInstance::new(f, c.to_vec()).unwrap();
        for x in f.elements() {
            let at = p.pencil().eval_at(&f, &x);
            assert_eq!(cofactor_det(&f, &at.to_rows()), 0);
        }
        assert!(p.is_singular());
        assert_eq!(p.is_geometric(), None);
        let report = evaluate_instance(&p).unwrap();
        assert!(report.s_holds && report.sm_holds && !report.y_is_zero);
    }
}
