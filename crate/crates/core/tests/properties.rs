use num_rational::BigRational;
use proptest::prelude::*;

use polaris_core::exactalg::{
    monomials_of_degree, DetMethod, Field, MPoly, PolyMatrix, PrimeField, Rationals,
};
use polaris_core::polarity::{polar_operator, Hypersurface};

fn form(n: usize, d: u32, coeffs: &[i64]) -> MPoly<Rationals> {
    let terms = monomials_of_degree(n, d)
        .into_iter()
        .zip(coeffs.iter().cycle())
        .map(|(e, &c)| (e, Rationals.from_i64(c)));
    MPoly::from_terms(Rationals, n, terms).unwrap()
}

/// A nonzero form of degree d in n variables with small coefficients.
fn arb_form() -> impl Strategy<Value = MPoly<Rationals>> {
    (2usize..=4, 1u32..=4)
        .prop_flat_map(|(n, d)| {
            let len = monomials_of_degree(n, d).len();
            (Just(n), Just(d), prop::collection::vec(-6i64..=6, len))
        })
        .prop_filter_map("zero form", |(n, d, c)| {
            let f = form(n, d, &c);
            (!f.is_zero()).then_some(f)
        })
}

/// Any polynomial in three variables, homogeneous or not.
fn arb_poly() -> impl Strategy<Value = MPoly<Rationals>> {
    prop::collection::vec(((0u32..=3), prop::collection::vec(-4i64..=4, 20)), 1..3).prop_map(
        |parts| {
            parts.iter().fold(MPoly::zero(Rationals, 3), |acc, (d, c)| {
                &acc + &form(3, *d, c)
            })
        },
    )
}

fn factorial(k: u32) -> BigRational {
    (1..=k as i64).fold(Rationals.one(), |acc, i| acc * Rationals.from_i64(i))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn euler_identity(f in arb_form()) {
        let d = f.homogeneous_degree().unwrap();
        let n = f.n_vars();
        let lhs = (0..n).fold(MPoly::zero(Rationals, n), |acc, i| {
            &acc + &(&MPoly::var(Rationals, n, i) * &f.diff(i).unwrap())
        });
        prop_assert_eq!(lhs, f.scale(&Rationals.from_i64(d as i64)));
    }

    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MPoly::one(Rationals, 3), a.clone());
    }

    #[test]
    fn reduction_is_a_ring_map(a in arb_poly(), b in arb_poly()) {
        let fp = PrimeField::new(101).unwrap();
        let (ra, rb) = (a.reduce_mod(&fp).unwrap(), b.reduce_mod(&fp).unwrap());
        prop_assert_eq!((&a * &b).reduce_mod(&fp).unwrap(), &ra * &rb);
        prop_assert_eq!((&a + &b).reduce_mod(&fp).unwrap(), &ra + &rb);
    }

    #[test]
    fn bareiss_matches_cofactor(size in 2usize..=4, entries in prop::collection::vec(arb_poly(), 16)) {
        let rows = (0..size)
            .map(|i| (0..size).map(|j| entries[i * size + j].clone()).collect())
            .collect();
        let m = PolyMatrix::new(Rationals, 3, rows).unwrap();
        prop_assert_eq!(
            m.det_with(DetMethod::Cofactor).unwrap(),
            m.det_with(DetMethod::Bareiss).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, failure_persistence: None, ..ProptestConfig::default() })]

    /// (1/s!) Δ_p^s f (q) = (1/(d−s)!) Δ_q^{d−s} f (p).
    #[test]
    fn reciprocity(
        f in arb_form().prop_filter("degree at least 2", |f| f.homogeneous_degree().unwrap() >= 2),
        pq in prop::collection::vec(-5i64..=5, 8),
        s_seed in 0u32..100,
    ) {
        let n = f.n_vars();
        let d = f.homogeneous_degree().unwrap();
        let s = 1 + s_seed % (d - 1);
        let p: Vec<BigRational> = pq[..n].iter().map(|&v| Rationals.from_i64(v)).collect();
        let q: Vec<BigRational> = pq[4..4 + n].iter().map(|&v| Rationals.from_i64(v)).collect();
        prop_assume!(p.iter().any(|c| !Rationals.is_zero(c)) && q.iter().any(|c| !Rationals.is_zero(c)));
        let h = Hypersurface::new(f).unwrap();
        let lhs = polar_operator(&h, &p, s).unwrap().poly.eval(&q).unwrap() / factorial(s);
        let rhs = polar_operator(&h, &q, d - s).unwrap().poly.eval(&p).unwrap() / factorial(d - s);
        prop_assert_eq!(lhs, rhs);
    }
}
