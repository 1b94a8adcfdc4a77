use std::time::Instant;

use polaris_core::exactalg::{parse_poly, DetMethod, Field, MPoly, Rationals};
use polaris_core::subhankel::{
    hessian_closed_form, hilbert_burch_check, irreducibility_structure, minor_checks,
    sub_hankel_matrix, verify_lemma, xi, SubHankelBundle,
};

/// f^(r) from the expansion along the last column:
/// f^(r) = −ξ(r) Σ_j ξ(j) x_j x_r^{r−j−1} φ^(j), with φ^(j) the order-j
/// determinant on the last j+1 variables.
fn laplace_oracle(r: usize) -> MPoly<Rationals> {
    let n = r + 1;
    let q = Rationals;
    let x = |i: usize| MPoly::var(q, n, i);
    let mut f = MPoly::zero(q, n);
    for j in 0..r {
        let phi = if j == 0 {
            MPoly::one(q, n)
        } else {
            let map: Vec<usize> = (0..=j).map(|k| r - j + k).collect();
            laplace_oracle(j).remap_vars(n, &map).unwrap()
        };
        let sign = q.from_i64(-xi(r) * xi(j));
        let t = &(&x(j) * &x(r).pow((r - j - 1) as u32)) * &phi;
        f = &f + &t.scale(&sign);
    }
    f
}

#[test]
fn determinant_matches_recurrence() {
    for r in 2..=7 {
        let b = SubHankelBundle::build(r).unwrap();
        assert_eq!(b.f(), &laplace_oracle(r), "r = {r}");
    }
}

#[test]
fn cofactor_and_bareiss_agree_on_sub_hankel() {
    for r in 2..=6 {
        let m = sub_hankel_matrix(r);
        assert_eq!(
            m.det_with(DetMethod::Cofactor).unwrap(),
            m.det_with(DetMethod::Bareiss).unwrap()
        );
    }
}

#[test]
fn cubic_identity_by_hand() {
    let b = SubHankelBundle::build(3).unwrap();
    let fs = b.f().gradient().unwrap();
    let p = |s: &str| parse_poly(s, 4, Rationals).unwrap();
    assert_eq!(fs[0], p("-x3^2"));
    assert_eq!(fs[1], p("2*x2*x3"));
    // x3 f_1 = -2 x2 f_0
    assert_eq!(&p("x3") * &fs[1], &p("-2*x2") * &fs[0]);
}

#[test]
fn lemma_holds_through_order_eight() {
    let t = Instant::now();
    for r in 2..=8 {
        let rep = verify_lemma(&SubHankelBundle::build(r).unwrap());
        assert!(rep.all_ok(), "r = {r}: {:?}", rep.failures);
    }
    eprintln!("lemma r=2..8: {:?}", t.elapsed());
}

#[test]
fn content_at_order_four() {
    use polaris_core::exactalg::{monomial_content, ExpVec};
    let b = SubHankelBundle::build(4).unwrap();
    let fs = b.f().gradient().unwrap();
    assert_eq!(
        monomial_content(&fs[..2]).unwrap(),
        ExpVec::new(vec![0, 0, 0, 0, 2])
    );
    assert_eq!(
        monomial_content(&fs[..3]).unwrap(),
        ExpVec::new(vec![0, 0, 0, 0, 1])
    );
}

#[test]
fn minors_and_hilbert_burch() {
    let t = Instant::now();
    for r in 2..=6 {
        let b = SubHankelBundle::build(r).unwrap();
        for i in 1..r {
            let m = minor_checks(&b, i).unwrap();
            assert!(m.ok(), "r = {r}, i = {i}: {m:?}");
            let hb = hilbert_burch_check(&b, i).unwrap();
            assert!(hb.ok, "r = {r}, i = {i}: {hb:?}");
        }
    }
    eprintln!("minors + HB r=2..6: {:?}", t.elapsed());
    let b = SubHankelBundle::build(3).unwrap();
    let m = minor_checks(&b, 2).unwrap();
    assert_eq!(m.delta2_coeff.trim_start_matches('-'), "3");
    let hb = hilbert_burch_check(&b, 1).unwrap();
    assert!(hb.lambda.is_some());
}

#[test]
fn hessian_closed_forms() {
    let t = Instant::now();
    for r in 2..=6 {
        let b = SubHankelBundle::build(r).unwrap();
        let h = hessian_closed_form(&b).unwrap();
        assert!(h.closed_form_ok && h.anti_triangular_ok, "r = {r}: {h:?}");
        assert_eq!(h.exponent as usize, (r + 1) * (r - 2));
        eprintln!("r = {r}: c = {:?}", h.c);
    }
    eprintln!("hessians r=2..6: {:?}", t.elapsed());
    let b2 = hessian_closed_form(&SubHankelBundle::build(2).unwrap()).unwrap();
    assert_eq!(b2.c.as_deref(), Some("2"));
}

#[test]
fn x0_is_linear_with_monomial_coefficient() {
    for r in 2..=6 {
        let rep = irreducibility_structure(&SubHankelBundle::build(r).unwrap());
        assert!(rep.ok, "r = {r}: {rep:?}");
    }
}
