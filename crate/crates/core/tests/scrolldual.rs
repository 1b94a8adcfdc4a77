use std::time::Instant;

use polaris_core::exactalg::{Field, Rationals};
use polaris_core::fflab::{polar_degree, DegreeConfig};
use polaris_core::polarity::{gradient, is_cone, Hypersurface};
use polaris_core::scrolldual::{
    build_y, dual_interpolate, dual_sample, interpolate_dual, inverse_degree, lift_dual_form,
    multiplicity_along, serie_verify, ProjectionChain, P_INTERPOLATION,
};
use polaris_core::subhankel::SubHankelBundle;

fn unit(n: usize, i: usize) -> Vec<num_rational::BigRational> {
    (0..n)
        .map(|j| Rationals.from_i64((i == j) as i64))
        .collect()
}

#[test]
fn scroll_s12_dual_is_a_cubic() {
    let chain = ProjectionChain::identity(1, 2).unwrap();
    let f = interpolate_dual(&chain, 3, P_INTERPOLATION, None, 3).unwrap();
    assert_eq!((f.kernel_dim_below, f.kernel_dim), (0, 1));
    assert!(f.held_out_ok());
}

#[test]
fn dual_degrees_of_y() {
    for (a, b) in [(1, 2), (1, 3), (1, 4), (2, 3)] {
        let chain = build_y(a, b, 7).unwrap();
        let d = (a + b) as u32;
        let f = interpolate_dual(&chain, d, P_INTERPOLATION, None, 7).unwrap();
        assert_eq!((f.kernel_dim_below, f.kernel_dim), (0, 1), "Y({a},{b})");
        assert!(f.held_out_ok(), "Y({a},{b})");
        assert_eq!(f.form.n_vars(), a + 3);
    }
}

#[test]
fn resample_rate_is_small() {
    let chain = build_y(2, 3, 1).unwrap();
    let s = dual_sample(&chain, 400, P_INTERPOLATION, 1).unwrap();
    assert!(s.resample_rate() < 0.05, "{}", s.resample_rate());
    assert!(s.warning.is_none());
}

#[test]
fn extra_samples_still_interpolate() {
    let chain = build_y(1, 4, 11).unwrap();
    let s = dual_sample(&chain, 400, P_INTERPOLATION, 11).unwrap();
    let f = dual_interpolate(&s.points, 5, P_INTERPOLATION).unwrap();
    assert_eq!(f.kernel_dim, 1);
}

#[test]
fn multiplicity_along_the_directrix() {
    for (a, b) in [(1, 2), (1, 3), (1, 4), (2, 3)] {
        let chain = build_y(a, b, 2).unwrap();
        let d = (a + b) as u32;
        let lift = lift_dual_form(&chain, d, 2).unwrap();
        assert!(lift.verified, "Y({a},{b})");
        let m = multiplicity_along(&lift.form, &chain.l_points[0], &chain.l_points[1]).unwrap();
        assert_eq!(m, d - a as u32, "Y({a},{b})");
    }
}

#[test]
fn double_line_of_the_sub_hankel_cubic() {
    let f = SubHankelBundle::build(3).unwrap().f().clone();
    assert_eq!(multiplicity_along(&f, &unit(4, 2), &unit(4, 3)).unwrap(), 2);
    assert_eq!(multiplicity_along(&f, &unit(4, 0), &unit(4, 1)).unwrap(), 0);
    assert!(multiplicity_along(&f, &unit(4, 0), &unit(4, 0)).is_err());
}

#[test]
fn y12_dual_matches_the_sub_hankel_cubic() {
    let chain = build_y(1, 2, 4).unwrap();
    let lift = lift_dual_form(&chain, 3, 4).unwrap();
    let h = Hypersurface::new(lift.form.clone()).unwrap();
    assert!(!is_cone(&h).unwrap().is_cone);
    let e = polar_degree(&gradient(&h).unwrap(), &DegreeConfig::for_r(3, 4)).unwrap();
    assert!(e.verdict.is_homaloidal(), "{e:?}");
    let l_perp = multiplicity_along(&lift.form, &chain.l_points[0], &chain.l_points[1]).unwrap();
    assert_eq!(l_perp, 2);
    for i in 0..4 {
        for j in i + 1..4 {
            let m = multiplicity_along(&lift.form, &unit(4, i), &unit(4, j)).unwrap();
            assert!(m < 2, "coordinate line {i},{j}");
        }
    }
}

#[test]
fn inverse_degrees() {
    let start = Instant::now();
    let q = Hypersurface::new(
        polaris_core::exactalg::parse_poly("x0*x3 - x1*x2", 4, Rationals).unwrap(),
    )
    .unwrap();
    assert_eq!(
        inverse_degree(&gradient(&q).unwrap(), P_INTERPOLATION, 1, 4)
            .unwrap()
            .e,
        1
    );
    for (b, expected) in [(2, 3), (3, 5)] {
        let chain = build_y(1, b, 6).unwrap();
        let d = (1 + b) as u32;
        let lift = lift_dual_form(&chain, d, 6).unwrap();
        let map = gradient(&Hypersurface::new(lift.form).unwrap()).unwrap();
        let inv = inverse_degree(&map, P_INTERPOLATION, 6, 2 * d).unwrap();
        assert_eq!(inv.e, expected, "Y(1,{b})");
    }
    eprintln!("inverse degrees: {:?}", start.elapsed());
}

#[test]
fn homaloidal_series_grid() {
    let start = Instant::now();
    for (r, d) in [(3, 3), (3, 4), (3, 5), (4, 5)] {
        let t = Instant::now();
        let rep = serie_verify(r, d, P_INTERPOLATION, 1).unwrap();
        eprintln!(
            "(r,d)=({r},{d}): {:?} mult {} primes {} in {:?}",
            rep.degree.verdict,
            rep.multiplicity_along_l_perp,
            rep.lift.primes.len(),
            t.elapsed()
        );
        assert!(rep.ok, "{rep:#?}");
    }
    eprintln!("serie grid: {:?}", start.elapsed());
    assert!(serie_verify(4, 4, P_INTERPOLATION, 1).is_err());
    assert!(serie_verify(5, 7, P_INTERPOLATION, 1).is_err());
}
