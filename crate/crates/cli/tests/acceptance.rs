//! One PASS/FAIL line per acceptance criterion, each under its time limit.

use std::io::Write;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polaris_cli::{run_to_report, suites};
use polaris_core::constructions::{
    core_multiplicity, gn_build, permutti_build, vanishing_hessian_check, z_and_v_check,
    PermuttiSpec,
};
use polaris_core::exactalg::{monomials_of_degree, Field, MPoly, Rationals};
use polaris_core::fflab::{
    dolgachev_suite, homaloidal_series_suite, nored_pairs, polar_degree, support_invariance_check,
    DegreeConfig, Verdict,
};
use polaris_core::polarity::{gradient, polar_operator, Hypersurface};
use polaris_core::scrolldual::{
    build_y, inverse_degree, lift_dual_form, serie_verify, P_INTERPOLATION,
};
use polaris_core::subhankel::{
    hessian_closed_form, hilbert_burch_check, minor_checks, verify_lemma, SubHankelBundle,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn c1_lemma() -> Outcome {
    for r in 2..=8 {
        let rep = verify_lemma(&SubHankelBundle::build(r).map_err(err)?);
        ensure(rep.all_ok(), || format!("r = {r}: {:?}", rep.failures))?;
    }
    Ok("r = 2..8, all parts hold".into())
}

fn c2_hessian() -> Outcome {
    let mut cs = Vec::new();
    for r in 2..=6 {
        let h = hessian_closed_form(&SubHankelBundle::build(r).map_err(err)?).map_err(err)?;
        let exponent = ((r + 1) * (r - 2)) as u32;
        ensure(h.exponent == exponent, || {
            format!("r = {r}: exponent {}", h.exponent)
        })?;
        ensure(h.closed_form_ok && h.anti_triangular_ok, || {
            format!("r = {r}: {h:?}")
        })?;
        let c = h.c.clone().ok_or(format!("r = {r}: no constant"))?;
        ensure(c != "0", || format!("r = {r}: c = 0"))?;
        cs.push(format!("r={r}: c={c}"));
    }
    Ok(cs.join(", "))
}

fn c3_hilbert_burch() -> Outcome {
    for r in 2..=6 {
        let b = SubHankelBundle::build(r).map_err(err)?;
        for i in 1..r {
            let hb = hilbert_burch_check(&b, i).map_err(err)?;
            ensure(hb.ok, || format!("r = {r}, i = {i}: {:?}", hb.failures))?;
            let m = minor_checks(&b, i).map_err(err)?;
            ensure(m.delta1_ok && m.delta2_not_divisible_ok, || {
                format!("r = {r}, i = {i}: {m:?}")
            })?;
        }
    }
    Ok("r = 2..6, every i".into())
}

fn c4_homaloidal_sub_hankel() -> Outcome {
    let mut notes = Vec::new();
    for (r, p) in [(2, 101), (3, 41)] {
        let h =
            Hypersurface::new(SubHankelBundle::build(r).map_err(err)?.f().clone()).map_err(err)?;
        let cfg = DegreeConfig {
            p,
            ..DegreeConfig::for_r(r, 1)
        };
        let e = polar_degree(&gradient(&h).map_err(err)?, &cfg).map_err(err)?;
        ensure(
            e.verdict.is_homaloidal() && e.singleton_fibers >= 200 && e.image_ratio.value >= 0.95,
            || format!("r = {r}: {e:?}"),
        )?;
        notes.push(format!("f^({r}) p={p} ratio {:.3}", e.image_ratio.value));
    }
    Ok(notes.join(", "))
}

fn c5_dolgachev() -> Outcome {
    let rep = dolgachev_suite(&DegreeConfig::for_r(2, 1)).map_err(err)?;
    let kinds: Vec<bool> = rep
        .entries
        .iter()
        .map(|e| e.estimate.verdict.is_homaloidal())
        .collect();
    ensure(kinds == [true, true, true, false], || format!("{rep:?}"))?;
    let last = &rep.entries[3];
    ensure(last.estimate.verdict == Verdict::NotDominant, || {
        format!("{last:?}")
    })?;
    ensure(last.hessian.as_ref().is_some_and(|h| h.is_zero()), || {
        format!("{last:?}")
    })?;
    Ok("three delta_eq(1), concurrent lines not dominant with zero Hessian".into())
}

fn c6_extension() -> Outcome {
    let cfg = DegreeConfig {
        p: 41,
        ..DegreeConfig::for_r(3, 1)
    };
    let rep = homaloidal_series_suite(3, &cfg).map_err(err)?;
    ensure(rep.entries.len() == 3, || {
        format!("{} entries", rep.entries.len())
    })?;
    for e in &rep.entries {
        ensure(
            matches!(e.estimate.verdict, Verdict::DeltaEq { k: 1, .. }),
            || format!("{}: {:?}", e.name, e.estimate.verdict),
        )?;
    }
    Ok("quadric, hyperplanes, quadric + tangent at p = 41".into())
}

fn c7_vanishing_hessians() -> Outcome {
    let gn = suites::gn_suite_specs();
    let pm = suites::permutti_suite_specs();
    ensure(gn.len() == 10 && pm.len() == 10, || "suite sizes".into())?;
    for s in &gn {
        let g = gn_build(s).map_err(err)?;
        let rep = vanishing_hessian_check(&g.hypersurface, 1000, s.seed).map_err(err)?;
        ensure(rep.hessian.is_zero(), || format!("{s:?}"))?;
    }
    for s in &pm {
        let p = permutti_build(s).map_err(err)?;
        let rep = vanishing_hessian_check(&p.hypersurface, 1000, s.seed).map_err(err)?;
        ensure(rep.hessian.is_zero(), || format!("{s:?}"))?;
    }
    let mut zv = Vec::new();
    for (r, t, n, d) in suites::ZV_TYPES {
        let rep = z_and_v_check(&PermuttiSpec {
            r,
            t,
            n,
            d,
            seed: 11,
        })
        .map_err(err)?;
        let z = (r - 1).min(2 * (r - t) - 1);
        let v = (r - 2).min(2 * (r - t - 1));
        ensure(rep.z == z && rep.v == v, || format!("({r},{t}): {rep:?}"))?;
        zv.push(format!("({r},{t}) z={z} v={v}"));
    }
    Ok(format!("20 zero Hessians; {}", zv.join(", ")))
}

fn c8_core_multiplicity() -> Outcome {
    for s in suites::permutti_suite_specs() {
        let p = permutti_build(&s).map_err(err)?;
        let k = core_multiplicity(&p.hypersurface, s.t).map_err(err)?;
        ensure(k == s.d - s.d / s.n, || format!("{s:?}: {k}"))?;
    }
    for s in suites::gn_suite_specs() {
        let g = gn_build(&s).map_err(err)?;
        let k = core_multiplicity(&g.hypersurface, s.t).map_err(err)?;
        ensure(k >= s.d - s.d / s.n, || format!("{s:?}: {k}"))?;
    }
    Ok("Permutti = d - mu, GN >= d - mu".into())
}

fn c9_serie() -> Outcome {
    let mut notes = Vec::new();
    for (r, d) in suites::SERIE_GRID {
        let rep = serie_verify(r, d, P_INTERPOLATION, 1).map_err(err)?;
        let dims = (
            rep.interpolation.kernel_dim_below,
            rep.interpolation.kernel_dim,
        );
        ensure(
            dims == (0, 1)
                && rep.degree.verdict.is_homaloidal()
                && rep.degree.p == [41, 23][r - 3]
                && rep.multiplicity_along_l_perp == d - (r as u32 - 2)
                && rep.ok,
            || format!("(r,d) = ({r},{d}): {rep:?}"),
        )?;
        notes.push(format!("({r},{d})"));
    }
    Ok(format!("{} homaloidal", notes.join(" ")))
}

fn c10_inverse_degree() -> Outcome {
    let mut notes = Vec::new();
    for b in [2usize, 3] {
        let d = b as u32 + 1;
        let chain = build_y(1, b, 1).map_err(err)?;
        let lift = lift_dual_form(&chain, d, 1).map_err(err)?;
        let h = Hypersurface::new(lift.form).map_err(err)?;
        let map = gradient(&h).map_err(err)?;
        let e = polar_degree(&map, &DegreeConfig::for_r(3, 1)).map_err(err)?;
        ensure(e.verdict.is_homaloidal(), || {
            format!("Y(1,{b})*: {:?}", e.verdict)
        })?;
        let inv = inverse_degree(&map, P_INTERPOLATION, 1, 2 * d).map_err(err)?;
        ensure(inv.e == 2 * d - 3, || {
            format!("Y(1,{b})*: inverse degree {}", inv.e)
        })?;
        notes.push(format!("Y(1,{b})*: {}", inv.e));
    }
    Ok(notes.join(", "))
}

fn random_form(rng: &mut ChaCha8Rng) -> MPoly<Rationals> {
    loop {
        let n = rng.gen_range(2..=4);
        let d = rng.gen_range(2..=5);
        let terms: Vec<_> = monomials_of_degree(n, d)
            .into_iter()
            .filter_map(|e| {
                rng.gen_bool(0.6)
                    .then(|| (e, Rationals.from_i64(rng.gen_range(-9..=9))))
            })
            .collect();
        let f = MPoly::from_terms(Rationals, n, terms).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// (Σ p_i ∂/∂x_i)^s f, computed one derivative at a time.
fn directional(f: &MPoly<Rationals>, p: &[BigRational], s: u32) -> MPoly<Rationals> {
    (0..s).fold(f.clone(), |g, _| {
        (0..f.n_vars()).fold(MPoly::zero(Rationals, f.n_vars()), |acc, i| {
            &acc + &g.diff(i).unwrap().scale(&p[i])
        })
    })
}

fn factorial(k: u32) -> BigRational {
    (1..=k as i64).fold(Rationals.one(), |a, i| a * Rationals.from_i64(i))
}

fn report_json(args: &[&str]) -> Result<String, String> {
    let mut argv = vec!["polaris"];
    argv.extend_from_slice(args);
    Ok(run_to_report(argv).map_err(err)?.1.deterministic_json())
}

fn c11_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..100 {
        let f = random_form(&mut rng);
        let n = f.n_vars();
        let d = f.homogeneous_degree().unwrap();
        let euler = (0..n).fold(MPoly::zero(Rationals, n), |acc, i| {
            &acc + &(&MPoly::var(Rationals, n, i) * &f.diff(i).unwrap())
        });
        ensure(euler == f.scale(&Rationals.from_i64(d as i64)), || {
            format!("Euler #{k}: {f}")
        })?;
    }
    for k in 0..50 {
        let f = random_form(&mut rng);
        let n = f.n_vars();
        let d = f.homogeneous_degree().unwrap();
        let s = rng.gen_range(1..d);
        let point = |rng: &mut ChaCha8Rng| -> Vec<BigRational> {
            loop {
                let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
                if v.iter().any(|&x| x != 0) {
                    return v.into_iter().map(|x| Rationals.from_i64(x)).collect();
                }
            }
        };
        let (p, q) = (point(&mut rng), point(&mut rng));
        let h = Hypersurface::new(f.clone()).unwrap();
        let lhs_poly = polar_operator(&h, &p, s).map_err(err)?.poly;
        ensure(lhs_poly == directional(&f, &p, s), || format!("polar #{k}"))?;
        let lhs = lhs_poly.eval(&q).unwrap() / factorial(s);
        let rhs = directional(&f, &q, d - s).eval(&p).unwrap() / factorial(d - s);
        ensure(lhs == rhs, || format!("reciprocity #{k}: {f}, s = {s}"))?;
    }
    for pair in nored_pairs().map_err(err)? {
        let rep = support_invariance_check(&pair, &DegreeConfig::for_r(2, 1)).map_err(err)?;
        ensure(rep.agree, || format!("{rep:?}"))?;
    }
    for args in [
        &["suite", "--name", "dolgachev", "--seed", "7"][..],
        &["subhankel", "--r", "5"][..],
        &[
            "scroll-dual",
            "--a",
            "2",
            "--b",
            "3",
            "--seed",
            "5",
            "--verify-degree",
        ][..],
    ] {
        ensure(report_json(args)? == report_json(args)?, || {
            format!("{args:?} differs")
        })?;
    }
    Ok("100 Euler, 50 reciprocity, 4 nored pairs, 3 reports reproduced".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 sub-Hankel identities", Duration::from_secs(30), c1_lemma),
        ("2 Hessian closed form", Duration::from_secs(60), c2_hessian),
        ("3 Hilbert-Burch", Duration::from_secs(60), c3_hilbert_burch),
        (
            "4 homaloidal sub-Hankel",
            Duration::from_secs(120),
            c4_homaloidal_sub_hankel,
        ),
        ("5 Dolgachev suite", Duration::from_secs(60), c5_dolgachev),
        ("6 extension suite", Duration::from_secs(120), c6_extension),
        (
            "7 vanishing Hessians",
            Duration::from_secs(300),
            c7_vanishing_hessians,
        ),
        (
            "8 core multiplicity",
            Duration::from_secs(60),
            c8_core_multiplicity,
        ),
        ("9 scroll-dual series", Duration::from_secs(900), c9_serie),
        (
            "10 inverse degree",
            Duration::from_secs(600),
            c10_inverse_degree,
        ),
        (
            "11 property suites",
            Duration::from_secs(600),
            c11_properties,
        ),
    ];
    let only: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    let mut out = std::io::stdout();
    for (name, limit, f) in criteria {
        if !only.is_empty() && !only.iter().any(|o| name.contains(o.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {took:.1?}, limit {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        writeln!(out, "{status} criterion {name} ({took:.2?}): {detail}").unwrap();
    }
    if failed > 0 {
        writeln!(out, "{failed} criteria failed").unwrap();
        std::process::exit(1);
    }
}
