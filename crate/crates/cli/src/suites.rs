//! Fixed check lists with pinned parameters.

use polaris_core::constructions::{
    core_multiplicity, gn_build, permutti_build, vanishing_hessian_check, z_and_v_check, GnSpec,
    PermuttiSpec,
};
use polaris_core::fflab::{
    default_prime, dolgachev_suite, homaloidal_series_suite, DegreeConfig, SuiteReport,
};
use polaris_core::scrolldual::{serie_verify, P_INTERPOLATION};
use polaris_core::subhankel::{
    hessian_closed_form, hilbert_burch_check, minor_checks, verify_lemma, SubHankelBundle,
};

use crate::report::{Check, Status};
use crate::CliError;

/// Points at which the Hessian determinants of the construction suite are
/// evaluated.
pub const HESSIAN_TRIALS: usize = 1000;

/// Ten seeded GN instances: types (r, t, m, n) with degrees d, two seeds each.
pub fn gn_suite_specs() -> Vec<GnSpec> {
    let types = [
        (4, 2, 1, 3, 4),
        (4, 2, 1, 3, 7),
        (5, 2, 1, 3, 4),
        (5, 3, 1, 3, 4),
        (6, 3, 2, 4, 5),
    ];
    types
        .iter()
        .flat_map(|&(r, t, m, n, d)| {
            (1..=2).map(move |seed| GnSpec {
                r,
                t,
                m,
                n,
                d,
                seed,
            })
        })
        .collect()
}

/// Ten seeded Permutti instances of types (r, t, n) and degree d.
pub fn permutti_suite_specs() -> Vec<PermuttiSpec> {
    let types = [
        (4, 2, 2, 4),
        (4, 2, 2, 5),
        (5, 3, 2, 4),
        (4, 2, 3, 4),
        (5, 2, 3, 4),
        (5, 3, 4, 5),
        (6, 3, 3, 5),
        (6, 4, 3, 7),
        (6, 2, 2, 5),
        (3, 1, 3, 4),
    ];
    types
        .iter()
        .enumerate()
        .map(|(i, &(r, t, n, d))| PermuttiSpec {
            r,
            t,
            n,
            d,
            seed: i as u64 + 1,
        })
        .collect()
}

/// Permutti types whose z(f) and v(f) are measured, with the degree used.
pub const ZV_TYPES: [(usize, usize, u32, u32); 3] = [(4, 2, 3, 4), (5, 2, 3, 4), (5, 3, 4, 5)];

/// The (r, d) grid of the scroll-dual series.
pub const SERIE_GRID: [(usize, u32); 4] = [(3, 3), (3, 4), (3, 5), (4, 5)];

pub fn fflab_checks(rep: &SuiteReport) -> Vec<Check> {
    rep.entries
        .iter()
        .map(|e| {
            Check::new(
                format!("{}: {}", rep.name, e.name),
                Status::from_ok(e.ok),
                format!(
                    "{} expected {}, got {}",
                    e.poly,
                    e.expected,
                    verdict_text(&e.estimate.verdict)
                ),
                e,
            )
        })
        .collect()
}

pub fn verdict_text(v: &polaris_core::fflab::Verdict) -> String {
    use polaris_core::fflab::Verdict::*;
    match v {
        DeltaEq {
            k,
            heuristic: false,
        } => format!("delta_eq({k})"),
        DeltaEq { k, heuristic: true } => format!("delta_eq({k}) heuristic"),
        DeltaGe { k } => format!("delta_ge({k})"),
        NotDominant => "not_dominant".into(),
        Inconclusive { reason } => format!("inconclusive ({reason})"),
    }
}

pub fn dolgachev(p: Option<u32>, seed: u64) -> Result<Vec<Check>, CliError> {
    let cfg = DegreeConfig {
        p: p.unwrap_or(101),
        ..DegreeConfig::for_r(2, seed)
    };
    Ok(fflab_checks(&dolgachev_suite(&cfg)?))
}

pub fn ext(r: usize, p: Option<u32>, seed: u64) -> Result<Vec<Check>, CliError> {
    let cfg = DegreeConfig {
        p: p.unwrap_or(default_prime(r)),
        ..DegreeConfig::for_r(r, seed)
    };
    Ok(fflab_checks(&homaloidal_series_suite(r, &cfg)?))
}

/// Lemma identities for r = 2..=lemma_max; minors, Hilbert–Burch and the
/// Hessian closed form for r = 2..=hessian_max.
pub fn subhankel_all(lemma_max: usize, hessian_max: usize) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for r in 2..=lemma_max.max(hessian_max) {
        let b = SubHankelBundle::build(r)?;
        if r <= lemma_max {
            out.push(lemma_check(&b));
        }
        if r <= hessian_max {
            out.push(minors_check(&b)?);
            out.push(hb_check(&b)?);
            out.push(hessian_check(&b)?);
        }
    }
    Ok(out)
}

pub fn lemma_check(b: &SubHankelBundle) -> Check {
    let rep = verify_lemma(b);
    let summary = if rep.all_ok() {
        "all identities hold".to_string()
    } else {
        format!("{} failures", rep.failures.len())
    };
    Check::new(
        format!("lemma r={}", b.r()),
        Status::from_ok(rep.all_ok()),
        summary,
        &rep,
    )
}

pub fn minors_check(b: &SubHankelBundle) -> Result<Check, CliError> {
    let reps = (1..b.r())
        .map(|i| minor_checks(b, i))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = reps.iter().all(|m| m.ok());
    Ok(Check::new(
        format!("minors r={}", b.r()),
        Status::from_ok(ok),
        format!("delta1, delta2 for i = 1..{}", b.r() - 1),
        &reps,
    ))
}

pub fn hb_check(b: &SubHankelBundle) -> Result<Check, CliError> {
    let reps = (1..b.r())
        .map(|i| hilbert_burch_check(b, i))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = reps.iter().all(|h| h.ok);
    Ok(Check::new(
        format!("hilbert-burch r={}", b.r()),
        Status::from_ok(ok),
        format!("maximal minors of Phi[i] for i = 1..{}", b.r() - 1),
        &reps,
    ))
}

pub fn hessian_check(b: &SubHankelBundle) -> Result<Check, CliError> {
    let h = hessian_closed_form(b)?;
    let ok = h.closed_form_ok && h.anti_triangular_ok;
    let summary = format!(
        "h = {} * x{}^{} ({})",
        h.c.as_deref().unwrap_or("?"),
        b.r(),
        h.exponent,
        h.method
    );
    Ok(Check::new(
        format!("hessian r={}", b.r()),
        Status::from_ok(ok),
        summary,
        &h,
    ))
}

pub fn gn_permutti(seed_offset: u64) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for s in gn_suite_specs() {
        let s = GnSpec {
            seed: s.seed + seed_offset,
            ..s
        };
        let g = gn_build(&s)?;
        let rep = vanishing_hessian_check(&g.hypersurface, HESSIAN_TRIALS, s.seed)?;
        let k = core_multiplicity(&g.hypersurface, s.t)?;
        let bound = s.d - g.mu;
        let name = format!(
            "gn ({},{},{},{}) d={} seed={}",
            s.r, s.t, s.m, s.n, s.d, s.seed
        );
        out.push(Check::new(
            format!("{name}: vanishing hessian"),
            Status::from_ok(rep.hessian.is_zero()),
            format!("rho = {}", rep.rho),
            &rep,
        ));
        out.push(Check::new(
            format!("{name}: core multiplicity"),
            Status::from_ok(k >= bound),
            format!("{k} >= {bound}"),
            serde_json::json!({ "multiplicity": k, "lower_bound": bound }),
        ));
    }
    for s in permutti_suite_specs() {
        let s = PermuttiSpec {
            seed: s.seed + seed_offset,
            ..s
        };
        let p = permutti_build(&s)?;
        let rep = vanishing_hessian_check(&p.hypersurface, HESSIAN_TRIALS, s.seed)?;
        let k = core_multiplicity(&p.hypersurface, s.t)?;
        let expected = s.d - p.mu;
        let name = format!(
            "permutti ({},{},{}) d={} seed={}",
            s.r, s.t, s.n, s.d, s.seed
        );
        out.push(Check::new(
            format!("{name}: vanishing hessian"),
            Status::from_ok(rep.hessian.is_zero()),
            format!("rho = {}", rep.rho),
            &rep,
        ));
        out.push(Check::new(
            format!("{name}: core multiplicity"),
            Status::from_ok(k == expected),
            format!("{k} (expected {expected})"),
            serde_json::json!({ "multiplicity": k, "expected": expected }),
        ));
    }
    for (r, t, n, d) in ZV_TYPES {
        let rep = z_and_v_check(&PermuttiSpec {
            r,
            t,
            n,
            d,
            seed: 11 + seed_offset,
        })?;
        out.push(Check::new(
            format!("permutti ({r},{t},{n}) d={d}: z and v"),
            Status::from_ok(rep.ok()),
            format!(
                "z = {} (expected {}), v = {} (expected {})",
                rep.z, rep.z_expected, rep.v, rep.v_expected
            ),
            &rep,
        ));
    }
    Ok(out)
}

pub fn serie(p: Option<u32>, seed: u64) -> Result<Vec<Check>, CliError> {
    let p = p.unwrap_or(P_INTERPOLATION);
    let mut out = Vec::new();
    for (r, d) in SERIE_GRID {
        let rep = serie_verify(r, d, p, seed)?;
        out.push(Check::new(
            format!("serie r={r} d={d}"),
            Status::from_ok(rep.ok),
            format!(
                "kernel dims ({},{}), {} at p={}, multiplicity {} along L-perp (expected {})",
                rep.interpolation.kernel_dim_below,
                rep.interpolation.kernel_dim,
                verdict_text(&rep.degree.verdict),
                rep.degree.p,
                rep.multiplicity_along_l_perp,
                rep.expected_multiplicity
            ),
            &rep,
        ));
    }
    Ok(out)
}
