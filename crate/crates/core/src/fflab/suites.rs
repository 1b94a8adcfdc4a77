use serde::Serialize;

use super::degree::{polar_degree, DegreeConfig, DegreeEstimate, Verdict};
use super::FflabError;
use crate::exactalg::{parse_poly, MPoly, Rationals};
use crate::polarity::{gradient, hessian, HessianMode, HessianValue, Hypersurface};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteEntry {
    pub name: String,
    pub poly: String,
    pub expected: String,
    pub estimate: DegreeEstimate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hessian: Option<HessianValue>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub entries: Vec<SuiteEntry>,
    pub ok: bool,
}

fn hypersurface(s: &str, n: usize) -> Result<Hypersurface<Rationals>, FflabError> {
    Ok(Hypersurface::new(parse_poly(s, n, Rationals)?)?)
}

fn homaloidal_entry(
    name: &str,
    h: &Hypersurface<Rationals>,
    cfg: &DegreeConfig,
) -> Result<SuiteEntry, FflabError> {
    let estimate = polar_degree(&gradient(h)?, cfg)?;
    Ok(SuiteEntry {
        name: name.into(),
        poly: h.poly().to_string(),
        expected: "delta_eq(1)".into(),
        ok: estimate.verdict.is_homaloidal(),
        estimate,
        hessian: None,
    })
}

fn report(name: &str, entries: Vec<SuiteEntry>) -> SuiteReport {
    SuiteReport {
        name: name.into(),
        ok: entries.iter().all(|e| e.ok),
        entries,
    }
}

/// Plane curves: the three homaloidal ones and three concurrent lines,
/// whose Hessian vanishes and whose polar map is not dominant.
pub fn dolgachev_suite(cfg: &DegreeConfig) -> Result<SuiteReport, FflabError> {
    let mut entries = Vec::new();
    for (name, s) in [
        ("smooth conic", "x0*x2 - x1^2"),
        ("three general lines", "x0*x1*x2"),
        ("conic and tangent line", "x0*x2^2 - x1^2*x2"),
    ] {
        entries.push(homaloidal_entry(name, &hypersurface(s, 3)?, cfg)?);
    }
    let h = hypersurface("x0^2*x1 + x0*x1^2", 3)?;
    let estimate = polar_degree(&gradient(&h)?, cfg)?;
    let hess = hessian(&h, HessianMode::symbolic())?.hessian;
    entries.push(SuiteEntry {
        name: "three concurrent lines".into(),
        poly: h.poly().to_string(),
        expected: "not_dominant".into(),
        ok: estimate.verdict == Verdict::NotDominant && hess.is_zero(),
        estimate,
        hessian: Some(hess),
    });
    Ok(report("dolgachev", entries))
}

/// Smooth quadric, r+1 general hyperplanes, and a quadric with a tangent
/// hyperplane in P^r.
pub fn homaloidal_series_suite(r: usize, cfg: &DegreeConfig) -> Result<SuiteReport, FflabError> {
    if !(2..=4).contains(&r) {
        return Err(FflabError::Config(format!("r = {r} outside 2..=4")));
    }
    let n = r + 1;
    let q = split_quadric(r);
    let hyperplanes = (0..n).fold(MPoly::one(Rationals, n), |acc, i| {
        &acc * &MPoly::var(Rationals, n, i)
    });
    let tangent = &q * &MPoly::var(Rationals, n, r);
    let entries = vec![
        homaloidal_entry("smooth quadric", &Hypersurface::new(q)?, cfg)?,
        homaloidal_entry(
            "coordinate hyperplanes",
            &Hypersurface::new(hyperplanes)?,
            cfg,
        )?,
        homaloidal_entry(
            "quadric and tangent hyperplane",
            &Hypersurface::new(tangent)?,
            cfg,
        )?,
    ];
    Ok(report(&format!("ext r={r}"), entries))
}

/// x0 x_r − x1 x_{r−1} − …, with −x_{r/2}² in the middle for even r. Its
/// tangent hyperplane at (1:0:…:0) is x_r = 0.
fn split_quadric(r: usize) -> MPoly<Rationals> {
    let n = r + 1;
    let x = |i| MPoly::var(Rationals, n, i);
    let mut q = &x(0) * &x(r);
    for i in 1..=r / 2 {
        q = &q - &(&x(i) * &x(r - i));
    }
    q
}

/// A reduced form and a form with the same support but repeated factors.
#[derive(Clone, Debug)]
pub struct NoredPair {
    pub name: String,
    pub reduced: Hypersurface<Rationals>,
    pub thickened: Hypersurface<Rationals>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoredReport {
    pub name: String,
    pub reduced: Verdict,
    pub thickened: Verdict,
    pub agree: bool,
}

/// Plane pairs (g, g'), g reduced and g' with the same irreducible factors.
pub fn nored_pairs() -> Result<Vec<NoredPair>, FflabError> {
    let n = 3;
    let x = |i| MPoly::var(Rationals, n, i);
    let conic = parse_poly("x0*x2 - x1^2", n, Rationals)?;
    let lines = &(&x(0) * &x(1)) * &x(2);
    let tangent = &conic * &x(2);
    let concurrent = parse_poly("x0^2*x1 + x0*x1^2", n, Rationals)?;
    let pairs = [
        ("three general lines", lines.clone(), &lines * &x(0)),
        ("smooth conic", conic.clone(), conic.pow(2)),
        ("conic and tangent line", tangent.clone(), &tangent * &x(2)),
        (
            "three concurrent lines",
            concurrent.clone(),
            &concurrent * &x(1),
        ),
    ];
    pairs
        .into_iter()
        .map(|(name, g, t)| {
            Ok(NoredPair {
                name: name.into(),
                reduced: Hypersurface::new(g)?,
                thickened: Hypersurface::new(t)?,
            })
        })
        .collect()
}

/// Compares the verdicts for the two members of a pair.
pub fn support_invariance_check(
    pair: &NoredPair,
    cfg: &DegreeConfig,
) -> Result<NoredReport, FflabError> {
    let a = polar_degree(&gradient(&pair.reduced)?, cfg)?.verdict;
    let b = polar_degree(&gradient(&pair.thickened)?, cfg)?.verdict;
    Ok(NoredReport {
        name: pair.name.clone(),
        agree: a == b,
        reduced: a,
        thickened: b,
    })
}
