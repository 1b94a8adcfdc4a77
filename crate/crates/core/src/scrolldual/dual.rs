use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::chain::ProjectionChain;
use super::ScrollError;
use crate::exactalg::{monomials_of_degree, nullspace_mod_p, ExpVec, MPoly, PrimeField};
use crate::rng::stream_rng;

/// Default prime for sampling and interpolation.
pub const P_INTERPOLATION: u32 = 32003;
/// Fresh dual points checked against an interpolated form.
pub const HELD_OUT_SAMPLES: usize = 50;
/// Resample attempts per dual point before giving up.
const MAX_RESAMPLES: usize = 100;
/// Stream offset for held-out points.
const HELD_OUT_STREAM: u64 = 1 << 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualSamples {
    pub p: u32,
    pub seed: u64,
    pub points: Vec<Vec<u32>>,
    /// Parameters rejected because the tangent data dropped rank.
    pub resamples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl DualSamples {
    pub fn resample_rate(&self) -> f64 {
        self.resamples as f64 / (self.resamples + self.points.len()).max(1) as f64
    }
}

/// Random hyperplanes tangent to the image surface: for each random (s,u)
/// in the chart t = v = 1, a random vector of the kernel of the 3 × N
/// matrix formed by the image point and its two partials.
pub fn dual_sample(
    chain: &ProjectionChain,
    n: usize,
    p: u32,
    seed: u64,
) -> Result<DualSamples, ScrollError> {
    sample_streams(chain, 0..n as u64, p, seed)
}

fn sample_streams(
    chain: &ProjectionChain,
    streams: std::ops::Range<u64>,
    p: u32,
    seed: u64,
) -> Result<DualSamples, ScrollError> {
    if p < 101 {
        return Err(ScrollError::InvalidArgs(format!("prime {p} below 101")));
    }
    let fp = PrimeField::new(p)?;
    let m = chain.composite_mod(&fp)?;
    let k = m.len();
    let results: Vec<Result<(Vec<u32>, usize), ScrollError>> = streams
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            for tries in 0..MAX_RESAMPLES {
                let s = rng.gen_range(1..p);
                let u = rng.gen_range(1..p);
                let jet = chain.scroll.chart_jet(&fp, s, u);
                let mut rows: Vec<Vec<u32>> = jet.iter().map(|v| apply_mod(&fp, &m, v)).collect();
                let kernel = nullspace_mod_p(&fp, &mut rows, k);
                if kernel.len() != k - 3 {
                    continue;
                }
                let mut xi = vec![0u32; k];
                for v in &kernel {
                    let c = rng.gen_range(1..p);
                    for (x, &y) in xi.iter_mut().zip(v) {
                        *x = fp.add_raw(*x, fp.mul_raw(c, y));
                    }
                }
                if xi.iter().any(|&x| x != 0) {
                    return Ok((xi, tries));
                }
            }
            Err(ScrollError::Degenerate(format!(
                "no smooth point found in {MAX_RESAMPLES} draws"
            )))
        })
        .collect();
    let mut points = Vec::with_capacity(results.len());
    let mut resamples = 0;
    for r in results {
        let (xi, tries) = r?;
        points.push(xi);
        resamples += tries;
    }
    let mut out = DualSamples {
        p,
        seed,
        points,
        resamples,
        warning: None,
    };
    if out.resample_rate() > 0.2 {
        out.warning = Some(format!(
            "resample rate {:.3} above 0.2",
            out.resample_rate()
        ));
    }
    Ok(out)
}

fn apply_mod(fp: &PrimeField, m: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| fp.add_raw(acc, fp.mul_raw(a, b)))
        })
        .collect()
}

/// ⌈1.2 · C(d+r, r)⌉ for forms of degree d in r+1 variables.
pub fn min_samples(n_vars: usize, d: u32) -> usize {
    let count = monomials_of_degree(n_vars, d).len();
    (count * 6).div_ceil(5)
}

/// The unique (up to scalar) degree-d form through a set of dual points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InterpolatedForm {
    pub d: u32,
    pub p: u32,
    pub n_samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub kernel_dim_below: usize,
    pub kernel_dim: usize,
    /// Held-out points satisfied out of those tried.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub held_out: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resamples: Option<usize>,
    #[serde(serialize_with = "as_text")]
    pub form: MPoly<PrimeField>,
}

fn as_text<S: serde::Serializer>(f: &MPoly<PrimeField>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

impl InterpolatedForm {
    pub fn held_out_ok(&self) -> bool {
        self.held_out.is_none_or(|(ok, n)| ok == n)
    }
}

fn kernel(fp: &PrimeField, points: &[Vec<u32>], mons: &[ExpVec]) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = points
        .par_iter()
        .map(|x| mons.iter().map(|m| eval_monomial(fp, m, x)).collect())
        .collect();
    nullspace_mod_p(fp, &mut rows, mons.len())
}

fn eval_monomial(fp: &PrimeField, m: &ExpVec, x: &[u32]) -> u32 {
    m.exps()
        .iter()
        .zip(x)
        .fold(1, |acc, (&e, &v)| fp.mul_raw(acc, fp.pow_raw(v, e as u32)))
}

/// Nullspace of the evaluation matrix of degree-d monomials on the
/// samples, with the kernel dimension one degree lower.
pub fn dual_interpolate(
    samples: &[Vec<u32>],
    d: u32,
    p: u32,
) -> Result<InterpolatedForm, ScrollError> {
    let fp = PrimeField::new(p)?;
    let n_vars = samples
        .first()
        .map(|x| x.len())
        .ok_or(ScrollError::TooFewSamples { need: 1, got: 0 })?;
    if d == 0 {
        return Err(ScrollError::InvalidArgs("degree 0".into()));
    }
    let need = min_samples(n_vars, d);
    if samples.len() < need {
        return Err(ScrollError::TooFewSamples {
            need,
            got: samples.len(),
        });
    }
    let below = kernel(&fp, samples, &monomials_of_degree(n_vars, d - 1)).len();
    let mons = monomials_of_degree(n_vars, d);
    let ker = kernel(&fp, samples, &mons);
    match ker.len() {
        0 => return Err(ScrollError::DegreeTooLow { d }),
        1 => {}
        k => return Err(ScrollError::DegenerateSamples { d, kernel_dim: k }),
    }
    let form = MPoly::from_terms(fp, n_vars, mons.into_iter().zip(ker[0].iter().copied()))?.monic();
    Ok(InterpolatedForm {
        d,
        p,
        n_samples: samples.len(),
        seed: None,
        kernel_dim_below: below,
        kernel_dim: 1,
        held_out: None,
        resamples: None,
        form,
    })
}

/// Samples, interpolates and checks the form on fresh dual points.
/// `n_samples = None` uses the minimum count.
pub fn interpolate_dual(
    chain: &ProjectionChain,
    d: u32,
    p: u32,
    n_samples: Option<usize>,
    seed: u64,
) -> Result<InterpolatedForm, ScrollError> {
    let n = n_samples.unwrap_or_else(|| min_samples(chain.target_coords(), d));
    let samples = dual_sample(chain, n, p, seed)?;
    let mut form = dual_interpolate(&samples.points, d, p)?;
    let fresh = sample_streams(
        chain,
        HELD_OUT_STREAM..HELD_OUT_STREAM + HELD_OUT_SAMPLES as u64,
        p,
        seed,
    )?;
    let ok = fresh
        .points
        .iter()
        .filter(|x| form.form.eval(x).is_ok_and(|v| v == 0))
        .count();
    form.seed = Some(seed);
    form.held_out = Some((ok, HELD_OUT_SAMPLES));
    form.resamples = Some(samples.resamples);
    Ok(form)
}
