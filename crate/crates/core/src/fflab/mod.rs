//! Finite-field laboratory: points of P^r(F_p), exhaustive fiber counts of
//! polar maps, and polar-degree estimates.

mod degree;
mod suites;

pub use degree::{
    default_prime, polar_degree, DegreeConfig, DegreeEstimate, ImageRatio, Verdict,
    DEFAULT_EPSILON, DEFAULT_SAMPLES,
};
pub use suites::{
    dolgachev_suite, homaloidal_series_suite, nored_pairs, support_invariance_check, NoredPair,
    NoredReport, SuiteEntry, SuiteReport,
};

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{AlgError, PrimeField};
use crate::polarity::PolarityError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FflabError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Polarity(#[from] PolarityError),
    #[error("P^{r}(F_{p}) has {points} points, above the limit of {limit}")]
    GuardExceeded {
        r: usize,
        p: u32,
        points: u128,
        limit: u64,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// Largest projective space that is enumerated.
pub const MAX_POINTS: u64 = 10_000_000;

/// A point of P^r(F_p) whose first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjPointFp {
    coords: Vec<u32>,
}

impl ProjPointFp {
    /// Normalizes `coords`; `None` for the zero vector.
    pub fn new(fp: &PrimeField, mut coords: Vec<u32>) -> Option<Self> {
        let lead = *coords.iter().find(|&&c| c != 0)?;
        let inv = fp.inv_raw(lead).expect("nonzero");
        for c in coords.iter_mut() {
            *c = fp.mul_raw(*c, inv);
        }
        Some(ProjPointFp { coords })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

/// P^r(F_p) with a dense numbering of its points.
///
/// Points with the leading 1 in position k come before those with the
/// leading 1 in position k+1; inside a block the trailing coordinates are
/// read as a base-p number.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    fp: PrimeField,
    r: usize,
    /// `offsets[k]` = index of the first point with leading 1 at k.
    offsets: Vec<u64>,
    len: u64,
}

/// P^r(F_p), refused when it has more than `MAX_POINTS` points.
pub fn enumerate(r: usize, p: u32) -> Result<ProjectiveSpace, FflabError> {
    let fp = PrimeField::new(p)?;
    let total: u128 = (0..=r as u32).map(|k| (p as u128).pow(k)).sum();
    if total > MAX_POINTS as u128 {
        return Err(FflabError::GuardExceeded {
            r,
            p,
            points: total,
            limit: MAX_POINTS,
        });
    }
    let mut offsets = Vec::with_capacity(r + 1);
    let mut acc = 0u64;
    for k in 0..=r {
        offsets.push(acc);
        acc += (p as u64).pow((r - k) as u32);
    }
    Ok(ProjectiveSpace {
        fp,
        r,
        offsets,
        len: acc,
    })
}

impl ProjectiveSpace {
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> &PrimeField {
        &self.fp
    }

    /// Writes the coordinates of point `idx` into `out` (length r+1).
    pub fn coords_into(&self, idx: u64, out: &mut [u32]) {
        let k = self.offsets.partition_point(|&o| o <= idx) - 1;
        let p = self.fp.modulus() as u64;
        let mut rest = idx - self.offsets[k];
        out[..k].fill(0);
        out[k] = 1;
        for c in out[k + 1..].iter_mut().rev() {
            *c = (rest % p) as u32;
            rest /= p;
        }
    }

    pub fn point(&self, idx: u64) -> ProjPointFp {
        let mut c = vec![0; self.r + 1];
        self.coords_into(idx, &mut c);
        ProjPointFp { coords: c }
    }

    /// Index of the point spanned by the nonzero vector `v`.
    pub fn index_of(&self, v: &[u32]) -> Option<u64> {
        let k = v.iter().position(|&c| c != 0)?;
        let inv = self.fp.inv_raw(v[k]).expect("nonzero");
        let p = self.fp.modulus() as u64;
        let mut idx = 0u64;
        for &c in &v[k + 1..] {
            idx = idx * p + self.fp.mul_raw(c, inv) as u64;
        }
        Some(self.offsets[k] + idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = ProjPointFp> + '_ {
        (0..self.len).map(|i| self.point(i))
    }
}
