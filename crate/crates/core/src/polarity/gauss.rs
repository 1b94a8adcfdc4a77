use rayon::prelude::*;
use serde::Serialize;

use super::hessian::HessianSampler;
use super::{Hypersurface, PolarityError};
use crate::exactalg::{rank_mod_p, CompiledMap, Field, PrimeField};
use crate::rng::{random_nonzero_vector, stream_rng};

/// Sampled dimension of the dual variety V(f)*.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaussImage {
    /// Largest observed rank of the Gauss map differential, minus one.
    pub v: usize,
    pub smooth_points: usize,
    pub lines_scanned: usize,
    pub p: u32,
    pub seed: u64,
}

const MIN_SMOOTH_POINTS: usize = 20;
const TARGET_SMOOTH_POINTS: usize = 40;
const MAX_LINES: usize = 4096;
const BATCH: usize = 64;

/// Estimate v(f) = dim V(f)* over F_p.
///
/// Smooth F_p-points of V(f) are found on seeded random lines by scanning
/// all p affine parameters. At each one the Hessian is restricted to the
/// tangent hyperplane {w : ∇f(x)·w = 0} of the affine cone; its rank minus
/// one is the rank of the differential of the Gauss map. The result is a
/// lower bound for v(f), exact for general points.
pub fn gauss_image_dim<F: Field>(
    h: &Hypersurface<F>,
    p: u32,
    seed: u64,
) -> Result<GaussImage, PolarityError> {
    if p < 101 {
        return Err(PolarityError::OutOfRange(format!("prime {p} below 101")));
    }
    let fp = PrimeField::new(p)?;
    let n = h.n_vars();
    let hess = HessianSampler::new(h, p)?;
    let f = CompiledMap::new(std::slice::from_ref(h.poly()), fp)?;
    let grad = CompiledMap::new(&h.poly().reduce_mod(&fp)?.gradient()?, fp)?;

    let mut ranks = Vec::new();
    let mut lines = 0;
    while ranks.len() < TARGET_SMOOTH_POINTS && lines < MAX_LINES {
        let batch: Vec<Vec<usize>> = (lines..lines + BATCH)
            .into_par_iter()
            .map(|k| {
                let mut rng = stream_rng(seed, k as u64);
                let a = random_nonzero_vector(&mut rng, &fp, n);
                let b = random_nonzero_vector(&mut rng, &fp, n);
                let mut found = Vec::new();
                let mut x = vec![0u32; n];
                for lambda in 0..p {
                    for i in 0..n {
                        x[i] = fp.add_raw(a[i], fp.mul_raw(lambda, b[i]));
                    }
                    if f.eval(&x)[0] != 0 {
                        continue;
                    }
                    let g = grad.eval(&x);
                    if let Some(rank) = tangent_rank(&fp, &hess, &x, &g) {
                        found.push(rank);
                    }
                }
                found
            })
            .collect();
        lines += BATCH;
        ranks.extend(batch.into_iter().flatten());
    }
    if ranks.len() < MIN_SMOOTH_POINTS {
        return Err(PolarityError::Inconclusive(format!(
            "only {} smooth points over F_{p}; try a larger prime",
            ranks.len()
        )));
    }
    ranks.truncate(TARGET_SMOOTH_POINTS);
    let best = ranks.iter().copied().max().unwrap_or(0);
    Ok(GaussImage {
        v: best.saturating_sub(1),
        smooth_points: ranks.len(),
        lines_scanned: lines,
        p,
        seed,
    })
}

/// Rank of H(x) on the hyperplane orthogonal to g; `None` if g = 0.
fn tangent_rank(fp: &PrimeField, hess: &HessianSampler, x: &[u32], g: &[u32]) -> Option<usize> {
    let k = g.iter().position(|&v| v != 0)?;
    let m = hess.matrix_at(x);
    let n = g.len();
    let gk_inv = fp.inv_raw(g[k]).expect("nonzero");
    // column j of H·B, B spanned by e_j − (g_j/g_k) e_k
    let mut cols: Vec<Vec<u32>> = (0..n)
        .filter(|&j| j != k)
        .map(|j| {
            let t = fp.mul_raw(g[j], gk_inv);
            (0..n)
                .map(|i| fp.sub_raw(m[i][j], fp.mul_raw(t, m[i][k])))
                .collect()
        })
        .collect();
    Some(rank_mod_p(fp, &mut cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, Rationals};

    fn hs(s: &str, n: usize) -> Hypersurface<Rationals> {
        Hypersurface::new(parse_poly(s, n, Rationals).unwrap()).unwrap()
    }

    #[test]
    fn smooth_quadric_surface_has_nondegenerate_dual() {
        let g = gauss_image_dim(&hs("x0*x3 - x1*x2", 4), 101, 5).unwrap();
        assert_eq!(g.v, 2);
        assert!(g.smooth_points >= 20);
    }

    #[test]
    fn triangle_dual_is_points() {
        assert_eq!(gauss_image_dim(&hs("x0*x1*x2", 3), 101, 5).unwrap().v, 0);
    }

    #[test]
    fn small_prime_rejected() {
        assert!(gauss_image_dim(&hs("x0*x1*x2", 3), 7, 5).is_err());
    }
}
