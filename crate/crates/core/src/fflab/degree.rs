use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate, FflabError};
use crate::exactalg::{rank_mod_p, CompiledMap, Field};
use crate::polarity::PolarMap;
use crate::rng::stream_rng;

pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_EPSILON: f64 = 0.05;

/// Distance allowed between the image ratio and its model value before a
/// fiber size k ≥ 2 is reported only as a lower bound.
const HEURISTIC_TOLERANCE: f64 = 0.1;

/// Default prime keeping P^r(F_p) at desk scale.
pub fn default_prime(r: usize) -> u32 {
    match r {
        0..=2 => 101,
        3 => 41,
        4 => 23,
        5 => 11,
        _ => 5,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DegreeConfig {
    pub p: u32,
    pub samples: usize,
    pub seed: u64,
    pub epsilon: f64,
}

impl DegreeConfig {
    pub fn for_r(r: usize, seed: u64) -> Self {
        DegreeConfig {
            p: default_prime(r),
            samples: DEFAULT_SAMPLES,
            seed,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// δ = k. For k ≥ 2 the value rests on rational fiber counts and is
    /// marked heuristic.
    DeltaEq {
        k: usize,
        heuristic: bool,
    },
    DeltaGe {
        k: usize,
    },
    NotDominant,
    Inconclusive {
        reason: String,
    },
}

impl Verdict {
    pub fn is_homaloidal(&self) -> bool {
        matches!(self, Verdict::DeltaEq { k: 1, .. })
    }
}

/// #distinct images / #points mapped.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ImageRatio {
    pub num: u64,
    pub den: u64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeEstimate {
    pub p: u32,
    pub seed: u64,
    pub samples: usize,
    pub epsilon: f64,
    pub points: u64,
    pub base_locus_points: u64,
    /// Sampled fiber size → number of samples.
    pub fiber_histogram: BTreeMap<usize, usize>,
    pub singleton_fibers: usize,
    /// Ratio over general points: non-base points with invertible Jacobian
    /// (all non-base points when the map is not dominant).
    pub image_ratio: ImageRatio,
    /// Ratio over all non-base points, contracted loci included.
    pub image_ratio_all: ImageRatio,
    /// Largest rank of the Jacobian of the map at random non-base points.
    pub max_jacobian_rank: usize,
    pub verdict: Verdict,
}

impl ImageRatio {
    fn new(num: u64, den: u64) -> Self {
        ImageRatio {
            num,
            den,
            value: if den == 0 {
                0.0
            } else {
                num as f64 / den as f64
            },
        }
    }
}

const BASE: u64 = u64::MAX;
const DOMINANCE_PROBES: u64 = 64;
const PROBE_SALT: u64 = 0xd0a1_7a7e;
const MAX_ATTEMPTS: usize = 10_000;

/// Estimates the degree δ of the map over F_p.
///
/// Every point of P^r(F_p) is mapped, so the fiber through a sample is
/// counted exactly among rational points. Geometric fibers may contain
/// non-rational points, which is why only δ = 1 and non-dominance are
/// reported without the heuristic flag.
pub fn polar_degree<F: Field>(
    map: &PolarMap<F>,
    cfg: &DegreeConfig,
) -> Result<DegreeEstimate, FflabError> {
    if cfg.samples == 0 {
        return Err(FflabError::Config("at least one sample is needed".into()));
    }
    if !(0.0..1.0).contains(&cfg.epsilon) {
        return Err(FflabError::Config(format!(
            "epsilon {} not in [0, 1)",
            cfg.epsilon
        )));
    }
    let space = enumerate(map.r(), cfg.p)?;
    let fp = *space.field();
    let n = map.n_vars();
    let phi = CompiledMap::new(map.forms(), fp)?;
    let partials: Vec<_> = map
        .forms()
        .iter()
        .flat_map(|f| (0..n).map(move |j| f.diff_unchecked(j)))
        .collect();
    let jac = CompiledMap::new(&partials, fp)?;

    let images: Vec<u64> = (0..space.len())
        .into_par_iter()
        .map_init(
            || (vec![0u32; n], vec![0u32; n]),
            |(x, y), i| {
                space.coords_into(i, x);
                phi.eval_into(x, y);
                space.index_of(y).unwrap_or(BASE)
            },
        )
        .collect();
    let mut counts = vec![0u32; space.len() as usize];
    let mut base = 0u64;
    for &img in &images {
        if img == BASE {
            base += 1;
        } else {
            counts[img as usize] += 1;
        }
    }
    let non_base = space.len() - base;
    if non_base == 0 {
        return Err(FflabError::Config(format!(
            "the map vanishes on all of P^{}(F_{})",
            map.r(),
            cfg.p
        )));
    }
    let distinct = counts.iter().filter(|&&c| c > 0).count() as u64;
    let ratio_all = ImageRatio::new(distinct, non_base);

    let rank_at = |idx: u64| {
        let mut x = vec![0u32; n];
        space.coords_into(idx, &mut x);
        let vals = jac.eval(&x);
        let mut rows: Vec<Vec<u32>> = vals.chunks(n).map(|c| c.to_vec()).collect();
        rank_mod_p(&fp, &mut rows)
    };
    let non_base_point = |rng: &mut ChaCha8Rng| loop {
        let k = rng.gen_range(0..space.len());
        if images[k as usize] != BASE {
            return k;
        }
    };
    let max_rank = (0..DOMINANCE_PROBES)
        .into_par_iter()
        .map(|i| rank_at(non_base_point(&mut stream_rng(cfg.seed ^ PROBE_SALT, i))))
        .max()
        .unwrap_or(0);
    let dominant = max_rank == n;

    // For a dominant map only points with invertible Jacobian count as
    // general: the exceptional loci that get contracted lie where it drops.
    let sampled: Vec<Option<usize>> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, i);
            for _ in 0..MAX_ATTEMPTS {
                let idx = non_base_point(&mut rng);
                if !dominant || rank_at(idx) == n {
                    return Some(counts[images[idx as usize] as usize] as usize);
                }
            }
            None
        })
        .collect();
    let Some(fibers) = sampled.into_iter().collect::<Option<Vec<usize>>>() else {
        return Err(FflabError::Config(format!(
            "no point with invertible Jacobian found in {MAX_ATTEMPTS} draws over F_{}",
            cfg.p
        )));
    };

    let mut hist = BTreeMap::new();
    for &k in &fibers {
        *hist.entry(k).or_insert(0) += 1;
    }
    let ratio = if dominant {
        let general: Vec<bool> = (0..space.len())
            .into_par_iter()
            .map(|i| images[i as usize] != BASE && rank_at(i) == n)
            .collect();
        let mut seen = vec![false; space.len() as usize];
        let (mut num, mut den) = (0u64, 0u64);
        for (i, _) in general.iter().enumerate().filter(|(_, &g)| g) {
            den += 1;
            let img = images[i] as usize;
            if !seen[img] {
                seen[img] = true;
                num += 1;
            }
        }
        ImageRatio::new(num, den)
    } else {
        ratio_all
    };
    let verdict = decide(&hist, &ratio, max_rank, n, cfg.epsilon);
    Ok(DegreeEstimate {
        p: cfg.p,
        seed: cfg.seed,
        samples: cfg.samples,
        epsilon: cfg.epsilon,
        points: space.len(),
        base_locus_points: base,
        singleton_fibers: hist.get(&1).copied().unwrap_or(0),
        fiber_histogram: hist,
        image_ratio: ratio,
        image_ratio_all: ratio_all,
        max_jacobian_rank: max_rank,
        verdict,
    })
}

fn decide(
    hist: &BTreeMap<usize, usize>,
    ratio: &ImageRatio,
    max_rank: usize,
    n: usize,
    eps: f64,
) -> Verdict {
    if max_rank < n {
        return Verdict::NotDominant;
    }
    let k = *hist.keys().next_back().expect("samples > 0");
    if k == 1 {
        return if ratio.value >= 1.0 - eps {
            Verdict::DeltaEq {
                k: 1,
                heuristic: false,
            }
        } else {
            Verdict::Inconclusive {
                reason: format!(
                    "all sampled fibers are singletons but the image ratio is {:.4}",
                    ratio.value
                ),
            }
        };
    }
    // either every fiber is rational (ratio 1/k) or Frobenius acts on the
    // fibers like a random permutation (ratio 1 − 1/2! + … ± 1/k!)
    let all_rational = 1.0 / k as f64;
    let random_perm: f64 = (1..=k)
        .scan(1.0, |fact, j| {
            *fact *= j as f64;
            Some(if j % 2 == 1 { 1.0 } else { -1.0 } / *fact)
        })
        .sum();
    let close = |m: f64| (ratio.value - m).abs() <= HEURISTIC_TOLERANCE;
    if close(all_rational) || close(random_perm) {
        Verdict::DeltaEq { k, heuristic: true }
    } else {
        Verdict::DeltaGe { k }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, Rationals};
    use crate::exactalg::{CompiledPoly, PrimeField};
    use crate::polarity::{gradient, hessian_det, Hypersurface, SymbolicGuard};

    /// Fiber size by a direct scan of P^r(F_p).
    fn brute_fiber(map: &CompiledMap, fp: &PrimeField, r: usize, target: &[u32]) -> usize {
        let space = enumerate(r, fp.modulus()).unwrap();
        let t = space.index_of(target);
        space
            .iter()
            .filter(|pt| space.index_of(&map.eval(pt.coords())) == t)
            .count()
    }

    fn gmap(s: &str, n: usize) -> PolarMap<Rationals> {
        gradient(&Hypersurface::new(parse_poly(s, n, Rationals).unwrap()).unwrap()).unwrap()
    }

    fn est(s: &str, n: usize, p: u32) -> DegreeEstimate {
        let cfg = DegreeConfig {
            p,
            ..DegreeConfig::for_r(n - 1, 7)
        };
        polar_degree(&gmap(s, n), &cfg).unwrap()
    }

    #[test]
    fn plane_examples() {
        let e = est("x0*x1*x2", 3, 101);
        assert!(e.verdict.is_homaloidal(), "{e:?}");
        assert_eq!(
            est("x0*x1^2 + x0^2*x1", 3, 101).verdict,
            Verdict::NotDominant
        );
        assert!(est("x0*x2^2 - x1^2*x2", 3, 101).verdict.is_homaloidal());
    }

    #[test]
    fn smooth_cubic_is_heuristic_four() {
        let e = est("x0^3 + x1^3 + x2^3", 3, 101);
        assert_eq!(
            e.verdict,
            Verdict::DeltaEq {
                k: 4,
                heuristic: true
            }
        );
    }

    #[test]
    fn histogram_sums_to_samples() {
        let e = est("x0^3 + x1^3 + x2^3", 3, 101);
        assert_eq!(e.fiber_histogram.values().sum::<usize>(), e.samples);
        assert_eq!(e.points, 10303);
    }

    #[test]
    fn fibers_match_brute_force() {
        let h = Hypersurface::new(parse_poly("x0^3 - x1*x2^2 + x0*x1*x2", 3, Rationals).unwrap())
            .unwrap();
        let m = gradient(&h).unwrap();
        let hess = hessian_det(&h, &SymbolicGuard::default()).unwrap();
        let fp = PrimeField::new(13).unwrap();
        let hess = CompiledPoly::new(&hess, fp).unwrap();
        let c = CompiledMap::new(m.forms(), fp).unwrap();
        let cfg = DegreeConfig {
            p: 13,
            samples: 30,
            seed: 3,
            epsilon: 0.05,
        };
        let e = polar_degree(&m, &cfg).unwrap();
        // the histogram must be reproducible from direct scans over the
        // points where the Hessian does not vanish
        let space = enumerate(2, 13).unwrap();
        let mut hist = BTreeMap::new();
        for i in 0..30u64 {
            let mut rng = stream_rng(3, i);
            let pt = loop {
                let k = rng.gen_range(0..space.len());
                let pt = space.point(k);
                if c.eval(pt.coords()).iter().any(|&v| v != 0) && hess.eval(pt.coords()) != 0 {
                    break pt;
                }
            };
            *hist
                .entry(brute_fiber(&c, &fp, 2, &c.eval(pt.coords())))
                .or_insert(0) += 1;
        }
        assert_eq!(e.fiber_histogram, hist);
    }

    #[test]
    fn bad_prime_is_reported() {
        let m = gmap("1/101*x0*x1*x2", 3);
        assert!(polar_degree(&m, &DegreeConfig::for_r(2, 1)).is_err());
    }
}
