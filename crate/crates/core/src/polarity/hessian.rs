use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{Hypersurface, PolarityError};
use crate::exactalg::{
    dense_det, dense_rank, rank_mod_p, CompiledMap, DenseMatrix, Field, MPoly, PolyMatrix,
    PrimeField,
};
use crate::rng::{random_vector, stream_rng};

/// Limits for exact Hessian determinants: allowed when r ≤ `max_r` or when
/// the entries have degree ≤ `max_entry_degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicGuard {
    pub max_r: usize,
    pub max_entry_degree: u32,
}

impl Default for SymbolicGuard {
    fn default() -> Self {
        SymbolicGuard {
            max_r: 5,
            max_entry_degree: 2,
        }
    }
}

impl SymbolicGuard {
    pub fn allows(&self, r: usize, entry_degree: u32) -> bool {
        r <= self.max_r || entry_degree <= self.max_entry_degree
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HessianMode {
    Symbolic(SymbolicGuard),
    Probabilistic { p: u32, trials: usize, seed: u64 },
}

impl HessianMode {
    pub fn symbolic() -> Self {
        HessianMode::Symbolic(SymbolicGuard::default())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RankMethod {
    /// Exact determinant. When it vanishes, ρ is the largest rank seen at
    /// `rank_points` random integer points.
    Symbolic { rank_points: usize },
    Probabilistic {
        p: u32,
        trials: usize,
        seed: u64,
        /// The maximal rank was attained at two or more sample points.
        certified: bool,
        zero_det_samples: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HessianValue {
    Zero,
    Polynomial(String),
    /// Probabilistic mode found a point with nonzero determinant.
    NonzeroAtSamples,
}

impl HessianValue {
    pub fn is_zero(&self) -> bool {
        matches!(self, HessianValue::Zero)
    }
}

impl Serialize for HessianValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            HessianValue::Zero => s.serialize_str("zero"),
            HessianValue::Polynomial(p) => s.serialize_str(p),
            HessianValue::NonzeroAtSamples => s.serialize_str("nonzero"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HessianReport {
    pub hessian: HessianValue,
    pub rho: usize,
    pub z: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<usize>,
    pub method: RankMethod,
}

/// Matrix of second partials.
pub fn hessian_matrix<F: Field>(h: &Hypersurface<F>) -> Result<PolyMatrix<F>, PolarityError> {
    if h.degree() < 2 {
        return Err(PolarityError::UnsupportedDegree {
            d: h.degree(),
            min: 2,
        });
    }
    let n = h.n_vars();
    let first = h.poly().gradient()?;
    let mut m = PolyMatrix::zeros(h.field().clone(), n, n, n);
    for i in 0..n {
        for j in i..n {
            let e = first[i].diff(j)?;
            m.set(i, j, e.clone())?;
            m.set(j, i, e)?;
        }
    }
    Ok(m)
}

/// Exact Hessian determinant, subject to the guard.
pub fn hessian_det<F: Field>(
    h: &Hypersurface<F>,
    guard: &SymbolicGuard,
) -> Result<MPoly<F>, PolarityError> {
    let entry_degree = h.degree().saturating_sub(2);
    if !guard.allows(h.r(), entry_degree) {
        return Err(PolarityError::SymbolicRefused {
            r: h.r(),
            entry_degree,
        });
    }
    Ok(hessian_matrix(h)?.det()?)
}

const SYMBOLIC_RANK_POINTS: usize = 16;

pub fn hessian<F: Field>(
    h: &Hypersurface<F>,
    mode: HessianMode,
) -> Result<HessianReport, PolarityError> {
    let n = h.n_vars();
    match mode {
        HessianMode::Symbolic(guard) => {
            let det = hessian_det(h, &guard)?;
            if !det.is_zero() {
                return Ok(HessianReport {
                    hessian: HessianValue::Polynomial(det.to_string()),
                    rho: n,
                    z: n - 1,
                    v: None,
                    method: RankMethod::Symbolic { rank_points: 0 },
                });
            }
            let m = hessian_matrix(h)?;
            let field = h.field();
            let rho = (0..SYMBOLIC_RANK_POINTS as u64)
                .map(|i| {
                    let mut rng = stream_rng(0x4e55, i);
                    let pt: Vec<F::Elem> = (0..n)
                        .map(|_| field.from_i64(rng.gen_range(-1000..=1000)))
                        .collect();
                    m.eval(&pt).map(|v| dense_rank(field, &v))
                })
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .max()
                .unwrap_or(0);
            Ok(HessianReport {
                hessian: HessianValue::Zero,
                rho,
                z: rho.saturating_sub(1),
                v: None,
                method: RankMethod::Symbolic {
                    rank_points: SYMBOLIC_RANK_POINTS,
                },
            })
        }
        HessianMode::Probabilistic { p, trials, seed } => {
            if trials == 0 {
                return Err(PolarityError::OutOfRange("zero trials".into()));
            }
            let sampler = HessianSampler::new(h, p)?;
            let ranks: Vec<usize> = (0..trials as u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = stream_rng(seed, i);
                    let x = random_vector(&mut rng, &sampler.fp, n);
                    sampler.rank_at(&x)
                })
                .collect();
            let rho = *ranks.iter().max().expect("trials > 0");
            let attained = ranks.iter().filter(|&&k| k == rho).count();
            let zero_det_samples = ranks.iter().filter(|&&k| k < n).count();
            Ok(HessianReport {
                hessian: if zero_det_samples == trials {
                    HessianValue::Zero
                } else {
                    HessianValue::NonzeroAtSamples
                },
                rho,
                z: rho.saturating_sub(1),
                v: None,
                method: RankMethod::Probabilistic {
                    p,
                    trials,
                    seed,
                    certified: attained >= 2,
                    zero_det_samples,
                },
            })
        }
    }
}

/// Hessian entries over F_p, compiled for repeated evaluation.
pub(crate) struct HessianSampler {
    pub(crate) fp: PrimeField,
    n: usize,
    entries: CompiledMap,
}

impl HessianSampler {
    pub(crate) fn new<F: Field>(h: &Hypersurface<F>, p: u32) -> Result<Self, PolarityError> {
        let fp = PrimeField::new(p)?;
        let n = h.n_vars();
        let g = Hypersurface::new(h.poly().reduce_mod(&fp)?).map_err(|_| {
            PolarityError::Alg(crate::exactalg::AlgError::BadPrime {
                p,
                reason: "form vanishes modulo p".into(),
            })
        })?;
        let m = hessian_matrix(&g)?;
        let forms: Vec<MPoly<PrimeField>> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j).clone())
            .collect();
        Ok(HessianSampler {
            fp,
            n,
            entries: CompiledMap::new(&forms, fp)?,
        })
    }

    pub(crate) fn matrix_at(&self, x: &[u32]) -> Vec<Vec<u32>> {
        let flat = self.entries.eval(x);
        flat.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub(crate) fn rank_at(&self, x: &[u32]) -> usize {
        rank_mod_p(&self.fp, &mut self.matrix_at(x))
    }

    fn det_at(&self, x: &[u32]) -> u32 {
        let m = DenseMatrix::from_rows(self.matrix_at(x)).expect("square");
        dense_det(&self.fp, &m)
    }
}

/// Outcome of the test h(f) = c·f^e with e = (d−2)(r+1)/d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TotallyHessian {
    pub is_totally_hessian: bool,
    /// `None` when d does not divide (d−2)(r+1).
    pub exponent: Option<u32>,
    /// The constant c in canonical text form, when the identity holds.
    pub c: Option<String>,
    pub vanishing_hessian: bool,
}

pub fn totally_hessian_test<F: Field>(
    h: &Hypersurface<F>,
    mode: HessianMode,
) -> Result<TotallyHessian, PolarityError> {
    let d = h.degree();
    if d < 2 {
        return Err(PolarityError::UnsupportedDegree { d, min: 2 });
    }
    let num = (d - 2) * (h.r() as u32 + 1);
    let not = |exponent, vanishing| TotallyHessian {
        is_totally_hessian: false,
        exponent,
        c: None,
        vanishing_hessian: vanishing,
    };
    if !num.is_multiple_of(d) {
        return Ok(not(None, false));
    }
    let e = num / d;
    match mode {
        HessianMode::Symbolic(guard) => {
            let hdet = hessian_det(h, &guard)?;
            if hdet.is_zero() {
                return Ok(not(Some(e), true));
            }
            let fe = h.poly().pow(e);
            let (le, lc) = hdet.leading_term().expect("nonzero");
            let (fe_e, fe_c) = fe.leading_term().expect("nonzero");
            if le != fe_e {
                return Ok(not(Some(e), false));
            }
            let field = h.field();
            let c = field.div(lc, fe_c).expect("nonzero");
            if hdet != fe.scale(&c) {
                return Ok(not(Some(e), false));
            }
            Ok(TotallyHessian {
                is_totally_hessian: true,
                exponent: Some(e),
                c: Some(field.format_elem(&c)),
                vanishing_hessian: false,
            })
        }
        HessianMode::Probabilistic { p, trials, seed } => {
            let sampler = HessianSampler::new(h, p)?;
            let fp = sampler.fp;
            let f = CompiledMap::new(std::slice::from_ref(h.poly()), fp)?;
            let mut c: Option<u32> = None;
            let mut all_zero = true;
            for i in 0..trials as u64 {
                let mut rng = stream_rng(seed, i);
                let x = random_vector(&mut rng, &fp, h.n_vars());
                let hv = sampler.det_at(&x);
                let fv = fp.pow_raw(f.eval(&x)[0], e);
                all_zero &= hv == 0;
                if fv == 0 {
                    if hv != 0 {
                        return Ok(not(Some(e), false));
                    }
                    continue;
                }
                let ratio = fp.mul_raw(hv, fp.inv_raw(fv).expect("nonzero"));
                match c {
                    None => c = Some(ratio),
                    Some(c0) if c0 != ratio => return Ok(not(Some(e), false)),
                    Some(_) => {}
                }
            }
            if all_zero {
                return Ok(not(Some(e), true));
            }
            Ok(TotallyHessian {
                is_totally_hessian: c.is_some(),
                exponent: Some(e),
                c: c.map(|v| fp.format_elem(&v)),
                vanishing_hessian: false,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, Rationals};

    fn hs(s: &str, n: usize) -> Hypersurface<Rationals> {
        Hypersurface::new(parse_poly(s, n, Rationals).unwrap()).unwrap()
    }

    #[test]
    fn conic_hessian_is_constant() {
        let rep = hessian(&hs("x0*x2 - x1^2", 3), HessianMode::symbolic()).unwrap();
        // [[0,0,1],[0,-2,0],[1,0,0]] has determinant 2
        assert_eq!(rep.hessian, HessianValue::Polynomial("2".into()));
        assert_eq!((rep.rho, rep.z), (3, 2));
    }

    #[test]
    fn concurrent_lines_vanish() {
        let h = hs("x0^2*x1 + x0*x1^2", 3);
        let rep = hessian(&h, HessianMode::symbolic()).unwrap();
        assert!(rep.hessian.is_zero());
        assert_eq!(rep.rho, 2);
        let pr = hessian(
            &h,
            HessianMode::Probabilistic {
                p: 101,
                trials: 16,
                seed: 3,
            },
        )
        .unwrap();
        assert!(pr.hessian.is_zero());
        assert_eq!(pr.rho, 2);
    }

    #[test]
    fn guard_refuses_large_symbolic() {
        let g = SymbolicGuard {
            max_r: 1,
            max_entry_degree: 0,
        };
        let err = hessian(&hs("x0*x1*x2", 3), HessianMode::Symbolic(g));
        assert!(matches!(err, Err(PolarityError::SymbolicRefused { .. })));
    }

    #[test]
    fn totally_hessian_examples() {
        let t = totally_hessian_test(&hs("x0*x1*x2", 3), HessianMode::symbolic()).unwrap();
        assert!(t.is_totally_hessian);
        assert_eq!((t.exponent, t.c.as_deref()), (Some(1), Some("2")));
        let q = totally_hessian_test(&hs("x0*x2 - x1^2", 3), HessianMode::symbolic()).unwrap();
        assert_eq!((q.exponent, q.c.as_deref()), (Some(0), Some("2")));
        let pr = totally_hessian_test(
            &hs("x0*x1*x2", 3),
            HessianMode::Probabilistic {
                p: 101,
                trials: 20,
                seed: 1,
            },
        )
        .unwrap();
        assert!(pr.is_totally_hessian);
        assert_eq!(pr.c.as_deref(), Some("2"));
    }
}
