use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::scroll::{scroll_param, ScrollParam};
use super::ScrollError;
use crate::constructions::COEFF_BOUND;
use crate::exactalg::{dense_nullspace, dense_rank, DenseMatrix, Field, PrimeField, Rationals};
use crate::rng::{small_nonzero, stream_rng};

/// Attempts at drawing general centers before giving up.
pub const MAX_CHAIN_ATTEMPTS: u64 = 5;

type QVec = Vec<BigRational>;

/// Linear projections S(a,b) → X(a,b) ⊂ P^{b+2} → Y(a,b) ⊂ P^{a+2}.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionChain {
    pub scroll: ScrollParam,
    /// Stage matrices, applied left to right.
    pub stages: Vec<DenseMatrix<BigRational>>,
    /// Product of the stages with rows scaled to primitive integers.
    pub composite: DenseMatrix<BigRational>,
    /// Basis of the cone over the first center, inside <E>.
    pub center_1: Vec<QVec>,
    /// Base parameters s of the rulings spanning Φ together with Λ.
    pub rulings_used: Vec<i64>,
    /// Basis of the cone over Ψ ⊂ Φ, in the coordinates of P^{b+2}.
    pub center_2: Vec<QVec>,
    /// Two points spanning L, the image of <E>, in the target space.
    pub l_points: Vec<QVec>,
    /// Multiplicity e of the directrix L and the invariant μ.
    pub e: usize,
    pub mu: usize,
    pub seed: u64,
    pub attempts: u64,
}

/// Serializable view of a chain with exact entries as text.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainSummary {
    pub a: usize,
    pub b: usize,
    pub target_dim: usize,
    pub composite: Vec<Vec<String>>,
    pub center_1: Vec<Vec<String>>,
    pub rulings_used: Vec<i64>,
    pub center_2: Vec<Vec<String>>,
    pub l_points: Vec<Vec<String>>,
    pub e: usize,
    pub mu: usize,
    pub seed: u64,
    pub attempts: u64,
}

fn text(rows: &[QVec]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect())
        .collect()
}

fn q(v: i64) -> BigRational {
    Rationals.from_i64(v)
}

fn matrix(rows: Vec<QVec>) -> Result<DenseMatrix<BigRational>, ScrollError> {
    Ok(DenseMatrix::from_rows(rows)?)
}

fn rank(rows: &[QVec]) -> Result<usize, ScrollError> {
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(dense_rank(&Rationals, &matrix(rows.to_vec())?))
}

fn mul(a: &DenseMatrix<BigRational>, b: &DenseMatrix<BigRational>) -> DenseMatrix<BigRational> {
    let rows = (0..a.rows())
        .map(|i| {
            (0..b.cols())
                .map(|j| {
                    (0..a.cols()).fold(BigRational::zero(), |acc, k| {
                        acc + a.get(i, k) * b.get(k, j)
                    })
                })
                .collect()
        })
        .collect();
    DenseMatrix::from_rows(rows).expect("rectangular")
}

fn apply(m: &DenseMatrix<BigRational>, v: &[BigRational]) -> QVec {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

/// Scales a vector to coprime integers.
fn primitive(v: &[BigRational]) -> QVec {
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<_> = v.iter().map(|c| (c * &lcm).to_integer()).collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|c| BigRational::from_integer(c / &g))
        .collect()
}

/// Keeps a maximal independent subset, in order.
fn independent_subset(vs: &[QVec]) -> Result<Vec<QVec>, ScrollError> {
    let mut out: Vec<QVec> = Vec::new();
    for v in vs {
        let mut trial = out.clone();
        trial.push(v.clone());
        if rank(&trial)? == trial.len() {
            out = trial;
        }
    }
    Ok(out)
}

impl ProjectionChain {
    /// The scroll itself, with no projection.
    pub fn identity(a: usize, b: usize) -> Result<Self, ScrollError> {
        let scroll = scroll_param(a, b)?;
        let n = scroll.n_coords();
        let id = (0..n)
            .map(|i| (0..n).map(|j| q((i == j) as i64)).collect())
            .collect();
        Ok(ProjectionChain {
            scroll,
            stages: Vec::new(),
            composite: matrix(id)?,
            center_1: Vec::new(),
            rulings_used: Vec::new(),
            center_2: Vec::new(),
            l_points: Vec::new(),
            e: b,
            mu: a,
            seed: 0,
            attempts: 0,
        })
    }

    /// Number of coordinates of the target space.
    pub fn target_coords(&self) -> usize {
        self.composite.rows()
    }

    /// The composite with entries reduced mod p.
    pub fn composite_mod(&self, fp: &PrimeField) -> Result<Vec<Vec<u32>>, ScrollError> {
        (0..self.composite.rows())
            .map(|i| {
                self.composite
                    .row(i)
                    .iter()
                    .map(|c| Ok(Rationals.reduce_mod(c, fp)?))
                    .collect()
            })
            .collect()
    }

    pub fn summary(&self) -> ChainSummary {
        ChainSummary {
            a: self.scroll.a,
            b: self.scroll.b,
            target_dim: self.target_coords() - 1,
            composite: text(&self.composite.to_rows()),
            center_1: text(&self.center_1),
            rulings_used: self.rulings_used.clone(),
            center_2: text(&self.center_2),
            l_points: text(&self.l_points),
            e: self.e,
            mu: self.mu,
            seed: self.seed,
            attempts: self.attempts,
        }
    }
}

/// Y(a,b): project S(a,b) from a general (a−2)-space in <E> to P^{b+2},
/// then from a general (b−a−1)-space Ψ of Φ = <Λ, F_1, …, F_{b−a}> to
/// P^{a+2}.
pub fn build_y(a: usize, b: usize, seed: u64) -> Result<ProjectionChain, ScrollError> {
    let scroll = scroll_param(a, b)?;
    if a >= b {
        return Err(ScrollError::InvalidArgs(format!(
            "need a < b, got a = {a}, b = {b}"
        )));
    }
    let mut last = String::new();
    for attempt in 0..MAX_CHAIN_ATTEMPTS {
        match try_build(scroll, seed, attempt)? {
            Ok(chain) => return Ok(chain),
            Err(why) => last = why,
        }
    }
    Err(ScrollError::Degenerate(format!(
        "Y({a},{b}) seed {seed}: {last} after {MAX_CHAIN_ATTEMPTS} attempts"
    )))
}

fn try_build(
    scroll: ScrollParam,
    seed: u64,
    attempt: u64,
) -> Result<Result<ProjectionChain, String>, ScrollError> {
    let (a, b) = (scroll.a, scroll.b);
    let n = scroll.n_coords();
    let mut rng = stream_rng(seed, attempt);
    let mut draw = || q(small_nonzero(&mut rng, COEFF_BOUND));

    let center_1: Vec<QVec> = (0..a - 1)
        .map(|_| (0..n).map(|j| if j <= a { draw() } else { q(0) }).collect())
        .collect();
    if rank(&center_1)? != a - 1 {
        return Ok(Err("first center has the wrong dimension".into()));
    }
    let a1 = if a == 1 {
        ProjectionChain::identity(a, b)?.composite
    } else {
        let rows = dense_nullspace(&Rationals, &matrix(center_1.clone())?);
        matrix(rows.iter().map(|r| primitive(r)).collect())?
    };

    let columns: Vec<QVec> = (0..=a)
        .map(|j| (0..a1.rows()).map(|i| a1.get(i, j).clone()).collect())
        .collect();
    let lambda = independent_subset(&columns)?;
    if lambda.len() != 2 {
        return Ok(Err(format!("Λ spans {} points", lambda.len())));
    }

    let mut rulings: Vec<i64> = Vec::new();
    while rulings.len() < b - a {
        let s = small_nonzero(&mut rng, COEFF_BOUND.max((b - a) as i64 + 1));
        if !rulings.contains(&s) {
            rulings.push(s);
        }
    }
    let mut phi = lambda.clone();
    for &s in &rulings {
        let c: QVec = (0..n)
            .map(|j| {
                if j <= a {
                    q(0)
                } else {
                    q(s.pow((b - (j - a - 1)) as u32))
                }
            })
            .collect();
        phi.push(apply(&a1, &c));
    }
    if rank(&phi)? != b - a + 2 {
        return Ok(Err("Φ has the wrong dimension".into()));
    }

    let mut draw = || q(small_nonzero(&mut rng, COEFF_BOUND));
    let psi: Vec<QVec> = (0..b - a)
        .map(|_| {
            let w: Vec<BigRational> = phi.iter().map(|_| draw()).collect();
            (0..b + 3)
                .map(|k| {
                    phi.iter()
                        .zip(&w)
                        .fold(BigRational::zero(), |acc, (v, c)| acc + &v[k] * c)
                })
                .collect()
        })
        .collect();
    if rank(&psi)? != b - a {
        return Ok(Err("Ψ has the wrong dimension".into()));
    }
    let a2_rows = dense_nullspace(&Rationals, &matrix(psi.clone())?);
    let a2 = matrix(a2_rows.iter().map(|r| primitive(r)).collect())?;

    let composite = mul(&a2, &a1);
    let composite = matrix(composite.to_rows().iter().map(|r| primitive(r)).collect())?;
    if dense_rank(&Rationals, &composite) != a + 3 {
        return Ok(Err("composite projection drops rank".into()));
    }
    let image_cols: Vec<QVec> = (0..=a)
        .map(|j| {
            (0..composite.rows())
                .map(|i| composite.get(i, j).clone())
                .collect()
        })
        .collect();
    let l_points: Vec<QVec> = independent_subset(&image_cols)?
        .iter()
        .map(|v| primitive(v))
        .collect();
    if l_points.len() != 2 {
        return Ok(Err("Ψ meets Λ".into()));
    }
    debug_assert!(l_points.iter().flatten().all(|c| c.is_integer()));
    Ok(Ok(ProjectionChain {
        scroll,
        stages: vec![a1, a2],
        composite,
        center_1,
        rulings_used: rulings,
        center_2: psi,
        l_points,
        e: b,
        mu: a,
        seed,
        attempts: attempt + 1,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets() {
        for (a, b, target) in [(1, 2, 4), (1, 4, 4), (2, 3, 5)] {
            let c = build_y(a, b, 3).unwrap();
            assert_eq!(c.target_coords(), target, "Y({a},{b})");
            assert_eq!(c.center_1.len(), a - 1);
            assert_eq!(c.center_2.len(), b - a);
            assert_eq!(c.stages[0].rows(), b + 3);
            assert_eq!(c.l_points.len(), 2);
            assert_eq!((c.e, c.mu), (b, a));
        }
        assert!(build_y(2, 2, 1).is_err());
    }

    #[test]
    fn centers_lie_where_they_should() {
        let c = build_y(2, 4, 8).unwrap();
        for k in &c.center_1 {
            assert!(k[3..].iter().all(|x| x.is_zero()));
            assert!(apply(&c.stages[0], k).iter().all(|x| x.is_zero()));
        }
        for v in &c.center_2 {
            assert!(apply(&c.stages[1], v).iter().all(|x| x.is_zero()));
        }
    }
}
