use rand::Rng;
use serde::Serialize;

use super::chain::{build_y, ChainSummary};
use super::dual::{interpolate_dual, InterpolatedForm};
use super::lift::{lift_dual_form, LiftedForm};
use super::ScrollError;
use crate::exactalg::{
    dense_nullspace, dense_rank, linear_change, monomials_of_degree, nullspace_mod_p, CompiledMap,
    DenseMatrix, Field, MPoly, PolyMatrix, PrimeField,
};
use crate::fflab::{polar_degree, DegreeConfig, DegreeEstimate};
use crate::polarity::{gradient, Hypersurface, PolarMap};
use crate::rng::{random_nonzero_vector, stream_rng};

/// Multiplicity of V(form) at a general point of {ℓ1 = ℓ2 = 0}, given the
/// coefficient vectors of ℓ1 and ℓ2.
///
/// Coordinates are changed so that the subspace becomes {y_{n−2} = y_{n−1}
/// = 0}; the answer is the least total degree in those two variables.
pub fn multiplicity_along<F: Field>(
    form: &MPoly<F>,
    l1: &[F::Elem],
    l2: &[F::Elem],
) -> Result<u32, ScrollError> {
    let field = form.field().clone();
    let n = form.n_vars();
    if l1.len() != n || l2.len() != n {
        return Err(ScrollError::InvalidArgs(format!(
            "linear forms need {n} coefficients"
        )));
    }
    let ls = DenseMatrix::from_rows(vec![l1.to_vec(), l2.to_vec()])?;
    if dense_rank(&field, &ls) != 2 {
        return Err(ScrollError::InvalidArgs("dependent linear forms".into()));
    }
    let (i, j) = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let det = field.sub(&field.mul(&l1[i], &l2[j]), &field.mul(&l1[j], &l2[i]));
            !field.is_zero(&det)
        })
        .expect("rank two");
    let mut columns = dense_nullspace(&field, &ls);
    for k in [i, j] {
        let mut e = vec![field.zero(); n];
        e[k] = field.one();
        columns.push(e);
    }
    let rows = (0..n)
        .map(|r| {
            columns
                .iter()
                .map(|c| MPoly::constant(field.clone(), n, c[r].clone()))
                .collect()
        })
        .collect();
    let b = PolyMatrix::new(field, n, rows)?;
    let g = linear_change(form, &b)?;
    g.min_degree_in(&[n - 2, n - 1])
        .ok_or_else(|| ScrollError::InvalidArgs("zero form".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseDegree {
    pub e: u32,
    pub p: u32,
    pub pairs: usize,
    pub held_out: usize,
}

/// Pairs used to certify a candidate inverse.
const INVERSE_HELD_OUT: usize = 20;

/// Least e such that some map G of degree e satisfies G(φ(x)) ∝ x on
/// sampled pairs, found by solving G_i(q) x_j − G_j(q) x_i = 0 for the
/// coefficients of G and confirming on held-out pairs.
pub fn inverse_degree<F: Field>(
    map: &PolarMap<F>,
    p: u32,
    seed: u64,
    e_max: u32,
) -> Result<InverseDegree, ScrollError> {
    let fp = PrimeField::new(p)?;
    let cm = CompiledMap::new(map.forms(), fp)?;
    let n = map.n_vars();
    let pair = |rng: &mut rand_chacha::ChaCha8Rng| loop {
        let x = random_nonzero_vector(rng, &fp, n);
        let q = cm.eval(&x);
        if q.iter().any(|&c| c != 0) {
            return (x, q);
        }
    };
    for e in 1..=e_max {
        let mons = monomials_of_degree(n, e);
        let m = mons.len();
        let n_pairs = (n * m * 6).div_ceil(5);
        let mut rng = stream_rng(seed, e as u64);
        let mut rows = Vec::with_capacity(n_pairs * n * (n - 1) / 2);
        for _ in 0..n_pairs {
            let (x, q) = pair(&mut rng);
            let vals: Vec<u32> = mons
                .iter()
                .map(|mo| eval_monomial(&fp, mo.exps(), &q))
                .collect();
            for i in 0..n {
                for j in i + 1..n {
                    let mut row = vec![0u32; n * m];
                    for (k, &v) in vals.iter().enumerate() {
                        row[i * m + k] = fp.mul_raw(v, x[j]);
                        row[j * m + k] = fp.sub_raw(0, fp.mul_raw(v, x[i]));
                    }
                    rows.push(row);
                }
            }
        }
        let ker = nullspace_mod_p(&fp, &mut rows, n * m);
        if ker.is_empty() {
            continue;
        }
        let mut g = vec![0u32; n * m];
        for v in &ker {
            let c = rng.gen_range(1..p);
            for (a, &b) in g.iter_mut().zip(v) {
                *a = fp.add_raw(*a, fp.mul_raw(c, b));
            }
        }
        let ok = (0..INVERSE_HELD_OUT).all(|_| {
            let (x, q) = pair(&mut rng);
            let vals: Vec<u32> = mons
                .iter()
                .map(|mo| eval_monomial(&fp, mo.exps(), &q))
                .collect();
            let gq: Vec<u32> = (0..n)
                .map(|i| {
                    vals.iter().enumerate().fold(0, |acc, (k, &v)| {
                        fp.add_raw(acc, fp.mul_raw(v, g[i * m + k]))
                    })
                })
                .collect();
            gq.iter().any(|&c| c != 0)
                && (0..n)
                    .all(|i| (i + 1..n).all(|j| fp.mul_raw(gq[i], x[j]) == fp.mul_raw(gq[j], x[i])))
        });
        if ok {
            return Ok(InverseDegree {
                e,
                p,
                pairs: n_pairs,
                held_out: INVERSE_HELD_OUT,
            });
        }
    }
    Err(ScrollError::NoInverse { e_max })
}

fn eval_monomial(fp: &PrimeField, exps: &[u16], x: &[u32]) -> u32 {
    exps.iter()
        .zip(x)
        .fold(1, |acc, (&e, &v)| fp.mul_raw(acc, fp.pow_raw(v, e as u32)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SerieReport {
    pub r: usize,
    pub d: u32,
    pub a: usize,
    pub b: usize,
    pub seed: u64,
    pub chain: ChainSummary,
    pub interpolation: InterpolatedForm,
    pub lift: LiftedForm,
    pub degree: DegreeEstimate,
    pub multiplicity_along_l_perp: u32,
    pub expected_multiplicity: u32,
    pub ok: bool,
}

/// Builds Y(r−2, d−r+2), interpolates its dual of degree d over F_p, lifts
/// it to an integer form, estimates its polar degree at the desk prime for
/// P^r, and measures its multiplicity along L^⊥.
pub fn serie_verify(r: usize, d: u32, p: u32, seed: u64) -> Result<SerieReport, ScrollError> {
    if !(3..=4).contains(&r) {
        return Err(ScrollError::InvalidArgs(format!("r = {r} outside 3..=4")));
    }
    if (d as usize) < 2 * r - 3 || (d as usize) < r {
        return Err(ScrollError::InvalidArgs(format!(
            "d = {d} below max(r, 2r - 3) for r = {r}"
        )));
    }
    let (a, b) = (r - 2, d as usize + 2 - r);
    let chain = build_y(a, b, seed).map_err(ScrollError::at("build_Y"))?;
    let interpolation =
        interpolate_dual(&chain, d, p, None, seed).map_err(ScrollError::at("dual_interpolate"))?;
    let lift = lift_dual_form(&chain, d, seed).map_err(ScrollError::at("lift"))?;
    let h = Hypersurface::new(lift.form.clone())?;
    let degree = polar_degree(&gradient(&h)?, &DegreeConfig::for_r(r, seed))
        .map_err(|e| ScrollError::at("polar_degree")(e.into()))?;
    let mult = multiplicity_along(&lift.form, &chain.l_points[0], &chain.l_points[1])
        .map_err(ScrollError::at("multiplicity_along"))?;
    let expected = d - a as u32;
    let ok = interpolation.kernel_dim_below == 0
        && interpolation.kernel_dim == 1
        && interpolation.held_out_ok()
        && lift.verified
        && degree.verdict.is_homaloidal()
        && mult == expected;
    Ok(SerieReport {
        r,
        d,
        a,
        b,
        seed,
        chain: chain.summary(),
        interpolation,
        lift,
        degree,
        multiplicity_along_l_perp: mult,
        expected_multiplicity: expected,
        ok,
    })
}
