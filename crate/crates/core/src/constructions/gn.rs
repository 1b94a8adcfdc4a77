use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{check_degrees, random_form, ConstructionError};
use crate::exactalg::{
    dense_rank, monomials_of_degree, DenseMatrix, ExpVec, Field, MPoly, PolyMatrix, Rationals,
};
use crate::polarity::Hypersurface;
use crate::rng::{small_nonzero, stream_rng};

/// Seed-driven GN parameters: type (r, t, m, n) and degree d.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnSpec {
    pub r: usize,
    pub t: usize,
    pub m: usize,
    pub n: u32,
    pub d: u32,
    pub seed: u64,
}

/// Fully explicit GN data.
///
/// * `h`: t+1 forms of equal degree in y_0..y_m (ring of m+1 variables);
/// * `psi`: m+1 forms of equal degree in x_{t+1}..x_r (ring of r+1 variables);
/// * `a[ℓ−1][u−1][v]`: constants a^(ℓ)_{u,v};
/// * `p[k]`: the biform P_k in a ring of r+1+(t−m) variables where z_ℓ is
///   x_{r+ℓ}, of bidegree (k, d−kn).
#[derive(Clone, Debug, PartialEq)]
pub struct GnParts {
    pub r: usize,
    pub t: usize,
    pub m: usize,
    pub n: u32,
    pub d: u32,
    pub h: Vec<MPoly<Rationals>>,
    pub psi: Vec<MPoly<Rationals>>,
    pub a: Vec<Vec<Vec<BigRational>>>,
    pub p: Vec<MPoly<Rationals>>,
}

#[derive(Clone, Debug)]
pub struct GnPolynomial {
    pub hypersurface: Hypersurface<Rationals>,
    /// Q_1..Q_{t−m}.
    pub q: Vec<MPoly<Rationals>>,
    /// `m_forms[ℓ−1][i]` = M_{ℓ,i}, the coefficient of x_i in Q_ℓ.
    pub m_forms: Vec<Vec<MPoly<Rationals>>>,
    pub mu: u32,
    pub parts: GnParts,
}

impl GnPolynomial {
    pub fn poly(&self) -> &MPoly<Rationals> {
        self.hypersurface.poly()
    }
}

pub(crate) fn validate_type(r: usize, t: usize, m: usize) -> Result<(), ConstructionError> {
    let ok = r >= 4 && t >= 2 && t + 2 <= r && m >= 1 && t > m && m + t < r;
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::InvalidSpec(format!(
            "GN type needs 2 <= t <= r-2, t >= m+1, 1 <= m <= r-t-1; got r = {r}, t = {t}, m = {m}"
        )))
    }
}

/// Degrees (deg h, deg ψ) giving Q of degree n: n − 1 = (m+1)(deg h − 1) deg ψ.
/// Linear ψ is preferred.
fn seeded_degrees(m: usize, n: u32) -> Result<(u32, u32), ConstructionError> {
    let k = m as u32 + 1;
    if n < 2 || !(n - 1).is_multiple_of(k) {
        return Err(ConstructionError::InvalidSpec(format!(
            "n - 1 = {} must be a positive multiple of m + 1 = {k}",
            n as i64 - 1
        )));
    }
    Ok(((n - 1) / k + 1, 1))
}

pub fn gn_build(spec: &GnSpec) -> Result<GnPolynomial, ConstructionError> {
    validate_type(spec.r, spec.t, spec.m)?;
    let mu = check_degrees(spec.n, spec.d)?;
    let (dh, dpsi) = seeded_degrees(spec.m, spec.n)?;
    let (r, t, m) = (spec.r, spec.t, spec.m);
    let q = Rationals;
    let mut rng = stream_rng(spec.seed, 0x6e);
    let ys: Vec<usize> = (0..=m).collect();
    let tail: Vec<usize> = (t + 1..=r).collect();
    let h = (0..=t)
        .map(|_| random_form(&mut rng, m + 1, &ys, dh))
        .collect();
    // small coefficients can make the ψ_j dependent; redraw those
    let psi = loop {
        let psi: Vec<_> = (0..=m)
            .map(|_| random_form(&mut rng, r + 1, &tail, dpsi))
            .collect();
        if independent(&psi) {
            break psi;
        }
    };
    let a = (0..t - m)
        .map(|_| {
            (0..t - m - 1)
                .map(|_| {
                    (0..=t)
                        .map(|_| q.from_i64(small_nonzero(&mut rng, super::COEFF_BOUND)))
                        .collect()
                })
                .collect()
        })
        .collect();
    let p = (0..=mu)
        .map(|k| random_biform(&mut rng, r, t, t - m, k, spec.d - k * spec.n))
        .collect();
    gn_build_parts(GnParts {
        r,
        t,
        m,
        n: spec.n,
        d: spec.d,
        h,
        psi,
        a,
        p,
    })
}

fn independent(fs: &[MPoly<Rationals>]) -> bool {
    let mons: BTreeSet<&ExpVec> = fs.iter().flat_map(|f| f.terms().map(|(e, _)| e)).collect();
    let rows = fs
        .iter()
        .map(|f| mons.iter().map(|e| f.coeff(e)).collect())
        .collect();
    DenseMatrix::from_rows(rows).is_ok_and(|mat| dense_rank(&Rationals, &mat) == fs.len())
}

/// Dense biform of bidegree (k, e) in z_1..z_s (variables r+1..r+s) and
/// x_{t+1}..x_r.
fn random_biform(
    rng: &mut impl rand::Rng,
    r: usize,
    t: usize,
    s: usize,
    k: u32,
    e: u32,
) -> MPoly<Rationals> {
    let n = r + 1 + s;
    let tail: Vec<usize> = (t + 1..=r).collect();
    let mut out = MPoly::zero(Rationals, n);
    for za in monomials_of_degree(s, k) {
        let mut full = vec![0u16; n];
        for l in 0..s {
            full[r + 1 + l] = za.get(l);
        }
        let b = random_form(rng, n, &tail, e);
        out = &out + &b.mul_monomial(&ExpVec::new(full));
    }
    out
}

pub fn gn_build_parts(parts: GnParts) -> Result<GnPolynomial, ConstructionError> {
    let (r, t, m, n, d) = (parts.r, parts.t, parts.m, parts.n, parts.d);
    validate_type(r, t, m)?;
    let mu = check_degrees(n, d)?;
    let s = t - m;
    let nx = r + 1;
    let q = Rationals;
    let bad = |msg: String| Err(ConstructionError::InvalidSpec(msg));

    if parts.h.len() != t + 1 || parts.psi.len() != m + 1 {
        return bad(format!(
            "expected {} forms h and {} forms psi, got {} and {}",
            t + 1,
            m + 1,
            parts.h.len(),
            parts.psi.len()
        ));
    }
    let dh = common_degree(&parts.h, m + 1, "h")?;
    common_degree(&parts.psi, nx, "psi")?;
    for f in &parts.psi {
        if f.support_vars().iter().any(|&v| v <= t) {
            return bad("psi must only involve x_{t+1}..x_r".into());
        }
    }
    if dh == 0 {
        return bad("forms h must have positive degree".into());
    }
    if parts.a.len() != s
        || parts
            .a
            .iter()
            .any(|al| al.len() != s - 1 || al.iter().any(|row| row.len() != t + 1))
    {
        return bad(format!(
            "constants a must have shape {s} x {} x {}",
            s - 1,
            t + 1
        ));
    }
    if parts.p.len() != mu as usize + 1 {
        return bad(format!(
            "expected {} biforms P_k, got {}",
            mu + 1,
            parts.p.len()
        ));
    }
    for (k, pk) in parts.p.iter().enumerate() {
        check_biform(pk, r, t, s, k as u32, d - k as u32 * n)?;
    }

    // ∂h_i/∂y_j, then y = ψ
    let mut jac = vec![vec![MPoly::zero(q, nx); t + 1]; m + 1];
    for (i, hi) in parts.h.iter().enumerate() {
        for (j, row) in jac.iter_mut().enumerate() {
            row[i] = hi.diff(j)?.substitute(&parts.psi)?;
        }
    }

    let mut qs = Vec::with_capacity(s);
    let mut m_forms = Vec::with_capacity(s);
    for al in &parts.a {
        let mut rows: Vec<Vec<MPoly<Rationals>>> = Vec::with_capacity(t + 1);
        rows.push((0..=t).map(|i| MPoly::var(q, nx, i)).collect());
        rows.extend(jac.iter().cloned());
        for consts in al {
            rows.push(
                consts
                    .iter()
                    .map(|c| MPoly::constant(q, nx, c.clone()))
                    .collect(),
            );
        }
        let ql = PolyMatrix::new(q, nx, rows)?.det()?;
        if ql.is_zero() {
            return Err(ConstructionError::Degenerate(
                "a bordered determinant Q vanishes identically".into(),
            ));
        }
        if ql.homogeneous_degree() != Some(n) {
            return bad(format!(
                "Q has degree {:?}, expected n = {n}",
                ql.homogeneous_degree()
            ));
        }
        m_forms.push((0..=t).map(|i| ql.coeff_in(i, 1)).collect());
        qs.push(ql);
    }

    let mut images: Vec<MPoly<Rationals>> = (0..nx).map(|i| MPoly::var(q, nx, i)).collect();
    images.extend(qs.iter().cloned());
    let mut f = MPoly::zero(q, nx);
    for pk in &parts.p {
        f = &f + &pk.substitute(&images)?;
    }
    if f.is_zero() {
        return Err(ConstructionError::Degenerate(
            "f vanishes identically".into(),
        ));
    }
    Ok(GnPolynomial {
        hypersurface: Hypersurface::new(f)?,
        q: qs,
        m_forms,
        mu,
        parts,
    })
}

pub(crate) fn common_degree(
    fs: &[MPoly<Rationals>],
    n_vars: usize,
    name: &str,
) -> Result<u32, ConstructionError> {
    let mut deg = None;
    for f in fs {
        if f.n_vars() != n_vars {
            return Err(ConstructionError::InvalidSpec(format!(
                "{name}: expected {n_vars} variables, got {}",
                f.n_vars()
            )));
        }
        let e = f.homogeneous_degree().ok_or_else(|| {
            ConstructionError::InvalidSpec(format!("{name}: forms must be nonzero and homogeneous"))
        })?;
        if *deg.get_or_insert(e) != e {
            return Err(ConstructionError::InvalidSpec(format!(
                "{name}: forms must share one degree"
            )));
        }
    }
    Ok(deg.unwrap_or(0))
}

fn check_biform(
    pk: &MPoly<Rationals>,
    r: usize,
    t: usize,
    s: usize,
    k: u32,
    e: u32,
) -> Result<(), ConstructionError> {
    if pk.n_vars() != r + 1 + s {
        return Err(ConstructionError::InvalidSpec(format!(
            "P_{k}: expected {} variables",
            r + 1 + s
        )));
    }
    let z: Vec<usize> = (r + 1..r + 1 + s).collect();
    let x: Vec<usize> = (t + 1..=r).collect();
    for (exp, _) in pk.terms() {
        let low = (0..=t).any(|i| exp.get(i) != 0);
        if low || exp.degree_in(&z) != k || exp.degree_in(&x) != e {
            return Err(ConstructionError::InvalidSpec(format!(
                "P_{k} must have bidegree ({k}, {e}) in (z; x_{{t+1}}..x_r)"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_guards() {
        let s = |r, t, m, n, d| GnSpec {
            r,
            t,
            m,
            n,
            d,
            seed: 1,
        };
        assert!(gn_build(&s(3, 1, 1, 3, 4)).is_err());
        assert!(gn_build(&s(4, 2, 2, 3, 4)).is_err());
        assert!(gn_build(&s(4, 2, 1, 1, 3)).is_err());
        assert!(gn_build(&s(4, 2, 1, 2, 4)).is_err());
        assert!(gn_build(&s(4, 2, 1, 3, 3)).is_err());
    }

    #[test]
    fn single_q_from_three_by_three() {
        let g = gn_build(&GnSpec {
            r: 4,
            t: 2,
            m: 1,
            n: 3,
            d: 4,
            seed: 1,
        })
        .unwrap();
        assert_eq!(g.q.len(), 1);
        assert_eq!(g.q[0].homogeneous_degree(), Some(3));
        assert_eq!(g.poly().homogeneous_degree(), Some(4));
        // Q = Σ M_i x_i with M_i in x_3, x_4 only
        let mut back = MPoly::zero(Rationals, 5);
        for (i, mi) in g.m_forms[0].iter().enumerate() {
            assert!(mi.support_vars().iter().all(|&v| v > 2));
            back = &back + &(mi * &MPoly::var(Rationals, 5, i));
        }
        assert_eq!(back, g.q[0]);
    }
}
