use serde::{Deserialize, Serialize};

use super::gn::GnPolynomial;
use super::{check_degrees, random_form, ConstructionError};
use crate::exactalg::{rank_mod_p, CompiledMap, ExpVec, MPoly, PrimeField, Rationals, P_WORK};
use crate::polarity::Hypersurface;
use crate::rng::{random_vector, stream_rng};

/// Seed-driven Permutti parameters: type (r, t, n) and degree d.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermuttiSpec {
    pub r: usize,
    pub t: usize,
    pub n: u32,
    pub d: u32,
    pub seed: u64,
}

/// Explicit Permutti data in r+1 variables: `m[i]` = M_i of degree n−1 and
/// `p[k]` = P_k of degree d−kn, all in x_{t+1}..x_r.
#[derive(Clone, Debug, PartialEq)]
pub struct PermuttiParts {
    pub r: usize,
    pub t: usize,
    pub n: u32,
    pub d: u32,
    pub m: Vec<MPoly<Rationals>>,
    pub p: Vec<MPoly<Rationals>>,
}

#[derive(Clone, Debug)]
pub struct PermuttiPolynomial {
    pub hypersurface: Hypersurface<Rationals>,
    /// Q = M_0 x_0 + … + M_t x_t.
    pub q: MPoly<Rationals>,
    pub mu: u32,
    pub parts: PermuttiParts,
}

impl PermuttiPolynomial {
    pub fn poly(&self) -> &MPoly<Rationals> {
        self.hypersurface.poly()
    }
}

fn validate_type(r: usize, t: usize) -> Result<(), ConstructionError> {
    if t >= 1 && t + 2 <= r {
        Ok(())
    } else {
        Err(ConstructionError::InvalidSpec(format!(
            "Permutti type needs 1 <= t <= r-2; got r = {r}, t = {t}"
        )))
    }
}

/// Dense random M_i when r ≤ 2t. Otherwise the M_i are forms in t general
/// linear forms of x_{t+1}..x_r, which makes them algebraically dependent.
pub fn permutti_build(spec: &PermuttiSpec) -> Result<PermuttiPolynomial, ConstructionError> {
    let (r, t) = (spec.r, spec.t);
    validate_type(r, t)?;
    let mu = check_degrees(spec.n, spec.d)?;
    let nx = r + 1;
    let tail: Vec<usize> = (t + 1..=r).collect();
    let mut rng = stream_rng(spec.seed, 0x70);
    let m = if r <= 2 * t {
        (0..=t)
            .map(|_| random_form(&mut rng, nx, &tail, spec.n - 1))
            .collect()
    } else {
        let ls: Vec<_> = (0..t)
            .map(|_| random_form(&mut rng, nx, &tail, 1))
            .collect();
        let inner: Vec<usize> = (0..t).collect();
        (0..=t)
            .map(|_| random_form(&mut rng, t, &inner, spec.n - 1).substitute(&ls))
            .collect::<Result<Vec<_>, _>>()?
    };
    let p = (0..=mu)
        .map(|k| random_form(&mut rng, nx, &tail, spec.d - k * spec.n))
        .collect();
    permutti_build_parts(PermuttiParts {
        r,
        t,
        n: spec.n,
        d: spec.d,
        m,
        p,
    })
}

pub fn permutti_build_parts(parts: PermuttiParts) -> Result<PermuttiPolynomial, ConstructionError> {
    let (r, t, n, d) = (parts.r, parts.t, parts.n, parts.d);
    validate_type(r, t)?;
    let mu = check_degrees(n, d)?;
    let nx = r + 1;
    let q = Rationals;
    let bad = |msg: String| Err(ConstructionError::InvalidSpec(msg));
    if parts.m.len() != t + 1 {
        return bad(format!(
            "expected {} forms M_i, got {}",
            t + 1,
            parts.m.len()
        ));
    }
    if parts.p.len() != mu as usize + 1 {
        return bad(format!(
            "expected {} forms P_k, got {}",
            mu + 1,
            parts.p.len()
        ));
    }
    let degs = parts.m.iter().map(|f| (f, n - 1)).chain(
        parts
            .p
            .iter()
            .enumerate()
            .map(|(k, f)| (f, d - k as u32 * n)),
    );
    for (f, e) in degs {
        if f.n_vars() != nx {
            return bad(format!("forms must live in {nx} variables"));
        }
        if !f.is_zero() && f.homogeneous_degree() != Some(e) {
            return bad(format!("expected a form of degree {e}, got {f}"));
        }
        if f.support_vars().iter().any(|&v| v <= t) {
            return bad("M_i and P_k must only involve x_{t+1}..x_r".into());
        }
    }
    if parts.m.iter().all(|f| f.is_zero()) {
        return Err(ConstructionError::Degenerate("all M_i vanish".into()));
    }
    if r > 2 * t && !algebraically_dependent(&parts.m, t)? {
        return bad("M_0..M_t must be algebraically dependent".into());
    }

    let mut qf = MPoly::zero(q, nx);
    for (i, mi) in parts.m.iter().enumerate() {
        qf = &qf + &(mi * &MPoly::var(q, nx, i));
    }
    let mut f = MPoly::zero(q, nx);
    let mut qk = MPoly::one(q, nx);
    for pk in &parts.p {
        f = &f + &(&qk * pk);
        qk = &qk * &qf;
    }
    if f.is_zero() {
        return Err(ConstructionError::Degenerate(
            "f vanishes identically".into(),
        ));
    }
    Ok(PermuttiPolynomial {
        hypersurface: Hypersurface::new(f)?,
        q: qf,
        mu,
        parts,
    })
}

/// Jacobian criterion over F_32003 at a few random points.
fn algebraically_dependent(m: &[MPoly<Rationals>], t: usize) -> Result<bool, ConstructionError> {
    let fp = PrimeField::new(P_WORK)?;
    let nx = m[0].n_vars();
    let mut entries = Vec::with_capacity(m.len() * (nx - t - 1));
    for mi in m {
        for v in t + 1..nx {
            entries.push(mi.diff(v)?);
        }
    }
    let jac = CompiledMap::new(&entries, fp)?;
    let cols = nx - t - 1;
    let mut rng = stream_rng(0xa1d, 0);
    for _ in 0..8 {
        let x = random_vector(&mut rng, &fp, nx);
        let vals = jac.eval(&x);
        let mut rows: Vec<Vec<u32>> = vals.chunks(cols).map(|c| c.to_vec()).collect();
        if rank_mod_p(&fp, &mut rows) == m.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reads a GN polynomial of type (r, t, t−1, n) as Permutti data: M_i are
/// the Laplace coefficients of the single Q and P_k is the x-part of the
/// biform z^k · P_k.
pub fn permutti_parts_from_gn(g: &GnPolynomial) -> Result<PermuttiParts, ConstructionError> {
    let gp = &g.parts;
    if gp.t != gp.m + 1 {
        return Err(ConstructionError::InvalidSpec(format!(
            "type (r, t, m) = ({}, {}, {}) has more than one Q",
            gp.r, gp.t, gp.m
        )));
    }
    let nx = gp.r + 1;
    let map: Vec<usize> = (0..=nx).map(|i| i.min(gp.r)).collect();
    let p =
        gp.p.iter()
            .enumerate()
            .map(|(k, pk)| {
                let mut z = vec![0u16; nx + 1];
                z[nx] = k as u16;
                // z is divided out, so mapping it onto x_r adds nothing
                Ok(pk.div_monomial(&ExpVec::new(z))?.remap_vars(nx, &map)?)
            })
            .collect::<Result<Vec<_>, ConstructionError>>()?;
    Ok(PermuttiParts {
        r: gp.r,
        t: gp.t,
        n: gp.n,
        d: gp.d,
        m: g.m_forms[0].clone(),
        p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_has_degree_n() {
        let p = permutti_build(&PermuttiSpec {
            r: 5,
            t: 2,
            n: 3,
            d: 4,
            seed: 2,
        })
        .unwrap();
        assert_eq!(p.q.homogeneous_degree(), Some(3));
        assert_eq!(p.poly().homogeneous_degree(), Some(4));
        assert_eq!(p.mu, 1);
    }

    #[test]
    fn independent_m_rejected_when_r_exceeds_2t() {
        let x = |i| MPoly::var(Rationals, 5, i);
        let parts = PermuttiParts {
            r: 4,
            t: 1,
            n: 2,
            d: 3,
            m: vec![x(2), x(3)],
            p: vec![x(2).pow(3), x(4)],
        };
        assert!(permutti_build_parts(parts.clone()).is_err());
        let ok = PermuttiParts {
            m: vec![
                x(2),
                x(2).scale(&num_rational::BigRational::from_integer(3.into())),
            ],
            ..parts
        };
        assert!(permutti_build_parts(ok).is_ok());
    }

    #[test]
    fn rejects_low_variables() {
        let x = |i| MPoly::var(Rationals, 5, i);
        let parts = PermuttiParts {
            r: 4,
            t: 2,
            n: 2,
            d: 3,
            m: vec![x(3), x(4), x(0)],
            p: vec![x(3).pow(3), x(4)],
        };
        assert!(permutti_build_parts(parts).is_err());
    }
}
