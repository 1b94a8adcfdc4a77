//! Gordan–Noether and Permutti polynomials: forms with vanishing Hessian
//! that are not cones.

mod gn;
mod permutti;
mod verify;

pub use gn::{gn_build, gn_build_parts, GnParts, GnPolynomial, GnSpec};
pub use permutti::{
    permutti_build, permutti_build_parts, permutti_parts_from_gn, PermuttiParts,
    PermuttiPolynomial, PermuttiSpec,
};
pub use verify::{
    core_multiplicity, expected_v, expected_z, vanishing_hessian_check, z_and_v_check, ZvReport,
};

use rand::Rng;
use thiserror::Error;

use crate::exactalg::{monomials_of_degree, AlgError, ExpVec, Field, MPoly, Rationals};
use crate::polarity::PolarityError;
use crate::rng::small_nonzero;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Polarity(#[from] PolarityError),
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    #[error("degenerate choice: {0}")]
    Degenerate(String),
}

/// Bound for the random coefficients drawn from {−B..B} \ {0}.
pub const COEFF_BOUND: i64 = 5;

/// Dense random form of degree `deg` supported on the variables `vars` of
/// a ring with `n` variables.
pub(crate) fn random_form(
    rng: &mut impl Rng,
    n: usize,
    vars: &[usize],
    deg: u32,
) -> MPoly<Rationals> {
    let q = Rationals;
    let terms = monomials_of_degree(vars.len(), deg).into_iter().map(|e| {
        let mut full = vec![0u16; n];
        for (k, &v) in vars.iter().enumerate() {
            full[v] = e.get(k);
        }
        (
            ExpVec::new(full),
            q.from_i64(small_nonzero(rng, COEFF_BOUND)),
        )
    });
    MPoly::from_terms(q, n, terms).expect("sizes match")
}

/// μ = ⌊d/n⌋ after checking d > n and d − μ ≥ 1.
pub(crate) fn check_degrees(n: u32, d: u32) -> Result<u32, ConstructionError> {
    if n == 0 || d <= n {
        return Err(ConstructionError::InvalidSpec(format!(
            "need d > n >= 1, got n = {n}, d = {d}"
        )));
    }
    let mu = d / n;
    if d == mu {
        return Err(ConstructionError::InvalidSpec(format!(
            "d - mu = 0 for n = {n}, d = {d}: the core would not lie on the hypersurface"
        )));
    }
    Ok(mu)
}
