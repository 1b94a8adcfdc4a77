//! Polar maps, Hessians and the invariants ρ(f), z(f), v(f) of a projective
//! hypersurface V(f) ⊂ P^r.

mod cone;
mod gauss;
mod hessian;
mod polar;

pub use cone::{is_cone, ConeTest};
pub use gauss::{gauss_image_dim, GaussImage};
pub use hessian::{
    hessian, hessian_det, hessian_matrix, totally_hessian_test, HessianMode, HessianReport,
    HessianValue, RankMethod, SymbolicGuard, TotallyHessian,
};
pub use polar::{gradient, polar_operator, Polar};

use thiserror::Error;

use crate::exactalg::{AlgError, Field, MPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolarityError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("the zero polynomial does not define a hypersurface")]
    ZeroPolynomial,
    #[error("degree {d} is below the required minimum {min}")]
    UnsupportedDegree { d: u32, min: u32 },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error(
        "symbolic Hessian refused for r = {r}, entry degree {entry_degree}; use probabilistic mode"
    )]
    SymbolicRefused { r: usize, entry_degree: u32 },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

/// A hypersurface V(f) ⊂ P^r given by a nonzero form f in r+1 variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface<F: Field> {
    f: MPoly<F>,
    d: u32,
}

impl<F: Field> Hypersurface<F> {
    pub fn new(f: MPoly<F>) -> Result<Self, PolarityError> {
        if f.is_zero() {
            return Err(PolarityError::ZeroPolynomial);
        }
        let d = f
            .homogeneous_degree()
            .ok_or(PolarityError::NotHomogeneous)?;
        if d == 0 {
            return Err(PolarityError::UnsupportedDegree { d, min: 1 });
        }
        Ok(Hypersurface { f, d })
    }

    pub fn poly(&self) -> &MPoly<F> {
        &self.f
    }

    pub fn into_poly(self) -> MPoly<F> {
        self.f
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Dimension of the ambient projective space.
    pub fn r(&self) -> usize {
        self.f.n_vars() - 1
    }

    pub fn n_vars(&self) -> usize {
        self.f.n_vars()
    }

    pub fn field(&self) -> &F {
        self.f.field()
    }
}

/// A rational map P^r ⇢ P^r given by r+1 forms of one common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarMap<F: Field> {
    forms: Vec<MPoly<F>>,
    degree: u32,
}

impl<F: Field> PolarMap<F> {
    pub fn new(forms: Vec<MPoly<F>>) -> Result<Self, PolarityError> {
        let n = forms
            .first()
            .map(|f| f.n_vars())
            .ok_or_else(|| PolarityError::OutOfRange("empty map".into()))?;
        if forms.len() != n {
            return Err(AlgError::VarCountMismatch(forms.len(), n).into());
        }
        let mut degree = None;
        for g in &forms {
            if g.n_vars() != n {
                return Err(AlgError::VarCountMismatch(g.n_vars(), n).into());
            }
            if g.is_zero() {
                continue;
            }
            let e = g
                .homogeneous_degree()
                .ok_or(PolarityError::NotHomogeneous)?;
            match degree {
                None => degree = Some(e),
                Some(d) if d != e => return Err(PolarityError::NotHomogeneous),
                Some(_) => {}
            }
        }
        let degree = degree.ok_or(PolarityError::ZeroPolynomial)?;
        Ok(PolarMap { forms, degree })
    }

    pub fn forms(&self) -> &[MPoly<F>] {
        &self.forms
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn r(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn n_vars(&self) -> usize {
        self.forms.len()
    }
}
