//! Rational normal scrolls, their projections Y(a,b) ⊂ P^{a+2}, and the
//! dual hypersurfaces Y(a,b)* recovered by interpolating sampled tangent
//! hyperplanes.

mod chain;
mod dual;
mod lift;
mod scroll;
mod serie;

pub use chain::{build_y, ChainSummary, ProjectionChain, MAX_CHAIN_ATTEMPTS};
pub use dual::{
    dual_interpolate, dual_sample, interpolate_dual, min_samples, DualSamples, InterpolatedForm,
    HELD_OUT_SAMPLES, P_INTERPOLATION,
};
pub use lift::{lift_dual_form, rational_reconstruction, LiftedForm};
pub use scroll::{scroll_param, ScrollParam};
pub use serie::{inverse_degree, multiplicity_along, serie_verify, InverseDegree, SerieReport};

use thiserror::Error;

use crate::exactalg::AlgError;
use crate::fflab::FflabError;
use crate::polarity::PolarityError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScrollError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Polarity(#[from] PolarityError),
    #[error(transparent)]
    Fflab(#[from] FflabError),
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error("degenerate choice: {0}")]
    Degenerate(String),
    #[error("{need} samples needed, {got} given")]
    TooFewSamples { need: usize, got: usize },
    #[error("no form of degree {d} vanishes on the samples")]
    DegreeTooLow { d: u32 },
    #[error("degenerate samples: {kernel_dim} independent forms of degree {d}")]
    DegenerateSamples { d: u32, kernel_dim: usize },
    #[error("lifting failed: {0}")]
    LiftFailed(String),
    #[error("no inverse of degree at most {e_max}")]
    NoInverse { e_max: u32 },
    #[error("{stage}: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<ScrollError>,
    },
}

impl ScrollError {
    pub(crate) fn at(stage: &str) -> impl FnOnce(ScrollError) -> ScrollError + '_ {
        move |e| ScrollError::Stage {
            stage: stage.into(),
            source: Box::new(e),
        }
    }
}
