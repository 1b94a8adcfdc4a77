//! Exact algebra for polar maps of projective hypersurfaces.

// Index loops mirror the subscripts of the identities being checked.
#![allow(clippy::needless_range_loop)]

pub mod constructions;
pub mod exactalg;
pub mod fflab;
pub mod polarity;
pub mod rng;
pub mod scrolldual;
pub mod subhankel;
