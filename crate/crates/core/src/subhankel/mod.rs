//! Sub-Hankel matrices M^(r), their determinants f^(r), and the exact
//! identities satisfied by the partial derivatives of f^(r).

mod checks;

pub use checks::{
    hessian_closed_form, hilbert_burch_check, irreducibility_structure, minor_checks, verify_lemma,
    HessianClosedForm, HilbertBurchReport, IrreducibilityReport, LemmaReport, MinorReport,
};

use thiserror::Error;

use crate::exactalg::{AlgError, Field, MPoly, PolyMatrix, Rationals};
use crate::polarity::PolarityError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubHankelError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Polarity(#[from] PolarityError),
    #[error("order r = {0} outside the supported range 2..=10")]
    OrderOutOfRange(usize),
    #[error("index i = {i} outside 1..{r}")]
    IndexOutOfRange { i: usize, r: usize },
}

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 10;

/// M^(r), f^(r) = det M^(r), the truncations φ^(j) and the matrices Φ^[i].
#[derive(Clone, Debug)]
pub struct SubHankelBundle {
    r: usize,
    m: PolyMatrix<Rationals>,
    f: MPoly<Rationals>,
    phi: Vec<MPoly<Rationals>>,
    big_phi: Vec<PolyMatrix<Rationals>>,
}

impl SubHankelBundle {
    pub fn build(r: usize) -> Result<Self, SubHankelError> {
        if !(MIN_ORDER..=MAX_ORDER).contains(&r) {
            return Err(SubHankelError::OrderOutOfRange(r));
        }
        let m = sub_hankel_matrix(r);
        let f = m.det()?;
        let n = r + 1;
        let mut phi = vec![MPoly::one(Rationals, n)];
        for j in 1..r {
            let fj = sub_hankel_matrix(j).det()?;
            let map: Vec<usize> = (0..=j).map(|k| r - j + k).collect();
            phi.push(fj.remap_vars(n, &map)?);
        }
        let mut big_phi: Vec<PolyMatrix<Rationals>> = Vec::with_capacity(r - 1);
        for i in 1..r {
            big_phi.push(presentation_matrix(r, i, big_phi.last()));
        }
        Ok(SubHankelBundle {
            r,
            m,
            f,
            phi,
            big_phi,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn matrix(&self) -> &PolyMatrix<Rationals> {
        &self.m
    }

    pub fn f(&self) -> &MPoly<Rationals> {
        &self.f
    }

    /// φ^(j) for 0 ≤ j ≤ r−1, as a polynomial in x_0..x_r.
    pub fn phi(&self, j: usize) -> &MPoly<Rationals> {
        &self.phi[j]
    }

    /// Φ^[i] for 1 ≤ i ≤ r−1.
    pub fn presentation(&self, i: usize) -> Result<&PolyMatrix<Rationals>, SubHankelError> {
        if i == 0 || i >= self.r {
            return Err(SubHankelError::IndexOutOfRange { i, r: self.r });
        }
        Ok(&self.big_phi[i - 1])
    }

    pub(crate) fn partials(&self) -> Vec<MPoly<Rationals>> {
        self.f.gradient().expect("rational field")
    }
}

/// The r×r matrix with entry x_{i+j} when i+j ≤ r and 0 below the
/// anti-diagonal, in r+1 variables.
pub fn sub_hankel_matrix(r: usize) -> PolyMatrix<Rationals> {
    let n = r + 1;
    let rows = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    if i + j <= r {
                        MPoly::var(Rationals, n, i + j)
                    } else {
                        MPoly::zero(Rationals, n)
                    }
                })
                .collect()
        })
        .collect();
    PolyMatrix::new(Rationals, n, rows).expect("well-formed")
}

/// Φ^[i]: first column ((2i−k)/i · x_{r−i+k})_{k<i} followed by x_r; the
/// remaining columns are Φ^[i−1] over a zero row.
fn presentation_matrix(
    r: usize,
    i: usize,
    prev: Option<&PolyMatrix<Rationals>>,
) -> PolyMatrix<Rationals> {
    let n = r + 1;
    let q = Rationals;
    let mut m = PolyMatrix::zeros(q, n, i + 1, i);
    for k in 0..i {
        let c = q.from_ratio((2 * i - k) as i64, i as i64).expect("i > 0");
        m.set(k, 0, MPoly::var(q, n, r - i + k).scale(&c))
            .expect("sizes");
    }
    m.set(i, 0, MPoly::var(q, n, r)).expect("sizes");
    if let Some(p) = prev {
        for a in 0..p.rows() {
            for b in 0..p.cols() {
                m.set(a, b + 1, p.get(a, b).clone()).expect("sizes");
            }
        }
    }
    m
}

/// ξ(r) = 1 for r ≡ 1, 2 (mod 4) and −1 for r ≡ 0, 3 (mod 4).
pub fn xi(r: usize) -> i64 {
    match r % 4 {
        1 | 2 => 1,
        _ => -1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    #[test]
    fn small_orders() {
        let b2 = SubHankelBundle::build(2).unwrap();
        assert_eq!(b2.f(), &parse_poly("x0*x2 - x1^2", 3, Rationals).unwrap());
        let b3 = SubHankelBundle::build(3).unwrap();
        assert_eq!(
            b3.f(),
            &parse_poly("2*x1*x2*x3 - x0*x3^2 - x2^3", 4, Rationals).unwrap()
        );
        assert_eq!(b3.phi(0), &MPoly::one(Rationals, 4));
        assert_eq!(b3.phi(1), &MPoly::var(Rationals, 4, 2));
        assert_eq!(
            b3.phi(2),
            &parse_poly("x1*x3 - x2^2", 4, Rationals).unwrap()
        );
    }

    #[test]
    fn guard() {
        assert!(matches!(
            SubHankelBundle::build(1),
            Err(SubHankelError::OrderOutOfRange(1))
        ));
        assert!(SubHankelBundle::build(11).is_err());
    }

    #[test]
    fn presentation_shapes() {
        let b = SubHankelBundle::build(3).unwrap();
        let p1 = b.presentation(1).unwrap();
        assert_eq!((p1.rows(), p1.cols()), (2, 1));
        assert_eq!(p1.get(0, 0), &parse_poly("2*x2", 4, Rationals).unwrap());
        let p2 = b.presentation(2).unwrap();
        assert_eq!((p2.rows(), p2.cols()), (3, 2));
        assert_eq!(p2.get(1, 0), &parse_poly("3/2*x2", 4, Rationals).unwrap());
        assert_eq!(p2.get(0, 1), &parse_poly("2*x2", 4, Rationals).unwrap());
        assert!(p2.get(2, 1).is_zero());
        assert!(b.presentation(3).is_err());
    }
}
