use super::{Hypersurface, PolarMap, PolarityError};
use crate::exactalg::{Field, MPoly};

/// The polar map: the r+1 first partials of f.
pub fn gradient<F: Field>(h: &Hypersurface<F>) -> Result<PolarMap<F>, PolarityError> {
    if h.degree() < 2 {
        return Err(PolarityError::UnsupportedDegree {
            d: h.degree(),
            min: 2,
        });
    }
    PolarMap::new(h.poly().gradient()?)
}

/// Result of a polar operator. An identically vanishing polar is kept as
/// the zero polynomial with `vanishes` set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polar<F: Field> {
    pub poly: MPoly<F>,
    pub vanishes: bool,
}

/// The s-th polar Δ_p^s f = (Σ p_i ∂/∂x_i)^s f, a form of degree d − s.
pub fn polar_operator<F: Field>(
    h: &Hypersurface<F>,
    p: &[F::Elem],
    s: u32,
) -> Result<Polar<F>, PolarityError> {
    let d = h.degree();
    if s < 1 || s >= d {
        return Err(PolarityError::OutOfRange(format!(
            "polar order {s} outside 1..{d}"
        )));
    }
    if p.len() != h.n_vars() {
        return Err(crate::exactalg::AlgError::VarCountMismatch(p.len(), h.n_vars()).into());
    }
    let field = h.field();
    if p.iter().all(|c| field.is_zero(c)) {
        return Err(PolarityError::OutOfRange("pole is the zero vector".into()));
    }
    let mut g = h.poly().clone();
    for _ in 0..s {
        let mut next = MPoly::zero(field.clone(), h.n_vars());
        for (i, c) in p.iter().enumerate() {
            if !field.is_zero(c) {
                next = &next + &g.diff(i)?.scale(c);
            }
        }
        g = next;
    }
    let vanishes = g.is_zero();
    Ok(Polar { poly: g, vanishes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, Rationals};

    fn hs(s: &str, n: usize) -> Hypersurface<Rationals> {
        Hypersurface::new(parse_poly(s, n, Rationals).unwrap()).unwrap()
    }

    #[test]
    fn gradients() {
        let g = gradient(&hs("x0*x2 - x1^2", 3)).unwrap();
        let want: Vec<_> = ["x2", "-2*x1", "x0"]
            .iter()
            .map(|s| parse_poly(s, 3, Rationals).unwrap())
            .collect();
        assert_eq!(g.forms(), &want[..]);
        assert!(matches!(
            gradient(&hs("x0 + x1", 2)),
            Err(PolarityError::UnsupportedDegree { d: 1, .. })
        ));
    }

    #[test]
    fn first_polar_at_vertex() {
        let h = hs("x0*x2 - x1^2", 3);
        let q = |v: i64| Rationals.from_i64(v);
        let pol = polar_operator(&h, &[q(1), q(0), q(0)], 1).unwrap();
        assert_eq!(pol.poly, parse_poly("x2", 3, Rationals).unwrap());
        assert!(!pol.vanishes);
        assert!(polar_operator(&h, &[q(1), q(0), q(0)], 2).is_err());
        assert!(polar_operator(&h, &[q(0), q(0), q(0)], 1).is_err());
    }

    #[test]
    fn vanishing_polar_is_flagged() {
        // pole at the vertex of a cone
        let h = hs("x0^2*x1 + x1^3", 3);
        let q = |v: i64| Rationals.from_i64(v);
        let pol = polar_operator(&h, &[q(0), q(0), q(1)], 1).unwrap();
        assert!(pol.vanishes && pol.poly.is_zero());
    }
}
