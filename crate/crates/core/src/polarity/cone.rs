use super::{Hypersurface, PolarityError};
use crate::exactalg::{dense_nullspace, monomials_of_degree, DenseMatrix, Field};

/// Outcome of the cone test, with a linear dependence Σ w_i f_i = 0 among
/// the partials when one exists. The witness is scaled so that its first
/// nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeTest<E> {
    pub is_cone: bool,
    pub witness: Option<Vec<E>>,
}

/// V(f) is a cone iff its partials are linearly dependent.
pub fn is_cone<F: Field>(h: &Hypersurface<F>) -> Result<ConeTest<F::Elem>, PolarityError> {
    let field = h.field();
    let n = h.n_vars();
    let partials = h.poly().gradient()?;
    let monos = monomials_of_degree(n, h.degree() - 1);
    let mut m = DenseMatrix::filled(monos.len(), n, field.zero());
    for (j, g) in partials.iter().enumerate() {
        for (i, e) in monos.iter().enumerate() {
            m.set(i, j, g.coeff(e));
        }
    }
    let ker = dense_nullspace(field, &m);
    let Some(w) = ker.into_iter().next() else {
        return Ok(ConeTest {
            is_cone: false,
            witness: None,
        });
    };
    let lead = w
        .iter()
        .find(|c| !field.is_zero(c))
        .expect("kernel vector is nonzero");
    let inv = field.inv(lead).expect("nonzero");
    let w = w.iter().map(|c| field.mul(c, &inv)).collect();
    Ok(ConeTest {
        is_cone: true,
        witness: Some(w),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, Rationals};

    #[test]
    fn concurrent_lines_are_a_cone() {
        let h = Hypersurface::new(parse_poly("x0^2*x1 + x0*x1^2", 3, Rationals).unwrap()).unwrap();
        let t = is_cone(&h).unwrap();
        assert!(t.is_cone);
        let q = |v: i64| Rationals.from_i64(v);
        assert_eq!(t.witness, Some(vec![q(0), q(0), q(1)]));
    }

    #[test]
    fn smooth_conic_is_not() {
        let h = Hypersurface::new(parse_poly("x0*x2 - x1^2", 3, Rationals).unwrap()).unwrap();
        assert!(!is_cone(&h).unwrap().is_cone);
    }

    #[test]
    fn hidden_cone_after_change_of_variables() {
        // (x0 + x1)^2 - x2^2 only depends on two linear forms
        let h =
            Hypersurface::new(parse_poly("x0^2 + 2*x0*x1 + x1^2 - x2^2", 3, Rationals).unwrap())
                .unwrap();
        let t = is_cone(&h).unwrap();
        let q = |v: i64| Rationals.from_i64(v);
        assert_eq!(t.witness, Some(vec![q(1), q(-1), q(0)]));
    }
}
