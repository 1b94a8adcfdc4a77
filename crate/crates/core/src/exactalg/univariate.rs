use super::field::Field;

/// Dense univariate polynomial, coefficients in increasing degree, with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { field, coeffs }
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Remainder of Euclidean division; panics on a zero divisor.
    pub fn rem(&self, d: &Self) -> Self {
        let f = &self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(&d.coeffs[dd]).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let q = f.mul(&r[top], &lead_inv);
            if !f.is_zero(&q) {
                let shift = top - dd;
                for (k, dc) in d.coeffs.iter().enumerate() {
                    r[shift + k] = f.sub(&r[shift + k], &f.mul(&q, dc));
                }
            }
            r.pop();
        }
        UPoly::new(f.clone(), r)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero");
                let coeffs = self
                    .coeffs
                    .iter()
                    .map(|c| self.field.mul(c, &inv))
                    .collect();
                UPoly::new(self.field.clone(), coeffs)
            }
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::PrimeField;

    #[test]
    fn gcd_of_products() {
        let f = PrimeField::new(101).unwrap();
        let u = |v: &[i64]| UPoly::new(f, v.iter().map(|&c| f.from_i64(c)).collect());
        // (x+1)(x+2) and (x+1)(x+3)
        let a = u(&[2, 3, 1]);
        let b = u(&[3, 4, 1]);
        assert_eq!(a.gcd(&b), u(&[1, 1]));
        assert_eq!(u(&[1, 1]).gcd(&u(&[2, 1])).degree(), Some(0));
        assert_eq!(a.eval(&f.from_i64(-1)), 0);
    }
}
