use serde::Serialize;

use super::ScrollError;
use crate::exactalg::{ExpVec, Field, MPoly, PolyMatrix, PrimeField, Rationals};

/// S(a,b) ⊂ P^{a+b+1}: (u s^a, u s^{a−1} t, …, u t^a, v s^b, …, v t^b) with
/// base parameters (s,t) and fiber parameters (u,v).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScrollParam {
    pub a: usize,
    pub b: usize,
}

pub fn scroll_param(a: usize, b: usize) -> Result<ScrollParam, ScrollError> {
    if a < 1 || a > b || a + b < 3 {
        return Err(ScrollError::InvalidArgs(format!(
            "need 1 <= a <= b and a + b >= 3, got a = {a}, b = {b}"
        )));
    }
    Ok(ScrollParam { a, b })
}

impl ScrollParam {
    /// Number of homogeneous coordinates, a+b+2.
    pub fn n_coords(&self) -> usize {
        self.a + self.b + 2
    }

    /// The coordinate forms in the ring Q[s, t, u, v].
    pub fn forms(&self) -> Vec<MPoly<Rationals>> {
        let mono = |s: usize, t: usize, fiber: usize| {
            let mut e = [0u16; 4];
            e[0] = s as u16;
            e[1] = t as u16;
            e[fiber] = 1;
            MPoly::monomial(Rationals, ExpVec::new(e.to_vec()), Rationals.one())
        };
        let first = (0..=self.a).map(|i| mono(self.a - i, i, 2));
        let second = (0..=self.b).map(|j| mono(self.b - j, j, 3));
        first.chain(second).collect()
    }

    /// The 2 × (a+b) catalecticant matrix: column (x_i, x_{i+1}) for every
    /// consecutive pair inside each block.
    pub fn catalecticant(&self) -> PolyMatrix<Rationals> {
        let n = self.n_coords();
        let x = |i| MPoly::var(Rationals, n, i);
        let starts = (0..self.a).chain(self.a + 1..self.a + 1 + self.b);
        let (top, bottom): (Vec<_>, Vec<_>) = starts.map(|i| (x(i), x(i + 1))).unzip();
        PolyMatrix::new(Rationals, n, vec![top, bottom]).expect("two equal rows")
    }

    /// Whether every 2-minor of the catalecticant vanishes identically on
    /// the parameterization.
    pub fn minors_vanish(&self) -> Result<bool, ScrollError> {
        let forms = self.forms();
        let c = self.catalecticant();
        for i in 0..c.cols() {
            for j in i + 1..c.cols() {
                let m = &(c.get(0, i) * c.get(1, j)) - &(c.get(0, j) * c.get(1, i));
                if !m.substitute(&forms)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The point and its s- and u-partials in the chart t = v = 1.
    pub fn chart_jet(&self, fp: &PrimeField, s: u32, u: u32) -> [Vec<u32>; 3] {
        let n = self.n_coords();
        let mut point = Vec::with_capacity(n);
        let mut ds = Vec::with_capacity(n);
        let mut du = Vec::with_capacity(n);
        let pw = |k: usize| if k == 0 { 1 } else { fp.pow_raw(s, k as u32) };
        for i in 0..=self.a {
            let k = self.a - i;
            point.push(fp.mul_raw(u, pw(k)));
            ds.push(if k == 0 {
                0
            } else {
                fp.mul_raw(fp.mul_raw(u, fp.reduce_i64(k as i64)), pw(k - 1))
            });
            du.push(pw(k));
        }
        for j in 0..=self.b {
            let k = self.b - j;
            point.push(pw(k));
            ds.push(if k == 0 {
                0
            } else {
                fp.mul_raw(fp.reduce_i64(k as i64), pw(k - 1))
            });
            du.push(0);
        }
        [point, ds, du]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s12_forms() {
        let s = scroll_param(1, 2).unwrap();
        let text: Vec<String> = s.forms().iter().map(|f| f.to_string()).collect();
        assert_eq!(text, ["x0*x2", "x1*x2", "x0^2*x3", "x0*x1*x3", "x1^2*x3"]);
        assert_eq!(s.catalecticant().cols(), 3);
        assert!(s.minors_vanish().unwrap());
    }

    #[test]
    fn guards() {
        assert!(scroll_param(0, 3).is_err());
        assert!(scroll_param(3, 2).is_err());
        assert!(scroll_param(1, 1).is_err());
        for (a, b) in [(1, 3), (2, 2), (2, 3), (1, 4)] {
            assert!(scroll_param(a, b).unwrap().minors_vanish().unwrap());
        }
    }

    #[test]
    fn jet_matches_forms() {
        let fp = PrimeField::new(101).unwrap();
        let s = scroll_param(2, 3).unwrap();
        let [p, ds, du] = s.chart_jet(&fp, 7, 5);
        let forms = s.forms();
        for (i, f) in forms.iter().enumerate() {
            let at = |g: &MPoly<Rationals>| {
                let m = g.reduce_mod(&fp).unwrap();
                m.eval(&[7, 1, 5, 1]).unwrap()
            };
            assert_eq!(p[i], at(f));
            assert_eq!(ds[i], at(&f.diff(0).unwrap()));
            assert_eq!(du[i], at(&f.diff(2).unwrap()));
        }
    }
}
