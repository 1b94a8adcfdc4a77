use super::field::Field;
use super::linalg::DenseMatrix;
use super::mpoly::MPoly;
use super::AlgError;

/// Determinant algorithm for polynomial matrices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DetMethod {
    /// Cofactor expansion up to size 4, fraction-free elimination above.
    #[default]
    Auto,
    Cofactor,
    Bareiss,
}

/// Matrix with polynomial entries, all in the same ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<F: Field> {
    field: F,
    n_vars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<MPoly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(field: F, n_vars: usize, rows: Vec<Vec<MPoly<F>>>) -> Result<Self, AlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgError::Shape("ragged rows".into()));
        }
        for p in rows.iter().flatten() {
            if p.n_vars() != n_vars {
                return Err(AlgError::VarCountMismatch(p.n_vars(), n_vars));
            }
            if *p.field() != field {
                return Err(AlgError::FieldMismatch("matrix entry".into()));
            }
        }
        Ok(PolyMatrix {
            field,
            n_vars,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(field: F, n_vars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            entries: vec![MPoly::zero(field.clone(), n_vars); rows * cols],
            field,
            n_vars,
            rows,
            cols,
        }
    }

    /// Matrix of integer constants.
    pub fn from_constants(field: F, n_vars: usize, rows: Vec<Vec<i64>>) -> Self {
        let polys = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| MPoly::constant(field.clone(), n_vars, field.from_i64(v)))
                    .collect()
            })
            .collect();
        Self::new(field, n_vars, polys).expect("well-formed constant matrix")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MPoly<F>) -> Result<(), AlgError> {
        if p.n_vars() != self.n_vars {
            return Err(AlgError::VarCountMismatch(p.n_vars(), self.n_vars));
        }
        self.entries[i * self.cols + j] = p;
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.n_vars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix {
            field: self.field.clone(),
            n_vars: self.n_vars,
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    pub fn delete_row(&self, r: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&rows, &cols)
    }

    /// Evaluate to a constant matrix; fails if any entry is non-constant.
    pub fn constant_entries(&self) -> Result<DenseMatrix<F::Elem>, AlgError> {
        let mut m = DenseMatrix::filled(self.rows, self.cols, self.field.zero());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_constant() {
                    return Err(AlgError::Shape(format!("entry ({i},{j}) is not constant")));
                }
                m.set(i, j, e.constant_value());
            }
        }
        Ok(m)
    }

    /// Evaluate every entry at a point.
    pub fn eval(&self, point: &[F::Elem]) -> Result<DenseMatrix<F::Elem>, AlgError> {
        let mut m = DenseMatrix::filled(self.rows, self.cols, self.field.zero());
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).eval(point)?);
            }
        }
        Ok(m)
    }

    pub fn det(&self) -> Result<MPoly<F>, AlgError> {
        self.det_with(DetMethod::Auto)
    }

    pub fn det_with(&self, method: DetMethod) -> Result<MPoly<F>, AlgError> {
        if self.rows != self.cols {
            return Err(AlgError::Shape(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(MPoly::one(self.field.clone(), self.n_vars));
        }
        match method {
            DetMethod::Cofactor => Ok(self.cofactor_det()),
            DetMethod::Bareiss => self.bareiss_det(),
            DetMethod::Auto if n <= 4 => Ok(self.cofactor_det()),
            DetMethod::Auto => self.bareiss_det(),
        }
    }

    fn cofactor_det(&self) -> MPoly<F> {
        let idx: Vec<usize> = (0..self.cols).collect();
        self.cofactor_rec(0, &idx)
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> MPoly<F> {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = MPoly::zero(self.field.clone(), self.n_vars);
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let t = a * &self.cofactor_rec(row + 1, &rest);
            acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    /// Fraction-free (Bareiss) elimination with row pivoting. Each step
    /// divides exactly by the previous pivot.
    fn bareiss_det(&self) -> Result<MPoly<F>, AlgError> {
        let n = self.rows;
        let mut m: Vec<Vec<MPoly<F>>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = MPoly::one(self.field.clone(), self.n_vars);
        for k in 0..n - 1 {
            let pick = (k..n)
                .filter(|&i| !m[i][k].is_zero())
                .min_by_key(|&i| m[i][k].num_terms());
            let Some(p) = pick else {
                return Ok(MPoly::zero(self.field.clone(), self.n_vars));
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev)?;
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Maximal minors of an `(c+1) x c` matrix: entry `j` is the determinant
    /// with row `j` deleted.
    pub fn maximal_minors(&self) -> Result<Vec<MPoly<F>>, AlgError> {
        if self.rows != self.cols + 1 {
            return Err(AlgError::Shape(format!(
                "expected (c+1) x c, got {}x{}",
                self.rows, self.cols
            )));
        }
        (0..self.rows).map(|j| self.delete_row(j).det()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, Rationals};

    fn hankel(n: usize) -> PolyMatrix<Rationals> {
        let nv = 2 * n - 1;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| MPoly::var(Rationals, nv, i + j)).collect())
            .collect();
        PolyMatrix::new(Rationals, nv, rows).unwrap()
    }

    #[test]
    fn two_by_two_hankel() {
        let d = hankel(2).det().unwrap();
        assert_eq!(d, parse_poly("x0*x2 - x1^2", 3, Rationals).unwrap());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        for n in 2..=5 {
            let m = hankel(n);
            let a = m.det_with(DetMethod::Cofactor).unwrap();
            let b = m.det_with(DetMethod::Bareiss).unwrap();
            assert_eq!(a, b, "size {n}");
        }
    }

    #[test]
    fn pivoting_and_zero_columns() {
        let x = |i| MPoly::var(Rationals, 2, i);
        let z = MPoly::zero(Rationals, 2);
        let m = PolyMatrix::new(
            Rationals,
            2,
            vec![
                vec![z.clone(), x(0), z.clone()],
                vec![x(1), z.clone(), z.clone()],
                vec![z.clone(), z.clone(), x(0)],
            ],
        )
        .unwrap();
        let expect = parse_poly("-x0^2*x1", 2, Rationals).unwrap();
        assert_eq!(m.det_with(DetMethod::Bareiss).unwrap(), expect);
        assert_eq!(m.det_with(DetMethod::Cofactor).unwrap(), expect);
        let singular = PolyMatrix::new(
            Rationals,
            2,
            vec![vec![z.clone(), x(0)], vec![z.clone(), x(1)]],
        )
        .unwrap();
        assert!(singular.det_with(DetMethod::Bareiss).unwrap().is_zero());
    }

    #[test]
    fn shape_errors() {
        let m = PolyMatrix::zeros(Rationals, 1, 2, 3);
        assert!(matches!(m.det(), Err(AlgError::Shape(_))));
        assert!(matches!(m.maximal_minors(), Err(AlgError::Shape(_))));
        assert_eq!(m.transpose().maximal_minors().unwrap().len(), 3);
    }
}
