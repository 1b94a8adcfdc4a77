//! Dense linear algebra over an arbitrary field.

use super::field::{Field, PrimeField};
use super::AlgError;

/// Row-major dense matrix of field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> DenseMatrix<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, AlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgError::Shape("ragged rows".into()));
        }
        Ok(DenseMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref<F: Field>(f: &F, m: &mut DenseMatrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..m.cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r || f.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in c..m.cols {
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn dense_rank<F: Field>(f: &F, m: &DenseMatrix<F::Elem>) -> usize {
    let mut w = m.clone();
    rref(f, &mut w).len()
}

/// Determinant by Gaussian elimination. Panics on a non-square matrix.
pub fn dense_det<F: Field>(f: &F, m: &DenseMatrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut w = m.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(w.get(i, c))) else {
            return f.zero();
        };
        if p != c {
            w.swap_rows(p, c);
            det = f.neg(&det);
        }
        let piv = w.get(c, c).clone();
        det = f.mul(&det, &piv);
        let inv = f.inv(&piv).expect("pivot is nonzero");
        for i in c + 1..n {
            if f.is_zero(w.get(i, c)) {
                continue;
            }
            let factor = f.mul(w.get(i, c), &inv);
            for j in c..n {
                let v = f.sub(w.get(i, j), &f.mul(&factor, w.get(c, j)));
                w.set(i, j, v);
            }
        }
    }
    det
}

/// Basis of the right kernel `{v : M v = 0}`.
pub fn dense_nullspace<F: Field>(f: &F, m: &DenseMatrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut w = m.clone();
    let pivots = rref(f, &mut w);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); m.cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(w.get(r, fc));
            }
            v
        })
        .collect()
}

/// Rank of a matrix over F_p given as rows of residues. The rows are
/// overwritten.
pub fn rank_mod_p(fp: &PrimeField, rows: &mut [Vec<u32>]) -> usize {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = fp.inv_raw(rows[r][c]).expect("nonzero pivot");
        let pivot_row: Vec<u32> = rows[r].iter().map(|&v| fp.mul_raw(v, inv)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let factor = row[c];
            if factor == 0 {
                continue;
            }
            for j in c..n_cols {
                row[j] = fp.sub_raw(row[j], fp.mul_raw(factor, pivot_row[j]));
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

/// Basis of the right kernel of a matrix over F_p given as rows of
/// residues. The rows are overwritten.
pub fn nullspace_mod_p(fp: &PrimeField, rows: &mut [Vec<u32>], n_cols: usize) -> Vec<Vec<u32>> {
    let n_rows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = fp.inv_raw(rows[r][c]).expect("nonzero pivot");
        for v in rows[r][c..].iter_mut() {
            *v = fp.mul_raw(*v, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for j in c..n_cols {
                row[j] = fp.sub_raw(row[j], fp.mul_raw(factor, pivot_row[j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n_cols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![0u32; n_cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = fp.sub_raw(0, rows[i][fc]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rationals;

    fn qm(rows: &[&[i64]]) -> DenseMatrix<num_rational::BigRational> {
        DenseMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rationals.from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_rank_kernel() {
        let m = qm(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(dense_det(&Rationals, &m), Rationals.zero());
        assert_eq!(dense_rank(&Rationals, &m), 2);
        let ker = dense_nullspace(&Rationals, &m);
        assert_eq!(ker.len(), 1);
        for i in 0..3 {
            let s = (0..3).fold(Rationals.zero(), |acc, j| {
                Rationals.add(&acc, &Rationals.mul(m.get(i, j), &ker[0][j]))
            });
            assert_eq!(s, Rationals.zero());
        }
        let swap = qm(&[&[0, 1], &[1, 0]]);
        assert_eq!(dense_det(&Rationals, &swap), Rationals.from_i64(-1));
    }

    #[test]
    fn rank_over_small_prime() {
        let fp = PrimeField::new(7).unwrap();
        // second row is 3 times the first mod 7
        let mut rows = vec![vec![1, 2, 3], vec![3, 6, 2], vec![0, 0, 1]];
        assert_eq!(rank_mod_p(&fp, &mut rows), 2);
        let mut q = vec![vec![1, 2, 3], vec![3, 6, 2]];
        assert_eq!(rank_mod_p(&fp, &mut q), 1);
    }
}
