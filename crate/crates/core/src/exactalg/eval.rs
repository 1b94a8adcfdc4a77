//! Straight-line evaluation of polynomials over F_p, for tight loops.

use super::field::{Field, PrimeField};
use super::mpoly::MPoly;
use super::AlgError;

/// A polynomial over F_p flattened for repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    fp: PrimeField,
    n_vars: usize,
    max_exp: Vec<u16>,
    terms: Vec<(u32, Vec<(usize, u16)>)>,
}

impl CompiledPoly {
    /// Reduce `f` mod p and compile it.
    pub fn new<F: Field>(f: &MPoly<F>, fp: PrimeField) -> Result<Self, AlgError> {
        let g = f.reduce_mod(&fp)?;
        let n = g.n_vars();
        let mut max_exp = vec![0u16; n];
        let terms = g
            .terms()
            .map(|(e, c)| {
                let factors: Vec<(usize, u16)> = e
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        max_exp[i] = max_exp[i].max(k);
                        (i, k)
                    })
                    .collect();
                (*c, factors)
            })
            .collect();
        Ok(CompiledPoly {
            fp,
            n_vars: n,
            max_exp,
            terms,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &[u32]) -> u32 {
        let table = PowerTable::build(&self.fp, x, &self.max_exp);
        self.eval_table(&table)
    }

    fn eval_table(&self, table: &PowerTable) -> u32 {
        let p = self.fp.modulus() as u64;
        let mut acc = 0u64;
        for (c, factors) in &self.terms {
            let mut t = *c as u64;
            for &(i, k) in factors {
                t = t * table.get(i, k) as u64 % p;
            }
            acc += t;
            if acc >= p << 32 {
                acc %= p;
            }
        }
        (acc % p) as u32
    }
}

struct PowerTable {
    offsets: Vec<usize>,
    data: Vec<u32>,
}

impl PowerTable {
    fn build(fp: &PrimeField, x: &[u32], max_exp: &[u16]) -> Self {
        let mut offsets = Vec::with_capacity(max_exp.len());
        let mut data = Vec::new();
        for (i, &m) in max_exp.iter().enumerate() {
            offsets.push(data.len());
            let mut v = 1u32;
            data.push(1);
            for _ in 0..m {
                v = fp.mul_raw(v, x[i]);
                data.push(v);
            }
        }
        PowerTable { offsets, data }
    }

    #[inline]
    fn get(&self, i: usize, k: u16) -> u32 {
        self.data[self.offsets[i] + k as usize]
    }
}

/// A list of polynomials over F_p evaluated together at shared points.
#[derive(Clone, Debug)]
pub struct CompiledMap {
    fp: PrimeField,
    n_vars: usize,
    max_exp: Vec<u16>,
    forms: Vec<CompiledPoly>,
}

impl CompiledMap {
    pub fn new<F: Field>(forms: &[MPoly<F>], fp: PrimeField) -> Result<Self, AlgError> {
        let first = forms
            .first()
            .ok_or_else(|| AlgError::Empty("compiled map".into()))?;
        let n = first.n_vars();
        let forms: Vec<CompiledPoly> = forms
            .iter()
            .map(|f| CompiledPoly::new(f, fp))
            .collect::<Result<_, _>>()?;
        let mut max_exp = vec![0u16; n];
        for f in &forms {
            if f.n_vars != n {
                return Err(AlgError::VarCountMismatch(f.n_vars, n));
            }
            for (m, &e) in max_exp.iter_mut().zip(&f.max_exp) {
                *m = (*m).max(e);
            }
        }
        Ok(CompiledMap {
            fp,
            n_vars: n,
            max_exp,
            forms,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.fp
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn eval_into(&self, x: &[u32], out: &mut [u32]) {
        let table = PowerTable::build(&self.fp, x, &self.max_exp);
        for (o, f) in out.iter_mut().zip(&self.forms) {
            *o = f.eval_table(&table);
        }
    }

    pub fn eval(&self, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.forms.len()];
        self.eval_into(x, &mut out);
        out
    }
}
