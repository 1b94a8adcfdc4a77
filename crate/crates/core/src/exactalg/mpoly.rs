use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use super::expvec::ExpVec;
use super::field::{Field, PrimeField};
use super::matrix::PolyMatrix;
use super::AlgError;

/// Sparse multivariate polynomial over a field `F`.
///
/// Terms are kept in a map keyed by exponent vector (grevlex order); zero
/// coefficients are never stored, so the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<F: Field> {
    field: F,
    n_vars: usize,
    terms: BTreeMap<ExpVec, F::Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic on two polynomials of the same ring.
pub fn poly_arith<F: Field>(a: &MPoly<F>, b: &MPoly<F>, op: ArithOp) -> Result<MPoly<F>, AlgError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

impl<F: Field> MPoly<F> {
    pub fn zero(field: F, n_vars: usize) -> Self {
        MPoly {
            field,
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: F, n_vars: usize, c: F::Elem) -> Self {
        Self::monomial(field, ExpVec::zero(n_vars), c)
    }

    pub fn one(field: F, n_vars: usize) -> Self {
        let one = field.one();
        Self::constant(field, n_vars, one)
    }

    pub fn var(field: F, n_vars: usize, i: usize) -> Self {
        let one = field.one();
        Self::monomial(field, ExpVec::var(n_vars, i), one)
    }

    pub fn monomial(field: F, exp: ExpVec, c: F::Elem) -> Self {
        let n_vars = exp.len();
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(exp, c);
        }
        MPoly {
            field,
            n_vars,
            terms,
        }
    }

    /// Build from (exponent, coefficient) pairs, summing repeated monomials.
    pub fn from_terms<I>(field: F, n_vars: usize, it: I) -> Result<Self, AlgError>
    where
        I: IntoIterator<Item = (ExpVec, F::Elem)>,
    {
        let mut acc: HashMap<ExpVec, F::Elem> = HashMap::new();
        for (e, c) in it {
            if e.len() != n_vars {
                return Err(AlgError::VarCountMismatch(e.len(), n_vars));
            }
            match acc.get_mut(&e) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Ok(Self::from_map(field, n_vars, acc))
    }

    fn from_map(field: F, n_vars: usize, acc: HashMap<ExpVec, F::Elem>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        MPoly {
            field,
            n_vars,
            terms,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVec, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExpVec) -> F::Elem {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&ExpVec, &F::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.total_degree()
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_one())
    }

    /// Constant term value (zero if absent).
    pub fn constant_value(&self) -> F::Elem {
        self.coeff(&ExpVec::zero(self.n_vars))
    }

    fn check_compat(&self, other: &Self) -> Result<(), AlgError> {
        if self.n_vars != other.n_vars {
            return Err(AlgError::VarCountMismatch(self.n_vars, other.n_vars));
        }
        if self.field != other.field {
            return Err(AlgError::FieldMismatch(format!(
                "{:?} vs {:?}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_compat(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_into(&self.field, &mut terms, e, c);
        }
        Ok(MPoly {
            field: self.field.clone(),
            n_vars: self.n_vars,
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_compat(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_into(&self.field, &mut terms, e, &self.field.neg(c));
        }
        Ok(MPoly {
            field: self.field.clone(),
            n_vars: self.n_vars,
            terms,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_compat(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f.clone(), self.n_vars));
        }
        let mut acc: HashMap<ExpVec, F::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.mul(eb);
                let c = f.mul(ca, cb);
                match acc.get_mut(&e) {
                    Some(v) => *v = f.add(v, &c),
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        Ok(Self::from_map(f.clone(), self.n_vars, acc))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f.clone(), self.n_vars);
        }
        MPoly {
            field: f.clone(),
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), f.mul(v, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &ExpVec) -> Self {
        MPoly {
            field: self.field.clone(),
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone(), self.n_vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `x_var`.
    ///
    /// Over F_p the derivative is only accepted when p exceeds the degree, so
    /// that no nonzero exponent vanishes modulo p.
    pub fn diff(&self, var: usize) -> Result<Self, AlgError> {
        if var >= self.n_vars {
            return Err(AlgError::VarOutOfRange {
                index: var,
                n_vars: self.n_vars,
            });
        }
        let ch = self.field.characteristic();
        if ch != 0 {
            let deg = self.total_degree().unwrap_or(0) as u64;
            if ch <= deg {
                return Err(AlgError::BadPrime {
                    p: ch as u32,
                    reason: format!("characteristic does not exceed degree {deg}"),
                });
            }
        }
        Ok(self.diff_unchecked(var))
    }

    pub(crate) fn diff_unchecked(&self, var: usize) -> Self {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.get(var) > 0)
            .filter_map(|(e, c)| {
                let k = e.get(var);
                let c = f.mul(c, &f.from_i64(k as i64));
                if f.is_zero(&c) {
                    None
                } else {
                    Some((e.with(var, k - 1), c))
                }
            })
            .collect();
        MPoly {
            field: f.clone(),
            n_vars: self.n_vars,
            terms,
        }
    }

    /// All first partials.
    pub fn gradient(&self) -> Result<Vec<Self>, AlgError> {
        (0..self.n_vars).map(|i| self.diff(i)).collect()
    }

    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem, AlgError> {
        if point.len() != self.n_vars {
            return Err(AlgError::VarCountMismatch(point.len(), self.n_vars));
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.exps().iter().enumerate() {
                if k > 0 {
                    t = f.mul(&t, &f.pow(&point[i], k as u32));
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Compose: replace `x_i` by `images[i]`. The images all live in one
    /// (possibly different-sized) ring over the same field.
    pub fn substitute(&self, images: &[MPoly<F>]) -> Result<MPoly<F>, AlgError> {
        if images.len() != self.n_vars {
            return Err(AlgError::VarCountMismatch(images.len(), self.n_vars));
        }
        let target_vars = match images.first() {
            Some(p) => p.n_vars,
            None => 0,
        };
        for im in images {
            if im.n_vars != target_vars {
                return Err(AlgError::VarCountMismatch(im.n_vars, target_vars));
            }
            if im.field != self.field {
                return Err(AlgError::FieldMismatch("substitution image".into()));
            }
        }
        let mut powers: Vec<Vec<MPoly<F>>> = images
            .iter()
            .map(|p| vec![MPoly::one(self.field.clone(), target_vars), p.clone()])
            .collect();
        let mut acc: HashMap<ExpVec, F::Elem> = HashMap::new();
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(self.field.clone(), target_vars, c.clone());
            for (i, &k) in e.exps().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            for (te, tc) in t.terms {
                match acc.get_mut(&te) {
                    Some(v) => *v = self.field.add(v, &tc),
                    None => {
                        acc.insert(te, tc);
                    }
                }
            }
        }
        Ok(Self::from_map(self.field.clone(), target_vars, acc))
    }

    /// Rename variables into a ring with `n_new` variables: `x_i -> x_{map[i]}`.
    pub fn remap_vars(&self, n_new: usize, map: &[usize]) -> Result<Self, AlgError> {
        if map.len() != self.n_vars {
            return Err(AlgError::VarCountMismatch(map.len(), self.n_vars));
        }
        if let Some(&bad) = map.iter().find(|&&j| j >= n_new) {
            return Err(AlgError::VarOutOfRange {
                index: bad,
                n_vars: n_new,
            });
        }
        let it = self.terms.iter().map(|(e, c)| {
            let mut v = vec![0u16; n_new];
            for (i, &k) in e.exps().iter().enumerate() {
                v[map[i]] += k;
            }
            (ExpVec::new(v), c.clone())
        });
        Self::from_terms(self.field.clone(), n_new, it)
    }

    /// Coefficients reduced into F_p.
    pub fn reduce_mod(&self, fp: &PrimeField) -> Result<MPoly<PrimeField>, AlgError> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = self.field.reduce_mod(c, fp)?;
            if v != 0 {
                terms.insert(e.clone(), v);
            }
        }
        Ok(MPoly {
            field: *fp,
            n_vars: self.n_vars,
            terms,
        })
    }

    /// Map coefficients into another field.
    pub fn map_coeffs<G: Field>(&self, g: G, f: impl Fn(&F::Elem) -> G::Elem) -> MPoly<G> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), f(c)))
            .filter(|(_, c)| !g.is_zero(c))
            .collect();
        MPoly {
            field: g,
            n_vars: self.n_vars,
            terms,
        }
    }

    /// Exact division by a monomial (exponent subtraction).
    pub fn div_monomial(&self, m: &ExpVec) -> Result<Self, AlgError> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.div(m).ok_or(AlgError::InexactDivision)?, c.clone());
        }
        Ok(MPoly {
            field: self.field.clone(),
            n_vars: self.n_vars,
            terms,
        })
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a
    /// remainder. Used for the exact steps of fraction-free elimination.
    pub(crate) fn div_exact(&self, divisor: &Self) -> Result<Self, AlgError> {
        self.check_compat(divisor)?;
        let (lead_e, lead_c) = divisor.leading_term().ok_or(AlgError::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(lead_c).ok_or(AlgError::DivisionByZero)?;
        if let Some(c) = divisor.is_constant().then(|| divisor.constant_value()) {
            return Ok(self.scale(&f.inv(&c).ok_or(AlgError::DivisionByZero)?));
        }
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<ExpVec, F::Elem> = BTreeMap::new();
        while let Some((e, c)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe = e.div(lead_e).ok_or(AlgError::InexactDivision)?;
            let qc = f.mul(&c, &lead_inv);
            for (de, dc) in &divisor.terms {
                let te = de.mul(&qe);
                let tc = f.neg(&f.mul(dc, &qc));
                add_into(f, &mut rem, &te, &tc);
            }
            debug_assert!(!rem.contains_key(&e));
            quot.insert(qe, qc);
        }
        Ok(MPoly {
            field: f.clone(),
            n_vars: self.n_vars,
            terms: quot,
        })
    }

    /// Largest exponent of `x_var` appearing.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|e| e.get(var) as u32)
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `x_var^k`, as a polynomial free of `x_var`.
    pub fn coeff_in(&self, var: usize, k: u16) -> Self {
        MPoly {
            field: self.field.clone(),
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.get(var) == k)
                .map(|(e, c)| (e.with(var, 0), c.clone()))
                .collect(),
        }
    }

    /// Indices of variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.n_vars)
            .filter(|&i| self.terms.keys().any(|e| e.get(i) > 0))
            .collect()
    }

    /// Minimum over terms of the total degree in `vars`; `None` for zero.
    pub fn min_degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms.keys().map(|e| e.degree_in(vars)).min()
    }

    /// Scale so that the leading (grevlex-largest) coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }
}

fn add_into<F: Field>(f: &F, terms: &mut BTreeMap<ExpVec, F::Elem>, e: &ExpVec, c: &F::Elem) {
    match terms.get_mut(e) {
        Some(v) => {
            let s = f.add(v, c);
            if f.is_zero(&s) {
                terms.remove(e);
            } else {
                *v = s;
            }
        }
        None => {
            if !f.is_zero(c) {
                terms.insert(e.clone(), c.clone());
            }
        }
    }
}

/// Apply the linear substitution `x_i -> sum_j A[i][j] x_j` for a constant,
/// invertible square matrix `A` of size `n_vars`.
pub fn linear_change<F: Field>(f: &MPoly<F>, a: &PolyMatrix<F>) -> Result<MPoly<F>, AlgError> {
    let n = f.n_vars();
    if a.rows() != n || a.cols() != n {
        return Err(AlgError::Shape(format!(
            "{}x{} matrix for {} variables",
            a.rows(),
            a.cols(),
            n
        )));
    }
    let consts = a.constant_entries()?;
    let det = super::linalg::dense_det(f.field(), &consts);
    if f.field().is_zero(&det) {
        return Err(AlgError::Singular);
    }
    let images: Vec<MPoly<F>> = (0..n)
        .map(|i| {
            let it = (0..n).map(|j| (ExpVec::var(n, j), consts.get(i, j).clone()));
            MPoly::from_terms(f.field().clone(), n, it).expect("sizes match")
        })
        .collect();
    f.substitute(&images)
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a, F: Field> $tr<&'a MPoly<F>> for &'a MPoly<F> {
            type Output = MPoly<F>;
            /// Panics if the operands live in different rings; use the
            /// `checked_*` methods for fallible arithmetic.
            fn $m(self, rhs: &'a MPoly<F>) -> MPoly<F> {
                self.$checked(rhs)
                    .expect("polynomials from different rings")
            }
        }
        impl<F: Field> $tr<MPoly<F>> for MPoly<F> {
            type Output = MPoly<F>;
            fn $m(self, rhs: MPoly<F>) -> MPoly<F> {
                self.$checked(&rhs)
                    .expect("polynomials from different rings")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<F: Field> Neg for &MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        MPoly {
            field: self.field.clone(),
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), self.field.neg(c)))
                .collect(),
        }
    }
}

impl<F: Field> Neg for MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        -&self
    }
}
