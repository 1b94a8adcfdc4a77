use std::cmp::Ordering;

/// Exponent vector of a monomial. Ordered by graded reverse lexicographic order
/// with x0 > x1 > ... > x_{n-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpVec {
    exps: Box<[u16]>,
    total: u32,
}

impl ExpVec {
    pub fn new(exps: Vec<u16>) -> Self {
        let total = exps.iter().map(|&e| e as u32).sum();
        ExpVec {
            exps: exps.into_boxed_slice(),
            total,
        }
    }

    pub fn zero(n_vars: usize) -> Self {
        ExpVec::new(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        ExpVec::new(e)
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.total
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn get(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.total == 0
    }

    pub fn mul(&self, other: &ExpVec) -> ExpVec {
        debug_assert_eq!(self.len(), other.len());
        ExpVec::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &ExpVec) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &ExpVec) -> Option<ExpVec> {
        if !other.divides(self) {
            return None;
        }
        Some(ExpVec::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    /// Componentwise minimum (gcd of monomials).
    pub fn gcd(&self, other: &ExpVec) -> ExpVec {
        ExpVec::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// `self^k`.
    pub fn scaled(&self, k: u16) -> ExpVec {
        ExpVec::new(self.exps.iter().map(|&e| e * k).collect())
    }

    /// Total degree restricted to the variables in `vars`.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.exps[i] as u32).sum()
    }

    pub(crate) fn with(&self, i: usize, e: u16) -> ExpVec {
        let mut v = self.exps.to_vec();
        v[i] = e;
        ExpVec::new(v)
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total.cmp(&other.total) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in ascending
/// grevlex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<ExpVec> {
    fn rec(n: usize, d: u32, i: usize, cur: &mut Vec<u16>, out: &mut Vec<ExpVec>) {
        if i == n - 1 {
            cur[i] = d as u16;
            out.push(ExpVec::new(cur.clone()));
            return;
        }
        for e in 0..=d {
            cur[i] = e as u16;
            rec(n, d - e, i + 1, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        return if d == 0 {
            vec![ExpVec::zero(0)]
        } else {
            vec![]
        };
    }
    let mut out = Vec::new();
    rec(n, d, 0, &mut vec![0; n], &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_examples() {
        let m = |v: &[u16]| ExpVec::new(v.to_vec());
        // degree first
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        // x0^2 > x0x1 > x1^2 > x0x2 > x1x2 > x2^2
        let mut v = vec![
            m(&[0, 0, 2]),
            m(&[1, 1, 0]),
            m(&[0, 1, 1]),
            m(&[2, 0, 0]),
            m(&[1, 0, 1]),
            m(&[0, 2, 0]),
        ];
        v.sort();
        v.reverse();
        assert_eq!(
            v,
            vec![
                m(&[2, 0, 0]),
                m(&[1, 1, 0]),
                m(&[0, 2, 0]),
                m(&[1, 0, 1]),
                m(&[0, 1, 1]),
                m(&[0, 0, 2])
            ]
        );
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(5, 5).len(), 126);
        assert_eq!(monomials_of_degree(1, 4).len(), 1);
    }

    #[test]
    fn division_and_min() {
        let a = ExpVec::new(vec![2, 1, 0]);
        let b = ExpVec::new(vec![1, 1, 0]);
        assert_eq!(a.div(&b), Some(ExpVec::new(vec![1, 0, 0])));
        assert_eq!(b.div(&a), None);
        assert_eq!(
            a.gcd(&ExpVec::new(vec![0, 3, 1])),
            ExpVec::new(vec![0, 1, 0])
        );
    }
}
