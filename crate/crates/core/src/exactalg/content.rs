use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expvec::ExpVec;
use super::field::{Field, PrimeField};
use super::mpoly::MPoly;
use super::univariate::UPoly;
use super::AlgError;

/// Largest monomial dividing every input: the componentwise minimum of the
/// exponents over all terms.
pub fn monomial_content<F: Field>(fs: &[MPoly<F>]) -> Result<ExpVec, AlgError> {
    let first = fs
        .first()
        .ok_or_else(|| AlgError::Empty("monomial_content".into()))?;
    let mut acc: Option<ExpVec> = None;
    for f in fs {
        if f.n_vars() != first.n_vars() {
            return Err(AlgError::VarCountMismatch(f.n_vars(), first.n_vars()));
        }
        if f.is_zero() {
            return Err(AlgError::ZeroPolynomial);
        }
        for (e, _) in f.terms() {
            acc = Some(match acc {
                None => e.clone(),
                Some(a) => a.gcd(e),
            });
        }
    }
    Ok(acc.expect("at least one term"))
}

/// Modulus for the restriction test; large so that accidental common roots
/// of the restrictions are negligible.
const RESTRICTION_PRIME: u32 = 2_147_483_647;

/// One-sided probabilistic test that the inputs share no nonconstant factor.
///
/// Each trial keeps one variable free (cycling through the variables that
/// occur), sets the others to random residues, and takes the gcd of the
/// resulting univariate polynomials. Returns `false` as soon as some trial
/// yields a gcd of positive degree. Trials where every restriction vanishes
/// are skipped; if all trials are skipped the result is inconclusive.
pub fn no_common_factor_probabilistic<F: Field>(
    fs: &[MPoly<F>],
    trials: usize,
    seed: u64,
) -> Result<bool, AlgError> {
    let first = fs
        .first()
        .ok_or_else(|| AlgError::Empty("no_common_factor".into()))?;
    let n = first.n_vars();
    let fp = PrimeField::new(RESTRICTION_PRIME).expect("prime");
    let reduced: Vec<MPoly<PrimeField>> = fs
        .iter()
        .map(|f| f.reduce_mod(&fp))
        .collect::<Result<_, _>>()?;
    let mut vars: Vec<usize> = (0..n)
        .filter(|&i| reduced.iter().any(|f| f.degree_in(i) > 0))
        .collect();
    if vars.is_empty() {
        // all inputs constant
        vars.push(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut informative = 0;
    for trial in 0..trials {
        let free = vars[trial % vars.len()];
        let point: Vec<u32> = (0..n).map(|_| rng.gen_range(1..fp.modulus())).collect();
        let mut g: Option<UPoly<PrimeField>> = None;
        for f in &reduced {
            let u = restrict(f, free, &point, &fp);
            g = Some(match g {
                None => u,
                Some(acc) => acc.gcd(&u),
            });
        }
        let g = g.expect("non-empty input");
        match g.degree() {
            None => continue,
            Some(0) => informative += 1,
            Some(_) => return Ok(false),
        }
    }
    if informative == 0 {
        return Err(AlgError::Inconclusive(
            "every restriction vanished identically".into(),
        ));
    }
    Ok(true)
}

fn restrict(
    f: &MPoly<PrimeField>,
    free: usize,
    point: &[u32],
    fp: &PrimeField,
) -> UPoly<PrimeField> {
    let mut coeffs = vec![0u32; f.degree_in(free) as usize + 1];
    for (e, c) in f.terms() {
        let mut v = *c;
        for (i, &k) in e.exps().iter().enumerate() {
            if i != free && k > 0 {
                v = fp.mul_raw(v, fp.pow_raw(point[i], k as u32));
            }
        }
        let slot = &mut coeffs[e.get(free) as usize];
        *slot = fp.add_raw(*slot, v);
    }
    UPoly::new(*fp, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, Rationals};

    fn q(s: &str) -> MPoly<Rationals> {
        parse_poly(s, 4, Rationals).unwrap()
    }

    #[test]
    fn content_is_componentwise_min() {
        assert_eq!(
            monomial_content(&[q("x3^2"), q("x2*x3")]).unwrap(),
            ExpVec::new(vec![0, 0, 0, 1])
        );
        assert!(monomial_content(&[q("x0*x2 - x1^2"), q("x2")])
            .unwrap()
            .is_one());
        assert!(matches!(
            monomial_content::<Rationals>(&[]),
            Err(AlgError::Empty(_))
        ));
        assert_eq!(
            monomial_content(&[q("x0"), MPoly::zero(Rationals, 4)]),
            Err(AlgError::ZeroPolynomial)
        );
    }

    #[test]
    fn coprime_and_shared_factor() {
        assert!(no_common_factor_probabilistic(&[q("x0*x2 - x1^2"), q("x2*x3")], 8, 1).unwrap());
        let g = q("x2 + x3");
        let a = &q("x0") * &g;
        let b = &q("x1") * &g;
        assert!(!no_common_factor_probabilistic(&[a, b], 8, 1).unwrap());
    }

    #[test]
    fn monomial_factor_is_detected() {
        assert!(!no_common_factor_probabilistic(&[q("x3^2"), q("x2*x3")], 8, 3).unwrap());
    }
}
