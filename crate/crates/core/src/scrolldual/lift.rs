use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::chain::ProjectionChain;
use super::dual::{dual_sample, interpolate_dual, min_samples, HELD_OUT_SAMPLES};
use super::ScrollError;
use crate::exactalg::{is_prime, ExpVec, MPoly, PrimeField, Rationals};

/// Primes tried before giving up on reconstruction.
const MAX_PRIMES: usize = 80;

/// An integer dual form recovered from several interpolations mod p.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftedForm {
    #[serde(serialize_with = "as_text")]
    pub form: MPoly<Rationals>,
    pub primes: Vec<u32>,
    /// Prime used for the final held-out check, and its outcome.
    pub check_prime: u32,
    pub verified: bool,
}

fn as_text<S: serde::Serializer>(f: &MPoly<Rationals>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

/// n/d with |n|, d ≤ √(m/2) and n ≡ u·d mod m, if it exists.
pub fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        (r0, r1) = (r1, r2);
        (s0, s1) = (s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// Primes below 2^31 in decreasing order.
fn large_primes() -> impl Iterator<Item = u32> {
    (1u32 << 20..(1u32 << 31))
        .rev()
        .filter(|&p| is_prime(p as u64))
}

/// Interpolates the degree-d dual form modulo primes near 2^31, combines
/// the monic residues by CRT, and stops once rational reconstruction gives
/// the same answer for two consecutive primes. The result is scaled to a
/// primitive integer form and checked on fresh dual points mod a prime
/// not used for the lift.
pub fn lift_dual_form(
    chain: &ProjectionChain,
    d: u32,
    seed: u64,
) -> Result<LiftedForm, ScrollError> {
    let n_vars = chain.target_coords();
    let n_samples = min_samples(n_vars, d);
    let mut lead: Option<ExpVec> = None;
    let mut acc: BTreeMap<ExpVec, BigInt> = BTreeMap::new();
    let mut modulus = BigInt::one();
    let mut primes = Vec::new();
    let mut previous: Option<BTreeMap<ExpVec, BigRational>> = None;
    let mut tried = 0;
    let mut candidates = large_primes();
    for p in candidates.by_ref() {
        tried += 1;
        if tried > MAX_PRIMES {
            break;
        }
        let Ok(f) = interpolate_dual(chain, d, p, Some(n_samples), seed ^ p as u64) else {
            continue;
        };
        if f.kernel_dim_below != 0 {
            continue;
        }
        let this_lead = f.form.leading_term().map(|(e, _)| e.clone());
        match &lead {
            None => lead = this_lead,
            Some(l) if Some(l) != this_lead.as_ref() => continue,
            Some(_) => {}
        }
        let pb = BigInt::from(p);
        let inv = modulus.modinv(&pb).expect("distinct primes");
        let mut keys: Vec<ExpVec> = acc.keys().cloned().collect();
        keys.extend(f.form.terms().map(|(e, _)| e.clone()));
        keys.sort();
        keys.dedup();
        let mut next = BTreeMap::new();
        for e in keys {
            let a = acc.get(&e).cloned().unwrap_or_default();
            let b = BigInt::from(f.form.coeff(&e));
            let t = ((b - &a) * &inv).mod_floor(&pb);
            next.insert(e, a + &modulus * t);
        }
        acc = next;
        modulus *= &pb;
        primes.push(p);
        let recon: Option<BTreeMap<ExpVec, BigRational>> = acc
            .iter()
            .map(|(e, u)| rational_reconstruction(u, &modulus).map(|c| (e.clone(), c)))
            .collect();
        if let Some(r) = recon {
            if previous.as_ref() == Some(&r) {
                let form = primitive(n_vars, r)?;
                let check_prime = candidates
                    .next()
                    .ok_or_else(|| ScrollError::LiftFailed("out of primes".into()))?;
                let verified = check(chain, &form, check_prime, seed)?;
                return Ok(LiftedForm {
                    form,
                    primes,
                    check_prime,
                    verified,
                });
            }
            previous = Some(r);
        } else {
            previous = None;
        }
    }
    Err(ScrollError::LiftFailed(format!(
        "no stable reconstruction after {} primes",
        primes.len()
    )))
}

fn primitive(
    n_vars: usize,
    coeffs: BTreeMap<ExpVec, BigRational>,
) -> Result<MPoly<Rationals>, ScrollError> {
    let lcm = coeffs.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<(ExpVec, BigInt)> = coeffs
        .into_iter()
        .map(|(e, c)| (e, (c * &lcm).to_integer()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
    let terms = ints
        .into_iter()
        .map(|(e, c)| (e, BigRational::from_integer(c / &g)));
    Ok(MPoly::from_terms(Rationals, n_vars, terms)?)
}

fn check(
    chain: &ProjectionChain,
    form: &MPoly<Rationals>,
    p: u32,
    seed: u64,
) -> Result<bool, ScrollError> {
    let fp = PrimeField::new(p)?;
    let reduced = form.reduce_mod(&fp)?;
    if reduced.is_zero() {
        return Ok(false);
    }
    let pts = dual_sample(chain, HELD_OUT_SAMPLES, p, seed ^ 0x5eed)?;
    Ok(pts
        .points
        .iter()
        .all(|x| reduced.eval(x).is_ok_and(|v| v == 0)))
}
