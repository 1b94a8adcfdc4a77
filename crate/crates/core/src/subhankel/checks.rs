use serde::Serialize;

use super::{SubHankelBundle, SubHankelError};
use crate::exactalg::{
    monomial_content, no_common_factor_probabilistic, ExpVec, Field, MPoly, PrimeField, Rationals,
    P_WORK,
};
use crate::polarity::{hessian_det, hessian_matrix, Hypersurface, SymbolicGuard};
use crate::rng::{random_vector, stream_rng};

/// Outcome of the identities among the partials f_i = ∂f^(r)/∂x_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub r: usize,
    /// f_i = (−1)^r x_r ∂φ^(r−1)/∂x_{i+1} for i ≤ r−2.
    pub part_i_ok: bool,
    /// gcd(f_0..f_i) is the monomial x_r^{r−i−1} and f_0..f_i only involve
    /// x_{r−i}..x_r.
    pub part_ii_gcd_ok: bool,
    /// After removing that monomial no common factor survives.
    pub part_ii_cofactor_free_ok: bool,
    /// x_r f_i = −Σ_{k<i} (2i−k)/i · x_{r−i+k} f_k for 1 ≤ i ≤ r−1.
    pub part_iii_a_ok: bool,
    /// x_r f_r = Σ_{k≤r−2} (r−1−k) x_k f_k.
    pub part_iii_b_ok: bool,
    /// (identity id, offending difference or content)
    pub failures: Vec<(String, String)>,
}

impl LemmaReport {
    pub fn all_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

const COFACTOR_TRIALS: usize = 12;

pub fn verify_lemma(b: &SubHankelBundle) -> LemmaReport {
    let r = b.r();
    let n = r + 1;
    let q = Rationals;
    let fs = b.partials();
    let xr = MPoly::var(q, n, r);
    let x = |i: usize| MPoly::var(q, n, i);
    let mut failures = Vec::new();

    let mut part_i = true;
    let sign = if r.is_multiple_of(2) { q.one() } else { q.from_i64(-1) };
    let phi = b.phi(r - 1);
    for i in 0..r - 1 {
        let rhs = (&xr * &phi.diff(i + 1).expect("rational")).scale(&sign);
        if fs[i] != rhs {
            part_i = false;
            failures.push((format!("i[{i}]"), (&fs[i] - &rhs).to_string()));
        }
    }

    let mut gcd_ok = true;
    let mut cofactor_ok = true;
    for i in 0..r {
        let head = &fs[..=i];
        let expected = ExpVec::var(n, r).scaled((r - i - 1) as u16);
        match monomial_content(head) {
            Ok(c) if c == expected => {
                let divided: Vec<_> = head
                    .iter()
                    .map(|f| f.div_monomial(&c).expect("content divides"))
                    .collect();
                match no_common_factor_probabilistic(&divided, COFACTOR_TRIALS, 0x5eed + i as u64) {
                    Ok(true) => {}
                    Ok(false) | Err(_) => {
                        cofactor_ok = false;
                        failures.push((format!("ii-cofactor[{i}]"), "common factor".into()));
                    }
                }
            }
            Ok(c) => {
                gcd_ok = false;
                failures.push((
                    format!("ii-gcd[{i}]"),
                    MPoly::monomial(q, c, q.one()).to_string(),
                ));
            }
            Err(e) => {
                gcd_ok = false;
                failures.push((format!("ii-gcd[{i}]"), e.to_string()));
            }
        }
        for (k, f) in head.iter().enumerate() {
            if f.support_vars().iter().any(|&v| v < r - i) {
                gcd_ok = false;
                failures.push((format!("ii-support[{i},{k}]"), f.to_string()));
            }
        }
    }

    let mut iii_a = true;
    for i in 1..r {
        let lhs = &xr * &fs[i];
        let mut rhs = MPoly::zero(q, n);
        for k in 0..i {
            let c = q
                .from_ratio(-((2 * i - k) as i64), i as i64)
                .expect("i > 0");
            rhs = &rhs + &(&x(r - i + k) * &fs[k]).scale(&c);
        }
        if lhs != rhs {
            iii_a = false;
            failures.push((format!("iii-a[{i}]"), (&lhs - &rhs).to_string()));
        }
    }

    let lhs = &xr * &fs[r];
    let mut rhs = MPoly::zero(q, n);
    for k in 0..=r - 2 {
        rhs = &rhs + &(&x(k) * &fs[k]).scale(&q.from_i64((r - 1 - k) as i64));
    }
    let iii_b = lhs == rhs;
    if !iii_b {
        failures.push(("iii-b".into(), (&lhs - &rhs).to_string()));
    }

    LemmaReport {
        r,
        part_i_ok: part_i,
        part_ii_gcd_ok: gcd_ok,
        part_ii_cofactor_free_ok: cofactor_ok,
        part_iii_a_ok: iii_a,
        part_iii_b_ok: iii_b,
        failures,
    }
}

/// The two explicit maximal minors of Φ^[i].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorReport {
    pub r: usize,
    pub i: usize,
    /// Minor with the first row deleted.
    pub delta1: String,
    /// δ₁ = ±x_r^i.
    pub delta1_ok: bool,
    /// Minor with the last row deleted.
    pub delta2: String,
    /// x_r does not divide δ₂.
    pub delta2_not_divisible_ok: bool,
    /// Coefficient of x_{r−1}^i in δ₂.
    pub delta2_coeff: String,
    /// That coefficient is ±(i+1).
    pub delta2_coeff_ok: bool,
}

impl MinorReport {
    pub fn ok(&self) -> bool {
        self.delta1_ok && self.delta2_not_divisible_ok && self.delta2_coeff_ok
    }
}

pub fn minor_checks(b: &SubHankelBundle, i: usize) -> Result<MinorReport, SubHankelError> {
    let r = b.r();
    let n = r + 1;
    let q = Rationals;
    let phi = b.presentation(i)?;
    let d1 = phi.delete_row(0).det()?;
    let d2 = phi.delete_row(i).det()?;
    let xr_i = ExpVec::var(n, r).scaled(i as u16);
    let c1 = d1.coeff(&xr_i);
    let delta1_ok = d1.num_terms() == 1 && (q.is_one(&c1) || q.is_one(&q.neg(&c1)));
    let not_div = d2.terms().any(|(e, _)| e.get(r) == 0);
    let c2 = d2.coeff(&ExpVec::var(n, r - 1).scaled(i as u16));
    let target = q.from_i64(i as i64 + 1);
    let coeff_ok = c2 == target || c2 == q.neg(&target);
    Ok(MinorReport {
        r,
        i,
        delta1: d1.to_string(),
        delta1_ok,
        delta2: d2.to_string(),
        delta2_not_divisible_ok: not_div,
        delta2_coeff: q.format_elem(&c2),
        delta2_coeff_ok: coeff_ok,
    })
}

/// Comparison of the maximal minors Δ_j of Φ^[i] (row j deleted) with the
/// generators g_j = f_j / x_r^{r−i−1} of J_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertBurchReport {
    pub r: usize,
    pub i: usize,
    /// Fixed matching convention.
    pub convention: &'static str,
    /// The single scalar λ, when it exists.
    pub lambda: Option<String>,
    pub ok: bool,
    pub failures: Vec<String>,
}

pub const HB_CONVENTION: &str =
    "g_j = lambda * (-1)^j * Delta_j, Delta_j = minor of Phi[i] without row j";

pub fn hilbert_burch_check(
    b: &SubHankelBundle,
    i: usize,
) -> Result<HilbertBurchReport, SubHankelError> {
    let r = b.r();
    let n = r + 1;
    let q = Rationals;
    let minors = b.presentation(i)?.maximal_minors()?;
    let fs = b.partials();
    let content = ExpVec::var(n, r).scaled((r - i - 1) as u16);
    let mut failures = Vec::new();
    let mut gens = Vec::with_capacity(i + 1);
    for (j, f) in fs.iter().take(i + 1).enumerate() {
        match f.div_monomial(&content) {
            Ok(g) => gens.push(g),
            Err(_) => {
                failures.push(format!("f_{j} not divisible by the content"));
                gens.push(MPoly::zero(q, n));
            }
        }
    }
    let signed: Vec<MPoly<Rationals>> = minors
        .iter()
        .enumerate()
        .map(|(j, m)| if j % 2 == 0 { m.clone() } else { -m })
        .collect();
    let mut lambda = None;
    for (g, m) in gens.iter().zip(&signed) {
        if let (Some((eg, cg)), Some((em, cm))) = (g.leading_term(), m.leading_term()) {
            if eg == em {
                lambda = q.div(cg, cm);
            }
            break;
        }
    }
    match &lambda {
        None => failures.push("no common scalar".into()),
        Some(l) => {
            for (j, (g, m)) in gens.iter().zip(&signed).enumerate() {
                if *g != m.scale(l) {
                    failures.push(format!("generator {j} differs"));
                }
            }
        }
    }
    Ok(HilbertBurchReport {
        r,
        i,
        convention: HB_CONVENTION,
        lambda: lambda.as_ref().map(|l| q.format_elem(l)),
        ok: failures.is_empty(),
        failures,
    })
}

/// h(f^(r)) = c·x_r^{(r+1)(r−2)} and the anti-triangular shape of the
/// Hessian matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HessianClosedForm {
    pub r: usize,
    pub exponent: u32,
    pub c: Option<String>,
    pub closed_form_ok: bool,
    pub anti_triangular_ok: bool,
    /// "symbolic" or "probabilistic mod p".
    pub method: String,
}

/// Largest order for which the Hessian determinant is expanded exactly.
pub const SYMBOLIC_HESSIAN_MAX_R: usize = 6;

pub fn hessian_closed_form(b: &SubHankelBundle) -> Result<HessianClosedForm, SubHankelError> {
    let r = b.r();
    let n = r + 1;
    let q = Rationals;
    let h = Hypersurface::new(b.f().clone())?;
    let hm = hessian_matrix(&h)?;
    let anti = (0..n).all(|i| (0..n).filter(|j| i + j < r).all(|j| hm.get(i, j).is_zero()));
    let exponent = ((r + 1) * (r - 2)) as u32;
    let target = ExpVec::var(n, r).scaled(exponent as u16);
    if r <= SYMBOLIC_HESSIAN_MAX_R {
        let guard = SymbolicGuard {
            max_r: SYMBOLIC_HESSIAN_MAX_R,
            ..SymbolicGuard::default()
        };
        let det = hessian_det(&h, &guard)?;
        let c = det.coeff(&target);
        let ok = det.num_terms() == 1 && !q.is_zero(&c);
        return Ok(HessianClosedForm {
            r,
            exponent,
            c: ok.then(|| q.format_elem(&c)),
            closed_form_ok: ok,
            anti_triangular_ok: anti,
            method: "symbolic".into(),
        });
    }
    let fp = PrimeField::new(P_WORK)?;
    let hm_p: Vec<Vec<MPoly<PrimeField>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| hm.get(i, j).reduce_mod(&fp))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    let mut c: Option<u32> = None;
    let mut ok = true;
    for s in 0..20u64 {
        let mut rng = stream_rng(0xc0de, s);
        let x = random_vector(&mut rng, &fp, n);
        if x[r] == 0 {
            continue;
        }
        let rows = hm_p
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.eval(&x))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let det = crate::exactalg::dense_det(&fp, &crate::exactalg::DenseMatrix::from_rows(rows)?);
        let ratio = fp.mul_raw(
            det,
            fp.inv_raw(fp.pow_raw(x[r], exponent)).expect("nonzero"),
        );
        match c {
            None => c = Some(ratio),
            Some(c0) if c0 != ratio => ok = false,
            _ => {}
        }
    }
    let ok = ok && c.is_some_and(|v| v != 0);
    Ok(HessianClosedForm {
        r,
        exponent,
        c: c.filter(|_| ok).map(|v| fp.format_elem(&v)),
        closed_form_ok: ok,
        anti_triangular_ok: anti,
        method: format!("probabilistic mod {P_WORK}"),
    })
}

/// f^(r) has degree one in x_0 with a monomial coefficient ±x_r^{r−1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibilityReport {
    pub r: usize,
    pub x0_degree: u32,
    pub x0_coefficient: String,
    pub ok: bool,
}

pub fn irreducibility_structure(b: &SubHankelBundle) -> IrreducibilityReport {
    let r = b.r();
    let q = Rationals;
    let f = b.f();
    let deg = f.degree_in(0);
    let coeff = f.coeff_in(0, 1);
    let target = ExpVec::var(r + 1, r).scaled((r - 1) as u16);
    let c = coeff.coeff(&target);
    let ok = deg == 1 && coeff.num_terms() == 1 && (q.is_one(&c) || q.is_one(&q.neg(&c)));
    IrreducibilityReport {
        r,
        x0_degree: deg,
        x0_coefficient: coeff.to_string(),
        ok,
    }
}
