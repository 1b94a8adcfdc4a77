use serde::Deserialize;
use serde_json::Value;

use polaris_core::constructions::{
    gn_build, gn_build_parts, permutti_build, permutti_build_parts, GnParts, GnPolynomial, GnSpec,
    PermuttiParts, PermuttiPolynomial, PermuttiSpec,
};
use polaris_core::exactalg::{parse_poly, Field, MPoly, Rationals};

use crate::CliError;

/// A construction file: seeded parameters, or explicit forms in the
/// polynomial text format when `seed` is absent.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SpecFile {
    Gn(GnFile),
    Permutti(PermuttiFile),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GnFile {
    pub r: usize,
    pub t: usize,
    pub m: usize,
    pub n: u32,
    pub d: u32,
    pub seed: Option<u64>,
    /// h_0..h_t in y_0..y_m, written x0..xm.
    pub h: Option<Vec<String>>,
    /// ψ_0..ψ_m in x0..xr.
    pub psi: Option<Vec<String>>,
    /// a[ℓ−1][u−1][v], integers or "n/m" strings.
    pub a: Option<Vec<Vec<Vec<Value>>>>,
    /// P_0..P_μ in x0..x_{r+t−m}, with z_ℓ written x_{r+ℓ}.
    pub p: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermuttiFile {
    pub r: usize,
    pub t: usize,
    pub n: u32,
    pub d: u32,
    pub seed: Option<u64>,
    /// M_0..M_t in x0..xr.
    pub m: Option<Vec<String>>,
    /// P_0..P_μ in x0..xr.
    pub p: Option<Vec<String>>,
}

pub fn read_spec(text: &str) -> Result<SpecFile, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad spec file: {e}")))
}

fn polys(list: &[String], n_vars: usize) -> Result<Vec<MPoly<Rationals>>, CliError> {
    list.iter()
        .map(|s| parse_poly(s, n_vars, Rationals).map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

fn scalar(v: &Value) -> Result<<Rationals as Field>::Elem, CliError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(CliError::Usage(format!("bad constant {other}"))),
    };
    Rationals
        .parse_elem(&text)
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn missing(what: &str) -> CliError {
    CliError::Usage(format!(
        "explicit spec without `{what}` (give `seed` or all forms)"
    ))
}

impl GnFile {
    pub fn seeded(&self) -> Option<GnSpec> {
        self.seed.map(|seed| GnSpec {
            r: self.r,
            t: self.t,
            m: self.m,
            n: self.n,
            d: self.d,
            seed,
        })
    }

    pub fn build(&self) -> Result<GnPolynomial, CliError> {
        if let Some(s) = self.seeded() {
            return Ok(gn_build(&s)?);
        }
        let a = self
            .a
            .as_ref()
            .ok_or_else(|| missing("a"))?
            .iter()
            .map(|l| {
                l.iter()
                    .map(|row| row.iter().map(scalar).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let parts = GnParts {
            r: self.r,
            t: self.t,
            m: self.m,
            n: self.n,
            d: self.d,
            h: polys(self.h.as_ref().ok_or_else(|| missing("h"))?, self.m + 1)?,
            psi: polys(self.psi.as_ref().ok_or_else(|| missing("psi"))?, self.r + 1)?,
            a,
            p: polys(
                self.p.as_ref().ok_or_else(|| missing("p"))?,
                self.r + 1 + self.t.saturating_sub(self.m),
            )?,
        };
        Ok(gn_build_parts(parts)?)
    }
}

impl PermuttiFile {
    pub fn seeded(&self) -> Option<PermuttiSpec> {
        self.seed.map(|seed| PermuttiSpec {
            r: self.r,
            t: self.t,
            n: self.n,
            d: self.d,
            seed,
        })
    }

    pub fn build(&self) -> Result<PermuttiPolynomial, CliError> {
        if let Some(s) = self.seeded() {
            return Ok(permutti_build(&s)?);
        }
        let parts = PermuttiParts {
            r: self.r,
            t: self.t,
            n: self.n,
            d: self.d,
            m: polys(self.m.as_ref().ok_or_else(|| missing("m"))?, self.r + 1)?,
            p: polys(self.p.as_ref().ok_or_else(|| missing("p"))?, self.r + 1)?,
        };
        Ok(permutti_build_parts(parts)?)
    }
}
