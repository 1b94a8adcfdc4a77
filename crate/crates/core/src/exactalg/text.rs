//! Plain-text polynomial format.
//!
//! A polynomial is a signed sum of terms; a term is an optional coefficient
//! (`n` or `n/m`) followed by `*`-joined factors `x<i>` or `x<i>^<e>`:
//!
//! ```text
//! 2*x1*x2*x3 - x0*x3^2 - x2^3
//! ```
//!
//! Printing uses descending grevlex order and omits unit coefficients, so
//! parse and print are inverse on canonical forms.

use std::fmt;

use super::expvec::ExpVec;
use super::field::Field;
use super::mpoly::MPoly;
use super::AlgError;

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let field = self.field();
        for (k, (e, c)) in self.terms().rev().enumerate() {
            let neg = field.is_negative(c);
            let abs = if neg { field.neg(c) } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(out, "-")?,
                (0, false) => {}
                (_, true) => write!(out, " - ")?,
                (_, false) => write!(out, " + ")?,
            }
            let mono = format_monomial(e);
            if mono.is_empty() {
                write!(out, "{}", field.format_elem(&abs))?;
            } else if field.is_one(&abs) {
                write!(out, "{mono}")?;
            } else {
                write!(out, "{}*{mono}", field.format_elem(&abs))?;
            }
        }
        Ok(())
    }
}

fn format_monomial(e: &ExpVec) -> String {
    let parts: Vec<String> = e
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{i}")
            } else {
                format!("x{i}^{k}")
            }
        })
        .collect();
    parts.join("*")
}

struct RawTerm {
    negative: bool,
    coeff: Option<String>,
    factors: Vec<(usize, u16)>,
}

fn lex_terms(s: &str) -> Result<Vec<RawTerm>, AlgError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(AlgError::Parse("empty polynomial".into()));
    }
    let bytes = compact.as_bytes();
    let mut terms = Vec::new();
    let mut start = 0;
    let mut negative = false;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        negative = bytes[0] == b'-';
        start = 1;
    }
    let mut i = start;
    loop {
        if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
            terms.push(parse_term(&compact[start..i], negative)?);
            if i == bytes.len() {
                break;
            }
            negative = bytes[i] == b'-';
            start = i + 1;
        }
        i += 1;
    }
    Ok(terms)
}

fn parse_term(s: &str, negative: bool) -> Result<RawTerm, AlgError> {
    if s.is_empty() {
        return Err(AlgError::Parse("empty term".into()));
    }
    let mut coeff: Option<String> = None;
    let mut factors = Vec::new();
    for (k, piece) in s.split('*').enumerate() {
        if piece.is_empty() {
            return Err(AlgError::Parse(format!("dangling `*` in `{s}`")));
        }
        if let Some(rest) = piece.strip_prefix('x') {
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e),
                None => (rest, "1"),
            };
            let idx: usize = idx
                .parse()
                .map_err(|_| AlgError::Parse(format!("bad variable `{piece}`")))?;
            let exp: u16 = exp
                .parse()
                .map_err(|_| AlgError::Parse(format!("bad exponent in `{piece}`")))?;
            factors.push((idx, exp));
        } else if k == 0 && piece.chars().all(|c| c.is_ascii_digit() || c == '/') {
            coeff = Some(piece.to_string());
        } else {
            return Err(AlgError::Parse(format!("unexpected `{piece}`")));
        }
    }
    Ok(RawTerm {
        negative,
        coeff,
        factors,
    })
}

/// Parse a polynomial in `n_vars` variables.
pub fn parse_poly<F: Field>(s: &str, n_vars: usize, field: F) -> Result<MPoly<F>, AlgError> {
    let raw = lex_terms(s)?;
    let mut terms = Vec::with_capacity(raw.len());
    for t in raw {
        let mut exps = vec![0u16; n_vars];
        for (i, e) in t.factors {
            if i >= n_vars {
                return Err(AlgError::VarOutOfRange { index: i, n_vars });
            }
            exps[i] += e;
        }
        let mut c = match t.coeff {
            Some(c) => field.parse_elem(&c)?,
            None => field.one(),
        };
        if t.negative {
            c = field.neg(&c);
        }
        terms.push((ExpVec::new(exps), c));
    }
    MPoly::from_terms(field, n_vars, terms)
}

/// Parse a polynomial file. Lines starting with `#` are comments; a comment
/// of the form `# vars = N` fixes the number of variables. Otherwise
/// `n_vars` is used, and failing that the largest index that occurs.
pub fn parse_poly_with_header<F: Field>(
    text: &str,
    n_vars: Option<usize>,
    field: F,
) -> Result<MPoly<F>, AlgError> {
    let mut header_vars = None;
    let mut body = String::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((k, v)) = comment.split_once('=') {
                if k.trim() == "vars" {
                    let n = v
                        .trim()
                        .parse()
                        .map_err(|_| AlgError::Parse(format!("bad header `{line}`")))?;
                    header_vars = Some(n);
                }
            }
            continue;
        }
        body.push_str(line);
        body.push(' ');
    }
    let n = match n_vars.or(header_vars) {
        Some(n) => n,
        None => {
            let raw = lex_terms(&body)?;
            raw.iter()
                .flat_map(|t| t.factors.iter().map(|&(i, _)| i + 1))
                .max()
                .unwrap_or(1)
        }
    };
    parse_poly(&body, n, field)
}
