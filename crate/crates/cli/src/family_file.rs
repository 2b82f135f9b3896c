//! Custom family files.
//!
//! ```text
//! # Bernoulli-Carlitz over F_3, truncated at z^8
//! order: 8
//! field: 3
//! 0: 1
//! 2: 1/T^3+2*T
//! ```
//!
//! `field:` is `p` or `p,e,modulus` with the modulus written in `x`
//! (`field: 2,2,x^2+x+1`). Every other non-comment line is
//! `exponent: ratfunc`; absent exponents are zero.

use std::fmt;
use std::path::Path;

use carlitz_core::{Error, FieldSpec, Poly, RatFunc, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyFileError {
    Io(String),
    /// A malformed line, with its 1-based number.
    Parse {
        line: usize,
        message: String,
    },
    Normalization,
}

impl fmt::Display for FamilyFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyFileError::Io(msg) => write!(f, "cannot read family file: {msg}"),
            FamilyFileError::Parse { line, message } => write!(f, "ParseError: line {line}: {message}"),
            FamilyFileError::Normalization => write!(f, "{}", Error::Normalization),
        }
    }
}

impl std::error::Error for FamilyFileError {}

/// Parses `field:` values: `p` or `p,e,modulus`.
pub fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let p: u64 = parts[0].parse().map_err(|_| format!("bad characteristic {:?}", parts[0]))?;
    match parts.as_slice() {
        [_] => FieldSpec::prime(p).map_err(|e| e.to_string()),
        [_, e, modulus] => {
            let e: u32 = e.parse().map_err(|_| format!("bad extension degree {e:?}"))?;
            field_with_modulus(p, e, modulus)
        }
        _ => Err(format!("expected p or p,e,modulus, found {s:?}")),
    }
}

/// `F_{p^e}` with a modulus given as a polynomial in `x` over `F_p`.
pub fn field_with_modulus(p: u64, e: u32, modulus: &str) -> Result<FieldSpec, String> {
    let base = FieldSpec::prime(p).map_err(|e| e.to_string())?;
    let m = Poly::parse_in(&base, modulus, 'x').map_err(|e| e.to_string())?;
    let coeffs: Vec<u64> = m.coeffs().iter().map(|c| c.packed() as u64).collect();
    FieldSpec::new(p, e, Some(&coeffs)).map_err(|e| e.to_string())
}

pub fn parse_family_text(text: &str) -> Result<TruncSeries, FamilyFileError> {
    let mut order: Option<usize> = None;
    let mut field: Option<FieldSpec> = None;
    let mut terms: Vec<(usize, usize, RatFunc)> = Vec::new();
    let err = |line: usize, message: String| FamilyFileError::Parse { line, message };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            return Err(err(line, format!("expected `key: value`, found {content:?}")));
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "order" => {
                if order.is_some() {
                    return Err(err(line, "duplicate order header".into()));
                }
                order = Some(value.parse().map_err(|_| err(line, format!("bad order {value:?}")))?);
            }
            "field" => {
                if field.is_some() {
                    return Err(err(line, "duplicate field header".into()));
                }
                field = Some(parse_field(value).map_err(|m| err(line, m))?);
            }
            _ => {
                let exp: usize = key.parse().map_err(|_| err(line, format!("bad exponent {key:?}")))?;
                let Some(f) = &field else {
                    return Err(err(line, "coefficient before the field header".into()));
                };
                if let Some((_, first, _)) = terms.iter().find(|(e, _, _)| *e == exp) {
                    return Err(err(line, format!("duplicate exponent {exp} (first on line {first})")));
                }
                let c = RatFunc::parse(f, value).map_err(|e| err(line, e.to_string()))?;
                terms.push((exp, line, c));
            }
        }
    }
    let order = order.ok_or_else(|| err(0, "missing `order:` header".into()))?;
    let field = field.ok_or_else(|| err(0, "missing `field:` header".into()))?;
    if let Some((exp, line, _)) = terms.iter().find(|(e, _, _)| *e >= order) {
        return Err(err(*line, format!("exponent {exp} is not below order {order}")));
    }
    let lambda0 = terms.iter().find(|(e, _, _)| *e == 0);
    if !lambda0.is_some_and(|(_, _, c)| c.is_one()) {
        return Err(FamilyFileError::Normalization);
    }
    let sparse: Vec<(usize, RatFunc)> = terms.into_iter().map(|(e, _, c)| (e, c)).collect();
    TruncSeries::from_sparse(&field, order, &sparse).map_err(|e| err(0, e.to_string()))
}

pub fn parse_family_file(path: &Path) -> Result<TruncSeries, FamilyFileError> {
    let text = std::fs::read_to_string(path).map_err(|e| FamilyFileError::Io(format!("{}: {e}", path.display())))?;
    parse_family_text(&text)
}

/// The file text for a lambda series; zero coefficients are omitted.
pub fn render_family(lambda: &TruncSeries) -> String {
    let f = lambda.field();
    let mut out = format!("order: {}\n", lambda.order());
    if f.is_prime_field() {
        out.push_str(&format!("field: {}\n", f.p()));
    } else {
        let base = FieldSpec::prime(f.p() as u64).unwrap();
        let m = Poly::from_ints(&base, &f.modulus().iter().map(|&c| c as i64).collect::<Vec<_>>());
        out.push_str(&format!("field: {},{},{}\n", f.p(), f.e(), m.display_in('x')));
    }
    for (n, c) in lambda.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.push_str(&format!("{n}: {c}\n"));
        }
    }
    out
}
