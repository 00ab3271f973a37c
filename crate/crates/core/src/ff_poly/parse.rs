//! Text form of polynomials: `T^3+2*T+1` over prime fields,
//! `[1,2]*T^2+[0,1]` over extensions (coordinates lowest power of `y` first).
//!
//! Monomials appear in strictly decreasing degree with nonzero coefficients;
//! a coefficient of 1 in front of `T` is omitted. Whitespace is ignored.

use std::fmt;
use std::sync::Arc;

use super::field::{FieldElement, GaloisField};
use super::poly::Poly;
use crate::error::{Error, Result};

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.field();
        let raw = self.raw();
        if raw.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..raw.len()).rev() {
            let c = raw[k];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coeff = format_coeff(field, FieldElement(c));
            match k {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if c != 1 {
                        write!(f, "{coeff}*")?;
                    }
                    if k == 1 {
                        write!(f, "T")?;
                    } else {
                        write!(f, "T^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn format_coeff(field: &GaloisField, c: FieldElement) -> String {
    if field.is_prime_field() {
        c.0.to_string()
    } else {
        let parts: Vec<String> = field.coords(c).iter().map(|d| d.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl Poly {
    /// Strict parser for the canonical text form.
    pub fn parse(input: &str, field: &Arc<GaloisField>) -> Result<Poly> {
        let err = |reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty input"));
        }
        if s == "0" {
            return Ok(Poly::zero(Arc::clone(field)));
        }
        let mut coeffs: Vec<u32> = Vec::new();
        let mut last_degree: Option<usize> = None;
        for term in split_terms(&s) {
            if term.is_empty() {
                return Err(err("empty monomial"));
            }
            let (coeff_text, degree) = match term.find('T') {
                None => (Some(term), 0usize),
                Some(pos) => {
                    let (head, tail) = term.split_at(pos);
                    let coeff_text = if head.is_empty() {
                        None
                    } else {
                        Some(head.strip_suffix('*').ok_or_else(|| err("expected '*' before T"))?)
                    };
                    let degree = match &tail[1..] {
                        "" => 1,
                        rest => {
                            let digits = rest.strip_prefix('^').ok_or_else(|| err("expected '^'"))?;
                            let k = parse_uint(digits).ok_or_else(|| err("bad exponent"))?;
                            if k < 2 {
                                return Err(err("exponents 0 and 1 are written without '^'"));
                            }
                            k as usize
                        }
                    };
                    (coeff_text, degree)
                }
            };
            if let Some(prev) = last_degree {
                if degree >= prev {
                    return Err(err("monomials must appear in strictly decreasing degree"));
                }
            }
            last_degree = Some(degree);
            let c = match coeff_text {
                None => FieldElement::ONE,
                Some(text) => {
                    let c = parse_coeff(text, field).ok_or_else(|| err("bad coefficient"))?;
                    if c.is_zero() {
                        return Err(err("zero coefficient"));
                    }
                    if c == FieldElement::ONE && degree > 0 {
                        return Err(err("coefficient 1 is omitted before T"));
                    }
                    c
                }
            };
            if coeffs.is_empty() {
                coeffs = vec![0; degree + 1];
            }
            coeffs[degree] = c.0;
        }
        Ok(Poly::from_raw(Arc::clone(field), coeffs))
    }
}

/// Split on `+` outside brackets.
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_uint(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    s.parse().ok()
}

fn parse_coeff(text: &str, field: &GaloisField) -> Option<FieldElement> {
    if field.is_prime_field() {
        let v = parse_uint(text)?;
        (v < field.q()).then_some(FieldElement(v as u32))
    } else {
        let inner = text.strip_prefix('[')?.strip_suffix(']')?;
        let coords: Option<Vec<u64>> = inner.split(',').map(parse_uint).collect();
        field.element(&coords?).ok()
    }
}
