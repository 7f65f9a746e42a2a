//! The textual polynomial format `c*A^k`, e.g. `1 - A + A^2` or `-A^-1 + 3/2*A`.

use std::fmt::Display;

use num_traits::Signed;

use super::RingError;

/// Renders terms in ascending exponent order. Zero coefficients must already
/// be filtered out.
pub(crate) fn format_terms<C, I>(terms: I) -> String
where
    C: Signed + Display,
    I: IntoIterator<Item = (i64, C)>,
{
    let mut out = String::new();
    for (i, (exp, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        match (exp, mag.is_one()) {
            (0, _) => out.push_str(&mag.to_string()),
            (_, true) => out.push_str(&monomial(exp)),
            (_, false) => {
                out.push_str(&mag.to_string());
                out.push('*');
                out.push_str(&monomial(exp));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn monomial(exp: i64) -> String {
    if exp == 1 {
        "A".to_string()
    } else {
        format!("A^{exp}")
    }
}

/// Splits a polynomial string into `(signed coefficient text, exponent)`
/// pairs. The coefficient text is digits with an optional `/denominator`.
pub(crate) fn parse_terms(input: &str) -> Result<Vec<(String, i64)>, RingError> {
    let err = |reason: &str| RingError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let raw: Vec<char> = input.chars().collect();
    for (i, c) in raw.iter().enumerate() {
        if c.is_whitespace() && i > 0 {
            let next = raw[i..].iter().find(|c| !c.is_whitespace());
            let prev = raw[..i].iter().rev().find(|c| !c.is_whitespace());
            let joins = |c: Option<&char>| c.is_some_and(|c| c.is_ascii_alphanumeric());
            if joins(prev) && joins(next) {
                return Err(err("whitespace inside a term"));
            }
        }
    }
    let chars: Vec<char> = raw.into_iter().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut pos = 0;
    let mut out = Vec::new();
    let mut first = true;
    while pos < chars.len() {
        let mut sign = "";
        match chars[pos] {
            '+' => pos += 1,
            '-' => {
                sign = "-";
                pos += 1;
            }
            _ if !first => return Err(err("expected `+` or `-` between terms")),
            _ => {}
        }
        first = false;

        let start = pos;
        while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
            pos += 1;
        }
        let coeff: String = chars[start..pos].iter().collect();
        if coeff.starts_with('/') || coeff.ends_with('/') || coeff.matches('/').count() > 1 {
            return Err(err("malformed coefficient"));
        }

        let mut exp = 0;
        let has_coeff = !coeff.is_empty();
        if pos < chars.len() && chars[pos] == '*' {
            if !has_coeff {
                return Err(err("`*` without coefficient"));
            }
            pos += 1;
            if chars.get(pos) != Some(&'A') {
                return Err(err("expected `A` after `*`"));
            }
        }
        let has_var = chars.get(pos) == Some(&'A');
        if has_var {
            pos += 1;
            exp = 1;
            if chars.get(pos) == Some(&'^') {
                pos += 1;
                let paren = chars.get(pos) == Some(&'(');
                if paren {
                    pos += 1;
                }
                let estart = pos;
                if chars.get(pos) == Some(&'-') {
                    pos += 1;
                }
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let etext: String = chars[estart..pos].iter().collect();
                exp = etext.parse().map_err(|_| err("malformed exponent"))?;
                if paren {
                    if chars.get(pos) != Some(&')') {
                        return Err(err("unclosed `(` in exponent"));
                    }
                    pos += 1;
                }
            }
        }
        if !has_coeff && !has_var {
            return Err(err("empty term"));
        }
        let coeff = if has_coeff { coeff } else { "1".to_string() };
        out.push((format!("{sign}{coeff}"), exp));
    }
    Ok(out)
}
