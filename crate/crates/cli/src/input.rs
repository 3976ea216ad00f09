//! Parsing of the hand-written inputs: field elements, monomial lists,
//! unit expressions and JSON documents given inline or by path.

use serde::de::DeserializeOwned;
use serde_json::Value;
use wittcft::laurent::{Laurent, LaurentRing, EXACT};
use wittcft::{FqCtx, FqElem};

use crate::CliError;

/// A JSON document given inline or as a path to a file.
pub fn document<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::schema(format!("{what}: cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::schema(format!("{what}: {e}")))
}

/// An integer (mapped into the prime field) or a list of coordinates over `F_p`.
pub fn element(k: &FqCtx, v: &Value) -> Result<FqElem, CliError> {
    match v {
        Value::Number(n) => {
            let t = n.as_i64().ok_or_else(|| CliError::schema(format!("{n} is not an integer")))?;
            Ok(k.prime(t))
        }
        Value::Array(cs) => {
            let coeffs = cs
                .iter()
                .map(|c| c.as_u64().ok_or_else(|| CliError::schema(format!("bad coordinate {c}"))))
                .collect::<Result<Vec<_>, _>>()?;
            k.from_coeffs(&coeffs).map_err(CliError::from)
        }
        other => Err(CliError::schema(format!("field element expected, got {other}"))),
    }
}

pub fn elements(k: &FqCtx, arg: &str) -> Result<Vec<FqElem>, CliError> {
    let v: Value = document(arg, "element list")?;
    match v {
        Value::Array(items) => items.iter().map(|x| element(k, x)).collect(),
        other => Ok(vec![element(k, &other)?]),
    }
}

/// `[["T", exponent, coefficient], ...]`, with an optional fourth entry
/// naming the Witt coordinate (default 0).
pub fn monomials(k: &FqCtx, arg: &str) -> Result<Vec<(FqElem, i64, usize)>, CliError> {
    let v: Value = document(arg, "monomial list")?;
    let Value::Array(items) = v else {
        return Err(CliError::schema("monomial list must be a JSON array"));
    };
    items
        .iter()
        .map(|item| {
            let parts = item.as_array().filter(|a| (3..=4).contains(&a.len()) && a[0] == "T");
            let parts = parts.ok_or_else(|| {
                CliError::schema(format!("monomial {item} must look like [\"T\", exponent, coefficient, level?]"))
            })?;
            let e = parts[1].as_i64().ok_or_else(|| CliError::schema(format!("bad exponent in {item}")))?;
            let c = element(k, &parts[2])?;
            let level = match parts.get(3) {
                Some(l) => l.as_u64().ok_or_else(|| CliError::schema(format!("bad level in {item}")))? as usize,
                None => 0,
            };
            Ok((c, e, level))
        })
        .collect()
}

/// A series in `T`: either a monomial list or an expression such as
/// `1-T`, `2+T^3` or `T^-1+1`.
pub fn series(ring: &LaurentRing<FqCtx>, arg: &str) -> Result<Laurent<FqElem>, CliError> {
    let k = ring.base();
    let terms: Vec<(i64, FqElem)> = if arg.trim_start().starts_with('[') {
        let monos = monomials(k, arg)?;
        if monos.iter().any(|m| m.2 != 0) {
            return Err(CliError::schema("a unit has no Witt levels"));
        }
        monos.into_iter().map(|(c, e, _)| (e, c)).collect()
    } else {
        expression(arg)?.into_iter().map(|(e, c)| (e, k.prime(c))).collect()
    };
    Ok(ring.from_terms(&terms, EXACT))
}

/// `(exponent, integer coefficient)` pairs of a sum of terms `c`, `cT`,
/// `cT^e` or `c*T^e`.
fn expression(s: &str) -> Result<Vec<(i64, i64)>, CliError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::schema(format!("cannot parse series expression {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            sign = if bytes[i] == b'-' { -1 } else { 1 };
            i += 1;
        } else if i > 0 {
            return Err(bad());
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: Option<i64> = if i > start { Some(s[start..i].parse().map_err(|_| bad())?) } else { None };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let exponent = if i < bytes.len() && bytes[i] == b'T' {
            i += 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let start = i;
                if i < bytes.len() && bytes[i] == b'-' {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                s[start..i].parse().map_err(|_| bad())?
            } else {
                1
            }
        } else {
            if coeff.is_none() {
                return Err(bad());
            }
            0
        };
        out.push((exponent, sign * coeff.unwrap_or(1)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        assert_eq!(expression("1-T").unwrap(), vec![(0, 1), (1, -1)]);
        assert_eq!(expression("2T^-3 + 4*T^2 - 5").unwrap(), vec![(-3, 2), (2, 4), (0, -5)]);
        assert!(expression("1-").is_err());
        assert!(expression("T^").is_err());
        assert!(expression("T2").is_err());
    }

    #[test]
    fn monomial_lists() {
        let k = wittcft::make_field(3, 2).unwrap();
        let m = monomials(&k, r#"[["T",-1,1],["T",2,[0,1],1]]"#).unwrap();
        assert_eq!(m, vec![(FqElem(1), -1, 0), (k.generator(), 2, 1)]);
        assert!(monomials(&k, r#"[["X",1,1]]"#).is_err());
    }
}
