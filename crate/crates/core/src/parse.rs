//! Text forms of field elements: `coeff*var^k` terms joined by `+` and `-`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::tower::{FieldElement, TowerField};

fn parse_err(s: &str, why: &str) -> Error {
    Error::Parse(format!("{why} in {s:?}"))
}

fn parse_exponent(raw: &str, whole: &str) -> Result<i64> {
    let t = raw.trim().trim_start_matches('(').trim_end_matches(')').trim();
    t.parse::<i64>().map_err(|_| parse_err(whole, "bad exponent"))
}

fn parse_term(field: &Arc<TowerField>, term: &str, whole: &str) -> Result<FieldElement> {
    let mut acc = field.one();
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(parse_err(whole, "empty factor"));
        }
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (b.trim(), parse_exponent(e, whole)?),
            None => (factor, 1),
        };
        let value = if let Ok(k) = base.parse::<i64>() {
            field
                .from_int(k)
                .pow(exp)
                .map_err(|_| parse_err(whole, "zero to a negative power"))?
        } else if base == "u" || base == "zeta" {
            field.zeta_pow(exp)
        } else if let Some(j) = field.level_index(base) {
            field.var_pow(j, exp)?
        } else {
            return Err(parse_err(whole, &format!("unknown symbol {base:?}")));
        };
        acc = acc.mul(&value)?;
    }
    Ok(acc)
}

pub(crate) fn parse_element(field: &Arc<TowerField>, s: &str) -> Result<FieldElement> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(parse_err(s, "empty expression"));
    }
    // split at +/- that are not part of an exponent
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    let mut depth = 0i32;
    let chars: Vec<char> = text.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let after_caret = i > 0 && chars[i - 1] == '^';
        if (c == '+' || c == '-') && depth == 0 && !after_caret {
            if !cur.is_empty() {
                terms.push((negative, std::mem::take(&mut cur)));
            } else if i != 0 {
                return Err(parse_err(s, "dangling sign"));
            }
            negative = c == '-';
            continue;
        }
        cur.push(c);
    }
    if cur.is_empty() {
        return Err(parse_err(s, "dangling sign"));
    }
    terms.push((negative, cur));
    let mut acc = field.zero();
    for (neg, t) in terms {
        let v = parse_term(field, &t, s)?;
        acc = if neg { acc.sub(&v)? } else { acc.add(&v)? };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use crate::tower::make_tower;

    #[test]
    fn grammar() {
        let f = make_tower(3, 2, 1, 2, 3).unwrap();
        let a = f.parse("2*x1^-1*x2 + x^2 - 1").unwrap();
        let b = f.parse("-1 + x1^2 + 2*x^(-1)*y").unwrap();
        assert_eq!(a, b);
        assert_eq!(f.parse("u").unwrap(), f.from_int(2));
        assert!(f.parse("w").is_err());
        assert!(f.parse("1 +").is_err());
        assert!(f.parse("").is_err());
        assert!(f.parse("0^-1").is_err());
        assert!(f.parse("x3").is_err());
    }
}
