//! Plain-text ideal format: one generator per line, `#` starts a comment.

use crate::algebra::{Monomial, Poly, Ring, NVARS};
use crate::error::{RaoError, Result};

/// Parses one polynomial such as `3*x0^2*x2 - x1^3`. Integer coefficients are
/// reduced modulo the characteristic.
pub fn parse_poly(ring: &Ring, text: &str) -> std::result::Result<Poly, String> {
    let mut terms = Vec::new();
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut pos = 0;
    while pos < chars.len() {
        let mut sign = 1i64;
        let mut saw_sign = false;
        while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            if chars[pos] == '-' {
                sign = -sign;
            }
            saw_sign = true;
            pos += 1;
        }
        if pos > 0 && !saw_sign {
            return Err(format!("expected '+' or '-' before '{}'", chars[pos]));
        }
        let (term, next) = parse_term(ring, &chars, pos)?;
        let (m, c) = term;
        let c = ring.mul_c(c, ring.reduce_int(sign));
        terms.push((m, c));
        pos = next;
    }
    Ok(ring.from_terms(terms))
}

fn parse_number(chars: &[char], mut pos: usize) -> std::result::Result<(u64, usize), String> {
    let start = pos;
    while pos < chars.len() && chars[pos].is_ascii_digit() {
        pos += 1;
    }
    if start == pos {
        return Err(match chars.get(pos) {
            Some(c) => format!("expected a number, found '{c}'"),
            None => "expected a number at end of line".into(),
        });
    }
    let s: String = chars[start..pos].iter().collect();
    s.parse::<u64>().map(|n| (n, pos)).map_err(|_| format!("number '{s}' is too large"))
}

/// One product of factors: integers and `xK` or `xK^e`.
fn parse_term(ring: &Ring, chars: &[char], mut pos: usize) -> std::result::Result<((Monomial, u32), usize), String> {
    let mut exps = [0u32; NVARS];
    let mut coeff = 1u32;
    loop {
        match chars.get(pos) {
            Some(c) if c.is_ascii_digit() => {
                let (n, next) = parse_number(chars, pos)?;
                coeff = ring.mul_c(coeff, (n % ring.characteristic() as u64) as u32);
                pos = next;
            }
            Some('x') => {
                let (v, next) = parse_number(chars, pos + 1)?;
                if v as usize >= NVARS {
                    return Err(format!("unknown variable x{v} (only x0..x3)"));
                }
                pos = next;
                let mut e = 1u64;
                if chars.get(pos) == Some(&'^') {
                    let (n, next) = parse_number(chars, pos + 1)?;
                    e = n;
                    pos = next;
                }
                let total = exps[v as usize] as u64 + e;
                if total > u16::MAX as u64 {
                    return Err("exponent exceeds 16 bits".into());
                }
                exps[v as usize] = total as u32;
            }
            Some(c) => return Err(format!("unexpected character '{c}'")),
            None => return Err("expected a term at end of line".into()),
        }
        match chars.get(pos) {
            Some('*') => pos += 1,
            Some('+') | Some('-') | None => break,
            Some(c) => return Err(format!("unexpected character '{c}'")),
        }
    }
    let m = Monomial([exps[0] as u16, exps[1] as u16, exps[2] as u16, exps[3] as u16]);
    Ok(((m, coeff), pos))
}

/// Parses a whole ideal file. Lines that reduce to the zero polynomial are
/// rejected, since they almost always mean a coefficient divisible by p.
pub fn parse_ideal(ring: &Ring, text: &str) -> Result<Vec<Poly>> {
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p = parse_poly(ring, line).map_err(|message| RaoError::Parse { line: idx + 1, message })?;
        if p.is_zero() {
            return Err(RaoError::Parse { line: idx + 1, message: "generator is zero mod p".into() });
        }
        gens.push(p);
    }
    if gens.is_empty() {
        return Err(RaoError::Parse { line: 0, message: "no generators found".into() });
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RingConfig;

    fn ring() -> Ring {
        Ring::new(RingConfig::default()).unwrap()
    }

    #[test]
    fn parses_and_renders_back() {
        let r = ring();
        let p = parse_poly(&r, "3*x0^2*x2 - x1^3").unwrap();
        assert_eq!(r.render(&p), "-x1^3 + 3*x0^2*x2");
        let q = parse_poly(&r, " x0*x2-x1^2 ").unwrap();
        assert_eq!(r.render(&q), "-x1^2 + x0*x2");
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        let r = ring();
        let p = parse_poly(&r, "32004*x0 + 2*3*x1 - -x2").unwrap();
        assert_eq!(r.render(&p), "x0 + 6*x1 + x2");
        let q = parse_poly(&r, "x0*x0 + x0^2").unwrap();
        assert_eq!(r.render(&q), "2*x0^2");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let r = ring();
        let text = "# skew lines\nx0*x2\n\nx0*x3 + y1\n";
        match parse_ideal(&r, text) {
            Err(RaoError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(parse_ideal(&r, "x4"), Err(RaoError::Parse { line: 1, .. })));
        assert!(matches!(parse_ideal(&r, "x0 x1"), Err(RaoError::Parse { line: 1, .. })));
        assert!(matches!(parse_ideal(&r, "x0 +"), Err(RaoError::Parse { line: 1, .. })));
        assert!(matches!(parse_ideal(&r, "32003*x0"), Err(RaoError::Parse { line: 1, .. })));
    }

    #[test]
    fn empty_input_is_a_parse_error() {
        let r = ring();
        assert!(matches!(parse_ideal(&r, ""), Err(RaoError::Parse { .. })));
        assert!(matches!(parse_ideal(&r, "# only a comment\n\n"), Err(RaoError::Parse { .. })));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let r = ring();
        let gens = parse_ideal(&r, "x0*x2 # first\n\n  x1*x3\n").unwrap();
        assert_eq!(gens.len(), 2);
    }
}
