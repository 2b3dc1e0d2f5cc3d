//! The canonical element-string grammar and its parser.
//!
//! Polynomials print as "+"/"-"-joined monomials in descending monomial
//! order, coefficient first, `^` for powers and `*` as separator, e.g.
//! `x1*y1+x2*y2+x3*y3-1` or `2*a^2*b-3`. Integers and residues print in
//! decimal. Printing then parsing is the identity on canonical strings.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::poly::{CoeffMode, MPoly, MonomialOrder, Scalar, Term};
use crate::error::{Error, Result};

pub fn print_bigint(v: &BigInt) -> String {
    v.to_string()
}

pub fn print_residue(v: &BigUint) -> String {
    v.to_string()
}

pub fn print_poly(p: &MPoly, vars: &[String]) -> String {
    if p.terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, t) in p.terms.iter().enumerate() {
        let (neg, mag) = match &t.coeff {
            Scalar::Int(c) => (c.sign() == num_bigint::Sign::Minus, c.magnitude().clone()),
            Scalar::Residue(r) => (false, r.clone()),
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let mut factors: Vec<String> = Vec::new();
        for (name, &e) in vars.iter().zip(t.exps.iter()) {
            if e == 1 {
                factors.push(name.clone());
            } else if e > 1 {
                factors.push(format!("{}^{}", name, e));
            }
        }
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

pub fn parse_bigint(s: &str) -> Result<BigInt> {
    let t = s.trim();
    t.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("invalid integer: {:?}", s)))
}

/// Parse an integer string into a residue in `[0, m)`.
pub fn parse_residue(s: &str, m: &BigUint) -> Result<BigUint> {
    let v = parse_bigint(s)?;
    let mi = BigInt::from(m.clone());
    let mut r = &v % &mi;
    if r.sign() == num_bigint::Sign::Minus {
        r += &mi;
    }
    Ok(r.to_biguint().expect("nonnegative residue"))
}

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos > start {
            Some(&self.src[start..self.pos])
        } else {
            None
        }
    }

    /// Longest declared variable name starting at the cursor, without consuming.
    fn peek_variable(&self, vars: &[String]) -> Option<(usize, usize)> {
        let rest = &self.src[self.pos..];
        let mut best: Option<(usize, usize)> = None;
        for (i, v) in vars.iter().enumerate() {
            if rest.starts_with(v.as_str()) {
                match best {
                    Some((_, len)) if len >= v.len() => {}
                    _ => best = Some((i, v.len())),
                }
            }
        }
        best
    }

    fn variable(&mut self, vars: &[String]) -> Option<usize> {
        let (i, len) = self.peek_variable(vars)?;
        self.pos += len;
        Some(i)
    }
}

/// Parse a polynomial string over the given variables; the result is canonical.
pub fn parse_poly(
    s: &str,
    vars: &[String],
    order: MonomialOrder,
    mode: &CoeffMode,
) -> Result<MPoly> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse("empty element string".into()));
    }
    let mut cur = Cursor::new(trimmed);
    let mut terms: Vec<Term> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        if cur.eat(b'-') {
            negative = true;
        } else if cur.eat(b'+') {
            if first {
                return Err(Error::Parse(format!("leading '+' in {:?}", s)));
            }
        } else if !first {
            break;
        }
        first = false;

        let mut coeff_mag: Option<BigUint> = None;
        let mut exps = vec![0u32; vars.len()];

        if let Some(d) = cur.digits() {
            coeff_mag = Some(
                d.parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("bad coefficient in {:?}", s)))?,
            );
            if cur.eat(b'*') {
                parse_factors(&mut cur, vars, &mut exps, s)?;
            }
        } else {
            if cur.peek_variable(vars).is_none() {
                return Err(Error::Parse(format!(
                    "expected coefficient or variable at byte {} of {:?}",
                    cur.pos, s
                )));
            }
            parse_factors(&mut cur, vars, &mut exps, s)?;
        }

        let mag = coeff_mag.unwrap_or_else(BigUint::one);
        let signed = if negative {
            -BigInt::from(mag)
        } else {
            BigInt::from(mag)
        };
        let coeff = mode.from_bigint(&signed);
        terms.push(Term { exps, coeff });

        if cur.peek().is_none() {
            break;
        }
    }
    if cur.peek().is_some() {
        return Err(Error::Parse(format!(
            "trailing input at byte {} of {:?}",
            cur.pos, s
        )));
    }
    Ok(MPoly::canonicalize(terms, order, mode))
}

fn parse_factors(
    cur: &mut Cursor,
    vars: &[String],
    exps: &mut [u32],
    original: &str,
) -> Result<()> {
    loop {
        let Some(idx) = cur.variable(vars) else {
            return Err(Error::Parse(format!(
                "expected variable at byte {} of {:?}",
                cur.pos, original
            )));
        };
        let mut e: u32 = 1;
        if cur.eat(b'^') {
            let Some(d) = cur.digits() else {
                return Err(Error::Parse(format!("missing exponent in {:?}", original)));
            };
            e = d
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("exponent overflow in {:?}", original)))?;
        }
        exps[idx] = exps[idx]
            .checked_add(e)
            .ok_or_else(|| Error::Parse(format!("exponent overflow in {:?}", original)))?;
        if !cur.eat(b'*') {
            return Ok(());
        }
        // After '*', a bare coefficient is not allowed in canonical position;
        // only variables may follow.
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn round_trips_canonical_strings() {
        let vs = vars(&["x1", "y1", "x2", "y2", "x3", "y3"]);
        let mode = CoeffMode::Int;
        for s in ["x1*y1+x2*y2+x3*y3-1", "0", "-1", "2*x1^2-x3", "-x1+1"] {
            let p = parse_poly(s, &vs, MonomialOrder::GrLex, &mode).unwrap();
            assert_eq!(print_poly(&p, &vs), s, "round trip of {:?}", s);
        }
    }

    #[test]
    fn longest_variable_match_wins() {
        let vs = vars(&["x", "x1"]);
        let mode = CoeffMode::Int;
        let p = parse_poly("x1+x", &vs, MonomialOrder::GrLex, &mode).unwrap();
        assert_eq!(p.terms.len(), 2);
        // canonical order puts the declared-first variable x ahead of x1
        assert_eq!(print_poly(&p, &vs), "x+x1");
    }

    #[test]
    fn rejects_garbage() {
        let vs = vars(&["x"]);
        let mode = CoeffMode::Int;
        for s in ["", "+x", "x+", "x**x", "y", "2^3"] {
            assert!(
                parse_poly(s, &vs, MonomialOrder::GrLex, &mode).is_err(),
                "{:?} should fail",
                s
            );
        }
    }
}
