//! Text input: polynomials as coefficient lists or in monomial form, and
//! angles as rational multiples of pi.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Angle, Polynomial};

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

/// Characters with their original positions, whitespace dropped.
fn compact(text: &str) -> Vec<(usize, char)> {
    text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect()
}

struct Cursor {
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let chars = compact(text);
        let end = text.chars().count();
        Cursor { chars, at: 0, end }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return None;
        }
        let s: String = self.chars[start..self.at].iter().map(|&(_, c)| c).collect();
        Some(s.parse().expect("digits"))
    }

    /// Unsigned `p`, `p/q` or `p.ddd`.
    fn unsigned_rational(&mut self) -> Result<Option<BigRational>> {
        let Some(whole) = self.digits() else { return Ok(None) };
        if self.eat('/') {
            let pos = self.pos();
            let den = self.digits().ok_or_else(|| err(pos, "expected a denominator"))?;
            if den.is_zero() {
                return Err(err(pos, "zero denominator"));
            }
            return Ok(Some(BigRational::new(whole, den)));
        }
        if self.eat('.') {
            let start = self.at;
            let frac = self.digits().unwrap_or_else(BigInt::zero);
            let scale = BigInt::from(10).pow((self.at - start) as u32);
            return Ok(Some(BigRational::new(whole * &scale + frac, scale)));
        }
        Ok(Some(BigRational::from_integer(whole)))
    }
}

fn parse_coefficient_list(text: &str) -> Result<Polynomial> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for token in text.split(',') {
        let mut cur = Cursor::new(token);
        if cur.peek().is_none() {
            return Err(err(offset.min(text.chars().count()), "empty coefficient"));
        }
        let neg = cur.eat('-');
        if !neg {
            cur.eat('+');
        }
        let v = cur.unsigned_rational()?.ok_or_else(|| err(offset + cur.pos(), "expected a number"))?;
        if cur.peek().is_some() {
            return Err(err(offset + cur.pos(), format!("unexpected '{}'", cur.peek().expect("some"))));
        }
        coeffs.push(if neg { -v } else { v });
        offset += token.chars().count() + 1;
    }
    Polynomial::new(coeffs)
}

fn parse_monomials(text: &str) -> Result<Polynomial> {
    let mut cur = Cursor::new(text);
    let mut terms: BTreeMap<usize, BigRational> = BTreeMap::new();
    if cur.peek().is_none() {
        return Err(err(0, "empty polynomial"));
    }
    let mut first = true;
    while cur.peek().is_some() {
        let sign_pos = cur.pos();
        let neg = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            return Err(err(sign_pos, "expected '+' or '-'"));
        };
        first = false;
        let coeff = if cur.eat('(') {
            let pos = cur.pos();
            let inner_neg = cur.eat('-');
            let v = cur.unsigned_rational()?.ok_or_else(|| err(pos, "expected a number"))?;
            let close = cur.pos();
            if !cur.eat(')') {
                return Err(err(close, "expected ')'"));
            }
            Some(if inner_neg { -v } else { v })
        } else {
            cur.unsigned_rational()?
        };
        if coeff.is_some() {
            cur.eat('*');
        }
        let power = if cur.eat('z') {
            if cur.eat('^') {
                let pos = cur.pos();
                let e = cur.digits().ok_or_else(|| err(pos, "expected an exponent"))?;
                usize::try_from(e).map_err(|_| err(pos, "exponent too large"))?
            } else {
                1
            }
        } else {
            if coeff.is_none() {
                return Err(err(cur.pos(), "expected a coefficient or 'z'"));
            }
            0
        };
        let c = coeff.unwrap_or_else(BigRational::one);
        *terms.entry(power).or_insert_with(BigRational::zero) += if neg { -c } else { c };
    }
    let top = *terms.keys().next_back().expect("at least one term");
    let mut coeffs = vec![BigRational::zero(); top + 1];
    for (k, c) in terms {
        coeffs[k] = c;
    }
    Polynomial::new(coeffs)
}

/// Parses `"1,2,3/2"` (ascending coefficients) or `"z^2+2z+1"`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    if text.contains('z') {
        parse_monomials(text)
    } else {
        parse_coefficient_list(text)
    }
}

/// Parses `"2/3pi"`, `"2/3"`, `"pi"` or `"1"`: a multiple of pi in `(0, pi]`.
pub fn parse_angle(text: &str) -> Result<Angle> {
    let mut body: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    for suffix in ["pi", "π"] {
        if let Some(s) = body.strip_suffix(suffix) {
            body = s.strip_suffix('*').unwrap_or(s).to_string();
            break;
        }
    }
    if body.is_empty() {
        return Ok(Angle::pi());
    }
    let mut cur = Cursor::new(&body);
    let neg = cur.eat('-');
    let v = cur.unsigned_rational()?.ok_or_else(|| err(cur.pos(), "expected a rational multiple of pi"))?;
    if let Some(c) = cur.peek() {
        return Err(err(cur.pos(), format!("unexpected '{c}'")));
    }
    if neg || v.is_zero() || v > BigRational::one() {
        return Err(Error::OutOfRange(text.trim().to_string()));
    }
    let num = u64::try_from(v.numer()).map_err(|_| Error::OutOfRange(text.trim().to_string()))?;
    let den = u64::try_from(v.denom()).map_err(|_| Error::OutOfRange(text.trim().to_string()))?;
    Angle::new(num, den)
}

/// Parses `"lo:hi"` into two angles.
pub fn parse_angle_range(text: &str) -> Result<(Angle, Angle)> {
    let (a, b) = text.split_once(':').ok_or_else(|| err(0, "expected 'lo:hi'"))?;
    let (lo, hi) = (parse_angle(a)?, parse_angle(b)?);
    if lo > hi {
        return Err(Error::OutOfRange(format!("empty range {text}")));
    }
    Ok((lo, hi))
}

/// Parses a single rational such as `"3/4"`, `"-2"` or `"0.125"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let mut cur = Cursor::new(text);
    let neg = cur.eat('-');
    let v = cur.unsigned_rational()?.ok_or_else(|| err(cur.pos(), "expected a number"))?;
    if let Some(c) = cur.peek() {
        return Err(err(cur.pos(), format!("unexpected '{c}'")));
    }
    Ok(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn coefficient_lists() {
        assert_eq!(parse_polynomial("1,1,1").unwrap(), Polynomial::from_ints(&[1, 1, 1]).unwrap());
        let p = parse_polynomial(" 1 , 2, 3/2 ").unwrap();
        assert_eq!(p.coeffs(), &[rat(1, 1), rat(2, 1), rat(3, 2)]);
        assert!(matches!(parse_polynomial("1,,"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_polynomial("1,x"), Err(Error::Parse { pos: 2, .. })));
        assert_eq!(parse_polynomial("0,0"), Err(Error::ZeroPolynomial));
        assert_eq!(parse_polynomial("-0.5,1").unwrap().coeffs(), &[rat(-1, 2), rat(1, 1)]);
    }

    #[test]
    fn monomial_form() {
        let p = parse_polynomial("z^4+2z^3+3z^2+2z+1").unwrap();
        assert_eq!(p, Polynomial::from_ints(&[1, 2, 3, 2, 1]).unwrap());
        let q = parse_polynomial("-(3/4)z^2 + 1/2").unwrap();
        assert_eq!(q.coeffs(), &[rat(1, 2), rat(0, 1), rat(-3, 4)]);
        assert_eq!(parse_polynomial("2*z + z + 1").unwrap().coeffs(), &[rat(1, 1), rat(3, 1)]);
        assert!(matches!(parse_polynomial("z^"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_polynomial("z z"), Err(Error::Parse { pos: 2, .. })));
        assert_eq!(parse_polynomial("z-z"), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn canonical_round_trip() {
        for text in ["z^4+2z^3+3z^2+2z+1", "-(3/4)z^2+1/2", "z^3-z", "(5/7)z+3"] {
            let p = parse_polynomial(text).unwrap();
            assert_eq!(p.to_string(), text);
            assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
            assert_eq!(parse_polynomial(&p.to_coeff_string()).unwrap(), p);
        }
    }

    #[test]
    fn angles() {
        assert_eq!(parse_angle("2/3pi").unwrap(), Angle::new(2, 3).unwrap());
        assert_eq!(parse_angle("3/5").unwrap(), Angle::new(3, 5).unwrap());
        assert_eq!(parse_angle("1").unwrap(), Angle::pi());
        assert_eq!(parse_angle("pi").unwrap(), Angle::pi());
        assert_eq!(parse_angle(" 4/8 * pi ").unwrap(), Angle::new(1, 2).unwrap());
        assert!(matches!(parse_angle("7/6pi"), Err(Error::OutOfRange(_))));
        assert!(matches!(parse_angle("0"), Err(Error::OutOfRange(_))));
        assert!(matches!(parse_angle("a/b"), Err(Error::Parse { .. })));
        let (lo, hi) = parse_angle_range("1/10pi:9/20pi").unwrap();
        assert_eq!((lo, hi), (Angle::new(1, 10).unwrap(), Angle::new(9, 20).unwrap()));
        assert!(parse_angle_range("1/2:1/3").is_err());
    }
}
