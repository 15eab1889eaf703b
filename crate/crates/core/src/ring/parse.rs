//! Text form of polynomials.
//!
//! ```text
//! poly     := [sign] term (('+'|'-') term)*
//! term     := [coeff '*'?] monomial | coeff
//! monomial := var ('^' uint)? ('*' var ('^' uint)?)*
//! var      := 'x0' | 'x1' | 'T' uint | 'w' uint
//! coeff    := int | int '/' uint
//! ```

use num_bigint::BigInt;
use num_traits::One;

use super::field::Field;
use super::monomial::Monomial;
use super::poly::Poly;
use super::Ring;
use crate::error::{Error, Result};

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        Ok(s.parse().expect("digits"))
    }

    fn small_uint(&mut self) -> Result<u64> {
        let at = self.offset();
        let v = self.uint()?;
        u64::try_from(v).map_err(|_| Error::Syntax {
            pos: at,
            msg: "integer too large".into(),
        })
    }
}

fn var_index(ring: &Ring, name: char, idx: u64, text: &str) -> Result<usize> {
    match (name, ring) {
        ('x', _) if idx <= 1 => Ok(idx as usize),
        ('T', Ring::S { n }) if idx >= 1 && idx as usize <= *n => Ok(1 + idx as usize),
        ('w', Ring::Scroll { sigma }) if idx >= 1 && idx as usize <= sigma.len() => {
            Ok(1 + idx as usize)
        }
        _ => Err(Error::UnknownVariable(text.to_string())),
    }
}

fn parse_monomial(lx: &mut Lexer, ring: &Ring) -> Result<Monomial> {
    let mut m = Monomial::ONE;
    loop {
        let name = match lx.peek() {
            Some(c @ ('x' | 'T' | 'w')) => c,
            Some(c) if c.is_alphabetic() => {
                let mut s = String::new();
                while let Some(c) = lx.peek().filter(|c| c.is_alphanumeric()) {
                    s.push(c);
                    lx.pos += 1;
                }
                return Err(Error::UnknownVariable(s));
            }
            _ => return lx.err("expected a variable"),
        };
        lx.bump();
        if !lx.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(Error::UnknownVariable(name.to_string()));
        }
        let idx = lx.small_uint()?;
        let k = var_index(ring, name, idx, &format!("{name}{idx}"))?;
        let mut e = 1u64;
        if lx.peek() == Some('^') {
            lx.bump();
            e = lx.small_uint()?;
        }
        let total = m.0[k] as u64 + e;
        if total > u16::MAX as u64 {
            return lx.err("exponent too large");
        }
        m.0[k] = total as u16;
        // A '*' followed by a variable continues the monomial.
        if lx.peek() == Some('*')
            && lx
                .chars
                .get(lx.pos + 1)
                .is_some_and(|&(_, c)| c.is_alphabetic())
        {
            lx.bump();
            continue;
        }
        return Ok(m);
    }
}

fn parse_term<F: Field>(lx: &mut Lexer, ring: &Ring, field: &F) -> Result<(Monomial, F::Elem)> {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut has_coeff = false;
    if lx.peek().is_some_and(|c| c.is_ascii_digit()) {
        num = lx.uint()?;
        has_coeff = true;
        if lx.peek() == Some('/') {
            lx.bump();
            den = lx.uint()?;
        }
        if lx.peek() == Some('*') {
            lx.bump();
            let m = parse_monomial(lx, ring)?;
            return Ok((m, field.from_fraction(&num, &den)?));
        }
    }
    let m = match lx.peek() {
        Some(c) if c.is_alphabetic() => parse_monomial(lx, ring)?,
        _ if has_coeff => Monomial::ONE,
        None => return lx.err("unexpected end of input"),
        Some(c) => return lx.err(format!("unexpected character `{c}`")),
    };
    Ok((m, field.from_fraction(&num, &den)?))
}

/// Parses `text` as an element of `ring`, validating (bi)homogeneity.
pub fn parse_poly<F: Field>(ring: &Ring, field: &F, text: &str) -> Result<Poly<F>> {
    let mut lx = Lexer::new(text);
    if lx.peek().is_none() {
        return lx.err("empty polynomial");
    }
    let mut terms = Vec::new();
    let mut negative = false;
    match lx.peek() {
        Some('-') => {
            negative = true;
            lx.bump();
        }
        Some('+') => {
            lx.bump();
        }
        _ => {}
    }
    loop {
        let (m, c) = parse_term(&mut lx, ring, field)?;
        terms.push((m, if negative { field.neg(&c) } else { c }));
        match lx.bump() {
            None => break,
            Some('+') => negative = false,
            Some('-') => negative = true,
            Some(c) => {
                lx.pos -= 1;
                return lx.err(format!("unexpected character `{c}`"));
            }
        }
    }
    let degs: Vec<(i64, i64)> = terms.iter().map(|(m, _)| ring.monomial_bidegree(m)).collect();
    if degs.windows(2).any(|w| w[0] != w[1]) {
        return Err(match ring {
            Ring::R => Error::NotHomogeneous,
            _ => Error::NotBihomogeneous,
        });
    }
    Ok(Poly::from_terms(field, terms))
}

/// Canonical text form: terms in descending order, unit coefficients omitted.
pub fn format_poly<F: Field>(ring: &Ring, p: &Poly<F>) -> String {
    let f = p.field();
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        let neg = f.is_negative(c);
        let abs = if neg { f.neg(c) } else { c.clone() };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = format_monomial(ring, m);
        if mono.is_empty() {
            out.push_str(&f.format(&abs));
        } else if f.is_one(&abs) {
            out.push_str(&mono);
        } else {
            out.push_str(&f.format(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

pub fn format_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for k in 0..ring.nvars() {
        let e = m.exp(k);
        if e == 0 {
            continue;
        }
        let name = ring.var_name(k);
        parts.push(if e == 1 { name } else { format!("{name}^{e}") });
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::field::{PrimeField, Rationals};

    #[test]
    fn parses_monomials_and_sums() {
        let f = PrimeField::default();
        let p = parse_poly(&Ring::R, &f, "x0^2*x1").unwrap();
        assert_eq!(Ring::R.bidegree(&p).unwrap(), (3, 0));
        let s = Ring::S { n: 3 };
        let g = parse_poly(&s, &f, "x1^3*T1 + x0^3*T3").unwrap();
        assert_eq!(s.bidegree(&g).unwrap(), (3, 1));
        assert_eq!(parse_poly(&s, &f, "x0 + T1"), Err(Error::NotBihomogeneous));
        assert_eq!(parse_poly(&Ring::R, &f, "x0 + x1^2"), Err(Error::NotHomogeneous));
    }

    #[test]
    fn reports_errors() {
        let f = PrimeField::default();
        let s = Ring::S { n: 3 };
        assert!(matches!(parse_poly(&s, &f, "x0 +"), Err(Error::Syntax { .. })));
        assert_eq!(parse_poly(&s, &f, "x2*T1"), Err(Error::UnknownVariable("x2".into())));
        assert_eq!(parse_poly(&s, &f, "T4"), Err(Error::UnknownVariable("T4".into())));
        assert_eq!(parse_poly(&s, &f, "y"), Err(Error::UnknownVariable("y".into())));
        match parse_poly(&s, &f, "x0 ) T1") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coefficients_and_signs() {
        let q = Rationals;
        let s = Ring::S { n: 2 };
        let p = parse_poly(&s, &q, "-3/6 x0*T1 + 2*x1*T2 - x0*T2").unwrap();
        assert_eq!(format_poly(&s, &p), "-1/2*x0*T1 - x0*T2 + 2*x1*T2");
        let f = PrimeField::new(7).unwrap();
        let p = parse_poly(&s, &f, "-x0*T1").unwrap();
        assert_eq!(format_poly(&s, &p), "6*x0*T1");
        assert_eq!(format_poly(&s, &parse_poly(&s, &f, "0").unwrap()), "0");
        assert_eq!(format_poly(&s, &parse_poly(&s, &f, "3").unwrap()), "3");
    }

    #[test]
    fn scroll_variables() {
        let f = PrimeField::default();
        let ring = Ring::Scroll { sigma: vec![3, 0] };
        let w1 = parse_poly(&ring, &f, "w1").unwrap();
        assert_eq!(ring.bidegree(&w1).unwrap(), (-3, 1));
        let r2 = Ring::Scroll { sigma: vec![1, 1] };
        let p = parse_poly(&r2, &f, "x0^2*w1*w2").unwrap();
        assert_eq!(r2.bidegree(&p).unwrap(), (0, 2));
        assert!(parse_poly(&ring, &f, "x0^3*w1 + w2").is_ok());
    }
}
