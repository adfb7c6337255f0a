//! Text syntax for elements: sums with `+`, products with `*` or
//! juxtaposition, powers `^k`, operations `Q^i` binding to the following
//! powered factor, parentheses, and the literals `0` and `1`.
//!
//! Generators are `g<n>` in `S<n>`, `a<m>` in `P` and `c<2m+1>` in `SCP`,
//! with an optional `^s<k>` suffix naming the suspension of the space.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::normalize::apply_q;
use crate::space::{Generator, Space, SpaceKind};
use crate::word::AdmissibleGen;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    space: Space,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos, format!("expected `{c}`"))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected a number");
        }
        self.text[start..self.pos].parse().or_else(|_| err(start, "number out of range"))
    }

    fn expr(&mut self) -> Result<Element> {
        let mut out = self.term()?;
        while self.eat('+') {
            let t = self.term()?;
            out = self.checked_sum(out, t)?;
        }
        Ok(out)
    }

    fn checked_sum(&self, a: Element, b: Element) -> Result<Element> {
        let s = a.add(&b);
        if let (Some(da), Some(db)) = (a.degree()?, b.degree()?) {
            if da != db {
                return Err(Error::NonHomogeneous(da, db));
            }
        }
        Ok(s)
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c == '(' || c == 'Q' || c.is_ascii_alphanumeric())
    }

    fn term(&mut self) -> Result<Element> {
        let mut out = self.factor()?;
        loop {
            if self.eat('*') || self.starts_factor() {
                out = out.mul(&self.factor()?);
            } else {
                return Ok(out);
            }
        }
    }

    fn factor(&mut self) -> Result<Element> {
        if self.peek() == Some('Q') {
            let at = self.pos;
            self.pos += 1;
            self.expect('^')?;
            let idx_at = self.pos;
            let i = self.number()?;
            if i == 0 {
                return err(idx_at, "operation index must be positive");
            }
            let i = u32::try_from(i).or_else(|_| err(idx_at, "operation index out of range"))?;
            let inner = self.factor()?;
            return apply_q(i, &inner).map_err(|e| Error::Parse { pos: at, msg: e.to_string() });
        }
        let base = self.primary()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.pos;
            let k = self.number()?;
            let k = u32::try_from(k).or_else(|_| err(at, "exponent out of range"))?;
            return Ok(power(&base, k));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Element> {
        let next = self.peek();
        let at = self.pos;
        match next {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                match self.number()? {
                    0 => Ok(Element::zero()),
                    1 => Ok(Element::one()),
                    _ => err(at, "only the constants 0 and 1 are allowed"),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                let idx = self.number()?;
                let mut shift = None;
                if self.text[self.pos..].starts_with("^s") {
                    self.pos += 2;
                    shift = Some(self.number()?);
                }
                let name = self.text[at..self.pos].trim().to_string();
                let g = self.generator(c, idx, shift).ok_or_else(|| Error::UnknownGenerator {
                    name,
                    space: self.space.to_string(),
                })?;
                Ok(Element::from_gen(AdmissibleGen::bare(g)))
            }
            Some(c) => err(at, format!("unexpected `{c}`")),
            None => err(at, "unexpected end of input"),
        }
    }

    fn generator(&self, letter: char, idx: u64, shift: Option<u64>) -> Option<Generator> {
        let idx = u32::try_from(idx).ok()?;
        match (letter, self.space.kind()) {
            ('g', SpaceKind::Sphere(n)) if idx == n && shift.unwrap_or(0) == 0 => self.space.generator(idx).ok(),
            ('a', SpaceKind::RealProj) | ('c', SpaceKind::SigmaCPplus) => {
                if shift.is_some_and(|k| k != self.space.shift() as u64) {
                    return None;
                }
                let index = if letter == 'c' {
                    (idx % 2 == 1).then(|| (idx - 1) / 2)?
                } else {
                    idx
                };
                self.space.generator(index).ok()
            }
            _ => None,
        }
    }
}

fn power(e: &Element, k: u32) -> Element {
    let mut out = Element::one();
    for j in 0..32 {
        if k >> j & 1 == 1 {
            out = out.mul(&e.frobenius(j));
        }
    }
    out
}

/// Parses an expression in `H_*QX` for the given space and returns it in
/// canonical form.
pub fn parse_expr(text: &str, space: Space) -> Result<Element> {
    let mut p = Parser { text, pos: 0, space };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return err(p.pos, "trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{DLWord, Ops};

    fn p() -> Space {
        Space::real_proj()
    }

    #[test]
    fn words_and_classes() {
        let s1 = Space::sphere(1).unwrap();
        let e = parse_expr("Q^9 Q^5 g1", s1).unwrap();
        let g = AdmissibleGen::new(DLWord::new(Ops::from_slice(&[9, 5]), s1.generator(1).unwrap()).unwrap()).unwrap();
        assert_eq!(e, Element::from_gen(g));
        assert_eq!(e.to_string(), "Q^9 Q^5 g1");
        let c = parse_expr("Q^2 a1 + a1*a2 + a1^3 + a3", p()).unwrap();
        assert_eq!(c.to_string(), "Q^2 a1 + a3 + a1*a2 + a1^3");
        assert_eq!(parse_expr("a1 a2", p()).unwrap(), parse_expr("a2*a1", p()).unwrap());
        assert!(parse_expr("Q^7 Q^3 g1", s1).unwrap().is_zero());
        assert_eq!(parse_expr("Q^1 a1", p()).unwrap().to_string(), "a1^2");
        assert_eq!(parse_expr("(Q^3 g1)^2", s1).unwrap().to_string(), "(Q^3 g1)^2");
        assert_eq!(parse_expr("a1 + a1", p()).unwrap().to_string(), "0");
        assert_eq!(parse_expr("1", p()).unwrap().to_string(), "1");
    }

    #[test]
    fn generator_names() {
        let scp = Space::sigma_cp_plus();
        assert_eq!(parse_expr("c3", scp).unwrap().degree().unwrap(), Some(3));
        assert!(parse_expr("c2", scp).is_err());
        let sp: Space = "P^s2".parse().unwrap();
        assert_eq!(parse_expr("a1^s2", sp).unwrap(), parse_expr("a1", sp).unwrap());
        assert_eq!(parse_expr("a1^s2^3", sp).unwrap().to_string(), "a1^s2^3");
        assert!(matches!(parse_expr("a1^s1", sp), Err(Error::UnknownGenerator { .. })));
        assert!(matches!(parse_expr("g2", Space::sphere(1).unwrap()), Err(Error::UnknownGenerator { .. })));
        assert!(matches!(parse_expr("a0", p()), Err(Error::UnknownGenerator { .. })));
    }

    #[test]
    fn errors() {
        let s1 = Space::sphere(1).unwrap();
        assert!(matches!(parse_expr("Q^0 g1", s1), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_expr("g1 +", s1), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_expr("(g1", s1), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("g1 )", s1), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_expr("a1 + a2", p()), Err(Error::NonHomogeneous(1, 2))));
        assert!(matches!(parse_expr("2", p()), Err(Error::Parse { .. })));
    }
}
