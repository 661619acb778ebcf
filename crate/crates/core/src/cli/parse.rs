//! Text grammar for field elements (over `w`), skew polynomials (over `t`)
//! and central polynomials (over `x`).
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' digits)?
//! atom   := digits | 'w' | var | '(' expr ')'
//! ```
//!
//! Products of skew polynomials follow the rule t·c = σ(c)·t, so `t*w`
//! and `w^2*t` denote the same element when σ(w) = w^2.

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::skewpoly::{CentralPoly, SkewPoly, SkewRing};
use crate::upoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Field,
    Skew,
    Central,
}

impl Target {
    fn var(self) -> Option<u8> {
        match self {
            Target::Field => None,
            Target::Skew => Some(b't'),
            Target::Central => Some(b'x'),
        }
    }
}

struct Parser<'a> {
    tower: &'a FieldTower,
    target: Target,
    src: Vec<u8>,
    pos: usize,
}

type Coeffs = Vec<FieldElement>;

impl<'a> Parser<'a> {
    fn new(tower: &'a FieldTower, target: Target, text: &str) -> Self {
        let src = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        Parser {
            tower,
            target,
            src,
            pos: 0,
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn trim(&self, mut v: Coeffs) -> Coeffs {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    fn add(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        let len = a.len().max(b.len());
        let get = |v: &Coeffs, i: usize| v.get(i).copied().unwrap_or(FieldElement::ZERO);
        self.trim(
            (0..len)
                .map(|i| self.tower.add(get(a, i), get(b, i)))
                .collect(),
        )
    }

    fn neg(&self, a: &Coeffs) -> Coeffs {
        a.iter().map(|&c| self.tower.neg(c)).collect()
    }

    fn mul(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        match self.target {
            Target::Skew => {
                let ring = SkewRing::new(self.tower);
                ring.mul(&SkewPoly::new(a.clone()), &SkewPoly::new(b.clone()))
                    .coeffs()
                    .to_vec()
            }
            _ => self.trim(upoly::mul(self.tower, a, b)),
        }
    }

    fn number(&mut self) -> u64 {
        let mut v: u64 = 0;
        while let Some(d @ b'0'..=b'9') = self.peek() {
            v = (v * 10 + (d - b'0') as u64) % self.tower.p() as u64;
            self.pos += 1;
        }
        v
    }

    fn exponent(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(d @ b'0'..=b'9') = self.peek() {
            v = v
                .checked_mul(10)
                .and_then(|x| x.checked_add((d - b'0') as u64))
                .ok_or_else(|| self.error("exponent too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an exponent"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<Coeffs> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = self.neg(&acc);
        }
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = self.add(&acc, &t);
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = self.add(&acc, &self.neg(&t));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Coeffs> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = self.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Coeffs> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let mut e = self.exponent()?;
        let mut acc = vec![FieldElement::ONE];
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Coeffs> {
        match self.peek() {
            Some(b'0'..=b'9') => {
                let v = self.number();
                Ok(self.trim(vec![self.tower.from_int(v as i64)]))
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(vec![self.tower.generator()])
            }
            Some(c) if Some(c) == self.target.var() => {
                self.pos += 1;
                Ok(vec![FieldElement::ZERO, FieldElement::ONE])
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) => Err(self.error(&format!("unexpected '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn finish(mut self) -> Result<Coeffs> {
        if self.src.is_empty() {
            return Err(self.error("empty input"));
        }
        let v = self.expr()?;
        if self.pos != self.src.len() {
            return Err(self.error("trailing input"));
        }
        Ok(v)
    }
}

/// Parses an element of K written over `w`, e.g. `w^2+1`.
pub fn parse_field_element(tower: &FieldTower, text: &str) -> Result<FieldElement> {
    let v = Parser::new(tower, Target::Field, text).finish()?;
    Ok(v.first().copied().unwrap_or(FieldElement::ZERO))
}

/// Parses an element of K[t;σ], e.g. `t^2+(w+1)*t+w`.
pub fn parse_skew_poly(tower: &FieldTower, text: &str) -> Result<SkewPoly> {
    Ok(SkewPoly::new(
        Parser::new(tower, Target::Skew, text).finish()?,
    ))
}

/// Parses a polynomial of F[x], e.g. `x^2+x+1`; coefficients must lie in F.
pub fn parse_central_poly(tower: &FieldTower, text: &str) -> Result<CentralPoly> {
    CentralPoly::new(tower, Parser::new(tower, Target::Central, text).finish()?)
}
