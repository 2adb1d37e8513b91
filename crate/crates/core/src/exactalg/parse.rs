//! A small recursive-descent parser for rational expressions in `t`.
//!
//! Grammar (juxtaposition is multiplication):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? int)?
//! atom   := int | 't' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::One;

use super::{ExactError, IntPoly, RatFun};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ExactError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {}
            't' => out.push(Tok::T),
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            '*' | '·' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            d if d.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..=i].iter().collect();
                out.push(Tok::Int(lit.parse().expect("digits")));
            }
            other => {
                return Err(ExactError::Parse(format!("unexpected character {other:?}")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RatFun, ExactError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, ExactError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                Some(Tok::Int(_)) | Some(Tok::T) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun, ExactError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun, ExactError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let e: u32 = match self.bump() {
            Some(Tok::Int(n)) => u32::try_from(n)
                .map_err(|_| ExactError::Parse("exponent too large".into()))?,
            other => return Err(ExactError::Parse(format!("expected exponent, found {other:?}"))),
        };
        let mut acc = RatFun::from_poly(IntPoly::one());
        for _ in 0..e {
            acc = &acc * &base;
        }
        if neg {
            acc = acc.recip()?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<RatFun, ExactError> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(RatFun::from_poly(IntPoly::new(vec![n]))),
            Some(Tok::T) => Ok(RatFun::t_pow(1)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    other => Err(ExactError::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(ExactError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub(crate) fn parse_ratfun(s: &str) -> Result<RatFun, ExactError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(ExactError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExactError::Parse(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_powers() {
        let f = parse_ratfun("(1+t)(1+t+t^2)").unwrap();
        assert_eq!(f.as_poly().unwrap(), IntPoly::from_i64s(&[1, 2, 2, 1]));
        let g = parse_ratfun("2t^3 - t").unwrap();
        assert_eq!(g.as_poly().unwrap(), IntPoly::from_i64s(&[0, -1, 0, 2]));
        let h = parse_ratfun("t^-2 * t^3").unwrap();
        assert_eq!(h, RatFun::t_pow(1));
        assert_eq!(parse_ratfun("−1").unwrap(), RatFun::from_int(-1));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfun("").is_err());
        assert!(parse_ratfun("(1+t").is_err());
        assert!(parse_ratfun("x").is_err());
        assert!(parse_ratfun("1/0").is_err());
        assert!(parse_ratfun("1 )").is_err());
    }
}
