//! Recursive-descent parser for motivic expressions.
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := unary ('*' unary | '/' INT)*
//! unary := '-' unary | atom ['^' INT]
//! atom  := INT | 'zeta_m' '(' INT ')' | 'Li_m' '(' INT ';' point ')'
//!        | 'twopi_i' | '(' expr ')'
//! point := ['-'] INT ['/' INT] | IDENT
//! ```
//! `zm`, `lim` and `tpim` are accepted as short names, and `,` may replace `;`.

use rug::{Integer, Rational};

use super::gens::{MGen, Point};
use super::{lim, MotivicExpr};
use crate::error::{Error, Result};

pub fn parse_expr(text: &str) -> Result<MotivicExpr> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<Integer> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse::<Integer>().unwrap())
    }

    fn small_int(&mut self) -> Result<u32> {
        let start = self.pos;
        self.int()?.to_u32().ok_or(Error::Parse {
            pos: start,
            msg: "integer out of range".into(),
        })
    }

    fn ident(&mut self) -> Option<String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            if self.pos == start && self.s[self.pos].is_ascii_digit() {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            Some(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
        }
    }

    fn expr(&mut self) -> Result<MotivicExpr> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.scale(&Rational::from(-1));
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MotivicExpr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.int()?;
                if d == 0 {
                    return Err(Error::Parse {
                        pos: at,
                        msg: "division by zero".into(),
                    });
                }
                acc = acc.scale(&Rational::from((Integer::from(1), d)));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MotivicExpr> {
        if self.eat(b'-') {
            return Ok(self.unary()?.scale(&Rational::from(-1)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.small_int()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MotivicExpr> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(MotivicExpr::constant(Rational::from(self.int()?))),
            Some(_) => {
                let at = self.pos;
                let name = self.ident().ok_or_else(|| self.err("unexpected character"))?;
                match name.as_str() {
                    "twopi_i" | "tpim" => Ok(MotivicExpr::gen(MGen::Tpi)),
                    "zeta_m" | "zm" => {
                        self.expect(b'(')?;
                        let n = self.small_int()?;
                        self.expect(b')')?;
                        lim(n, Point::Rat(Rational::from(1)))
                    }
                    "Li_m" | "lim" => {
                        self.expect(b'(')?;
                        let n = self.small_int()?;
                        if !self.eat(b';') {
                            self.expect(b',')?;
                        }
                        let z = self.point()?;
                        self.expect(b')')?;
                        lim(n, z)
                    }
                    _ => Err(Error::Parse {
                        pos: at,
                        msg: format!("unknown symbol '{name}'"),
                    }),
                }
            }
        }
    }

    fn point(&mut self) -> Result<Point> {
        let neg = self.eat(b'-');
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.int()?;
                let den = if self.eat(b'/') {
                    self.int()?
                } else {
                    Integer::from(1)
                };
                if den == 0 {
                    return Err(self.err("zero denominator"));
                }
                let r = Rational::from((num, den));
                Ok(Point::Rat(if neg { -r } else { r }))
            }
            _ if neg => Err(self.err("expected a number after '-'")),
            _ => self
                .ident()
                .map(Point::Sym)
                .ok_or_else(|| self.err("expected a point")),
        }
    }
}
