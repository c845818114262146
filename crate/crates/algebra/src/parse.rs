//! ASCII polynomial expressions such as `"z1*w1^2 + z2*w2^2"`.

use crate::error::{AlgebraError, Result};
use crate::field::GaloisField;
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug, Clone)]
enum Expr {
    Int(i64),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Expr::Neg(Box::new(self.term()?))
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            let e = u32::try_from(n).or_else(|_| self.err("exponent out of range"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse::<i64>().or_else(|_| self.err("integer too large"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                Ok(Expr::Var(name.to_string()))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

fn collect_vars(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Int(_) => {}
        Expr::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
        Expr::Neg(a) | Expr::Pow(a, _) => collect_vars(a, out),
    }
}

fn build(e: &Expr, ring: &PolyRing) -> Result<Polynomial> {
    Ok(match e {
        Expr::Int(n) => ring.constant(ring.field().from_int(*n)),
        Expr::Var(v) => ring.var_named(v)?,
        Expr::Add(a, b) => &build(a, ring)? + &build(b, ring)?,
        Expr::Sub(a, b) => &build(a, ring)? - &build(b, ring)?,
        Expr::Mul(a, b) => &build(a, ring)? * &build(b, ring)?,
        Expr::Neg(a) => -&build(a, ring)?,
        Expr::Pow(a, n) => build(a, ring)?.pow(*n),
    })
}

/// Parses `text` in an existing ring; unknown variables are an error.
pub fn parse_polynomial(ring: &PolyRing, text: &str) -> Result<Polynomial> {
    build(&parse_expr(text)?, ring)
}

/// Parses several expressions, creating a ring whose variables are `extra_vars`
/// followed by any further names in order of first appearance.
pub fn parse_system(field: &GaloisField, exprs: &[&str], extra_vars: &[&str]) -> Result<(PolyRing, Vec<Polynomial>)> {
    let parsed: Vec<Expr> = exprs.iter().map(|s| parse_expr(s)).collect::<Result<_>>()?;
    let mut vars: Vec<String> = extra_vars.iter().map(|s| s.to_string()).collect();
    for e in &parsed {
        collect_vars(e, &mut vars);
    }
    let ring = PolyRing::new(field.clone(), vars);
    let polys = parsed.iter().map(|e| build(e, &ring)).collect::<Result<_>>()?;
    Ok((ring, polys))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_twisted_form() {
        let f = GaloisField::prime(2).unwrap();
        let (ring, polys) = parse_system(&f, &["z1*w1^2 + z2*w2^2"], &[]).unwrap();
        assert_eq!(ring.var_names(), &["z1", "w1", "z2", "w2"]);
        assert_eq!(polys[0].num_terms(), 2);
        assert_eq!(polys[0].total_degree(), Some(3));
    }

    #[test]
    fn signs_parentheses_and_constants() {
        let f = GaloisField::prime(5).unwrap();
        let ring = PolyRing::new(f.clone(), ["x", "y"]);
        let p = parse_polynomial(&ring, "-(x - 2*y)^2 + 3").unwrap();
        let x = ring.var(0);
        let y = ring.var(1);
        let two = ring.constant(f.from_int(2));
        let expected = &(-&(&x - &(&two * &y)).pow(2)) + &ring.constant(f.from_int(3));
        assert_eq!(p, expected);
    }

    #[test]
    fn errors_are_positioned() {
        let f = GaloisField::prime(3).unwrap();
        let ring = PolyRing::new(f, ["x"]);
        assert!(matches!(parse_polynomial(&ring, "x +"), Err(AlgebraError::Parse { .. })));
        assert!(matches!(parse_polynomial(&ring, "x * )"), Err(AlgebraError::Parse { pos: 4, .. })));
        assert_eq!(parse_polynomial(&ring, "y").unwrap_err(), AlgebraError::UnknownVariable("y".into()));
    }
}
