//! A small parser for rational functions of `z` with real coefficients,
//! e.g. `z/(1-z)`, `-z`, `(2*z - z^2) / (2*(1-z)^2)`.

use crate::error::{Error, Result};
use crate::series::{rational_expand, PowerSeries};

/// `num / den` with polynomial coefficients in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn {
    pub num: Vec<f64>,
    pub den: Vec<f64>,
}

fn poly_add(a: &[f64], b: &[f64], sign: f64) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += sign * x;
    }
    out
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl RationalFn {
    fn constant(c: f64) -> Self {
        Self {
            num: vec![c],
            den: vec![1.0],
        }
    }

    fn z() -> Self {
        Self {
            num: vec![0.0, 1.0],
            den: vec![1.0],
        }
    }

    fn add(&self, o: &Self, sign: f64) -> Self {
        Self {
            num: poly_add(
                &poly_mul(&self.num, &o.den),
                &poly_mul(&o.num, &self.den),
                sign,
            ),
            den: poly_mul(&self.den, &o.den),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            num: poly_mul(&self.num, &o.num),
            den: poly_mul(&self.den, &o.den),
        }
    }

    fn div(&self, o: &Self) -> Result<Self> {
        if o.num.iter().all(|c| *c == 0.0) {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(Self {
            num: poly_mul(&self.num, &o.den),
            den: poly_mul(&self.den, &o.num),
        })
    }

    fn pow(&self, e: i32) -> Result<Self> {
        let mut out = Self::constant(1.0);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(self);
        }
        if e < 0 {
            Self::constant(1.0).div(&out)
        } else {
            Ok(out)
        }
    }

    /// Taylor expansion at 0 truncated at `degree`. Common powers of `z` are
    /// cancelled first; a remaining pole at the origin is an error.
    pub fn expand(&self, degree: usize) -> Result<PowerSeries> {
        let lead = |p: &[f64]| p.iter().position(|c| *c != 0.0);
        let Some(kn) = lead(&self.num) else {
            return Ok(PowerSeries::zero(degree));
        };
        let kd = lead(&self.den).ok_or_else(|| Error::Parse("zero denominator".into()))?;
        if kd > kn {
            return Err(Error::Parse("expression has a pole at z = 0".into()));
        }
        rational_expand(&self.num[kd..], &self.den[kd..], degree)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn expr(&mut self) -> Result<RationalFn> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(&rhs, if op == b'+' { 1.0 } else { -1.0 });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFn> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc.div(&self.unary()?)?;
                }
                // implicit product such as `2z` or `3(1-z)`
                Some(c) if c == b'z' || c == b'(' => acc = acc.mul(&self.unary()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFn> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.mul(&RationalFn::constant(-1.0)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFn> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let e: i32 = std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .filter(|e| *e <= 64)
            .ok_or_else(|| self.err("expected an integer exponent up to 64"))?;
        base.pow(if negative { -e } else { e })
    }

    fn atom(&mut self) -> Result<RationalFn> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                Ok(RationalFn::z())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                text.parse()
                    .map(RationalFn::constant)
                    .map_err(|_| self.err("bad number"))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

pub fn parse_rational(src: &str) -> Result<RationalFn> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parses `src` and expands it at `degree`.
pub fn parse_series(src: &str, degree: usize) -> Result<PowerSeries> {
    parse_rational(src)?.expand(degree)
}
