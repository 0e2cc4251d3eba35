//! Multivariate polynomials with rational coefficients in `x1, x2, …`
//! (`x` is `x1`), and a parser for expressions such as `x1*x2/2` or
//! `(x+1)^2 - 3·x`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Largest exponent accepted by the parser.
const MAX_EXPONENT: u32 = 64;

/// Monomial exponent vectors (trailing zeros trimmed) to coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl Polynomial {
    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Polynomial { terms }
    }

    pub fn integer(c: i64) -> Self {
        Polynomial::constant(BigRational::from_integer(c.into()))
    }

    /// The variable `x_{i+1}`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigRational::one());
        Polynomial { terms }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text)?.parse()
    }

    /// Number of variables the polynomial mentions (highest index).
    pub fn arity(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_empty())
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let s = terms.remove(e).unwrap_or_else(BigRational::zero) + c;
            if !s.is_zero() {
                terms.insert(e.clone(), s);
            }
        }
        Polynomial { terms }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        let mut out = Polynomial::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let n = e1.len().max(e2.len());
                let e: Vec<u32> = (0..n)
                    .map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0))
                    .collect();
                let mut single = BTreeMap::new();
                single.insert(trim(e), c1 * c2);
                out = out.add(&Polynomial { terms: single });
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        (0..k).fold(Polynomial::integer(1), |acc, _| acc.mul(self))
    }

    /// Exact value at an integer point; missing coordinates are an error.
    pub fn eval(&self, x: &[BigInt]) -> Result<BigRational> {
        if x.len() < self.arity() {
            return Err(Error::Mismatch { expected: self.arity(), found: x.len() });
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = BigInt::one();
            for (xi, &k) in x.iter().zip(e) {
                m *= num_traits::pow(xi.clone(), k as usize);
            }
            acc += c * BigRational::from_integer(m);
        }
        Ok(acc)
    }

    /// Value at an integer point, which must be an integer.
    pub fn eval_integer(&self, x: &[BigInt]) -> Result<BigInt> {
        let v = self.eval(x)?;
        if !v.is_integer() {
            return Err(Error::invalid(format!("f{} = {v} is not an integer", fmt_point(x))));
        }
        Ok(v.to_integer())
    }

    /// Value mod `d` of an integer-coefficient polynomial in one variable.
    pub(crate) fn eval_mod(&self, x: u64, d: u64) -> u64 {
        let mut acc: u128 = 0;
        let d128 = d as u128;
        for (e, c) in &self.terms {
            let c = c.to_integer() % BigInt::from(d);
            let c = if c.is_negative() { c + BigInt::from(d) } else { c };
            let mut term = u128::try_from(c).unwrap();
            for _ in 0..e.first().copied().unwrap_or(0) {
                term = term * x as u128 % d128;
            }
            acc = (acc + term) % d128;
        }
        acc as u64
    }
}

pub(crate) fn fmt_point(x: &[BigInt]) -> String {
    let parts: Vec<String> = x.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut parts = Vec::new();
            let mag = c.abs();
            if !mag.is_one() || e.is_empty() {
                parts.push(mag.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => parts.push(format!("x{}", i + 1)),
                    _ => parts.push(format!("x{}^{k}", i + 1)),
                }
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            f.write_str(&parts.join("*"))?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Op(char),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

fn perr(col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, message: format!("column {}: {}", col + 1, msg.into()) }
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (col, c) = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|p| p.1).collect();
                toks.push((col, Tok::Num(s.parse().unwrap())));
            } else if c == 'x' {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let idx = if start == i {
                    1
                } else {
                    let s: String = chars[start..i].iter().map(|p| p.1).collect();
                    s.parse::<usize>().map_err(|_| perr(col, "bad variable index"))?
                };
                if idx == 0 {
                    return Err(perr(col, "variables are numbered from x1"));
                }
                toks.push((col, Tok::Var(idx - 1)));
            } else if "+-*/^()·−".contains(c) {
                let c = match c {
                    '·' => '*',
                    '−' => '-',
                    c => c,
                };
                toks.push((col, Tok::Op(c)));
                i += 1;
            } else {
                return Err(perr(col, format!("unexpected character {c:?}")));
            }
        }
        Ok(Parser { toks, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or_else(|| self.toks.last().map_or(0, |t| t.0 + 1))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse(mut self) -> Result<Polynomial> {
        let p = self.sum()?;
        if self.pos != self.toks.len() {
            return Err(perr(self.col(), "trailing input"));
        }
        Ok(p)
    }

    fn sum(&mut self) -> Result<Polynomial> {
        let mut acc = self.product()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.product()?);
            } else if self.eat('-') {
                acc = acc.add(&self.product()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let col = self.col();
                let d = self.unary()?;
                if !d.is_constant() || d.terms.is_empty() {
                    return Err(perr(col, "can only divide by a nonzero constant"));
                }
                let c = d.terms[&Vec::new()].clone();
                acc = acc.mul(&Polynomial::constant(c.recip()));
            } else if matches!(self.peek(), Some(Tok::Var(_) | Tok::Num(_) | Tok::Op('('))) {
                // juxtaposition, as in `2x` or `x1(x1+2)`
                acc = acc.mul(&self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            let col = self.col();
            match self.toks.get(self.pos).map(|t| t.1.clone()) {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    let k = u32::try_from(&k).ok().filter(|&k| k <= MAX_EXPONENT);
                    let k = k.ok_or_else(|| perr(col, format!("exponent above {MAX_EXPONENT}")))?;
                    Ok(base.pow(k))
                }
                _ => Err(perr(col, "exponent must be a nonnegative integer")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        match self.toks.get(self.pos).map(|t| t.1.clone()) {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(BigRational::from_integer(n)))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(Polynomial::var(i))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let p = self.sum()?;
                if !self.eat(')') {
                    return Err(perr(self.col(), "expected ')'"));
                }
                Ok(p)
            }
            _ => Err(perr(col, "expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parse_and_eval() {
        let f = Polynomial::parse("x(x+2)").unwrap();
        assert_eq!(f.eval_integer(&ints(&[5])).unwrap(), BigInt::from(35));
        assert_eq!(f, Polynomial::parse("x1^2 + 2*x1").unwrap());
        let area = Polynomial::parse("x1*x2/2").unwrap();
        assert_eq!(area.eval_integer(&ints(&[3, 4, 5])).unwrap(), BigInt::from(6));
        assert!(area.eval_integer(&ints(&[3, 3])).is_err());
        let g = Polynomial::parse("2(x1^2+x2^2+x3^2+x4^2) − (x1+x2+x3+x4)^2").unwrap();
        assert_eq!(g.eval_integer(&ints(&[18, 23, 27, 146])).unwrap(), BigInt::zero());
        assert_eq!(Polynomial::parse("-x^2 + 3·x").unwrap().eval_integer(&ints(&[4])).unwrap(), BigInt::from(-4));
        assert!(Polynomial::parse("1").unwrap().is_constant());
        assert!(Polynomial::parse("x - x + 7").unwrap().is_constant());
        assert_eq!(Polynomial::parse("x4").unwrap().arity(), 4);
        assert!(Polynomial::parse("x2").unwrap().eval(&ints(&[1])).is_err());
    }

    #[test]
    fn parse_errors() {
        for bad in ["x +", "(x", "x^y", "x / x", "x0", "2 $ 3", "x^100"] {
            assert!(matches!(Polynomial::parse(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn modular_evaluation() {
        let f = Polynomial::parse("x^2 - 3x + 7").unwrap();
        for d in [1u64, 2, 5, 12] {
            for x in 0..d {
                let exact = f.eval_integer(&ints(&[x as i64])).unwrap();
                let expected = exact.mod_floor(&BigInt::from(d));
                assert_eq!(BigInt::from(f.eval_mod(x, d)), expected);
            }
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["x1*x2/2", "x^3 - 2x + 1", "-(x1 - x2)^2"] {
            let p = Polynomial::parse(s).unwrap();
            assert_eq!(Polynomial::parse(&p.to_string()).unwrap(), p, "{p}");
        }
    }
}
