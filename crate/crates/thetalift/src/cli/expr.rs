//! A small expression language for q-series: `E4^3 / Delta`,
//! `eta^16 * eta(2)^-8`, `1 + 240*q`, `theta^8`.
//!
//! Atoms are integers, `q`, `E<k>` for even `k ≥ 2`, `Delta`, `j`,
//! `eta` (η(τ)), `eta(n)` (η(nτ)) and `theta` (Σ q^{n²}). Operators are
//! `+ - * /` and `^` with an integer exponent.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::arith::{int, rational_to_string, Q};
use crate::error::{Error, Result};
use crate::qseries::{delta, eisenstein, eta, FracPowerSeries};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(i64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("integer {text} is too large")))?;
            out.push(Token::Num(n));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in expression")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(i64),
    Atom(String, Option<i64>),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {op:?} at token {}", self.pos + 1)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Token::Op(c)) if *c == '+' || *c == '-' => *c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Token::Op(c)) if *c == '*' || *c == '/' => *c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }));
                }
                _ => return Err(Error::Parse("an exponent must be an integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let arg = if self.eat('(') {
                    let n = match self.peek().cloned() {
                        Some(Token::Num(n)) => n,
                        _ => return Err(Error::Parse(format!("{name}(…) takes an integer argument"))),
                    };
                    self.pos += 1;
                    self.expect(')')?;
                    Some(n)
                } else {
                    None
                };
                Ok(Expr::Atom(name, arg))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(Error::Parse(format!("expected a term at token {}", self.pos + 1))),
        }
    }
}

fn parse(s: &str) -> Result<Expr> {
    let mut p = Parser { tokens: tokenize(s)?, pos: 0 };
    if p.tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("unexpected input after token {}", p.pos)));
    }
    Ok(e)
}

fn theta(prec: &Q) -> FracPowerSeries {
    let top = prec.ceil().to_integer().to_i64().unwrap_or(0).max(0);
    let mut terms = vec![(Q::from_integer(BigInt::from(0)), Q::one())];
    let mut n = 1i64;
    while n * n < top {
        terms.push((int(n * n), int(2)));
        n += 1;
    }
    FracPowerSeries::from_terms(terms, Some(prec.clone()))
}

fn atom(name: &str, arg: Option<i64>, work: &Q) -> Result<FracPowerSeries> {
    let no_arg = |s: FracPowerSeries| -> Result<FracPowerSeries> {
        match arg {
            None => Ok(s),
            Some(_) => Err(Error::Parse(format!("{name} takes no argument"))),
        }
    };
    match name {
        "q" => no_arg(FracPowerSeries::monomial(&Q::one(), Q::one())),
        "Delta" => no_arg(delta(work)),
        "j" => no_arg(eisenstein(4, &(work + int(1)))?.pow(3)?.mul(&delta(&(work + int(2))).pow(-1)?)),
        "theta" => no_arg(theta(work)),
        "eta" => {
            let n = arg.unwrap_or(1);
            if n < 1 {
                return Err(Error::Parse("eta(n) needs n ≥ 1".into()));
            }
            Ok(eta(n as u64, work))
        }
        _ => {
            let k = name
                .strip_prefix('E')
                .and_then(|t| t.parse::<u64>().ok())
                .ok_or_else(|| Error::Parse(format!("unknown series {name:?}")))?;
            no_arg(eisenstein(k, work)?)
        }
    }
}

fn eval(e: &Expr, work: &Q) -> Result<FracPowerSeries> {
    Ok(match e {
        Expr::Num(n) => FracPowerSeries::constant(int(*n)),
        Expr::Atom(name, arg) => atom(name, *arg, work)?,
        Expr::Neg(x) => eval(x, work)?.neg(),
        Expr::Pow(x, n) => eval(x, work)?.pow(*n)?,
        Expr::Bin(op, a, b) => {
            let a = eval(a, work)?;
            let b = eval(b, work)?;
            match op {
                '+' => a.add(&b),
                '-' => a.sub(&b),
                '*' => a.mul(&b),
                _ => a.mul(&b.invert()?),
            }
        }
    })
}

/// Evaluates `expr` with every coefficient below `q^prec` determined. The
/// working precision of the atoms is raised until the result is known that
/// far.
pub fn evaluate(expr: &str, prec: &Q) -> Result<FracPowerSeries> {
    let e = parse(expr)?;
    let mut slack = int(2);
    for _ in 0..8 {
        let work = prec + &slack;
        let s = eval(&e, &work)?;
        match s.truncation() {
            Some(t) if t < prec => slack = &slack * int(2) + (prec - t),
            _ => return Ok(s.truncate(prec)),
        }
    }
    Err(Error::Precision(format!(
        "could not determine the expression below q^{}",
        rational_to_string(prec)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_expansion() {
        let s = evaluate("E4^3 / Delta", &int(3)).unwrap();
        assert_eq!(s.coefficient_int(-1).unwrap(), int(1));
        assert_eq!(s.constant_term().unwrap(), int(744));
        assert_eq!(s.coefficient_int(1).unwrap(), int(196884));
        assert_eq!(s, evaluate("j", &int(3)).unwrap());
    }

    #[test]
    fn precedence_and_unary_minus() {
        let s = evaluate("1 - 2*q^2 + (q + 1)^2", &int(5)).unwrap();
        assert_eq!(s.constant_term().unwrap(), int(2));
        assert_eq!(s.coefficient_int(1).unwrap(), int(2));
        assert_eq!(s.coefficient_int(2).unwrap(), int(-1));
        let t = evaluate("-q^-1 * q", &int(2)).unwrap();
        assert_eq!(t.constant_term().unwrap(), int(-1));
    }

    #[test]
    fn eta_quotient_and_theta() {
        let s = evaluate("eta^16 / eta(2)^8", &int(4)).unwrap();
        let c: Vec<Q> = (0..4).map(|n| s.coefficient_int(n).unwrap()).collect();
        assert_eq!(c, vec![int(1), int(-16), int(112), int(-448)]);
        let t = evaluate("theta^4", &int(3)).unwrap();
        assert_eq!(t.coefficient_int(1).unwrap(), int(8));
        assert_eq!(t.coefficient_int(2).unwrap(), int(24));
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "E4 +", "E5", "foo", "E4^x", "(E4", "E4 E6", "eta(0)", "Delta(2)", "q$"] {
            assert!(evaluate(bad, &int(3)).is_err(), "{bad:?}");
        }
    }
}
