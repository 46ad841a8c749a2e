use num_bigint::BigInt;

use crate::algebra::{BigRat, RatFun};
use crate::error::{Error, Result};
use crate::operator::DiffOp;

/// A parsed expression: either a function of `x` or an operator involving `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Function(RatFun),
    Operator(DiffOp),
}

impl Expr {
    fn from_op(op: DiffOp) -> Expr {
        match op.as_multiplication() {
            Some(f) => Expr::Function(f),
            None => Expr::Operator(op),
        }
    }

    pub fn into_diffop(self) -> DiffOp {
        match self {
            Expr::Function(f) => DiffOp::multiplication(f),
            Expr::Operator(op) => op,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRat),
    X,
    D,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(r) => format!("number {r}"),
        Tok::X => "'x'".into(),
        Tok::D => "'D'".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let value = parse_decimal(&text).ok_or_else(|| Error::Parse {
                    pos: start,
                    msg: format!("malformed number {text:?}"),
                })?;
                out.push((start, Tok::Num(value)));
                continue;
            }
            'x' => Tok::X,
            'D' => Tok::D,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

/// Exact value of a decimal literal such as `12`, `0.25` or `3.`.
fn parse_decimal(text: &str) -> Option<BigRat> {
    let (int_part, frac_part) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if frac_part.contains('.') || (int_part.is_empty() && frac_part.is_empty()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().ok()?;
    let scale = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(BigRat::new(n, scale))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, msg: String) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg,
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = add(lhs, if negate { neg(rhs) } else { rhs });
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = self.peek().clone();
            if op != Tok::Star && op != Tok::Slash {
                return Ok(lhs);
            }
            let (pos, _) = self.bump();
            let rhs = self.unary()?;
            lhs = if op == Tok::Star {
                mul(lhs, rhs)
            } else {
                div(lhs, rhs).map_err(|e| at(pos, e))?
            };
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            let (pos, _) = self.bump();
            let exponent = if *self.peek() == Tok::Minus {
                self.bump();
                neg(self.atom()?)
            } else {
                self.atom()?
            };
            base = pow(base, exponent).map_err(|e| at(pos, e))?;
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Num(r) => {
                self.bump();
                Ok(Expr::Function(RatFun::constant(r)))
            }
            Tok::X => {
                self.bump();
                Ok(Expr::Function(RatFun::x()))
            }
            Tok::D => {
                self.bump();
                Ok(Expr::Operator(DiffOp::d()))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.fail(format!("expected ')', found {}", describe(self.peek())));
                }
                self.bump();
                Ok(inner)
            }
            other => self.fail(format!("expected an operand, found {}", describe(&other))),
        }
    }
}

fn at(pos: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::Parse {
            pos,
            msg: other.to_string(),
        },
    }
}

fn neg(e: Expr) -> Expr {
    match e {
        Expr::Function(f) => Expr::Function(-f),
        Expr::Operator(op) => Expr::Operator(-&op),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Function(f), Expr::Function(g)) => Expr::Function(&f + &g),
        (a, b) => Expr::from_op(&a.into_diffop() + &b.into_diffop()),
    }
}

/// Composition between two operators, scalar multiplication otherwise.
fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Function(f), Expr::Function(g)) => Expr::Function(&f * &g),
        (Expr::Function(f), Expr::Operator(op)) | (Expr::Operator(op), Expr::Function(f)) => {
            Expr::from_op(op.scale(&f))
        }
        (Expr::Operator(a), Expr::Operator(b)) => Expr::from_op(a.compose(&b)),
    }
}

fn div(a: Expr, b: Expr) -> Result<Expr> {
    let Expr::Function(g) = b else {
        return Err(Error::DivideByOperator);
    };
    let inv = g.recip()?;
    Ok(mul(a, Expr::Function(inv)))
}

fn pow(base: Expr, exponent: Expr) -> Result<Expr> {
    let n = match &exponent {
        Expr::Function(f) => f.as_constant().filter(|c| c.is_integer()),
        Expr::Operator(_) => None,
    };
    let n = match n {
        Some(c) => {
            i64::try_from(c.to_integer()).map_err(|_| Error::NonIntegerExponent(c.to_string()))?
        }
        None => {
            let shown = match exponent {
                Expr::Function(f) => f.to_string(),
                Expr::Operator(op) => op.to_string(),
            };
            return Err(Error::NonIntegerExponent(shown));
        }
    };
    match base {
        Expr::Function(f) => Ok(Expr::Function(f.pow(n)?)),
        Expr::Operator(op) => {
            let k = u32::try_from(n).map_err(|_| Error::BadOperatorExponent(n.to_string()))?;
            Ok(Expr::from_op(op.pow(k)))
        }
    }
}

/// Parse an expression in the operator grammar.
///
/// Atoms are `D`, `x` and decimal literals; `+ - * / ^` with the usual
/// precedence (`^` binds tightest), all left-associative, and parentheses.
/// `A*B` composes when both sides involve `D`; otherwise it multiplies, so
/// `D*x` and `x*D` both denote `x·D`. Division is only by functions and
/// exponents must be integer constants (non-negative on operators).
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
    };
    if *p.peek() == Tok::End {
        return p.fail("empty expression".into());
    }
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(format!("unexpected {}", describe(p.peek())));
    }
    Ok(e)
}

/// Parse any expression as an operator; a function becomes multiplication.
pub fn parse_operator(src: &str) -> Result<DiffOp> {
    parse_expr(src).map(Expr::into_diffop)
}

/// Parse an expression that must not involve `D`.
pub fn parse_function(src: &str) -> Result<RatFun> {
    match parse_expr(src)? {
        Expr::Function(f) => Ok(f),
        Expr::Operator(_) => Err(Error::Parse {
            pos: 0,
            msg: "expected a function of x, found an operator".into(),
        }),
    }
}
