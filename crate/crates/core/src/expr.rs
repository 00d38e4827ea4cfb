//! A small expression language for tautological elements: rationals, the
//! symbol `g`, generators `p<i>`/`q<i>`, operators `+ - * ^` and parentheses.
//!
//! `+` and `-` are left-associative and bind loosest, then `*`, then `^`.
//! Implicit multiplication is not allowed. `parse` followed by evaluation
//! inverts the canonical rendering of [`TautElement`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::coeff::GenusPoly;
use crate::tautring::{GenKind, TautElement};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("unknown symbol `{symbol}` at byte {offset}")]
    UnknownSymbol { symbol: String, offset: usize },
    #[error("q0 is not a generator (substituted as g) at byte {offset}")]
    QZero { offset: usize },
    #[error("p0 is not a generator at byte {offset}")]
    PZero { offset: usize },
    #[error("malformed exponent at byte {offset}: expected a nonnegative integer")]
    MalformedExponent { offset: usize },
    #[error("unbalanced parentheses at byte {offset}")]
    UnbalancedParen { offset: usize },
    #[error("unexpected `{found}` at byte {offset}")]
    UnexpectedToken { found: String, offset: usize },
    #[error("unexpected end of input at byte {offset}")]
    UnexpectedEnd { offset: usize },
    #[error("invalid number at byte {offset}")]
    InvalidNumber { offset: usize },
}

impl ExprError {
    pub fn offset(&self) -> usize {
        match self {
            ExprError::UnknownSymbol { offset, .. }
            | ExprError::QZero { offset }
            | ExprError::PZero { offset }
            | ExprError::MalformedExponent { offset }
            | ExprError::UnbalancedParen { offset }
            | ExprError::UnexpectedToken { offset, .. }
            | ExprError::UnexpectedEnd { offset } => *offset,
            ExprError::InvalidNumber { offset } => *offset,
        }
    }
}

/// Abstract syntax over rationals, `g`, generators and `+ - * ^`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    Genus,
    Gen(GenKind, u32),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Evaluates into the free algebra over `Q[g]`.
    pub fn eval(&self) -> TautElement {
        match self {
            Expr::Num(r) => TautElement::scalar(GenusPoly::from_rational(r.clone())),
            Expr::Genus => TautElement::scalar(GenusPoly::g()),
            Expr::Gen(kind, index) => {
                TautElement::generator(*kind, *index).expect("index >= 1 by parsing")
            }
            Expr::Neg(e) => -e.eval(),
            Expr::Add(a, b) => a.eval() + b.eval(),
            Expr::Sub(a, b) => a.eval() - b.eval(),
            Expr::Mul(a, b) => a.eval() * b.eval(),
            Expr::Pow(a, n) => a.eval().pow(*n),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => write!(f, "{}", crate::coeff::rational_to_string(r)),
            Expr::Genus => write!(f, "g"),
            Expr::Gen(GenKind::P, i) => write!(f, "p{}", i),
            Expr::Gen(GenKind::Q, i) => write!(f, "q{}", i),
            Expr::Neg(e) => write!(f, "-({})", e),
            Expr::Add(a, b) => write!(f, "({} + {})", a, b),
            Expr::Sub(a, b) => write!(f, "({} - {})", a, b),
            Expr::Mul(a, b) => write!(f, "({}*{})", a, b),
            Expr::Pow(a, n) => write!(f, "({}^{})", a, n),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(src: &'a str) -> Result<Vec<(Tok, usize)>, ExprError> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while let Some(t) = lx.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(Tok, usize)>, ExprError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                let numer = self.read_digits();
                // `a/b` is a single rational literal; there is no division operator
                let denom = if self.pos < self.src.len() && self.src[self.pos] == b'/' {
                    self.pos += 1;
                    if self.pos >= self.src.len()
                        || !self.src[self.pos].is_ascii_digit()
                    {
                        return Err(ExprError::InvalidNumber { offset: start });
                    }
                    Some(self.read_digits())
                } else {
                    None
                };
                let n: BigInt = numer.parse().expect("digits parse");
                let d: BigInt = denom
                    .map(|d| d.parse().expect("digits parse"))
                    .unwrap_or_else(|| BigInt::from(1));
                if d == BigInt::from(0) {
                    return Err(ExprError::InvalidNumber { offset: start });
                }
                Tok::Num(BigRational::new(n, d))
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let ident =
                    std::str::from_utf8(&self.src[self.pos..end]).unwrap().to_string();
                self.pos = end;
                Tok::Ident(ident)
            }
            other => {
                return Err(ExprError::UnexpectedToken {
                    found: (other as char).to_string(),
                    offset: start,
                })
            }
        };
        Ok(Some((tok, start)))
    }

    fn read_digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string()
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn advance(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_offset(&self) -> usize {
        self.len
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = if matches!(self.peek(), Some((Tok::Minus, _))) {
            self.advance();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some((Tok::Plus, _)) => {
                    self.advance();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some((Tok::Minus, _)) => {
                    self.advance();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some((Tok::Star, _))) {
            self.advance();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some((Tok::Caret, _))) {
            let (_, caret_off) = self.advance().unwrap();
            match self.advance() {
                Some((Tok::Num(r), off)) => {
                    use num_traits::{One, Signed, ToPrimitive, Zero};
                    if !r.denom().is_one() || r.is_negative() {
                        return Err(ExprError::MalformedExponent { offset: off });
                    }
                    let n = if r.is_zero() {
                        0
                    } else {
                        r.numer()
                            .to_u32()
                            .ok_or(ExprError::MalformedExponent { offset: off })?
                    };
                    Ok(Expr::Pow(Box::new(base), n))
                }
                Some((_, off)) => Err(ExprError::MalformedExponent { offset: off }),
                None => Err(ExprError::MalformedExponent {
                    offset: caret_off + 1,
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.advance() {
            Some((Tok::Num(r), _)) => Ok(Expr::Num(r)),
            Some((Tok::Ident(name), offset)) => classify_ident(&name, offset),
            Some((Tok::LParen, open_off)) => {
                let inner = self.expr()?;
                match self.advance() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    Some((_, off)) => {
                        Err(ExprError::UnbalancedParen { offset: off })
                    }
                    None => Err(ExprError::UnbalancedParen { offset: open_off }),
                }
            }
            Some((Tok::RParen, offset)) => {
                Err(ExprError::UnbalancedParen { offset })
            }
            Some((tok, offset)) => Err(ExprError::UnexpectedToken {
                found: format!("{:?}", tok),
                offset,
            }),
            None => Err(ExprError::UnexpectedEnd {
                offset: self.end_offset(),
            }),
        }
    }
}

fn classify_ident(name: &str, offset: usize) -> Result<Expr, ExprError> {
    if name == "g" {
        return Ok(Expr::Genus);
    }
    let (kind, rest) = match name.as_bytes().first() {
        Some(b'p') => (GenKind::P, &name[1..]),
        Some(b'q') => (GenKind::Q, &name[1..]),
        _ => {
            return Err(ExprError::UnknownSymbol {
                symbol: name.to_string(),
                offset,
            })
        }
    };
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ExprError::UnknownSymbol {
            symbol: name.to_string(),
            offset,
        });
    }
    let index: u32 = rest.parse().map_err(|_| ExprError::UnknownSymbol {
        symbol: name.to_string(),
        offset,
    })?;
    if index == 0 {
        return Err(match kind {
            GenKind::Q => ExprError::QZero { offset },
            GenKind::P => ExprError::PZero { offset },
        });
    }
    Ok(Expr::Gen(kind, index))
}

/// Parses source text into an AST, with byte-offset errors.
pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let toks = Lexer::tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        len: src.len(),
    };
    let e = p.expr()?;
    match p.peek() {
        Some((Tok::RParen, offset)) => {
            Err(ExprError::UnbalancedParen { offset: *offset })
        }
        Some((tok, offset)) => Err(ExprError::UnexpectedToken {
            found: format!("{:?}", tok),
            offset: *offset,
        }),
        None => Ok(e),
    }
}

/// Parses and evaluates in one step.
pub fn parse_element(src: &str) -> Result<TautElement, ExprError> {
    parse(src).map(|e| e.eval())
}

/// Canonical rendering; [`parse_element`] inverts it.
pub fn print_element(x: &TautElement) -> String {
    x.to_string()
}
