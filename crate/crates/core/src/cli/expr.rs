//! Expressions over the order: integers, named constants, + - * ^, comm and conj.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::{format_digits, OrderElement};
use crate::stabilizer::{commutator, conjugate, named_element, Named};
use crate::witt::MAX_PRECISION;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Name(Named),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Comm(Box<Expr>, Box<Expr>),
    Conj(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(usize, usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    at: usize,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = src[start..i]
                    .parse::<i64>()
                    .map_err(|_| Error::Parse { pos: start, msg: "integer literal out of range".into() })?;
                out.push((start, Tok::Int(v)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(start, i)));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(Error::Parse { pos: start, msg: format!("unexpected character {ch:?}") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { src, toks: tokenize(src)?, at: 0 };
    let e = p.sum()?;
    match p.peek() {
        Tok::End => Ok(e),
        _ => Err(p.error("unexpected trailing input")),
    }
}

impl Parser<'_> {
    fn peek(&self) -> Tok {
        self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos(), msg: msg.to_string() }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("expected {what}")))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.primary()?;
        while self.peek() == Tok::Caret {
            self.bump();
            let negative = if self.peek() == Tok::Minus {
                self.bump();
                true
            } else {
                false
            };
            let n = match self.bump() {
                Tok::Int(n) => n,
                _ => {
                    self.at -= 1;
                    return Err(self.error("expected an integer exponent"));
                }
            };
            base = Expr::Pow(Box::new(base), if negative { -n } else { n });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::LParen => {
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(a, b) => {
                let name = &self.src[a..b];
                if name == "comm" || name == "conj" {
                    self.expect(Tok::LParen, "'(' after function name")?;
                    let x = self.sum()?;
                    self.expect(Tok::Comma, "','")?;
                    let y = self.sum()?;
                    self.expect(Tok::RParen, "')'")?;
                    let (x, y) = (Box::new(x), Box::new(y));
                    return Ok(if name == "comm" { Expr::Comm(x, y) } else { Expr::Conj(x, y) });
                }
                Named::from_symbol(name).map(Expr::Name).ok_or(Error::UnknownIdentifier { pos, name: name.to_string() })
            }
            Tok::End => Err(Error::Parse { pos, msg: "unexpected end of input".into() }),
            _ => Err(Error::Parse { pos, msg: "expected a number, name or '('".into() }),
        }
    }
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Name(n) => write!(f, "{}", n.symbol()),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Expr::Pow(a, n) => {
                a.write_at(f, 5)?;
                write!(f, "^{n}")
            }
            Expr::Comm(a, b) | Expr::Conj(a, b) => {
                write!(f, "{}(", if matches!(self, Expr::Comm(..)) { "comm" } else { "conj" })?;
                a.write_at(f, 0)?;
                write!(f, ", ")?;
                b.write_at(f, 0)?;
                write!(f, ")")
            }
        }
    }

    /// Value modulo S^s_precision.
    pub fn eval(&self, s_precision: u32) -> Result<OrderElement> {
        if s_precision == 0 || s_precision > 2 * MAX_PRECISION {
            return Err(Error::Config(format!("s-precision must be in 1..={}", 2 * MAX_PRECISION)));
        }
        let ev = |e: &Expr| e.eval(s_precision);
        Ok(match self {
            Expr::Int(n) => OrderElement::from_int(*n, s_precision),
            Expr::Name(n) => named_element(*n, s_precision),
            Expr::Neg(a) => -ev(a)?,
            Expr::Add(a, b) => ev(a)? + ev(b)?,
            Expr::Sub(a, b) => ev(a)? - ev(b)?,
            Expr::Mul(a, b) => ev(a)? * ev(b)?,
            Expr::Pow(a, n) => ev(a)?.pow(*n)?,
            Expr::Comm(a, b) => commutator(&ev(a)?, &ev(b)?)?,
            Expr::Conj(a, b) => conjugate(&ev(a)?, &ev(b)?)?,
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// "1 + w*S^2 (mod S^4)".
pub fn expand(src: &str, s_digits: u32) -> Result<String> {
    let x = parse_expr(src)?.eval(s_digits)?;
    Ok(format!("{} (mod S^{s_digits})", format_digits(&x.digits(s_digits))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn expands_alpha() {
        assert_eq!(expand("alpha", 4).unwrap(), "1 + w*S^2 (mod S^4)");
        assert_eq!(expand("e", 6).unwrap(), "1 (mod S^6)");
    }

    #[test]
    fn precedence_and_association() {
        assert_eq!(parse_expr("-a").unwrap_err(), Error::UnknownIdentifier { pos: 1, name: "a".into() });
        let e = parse_expr("-alpha^2").unwrap();
        assert_eq!(e, Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Name(Named::Alpha)), 2))));
        let e = parse_expr("1 - 2 - 3").unwrap();
        assert_eq!(e.to_string(), "1 - 2 - 3");
        assert_eq!(parse_expr("1 - (2 - 3)").unwrap().to_string(), "1 - (2 - 3)");
        assert_eq!(parse_expr("(i*j)*k").unwrap().to_string(), "i*j*k");
        assert_eq!(parse_expr("i*(j*k)").unwrap().to_string(), "i*(j*k)");
        assert_eq!(parse_expr("(-i)^2").unwrap().to_string(), "(-i)^2");
        assert_eq!(parse_expr("1+2*w").unwrap().to_string(), "1 + 2*w");
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_expr("1 + "), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_expr("i $ j"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_expr("(i"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_expr("i^j"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_expr("comm(i)"), Err(Error::Parse { pos: 6, .. })));
        assert_eq!(parse_expr("2 * beta").unwrap_err(), Error::UnknownIdentifier { pos: 4, name: "beta".into() });
    }

    #[test]
    fn defining_expressions() {
        let n = 16;
        let i = parse_expr("(1+2*w)^-1 * (1 - alpha*S)").unwrap().eval(n).unwrap();
        assert_eq!(i, named_element(Named::I, n));
        let c = parse_expr("comm(i, alpha)").unwrap().eval(n).unwrap();
        assert_eq!(c, named_element(Named::AlphaI, n));
        assert_eq!(parse_expr("conj(w, i)").unwrap().eval(n).unwrap(), named_element(Named::J, n));
        assert_eq!(parse_expr("e").unwrap().eval(n).unwrap(), OrderElement::one(n));
        assert_eq!(parse_expr("S^-1").unwrap().eval(n), Err(Error::NonUnit));
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0i64..20).prop_map(Expr::Int),
            proptest::sample::select(Named::ALL.to_vec()).prop_map(Expr::Name),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), -3i64..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Comm(Box::new(a), Box::new(b))),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::Conj(Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            let back = parse_expr(&printed).unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(back.to_string(), printed);
        }
    }
}
