//! Text syntax for polynomials.
//!
//! Accepts forms like `x^2 - 3/2*x + 1`, `x^2+4x+3 mod 5`, and `(1+x)^2`.
//! Multiplication may be implicit (`4x`, `2(x+1)`), `^` takes a nonnegative
//! integer exponent, and `/` divides by a nonzero constant. A trailing
//! `mod p` selects F_p; otherwise the caller's field hint (default ℚ) is
//! used.

use crate::field::FieldSpec;
use crate::poly::Poly;
use crate::{Error, Result};

/// Parse a polynomial in the variable `x`. A trailing `mod p` overrides
/// `field_hint`; a conflict between the two is an error.
pub fn parse_poly(input: &str, field_hint: Option<FieldSpec>) -> Result<Poly> {
    let mut tokens = tokenize(input)?;

    // Trailing "mod p" selects the field.
    let field = if let [.., Token::Mod, Token::Int(p)] = tokens.as_slice() {
        let f = FieldSpec::fp(*p)?;
        if let Some(hint) = field_hint {
            if hint != f {
                return Err(Error::Parse(format!(
                    "polynomial is written mod {p} but the context field is {hint}"
                )));
            }
        }
        tokens.truncate(tokens.len() - 2);
        f
    } else {
        field_hint.unwrap_or(FieldSpec::Q)
    };

    let mut p = Parser {
        tokens,
        pos: 0,
        field,
    };
    let poly = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!(
            "unexpected trailing input at token {}",
            p.pos
        )));
    }
    Ok(poly)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Token {
    Int(u64),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Mod,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut out = vec![];
    let mut chars = input.char_indices().peekable();
    while let Some(&(i, ch)) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut n: u64 = 0;
                while let Some(&(_, d @ '0'..='9')) = chars.peek() {
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(d as u64 - '0' as u64))
                        .ok_or_else(|| {
                            Error::Parse(format!("integer literal too large at byte {i}"))
                        })?;
                    chars.next();
                }
                out.push(Token::Int(n));
            }
            'x' => {
                chars.next();
                out.push(Token::X);
            }
            'm' => {
                let rest: String = chars.clone().map(|(_, c)| c).take(3).collect();
                if rest == "mod" {
                    for _ in 0..3 {
                        chars.next();
                    }
                    out.push(Token::Mod);
                } else {
                    return Err(Error::Parse(format!("unexpected `{ch}` at byte {i}")));
                }
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            _ => return Err(Error::Parse(format!("unexpected `{ch}` at byte {i}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    field: FieldSpec,
}

impl Parser {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(op @ (Token::Plus | Token::Minus)) = self.peek() {
            self.bump();
            let rhs = self.term()?;
            acc = if op == Token::Plus {
                acc.add(&rhs)
            } else {
                acc.sub(&rhs)
            };
        }
        Ok(acc)
    }

    // term := factor (('*'|'/') factor | factor)*  — the bare second form
    // is implicit multiplication, e.g. `4x` or `2(x+1)`.
    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Token::Slash) => {
                    self.bump();
                    let d = self.factor()?;
                    if d.degree() != Some(0) {
                        return Err(Error::Parse(
                            "division is only defined by a nonzero constant".into(),
                        ));
                    }
                    acc = acc.mul_scalar(&self.field.inv(&d.coeff(0)));
                }
                Some(Token::Int(_) | Token::X | Token::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // factor := '-'* atom ('^' int)?
    fn factor(&mut self) -> Result<Poly> {
        let mut negate = false;
        while self.peek() == Some(Token::Minus) {
            self.bump();
            negate = !negate;
        }
        let mut base = self.atom()?;
        if self.peek() == Some(Token::Caret) {
            self.bump();
            match self.bump() {
                Some(Token::Int(e)) => {
                    let e = u32::try_from(e)
                        .map_err(|_| Error::Parse(format!("exponent {e} too large")))?;
                    base = base.pow(e);
                }
                _ => return Err(Error::Parse("`^` must be followed by an integer".into())),
            }
        }
        Ok(if negate { base.neg() } else { base })
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.bump() {
            Some(Token::Int(n)) => {
                let c = self
                    .field
                    .from_ratio(i64::try_from(n).map_err(|_| {
                        Error::Parse(format!("integer literal {n} too large"))
                    })?, 1)?;
                Ok(Poly::constant(self.field, c))
            }
            Some(Token::X) => Ok(Poly::x(self.field)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Token::RParen) {
                    return Err(Error::Parse("missing closing `)`".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!(
                "expected a number, `x`, or `(`, found {other:?}"
            ))),
        }
    }
}
