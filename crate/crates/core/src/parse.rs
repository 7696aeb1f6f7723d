//! Text grammars: field descriptors (`Q`, `F5`, `F5(t)(x)`, `Q(t2,x)`) and
//! element expressions (integer literals, `/`, variable names, `+ - * ^ ( )`).

use crate::arith::field::{FieldDescriptor, FieldElement};
use crate::arith::finite::is_prime;
use crate::error::{Error, Result};

pub fn parse_field(s: &str) -> Result<FieldDescriptor> {
    let s = s.trim();
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty field descriptor".into()));
    }
    let (base, mut rest) = if let Some(r) = s.strip_prefix('Q') {
        (FieldDescriptor::Rationals, r)
    } else if let Some(r) = s.strip_prefix('F') {
        let digits: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(Error::Parse(format!("bad finite field in `{s}`")));
        }
        let q: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad cardinality in `{s}`")))?;
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::Parse(format!("{q} is not a prime power")))?;
        (FieldDescriptor::finite(p, k)?, &r[digits.len()..])
    } else {
        return Err(Error::Parse(format!("unknown field descriptor `{s}`")));
    };
    let mut fd = base;
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("unexpected `{rest}` in field descriptor")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse("unbalanced parenthesis in field".into()))?;
        let inner = &rest[1..close];
        let vars: Vec<String> = inner
            .split(',')
            .map(|v| v.trim().to_string())
            .collect();
        for v in &vars {
            if v.is_empty()
                || !v.chars().next().unwrap().is_ascii_alphabetic()
                || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::Parse(format!("bad variable name `{v}`")));
            }
        }
        fd = FieldDescriptor::function_field(fd, vars)?;
        rest = &rest[close + 1..];
    }
    Ok(fd)
}

pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut n = q;
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            return if n == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    if is_prime(q) {
        Some((q, 1))
    } else {
        None
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Int(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn peek_tok(&mut self) -> Result<Tok> {
        let save = self.pos;
        let t = self.next_tok()?;
        self.pos = save;
        Ok(t)
    }

    fn next_tok(&mut self) -> Result<Tok> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.s.len() {
            return Ok(Tok::End);
        }
        let c = self.s[self.pos];
        self.pos += 1;
        Ok(match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let start = self.pos - 1;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                Tok::Int(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
            }
            c if c.is_ascii_alphabetic() => {
                let start = self.pos - 1;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Tok::Name(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
            }
            c => return Err(Error::Parse(format!("unexpected character `{}`", c as char))),
        })
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    field: &'a FieldDescriptor,
}

impl<'a> Parser<'a> {
    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = self.term()?;
        loop {
            match self.lex.peek_tok()? {
                Tok::Plus => {
                    self.lex.next_tok()?;
                    acc = acc.add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.lex.next_tok()?;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.factor()?;
        loop {
            match self.lex.peek_tok()? {
                Tok::Star => {
                    self.lex.next_tok()?;
                    acc = acc.mul(&self.factor()?)?;
                }
                Tok::Slash => {
                    self.lex.next_tok()?;
                    acc = acc.div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FieldElement> {
        match self.lex.peek_tok()? {
            Tok::Minus => {
                self.lex.next_tok()?;
                Ok(self.factor()?.neg())
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<FieldElement> {
        let base = self.atom()?;
        if self.lex.peek_tok()? == Tok::Caret {
            self.lex.next_tok()?;
            let neg = if self.lex.peek_tok()? == Tok::Minus {
                self.lex.next_tok()?;
                true
            } else {
                false
            };
            match self.lex.next_tok()? {
                Tok::Int(d) => {
                    let e: i64 = d
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {d}")))?;
                    base.pow(if neg { -e } else { e })
                }
                t => Err(Error::Parse(format!("expected exponent, got {t:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<FieldElement> {
        match self.lex.next_tok()? {
            Tok::Int(d) => {
                let n: i64 = d
                    .parse()
                    .map_err(|_| Error::Parse(format!("integer {d} out of range")))?;
                Ok(FieldElement::from_int(self.field, n))
            }
            Tok::Name(name) => FieldElement::var(self.field, &name)
                .map_err(|_| Error::Parse(format!("unknown variable `{name}` in {}", self.field))),
            Tok::LParen => {
                let e = self.expr()?;
                match self.lex.next_tok()? {
                    Tok::RParen => Ok(e),
                    t => Err(Error::Parse(format!("expected `)`, got {t:?}"))),
                }
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

pub fn parse_element(field: &FieldDescriptor, s: &str) -> Result<FieldElement> {
    let mut p = Parser {
        lex: Lexer::new(s),
        field,
    };
    let e = p.expr()?;
    match p.lex.next_tok()? {
        Tok::End => Ok(e),
        t => Err(Error::Parse(format!("trailing input {t:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!(parse_field("Q").unwrap(), FieldDescriptor::Rationals);
        assert_eq!(
            parse_field("F4").unwrap(),
            FieldDescriptor::Finite { p: 2, k: 2 }
        );
        let f = parse_field("F5(t)(x)").unwrap();
        assert_eq!(f.all_vars(), vec!["t".to_string(), "x".to_string()]);
        let g = parse_field("Q(t2,x)").unwrap();
        assert_eq!(g.all_vars(), vec!["t2".to_string(), "x".to_string()]);
        assert!(parse_field("F6").is_err());
    }

    #[test]
    fn parse_elements() {
        let q = FieldDescriptor::Rationals;
        let e = parse_element(&q, "3/4 - 1/4").unwrap();
        assert_eq!(e, parse_element(&q, "1/2").unwrap());
        let fd = parse_field("Q(x)").unwrap();
        let f = parse_element(&fd, "x^2 - 2*x + 1").unwrap();
        let g = parse_element(&fd, "(x-1)^2").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn normalizing_normalized_is_identity() {
        let fd = parse_field("Q(x)").unwrap();
        let e = parse_element(&fd, "(x^2+x)/(x+1)").unwrap();
        let e2 = e.add(&FieldElement::zero(&fd)).unwrap();
        assert_eq!(e, e2);
    }
}
