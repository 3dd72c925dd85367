//! Text syntax for polynomials and ideal files.
//!
//! ```text
//! field Q            # or `field F 7`, or `field Qt`
//! vars x y z
//! ideal:
//! x^2 - 2/3*y
//! y*z + (t + 1)*z^2  # `t` only under `field Qt`
//! ```

use num_bigint::BigInt;
use std::str::FromStr;

use super::ideal::Ideal;
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};
use crate::kernel::Field;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer<'a> {
    line: usize,
    col0: usize,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    text: &'a str,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str, line: usize, col0: usize) -> Result<Self> {
        let mut toks = Vec::new();
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (off, c) = chars[i];
            let col = col0 + text[..off].chars().count();
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = off;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let end = chars.get(i).map_or(text.len(), |&(o, _)| o);
                toks.push((Tok::Num(BigInt::from_str(&text[start..end]).unwrap()), col));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = off;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let end = chars.get(i).map_or(text.len(), |&(o, _)| o);
                toks.push((Tok::Ident(text[start..end].to_string()), col));
            } else if "+-*/^()".contains(c) {
                toks.push((Tok::Sym(c), col));
                i += 1;
            } else {
                return Err(err(line, col, format!("unexpected character `{c}`")));
            }
        }
        Ok(Lexer {
            line,
            col0,
            toks,
            pos: 0,
            text,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.col0 + self.text.chars().count(), |&(_, c)| c)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        err(self.line, self.col(), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
}

struct Parser<'a, 'r> {
    lex: Lexer<'a>,
    ring: &'r Ring,
}

impl Parser<'_, '_> {
    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.lex.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.lex.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.lex.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.lex.peek() == Some(&Tok::Sym('/')) {
                let col = self.lex.col();
                self.lex.pos += 1;
                let d = self.unary()?;
                if !d.is_constant() {
                    return Err(err(
                        self.lex.line,
                        col,
                        "division by a non-constant polynomial",
                    ));
                }
                let c = d.constant_term();
                let Some(inv) = c.inv() else {
                    return Err(err(self.lex.line, col, "division by zero"));
                };
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.lex.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.lex.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.lex.eat('^') {
            match self.lex.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let e: u32 = u32::try_from(&n)
                        .ok()
                        .filter(|&e| e <= 10_000)
                        .ok_or_else(|| self.lex.error("exponent too large"))?;
                    self.lex.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => {
                    return Err(self
                        .lex
                        .error("malformed exponent: expected a nonnegative integer"))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let ring = self.ring;
        match self.lex.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.lex.pos += 1;
                Ok(ring.constant(ring.field().from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => {
                if let Some(i) = ring.index_of(&name) {
                    self.lex.pos += 1;
                    Ok(ring.var(i))
                } else if name == "t" {
                    match ring.field().parameter() {
                        Some(t) => {
                            self.lex.pos += 1;
                            Ok(ring.constant(t))
                        }
                        None => Err(self.lex.error("`t` is only allowed under `field Qt`")),
                    }
                } else {
                    Err(self.lex.error(format!("unknown variable `{name}`")))
                }
            }
            Some(Tok::Sym('(')) => {
                self.lex.pos += 1;
                let e = self.expr()?;
                if !self.lex.eat(')') {
                    return Err(self.lex.error("expected `)`"));
                }
                Ok(e)
            }
            Some(Tok::Sym(c)) => Err(self.lex.error(format!("unexpected `{c}`"))),
            None => Err(self.lex.error("unexpected end of input")),
        }
    }
}

fn parse_at(text: &str, ring: &Ring, line: usize, col0: usize) -> Result<Polynomial> {
    let lex = Lexer::new(text, line, col0)?;
    let mut p = Parser { lex, ring };
    let out = p.expr()?;
    if p.lex.peek().is_some() {
        return Err(p.lex.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses one polynomial. Errors carry line 1 and a 1-based column.
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    parse_at(text, ring, 1, 1)
}

pub fn format_monomial(m: &Monomial, ring: &Ring) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(ring.names())
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| {
            if *e == 1 {
                n.clone()
            } else {
                format!("{n}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Prints with terms in descending grevlex order, e.g. `x1^2 - 2/3*x2`.
pub fn format_polynomial(p: &Polynomial, ring: &Ring) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (m, c) in p.sorted_terms(&MonomialOrder::Grevlex) {
        let neg = c.is_negative();
        let abs = if neg { -&c } else { c };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff = if abs.is_compound() {
            format!("({abs})")
        } else {
            abs.to_string()
        };
        if m.is_one() {
            out.push_str(&coeff);
        } else if abs.is_one() {
            out.push_str(&format_monomial(&m, ring));
        } else {
            out.push_str(&format!("{coeff}*{}", format_monomial(&m, ring)));
        }
    }
    out
}

fn parse_field(rest: &str, line: usize) -> Result<Field> {
    let parts: Vec<&str> = rest.split_whitespace().collect();
    match parts.as_slice() {
        ["Q"] => Ok(Field::Rational),
        ["Qt"] => Ok(Field::RationalFunction),
        ["F", p] => {
            let p: u64 = p
                .parse()
                .map_err(|_| err(line, 1, format!("invalid characteristic `{p}`")))?;
            Field::prime(p).map_err(|e| err(line, 1, e.to_string()))
        }
        _ => Err(err(
            line,
            1,
            "expected `field Q`, `field F <p>` or `field Qt`",
        )),
    }
}

/// Meaningful lines: (1-based line number, column of first char, content) with comments removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap();
        let trimmed = l.trim_start();
        let col = l.len() - trimmed.len() + 1;
        let trimmed = trimmed.trim_end();
        (!trimmed.is_empty()).then_some((i + 1, col, trimmed))
    })
}

/// Parses the `field` / `vars` header into a ring; returns the ring and the
/// remaining lines.
pub fn parse_header(text: &str) -> Result<(Ring, Vec<(usize, usize, &str)>)> {
    let mut lines = content_lines(text);
    let (l1, _, first) = lines.next().ok_or_else(|| err(1, 1, "empty file"))?;
    let field = match first.strip_prefix("field") {
        Some(rest) if rest.starts_with(char::is_whitespace) => parse_field(rest, l1)?,
        _ => return Err(err(l1, 1, "expected `field` declaration")),
    };
    let (l2, _, second) = lines
        .next()
        .ok_or_else(|| err(l1 + 1, 1, "expected `vars` declaration"))?;
    let names: Vec<&str> = match second.strip_prefix("vars") {
        Some(rest) if rest.starts_with(char::is_whitespace) => rest.split_whitespace().collect(),
        _ => return Err(err(l2, 1, "expected `vars` declaration")),
    };
    let ring = Ring::new(field, &names).map_err(|e| err(l2, 1, e.to_string()))?;
    Ok((ring, lines.collect()))
}

/// Parses an ideal file.
pub fn parse_ideal_file(text: &str) -> Result<Ideal> {
    let (ring, rest) = parse_header(text)?;
    let mut rest = rest.into_iter();
    let (l3, c3, third) = rest.next().ok_or_else(|| err(3, 1, "expected `ideal:`"))?;
    let Some(after) = third.strip_prefix("ideal:") else {
        return Err(err(l3, c3, "expected `ideal:`"));
    };
    let mut gens = Vec::new();
    let after_trim = after.trim_start();
    if !after_trim.is_empty() {
        let col = c3 + third.len() - after_trim.len();
        gens.push(parse_at(after_trim, &ring, l3, col)?);
    }
    for (l, c, s) in rest {
        gens.push(parse_at(s, &ring, l, c)?);
    }
    Ok(Ideal::new(ring, gens))
}

/// Inverse of [`parse_ideal_file`].
pub fn format_ideal_file(ideal: &Ideal) -> String {
    let ring = ideal.ring();
    let mut s = format!(
        "field {}\nvars {}\nideal:\n",
        ring.field(),
        ring.names().join(" ")
    );
    for g in ideal.generators() {
        s.push_str(&ring.format(g));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring4() -> Ring {
        Ring::standard(Field::Rational, 4)
    }

    #[test]
    fn parses_basic_forms() {
        let r = ring4();
        let q = r.parse("x1*x4 + x2*x3").unwrap();
        assert_eq!(q.len(), 2);
        assert!(r.parse("0").unwrap().is_zero());
        let p = r.parse("x1^2 - 2/3*x2").unwrap();
        assert_eq!(r.format(&p), "x1^2 - 2/3*x2");
        assert_eq!(
            r.format(&r.parse("(x1 - x2)^2").unwrap()),
            "x1^2 - 2*x1*x2 + x2^2"
        );
        assert_eq!(r.format(&r.parse("-3").unwrap()), "-3");
    }

    #[test]
    fn parse_errors_have_positions() {
        let r = ring4();
        assert_eq!(
            r.parse("x1 + x9"),
            Err(Error::Parse {
                line: 1,
                col: 6,
                msg: "unknown variable `x9`".into()
            })
        );
        assert!(matches!(r.parse("x1^x2"), Err(Error::Parse { col: 4, .. })));
        assert!(matches!(r.parse("x1/x2"), Err(Error::Parse { .. })));
        assert!(matches!(r.parse("t*x1"), Err(Error::Parse { .. })));
        assert!(matches!(r.parse("(x1"), Err(Error::Parse { .. })));
        let f5 = Ring::standard(Field::prime(5).unwrap(), 2);
        assert!(matches!(f5.parse("x1/5"), Err(Error::Parse { .. })));
    }

    #[test]
    fn function_field_coefficients() {
        let r = Ring::standard(Field::RationalFunction, 2);
        let p = r.parse("x1*x2 + t*x2^2 - (t+1)/(t^2+3)*x1").unwrap();
        let printed = r.format(&p);
        assert_eq!(r.parse(&printed).unwrap(), p);
        assert!(printed.contains("(t + 1)/(t^2 + 3)"), "{printed}");
    }

    #[test]
    fn ideal_file_roundtrip() {
        let text = "# comment\nfield F 7\nvars x y\nideal:\nx^2 + 3*y  # trailing\n\ny^3\n";
        let ideal = parse_ideal_file(text).unwrap();
        assert_eq!(ideal.generators().len(), 2);
        let again = parse_ideal_file(&format_ideal_file(&ideal)).unwrap();
        assert_eq!(again, ideal);
        let bad = "field Q\nvars x\nideal:\nx + \n";
        assert!(matches!(
            parse_ideal_file(bad),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(parse_ideal_file("field F 3\nvars x\nideal:\n").is_err());
    }
}
