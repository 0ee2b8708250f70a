//! Recursive-descent parser for operator expressions such as
//! `3/2 * x1^2 * d1^3 - (x1 + d2)^2`.
//!
//! Products are noncommutative and evaluated left to right; the result is
//! normal-ordered by the multiplication itself.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Rational, WeylElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char, usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Var(c, i) => format!("variable {c}{i}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, nvars: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Spanned { tok, line: l0, column: c0 });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c == 'x' || c == 'd' {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            col += i - start;
            let index: usize = name[1..].parse().unwrap_or(0);
            if index == 0 || index > nvars {
                return Err(Error::UnknownVariable {
                    name,
                    line: l0,
                    column: c0,
                    nvars,
                });
            }
            out.push(Spanned {
                tok: Tok::Var(c, index),
                line: l0,
                column: c0,
            });
            continue;
        }
        return Err(Error::Syntax {
            line: l0,
            column: c0,
            expected: vec!["number".into(), "variable".into(), "operator".into()],
            found: format!("'{c}'"),
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    nvars: usize,
}

const OPERAND: [&str; 3] = ["number", "variable", "'('"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        let here = &self.toks[self.pos];
        Err(Error::Syntax {
            line: here.line,
            column: here.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: here.tok.describe(),
        })
    }

    fn expr(&mut self) -> Result<WeylElement> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WeylElement> {
        let mut acc = self.power()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<WeylElement> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let k: u32 = (&n).try_into().map_err(|_| Error::Syntax {
                    line: self.toks[self.pos].line,
                    column: self.toks[self.pos].column,
                    expected: vec!["small exponent".into()],
                    found: n.to_string(),
                })?;
                Ok(base.pow(k))
            }
            _ => self.fail(&["exponent"]),
        }
    }

    fn atom(&mut self) -> Result<WeylElement> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(q) if !q.is_zero() => {
                            self.bump();
                            Ok(WeylElement::constant(self.nvars, Rational::new(n, q)))
                        }
                        _ => self.fail(&["nonzero denominator"]),
                    }
                } else {
                    Ok(WeylElement::constant(self.nvars, Rational::from_integer(n)))
                }
            }
            Tok::Var(c, i) => {
                self.bump();
                Ok(if c == 'x' {
                    WeylElement::x(self.nvars, i - 1)
                } else {
                    WeylElement::d(self.nvars, i - 1)
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.fail(&["'+'", "'-'", "'*'", "')'"]);
                }
                self.bump();
                Ok(inner)
            }
            _ => self.fail(&OPERAND),
        }
    }
}

/// Parses an operator expression over `nvars` variables into normal form.
pub fn parse_operator(text: &str, nvars: usize) -> Result<WeylElement> {
    let toks = lex(text, nvars)?;
    let mut p = Parser { toks, pos: 0, nvars };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(&["'+'", "'-'", "'*'", "end of input"]);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{ratio, Monomial};

    #[test]
    fn parses_examples() {
        let e = parse_operator("d1*x1", 1).unwrap();
        assert_eq!(e, parse_operator("x1*d1 + 1", 1).unwrap());
        let m = parse_operator("3/2 * x1^2 * d1^3", 1).unwrap();
        assert_eq!(m, WeylElement::term(Monomial::new(vec![2], vec![3]), ratio(3, 2)));
        assert_eq!(parse_operator(" - ( x1 ) ", 1).unwrap(), -&WeylElement::x(1, 0));
    }

    #[test]
    fn reports_position_of_stray_plus() {
        match parse_operator("x1 + + d1", 1) {
            Err(Error::Syntax { line, column, expected, .. }) => {
                assert_eq!((line, column), (1, 6));
                assert!(expected.contains(&"variable".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_variable() {
        assert!(matches!(parse_operator("x3", 2), Err(Error::UnknownVariable { .. })));
        assert!(matches!(parse_operator("d0", 1), Err(Error::UnknownVariable { .. })));
    }

    #[test]
    fn trailing_garbage() {
        assert!(parse_operator("x1 d1", 1).is_err());
        assert!(parse_operator("(x1", 1).is_err());
        assert!(parse_operator("1/0", 1).is_err());
    }
}
