//! Tokenizer and expression parser shared by the polynomial syntax and the
//! presentation DSL.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' INT)?
//! atom  := INT | INT '/' INT | IDENT | 'e' '(' vertex ')' | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {msg}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num { num: BigInt, den: BigInt, pos: Pos },
    Ident { name: String, pos: Pos },
    Trivial { vertex: String, pos: Pos },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Num { pos, .. } | Expr::Ident { pos, .. } | Expr::Trivial { pos, .. } => *pos,
            Expr::Neg(a) | Expr::Pow(a, _) => a.pos(),
            Expr::Add(a, _) | Expr::Sub(a, _) | Expr::Mul(a, _) => a.pos(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt, BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos {
            line,
            col: col0 + i + 1,
        };
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
            let mut den = BigInt::one();
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                den = chars[s..i].iter().collect::<String>().parse().unwrap();
                if den == BigInt::from(0) {
                    return Err(SyntaxError {
                        pos,
                        msg: "zero denominator".into(),
                    });
                }
            }
            out.push((Tok::Num(num, den), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if "+-*^()".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return Err(SyntaxError {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map(|t| t.1).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek() {
                Some(Tok::Num(n, d)) if d.is_one() => {
                    let k: u32 = match n.to_string().parse() {
                        Ok(k) => k,
                        Err(_) => return self.err("exponent too large"),
                    };
                    self.i += 1;
                    return Ok(Expr::Pow(Box::new(base), k));
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(num, den)) => {
                self.i += 1;
                Ok(Expr::Num { num, den, pos })
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                if name == "e" && self.eat('(') {
                    let vertex = match self.peek().cloned() {
                        Some(Tok::Num(n, d)) if d.is_one() => n.to_string(),
                        Some(Tok::Ident(v)) => v,
                        _ => return self.err("expected a vertex id"),
                    };
                    self.i += 1;
                    if !self.eat(')') {
                        return self.err("expected `)`");
                    }
                    return Ok(Expr::Trivial { vertex, pos });
                }
                Ok(Expr::Ident { name, pos })
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {}", describe(&t))),
            None => self.err("unexpected end of expression"),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n, _) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
    }
}

/// Parses a full expression; `line`/`col0` locate it inside a larger source.
pub fn parse_expr_at(text: &str, line: usize, col0: usize) -> Result<Expr, SyntaxError> {
    let toks = tokenize(text, line, col0)?;
    let end = Pos {
        line,
        col: col0 + text.chars().count() + 1,
    };
    let mut p = Parser { toks, i: 0, end };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return p.err(format!("unexpected token {}", describe(&p.toks[p.i].0)));
    }
    Ok(e)
}

pub fn parse_expr(text: &str) -> Result<Expr, SyntaxError> {
    parse_expr_at(text, 1, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("-x^2 + 3/2*y").unwrap();
        match e {
            Expr::Add(a, b) => {
                assert!(matches!(*a, Expr::Neg(ref p) if matches!(**p, Expr::Pow(_, 2))));
                assert!(matches!(*b, Expr::Mul(_, _)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trivial_path_atom() {
        let e = parse_expr("e(3)").unwrap();
        assert_eq!(
            e,
            Expr::Trivial {
                vertex: "3".into(),
                pos: Pos { line: 1, col: 1 }
            }
        );
    }

    #[test]
    fn errors_carry_columns() {
        let err = parse_expr_at("x * * y", 4, 10).unwrap_err();
        assert_eq!(err.pos, Pos { line: 4, col: 15 });
        let err = parse_expr("(x + y").unwrap_err();
        assert!(err.msg.contains(")"));
        assert!(parse_expr("x $ y").is_err());
        assert!(parse_expr("x^y").is_err());
    }
}
