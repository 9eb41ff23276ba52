//! Line-oriented presentation language.
//!
//! ```text
//! # comment
//! algebra r_f4
//! field Q                  # or F<p>
//! params t1, t3            # optional
//! vertices 0
//! arrow x: 0 -> 0
//! arrow y: 0 -> 0
//! relations:
//! x*y*x = 0
//! (x + y)^2 = 0
//! ```
//!
//! Every line after `relations:` is one relation `lhs = rhs` (usually `= 0`).

use std::collections::HashSet;

use crate::exactcoeff::{FieldSpec, PolyScalar, Ring, RingRef};
use crate::syntax::{parse_expr_at, Expr, Pos};

use super::{Element, PathError, Presentation, Quiver, QuiverRef, VertexId, Word};

fn err(line: usize, col: usize, msg: impl Into<String>) -> PathError {
    PathError::Syntax {
        pos: Pos { line, col },
        msg: msg.into(),
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PathError> {
    let mut name: Option<String> = None;
    let mut field = FieldSpec::Rationals;
    let mut params: Vec<String> = Vec::new();
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut relation_lines: Vec<(usize, usize, String)> = Vec::new();
    let mut in_relations = false;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if in_relations {
            relation_lines.push((lineno, indent, trimmed.to_string()));
            continue;
        }
        let (kw, rest) = match trimmed.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (trimmed, ""),
        };
        match kw {
            "algebra" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(err(lineno, indent + 1, "expected `algebra <name>`"));
                }
                name = Some(rest.to_string());
            }
            "field" => {
                field = rest
                    .parse()
                    .map_err(|e| err(lineno, indent + 7, format!("{e}")))?;
            }
            "params" => {
                params.extend(
                    rest.split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(str::to_string),
                );
            }
            "vertices" => {
                vertices.extend(rest.split_whitespace().map(str::to_string));
            }
            "arrow" => {
                let (aname, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| err(lineno, indent + 1, "expected `arrow <name>: <src> -> <tgt>`"))?;
                let (s, t) = ends
                    .split_once("->")
                    .ok_or_else(|| err(lineno, indent + 1, "expected `<src> -> <tgt>`"))?;
                arrows.push((
                    aname.trim().to_string(),
                    s.trim().to_string(),
                    t.trim().to_string(),
                ));
                let (aname, s, t) = arrows.last().unwrap();
                if aname.is_empty() || s.is_empty() || t.is_empty() {
                    return Err(err(lineno, indent + 1, "expected `arrow <name>: <src> -> <tgt>`"));
                }
                for v in [s, t] {
                    if !vertices.contains(v) {
                        return Err(err(
                            lineno,
                            indent + 1,
                            format!("arrow `{aname}` uses undeclared vertex `{v}`"),
                        ));
                    }
                }
            }
            "relations:" => in_relations = true,
            "relations" if rest == ":" => in_relations = true,
            _ => return Err(err(lineno, indent + 1, format!("unknown directive `{kw}`"))),
        }
    }

    let name = name.ok_or_else(|| err(1, 1, "missing `algebra <name>` line"))?;
    let ring = Ring::new(field, &params).map_err(PathError::Coeff)?;
    let quiver = Quiver::new(&vertices, &arrows)?;
    let param_set: HashSet<&str> = params.iter().map(String::as_str).collect();
    for a in quiver.arrows() {
        if param_set.contains(a.name.as_str()) {
            return Err(PathError::NameClash(a.name.clone()));
        }
    }

    let mut relations = Vec::new();
    for (lineno, indent, line) in relation_lines {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| err(lineno, indent + 1, "expected `<expr> = 0`"))?;
        let lhs_e = parse_expr_at(lhs, lineno, indent).map_err(PathError::from)?;
        let rhs_col = indent + lhs.chars().count() + 1;
        let rhs_e = parse_expr_at(rhs, lineno, rhs_col).map_err(PathError::from)?;
        let ctx = EvalCtx {
            quiver: &quiver,
            ring: &ring,
        };
        let l = ctx.eval(&lhs_e)?;
        let r = ctx.eval(&rhs_e)?;
        let pos = lhs_e.pos();
        let diff = ctx.combine(l, r, pos, true)?;
        match diff {
            Typed::Path { elem, ends } => {
                if ends.is_none() && elem.endpoints().is_none() && !elem.is_zero() {
                    return Err(PathError::Syntax {
                        pos,
                        msg: "relation mixes paths with different endpoints".into(),
                    });
                }
                relations.push(elem)
            }
            Typed::Scalar(_) => {
                return Err(PathError::Syntax {
                    pos,
                    msg: "relation contains no path".into(),
                })
            }
        }
    }
    Presentation::new(name, quiver, ring, relations)
}

/// Parses an element expression over an existing quiver and ring.
pub fn parse_element(
    quiver: &QuiverRef,
    ring: &RingRef,
    text: &str,
) -> Result<Element, PathError> {
    let e = parse_expr_at(text, 1, 0)?;
    let ctx = EvalCtx { quiver, ring };
    match ctx.eval(&e)? {
        Typed::Path { elem, .. } => Ok(elem),
        Typed::Scalar(c) => {
            // a bare scalar means a multiple of the identity
            Element::identity(quiver, ring).scale(&c)
        }
    }
}

enum Typed {
    Scalar(PolyScalar),
    /// `ends` is `None` once a sum mixes paths with different endpoints.
    Path {
        elem: Element,
        ends: Option<(VertexId, VertexId)>,
    },
}

struct EvalCtx<'a> {
    quiver: &'a QuiverRef,
    ring: &'a RingRef,
}

impl EvalCtx<'_> {
    fn path(&self, w: Word) -> Typed {
        let ends = Some((w.source(), w.target()));
        Typed::Path {
            elem: Element::from_word(self.quiver, self.ring, w),
            ends,
        }
    }

    fn eval(&self, e: &Expr) -> Result<Typed, PathError> {
        Ok(match e {
            Expr::Num { num, den, pos } => Typed::Scalar(PolyScalar::constant(
                self.ring,
                self.ring
                    .field()
                    .from_ratio(num, den)
                    .map_err(|m| PathError::Syntax {
                        pos: *pos,
                        msg: m.to_string(),
                    })?,
            )),
            Expr::Ident { name, pos } => {
                if let Some(a) = self.quiver.arrow_id(name) {
                    self.path(Word::arrow(self.quiver, a))
                } else if let Ok(p) = PolyScalar::param(self.ring, name) {
                    Typed::Scalar(p)
                } else {
                    return Err(PathError::Syntax {
                        pos: *pos,
                        msg: format!("unknown arrow or parameter `{name}`"),
                    });
                }
            }
            Expr::Trivial { vertex, pos } => {
                let v = self.quiver.vertex_id(vertex).ok_or_else(|| PathError::Syntax {
                    pos: *pos,
                    msg: format!("unknown vertex `{vertex}`"),
                })?;
                self.path(Word::trivial(v))
            }
            Expr::Neg(a) => match self.eval(a)? {
                Typed::Scalar(c) => Typed::Scalar(-c),
                Typed::Path { elem, ends } => Typed::Path {
                    elem: elem.neg(),
                    ends,
                },
            },
            Expr::Add(a, b) => {
                let (l, r) = (self.eval(a)?, self.eval(b)?);
                self.combine(l, r, b.pos(), false)?
            }
            Expr::Sub(a, b) => {
                let (l, r) = (self.eval(a)?, self.eval(b)?);
                self.combine(l, r, b.pos(), true)?
            }
            Expr::Mul(a, b) => {
                let (l, r) = (self.eval(a)?, self.eval(b)?);
                self.product(l, r, b.pos())?
            }
            Expr::Pow(a, k) => match self.eval(a)? {
                Typed::Scalar(c) => Typed::Scalar(c.pow(*k)),
                Typed::Path { elem, ends } => {
                    if let Some((s, t)) = ends {
                        if s != t && *k > 1 {
                            return Err(PathError::Syntax {
                                pos: a.pos(),
                                msg: "power of a subexpression that is not endpoint-closed".into(),
                            });
                        }
                    }
                    let mut acc = Element::identity(self.quiver, self.ring);
                    for _ in 0..*k {
                        acc = acc.try_mul(&elem)?;
                    }
                    Typed::Path {
                        elem: acc,
                        ends: if *k == 0 { None } else { ends },
                    }
                }
            },
        })
    }

    /// A scalar promoted next to a path: `c*e(v)` at a closed path, `c*1` otherwise.
    fn promote(&self, c: PolyScalar, ends: Option<(VertexId, VertexId)>, pos: Pos) -> Result<Element, PathError> {
        if c.is_zero() {
            return Ok(Element::zero(self.quiver, self.ring));
        }
        match ends {
            Some((s, t)) if s == t => Ok(Element::monomial(self.quiver, self.ring, Word::trivial(s), c)),
            Some(_) => Err(PathError::Syntax {
                pos,
                msg: "cannot add a scalar to a path between different vertices".into(),
            }),
            None => Element::identity(self.quiver, self.ring).scale(&c),
        }
    }

    fn combine(&self, l: Typed, r: Typed, pos: Pos, subtract: bool) -> Result<Typed, PathError> {
        let op = |a: &Element, b: &Element| {
            if subtract {
                a.try_sub(b)
            } else {
                a.try_add(b)
            }
        };
        Ok(match (l, r) {
            (Typed::Scalar(a), Typed::Scalar(b)) => Typed::Scalar(if subtract { a - b } else { a + b }),
            (Typed::Path { elem, ends }, Typed::Scalar(c)) => {
                let other = self.promote(c, ends, pos)?;
                Typed::Path {
                    elem: op(&elem, &other)?,
                    ends,
                }
            }
            (Typed::Scalar(c), Typed::Path { elem, ends }) => {
                let other = self.promote(c, ends, pos)?;
                Typed::Path {
                    elem: op(&other, &elem)?,
                    ends,
                }
            }
            (Typed::Path { elem: a, ends: e1 }, Typed::Path { elem: b, ends: e2 }) => {
                let ends = match (e1, e2) {
                    (Some(x), Some(y)) if x == y => Some(x),
                    _ => None,
                };
                Typed::Path {
                    elem: op(&a, &b)?,
                    ends,
                }
            }
        })
    }

    fn product(&self, l: Typed, r: Typed, pos: Pos) -> Result<Typed, PathError> {
        Ok(match (l, r) {
            (Typed::Scalar(a), Typed::Scalar(b)) => Typed::Scalar(a * b),
            (Typed::Scalar(c), Typed::Path { elem, ends })
            | (Typed::Path { elem, ends }, Typed::Scalar(c)) => Typed::Path {
                elem: elem.scale(&c)?,
                ends,
            },
            (Typed::Path { elem: a, ends: e1 }, Typed::Path { elem: b, ends: e2 }) => {
                let ends = match (e1, e2) {
                    (Some((s, t)), Some((s2, t2))) => {
                        if t != s2 {
                            return Err(PathError::Syntax {
                                pos,
                                msg: format!(
                                    "endpoint-incompatible product: left factor ends at {}, right factor starts at {}",
                                    self.quiver.vertex_name(t),
                                    self.quiver.vertex_name(s2)
                                ),
                            });
                        }
                        Some((s, t2))
                    }
                    _ => None,
                };
                Typed::Path {
                    elem: a.try_mul(&b)?,
                    ends,
                }
            }
        })
    }
}
