//! Expression grammar for polynomial entries.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | INT '/' INT | IDENT | '(' expr ')'
//! ```
//!
//! A rational literal `p/q` is a single token: the slash must touch both
//! digit runs. There is no division operator.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ring::{Ring, NILPOTENT};

const MAX_DEPTH: usize = 200;
const MAX_EXPONENT: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Int(BigInt),
    Rational(BigRational),
    Var(String),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Neg(Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
    Group(Box<ExprAst>),
}

/// True for names matching `[A-Za-z][A-Za-z0-9_]*`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Rational(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(msg: impl Into<String>, line: usize, column: usize) -> Error {
    Error::Parse {
        msg: msg.into(),
        line,
        column,
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let single = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                col += 1;
                i += 1;
                continue;
            }
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
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
            let num: String = chars[start..i].iter().collect();
            let num: BigInt = num.parse().expect("digits");
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                let dstart = i + 1;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: String = chars[dstart..i].iter().collect();
                let den: BigInt = den.parse().expect("digits");
                if den.is_zero() {
                    return Err(err("zero denominator in rational literal", l0, c0 + (dstart - start)));
                }
                out.push(Spanned {
                    tok: Tok::Rational(BigRational::new(num, den)),
                    line: l0,
                    column: c0,
                });
            } else {
                if i < chars.len() && chars[i] == '/' {
                    return Err(err(
                        "`/` is only allowed inside a rational literal like 3/2",
                        l0,
                        c0 + (i - start),
                    ));
                }
                out.push(Spanned { tok: Tok::Int(num), line: l0, column: c0 });
            }
            col += i - start;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
            col += i - start;
            continue;
        }
        return Err(err(format!("unexpected character `{}`", c.escape_default()), l0, c0));
    }
    out.push(Spanned { tok: Tok::End, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let t = self.peek();
            return Err(err("expression nested too deeply", t.line, t.column));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<ExprAst> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ExprAst> {
        if self.peek().tok == Tok::Minus {
            self.enter()?;
            self.bump();
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(ExprAst::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprAst> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let Tok::Int(n) = &t.tok else {
            return Err(err(
                "exponent must be a nonnegative integer literal",
                t.line,
                t.column,
            ));
        };
        let e = u32::try_from(n.clone())
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| err(format!("exponent exceeds {MAX_EXPONENT}"), t.line, t.column))?;
        if self.peek().tok == Tok::Caret {
            let c = self.peek();
            return Err(err("chained exponents need parentheses", c.line, c.column));
        }
        Ok(ExprAst::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<ExprAst> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => Ok(ExprAst::Int(n)),
            Tok::Rational(q) => Ok(ExprAst::Rational(q)),
            Tok::Ident(name) => Ok(ExprAst::Var(name)),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(err("expected `)`", close.line, close.column));
                }
                Ok(ExprAst::Group(Box::new(inner)))
            }
            Tok::End => Err(err("unexpected end of input", t.line, t.column)),
            other => Err(err(format!("unexpected {}", describe(&other)), t.line, t.column)),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) | Tok::Rational(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::End => "end of input",
    }
}

pub fn parse_expr(text: &str) -> Result<ExprAst> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, depth: 0 };
    let ast = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(err(format!("unexpected {}", describe(&t.tok)), t.line, t.column));
    }
    Ok(ast)
}

/// Parses raw bytes; invalid UTF-8 is reported at the offending byte.
pub fn parse_bytes(bytes: &[u8]) -> Result<ExprAst> {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse_expr(s),
        Err(e) => {
            let good = &bytes[..e.valid_up_to()];
            let text = std::str::from_utf8(good).expect("valid prefix");
            let line = 1 + text.matches('\n').count();
            let column = 1 + text.rsplit('\n').next().map_or(0, |l| l.chars().count());
            Err(err("invalid UTF-8", line, column))
        }
    }
}

/// Evaluates the syntax tree in the polynomial ring over `ring`. Names that are
/// coordinates of the ring (`eps`, `x`, `y`, ...) become coefficients; every
/// other identifier is a polynomial variable.
pub fn to_poly(ast: &ExprAst, ring: &Ring) -> Result<MultiPoly> {
    let coords = ring.coordinate_names();
    let mut cache = BTreeMap::new();
    eval(ast, ring, &coords, &mut cache)
}

fn eval(
    ast: &ExprAst,
    ring: &Ring,
    coords: &[String],
    cache: &mut BTreeMap<String, MultiPoly>,
) -> Result<MultiPoly> {
    Ok(match ast {
        ExprAst::Int(n) => MultiPoly::constant(ring, ring.from_int(n)),
        ExprAst::Rational(q) => MultiPoly::from_rational(ring, q)?,
        ExprAst::Var(name) => {
            if let Some(p) = cache.get(name) {
                return Ok(p.clone());
            }
            let p = if coords.iter().any(|c| c == name) {
                MultiPoly::constant(ring, ring.coordinate(name).expect("listed coordinate"))
            } else if name == NILPOTENT {
                return Err(Error::UnboundVariable(name.clone()));
            } else {
                MultiPoly::var(ring, name)
            };
            cache.insert(name.clone(), p.clone());
            p
        }
        ExprAst::Add(a, b) => &eval(a, ring, coords, cache)? + &eval(b, ring, coords, cache)?,
        ExprAst::Sub(a, b) => &eval(a, ring, coords, cache)? - &eval(b, ring, coords, cache)?,
        ExprAst::Mul(a, b) => &eval(a, ring, coords, cache)? * &eval(b, ring, coords, cache)?,
        ExprAst::Neg(a) => -&eval(a, ring, coords, cache)?,
        ExprAst::Pow(a, e) => eval(a, ring, coords, cache)?.pow(*e),
        ExprAst::Group(a) => eval(a, ring, coords, cache)?,
    })
}

/// Parses and evaluates in one step.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<MultiPoly> {
    to_poly(&parse_expr(text)?, ring)
}

/// Deterministic text for `p`; parsing it under the same ring gives `p` back
/// for every ring except localizations and products.
pub fn print_canonical(p: &MultiPoly) -> String {
    p.to_string()
}
