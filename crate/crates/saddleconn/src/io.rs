//! Surface input files.
//!
//! Two forms, with `#` line comments and free whitespace:
//!
//! ```text
//! origami {
//!   n = 3
//!   h = (1 2)
//!   v = (1 3)
//! }
//! ```
//!
//! Permutations use 1-based cycle notation (`id` for the identity).
//!
//! ```text
//! polygons {
//!   polygon p0 { (0, 0) (1, 0) (1, 1) (0, 1) }
//!   glue p0.e1 p0.e3 +1
//!   glue p0.e2 p0.e0 +1
//! }
//! ```
//!
//! Coordinates are exact rationals written `p` or `p/q`. Edge `ek` of a
//! polygon runs from its k-th vertex to the (k+1)-st (0-based, cyclically);
//! the gluing sign is `+1` (`z -> z + c`, default) or `-1` (`z -> -z + c`).

use crate::geom::{parse_q, Pt};
use crate::surface::{EdgeRef, Gluing, Origami, Polygon, Surface, SurfaceError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
#[error("parse error at line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Error)]
pub enum SurfaceFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String), // signed integer or rational handled at a higher level
    Punct(char),
    Eof,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            src,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.src[self.pos..].chars().next()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    fn next_tok(&mut self) -> Result<(Tok, usize, usize), ParseError> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let Some(c) = self.peek() else {
            return Ok((Tok::Eof, line, col));
        };
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(c) = self.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            return Ok((Tok::Ident(s), line, col));
        }
        if c.is_ascii_digit() || c == '-' || c == '+' {
            let mut s = String::new();
            s.push(c);
            self.bump();
            while let Some(c) = self.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            if s == "-" || s == "+" {
                return self.err("expected digits after sign");
            }
            return Ok((Tok::Number(s), line, col));
        }
        if "{}()=.,/".contains(c) {
            self.bump();
            return Ok((Tok::Punct(c), line, col));
        }
        self.err(format!("unexpected character '{c}'"))
    }
}

struct Parser<'a> {
    sc: Scanner<'a>,
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut sc = Scanner::new(src);
        let (tok, line, col) = sc.next_tok()?;
        Ok(Parser { sc, tok, line, col })
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        })
    }

    fn advance(&mut self) -> Result<(), ParseError> {
        let (tok, line, col) = self.sc.next_tok()?;
        self.tok = tok;
        self.line = line;
        self.col = col;
        Ok(())
    }

    fn expect_punct(&mut self, c: char) -> Result<(), ParseError> {
        if self.tok == Tok::Punct(c) {
            self.advance()
        } else {
            self.err(format!("expected '{c}', found {:?}", self.tok))
        }
    }

    fn expect_ident(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.tok == Tok::Ident(kw.to_string()) {
            self.advance()
        } else {
            self.err(format!("expected '{kw}', found {:?}", self.tok))
        }
    }

    fn take_ident(&mut self) -> Result<String, ParseError> {
        if let Tok::Ident(s) = self.tok.clone() {
            self.advance()?;
            Ok(s)
        } else {
            self.err(format!("expected identifier, found {:?}", self.tok))
        }
    }

    fn take_int(&mut self) -> Result<i64, ParseError> {
        if let Tok::Number(s) = self.tok.clone() {
            match s.parse() {
                Ok(v) => {
                    self.advance()?;
                    Ok(v)
                }
                Err(_) => self.err("integer out of range"),
            }
        } else {
            self.err(format!("expected number, found {:?}", self.tok))
        }
    }

    /// `p` or `p/q`.
    fn take_rational(&mut self) -> Result<crate::geom::Q, ParseError> {
        let (line, col) = (self.line, self.col);
        let n = self.take_int()?;
        let text = if self.tok == Tok::Punct('/') {
            self.advance()?;
            let d = self.take_int()?;
            format!("{n}/{d}")
        } else {
            format!("{n}")
        };
        parse_q(&text).ok_or(ParseError {
            line,
            col,
            msg: format!("invalid rational '{text}'"),
        })
    }

    /// Cycle notation `(1 2)(3 4)` or `id`, 1-based, as a 0-based permutation
    /// vector of length n.
    fn take_permutation(&mut self, n: usize) -> Result<Vec<usize>, ParseError> {
        let mut perm: Vec<usize> = (0..n).collect();
        if self.tok == Tok::Ident("id".into()) {
            self.advance()?;
            return Ok(perm);
        }
        let mut any = false;
        while self.tok == Tok::Punct('(') {
            any = true;
            self.advance()?;
            let mut cycle = Vec::new();
            while self.tok != Tok::Punct(')') {
                let v = self.take_int()?;
                if v < 1 || v as usize > n {
                    return self.err(format!("cycle entry {v} out of range 1..={n}"));
                }
                cycle.push(v as usize - 1);
            }
            self.expect_punct(')')?;
            if cycle.len() < 2 {
                continue;
            }
            for w in 0..cycle.len() {
                perm[cycle[w]] = cycle[(w + 1) % cycle.len()];
            }
        }
        if !any {
            return self.err("expected a permutation: cycles '(1 2)' or 'id'");
        }
        Ok(perm)
    }
}

/// Parse a surface file (either form) into a validated [`Surface`].
pub fn parse_surface(src: &str) -> Result<Surface, SurfaceFileError> {
    let mut p = Parser::new(src)?;
    match p.tok.clone() {
        Tok::Ident(kw) if kw == "origami" => {
            p.advance()?;
            p.expect_punct('{')?;
            p.expect_ident("n")?;
            p.expect_punct('=')?;
            let n = p.take_int()?;
            if n < 1 {
                return Err(p.err::<()>("n must be at least 1").unwrap_err().into());
            }
            p.expect_ident("h")?;
            p.expect_punct('=')?;
            let h = p.take_permutation(n as usize)?;
            p.expect_ident("v")?;
            p.expect_punct('=')?;
            let v = p.take_permutation(n as usize)?;
            p.expect_punct('}')?;
            let o = Origami::new(n as usize, h, v)?;
            Ok(Surface::from_origami(&o)?)
        }
        Tok::Ident(kw) if kw == "polygons" => {
            p.advance()?;
            p.expect_punct('{')?;
            let mut names: BTreeMap<String, usize> = BTreeMap::new();
            let mut polygons = Vec::new();
            let mut gluings = Vec::new();
            loop {
                match p.tok.clone() {
                    Tok::Ident(kw) if kw == "polygon" => {
                        p.advance()?;
                        let name = p.take_ident()?;
                        if names.contains_key(&name) {
                            return Err(p
                                .err::<()>(format!("duplicate polygon '{name}'"))
                                .unwrap_err()
                                .into());
                        }
                        p.expect_punct('{')?;
                        let mut vertices = Vec::new();
                        while p.tok == Tok::Punct('(') {
                            p.advance()?;
                            let x = p.take_rational()?;
                            p.expect_punct(',')?;
                            let y = p.take_rational()?;
                            p.expect_punct(')')?;
                            vertices.push(Pt::new(x, y));
                        }
                        p.expect_punct('}')?;
                        names.insert(name, polygons.len());
                        polygons.push(Polygon { vertices });
                    }
                    Tok::Ident(kw) if kw == "glue" => {
                        p.advance()?;
                        let edge_ref = |p: &mut Parser| -> Result<EdgeRef, ParseError> {
                            let name = p.take_ident()?;
                            let Some(&poly) = names.get(&name) else {
                                return p.err(format!("unknown polygon '{name}'"));
                            };
                            p.expect_punct('.')?;
                            let e = p.take_ident()?;
                            let Some(num) = e.strip_prefix('e').and_then(|s| s.parse().ok())
                            else {
                                return p.err(format!("expected edge 'e<k>', found '{e}'"));
                            };
                            Ok(EdgeRef { poly, edge: num })
                        };
                        let a = edge_ref(&mut p)?;
                        let b = edge_ref(&mut p)?;
                        let sign = if let Tok::Number(s) = p.tok.clone() {
                            p.advance()?;
                            match s.as_str() {
                                "1" | "+1" => 1,
                                "-1" => -1,
                                other => {
                                    return Err(p
                                        .err::<()>(format!("gluing sign must be +1 or -1, found {other}"))
                                        .unwrap_err()
                                        .into())
                                }
                            }
                        } else {
                            1
                        };
                        gluings.push(Gluing { a, b, sign });
                    }
                    Tok::Punct('}') => {
                        p.advance()?;
                        break;
                    }
                    other => {
                        return Err(p
                            .err::<()>(format!("expected 'polygon', 'glue' or '}}', found {other:?}"))
                            .unwrap_err()
                            .into())
                    }
                }
            }
            let s = Surface { polygons, gluings };
            s.validate()?;
            Ok(s)
        }
        other => Err(Parser::new(src)?
            .err::<()>(format!("expected 'origami' or 'polygons', found {other:?}"))
            .unwrap_err()
            .into()),
    }
}
