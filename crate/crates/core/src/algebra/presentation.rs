//! Text format for quiver presentations.
//!
//! ```text
//! # dual numbers
//! [field]
//! Q
//! [vertices]
//! 1
//! [arrows]
//! x: 1 -> 1
//! [relations]
//! x*x
//! [truncation]
//! 1
//! ```
//!
//! Relations are linear combinations of `*`-separated arrow names written
//! right to left (`b*a` means `a` first). Coefficients are rationals such as
//! `3`, `-1/2`, and in family files may be polynomials in `lambda`, e.g.
//! `(2*lambda^2 - 1)*x*x` or `lambda*xi1`. Blank lines and `#` comments are
//! ignored.

use std::path::Path as FsPath;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Rationals};
use crate::poly::Poly;

use super::path::{Arrow, Path, Quiver};

pub type RationalPoly = Poly<BigRational>;

/// One relation: a list of (coefficient polynomial in λ, path) terms.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub terms: Vec<(RationalPoly, Path)>,
    pub line: usize,
}

impl Relation {
    pub fn uses_lambda(&self) -> bool {
        self.terms.iter().any(|(c, _)| !c.is_constant())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub field: FieldSpec,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub bound: usize,
}

impl Presentation {
    pub fn uses_lambda(&self) -> bool {
        self.relations.iter().any(Relation::uses_lambda)
    }

    pub fn read(path: &FsPath) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut field = None;
        let mut vertices = None;
        let mut arrows: Vec<Arrow> = Vec::new();
        let mut relation_lines: Vec<(usize, usize, String)> = Vec::new();
        let mut bound = None;
        let mut section: Option<String> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let col = content.len() - content.trim_start().len() + 1;
            if trimmed.starts_with('[') {
                let name = trimmed
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| perr(line_no, col, "malformed section header"))?;
                match name {
                    "field" | "vertices" | "arrows" | "relations" | "truncation" => {
                        section = Some(name.to_string())
                    }
                    other => return Err(perr(line_no, col, format!("unknown section [{other}]"))),
                }
                continue;
            }
            match section.as_deref() {
                None => return Err(perr(line_no, col, "content before the first section")),
                Some("field") => {
                    let spec = FieldSpec::parse(trimmed).map_err(|e| perr(line_no, col, e.to_string()))?;
                    field = Some(spec);
                }
                Some("vertices") => {
                    let n: usize = trimmed
                        .parse()
                        .map_err(|_| perr(line_no, col, "expected a vertex count"))?;
                    vertices = Some(n);
                }
                Some("truncation") => {
                    let n: usize = trimmed
                        .parse()
                        .map_err(|_| perr(line_no, col, "expected a truncation bound"))?;
                    bound = Some(n);
                }
                Some("arrows") => arrows.push(parse_arrow(trimmed, line_no, col)?),
                Some("relations") => relation_lines.push((line_no, col, content.to_string())),
                Some(_) => unreachable!(),
            }
        }

        let field = field.ok_or_else(|| perr(1, 1, "missing [field] section"))?;
        let vertices = vertices.ok_or_else(|| perr(1, 1, "missing [vertices] section"))?;
        let bound = bound.ok_or_else(|| perr(1, 1, "missing [truncation] section"))?;
        let quiver = Quiver::new(vertices, arrows).map_err(|e| perr(1, 1, e.to_string()))?;
        let relations = relation_lines
            .into_iter()
            .map(|(line, _, text)| parse_relation(&quiver, &text, line))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            field,
            quiver,
            relations,
            bound,
        })
    }

    /// Render back into the text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("[field]\n{}\n", self.field));
        s.push_str(&format!("[vertices]\n{}\n", self.quiver.vertex_count()));
        s.push_str("[arrows]\n");
        for a in self.quiver.arrows() {
            s.push_str(&format!("{}: {} -> {}\n", a.name, a.source + 1, a.target + 1));
        }
        s.push_str("[relations]\n");
        for r in &self.relations {
            s.push_str(&format_relation(&self.quiver, r));
            s.push('\n');
        }
        s.push_str(&format!("[truncation]\n{}\n", self.bound));
        s
    }
}

pub fn format_relation(q: &Quiver, r: &Relation) -> String {
    let parts: Vec<String> = r
        .terms
        .iter()
        .map(|(c, p)| format!("({})*{}", c.format(&Rationals, "lambda"), q.format_path(p)))
        .collect();
    parts.join(" + ")
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_arrow(s: &str, line: usize, col: usize) -> Result<Arrow> {
    let (name, rest) = s
        .split_once(':')
        .ok_or_else(|| perr(line, col, "expected `name: source -> target`"))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(perr(line, col, format!("invalid arrow name `{name}`")));
    }
    let (a, b) = rest
        .split_once("->")
        .ok_or_else(|| perr(line, col, "expected `source -> target`"))?;
    let parse_v = |t: &str| -> Result<usize> {
        let v: usize = t.trim().parse().map_err(|_| perr(line, col, format!("bad vertex `{}`", t.trim())))?;
        if v == 0 {
            return Err(perr(line, col, "vertices are numbered from 1"));
        }
        Ok(v - 1)
    };
    Ok(Arrow {
        name: name.to_string(),
        source: parse_v(a)?,
        target: parse_v(b)?,
    })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, col)),
            '-' => out.push((Tok::Minus, col)),
            '*' => out.push((Tok::Star, col)),
            '/' => out.push((Tok::Slash, col)),
            '^' => out.push((Tok::Caret, col)),
            '(' => out.push((Tok::LParen, col)),
            ')' => out.push((Tok::RParen, col)),
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push((Tok::Num(lit.parse().expect("digits")), col));
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            other => return Err(perr(line, col, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    quiver: &'a Quiver,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        perr(self.line, self.col(), msg)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    /// Sum of terms; `scalar_only` forbids arrow names.
    fn expr(&mut self, scalar_only: bool) -> Result<Vec<(RationalPoly, Vec<usize>)>> {
        let mut out = Vec::new();
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -1
            }
            Some(Tok::Plus) => {
                self.bump();
                1
            }
            _ => 1,
        };
        loop {
            let (c, arrows) = self.term(scalar_only)?;
            let c = if sign < 0 { c.neg(&Rationals) } else { c };
            out.push((c, arrows));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -1;
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self, scalar_only: bool) -> Result<(RationalPoly, Vec<usize>)> {
        let f = Rationals;
        let mut coeff = Poly::constant(&f, f.one());
        let mut arrows = Vec::new();
        loop {
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let mut q = BigRational::from_integer(n);
                    if self.peek() == Some(&Tok::Slash) {
                        self.bump();
                        match self.bump() {
                            Some(Tok::Num(d)) if d != BigInt::from(0) => q /= BigRational::from_integer(d),
                            _ => {
                                self.pos -= 1;
                                return Err(self.err("expected a nonzero denominator"));
                            }
                        }
                    }
                    coeff = coeff.mul(&f, &Poly::constant(&f, q));
                }
                Some(Tok::Ident(name)) if name == "lambda" => {
                    let mut e = 1u32;
                    if self.peek() == Some(&Tok::Caret) {
                        self.bump();
                        match self.bump() {
                            Some(Tok::Num(n)) => {
                                e = n.try_into().map_err(|_| self.err("exponent too large"))?;
                            }
                            _ => {
                                self.pos -= 1;
                                return Err(self.err("expected an exponent"));
                            }
                        }
                    }
                    let mut c = vec![f.zero(); e as usize];
                    c.push(f.one());
                    coeff = coeff.mul(&f, &Poly::from_coeffs(&f, c));
                }
                Some(Tok::Ident(name)) => {
                    if scalar_only {
                        self.pos -= 1;
                        return Err(self.err(format!("arrow `{name}` inside a coefficient")));
                    }
                    match self.quiver.arrow_index(&name) {
                        Some(a) => arrows.push(a),
                        None => {
                            self.pos -= 1;
                            return Err(self.err(format!("unknown arrow `{name}`")));
                        }
                    }
                }
                Some(Tok::LParen) => {
                    let inner = self.expr(true)?;
                    if self.bump() != Some(Tok::RParen) {
                        self.pos -= 1;
                        return Err(self.err("expected `)`"));
                    }
                    let mut sum = Poly::zero();
                    for (c, _) in inner {
                        sum = sum.add(&f, &c);
                    }
                    coeff = coeff.mul(&f, &sum);
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.err("expected a coefficient or an arrow name"));
                }
            }
            if self.peek() == Some(&Tok::Star) {
                self.bump();
            } else {
                return Ok((coeff, arrows));
            }
        }
    }
}

fn parse_relation(q: &Quiver, text: &str, line: usize) -> Result<Relation> {
    let toks = tokenize(text, line)?;
    let end_col = text.trim_end().chars().count() + 1;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        quiver: q,
        end_col,
    };
    let raw = p.expr(false)?;
    if p.pos < p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    let mut terms: Vec<(RationalPoly, Path)> = Vec::new();
    for (c, arrows) in raw {
        if arrows.is_empty() {
            return Err(perr(line, 1, "relation term without a path"));
        }
        let path = q
            .path(&arrows)
            .ok_or_else(|| perr(line, 1, "arrows in a term do not compose to a path"))?;
        match terms.iter_mut().find(|(_, p)| *p == path) {
            Some((acc, _)) => *acc = acc.add(&Rationals, &c),
            None => terms.push((c, path)),
        }
    }
    terms.retain(|(c, _)| !c.is_zero());
    Ok(Relation { terms, line })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = "[field]\nQ\n[vertices]\n1\n[arrows]\nx: 1 -> 1\n[relations]\nx*x\n[truncation]\n1\n";

    #[test]
    fn parses_dual_numbers() {
        let p = Presentation::parse(DUAL).unwrap();
        assert_eq!(p.quiver.vertex_count(), 1);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].terms[0].1.len(), 2);
        assert!(!p.uses_lambda());
        let again = Presentation::parse(&p.to_text()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn parses_polynomial_coefficients() {
        let text = DUAL.replace("x*x\n", "(2*lambda^2 - 1)*x*x - lambda*x\n");
        let p = Presentation::parse(&text).unwrap();
        assert!(p.uses_lambda());
        let r = &p.relations[0];
        let f = Rationals;
        assert_eq!(r.terms[0].0, Poly::from_coeffs(&f, vec![f.from_i64(-1), f.zero(), f.from_i64(2)]));
        assert_eq!(r.terms[1].0, Poly::from_coeffs(&f, vec![f.zero(), f.from_i64(-1)]));
    }

    #[test]
    fn unknown_arrow_reports_position() {
        let text = DUAL.replace("x*x\n", "x*y\n");
        match Presentation::parse(&text) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!(line, 8);
                assert_eq!(column, 3);
                assert!(message.contains("unknown arrow"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_noncomposable_terms() {
        let text = "[field]\nF3\n[vertices]\n2\n[arrows]\na: 1 -> 2\n[relations]\na*a\n[truncation]\n1\n";
        assert!(Presentation::parse(text).is_err());
    }
}
