//! Text formats: group description files and the compact vector, matrix and
//! partition syntax used on the command line.
//!
//! ```text
//! # comment
//! group G3 ambient 2
//! gen [1, 0] inv {3}
//! gen [0, 1] inv {5}
//! gen [1/2, 1/2] inv {}
//! ```

use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{Generator, GroupRep};
use crate::linalg::rational::{fmt_rational, Rational, RationalVector};
use crate::linalg::RationalMatrix;
use crate::primes::{is_prime, PrimeSet};

#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: GroupRep,
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Cursor { line, text, pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col(), msg: msg.into() }
    }

    fn col(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let r = self.rest();
        let n = r
            .find(|c: char| c.is_whitespace() || matches!(c, '[' | ']' | '{' | '}' | ',' | '(' | ')'))
            .unwrap_or(r.len());
        self.pos += n;
        &r[..n]
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let start = self.pos;
        let w = self.word();
        if w == kw {
            Ok(())
        } else {
            self.pos = start;
            self.skip_ws();
            Err(self.err(format!("expected '{kw}'")))
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        let w = self.word();
        parse_rational(w).ok_or_else(|| {
            self.pos = start;
            self.err(format!("invalid rational '{w}'"))
        })
    }

    fn unsigned(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let w = self.word();
        w.parse().map_err(|_| {
            self.pos = start;
            self.err(format!("expected a nonnegative integer, found '{w}'"))
        })
    }

    fn vector(&mut self, open: char, close: char) -> Result<Vec<Rational>> {
        self.expect(open)?;
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.rational()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn prime_set(&mut self) -> Result<PrimeSet> {
        self.skip_ws();
        if self.rest().starts_with("ALL") {
            self.keyword("ALL")?;
            return Ok(PrimeSet::All);
        }
        self.expect('{')?;
        let mut ps = Vec::new();
        if self.eat('}') {
            return Ok(PrimeSet::empty());
        }
        loop {
            self.skip_ws();
            let start = self.pos;
            let p = self.unsigned()?;
            if !is_prime(p) {
                self.pos = start;
                return Err(self.err(Error::NotPrime(p).to_string()));
            }
            ps.push(p);
            if self.eat('}') {
                break;
            }
            self.expect(',')?;
        }
        PrimeSet::of(&ps)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse().ok()?, d.parse().ok()?),
        None => (s.parse().ok()?, num_bigint::BigInt::from(1)),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

/// Parses every group in a description file.
pub fn parse_groups(text: &str) -> Result<Vec<NamedGroup>> {
    let mut out = Vec::new();
    let mut current: Option<(String, usize, Vec<Generator>)> = None;
    let finish = |cur: Option<(String, usize, Vec<Generator>)>, out: &mut Vec<NamedGroup>| -> Result<()> {
        if let Some((name, n, gens)) = cur {
            out.push(NamedGroup { name, group: GroupRep::new(n, gens)? });
        }
        Ok(())
    };
    for (i, raw) in text.lines().enumerate() {
        let mut c = Cursor::new(i + 1, strip_comment(raw));
        if c.at_end() {
            continue;
        }
        let start = c.pos;
        match c.word() {
            "group" => {
                finish(current.take(), &mut out)?;
                let name = c.word();
                if name.is_empty() {
                    return Err(c.err("expected a group name"));
                }
                c.keyword("ambient")?;
                let n = c.unsigned()? as usize;
                if n == 0 {
                    return Err(c.err("ambient dimension must be positive"));
                }
                if !c.at_end() {
                    return Err(c.err("unexpected trailing text"));
                }
                current = Some((name.to_string(), n, Vec::new()));
            }
            "gen" => {
                let Some((_, n, gens)) = current.as_mut() else {
                    c.pos = start;
                    return Err(c.err("'gen' before any 'group' line"));
                };
                c.skip_ws();
                let vstart = c.pos;
                let v = c.vector('[', ']')?;
                if v.len() != *n {
                    c.pos = vstart;
                    return Err(c.err(format!("expected {} entries, found {}", n, v.len())));
                }
                if v.iter().all(Zero::is_zero) {
                    c.pos = vstart;
                    return Err(c.err(Error::ZeroGenerator.to_string()));
                }
                c.keyword("inv")?;
                let s = c.prime_set()?;
                if !c.at_end() {
                    return Err(c.err("unexpected trailing text"));
                }
                gens.push(Generator::new(RationalVector::new(v), s));
            }
            w => {
                c.pos = start;
                return Err(c.err(format!("unknown directive '{w}'")));
            }
        }
    }
    finish(current, &mut out)?;
    Ok(out)
}

/// Prints a group in the description format; `parse_groups` reads it back.
pub fn print_group(name: &str, g: &GroupRep) -> String {
    let mut s = String::new();
    writeln!(s, "group {} ambient {}", name, g.ambient_dim()).unwrap();
    for gen in g.generators() {
        let entries: Vec<String> = gen.vector.entries().iter().map(fmt_rational).collect();
        let inv = match &gen.inverted {
            PrimeSet::All => "ALL".to_string(),
            s => s.to_string(),
        };
        writeln!(s, "gen [{}] inv {}", entries.join(", "), inv).unwrap();
    }
    s
}

fn whole<T>(text: &str, f: impl FnOnce(&mut Cursor) -> Result<T>) -> Result<T> {
    let mut c = Cursor::new(1, text);
    let v = f(&mut c)?;
    if !c.at_end() {
        return Err(c.err("unexpected trailing text"));
    }
    Ok(v)
}

/// `(1, 1/2)` or `1, 1/2`.
pub fn parse_vector(text: &str) -> Result<RationalVector> {
    whole(text, |c| {
        c.skip_ws();
        if c.rest().starts_with('(') {
            c.vector('(', ')').map(RationalVector::new)
        } else if c.rest().starts_with('[') {
            c.vector('[', ']').map(RationalVector::new)
        } else {
            let mut out = vec![c.rational()?];
            while c.eat(',') {
                out.push(c.rational()?);
            }
            Ok(RationalVector::new(out))
        }
    })
}

/// Vectors separated by `;`, e.g. `(1,0);(0,1)`.
pub fn parse_vectors(text: &str) -> Result<Vec<RationalVector>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(';').map(parse_vector).collect()
}

/// Square or rectangular matrix given row by row, e.g. `(0,1);(1,0)`.
pub fn parse_matrix(text: &str) -> Result<RationalMatrix> {
    let rows = parse_vectors(text)?;
    let cols = rows.first().map_or(0, RationalVector::dim);
    if rows.iter().any(|r| r.dim() != cols) {
        return Err(Error::Parse { line: 1, col: 1, msg: "rows have different lengths".into() });
    }
    Ok(RationalMatrix::from_rows(cols, rows))
}

/// Blocks of 1-based positions separated by `|`, e.g. `1,3|2`. Returns
/// 0-based index blocks.
pub fn parse_partition(text: &str) -> Result<Vec<Vec<usize>>> {
    text.split('|')
        .map(|block| {
            block
                .split(',')
                .map(|t| {
                    let t = t.trim();
                    match t.parse::<usize>() {
                        Ok(k) if k >= 1 => Ok(k - 1),
                        _ => Err(Error::InvalidPartition(format!("bad position '{t}'"))),
                    }
                })
                .collect()
        })
        .collect()
}

pub fn format_partition(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| b.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

pub fn format_vectors(vs: &[RationalVector]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";")
}
