//! Nested-list notation for matrices: `[[1,2],[3,4]]`, with extension-field
//! entries written as coefficient lists `[c0,c1]`.

use crate::error::{Error, Result};
use crate::ffield::{FieldElt, FieldSpec};

const MAX_DEPTH: usize = 3;

#[derive(Debug, PartialEq)]
enum Tree {
    Num(u64),
    List(Vec<Tree>),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn tree(&mut self, depth: usize) -> Result<Tree> {
        self.skip_ws();
        match self.s.get(self.pos) {
            Some(b'[') => {
                if depth == MAX_DEPTH {
                    return Err(Error::parse("lists nested too deeply"));
                }
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    items.push(self.tree(depth + 1)?);
                    self.skip_ws();
                    match self.s.get(self.pos) {
                        Some(b',') => self.pos += 1,
                        Some(b']') => {
                            self.pos += 1;
                            return Ok(Tree::List(items));
                        }
                        _ => return Err(Error::parse("expected ',' or ']'")),
                    }
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
                text.parse().map(Tree::Num).map_err(|_| Error::parse(format!("number {text} out of range")))
            }
            _ => Err(Error::parse("expected '[' or a digit")),
        }
    }
}

fn parse_tree(s: &str) -> Result<Tree> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let t = p.tree(0)?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(Error::parse("trailing characters after matrix"));
    }
    Ok(t)
}

fn entry(t: &Tree, f: &FieldSpec) -> Result<FieldElt> {
    match t {
        Tree::Num(v) if *v < f.p() as u64 => Ok(f.from_int(*v as i64)),
        Tree::Num(v) => Err(Error::parse(format!("{v} is not a prime-field element"))),
        Tree::List(items) => {
            let coeffs = items
                .iter()
                .map(|i| match i {
                    Tree::Num(v) if *v < f.p() as u64 => Ok(*v as u32),
                    _ => Err(Error::parse("bad coefficient")),
                })
                .collect::<Result<Vec<u32>>>()?;
            f.from_coeffs(&coeffs).map_err(|e| Error::parse(e.to_string()))
        }
    }
}

pub fn parse_matrix(s: &str, n: usize, f: &FieldSpec) -> Result<Box<[u32]>> {
    let Tree::List(rows) = parse_tree(s)? else {
        return Err(Error::parse("expected a list of rows"));
    };
    if rows.len() != n {
        return Err(Error::parse(format!("expected {n} rows")));
    }
    let mut out = Vec::with_capacity(n * n);
    for row in &rows {
        let Tree::List(entries) = row else {
            return Err(Error::parse("expected a row list"));
        };
        if entries.len() != n {
            return Err(Error::parse(format!("expected {n} entries per row")));
        }
        for e in entries {
            out.push(entry(e, f)?.index());
        }
    }
    Ok(out.into_boxed_slice())
}
