//! Compact text descriptors such as `PSL(2,7)`, `SU(3,3)` or `Sym(5)xC(3)`.
//!
//! For the unitary kinds the second argument is the order of the fixed field:
//! `SU(3,3)` is a group of 3x3 matrices over GF(9).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::perm;
use crate::error::{Error, Result};
use crate::ffield::prime_power;

pub const MAX_MATRIX_DIM: u32 = 8;
pub const MAX_PERM_DEGREE: u16 = 1000;
pub const MAX_PARSED_Q: u64 = 1 << 32;
pub const MAX_CYCLIC_ORDER: u64 = 1 << 62;
const MAX_PERM_GENS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixKind {
    GL,
    SL,
    GU,
    SU,
    Sp,
    SOplus,
    SOminus,
    SOcircle,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 8] = [
        MatrixKind::GL,
        MatrixKind::SL,
        MatrixKind::GU,
        MatrixKind::SU,
        MatrixKind::Sp,
        MatrixKind::SOplus,
        MatrixKind::SOminus,
        MatrixKind::SOcircle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::GL => "GL",
            MatrixKind::SL => "SL",
            MatrixKind::GU => "GU",
            MatrixKind::SU => "SU",
            MatrixKind::Sp => "Sp",
            MatrixKind::SOplus => "SOplus",
            MatrixKind::SOminus => "SOminus",
            MatrixKind::SOcircle => "SOcircle",
        }
    }

    pub fn is_unitary(self) -> bool {
        matches!(self, MatrixKind::GU | MatrixKind::SU)
    }

    pub fn is_orthogonal(self) -> bool {
        matches!(self, MatrixKind::SOplus | MatrixKind::SOminus | MatrixKind::SOcircle)
    }

    /// Whether elements are required to have determinant one.
    pub fn is_special(self) -> bool {
        !matches!(self, MatrixKind::GL | MatrixKind::GU)
    }

    fn from_name(s: &str) -> Option<MatrixKind> {
        MatrixKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    Cyclic(u64),
    Sym(u16),
    Alt(u16),
    /// Subgroup of Sym(degree) generated by the listed permutations
    /// (0-based image arrays).
    Perm {
        degree: u16,
        gens: Vec<Box<[u16]>>,
    },
    Matrix {
        kind: MatrixKind,
        n: u32,
        q: u64,
    },
    Projective {
        kind: MatrixKind,
        n: u32,
        q: u64,
    },
    Product(Vec<GroupDescriptor>),
}

impl GroupDescriptor {
    /// The Frobenius group of order 21 acting on 7 points.
    pub fn c7_c3() -> GroupDescriptor {
        "Perm(7;(1 2 3 4 5 6 7);(2 3 5)(4 7 6))".parse().expect("valid")
    }

    /// The wreath product C3 wr C2 acting on 6 points.
    pub fn c3_wr_c2() -> GroupDescriptor {
        "Perm(6;(1 2 3);(1 4)(2 5)(3 6))".parse().expect("valid")
    }

    fn validate_matrix(kind: MatrixKind, n: u32, q: u64) -> Result<()> {
        if n == 0 || n > MAX_MATRIX_DIM {
            return Err(Error::invalid(format!("matrix dimension {n} outside 1..={MAX_MATRIX_DIM}")));
        }
        if !(2..=MAX_PARSED_Q).contains(&q) {
            return Err(Error::invalid(format!("field order {q} outside 2..=2^32")));
        }
        let (p, _) = prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        match kind {
            MatrixKind::Sp if !n.is_multiple_of(2) => Err(Error::invalid("Sp needs even dimension")),
            MatrixKind::SOcircle if n.is_multiple_of(2) => Err(Error::invalid("SOcircle needs odd dimension")),
            MatrixKind::SOplus | MatrixKind::SOminus if !n.is_multiple_of(2) => {
                Err(Error::invalid(format!("{} needs even dimension", kind.name())))
            }
            k if k.is_orthogonal() && p == 2 => {
                Err(Error::unsupported("orthogonal groups are implemented for odd q only"))
            }
            _ => Ok(()),
        }
    }
}

fn parse_u64(s: &str) -> Result<u64> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("expected a number, got {s:?}")));
    }
    s.parse().map_err(|_| Error::parse(format!("number {s:?} out of range")))
}

/// Splits on `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse("unbalanced parentheses"));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse("unbalanced parentheses"));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_factor(s: &str) -> Result<GroupDescriptor> {
    let s = s.trim();
    match s {
        "C7:C3" => return Ok(GroupDescriptor::c7_c3()),
        "C3wrC2" => return Ok(GroupDescriptor::c3_wr_c2()),
        _ => {}
    }
    let open = s.find('(').ok_or_else(|| Error::parse(format!("expected NAME(...), got {s:?}")))?;
    let inner =
        s[open + 1..].strip_suffix(')').ok_or_else(|| Error::parse(format!("missing closing parenthesis in {s:?}")))?;
    let name = s[..open].trim();
    if name == "Perm" {
        let mut fields = inner.split(';');
        let degree = parse_u64(fields.next().unwrap_or(""))?;
        if degree == 0 || degree > MAX_PERM_DEGREE as u64 {
            return Err(Error::invalid(format!("degree {degree} outside 1..={MAX_PERM_DEGREE}")));
        }
        let degree = degree as u16;
        let gens: Vec<Box<[u16]>> = fields.map(|f| perm::parse_cycles(f, degree)).collect::<Result<_>>()?;
        if gens.len() > MAX_PERM_GENS {
            return Err(Error::invalid(format!("at most {MAX_PERM_GENS} generators")));
        }
        return Ok(GroupDescriptor::Perm { degree, gens });
    }
    let args: Vec<&str> = inner.split(',').collect();
    let one = |args: &[&str]| -> Result<u64> {
        match args {
            [a] => parse_u64(a),
            _ => Err(Error::parse(format!("{name} takes one argument"))),
        }
    };
    match name {
        "C" => {
            let n = one(&args)?;
            if n == 0 || n > MAX_CYCLIC_ORDER {
                return Err(Error::invalid(format!("cyclic order {n} outside 1..=2^62")));
            }
            Ok(GroupDescriptor::Cyclic(n))
        }
        "Sym" | "Alt" => {
            let n = one(&args)?;
            if n == 0 || n > MAX_PERM_DEGREE as u64 {
                return Err(Error::invalid(format!("degree {n} outside 1..={MAX_PERM_DEGREE}")));
            }
            Ok(if name == "Sym" { GroupDescriptor::Sym(n as u16) } else { GroupDescriptor::Alt(n as u16) })
        }
        _ => {
            let (projective, base) = match MatrixKind::from_name(name) {
                Some(k) => (false, k),
                None => match name.strip_prefix('P').and_then(MatrixKind::from_name) {
                    Some(k) => (true, k),
                    None => return Err(Error::parse(format!("unknown group family {name:?}"))),
                },
            };
            let [n, q] = args[..] else {
                return Err(Error::parse(format!("{name} takes two arguments (n,q)")));
            };
            let n = parse_u64(n)?;
            let n = u32::try_from(n).map_err(|_| Error::invalid(format!("dimension {n} too large")))?;
            let q = parse_u64(q)?;
            GroupDescriptor::validate_matrix(base, n, q)?;
            Ok(if projective {
                GroupDescriptor::Projective { kind: base, n, q }
            } else {
                GroupDescriptor::Matrix { kind: base, n, q }
            })
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupDescriptor> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse("empty group descriptor"));
        }
        let parts = split_top(s, 'x')?;
        if parts.len() == 1 {
            return parse_factor(parts[0]);
        }
        let factors = parts.into_iter().map(parse_factor).collect::<Result<Vec<_>>>()?;
        Ok(GroupDescriptor::Product(factors))
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic(n) => write!(f, "C({n})"),
            GroupDescriptor::Sym(n) => write!(f, "Sym({n})"),
            GroupDescriptor::Alt(n) => write!(f, "Alt({n})"),
            GroupDescriptor::Perm { degree, gens } => {
                write!(f, "Perm({degree}")?;
                for g in gens {
                    write!(f, ";{}", perm::format_cycles(g))?;
                }
                write!(f, ")")
            }
            GroupDescriptor::Matrix { kind, n, q } => write!(f, "{}({n},{q})", kind.name()),
            GroupDescriptor::Projective { kind, n, q } => write!(f, "P{}({n},{q})", kind.name()),
            GroupDescriptor::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
