//! Lie type tags and the per-family data: a(X,p), n(X,p), d(X), b(X,q), c(X).

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{is_prime, prime_power};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    TwistedA,
    B,
    C,
    D,
    TwistedD,
    TrialityD4,
    E6,
    TwistedE6,
    E7,
    E8,
    F4,
    G2,
    SuzukiB2,
    ReeF4,
    ReeG2,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::A,
        Family::TwistedA,
        Family::B,
        Family::C,
        Family::D,
        Family::TwistedD,
        Family::TrialityD4,
        Family::E6,
        Family::TwistedE6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::G2,
        Family::SuzukiB2,
        Family::ReeF4,
        Family::ReeG2,
    ];

    /// Families whose subscript is the free rank parameter l.
    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::TwistedA | Family::B | Family::C | Family::D | Family::TwistedD)
    }

    fn prefix(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::TwistedA => "2A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::TwistedD => "2D",
            Family::TrialityD4 => "3D",
            Family::E6 | Family::E7 | Family::E8 => "E",
            Family::TwistedE6 => "2E",
            Family::F4 => "F",
            Family::G2 => "G",
            Family::SuzukiB2 => "2B",
            Family::ReeF4 => "2F",
            Family::ReeG2 => "2G",
        }
    }

    /// Fixed subscript of an exceptional family.
    fn fixed_subscript(self) -> Option<u32> {
        match self {
            Family::TrialityD4 => Some(4),
            Family::E6 | Family::TwistedE6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 | Family::ReeF4 => Some(4),
            Family::G2 => Some(2),
            Family::SuzukiB2 => Some(2),
            Family::ReeG2 => Some(2),
            _ => None,
        }
    }

    /// Least rank for which tags are valid under the small-rank reductions.
    fn strict_min_rank(self) -> u32 {
        match self {
            Family::TwistedA | Family::C => 2,
            Family::B => 3,
            Family::D | Family::TwistedD => 4,
            _ => 1,
        }
    }

    fn loose_min_rank(self) -> u32 {
        match self {
            Family::D | Family::TwistedD => 2,
            _ => 1,
        }
    }

    /// Characteristic forced by the family, if any.
    fn forced_characteristic(self) -> Option<u32> {
        match self {
            Family::SuzukiB2 | Family::ReeF4 => Some(2),
            Family::ReeG2 => Some(3),
            _ => None,
        }
    }
}

/// A family symbol with its subscript, e.g. `A1`, `2A2`, `3D4`, `2B2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieTypeTag {
    family: Family,
    subscript: u32,
}

/// Largest classical rank accepted by tags.
pub const MAX_RANK: u32 = 64;

impl LieTypeTag {
    /// Validated tag: classical ranks obey the small-rank restrictions
    /// (²A_l and C_l need l >= 2, B_l needs l >= 3, D_l and ²D_l need l >= 4).
    pub fn new(family: Family, rank: u32) -> Result<LieTypeTag> {
        let tag = LieTypeTag::any_rank(family, rank)?;
        if family.is_classical() && rank < family.strict_min_rank() {
            return Err(Error::invalid(format!(
                "{tag} is outside the rank range (needs l >= {}); use the isomorphic smaller-rank family",
                family.strict_min_rank()
            )));
        }
        Ok(tag)
    }

    /// Tag allowing the small ranks that appear in the data tables
    /// (B_1, B_2, D_2, D_3, ...).
    pub fn any_rank(family: Family, rank: u32) -> Result<LieTypeTag> {
        match family.fixed_subscript() {
            Some(s) if s != rank => Err(Error::invalid(format!("{}{} has fixed subscript {s}", family.prefix(), rank))),
            Some(_) => Ok(LieTypeTag { family, subscript: rank }),
            None if rank < family.loose_min_rank() || rank > MAX_RANK => Err(Error::invalid(format!(
                "rank {rank} outside {}..={MAX_RANK} for family {}",
                family.loose_min_rank(),
                family.prefix()
            ))),
            None => Ok(LieTypeTag { family, subscript: rank }),
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> u32 {
        self.subscript
    }

    /// Parses like [`FromStr`] but accepts the small ranks of [`LieTypeTag::any_rank`].
    pub fn parse_any_rank(s: &str) -> Result<LieTypeTag> {
        let (family, sub) = split_tag(s)?;
        LieTypeTag::any_rank(family, sub)
    }

    fn check_characteristic(self, p: u32) -> Result<()> {
        if !is_prime(p as u64) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        match self.family.forced_characteristic() {
            Some(c) if c != p => Err(Error::invalid(format!("{self} exists only in characteristic {c}"))),
            _ => Ok(()),
        }
    }

    fn check_q(self, q: u64) -> Result<()> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        self.check_characteristic(p)?;
        if self.family.forced_characteristic().is_some() && k % 2 == 0 {
            return Err(Error::invalid(format!("{self}(q) needs q an odd power of {p}")));
        }
        Ok(())
    }
}

fn split_tag(s: &str) -> Result<(Family, u32)> {
    let s = s.trim();
    let digits_at = s
        .char_indices()
        .skip_while(|(_, c)| c.is_ascii_digit())
        .find(|(_, c)| c.is_ascii_digit())
        .map(|(i, _)| i)
        .ok_or_else(|| Error::parse(format!("Lie type tag {s:?} lacks a subscript")))?;
    let (head, tail) = s.split_at(digits_at);
    if tail.is_empty() || tail.len() > 3 || !tail.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("bad subscript in Lie type tag {s:?}")));
    }
    let sub: u32 = tail.parse().map_err(|_| Error::parse(format!("bad subscript in {s:?}")))?;
    let family = match (head, sub) {
        ("A", _) => Family::A,
        ("2A", _) => Family::TwistedA,
        ("B", _) => Family::B,
        ("C", _) => Family::C,
        ("D", _) => Family::D,
        ("2D", _) => Family::TwistedD,
        ("3D", _) => Family::TrialityD4,
        ("E", 6) => Family::E6,
        ("E", 7) => Family::E7,
        ("E", 8) => Family::E8,
        ("2E", _) => Family::TwistedE6,
        ("F", _) => Family::F4,
        ("G", _) => Family::G2,
        ("2B", _) => Family::SuzukiB2,
        ("2F", _) => Family::ReeF4,
        ("2G", _) => Family::ReeG2,
        _ => return Err(Error::parse(format!("unknown Lie type tag {s:?}"))),
    };
    Ok((family, sub))
}

impl FromStr for LieTypeTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<LieTypeTag> {
        let (family, sub) = split_tag(s)?;
        LieTypeTag::new(family, sub)
    }
}

impl fmt::Display for LieTypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.prefix(), self.subscript)
    }
}

impl Serialize for LieTypeTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LieTypeTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        LieTypeTag::parse_any_rank(&s).map_err(serde::de::Error::custom)
    }
}

/// Degree of the polynomial part in lengths of shortest laws.
pub fn table_a(x: LieTypeTag, p: u32) -> Result<u32> {
    x.check_characteristic(p)?;
    let l = x.rank();
    let odd = p % 2 == 1;
    Ok(match x.family() {
        Family::A | Family::TwistedA => l.div_ceil(2),
        Family::B => {
            if l >= 3 && odd {
                2 * (l / 2)
            } else {
                l
            }
        }
        Family::C => l,
        Family::D => {
            if l >= 4 && l.is_multiple_of(2) && odd {
                l - 2
            } else {
                l - 1
            }
        }
        Family::TwistedD => 2 * (l / 2),
        Family::E6 | Family::TwistedE6 => 4,
        Family::E7 | Family::E8 => 7,
        Family::F4 => 4,
        Family::G2 => 1,
        Family::TrialityD4 => 3,
        Family::SuzukiB2 => 1,
        Family::ReeF4 => 2,
        Family::ReeG2 => 1,
    })
}

/// Minimal dimension of a faithful projective representation.
/// B_l in characteristic 2 uses the isomorphism B_l(2^k) = C_l(2^k).
pub fn table_n(x: LieTypeTag, p: u32) -> Result<u32> {
    x.check_characteristic(p)?;
    let l = x.rank();
    Ok(match x.family() {
        Family::A | Family::TwistedA => l + 1,
        Family::B if p == 2 => 2 * l,
        Family::B => match l {
            1 => 2,
            2 => 4,
            _ => 2 * l + 1,
        },
        Family::C => 2 * l,
        Family::D => match l {
            2 | 3 => 4,
            _ => 2 * l,
        },
        Family::TwistedD => match l {
            2 => 2,
            3 => 4,
            _ => 2 * l,
        },
        Family::E6 | Family::TwistedE6 => 27,
        Family::E7 => 56,
        Family::E8 => 248,
        Family::F4 => {
            if p == 3 {
                25
            } else {
                26
            }
        }
        Family::G2 => {
            if p == 2 {
                6
            } else {
                7
            }
        }
        Family::TrialityD4 => 8,
        Family::SuzukiB2 => 4,
        Family::ReeF4 => 26,
        Family::ReeG2 => 7,
    })
}

/// Exponent in the maximal element order bound O(q^d).
pub fn table_d(x: LieTypeTag) -> u32 {
    match x.family() {
        f if f.is_classical() => x.rank(),
        Family::E6 | Family::TwistedE6 => 6,
        Family::E7 => 7,
        Family::E8 => 8,
        Family::F4 => 4,
        Family::G2 => 2,
        Family::TrialityD4 => 4,
        Family::SuzukiB2 => 1,
        Family::ReeF4 => 2,
        Family::ReeG2 => 1,
        _ => unreachable!("all families covered"),
    }
}

/// Exponent of the large power-law subset: q+1, q^3-1 or q-1.
pub fn table_b(x: LieTypeTag, q: u64) -> Result<u128> {
    x.check_q(q)?;
    let q = q as u128;
    Ok(match x.family() {
        Family::TwistedA | Family::TwistedE6 => q + 1,
        Family::TrialityD4 => q * q * q - 1,
        _ => q - 1,
    })
}

pub fn table_c(x: LieTypeTag) -> u32 {
    if x.family() == Family::TrialityD4 {
        3
    } else {
        1
    }
}

/// Constant K with max element order of X(q) at most K q^d(X), measured
/// on the enumerable groups of each supported family.
pub fn max_order_constant(x: LieTypeTag) -> Result<Ratio<u64>> {
    match (x.family(), x.rank()) {
        (Family::A, 1) => Ok(Ratio::new(3, 2)),
        (Family::A, 2) => Ok(Ratio::new(7, 4)),
        (Family::TwistedA, 2) => Ok(Ratio::new(4, 3)),
        (Family::C, 2) => Ok(Ratio::new(3, 2)),
        _ => Err(Error::unsupported(format!("no measured maximal-order constant for {x}; supported: A1, A2, 2A2, C2"))),
    }
}

/// Positive roots-and-negatives of A_l as vectors e_i - e_j in Z^(l+1).
pub fn roots_type_a(l: u32) -> Vec<Vec<i64>> {
    let n = l as usize + 1;
    let mut roots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut v = vec![0i64; n];
                v[i] = 1;
                v[j] = -1;
                roots.push(v);
            }
        }
    }
    roots
}

/// Sum over roots beta of M(beta) = gcd of the Cartan integers
/// <beta, alpha^vee> over all roots alpha.
pub fn sum_cartan_gcd(roots: &[Vec<i64>]) -> u64 {
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    roots
        .iter()
        .map(|beta| {
            roots.iter().fold(0i64, |g, alpha| {
                let cartan = 2 * dot(beta, alpha) / dot(alpha, alpha);
                num_integer::gcd(g, cartan)
            }) as u64
        })
        .sum()
}
