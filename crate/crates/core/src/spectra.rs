//! Element-order statistics: order censuses, the E_G density, regular
//! diagonalizable counts and centralizer sizes by enumeration, and a
//! brute-force count of zero-sum tuples of distinct residues.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{check_cap, Error, Result};
use crate::ffield::FieldElt;
use crate::groups::{Elem, Group, GroupOps};
use crate::lawkit::tables::table_b;
use crate::lawkit::LieTypeTag;

/// Serializes a ratio as the string `"num/den"`.
pub mod ratio_str {
    use num_rational::Ratio;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        let s = String::deserialize(d)?;
        let (n, m) = s.split_once('/').ok_or_else(|| D::Error::custom("expected n/d"))?;
        let n: u64 = n.trim().parse().map_err(D::Error::custom)?;
        let m: u64 = m.trim().parse().map_err(D::Error::custom)?;
        if m == 0 {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(n, m))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EgSummary {
    pub tag: LieTypeTag,
    pub q: u64,
    pub b: u128,
    pub count: u64,
    pub total: u64,
    /// `count / total` in lowest terms.
    #[serde(with = "ratio_str")]
    pub density: Ratio<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub group: String,
    pub order: u64,
    pub census: BTreeMap<u64, u64>,
    pub max_order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_g: Option<EgSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular_count: Option<u64>,
}

impl SpectrumReport {
    /// `order,count` rows, ascending.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("order,count\n");
        for (o, c) in &self.census {
            let _ = writeln!(s, "{o},{c}");
        }
        s
    }

    pub fn e_g_from_census(&self, tag: LieTypeTag, q: u64) -> Result<EgSummary> {
        let b = table_b(tag, q)?;
        let count = self.census.iter().filter(|(o, _)| b % **o as u128 == 0).map(|(_, c)| c).sum();
        Ok(EgSummary { tag, q, b, count, total: self.order, density: Ratio::new(count, self.order) })
    }
}

/// Exact order census by full enumeration.
pub fn order_census(g: &Group) -> Result<SpectrumReport> {
    let elems = g.elements()?;
    let census = elems
        .par_iter()
        .fold(BTreeMap::new, |mut m: BTreeMap<u64, u64>, e| {
            *m.entry(g.element_order(e)).or_default() += 1;
            m
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(SpectrumReport {
        group: g.descriptor().to_string(),
        order: elems.len() as u64,
        max_order: census.keys().copied().max().unwrap_or(1),
        census,
        e_g: None,
        regular_count: None,
    })
}

/// Fraction of elements whose order divides b(X, q).
pub fn e_g_density(g: &Group, tag: LieTypeTag, q: u64) -> Result<EgSummary> {
    order_census(g)?.e_g_from_census(tag, q)
}

/// Elements with n pairwise distinct eigenvalues in the relevant field:
/// GF(q) for linear, symplectic and orthogonal backends, the (q+1)-th roots
/// of unity in GF(q^2) for unitary ones.
pub fn regular_diagonalizable_census(g: &Group) -> Result<u64> {
    let m = g.matrix_backend().ok_or_else(|| Error::unsupported("regular census needs a matrix group"))?;
    if m.is_projective() {
        return Err(Error::unsupported("regular census needs a linear (non-projective) group"));
    }
    let n = m.dim();
    if n > 4 {
        return Err(Error::unsupported(format!("regular census supports n <= 4, got {n}")));
    }
    let f = m.field();
    let q = m.q() as i64;
    let candidates: Vec<FieldElt> = if m.kind().is_unitary() {
        f.units().filter(|&l| f.pow(l, q + 1) == Ok(FieldElt::ONE)).collect()
    } else {
        f.units().collect()
    };
    let elems = g.elements()?;
    let count = elems
        .par_iter()
        .filter(|e| {
            let Elem::Matrix(a) = e else { return false };
            let mut shifted = vec![0u32; n * n];
            let roots = candidates
                .iter()
                .filter(|&&l| {
                    for i in 0..n {
                        for j in 0..n {
                            let aij = FieldElt::from_packed(a[i * n + j]);
                            let d = if i == j { f.sub(l, aij) } else { f.neg(aij) };
                            shifted[i * n + j] = d.index();
                        }
                    }
                    m.det(&shifted).is_zero()
                })
                .count();
            roots == n
        })
        .count();
    Ok(count as u64)
}

/// |C_G(x)| by brute force.
pub fn centralizer_census(g: &Group, x: &Elem) -> Result<u64> {
    if !g.contains(x) {
        return Err(Error::invalid("element is not in the group"));
    }
    let elems = g.elements()?;
    Ok(elems.par_iter().filter(|h| g.mul(h, x) == g.mul(x, h)).count() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleCount {
    pub n: u64,
    pub d: u32,
    pub exact: u128,
    pub bound: i128,
    /// `exact >= bound`; absent when the bound is negative.
    pub holds: Option<bool>,
}

/// Tuples in (Z/n)^d with zero sum and pairwise distinct entries, against
/// the lower bound (n - d(d-1)/2) n^(d-2).
pub fn cyclic_tuple_count(n: u64, d: u32, caps: &Caps) -> Result<TupleCount> {
    if d < 3 {
        return Err(Error::invalid(format!("tuple length must be at least 3, got {d}")));
    }
    if n == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    let work = (n as u128).checked_pow(d).unwrap_or(u128::MAX);
    check_cap("tuple enumeration", work, caps.enumeration as u128)?;
    // the last entry is forced by the zero-sum condition
    let free = d as usize - 1;
    let exact: u128 = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut t = vec![0u64; free];
            t[0] = first;
            let mut count = 0u128;
            loop {
                let sum = t.iter().fold(0u64, |s, &c| (s + c) % n);
                let last = (n - sum) % n;
                let distinct = (0..free).all(|i| t[i] != last && t[i + 1..].iter().all(|&c| c != t[i]));
                if distinct {
                    count += 1;
                }
                let mut i = free - 1;
                loop {
                    if i == 0 {
                        return count;
                    }
                    t[i] += 1;
                    if t[i] < n {
                        break;
                    }
                    t[i] = 0;
                    i -= 1;
                }
            }
        })
        .sum();
    let pairs = (d as i128) * (d as i128 - 1) / 2;
    let bound = (n as i128 - pairs) * (n as i128).pow(d - 2);
    let holds = (bound >= 0).then_some(exact as i128 >= bound);
    Ok(TupleCount { n, d, exact, bound, holds })
}
