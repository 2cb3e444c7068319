//! Law constructors: commutator unions, extension substitution, power and
//! element-order laws, solvable laws and the explicit PSL2(q) law.

pub mod tables;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use tables::{
    max_order_constant, roots_type_a, sum_cartan_gcd, table_a, table_b, table_c, table_d, table_n, Family, LieTypeTag,
};

use crate::caps::Caps;
use crate::error::{check_cap, Error, Result};
use crate::ffield::prime_power;
use crate::freeword::{enumerate_reduced, Word};

/// A constructed word with its closed-form length bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawRecipe {
    pub constructor: String,
    pub params: BTreeMap<String, Value>,
    pub word: Word,
    pub length: u64,
    pub claimed_bound: u128,
    pub notes: String,
}

impl LawRecipe {
    fn new(
        constructor: &'static str,
        params: BTreeMap<String, Value>,
        word: Word,
        claimed_bound: u128,
        notes: impl Into<String>,
    ) -> Result<LawRecipe> {
        let length = word.len();
        if word.is_identity() {
            return Err(Error::invalid(format!("{constructor} produced the trivial word")));
        }
        if length as u128 > claimed_bound {
            return Err(Error::BoundViolated { constructor, length, bound: claimed_bound });
        }
        Ok(LawRecipe { constructor: constructor.into(), params, word, length, claimed_bound, notes: notes.into() })
    }
}

fn params<const N: usize>(items: [(&str, Value); N]) -> BTreeMap<String, Value> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Conjugators tried, in order, when combining two words.
fn conjugators() -> impl Iterator<Item = Word> {
    let fixed: Vec<Word> = ["x", "y", "x y", "y x", "x^-1 y"].iter().map(|s| s.parse().expect("valid word")).collect();
    fixed.into_iter().chain(enumerate_reduced(u32::MAX))
}

/// `[u, t v t^-1]` for the first conjugator `t` giving a non-trivial result.
pub fn combine_pair(u: &Word, v: &Word) -> Word {
    for t in conjugators() {
        let c = Word::commutator(u, &v.conjugate_by(&t));
        if !c.is_identity() {
            return c;
        }
    }
    unreachable!("some conjugate of a non-trivial word fails to commute with u")
}

fn check_nontrivial(ws: &[Word]) -> Result<()> {
    if ws.is_empty() {
        return Err(Error::invalid("expected at least one word"));
    }
    if let Some(i) = ws.iter().position(Word::is_identity) {
        return Err(Error::invalid(format!("input word {i} is trivial")));
    }
    Ok(())
}

fn union_capped(ws: &[Word], word_cap: u64) -> Result<Word> {
    check_nontrivial(ws)?;
    let m = ws.len() as u128;
    let max = ws.iter().map(Word::len).max().unwrap_or(0) as u128;
    let bound = 16 * m * m * max;
    let mut level: Vec<Word> = ws.to_vec();
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        for chunk in level.chunks(2) {
            let w = match chunk {
                [u, v] => combine_pair(u, v),
                [u] => u.clone(),
                _ => unreachable!(),
            };
            check_cap("word length", w.len() as u128, word_cap as u128)?;
            next.push(w);
        }
        level = next;
    }
    let w = level.pop().expect("non-empty");
    if w.len() as u128 > bound {
        return Err(Error::BoundViolated { constructor: "union_combine", length: w.len(), bound });
    }
    Ok(w)
}

/// A word vanishing wherever any input vanishes: balanced-tree fold of
/// `c(u, v) = [u, t v t^-1]`. Length at most `16 m^2 max|w_i|` (checked).
pub fn union_combine(ws: &[Word]) -> Result<Word> {
    union_capped(ws, u64::MAX)
}

/// Same construction as [`union_combine`], read as a law for the direct
/// product when each `w_i` is a law for the i-th factor.
pub fn product_law(ws: &[Word]) -> Result<Word> {
    union_combine(ws)
}

/// A law for every extension of a group with law `w_n` by one with law `w_q`.
/// Length at most `|w_n| |w_q|`.
pub fn extension_combine(w_n: &Word, w_q: &Word) -> Result<Word> {
    check_nontrivial(&[w_n.clone(), w_q.clone()])?;
    let (n_core, _) = w_n.cyclic_reduce();
    let (q_core, _) = w_q.cyclic_reduce();
    let out = if q_core.basis_power().is_some() {
        let xs = q_core.substitute(&Word::x(), &Word::x());
        let ys = q_core.substitute(&Word::y(), &Word::y());
        n_core.substitute(&xs, &ys)
    } else {
        let len = q_core.len() as i64;
        let partner = (1..len)
            .map(|k| q_core.cyclic_permutation(k).expect("cyclically reduced"))
            .find(|r| !Word::commutator(&q_core, r).is_identity())
            .ok_or_else(|| Error::invalid("no non-commuting cyclic permutation"))?;
        n_core.substitute(&q_core, &partner)
    };
    let bound = w_n.len() as u128 * w_q.len() as u128;
    if out.len() as u128 > bound {
        return Err(Error::BoundViolated { constructor: "extension_combine", length: out.len(), bound });
    }
    Ok(out)
}

/// Iterated extension of `[x,y]`: a law for soluble groups of derived length
/// at most `d`, of length at most `4^d`.
pub fn solvable_law(d: u32, caps: &Caps) -> Result<LawRecipe> {
    if d == 0 {
        return Err(Error::invalid("derived length must be at least 1"));
    }
    let bound = 4u128.checked_pow(d).ok_or(Error::CapExceeded {
        what: "word length",
        needed: u128::MAX,
        limit: caps.word_length as u128,
    })?;
    check_cap("word length", bound, caps.word_length as u128)?;
    let comm = Word::commutator(&Word::x(), &Word::y());
    let mut w = comm.clone();
    for _ in 1..d {
        w = extension_combine(&w, &comm)?;
    }
    LawRecipe::new("solvable", params([("d", d.into())]), w, bound, "length <= 4^d")
}

/// Union of `x, x^2, ..., x^m`: a law for every group whose element orders
/// are at most `m`. Length at most `16 m^3`.
pub fn max_order_law(m: u64, caps: &Caps) -> Result<LawRecipe> {
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    check_cap("word length", m as u128, caps.word_length as u128)?;
    let ws: Vec<Word> = (1..=m).map(|e| Word::x().pow(e)).collect();
    let w = union_capped(&ws, caps.word_length)?;
    let bound = 16 * (m as u128).pow(3);
    LawRecipe::new("max-order", params([("m", m.into())]), w, bound, "length <= 16 m^3")
}

/// Law for X(q) at every q <= n: [`max_order_law`] at `ceil(K n^d(X))`.
pub fn small_field_law(x: LieTypeTag, n: u64, caps: &Caps) -> Result<LawRecipe> {
    if n < 2 {
        return Err(Error::invalid("N must be at least 2"));
    }
    let k = max_order_constant(x)?;
    let d = table_d(x);
    let nd = (n as u128)
        .checked_pow(d)
        .filter(|v| *v <= u64::MAX as u128 / *k.numer() as u128)
        .ok_or(Error::CapExceeded { what: "word length", needed: u128::MAX, limit: caps.word_length as u128 })?;
    let m = (nd * *k.numer() as u128).div_ceil(*k.denom() as u128) as u64;
    let inner = max_order_law(m, caps)?;
    let bound = 16 * (m as u128).pow(3);
    LawRecipe::new(
        "small-field",
        params([("family", x.to_string().into()), ("N", n.into()), ("m", m.into()), ("K", k.to_string().into())]),
        inner.word,
        bound,
        format!("max_order_law(ceil(K N^d)) with K = {k}, d = {d}"),
    )
}

/// Union of `x^(q-1)`, `x^q`, `x^(q+1)`: a law for SL2(q) and PSL2(q),
/// of length at most `144 (q+1)`.
pub fn psl2_law(q: u64, caps: &Caps) -> Result<LawRecipe> {
    if prime_power(q).is_none() {
        return Err(Error::invalid(format!("{q} is not a prime power")));
    }
    check_cap("field order", q as u128, caps.field_order as u128)?;
    let ws = [Word::x().pow(q - 1), Word::x().pow(q), Word::x().pow(q + 1)];
    let w = union_capped(&ws, caps.word_length)?;
    let bound = 144 * (q as u128 + 1);
    LawRecipe::new("psl2", params([("q", q.into())]), w, bound, "length <= 144 (q+1)")
}
