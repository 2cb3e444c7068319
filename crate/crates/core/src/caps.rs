//! Resource caps shared by every exhaustive computation.
//!
//! Caps are plain numbers so that a run can be replayed exactly from its
//! recorded configuration. They can be overridden from a compact
//! `key=value,key=value` string, which is also what the `LAWFORGE_CAPS`
//! environment variable holds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of the environment variable holding cap overrides.
pub const CAPS_ENV: &str = "LAWFORGE_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest group that may be listed element by element.
    pub enumeration: u64,
    /// Largest subgroup a closure computation may build.
    pub closure: u64,
    /// Largest |G| for which all |G|^2 pairs may be evaluated.
    pub pairs: u64,
    /// Longest word (in letters) any constructor may emit.
    pub word_length: u64,
    /// Largest field order GF(p^k) that may be constructed.
    pub field_order: u64,
    /// Largest group for which a full multiplication table is built.
    pub table: u64,
    /// Upper limit on word-times-pair evaluations in a shortest-law search.
    pub search_budget: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: 2_000_000,
            closure: 2_000_000,
            pairs: 1500,
            word_length: 10_000_000,
            field_order: 1 << 20,
            table: 2048,
            search_budget: 100_000_000_000,
        }
    }
}

impl Caps {
    /// Defaults overridden by `LAWFORGE_CAPS`, if set.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAPS_ENV) {
            Ok(s) => Caps::default().with_overrides(&s),
            Err(_) => Ok(Caps::default()),
        }
    }

    /// Applies `key=value` overrides separated by commas.
    pub fn with_overrides(mut self, spec: &str) -> Result<Caps> {
        for item in spec.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (key, value) =
                item.split_once('=').ok_or_else(|| Error::parse(format!("cap override {item:?} is not key=value")))?;
            let value = value.trim();
            let number = |v: &str| -> Result<u128> {
                v.replace('_', "").parse::<u128>().map_err(|_| Error::parse(format!("cap value {v:?} is not a number")))
            };
            let n = number(value)?;
            let small = |n: u128| -> Result<u64> {
                u64::try_from(n).map_err(|_| Error::parse(format!("cap value {n} too large")))
            };
            match key.trim() {
                "enumeration" => self.enumeration = small(n)?,
                "closure" => self.closure = small(n)?,
                "pairs" => self.pairs = small(n)?,
                "word_length" => self.word_length = small(n)?,
                "field_order" => self.field_order = small(n)?,
                "table" => self.table = small(n)?,
                "search_budget" => self.search_budget = n,
                other => return Err(Error::parse(format!("unknown cap {other:?}"))),
            }
        }
        Ok(self)
    }
}

impl fmt::Display for Caps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "enumeration={},closure={},pairs={},word_length={},field_order={},table={},search_budget={}",
            self.enumeration,
            self.closure,
            self.pairs,
            self.word_length,
            self.field_order,
            self.table,
            self.search_budget
        )
    }
}

impl FromStr for Caps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Caps> {
        Caps::default().with_overrides(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_apply_and_display_round_trips() {
        let caps: Caps = "pairs=200, word_length=1_000".parse().unwrap();
        assert_eq!(caps.pairs, 200);
        assert_eq!(caps.word_length, 1000);
        assert_eq!(caps.enumeration, Caps::default().enumeration);
        let again: Caps = caps.to_string().parse().unwrap();
        assert_eq!(again, caps);
    }

    #[test]
    fn rejects_garbage() {
        assert!("pairs".parse::<Caps>().is_err());
        assert!("bogus=1".parse::<Caps>().is_err());
        assert!("pairs=-3".parse::<Caps>().is_err());
        assert!("pairs=99999999999999999999999".parse::<Caps>().is_err());
    }
}
