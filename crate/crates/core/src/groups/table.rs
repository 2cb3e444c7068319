//! Cayley tables for small groups: elements become `u32` indices.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{Elem, Group, GroupOps};
use crate::error::{check_cap, Result};

#[derive(Debug, Clone)]
pub struct TableGroup {
    elements: Vec<Elem>,
    index: HashMap<Elem, u32>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: u32,
    orders: Vec<u32>,
}

impl TableGroup {
    /// Builds the full multiplication table of `g`, subject to the table cap.
    pub fn build(g: &Group) -> Result<TableGroup> {
        check_cap("table", g.order(), g.caps().table as u128)?;
        let elements: Vec<Elem> = g.elements()?.as_ref().clone();
        let n = elements.len();
        let index: HashMap<Elem, u32> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let table: Vec<u32> = elements
            .par_iter()
            .flat_map_iter(|a| elements.iter().map(|b| index[&g.mul(a, b)]).collect::<Vec<_>>())
            .collect();
        let identity = index[&g.identity()];
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == identity {
                    inverse[a] = b as u32;
                    break;
                }
            }
        }
        let orders = (0..n)
            .map(|a| {
                let mut x = a as u32;
                let mut k = 1;
                while x != identity {
                    x = table[x as usize * n + a];
                    k += 1;
                }
                k
            })
            .collect();
        Ok(TableGroup { elements, index, table, inverse, identity, orders })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: u32) -> &Elem {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn index_of(&self, e: &Elem) -> Option<u32> {
        self.index.get(e).copied()
    }

    pub fn element_order(&self, i: u32) -> u32 {
        self.orders[i as usize]
    }

    /// Whether `{a, b}` generates the whole group, by bitset closure.
    pub fn generates(&self, a: u32, b: u32) -> bool {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut stack = vec![self.identity];
        seen[self.identity as usize] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for s in [a, b] {
                let y = self.table[x as usize * n + s as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }
}

impl GroupOps for TableGroup {
    type Elem = u32;

    fn identity(&self) -> u32 {
        self.identity
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.table[*a as usize * self.elements.len() + *b as usize]
    }

    fn inv(&self, a: &u32) -> u32 {
        self.inverse[*a as usize]
    }

    fn pow(&self, a: &u32, e: i128) -> u32 {
        let ord = self.orders[*a as usize] as i128;
        let e = e.rem_euclid(ord);
        let mut acc = self.identity;
        let mut base = *a;
        let mut e = e as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;

    #[test]
    fn table_agrees_with_backend() {
        let g = Group::parse("PSL(2,5)", &Caps::default()).unwrap();
        let t = TableGroup::build(&g).unwrap();
        assert_eq!(t.len(), 60);
        for a in 0..60u32 {
            for b in (0..60u32).step_by(7) {
                assert_eq!(t.element(t.mul(&a, &b)), &g.mul(t.element(a), t.element(b)));
            }
            assert_eq!(t.element_order(a) as u64, g.element_order(t.element(a)));
            assert_eq!(t.pow(&a, -7), t.index_of(&g.pow(t.element(a), -7)).unwrap());
        }
        let big = Group::parse("SL(2,13)", &Caps::default()).unwrap();
        assert!(TableGroup::build(&big).unwrap_err().is_cap());
    }
}
