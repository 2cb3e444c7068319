//! Arithmetic in GF(p^k).
//!
//! Elements are residues modulo a monic irreducible polynomial of degree `k`
//! over GF(p). An element is packed into a `u32` as `c0 + c1*p + ... `, so the
//! prime subfield consists of the packed values `0..p`. The modulus is the
//! lexicographically smallest monic irreducible, comparing coefficient lists
//! low degree first; element order relations (`least`, `canonical`) use the
//! same coefficient-lex order, exposed as [`FieldSpec::lex_key`].
//!
//! Multiplication goes through exp/log tables built once from the primitive
//! element with schoolbook polynomial arithmetic. The polynomial routines are
//! kept as reference implementations ([`FieldSpec::mul_reference`],
//! [`FieldSpec::inv_euclid`]) and are cross-checked against the tables in tests.

use std::fmt;

use crate::error::{check_cap, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElt(u32);

impl FieldElt {
    pub const ZERO: FieldElt = FieldElt(0);
    pub const ONE: FieldElt = FieldElt(1);

    /// Packed index `c0 + c1*p + ...`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Wraps a packed index without range checking; callers keep it below
    /// the field order.
    pub fn from_packed(v: u32) -> FieldElt {
        FieldElt(v)
    }
}

#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low degree first, length k+1.
    modulus: Vec<u32>,
    primitive: FieldElt,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation by trial division, ascending primes.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Splits a prime power `q = p^k`; `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let f = factorize(q as u128);
    match f.as_slice() {
        [(p, k)] => Some((*p as u32, *k)),
        _ => None,
    }
}

mod poly {
    //! Dense polynomials over Z/p, low degree first, no trailing zeros.

    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        super::pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo a non-zero `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        divrem(a, m, p).1
    }

    pub fn divrem(a: &[u32], m: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        if r.len() < m.len() {
            return (Vec::new(), r);
        }
        let mut quot = vec![0u32; r.len() - dm];
        while r.len() >= m.len() {
            let shift = r.len() - m.len();
            let c = (*r.last().unwrap() as u64 * lead_inv % p as u64) as u32;
            quot[shift] = c;
            for (i, &mc) in m.iter().enumerate() {
                let v = (r[shift + i] as u64 + (p - c) as u64 * mc as u64) % p as u64;
                r[shift + i] = v as u32;
            }
            trim(&mut r);
        }
        trim(&mut quot);
        (quot, r)
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn powmod(base: &[u32], mut e: u128, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        result
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's irreducibility test for a monic `f` of degree `k`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        let x = vec![0, 1];
        // x^(p^i) mod f for i = 0..=k
        let mut frob = vec![rem(&x, f, p)];
        for _ in 0..k {
            let last = frob.last().unwrap();
            frob.push(powmod(last, p as u128, f, p));
        }
        if frob[k] != rem(&x, f, p) {
            return false;
        }
        for (r, _) in super::factorize(k as u128) {
            let g = sub(&frob[k / r as usize], &x, p);
            if gcd(f, &g, p).len() != 1 {
                return false;
            }
        }
        true
    }

    /// Extended Euclid: returns `s` with `s*a = 1 mod m`, if invertible.
    pub fn inverse(a: &[u32], m: &[u32], p: u32) -> Option<Vec<u32>> {
        let (mut r0, mut r1) = (m.to_vec(), rem(a, m, p));
        let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (qt, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&qt, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv_mod(r0[0], p);
        Some(rem(&mul(&s0, &[c], p), m, p))
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl FieldSpec {
    /// GF(p^k) with the lex-smallest monic irreducible modulus. `order_cap`
    /// bounds `p^k`.
    pub fn new(p: u32, k: u32, order_cap: u64) -> Result<FieldSpec> {
        if !is_prime(p as u64) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::invalid("field degree must be at least 1"));
        }
        let q = (p as u128).checked_pow(k).ok_or(Error::CapExceeded {
            what: "field order",
            needed: u128::MAX,
            limit: order_cap as u128,
        })?;
        check_cap("field order", q, order_cap as u128)?;
        let q = q as u32;
        let modulus = Self::lex_smallest_irreducible(p, k);
        let mut f =
            FieldSpec { p, k, q, modulus, primitive: FieldElt::ONE, exp: Vec::new(), log: Vec::new(), add_table: None };
        f.primitive = f.find_primitive();
        f.build_tables();
        Ok(f)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64, order_cap: u64) -> Result<FieldSpec> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        FieldSpec::new(p, k, order_cap)
    }

    fn lex_smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
        let count = (p as u64).pow(k);
        for rank in 0..count {
            // c0 is the most significant digit of the lex rank
            let mut coeffs = vec![0u32; k as usize + 1];
            let mut r = rank;
            for i in (0..k as usize).rev() {
                coeffs[i] = (r % p as u64) as u32;
                r /= p as u64;
            }
            coeffs[k as usize] = 1;
            if poly::is_irreducible(&coeffs, p) {
                return coeffs;
            }
        }
        unreachable!("irreducible polynomials of every degree exist")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElt {
        FieldElt::ZERO
    }

    pub fn one(&self) -> FieldElt {
        FieldElt::ONE
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElt> {
        (0..self.q).map(FieldElt)
    }

    /// Non-zero elements in packed order.
    pub fn units(&self) -> impl Iterator<Item = FieldElt> {
        (1..self.q).map(FieldElt)
    }

    pub fn from_index(&self, i: u32) -> Result<FieldElt> {
        if i < self.q {
            Ok(FieldElt(i))
        } else {
            Err(Error::invalid(format!("{i} is not an element index of GF({})", self.q)))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElt {
        FieldElt(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn coeffs(&self, a: FieldElt) -> Vec<u32> {
        let mut v = a.0;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<FieldElt> {
        if c.len() > self.k as usize || c.iter().any(|&x| x >= self.p) {
            return Err(Error::invalid(format!("{c:?} is not a coefficient list for GF({}^{})", self.p, self.k)));
        }
        Ok(FieldElt(c.iter().rev().fold(0, |acc, &x| acc * self.p + x)))
    }

    /// Rank of `a` in coefficient-lex order (c0 compared first).
    pub fn lex_key(&self, a: FieldElt) -> u32 {
        self.coeffs(a).iter().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn neg_digits(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            let d = (self.p - a % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = FieldElt::ONE;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = self.mul_reference(cur, self.primitive);
        }
        self.exp = exp;
        self.log = log;
        if self.k > 1 && self.p != 2 && self.q <= 256 {
            let q = self.q;
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = self.add_digits(a, b);
                }
            }
            self.add_table = Some(t);
        }
    }

    fn find_primitive(&self) -> FieldElt {
        let n = (self.q - 1) as u128;
        let primes: Vec<u128> = factorize(n).into_iter().map(|(r, _)| r).collect();
        let mut candidates: Vec<FieldElt> = self.units().collect();
        candidates.sort_by_key(|&a| self.lex_key(a));
        for a in candidates {
            let pa = self.coeffs(a);
            let is_gen = primes.iter().all(|&r| {
                let v = poly::powmod(&pa, n / r, &self.modulus, self.p);
                v != [1]
            });
            if is_gen {
                return a;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    /// The lex-least element of multiplicative order q-1.
    pub fn primitive_element(&self) -> FieldElt {
        self.primitive
    }

    pub fn add(&self, a: FieldElt, b: FieldElt) -> FieldElt {
        if self.k == 1 {
            let s = a.0 + b.0;
            return FieldElt(if s >= self.p { s - self.p } else { s });
        }
        match &self.add_table {
            Some(t) => FieldElt(t[(a.0 * self.q + b.0) as usize]),
            None => FieldElt(self.add_digits(a.0, b.0)),
        }
    }

    pub fn neg(&self, a: FieldElt) -> FieldElt {
        if self.k == 1 {
            return FieldElt(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        FieldElt(self.neg_digits(a.0))
    }

    pub fn sub(&self, a: FieldElt, b: FieldElt) -> FieldElt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElt, b: FieldElt) -> FieldElt {
        if a.0 == 0 || b.0 == 0 {
            return FieldElt::ZERO;
        }
        if self.k == 1 {
            return FieldElt(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let n = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElt(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: FieldElt) -> Result<FieldElt> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse(format!("GF({})", self.q)));
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(FieldElt(self.exp[((n - l) % n) as usize]))
    }

    /// `a^e` for a signed exponent; `0^e` with `e < 0` is an error.
    pub fn pow(&self, a: FieldElt, e: i64) -> Result<FieldElt> {
        if a.0 == 0 {
            return match e {
                0 => Ok(FieldElt::ONE),
                e if e > 0 => Ok(FieldElt::ZERO),
                _ => Err(Error::ZeroInverse(format!("GF({})", self.q))),
            };
        }
        let n = (self.q - 1) as i128;
        let l = self.log[a.0 as usize] as i128;
        Ok(FieldElt(self.exp[(l * e as i128).rem_euclid(n) as usize]))
    }

    /// `a^(p^r)`; `r` is taken modulo `k`.
    pub fn frobenius(&self, a: FieldElt, r: u32) -> FieldElt {
        if a.0 == 0 {
            return a;
        }
        let n = (self.q - 1) as u64;
        let e = pow_mod(self.p as u64, (r % self.k) as u64, n.max(1));
        let l = self.log[a.0 as usize] as u64;
        FieldElt(self.exp[((l * e) % n.max(1)) as usize])
    }

    pub fn multiplicative_order(&self, a: FieldElt) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::invalid("zero has no multiplicative order"));
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Ok(n / num_integer::gcd(n, l))
    }

    /// True for zero and for squares of units.
    pub fn is_square(&self, a: FieldElt) -> bool {
        a.0 == 0 || self.p == 2 || self.log[a.0 as usize].is_multiple_of(2)
    }

    /// Schoolbook multiplication modulo the defining polynomial.
    pub fn mul_reference(&self, a: FieldElt, b: FieldElt) -> FieldElt {
        let r = poly::mulmod(&self.coeffs(a), &self.coeffs(b), &self.modulus, self.p);
        self.from_coeffs(&r).expect("reduced product")
    }

    /// Inversion by the extended Euclidean algorithm on polynomials.
    pub fn inv_euclid(&self, a: FieldElt) -> Result<FieldElt> {
        let pa = self.coeffs(a);
        match poly::inverse(&pa, &self.modulus, self.p) {
            Some(v) => Ok(self.from_coeffs(&v).expect("reduced inverse")),
            None => Err(Error::ZeroInverse(format!("GF({})", self.q))),
        }
    }

    pub fn fmt_elt(&self, a: FieldElt) -> String {
        let c: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", c.join(","))
    }

    /// Parses either a coefficient list `[c0,c1,...]` or, in a prime field,
    /// a bare integer.
    pub fn parse_elt(&self, s: &str) -> Result<FieldElt> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs: Vec<u32> = inner
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| Error::parse(format!("bad coefficient {t:?}"))))
                .collect::<Result<_>>()?;
            return self.from_coeffs(&coeffs).map_err(|e| Error::parse(e.to_string()));
        }
        if self.k == 1 {
            let n: u32 = s.parse().map_err(|_| Error::parse(format!("bad field element {s:?}")))?;
            if n < self.p {
                return Ok(FieldElt(n));
            }
        }
        Err(Error::parse(format!("bad field element {s:?} for GF({})", self.q)))
    }

    pub fn fmt_modulus(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c, i) {
                (c, 0) => c.to_string(),
                (1, _) => mono,
                (c, _) => format!("{c}{mono}"),
            });
        }
        terms.join("+")
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus={})", self.p, self.k, self.fmt_modulus())
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u64 = 1 << 20;

    fn gf(p: u32, k: u32) -> FieldSpec {
        FieldSpec::new(p, k, CAP).unwrap()
    }

    /// Exhaustive factorisation oracle: a monic quadratic/cubic is
    /// irreducible iff it has no root.
    fn has_root(f: &[u32], p: u32) -> bool {
        (0..p).any(|x| f.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64) == 0)
    }

    #[test]
    fn field_make_examples() {
        let f2 = gf(2, 1);
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f2.to_string(), "GF(2^1; modulus=x)");
        assert_eq!(gf(2, 2).modulus(), &[1, 1, 1]);
        assert_eq!(gf(3, 2).modulus(), &[1, 0, 1]);
        assert_eq!(gf(3, 2).to_string(), "GF(3^2; modulus=x^2+1)");
    }

    #[test]
    fn lex_smallest_modulus_matches_root_scan() {
        for &(p, k) in &[(2u32, 2u32), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let mut expected = None;
            let count = p.pow(k);
            for rank in 0..count {
                let mut c = vec![0u32; k as usize + 1];
                let mut r = rank;
                for i in (0..k as usize).rev() {
                    c[i] = r % p;
                    r /= p;
                }
                c[k as usize] = 1;
                if !has_root(&c, p) {
                    expected = Some(c);
                    break;
                }
            }
            assert_eq!(gf(p, k).modulus(), expected.unwrap().as_slice(), "GF({p}^{k})");
        }
    }

    #[test]
    fn errors() {
        assert!(FieldSpec::new(4, 1, CAP).is_err());
        assert!(FieldSpec::new(2, 0, CAP).is_err());
        assert!(FieldSpec::new(2, 21, CAP).unwrap_err().is_cap());
        assert!(FieldSpec::new(2, 200, CAP).unwrap_err().is_cap());
        assert!(gf(5, 1).inv(FieldElt::ZERO).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = gf(5, 1);
        assert_eq!(f5.mul(f5.from_int(2), f5.from_int(3)), f5.one());
        let f4 = gf(2, 2);
        let omega = f4.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.mul(omega, omega), f4.from_coeffs(&[1, 1]).unwrap());
        for f in [gf(2, 1), gf(3, 2), gf(7, 1), gf(2, 4)] {
            assert_eq!(f.inv(f.one()).unwrap(), f.one());
        }
    }

    #[test]
    fn frobenius_examples() {
        let f9 = gf(3, 2);
        let fixed: Vec<_> = f9.elements().filter(|&a| f9.frobenius(a, 1) == a).collect();
        assert_eq!(fixed.len(), 3);
        assert!(fixed.iter().all(|a| a.index() < 3));
        let f4 = gf(2, 2);
        let omega = f4.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.frobenius(omega, 1), f4.from_coeffs(&[1, 1]).unwrap());
        assert_eq!(f9.frobenius(FieldElt::ZERO, 1), FieldElt::ZERO);
        for a in f9.elements() {
            assert_eq!(f9.frobenius(a, 2), a);
        }
    }

    #[test]
    fn primitive_element_examples() {
        assert_eq!(gf(5, 1).primitive_element(), FieldElt(2));
        assert_eq!(gf(7, 1).primitive_element(), FieldElt(3));
        assert_eq!(gf(2, 1).primitive_element(), FieldElt::ONE);
        // exhaustive order check: least lex element of full order
        for f in [gf(3, 2), gf(2, 3), gf(5, 2), gf(2, 4)] {
            let mut units: Vec<_> = f.units().collect();
            units.sort_by_key(|&a| f.lex_key(a));
            let want = units
                .into_iter()
                .find(|&a| {
                    let mut x = a;
                    let mut ord = 1;
                    while x != f.one() {
                        x = f.mul_reference(x, a);
                        ord += 1;
                    }
                    ord == f.order() - 1
                })
                .unwrap();
            assert_eq!(f.primitive_element(), want, "{f}");
        }
    }

    #[test]
    fn tables_agree_with_polynomial_reference() {
        for f in [gf(2, 3), gf(3, 2), gf(5, 2), gf(2, 4), gf(3, 3), gf(7, 1)] {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_reference(a, b));
                }
                if !a.is_zero() {
                    assert_eq!(f.inv(a).unwrap(), f.inv_euclid(a).unwrap());
                }
            }
        }
    }

    #[test]
    fn element_text_round_trip() {
        let f9 = gf(3, 2);
        for a in f9.elements() {
            assert_eq!(f9.parse_elt(&f9.fmt_elt(a)).unwrap(), a);
        }
        let f7 = gf(7, 1);
        assert_eq!(f7.parse_elt("5").unwrap(), FieldElt(5));
        assert!(f7.parse_elt("7").is_err());
        assert!(f9.parse_elt("[3,0]").is_err());
        assert!(f9.parse_elt("[1,1,1]").is_err());
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn fields() -> impl Strategy<Value = (u32, u32)> {
            prop::sample::select(vec![(2u32, 1u32), (2, 3), (3, 2), (5, 1), (7, 2), (2, 5), (13, 1)])
        }

        proptest! {
            #[test]
            fn lagrange_and_frobenius_hom((p, k) in fields(), a in 0u32..4096, b in 0u32..4096, r in 0u32..6) {
                let f = gf(p, k);
                let a = FieldElt(a % f.order());
                let b = FieldElt(b % f.order());
                if !a.is_zero() {
                    prop_assert_eq!(f.pow(a, (f.order() - 1) as i64).unwrap(), f.one());
                }
                prop_assert_eq!(f.frobenius(f.add(a, b), r), f.add(f.frobenius(a, r), f.frobenius(b, r)));
                prop_assert_eq!(f.frobenius(f.mul(a, b), r), f.mul(f.frobenius(a, r), f.frobenius(b, r)));
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
            }

            #[test]
            fn deterministic_construction((p, k) in fields()) {
                prop_assert_eq!(gf(p, k).modulus().to_vec(), gf(p, k).modulus().to_vec());
            }
        }
    }
}
