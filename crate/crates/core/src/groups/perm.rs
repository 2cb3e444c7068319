//! Permutations as 0-based image arrays, composed left to right:
//! `(a * b)(i) = b(a(i))`. Text form is 1-based cycle notation.

use crate::error::{Error, Result};

pub fn identity(n: u16) -> Box<[u16]> {
    (0..n).collect()
}

pub fn compose(a: &[u16], b: &[u16]) -> Box<[u16]> {
    a.iter().map(|&i| b[i as usize]).collect()
}

pub fn inverse(a: &[u16]) -> Box<[u16]> {
    let mut out = vec![0u16; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u16;
    }
    out.into_boxed_slice()
}

pub fn cycle_lengths(a: &[u16]) -> Vec<usize> {
    let mut seen = vec![false; a.len()];
    let mut out = Vec::new();
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = a[i] as usize;
            len += 1;
        }
        out.push(len);
    }
    out
}

pub fn is_even(a: &[u16]) -> bool {
    cycle_lengths(a).iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
}

pub fn order(a: &[u16]) -> u64 {
    cycle_lengths(a).into_iter().fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
}

/// Advances to the next permutation in lexicographic order.
pub fn next_permutation(a: &mut [u16]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Parses a product of cycles such as `(1 2 3)(4 5)`; `()` and the empty
/// string denote the identity. Cycles are multiplied left to right.
pub fn parse_cycles(s: &str, degree: u16) -> Result<Box<[u16]>> {
    let mut result = identity(degree);
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body =
            rest.strip_prefix('(').ok_or_else(|| Error::parse(format!("expected '(' in cycle notation {s:?}")))?;
        let close = body.find(')').ok_or_else(|| Error::parse(format!("unterminated cycle in {s:?}")))?;
        let points: Vec<u16> = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                let v: u32 = t.parse().map_err(|_| Error::parse(format!("bad point {t:?} in {s:?}")))?;
                if v == 0 || v > degree as u32 {
                    return Err(Error::parse(format!("point {v} outside 1..={degree}")));
                }
                Ok((v - 1) as u16)
            })
            .collect::<Result<_>>()?;
        let mut seen = vec![false; degree as usize];
        for &p in &points {
            if std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::parse(format!("point {} repeated within a cycle", p + 1)));
            }
        }
        let mut cycle = identity(degree);
        for (i, &p) in points.iter().enumerate() {
            cycle[p as usize] = points[(i + 1) % points.len()];
        }
        result = compose(&result, &cycle);
        rest = body[close + 1..].trim_start();
    }
    Ok(result)
}

pub fn format_cycles(a: &[u16]) -> String {
    let mut seen = vec![false; a.len()];
    let mut out = String::new();
    for start in 0..a.len() {
        if seen[start] || a[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&(i + 1).to_string());
            i = a[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_transpositions_is_three_cycle() {
        let a = parse_cycles("(1 2)", 3).unwrap();
        let b = parse_cycles("(2 3)", 3).unwrap();
        let c = compose(&a, &b);
        assert_eq!(order(&c), 3);
        assert_eq!(format_cycles(&c), "(1 3 2)");
    }

    #[test]
    fn cycle_text_round_trip() {
        let p = parse_cycles("(1 5 2)(3 4)", 6).unwrap();
        assert_eq!(parse_cycles(&format_cycles(&p), 6).unwrap(), p);
        assert_eq!(format_cycles(&identity(4)), "()");
        assert_eq!(parse_cycles("()", 4).unwrap(), identity(4));
        assert!(parse_cycles("(1 1)", 4).is_err());
        assert!(parse_cycles("(1 9)", 4).is_err());
        assert!(parse_cycles("1 2", 4).is_err());
    }

    #[test]
    fn lexicographic_enumeration_counts() {
        let mut p: Vec<u16> = (0..5).collect();
        let mut count = 1;
        let mut even = 1;
        while next_permutation(&mut p) {
            count += 1;
            even += is_even(&p) as usize;
        }
        assert_eq!((count, even), (120, 60));
        assert_eq!(compose(&p, &inverse(&p)), identity(5));
    }
}
