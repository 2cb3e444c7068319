//! Finite groups behind one handle: cyclic, permutation, matrix, projective
//! and direct-product backends.

pub mod descriptor;
pub mod matrix;
pub mod perm;
mod table;
mod text;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use rand::Rng;

pub use descriptor::{GroupDescriptor, MatrixKind};
pub use matrix::MatrixGroup;
pub use table::TableGroup;

use crate::caps::Caps;
use crate::error::{check_cap, Error, Result};
use crate::ffield::{factorize, FieldElt};
use crate::freeword::{Generator, Word};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Residue(u64),
    Perm(Box<[u16]>),
    Matrix(Box<[u32]>),
    Tuple(Box<[Elem]>),
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Residue(r) => write!(f, "{r}"),
            Elem::Perm(p) => write!(f, "{}", perm::format_cycles(p)),
            Elem::Matrix(m) => write!(f, "{m:?}"),
            Elem::Tuple(t) => f.debug_list().entries(t.iter()).finish(),
        }
    }
}

/// The operations exhaustive algorithms need from a group.
pub trait GroupOps: Sync {
    type Elem: Clone + Eq + Hash + Send + Sync + fmt::Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    /// Square-and-multiply power with a signed exponent.
    fn pow(&self, a: &Self::Elem, e: i128) -> Self::Elem {
        let mut base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(a, b);
        let ainv_binv = self.mul(&self.inv(a), &self.inv(b));
        self.mul(&ab, &ainv_binv)
    }
}

/// A word prepared for repeated evaluation: each distinct
/// (generator, exponent) block is powered once per pair.
#[derive(Debug, Clone)]
pub struct CompiledWord {
    powers: Vec<(Generator, i64)>,
    blocks: Vec<u32>,
}

impl CompiledWord {
    pub fn new(w: &Word) -> CompiledWord {
        let mut powers: Vec<(Generator, i64)> = Vec::new();
        let blocks = w
            .blocks()
            .iter()
            .map(|b| match powers.iter().position(|p| p == b) {
                Some(i) => i as u32,
                None => {
                    powers.push(*b);
                    (powers.len() - 1) as u32
                }
            })
            .collect();
        CompiledWord { powers, blocks }
    }

    /// Distinct (generator, exponent) blocks.
    pub fn powers(&self) -> &[(Generator, i64)] {
        &self.powers
    }

    /// Block sequence as indices into [`CompiledWord::powers`].
    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn eval<G: GroupOps + ?Sized>(&self, g: &G, x: &G::Elem, y: &G::Elem) -> G::Elem {
        let pw: Vec<G::Elem> =
            self.powers.iter().map(|&(gen, e)| g.pow(if gen == Generator::X { x } else { y }, e as i128)).collect();
        self.blocks.iter().fold(g.identity(), |acc, &i| g.mul(&acc, &pw[i as usize]))
    }
}

/// Image of `w` under `x -> a`, `y -> b`.
pub fn evaluate<G: GroupOps + ?Sized>(g: &G, w: &Word, a: &G::Elem, b: &G::Elem) -> G::Elem {
    CompiledWord::new(w).eval(g, a, b)
}

/// Breadth-first closure of `gens` under right multiplication.
pub fn closure<G: GroupOps + ?Sized>(g: &G, gens: &[G::Elem], cap: u64) -> Result<Vec<G::Elem>> {
    let id = g.identity();
    let mut seen: HashSet<G::Elem> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for s in gens {
            let next = g.mul(&e, s);
            if seen.insert(next.clone()) {
                check_cap("closure", out.len() as u128 + 1, cap as u128)?;
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

/// Subgroup generated by all commutators of elements of `h`.
pub fn derived_subgroup<G: GroupOps + ?Sized>(g: &G, h: &[G::Elem], cap: u64) -> Result<Vec<G::Elem>> {
    let mut comms: HashSet<G::Elem> = HashSet::new();
    for a in h {
        for b in h {
            let c = g.commutator(a, b);
            if !g.is_identity(&c) {
                comms.insert(c);
            }
        }
    }
    let gens: Vec<G::Elem> = comms.into_iter().collect();
    closure(g, &gens, cap)
}

/// Length of the derived series of the subgroup `h`, or `None` if it
/// stabilises at a non-trivial perfect subgroup.
pub fn derived_length<G: GroupOps + ?Sized>(g: &G, h: &[G::Elem], cap: u64) -> Result<Option<u32>> {
    let mut current = h.to_vec();
    let mut len = 0;
    while current.len() > 1 {
        let next = derived_subgroup(g, &current, cap)?;
        if next.len() == current.len() {
            return Ok(None);
        }
        current = next;
        len += 1;
    }
    Ok(Some(len))
}

#[derive(Debug, Clone)]
enum Backend {
    Cyclic(u64),
    Sym(u16),
    Alt(u16),
    Perm { degree: u16, gens: Vec<Box<[u16]>> },
    Matrix(MatrixGroup),
    Product(Vec<Group>),
}

#[derive(Debug, Clone)]
pub struct Group {
    desc: GroupDescriptor,
    backend: Backend,
    order: u128,
    caps: Caps,
    elements: OnceLock<Arc<Vec<Elem>>>,
}

fn factorial(n: u16) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(i))
}

impl Group {
    pub fn new(desc: &GroupDescriptor, caps: &Caps) -> Result<Group> {
        let overflow = || Error::CapExceeded { what: "group order", needed: u128::MAX, limit: u128::MAX };
        let (backend, order) = match desc {
            GroupDescriptor::Cyclic(n) => (Backend::Cyclic(*n), *n as u128),
            GroupDescriptor::Sym(n) => (Backend::Sym(*n), factorial(*n).ok_or_else(overflow)?),
            GroupDescriptor::Alt(n) => {
                let f = factorial(*n).ok_or_else(overflow)?;
                (Backend::Alt(*n), if *n < 2 { 1 } else { f / 2 })
            }
            GroupDescriptor::Perm { degree, gens } => (Backend::Perm { degree: *degree, gens: gens.clone() }, 0),
            GroupDescriptor::Matrix { kind, n, q } | GroupDescriptor::Projective { kind, n, q } => {
                let projective = matches!(desc, GroupDescriptor::Projective { .. });
                let m = MatrixGroup::new(*kind, *n, *q, projective, caps.field_order)?;
                let order = m.order();
                (Backend::Matrix(m), order)
            }
            GroupDescriptor::Product(parts) => {
                let groups = parts.iter().map(|p| Group::new(p, caps)).collect::<Result<Vec<_>>>()?;
                let order = groups.iter().try_fold(1u128, |acc, g| acc.checked_mul(g.order())).ok_or_else(overflow)?;
                (Backend::Product(groups), order)
            }
        };
        let mut g = Group { desc: desc.clone(), backend, order, caps: *caps, elements: OnceLock::new() };
        if let Backend::Perm { gens, .. } = &g.backend {
            let gens: Vec<Elem> = gens.iter().map(|p| Elem::Perm(p.clone())).collect();
            let mut elems = closure(&g, &gens, caps.closure)?;
            elems.sort();
            g.order = elems.len() as u128;
            let _ = g.elements.set(Arc::new(elems));
        }
        Ok(g)
    }

    pub fn parse(s: &str, caps: &Caps) -> Result<Group> {
        Group::new(&s.parse()?, caps)
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.desc
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn matrix_backend(&self) -> Option<&MatrixGroup> {
        match &self.backend {
            Backend::Matrix(m) => Some(m),
            _ => None,
        }
    }

    fn perm_degree(&self) -> Option<u16> {
        match &self.backend {
            Backend::Sym(n) | Backend::Alt(n) => Some(*n),
            Backend::Perm { degree, .. } => Some(*degree),
            _ => None,
        }
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match (&self.backend, e) {
            (Backend::Cyclic(n), Elem::Residue(r)) => r < n,
            (Backend::Sym(n), Elem::Perm(p)) | (Backend::Alt(n), Elem::Perm(p)) => {
                let mut seen = vec![false; *n as usize];
                let valid = p.len() == *n as usize
                    && p.iter().all(|&i| (i as usize) < seen.len() && !std::mem::replace(&mut seen[i as usize], true));
                valid && (matches!(self.backend, Backend::Sym(_)) || perm::is_even(p))
            }
            (Backend::Perm { .. }, Elem::Perm(_)) => {
                self.elements.get().is_some_and(|els| els.binary_search(e).is_ok())
            }
            (Backend::Matrix(m), Elem::Matrix(a)) => m.contains(a),
            (Backend::Product(gs), Elem::Tuple(t)) => {
                gs.len() == t.len() && gs.iter().zip(t.iter()).all(|(g, x)| g.contains(x))
            }
            _ => false,
        }
    }

    /// Least `e >= 1` with `g^e = 1`. Short orders are found by iteration,
    /// the rest against the factorisation of |G|.
    pub fn element_order(&self, e: &Elem) -> u64 {
        match (&self.backend, e) {
            (Backend::Cyclic(n), Elem::Residue(r)) => n / num_integer::gcd(*n, *r),
            (_, Elem::Perm(p)) => perm::order(p),
            (Backend::Product(gs), Elem::Tuple(t)) => {
                gs.iter().zip(t.iter()).fold(1, |acc, (g, x)| num_integer::lcm(acc, g.element_order(x)))
            }
            _ => {
                let mut x = e.clone();
                for k in 1..=64u64 {
                    if self.is_identity(&x) {
                        return k;
                    }
                    x = self.mul(&x, e);
                }
                let mut ord = self.order;
                for (r, _) in factorize(self.order) {
                    while ord.is_multiple_of(r) && self.is_identity(&self.pow(e, (ord / r) as i128)) {
                        ord /= r;
                    }
                }
                ord as u64
            }
        }
    }

    /// All elements in a fixed order, cached after the first call.
    pub fn elements(&self) -> Result<Arc<Vec<Elem>>> {
        if let Some(e) = self.elements.get() {
            return Ok(e.clone());
        }
        check_cap("enumeration", self.order, self.caps.enumeration as u128)?;
        let elems = self.enumerate_uncached()?;
        debug_assert_eq!(elems.len() as u128, self.order);
        let _ = self.elements.set(Arc::new(elems));
        Ok(self.elements.get().expect("just set").clone())
    }

    fn enumerate_uncached(&self) -> Result<Vec<Elem>> {
        Ok(match &self.backend {
            Backend::Cyclic(n) => (0..*n).map(Elem::Residue).collect(),
            Backend::Sym(n) | Backend::Alt(n) => {
                let alt = matches!(self.backend, Backend::Alt(_));
                let mut p: Vec<u16> = (0..*n).collect();
                let mut out = Vec::new();
                loop {
                    if !alt || perm::is_even(&p) {
                        out.push(Elem::Perm(p.clone().into_boxed_slice()));
                    }
                    if !perm::next_permutation(&mut p) {
                        break;
                    }
                }
                out
            }
            Backend::Perm { .. } => unreachable!("generated groups are enumerated at construction"),
            Backend::Matrix(m) => {
                let mut out = Vec::new();
                m.for_each(self.caps.enumeration, &mut |a| out.push(Elem::Matrix(a)))?;
                out
            }
            Backend::Product(gs) => {
                let lists = gs.iter().map(|g| g.elements()).collect::<Result<Vec<_>>>()?;
                let mut out: Vec<Vec<Elem>> = vec![Vec::new()];
                for list in &lists {
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            list.iter().map(move |e| {
                                let mut v = prefix.clone();
                                v.push(e.clone());
                                v
                            })
                        })
                        .collect();
                }
                out.into_iter().map(|v| Elem::Tuple(v.into_boxed_slice())).collect()
            }
        })
    }

    /// Uniform element from a seeded stream.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Elem> {
        match &self.backend {
            Backend::Cyclic(n) => Ok(Elem::Residue(rng.random_range(0..*n))),
            Backend::Sym(n) | Backend::Alt(n) => {
                let mut p: Vec<u16> = (0..*n).collect();
                for i in (1..p.len()).rev() {
                    let j = rng.random_range(0..=i);
                    p.swap(i, j);
                }
                if matches!(self.backend, Backend::Alt(_)) && !perm::is_even(&p) {
                    p.swap(0, 1);
                }
                Ok(Elem::Perm(p.into_boxed_slice()))
            }
            Backend::Matrix(m) => match m.random_direct(rng) {
                Some(a) => Ok(Elem::Matrix(a)),
                None => {
                    let els = self.elements()?;
                    Ok(els[rng.random_range(0..els.len())].clone())
                }
            },
            Backend::Perm { .. } => {
                let els = self.elements()?;
                Ok(els[rng.random_range(0..els.len())].clone())
            }
            Backend::Product(gs) => {
                let parts = gs.iter().map(|g| g.random_element(rng)).collect::<Result<Vec<_>>>()?;
                Ok(Elem::Tuple(parts.into_boxed_slice()))
            }
        }
    }

    pub fn closure(&self, gens: &[Elem]) -> Result<Vec<Elem>> {
        closure(self, gens, self.caps.closure)
    }

    pub fn is_generating_pair(&self, g: &Elem, h: &Elem) -> Result<bool> {
        check_cap("closure", self.order, self.caps.closure as u128)?;
        Ok(self.closure(&[g.clone(), h.clone()])?.len() as u128 == self.order)
    }

    pub fn evaluate(&self, w: &Word, g: &Elem, h: &Elem) -> Elem {
        evaluate(self, w, g, h)
    }

    pub fn format_element(&self, e: &Elem) -> String {
        match (&self.backend, e) {
            (Backend::Matrix(m), Elem::Matrix(a)) => m.format(a),
            (Backend::Product(gs), Elem::Tuple(t)) => {
                let parts: Vec<String> = gs.iter().zip(t.iter()).map(|(g, x)| g.format_element(x)).collect();
                format!("<{}>", parts.join(" | "))
            }
            (_, Elem::Residue(r)) => r.to_string(),
            (_, Elem::Perm(p)) => perm::format_cycles(p),
            (_, other) => format!("{other:?}"),
        }
    }

    /// Parses an element in the notation of [`Group::format_element`] and
    /// checks membership.
    pub fn parse_element(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let e = match &self.backend {
            Backend::Cyclic(_) => {
                Elem::Residue(s.parse().map_err(|_| Error::parse(format!("expected a residue, got {s:?}")))?)
            }
            Backend::Sym(_) | Backend::Alt(_) | Backend::Perm { .. } => {
                Elem::Perm(perm::parse_cycles(s, self.perm_degree().expect("perm backend"))?)
            }
            Backend::Matrix(m) => Elem::Matrix(text::parse_matrix(s, m.dim(), m.field())?),
            Backend::Product(gs) => {
                let inner = s
                    .strip_prefix('<')
                    .and_then(|r| r.strip_suffix('>'))
                    .ok_or_else(|| Error::parse(format!("expected <e1 | e2 ...>, got {s:?}")))?;
                let parts: Vec<&str> = inner.split('|').collect();
                if parts.len() != gs.len() {
                    return Err(Error::parse(format!("expected {} components", gs.len())));
                }
                let comps = gs.iter().zip(parts).map(|(g, p)| g.parse_element(p)).collect::<Result<Vec<_>>>()?;
                Elem::Tuple(comps.into_boxed_slice())
            }
        };
        if !self.contains(&e) {
            return Err(Error::invalid(format!("{s:?} is not an element of {}", self.desc)));
        }
        Ok(e)
    }

    /// Diagonal matrix with the given diagonal, for matrix backends.
    pub fn diagonal(&self, diag: &[FieldElt]) -> Result<Elem> {
        let m = self.matrix_backend().ok_or_else(|| Error::invalid("not a matrix group"))?;
        let n = m.dim();
        if diag.len() != n {
            return Err(Error::invalid(format!("expected {n} diagonal entries")));
        }
        let mut a = vec![0u32; n * n];
        for (i, d) in diag.iter().enumerate() {
            a[i * n + i] = d.index();
        }
        let a: Box<[u32]> = a.into();
        let a = if m.is_projective() { m.canonicalize(&a) } else { a };
        let e = Elem::Matrix(a);
        if !self.contains(&e) {
            return Err(Error::invalid("diagonal matrix is not in the group"));
        }
        Ok(e)
    }
}

impl GroupOps for Group {
    type Elem = Elem;

    fn identity(&self) -> Elem {
        match &self.backend {
            Backend::Cyclic(_) => Elem::Residue(0),
            Backend::Sym(n) | Backend::Alt(n) | Backend::Perm { degree: n, .. } => Elem::Perm(perm::identity(*n)),
            Backend::Matrix(m) => Elem::Matrix(m.identity()),
            Backend::Product(gs) => Elem::Tuple(gs.iter().map(|g| g.identity()).collect()),
        }
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.backend, a, b) {
            (Backend::Cyclic(n), Elem::Residue(x), Elem::Residue(y)) => {
                Elem::Residue(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (_, Elem::Perm(x), Elem::Perm(y)) => Elem::Perm(perm::compose(x, y)),
            (Backend::Matrix(m), Elem::Matrix(x), Elem::Matrix(y)) => Elem::Matrix(m.mul(x, y)),
            (Backend::Product(gs), Elem::Tuple(x), Elem::Tuple(y)) => {
                Elem::Tuple(gs.iter().zip(x.iter().zip(y.iter())).map(|(g, (u, v))| g.mul(u, v)).collect())
            }
            _ => panic!("element does not belong to {}", self.desc),
        }
    }

    fn inv(&self, a: &Elem) -> Elem {
        match (&self.backend, a) {
            (Backend::Cyclic(n), Elem::Residue(x)) => Elem::Residue((n - x) % n),
            (_, Elem::Perm(x)) => Elem::Perm(perm::inverse(x)),
            (Backend::Matrix(m), Elem::Matrix(x)) => Elem::Matrix(m.inv(x)),
            (Backend::Product(gs), Elem::Tuple(x)) => {
                Elem::Tuple(gs.iter().zip(x.iter()).map(|(g, u)| g.inv(u)).collect())
            }
            _ => panic!("element does not belong to {}", self.desc),
        }
    }

    fn pow(&self, a: &Elem, e: i128) -> Elem {
        if let (Backend::Cyclic(n), Elem::Residue(x)) = (&self.backend, a) {
            let n = *n as i128;
            return Elem::Residue(((*x as i128 % n) * (e.rem_euclid(n)) % n) as u64);
        }
        let mut base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> Group {
        Group::parse(s, &Caps::default()).unwrap()
    }

    #[test]
    fn orders_match_enumeration() {
        for (s, n) in [
            ("Sym(4)", 24u128),
            ("Alt(5)", 60),
            ("SL(2,5)", 120),
            ("PSL(2,5)", 60),
            ("SL(2,7)", 336),
            ("SU(3,2)", 216),
            ("Sp(4,2)", 720),
            ("C(12)", 12),
            ("PSL(2,4)xC(3)", 180),
            ("C7:C3", 21),
            ("C3wrC2", 18),
        ] {
            let g = group(s);
            assert_eq!(g.order(), n, "{s}");
            assert_eq!(g.elements().unwrap().len() as u128, n, "{s}");
        }
    }

    #[test]
    fn axioms_examples() {
        let s3 = group("Sym(3)");
        let a = s3.parse_element("(1 2)").unwrap();
        let b = s3.parse_element("(2 3)").unwrap();
        assert_eq!(s3.element_order(&s3.mul(&a, &b)), 3);
        let sl = group("SL(2,5)");
        for g in sl.elements().unwrap().iter() {
            assert_eq!(sl.mul(g, &sl.inv(g)), sl.identity());
        }
        let c = group("C(2)xC(3)");
        let x = c.parse_element("<1 | 2>").unwrap();
        assert_eq!(c.mul(&x, &x), c.parse_element("<0 | 1>").unwrap());
        assert_eq!(c.element_order(&x), 6);
    }

    #[test]
    fn projective_identity_over_extension_fields() {
        // the canonical scalar representative need not be I itself
        let pgl4 = Group::parse("PGL(2,4)", &Caps::default()).unwrap();
        let census = |g: &Group| {
            let mut c = std::collections::BTreeMap::new();
            for e in g.elements().unwrap().iter() {
                *c.entry(g.element_order(e)).or_insert(0) += 1;
            }
            c
        };
        assert_eq!(census(&pgl4), std::collections::BTreeMap::from([(1, 1), (2, 15), (3, 20), (5, 24)]));
        let pgl9 = Group::parse("PGL(2,9)", &Caps::default()).unwrap();
        assert!(pgl9.contains(&pgl9.identity()));
        assert_eq!(census(&pgl9).keys().copied().max(), Some(10));
    }

    #[test]
    fn element_order_examples() {
        let s4 = group("Sym(4)");
        assert_eq!(s4.element_order(&s4.identity()), 1);
        assert_eq!(s4.element_order(&s4.parse_element("(1 3)").unwrap()), 2);
        let sl = group("SL(2,7)");
        let f = sl.matrix_backend().unwrap().field().clone();
        let d = sl.diagonal(&[f.from_int(2), f.from_int(4)]).unwrap();
        assert_eq!(sl.element_order(&d), 3);
        // orders found by iteration agree with the factorisation method
        let g = group("SL(2,13)");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let e = g.random_element(&mut rng).unwrap();
            let o = g.element_order(&e);
            assert!(g.is_identity(&g.pow(&e, o as i128)));
            for (r, _) in factorize(o as u128) {
                assert!(!g.is_identity(&g.pow(&e, (o as u128 / r) as i128)));
            }
        }
    }

    use rand::SeedableRng;

    #[test]
    fn closure_examples() {
        let s3 = group("Sym(3)");
        let gens = [s3.parse_element("(1 2)").unwrap(), s3.parse_element("(1 2 3)").unwrap()];
        assert_eq!(s3.closure(&gens).unwrap().len(), 6);
        assert_eq!(s3.closure(&[s3.identity()]).unwrap(), vec![s3.identity()]);
        assert!(!s3.is_generating_pair(&s3.identity(), &s3.identity()).unwrap());
        let psl = group("PSL(2,7)");
        // elements of orders 2 and 3 whose product has order 7
        let els = psl.elements().unwrap();
        let pair = els
            .iter()
            .filter(|a| psl.element_order(a) == 2)
            .flat_map(|a| els.iter().map(move |b| (a, b)))
            .find(|(a, b)| psl.element_order(b) == 3 && psl.element_order(&psl.mul(a, b)) == 7)
            .unwrap();
        assert!(psl.is_generating_pair(pair.0, pair.1).unwrap());
    }

    #[test]
    fn derived_series() {
        let s4 = group("Sym(4)");
        let els = s4.elements().unwrap();
        assert_eq!(derived_length(&s4, &els, 1000).unwrap(), Some(3));
        let a5 = group("Alt(5)");
        assert_eq!(derived_length(&a5, &a5.elements().unwrap(), 1000).unwrap(), None);
    }

    #[test]
    fn evaluation_examples() {
        let s3 = group("Sym(3)");
        let g = s3.parse_element("(1 2)").unwrap();
        let h = s3.parse_element("(1 2 3)").unwrap();
        assert_eq!(s3.evaluate(&Word::identity(), &g, &h), s3.identity());
        let comm: Word = "x y x^-1 y^-1".parse().unwrap();
        assert_eq!(s3.evaluate(&comm, &g, &g), s3.identity());
        assert_ne!(s3.evaluate(&comm, &g, &h), s3.identity());
        let w = Word::x().pow(6);
        assert!(s3.elements().unwrap().iter().all(|e| s3.is_identity(&s3.evaluate(&w, e, &h))));
    }

    #[test]
    fn element_text_round_trip() {
        for s in ["PSL(2,9)", "SU(2,3)", "Sym(5)", "C(7)xSym(3)", "C7:C3"] {
            let g = group(s);
            for e in g.elements().unwrap().iter().take(200) {
                assert_eq!(&g.parse_element(&g.format_element(e)).unwrap(), e, "{s}");
            }
        }
        let g = group("SL(2,5)");
        assert!(g.parse_element("[[1,1],[0,2]]").is_err());
        assert!(g.parse_element("[[1,1],[0,1]").is_err());
    }
}
