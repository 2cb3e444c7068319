//! Classical matrix groups over GF(q) (or GF(q^2) for unitary kinds) and
//! their projective quotients.
//!
//! Forms: unitary groups preserve the Hermitian form I_n, Sp the antidiagonal
//! J with `J[i][n-1-i] = 1` for `i < n/2` and `-1` otherwise, SOplus and
//! SOcircle the antidiagonal all-ones form. SOminus(2m) preserves the
//! hyperbolic block `[[0, I], [I, 0]]` of size 2m-2 plus `diag(1, g)` where `g`
//! is the least element with `-g` a non-square, so the last plane is
//! anisotropic.
//!
//! Matrices are row-major arrays of packed field indices.

use rand::Rng;

use super::descriptor::MatrixKind;
use crate::error::{check_cap, Error, Result};
use crate::ffield::{FieldElt, FieldSpec};

pub type Mat = Box<[u32]>;

#[derive(Debug, Clone)]
pub struct MatrixGroup {
    kind: MatrixKind,
    n: usize,
    q: u64,
    projective: bool,
    field: FieldSpec,
    /// Frobenius power applied in the form equation; 0 for bilinear forms.
    sigma: u32,
    form: Option<Vec<FieldElt>>,
    scalars: Vec<FieldElt>,
    linear_order: u128,
}

fn order_overflow() -> Error {
    Error::CapExceeded { what: "group order", needed: u128::MAX, limit: u128::MAX }
}

fn cpow(base: u128, e: u32) -> Result<u128> {
    base.checked_pow(e).ok_or_else(order_overflow)
}

fn cmul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or_else(order_overflow)
}

/// Closed-form order of the linear (non-projective) group.
pub fn linear_order(kind: MatrixKind, n: u32, q: u64) -> Result<u128> {
    let q = q as u128;
    let prod = |range: std::ops::RangeInclusive<u32>, f: &dyn Fn(u32) -> Result<u128>| -> Result<u128> {
        range.into_iter().try_fold(1u128, |acc, i| cmul(acc, f(i)?))
    };
    let m = n / 2;
    match kind {
        MatrixKind::GL | MatrixKind::SL => {
            let gl = cmul(cpow(q, n * (n - 1) / 2)?, prod(1..=n, &|i| Ok(cpow(q, i)? - 1))?)?;
            Ok(if kind == MatrixKind::GL { gl } else { gl / (q - 1) })
        }
        MatrixKind::GU | MatrixKind::SU => {
            let gu = cmul(
                cpow(q, n * (n - 1) / 2)?,
                prod(1..=n, &|i| {
                    let qi = cpow(q, i)?;
                    Ok(if i % 2 == 0 { qi - 1 } else { qi + 1 })
                })?,
            )?;
            Ok(if kind == MatrixKind::GU { gu } else { gu / (q + 1) })
        }
        MatrixKind::Sp | MatrixKind::SOcircle => cmul(cpow(q, m * m)?, prod(1..=m, &|i| Ok(cpow(q, 2 * i)? - 1))?),
        MatrixKind::SOplus | MatrixKind::SOminus => {
            let qm = cpow(q, m)?;
            let middle = if kind == MatrixKind::SOplus { qm - 1 } else { qm + 1 };
            let rest = if m > 1 { prod(1..=m - 1, &|i| Ok(cpow(q, 2 * i)? - 1))? } else { 1 };
            cmul(cmul(cpow(q, m * (m - 1))?, middle)?, rest)
        }
    }
}

impl MatrixGroup {
    pub fn new(kind: MatrixKind, n: u32, q: u64, projective: bool, field_cap: u64) -> Result<MatrixGroup> {
        let field_order = if kind.is_unitary() {
            q.checked_mul(q).ok_or_else(|| Error::invalid("field order overflow"))?
        } else {
            q
        };
        check_cap("field order", field_order as u128, field_cap as u128)?;
        let field = FieldSpec::of_order(field_order, field_cap)?;
        if kind.is_orthogonal() && field.p() == 2 {
            return Err(Error::unsupported("orthogonal groups are implemented for odd q only"));
        }
        let n_us = n as usize;
        let sigma = if kind.is_unitary() { field.k() / 2 } else { 0 };
        let form = Self::standard_form(kind, n_us, &field);
        let linear_order = linear_order(kind, n, q)?;
        let mut g =
            MatrixGroup { kind, n: n_us, q, projective: false, field, sigma, form, scalars: Vec::new(), linear_order };
        let scalars: Vec<FieldElt> = g.field.units().filter(|&l| g.contains_linear(&g.scalar(l))).collect();
        g.scalars = scalars;
        g.projective = projective;
        Ok(g)
    }

    fn standard_form(kind: MatrixKind, n: usize, f: &FieldSpec) -> Option<Vec<FieldElt>> {
        let mut b = vec![FieldElt::ZERO; n * n];
        match kind {
            MatrixKind::GL | MatrixKind::SL => return None,
            MatrixKind::GU | MatrixKind::SU => {
                for i in 0..n {
                    b[i * n + i] = FieldElt::ONE;
                }
            }
            MatrixKind::Sp => {
                for i in 0..n {
                    b[i * n + (n - 1 - i)] = if i < n / 2 { FieldElt::ONE } else { f.neg(FieldElt::ONE) };
                }
            }
            MatrixKind::SOplus | MatrixKind::SOcircle => {
                for i in 0..n {
                    b[i * n + (n - 1 - i)] = FieldElt::ONE;
                }
            }
            MatrixKind::SOminus => {
                let h = (n - 2) / 2;
                for i in 0..h {
                    b[i * n + (h + i)] = FieldElt::ONE;
                    b[(h + i) * n + i] = FieldElt::ONE;
                }
                b[(n - 2) * n + (n - 2)] = FieldElt::ONE;
                b[(n - 1) * n + (n - 1)] = anisotropic_coefficient(f);
            }
        }
        Some(b)
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn form(&self) -> Option<&[FieldElt]> {
        self.form.as_deref()
    }

    pub fn frobenius_power(&self) -> u32 {
        self.sigma
    }

    /// Scalars `l` with `l*I` in the linear group.
    pub fn center_scalars(&self) -> &[FieldElt] {
        &self.scalars
    }

    pub fn linear_order(&self) -> u128 {
        self.linear_order
    }

    pub fn order(&self) -> u128 {
        if self.projective {
            self.linear_order / self.scalars.len() as u128
        } else {
            self.linear_order
        }
    }

    fn at(m: &[u32], n: usize, i: usize, j: usize) -> FieldElt {
        FieldElt::from_packed(m[i * n + j])
    }

    pub fn scalar(&self, l: FieldElt) -> Mat {
        let n = self.n;
        let mut m = vec![0u32; n * n];
        for i in 0..n {
            m[i * n + i] = l.index();
        }
        m.into_boxed_slice()
    }

    /// The identity, as its canonical representative when projective.
    pub fn identity(&self) -> Mat {
        let one = self.scalar(FieldElt::ONE);
        if self.projective {
            self.canonicalize(&one)
        } else {
            one
        }
    }

    pub fn mul_raw(&self, a: &[u32], b: &[u32]) -> Mat {
        let n = self.n;
        let f = &self.field;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = FieldElt::ZERO;
                for t in 0..n {
                    acc = f.add(acc, f.mul(Self::at(a, n, i, t), Self::at(b, n, t, j)));
                }
                out[i * n + j] = acc.index();
            }
        }
        out.into_boxed_slice()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Mat {
        let m = self.mul_raw(a, b);
        if self.projective {
            self.canonicalize(&m)
        } else {
            m
        }
    }

    /// Gauss-Jordan inverse; `None` for singular input.
    pub fn inv_raw(&self, a: &[u32]) -> Option<Mat> {
        let n = self.n;
        let f = &self.field;
        let mut m: Vec<FieldElt> = a.iter().map(|&v| FieldElt::from_packed(v)).collect();
        let mut inv: Vec<FieldElt> = self.scalar(FieldElt::ONE).iter().map(|&v| FieldElt::from_packed(v)).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r * n + col].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let s = f.inv(m[col * n + col]).ok()?;
            for j in 0..n {
                m[col * n + j] = f.mul(m[col * n + j], s);
                inv[col * n + j] = f.mul(inv[col * n + j], s);
            }
            for r in 0..n {
                if r == col || m[r * n + col].is_zero() {
                    continue;
                }
                let factor = m[r * n + col];
                for j in 0..n {
                    m[r * n + j] = f.sub(m[r * n + j], f.mul(factor, m[col * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[col * n + j]));
                }
            }
        }
        Some(inv.iter().map(|e| e.index()).collect())
    }

    pub fn inv(&self, a: &[u32]) -> Mat {
        let m = self.inv_raw(a).expect("group elements are invertible");
        if self.projective {
            self.canonicalize(&m)
        } else {
            m
        }
    }

    pub fn det(&self, a: &[u32]) -> FieldElt {
        let n = self.n;
        let f = &self.field;
        let mut m: Vec<FieldElt> = a.iter().map(|&v| FieldElt::from_packed(v)).collect();
        let mut det = FieldElt::ONE;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r * n + col].is_zero()) else {
                return FieldElt::ZERO;
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let p = m[col * n + col];
            det = f.mul(det, p);
            let pinv = f.inv(p).expect("non-zero pivot");
            for r in col + 1..n {
                if m[r * n + col].is_zero() {
                    continue;
                }
                let factor = f.mul(m[r * n + col], pinv);
                for j in col..n {
                    m[r * n + j] = f.sub(m[r * n + j], f.mul(factor, m[col * n + j]));
                }
            }
        }
        det
    }

    /// `sigma(u)^T B v` for the group's form.
    fn form_value(&self, b: &[FieldElt], u: &[FieldElt], v: &[FieldElt]) -> FieldElt {
        let f = &self.field;
        let n = self.n;
        let mut acc = FieldElt::ZERO;
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            let ui = f.frobenius(u[i], self.sigma);
            let mut row = FieldElt::ZERO;
            for j in 0..n {
                row = f.add(row, f.mul(b[i * n + j], v[j]));
            }
            acc = f.add(acc, f.mul(ui, row));
        }
        acc
    }

    fn column(m: &[u32], n: usize, j: usize) -> Vec<FieldElt> {
        (0..n).map(|i| Self::at(m, n, i, j)).collect()
    }

    /// Defining equations of the linear group.
    pub fn contains_linear(&self, m: &[u32]) -> bool {
        let n = self.n;
        if m.len() != n * n || m.iter().any(|&v| v >= self.field.order()) {
            return false;
        }
        let det = self.det(m);
        if det.is_zero() || (self.kind.is_special() && det != FieldElt::ONE) {
            return false;
        }
        if let Some(b) = &self.form {
            let cols: Vec<Vec<FieldElt>> = (0..n).map(|j| Self::column(m, n, j)).collect();
            for i in 0..n {
                for j in 0..n {
                    if self.form_value(b, &cols[i], &cols[j]) != b[i * n + j] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn contains(&self, m: &[u32]) -> bool {
        self.contains_linear(m) && (!self.projective || self.canonicalize(m)[..] == m[..])
    }

    /// Representative of `m` modulo central scalars: the first non-zero entry
    /// is made lex-least within its scalar orbit.
    pub fn canonicalize(&self, m: &[u32]) -> Mat {
        let f = &self.field;
        let Some(&lead) = m.iter().find(|&&v| v != 0) else {
            return m.into();
        };
        let lead = FieldElt::from_packed(lead);
        let best = self.scalars.iter().copied().min_by_key(|&l| f.lex_key(f.mul(l, lead))).unwrap_or(FieldElt::ONE);
        m.iter().map(|&v| f.mul(best, FieldElt::from_packed(v)).index()).collect()
    }

    fn all_vectors(&self) -> Vec<Vec<FieldElt>> {
        let q = self.field.order();
        let n = self.n;
        let total = (q as usize).pow(n as u32);
        (0..total)
            .map(|mut idx| {
                (0..n)
                    .map(|_| {
                        let e = FieldElt::from_packed((idx % q as usize) as u32);
                        idx /= q as usize;
                        e
                    })
                    .collect()
            })
            .collect()
    }

    /// Visits every element (canonical representatives when projective).
    pub fn for_each(&self, enumeration_cap: u64, visit: &mut dyn FnMut(Mat)) -> Result<()> {
        check_cap("enumeration", self.order(), enumeration_cap as u128)?;
        let vectors = self.all_vectors();
        let mut emit = |m: Mat| {
            if self.kind.is_special() && self.det(&m) != FieldElt::ONE {
                return;
            }
            if self.projective && self.canonicalize(&m)[..] != m[..] {
                return;
            }
            visit(m);
        };
        match &self.form {
            None => self.rows_gl(&vectors, &mut Vec::new(), &mut emit),
            Some(b) => self.columns_form(b, &vectors, &mut Vec::new(), &mut emit),
        }
        Ok(())
    }

    fn rows_gl(&self, vectors: &[Vec<FieldElt>], rows: &mut Vec<Vec<FieldElt>>, emit: &mut dyn FnMut(Mat)) {
        let n = self.n;
        if rows.len() == n {
            emit(rows.iter().flatten().map(|e| e.index()).collect());
            return;
        }
        let basis = echelon(&self.field, rows);
        for v in vectors {
            if reduces_to_zero(&self.field, &basis, v) {
                continue;
            }
            rows.push(v.clone());
            self.rows_gl(vectors, rows, emit);
            rows.pop();
        }
    }

    fn columns_form(
        &self,
        b: &[FieldElt],
        vectors: &[Vec<FieldElt>],
        cols: &mut Vec<Vec<FieldElt>>,
        emit: &mut dyn FnMut(Mat),
    ) {
        let n = self.n;
        let j = cols.len();
        if j == n {
            let mut m = vec![0u32; n * n];
            for (c, col) in cols.iter().enumerate() {
                for (r, e) in col.iter().enumerate() {
                    m[r * n + c] = e.index();
                }
            }
            emit(m.into_boxed_slice());
            return;
        }
        for v in vectors {
            let ok = cols.iter().enumerate().all(|(i, ci)| self.form_value(b, ci, v) == b[i * n + j])
                && self.form_value(b, v, v) == b[j * n + j];
            if ok {
                cols.push(v.clone());
                self.columns_form(b, vectors, cols, emit);
                cols.pop();
            }
        }
    }

    /// Direct uniform sampling, available for GL and SL.
    pub fn random_direct<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Mat> {
        if !matches!(self.kind, MatrixKind::GL | MatrixKind::SL) {
            return None;
        }
        let n = self.n;
        let q = self.field.order();
        loop {
            let mut m: Vec<u32> = (0..n * n).map(|_| rng.random_range(0..q)).collect();
            let d = self.det(&m);
            if d.is_zero() {
                continue;
            }
            if self.kind == MatrixKind::SL {
                let s = self.field.inv(d).expect("non-zero");
                for v in m.iter_mut().take(n) {
                    *v = self.field.mul(s, FieldElt::from_packed(*v)).index();
                }
            }
            let m = m.into_boxed_slice();
            return Some(if self.projective { self.canonicalize(&m) } else { m });
        }
    }

    pub fn format(&self, m: &[u32]) -> String {
        let n = self.n;
        let rows: Vec<String> = (0..n)
            .map(|i| {
                let entries: Vec<String> = (0..n)
                    .map(|j| {
                        let e = Self::at(m, n, i, j);
                        if self.field.k() == 1 {
                            e.index().to_string()
                        } else {
                            self.field.fmt_elt(e)
                        }
                    })
                    .collect();
                format!("[{}]", entries.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Least `g` (coefficient-lex) such that `-g` is a non-square, making
/// `x^2 + g y^2` anisotropic.
pub fn anisotropic_coefficient(f: &FieldSpec) -> FieldElt {
    let mut units: Vec<FieldElt> = f.units().collect();
    units.sort_by_key(|&a| f.lex_key(a));
    units.into_iter().find(|&g| !f.is_square(f.neg(g))).expect("odd-order fields have non-squares")
}

fn echelon(f: &FieldSpec, rows: &[Vec<FieldElt>]) -> Vec<(usize, Vec<FieldElt>)> {
    let mut basis: Vec<(usize, Vec<FieldElt>)> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        reduce(f, &basis, &mut v);
        if let Some(p) = v.iter().position(|e| !e.is_zero()) {
            let s = f.inv(v[p]).expect("non-zero");
            for e in v.iter_mut() {
                *e = f.mul(*e, s);
            }
            basis.push((p, v));
        }
    }
    basis
}

fn reduce(f: &FieldSpec, basis: &[(usize, Vec<FieldElt>)], v: &mut [FieldElt]) {
    for (p, b) in basis {
        let c = v[*p];
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(b) {
            *x = f.sub(*x, f.mul(c, *y));
        }
    }
}

fn reduces_to_zero(f: &FieldSpec, basis: &[(usize, Vec<FieldElt>)], v: &[FieldElt]) -> bool {
    let mut w = v.to_vec();
    reduce(f, basis, &mut w);
    w.iter().all(|e| e.is_zero())
}
