//! Finite fields GF(p^n) in the power basis of a primitive polynomial root.
//!
//! Elements are packed as base-`p` integers: the coefficient of `x^j` is the
//! `j`-th base-`p` digit. Fields with at most [`TABLE_CAP`] elements carry
//! log/antilog tables and a per-element absolute-trace table, which is what the
//! spectrum code runs on. Larger fields (up to the size cap) fall back to
//! polynomial arithmetic.

mod conway;
mod linalg;
pub(crate) mod subfield;
pub(crate) mod poly;
mod tower;

use std::sync::atomic::{AtomicU32, Ordering};

pub use conway::default_polynomial;
pub use tower::{tower_coords, Tower, TowerCoords};

use crate::error::{Error, Result};

/// Largest field for which log/antilog tables are built.
pub const TABLE_CAP: u64 = 1 << 26;
/// Default hard limit on field size.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 40;

static NEXT_ID: AtomicU32 = AtomicU32::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldCaps {
    pub table_cap: u64,
    pub size_cap: u64,
}

impl Default for FieldCaps {
    fn default() -> Self {
        FieldCaps {
            table_cap: TABLE_CAP,
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

/// One element of a [`FieldContext`]; only valid with the context that made it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    ctx: u32,
    idx: u64,
}

impl FieldElement {
    /// Packed base-`p` coefficient index.
    pub fn index(self) -> u64 {
        self.idx
    }

    pub fn is_zero(self) -> bool {
        self.idx == 0
    }
}

struct LogTables {
    exp: Vec<u32>,
    /// `log[0]` is unused.
    log: Vec<u32>,
}

/// An immutable finite field GF(p^n).
pub struct FieldContext {
    id: u32,
    p: u32,
    n: u32,
    order: u64,
    poly: Vec<u32>,
    generator: u64,
    basis_traces: Vec<u32>,
    tables: Option<LogTables>,
    traces: Option<Vec<u8>>,
}

impl std::fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldContext")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("poly", &self.poly)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

/// Builds GF(p^n) with default caps. See [`build_field_with`].
pub fn build_field(p: u32, n: u32, poly: Option<&[u32]>) -> Result<FieldContext> {
    build_field_with(p, n, poly, FieldCaps::default())
}

/// Builds GF(p^n) from a monic polynomial (constant term first), or from the
/// shipped Conway table when `poly` is `None`. The polynomial is always
/// re-validated: irreducibility first, then primitivity of its root.
pub fn build_field_with(
    p: u32,
    n: u32,
    poly: Option<&[u32]>,
    caps: FieldCaps,
) -> Result<FieldContext> {
    if !poly::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let order = (p as u64)
        .checked_pow(n)
        .filter(|&q| q <= caps.size_cap)
        .ok_or(Error::FieldTooLarge { p, n, cap: caps.size_cap })?;
    let poly = match poly {
        Some(c) => c.to_vec(),
        None => default_polynomial(p, n)
            .ok_or(Error::NoDefaultPolynomial { p, n })?
            .to_vec(),
    };
    if poly.len() != n as usize + 1 {
        return Err(Error::InvalidPolynomial(format!(
            "expected {} coefficients for degree {n}, got {}",
            n + 1,
            poly.len()
        )));
    }
    if poly[n as usize] != 1 {
        return Err(Error::InvalidPolynomial("not monic".into()));
    }
    if let Some(&c) = poly.iter().find(|&&c| c >= p) {
        return Err(Error::InvalidPolynomial(format!("coefficient {c} not in [0, {p})")));
    }
    if !poly::is_irreducible(&poly, p) {
        return Err(Error::Reducible { p });
    }

    let generator = if n == 1 { ((p - poly[0]) % p) as u64 } else { p as u64 };
    let mut ctx = FieldContext {
        id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
        p,
        n,
        order,
        poly,
        generator,
        basis_traces: Vec::new(),
        tables: None,
        traces: None,
    };

    if order <= caps.table_cap {
        ctx.tables = Some(ctx.build_tables()?);
    } else if !poly::root_is_primitive(&ctx.poly, p, order) {
        // exact order is not worth computing at this size
        return Err(Error::NotPrimitive { order: 0, expected: order - 1 });
    }

    ctx.basis_traces = (0..n)
        .map(|j| {
            let b = ctx.pow_idx(generator, j as u64);
            ctx.trace_by_definition(b, 1) as u32
        })
        .collect();
    if ctx.tables.is_some() {
        ctx.traces = Some(ctx.build_trace_table());
    }
    Ok(ctx)
}

impl FieldContext {
    fn build_tables(&self) -> Result<LogTables> {
        let q1 = self.order - 1;
        let mut exp = Vec::with_capacity(q1 as usize);
        let mut cur = 1u64;
        for k in 0..q1 {
            if k > 0 && cur == 1 {
                return Err(Error::NotPrimitive { order: k, expected: q1 });
            }
            if cur == 0 {
                return Err(Error::NotPrimitive { order: 0, expected: q1 });
            }
            exp.push(cur as u32);
            cur = self.mul_by_root(cur);
        }
        if cur != 1 {
            return Err(Error::Internal("root sequence did not close".into()));
        }
        let mut log = vec![u32::MAX; self.order as usize];
        for (k, &e) in exp.iter().enumerate() {
            log[e as usize] = k as u32;
        }
        Ok(LogTables { exp, log })
    }

    fn build_trace_table(&self) -> Vec<u8> {
        let p = self.p as u64;
        let mut t = vec![0u8; self.order as usize];
        for idx in 1..self.order {
            // lowest nonzero digit position
            let (mut j, mut rest) = (0usize, idx);
            while rest % p == 0 {
                rest /= p;
                j += 1;
            }
            let prev = idx - p.pow(j as u32);
            t[idx as usize] = ((t[prev as usize] as u32 + self.basis_traces[j]) % self.p) as u8;
        }
        t
    }

    fn mul_by_root(&self, a: u64) -> u64 {
        let p = self.p as u64;
        if self.n == 1 {
            return a * self.generator % p;
        }
        let n = self.n as usize;
        let mut d = self.digits(a);
        let top = d[n - 1] as u64;
        d.rotate_right(1);
        d[0] = 0;
        if top != 0 {
            for i in 0..n {
                let sub = top * self.poly[i] as u64 % p;
                d[i] = ((d[i] as u64 + p - sub) % p) as u32;
            }
        }
        self.pack(&d)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of elements, `p^n`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Defining polynomial, constant term first.
    pub fn poly(&self) -> &[u32] {
        &self.poly
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The root of the defining polynomial, which is primitive.
    pub fn generator(&self) -> FieldElement {
        self.wrap(self.generator)
    }

    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.order {
            return Err(Error::ElementRange { index, order: self.order });
        }
        Ok(self.wrap(index))
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParams(format!(
                "coefficient vector {coeffs:?} is not over GF({})^{}",
                self.p, self.n
            )));
        }
        Ok(self.wrap(self.pack(coeffs)))
    }

    pub fn coeffs(&self, x: FieldElement) -> Result<Vec<u32>> {
        Ok(self.digits(self.own(x)?))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|i| self.wrap(i))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.add_idx(self.own(a)?, self.own(b)?)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.sub_idx(self.own(a)?, self.own(b)?)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.neg_idx(self.own(a)?)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.mul_idx(self.own(a)?, self.own(b)?)))
    }

    /// Multiplication by polynomial reduction, bypassing the tables.
    pub fn mul_by_poly(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.mul_poly_idx(self.own(a)?, self.own(b)?)))
    }

    /// Multiplication through the log tables.
    pub fn mul_by_tables(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (a, b) = (self.own(a)?, self.own(b)?);
        let t = self.tables.as_ref().ok_or(Error::TablesAbsent(self.order))?;
        if a == 0 || b == 0 {
            return Ok(self.zero());
        }
        let k = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % (self.order - 1);
        Ok(self.wrap(t.exp[k as usize] as u64))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let a = self.own(a)?;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.wrap(self.pow_idx(a, self.order - 2)))
    }

    /// `a^e` for any integer `e`; negative exponents need `a != 0`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        let a = self.own(a)?;
        if a == 0 {
            return match e {
                0 => Ok(self.one()),
                e if e > 0 => Ok(self.zero()),
                _ => Err(Error::ZeroInverse),
            };
        }
        let e = e.rem_euclid((self.order - 1) as i64) as u64;
        Ok(self.wrap(self.pow_idx(a, e)))
    }

    /// `Tr_r^n(x) = x + x^{p^r} + ... + x^{p^{n-r}}`, an element of GF(p^r).
    pub fn trace(&self, x: FieldElement, r: u32) -> Result<FieldElement> {
        let x = self.own(x)?;
        if r == 0 || self.n % r != 0 {
            return Err(Error::NotDivisor { r, n: self.n });
        }
        Ok(self.wrap(self.trace_by_definition(x, r)))
    }

    /// Trace from the subfield GF(p^m) down to GF(p^r) for `x` in GF(p^m).
    pub fn subfield_trace(&self, x: FieldElement, m: u32, r: u32) -> Result<FieldElement> {
        let x = self.own(x)?;
        if m == 0 || self.n % m != 0 {
            return Err(Error::NotDivisor { r: m, n: self.n });
        }
        if r == 0 || m % r != 0 {
            return Err(Error::NotDivisor { r, n: m });
        }
        if !self.in_subfield_idx(x, m) {
            return Err(Error::InvalidParams(format!("element is not in GF({}^{m})", self.p)));
        }
        Ok(self.wrap(self.relative_trace_idx(x, m, r)))
    }

    /// Absolute trace `Tr_1^n(x)` as a residue in `[0, p)`.
    pub fn absolute_trace(&self, x: FieldElement) -> Result<u32> {
        Ok(self.abs_trace_idx(self.own(x)?))
    }

    pub fn is_in_subfield(&self, x: FieldElement, r: u32) -> Result<bool> {
        let x = self.own(x)?;
        if r == 0 || self.n % r != 0 {
            return Err(Error::NotDivisor { r, n: self.n });
        }
        Ok(self.in_subfield_idx(x, r))
    }

    /// Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
    pub fn quadratic_character(&self, x: FieldElement) -> Result<i8> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(self.eta_idx(self.own(x)?))
    }

    pub fn discrete_log(&self, x: FieldElement) -> Result<u64> {
        let x = self.own(x)?;
        if x == 0 {
            return Err(Error::LogOfZero);
        }
        let t = self.tables.as_ref().ok_or(Error::TablesAbsent(self.order))?;
        Ok(t.log[x as usize] as u64)
    }

    pub fn power_basis(&self) -> Vec<FieldElement> {
        (0..self.n).map(|j| self.wrap((self.p as u64).pow(j))).collect()
    }

    /// Basis `d_i` with `Tr(d_i x^j) = [i == j]` against the power basis.
    pub fn dual_basis(&self) -> Vec<FieldElement> {
        self.dual_basis_idx().into_iter().map(|i| self.wrap(i)).collect()
    }

    pub(crate) fn dual_basis_idx(&self) -> Vec<u64> {
        let n = self.n as usize;
        let p = self.p as u64;
        let gram: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.abs_trace_idx(self.mul_idx(p.pow(i as u32), p.pow(j as u32))))
                    .collect()
            })
            .collect();
        let inv = linalg::invert(gram, self.p).expect("trace form is nondegenerate");
        inv.iter().map(|row| self.pack(row)).collect()
    }

    // ---- raw index arithmetic, no context checks ----

    fn wrap(&self, idx: u64) -> FieldElement {
        FieldElement { ctx: self.id, idx }
    }

    pub(crate) fn own(&self, x: FieldElement) -> Result<u64> {
        if x.ctx != self.id {
            return Err(Error::MixedContext);
        }
        Ok(x.idx)
    }

    pub(crate) fn elem_unchecked(&self, idx: u64) -> FieldElement {
        debug_assert!(idx < self.order);
        self.wrap(idx)
    }

    pub(crate) fn digits(&self, mut a: u64) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.n)
            .map(|_| {
                let d = (a % p) as u32;
                a /= p;
                d
            })
            .collect()
    }

    pub(crate) fn pack(&self, d: &[u32]) -> u64 {
        d.iter().rev().fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub(crate) fn add_idx(&self, mut a: u64, mut b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p as u64;
        let (mut out, mut scale) = (0u64, 1u64);
        while a | b != 0 {
            out += (a % p + b % p) % p * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    }

    pub(crate) fn neg_idx(&self, mut a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let p = self.p as u64;
        let (mut out, mut scale) = (0u64, 1u64);
        while a != 0 {
            out += (p - a % p) % p * scale;
            a /= p;
            scale *= p;
        }
        out
    }

    pub(crate) fn sub_idx(&self, a: u64, b: u64) -> u64 {
        self.add_idx(a, self.neg_idx(b))
    }

    pub(crate) fn mul_idx(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    return 0;
                }
                let k = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % (self.order - 1);
                t.exp[k as usize] as u64
            }
            None => self.mul_poly_idx(a, b),
        }
    }

    pub(crate) fn mul_poly_idx(&self, a: u64, b: u64) -> u64 {
        let prod = poly::mul(&self.digits(a), &self.digits(b), self.p);
        let r = poly::rem(&prod, &self.poly, self.p);
        self.pack(&r)
    }

    pub(crate) fn pow_idx(&self, a: u64, e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let q1 = (self.order - 1) as u128;
            let k = (t.log[a as usize] as u128 * (e as u128 % q1)) % q1;
            return t.exp[k as usize] as u64;
        }
        let (mut r, mut b, mut e) = (1u64, a, e);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_poly_idx(r, b);
            }
            b = self.mul_poly_idx(b, b);
            e >>= 1;
        }
        r
    }

    /// `x^{p^k}`.
    pub(crate) fn frobenius_idx(&self, x: u64, k: u32) -> u64 {
        let mut y = x;
        for _ in 0..k {
            y = self.pow_idx(y, self.p as u64);
        }
        y
    }

    fn trace_by_definition(&self, x: u64, r: u32) -> u64 {
        self.relative_trace_idx(x, self.n, r)
    }

    pub(crate) fn relative_trace_idx(&self, x: u64, m: u32, r: u32) -> u64 {
        let mut acc = 0u64;
        let mut y = x;
        for _ in 0..m / r {
            acc = self.add_idx(acc, y);
            y = self.frobenius_idx(y, r);
        }
        acc
    }

    pub(crate) fn in_subfield_idx(&self, x: u64, r: u32) -> bool {
        self.frobenius_idx(x, r) == x
    }

    pub(crate) fn abs_trace_idx(&self, x: u64) -> u32 {
        if let Some(t) = &self.traces {
            return t[x as usize] as u32;
        }
        let p = self.p as u64;
        self.digits(x)
            .iter()
            .zip(&self.basis_traces)
            .fold(0u64, |acc, (&d, &t)| (acc + d as u64 * t as u64) % p) as u32
    }

    pub(crate) fn eta_idx(&self, x: u64) -> i8 {
        if x == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                if t.log[x as usize] % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            None => {
                if self.pow_idx(x, (self.order - 1) / 2) == 1 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Antilog table, `exp[k] = g^k`. Only present with tables.
    pub(crate) fn exp_table(&self) -> Option<&[u32]> {
        self.tables.as_ref().map(|t| t.exp.as_slice())
    }

    pub(crate) fn log_table(&self) -> Option<&[u32]> {
        self.tables.as_ref().map(|t| t.log.as_slice())
    }

    pub(crate) fn trace_table(&self) -> Option<&[u8]> {
        self.traces.as_deref()
    }
}

/// Formats a coefficient list the way the CLI accepts it: `"2,1,1"`.
pub fn format_poly(poly: &[u32]) -> String {
    poly.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_poly(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidPolynomial(format!("bad coefficient {t:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, n: u32) -> FieldContext {
        build_field(p, n, None).unwrap()
    }

    #[test]
    fn gf9_from_given_polynomial() {
        let ctx = build_field(3, 2, Some(&[2, 1, 1])).unwrap();
        let g = ctx.generator();
        // exhaustive order check
        let order = (1..=8).find(|&k| ctx.pow(g, k).unwrap() == ctx.one()).unwrap();
        assert_eq!(order, 8);
    }

    #[test]
    fn prime_field_generator() {
        let ctx = gf(3, 1);
        assert_eq!(ctx.generator().index(), 2);
    }

    #[test]
    fn non_primitive_polynomial_reports_order() {
        let err = build_field(3, 2, Some(&[1, 0, 1])).unwrap_err();
        assert_eq!(err, Error::NotPrimitive { order: 4, expected: 8 });
        assert!(err.to_string().contains("order 4"));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(build_field(4, 2, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(build_field(2, 2, Some(&[1, 0, 1])).unwrap_err(), Error::Reducible { p: 2 });
        assert!(matches!(build_field(3, 2, Some(&[1, 1])), Err(Error::InvalidPolynomial(_))));
        assert!(matches!(build_field(3, 2, Some(&[1, 1, 2])), Err(Error::InvalidPolynomial(_))));
        assert!(matches!(build_field(3, 2, Some(&[1, 5, 1])), Err(Error::InvalidPolynomial(_))));
        assert!(matches!(build_field(2, 50, None), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(build_field(11, 2, None), Err(Error::NoDefaultPolynomial { .. })));
        let caps = FieldCaps { table_cap: TABLE_CAP, size_cap: 100 };
        assert!(matches!(build_field_with(3, 5, None, caps), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn large_field_without_tables() {
        let caps = FieldCaps { table_cap: 1 << 10, size_cap: DEFAULT_SIZE_CAP };
        let ctx = build_field_with(2, 12, None, caps).unwrap();
        assert!(!ctx.has_tables());
        let g = ctx.generator();
        assert_eq!(ctx.pow(g, 4095).unwrap(), ctx.one());
        assert_ne!(ctx.pow(g, 4095 / 3).unwrap(), ctx.one());
        assert!(matches!(ctx.discrete_log(g), Err(Error::TablesAbsent(4096))));
        // x^6 + x^3 + 1 is irreducible but its roots have order 9
        let bad = build_field_with(2, 6, Some(&[1, 0, 0, 1, 0, 0, 1]), FieldCaps { table_cap: 1, size_cap: DEFAULT_SIZE_CAP });
        assert!(matches!(bad, Err(Error::NotPrimitive { .. })));
    }

    #[test]
    fn small_arithmetic() {
        let ctx = gf(3, 1);
        let (one, two) = (ctx.element(1).unwrap(), ctx.element(2).unwrap());
        assert_eq!(ctx.add(one, two).unwrap(), ctx.zero());
        let ctx9 = gf(3, 2);
        let g = ctx9.generator();
        assert_eq!(ctx9.pow(g, 8).unwrap(), ctx9.one());
        assert_eq!(ctx9.pow(g, -1).unwrap(), ctx9.inv(g).unwrap());
        assert_eq!(ctx9.inv(ctx9.zero()).unwrap_err(), Error::ZeroInverse);
        assert_eq!(ctx9.pow(ctx9.zero(), -2).unwrap_err(), Error::ZeroInverse);
        assert_eq!(ctx9.pow(ctx9.zero(), 0).unwrap(), ctx9.one());
        assert_eq!(ctx9.add(g, ctx.one()).unwrap_err(), Error::MixedContext);
    }

    #[test]
    fn mul_paths_agree_exhaustively() {
        for (p, n) in [(2, 6), (3, 4), (5, 3), (7, 2), (3, 6)] {
            let ctx = gf(p, n);
            if ctx.order() > 729 {
                continue;
            }
            for a in ctx.elements() {
                for b in ctx.elements() {
                    assert_eq!(ctx.mul_by_poly(a, b).unwrap(), ctx.mul_by_tables(a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn mul_paths_agree_on_random_pairs_gf3_6() {
        use rand::{Rng, SeedableRng};
        let ctx = gf(3, 6);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = ctx.element(rng.gen_range(0..729)).unwrap();
            let b = ctx.element(rng.gen_range(0..729)).unwrap();
            assert_eq!(ctx.mul_by_poly(a, b).unwrap(), ctx.mul_by_tables(a, b).unwrap());
        }
    }

    #[test]
    fn traces() {
        let ctx9 = gf(3, 2);
        assert_eq!(ctx9.trace(ctx9.one(), 1).unwrap().index(), 2);
        assert_eq!(ctx9.trace(ctx9.zero(), 1).unwrap(), ctx9.zero());
        assert!(matches!(ctx9.trace(ctx9.one(), 3), Err(Error::NotDivisor { .. })));

        let ctx = gf(3, 6);
        for x in ctx.elements() {
            // table trace equals the definition
            let def = ctx.trace(x, 1).unwrap().index() as u32;
            assert_eq!(ctx.absolute_trace(x).unwrap(), def);
            // transitivity through GF(3^2) and GF(3^3)
            for r in [2, 3] {
                let inner = ctx.trace(x, r).unwrap();
                assert!(ctx.is_in_subfield(inner, r).unwrap());
                let outer = ctx.subfield_trace(inner, r, 1).unwrap();
                assert_eq!(outer.index() as u32, def);
            }
        }
    }

    #[test]
    fn quadratic_character_values() {
        let ctx3 = gf(3, 1);
        let ctx9 = gf(3, 2);
        assert_eq!(ctx3.quadratic_character(ctx3.zero()).unwrap(), 0);
        assert_eq!(ctx3.quadratic_character(ctx3.one()).unwrap(), 1);
        assert_eq!(ctx3.quadratic_character(ctx3.element(2).unwrap()).unwrap(), -1);
        assert_eq!(ctx9.quadratic_character(ctx9.element(2).unwrap()).unwrap(), 1);
        let ctx2 = gf(2, 3);
        assert_eq!(ctx2.quadratic_character(ctx2.one()).unwrap_err(), Error::EvenCharacteristic);
    }

    #[test]
    fn quadratic_character_counts_and_multiplicativity() {
        for (p, n) in [(3, 3), (5, 2), (7, 2)] {
            let ctx = gf(p, n);
            let squares = ctx
                .elements()
                .filter(|&x| ctx.quadratic_character(x).unwrap() == 1)
                .count() as u64;
            assert_eq!(squares, (ctx.order() - 1) / 2);
            for x in ctx.elements().skip(1) {
                for y in ctx.elements().skip(1) {
                    let xy = ctx.mul(x, y).unwrap();
                    assert_eq!(
                        ctx.quadratic_character(xy).unwrap(),
                        ctx.quadratic_character(x).unwrap() * ctx.quadratic_character(y).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn euler_criterion_matches_log_parity() {
        let ctx = gf(5, 3);
        for x in ctx.elements() {
            let e = ctx.pow(x, ((ctx.order() - 1) / 2) as i64).unwrap();
            let expected = if x.is_zero() { 0 } else if e == ctx.one() { 1 } else { -1 };
            assert_eq!(ctx.quadratic_character(x).unwrap(), expected);
        }
    }

    #[test]
    fn discrete_logs() {
        let ctx = gf(3, 4);
        assert_eq!(ctx.discrete_log(ctx.one()).unwrap(), 0);
        assert_eq!(ctx.discrete_log(ctx.generator()).unwrap(), 1);
        assert_eq!(ctx.discrete_log(ctx.zero()).unwrap_err(), Error::LogOfZero);
        for x in ctx.elements().skip(1) {
            let k = ctx.discrete_log(x).unwrap();
            assert_eq!(ctx.pow(ctx.generator(), k as i64).unwrap(), x);
        }
    }

    #[test]
    fn dual_basis_is_dual() {
        let prime = gf(5, 1);
        assert_eq!(prime.dual_basis(), vec![prime.one()]);

        let ctx = gf(3, 6);
        let dual = ctx.dual_basis();
        for (i, &d) in dual.iter().enumerate() {
            for (j, &b) in ctx.power_basis().iter().enumerate() {
                let t = ctx.absolute_trace(ctx.mul(d, b).unwrap()).unwrap();
                assert_eq!(t, u32::from(i == j));
            }
        }
    }

    #[test]
    fn trace_pairing_is_coordinate_dot_product() {
        use rand::{Rng, SeedableRng};
        let ctx = gf(3, 6);
        let dual = ctx.dual_basis();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let x = ctx.element(rng.gen_range(0..729)).unwrap();
            let zhat: Vec<u32> = (0..6).map(|_| rng.gen_range(0..3)).collect();
            let mut z = ctx.zero();
            for (c, &d) in zhat.iter().zip(&dual) {
                let term = ctx.mul(ctx.element(*c as u64).unwrap(), d).unwrap();
                z = ctx.add(z, term).unwrap();
            }
            let xhat = ctx.coeffs(x).unwrap();
            let dot: u32 = zhat.iter().zip(&xhat).map(|(a, b)| a * b).sum::<u32>() % 3;
            assert_eq!(ctx.absolute_trace(ctx.mul(z, x).unwrap()).unwrap(), dot);
        }
    }

    #[test]
    fn poly_text_format() {
        assert_eq!(parse_poly("2,1,1").unwrap(), vec![2, 1, 1]);
        assert_eq!(format_poly(&[2, 1, 1]), "2,1,1");
        assert!(parse_poly("2,x").is_err());
    }
}
