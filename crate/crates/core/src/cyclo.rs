//! Exact arithmetic in the cyclotomic integers `Z[zeta_p]`.
//!
//! Values are stored on the basis `{1, zeta, ..., zeta^{p-2}}`; `zeta^{p-1}` is
//! always eliminated with `zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})`, so two
//! values are equal exactly when their coordinates are. For `p = 2` the ring is
//! just `Z` and a value has a single coordinate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coords: Vec<BigInt>,
}

/// Floating-point view of a [`CycInt`]; never used to decide equality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt { p, coords: vec![BigInt::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u32, k: impl Into<BigInt>) -> Self {
        let mut v = Self::zero(p);
        v.coords[0] = k.into();
        v
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let mut full = vec![0i64; p as usize];
        full[k.rem_euclid(p as i64) as usize] = 1;
        Self::from_full(p, &full)
    }

    /// Canonicalizes `sum_i full[i] zeta^i` for `full` of length `p`.
    pub fn from_full<T: Copy + Into<BigInt>>(p: u32, full: &[T]) -> Self {
        assert_eq!(full.len(), p as usize, "expected {p} coordinates");
        let top: BigInt = full[p as usize - 1].into();
        let coords = full[..p as usize - 1]
            .iter()
            .map(|&c| c.into() - &top)
            .collect();
        CycInt { p, coords }
    }

    /// `sum_k counts[k] zeta^k`; the shape every character sum arrives in.
    pub fn from_exponent_counts(p: u32, counts: &[u64]) -> Self {
        Self::from_full(p, counts)
    }

    /// Builds from canonical coordinates (length `p - 1`).
    pub fn from_coords(p: u32, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != (p - 1) as usize {
            return Err(Error::InvalidParams(format!(
                "expected {} coordinates for p = {p}, got {}",
                p - 1,
                coords.len()
            )));
        }
        Ok(CycInt { p, coords })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The integer value, if this element lies in `Z`.
    pub fn as_rational(&self) -> Option<&BigInt> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_rational().and_then(ToPrimitive::to_i64)
    }

    fn full(&self) -> Vec<BigInt> {
        let mut f = self.coords.clone();
        f.push(BigInt::zero());
        f
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::OrderMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(CycInt { p: self.p, coords })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(CycInt { p: self.p, coords })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.p as usize;
        let (a, b) = (self.full(), other.full());
        let mut out = vec![BigInt::zero(); p];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[(i + j) % p] += x * y;
                }
            }
        }
        Ok(Self::canonical(self.p, out))
    }

    fn canonical(p: u32, mut full: Vec<BigInt>) -> Self {
        let top = full.pop().expect("p >= 2");
        let coords = full.into_iter().map(|c| c - &top).collect();
        CycInt { p, coords }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt { p: self.p, coords: self.coords.iter().map(|c| c * k).collect() }
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let f = self.full();
        let mut out = vec![BigInt::zero(); p];
        for (i, c) in f.into_iter().enumerate() {
            out[(p - i) % p] = c;
        }
        Self::canonical(self.p, out)
    }

    /// `self * conj(self)`: real and nonnegative under every embedding, and a
/// rational integer when `p <= 3` or `self` is a character sum of modulus
/// `sqrt(k)`.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.p), |acc, _| &acc * self)
    }

    /// Embeds with `zeta = exp(2 pi i / p)`; coordinates must stay below `2^40`.
    pub fn to_complex(&self) -> Result<ComplexApprox> {
        let limit = BigInt::from(1u64 << 40);
        if self.coords.iter().any(|c| c.abs() >= limit) {
            return Err(Error::EmbedOverflow);
        }
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in self.coords.iter().enumerate() {
            let c = c.to_f64().expect("bounded");
            let theta = 2.0 * std::f64::consts::PI * k as f64 / self.p as f64;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        Ok(ComplexApprox { re, im })
    }

    fn sort_key(&self) -> (bool, Option<&BigInt>, &[BigInt]) {
        let r = self.as_rational();
        (r.is_none(), r, &self.coords)
    }
}

/// Integers first in increasing order, then the rest lexicographically by
/// coordinates.
impl Ord for CycInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p.cmp(&other.p).then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl PartialOrd for CycInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycInt> for &CycInt {
            type Output = CycInt;
            /// Panics when the two values have different `p`; use the
            /// `checked_*` form to get an error instead.
            fn $m(self, rhs: &CycInt) -> CycInt {
                self.$checked(rhs).expect("cyclotomic order mismatch")
            }
        }
        impl $tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: CycInt) -> CycInt {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { p: self.p, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let coeff = if k > 0 && mag.is_one() { String::new() } else { mag.to_string() };
            match k {
                0 => write!(f, "{sign}{coeff}")?,
                1 => write!(f, "{sign}{coeff}z")?,
                _ => write!(f, "{sign}{coeff}z^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// JSON numbers when they fit in `i64`, decimal strings otherwise.
pub(crate) fn big_to_json<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

struct JsonInt<'a>(&'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        big_to_json(self.0, s)
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rational = self.as_rational();
        let mut st = s.serialize_struct("CycInt", if rational.is_some() { 3 } else { 2 })?;
        st.serialize_field("p", &self.p)?;
        let coords: Vec<JsonInt> = self.coords.iter().map(JsonInt).collect();
        st.serialize_field("coords", &coords)?;
        if let Some(r) = rational {
            st.serialize_field("rational", &JsonInt(r))?;
        }
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(p: u32, c: &[i64]) -> CycInt {
        CycInt::from_coords(p, c.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    #[test]
    fn i_sqrt3_has_norm_3() {
        let v = cyc(3, &[1, 2]);
        assert_eq!(&v * &v.conj(), CycInt::from_int(3, 3));
        assert_eq!(v.norm_sq().as_i64(), Some(3));
    }

    #[test]
    fn roots_sum_to_zero() {
        let p3 = &CycInt::zeta_pow(3, 1) + &CycInt::zeta_pow(3, 2);
        assert_eq!(p3.coords(), &[BigInt::from(-1), BigInt::from(0)]);
        for p in [2u32, 3, 5, 7] {
            let s = CycInt::from_full(p, &vec![1i64; p as usize]);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn rationality() {
        assert_eq!(cyc(3, &[5, 0]).as_i64(), Some(5));
        assert_eq!(cyc(3, &[0, 1]).as_rational(), None);
        assert_eq!(CycInt::from_int(2, 7).as_i64(), Some(7));
    }

    #[test]
    fn embedding() {
        let one = CycInt::one(5).to_complex().unwrap();
        assert!((one.re - 1.0).abs() < 1e-12 && one.im.abs() < 1e-12);
        let v = cyc(3, &[1, 2]).to_complex().unwrap();
        assert!(v.re.abs() < 1e-9 && (v.im - 3f64.sqrt()).abs() < 1e-9);
        let k = CycInt::from_int(2, -9).to_complex().unwrap();
        assert_eq!((k.re, k.im), (-9.0, 0.0));
        assert_eq!(cyc(3, &[1 << 41, 0]).to_complex().unwrap_err(), Error::EmbedOverflow);
    }

    #[test]
    fn binary_ring_is_z() {
        // zeta = -1 when p = 2
        assert_eq!(CycInt::zeta_pow(2, 1), CycInt::from_int(2, -1));
        assert_eq!(CycInt::from_exponent_counts(2, &[10, 6]).as_i64(), Some(4));
    }

    #[test]
    fn mismatched_orders() {
        let a = CycInt::one(3);
        let b = CycInt::one(5);
        assert_eq!(a.checked_add(&b).unwrap_err(), Error::OrderMismatch(3, 5));
        assert_eq!(a.checked_mul(&b).unwrap_err(), Error::OrderMismatch(3, 5));
        assert!(CycInt::from_coords(3, vec![BigInt::one()]).is_err());
    }

    #[test]
    fn ordering_puts_integers_first() {
        let mut v = vec![cyc(3, &[0, 1]), cyc(3, &[4, 0]), cyc(3, &[-2, 0]), cyc(3, &[-1, -1])];
        v.sort();
        assert_eq!(v, vec![cyc(3, &[-2, 0]), cyc(3, &[4, 0]), cyc(3, &[-1, -1]), cyc(3, &[0, 1])]);
    }

    #[test]
    fn display_and_json() {
        assert_eq!(cyc(3, &[1, 2]).to_string(), "1+2z");
        assert_eq!(cyc(5, &[0, -1, 0, 3]).to_string(), "-z+3z^3");
        assert_eq!(cyc(3, &[-4, 0]).to_string(), "-4");
    }

    fn arb_cyc(p: u32) -> impl Strategy<Value = CycInt> {
        proptest::collection::vec(-1000i64..1000, (p - 1) as usize)
            .prop_map(move |c| cyc(p, &c))
    }

    fn arb_pair() -> impl Strategy<Value = (CycInt, CycInt)> {
        prop_oneof![Just(2u32), Just(3u32), Just(5u32), Just(7u32)]
            .prop_flat_map(|p| (arb_cyc(p), arb_cyc(p)))
    }

    proptest! {
        #[test]
        fn conj_is_an_involution((a, _b) in arb_pair()) {
            prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn norm_is_real_and_nonnegative((a, _b) in arb_pair()) {
            let n = a.norm_sq();
            prop_assert_eq!(n.conj(), n.clone());
            if a.p() <= 3 {
                prop_assert!(n.as_rational().map_or(false, |r| !r.is_negative()));
            }
            let z = n.to_complex().unwrap();
            prop_assert!(z.re >= -1e-6 * (1.0 + z.re.abs()));
            prop_assert!(z.im.abs() < 1e-6 * (1.0 + z.re.abs()));
        }

        #[test]
        fn embedding_is_a_ring_homomorphism((a, b) in arb_pair()) {
            let (ea, eb) = (a.to_complex().unwrap(), b.to_complex().unwrap());
            let prod = (&a * &b).to_complex().unwrap();
            let re = ea.re * eb.re - ea.im * eb.im;
            let im = ea.re * eb.im + ea.im * eb.re;
            prop_assert!((prod.re - re).abs() < 1e-8 * (1.0 + re.abs()));
            prop_assert!((prod.im - im).abs() < 1e-8 * (1.0 + im.abs()));
            let sum = (&a + &b).to_complex().unwrap();
            prop_assert!((sum.re - ea.re - eb.re).abs() < 1e-8);
        }

        #[test]
        fn ring_axioms((a, b) in arb_pair()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!(&a * &CycInt::one(a.p()), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert!((&a + &(-&a)).is_zero());
        }
    }
}
