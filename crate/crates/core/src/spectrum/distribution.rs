use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::cyclo::CycInt;
use crate::field::FieldContext;

/// Multiset of values with their multiplicities, sorted by [`CycInt`]'s order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumDistribution {
    p: u32,
    entries: BTreeMap<CycInt, u64>,
    total: u64,
    includes_zero: bool,
}

/// Canonical coordinates `c_e - c_{p-1}`, small enough for `i64`.
type Key = [i64; 6];

fn key_of(slot: &[u32]) -> Key {
    let top = *slot.last().expect("p >= 2") as i64;
    let mut k = [0i64; 6];
    for (e, &c) in slot[..slot.len() - 1].iter().enumerate() {
        k[e] = c as i64 - top;
    }
    k
}

pub(super) fn from_counts(
    ctx: &FieldContext,
    counts: &[u32],
    include_zero: bool,
    zero_slot: usize,
) -> SpectrumDistribution {
    let p = ctx.p() as usize;
    assert!(p <= 7, "exponent-count keys hold at most p = 7");
    let tally = counts
        .par_chunks(p)
        .enumerate()
        .filter(|&(slot, _)| include_zero || slot != zero_slot)
        .fold(HashMap::<Key, u64>::new, |mut m, (_, c)| {
            *m.entry(key_of(c)).or_default() += 1;
            m
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let mut entries = BTreeMap::new();
    let mut total = 0;
    for (k, v) in tally {
        let coords = k[..p - 1].iter().map(|&c| BigInt::from(c)).collect();
        entries.insert(CycInt::from_coords(p as u32, coords).expect("length p - 1"), v);
        total += v;
    }
    SpectrumDistribution { p: p as u32, entries, total, includes_zero: include_zero }
}

impl SpectrumDistribution {
    /// Builds from explicit `(value, count)` pairs; zero counts are dropped and
    /// repeated values merged.
    pub fn from_entries(
        p: u32,
        pairs: impl IntoIterator<Item = (CycInt, u64)>,
        includes_zero: bool,
    ) -> Self {
        let mut entries = BTreeMap::new();
        let mut total = 0;
        for (v, c) in pairs {
            assert_eq!(v.p(), p, "value from the wrong cyclotomic ring");
            if c > 0 {
                *entries.entry(v).or_default() += c;
                total += c;
            }
        }
        SpectrumDistribution { p, entries, total, includes_zero }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn includes_zero(&self) -> bool {
        self.includes_zero
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn count(&self, value: &CycInt) -> u64 {
        self.entries.get(value).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CycInt, u64)> {
        self.entries.iter().map(|(v, &c)| (v, c))
    }

    /// Every value is a rational integer.
    pub fn all_rational(&self) -> bool {
        self.entries.keys().all(|v| v.as_rational().is_some())
    }

    /// The same multiset with `k` added to every value.
    pub fn shift(&self, k: i64) -> Self {
        let add = CycInt::from_int(self.p, k);
        Self::from_entries(
            self.p,
            self.entries.iter().map(|(v, &c)| (v + &add, c)),
            self.includes_zero,
        )
    }

    /// `sum count * f(value)`.
    pub fn power_sum(&self, e: u32) -> CycInt {
        self.entries.iter().fold(CycInt::zero(self.p), |acc, (v, &c)| {
            &acc + &v.pow(e).scale(&BigInt::from(c))
        })
    }

    /// `sum count * value * conj(value)`.
    pub fn abs_square_sum(&self) -> CycInt {
        self.entries.iter().fold(CycInt::zero(self.p), |acc, (v, &c)| {
            &acc + &v.norm_sq().scale(&BigInt::from(c))
        })
    }
}

struct Entry<'a> {
    value: &'a CycInt,
    count: u64,
}

impl Serialize for Entry<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Entry", 2)?;
        st.serialize_field("value", self.value)?;
        st.serialize_field("count", &self.count)?;
        st.end()
    }
}

impl Serialize for SpectrumDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<Entry> =
            self.entries.iter().map(|(value, &count)| Entry { value, count }).collect();
        let mut st = s.serialize_struct("SpectrumDistribution", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("total", &self.total)?;
        st.serialize_field("includes_zero", &self.includes_zero)?;
        st.serialize_field("distribution", &entries)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_merge_and_sort() {
        let v = |k: i64| CycInt::from_int(3, k);
        let z = CycInt::zeta_pow(3, 1);
        let d = SpectrumDistribution::from_entries(
            3,
            [(v(5), 2), (z.clone(), 1), (v(-1), 3), (v(5), 1), (v(7), 0)],
            true,
        );
        assert_eq!(d.total(), 7);
        assert_eq!(d.distinct(), 3);
        let order: Vec<_> = d.iter().map(|(v, c)| (v.clone(), c)).collect();
        assert_eq!(order, vec![(v(-1), 3), (v(5), 3), (z, 1)]);
        assert!(!d.all_rational());
    }

    #[test]
    fn shift_and_power_sums() {
        let d = SpectrumDistribution::from_entries(
            2,
            [(CycInt::from_int(2, 0), 3), (CycInt::from_int(2, 4), 1)],
            true,
        );
        assert_eq!(d.power_sum(1), CycInt::from_int(2, 4));
        assert_eq!(d.power_sum(2), CycInt::from_int(2, 16));
        let s = d.shift(-1);
        assert_eq!(s.count(&CycInt::from_int(2, -1)), 3);
        assert_eq!(s.count(&CycInt::from_int(2, 3)), 1);
    }

    #[test]
    fn key_ignores_common_offset() {
        assert_eq!(key_of(&[3, 1, 1]), key_of(&[4, 2, 2]));
        assert_ne!(key_of(&[3, 1, 1]), key_of(&[3, 2, 1]));
    }
}
