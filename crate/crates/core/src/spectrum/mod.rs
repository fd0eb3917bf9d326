//! Weil sums `S_d(z) = sum_{x in GF(p^n)} chi(z x - x^d)` and their spectra.
//!
//! The sum runs over the whole field, including `x = 0`, so that
//! `S_d(alpha^tau) = C_d(tau) + 1` for the cross-correlation `C_d` of an
//! m-sequence with its `d`-decimation, and the multiset over all `z`
//! (including `z = 0`) has `p^n` entries.
//!
//! Two independent evaluators produce a [`WeilTable`] of every `S_d(z)`:
//!
//! * naive: one cyclic correlation of trace tables per `z`, `O(p^{2n})`;
//! * fast: an `n`-dimensional radix-`p` transform in dual-basis coordinates,
//!   `O(n p^{n+2})` small-integer additions.

mod distribution;
mod fast;
mod moments;
mod naive;
mod sequence;

pub use distribution::SpectrumDistribution;
pub use moments::{moments_of, verify_moments, CheckStatus, IdentityCheck, MomentReport};
pub use sequence::{cross_correlation_direct, decimate, msequence};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

/// Largest field the naive evaluator accepts, `3^9`.
pub const NAIVE_LIMIT: u64 = 19_683;
/// Default cap on the transform buffer.
pub const DEFAULT_MEMORY_CAP: u64 = 2 << 30;

/// A field together with a decimation exponent.
#[derive(Clone, Copy, Debug)]
pub struct DecimationCase<'a> {
    ctx: &'a FieldContext,
    d: u64,
    gcd: u64,
    degenerate: bool,
}

impl<'a> DecimationCase<'a> {
    pub fn new(ctx: &'a FieldContext, d: u64) -> Result<Self> {
        let q1 = ctx.order() - 1;
        if d == 0 || d >= q1.max(1) {
            return Err(Error::DecimationRange { d, limit: q1 });
        }
        let p = ctx.p() as u64;
        let degenerate = (0..ctx.n()).any(|i| p.pow(i) == d);
        Ok(DecimationCase { ctx, d, gcd: d.gcd(&q1), degenerate })
    }

    pub fn ctx(&self) -> &'a FieldContext {
        self.ctx
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// `gcd(d, p^n - 1)`, always recomputed from `d`.
    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    /// `d` is a power of `p`, so the decimation is a cyclic shift.
    pub fn degenerate(&self) -> bool {
        self.degenerate
    }

    /// `d = 1 (mod p - 1)`; gates the plain second and third moment checks.
    pub fn congruent_one(&self) -> bool {
        let p = self.ctx.p() as u64;
        p == 2 || self.d % (p - 1) == 1
    }

    pub(crate) fn pow_d(&self, x: u64) -> u64 {
        self.ctx.pow_idx(x, self.d)
    }
}

/// Direct evaluation of `S_d(z)` by field arithmetic.
pub fn weil_sum(case: &DecimationCase, z: FieldElement) -> Result<CycInt> {
    let ctx = case.ctx;
    let z = ctx.own(z)?;
    let p = ctx.p() as usize;
    let mut counts = vec![0u64; p];
    for x in 0..ctx.order() {
        let zx = ctx.mul_idx(z, x);
        let arg = ctx.sub_idx(zx, case.pow_d(x));
        counts[ctx.abs_trace_idx(arg) as usize] += 1;
    }
    Ok(CycInt::from_exponent_counts(ctx.p(), &counts))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    Fast,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "fast" => Ok(Method::Fast),
            other => Err(Error::InvalidParams(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SpectrumOptions {
    pub method: Method,
    /// Worker threads; 0 uses the ambient rayon pool.
    pub workers: usize,
    pub memory_cap: u64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions { method: Method::Fast, workers: 0, memory_cap: DEFAULT_MEMORY_CAP }
    }
}

impl SpectrumOptions {
    pub fn with_method(method: Method) -> Self {
        SpectrumOptions { method, ..Default::default() }
    }
}

pub(crate) fn run_with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Budget(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

#[derive(Clone, Debug)]
enum Layout {
    /// Slot `i` holds `z` with packed index `i`.
    Natural,
    /// Slot digits are the coordinates of `z` in the dual basis.
    Dual(Vec<u64>),
}

/// Every `S_d(z)` of one case as exponent-count vectors: slot `s` stores
/// `c_0..c_{p-1}` with `S = sum_e c_e zeta^e`.
pub struct WeilTable<'a> {
    ctx: &'a FieldContext,
    counts: Vec<u32>,
    layout: Layout,
}

impl<'a> WeilTable<'a> {
    pub fn compute(case: &DecimationCase<'a>, opts: &SpectrumOptions) -> Result<Self> {
        let ctx = case.ctx;
        if !ctx.has_tables() {
            return Err(Error::TablesAbsent(ctx.order()));
        }
        let needed = ctx.order() * ctx.p() as u64 * 4;
        if needed > opts.memory_cap {
            return Err(Error::MemoryCap { needed, cap: opts.memory_cap });
        }
        match opts.method {
            Method::Naive => {
                if ctx.order() > NAIVE_LIMIT {
                    return Err(Error::Budget(format!(
                        "naive evaluation is limited to {NAIVE_LIMIT} elements, field has {}",
                        ctx.order()
                    )));
                }
                let counts = run_with_workers(opts.workers, || naive::all_sums(case))?;
                Ok(WeilTable { ctx, counts, layout: Layout::Natural })
            }
            Method::Fast => {
                let counts = run_with_workers(opts.workers, || fast::all_sums(case))?;
                Ok(WeilTable { ctx, counts, layout: Layout::Dual(ctx.dual_basis_idx()) })
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    /// The raw count buffer, for bit-level comparisons between runs.
    pub(crate) fn raw(&self) -> &[u32] {
        &self.counts
    }

    fn slot_counts(&self, slot: u64) -> &[u32] {
        let p = self.ctx.p() as usize;
        &self.counts[slot as usize * p..(slot as usize + 1) * p]
    }

    fn slot_of(&self, z: u64) -> u64 {
        match &self.layout {
            Layout::Natural => z,
            Layout::Dual(_) => {
                // the dual-basis coordinates of z are Tr(z x^i)
                let p = self.ctx.p() as u64;
                (0..self.ctx.n()).rev().fold(0, |acc, i| {
                    acc * p + self.ctx.abs_trace_idx(self.ctx.mul_idx(z, p.pow(i))) as u64
                })
            }
        }
    }

    fn z_of(&self, slot: u64) -> u64 {
        match &self.layout {
            Layout::Natural => slot,
            Layout::Dual(dual) => {
                let p = self.ctx.p() as u64;
                let mut rest = slot;
                let mut z = 0;
                for &d in dual {
                    for _ in 0..rest % p {
                        z = self.ctx.add_idx(z, d);
                    }
                    rest /= p;
                }
                z
            }
        }
    }

    pub fn value_at(&self, z: FieldElement) -> Result<CycInt> {
        let z = self.ctx.own(z)?;
        let c: Vec<u64> = self.slot_counts(self.slot_of(z)).iter().map(|&v| v as u64).collect();
        Ok(CycInt::from_exponent_counts(self.p(), &c))
    }

    /// `S_d(z)` as an integer for every `z`, indexed by the packed index of
    /// `z`. Fails if some value is not a rational integer.
    pub fn integer_values(&self) -> Result<Vec<i64>> {
        let p = self.p() as usize;
        let mut out = vec![0i64; self.ctx.order() as usize];
        for slot in 0..self.ctx.order() {
            let c = self.slot_counts(slot);
            let top = c[p - 1] as i64;
            if c[1..p - 1].iter().any(|&v| v as i64 != top) {
                return Err(Error::InvalidParams("spectrum has non-integer values".into()));
            }
            out[self.z_of(slot) as usize] = c[0] as i64 - top;
        }
        Ok(out)
    }

    pub fn distribution(&self, include_zero: bool) -> SpectrumDistribution {
        distribution::from_counts(
            self.ctx,
            &self.counts,
            include_zero,
            // z = 0 sits in slot 0 under both layouts
            0,
        )
    }
}

/// Full spectrum of `case` as a multiset.
pub fn spectrum(
    case: &DecimationCase,
    opts: &SpectrumOptions,
    include_zero: bool,
) -> Result<SpectrumDistribution> {
    let table = WeilTable::compute(case, opts)?;
    run_with_workers(opts.workers, || table.distribution(include_zero))
}

/// Number of `(x, y)` with `x + y + 1 = 0` and `x^d + y^d + 1 = 0`.
pub fn b3_count(case: &DecimationCase) -> u64 {
    let ctx = case.ctx;
    let minus_one = ctx.neg_idx(1);
    (0..ctx.order())
        .into_par_iter()
        .filter(|&x| {
            let y = ctx.sub_idx(minus_one, x);
            let s = ctx.add_idx(ctx.add_idx(case.pow_d(x), case.pow_d(y)), 1);
            s == 0
        })
        .count() as u64
}
