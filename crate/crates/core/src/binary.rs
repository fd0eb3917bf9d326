//! The binary decimations `d = (2^{2lm} - 1)/(2^m + 1) + 2^s` with `l` even.
//!
//! `S_d(z)` is expressed through how the `2^m + 1` points
//! `z alpha^j + alpha^{e j}` (`e = d 2^{-s}`) fall into the classes
//! `C_inf = {0}`, `C_0` (the `(2^m+1)`-th powers) and `C_1` (the rest):
//! `S = 2^{lm} (2^{lm} n_inf - 2^m n_0 + n_1) / (2^m + 1)`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::spectrum::{weil_sum, DecimationCase, SpectrumDistribution, SpectrumOptions, WeilTable};

/// Largest `n = 2lm` accepted.
pub const MAX_N: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryParams {
    pub l: u32,
    pub m: u32,
    pub s: u32,
    pub n: u32,
    pub d: u64,
    /// `2^{-s} mod 2^n - 1`.
    pub inv_2s: u64,
    /// `d 2^{-s} mod 2^n - 1`.
    pub e: u64,
    /// `gcd(2^{s-1} - l, 2^m + 1)`, with `2^{-1}` read modulo `2^m + 1`.
    pub validity_gcd: u64,
    pub valid: bool,
    /// `s <= 2m - 1`. Larger `s` are accepted since `2^s` only matters
    /// modulo `2^n - 1`, but they lie outside the usual hypothesis.
    pub s_in_range: bool,
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub fn binary_params(l: u32, m: u32, s: u32) -> Result<BinaryParams> {
    if l % 2 == 1 {
        return Err(Error::InvalidParams(format!(
            "l = {l} is odd; odd l gives Niho-type exponents, which are out of scope"
        )));
    }
    if l == 0 || m == 0 {
        return Err(Error::InvalidParams("l and m must be positive".into()));
    }
    let n = 2 * l * m;
    if n > MAX_N {
        return Err(Error::InvalidParams(format!("n = 2lm = {n} exceeds {MAX_N}")));
    }
    if s >= n {
        return Err(Error::InvalidParams(format!("s must be in 0..{n}, got {s}")));
    }
    let q1 = (1u64 << n) - 1;
    let big_m = (1u64 << m) + 1;
    let d = q1 / big_m + (1u64 << s);
    let inv_2s = 1u64 << ((n - s) % n);
    let e = mul_mod(d, inv_2s, q1);

    // 2^{s-1} mod 2^m + 1; 2^{-1} = 2^{m-1} + 1 there
    let t = if s >= 1 { (1u64 << (s - 1)) % big_m } else { ((1u64 << (m - 1)) + 1) % big_m };
    let diff = (t + big_m - l as u64 % big_m) % big_m;
    let validity_gcd = diff.gcd(&big_m);
    let valid = validity_gcd == 1;
    if valid != (d.gcd(&q1) == 1) {
        return Err(Error::Internal(format!(
            "validity rule disagrees with gcd(d, 2^n - 1) for (l, m, s) = ({l}, {m}, {s})"
        )));
    }
    Ok(BinaryParams { l, m, s, n, d, inv_2s, e, validity_gcd, valid, s_in_range: s < 2 * m })
}

impl BinaryParams {
    /// `2^m + 1`.
    pub fn big_m(&self) -> u64 {
        (1u64 << self.m) + 1
    }

    fn require_valid(&self) -> Result<()> {
        if self.valid {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "gcd(2^{{s-1}}-l, 2^m+1) = {}",
                self.validity_gcd
            )))
        }
    }

    fn check_field(&self, ctx: &FieldContext) -> Result<()> {
        if ctx.p() != 2 || ctx.n() != self.n {
            return Err(Error::InvalidParams(format!(
                "need GF(2^{}), got GF({}^{})",
                self.n,
                ctx.p(),
                ctx.n()
            )));
        }
        Ok(())
    }

    pub fn case<'a>(&self, ctx: &'a FieldContext) -> Result<DecimationCase<'a>> {
        self.require_valid()?;
        self.check_field(ctx)?;
        DecimationCase::new(ctx, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassLabel {
    #[serde(rename = "INF")]
    Inf,
    C0,
    C1,
}

/// Class of `x` for the subgroup of `(2^m + 1)`-th powers.
pub fn classify(ctx: &FieldContext, x: FieldElement, m: u32) -> Result<ClassLabel> {
    let x = ctx.own(x)?;
    if ctx.p() != 2 || ctx.n() % (2 * m) != 0 {
        return Err(Error::InvalidParams(format!("2^{m} + 1 does not divide 2^n - 1 here")));
    }
    Ok(classify_idx(ctx, x, (1u64 << m) + 1))
}

fn classify_idx(ctx: &FieldContext, x: u64, big_m: u64) -> ClassLabel {
    if x == 0 {
        return ClassLabel::Inf;
    }
    let in_c0 = match ctx.log_table() {
        Some(log) => log[x as usize] as u64 % big_m == 0,
        None => ctx.pow_idx(x, (ctx.order() - 1) / big_m) == 1,
    };
    if in_c0 {
        ClassLabel::C0
    } else {
        ClassLabel::C1
    }
}

/// `(n_inf, n_0, n_1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub n_inf: u64,
    pub n_0: u64,
    pub n_1: u64,
}

fn tally(ctx: &FieldContext, big_m: u64, points: impl Iterator<Item = u64>) -> ClassCounts {
    let mut c = ClassCounts { n_inf: 0, n_0: 0, n_1: 0 };
    for y in points {
        match classify_idx(ctx, y, big_m) {
            ClassLabel::Inf => c.n_inf += 1,
            ClassLabel::C0 => c.n_0 += 1,
            ClassLabel::C1 => c.n_1 += 1,
        }
    }
    c
}

/// Classes of `z alpha^j + alpha^{e j}` for `j = 0..=2^m`.
pub fn n_counts(params: &BinaryParams, ctx: &FieldContext, z: FieldElement) -> Result<ClassCounts> {
    params.require_valid()?;
    params.check_field(ctx)?;
    let z = ctx.own(z)?;
    let g = ctx.generator().index();
    let q1 = ctx.order() - 1;
    let points = (0..params.big_m()).map(|j| {
        let x = ctx.pow_idx(g, j);
        let xe = ctx.pow_idx(g, mul_mod(params.e, j, q1));
        ctx.add_idx(ctx.mul_idx(z, x), xe)
    });
    Ok(tally(ctx, params.big_m(), points))
}

/// The same counts taken over `x` in `D_0 = <alpha^{(2^n-1)/(2^m+1)}>`. This
/// agrees with [`n_counts`] when `gcd(l, 2^m + 1) = 1`, in particular `l = 2`.
pub fn n_counts_d0(params: &BinaryParams, ctx: &FieldContext, z: FieldElement) -> Result<ClassCounts> {
    params.require_valid()?;
    params.check_field(ctx)?;
    if (params.l as u64).gcd(&params.big_m()) != 1 {
        return Err(Error::InvalidParams("D_0 reformulation needs gcd(l, 2^m + 1) = 1".into()));
    }
    let z = ctx.own(z)?;
    let points = d0(ctx, params.big_m())
        .into_iter()
        .map(|x| ctx.add_idx(ctx.mul_idx(z, x), ctx.pow_idx(x, params.e)));
    Ok(tally(ctx, params.big_m(), points))
}

fn d0(ctx: &FieldContext, big_m: u64) -> Vec<u64> {
    let b = ctx.pow_idx(ctx.generator().index(), (ctx.order() - 1) / big_m);
    let mut out = Vec::with_capacity(big_m as usize);
    let mut x = 1;
    for _ in 0..big_m {
        out.push(x);
        x = ctx.mul_idx(x, b);
    }
    out
}

/// `S = 2^{lm} (2^{lm} n_inf - 2^m n_0 + n_1) / (2^m + 1)`; the division must
/// be exact.
pub fn cc_from_counts(params: &BinaryParams, c: &ClassCounts) -> Result<i64> {
    let big_m = params.big_m();
    if c.n_inf + c.n_0 + c.n_1 != big_m {
        return Err(Error::InvalidParams(format!("class counts must sum to {big_m}")));
    }
    let lm = params.l * params.m;
    let inner = (1i128 << lm) * c.n_inf as i128 - (1i128 << params.m) * c.n_0 as i128
        + c.n_1 as i128;
    let num = (1i128 << lm) * inner;
    if num % big_m as i128 != 0 {
        return Err(Error::Internal(format!("{num} is not divisible by {big_m}")));
    }
    i64::try_from(num / big_m as i128).map_err(|_| Error::Internal("value overflow".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Packed index of `z`.
    pub z: u64,
    pub s: i64,
    /// `S_d(z)` recomputed directly from the definition.
    pub rechecked: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem9Report {
    pub params: BinaryParams,
    /// Some nonzero `z` has `S_d(z) = 0`; this also witnesses the
    /// vanishing-sum conjecture for `d = 1 mod p - 1`.
    pub zero_attained: bool,
    pub zero_witness: Option<Witness>,
    /// Distinct values of `C_d` over nonzero `z`.
    pub distinct_values: usize,
    pub at_least_four: bool,
    pub max_s: Witness,
    /// `max S >= 2^{lm+1}`; with `n = 2t` this is the `2^{t+1}` bound.
    pub max_bound_ok: bool,
    pub divisibility_ok: bool,
    pub divisibility_counterexample: Option<u64>,
    /// `cc_from_counts(n_counts(z)) = S_d(z)` for every `z`.
    pub count_formula_ok: bool,
    pub count_formula_counterexample: Option<u64>,
    /// Number of `z` with `n_inf(z) = 1`; should be `2^m + 1`.
    pub n_inf_one: u64,
    /// `l = 2`, `s = 1`: a Niho-type exponent.
    pub niho_type: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<SpectrumDistribution>,
    pub passed: bool,
}

pub fn theorem9_verify(
    params: &BinaryParams,
    ctx: &FieldContext,
    opts: &SpectrumOptions,
    full_spectrum: bool,
) -> Result<Theorem9Report> {
    let case = params.case(ctx)?;
    let table = WeilTable::compute(&case, opts)?;
    let values = table.integer_values()?;

    let recheck = |z: u64, s: i64| -> Result<Witness> {
        let direct = weil_sum(&case, ctx.element(z)?)?;
        Ok(Witness { z, s, rechecked: direct.as_i64() == Some(s) })
    };

    let zero_witness = match (1..values.len()).find(|&z| values[z] == 0) {
        Some(z) => Some(recheck(z as u64, 0)?),
        None => None,
    };
    let (max_z, &max_val) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .expect("field is nonempty");
    let max_s = recheck(max_z as u64, max_val)?;

    let mut nonzero: Vec<i64> = values[1..].to_vec();
    nonzero.sort_unstable();
    nonzero.dedup();
    let distinct_values = nonzero.len();

    let unit = 1i64 << (params.l * params.m);
    let divisibility_counterexample = values.iter().position(|v| v % unit != 0).map(|z| z as u64);

    let mut count_formula_counterexample = None;
    let mut n_inf_one = 0;
    for z in ctx.elements() {
        let c = n_counts(params, ctx, z)?;
        if c.n_inf == 1 {
            n_inf_one += 1;
        }
        if count_formula_counterexample.is_none()
            && cc_from_counts(params, &c)? != values[z.index() as usize]
        {
            count_formula_counterexample = Some(z.index());
        }
    }

    let zero_attained = zero_witness.as_ref().is_some_and(|w| w.rechecked);
    let at_least_four = distinct_values >= 4;
    let max_bound_ok = max_s.rechecked && max_val >= 2 * unit;
    let divisibility_ok = divisibility_counterexample.is_none();
    let count_formula_ok = count_formula_counterexample.is_none();
    let passed = zero_attained
        && at_least_four
        && max_bound_ok
        && divisibility_ok
        && count_formula_ok
        && n_inf_one == params.big_m();
    Ok(Theorem9Report {
        params: *params,
        zero_attained,
        zero_witness,
        distinct_values,
        at_least_four,
        max_s,
        max_bound_ok,
        divisibility_ok,
        divisibility_counterexample,
        count_formula_ok,
        count_formula_counterexample,
        n_inf_one,
        niho_type: params.l == 2 && params.s == 1,
        distribution: full_spectrum.then(|| table.distribution(true)),
        passed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UBranch {
    /// `u = 2^m + 1`.
    Full,
    /// `u < 2^m + 1`, hence `u <= (2^m + 1)/3`.
    Proper,
}

#[derive(Clone, Debug, Serialize)]
pub struct L2Report {
    pub params: BinaryParams,
    /// `gcd(e + 1, 2^m + 1)`.
    pub u: u64,
    pub branch: UBranch,
    pub s_at_one_predicted: i64,
    pub s_at_one_actual: i64,
    /// `S(1) >= 2^{2m+1}` (proper branch) or `S(1) = 0` (full branch).
    pub s_at_one_bound_ok: bool,
    /// Predicted value on all of `D_0 \ {1}`.
    pub d0_predicted: i64,
    pub d0_positive: bool,
    /// Packed indices of `z` in `D_0 \ {1}` where the uniform prediction
    /// failed.
    pub d0_mismatches: Vec<u64>,
    /// The uniform prediction holds everywhere.
    pub passed: bool,
    /// `z x^{e+1} = 1` has `u` solutions in `D_0` only when `z` lies in the
    /// subgroup of order `(2^m+1)/u`, and none otherwise. The refined
    /// prediction is `2^{3m} - 2^{2m} u` on that subgroup and `2^{3m}` on the
    /// rest of `D_0 \ {1}`.
    pub refined_mismatches: Vec<u64>,
    pub refined_passed: bool,
}

/// Predictions for `l = 2` on `z` in `D_0`, checked by direct summation.
pub fn l2_structure(params: &BinaryParams, ctx: &FieldContext) -> Result<L2Report> {
    if params.l != 2 {
        return Err(Error::InvalidParams("the D_0 structure analysis needs l = 2".into()));
    }
    let case = params.case(ctx)?;
    let big_m = params.big_m();
    let m = params.m;
    let u = ((params.e + 1) % big_m).gcd(&big_m);
    let (branch, s1, s_rest) = if u == big_m {
        (UBranch::Full, 0i64, 1i64 << (3 * m))
    } else {
        let base = 1i64 << (3 * m);
        let sq = 1i64 << (2 * m);
        (UBranch::Proper, base + sq * (1 - u as i64), base - sq * u as i64)
    };
    let direct = |z: u64| -> Result<i64> {
        weil_sum(&case, ctx.element(z)?)?
            .as_i64()
            .ok_or_else(|| Error::Internal("binary Weil sum outside Z".into()))
    };
    let s_at_one_actual = direct(1)?;
    let s_at_one_bound_ok = match branch {
        UBranch::Full => s_at_one_actual == 0,
        UBranch::Proper => 3 * u <= big_m && s_at_one_actual >= 1i64 << (2 * m + 1),
    };
    let sub_order = big_m / u;
    let mut d0_mismatches = Vec::new();
    let mut refined_mismatches = Vec::new();
    for z in d0(ctx, big_m).into_iter().skip(1) {
        let actual = direct(z)?;
        if actual != s_rest {
            d0_mismatches.push(z);
        }
        let refined = if ctx.pow_idx(z, sub_order) == 1 { s_rest } else { 1i64 << (3 * m) };
        if actual != refined {
            refined_mismatches.push(z);
        }
    }
    let at_one = s_at_one_actual == s1 && s_at_one_bound_ok;
    let passed = at_one && d0_mismatches.is_empty() && s_rest > 0;
    let refined_passed = at_one && refined_mismatches.is_empty() && s_rest > 0;
    Ok(L2Report {
        params: *params,
        u,
        branch,
        s_at_one_predicted: s1,
        s_at_one_actual,
        s_at_one_bound_ok,
        d0_predicted: s_rest,
        d0_positive: s_rest > 0,
        d0_mismatches,
        passed,
        refined_mismatches,
        refined_passed,
    })
}
