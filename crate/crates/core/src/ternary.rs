//! The ternary decimations `d = 3^r + 2` and `d = 3^{2r} + 2` on GF(3^{3r}).
//!
//! For `r >= 2` with `3 ∤ r` the cross-correlation `C = S - 1` takes five or
//! six values with explicit multiplicities; the same multiplicities are
//! conjectured when `3 | r`. This module builds that closed form, checks the
//! tower trace identities behind it, counts `b3`, and compares everything with
//! computed spectra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::field::subfield::Subfield;
use crate::field::{build_field, FieldContext, Tower};
use crate::spectrum::{b3_count, spectrum, DecimationCase, SpectrumDistribution, SpectrumOptions};

/// Largest `r` whose exponents fit comfortably in `u64`.
pub const MAX_R: u32 = 13;
/// `r` up to which the trace identities are checked exhaustively.
pub const TRACE_FORM_MAX_R: u32 = 4;
/// Field size up to which `b3` is brute forced.
pub const B3_BRUTE_LIMIT: u64 = 19_683;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `d = 3^r + 2`
    #[serde(rename = "r")]
    R,
    /// `d = 3^{2r} + 2`
    #[serde(rename = "2r")]
    TwoR,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" => Ok(Variant::R),
            "2r" => Ok(Variant::TwoR),
            other => Err(Error::InvalidParams(format!("variant must be r or 2r, got {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TernaryParams {
    pub r: u32,
    pub variant: Variant,
    pub n: u32,
    pub d: u64,
    pub r_mod_3: u32,
    pub r_even: bool,
    /// `r >= 2` and `gcd(r, 3) = 1`.
    pub theorem_applicable: bool,
    /// `3 | r`: the closed form is only conjectured.
    pub conjecture_mode: bool,
}

pub fn ternary_params(r: u32, variant: Variant) -> Result<TernaryParams> {
    if r == 0 || r > MAX_R {
        return Err(Error::InvalidParams(format!("r must be in 1..={MAX_R}, got {r}")));
    }
    let d = match variant {
        Variant::R => 3u64.pow(r) + 2,
        Variant::TwoR => 3u64.pow(2 * r) + 2,
    };
    let q1 = 3u64.pow(3 * r) - 1;
    if d.gcd(&q1) != 1 {
        return Err(Error::Internal(format!("gcd({d}, 3^{} - 1) != 1", 3 * r)));
    }
    Ok(TernaryParams {
        r,
        variant,
        n: 3 * r,
        d,
        r_mod_3: r % 3,
        r_even: r % 2 == 0,
        theorem_applicable: r >= 2 && r % 3 != 0,
        conjecture_mode: r % 3 == 0,
    })
}

impl TernaryParams {
    /// GF(3^{3r}) under its default polynomial.
    pub fn field(&self) -> Result<FieldContext> {
        build_field(3, self.n, None)
    }

    pub fn case<'a>(&self, ctx: &'a FieldContext) -> Result<DecimationCase<'a>> {
        if ctx.p() != 3 || ctx.n() != self.n {
            return Err(Error::InvalidParams(format!(
                "need GF(3^{}), got GF({}^{})",
                self.n,
                ctx.p(),
                ctx.n()
            )));
        }
        DecimationCase::new(ctx, self.d)
    }
}

/// Closed-form `(C value, count)` rows for `r >= 2`, chosen by the parity of
/// `r`. Counts are exact for any `r`.
pub fn theorem4_counts(r: u32) -> Result<Vec<(BigInt, BigInt)>> {
    if r < 2 {
        return Err(Error::InvalidParams(
            "r = 1: the values 3^{2r} - 1 and 3^{(3r+1)/2} - 1 coincide, so the closed form is not a table"
                .into(),
        ));
    }
    let three = BigInt::from(3);
    let pw = |e: u32| three.pow(e);
    let (big, mid, small) = (pw(3 * r), pw(2 * r), pw(r));
    let one = BigInt::from(1);
    // (3^{3r-1} - 3^{2r-1})
    let gap = (&big - &mid) / 3;
    let rows = if r % 2 == 0 {
        let h = pw(3 * r / 2);
        let h2 = &h * 2;
        vec![
            (-&one, (&big + &mid) / 2 - &small),
            (&mid - &one, small.clone()),
            (&h - &one, &gap / 2),
            (-&h - &one, &gap / 2),
            (&h2 - &one, &gap / 4),
            (-&h2 - &one, &gap / 4),
        ]
    } else {
        let h = pw((3 * r + 1) / 2);
        vec![
            (-&one, &big * 2 / 3 + &mid / 3 - &small),
            (&mid - &one, small.clone()),
            (&h - &one, &gap / 2),
            (-&h - &one, &gap / 2),
        ]
    };
    Ok(rows)
}

/// Closed-form distribution of `C = S - 1` over all `z`, zero included.
pub fn theorem4_distribution(params: &TernaryParams) -> Result<SpectrumDistribution> {
    let rows = theorem4_counts(params.r)?;
    let pairs = rows
        .into_iter()
        .map(|(v, c)| {
            let c = c.to_u64().ok_or_else(|| Error::Internal("count overflow".into()))?;
            Ok((CycInt::from_int(3, v), c))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumDistribution::from_entries(3, pairs, true))
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma6Report {
    pub r: u32,
    pub d: u64,
    /// `3^r`.
    pub closed_form: u64,
    /// The closed form is proven (`3 ∤ r`) rather than only compared.
    pub closed_form_proven: bool,
    pub brute_force: Option<u64>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

/// `b3` for the ternary decimation against `3^r`. The brute force runs when
/// the field has at most 3^9 elements.
pub fn lemma6_count(params: &TernaryParams) -> Result<Lemma6Report> {
    let closed_form = 3u64.pow(params.r);
    let brute_force = if 3u64.pow(params.n) <= B3_BRUTE_LIMIT {
        let ctx = params.field()?;
        Some(b3_count(&params.case(&ctx)?))
    } else {
        None
    };
    Ok(Lemma6Report {
        r: params.r,
        d: params.d,
        closed_form,
        closed_form_proven: params.r % 3 != 0,
        brute_force,
        matches: brute_force.map(|b| b == closed_form),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerForm {
    /// `Tr_r(x1 x2^2 + x0 x2^2 + 2 x1^2 x2 + 2 x1)`, `r = 2 mod 3`.
    RTwoModThree,
    /// `Tr_r(2 x2 + x0 x2^2 + 2 x1^2 x2 + 2 x1 x2^2 + x1)`, `r = 1 mod 3`.
    ROneModThree,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceFormReport {
    pub r: u32,
    pub power_form: PowerForm,
    /// Number of `x` checked for `Tr_n(x^d)`.
    pub power_checked: u64,
    /// Packed index of the first failing `x`.
    pub power_counterexample: Option<u64>,
    /// Number of `(x, z)` pairs checked for `Tr_n(x z)`.
    pub product_checked: u64,
    pub product_counterexample: Option<(u64, u64)>,
    pub passed: bool,
}

fn power_rhs(sub: &Subfield, form: PowerForm, [x0, x1, x2]: [u16; 3]) -> u8 {
    let m = |a, b| sub.mul(a, b);
    let s = |k, a| sub.scale(k, a);
    let x2sq = m(x2, x2);
    let x1sq_x2 = m(m(x1, x1), x2);
    let terms = match form {
        PowerForm::RTwoModThree => {
            vec![m(x1, x2sq), m(x0, x2sq), s(2, x1sq_x2), s(2, x1)]
        }
        PowerForm::ROneModThree => {
            vec![s(2, x2), m(x0, x2sq), s(2, x1sq_x2), s(2, m(x1, x2sq)), x1]
        }
    };
    sub.trace(terms.into_iter().fold(0, |a, b| sub.add(a, b)))
}

fn product_rhs(sub: &Subfield, [x0, x1, x2]: [u16; 3], [z0, z1, z2]: [u16; 3]) -> u8 {
    let t = |a, b| sub.scale(2, sub.mul(a, b));
    let y = [t(x2, z2), t(x0, z2), t(x1, z1), t(x2, z0)]
        .into_iter()
        .fold(0, |a, b| sub.add(a, b));
    sub.trace(y)
}

/// Checks the tower expressions for `Tr_n(x^d)` (every `x`) and `Tr_n(x z)`
/// (every `x` against `samples` seeded random `z`). Only `d = 3^r + 2`.
pub fn trace_form_check(
    params: &TernaryParams,
    ctx: &FieldContext,
    samples: usize,
    seed: u64,
) -> Result<TraceFormReport> {
    if params.variant != Variant::R || params.r % 3 == 0 {
        return Err(Error::InvalidParams(
            "trace forms are stated for d = 3^r + 2 with gcd(r, 3) = 1".into(),
        ));
    }
    if params.r > TRACE_FORM_MAX_R {
        return Err(Error::Budget(format!(
            "exhaustive trace-form check is limited to r <= {TRACE_FORM_MAX_R}"
        )));
    }
    let case = params.case(ctx)?;
    if !ctx.has_tables() {
        return Err(Error::TablesAbsent(ctx.order()));
    }
    let tower = Tower::locate(ctx)?;
    let sub = Subfield::new(ctx, params.r);
    let form = if params.r % 3 == 2 { PowerForm::RTwoModThree } else { PowerForm::ROneModThree };
    let tr = ctx.trace_table().expect("tables present");

    let coords: Vec<[u16; 3]> = (0..ctx.order())
        .into_par_iter()
        .map(|x| tower.coords_idx(ctx, x).map(|c| sub.local(ctx, c)))
        .collect();

    let power_counterexample = (0..ctx.order())
        .into_par_iter()
        .find_first(|&x| tr[case.pow_d(x) as usize] != power_rhs(&sub, form, coords[x as usize]));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zs: Vec<u64> = (0..samples).map(|_| rng.gen_range(0..ctx.order())).collect();
    let mut product_counterexample = None;
    for &z in &zs {
        let cz = coords[z as usize];
        let bad = (0..ctx.order()).into_par_iter().find_first(|&x| {
            tr[ctx.mul_idx(x, z) as usize] != product_rhs(&sub, coords[x as usize], cz)
        });
        if let Some(x) = bad {
            product_counterexample = Some((x, z));
            break;
        }
    }
    Ok(TraceFormReport {
        r: params.r,
        power_form: form,
        power_checked: ctx.order(),
        power_counterexample,
        product_checked: ctx.order() * samples as u64,
        product_counterexample,
        passed: power_counterexample.is_none() && product_counterexample.is_none(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    ConjectureSupported,
    ConjectureRefuted,
    /// `r = 1`: no closed form to compare against.
    NoClosedForm,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem4Report {
    pub params: TernaryParams,
    pub conjecture_mode: bool,
    pub closed_form: Option<SpectrumDistribution>,
    /// Computed distribution of `C = S - 1`.
    pub empirical: SpectrumDistribution,
    /// Every computed `S` is a rational integer.
    pub all_rational: bool,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub verdict: Verdict,
}

impl Theorem4Report {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Pass | Verdict::ConjectureSupported | Verdict::NoClosedForm)
    }
}

pub fn verify_theorem4(
    params: &TernaryParams,
    ctx: &FieldContext,
    opts: &SpectrumOptions,
) -> Result<Theorem4Report> {
    let case = params.case(ctx)?;
    let s = spectrum(&case, opts, true)?;
    let all_rational = s.all_rational();
    let empirical = s.shift(-1);
    let closed_form = if params.r >= 2 { Some(theorem4_distribution(params)?) } else { None };
    let matches = closed_form.as_ref().map(|c| all_rational && *c == empirical);
    let verdict = match (matches, params.conjecture_mode) {
        (None, _) => Verdict::NoClosedForm,
        (Some(true), false) => Verdict::Pass,
        (Some(false), false) => Verdict::Fail,
        (Some(true), true) => Verdict::ConjectureSupported,
        (Some(false), true) => Verdict::ConjectureRefuted,
    };
    Ok(Theorem4Report {
        params: *params,
        conjecture_mode: params.conjecture_mode,
        closed_form,
        empirical,
        all_rational,
        matches,
        verdict,
    })
}

/// Sum of the closed-form counts; `3^{3r}` when the table partitions the field.
pub fn theorem4_total(r: u32) -> Result<BigInt> {
    Ok(theorem4_counts(r)?.into_iter().fold(BigInt::zero(), |a, (_, c)| a + c))
}
