use num_bigint::BigInt;
use serde::Serialize;

use super::{b3_count, spectrum, DecimationCase, SpectrumDistribution, SpectrumOptions};
use crate::cyclo::CycInt;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub expected: CycInt,
    pub actual: CycInt,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
}

/// Power sums of `S_d(z)` over every `z`, with the identities
/// `sum S = q`, `sum |S|^2 = q^2`, `sum S^2 = q^2` and `sum S^3 = q^2 b3`.
#[derive(Clone, Debug, Serialize)]
pub struct MomentReport {
    pub m1: CycInt,
    pub m2_plain: CycInt,
    pub m2_abs: CycInt,
    pub m3: CycInt,
    pub b3: u64,
    pub checks: Vec<IdentityCheck>,
}

impl MomentReport {
    /// No identity failed (not-applicable ones are fine).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn verify_moments(case: &DecimationCase, opts: &SpectrumOptions) -> Result<MomentReport> {
    moments_of(case, &spectrum(case, opts, true)?)
}

/// Moment report from an already computed spectrum of `case` (zero included).
pub fn moments_of(case: &DecimationCase, dist: &SpectrumDistribution) -> Result<MomentReport> {
    let p = case.ctx().p();
    let q = BigInt::from(case.ctx().order());
    if !dist.includes_zero() || dist.total() != case.ctx().order() || dist.p() != p {
        return Err(Error::InvalidParams("moments need the full spectrum including z = 0".into()));
    }
    let m1 = dist.power_sum(1);
    let m2_plain = dist.power_sum(2);
    let m2_abs = dist.abs_square_sum();
    let m3 = dist.power_sum(3);
    let b3 = b3_count(case);

    let coprime = case.gcd() == 1;
    let congruent = case.congruent_one();
    let q2 = &q * &q;
    let check = |name, expected: BigInt, actual: &CycInt, applicable: Option<&'static str>| {
        let expected = CycInt::from_int(p, expected);
        let status = match applicable {
            Some(_) => CheckStatus::NotApplicable,
            None if &expected == actual => CheckStatus::Pass,
            None => CheckStatus::Fail,
        };
        IdentityCheck { name, expected, actual: actual.clone(), status, reason: applicable }
    };
    let gcd_gate = (!coprime).then_some("gcd(d, p^n - 1) > 1");
    let cong_gate = gcd_gate.or((!congruent).then_some("d is not 1 mod p - 1"));
    let checks = vec![
        check("first", q.clone(), &m1, gcd_gate),
        check("second_abs", q2.clone(), &m2_abs, gcd_gate),
        check("second_plain", q2.clone(), &m2_plain, cong_gate),
        check("third", q2 * b3, &m3, cong_gate),
    ];
    Ok(MomentReport { m1, m2_plain, m2_abs, m3, b3, checks })
}
