use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

/// One period `a_t = Tr(beta alpha^t)`, `t = 0..p^n - 2`, of the m-sequence
/// defined by the context's primitive element `alpha`.
pub fn msequence(ctx: &FieldContext, beta: FieldElement) -> Result<Vec<u32>> {
    let beta = ctx.own(beta)?;
    if beta == 0 {
        return Err(Error::ZeroBeta);
    }
    let g = ctx.generator().index();
    let mut out = Vec::with_capacity((ctx.order() - 1) as usize);
    let mut x = beta;
    for _ in 1..ctx.order() {
        out.push(ctx.abs_trace_idx(x));
        x = ctx.mul_idx(x, g);
    }
    Ok(out)
}

/// `b_t = a_{dt}` with indices taken modulo the period.
pub fn decimate(seq: &[u32], d: u64) -> Vec<u32> {
    let len = seq.len() as u64;
    (0..len).map(|t| seq[((t as u128 * d as u128) % len as u128) as usize]).collect()
}

/// `sum_t zeta^{a_{t + tau} - b_t}` over one period.
pub fn cross_correlation_direct(p: u32, a: &[u32], b: &[u32], tau: u64) -> Result<CycInt> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let mut counts = vec![0u64; p as usize];
    if a.is_empty() {
        return Ok(CycInt::zero(p));
    }
    let len = a.len();
    let shift = (tau % len as u64) as usize;
    for t in 0..len {
        let e = (a[(t + shift) % len] + p - b[t] % p) % p;
        counts[e as usize] += 1;
    }
    Ok(CycInt::from_exponent_counts(p, &counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use crate::spectrum::{weil_sum, DecimationCase};

    #[test]
    fn balance_property() {
        for (p, n) in [(2, 5), (3, 3), (5, 2), (3, 4)] {
            let ctx = build_field(p, n, None).unwrap();
            let s = msequence(&ctx, ctx.generator()).unwrap();
            let q = ctx.order();
            assert_eq!(s.len() as u64, q - 1);
            let per = q / p as u64;
            for sym in 0..p {
                let c = s.iter().filter(|&&v| v == sym).count() as u64;
                assert_eq!(c, if sym == 0 { per - 1 } else { per });
            }
        }
    }

    #[test]
    fn gf4_sequence() {
        let ctx = build_field(2, 2, None).unwrap();
        let s = msequence(&ctx, ctx.one()).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.iter().filter(|&&v| v == 0).count(), 1);
    }

    #[test]
    fn period_shift() {
        let ctx = build_field(3, 3, None).unwrap();
        let beta = ctx.element(5).unwrap();
        let wrapped = ctx.mul(ctx.pow(ctx.generator(), 26).unwrap(), beta).unwrap();
        assert_eq!(msequence(&ctx, beta).unwrap(), msequence(&ctx, wrapped).unwrap());
        assert_eq!(msequence(&ctx, ctx.zero()).unwrap_err(), Error::ZeroBeta);
    }

    #[test]
    fn trivial_correlations() {
        let a = vec![0, 1, 2, 2, 1];
        assert_eq!(cross_correlation_direct(3, &a, &a, 0).unwrap(), CycInt::from_int(3, 5));
        let z = vec![0; 7];
        assert_eq!(cross_correlation_direct(2, &z, &z, 3).unwrap(), CycInt::from_int(2, 7));
        assert_eq!(
            cross_correlation_direct(3, &a, &z, 0).unwrap_err(),
            Error::LengthMismatch(5, 7)
        );
    }

    #[test]
    fn correlation_is_weil_sum_minus_one() {
        let ctx = build_field(3, 3, None).unwrap();
        let case = DecimationCase::new(&ctx, 5).unwrap();
        let a = msequence(&ctx, ctx.one()).unwrap();
        let b = decimate(&a, 5);
        for tau in 0..26 {
            let c = cross_correlation_direct(3, &a, &b, tau).unwrap();
            let z = ctx.pow(ctx.generator(), tau as i64).unwrap();
            let s = weil_sum(&case, z).unwrap();
            assert_eq!(&c + &CycInt::one(3), s, "tau = {tau}");
        }
    }
}
