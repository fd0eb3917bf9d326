//! Additive characters, quadratic Gauss sums and quadratic character sums.

use num_bigint::BigInt;
use serde::Serialize;

use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::field::{build_field, FieldContext, FieldElement};

/// Canonical additive character `chi(x) = zeta^{Tr(x)}`.
pub fn additive_char(ctx: &FieldContext, x: FieldElement) -> Result<CycInt> {
    let t = ctx.absolute_trace(x)?;
    Ok(CycInt::zeta_pow(ctx.p(), t as i64))
}

/// Which case of the closed-form Gauss sum applies, and what it predicts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussBranch {
    pub p_mod_4: u32,
    pub s_odd: bool,
    /// `(-1)^{s-1}`.
    pub sign: i32,
    /// Power of `i` in front of `sqrt(q)`: 0 when `p = 1 mod 4`, else `s mod 4`.
    pub i_power: u32,
    /// Predicted `|G|^2`.
    pub magnitude_sq: u64,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussSumResult {
    pub p: u32,
    pub s: u32,
    pub q: u64,
    pub direct: CycInt,
    pub closed_branch: GaussBranch,
    /// `eta(-1)`, so that the exact identity reads `G^2 = eta(-1) q`.
    pub eta_minus_one: i8,
    pub magnitude_ok: bool,
    pub square_ok: bool,
    pub branch_ok: bool,
    #[serde(rename = "match")]
    pub matches: bool,
}

const BRANCH_TOL: f64 = 1e-6;

fn gauss_direct(ctx: &FieldContext) -> CycInt {
    let p = ctx.p();
    let mut counts = vec![0i64; p as usize];
    for x in ctx.elements().skip(1) {
        let t = ctx.absolute_trace(x).expect("own element") as usize;
        counts[t] += ctx.quadratic_character(x).expect("odd p") as i64;
    }
    CycInt::from_full(p, &counts)
}

/// Quadratic Gauss sum over GF(p^s), computed directly and compared with the
/// closed form `(-1)^{s-1} sqrt(q)` (p = 1 mod 4) or `(-1)^{s-1} i^s sqrt(q)`
/// (p = 3 mod 4).
///
/// The magnitude and `G^2 = eta(-1) q` are checked exactly in `Z[zeta_p]`; only
/// the choice of square root is confirmed in floating point.
pub fn gauss_sum(p: u32, s: u32) -> Result<GaussSumResult> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let ctx = build_field(p, s, None)?;
    gauss_sum_in(&ctx)
}

pub fn gauss_sum_in(ctx: &FieldContext) -> Result<GaussSumResult> {
    let (p, s, q) = (ctx.p(), ctx.n(), ctx.order());
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let direct = gauss_direct(ctx);
    let minus_one = ctx.neg(ctx.one())?;
    let eta_minus_one = ctx.quadratic_character(minus_one)?;

    let qi = BigInt::from(q);
    let magnitude_ok = direct.norm_sq() == CycInt::from_int(p, qi.clone());
    let square_ok = direct.pow(2) == CycInt::from_int(p, qi * eta_minus_one as i64);

    let sign = if s % 2 == 1 { 1 } else { -1 };
    let i_power = if p % 4 == 1 { 0 } else { s % 4 };
    let root = (q as f64).sqrt();
    let (re, im) = match i_power {
        0 => (sign as f64 * root, 0.0),
        1 => (0.0, sign as f64 * root),
        2 => (-sign as f64 * root, 0.0),
        _ => (0.0, -sign as f64 * root),
    };
    let z = direct.to_complex()?;
    let branch_ok = (z.re - re).abs() < BRANCH_TOL && (z.im - im).abs() < BRANCH_TOL;

    Ok(GaussSumResult {
        p,
        s,
        q,
        direct,
        closed_branch: GaussBranch {
            p_mod_4: p % 4,
            s_odd: s % 2 == 1,
            sign,
            i_power,
            magnitude_sq: q,
            re,
            im,
        },
        eta_minus_one,
        magnitude_ok,
        square_ok,
        branch_ok,
        matches: magnitude_ok && square_ok && branch_ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticSum {
    pub direct: CycInt,
    /// `chi(a0 - a1^2 (4 a2)^{-1}) eta(a2) G`.
    pub closed: CycInt,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// `sum_c chi(a2 c^2 + a1 c + a0)` over GF(q), with the completed-square
/// closed form alongside. `gauss` is the direct Gauss sum of `ctx`; pass `None`
/// to have it computed.
pub fn quadratic_sum(
    ctx: &FieldContext,
    a2: FieldElement,
    a1: FieldElement,
    a0: FieldElement,
    gauss: Option<&CycInt>,
) -> Result<QuadraticSum> {
    let p = ctx.p();
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if a2.is_zero() {
        return Err(Error::DegenerateQuadratic);
    }
    let mut counts = vec![0u64; p as usize];
    for c in ctx.elements() {
        let quad = ctx.mul(ctx.mul(a2, c)?, c)?;
        let lin = ctx.mul(a1, c)?;
        let f = ctx.add(ctx.add(quad, lin)?, a0)?;
        counts[ctx.absolute_trace(f)? as usize] += 1;
    }
    let direct = CycInt::from_exponent_counts(p, &counts);

    let owned;
    let g = match gauss {
        Some(g) => g,
        None => {
            owned = gauss_direct(ctx);
            &owned
        }
    };
    let four = ctx.element(4 % p as u64)?;
    let shift = ctx.mul(ctx.mul(a1, a1)?, ctx.inv(ctx.mul(four, a2)?)?)?;
    let arg = ctx.sub(a0, shift)?;
    let eta = ctx.quadratic_character(a2)?;
    let closed = (&additive_char(ctx, arg)? * g).scale(&BigInt::from(eta));
    let matches = direct == closed;
    Ok(QuadraticSum { direct, closed, matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn cyc(p: u32, c: &[i64]) -> CycInt {
        CycInt::from_coords(p, c.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    #[test]
    fn additive_character_values() {
        let ctx = build_field(3, 1, None).unwrap();
        assert_eq!(additive_char(&ctx, ctx.zero()).unwrap(), CycInt::one(3));
        assert_eq!(additive_char(&ctx, ctx.one()).unwrap(), cyc(3, &[0, 1]));
    }

    #[test]
    fn orthogonality() {
        for (p, n) in [(3, 2), (3, 3), (5, 2), (2, 4)] {
            let ctx = build_field(p, n, None).unwrap();
            for b in ctx.elements() {
                let total = ctx
                    .elements()
                    .map(|x| additive_char(&ctx, ctx.mul(b, x).unwrap()).unwrap())
                    .fold(CycInt::zero(p), |a, v| &a + &v);
                let expected = if b.is_zero() { ctx.order() as i64 } else { 0 };
                assert_eq!(total, CycInt::from_int(p, expected));
            }
        }
    }

    #[test]
    fn small_gauss_sums() {
        // zeta - zeta^2 = 1 + 2 zeta
        let g3 = gauss_sum(3, 1).unwrap();
        assert_eq!(g3.direct, cyc(3, &[1, 2]));
        assert!(g3.matches);
        let g9 = gauss_sum(3, 2).unwrap();
        assert_eq!(g9.direct, CycInt::from_int(3, 3));
        assert!(g9.matches);
        assert_eq!(gauss_sum(2, 3).unwrap_err(), Error::EvenCharacteristic);
    }

    #[test]
    fn gauss_sum_identities() {
        for (p, s) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2), (3, 4)] {
            let g = gauss_sum(p, s).unwrap();
            assert!(g.magnitude_ok, "{p}^{s}");
            assert!(g.square_ok, "{p}^{s}");
            assert!(g.branch_ok, "{p}^{s}: {:?}", g.direct.to_complex());
        }
    }

    #[test]
    fn quadratic_sum_on_gf3() {
        let ctx = build_field(3, 1, None).unwrap();
        let r = quadratic_sum(&ctx, ctx.one(), ctx.zero(), ctx.zero(), None).unwrap();
        assert_eq!(r.direct, cyc(3, &[1, 2]));
        assert!(r.matches);
        let err = quadratic_sum(&ctx, ctx.zero(), ctx.one(), ctx.zero(), None).unwrap_err();
        assert_eq!(err, Error::DegenerateQuadratic);
    }

    #[test]
    fn pure_square_is_eta_times_gauss() {
        let ctx = build_field(3, 3, None).unwrap();
        let g = gauss_sum_in(&ctx).unwrap().direct;
        for a2 in ctx.elements().skip(1) {
            let r = quadratic_sum(&ctx, a2, ctx.zero(), ctx.zero(), Some(&g)).unwrap();
            let eta = ctx.quadratic_character(a2).unwrap();
            assert_eq!(r.direct, g.scale(&BigInt::from(eta)));
        }
    }

    #[test]
    fn random_instances_match_closed_form() {
        let ctx = build_field(3, 3, None).unwrap();
        let g = gauss_sum_in(&ctx).unwrap().direct;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a2 = ctx.element(rng.gen_range(1..27)).unwrap();
            let a1 = ctx.element(rng.gen_range(0..27)).unwrap();
            let a0 = ctx.element(rng.gen_range(0..27)).unwrap();
            assert!(quadratic_sum(&ctx, a2, a1, a0, Some(&g)).unwrap().matches);
        }
    }

    #[test]
    fn shift_invariance() {
        // f(c + t) = a2 c^2 + (2 a2 t + a1) c + f(t)
        let ctx = build_field(5, 2, None).unwrap();
        let g = gauss_sum_in(&ctx).unwrap().direct;
        let a2 = ctx.element(7).unwrap();
        let a1 = ctx.element(3).unwrap();
        let a0 = ctx.element(11).unwrap();
        let base = quadratic_sum(&ctx, a2, a1, a0, Some(&g)).unwrap().direct;
        for t in ctx.elements() {
            let two_a2t = ctx.mul(ctx.add(a2, a2).unwrap(), t).unwrap();
            let b1 = ctx.add(two_a2t, a1).unwrap();
            let ft = {
                let q = ctx.mul(ctx.mul(a2, t).unwrap(), t).unwrap();
                ctx.add(ctx.add(q, ctx.mul(a1, t).unwrap()).unwrap(), a0).unwrap()
            };
            let shifted = quadratic_sum(&ctx, a2, b1, ft, Some(&g)).unwrap().direct;
            assert_eq!(shifted, base);
        }
    }
}
