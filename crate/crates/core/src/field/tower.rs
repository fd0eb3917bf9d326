//! GF(3^{3r}) as a cubic extension of GF(3^r) generated by a root `a` of
//! `t^3 + 2t + 1`, for `gcd(r, 3) = 1`.

use super::{linalg, FieldContext, FieldElement};
use crate::error::{Error, Result};

/// Coordinates of `x = x0 + x1 a + x2 a^2` with every `xi` in GF(3^r).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TowerCoords {
    pub x0: FieldElement,
    pub x1: FieldElement,
    pub x2: FieldElement,
}

#[derive(Clone, Debug)]
pub struct Tower {
    r: u32,
    a: [u64; 3],
    /// Dual of `{1, a, a^2}` under `Tr_r^n`.
    dual: [u64; 3],
}

impl Tower {
    /// Finds `a` inside the GF(27) subfield; among the three roots the one with
    /// the smallest discrete log wins.
    pub fn locate(ctx: &FieldContext) -> Result<Tower> {
        let (p, n) = (ctx.p(), ctx.n());
        if p != 3 || n % 3 != 0 || (n / 3) % 3 == 0 {
            return Err(Error::TowerParams { p, n });
        }
        let r = n / 3;
        let q1 = ctx.order() - 1;
        let step = q1 / 26;
        let g = ctx.generator().index();
        let cubic = |t: u64| {
            let t3 = ctx.pow_idx(t, 3);
            let two_t = ctx.add_idx(t, t);
            ctx.add_idx(ctx.add_idx(t3, two_t), 1)
        };
        let a = (0..26u64)
            .map(|k| ctx.pow_idx(g, k * step))
            .find(|&t| cubic(t) == 0)
            .ok_or(Error::TowerRootMissing)?;
        let powers = [1, a, ctx.mul_idx(a, a)];

        let gram: Vec<Vec<u32>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| ctx.relative_trace_idx(ctx.mul_idx(powers[i], powers[j]), n, r) as u32)
                    .collect()
            })
            .collect();
        // Tr_r^n of an element of GF(27) lands in GF(3), packed as 0, 1 or 2.
        if gram.iter().flatten().any(|&v| v >= 3) {
            return Err(Error::Internal("tower Gram matrix left GF(3)".into()));
        }
        let inv = linalg::invert(gram, 3)
            .ok_or_else(|| Error::Internal("singular tower Gram matrix".into()))?;
        let mut dual = [0u64; 3];
        for (j, row) in inv.iter().enumerate() {
            let mut acc = 0;
            for (k, &c) in row.iter().enumerate() {
                for _ in 0..c {
                    acc = ctx.add_idx(acc, powers[k]);
                }
            }
            dual[j] = acc;
        }
        Ok(Tower { r, a: powers, dual })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn a(&self, ctx: &FieldContext) -> FieldElement {
        ctx.elem_unchecked(self.a[1])
    }

    pub fn coords(&self, ctx: &FieldContext, x: FieldElement) -> Result<TowerCoords> {
        let x = ctx.own(x)?;
        let [x0, x1, x2] = self.coords_idx(ctx, x);
        Ok(TowerCoords {
            x0: ctx.elem_unchecked(x0),
            x1: ctx.elem_unchecked(x1),
            x2: ctx.elem_unchecked(x2),
        })
    }

    pub(crate) fn coords_idx(&self, ctx: &FieldContext, x: u64) -> [u64; 3] {
        let n = ctx.n();
        self.dual
            .map(|d| ctx.relative_trace_idx(ctx.mul_idx(x, d), n, self.r))
    }

    pub fn recombine(&self, ctx: &FieldContext, c: &TowerCoords) -> Result<FieldElement> {
        let parts = [ctx.own(c.x0)?, ctx.own(c.x1)?, ctx.own(c.x2)?];
        Ok(ctx.elem_unchecked(self.recombine_idx(ctx, parts)))
    }

    pub(crate) fn recombine_idx(&self, ctx: &FieldContext, parts: [u64; 3]) -> u64 {
        parts
            .iter()
            .zip(&self.a)
            .fold(0, |acc, (&xi, &ai)| ctx.add_idx(acc, ctx.mul_idx(xi, ai)))
    }
}

/// One-shot convenience wrapper around [`Tower::locate`] and [`Tower::coords`].
pub fn tower_coords(ctx: &FieldContext, x: FieldElement) -> Result<TowerCoords> {
    Tower::locate(ctx)?.coords(ctx, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;

    #[test]
    fn rejects_bad_parameters() {
        let ctx = build_field(3, 9, None).unwrap();
        assert!(matches!(Tower::locate(&ctx), Err(Error::TowerParams { .. })));
        let ctx = build_field(2, 6, None).unwrap();
        assert!(matches!(Tower::locate(&ctx), Err(Error::TowerParams { .. })));
    }

    #[test]
    fn root_and_relative_traces() {
        let ctx = build_field(3, 6, None).unwrap();
        let tower = Tower::locate(&ctx).unwrap();
        let a = tower.a(&ctx);
        let t = |x: FieldElement| ctx.trace(x, 2).unwrap().index();
        assert_eq!(t(ctx.one()), 0);
        assert_eq!(t(a), 0);
        assert_eq!(t(ctx.mul(a, a).unwrap()), 2);
        let a3 = ctx.pow(a, 3).unwrap();
        let rhs = ctx.add(ctx.add(a3, ctx.add(a, a).unwrap()).unwrap(), ctx.one()).unwrap();
        assert_eq!(rhs, ctx.zero());
        assert!(ctx.is_in_subfield(a, 3).unwrap());
    }

    #[test]
    fn smallest_log_root_is_chosen() {
        let ctx = build_field(3, 6, None).unwrap();
        let tower = Tower::locate(&ctx).unwrap();
        let chosen = ctx.discrete_log(tower.a(&ctx)).unwrap();
        for x in ctx.elements().skip(1) {
            let x3 = ctx.pow(x, 3).unwrap();
            let v = ctx.add(ctx.add(x3, ctx.add(x, x).unwrap()).unwrap(), ctx.one()).unwrap();
            if v.is_zero() {
                assert!(ctx.discrete_log(x).unwrap() >= chosen);
            }
        }
    }

    #[test]
    fn special_coordinates() {
        let ctx = build_field(3, 6, None).unwrap();
        let tower = Tower::locate(&ctx).unwrap();
        let z = tower.coords(&ctx, ctx.zero()).unwrap();
        assert_eq!((z.x0, z.x1, z.x2), (ctx.zero(), ctx.zero(), ctx.zero()));
        let a = tower.a(&ctx);
        let a2 = tower.coords(&ctx, ctx.mul(a, a).unwrap()).unwrap();
        assert_eq!((a2.x0, a2.x1, a2.x2), (ctx.zero(), ctx.zero(), ctx.one()));
    }

    #[test]
    fn round_trip_all_of_gf3_6() {
        let ctx = build_field(3, 6, None).unwrap();
        let tower = Tower::locate(&ctx).unwrap();
        let mut seen = std::collections::HashSet::new();
        for x in ctx.elements() {
            let c = tower.coords(&ctx, x).unwrap();
            for xi in [c.x0, c.x1, c.x2] {
                assert!(ctx.is_in_subfield(xi, 2).unwrap());
            }
            assert_eq!(tower.recombine(&ctx, &c).unwrap(), x);
            assert!(seen.insert((c.x0, c.x1, c.x2)));
        }
        assert_eq!(seen.len(), 729);
    }

    #[test]
    fn convenience_wrapper() {
        let ctx = build_field(3, 3, None).unwrap();
        let x = ctx.generator();
        let c = tower_coords(&ctx, x).unwrap();
        assert_eq!(Tower::locate(&ctx).unwrap().recombine(&ctx, &c).unwrap(), x);
    }
}
