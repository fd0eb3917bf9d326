//! Small lookup tables for a subfield GF(p^r) sitting inside a tabled field.

use super::FieldContext;

/// Elements are addressed locally: 0 is zero, `1 + k` is `h^k` where
/// `h = g^{(q-1)/(p^r-1)}` generates the subfield.
pub(crate) struct Subfield {
    size: usize,
    step: u64,
    global: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    trace: Vec<u8>,
}

impl Subfield {
    /// Needs log tables on `ctx`, `r | n` and `p^r <= 2^16`.
    pub(crate) fn new(ctx: &FieldContext, r: u32) -> Subfield {
        assert!(ctx.has_tables() && ctx.n() % r == 0);
        let size = (ctx.p() as u64).pow(r) as usize;
        assert!(size <= 1 << 16);
        let step = (ctx.order() - 1) / (size as u64 - 1);
        let h = ctx.pow_idx(ctx.generator().index(), step);
        let mut global = vec![0u64; size];
        let mut y = 1;
        for slot in global.iter_mut().skip(1) {
            *slot = y;
            y = ctx.mul_idx(y, h);
        }
        let mut sub = Subfield {
            size,
            step,
            global,
            add: vec![0; size * size],
            mul: vec![0; size * size],
            trace: vec![0; size],
        };
        for a in 0..size {
            for b in 0..size {
                let (ga, gb) = (sub.global[a], sub.global[b]);
                sub.add[a * size + b] = sub.local(ctx, ctx.add_idx(ga, gb));
                sub.mul[a * size + b] = sub.local(ctx, ctx.mul_idx(ga, gb));
            }
            // Tr_1^r lands in GF(p), whose packed indices are the residues
            sub.trace[a] = ctx.relative_trace_idx(sub.global[a], r, 1) as u8;
        }
        sub
    }

    #[cfg(test)]
    pub(crate) fn size(&self) -> usize {
        self.size
    }

    /// Local index of `y`; `y` must lie in the subfield.
    pub(crate) fn local(&self, ctx: &FieldContext, y: u64) -> u16 {
        if y == 0 {
            return 0;
        }
        let l = ctx.log_table().expect("tables")[y as usize] as u64;
        debug_assert_eq!(l % self.step, 0, "element outside the subfield");
        (l / self.step + 1) as u16
    }

    #[cfg(test)]
    pub(crate) fn global(&self, a: u16) -> u64 {
        self.global[a as usize]
    }

    pub(crate) fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.size + b as usize]
    }

    pub(crate) fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size + b as usize]
    }

    /// `k a` for a small integer `k`.
    pub(crate) fn scale(&self, k: u32, a: u16) -> u16 {
        (0..k).fold(0, |acc, _| self.add(acc, a))
    }

    /// `Tr_1^r(a)` as a residue.
    pub(crate) fn trace(&self, a: u16) -> u8 {
        self.trace[a as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;

    #[test]
    fn tables_agree_with_field() {
        let ctx = build_field(3, 6, None).unwrap();
        let sub = Subfield::new(&ctx, 2);
        assert_eq!(sub.size(), 9);
        for a in 0..9u16 {
            let ga = sub.global(a);
            assert!(ctx.in_subfield_idx(ga, 2));
            assert_eq!(sub.local(&ctx, ga), a);
            assert_eq!(sub.trace(a) as u64, ctx.relative_trace_idx(ga, 2, 1));
            for b in 0..9u16 {
                let gb = sub.global(b);
                assert_eq!(sub.global(sub.add(a, b)), ctx.add_idx(ga, gb));
                assert_eq!(sub.global(sub.mul(a, b)), ctx.mul_idx(ga, gb));
            }
        }
        assert_eq!(sub.global(sub.scale(2, 1)), ctx.neg_idx(1));
    }
}
