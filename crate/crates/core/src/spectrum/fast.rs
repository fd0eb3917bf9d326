//! Fast evaluator: `S_d(z) = sum_x zeta^{<zhat, xhat>} g(x)` with
//! `g(x) = chi(-x^d)`, where `xhat` are power-basis coordinates and `zhat`
//! dual-basis coordinates, so `Tr(z x)` is a dot product over GF(p). That is
//! an `n`-fold radix-`p` DFT over `Z[zeta_p]`.
//!
//! Values live in the group ring `Z[C_p]` as `p` nonnegative counts (one per
//! power of zeta). Multiplying by `zeta^k` is a rotation and every butterfly
//! only adds, so counts stay bounded by `p^n` and fit in `u32`.

use rayon::prelude::*;

use super::DecimationCase;

/// Columns shorter than this (in `u32`s) are never split further.
const MIN_PIECE: usize = 1 << 12;

pub(super) fn all_sums(case: &DecimationCase) -> Vec<u32> {
    let ctx = case.ctx();
    let p = ctx.p() as usize;
    let q = ctx.order() as usize;
    let tr = ctx.trace_table().expect("tables checked by caller");

    let mut data = vec![0u32; q * p];
    data.par_chunks_mut(p).enumerate().for_each(|(x, slot)| {
        let t = tr[case.pow_d(x as u64) as usize] as usize;
        slot[(p - t) % p] = 1;
    });

    let mut stride = 1usize;
    for _ in 0..ctx.n() {
        stage(&mut data, p, stride);
        stride *= p;
    }
    data
}

fn stage(data: &mut [u32], p: usize, stride: usize) {
    let col_len = stride * p;
    let block_len = col_len * p;
    let blocks = data.len() / block_len;
    if blocks >= rayon::current_num_threads() * 4 || col_len <= MIN_PIECE {
        data.par_chunks_mut(block_len).for_each(|block| {
            let mut cols: Vec<&mut [u32]> = block.chunks_mut(col_len).collect();
            butterflies(&mut cols, p);
        });
        return;
    }
    // Few large blocks: cut each column into aligned pieces and hand the
    // matching pieces of all p columns to one task.
    let pieces = (col_len / MIN_PIECE).clamp(1, rayon::current_num_threads() * 8);
    let piece = (col_len / pieces).div_ceil(p) * p;
    for block in data.chunks_mut(block_len) {
        let mut groups: Vec<Vec<&mut [u32]>> = Vec::new();
        for col in block.chunks_mut(col_len) {
            for (g, ch) in col.chunks_mut(piece).enumerate() {
                if groups.len() <= g {
                    groups.push(Vec::with_capacity(p));
                }
                groups[g].push(ch);
            }
        }
        groups.into_par_iter().for_each(|mut g| butterflies(&mut g, p));
    }
}

/// Radix-`p` butterflies across `p` equally long columns:
/// `w_j = sum_k zeta^{jk} v_k` for every element offset.
fn butterflies(cols: &mut [&mut [u32]], p: usize) {
    let len = cols[0].len();
    if p == 2 {
        let (left, right) = cols.split_at_mut(1);
        let (a, b) = (&mut *left[0], &mut *right[0]);
        for off in (0..len).step_by(2) {
            let (a0, a1, b0, b1) = (a[off], a[off + 1], b[off], b[off + 1]);
            a[off] = a0 + b0;
            a[off + 1] = a1 + b1;
            // zeta = -1 swaps the two counts
            b[off] = a0 + b1;
            b[off + 1] = a1 + b0;
        }
        return;
    }
    let mut v = [[0u32; 8]; 8];
    for off in (0..len).step_by(p) {
        for k in 0..p {
            v[k][..p].copy_from_slice(&cols[k][off..off + p]);
        }
        for (j, col) in cols.iter_mut().enumerate() {
            let out = &mut col[off..off + p];
            out.fill(0);
            for (k, vk) in v.iter().enumerate().take(p) {
                let shift = j * k % p;
                for e in 0..p {
                    // zeta^shift * v_k moves count e to e + shift
                    out[(e + shift) % p] += vk[e];
                }
            }
        }
    }
}
