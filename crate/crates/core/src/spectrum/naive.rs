//! Reference evaluator: every `S_d(z)` as a cyclic correlation in the log
//! domain. With `z = g^l` and `x = g^k`,
//! `S_d(z) = 1 + sum_k zeta^{Tr(g^{l+k}) - Tr(g^{kd})}`.

use rayon::prelude::*;

use super::DecimationCase;

pub(super) fn all_sums(case: &DecimationCase) -> Vec<u32> {
    let ctx = case.ctx();
    let p = ctx.p() as usize;
    let q1 = (ctx.order() - 1) as usize;
    let exp = ctx.exp_table().expect("tables checked by caller");
    let log = ctx.log_table().expect("tables checked by caller");
    let tr = ctx.trace_table().expect("tables checked by caller");

    let tr_log: Vec<u8> = exp.iter().map(|&e| tr[e as usize]).collect();
    let d = (case.d() % q1 as u64) as usize;
    // (p - Tr(g^{kd})) mod p
    let neg_trd: Vec<u8> = (0..q1)
        .map(|k| ((p - tr[exp[k * d % q1] as usize] as usize) % p) as u8)
        .collect();

    let mut out = vec![0u32; ctx.order() as usize * p];
    out.par_chunks_mut(p).enumerate().for_each(|(z, slot)| {
        let mut acc = vec![0u32; 2 * p];
        if z == 0 {
            // x = 0 plus chi(-x^d) over nonzero x
            acc[0] += 1;
            for &e in &neg_trd {
                acc[e as usize] += 1;
            }
        } else {
            acc[0] += 1;
            let l = log[z] as usize;
            let (head, tail) = neg_trd.split_at(q1 - l);
            for (&a, &b) in tr_log[l..].iter().zip(head) {
                acc[(a + b) as usize] += 1;
            }
            for (&a, &b) in tr_log[..l].iter().zip(tail) {
                acc[(a + b) as usize] += 1;
            }
        }
        for e in 0..p {
            slot[e] = acc[e] + acc[e + p];
        }
    });
    out
}
