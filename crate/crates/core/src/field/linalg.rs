//! Square-matrix inversion over GF(p).

pub(crate) fn invert(mut m: Vec<Vec<u32>>, p: u32) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let p64 = p as u64;
    let mut inv: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col] != 0)?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let s = super::poly::inv_mod(m[col][col], p) as u64;
        for j in 0..n {
            m[col][j] = (m[col][j] as u64 * s % p64) as u32;
            inv[col][j] = (inv[col][j] as u64 * s % p64) as u32;
        }
        for r in 0..n {
            if r == col || m[r][col] == 0 {
                continue;
            }
            let f = m[r][col] as u64;
            for j in 0..n {
                m[r][j] = ((m[r][j] as u64 + p64 - f * m[col][j] as u64 % p64) % p64) as u32;
                inv[r][j] = ((inv[r][j] as u64 + p64 - f * inv[col][j] as u64 % p64) % p64) as u32;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = vec![vec![0, 0, 2], vec![0, 2, 0], vec![2, 0, 2]];
        let inv = invert(m.clone(), 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: u32 = (0..3).map(|k| inv[i][k] * m[k][j]).sum::<u32>() % 3;
                assert_eq!(s, u32::from(i == j));
            }
        }
    }

    #[test]
    fn singular() {
        assert!(invert(vec![vec![1, 2], vec![2, 4]], 5).is_none());
    }
}
