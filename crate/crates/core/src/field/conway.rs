//! Conway polynomials for the small characteristics supported by default.
//!
//! Each entry is `(p, n, coefficients)` with the constant term first and the
//! leading 1 included. Covers every `p^n <= 2^26` for `p` in {2, 3, 5, 7}.

pub(crate) const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 14, &[1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, 15, &[1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 16, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 17, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 18, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
    (2, 19, &[1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 20, &[1, 1, 0, 0, 1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 21, &[1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 22, &[1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 23, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 24, &[1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 25, &[1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 26, &[1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (3, 7, &[1, 0, 2, 0, 0, 0, 0, 1]),
    (3, 8, &[2, 2, 2, 0, 1, 2, 0, 0, 1]),
    (3, 9, &[1, 1, 2, 2, 0, 0, 0, 0, 0, 1]),
    (3, 10, &[2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1]),
    (3, 11, &[1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 12, &[2, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1]),
    (3, 13, &[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 14, &[2, 0, 1, 2, 0, 1, 2, 1, 1, 2, 0, 0, 0, 0, 1]),
    (3, 15, &[1, 1, 2, 0, 0, 1, 0, 0, 2, 0, 0, 0, 0, 0, 0, 1]),
    (3, 16, &[2, 1, 2, 2, 2, 0, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (5, 5, &[3, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 0, 1, 4, 1, 0, 1]),
    (5, 7, &[3, 3, 0, 0, 0, 0, 0, 1]),
    (5, 8, &[2, 4, 3, 0, 1, 0, 0, 0, 1]),
    (5, 9, &[3, 1, 0, 2, 0, 0, 0, 0, 0, 1]),
    (5, 10, &[2, 1, 4, 2, 3, 3, 0, 0, 0, 0, 1]),
    (5, 11, &[3, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
    (7, 5, &[4, 1, 0, 0, 0, 1]),
    (7, 6, &[3, 6, 4, 5, 1, 0, 1]),
    (7, 7, &[4, 6, 0, 0, 0, 0, 0, 1]),
    (7, 8, &[3, 2, 6, 4, 0, 0, 0, 0, 1]),
    (7, 9, &[4, 6, 0, 1, 6, 0, 0, 0, 0, 1]),];

/// Default primitive polynomial for GF(p^n), if the table has one.
pub fn default_polynomial(p: u32, n: u32) -> Option<&'static [u32]> {
    CONWAY
        .iter()
        .find(|(tp, tn, _)| *tp == p && *tn == n)
        .map(|(_, _, c)| *c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_monic_and_complete() {
        for &(p, n, c) in CONWAY {
            assert_eq!(c.len(), n as usize + 1);
            assert_eq!(*c.last().unwrap(), 1);
            assert!(c.iter().all(|&x| x < p));
        }
        for p in [2u64, 3, 5, 7] {
            let mut n = 1;
            while p.pow(n) <= 1 << 26 {
                assert!(default_polynomial(p as u32, n).is_some(), "{p}^{n}");
                n += 1;
            }
        }
    }

    #[test]
    fn known_entries() {
        assert_eq!(default_polynomial(3, 2), Some(&[2, 2, 1][..]));
        assert_eq!(default_polynomial(3, 3), Some(&[1, 2, 0, 1][..]));
        assert_eq!(default_polynomial(2, 4), Some(&[1, 1, 0, 0, 1][..]));
        assert_eq!(default_polynomial(11, 2), None);
    }
}
