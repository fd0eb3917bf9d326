//! Dense polynomials over GF(p), constant term first.
//!
//! Only what field construction needs: reduction, modular powering, gcd and
//! the irreducibility / primitivity tests.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod_scalar(a, p - 2, p)
}

fn pow_mod_scalar(b: u32, mut e: u32, p: u32) -> u32 {
    let (mut r, p64) = (1u64, p as u64);
    let mut b64 = (b % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b64 % p64;
        }
        b64 = b64 * b64 % p64;
        e >>= 1;
    }
    r as u32
}

/// Remainder of `a` modulo the nonzero polynomial `f`.
pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Poly {
    let f = trim(f.to_vec());
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p) as u64;
    let mut r = trim(a.to_vec());
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] as u64 * lead_inv % p as u64;
        let shift = top - df;
        for (i, &fi) in f.iter().enumerate() {
            let sub = c * fi as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn pow_mod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Poly {
    let mut result = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test for a monic `f` of degree `n >= 1`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    for _ in 0..n / 2 {
        h = pow_mod(&h, p as u64, f, p);
        let g = gcd(f, &sub(&h, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub(crate) fn is_prime(m: u64) -> bool {
    m >= 2 && prime_factors(m) == [m]
}

/// True when the root of the irreducible `f` generates GF(p^n)*, checked by
/// `x^((q-1)/l) != 1` for every prime `l | q-1`.
pub(crate) fn root_is_primitive(f: &[u32], p: u32, order: u64) -> bool {
    let x: Poly = if f.len() == 2 {
        // degree 1: the root is -f0
        vec![(p - f[0] % p) % p]
    } else {
        vec![0, 1]
    };
    if trim(x.clone()).is_empty() {
        return false;
    }
    let one = rem(&[1], f, p);
    prime_factors(order - 1)
        .into_iter()
        .all(|l| pow_mod(&x, (order - 1) / l, f, p) != one)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        // x^2 + 1 over GF(3): -1 is a non-square
        assert!(is_irreducible(&[1, 0, 1], 3));
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // x^3 + x + 2 has root 2 over GF(3)
        assert!(!is_irreducible(&[2, 1, 0, 1], 3));
        assert!(is_irreducible(&[1, 2, 0, 1], 3));
        // product of two irreducible quadratics over GF(2)
        assert!(!is_irreducible(&mul(&[1, 1, 1], &[1, 1, 1], 2), 2));
    }

    #[test]
    fn primitivity_by_factors() {
        assert!(root_is_primitive(&[2, 1, 1], 3, 9));
        assert!(!root_is_primitive(&[1, 0, 1], 3, 9));
        // x^3 + 2x + 2: roots are negatives of primitive roots, order 13
        assert!(!root_is_primitive(&[2, 2, 0, 1], 3, 27));
        assert!(root_is_primitive(&[1, 1], 3, 3));
        assert!(!root_is_primitive(&[2, 1], 3, 3));
    }

    #[test]
    fn factoring() {
        assert_eq!(prime_factors(728), vec![2, 7, 13]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
