//! Dense univariate polynomials over a prime field `F_p`, used for modulus
//! selection and irreducibility testing.

use super::arith::{pow_mod, prime_factors};

/// Coefficients low-to-high, no trailing zeros. The zero polynomial is empty.
pub type Dense = Vec<u64>;

fn trim(mut a: Dense) -> Dense {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Dense {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem(a: &[u64], m: &[u64], p: u64) -> Dense {
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    let mut r = a.to_vec();
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            let shift = top - dm;
            for (j, &mj) in m.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p * p - c * mj % p) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Dense {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Dense {
    let mut acc: Dense = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// `x^(p^k) mod m`.
fn x_pow_p_iter(k: u32, m: &[u64], p: u64) -> Dense {
    let mut h = rem(&[0, 1], m, p);
    for _ in 0..k {
        h = powmod(&h, p, m, p);
    }
    h
}

/// Rabin's test: `m` of degree `n` is irreducible over `F_p` iff
/// `x^(p^n) = x mod m` and `gcd(x^(p^(n/r)) - x, m) = 1` for every prime `r | n`.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let Some(n) = degree(m) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    if sub(&x_pow_p_iter(n as u32, m, p), &x, p).iter().any(|&c| c != 0) {
        return false;
    }
    for r in prime_factors(n as u64) {
        let h = sub(&x_pow_p_iter((n as u64 / r) as u32, m, p), &x, p);
        if degree(&gcd(&h, m, p)) != Some(0) {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `n`: the lower coefficients
/// are scanned in base-`p` counting order, coefficient of `x^0` least significant.
pub fn smallest_irreducible(p: u64, n: u32) -> Dense {
    let mut code: u64 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(n as usize + 1);
        let mut c = code;
        for _ in 0..n {
            coeffs.push(c % p);
            c /= p;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
        code += 1;
    }
}
