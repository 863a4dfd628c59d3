//! Dense polynomials over the prime field F_p, coefficients low to high.
//!
//! Only used while building a field: finding the defining polynomial and
//! multiplying residues to fill the exponent tables.

pub(crate) fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Base-`p` digits of `code`, exactly `len` of them, least significant first.
pub(crate) fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

pub(crate) fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Remainder of `a` modulo `b` (b nonzero).
pub(crate) fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p) as u64;
    let p64 = p as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = r[dr] as u64 * lead_inv % p64;
        let shift = dr - db;
        for (i, &bc) in b.iter().enumerate() {
            let sub = factor * bc as u64 % p64;
            let cur = r[shift + i] as u64;
            r[shift + i] = ((cur + p64 - sub) % p64) as u32;
        }
        r = trim(r);
    }
    r
}

/// `a * b mod modulus`, returned padded to `deg(modulus)` coefficients.
pub(crate) fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let mut r = rem(&prod, modulus, p);
    r.resize(m, 0);
    r
}

pub(crate) fn pow_mod(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut result = vec![0u32; m];
    result[0] = 1;
    let mut b = base.to_vec();
    b.resize(m, 0);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, modulus, p);
        }
        b = mul_mod(&b, &b, modulus, p);
        e >>= 1;
    }
    result
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = digits(code, p, d);
            g.push(1);
            if trim(rem(f, &g, p)).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`:
/// the lower coefficients, read as a base-`p` number with `c_0` least
/// significant, are minimal.
pub(crate) fn smallest_irreducible(p: u32, m: u32) -> Option<Vec<u32>> {
    let count = (p as u64).pow(m);
    (0..count).find_map(|code| {
        let mut f = digits(code, p, m as usize);
        f.push(1);
        is_irreducible(&f, p).then_some(f)
    })
}
