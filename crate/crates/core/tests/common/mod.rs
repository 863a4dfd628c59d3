//! Reference arithmetic for tests: GF(p^m) as coefficient vectors reduced
//! by schoolbook division, with no tables. Slow but obviously correct.

#![allow(dead_code)]

use mds_selfdual::{FieldElement, FiniteField};

pub type Coeffs = Vec<u64>;

#[derive(Clone, Debug)]
pub struct NaiveField {
    pub p: u64,
    pub m: usize,
    /// Monic, low to high, length m+1.
    pub modulus: Vec<u64>,
}

impl NaiveField {
    pub fn new(p: u64, modulus: Vec<u64>) -> NaiveField {
        let m = modulus.len() - 1;
        assert_eq!(modulus[m], 1, "modulus must be monic");
        NaiveField { p, m, modulus }
    }

    /// Same defining polynomial as `f`.
    pub fn mirror(f: &FiniteField) -> NaiveField {
        NaiveField::new(f.characteristic() as u64, f.defining_poly().iter().map(|&c| c as u64).collect())
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn zero(&self) -> Coeffs {
        vec![0; self.m]
    }

    pub fn one(&self) -> Coeffs {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    pub fn int(&self, n: i64) -> Coeffs {
        let mut v = self.zero();
        v[0] = n.rem_euclid(self.p as i64) as u64;
        v
    }

    pub fn is_zero(&self, x: &[u64]) -> bool {
        x.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Coeffs {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.p).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Coeffs {
        x.iter().map(|a| (self.p - a) % self.p).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Coeffs {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Coeffs {
        let p = self.p;
        let mut prod = vec![0u64; 2 * self.m];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        for d in (self.m..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (k, &mk) in self.modulus.iter().enumerate() {
                let idx = d - self.m + k;
                prod[idx] = (prod[idx] + p * p - c * mk % p) % p;
            }
        }
        prod.truncate(self.m);
        prod
    }

    pub fn pow(&self, x: &[u64], mut e: u64) -> Coeffs {
        let mut base = x.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Euler's criterion: +1 iff x^((q-1)/2) = 1.
    pub fn euler(&self, x: &[u64]) -> i8 {
        assert!(!self.is_zero(x));
        if self.pow(x, (self.q() - 1) / 2) == self.one() {
            1
        } else {
            -1
        }
    }

    pub fn order(&self, x: &[u64]) -> u64 {
        let one = self.one();
        let mut y = x.to_vec();
        let mut k = 1;
        while y != one {
            y = self.mul(&y, x);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> Vec<Coeffs> {
        (0..self.q())
            .map(|mut code| {
                (0..self.m)
                    .map(|_| {
                        let d = code % self.p;
                        code /= self.p;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    pub fn inv(&self, x: &[u64]) -> Coeffs {
        self.pow(x, self.q() - 2)
    }
}

pub fn to_naive(f: &FiniteField, x: FieldElement) -> Coeffs {
    f.to_coeffs(x).into_iter().map(u64::from).collect()
}

/// True iff the monic polynomial has no monic factor of degree 1..=deg/2,
/// by trial division against every candidate.
pub fn irreducible_by_search(p: u64, poly: &[u64]) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut div: Vec<u64> = (0..d).map(|i| (code / p.pow(i as u32)) % p).collect();
            div.push(1);
            if poly_rem(p, poly, &div).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(p: u64, num: &[u64], den: &[u64]) -> Vec<u64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    for i in (dd..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        for (k, &dk) in den.iter().enumerate() {
            let idx = i - dd + k;
            r[idx] = (r[idx] + p * p - c * dk % p) % p;
        }
    }
    r.truncate(dd);
    r
}

/// Rank over GF(p^m) of rows given as naive elements.
#[allow(clippy::needless_range_loop)]
pub fn naive_rank(nf: &NaiveField, mut rows: Vec<Vec<Coeffs>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !nf.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = nf.inv(&rows[rank][col]);
        for r in 0..rows.len() {
            if r == rank || nf.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = nf.mul(&rows[r][col], &inv);
            for c in col..ncols {
                let t = nf.mul(&factor, &rows[rank][c]);
                rows[r][c] = nf.sub(&rows[r][c], &t);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Odd prime powers up to `limit`, as (p, m).
pub fn odd_prime_powers(limit: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in (3..=limit).step_by(2) {
        if !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            continue;
        }
        let mut q = p;
        let mut m = 1;
        while q <= limit {
            out.push((p, m));
            q *= p;
            m += 1;
        }
    }
    out.sort_by_key(|&(p, m)| p.pow(m));
    out
}

/// Every valid `(a, b, s, t)` over a field of square order.
pub fn all_tuples(field: &std::sync::Arc<FiniteField>) -> Vec<mds_selfdual::ConstructionParams> {
    let r = field.sqrt_order().expect("square order") as u64;
    let mut out = Vec::new();
    for (a, b) in mds_selfdual::enumeration::valid_pairs(r).unwrap() {
        let g = mds_selfdual::arith::gcd(a, b);
        for s in 1..=a / g {
            for t in 1..=b / g {
                out.push(mds_selfdual::ConstructionParams::new(field.clone(), a, b, s, t).unwrap());
            }
        }
    }
    out
}
