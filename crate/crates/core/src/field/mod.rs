//! Arithmetic in GF(p^m), p odd, via discrete logarithms.
//!
//! Every nonzero element is stored as its exponent with respect to a fixed
//! primitive element θ. Multiplication, inversion and powers are exponent
//! arithmetic modulo q-1; addition goes through a Zech logarithm table
//! `Z(e) = log_θ(1 + θ^e)`. The quadratic character and square roots then
//! fall out of exponent parity.
//!
//! Fields are built deterministically: the defining polynomial is the
//! smallest monic irreducible of degree m (lower coefficients read as a
//! base-p number, constant term least significant) and θ is the first
//! primitive element in ascending order of that same encoding.

mod prime_poly;

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 18;

const ZERO_EXP: u32 = u32::MAX;

/// An element of GF(q): zero, or θ^e with `0 <= e < q-1`.
///
/// Plain data; it only has meaning together with the [`FiniteField`] that
/// produced it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(ZERO_EXP);
    pub const ONE: FieldElement = FieldElement(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == ZERO_EXP
    }

    /// θ^e without reducing e; callers guarantee `e < q-1`.
    #[inline]
    pub(crate) const fn raw(e: u32) -> FieldElement {
        FieldElement(e)
    }

    /// The discrete log, or `None` for zero.
    #[inline]
    pub fn exponent(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent() {
            None => write!(f, "0"),
            Some(e) => write!(f, "θ^{e}"),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Value of the quadratic character on a nonzero element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Immutable field context. Cheap to share behind an `Arc`.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    /// Monic, low to high, length m+1.
    modulus: Vec<u32>,
    /// Encoding of θ as a residue polynomial.
    theta: u32,
    /// exp[e] = encoding of θ^e.
    exp: Vec<u32>,
    /// log[encoding] = e, with log[0] = ZERO_EXP.
    log: Vec<u32>,
    /// zech[e] = log(1 + θ^e), ZERO_EXP when 1 + θ^e = 0.
    zech: Vec<u32>,
    sqrt_order: Option<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("theta", &self.theta_coeffs())
            .finish()
    }
}

/// Debug dump of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub p: u32,
    pub m: u32,
    pub q: u32,
    /// Defining polynomial, coefficients low to high (monic).
    pub defining_poly: Vec<u32>,
    /// θ as a residue polynomial, coefficients low to high.
    pub theta: Vec<u32>,
    /// Square root of q when q is a perfect square.
    pub r: Option<u32>,
}

impl FiniteField {
    /// Builds GF(p^m). The order must not exceed [`MAX_ORDER`].
    pub fn new(p: u64, m: u32) -> Result<FiniteField> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = match arith::checked_pow(p, m) {
            Some(q) if q <= MAX_ORDER => q,
            _ => return Err(Error::OrderTooLarge { p, m }),
        };
        let p = p as u32;
        let q = q as u32;
        let modulus = prime_poly::smallest_irreducible(p, m).ok_or_else(|| {
            Error::Internal(format!("no irreducible polynomial of degree {m} over F_{p}"))
        })?;

        let n1 = (q - 1) as u64;
        let cofactors: Vec<u64> = arith::prime_factors(n1).into_iter().map(|l| n1 / l).collect();
        let is_primitive = |c: &[u32]| {
            cofactors.iter().all(|&e| {
                let x = prime_poly::pow_mod(c, e, &modulus, p);
                !(x[0] == 1 && x[1..].iter().all(|&d| d == 0))
            })
        };
        let theta = (1..q)
            .map(|code| prime_poly::digits(code as u64, p, m as usize))
            .find(|c| is_primitive(c))
            .ok_or_else(|| Error::Internal("no primitive element found".into()))?;

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![ZERO_EXP; q as usize];
        let mut cur = vec![0u32; m as usize];
        cur[0] = 1;
        for e in 0..q - 1 {
            let code = prime_poly::encode(&cur, p);
            if log[code as usize] != ZERO_EXP {
                return Err(Error::Internal(format!("θ has order {e}, not {}", q - 1)));
            }
            log[code as usize] = e;
            exp.push(code);
            cur = prime_poly::mul_mod(&cur, &theta, &modulus, p);
        }
        if !(cur[0] == 1 && cur[1..].iter().all(|&d| d == 0)) {
            return Err(Error::Internal("θ^(q-1) != 1".into()));
        }

        let zech = exp
            .iter()
            .map(|&code| {
                // 1 + θ^e only touches the constant digit.
                let c0 = code % p;
                let bumped = if c0 == p - 1 { code - (p - 1) } else { code + 1 };
                log[bumped as usize]
            })
            .collect();

        let sqrt_order = arith::exact_sqrt(q as u64).map(|r| r as u32);
        Ok(FiniteField {
            p,
            m,
            q,
            modulus,
            theta: prime_poly::encode(&theta, p),
            exp,
            log,
            zech,
            sqrt_order,
        })
    }

    /// Builds GF(q) for an odd prime power q.
    pub fn with_order(q: u64) -> Result<FiniteField> {
        let (p, m) = arith::prime_power(q)
            .ok_or_else(|| Error::InvalidParams(format!("{q} is not a prime power")))?;
        FiniteField::new(p, m)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// `r` with `r*r == q`, if q is a perfect square.
    pub fn sqrt_order(&self) -> Option<u32> {
        self.sqrt_order
    }

    pub fn defining_poly(&self) -> &[u32] {
        &self.modulus
    }

    pub fn theta_coeffs(&self) -> Vec<u32> {
        prime_poly::digits(self.theta as u64, self.p, self.m as usize)
    }

    pub fn info(&self) -> FieldInfo {
        FieldInfo {
            p: self.p,
            m: self.m,
            q: self.q,
            defining_poly: self.modulus.clone(),
            theta: self.theta_coeffs(),
            r: self.sqrt_order,
        }
    }

    #[inline]
    fn group_order(&self) -> u32 {
        self.q - 1
    }

    #[inline]
    pub fn theta(&self) -> FieldElement {
        self.theta_pow(1)
    }

    /// θ^e for any integer e, reduced modulo q-1.
    #[inline]
    pub fn theta_pow(&self, e: i64) -> FieldElement {
        FieldElement(e.rem_euclid(self.group_order() as i64) as u32)
    }

    /// The element -1 = θ^((q-1)/2).
    pub fn minus_one(&self) -> FieldElement {
        FieldElement(self.group_order() / 2)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let c = n.rem_euclid(self.p as i64) as usize;
        FieldElement(self.log[c])
    }

    /// Element with the given residue coefficients (low to high, reduced mod p).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let mut c: Vec<u32> = coeffs.iter().map(|&x| x % self.p).collect();
        c.resize(self.m as usize, 0);
        FieldElement(self.log[prime_poly::encode(&c, self.p) as usize])
    }

    /// Residue coefficients of `x`, low to high, exactly m of them.
    pub fn to_coeffs(&self, x: FieldElement) -> Vec<u32> {
        prime_poly::digits(self.to_index(x) as u64, self.p, self.m as usize)
    }

    /// Integer encoding in `0..q` (zero maps to 0).
    #[inline]
    pub fn to_index(&self, x: FieldElement) -> u32 {
        match x.exponent() {
            None => 0,
            Some(e) => self.exp[e as usize],
        }
    }

    #[inline]
    pub fn from_index(&self, idx: u32) -> FieldElement {
        FieldElement(self.log[idx as usize])
    }

    /// All q elements: zero first, then θ^0, θ^1, ...
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(FieldElement::ZERO).chain((0..self.group_order()).map(FieldElement))
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() {
            return y;
        }
        if y.is_zero() {
            return x;
        }
        let n1 = self.group_order();
        let d = if y.0 >= x.0 { y.0 - x.0 } else { y.0 + n1 - x.0 };
        let z = self.zech[d as usize];
        if z == ZERO_EXP {
            return FieldElement::ZERO;
        }
        let s = x.0 + z;
        FieldElement(if s >= n1 { s - n1 } else { s })
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if x.is_zero() {
            return x;
        }
        let n1 = self.group_order();
        let s = x.0 + n1 / 2;
        FieldElement(if s >= n1 { s - n1 } else { s })
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() || y.is_zero() {
            return FieldElement::ZERO;
        }
        let n1 = self.group_order();
        let s = x.0 + y.0;
        FieldElement(if s >= n1 { s - n1 } else { s })
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        match x.exponent() {
            None => Err(Error::InverseOfZero),
            Some(0) => Ok(x),
            Some(e) => Ok(FieldElement(self.group_order() - e)),
        }
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^k` with the convention `0^0 = 1`.
    pub fn pow(&self, x: FieldElement, k: u64) -> FieldElement {
        match x.exponent() {
            None if k == 0 => FieldElement::ONE,
            None => FieldElement::ZERO,
            Some(e) => {
                let n1 = self.group_order() as u64;
                FieldElement(((e as u64 % n1) * (k % n1) % n1) as u32)
            }
        }
    }

    /// Integer power allowing negative exponents on nonzero elements.
    pub fn pow_signed(&self, x: FieldElement, k: i64) -> Result<FieldElement> {
        if k >= 0 {
            return Ok(self.pow(x, k as u64));
        }
        Ok(self.pow(self.inv(x)?, k.unsigned_abs()))
    }

    /// Quadratic character η: +1 on nonzero squares, -1 on non-squares.
    pub fn quadratic_character(&self, x: FieldElement) -> Result<Sign> {
        match x.exponent() {
            None => Err(Error::CharacterOfZero),
            Some(e) => Ok(Sign::from_parity(e % 2 == 1)),
        }
    }

    pub fn is_square(&self, x: FieldElement) -> bool {
        matches!(x.exponent(), Some(e) if e % 2 == 0)
    }

    /// The square root with the smaller exponent: θ^(e/2) for x = θ^e, e even.
    pub fn sqrt(&self, x: FieldElement) -> Result<FieldElement> {
        match x.exponent() {
            None => Err(Error::NotASquare("0".into())),
            Some(e) if e % 2 == 1 => Err(Error::NotASquare(x.to_string())),
            Some(e) => Ok(FieldElement(e / 2)),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: FieldElement) -> Result<u64> {
        let e = x.exponent().ok_or(Error::InverseOfZero)? as u64;
        let n1 = self.group_order() as u64;
        Ok(n1 / arith::gcd(e, n1))
    }

    /// Wraps an exponent, reducing it modulo q-1.
    pub fn element(&self, exponent: u64) -> FieldElement {
        FieldElement((exponent % self.group_order() as u64) as u32)
    }

    /// Sum of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, items: I) -> FieldElement {
        items.into_iter().fold(FieldElement::ZERO, |acc, x| self.add(acc, x))
    }

    /// Product of a sequence of elements.
    pub fn product<I: IntoIterator<Item = FieldElement>>(&self, items: I) -> FieldElement {
        items.into_iter().fold(FieldElement::ONE, |acc, x| self.mul(acc, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf7_uses_three() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.theta_coeffs(), vec![3]);
        let theta = f.theta();
        // 3 + 3 = 6 = 3^3 mod 7
        assert_eq!(f.add(theta, theta), f.theta_pow(3));
        assert_eq!(f.to_coeffs(f.theta_pow(3)), vec![6]);
    }

    #[test]
    fn gf25_tables() {
        let f = FiniteField::new(5, 2).unwrap();
        assert_eq!(f.order(), 25);
        assert_eq!(f.sqrt_order(), Some(5));
        assert_eq!(f.defining_poly(), &[2, 0, 1]);
        assert_eq!(f.multiplicative_order(f.theta()).unwrap(), 24);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(FiniteField::new(9, 1).unwrap_err(), Error::NotPrime(9));
        assert_eq!(FiniteField::new(2, 3).unwrap_err(), Error::EvenCharacteristic(2));
        assert_eq!(FiniteField::new(3, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(FiniteField::new(3, 12), Err(Error::OrderTooLarge { .. })));
        assert!(FiniteField::new(3, 11).is_ok());
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = FiniteField::new(5, 1).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::InverseOfZero));
        assert_eq!(f.quadratic_character(FieldElement::ZERO), Err(Error::CharacterOfZero));
    }

    #[test]
    fn sqrt_tie_rule() {
        let f = FiniteField::new(5, 2).unwrap();
        assert_eq!(f.sqrt(FieldElement::ONE).unwrap(), FieldElement::ONE);
        assert_eq!(f.sqrt(f.theta_pow(2)).unwrap(), f.theta());
        assert!(matches!(f.sqrt(f.theta()), Err(Error::NotASquare(_))));
        let x = f.theta_pow(10);
        let y = f.sqrt(x).unwrap();
        assert_eq!(f.mul(y, y), x);
    }

    #[test]
    fn zero_power_convention() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.pow(FieldElement::ZERO, 0), FieldElement::ONE);
        assert_eq!(f.pow(FieldElement::ZERO, 3), FieldElement::ZERO);
    }
}
