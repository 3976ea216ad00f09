//! The small ring contract shared by every coefficient ring in the crate.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative ring with identity, given as a context object that owns
/// whatever data the elements need (moduli, precision conventions, ...).
pub trait Ring: Clone + Debug {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image of an integer under the unique ring map `Z -> R`.
    fn from_int(&self, n: &BigInt) -> Self::Elem;

    /// The coordinate Frobenius `x -> x^p`, only for rings of prime
    /// characteristic `p`.
    fn frobenius(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// `Some(p)` when the ring has prime characteristic `p`.
    fn char_p(&self) -> Option<u64> {
        None
    }

    /// Multiplicative inverse, when it exists and the ring can compute it.
    fn inv(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// True when `a` is zero with no precision caveat, so that terms
    /// containing it may be dropped without losing information.
    fn is_exact_zero(&self, a: &Self::Elem) -> bool {
        self.is_zero(a)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Powers `a^0 ..= a^max`, using the Frobenius for multiples of `p`
    /// when the ring provides one.
    fn powers(&self, a: &Self::Elem, max: usize) -> Vec<Self::Elem> {
        let mut out = Vec::with_capacity(max + 1);
        out.push(self.one());
        let p = self.char_p().map(|p| p as usize);
        for e in 1..=max {
            let next = match p {
                Some(p) if e % p == 0 && e > 1 => self
                    .frobenius(&out[e / p])
                    .unwrap_or_else(|| self.mul(&out[e - 1], a)),
                _ => self.mul(&out[e - 1], a),
            };
            out.push(next);
        }
        out
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// The integers, used to check universal polynomials in characteristic 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
}

/// Least nonnegative residue of `n` modulo `m`.
pub fn mod_u64(n: &BigInt, m: u64) -> u64 {
    let r = n % BigInt::from(m);
    let r = if r.is_negative() { r + BigInt::from(m) } else { r };
    r.to_u64().expect("residue fits in u64")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent of `p` in `n`, for `n != 0`.
pub fn p_adic_valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n != 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Euler's totient on prime powers: `phi(p^s)`.
pub fn phi_prime_power(p: u64, s: u32) -> u64 {
    if s == 0 {
        1
    } else {
        p.pow(s - 1) * (p - 1)
    }
}
