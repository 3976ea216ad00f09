//! Exact arithmetic in `F_{p^m}`.
//!
//! Elements are coefficient vectors in the basis `1, u, ..., u^{m-1}` where
//! `u` is a root of the context's modulus. They are stored packed as the
//! integer `sum c_i p^i`, which is a bijection onto `0..q`, so equality of
//! packed values is equality of coefficient vectors.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{is_prime, mod_u64, Ring};

/// Default desk-scale bound on `p^m`.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

/// Fields up to this order get log/antilog tables.
const TABLE_BOUND: u64 = 1 << 16;

/// Conway polynomials for small fields, coefficients low degree first.
const STANDARD_MODULI: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
];

/// An element of `F_q`, packed as described in the module docs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(pub u32);

#[derive(Debug)]
struct FqData {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus, length `m + 1`, low degree first.
    modulus: Vec<u64>,
    /// `exp[k] = g^k` for `k < 2(q-1)`; empty when the field is too large.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`.
    log: Vec<u32>,
}

/// Context for `F_{p^m}`. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FqCtx(Arc<FqData>);

impl fmt::Debug for FqCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}[{:?}]", self.0.p, self.0.m, self.0.modulus)
    }
}

impl PartialEq for FqCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus
    }
}

impl Eq for FqCtx {}

/// JSON form of a field element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FqJson {
    pub p: u64,
    pub m: u32,
    pub coeffs: Vec<u64>,
}

/// `F_{p^m}` with the deterministic modulus and the default size bound.
pub fn make_field(p: u64, m: u32) -> Result<FqCtx> {
    FqCtx::with_bound(p, m, DEFAULT_FIELD_BOUND)
}

impl FqCtx {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        make_field(p, m)
    }

    pub fn with_bound(p: u64, m: u32, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::InvalidDegree);
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= bound && q <= u32::MAX as u64)
            .ok_or(Error::FieldTooLarge { p, m, bound })?;
        let modulus = choose_modulus(p, m);
        assert!(is_irreducible(&modulus, p), "modulus {modulus:?} is reducible mod {p}");
        let mut data = FqData { p, m, q, modulus, exp: Vec::new(), log: Vec::new() };
        if q <= TABLE_BOUND && q > 2 {
            build_tables(&mut data);
        }
        Ok(FqCtx(Arc::new(data)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn m(&self) -> u32 {
        self.0.m
    }
    pub fn q(&self) -> u64 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn coeffs(&self, a: FqElem) -> Vec<u64> {
        let p = self.0.p;
        let mut v = a.0 as u64;
        (0..self.0.m)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    /// Builds an element from coefficients; missing entries are zero and
    /// every entry is reduced mod `p`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() > self.0.m as usize {
            return Err(Error::Invalid(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.0.m
            )));
        }
        let p = self.0.p;
        let v = coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c % p);
        Ok(FqElem(v as u32))
    }

    /// The image of an integer in the prime field.
    pub fn prime(&self, t: i64) -> FqElem {
        FqElem(t.rem_euclid(self.0.p as i64) as u32)
    }

    /// The class of `u`, the root of the modulus.
    pub fn generator(&self) -> FqElem {
        if self.0.m == 1 {
            // modulus X: u = 0
            FqElem(0)
        } else {
            FqElem(self.0.p as u32)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.0.q as u32).map(FqElem)
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        FqElem(rng.gen_range(0..self.0.q) as u32)
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        FqElem(rng.gen_range(1..self.0.q) as u32)
    }

    pub fn to_json(&self, a: FqElem) -> FqJson {
        FqJson { p: self.0.p, m: self.0.m, coeffs: self.coeffs(a) }
    }

    pub fn from_json(&self, j: &FqJson) -> Result<FqElem> {
        if j.p != self.0.p || j.m != self.0.m {
            return Err(Error::ContextMismatch(format!(
                "element of F_{}^{} given for F_{}^{}",
                j.p, j.m, self.0.p, self.0.m
            )));
        }
        self.from_coeffs(&j.coeffs)
    }

    fn add_e(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.0.p as u32;
        if p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        if self.0.m == 1 {
            let s = a.0 + b.0;
            return FqElem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out, mut scale) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            out += d * scale;
            scale = scale.wrapping_mul(p);
            x /= p;
            y /= p;
        }
        FqElem(out)
    }

    fn neg_e(&self, a: FqElem) -> FqElem {
        let p = self.0.p as u32;
        if p == 2 {
            return a;
        }
        if self.0.m == 1 {
            return FqElem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut out, mut scale) = (a.0, 0u32, 1u32);
        while x > 0 {
            let d = (p - x % p) % p;
            out += d * scale;
            scale = scale.wrapping_mul(p);
            x /= p;
        }
        FqElem(out)
    }

    fn mul_e(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem(0);
        }
        let d = &self.0;
        if d.m == 1 {
            return FqElem(((a.0 as u64 * b.0 as u64) % d.p) as u32);
        }
        if !d.exp.is_empty() {
            let k = d.log[a.0 as usize] as usize + d.log[b.0 as usize] as usize;
            return FqElem(d.exp[k]);
        }
        let prod = poly_mulmod(&self.coeffs(a), &self.coeffs(b), &d.modulus, d.p);
        self.from_coeffs(&prod).expect("reduced product")
    }

    pub fn inverse(&self, a: FqElem) -> Result<FqElem> {
        if a.0 == 0 {
            return Err(Error::NotInvertible("0 in F_q".into()));
        }
        let d = &self.0;
        if !d.exp.is_empty() {
            let k = (d.q - 1 - d.log[a.0 as usize] as u64) % (d.q - 1);
            return Ok(FqElem(d.exp[k as usize]));
        }
        Ok(self.pow_e(a, d.q - 2))
    }

    pub fn pow_e(&self, a: FqElem, e: u64) -> FqElem {
        let d = &self.0;
        if !d.exp.is_empty() {
            if a.0 == 0 {
                return FqElem(if e == 0 { 1 } else { 0 });
            }
            let k = ((d.log[a.0 as usize] as u128 * e as u128) % (d.q as u128 - 1)) as usize;
            return FqElem(d.exp[k]);
        }
        let mut base = a;
        let mut acc = FqElem(1);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_e(acc, base);
            }
            base = self.mul_e(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x -> x^p`.
    pub fn frob(&self, a: FqElem) -> FqElem {
        if self.0.m == 1 {
            return a;
        }
        self.pow_e(a, self.0.p)
    }

    /// The Frobenius iterated `k` times (negative `k` for inverse powers).
    pub fn frob_iter(&self, a: FqElem, k: i64) -> FqElem {
        let m = self.0.m as i64;
        let k = k.rem_euclid(m);
        (0..k).fold(a, |x, _| self.frob(x))
    }

    /// The unique `y` with `y^p = x`.
    pub fn pth_root(&self, a: FqElem) -> FqElem {
        self.frob_iter(a, self.0.m as i64 - 1)
    }

    /// `Tr_{F_q/F_p}(x)` as an integer in `0..p`.
    pub fn trace_to_prime(&self, a: FqElem) -> u64 {
        let mut acc = FqElem(0);
        let mut x = a;
        for _ in 0..self.0.m {
            acc = self.add_e(acc, x);
            x = self.frob(x);
        }
        debug_assert!((acc.0 as u64) < self.0.p, "trace left the prime field");
        acc.0 as u64
    }

    /// First basis monomial `u^k` with nonzero trace.
    pub fn nonzero_trace_element(&self) -> FqElem {
        let mut mono = FqElem(1);
        let u = self.generator();
        for _ in 0..self.0.m {
            if self.trace_to_prime(mono) != 0 {
                return mono;
            }
            mono = self.mul_e(mono, u);
        }
        unreachable!("trace is surjective on a finite field")
    }

    /// Some `b` with `b^p - b = a`, the one with least coefficient vector.
    pub fn solve_artin_schreier(&self, a: FqElem) -> Option<FqElem> {
        if self.trace_to_prime(a) != 0 {
            return None;
        }
        let p = self.0.p;
        let m = self.0.m as usize;
        // columns: coordinates of (u^k)^p - u^k
        let mut rows = vec![vec![0u64; m + 1]; m];
        let u = self.generator();
        let mut mono = FqElem(1);
        for k in 0..m {
            let img = self.coeffs(self.add_e(self.frob(mono), self.neg_e(mono)));
            for (r, &c) in img.iter().enumerate() {
                rows[r][k] = c;
            }
            mono = if m == 1 { mono } else { self.mul_e(mono, u) };
        }
        for (r, c) in self.coeffs(a).into_iter().enumerate() {
            rows[r][m] = c;
        }
        let sol = solve_mod_p(rows, m, p)?;
        let mut b = self.from_coeffs(&sol).ok()?;
        // the solution set is b + F_p; pick constant coefficient 0
        let c0 = sol[0];
        b = self.add_e(b, self.prime(-(c0 as i64)));
        debug_assert_eq!(self.add_e(self.frob(b), self.neg_e(b)), a);
        Some(b)
    }

    /// Finds the image of `u` under an embedding of `self` into `big`.
    pub fn embedding_into(&self, big: &FqCtx) -> Result<FieldEmbedding> {
        if self.0.p != big.0.p || big.0.m % self.0.m != 0 {
            return Err(Error::RootFieldMismatch { p: self.0.p, m: self.0.m, root_m: big.0.m });
        }
        let image_u = if self.0.m == 1 {
            FqElem(0)
        } else {
            let modulus: Vec<FqElem> = self.0.modulus.iter().map(|&c| big.prime(c as i64)).collect();
            big.elements()
                .find(|&z| {
                    let v = modulus.iter().rev().fold(FqElem(0), |acc, &c| big.add_e(big.mul_e(acc, z), c));
                    v.0 == 0
                })
                .expect("an extension of degree divisible by m contains the roots of the modulus")
        };
        let powers: Vec<FqElem> = (0..self.0.m)
            .scan(FqElem(1), |acc, _| {
                let cur = *acc;
                *acc = big.mul_e(*acc, image_u);
                Some(cur)
            })
            .collect();
        Ok(FieldEmbedding { small: self.clone(), big: big.clone(), powers })
    }
}

/// A field embedding `F_q -> F_{q'}` determined by the image of `u`.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    pub small: FqCtx,
    pub big: FqCtx,
    powers: Vec<FqElem>,
}

impl FieldEmbedding {
    pub fn apply(&self, a: FqElem) -> FqElem {
        let coeffs = self.small.coeffs(a);
        coeffs.iter().zip(&self.powers).fold(FqElem(0), |acc, (&c, &pw)| {
            self.big.add_e(acc, self.big.mul_e(self.big.prime(c as i64), pw))
        })
    }
}

impl Ring for FqCtx {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem(0)
    }
    fn one(&self) -> FqElem {
        FqElem(1)
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add_e(*a, *b)
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        self.neg_e(*a)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.mul_e(*a, *b)
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.0 == 0
    }
    fn equal(&self, a: &FqElem, b: &FqElem) -> bool {
        a == b
    }
    fn from_int(&self, n: &BigInt) -> FqElem {
        FqElem(mod_u64(n, self.0.p) as u32)
    }
    fn from_i64(&self, n: i64) -> FqElem {
        self.prime(n)
    }
    fn frobenius(&self, a: &FqElem) -> Option<FqElem> {
        Some(self.frob(*a))
    }
    fn char_p(&self) -> Option<u64> {
        Some(self.0.p)
    }
    fn pow(&self, a: &FqElem, e: u64) -> FqElem {
        self.pow_e(*a, e)
    }
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        self.inverse(*a).ok()
    }
}

fn choose_modulus(p: u64, m: u32) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    if let Some((_, _, f)) = STANDARD_MODULI.iter().find(|(pp, mm, _)| *pp == p && *mm == m) {
        return f.to_vec();
    }
    // lexicographically least monic irreducible, reading coefficients from
    // the constant term upwards
    let m = m as usize;
    let total = p.pow(m as u32);
    for idx in 0..total {
        let mut f = vec![0u64; m + 1];
        let mut v = idx;
        for c in f.iter_mut().take(m) {
            *c = v % p;
            v /= p;
        }
        f[m] = 1;
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

fn build_tables(d: &mut FqData) {
    let q = d.q as usize;
    let p = d.p;
    let m = d.m as usize;
    let pack = |c: &[u64]| c.iter().rev().fold(0u64, |acc, &x| acc * p + x) as u32;
    let unpack = |mut v: u64| -> Vec<u64> {
        (0..m)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    };
    let order_is_full = |g: &[u64]| {
        let mut x = vec![1u64];
        for k in 1..q {
            x = poly_mulmod(&x, g, &d.modulus, p);
            if x.len() == 1 && x[0] == 1 {
                return k == q - 1;
            }
        }
        false
    };
    let gen = (2..q as u64)
        .chain(std::iter::once(1))
        .map(unpack)
        .find(|g| order_is_full(g))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * (q - 1)];
    let mut log = vec![0u32; q];
    let mut x = vec![1u64];
    for k in 0..q - 1 {
        let v = pack(&pad(&x, m));
        exp[k] = v;
        exp[k + q - 1] = v;
        log[v as usize] = k as u32;
        x = poly_mulmod(&x, &gen, &d.modulus, p);
    }
    d.exp = exp;
    d.log = log;
}

fn pad(x: &[u64], m: usize) -> Vec<u64> {
    let mut v = x.to_vec();
    v.resize(m, 0);
    v
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

/// Remainder of `a` modulo the monic-up-to-scalar polynomial `f` over `F_p`.
fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut f = f.to_vec();
    trim(&mut f);
    let df = f.len() - 1;
    let lead_inv = inv_mod(*f.last().unwrap(), p);
    while r.len() > df && !(r.len() == 1 && r[0] == 0) {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for (i, &fc) in f.iter().enumerate() {
                let idx = top - df + i;
                r[idx] = (r[idx] + p - c * fc % p) % p;
            }
        }
        r.pop();
        if r.is_empty() {
            r.push(0);
        }
    }
    trim(&mut r);
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    poly_rem(&poly_mul(a, b, p), f, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Ben-Or irreducibility test over `F_p`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    // x^(p^i) mod f for i = 1..deg/2
    let mut xp = vec![0u64, 1];
    for _ in 1..=deg / 2 {
        // raise to the p-th power
        let mut acc = vec![1u64];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = poly_gcd(f, &diff, p);
        if !(g.len() == 1) {
            return false;
        }
    }
    true
}

/// Solves an augmented `m x (m+1)` system over `F_p`; free variables are 0.
fn solve_mod_p(mut rows: Vec<Vec<u64>>, m: usize, p: u64) -> Option<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..=m {
                    rows[i][k] = (rows[i][k] + p - f * rows[r][k] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[m] != 0) {
        return None;
    }
    let mut sol = vec![0u64; m];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][m];
    }
    Some(sol)
}
