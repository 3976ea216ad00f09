//! The Galois ring `GR(p^n, m) = (Z/p^n)[u]/(F)`, with `F` the integer lift
//! of the modulus of `F_{p^m}`. It is a second model of `W_n(F_{p^m})`:
//! `(x_0, x_1, ...) <-> sum_i p^i [x_i^{p^{-i}}]`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::finite_field::{FqCtx, FqElem};
use crate::ring::{mod_u64, Ring};

/// Coefficients in `0..p^n`, low degree first, length `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrElem(pub Vec<u64>);

struct GrData {
    k: FqCtx,
    p: u64,
    n: usize,
    m: usize,
    pn: u64,
    modulus: Vec<u64>,
    /// `sigma(u^i)` for `i < m`.
    frob_images: Vec<GrElem>,
    /// `Tr(u^i)` for `i < m`.
    basis_traces: Vec<u64>,
}

#[derive(Clone)]
pub struct GaloisRing(Arc<GrData>);

impl fmt::Debug for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR({}^{}, {})", self.0.p, self.0.n, self.0.m)
    }
}

/// Largest supported `p^n`.
pub const MAX_MODULUS: u64 = 1 << 32;

impl GaloisRing {
    pub fn new(k: &FqCtx, n: usize) -> Result<Self> {
        let p = k.p();
        let pn = p
            .checked_pow(n as u32)
            .filter(|&v| v <= MAX_MODULUS && n >= 1)
            .ok_or(Error::ModulusTooLarge { p, n })?;
        let m = k.m() as usize;
        let data = GrData {
            k: k.clone(),
            p,
            n,
            m,
            pn,
            modulus: k.modulus().to_vec(),
            frob_images: Vec::new(),
            basis_traces: Vec::new(),
        };
        let ring = GaloisRing(Arc::new(data));
        let frob_images = ring.compute_frob_images();
        let basis_traces = (0..m).map(|i| ring.matrix_trace(&ring.u_pow(i))).collect();
        let mut data = Arc::try_unwrap(ring.0).ok().expect("sole owner");
        data.frob_images = frob_images;
        data.basis_traces = basis_traces;
        Ok(GaloisRing(Arc::new(data)))
    }

    pub fn field(&self) -> &FqCtx {
        &self.0.k
    }
    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn n(&self) -> usize {
        self.0.n
    }
    pub fn modulus_pn(&self) -> u64 {
        self.0.pn
    }

    fn u_pow(&self, i: usize) -> GrElem {
        let mut x = self.one();
        let u = self.generator();
        for _ in 0..i {
            x = self.mul(&x, &u);
        }
        x
    }

    /// The class of the polynomial variable.
    pub fn generator(&self) -> GrElem {
        let mut c = vec![0u64; self.0.m];
        if self.0.m == 1 {
            // modulus X: the variable is 0
            return GrElem(c);
        }
        c[1] = 1;
        GrElem(c)
    }

    pub fn scalar(&self, t: u64) -> GrElem {
        let mut c = vec![0u64; self.0.m];
        c[0] = t % self.0.pn;
        GrElem(c)
    }

    pub fn scalar_mul(&self, t: u64, z: &GrElem) -> GrElem {
        let pn = self.0.pn as u128;
        GrElem(z.0.iter().map(|&c| ((c as u128 * (t as u128 % pn)) % pn) as u64).collect())
    }

    /// Coefficient-wise lift of a field element (not multiplicative).
    pub fn lift(&self, a: FqElem) -> GrElem {
        GrElem(self.0.k.coeffs(a))
    }

    pub fn reduce(&self, z: &GrElem) -> FqElem {
        let p = self.0.p;
        let c: Vec<u64> = z.0.iter().map(|&v| v % p).collect();
        self.0.k.from_coeffs(&c).expect("m coefficients")
    }

    /// The multiplicative Teichmuller representative of `a`.
    pub fn teich(&self, a: FqElem) -> GrElem {
        let q = self.0.k.q();
        let mut x = self.lift(a);
        for _ in 1..self.0.n {
            x = self.pow(&x, q);
        }
        x
    }

    /// Image of the Witt vector `(x_0, ..., x_{n-1})`.
    pub fn from_witt(&self, coords: &[FqElem]) -> GrElem {
        assert_eq!(coords.len(), self.0.n, "Witt vector length");
        let k = &self.0.k;
        let mut acc = self.zero();
        let mut pi = 1u64;
        for (i, &x) in coords.iter().enumerate() {
            let root = k.frob_iter(x, -(i as i64));
            acc = self.add(&acc, &self.scalar_mul(pi, &self.teich(root)));
            pi = pi.wrapping_mul(self.0.p);
        }
        acc
    }

    /// Witt coordinates of `z`.
    pub fn to_witt(&self, z: &GrElem) -> Vec<FqElem> {
        let k = &self.0.k;
        let p = self.0.p;
        let mut out = Vec::with_capacity(self.0.n);
        let mut cur = z.clone();
        let mut modulus = self.0.pn;
        for i in 0..self.0.n {
            let a = self.reduce(&cur);
            out.push(k.frob_iter(a, i as i64));
            let t = self.teich(a);
            let diff: Vec<u64> = cur.0.iter().zip(&t.0).map(|(&c, &s)| (c + modulus - s % modulus) % modulus).collect();
            debug_assert!(diff.iter().all(|&d| d % p == 0));
            modulus /= p;
            cur = GrElem(diff.into_iter().map(|d| d / p).collect());
        }
        out
    }

    /// The Frobenius automorphism lifting `x -> x^p`.
    pub fn sigma(&self, z: &GrElem) -> GrElem {
        let mut acc = self.scalar(z.0[0]);
        for (i, &c) in z.0.iter().enumerate().skip(1) {
            acc = self.add(&acc, &self.scalar_mul(c, &self.0.frob_images[i]));
        }
        acc
    }

    pub fn sigma_pow(&self, z: &GrElem, s: i64) -> GrElem {
        let s = s.rem_euclid(self.0.m as i64);
        (0..s).fold(z.clone(), |x, _| self.sigma(&x))
    }

    /// `Tr_{GR/(Z/p^n)}(z)` from the trace form on the power basis.
    pub fn trace(&self, z: &GrElem) -> u64 {
        let pn = self.0.pn as u128;
        let t = z.0.iter().zip(&self.0.basis_traces).fold(0u128, |acc, (&c, &t)| (acc + c as u128 * t as u128) % pn);
        t as u64
    }

    /// Trace computed as the sum of Frobenius conjugates.
    pub fn trace_by_conjugates(&self, z: &GrElem) -> u64 {
        let mut acc = self.zero();
        let mut x = z.clone();
        for _ in 0..self.0.m {
            acc = self.add(&acc, &x);
            x = self.sigma(&x);
        }
        debug_assert!(acc.0[1..].iter().all(|&c| c == 0));
        acc.0[0]
    }

    /// `Tr` of the multiplication-by-`z` matrix.
    fn matrix_trace(&self, z: &GrElem) -> u64 {
        let pn = self.0.pn;
        let mut t = 0u64;
        for i in 0..self.0.m {
            let col = self.mul(z, &self.u_pow(i));
            t = (t + col.0[i]) % pn;
        }
        t
    }

    fn compute_frob_images(&self) -> Vec<GrElem> {
        let m = self.0.m;
        if m == 1 {
            return vec![self.one()];
        }
        // Newton iteration for the root of F congruent to u^p
        let f = |x: &GrElem| -> GrElem {
            let mut acc = self.zero();
            for &c in self.0.modulus.iter().rev() {
                acc = self.add(&self.mul(&acc, x), &self.scalar(c));
            }
            acc
        };
        let df = |x: &GrElem| -> GrElem {
            let mut acc = self.zero();
            for (i, &c) in self.0.modulus.iter().enumerate().skip(1).rev() {
                acc = self.add(&self.mul(&acc, x), &self.scalar(c * i as u64));
            }
            acc
        };
        let mut r = self.pow(&self.generator(), self.0.p);
        for _ in 0..self.0.n {
            let d = self.inv(&df(&r)).expect("separable modulus");
            r = self.sub(&r, &self.mul(&f(&r), &d));
        }
        debug_assert!(self.is_zero(&f(&r)));
        let mut out = Vec::with_capacity(m);
        let mut x = self.one();
        for _ in 0..m {
            out.push(x.clone());
            x = self.mul(&x, &r);
        }
        out
    }

    pub fn random<Rn: rand::Rng + ?Sized>(&self, rng: &mut Rn) -> GrElem {
        GrElem((0..self.0.m).map(|_| rng.gen_range(0..self.0.pn)).collect())
    }

    /// True when `z` is a unit (nonzero reduction mod `p`).
    pub fn is_unit(&self, z: &GrElem) -> bool {
        self.reduce(z).0 != 0
    }
}

impl Ring for GaloisRing {
    type Elem = GrElem;

    fn zero(&self) -> GrElem {
        GrElem(vec![0; self.0.m])
    }
    fn one(&self) -> GrElem {
        self.scalar(1)
    }
    fn add(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let pn = self.0.pn;
        GrElem(a.0.iter().zip(&b.0).map(|(&x, &y)| ((x as u128 + y as u128) % pn as u128) as u64).collect())
    }
    fn neg(&self, a: &GrElem) -> GrElem {
        let pn = self.0.pn;
        GrElem(a.0.iter().map(|&x| if x == 0 { 0 } else { pn - x }).collect())
    }
    fn mul(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let m = self.0.m;
        let pn = self.0.pn as u128;
        let mut prod = vec![0u128; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % pn;
            }
        }
        // reduce by the monic modulus from the top
        for top in (m..2 * m - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (i, &f) in self.0.modulus.iter().enumerate().take(m) {
                let idx = top - m + i;
                prod[idx] = (prod[idx] + (pn - (c * f as u128) % pn)) % pn;
            }
            prod[top] = 0;
        }
        GrElem(prod[..m].iter().map(|&v| v as u64).collect())
    }
    fn is_zero(&self, a: &GrElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }
    fn equal(&self, a: &GrElem, b: &GrElem) -> bool {
        a == b
    }
    fn from_int(&self, n: &BigInt) -> GrElem {
        self.scalar(mod_u64(n, self.0.pn))
    }
    fn inv(&self, a: &GrElem) -> Option<GrElem> {
        if !self.is_unit(a) {
            return None;
        }
        // the unit group has order (q - 1) q^{n-1}
        let q = self.0.k.q();
        let mut x = self.pow(a, q - 2);
        // x is an inverse mod p; Newton doubles the precision
        for _ in 0..self.0.n {
            let ax = self.mul(a, &x);
            x = self.mul(&x, &self.sub(&self.scalar(2), &ax));
        }
        Some(x)
    }
}

/// `sum_i p^i [t_i]` in `Z/p^n` for coordinates `t_i` in `F_p`.
pub fn prime_witt_to_int(p: u64, coords: &[u64]) -> u64 {
    let n = coords.len() as u32;
    let pn = p.pow(n) as u128;
    let teich = |t: u64| -> u128 {
        let mut x = t as u128 % pn;
        for _ in 1..n {
            x = pow_mod(x, p as u128, pn);
        }
        x
    };
    let mut acc = 0u128;
    let mut pi = 1u128;
    for &t in coords {
        acc = (acc + pi * teich(t)) % pn;
        pi *= p as u128;
    }
    acc as u64
}

/// Coordinates in `F_p` of `t` in `Z/p^n`.
pub fn int_to_prime_witt(p: u64, n: usize, t: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut cur = t as u128 % (p as u128).pow(n as u32);
    for i in 0..n {
        let modulus = (p as u128).pow((n - i) as u32);
        let a = (cur % p as u128) as u64;
        out.push(a);
        let mut te = a as u128;
        for _ in 1..(n - i) {
            te = pow_mod(te, p as u128, modulus);
        }
        cur = ((cur + modulus - te % modulus) % modulus) / p as u128;
    }
    out
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1u128 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}
