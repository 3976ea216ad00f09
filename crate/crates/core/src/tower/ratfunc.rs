//! Polynomials over `F_q` and rational functions with factored
//! denominators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::{FieldEmbedding, FqCtx, FqElem};
use crate::laurent::{Laurent, LaurentRing};
use crate::ring::Ring;

/// Coefficients from the constant term up, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub Vec<FqElem>);

impl Poly {
    pub fn new(mut c: Vec<FqElem>) -> Self {
        while c.last().is_some_and(|x| x.0 == 0) {
            c.pop();
        }
        Poly(c)
    }
    pub fn zero() -> Self {
        Poly(Vec::new())
    }
    pub fn constant(c: FqElem) -> Self {
        Poly::new(vec![c])
    }
    /// `X`.
    pub fn x() -> Self {
        Poly(vec![FqElem(0), FqElem(1)])
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    /// Degree, with `-1` for zero.
    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }
    pub fn lead(&self) -> FqElem {
        self.0.last().copied().unwrap_or(FqElem(0))
    }
    pub fn is_monic(&self) -> bool {
        self.lead() == FqElem(1)
    }
}

/// Arithmetic in `k[X]`.
#[derive(Clone, Debug)]
pub struct PolyRing {
    k: FqCtx,
}

impl PolyRing {
    pub fn new(k: &FqCtx) -> Self {
        PolyRing { k: k.clone() }
    }
    pub fn field(&self) -> &FqCtx {
        &self.k
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        let z = FqElem(0);
        Poly::new((0..n).map(|i| self.k.add(a.0.get(i).unwrap_or(&z), b.0.get(i).unwrap_or(&z))).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.scale(&self.k.prime(-1), b))
    }

    pub fn scale(&self, c: &FqElem, a: &Poly) -> Poly {
        Poly::new(a.0.iter().map(|x| self.k.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FqElem(0); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.0 == 0 {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                out[i + j] = self.k.add(&out[i + j], &self.k.mul(x, y));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut base = a.clone();
        let mut acc = Poly::constant(FqElem(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn divrem(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        if b.is_zero() {
            return Err(Error::ZeroInput);
        }
        let inv = self.k.inverse(b.lead())?;
        let mut r = a.0.clone();
        let db = b.0.len() - 1;
        if r.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut q = vec![FqElem(0); r.len() - db];
        for i in (db..r.len()).rev() {
            let c = self.k.mul(&r[i], &inv);
            if c.0 == 0 {
                continue;
            }
            q[i - db] = c;
            for (j, y) in b.0.iter().enumerate() {
                let t = self.k.mul(&c, y);
                r[i - db + j] = self.k.sub(&r[i - db + j], &t);
            }
        }
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.divrem(a, b)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = self.k.inverse(a.lead()).expect("nonzero lead");
        self.scale(&inv, &a)
    }

    pub fn mulmod(&self, a: &Poly, b: &Poly, f: &Poly) -> Poly {
        self.rem(&self.mul(a, b), f).expect("nonzero modulus")
    }

    pub fn powmod(&self, a: &Poly, mut e: u128, f: &Poly) -> Poly {
        let mut base = self.rem(a, f).expect("nonzero modulus");
        let mut acc = self.rem(&Poly::constant(FqElem(1)), f).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, f);
            }
            base = self.mulmod(&base, &base, f);
            e >>= 1;
        }
        acc
    }

    /// Ben-Or test: `gcd(f, X^{q^i} - X) = 1` for `i <= deg f / 2`.
    pub fn is_irreducible(&self, f: &Poly) -> bool {
        let d = f.degree();
        if d < 1 {
            return false;
        }
        let q = self.k.q() as u128;
        let x = Poly::x();
        let mut h = self.rem(&x, f).expect("nonzero modulus");
        for _ in 1..=d / 2 {
            h = self.powmod(&h, q, f);
            let g = self.gcd(f, &self.sub(&h, &x));
            if g.degree() > 0 {
                return false;
            }
        }
        true
    }

    pub fn eval(&self, a: &Poly, x: FqElem) -> FqElem {
        a.0.iter().rev().fold(FqElem(0), |acc, c| self.k.add(&self.k.mul(&acc, &x), c))
    }

    /// `a(X)` with coefficients pushed into a larger field.
    pub fn embed(&self, a: &Poly, emb: &FieldEmbedding) -> Poly {
        Poly::new(a.0.iter().map(|&c| emb.apply(c)).collect())
    }

    /// `a(z + T)` as a polynomial in `T`.
    pub fn taylor_shift(&self, a: &Poly, z: FqElem) -> Poly {
        let shift = Poly::new(vec![z, FqElem(1)]);
        a.0.iter().rev().fold(Poly::zero(), |acc, c| self.add(&self.mul(&acc, &shift), &Poly::constant(*c)))
    }

    /// The roots of `f` in the field of this ring, by exhaustive search.
    pub fn roots(&self, f: &Poly) -> Vec<FqElem> {
        self.k.elements().filter(|&z| self.eval(f, z).0 == 0).collect()
    }

    /// `a` as an exact Laurent series in `T`.
    pub fn to_series(&self, ring: &LaurentRing<FqCtx>, a: &Poly) -> Laurent<FqElem> {
        let terms: Vec<(i64, FqElem)> = a.0.iter().enumerate().map(|(i, &c)| (i as i64, c)).collect();
        ring.from_terms(&terms, crate::laurent::EXACT)
    }
}

impl Ring for PolyRing {
    type Elem = Poly;
    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::constant(FqElem(1))
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        PolyRing::add(self, a, b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        self.scale(&self.k.prime(-1), a)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        PolyRing::mul(self, a, b)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: &num_bigint::BigInt) -> Poly {
        Poly::constant(self.k.from_int(n))
    }
    fn frobenius(&self, a: &Poly) -> Option<Poly> {
        let p = self.k.p() as usize;
        let mut out = vec![FqElem(0); (a.0.len().max(1) - 1) * p + 1];
        for (i, &c) in a.0.iter().enumerate() {
            out[i * p] = self.k.frob(c);
        }
        Some(Poly::new(out))
    }
    fn char_p(&self) -> Option<u64> {
        Some(self.k.p())
    }
}

/// `num / prod f_j^{e_j}` with monic irreducible `f_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Vec<(Poly, u32)>,
}

/// `{"num": [c_0, c_1, ...], "den": [[[f_0, f_1, ...], e], ...]}` with every
/// coefficient a list of coordinates over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: Vec<Vec<u64>>,
    #[serde(default)]
    pub den: Vec<(Vec<Vec<u64>>, u32)>,
}

impl RatFunc {
    pub fn poly(num: Poly) -> Self {
        RatFunc { num, den: Vec::new() }
    }

    /// Checks that every denominator factor is monic irreducible, the
    /// factors are distinct and none divides the numerator.
    pub fn validate(&self, ring: &PolyRing) -> Result<()> {
        for (idx, (f, e)) in self.den.iter().enumerate() {
            if *e == 0 {
                return Err(Error::UnfactoredDenominator(format!("factor {idx} has exponent 0")));
            }
            if !f.is_monic() || !ring.is_irreducible(f) {
                return Err(Error::UnfactoredDenominator(format!("factor {idx} is not monic irreducible")));
            }
            if self.den[..idx].iter().any(|(g, _)| g == f) {
                return Err(Error::UnfactoredDenominator(format!("factor {idx} is repeated")));
            }
            if !self.num.is_zero() && ring.rem(&self.num, f)?.is_zero() {
                return Err(Error::NotCoprime(format!("numerator is divisible by factor {idx}")));
            }
        }
        Ok(())
    }

    pub fn denominator(&self, ring: &PolyRing) -> Poly {
        self.den.iter().fold(Poly::constant(FqElem(1)), |acc, (f, e)| ring.mul(&acc, &ring.pow(f, *e as u64)))
    }

    /// Total degree of the denominator minus that of the numerator, the
    /// order of vanishing at infinity.
    pub fn order_at_infinity(&self, ring: &PolyRing) -> i64 {
        if self.num.is_zero() {
            return i64::MAX;
        }
        self.denominator(ring).degree() - self.num.degree()
    }

    pub fn to_json(&self, k: &FqCtx) -> RatFuncJson {
        let coeffs = |p: &Poly| p.0.iter().map(|&c| k.coeffs(c)).collect();
        RatFuncJson { num: coeffs(&self.num), den: self.den.iter().map(|(f, e)| (coeffs(f), *e)).collect() }
    }

    pub fn from_json(k: &FqCtx, j: &RatFuncJson) -> Result<Self> {
        let poly = |c: &[Vec<u64>]| -> Result<Poly> {
            Ok(Poly::new(c.iter().map(|x| k.from_coeffs(x)).collect::<Result<Vec<_>>>()?))
        };
        let den = j.den.iter().map(|(f, e)| Ok((poly(f)?, *e))).collect::<Result<Vec<_>>>()?;
        Ok(RatFunc { num: poly(&j.num)?, den })
    }
}
