//! Truncated p-typical Witt vectors over an arbitrary coefficient ring.

pub mod galois;
pub mod universal;

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::{FqCtx, FqElem};
use crate::ring::Ring;

pub use universal::{max_length, universal_polys, UniversalPolys};

/// Coordinates `(x_0, ..., x_{n-1})`; the ring context lives in [`WittRing`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WittVec<E> {
    pub coords: Vec<E>,
}

impl<E> WittVec<E> {
    pub fn new(coords: Vec<E>) -> Self {
        WittVec { coords }
    }
    pub fn len(&self) -> usize {
        self.coords.len()
    }
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

#[derive(Debug)]
struct Term<E> {
    coeff: E,
    coeff_is_one: bool,
    vars: Vec<(usize, u64)>,
}

#[derive(Debug)]
struct Compiled<E> {
    sum: Vec<Vec<Term<E>>>,
    prod: Vec<Vec<Term<E>>>,
    neg: Vec<Vec<Term<E>>>,
}

/// `W_n(R)` for a coefficient ring `R`.
#[derive(Clone)]
pub struct WittRing<R: Ring> {
    base: R,
    p: u64,
    n: usize,
    compiled: Arc<Compiled<R::Elem>>,
}

impl<R: Ring> fmt::Debug for WittRing<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W_{}({:?}) at p={}", self.n, self.base, self.p)
    }
}

fn compile<R: Ring>(base: &R, polys: &[universal::IntPoly]) -> Vec<Vec<Term<R::Elem>>> {
    polys
        .iter()
        .map(|f| {
            f.iter()
                .filter_map(|(e, c)| {
                    let coeff = base.from_int(c);
                    if base.is_zero(&coeff) {
                        return None;
                    }
                    let vars = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (i, k as u64)).collect();
                    Some(Term { coeff_is_one: base.is_one(&coeff), coeff, vars })
                })
                .collect()
        })
        .collect()
}

/// Lazily computed powers of one variable.
struct PowerCache<'a, R: Ring> {
    base: &'a R,
    p: u64,
    x: &'a R::Elem,
    cache: HashMap<u64, R::Elem>,
}

impl<'a, R: Ring> PowerCache<'a, R> {
    fn new(base: &'a R, p: u64, x: &'a R::Elem) -> Self {
        PowerCache { base, p, x, cache: HashMap::new() }
    }

    fn get(&mut self, e: u64) -> R::Elem {
        if e == 1 {
            return self.x.clone();
        }
        if let Some(v) = self.cache.get(&e) {
            return v.clone();
        }
        let v = if e == 0 {
            self.base.one()
        } else if self.base.char_p() == Some(self.p) {
            // e = a p + b: x^e = F(x^a) x^b
            let (a, b) = (e / self.p, e % self.p);
            let fa = if a == 0 {
                None
            } else {
                let xa = self.get(a);
                Some(self.base.frobenius(&xa).unwrap_or_else(|| self.base.pow(&xa, self.p)))
            };
            match (fa, b) {
                (Some(fa), 0) => fa,
                (Some(fa), b) => {
                    let xb = self.get(b);
                    self.base.mul(&fa, &xb)
                }
                (None, b) => {
                    let prev = self.get(b - 1);
                    self.base.mul(&prev, self.x)
                }
            }
        } else if e % 2 == 0 {
            let h = self.get(e / 2);
            self.base.mul(&h, &h)
        } else {
            let prev = self.get(e - 1);
            self.base.mul(&prev, self.x)
        };
        self.cache.insert(e, v.clone());
        v
    }
}

impl<R: Ring> WittRing<R> {
    /// `W_n(base)` at the prime `p`. When the base ring has prime
    /// characteristic it must be `p`.
    pub fn new(base: R, p: u64, n: usize) -> Result<Self> {
        universal::check_length(p, n)?;
        if let Some(q) = base.char_p() {
            if q != p {
                return Err(Error::ContextMismatch(format!("coefficient ring of characteristic {q} for p = {p}")));
            }
        }
        let polys = universal_polys(p, n)?;
        let compiled =
            Compiled { sum: compile(&base, &polys.sum), prod: compile(&base, &polys.prod), neg: compile(&base, &polys.neg) };
        Ok(WittRing { base, p, n, compiled: Arc::new(compiled) })
    }

    pub fn base(&self) -> &R {
        &self.base
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn n(&self) -> usize {
        self.n
    }

    /// The same coefficient ring at a shorter length.
    pub fn truncated(&self, m: usize) -> Result<WittRing<R>> {
        if m == self.n {
            return Ok(self.clone());
        }
        WittRing::new(self.base.clone(), self.p, m)
    }

    pub fn vec(&self, coords: Vec<R::Elem>) -> Result<WittVec<R::Elem>> {
        if coords.len() != self.n {
            return Err(Error::ContextMismatch(format!("{} coordinates for W_{}", coords.len(), self.n)));
        }
        Ok(WittVec { coords })
    }

    fn check(&self, x: &WittVec<R::Elem>) {
        assert_eq!(x.coords.len(), self.n, "Witt vector of length {} used in W_{}", x.coords.len(), self.n);
    }

    fn present<'a>(&self, e: &'a R::Elem) -> Option<&'a R::Elem> {
        (!self.base.is_exact_zero(e)).then_some(e)
    }

    /// Evaluates compiled polynomials; `vars[k]` is `None` for an exact zero.
    fn eval(&self, polys: &[Vec<Term<R::Elem>>], vars: &[Option<&R::Elem>]) -> Vec<R::Elem> {
        let caches: Vec<RefCell<Option<PowerCache<R>>>> =
            vars.iter().map(|v| RefCell::new(v.map(|x| PowerCache::new(&self.base, self.p, x)))).collect();
        polys
            .iter()
            .map(|terms| {
                let mut acc = self.base.zero();
                for t in terms {
                    if t.vars.iter().any(|&(v, _)| vars[v].is_none()) {
                        continue;
                    }
                    let mut prod: Option<R::Elem> = if t.coeff_is_one { None } else { Some(t.coeff.clone()) };
                    for &(v, k) in &t.vars {
                        let mut slot = caches[v].borrow_mut();
                        let pw = slot.as_mut().expect("present variable").get(k);
                        prod = Some(match prod {
                            None => pw,
                            Some(q) => self.base.mul(&q, &pw),
                        });
                    }
                    let term = prod.unwrap_or_else(|| self.base.one());
                    acc = self.base.add(&acc, &term);
                }
                acc
            })
            .collect()
    }

    fn binary_vars<'a>(&self, x: &'a WittVec<R::Elem>, y: &'a WittVec<R::Elem>) -> Vec<Option<&'a R::Elem>> {
        let mut vars = Vec::with_capacity(2 * self.n);
        for j in 0..self.n {
            vars.push(self.present(&x.coords[j]));
            vars.push(self.present(&y.coords[j]));
        }
        vars
    }

    pub fn add_w(&self, x: &WittVec<R::Elem>, y: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        self.check(x);
        self.check(y);
        WittVec { coords: self.eval(&self.compiled.sum, &self.binary_vars(x, y)) }
    }

    pub fn mul_w(&self, x: &WittVec<R::Elem>, y: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        self.check(x);
        self.check(y);
        WittVec { coords: self.eval(&self.compiled.prod, &self.binary_vars(x, y)) }
    }

    pub fn neg_w(&self, x: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        self.check(x);
        if self.p != 2 {
            return WittVec { coords: x.coords.iter().map(|c| self.base.neg(c)).collect() };
        }
        let mut vars = Vec::with_capacity(2 * self.n);
        for c in &x.coords {
            vars.push(self.present(c));
            vars.push(None);
        }
        WittVec { coords: self.eval(&self.compiled.neg, &vars) }
    }

    pub fn sub_w(&self, x: &WittVec<R::Elem>, y: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        self.add_w(x, &self.neg_w(y))
    }

    pub fn zero_w(&self) -> WittVec<R::Elem> {
        WittVec { coords: vec![self.base.zero(); self.n] }
    }

    pub fn one_w(&self) -> WittVec<R::Elem> {
        self.teichmuller(&self.base.one())
    }

    /// `[r] = (r, 0, ..., 0)`.
    pub fn teichmuller(&self, r: &R::Elem) -> WittVec<R::Elem> {
        let mut coords = vec![self.base.zero(); self.n];
        coords[0] = r.clone();
        WittVec { coords }
    }

    /// `V(x_0, x_1, ...) = (0, x_0, x_1, ...)`, truncated to length `n`.
    pub fn verschiebung(&self, x: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        self.verschiebung_pow(x, 1)
    }

    pub fn verschiebung_pow(&self, x: &WittVec<R::Elem>, j: usize) -> WittVec<R::Elem> {
        self.check(x);
        let mut coords = vec![self.base.zero(); self.n.min(j)];
        coords.extend(x.coords.iter().take(self.n.saturating_sub(j)).cloned());
        WittVec { coords }
    }

    /// Places a vector of length `n - j` at offset `j`: the image under
    /// `V^j` of its lift.
    pub fn shift_in(&self, tail: &WittVec<R::Elem>, j: usize) -> WittVec<R::Elem> {
        assert_eq!(tail.len() + j, self.n, "tail length");
        let mut coords = vec![self.base.zero(); j];
        coords.extend(tail.coords.iter().cloned());
        WittVec { coords }
    }

    /// Coordinate-wise `p`-th power; needs a base ring of characteristic `p`.
    pub fn frobenius_w(&self, x: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        self.check(x);
        if self.base.char_p() != Some(self.p) {
            return Err(Error::ContextMismatch("Frobenius needs a coefficient ring of characteristic p".into()));
        }
        let coords = x
            .coords
            .iter()
            .map(|c| self.base.frobenius(c).unwrap_or_else(|| self.base.pow(c, self.p)))
            .collect();
        Ok(WittVec { coords })
    }

    /// `F(x) - x`.
    pub fn wp(&self, x: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        Ok(self.sub_w(&self.frobenius_w(x)?, x))
    }

    /// Ghost components `g_i = sum_{j<=i} p^j x_j^{p^{i-j}}` in the base ring.
    pub fn ghost(&self, x: &WittVec<R::Elem>) -> Vec<R::Elem> {
        self.check(x);
        (0..self.n)
            .map(|i| {
                let mut acc = self.base.zero();
                for j in 0..=i {
                    let pj = self.base.from_int(&BigInt::from(self.p).pow(j as u32));
                    let xp = self.base.pow(&x.coords[j], self.p.pow((i - j) as u32));
                    acc = self.base.add(&acc, &self.base.mul(&pj, &xp));
                }
                acc
            })
            .collect()
    }

    /// `c * 1` by double-and-add.
    pub fn from_integer(&self, c: &BigInt) -> WittVec<R::Elem> {
        let one = self.one_w();
        let mut acc = self.zero_w();
        let mag = c.abs();
        for bit in (0..mag.bits()).rev() {
            acc = self.add_w(&acc, &acc);
            if mag.bit(bit) {
                acc = self.add_w(&acc, &one);
            }
        }
        if c.is_negative() {
            self.neg_w(&acc)
        } else {
            acc
        }
    }

    pub fn scalar_mul(&self, c: &BigInt, x: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        if c.is_zero() {
            return self.zero_w();
        }
        self.mul_w(&self.from_integer(c), x)
    }

    /// Inverse of a vector whose first coordinate is a unit, solved one
    /// coordinate at a time.
    pub fn invert(&self, x: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        self.check(x);
        let x0_inv = self.base.inv(&x.coords[0]).ok_or_else(|| Error::NotInvertible("first Witt coordinate".into()))?;
        let mut y = self.zero_w();
        y.coords[0] = x0_inv;
        for i in 1..self.n {
            // coordinate i of x*y is g_i(x) y_i + (terms in y_{<i})
            let partial = self.mul_w(x, &y);
            let lead = self.ghost_component(x, i);
            let lead_inv = self.base.inv(&lead).ok_or_else(|| Error::NotInvertible("ghost component".into()))?;
            y.coords[i] = self.base.mul(&self.base.neg(&partial.coords[i]), &lead_inv);
        }
        Ok(y)
    }

    fn ghost_component(&self, x: &WittVec<R::Elem>, i: usize) -> R::Elem {
        let mut acc = self.base.zero();
        for j in 0..=i {
            let pj = self.base.from_int(&BigInt::from(self.p).pow(j as u32));
            if self.base.is_zero(&pj) {
                continue;
            }
            let xp = self.base.pow(&x.coords[j], self.p.pow((i - j) as u32));
            acc = self.base.add(&acc, &self.base.mul(&pj, &xp));
        }
        acc
    }

    /// Least index of a nonzero coordinate, `n` for zero.
    pub fn valuation(&self, x: &WittVec<R::Elem>) -> usize {
        x.coords.iter().position(|c| !self.base.is_zero(c)).unwrap_or(self.n)
    }

    /// Applies a coefficient-ring map coordinate-wise.
    pub fn map_coords<S: Ring>(&self, x: &WittVec<R::Elem>, f: impl Fn(&R::Elem) -> S::Elem) -> WittVec<S::Elem> {
        WittVec { coords: x.coords.iter().map(f).collect() }
    }
}

impl<R: Ring> Ring for WittRing<R> {
    type Elem = WittVec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        self.zero_w()
    }
    fn one(&self) -> Self::Elem {
        self.one_w()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add_w(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.neg_w(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul_w(a, b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coords.iter().all(|c| self.base.is_zero(c))
    }
    fn is_exact_zero(&self, a: &Self::Elem) -> bool {
        a.coords.iter().all(|c| self.base.is_exact_zero(c))
    }
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.coords.iter().zip(&b.coords).all(|(x, y)| self.base.equal(x, y))
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.from_integer(n)
    }
    fn frobenius(&self, a: &Self::Elem) -> Option<Self::Elem> {
        // coordinate Frobenius is the p-th power only when n = 1
        if self.n == 1 {
            self.frobenius_w(a).ok()
        } else {
            None
        }
    }
    fn char_p(&self) -> Option<u64> {
        (self.n == 1).then_some(self.p).filter(|_| self.base.char_p() == Some(self.p))
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.invert(a).ok()
    }
}

impl WittRing<FqCtx> {
    /// `Tr_{W(k)/W(F_p)}`: the Witt sum of the coordinate-wise Frobenius
    /// conjugates. Every coordinate of the result lies in `F_p`.
    pub fn trace_wk(&self, x: &WittVec<FqElem>) -> WittVec<FqElem> {
        let k = &self.base;
        let mut acc = self.zero_w();
        let mut conj = x.clone();
        for _ in 0..k.m() {
            acc = self.add_w(&acc, &conj);
            conj = WittVec { coords: conj.coords.iter().map(|&c| k.frob(c)).collect() };
        }
        acc
    }

    /// Field Frobenius applied to every coordinate `s` times.
    pub fn field_twist(&self, x: &WittVec<FqElem>, s: i64) -> WittVec<FqElem> {
        WittVec { coords: x.coords.iter().map(|&c| self.base.frob_iter(c, s)).collect() }
    }

    /// Witt vector over `F_p` (coordinates in the prime field) to `Z/p^n`.
    pub fn prime_coords_to_int(&self, x: &WittVec<FqElem>) -> u64 {
        let coords: Vec<u64> = x
            .coords
            .iter()
            .map(|c| {
                let v = self.base.coeffs(*c);
                assert!(v[1..].iter().all(|&d| d == 0), "coordinate outside the prime field");
                v[0]
            })
            .collect();
        galois::prime_witt_to_int(self.p, &coords)
    }

    /// The vector of an element of `Z/p^n`, coordinates in the prime field.
    pub fn int_to_prime_coords(&self, t: u64) -> WittVec<FqElem> {
        let coords = galois::int_to_prime_witt(self.p, self.n, t);
        WittVec { coords: coords.into_iter().map(|c| self.base.prime(c as i64)).collect() }
    }

    pub fn random<Rn: rand::Rng + ?Sized>(&self, rng: &mut Rn) -> WittVec<FqElem> {
        WittVec { coords: (0..self.n).map(|_| self.base.random(rng)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;
    use crate::ring::Integers;
    use rand::SeedableRng;

    fn w(k: &FqCtx, c: &[u32]) -> WittVec<FqElem> {
        let _ = k;
        WittVec::new(c.iter().map(|&v| FqElem(v)).collect())
    }

    #[test]
    fn small_examples() {
        let f2 = make_field(2, 1).unwrap();
        let w2 = WittRing::new(f2.clone(), 2, 2).unwrap();
        assert_eq!(w2.add_w(&w(&f2, &[1, 0]), &w(&f2, &[1, 0])), w(&f2, &[0, 1]));
        assert_eq!(w2.mul_w(&w(&f2, &[1, 0]), &w(&f2, &[1, 0])), w(&f2, &[1, 0]));
        assert_eq!(w2.verschiebung(&w(&f2, &[1, 1])), w(&f2, &[0, 1]));
        // p x = V F x
        let x = w(&f2, &[1, 0]);
        assert_eq!(w2.scalar_mul(&BigInt::from(2), &x), w2.verschiebung(&w2.frobenius_w(&x).unwrap()));
        let y = w2.invert(&w(&f2, &[1, 1])).unwrap();
        assert_eq!(w2.mul_w(&w(&f2, &[1, 1]), &y), w2.one_w());
        assert_eq!(w2.invert(&w2.one_w()).unwrap(), w2.one_w());
        assert!(w2.invert(&w(&f2, &[0, 1])).is_err());

        let zi = WittRing::new(Integers, 2, 2).unwrap();
        let g = zi.ghost(&WittVec::new(vec![BigInt::from(1), BigInt::from(1)]));
        assert_eq!(g, vec![BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn wp_and_traces_over_f4() {
        let f4 = make_field(2, 2).unwrap();
        let w2 = WittRing::new(f4.clone(), 2, 2).unwrap();
        let u = f4.generator();
        // trace of [u] is 3 in Z/4
        let t = w2.trace_wk(&w2.teichmuller(&u));
        assert_eq!(w2.prime_coords_to_int(&t), 3);
        for c in 0..4 {
            let x = w2.int_to_prime_coords(c);
            assert!(w2.is_zero(&w2.wp(&x).unwrap()));
            assert_eq!(w2.prime_coords_to_int(&x), c);
        }
        // wp([u]) = [u^2] - [u]
        let expect = w2.sub_w(&w2.teichmuller(&f4.frob(u)), &w2.teichmuller(&u));
        assert_eq!(w2.wp(&w2.teichmuller(&u)).unwrap(), expect);
    }

    #[test]
    fn ghost_is_a_ring_morphism_over_integers() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        use rand::Rng as _;
        for (p, n) in [(2, 4), (3, 3), (5, 2), (3, 4)] {
            let zr = WittRing::new(Integers, p, n).unwrap();
            for _ in 0..10 {
                let x = WittVec::new((0..n).map(|_| BigInt::from(rng.gen_range(-5..6))).collect());
                let y = WittVec::new((0..n).map(|_| BigInt::from(rng.gen_range(-5..6))).collect());
                let (gx, gy) = (zr.ghost(&x), zr.ghost(&y));
                let gs = zr.ghost(&zr.add_w(&x, &y));
                let gm = zr.ghost(&zr.mul_w(&x, &y));
                let gn = zr.ghost(&zr.neg_w(&x));
                for i in 0..n {
                    assert_eq!(gs[i], &gx[i] + &gy[i]);
                    assert_eq!(gm[i], &gx[i] * &gy[i]);
                    assert_eq!(gn[i], -&gx[i]);
                }
            }
        }
    }

    #[test]
    fn ring_laws_over_finite_fields() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (p, m, n) in [(2, 1, 3), (2, 2, 4), (3, 2, 3), (5, 1, 3), (3, 1, 4), (2, 3, 5)] {
            let k = make_field(p, m).unwrap();
            let wr = WittRing::new(k.clone(), p, n).unwrap();
            for _ in 0..20 {
                let (x, y, z) = (wr.random(&mut rng), wr.random(&mut rng), wr.random(&mut rng));
                assert_eq!(wr.add_w(&wr.add_w(&x, &y), &z), wr.add_w(&x, &wr.add_w(&y, &z)));
                assert_eq!(wr.mul_w(&wr.mul_w(&x, &y), &z), wr.mul_w(&x, &wr.mul_w(&y, &z)));
                assert_eq!(wr.mul_w(&x, &wr.add_w(&y, &z)), wr.add_w(&wr.mul_w(&x, &y), &wr.mul_w(&x, &z)));
                assert_eq!(wr.add_w(&x, &y), wr.add_w(&y, &x));
                assert!(wr.is_zero(&wr.add_w(&x, &wr.neg_w(&x))));
                // wp is additive
                let lhs = wr.wp(&wr.add_w(&x, &y)).unwrap();
                assert_eq!(lhs, wr.add_w(&wr.wp(&x).unwrap(), &wr.wp(&y).unwrap()));
                // V(x) y = V(x F(y))
                let fy = wr.frobenius_w(&y).unwrap();
                assert_eq!(wr.mul_w(&wr.verschiebung(&x), &y), wr.verschiebung(&wr.mul_w(&x, &fy)));
                // V is additive
                assert_eq!(wr.verschiebung(&wr.add_w(&x, &y)), wr.add_w(&wr.verschiebung(&x), &wr.verschiebung(&y)));
                // Teichmuller is multiplicative
                let (a, b) = (k.random(&mut rng), k.random(&mut rng));
                assert_eq!(wr.teichmuller(&k.mul(&a, &b)), wr.mul_w(&wr.teichmuller(&a), &wr.teichmuller(&b)));
                // trace is invariant under twisting
                assert_eq!(wr.trace_wk(&wr.field_twist(&x, 1)), wr.trace_wk(&x));
                if x.coords[0].0 != 0 {
                    assert_eq!(wr.mul_w(&x, &wr.invert(&x).unwrap()), wr.one_w());
                }
                // p^j x = 0 iff v(x) >= n - j
                for j in 0..=n {
                    let pj = BigInt::from(p).pow(j as u32);
                    assert_eq!(wr.is_zero(&wr.scalar_mul(&pj, &x)), wr.valuation(&x) >= n - j);
                }
            }
        }
    }

    #[test]
    fn disjoint_support_addition_is_concatenation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let k = make_field(3, 2).unwrap();
        let wr = WittRing::new(k.clone(), 3, 4).unwrap();
        for j in 1..4 {
            let x = wr.random(&mut rng);
            let y = wr.random(&mut rng);
            let mut head = x.clone();
            for c in head.coords[j..].iter_mut() {
                *c = FqElem(0);
            }
            let sum = wr.add_w(&head, &wr.verschiebung_pow(&y, j));
            assert_eq!(&sum.coords[..j], &x.coords[..j]);
            assert_eq!(&sum.coords[j..], &y.coords[..4 - j]);
        }
    }

    #[test]
    fn length_and_context_errors() {
        let k = make_field(5, 1).unwrap();
        assert!(matches!(WittRing::new(k.clone(), 5, 4), Err(Error::WittLength { .. })));
        assert!(matches!(WittRing::new(k, 3, 2), Err(Error::ContextMismatch(_))));
        assert!(WittRing::new(Integers, 2, 2).unwrap().frobenius_w(&WittVec::new(vec![BigInt::from(1); 2])).is_err());
    }
}
