//! Truncated Laurent series `sum_{i >= v} a_i T^i + O(T^N)` over a
//! coefficient ring, and the canonical product decomposition of units of
//! `k((T))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::{FqCtx, FqElem};
use crate::ring::{p_adic_valuation, Ring};
use crate::witt::galois::{GaloisRing, GrElem};

/// Precision of a series known exactly.
pub const EXACT: i64 = i64::MAX / 4;

fn shift_prec(prec: i64, by: i64) -> i64 {
    if prec >= EXACT {
        EXACT
    } else {
        (prec + by).min(EXACT)
    }
}

/// `T^val * (coeffs[0] + coeffs[1] T + ...) + O(T^prec)`.
///
/// Canonical form: the first and last stored coefficients are nonzero, and
/// the zero series has no coefficients and `val == prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent<E> {
    pub val: i64,
    pub coeffs: Vec<E>,
    pub prec: i64,
}

impl<E> Laurent<E> {
    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    /// Exponents of the stored coefficients.
    pub fn exponents(&self) -> std::ops::Range<i64> {
        self.val..self.val + self.coeffs.len() as i64
    }

    /// One past the largest stored exponent.
    pub fn end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }
}

/// The ring of truncated Laurent series over `base`. Results are cut at
/// `cap` so that exact inputs do not grow without bound.
#[derive(Clone, Debug)]
pub struct LaurentRing<R: Ring> {
    base: R,
    cap: i64,
}

impl<R: Ring> LaurentRing<R> {
    pub fn new(base: R) -> Self {
        LaurentRing { base, cap: EXACT }
    }

    pub fn with_cap(base: R, cap: i64) -> Self {
        LaurentRing { base, cap: cap.min(EXACT) }
    }

    pub fn base(&self) -> &R {
        &self.base
    }
    pub fn cap(&self) -> i64 {
        self.cap
    }

    /// Normalizes raw coefficients starting at `val`, dropping everything at
    /// or beyond `prec`.
    pub fn make(&self, val: i64, mut coeffs: Vec<R::Elem>, prec: i64) -> Laurent<R::Elem> {
        let prec = prec.min(self.cap);
        let keep = (prec - val).clamp(0, coeffs.len() as i64) as usize;
        coeffs.truncate(keep);
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !self.base.is_zero(c));
        match lead {
            None => Laurent { val: prec, coeffs: Vec::new(), prec },
            Some(s) => {
                coeffs.drain(..s);
                Laurent { val: val + s as i64, coeffs, prec }
            }
        }
    }

    pub fn zero_to(&self, prec: i64) -> Laurent<R::Elem> {
        let prec = prec.min(self.cap);
        Laurent { val: prec, coeffs: Vec::new(), prec }
    }

    pub fn monomial(&self, c: R::Elem, e: i64) -> Laurent<R::Elem> {
        self.make(e, vec![c], EXACT)
    }

    /// Builds from `(exponent, coefficient)` terms.
    pub fn from_terms(&self, terms: &[(i64, R::Elem)], prec: i64) -> Laurent<R::Elem> {
        if terms.is_empty() {
            return self.zero_to(prec);
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![self.base.zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = self.base.add(slot, c);
        }
        self.make(lo, coeffs, prec)
    }

    /// Coefficient of `T^e`; `None` when `e` is at or beyond the precision.
    pub fn coeff(&self, f: &Laurent<R::Elem>, e: i64) -> Option<R::Elem> {
        if e >= f.prec {
            return None;
        }
        if e < f.val || e >= f.end() {
            return Some(self.base.zero());
        }
        Some(f.coeffs[(e - f.val) as usize].clone())
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms<'a>(&'a self, f: &'a Laurent<R::Elem>) -> impl Iterator<Item = (i64, &'a R::Elem)> + 'a {
        f.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.base.is_zero(c))
            .map(move |(i, c)| (f.val + i as i64, c))
    }

    pub fn truncate(&self, f: &Laurent<R::Elem>, prec: i64) -> Laurent<R::Elem> {
        self.make(f.val, f.coeffs.clone(), prec.min(f.prec))
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, f: &Laurent<R::Elem>, k: i64) -> Laurent<R::Elem> {
        self.make(f.val + k, f.coeffs.clone(), shift_prec(f.prec, k))
    }

    /// Terms with exponent in `lo..hi`, exact outside the precision window.
    pub fn slice(&self, f: &Laurent<R::Elem>, lo: i64, hi: i64) -> Laurent<R::Elem> {
        let terms: Vec<(i64, R::Elem)> = self.terms(f).filter(|(e, _)| *e >= lo && *e < hi).map(|(e, c)| (e, c.clone())).collect();
        self.from_terms(&terms, EXACT)
    }

    pub fn scale(&self, c: &R::Elem, f: &Laurent<R::Elem>) -> Laurent<R::Elem> {
        let coeffs = f.coeffs.iter().map(|a| self.base.mul(c, a)).collect();
        self.make(f.val, coeffs, f.prec)
    }

    /// Formal derivative `d/dT`.
    pub fn derivative(&self, f: &Laurent<R::Elem>) -> Laurent<R::Elem> {
        let coeffs: Vec<R::Elem> = f
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| self.base.mul(&self.base.from_i64(f.val + i as i64), c))
            .collect();
        self.make(f.val - 1, coeffs, shift_prec(f.prec, -1))
    }

    /// Coefficient of `T^{-1}`.
    pub fn residue(&self, f: &Laurent<R::Elem>) -> Result<R::Elem> {
        self.coeff(f, -1).ok_or_else(|| Error::PrecisionShortfall {
            needed: 0,
            have: f.prec,
            what: "residue needs the T^-1 coefficient".into(),
        })
    }

    /// Inverse of a series whose leading coefficient is a unit, computed to
    /// absolute precision `min(prec - 2v, target)`.
    pub fn inverse_to(&self, f: &Laurent<R::Elem>, target: i64) -> Result<Laurent<R::Elem>> {
        let Some(lead) = f.coeffs.first() else { return Err(Error::ZeroInput) };
        let lead_inv = self.base.inv(lead).ok_or_else(|| Error::NotInvertible("leading coefficient".into()))?;
        let v = f.val;
        let prec = shift_prec(f.prec, -2 * v).min(target).min(self.cap);
        if prec >= EXACT {
            if f.coeffs.len() == 1 {
                return Ok(self.monomial(lead_inv, -v));
            }
            return Err(Error::PrecisionShortfall {
                needed: EXACT,
                have: target,
                what: "inverse of an exact non-monomial series needs a target precision".into(),
            });
        }
        let len = (prec + v).max(0) as usize;
        let mut out: Vec<R::Elem> = Vec::with_capacity(len);
        for k in 0..len {
            // sum_{i=1..k} f_i out_{k-i}
            let mut acc = if k == 0 { self.base.one() } else { self.base.zero() };
            for i in 1..=k.min(f.coeffs.len() - 1) {
                if self.base.is_zero(&f.coeffs[i]) {
                    continue;
                }
                let t = self.base.mul(&f.coeffs[i], &out[k - i]);
                acc = self.base.sub(&acc, &t);
            }
            out.push(self.base.mul(&acc, &lead_inv));
        }
        Ok(self.make(-v, out, prec))
    }

    /// `f' / f`.
    pub fn dlog(&self, f: &Laurent<R::Elem>) -> Result<Laurent<R::Elem>> {
        let inv = self.inverse_to(f, EXACT)?;
        Ok(self.mul_l(&self.derivative(f), &inv))
    }

    pub fn map<S: Ring>(&self, target: &LaurentRing<S>, f: &Laurent<R::Elem>, g: impl Fn(&R::Elem) -> S::Elem) -> Laurent<S::Elem> {
        target.make(f.val, f.coeffs.iter().map(g).collect(), f.prec)
    }

    pub fn add_l(&self, a: &Laurent<R::Elem>, b: &Laurent<R::Elem>) -> Laurent<R::Elem> {
        let prec = a.prec.min(b.prec).min(self.cap);
        if a.coeffs.is_empty() {
            return self.truncate(b, prec);
        }
        if b.coeffs.is_empty() {
            return self.truncate(a, prec);
        }
        let lo = a.val.min(b.val);
        let hi = a.end().max(b.end()).min(prec);
        if hi <= lo {
            return self.zero_to(prec);
        }
        let mut coeffs = vec![self.base.zero(); (hi - lo) as usize];
        for (src, off) in [(a, a.val - lo), (b, b.val - lo)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let idx = off as usize + i;
                if idx < coeffs.len() {
                    coeffs[idx] = self.base.add(&coeffs[idx], c);
                }
            }
        }
        self.make(lo, coeffs, prec)
    }

    pub fn mul_l(&self, a: &Laurent<R::Elem>, b: &Laurent<R::Elem>) -> Laurent<R::Elem> {
        let prec = shift_prec(a.prec, b.val).min(shift_prec(b.prec, a.val)).min(self.cap);
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero_to(prec);
        }
        let lo = a.val + b.val;
        let len = ((a.end() + b.end() - 1).min(prec) - lo).max(0) as usize;
        let mut coeffs = vec![self.base.zero(); len];
        let bnz: Vec<(usize, &R::Elem)> = b.coeffs.iter().enumerate().filter(|(_, c)| !self.base.is_zero(c)).collect();
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if self.base.is_zero(x) {
                continue;
            }
            for &(j, y) in &bnz {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] = self.base.add(&coeffs[i + j], &self.base.mul(x, y));
            }
        }
        self.make(lo, coeffs, prec)
    }
}

impl<R: Ring> Ring for LaurentRing<R> {
    type Elem = Laurent<R::Elem>;

    fn zero(&self) -> Self::Elem {
        self.zero_to(EXACT)
    }
    fn one(&self) -> Self::Elem {
        self.monomial(self.base.one(), 0)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add_l(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Laurent { val: a.val, coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(), prec: a.prec }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul_l(a, b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.is_empty()
    }
    fn is_exact_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.is_empty() && a.is_exact()
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.monomial(self.base.from_int(n), 0)
    }
    fn frobenius(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let p = self.base.char_p()? as i64;
        let mut coeffs = Vec::with_capacity(a.coeffs.len() * p as usize);
        for (i, c) in a.coeffs.iter().enumerate() {
            if i > 0 {
                coeffs.extend(std::iter::repeat_n(self.base.zero(), p as usize - 1));
            }
            coeffs.push(self.base.frobenius(c)?);
        }
        let prec = if a.is_exact() { EXACT } else { a.prec.saturating_mul(p).min(EXACT) };
        if coeffs.is_empty() {
            return Some(self.zero_to(prec));
        }
        Some(self.make(a.val * p, coeffs, prec))
    }
    fn char_p(&self) -> Option<u64> {
        self.base.char_p()
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.inverse_to(a, EXACT).ok()
    }
}

/// JSON form `{"v": int, "N": int, "coeffs": [...]}`; `N` is `null` for an
/// exact series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson<C> {
    pub v: i64,
    #[serde(rename = "N")]
    pub n: Option<i64>,
    pub coeffs: Vec<C>,
}

impl LaurentRing<FqCtx> {
    pub fn to_json(&self, f: &Laurent<FqElem>) -> LaurentJson<Vec<u64>> {
        let k = &self.base;
        LaurentJson {
            v: f.val,
            n: (!f.is_exact()).then_some(f.prec),
            coeffs: f.coeffs.iter().map(|&c| k.coeffs(c)).collect(),
        }
    }

    pub fn from_json(&self, j: &LaurentJson<Vec<u64>>) -> Result<Laurent<FqElem>> {
        let coeffs = j.coeffs.iter().map(|c| self.base.from_coeffs(c)).collect::<Result<Vec<_>>>()?;
        let prec = j.n.unwrap_or(EXACT);
        if prec < j.v + coeffs.len() as i64 && coeffs.iter().skip((prec - j.v).max(0) as usize).any(|c| c.0 != 0) {
            return Err(Error::Invalid(format!("coefficients beyond the precision N = {prec}")));
        }
        Ok(self.make(j.v, coeffs, prec))
    }

    /// Random series with support in `lo..hi`, exact.
    pub fn random<Rn: rand::Rng + ?Sized>(&self, rng: &mut Rn, lo: i64, hi: i64, density: f64) -> Laurent<FqElem> {
        let mut terms = Vec::new();
        for e in lo..hi {
            if rng.gen_bool(density) {
                terms.push((e, self.base.random_nonzero(rng)));
            }
        }
        self.from_terms(&terms, EXACT)
    }
}

/// `y = lead * T^e * prod_{(i,p)=1, j>=0} (1 - a_{ij} T^i)^{p^j}`, with
/// every factor `i p^j < prec` recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitDecomp {
    pub e: i64,
    pub lead: FqElem,
    /// Nonzero entries `a_{ij}`, keyed by `(i, j)`.
    pub table: BTreeMap<(u64, u32), FqElem>,
    /// Relative precision: factors with `i p^j < prec` are all accounted for.
    pub prec: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitDecompJson {
    pub e: i64,
    pub lead: Vec<u64>,
    pub table: Vec<(u64, u32, Vec<u64>)>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
}

impl UnitDecomp {
    pub fn trivial(prec: i64) -> Self {
        UnitDecomp { e: 0, lead: FqElem(1), table: BTreeMap::new(), prec }
    }

    pub fn to_json(&self, k: &FqCtx) -> UnitDecompJson {
        UnitDecompJson {
            e: self.e,
            lead: k.coeffs(self.lead),
            table: self.table.iter().map(|(&(i, j), &a)| (i, j, k.coeffs(a))).collect(),
            n: Some(self.prec),
        }
    }

    /// Reads the JSON form; entries with `i` divisible by `p` are rejected.
    pub fn from_json(k: &FqCtx, j: &UnitDecompJson) -> Result<Self> {
        let lead = k.from_coeffs(&j.lead)?;
        if lead.0 == 0 {
            return Err(Error::ZeroInput);
        }
        let mut table = BTreeMap::new();
        let mut max_index = 0i64;
        for (i, jj, a) in &j.table {
            if *i == 0 || i % k.p() == 0 {
                return Err(Error::Invalid(format!("unit factor index {i} must be positive and prime to p")));
            }
            let a = k.from_coeffs(a)?;
            if a.0 != 0 {
                table.insert((*i, *jj), a);
                max_index = max_index.max((*i as i64).saturating_mul(k.p().pow(*jj) as i64));
            }
        }
        Ok(UnitDecomp { e: j.e, lead, table, prec: j.n.unwrap_or(max_index + 1) })
    }
}

/// Splits `y` into `lead * T^e * (one-unit)` and peels the one-unit into
/// factors `(1 - a T^i)^{p^j}` until every index `i p^j < prec` is handled.
pub fn unit_decompose(ring: &LaurentRing<FqCtx>, y: &Laurent<FqElem>, prec: i64) -> Result<UnitDecomp> {
    let k = ring.base();
    let p = k.p();
    let Some(&lead) = y.coeffs.first() else { return Err(Error::ZeroInput) };
    let e = y.val;
    let have = if y.is_exact() { EXACT } else { y.prec - e };
    if prec > have {
        return Err(Error::PrecisionShortfall { needed: prec, have, what: "unit decomposition".into() });
    }
    let len = prec.max(0) as usize;
    let lead_inv = k.inverse(lead)?;
    let mut u: Vec<FqElem> = (0..len).map(|i| y.coeffs.get(i).map_or(FqElem(0), |&c| k.mul(&c, &lead_inv))).collect();
    let mut table = BTreeMap::new();
    let mut start = 1usize;
    while let Some(m) = (start..len).find(|&m| u[m].0 != 0) {
        let j = p_adic_valuation(m as u64, p);
        let i = m as u64 / p.pow(j);
        // (1 - a T^i)^{p^j} = 1 - a^{p^j} T^m opens the remaining unit
        let b = k.neg(&u[m]);
        let a = k.frob_iter(b, -(j as i64));
        table.insert((i, j), a);
        for t in m..len {
            let prev = u[t - m];
            if prev.0 != 0 {
                u[t] = k.add(&u[t], &k.mul(&b, &prev));
            }
        }
        debug_assert_eq!(u[m].0, 0);
        start = m + 1;
    }
    Ok(UnitDecomp { e, lead, table, prec })
}

/// Expands the product back into a series, with absolute precision
/// `e + prec`.
pub fn unit_recompose(ring: &LaurentRing<FqCtx>, u: &UnitDecomp) -> Laurent<FqElem> {
    let k = ring.base();
    let p = k.p();
    let len = u.prec.max(0) as usize;
    let mut acc = vec![FqElem(0); len];
    if len > 0 {
        acc[0] = FqElem(1);
    }
    for (&(i, j), &a) in &u.table {
        let m = (i as u128 * (p as u128).pow(j)) as usize;
        if m >= len {
            continue;
        }
        let b = k.frob_iter(a, j as i64);
        // multiply by 1 - b T^m, top down
        for t in (m..len).rev() {
            let prev = acc[t - m];
            if prev.0 != 0 {
                acc[t] = k.sub(&acc[t], &k.mul(&b, &prev));
            }
        }
    }
    let acc: Vec<FqElem> = acc.into_iter().map(|c| k.mul(&c, &u.lead)).collect();
    ring.make(u.e, acc, shift_prec(u.prec, u.e))
}

/// A unit over `W_n(k)` kept as a product: `[lead] T^e prod (1 - [a_{ij}] T^i)^{p^j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeUnit {
    pub e: i64,
    pub lead: GrElem,
    pub table: Vec<(u64, u32, GrElem)>,
    pub prec: i64,
}

/// Replaces every entry by its Teichmuller lift.
pub fn tilde_unit(gr: &GaloisRing, u: &UnitDecomp) -> TildeUnit {
    TildeUnit {
        e: u.e,
        lead: gr.teich(u.lead),
        table: u.table.iter().map(|(&(i, j), &a)| (i, j, gr.teich(a))).collect(),
        prec: u.prec,
    }
}

/// `e T^{-1} + sum p^j dlog(1 - [a] T^i)` to absolute precision `prec`,
/// with `dlog(1 - [a] T^i) = -i sum_{s>=1} [a]^s T^{is-1}`.
pub fn dlog_tilde(ring: &LaurentRing<GaloisRing>, u: &TildeUnit, prec: i64) -> Laurent<GrElem> {
    let gr = ring.base();
    let p = gr.p();
    let mut terms: Vec<(i64, GrElem)> = vec![(-1, gr.from_i64(u.e))];
    for (i, j, a) in &u.table {
        let scale = gr.from_int(&(BigInt::from(*i) * BigInt::from(p).pow(*j)));
        let scale = gr.neg(&scale);
        if gr.is_zero(&scale) {
            continue;
        }
        let mut pw = a.clone();
        let mut s = 1i64;
        while (*i as i64) * s - 1 < prec {
            terms.push(((*i as i64) * s - 1, gr.mul(&scale, &pw)));
            pw = gr.mul(&pw, a);
            s += 1;
        }
    }
    ring.from_terms(&terms, prec)
}
