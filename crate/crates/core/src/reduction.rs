//! Reduced representatives of `W_n(k((T))) / wp W_n(k((T)))`.
//!
//! Every class has a unique representative `c [alpha] + sum_{(i,p)=1} c_i [T^{-i}]`
//! with `c` in `Z/p^n` and `c_i` in `W_n(k)`. The reduction sweeps the levels
//! `j = 0..n`; at level `j` the residual is `V^j(sigma)` and the first
//! coordinate of `sigma` is cleared by subtracting an element whose class is
//! known explicitly:
//!
//! * a monomial `a T^{-i p^s}` equals `d T^{-i}` (with `d^{p^s} = a`) plus
//!   `wp(sum_{t<s} (d T^{-i})^{p^t})`;
//! * a constant `a_0` equals `t alpha^{p^j} + wp(b)` with `t` in `F_p`;
//! * a positive part `f` equals `wp(-sum_s f^{p^s})`.
//!
//! With `G` the sum of the `wp`-preimages, the element subtracted is
//! `wp([G]) + t [alpha^{p^j}] + sum_i [D_i T^{-i}]`, whose first coordinate
//! matches; carries land in the higher coordinates and are handled by the
//! next levels. The identities `V^j [alpha^{p^j}] = p^j [alpha]` and
//! `V^j [D T^{-i}] = V^j[D^{p^j}] [T^{-i}] - wp(V^j sum_{t<j} [(D T^{-i})^{p^t}])`
//! turn the subtracted pieces into the reduced form and the witness.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::{FqCtx, FqElem};
use crate::laurent::{Laurent, LaurentRing, EXACT};
use crate::ring::{p_adic_valuation, Ring};
use crate::witt::galois::{int_to_prime_witt, GaloisRing};
use crate::witt::{WittRing, WittVec};

/// Default working precision.
pub const DEFAULT_PRECISION: i64 = 64;

pub type Series = Laurent<FqElem>;
pub type SeriesWitt = WittVec<Series>;

/// `c [alpha] + sum_i c_i [T^{-i}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedClass {
    pub n: usize,
    pub alpha: FqElem,
    /// Element of `Z/p^n`.
    pub c: u64,
    /// Nonzero `c_i` in `W_n(k)`, indices prime to `p`.
    pub table: BTreeMap<u64, WittVec<FqElem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedClassJson {
    pub n: usize,
    pub c: u64,
    pub table: Vec<(u64, Vec<Vec<u64>>)>,
}

/// Output of [`Reducer::reduce`]: `x = embed(reduced) + wp(witness)`.
#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub reduced: ReducedClass,
    pub witness: SeriesWitt,
    /// Smallest coordinate precision met during the sweep.
    pub precision: i64,
}

/// `n_c`, `n_0` and primitivity of a reduced class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInvariants {
    pub n_c: usize,
    pub n_0: usize,
    pub primitive: bool,
}

impl ReducedClass {
    pub fn zero(k: &FqCtx, n: usize) -> Self {
        ReducedClass { n, alpha: k.nonzero_trace_element(), c: 0, table: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.c == 0 && self.table.is_empty()
    }

    /// Valuation of every table entry, keyed by index.
    pub fn valuations(&self) -> BTreeMap<u64, usize> {
        self.table.iter().map(|(&i, c)| (i, c.coords.iter().position(|x| x.0 != 0).unwrap_or(self.n))).collect()
    }

    pub fn invariants(&self, p: u64) -> ClassInvariants {
        let n_c = self.valuations().values().copied().min().unwrap_or(self.n);
        let v_c = if self.c == 0 { self.n } else { p_adic_valuation(self.c, p) as usize };
        let n_0 = n_c.min(v_c);
        ClassInvariants { n_c, n_0, primitive: n_0 == 0 }
    }

    pub fn to_json(&self, k: &FqCtx) -> ReducedClassJson {
        ReducedClassJson {
            n: self.n,
            c: self.c,
            table: self.table.iter().map(|(&i, w)| (i, w.coords.iter().map(|&x| k.coeffs(x)).collect())).collect(),
        }
    }

    pub fn from_json(k: &FqCtx, j: &ReducedClassJson) -> Result<Self> {
        let p = k.p();
        let pn = p.checked_pow(j.n as u32).ok_or(Error::ModulusTooLarge { p, n: j.n })?;
        let mut table = BTreeMap::new();
        for (i, coords) in &j.table {
            if *i == 0 || i % p == 0 {
                return Err(Error::Invalid(format!("reduced index {i} must be positive and prime to p")));
            }
            if coords.len() != j.n {
                return Err(Error::Invalid(format!("entry {i} has {} coordinates, expected {}", coords.len(), j.n)));
            }
            let w = WittVec::new(coords.iter().map(|c| k.from_coeffs(c)).collect::<Result<Vec<_>>>()?);
            if w.coords.iter().any(|x| x.0 != 0) {
                table.insert(*i, w);
            }
        }
        Ok(ReducedClass { n: j.n, alpha: k.nonzero_trace_element(), c: j.c % pn, table })
    }

    /// Sum of classes: `c` in `Z/p^n`, entries by Witt addition over `k`.
    pub fn add(&self, other: &ReducedClass, gr: &GaloisRing) -> ReducedClass {
        let pn = gr.modulus_pn();
        let mut table = self.table.clone();
        for (&i, w) in &other.table {
            let sum = match table.get(&i) {
                Some(v) => gr.to_witt(&gr.add(&gr.from_witt(&v.coords), &gr.from_witt(&w.coords))),
                None => w.coords.clone(),
            };
            if sum.iter().all(|x| x.0 == 0) {
                table.remove(&i);
            } else {
                table.insert(i, WittVec::new(sum));
            }
        }
        ReducedClass { n: self.n, alpha: self.alpha, c: (self.c + other.c) % pn, table }
    }
}

/// Reduction engine for a fixed field and length; holds the Witt rings
/// over `k((T))` for every tail length.
#[derive(Clone, Debug)]
pub struct Reducer {
    k: FqCtx,
    n: usize,
    series: LaurentRing<FqCtx>,
    /// `rings[l]` is `W_l(k((T)))`, index 0 unused.
    rings: Vec<Option<WittRing<LaurentRing<FqCtx>>>>,
    alpha: FqElem,
    alpha_trace_inv: u64,
}

struct LevelData {
    t: u64,
    d: BTreeMap<u64, FqElem>,
    g: Series,
}

impl Reducer {
    pub fn new(k: &FqCtx, n: usize) -> Result<Self> {
        let series = LaurentRing::new(k.clone());
        let mut rings = vec![None];
        for l in 1..=n {
            rings.push(Some(WittRing::new(series.clone(), k.p(), l)?));
        }
        let alpha = k.nonzero_trace_element();
        let p = k.p();
        let tr = k.trace_to_prime(alpha);
        let alpha_trace_inv = (1..p).find(|&s| s * tr % p == 1).expect("nonzero trace is invertible mod p");
        Ok(Reducer { k: k.clone(), n, series, rings, alpha, alpha_trace_inv })
    }

    pub fn field(&self) -> &FqCtx {
        &self.k
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn series(&self) -> &LaurentRing<FqCtx> {
        &self.series
    }
    pub fn alpha(&self) -> FqElem {
        self.alpha
    }

    /// `W_l(k((T)))` for `1 <= l <= n`.
    pub fn ring(&self, l: usize) -> &WittRing<LaurentRing<FqCtx>> {
        self.rings[l].as_ref().expect("tail length in range")
    }

    /// `W_n(k((T)))`.
    pub fn full(&self) -> &WittRing<LaurentRing<FqCtx>> {
        self.ring(self.n)
    }

    /// `x` with every coordinate cut to precision `prec`.
    pub fn truncate(&self, x: &SeriesWitt, prec: i64) -> SeriesWitt {
        WittVec::new(x.coords.iter().map(|c| self.series.truncate(c, prec)).collect())
    }

    /// The reduced representative of `x`, with a witness.
    pub fn reduce(&self, x: &SeriesWitt, prec: i64) -> Result<ReductionResult> {
        if x.len() != self.n {
            return Err(Error::ContextMismatch(format!("{} coordinates for W_{}", x.len(), self.n)));
        }
        let p = self.k.p();
        let mut sigma = self.truncate(x, prec);
        let mut levels = Vec::with_capacity(self.n);
        let mut min_prec = EXACT;
        for j in 0..self.n {
            let l = self.n - j;
            let have = sigma.coords[0].prec;
            min_prec = min_prec.min(have);
            if have < 1 {
                return Err(Error::PrecisionShortfall {
                    needed: 1,
                    have,
                    what: format!("coordinate {j} of the residual"),
                });
            }
            let (data, rest) = self.level(j, l, sigma)?;
            levels.push(data);
            sigma = rest;
        }

        let pn = p.pow(self.n as u32);
        let c = levels.iter().rev().fold(0u64, |acc, d| (acc * p + d.t) % pn);
        let mut table: BTreeMap<u64, WittVec<FqElem>> = BTreeMap::new();
        for (j, d) in levels.iter().enumerate() {
            for (&i, &dij) in &d.d {
                let entry = table.entry(i).or_insert_with(|| WittVec::new(vec![FqElem(0); self.n]));
                entry.coords[j] = self.k.frob_iter(dij, j as i64);
            }
        }
        table.retain(|_, w| w.coords.iter().any(|x| x.0 != 0));
        let reduced = ReducedClass { n: self.n, alpha: self.alpha, c, table };
        let witness = self.witness(&levels)?;
        Ok(ReductionResult { reduced, witness, precision: min_prec })
    }

    /// Clears the first coordinate of the tail `sigma` (length `l`) and
    /// returns the level data and the next tail (length `l - 1`).
    fn level(&self, j: usize, l: usize, sigma: SeriesWitt) -> Result<(LevelData, SeriesWitt)> {
        let k = &self.k;
        let p = k.p();
        let s0 = sigma.coords[0].clone();
        let prec = s0.prec;
        let mut g_terms: Vec<(i64, FqElem)> = Vec::new();
        let mut d: BTreeMap<u64, FqElem> = BTreeMap::new();
        let mut a0 = FqElem(0);
        let mut positive: Vec<(i64, FqElem)> = Vec::new();
        for (e, &a) in self.series.terms(&s0) {
            if e < 0 {
                let m = (-e) as u64;
                let s = p_adic_valuation(m, p);
                let i = m / p.pow(s);
                let di = k.frob_iter(a, -(s as i64));
                let slot = d.entry(i).or_insert(FqElem(0));
                *slot = k.add(slot, &di);
                // (d T^{-i})^{p^t} for t < s
                for t in 0..s {
                    g_terms.push((-((i * p.pow(t)) as i64), k.frob_iter(di, t as i64)));
                }
            } else if e == 0 {
                a0 = a;
            } else {
                positive.push((e, a));
            }
        }
        d.retain(|_, v| v.0 != 0);

        let alpha_j = k.frob_iter(self.alpha, j as i64);
        let t = k.trace_to_prime(a0) * self.alpha_trace_inv % p;
        let rest = k.sub(&a0, &k.mul(&k.prime(t as i64), &alpha_j));
        let b = k.solve_artin_schreier(rest).expect("trace-zero constant is in wp(k)");
        g_terms.push((0, b));

        // g = -sum_s f^{p^s}, to the precision of sigma_0
        if !positive.is_empty() && prec >= EXACT {
            return Err(Error::Invalid("a positive part needs a finite working precision".into()));
        }
        let f = self.series.from_terms(&positive, prec);
        let mut g = self.series.from_terms(&g_terms, prec);
        let mut fs = f;
        while !fs.coeffs.is_empty() {
            g = self.series.sub(&g, &fs);
            fs = self.series.frobenius(&fs).expect("characteristic p");
            fs = self.series.truncate(&fs, prec);
        }
        let g = self.series.truncate(&g, prec);

        let wr = self.ring(l);
        let mut s = wr.add_w(&sigma, &wr.teichmuller(&g));
        let gp = self.series.frobenius(&g).expect("characteristic p");
        s = wr.add_w(&s, &wr.neg_w(&wr.teichmuller(&gp)));
        if t != 0 {
            // -(t [alpha_j]) = (p^l - t) [alpha_j]
            let pl = p.pow(l as u32);
            let coords = int_to_prime_witt(p, l, pl - t);
            let v = WittVec::new(
                coords
                    .iter()
                    .enumerate()
                    .map(|(h, &c)| self.series.monomial(k.mul(&k.prime(c as i64), &k.frob_iter(alpha_j, h as i64)), 0))
                    .collect(),
            );
            s = wr.add_w(&s, &v);
        }
        for (&i, &di) in &d {
            let mono = self.series.monomial(di, -(i as i64));
            s = wr.add_w(&s, &wr.neg_w(&wr.teichmuller(&mono)));
        }
        debug_assert!(s.coords[0].coeffs.is_empty(), "level {j} not cleared: {:?}", s.coords[0]);
        let next = WittVec::new(s.coords[1..].to_vec());
        Ok((LevelData { t, d, g }, next))
    }

    fn witness(&self, levels: &[LevelData]) -> Result<SeriesWitt> {
        let wr = self.full();
        let mut w = WittVec::new(levels.iter().map(|d| d.g.clone()).collect());
        for (j, data) in levels.iter().enumerate().skip(1) {
            for (&i, &dij) in &data.d {
                // y = sum_{t<j} [(D T^{-i})^{p^t}]
                let mut y = wr.zero_w();
                for t in 0..j {
                    let p_t = self.k.p().pow(t as u32);
                    let mono = self.series.monomial(self.k.frob_iter(dij, t as i64), -((i * p_t) as i64));
                    y = wr.add_w(&y, &wr.teichmuller(&mono));
                }
                w = wr.sub_w(&w, &wr.verschiebung_pow(&y, j));
            }
        }
        Ok(w)
    }

    /// `c [alpha] + sum_i c_i [T^{-i}]` as an element of `W_n(k((T)))`.
    pub fn embed(&self, r: &ReducedClass) -> SeriesWitt {
        let k = &self.k;
        let p = k.p();
        let wr = self.full();
        let coords = int_to_prime_witt(p, self.n, r.c);
        // [a] (x_h) = (a^{p^h} x_h)
        let mut acc = WittVec::new(
            coords
                .iter()
                .enumerate()
                .map(|(h, &c)| self.series.monomial(k.mul(&k.prime(c as i64), &k.frob_iter(r.alpha, h as i64)), 0))
                .collect(),
        );
        for (&i, ci) in &r.table {
            let v = WittVec::new(
                ci.coords
                    .iter()
                    .enumerate()
                    .map(|(h, &c)| self.series.monomial(c, -((i * p.pow(h as u32)) as i64)))
                    .collect(),
            );
            acc = wr.add_w(&acc, &v);
        }
        acc
    }

    /// True when `x` lies in `wp W_n(k((T)))`.
    pub fn is_in_wp(&self, x: &SeriesWitt, prec: i64) -> Result<bool> {
        Ok(self.reduce(x, prec)?.reduced.is_zero())
    }

    /// Builds a vector from `(coefficient, exponent, level)` monomials.
    pub fn from_monomials(&self, monos: &[(FqElem, i64, usize)]) -> Result<SeriesWitt> {
        let mut terms: Vec<Vec<(i64, FqElem)>> = vec![Vec::new(); self.n];
        for &(c, e, lvl) in monos {
            if lvl >= self.n {
                return Err(Error::Invalid(format!("monomial level {lvl} outside W_{}", self.n)));
            }
            terms[lvl].push((e, c));
        }
        Ok(WittVec::new(terms.iter().map(|t| self.series.from_terms(t, EXACT)).collect()))
    }
}

/// One-shot reduction with a fresh [`Reducer`].
pub fn reduce(k: &FqCtx, x: &SeriesWitt, prec: i64) -> Result<ReductionResult> {
    Reducer::new(k, x.len())?.reduce(x, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;
    use rand::{Rng, SeedableRng};

    /// `embed(R) + wp(w) = x` wherever both sides are known; with `exact`
    /// the identity must hold with no truncation at all.
    fn check_witness(red: &Reducer, x: &SeriesWitt, res: &ReductionResult, exact: bool) {
        let wr = red.full();
        let rebuilt = wr.add_w(&red.embed(&res.reduced), &wr.wp(&res.witness).unwrap());
        for (h, (a, b)) in rebuilt.coords.iter().zip(&x.coords).enumerate() {
            let diff = red.series().sub(a, b);
            assert!(diff.coeffs.is_empty(), "coordinate {h}: {:?}", diff);
            assert!(!exact || diff.is_exact(), "coordinate {h} only known to precision {}", diff.prec);
        }
    }

    #[test]
    fn positive_and_constant_parts() {
        let k = make_field(2, 2).unwrap();
        let red = Reducer::new(&k, 3).unwrap();
        let one = FqElem(1);
        // ([T], 0, 0) reduces to zero
        let x = red.from_monomials(&[(one, 1, 0)]).unwrap();
        let res = red.reduce(&x, 40).unwrap();
        assert!(res.reduced.is_zero());
        check_witness(&red, &x, &res, false);
        // a constant is classified by its trace to Z/p^n
        let gr = GaloisRing::new(&k, 3).unwrap();
        for a in k.elements() {
            let x = red.from_monomials(&[(a, 0, 0), (k.generator(), 0, 1)]).unwrap();
            let res = red.reduce(&x, EXACT).unwrap();
            assert!(res.reduced.table.is_empty());
            let tr_x = gr.trace(&gr.from_witt(&[a, k.generator(), FqElem(0)]));
            let tr_alpha = gr.trace(&gr.teich(red.alpha()));
            assert_eq!(res.reduced.c * tr_alpha % 8, tr_x);
            check_witness(&red, &x, &res, true);
        }
        // alpha itself gives c = 1
        let x = red.from_monomials(&[(red.alpha(), 0, 0)]).unwrap();
        let res = red.reduce(&x, 40).unwrap();
        assert_eq!((res.reduced.c, res.reduced.table.len()), (1, 0));
        // nonnegative valuations everywhere give c [alpha] only
        let x = red.from_monomials(&[(k.generator(), 0, 0), (one, 2, 1), (one, 0, 2)]).unwrap();
        let res = red.reduce(&x, 40).unwrap();
        assert!(res.reduced.table.is_empty());
        check_witness(&red, &x, &res, false);
    }

    #[test]
    fn frobenius_twist() {
        let k = make_field(3, 2).unwrap();
        let red = Reducer::new(&k, 2).unwrap();
        let a = k.generator();
        let x = red.from_monomials(&[(a, -3, 0)]).unwrap();
        let res = red.reduce(&x, EXACT).unwrap();
        let c1 = &res.reduced.table[&1];
        assert_eq!(c1.coords[0], k.pth_root(a));
        check_witness(&red, &x, &res, true);
    }

    #[test]
    fn idempotent_on_reduced_forms() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for (p, m, n) in [(2, 1, 3), (3, 2, 2), (5, 1, 2), (2, 2, 2)] {
            let k = make_field(p, m).unwrap();
            let red = Reducer::new(&k, n).unwrap();
            let pn = p.pow(n as u32);
            for _ in 0..10 {
                let mut r = ReducedClass::zero(&k, n);
                r.c = rng.gen_range(0..pn);
                for i in (1..6u64).filter(|i| i % p != 0) {
                    if rng.gen_bool(0.5) {
                        let w = WittVec::new((0..n).map(|_| k.random(&mut rng)).collect());
                        if w.coords.iter().any(|x| x.0 != 0) {
                            r.table.insert(i, w);
                        }
                    }
                }
                let x = red.embed(&r);
                let res = red.reduce(&x, EXACT).unwrap();
                assert_eq!(res.reduced, r);
                check_witness(&red, &x, &res, true);
            }
        }
    }

    #[test]
    fn random_inputs_satisfy_the_witness_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for (p, m, n) in [(2, 1, 3), (2, 2, 3), (3, 1, 3), (3, 2, 2), (5, 1, 2), (5, 2, 3)] {
            let k = make_field(p, m).unwrap();
            let red = Reducer::new(&k, n).unwrap();
            let depth = if p == 5 && n == 3 { 1 } else { 3 };
            let prec = 10 + 2 * depth * p.pow(n as u32) as i64;
            for _ in 0..10 {
                let coords = (0..n)
                    .map(|h| red.series().random(&mut rng, -depth + h as i64 / 2, 6, 0.5))
                    .collect();
                let x = WittVec::new(coords);
                let res = red.reduce(&x, prec).unwrap();
                check_witness(&red, &x, &res, false);
                // class is unchanged by adding wp(w)
                let w = WittVec::new((0..n).map(|_| red.series().random(&mut rng, -1, 3, 0.5)).collect());
                let wr = red.full();
                let shifted = wr.add_w(&x, &wr.wp(&w).unwrap());
                assert_eq!(red.reduce(&shifted, prec).unwrap().reduced, res.reduced);
            }
        }
    }

    #[test]
    fn linear_on_polar_parts() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(15);
        for (p, m, n) in [(2, 1, 3), (3, 2, 2), (5, 1, 2)] {
            let k = make_field(p, m).unwrap();
            let red = Reducer::new(&k, n).unwrap();
            let gr = GaloisRing::new(&k, n).unwrap();
            let wr = red.full();
            let gen = |rng: &mut rand_chacha::ChaCha8Rng| {
                WittVec::new((0..n).map(|_| red.series().random(rng, -4, 1, 0.5)).collect())
            };
            for _ in 0..8 {
                let (x, y) = (gen(&mut rng), gen(&mut rng));
                let rx = red.reduce(&x, EXACT).unwrap();
                let ry = red.reduce(&y, EXACT).unwrap();
                let rs = red.reduce(&wr.add_w(&x, &y), EXACT).unwrap();
                assert_eq!(rs.reduced, rx.reduced.add(&ry.reduced, &gr));
                check_witness(&red, &x, &rx, true);
            }
        }
    }

    #[test]
    fn first_polar_level_is_n_c() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(16);
        for (p, m, n) in [(2, 1, 3), (3, 1, 3), (2, 2, 2), (5, 1, 2)] {
            let k = make_field(p, m).unwrap();
            let red = Reducer::new(&k, n).unwrap();
            for _ in 0..12 {
                let j = rng.gen_range(0..n);
                let v = loop {
                    let v = rng.gen_range(1..12u64);
                    if v % p != 0 {
                        break v;
                    }
                };
                let coords = (0..n)
                    .map(|h| {
                        let lo = if h < j { 0 } else { -(v as i64) + 1 };
                        let mut f = red.series().random(&mut rng, lo, 3, 0.4);
                        if h == j {
                            f = red.series().add(&f, &red.series().monomial(k.random_nonzero(&mut rng), -(v as i64)));
                        }
                        f
                    })
                    .collect();
                let x = WittVec::new(coords);
                let res = red.reduce(&x, 30 + 4 * p.pow(n as u32) as i64 * v as i64).unwrap();
                assert_eq!(res.reduced.invariants(p).n_c, j, "p={p} n={n} j={j} v={v}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let k = make_field(3, 1).unwrap();
        let mut r = ReducedClass::zero(&k, 2);
        r.c = 4;
        r.table.insert(1, WittVec::new(vec![FqElem(1), FqElem(2)]));
        let j = r.to_json(&k);
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"n":2,"c":4,"table":[[1,[[1],[2]]]]}"#);
        assert_eq!(ReducedClass::from_json(&k, &j).unwrap(), r);
        let inv = r.invariants(3);
        assert_eq!((inv.n_c, inv.n_0, inv.primitive), (0, 0, true));
        let z = ReducedClass::zero(&k, 2);
        assert_eq!(z.invariants(3), ClassInvariants { n_c: 2, n_0: 2, primitive: false });
        let mut cp = ReducedClass::zero(&k, 2);
        cp.c = 3;
        assert_eq!(cp.invariants(3), ClassInvariants { n_c: 2, n_0: 1, primitive: false });
    }
}
