//! The Schmid-Witt symbol `[x, y)_n` with values in `Z/p^n`.
//!
//! The main route evaluates the explicit finite sum over a reduced class and
//! a unit decomposition. Independent routes: the residue of `x~ dlog y~`, the
//! one-ghost-component formula, the residue formula at level one, and the
//! evaluation form for polynomial `y`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::{FqCtx, FqElem};
use crate::laurent::{dlog_tilde, tilde_unit, unit_decompose, Laurent, LaurentRing, UnitDecomp, EXACT};
use crate::reduction::{ReducedClass, SeriesWitt};
use crate::ring::Ring;
use crate::witt::galois::{GaloisRing, GrElem};

/// An element of `Z/p^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolValue {
    pub p: u64,
    pub n: usize,
    pub value: u64,
}

impl SymbolValue {
    pub fn new(p: u64, n: usize, value: u64) -> Self {
        SymbolValue { p, n, value: value % p.pow(n as u32) }
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n as u32)
    }

    /// Image in `Z/p^m` for `m <= n`.
    pub fn project(&self, m: usize) -> SymbolValue {
        SymbolValue::new(self.p, m.min(self.n), self.value)
    }
}

/// Relative precision a unit decomposition needs for `symbol(r, .)`:
/// factors `(1 - a T^l)^{p^j}` matter only when `l` divides an index `i`
/// of the class and `p^j c_i != 0`.
pub fn required_unit_precision(r: &ReducedClass, p: u64) -> i64 {
    let mut need = 1i64;
    for (&i, c) in &r.table {
        let v = c.coords.iter().position(|x| x.0 != 0).unwrap_or(r.n);
        if v < r.n {
            let reach = i as i64 * p.pow((r.n - 1 - v) as u32) as i64;
            need = need.max(reach + 1);
        }
    }
    need
}

fn check_level(gr: &GaloisRing, r: &ReducedClass) -> Result<()> {
    if gr.n() > r.n {
        return Err(Error::ContextMismatch(format!("class of level {} evaluated at level {}", r.n, gr.n())));
    }
    Ok(())
}

fn check_unit(r: &ReducedClass, u: &UnitDecomp, p: u64, n: usize) -> Result<()> {
    let mut trimmed = r.clone();
    trimmed.n = n;
    let need = required_unit_precision(&trimmed, p);
    if u.prec < need {
        return Err(Error::PrecisionShortfall { needed: need, have: u.prec, what: "unit decomposition for the symbol".into() });
    }
    Ok(())
}

/// Entry `c_i` projected to `W_n(k)` inside the Galois ring.
fn entry(gr: &GaloisRing, c: &[FqElem]) -> GrElem {
    gr.from_witt(&c[..gr.n()])
}

/// `c e Tr(beta) - sum_j p^j Tr(sum_i c_i sum_{l | i} l [a_{lj}]^{i/l})`.
pub fn symbol(gr: &GaloisRing, r: &ReducedClass, u: &UnitDecomp) -> Result<SymbolValue> {
    check_level(gr, r)?;
    let (p, n) = (gr.p(), gr.n());
    check_unit(r, u, p, n)?;
    let pn = gr.modulus_pn();
    let beta = gr.teich(r.alpha);
    let e = u.e.rem_euclid(pn as i64) as u64;
    let mut value = (r.c % pn) as u128 * e as u128 % pn as u128 * gr.trace(&beta) as u128 % pn as u128;
    let mut pj = 1u64;
    for j in 0..n as u32 {
        let mut inner = gr.zero();
        for (&i, c) in &r.table {
            let ci = entry(gr, &c.coords);
            let mut sum = gr.zero();
            for l in (1..=i).filter(|l| i % l == 0) {
                if let Some(&a) = u.table.get(&(l, j)) {
                    let term = gr.pow(&gr.teich(a), i / l);
                    sum = gr.add(&sum, &gr.scalar_mul(l % pn, &term));
                }
            }
            inner = gr.add(&inner, &gr.mul(&ci, &sum));
        }
        let t = gr.trace(&inner) as u128 * pj as u128 % pn as u128;
        value = (value + pn as u128 - t) % pn as u128;
        pj = pj.saturating_mul(p) % pn.max(1);
        if pj == 0 {
            break;
        }
    }
    Ok(SymbolValue::new(p, n, value as u64))
}

/// `x~ = c beta + sum_i c_i T^{-i}` over `W_n(k)`.
pub fn tilde_reduced(ring: &LaurentRing<GaloisRing>, r: &ReducedClass) -> Result<Laurent<GrElem>> {
    let gr = ring.base();
    check_level(gr, r)?;
    let mut terms = vec![(0i64, gr.scalar_mul(r.c % gr.modulus_pn(), &gr.teich(r.alpha)))];
    for (&i, c) in &r.table {
        terms.push((-(i as i64), entry(gr, &c.coords)));
    }
    Ok(ring.from_terms(&terms, EXACT))
}

/// `Tr(Res(x~ dlog y~))`.
pub fn symbol_via_residue_form(gr: &GaloisRing, r: &ReducedClass, u: &UnitDecomp) -> Result<SymbolValue> {
    check_level(gr, r)?;
    check_unit(r, u, gr.p(), gr.n())?;
    let ring = LaurentRing::new(gr.clone());
    let xt = tilde_reduced(&ring, r)?;
    let reach = r.table.keys().copied().max().unwrap_or(0) as i64;
    let dl = dlog_tilde(&ring, &tilde_unit(gr, u), reach + 1);
    let res = ring.residue(&ring.mul(&xt, &dl))?;
    Ok(SymbolValue::new(gr.p(), gr.n(), gr.trace(&res)))
}

/// Coefficientwise Teichmuller lift of a series over `k`.
fn teich_series(gr: &GaloisRing, src: &LaurentRing<FqCtx>, dst: &LaurentRing<GaloisRing>, f: &Laurent<FqElem>) -> Laurent<GrElem> {
    src.map(dst, f, |&a| gr.teich(a))
}

/// `Tr Res(g^{(n-1)}(X) dlog Y) mod p^n`, with `X` the coordinatewise and
/// coefficientwise Teichmuller lift of `x` and `Y = y~`.
pub fn oracle_classical(gr: &GaloisRing, x: &SeriesWitt, y: &Laurent<FqElem>) -> Result<SymbolValue> {
    let (p, n) = (gr.p(), gr.n());
    if x.len() < n {
        return Err(Error::ContextMismatch(format!("{} coordinates for level {n}", x.len())));
    }
    let k = gr.field();
    let src = LaurentRing::new(k.clone());
    let ring = LaurentRing::new(gr.clone());
    // g^{(n-1)} = sum_h p^h X_h^{p^{n-1-h}}
    let mut ghost = ring.zero();
    for h in 0..n {
        let power = p.pow((n - 1 - h) as u32);
        let xh = &x.coords[h];
        if xh.coeffs.is_empty() {
            continue;
        }
        // coefficients of X_h^power at exponents <= 0 need X_h below this bound
        let depth = (-xh.val).max(0);
        let keep = 1 + (power as i64 - 1) * depth;
        let lifted = teich_series(gr, &src, &ring, &src.truncate(xh, keep));
        let term = ring.scale(&gr.scalar(p.pow(h as u32)), &ring.pow(&lifted, power));
        ghost = ring.add(&ghost, &term);
    }
    let need = if ghost.coeffs.is_empty() { 0 } else { (-ghost.val).max(0) };
    let u = unit_decompose(&src, y, need + 1)?;
    let dl = dlog_tilde(&ring, &tilde_unit(gr, &u), need);
    let res = ring.residue(&ring.mul(&ghost, &dl))?;
    Ok(SymbolValue::new(p, n, gr.trace(&res)))
}

/// `Tr_{k/F_p} Res(x0 dy/y)`.
pub fn oracle_level1(k: &FqCtx, x0: &Laurent<FqElem>, y: &Laurent<FqElem>) -> Result<SymbolValue> {
    let ring = LaurentRing::new(k.clone());
    if y.coeffs.is_empty() {
        return Err(Error::ZeroInput);
    }
    let depth = if x0.coeffs.is_empty() { 0 } else { (-x0.val).max(0) };
    let y = ring.truncate(y, y.val + depth + 2);
    let dl = ring.dlog(&y)?;
    let res = ring.residue(&ring.mul(x0, &dl))?;
    Ok(SymbolValue::new(k.p(), 1, k.trace_to_prime(res)))
}

/// `-Tr_{W(k)/W(F_p)} sum_r x~([alpha_r]^{-1})` for `y = prod_r (1 - alpha_r T)`,
/// where `x~([alpha]^{-1}) = sum_i c_i [alpha]^i`. The roots live in
/// `big`, an extension of `k`, and must be closed under Frobenius over `k`.
pub fn symbol_eval(gr: &GaloisRing, r: &ReducedClass, big: &FqCtx, roots: &[FqElem]) -> Result<SymbolValue> {
    check_level(gr, r)?;
    let k = gr.field();
    let (p, n) = (gr.p(), gr.n());
    if big.p() != p || big.m() % k.m() != 0 {
        return Err(Error::RootFieldMismatch { p, m: k.m(), root_m: big.m() });
    }
    let emb = k.embedding_into(big)?;
    let big_gr = GaloisRing::new(big, n)?;
    let mut z = big_gr.zero();
    for &alpha in roots {
        let ta = big_gr.teich(alpha);
        for (&i, c) in &r.table {
            let ci = big_gr.from_witt(&c.coords[..n].iter().map(|&a| emb.apply(a)).collect::<Vec<_>>());
            z = big_gr.add(&z, &big_gr.mul(&ci, &big_gr.pow(&ta, i)));
        }
    }
    // trace from W(k): sum of the first m conjugates, a scalar when z lies in W(k)
    let mut tr = big_gr.zero();
    for s in 0..k.m() as i64 {
        tr = big_gr.add(&tr, &big_gr.sigma_pow(&z, s));
    }
    if big_gr.sigma_pow(&z, k.m() as i64) != z || tr.0.iter().skip(1).any(|&c| c != 0) {
        return Err(Error::Invalid("roots are not closed under Frobenius over k".into()));
    }
    let pn = gr.modulus_pn();
    Ok(SymbolValue::new(p, n, (pn - tr.0[0] % pn) % pn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;
    use crate::laurent::unit_recompose;
    use crate::witt::WittVec;
    use std::collections::BTreeMap;

    fn class(k: &FqCtx, n: usize, c: u64, entries: &[(u64, Vec<u64>)]) -> ReducedClass {
        let mut r = ReducedClass::zero(k, n);
        r.c = c;
        for (i, coords) in entries {
            r.table.insert(*i, WittVec::new(coords.iter().map(|&a| FqElem(a as u32)).collect()));
        }
        r
    }

    fn unit(e: i64, table: &[((u64, u32), u32)], prec: i64) -> UnitDecomp {
        let table: BTreeMap<_, _> = table.iter().map(|&(key, a)| (key, FqElem(a))).collect();
        UnitDecomp { e, lead: FqElem(1), table, prec }
    }

    #[test]
    fn one_minus_t_at_level_two() {
        let k = make_field(3, 1).unwrap();
        let gr = GaloisRing::new(&k, 2).unwrap();
        let r = class(&k, 2, 0, &[(1, vec![1, 0])]);
        let u = unit(0, &[((1, 0), 1)], 4);
        assert_eq!(symbol(&gr, &r, &u).unwrap().value, 8);
        assert_eq!(symbol_via_residue_form(&gr, &r, &u).unwrap().value, 8);
        let ring = LaurentRing::new(k.clone());
        let x = WittVec::new(vec![ring.monomial(FqElem(1), -1), ring.zero()]);
        let y = ring.from_terms(&[(0, FqElem(1)), (1, k.prime(-1))], EXACT);
        assert_eq!(oracle_classical(&gr, &x, &y).unwrap().value, 8);
        assert_eq!(oracle_level1(&k, &x.coords[0], &y).unwrap().value, 2);
    }

    #[test]
    fn pairing_with_the_uniformizer() {
        for (p, m, n) in [(2, 1, 3), (3, 2, 2), (5, 1, 2)] {
            let k = make_field(p, m).unwrap();
            let gr = GaloisRing::new(&k, n).unwrap();
            let t = unit(1, &[], EXACT);
            // [c beta, T) = Tr(c beta)
            let r = class(&k, n, 1, &[]);
            let expected = gr.trace(&gr.teich(r.alpha));
            assert_eq!(symbol(&gr, &r, &t).unwrap().value, expected);
            // [[c T^{-i}], T) = 0
            let r = class(&k, n, 0, &[(1, vec![1; n]), (p + 1, vec![1; n])]);
            assert_eq!(symbol(&gr, &r, &t).unwrap().value, 0);
        }
    }

    #[test]
    fn divisibility_rule() {
        // [b T^{-l}] against 1 - a T^i: -i Tr([a^{l/i} b]) when i | l
        let k = make_field(5, 2).unwrap();
        let gr = GaloisRing::new(&k, 2).unwrap();
        let (a, b) = (k.generator(), k.prime(3));
        for (l, i) in [(6u64, 2u64), (6, 3), (6, 4), (7, 1), (4, 3)] {
            let mut r = ReducedClass::zero(&k, 2);
            r.table.insert(l, WittVec::new(vec![b, FqElem(0)]));
            let u = UnitDecomp { e: 0, lead: FqElem(1), table: [((i, 0), a)].into_iter().collect(), prec: 40 };
            let got = symbol(&gr, &r, &u).unwrap().value;
            let expected = if l % i == 0 {
                let z = gr.teich(k.mul(&k.pow_e(a, l / i), &b));
                (25 - gr.trace(&gr.scalar_mul(i, &z))) % 25
            } else {
                0
            };
            assert_eq!(got, expected, "l={l} i={i}");
            assert_eq!(symbol_via_residue_form(&gr, &r, &u).unwrap().value, expected);
        }
    }

    #[test]
    fn shortfall_and_trivial_inputs() {
        let k = make_field(2, 1).unwrap();
        let gr = GaloisRing::new(&k, 3).unwrap();
        let r = class(&k, 3, 0, &[(3, vec![1, 0, 0])]);
        assert_eq!(required_unit_precision(&r, 2), 13);
        assert!(matches!(symbol(&gr, &r, &unit(0, &[], 5)), Err(Error::PrecisionShortfall { .. })));
        assert_eq!(symbol(&gr, &r, &unit(0, &[], 13)).unwrap().value, 0);
        assert_eq!(symbol(&gr, &ReducedClass::zero(&k, 3), &unit(3, &[((1, 0), 1)], 9)).unwrap().value, 0);
        // a p-divisible entry needs less of the unit
        let r = class(&k, 3, 0, &[(3, vec![0, 1, 0])]);
        assert_eq!(required_unit_precision(&r, 2), 7);
    }

    #[test]
    fn evaluation_form_single_roots() {
        let k = make_field(3, 2).unwrap();
        let gr = GaloisRing::new(&k, 2).unwrap();
        let ring = LaurentRing::new(k.clone());
        let mut r = ReducedClass::zero(&k, 2);
        r.table.insert(1, WittVec::new(vec![k.generator(), FqElem(1)]));
        r.table.insert(2, WittVec::new(vec![FqElem(0), k.prime(2)]));
        for alpha in k.elements().filter(|a| a.0 != 0) {
            let y = ring.from_terms(&[(0, FqElem(1)), (1, k.neg(&alpha))], EXACT);
            let u = unit_decompose(&ring, &y, 40).unwrap();
            assert_eq!(unit_recompose(&ring, &u), ring.truncate(&y, 40));
            let want = symbol(&gr, &r, &u).unwrap();
            assert_eq!(symbol_eval(&gr, &r, &k, &[alpha]).unwrap(), want);
        }
        assert_eq!(symbol_eval(&gr, &r, &k, &[]).unwrap().value, 0);
    }
}
