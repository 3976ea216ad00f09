//! Towers over the projective line: reduction of Witt vectors over `k(X)`
//! place by place, unit-root towers and Frobenius at unramified places.
//!
//! Each place is handled in its completion. At a finite place `f` of degree
//! `e` we pick a root `z` of `f` in `F_{q^e}` and expand every coordinate in
//! `T = X - z`; at infinity we substitute `X = 1/T`. The local reduced form
//! gives the profile of the place, and the constant part at infinity is the
//! global constant part since every other principal part vanishes there.

use crate::error::{Error, Result};
use crate::finite_field::{FqCtx, FqElem};
use crate::laurent::{Laurent, LaurentRing, EXACT};
use crate::reduction::{ReducedClass, Reducer};
use crate::ring::{p_adic_valuation, Ring};
use crate::symbol::SymbolValue;
use crate::witt::galois::GaloisRing;
use crate::witt::WittVec;

use super::ratfunc::{Poly, PolyRing, RatFunc};
use super::{PlaceData, TowerSpec};

/// Local reduced class of `x` at one place.
#[derive(Clone, Debug)]
pub struct LocalData {
    pub label: String,
    pub deg: u32,
    /// Residue field of the place.
    pub residue: FqCtx,
    pub class: ReducedClass,
}

/// `sum a_i X^i` as text, with field elements printed by their index.
pub fn poly_label(f: &Poly) -> String {
    let mut parts = Vec::new();
    for (i, c) in f.0.iter().enumerate().rev() {
        if c.0 == 0 {
            continue;
        }
        let coeff = if c.0 == 1 && i > 0 { String::new() } else { c.0.to_string() };
        parts.push(match i {
            0 => coeff,
            1 => format!("{coeff}X"),
            _ => format!("{coeff}X^{i}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn reverse(f: &Poly, deg: i64) -> Poly {
    let mut c = vec![FqElem(0); (deg + 1).max(0) as usize];
    for (i, &a) in f.0.iter().enumerate() {
        c[deg as usize - i] = a;
    }
    Poly::new(c)
}

/// Expansion of `x` at infinity in `T = 1/X`, to absolute precision `prec`.
fn expand_at_infinity(ring: &PolyRing, series: &LaurentRing<FqCtx>, x: &RatFunc, prec: i64) -> Result<Laurent<FqElem>> {
    if x.num.is_zero() {
        return Ok(series.zero_to(EXACT));
    }
    let den = x.denominator(ring);
    let (dn, dd) = (x.num.degree(), den.degree());
    let num = ring.to_series(series, &reverse(&x.num, dn));
    let den = ring.to_series(series, &reverse(&den, dd));
    let inv = series.inverse_to(&den, prec + dn - dd)?;
    Ok(series.truncate(&series.shift(&series.mul(&num, &inv), dd - dn), prec))
}

/// Expansion of `x` at the root `z` of a place, in `T = X - z` over `big`.
fn expand_at(
    big_ring: &PolyRing,
    series: &LaurentRing<FqCtx>,
    x: &RatFunc,
    emb: &crate::finite_field::FieldEmbedding,
    z: FqElem,
    prec: i64,
) -> Result<Laurent<FqElem>> {
    if x.num.is_zero() {
        return Ok(series.zero_to(EXACT));
    }
    let small = PolyRing::new(&emb.small);
    let num = big_ring.taylor_shift(&big_ring.embed(&x.num, emb), z);
    let den = big_ring.taylor_shift(&big_ring.embed(&x.denominator(&small), emb), z);
    let den = big_ring.to_series(series, &den);
    let num = big_ring.to_series(series, &num);
    let inv = series.inverse_to(&den, prec + 2 * den.val)?;
    Ok(series.truncate(&series.mul(&num, &inv), prec))
}

/// Pole order of `x` at infinity, or 0.
fn pole_at_infinity(ring: &PolyRing, x: &RatFunc) -> i64 {
    if x.num.is_zero() {
        return 0;
    }
    (x.num.degree() - x.denominator(ring).degree()).max(0)
}

/// Working precision covering poles of order `depth` at length `n`.
pub fn default_precision(p: u64, n: usize, depth: i64) -> i64 {
    16 + 4 * depth.max(1) * p.pow(n as u32) as i64
}

/// The distinct denominator factors of all coordinates with their largest
/// exponent.
fn finite_places(x: &[RatFunc]) -> Vec<(Poly, u32)> {
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for c in x {
        for (f, e) in &c.den {
            match out.iter_mut().find(|(g, _)| g == f) {
                Some(entry) => entry.1 = entry.1.max(*e),
                None => out.push((f.clone(), *e)),
            }
        }
    }
    out
}

/// Local reduced classes of `x` at infinity and at every finite pole.
pub fn local_classes(k: &FqCtx, x: &[RatFunc], prec: Option<i64>) -> Result<Vec<LocalData>> {
    let n = x.len();
    if n == 0 {
        return Err(Error::Invalid("empty Witt vector".into()));
    }
    let p = k.p();
    let ring = PolyRing::new(k);
    for c in x {
        c.validate(&ring)?;
    }
    let mut out = Vec::new();

    let red = Reducer::new(k, n)?;
    let depth = x.iter().map(|c| pole_at_infinity(&ring, c)).max().unwrap_or(0);
    let pr = prec.unwrap_or_else(|| default_precision(p, n, depth));
    let coords = x.iter().map(|c| expand_at_infinity(&ring, red.series(), c, pr)).collect::<Result<Vec<_>>>()?;
    let class = red.reduce(&WittVec::new(coords), pr)?.reduced;
    out.push(LocalData { label: "inf".into(), deg: 1, residue: k.clone(), class });

    for (f, e) in finite_places(x) {
        let deg = f.degree() as u32;
        let big = FqCtx::new(p, k.m() * deg)?;
        let emb = k.embedding_into(&big)?;
        let big_ring = PolyRing::new(&big);
        let z = big_ring.roots(&big_ring.embed(&f, &emb))[0];
        let red = Reducer::new(&big, n)?;
        let pr = prec.unwrap_or_else(|| default_precision(p, n, e as i64));
        let coords = x
            .iter()
            .map(|c| expand_at(&big_ring, red.series(), c, &emb, z, pr))
            .collect::<Result<Vec<_>>>()?;
        let class = red.reduce(&WittVec::new(coords), pr)?.reduced;
        out.push(LocalData { label: poly_label(&f), deg, residue: big, class });
    }
    Ok(out)
}

/// The tower over `k(X)` cut out by `x`, one place per pole.
pub fn reduce_global(k: &FqCtx, x: &[RatFunc], prec: Option<i64>) -> Result<TowerSpec> {
    let n = x.len();
    let p = k.p();
    let locals = local_classes(k, x, prec)?;
    let c = locals[0].class.c;
    let v_c = if c == 0 { n } else { p_adic_valuation(c, p) as usize };
    let places: Vec<PlaceData> = locals
        .iter()
        .filter(|l| !l.class.table.is_empty())
        .map(|l| PlaceData {
            label: l.label.clone(),
            deg: l.deg,
            profile: l.class.valuations().into_iter().collect(),
        })
        .collect();
    let nc = places.iter().flat_map(|pl| pl.profile.iter().map(|e| e.1)).min().unwrap_or(n);
    if nc.min(v_c) > 0 {
        return Err(Error::NonPrimitive(format!("every local datum is divisible by p^{}", nc.min(v_c))));
    }
    Ok(TowerSpec { p, m: k.m(), g0: 0, nc, places, nmax: n })
}

/// `x = sum_i [b_i X^i]`, totally ramified at infinity with
/// `u_n = 1 + d p^{n-1}`. `b[i]` is the coefficient of `X^i`.
pub fn unit_root_tower(k: &FqCtx, b: &[FqElem], nmax: usize) -> Result<TowerSpec> {
    let p = k.p();
    let d = b.iter().rposition(|c| c.0 != 0).ok_or(Error::ZeroInput)? as u64;
    if d == 0 || d % p == 0 {
        return Err(Error::Invalid(format!("degree {d} must be positive and prime to {p}")));
    }
    let mut profile = Vec::new();
    for (i, c) in b.iter().enumerate() {
        if c.0 == 0 {
            continue;
        }
        if i as u64 % p == 0 {
            return Err(Error::Invalid(format!("coefficient of X^{i} must vanish: {i} is divisible by {p}")));
        }
        profile.push((i as u64, 0));
    }
    let spec = TowerSpec {
        p,
        m: k.m(),
        g0: 0,
        nc: 0,
        places: vec![PlaceData { label: "inf".into(), deg: 1, profile }],
        nmax,
    };
    spec.validate()?;
    Ok(spec)
}

/// Frobenius at the place of `z`: `a -> -Tr_{W(k(z))/W(F_p)}(a(z))`, as the
/// image of `x` in `Z/p^n`.
pub fn frobenius_at(k: &FqCtx, x: &[RatFunc], big: &FqCtx, z: FqElem) -> Result<SymbolValue> {
    let n = x.len();
    let p = k.p();
    let emb = k.embedding_into(big)?;
    let ring = PolyRing::new(k);
    let big_ring = PolyRing::new(big);
    for c in x {
        c.validate(&ring)?;
    }
    let mut coords = Vec::with_capacity(n);
    for (h, c) in x.iter().enumerate() {
        let den = big_ring.eval(&big_ring.embed(&c.denominator(&ring), &emb), z);
        if den.0 == 0 {
            return Err(pole_error(x, &emb, z, h));
        }
        let num = big_ring.eval(&big_ring.embed(&c.num, &emb), z);
        coords.push(big.mul(&num, &big.inverse(den)?));
    }
    // degree of k(z) over F_p
    let m = k.m() as i64;
    let mut e = m;
    while big.frob_iter(z, e) != z {
        e += m;
    }
    let gr = GaloisRing::new(big, n)?;
    let a = gr.from_witt(&coords);
    let tr = (0..e).fold(gr.zero(), |acc, s| gr.add(&acc, &gr.sigma_pow(&a, s)));
    debug_assert!(tr.0[1..].iter().all(|&c| c == 0));
    let pn = gr.modulus_pn();
    Ok(SymbolValue::new(p, n, (pn - tr.0[0] % pn) % pn))
}

/// `RamifiedPlace` when the local class at `z` is ramified, `Pole` otherwise.
fn pole_error(x: &[RatFunc], emb: &crate::finite_field::FieldEmbedding, z: FqElem, h: usize) -> Error {
    let check = || -> Result<Option<usize>> {
        let n = x.len();
        let red = Reducer::new(&emb.big, n)?;
        let big_ring = PolyRing::new(&emb.big);
        let depth = x.iter().flat_map(|c| c.den.iter().map(|d| d.1 as i64)).max().unwrap_or(1);
        let pr = default_precision(emb.big.p(), n, depth);
        let coords =
            x.iter().map(|c| expand_at(&big_ring, red.series(), c, emb, z, pr)).collect::<Result<Vec<_>>>()?;
        let class = red.reduce(&WittVec::new(coords), pr)?.reduced;
        Ok(class.valuations().values().copied().min())
    };
    match check() {
        Ok(Some(v)) => Error::RamifiedPlace(v as u32 + 1),
        _ => Error::Pole(h),
    }
}

/// Coordinates of a Witt vector over `k[X]` as rational functions.
pub fn polynomial_vector(x: &WittVec<Poly>) -> Vec<RatFunc> {
    x.coords.iter().cloned().map(RatFunc::poly).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;
    use crate::tower::closed_form_genus;
    use crate::witt::WittRing;

    fn poly(k: &FqCtx, c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&a| k.prime(a)).collect())
    }

    #[test]
    fn single_places() {
        let k = make_field(3, 1).unwrap();
        let x = [RatFunc::poly(Poly::x()), RatFunc::poly(Poly::zero())];
        let spec = reduce_global(&k, &x, None).unwrap();
        assert_eq!(spec.places.len(), 1);
        assert_eq!((spec.places[0].label.as_str(), spec.places[0].profile.clone()), ("inf", vec![(1, 0)]));
        assert_eq!(spec.nc, 0);

        let inv = [RatFunc { num: poly(&k, &[1]), den: vec![(Poly::x(), 1)] }, RatFunc::poly(Poly::zero())];
        let spec = reduce_global(&k, &inv, None).unwrap();
        assert_eq!(spec.places.len(), 1);
        assert_eq!((spec.places[0].label.as_str(), spec.places[0].profile.clone()), ("X", vec![(1, 0)]));

        // p-th power denominators drop to a simple pole
        for (p, f) in [(2u64, vec![1i64, 1, 1]), (3, vec![1, 0, 1])] {
            let k = make_field(p, 1).unwrap();
            let f = poly(&k, &f);
            let x = [RatFunc { num: poly(&k, &[1]), den: vec![(f.clone(), p as u32)] }];
            let spec = reduce_global(&k, &x, None).unwrap();
            assert_eq!(spec.places.len(), 1);
            assert_eq!((spec.places[0].deg, spec.places[0].profile.clone()), (2, vec![(1, 0)]));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let k = make_field(2, 1).unwrap();
        let x = [RatFunc { num: Poly::x(), den: vec![(Poly::x(), 1)] }];
        assert!(matches!(reduce_global(&k, &x, None), Err(Error::NotCoprime(_))));
        let sq = PolyRing::new(&k).mul(&Poly::x(), &Poly::x());
        let x = [RatFunc { num: poly(&k, &[1]), den: vec![(sq, 1)] }];
        assert!(matches!(reduce_global(&k, &x, None), Err(Error::UnfactoredDenominator(_))));
        // 2 [X] is imprimitive
        let w = WittRing::new(PolyRing::new(&k), 2, 2).unwrap();
        let two_x = w.scalar_mul(&2.into(), &w.teichmuller(&Poly::x()));
        assert!(matches!(reduce_global(&k, &polynomial_vector(&two_x), None), Err(Error::NonPrimitive(_))));
    }

    #[test]
    fn unit_root_matches_global_reduction() {
        for (p, m, n, b) in [(2u64, 1u32, 2usize, vec![0i64, 1]), (3, 1, 2, vec![0, 1, 2]), (2, 1, 2, vec![0, 1, 0, 1])] {
            let k = make_field(p, m).unwrap();
            let b: Vec<FqElem> = b.iter().map(|&c| k.prime(c)).collect();
            let pr = PolyRing::new(&k);
            let w = WittRing::new(pr.clone(), p, n).unwrap();
            let mut x = w.zero_w();
            for (i, c) in b.iter().enumerate() {
                let mono = pr.mul(&Poly::constant(*c), &pr.pow(&Poly::x(), i as u64));
                x = w.add_w(&x, &w.teichmuller(&mono));
            }
            let global = reduce_global(&k, &polynomial_vector(&x), None).unwrap();
            let local = unit_root_tower(&k, &b, n).unwrap();
            assert_eq!(global.places, local.places);
            assert_eq!(global.nc, 0);
            let d = b.len() as u64 - 1;
            for l in 0..=n {
                assert_eq!(local.genus(l).unwrap(), closed_form_genus(d, p, l).unwrap());
            }
        }
        let k = make_field(3, 1).unwrap();
        assert!(unit_root_tower(&k, &[k.prime(0), k.prime(0), k.prime(0), k.prime(1)], 3).is_err());
        assert!(unit_root_tower(&k, &[k.prime(1), k.prime(1)], 3).is_err());
    }

    #[test]
    fn frobenius_values() {
        let k = make_field(3, 1).unwrap();
        let x = [RatFunc::poly(Poly::x()), RatFunc::poly(Poly::zero())];
        assert_eq!(frobenius_at(&k, &x, &k, k.prime(0)).unwrap().value, 0);
        assert_eq!(frobenius_at(&k, &x, &k, k.prime(1)).unwrap().value, 8);
        let inv = [RatFunc { num: poly(&k, &[1]), den: vec![(Poly::x(), 1)] }, RatFunc::poly(Poly::zero())];
        assert!(matches!(frobenius_at(&k, &inv, &k, k.prime(0)), Err(Error::RamifiedPlace(1))));

        // additive in x, at a point of degree 2
        let big = make_field(3, 2).unwrap();
        let w = WittRing::new(PolyRing::new(&k), 3, 2).unwrap();
        let a = w.teichmuller(&Poly::x());
        let b = w.teichmuller(&poly(&k, &[1, 0, 2]));
        let s = w.add_w(&a, &b);
        let z = big.generator();
        let f = |v: &WittVec<Poly>| frobenius_at(&k, &polynomial_vector(v), &big, z).unwrap().value;
        assert_eq!(f(&s), (f(&a) + f(&b)) % 9);
        assert_ne!(f(&a), 0);
    }
}
