//! Integer polynomials for Witt addition, multiplication and negation,
//! generated from the ghost recursion and memoized per `(p, n)`.
//!
//! Variables are interleaved: `x_j` has index `2j` and `y_j` index `2j+1`,
//! so the `i`-th polynomial does not depend on the length it was built for.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::is_prime;

/// Largest length generated by default.
pub const DEFAULT_MAX_LENGTH: usize = 5;

/// Largest `p^{n-1}` (the top degree of `S_{n-1}`) generated by default.
pub const DEFAULT_MAX_DEGREE: u64 = 49;

/// Environment variable naming a directory for the on-disk cache.
pub const CACHE_DIR_ENV: &str = "WITT_CACHE_DIR";

/// A sparse integer polynomial: `(exponent vector, coefficient)` pairs,
/// sorted by exponent vector.
pub type IntPoly = Vec<(Vec<u16>, BigInt)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalPolys {
    pub p: u64,
    pub n: usize,
    pub sum: Vec<IntPoly>,
    pub prod: Vec<IntPoly>,
    pub neg: Vec<IntPoly>,
}

/// Largest supported length for `p` under the default bounds.
pub fn max_length(p: u64) -> usize {
    let mut n = 1;
    while n < DEFAULT_MAX_LENGTH && p.checked_pow(n as u32).is_some_and(|d| d <= DEFAULT_MAX_DEGREE) {
        n += 1;
    }
    n
}

pub fn check_length(p: u64, n: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let max = max_length(p);
    if n == 0 || n > max {
        return Err(Error::WittLength { n, max });
    }
    Ok(())
}

type Slot = Arc<OnceLock<Arc<UniversalPolys>>>;

fn cache() -> &'static Mutex<HashMap<(u64, usize), Slot>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Slot>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The memoized polynomials for `W_n` at the prime `p`.
pub fn universal_polys(p: u64, n: usize) -> Result<Arc<UniversalPolys>> {
    check_length(p, n)?;
    let slot = {
        let mut map = cache().lock().expect("cache lock");
        map.entry((p, n)).or_default().clone()
    };
    Ok(slot.get_or_init(|| Arc::new(load_or_generate(p, n))).clone())
}

fn load_or_generate(p: u64, n: usize) -> UniversalPolys {
    let path = std::env::var_os(CACHE_DIR_ENV).map(|d| PathBuf::from(d).join(format!("witt_p{p}_n{n}.json")));
    if let Some(path) = &path {
        if let Some(polys) = std::fs::read(path).ok().and_then(|b| decode(&b, p, n)) {
            return polys;
        }
    }
    let polys = generate(p, n);
    if let Some(path) = &path {
        // best effort: a failed write only costs regeneration next time
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if std::fs::write(&tmp, encode(&polys)).is_ok() {
            let _ = std::fs::rename(&tmp, path);
        }
    }
    polys
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    p: u64,
    n: usize,
    sum: Vec<Vec<(Vec<u16>, String)>>,
    prod: Vec<Vec<(Vec<u16>, String)>>,
    neg: Vec<Vec<(Vec<u16>, String)>>,
}

fn encode(u: &UniversalPolys) -> Vec<u8> {
    let conv = |ps: &[IntPoly]| {
        ps.iter()
            .map(|poly| poly.iter().map(|(e, c)| (e.clone(), c.to_string())).collect())
            .collect()
    };
    let file = CacheFile { p: u.p, n: u.n, sum: conv(&u.sum), prod: conv(&u.prod), neg: conv(&u.neg) };
    serde_json::to_vec(&file).expect("cache file serializes")
}

fn decode(bytes: &[u8], p: u64, n: usize) -> Option<UniversalPolys> {
    let file: CacheFile = serde_json::from_slice(bytes).ok()?;
    if file.p != p || file.n != n {
        return None;
    }
    let conv = |ps: Vec<Vec<(Vec<u16>, String)>>| -> Option<Vec<IntPoly>> {
        ps.into_iter()
            .map(|poly| {
                poly.into_iter()
                    .map(|(e, c)| (e.len() == 2 * n).then_some(()).and(c.parse().ok().map(|c| (e, c))))
                    .collect()
            })
            .collect()
    };
    let u = UniversalPolys { p, n, sum: conv(file.sum)?, prod: conv(file.prod)?, neg: conv(file.neg)? };
    if u.sum.len() != n || u.prod.len() != n || u.neg.len() != n {
        return None;
    }
    spot_check(&u).then_some(u)
}

/// Checks the ghost identities at a few integer points.
fn spot_check(u: &UniversalPolys) -> bool {
    let points: [&[i64]; 3] = [&[1, 2, 0, -1, 3, 1, 2, 2, -2, 1], &[-3, 1, 2, 2, 0, 5, 1, -1, 4, 3], &[2, -2, 1, 3, 1, 0, -1, 2, 1, 1]];
    points.iter().all(|pt| {
        let vals: Vec<BigInt> = pt.iter().take(2 * u.n).map(|&v| BigInt::from(v)).collect();
        let x: Vec<BigInt> = (0..u.n).map(|j| vals[2 * j].clone()).collect();
        let y: Vec<BigInt> = (0..u.n).map(|j| vals[2 * j + 1].clone()).collect();
        let s: Vec<BigInt> = u.sum.iter().map(|f| eval_int(f, &vals)).collect();
        let m: Vec<BigInt> = u.prod.iter().map(|f| eval_int(f, &vals)).collect();
        let ng: Vec<BigInt> = u.neg.iter().map(|f| eval_int(f, &vals)).collect();
        let (gx, gy) = (ghost_int(u.p, &x), ghost_int(u.p, &y));
        let (gs, gm, gn) = (ghost_int(u.p, &s), ghost_int(u.p, &m), ghost_int(u.p, &ng));
        (0..u.n).all(|i| gs[i] == &gx[i] + &gy[i] && gm[i] == &gx[i] * &gy[i] && gn[i] == -&gx[i])
    })
}

pub(crate) fn eval_int(f: &IntPoly, vals: &[BigInt]) -> BigInt {
    f.iter()
        .map(|(e, c)| {
            e.iter()
                .zip(vals)
                .fold(c.clone(), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k as usize))
        })
        .sum()
}

pub(crate) fn ghost_int(p: u64, x: &[BigInt]) -> Vec<BigInt> {
    (0..x.len())
        .map(|i| {
            (0..=i)
                .map(|j| BigInt::from(p).pow(j as u32) * x[j].pow(p.pow((i - j) as u32) as u32))
                .sum()
        })
        .collect()
}

type GenPoly = HashMap<Vec<u16>, BigInt>;

fn var(idx: usize, len: usize) -> GenPoly {
    let mut e = vec![0u16; len];
    e[idx] = 1;
    HashMap::from([(e, BigInt::one())])
}

fn add_into(acc: &mut GenPoly, f: &GenPoly, scale: &BigInt) {
    for (e, c) in f {
        let entry = acc.entry(e.clone()).or_insert_with(BigInt::zero);
        *entry += c * scale;
        if entry.is_zero() {
            acc.remove(e);
        }
    }
}

fn mul(f: &GenPoly, g: &GenPoly) -> GenPoly {
    let mut out: GenPoly = HashMap::with_capacity(f.len() * g.len());
    for (ef, cf) in f {
        for (eg, cg) in g {
            let e: Vec<u16> = ef.iter().zip(eg).map(|(a, b)| a + b).collect();
            *out.entry(e).or_insert_with(BigInt::zero) += cf * cg;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn pow(f: &GenPoly, mut e: u64, len: usize) -> GenPoly {
    let mut acc: GenPoly = HashMap::from([(vec![0u16; len], BigInt::one())]);
    let mut base = f.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

/// Ghost component `g_i` of the variables at `offset + 2j`.
fn ghost_poly(p: u64, i: usize, offset: usize, len: usize) -> GenPoly {
    let mut out = GenPoly::new();
    for j in 0..=i {
        let term = pow(&var(2 * j + offset, len), p.pow((i - j) as u32), len);
        add_into(&mut out, &term, &BigInt::from(p).pow(j as u32));
    }
    out
}

/// Solves `sum_{j<=i} p^j P_j^{p^{i-j}} = target_i` for `P_0..P_{n-1}`.
fn solve_ghost(p: u64, n: usize, targets: Vec<GenPoly>) -> Vec<IntPoly> {
    let len = 2 * n;
    let bp = BigInt::from(p);
    let mut solved: Vec<GenPoly> = Vec::with_capacity(n);
    // raised[j] = P_j^{p^{i-j}} for the current i
    let mut raised: Vec<GenPoly> = Vec::with_capacity(n);
    for (i, target) in targets.into_iter().enumerate() {
        for r in raised.iter_mut() {
            *r = pow(r, p, len);
        }
        let mut num = target;
        for (j, r) in raised.iter().enumerate() {
            add_into(&mut num, r, &-bp.pow(j as u32));
        }
        let denom = bp.pow(i as u32);
        let poly: GenPoly = num
            .into_iter()
            .map(|(e, c)| {
                let (q, rem) = c.div_rem(&denom);
                assert!(rem.is_zero(), "non-integral Witt polynomial coefficient at p={p}, i={i}");
                (e, q)
            })
            .collect();
        raised.push(poly.clone());
        solved.push(poly);
    }
    solved
        .into_iter()
        .map(|f| {
            let mut v: IntPoly = f.into_iter().collect();
            v.sort();
            v
        })
        .collect()
}

/// Generates the polynomials from scratch (no cache).
pub fn generate(p: u64, n: usize) -> UniversalPolys {
    let len = 2 * n;
    let gx: Vec<GenPoly> = (0..n).map(|i| ghost_poly(p, i, 0, len)).collect();
    let gy: Vec<GenPoly> = (0..n).map(|i| ghost_poly(p, i, 1, len)).collect();
    let sum_t = (0..n)
        .map(|i| {
            let mut t = gx[i].clone();
            add_into(&mut t, &gy[i], &BigInt::one());
            t
        })
        .collect();
    let prod_t = (0..n).map(|i| mul(&gx[i], &gy[i])).collect();
    let neg_t = (0..n)
        .map(|i| {
            let mut t = GenPoly::new();
            add_into(&mut t, &gx[i], &-BigInt::one());
            t
        })
        .collect();
    UniversalPolys { p, n, sum: solve_ghost(p, n, sum_t), prod: solve_ghost(p, n, prod_t), neg: solve_ghost(p, n, neg_t) }
}
