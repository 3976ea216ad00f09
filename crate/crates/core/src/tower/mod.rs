//! Genus growth in `Z_p`-towers of function fields: the genus formula,
//! discriminants, lower bounds and genus stability.

pub mod global;
pub mod ratfunc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ramification::{check_size, RamProfile};
use crate::ring::{is_prime, phi_prime_power};

/// A place of the base field with the valuations `v(c_i)` of its local
/// reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceData {
    pub label: String,
    /// Residue degree over the constant field.
    pub deg: u32,
    /// Pairs `[i, v(c_i)]`.
    pub profile: Vec<(u64, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub p: u64,
    pub m: u32,
    pub g0: u64,
    pub nc: usize,
    pub places: Vec<PlaceData>,
    pub nmax: usize,
}

/// Genus data at one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRow {
    pub n: usize,
    /// `u_{P,n}` for every place, in spec order.
    pub conductors: Vec<u64>,
    pub conductor_deg: u64,
    pub disc_deg: u64,
    pub genus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceStability {
    pub label: String,
    /// `a_P` with `u_{P,n} = 1 + a_P p^n` from level `n_P` on.
    pub a: String,
    pub n: usize,
}

/// `g_n = a p^{2n} + b p^n + c` for `n >= m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityRecord {
    pub places: Vec<PlaceStability>,
    pub a: String,
    pub b: String,
    pub c: String,
    pub m: usize,
    /// Level past the fitting window where the fit was checked.
    pub verified_at: usize,
    /// The verdict concerns the finitely supported profiles given.
    pub finite_support: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub spec: TowerSpec,
    pub levels: Vec<LevelRow>,
    pub stability: Option<StabilityRecord>,
}

/// Discriminant exponent of every place and the total degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalDiscriminant {
    pub exponents: Vec<(String, u64)>,
    pub degree: u64,
}

/// `p^{n_c}(2g_n - 2) >= rhs`, and the bound on `g_n` it implies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub rhs: BigRational,
    pub genus: BigRational,
}

fn rat(n: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl TowerSpec {
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        if self.m == 0 {
            return Err(Error::InvalidDegree);
        }
        let max_index = self.places.iter().flat_map(|pl| pl.profile.iter().map(|e| e.0)).max().unwrap_or(1);
        check_size(self.p, self.nmax + 3, max_index)?;
        for pl in &self.places {
            if pl.deg == 0 {
                return Err(Error::Invalid(format!("place {} has degree 0", pl.label)));
            }
            for &(i, v) in &pl.profile {
                if i == 0 || i % self.p == 0 {
                    return Err(Error::Invalid(format!("place {}: index {i} must be prime to p", pl.label)));
                }
                if v < self.nc {
                    return Err(Error::Invalid(format!(
                        "place {}: v(c_{i}) = {v} is below the constant depth {}",
                        pl.label, self.nc
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn profile(&self, place: &PlaceData) -> RamProfile {
        // levels past nmax + 3 are never queried
        let n = self.nmax + 4;
        RamProfile::new(self.p, n, place.profile.iter().copied(), n).expect("validated profile")
    }

    /// Largest `n` with `K_n / K` unramified.
    pub fn n_u(&self) -> usize {
        self.places.iter().flat_map(|pl| pl.profile.iter().map(|e| e.1)).min().unwrap_or(usize::MAX)
    }

    pub fn conductor(&self, place: &PlaceData, n: usize) -> u64 {
        self.profile(place).conductor_exponent(n)
    }

    /// `sum_{i=0}^n phi(p^i) u_{P,i}`, with `u_{P,0} = 0`.
    pub fn place_discriminant(&self, place: &PlaceData, n: usize) -> u64 {
        let prof = self.profile(place);
        (1..=n).map(|i| phi_prime_power(self.p, i as u32) * prof.conductor_exponent(i)).sum()
    }

    pub fn discriminant_global(&self, n: usize) -> GlobalDiscriminant {
        let exponents: Vec<(String, u64)> =
            self.places.iter().map(|pl| (pl.label.clone(), self.place_discriminant(pl, n))).collect();
        let degree = self.places.iter().zip(&exponents).map(|(pl, (_, e))| pl.deg as u64 * e).sum();
        GlobalDiscriminant { exponents, degree }
    }

    /// Solves `p^{min(n_c, n)}(2g_n - 2) = p^n(2g_0 - 2) + sum_P deg P sum_i phi(p^i) u_{P,i}`.
    pub fn genus(&self, n: usize) -> Result<u64> {
        let mut rhs = (self.p as i128).pow(n as u32) * (2 * self.g0 as i128 - 2);
        for pl in &self.places {
            let prof = self.profile(pl);
            for i in 1..=n {
                rhs += pl.deg as i128 * phi_prime_power(self.p, i as u32) as i128 * prof.conductor_exponent(i) as i128;
            }
        }
        genus_from_rhs(self.p, self.nc.min(n), rhs, n)
    }

    /// Riemann-Hurwitz from the degree of the global discriminant.
    pub fn genus_from_discriminant(&self, n: usize) -> Result<u64> {
        let rhs = (self.p as i128).pow(n as u32) * (2 * self.g0 as i128 - 2) + self.discriminant_global(n).degree as i128;
        genus_from_rhs(self.p, self.nc.min(n), rhs, n)
    }

    /// Per-place `a_P`, `n_P` and the fit `g_n = a p^{2n} + b p^n + c`.
    pub fn stability(&self) -> Result<StabilityRecord> {
        if self.nc != 0 {
            return Err(Error::NotGeometric(self.nc as u32));
        }
        let p = self.p as i128;
        let mut places = Vec::new();
        let mut m = 0usize;
        for pl in &self.places {
            let prof = self.profile(pl);
            // maximize i p^{-v}; distinct (i, v) give distinct values
            let best = prof
                .entries
                .iter()
                .map(|(&i, &v)| (BigRational::new(BigInt::from(i), BigInt::from(p).pow(v as u32 + 1)), v))
                .max_by(|a, b| a.0.cmp(&b.0));
            let Some((a, v)) = best else { continue };
            let ties = prof
                .entries
                .iter()
                .filter(|&(&i, &w)| BigRational::new(BigInt::from(i), BigInt::from(p).pow(w as u32 + 1)) == a)
                .count();
            debug_assert_eq!(ties, 1);
            m = m.max(v + 1);
            places.push(PlaceStability { label: pl.label.clone(), a: format_rational(&a), n: v + 1 });
        }
        for start in m..m + 4 {
            let (a, b, c) = self.fit(start)?;
            let check = start + 3;
            let x = rat(p.pow(check as u32));
            let predicted = &a * &x * &x + &b * &x + &c;
            if predicted == rat(self.genus(check)? as i128) {
                return Ok(StabilityRecord {
                    places,
                    a: format_rational(&a),
                    b: format_rational(&b),
                    c: format_rational(&c),
                    m: start,
                    verified_at: check,
                    finite_support: true,
                });
            }
        }
        Err(Error::Invalid("genus sequence did not settle into a p^{2n}, p^n, 1 pattern".into()))
    }

    /// Exact quadratic through the genus at `start, start + 1, start + 2`
    /// as a function of `x = p^n`.
    fn fit(&self, start: usize) -> Result<(BigRational, BigRational, BigRational)> {
        let p = self.p as i128;
        let pts: Vec<(BigRational, BigRational)> = (start..start + 3)
            .map(|n| Ok((rat(p.pow(n as u32)), rat(self.genus(n)? as i128))))
            .collect::<Result<_>>()?;
        let (x0, y0) = &pts[0];
        let (x1, y1) = &pts[1];
        let (x2, y2) = &pts[2];
        // Newton divided differences
        let d01 = (y1 - y0) / (x1 - x0);
        let d12 = (y2 - y1) / (x2 - x1);
        let a = (&d12 - &d01) / (x2 - x0);
        let b = &d01 - &a * (x0 + x1);
        let c = y0 - &a * x0 * x0 - &b * x0;
        Ok((a, b, c))
    }

    pub fn report(&self) -> Result<GenusReport> {
        self.validate()?;
        let mut levels = Vec::with_capacity(self.nmax + 1);
        for n in 0..=self.nmax {
            let conductors: Vec<u64> = self.places.iter().map(|pl| self.conductor(pl, n)).collect();
            let conductor_deg = self.places.iter().zip(&conductors).map(|(pl, u)| pl.deg as u64 * u).sum();
            levels.push(LevelRow {
                n,
                conductors,
                conductor_deg,
                disc_deg: self.discriminant_global(n).degree,
                genus: self.genus(n)?,
            });
        }
        let stability = if self.nc == 0 { Some(self.stability()?) } else { None };
        Ok(GenusReport { spec: self.clone(), levels, stability })
    }
}

fn genus_from_rhs(p: u64, shift: usize, rhs: i128, n: usize) -> Result<u64> {
    let scale = (p as i128).pow(shift as u32);
    if rhs % scale != 0 || (rhs / scale) % 2 != 0 {
        return Err(Error::NonIntegralGenus(format!("level {n}: {rhs} / {scale} is not an even integer")));
    }
    let g = rhs / scale / 2 + 1;
    if g < 0 {
        return Err(Error::NonIntegralGenus(format!("level {n}: negative genus {g}")));
    }
    Ok(g as u64)
}

impl GenusReport {
    /// Columns `n,conductor_deg,disc_deg,genus`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,conductor_deg,disc_deg,genus\n");
        for row in &self.levels {
            out.push_str(&format!("{},{},{},{}\n", row.n, row.conductor_deg, row.disc_deg, row.genus));
        }
        out
    }
}

/// `p^n(2g_0 - 2) + p^n - p^{n_u} + p^{n_u}(p^{2(n - n_u)} - 1)/(p + 1)`,
/// the smallest value `p^{n_c}(2g_n - 2)` can take for `n >= n_u`.
pub fn genus_lower_bound(p: u64, g0: u64, nc: usize, nu: usize, n: usize) -> Result<LowerBound> {
    if n < nu {
        return Err(Error::BelowUnramified { n: n as u32, nu: nu as u32 });
    }
    let pb = BigInt::from(p);
    let pn = BigRational::from_integer(pb.pow(n as u32));
    let pu = BigRational::from_integer(pb.pow(nu as u32));
    let tail = BigRational::new(pb.pow(2 * (n - nu) as u32) - BigInt::one(), BigInt::from(p + 1));
    let rhs = &pn * rat(2 * g0 as i128 - 2) + &pn - &pu + &pu * tail;
    let genus = (&rhs / BigRational::from_integer(pb.pow(nc as u32)) + rat(2)) / rat(2);
    Ok(LowerBound { rhs, genus })
}

/// The uncorrected large-`n` bound `p^{2(n - n_u) - 1} / 3`.
pub fn gold_kisilevsky_bound(p: u64, nu: usize, n: usize) -> BigRational {
    let e = 2 * (n as i64 - nu as i64) - 1;
    let pb = BigInt::from(p);
    let pe = if e >= 0 {
        BigRational::from_integer(pb.pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), pb.pow((-e) as u32))
    };
    pe / rat(3)
}

/// The slack in `g_n / p^{2n} >= 1/(2(p+1)) - eps(n)` implied by the lower
/// bound for `n_c = n_u = 0`: `eps(n) = 1/(2(p+1)) - bound(n) / p^{2n}`.
pub fn asymptotic_slack(p: u64, g0: u64, n: usize) -> Result<BigRational> {
    let b = genus_lower_bound(p, g0, 0, 0, n)?;
    let limit = BigRational::new(BigInt::one(), BigInt::from(2 * (p + 1)));
    let scaled = b.genus / BigRational::from_integer(BigInt::from(p).pow(2 * n as u32));
    Ok(limit - scaled)
}

/// `g_n` for the unit-root tower of degree `d`:
/// `(d p^{2n} - (p+1) p^n + (p+1) - d) / (2(p+1))`.
pub fn closed_form_genus(d: u64, p: u64, n: usize) -> Result<u64> {
    let (d, p) = (d as i128, p as i128);
    let pn = p.pow(n as u32);
    let num = d * pn * pn - (p + 1) * pn + (p + 1) - d;
    let den = 2 * (p + 1);
    if num % den != 0 || num < 0 {
        return Err(Error::NonIntegralGenus(format!("{num} / {den}")));
    }
    Ok((num / den) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_root(p: u64, d: u64, nmax: usize) -> TowerSpec {
        TowerSpec {
            p,
            m: 1,
            g0: 0,
            nc: 0,
            places: vec![PlaceData { label: "inf".into(), deg: 1, profile: vec![(d, 0)] }],
            nmax,
        }
    }

    #[test]
    fn unit_root_genera() {
        let t = unit_root(3, 1, 6);
        assert_eq!((t.genus(1).unwrap(), t.genus(2).unwrap()), (0, 6));
        assert_eq!(unit_root(2, 1, 4).genus(2).unwrap(), 1);
        assert_eq!(unit_root(2, 1, 4).genus(3).unwrap(), 7);
        for (p, d) in [(2u64, 1u64), (2, 3), (3, 1), (3, 5), (5, 2), (7, 3)] {
            let t = unit_root(p, d, 5);
            for n in 0..=5 {
                assert_eq!(t.genus(n).unwrap(), closed_form_genus(d, p, n).unwrap(), "p={p} d={d} n={n}");
                assert_eq!(t.genus(n).unwrap(), t.genus_from_discriminant(n).unwrap());
            }
        }
    }

    #[test]
    fn discriminants() {
        let t = unit_root(3, 1, 4);
        let d = t.discriminant_global(2);
        assert_eq!(d.exponents, vec![("inf".to_string(), 28)]);
        assert_eq!(d.degree, 28);
        let flat = TowerSpec { places: vec![], ..t };
        assert_eq!(flat.discriminant_global(3).degree, 0);
    }

    #[test]
    fn trivial_and_bad_specs() {
        let flat = TowerSpec { p: 3, m: 1, g0: 2, nc: 0, places: vec![], nmax: 3 };
        // 2g_n - 2 = p^n (2 g_0 - 2)
        assert_eq!(flat.genus(2).unwrap(), 10);
        let constant = TowerSpec { nc: 5, ..flat.clone() };
        assert_eq!(constant.genus(2).unwrap(), 2);
        // an unramified geometric tower of P^1 cannot exist
        let bad = TowerSpec { g0: 0, ..flat.clone() };
        assert_eq!(bad.genus(0).unwrap(), 0);
        assert!(matches!(bad.genus(1), Err(Error::NonIntegralGenus(_))));
        assert!(TowerSpec { nc: 1, ..unit_root(3, 1, 3) }.validate().is_err());
    }

    #[test]
    fn lower_bounds() {
        let b = genus_lower_bound(2, 0, 0, 0, 2).unwrap();
        assert_eq!(b.rhs, rat(0));
        assert_eq!(b.genus, rat(1));
        assert!(matches!(genus_lower_bound(2, 0, 0, 3, 2), Err(Error::BelowUnramified { .. })));
        // the minimal p = 2 tower meets the bound and violates the uncorrected one
        let t = unit_root(2, 1, 8);
        for n in 1..=8 {
            let g = rat(t.genus(n).unwrap() as i128);
            assert_eq!(g, genus_lower_bound(2, 0, 0, 0, n).unwrap().genus);
            assert!(g < gold_kisilevsky_bound(2, 0, n));
        }
        for p in [3u64, 5] {
            let t = unit_root(p, 1, 6);
            for n in 1..=6 {
                let g = rat(t.genus(n).unwrap() as i128);
                assert!(g >= genus_lower_bound(p, 0, 0, 0, n).unwrap().genus);
                let eps = asymptotic_slack(p, 0, n).unwrap();
                let ratio = g / BigRational::from_integer(BigInt::from(p).pow(2 * n as u32));
                assert!(ratio >= BigRational::new(BigInt::one(), BigInt::from(2 * (p + 1))) - eps);
            }
        }
    }

    #[test]
    fn stability_fit() {
        let rec = unit_root(3, 1, 6).stability().unwrap();
        assert_eq!((rec.a.as_str(), rec.b.as_str(), rec.c.as_str()), ("1/8", "-1/2", "3/8"));
        assert_eq!(rec.places[0].a, "1/3");
        for (p, d) in [(2u64, 3u64), (5, 2)] {
            let rec = unit_root(p, d, 6).stability().unwrap();
            let a = BigRational::new(BigInt::from(d), BigInt::from(2 * (p + 1)));
            assert_eq!(rec.a, format_rational(&a));
        }
        let two = TowerSpec {
            p: 3,
            m: 1,
            g0: 1,
            nc: 0,
            places: vec![
                PlaceData { label: "a".into(), deg: 2, profile: vec![(1, 0), (5, 1), (7, 2)] },
                PlaceData { label: "b".into(), deg: 1, profile: vec![(2, 1)] },
            ],
            nmax: 6,
        };
        let rec = two.stability().unwrap();
        assert!(rec.m >= 2 && rec.verified_at == rec.m + 3);
        assert!(matches!(TowerSpec { nc: 1, places: vec![], ..two }.stability(), Err(Error::NotGeometric(1))));
    }

    #[test]
    fn json_shape() {
        let t = unit_root(3, 1, 6);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"p":3,"m":1,"g0":0,"nc":0,"places":[{"label":"inf","deg":1,"profile":[[1,0]]}],"nmax":6}"#);
        let rep = t.report().unwrap();
        assert!(rep.to_csv().starts_with("n,conductor_deg,disc_deg,genus\n0,0,0,0\n1,2,4,0\n2,4,28,6\n"));
    }
}
