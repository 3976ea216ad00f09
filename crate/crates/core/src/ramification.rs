//! Upper ramification, conductor exponents and discriminant exponents of
//! the cyclic extensions cut out by a reduced class.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reduction::ReducedClass;
use crate::ring::{p_adic_valuation, phi_prime_power};

/// Valuations `v(c_i)` of the entries of a reduced class, with `v(c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamProfile {
    pub p: u64,
    /// Level the valuations are known to; entries with `v >= n` are dropped.
    pub n: usize,
    pub entries: BTreeMap<u64, usize>,
    /// `v(c)`, equal to `n` when `c = 0`.
    pub v_c: usize,
}

impl RamProfile {
    pub fn new(p: u64, n: usize, entries: impl IntoIterator<Item = (u64, usize)>, v_c: usize) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, v) in entries {
            if i == 0 || i % p == 0 {
                return Err(Error::Invalid(format!("profile index {i} must be positive and prime to {p}")));
            }
            if v < n {
                map.insert(i, v);
            }
        }
        Ok(RamProfile { p, n, entries: map, v_c: v_c.min(n) })
    }

    pub fn from_class(r: &ReducedClass, p: u64) -> Self {
        let v_c = if r.c == 0 { r.n } else { p_adic_valuation(r.c, p) as usize };
        RamProfile { p, n: r.n, entries: r.valuations(), v_c }
    }

    pub fn n_c(&self) -> usize {
        self.entries.values().copied().min().unwrap_or(self.n)
    }

    pub fn n_0(&self) -> usize {
        self.n_c().min(self.v_c)
    }

    pub fn is_primitive(&self) -> bool {
        self.n_0() == 0
    }

    /// The profile of `x / p^s`: every valuation lowered by `s <= n_0`.
    pub fn shift(&self, s: usize) -> Result<RamProfile> {
        if s > self.n_0() {
            return Err(Error::Invalid(format!("cannot divide by p^{s}: n_0 = {}", self.n_0())));
        }
        Ok(RamProfile {
            p: self.p,
            n: self.n - s,
            entries: self.entries.iter().map(|(&i, &v)| (i, v - s)).collect(),
            v_c: self.v_c - s,
        })
    }

    /// `u_n = 1 + max{i p^{n - v_i - 1} : v_i < n}`, or 0.
    pub fn conductor_exponent(&self, n: usize) -> u64 {
        self.entries
            .iter()
            .filter(|&(_, &v)| v < n)
            .map(|(&i, &v)| 1 + i * self.p.pow((n - v - 1) as u32))
            .max()
            .unwrap_or(0)
    }

    /// For `r >= 1`, the map `i -> ceil(log_p(r / i))` (at least 0).
    pub fn upper_break_threshold(&self, r: u64) -> BTreeMap<u64, u32> {
        self.entries.keys().map(|&i| (i, ceil_log(self.p, r, i))).collect()
    }

    /// `min_i (v_i + ceil(log_p(r / i)))`, capped at `n`: the level from
    /// which the `r`-th upper ramification group is visible.
    pub fn filtration_level(&self, r: u64) -> usize {
        self.entries
            .iter()
            .map(|(&i, &v)| v + ceil_log(self.p, r, i) as usize)
            .min()
            .unwrap_or(self.n)
            .min(self.n)
    }

    /// Integers `r >= 1` where the upper filtration of `Gal(K_n/K)` jumps.
    pub fn upper_breaks(&self, n: usize) -> Vec<u64> {
        let top = self.conductor_exponent(n);
        let level = |r: u64| self.filtration_level(r).min(n);
        (1..top).filter(|&r| level(r) < n && level(r + 1) > level(r)).collect()
    }

    /// Exponent of the discriminant of `K_n / K`:
    /// `sum_{i=n_0}^n phi(p^{i - n_0}) u_i`, zero for `n <= n_0`.
    pub fn discriminant_exponent(&self, n: usize) -> u64 {
        let n0 = self.n_0();
        if n <= n0 {
            return 0;
        }
        (n0..=n).map(|i| phi_prime_power(self.p, (i - n0) as u32) * self.conductor_exponent(i)).sum()
    }

    /// Conductors, breaks and discriminants for levels `0..=n`.
    pub fn table(&self, n: usize) -> Result<ConductorTable> {
        check_size(self.p, n, self.entries.keys().copied().max().unwrap_or(1))?;
        Ok(ConductorTable {
            p: self.p,
            u: (0..=n).map(|l| self.conductor_exponent(l)).collect(),
            breaks: self.upper_breaks(n),
            disc: (0..=n).map(|l| self.discriminant_exponent(l)).collect(),
        })
    }
}

/// Rejects levels whose conductors and discriminants overflow `u64`.
pub fn check_size(p: u64, n: usize, max_index: u64) -> Result<()> {
    let ok = (p as u128)
        .checked_pow(2 * n as u32 + 1)
        .and_then(|q| q.checked_mul(max_index as u128 + 1))
        .is_some_and(|q| q < u64::MAX as u128);
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid(format!("level {n} is too large for p = {p}")))
    }
}

/// Smallest `j >= 0` with `i p^j >= r`.
pub fn ceil_log(p: u64, r: u64, i: u64) -> u32 {
    let mut j = 0;
    let mut x = i as u128;
    while x < r as u128 {
        x *= p as u128;
        j += 1;
    }
    j
}

/// Conductor exponents `u_0..u_n`, upper breaks and discriminant exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorTable {
    pub p: u64,
    pub u: Vec<u64>,
    pub breaks: Vec<u64>,
    pub disc: Vec<u64>,
}

impl ConductorTable {
    /// Columns `n,u_n,disc_n`, one row per level from 1.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,u_n,disc_n\n");
        for (l, (u, d)) in self.u.iter().zip(&self.disc).enumerate().skip(1) {
            out.push_str(&format!("{l},{u},{d}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(p: u64, n: usize, entries: &[(u64, usize)], v_c: usize) -> RamProfile {
        RamProfile::new(p, n, entries.iter().copied(), v_c).unwrap()
    }

    #[test]
    fn conductor_examples() {
        let one = profile(3, 5, &[(1, 0)], 5);
        assert_eq!((1..=3).map(|l| one.conductor_exponent(l)).collect::<Vec<_>>(), vec![2, 4, 10]);
        let empty = profile(3, 5, &[], 0);
        assert!((0..=5).all(|l| empty.conductor_exponent(l) == 0));
        let five = profile(2, 4, &[(5, 1)], 4);
        assert_eq!((five.conductor_exponent(1), five.conductor_exponent(2)), (0, 6));
    }

    #[test]
    fn thresholds() {
        let pr = profile(3, 4, &[(1, 0), (5, 0), (7, 1)], 4);
        assert_eq!(ceil_log(3, 4, 1), 2);
        assert_eq!(ceil_log(3, 3, 5), 0);
        assert_eq!(ceil_log(3, 9, 1), 2);
        assert_eq!(ceil_log(3, 10, 1), 3);
        let th = pr.upper_break_threshold(4);
        assert_eq!(th[&1], 2);
        assert_eq!(th[&5], 0);
        // u_n is the least r >= 1 with every threshold >= n - v_i
        for n in 1..=4 {
            let least = (1..)
                .find(|&r| pr.entries.iter().all(|(&i, &v)| v >= n || ceil_log(3, r, i) as usize >= n - v))
                .unwrap();
            assert_eq!(pr.conductor_exponent(n), least);
        }
    }

    #[test]
    fn monotone_and_wild() {
        for p in [2u64, 3, 5] {
            for entries in [vec![(1, 0)], vec![(1, 1), (p + 1, 0)], vec![(2 * p + 1, 2), (1, 1)]] {
                let pr = profile(p, 5, &entries, 5);
                let n_c = pr.n_c();
                let u: Vec<u64> = (0..=5).map(|l| pr.conductor_exponent(l)).collect();
                assert!(u.windows(2).all(|w| w[0] <= w[1]));
                for (l, &ul) in u.iter().enumerate() {
                    if l <= n_c {
                        assert_eq!(ul, 0);
                    } else {
                        assert!(ul > p.pow((l - n_c - 1) as u32) && ul >= 2);
                    }
                }
            }
        }
    }

    #[test]
    fn breaks_are_conductor_jumps() {
        for p in [2u64, 3] {
            let pr = profile(p, 4, &[(1, 0), (p + 1, 1), (2 * p + 1, 2)], 4);
            for n in 1..=4 {
                let mut expected: Vec<u64> =
                    (pr.n_c() + 1..=n).map(|l| pr.conductor_exponent(l) - 1).collect();
                expected.dedup();
                assert_eq!(pr.upper_breaks(n), expected, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn discriminants() {
        let one = profile(3, 4, &[(1, 0)], 4);
        assert_eq!(one.discriminant_exponent(0), 0);
        assert_eq!(one.discriminant_exponent(1), 4);
        assert_eq!(one.discriminant_exponent(2), 28);
        assert_eq!(profile(3, 4, &[], 0).discriminant_exponent(3), 0);
        let t = one.table(3).unwrap();
        assert_eq!(t.to_csv(), "n,u_n,disc_n\n1,2,4\n2,4,28\n3,10,208\n");
    }

    #[test]
    fn shifting_matches_the_direct_formula() {
        let pr = profile(3, 5, &[(1, 2), (2, 3)], 5);
        assert_eq!(pr.n_0(), 2);
        let sh = pr.shift(2).unwrap();
        assert!(sh.is_primitive());
        for n in 0..=3 {
            assert_eq!(pr.conductor_exponent(n + 2), sh.conductor_exponent(n));
            assert_eq!(pr.discriminant_exponent(n + 2), sh.discriminant_exponent(n));
        }
        assert!(pr.shift(3).is_err());
    }
}
