use num_bigint::BigInt;
use proptest::prelude::*;
use wittcft::laurent::{unit_decompose, EXACT};
use wittcft::ramification::RamProfile;
use wittcft::reduction::Reducer;
use wittcft::ring::Integers;
use wittcft::symbol::{oracle_classical, required_unit_precision, symbol};
use wittcft::tower::{PlaceData, TowerSpec};
use wittcft::witt::galois::GaloisRing;
use wittcft::witt::{WittRing, WittVec};
use wittcft::{make_field, FqElem, Ring};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ghost_components_are_additive_and_multiplicative(
        x in prop::collection::vec(-20i64..20, 3),
        y in prop::collection::vec(-20i64..20, 3),
    ) {
        let zr = WittRing::new(Integers, 3, 3).unwrap();
        let x = WittVec::new(x.into_iter().map(BigInt::from).collect());
        let y = WittVec::new(y.into_iter().map(BigInt::from).collect());
        let (gx, gy) = (zr.ghost(&x), zr.ghost(&y));
        let gs = zr.ghost(&zr.add_w(&x, &y));
        let gm = zr.ghost(&zr.mul_w(&x, &y));
        for i in 0..3 {
            prop_assert_eq!(&gs[i], &(&gx[i] + &gy[i]));
            prop_assert_eq!(&gm[i], &(&gx[i] * &gy[i]));
        }
    }

    #[test]
    fn conductors_grow_and_discriminants_match_riemann_hurwitz(
        p in prop::sample::select(vec![2u64, 3, 5]),
        raw in prop::collection::btree_map(1u64..30, 0usize..3, 1..5),
        g0 in 0u64..3,
        deg in 1u32..4,
    ) {
        let mut entries: Vec<(u64, usize)> = raw.into_iter().filter(|(i, _)| i % p != 0).collect();
        if entries.is_empty() {
            entries.push((1, 1));
        }
        // a tower of P^1 must ramify at the first level
        if g0 == 0 {
            entries[0].1 = 0;
        }
        let prof = RamProfile::new(p, 8, entries.iter().copied(), 8).unwrap();
        let u: Vec<u64> = (0..=6).map(|l| prof.conductor_exponent(l)).collect();
        prop_assert!(u.windows(2).all(|w| w[0] <= w[1]));
        let spec = TowerSpec {
            p, m: 1, g0, nc: 0,
            places: vec![PlaceData { label: "P".into(), deg, profile: entries }],
            nmax: 5,
        };
        for n in spec.n_u()..=5 {
            prop_assert_eq!(spec.genus(n).unwrap(), spec.genus_from_discriminant(n).unwrap());
        }
    }

    #[test]
    fn symbol_is_additive_in_the_unit(
        xs in prop::collection::vec((0u32..4, -6i64..2), 1..5),
        ys in prop::collection::vec((1u32..4, 0i64..6), 1..4),
        zs in prop::collection::vec((1u32..4, 0i64..6), 1..4),
    ) {
        let k = make_field(2, 2).unwrap();
        let red = Reducer::new(&k, 2).unwrap();
        let gr = GaloisRing::new(&k, 2).unwrap();
        let ring = red.series();
        let monos: Vec<(FqElem, i64, usize)> = xs.iter().map(|&(c, e)| (FqElem(c), e, 0)).collect();
        let x = red.from_monomials(&monos).unwrap();
        let unit = |t: &[(u32, i64)]| {
            let mut terms: Vec<(i64, FqElem)> = vec![(0, FqElem(1))];
            terms.extend(t.iter().map(|&(c, e)| (e + 1, FqElem(c))));
            let mut acc = ring.monomial(FqElem(1), 0);
            for (e, c) in terms {
                acc = ring.mul(&acc, &ring.from_terms(&[(0, FqElem(1)), (e.max(1), c)], EXACT));
            }
            acc
        };
        let (y, z) = (unit(&ys), unit(&zs));
        let r = red.reduce(&x, 60).unwrap().reduced;
        let need = required_unit_precision(&r, 2);
        let s = |y| symbol(&gr, &r, &unit_decompose(ring, y, need).unwrap()).unwrap().value;
        let yz = ring.mul(&y, &z);
        prop_assert_eq!(s(&yz), (s(&y) + s(&z)) % 4);
        prop_assert_eq!(oracle_classical(&gr, &x, &yz).unwrap().value, s(&yz));
    }
}
