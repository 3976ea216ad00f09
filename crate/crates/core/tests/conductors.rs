use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wittcft::laurent::{UnitDecomp, EXACT};
use wittcft::ramification::RamProfile;
use wittcft::reduction::ReducedClass;
use wittcft::symbol::symbol;
use wittcft::witt::galois::GaloisRing;
use wittcft::witt::WittVec;
use wittcft::{make_field, FqElem};

fn factor(i: u64, j: u32, a: FqElem) -> UnitDecomp {
    UnitDecomp { e: 0, lead: FqElem(1), table: [((i, j), a)].into_iter().collect(), prec: EXACT }
}

/// Single factors `(1 - a T^i)^{p^j}` with `lo <= i p^j < hi`.
fn factors(p: u64, lo: u64, hi: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for i in (1..hi).filter(|i| i % p != 0) {
        let mut j = 0;
        while i * p.pow(j) < hi {
            if i * p.pow(j) >= lo {
                out.push((i, j));
            }
            j += 1;
        }
    }
    out
}

#[test]
fn conductor_is_where_the_symbol_dies() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for (p, m, n) in [(2u64, 1u32, 3usize), (3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 2, 2)] {
        let k = make_field(p, m).unwrap();
        for _ in 0..4 {
            let mut r = ReducedClass::zero(&k, n);
            for i in (1..6u64).filter(|i| i % p != 0) {
                if rng.gen_bool(0.6) {
                    let v = rng.gen_range(0..n);
                    let mut coords = vec![FqElem(0); n];
                    coords[v] = k.random_nonzero(&mut rng);
                    for c in coords.iter_mut().skip(v + 1) {
                        *c = k.random(&mut rng);
                    }
                    r.table.insert(i, WittVec::new(coords));
                }
            }
            let prof = RamProfile::from_class(&r, p);
            for lvl in 1..=n {
                let gr = GaloisRing::new(&k, lvl).unwrap();
                let u = prof.conductor_exponent(lvl);
                if u == 0 {
                    for (i, j) in factors(p, 1, 20) {
                        for a in k.elements() {
                            assert_eq!(symbol(&gr, &r, &factor(i, j, a)).unwrap().value, 0);
                        }
                    }
                    continue;
                }
                for (i, j) in factors(p, u, u + 20) {
                    for a in k.elements() {
                        assert_eq!(symbol(&gr, &r, &factor(i, j, a)).unwrap().value, 0, "u={u} i={i} j={j}");
                    }
                }
                let below = factors(p, u - 1, u);
                let alive = below
                    .iter()
                    .any(|&(i, j)| k.elements().any(|a| symbol(&gr, &r, &factor(i, j, a)).unwrap().value != 0));
                assert!(alive, "conductor {u} at level {lvl} is not minimal");
            }
        }
    }
}
