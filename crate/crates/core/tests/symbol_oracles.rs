use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wittcft::laurent::{unit_decompose, Laurent, LaurentRing, EXACT};
use wittcft::reduction::{Reducer, SeriesWitt};
use wittcft::symbol::{
    oracle_classical, oracle_level1, required_unit_precision, symbol, symbol_eval, symbol_via_residue_form,
};
use wittcft::witt::galois::GaloisRing;
use wittcft::witt::WittVec;
use wittcft::{make_field, FqCtx, FqElem, Ring};

const CASES: [(u64, u32, usize); 6] = [(2, 1, 3), (2, 2, 2), (3, 1, 2), (3, 2, 2), (5, 1, 2), (2, 1, 4)];

fn random_x(red: &Reducer, rng: &mut ChaCha8Rng, depth: i64) -> SeriesWitt {
    WittVec::new((0..red.n()).map(|_| red.series().random(rng, -depth, 3, 0.5)).collect())
}

fn random_y(ring: &LaurentRing<FqCtx>, rng: &mut ChaCha8Rng) -> Laurent<FqElem> {
    let k = ring.base();
    let e = rng.gen_range(-2..3);
    let mut terms = vec![(e, k.random_nonzero(rng))];
    for d in 1..8 {
        if rng.gen_bool(0.5) {
            terms.push((e + d, k.random_nonzero(rng)));
        }
    }
    ring.from_terms(&terms, EXACT)
}

#[test]
fn all_routes_agree_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let mut nonzero = 0;
    for (p, m, n) in CASES {
        let k = make_field(p, m).unwrap();
        let red = Reducer::new(&k, n).unwrap();
        let gr = GaloisRing::new(&k, n).unwrap();
        let depth = 3;
        let prec = 10 + 2 * depth * p.pow(n as u32) as i64;
        for _ in 0..6 {
            let x = random_x(&red, &mut rng, depth);
            let y = random_y(red.series(), &mut rng);
            let r = red.reduce(&x, prec).unwrap().reduced;
            let u = unit_decompose(red.series(), &y, required_unit_precision(&r, p)).unwrap();
            let s = symbol(&gr, &r, &u).unwrap();
            assert_eq!(symbol_via_residue_form(&gr, &r, &u).unwrap(), s);
            assert_eq!(oracle_classical(&gr, &x, &y).unwrap(), s, "p={p} m={m} n={n}");
            let s1 = oracle_level1(&k, &x.coords[0], &y).unwrap();
            assert_eq!(s1, s.project(1));
            nonzero += usize::from(s.value != 0);
        }
    }
    assert!(nonzero > 10);
}

#[test]
fn wp_images_pair_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for (p, m, n) in CASES {
        let k = make_field(p, m).unwrap();
        let red = Reducer::new(&k, n).unwrap();
        let gr = GaloisRing::new(&k, n).unwrap();
        for _ in 0..4 {
            let w = random_x(&red, &mut rng, 2);
            let x = red.full().wp(&w).unwrap();
            let y = random_y(red.series(), &mut rng);
            assert_eq!(oracle_classical(&gr, &x, &y).unwrap().value, 0);
            let prec = 10 + 4 * p.pow(n as u32 + 1) as i64;
            assert!(red.is_in_wp(&x, prec).unwrap());
        }
    }
}

#[test]
fn bilinear_and_projection_compatible() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for (p, m, n) in CASES {
        let k = make_field(p, m).unwrap();
        let red = Reducer::new(&k, n).unwrap();
        let gr = GaloisRing::new(&k, n).unwrap();
        let ring = red.series();
        let prec = 10 + 6 * p.pow(n as u32) as i64;
        for _ in 0..4 {
            let r1 = red.reduce(&random_x(&red, &mut rng, 3), prec).unwrap().reduced;
            let r2 = red.reduce(&random_x(&red, &mut rng, 3), prec).unwrap().reduced;
            let (y1, y2) = (random_y(ring, &mut rng), random_y(ring, &mut rng));
            let need = required_unit_precision(&r1, p).max(required_unit_precision(&r2, p));
            let u1 = unit_decompose(ring, &y1, need).unwrap();
            let u2 = unit_decompose(ring, &y2, need).unwrap();
            let u12 = unit_decompose(ring, &ring.mul(&y1, &y2), need).unwrap();
            let pn = gr.modulus_pn();
            let s = |r, u| symbol(&gr, r, u).unwrap().value;
            assert_eq!(s(&r1, &u12), (s(&r1, &u1) + s(&r1, &u2)) % pn);
            let sum = r1.add(&r2, &gr);
            assert_eq!(s(&sum, &u1), (s(&r1, &u1) + s(&r2, &u1)) % pn);
            for lvl in 1..n {
                let small = GaloisRing::new(&k, lvl).unwrap();
                assert_eq!(symbol(&small, &r1, &u1).unwrap(), symbol(&gr, &r1, &u1).unwrap().project(lvl));
            }
        }
    }
}

/// Element of `k` whose image in `big` is `b`.
fn preimage(k: &FqCtx, big: &FqCtx, b: FqElem) -> FqElem {
    let emb = k.embedding_into(big).unwrap();
    k.elements().find(|&a| emb.apply(a) == b).expect("coefficient lies in k")
}

#[test]
fn evaluation_form_over_extensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for (p, m, n, ext) in [(3u64, 1u32, 2usize, 2u32), (2, 1, 3, 3), (2, 2, 2, 2), (5, 1, 2, 2)] {
        let k = make_field(p, m).unwrap();
        let big = make_field(p, m * ext).unwrap();
        let red = Reducer::new(&k, n).unwrap();
        let gr = GaloisRing::new(&k, n).unwrap();
        let big_ring = LaurentRing::new(big.clone());
        for _ in 0..4 {
            let alpha = big.random_nonzero(&mut rng);
            // orbit of alpha under the Frobenius of k
            let mut roots = vec![alpha];
            loop {
                let next = big.frob_iter(*roots.last().unwrap(), m as i64);
                if next == alpha {
                    break;
                }
                roots.push(next);
            }
            let mut poly = big_ring.monomial(FqElem(1), 0);
            for &a in &roots {
                poly = big_ring.mul(&poly, &big_ring.from_terms(&[(0, FqElem(1)), (1, big.neg(&a))], EXACT));
            }
            let terms: Vec<(i64, FqElem)> =
                big_ring.terms(&poly).map(|(e, &c)| (e, preimage(&k, &big, c))).collect();
            let y = red.series().from_terms(&terms, EXACT);
            let mut r = red.reduce(&random_x(&red, &mut rng, 4), 10 + 8 * p.pow(n as u32) as i64).unwrap().reduced;
            r.c = 0;
            let u = unit_decompose(red.series(), &y, required_unit_precision(&r, p)).unwrap();
            assert_eq!(symbol_eval(&gr, &r, &big, &roots).unwrap(), symbol(&gr, &r, &u).unwrap());
        }
    }
}

/// `f(phi)` for `phi = T (1 + ...)`, to absolute precision `prec`.
fn substitute(ring: &LaurentRing<FqCtx>, f: &Laurent<FqElem>, phi: &Laurent<FqElem>, prec: i64) -> Laurent<FqElem> {
    let phi_inv = ring.inverse_to(phi, prec + 2 * f.val.abs() + 2).unwrap();
    let mut acc = ring.zero_to(prec);
    for (e, &c) in ring.terms(f) {
        let base = if e < 0 { &phi_inv } else { phi };
        let term = ring.scale(&c, &ring.pow(base, e.unsigned_abs()));
        acc = ring.add(&acc, &ring.truncate(&term, prec));
    }
    ring.truncate(&acc, prec)
}

#[test]
fn independent_of_the_uniformizer() {
    // T' = T (1 + T); in terms of T', T = phi(T') with phi = T' / (1 + phi)
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut nonzero = 0;
    for (p, m, n) in [(2u64, 1u32, 2usize), (3, 1, 2), (2, 2, 2), (5, 1, 1)] {
        let k = make_field(p, m).unwrap();
        let red = Reducer::new(&k, n).unwrap();
        let gr = GaloisRing::new(&k, n).unwrap();
        let ring = red.series();
        let depth = 2;
        let prec = 12 + 3 * depth * p.pow(n as u32) as i64;
        let t = ring.monomial(FqElem(1), 1);
        let one = ring.monomial(FqElem(1), 0);
        let mut phi = t.clone();
        for _ in 0..prec + 2 {
            let inv = ring.inverse_to(&ring.add(&one, &phi), prec + 2).unwrap();
            phi = ring.truncate(&ring.mul(&t, &inv), prec + 2);
        }
        for _ in 0..4 {
            let x = random_x(&red, &mut rng, depth);
            let y = random_y(ring, &mut rng);
            let r = red.reduce(&x, prec).unwrap().reduced;
            let u = unit_decompose(ring, &y, required_unit_precision(&r, p)).unwrap();
            let base = symbol(&gr, &r, &u).unwrap();

            let x2 = WittVec::new(x.coords.iter().map(|c| substitute(ring, c, &phi, prec)).collect());
            let y2 = substitute(ring, &y, &phi, prec);
            let r2 = red.reduce(&x2, prec).unwrap().reduced;
            let u2 = unit_decompose(ring, &y2, required_unit_precision(&r2, p)).unwrap();
            assert_eq!(symbol(&gr, &r2, &u2).unwrap(), base, "p={p} m={m} n={n}");
            nonzero += usize::from(base.value != 0);
        }
    }
    assert!(nonzero > 4);
}
