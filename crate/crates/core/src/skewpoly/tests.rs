use proptest::prelude::*;

use super::*;
use crate::gf::make_tower;
use crate::upoly;

fn f4() -> FieldTower {
    make_tower(2, 1, 2, 1, None).unwrap()
}

fn poly(k: &FieldTower, idx: &[u32]) -> SkewPoly {
    SkewPoly::new(idx.iter().map(|&i| k.element(i).unwrap()).collect())
}

fn central(k: &FieldTower, idx: &[u32]) -> CentralPoly {
    CentralPoly::new(k, idx.iter().map(|&i| k.element(i).unwrap()).collect()).unwrap()
}

const W: u32 = 2;
const W2: u32 = 3;

fn brute_irreducible(ring: &SkewRing, f: &SkewPoly) -> bool {
    let m = f.degree().unwrap();
    (1..m).all(|d| ring.monic_polys(d).all(|g| !ring.right_divides(&g, f)))
}

#[test]
fn multiplication_twists() {
    let k = f4();
    let r = SkewRing::new(&k);
    let t = poly(&k, &[0, 1]);
    let w = poly(&k, &[W]);
    assert_eq!(r.mul(&t, &w), poly(&k, &[0, W2]));
    assert_eq!(
        r.mul(&poly(&k, &[W2, 1]), &poly(&k, &[W, 1])),
        poly(&k, &[1, 0, 1])
    );
    let f = poly(&k, &[W, 1, W2]);
    assert_eq!(r.mul(&f, &SkewPoly::one()), f);
    assert_eq!(r.mul(&f, &SkewPoly::zero()), SkewPoly::zero());
}

#[test]
fn right_division_examples() {
    let k = f4();
    let r = SkewRing::new(&k);
    let t2 = poly(&k, &[0, 0, 1]);
    let f = poly(&k, &[W, 1]);
    assert_eq!(
        r.right_divmod(&t2, &f).unwrap(),
        (poly(&k, &[W2, 1]), SkewPoly::one())
    );
    assert_eq!(
        r.right_divmod(&f, &f).unwrap(),
        (SkewPoly::one(), SkewPoly::zero())
    );
    let small = poly(&k, &[W]);
    assert_eq!(
        r.right_divmod(&small, &t2).unwrap(),
        (SkewPoly::zero(), small)
    );
    assert_eq!(
        r.right_divmod(&t2, &SkewPoly::zero()),
        Err(Error::ZeroDivisor)
    );
}

#[test]
fn gcrd_examples() {
    let k = f4();
    let r = SkewRing::new(&k);
    let t2p1 = poly(&k, &[1, 0, 1]);
    let tp1 = poly(&k, &[1, 1]);
    assert_eq!(r.gcrd(&t2p1, &tp1).unwrap(), tp1);
    let f = poly(&k, &[W, W2, W]);
    assert_eq!(r.gcrd(&f, &SkewPoly::zero()).unwrap(), r.monic(&f));
    assert_eq!(r.gcrd(&f, &poly(&k, &[W2])).unwrap(), SkewPoly::one());
    assert_eq!(
        r.gcrd(&SkewPoly::zero(), &SkewPoly::zero()),
        Err(Error::BothZero)
    );
}

#[test]
fn mclm_examples() {
    let k = f4();
    let r = SkewRing::new(&k);
    assert_eq!(
        r.mclm(&poly(&k, &[W, 0, 1])).unwrap(),
        central(&k, &[1, 1, 1])
    );
    assert_eq!(r.mclm(&poly(&k, &[1, 1])).unwrap(), central(&k, &[1, 1]));
    // an inflated irreducible ĥ is its own bound
    let h = central(&k, &[1, 1, 1]);
    assert_eq!(r.mclm(&r.inflate(&h)).unwrap(), h);
    assert_eq!(r.mclm(&poly(&k, &[0, 1, 1])), Err(Error::NonCentralBound));
}

#[test]
fn mclm_is_minimal_central_multiple() {
    for (p, h, n) in [(2, 1, 2), (3, 1, 2), (2, 1, 3), (2, 2, 2)] {
        let k = make_tower(p, h, n, 1, None).unwrap();
        let r = SkewRing::new(&k);
        let q = k.q();
        for m in 1..=2 {
            for f in r.monic_polys(m).filter(|f| !f.coeff(0).is_zero()) {
                let hh = r.mclm(&f).unwrap();
                assert!(r.right_divides(&f, &r.inflate(&hh)));
                // no proper monic divisor of ĥ in F[x] is a multiple of f
                let deg = hh.degree().unwrap();
                for d in 0..deg {
                    let total = q.pow(d as u32);
                    for idx in 0..total {
                        let mut c: Vec<FieldElement> = (0..d)
                            .map(|i| k.fixed_field()[((idx / q.pow(i as u32)) % q) as usize])
                            .collect();
                        c.push(FieldElement::ONE);
                        if upoly::rem(&k, hh.coeffs(), &c).is_empty() {
                            let cp = CentralPoly::new(&k, c).unwrap();
                            assert!(!r.right_divides(&f, &r.inflate(&cp)));
                        }
                    }
                }
                if r.is_irreducible(&f) {
                    assert_eq!(hh.degree(), Some(m));
                    assert_eq!(r.inflate(&hh).degree(), Some(m * n as usize));
                }
            }
        }
    }
}

#[test]
fn irreducibility_examples_and_brute_force() {
    let k = f4();
    let r = SkewRing::new(&k);
    assert!(r.is_irreducible(&poly(&k, &[W, 0, 1])));
    assert!(!r.is_irreducible(&poly(&k, &[1, 0, 1])));
    assert!(!r.is_irreducible(&poly(&k, &[0, 0, 1])));
    for (p, h, n, maxm) in [(2, 1, 2, 3), (3, 1, 2, 2), (2, 1, 3, 2)] {
        let k = make_tower(p, h, n, 1, None).unwrap();
        let r = SkewRing::new(&k);
        for m in 1..=maxm {
            for f in r.monic_polys(m) {
                assert_eq!(r.is_irreducible(&f), brute_irreducible(&r, &f), "{f:?}");
            }
        }
    }
}

#[test]
fn factor_count_examples() {
    let k = f4();
    let r = SkewRing::new(&k);
    let fc = r.factor_count(&central(&k, &[1, 1, 1])).unwrap();
    assert_eq!((fc.k, fc.m), (2, 2));
    assert!(r.is_irreducible(&fc.factor));
    assert!(r.right_divides(&fc.factor, &poly(&k, &[1, 0, 1, 0, 1])));
    let fc = r.factor_count(&central(&k, &[1, 1])).unwrap();
    assert_eq!((fc.k, fc.m), (2, 1));
    assert_eq!(k.norm(fc.factor.coeff(0)), FieldElement::ONE);
    assert!(r.right_divides(&fc.factor, &poly(&k, &[1, 0, 1])));
    assert_eq!(
        r.factor_count(&central(&k, &[0, 0, 1])),
        Err(Error::ReducibleCentral)
    );
}

#[test]
fn factor_count_over_finite_fields_gives_k_equal_n() {
    let k = make_tower(3, 1, 2, 1, None).unwrap();
    let r = SkewRing::new(&k);
    let f3 = k.fixed_field().to_vec();
    for &a in &f3 {
        for &b in &f3 {
            let h = CentralPoly::new(&k, vec![a, b, FieldElement::ONE]).unwrap();
            if h.is_irreducible(&k) {
                let fc = r.factor_count(&h).unwrap();
                assert_eq!((fc.k, fc.m), (2, 2));
                assert_eq!(r.mclm(&fc.factor).unwrap(), h);
            }
        }
    }
}

#[test]
fn similarity_examples() {
    let k = f4();
    let r = SkewRing::new(&k);
    let f = poly(&k, &[W, 0, 1]);
    let g = poly(&k, &[W2, 0, 1]);
    let u = r.similar(&f, &g).unwrap().expect("same bound");
    assert!(!u.is_zero() && u.degree() < Some(2));
    assert!(r.rem(&r.mul(&g, &u), &f).unwrap().is_zero());
    assert_eq!(r.gcrd(&f, &u).unwrap(), SkewPoly::one());
    assert_eq!(r.similar(&f, &f).unwrap(), Some(SkewPoly::one()));
    assert_eq!(
        r.similar(&f, &poly(&k, &[W, 1])),
        Err(Error::UnequalDegrees(2, 1))
    );
    assert_eq!(r.similar(&f, &poly(&k, &[1, 0, 1])), Err(Error::Reducible));
}

#[test]
fn distinct_bounds_are_not_similar() {
    let k = make_tower(3, 1, 2, 1, None).unwrap();
    let r = SkewRing::new(&k);
    let h1 = CentralPoly::new(&k, vec![k.from_int(1), k.from_int(0), k.from_int(1)]).unwrap();
    let h2 = CentralPoly::new(&k, vec![k.from_int(2), k.from_int(1), k.from_int(1)]).unwrap();
    let f = r.factor_count(&h1).unwrap().factor;
    let g = r.factor_count(&h2).unwrap().factor;
    assert_eq!(r.similar(&f, &g).unwrap(), None);
}

#[test]
fn right_invariance_examples_and_two_sidedness() {
    let k = f4();
    let r = SkewRing::new(&k);
    assert!(r.right_invariant(&poly(&k, &[1, 0, 1])));
    assert!(!r.right_invariant(&poly(&k, &[W, 0, 1])));
    assert!(!r.right_invariant(&poly(&k, &[1, 0, 0, 1])));
    let t = poly(&k, &[0, 1]);
    for m in 1..=3 {
        for f in r.monic_polys(m) {
            let two_sided = r.right_divides(&f, &r.mul(&f, &t))
                && k.nonzero_elements()
                    .all(|c| r.right_divides(&f, &r.mul(&f, &SkewPoly::constant(c))));
            assert_eq!(r.right_invariant(&f), two_sided, "{f:?}");
        }
    }
}

#[test]
fn transport_examples() {
    let k = f4();
    let r = SkewRing::new(&k);
    let f = poly(&k, &[W, 0, 1]);
    let w = k.element(W).unwrap();
    assert_eq!(r.g_transport(&f, FieldElement::ONE, 0).unwrap(), f);
    assert_eq!(
        r.g_transport(&f, FieldElement::ONE, 1).unwrap(),
        poly(&k, &[W2, 0, 1])
    );
    assert_eq!(r.g_transport(&f, w, 0).unwrap(), f);
    assert_eq!(
        r.g_transport(&f, FieldElement::ZERO, 0),
        Err(Error::ZeroInverse)
    );
    assert!(matches!(
        r.g_transport(&f, w, 2),
        Err(Error::InvalidAutomorphism { .. })
    ));
}

#[test]
fn formatting() {
    let k = f4();
    assert_eq!(poly(&k, &[3, 2, 1]).format(&k), "t^2+w*t+w+1");
    assert_eq!(poly(&k, &[0, 3]).format(&k), "(w+1)*t");
    assert_eq!(SkewPoly::zero().format(&k), "0");
}

fn arb_poly(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..9, 0..max_len)
}

proptest! {
    #[test]
    fn division_identity(g in arb_poly(7), f in arb_poly(5)) {
        let k = make_tower(3, 1, 2, 1, None).unwrap();
        let r = SkewRing::new(&k);
        let g = poly(&k, &g);
        let f = poly(&k, &f);
        prop_assume!(!f.is_zero());
        let (q, rem) = r.right_divmod(&g, &f).unwrap();
        prop_assert_eq!(r.add(&r.mul(&q, &f), &rem), g);
        prop_assert!(rem.degree() < f.degree());
    }

    #[test]
    fn mul_is_associative_and_degree_additive(a in arb_poly(4), b in arb_poly(4), c in arb_poly(4)) {
        let k = make_tower(3, 1, 2, 1, None).unwrap();
        let r = SkewRing::new(&k);
        let (a, b, c) = (poly(&k, &a), poly(&k, &b), poly(&k, &c));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(r.mul(&a, &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }
    }

    #[test]
    fn gcrd_divides_both(a in arb_poly(5), b in arb_poly(5)) {
        let k = make_tower(3, 1, 2, 1, None).unwrap();
        let r = SkewRing::new(&k);
        let (a, b) = (poly(&k, &a), poly(&k, &b));
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = r.gcrd(&a, &b).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(r.rem(&a, &g).unwrap().is_zero());
        prop_assert!(r.rem(&b, &g).unwrap().is_zero());
    }
}
