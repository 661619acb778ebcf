use super::*;
use crate::gf::make_tower;
use proptest::prelude::*;

fn tower(p: u32, h: u32, n: u32) -> FieldTower {
    make_tower(p, h, n, 1, None).unwrap()
}

fn central(k: &FieldTower, idx: &[u32]) -> CentralPoly {
    CentralPoly::new(k, idx.iter().map(|&i| k.element(i).unwrap()).collect()).unwrap()
}

fn formatted(k: &FieldTower, polys: &[CentralPoly]) -> Vec<String> {
    polys.iter().map(|h| h.format(k)).collect()
}

const DESK: [(u32, u32, u32); 6] = [
    (2, 1, 2),
    (2, 1, 3),
    (3, 1, 2),
    (3, 1, 3),
    (2, 2, 2),
    (5, 1, 2),
];

#[test]
fn irreducible_examples() {
    let k2 = tower(2, 1, 2);
    assert_eq!(formatted(&k2, &irreducible_polys(&k2, 2)), ["x^2+x+1"]);
    assert_eq!(formatted(&k2, &irreducible_polys(&k2, 1)), ["x", "x+1"]);
    let k3 = tower(3, 1, 2);
    assert_eq!(
        formatted(&k3, &irreducible_polys(&k3, 2)),
        ["x^2+1", "x^2+x+2", "x^2+2*x+2"]
    );
}

#[test]
fn moebius_examples() {
    assert_eq!(moebius_count(2, 2), 1);
    assert_eq!(moebius_count(2, 3), 2);
    for q in [2, 3, 4, 5, 7, 9] {
        assert_eq!(moebius_count(q, 1), q);
    }
}

#[test]
fn moebius_matches_enumeration() {
    for (p, h) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let k = tower(p, h, 2);
        for m in 1..=6 {
            assert_eq!(
                irreducible_polys(&k, m).len() as u64,
                moebius_count(k.q(), m as u64)
            );
        }
    }
}

#[test]
fn act_examples() {
    let k = tower(3, 1, 2);
    let two = GroupElement::new(&k, k.from_int(2), 0).unwrap();
    assert_eq!(
        act(&k, &central(&k, &[2, 1, 1]), &two),
        central(&k, &[2, 2, 1])
    );
    assert_eq!(
        act(&k, &central(&k, &[1, 0, 1]), &two),
        central(&k, &[1, 0, 1])
    );
    for h in irreducible_polys(&k, 2) {
        assert_eq!(act(&k, &h, &GroupElement::identity()), h);
    }
}

#[test]
fn group_element_errors() {
    let k = tower(2, 2, 2);
    assert!(GroupElement::new(&k, FieldElement::ZERO, 0).is_err());
    assert!(matches!(
        GroupElement::new(&k, FieldElement::ONE, 4),
        Err(Error::InvalidAutomorphism { r: 4, bound: 4 })
    ));
    let outside = k
        .nonzero_elements()
        .find(|&c| !k.in_fixed_field(c))
        .unwrap();
    assert_eq!(
        GroupElement::new(&k, outside, 0),
        Err(Error::NotInFixedField)
    );
}

#[test]
fn group_axioms() {
    for (p, h, n) in DESK {
        let k = tower(p, h, n);
        let g = group_elements(&k);
        assert_eq!(g.len() as u64, group_order(&k));
        assert_eq!(group_order(&k), (k.q() - 1) * (h * n) as u64);
        let e = GroupElement::identity();
        for a in &g {
            assert_eq!(a.mul(&k, &e), *a);
            assert_eq!(e.mul(&k, a), *a);
            assert_eq!(a.mul(&k, &a.inverse(&k)), e);
            assert_eq!(a.inverse(&k).mul(&k, a), e);
            for b in &g {
                let ab = a.mul(&k, b);
                assert!(g.contains(&ab));
                for c in g.iter().step_by(3) {
                    assert_eq!(ab.mul(&k, c), a.mul(&k, &b.mul(&k, c)));
                }
            }
        }
    }
}

#[test]
fn action_axioms_and_irreducibility() {
    for (p, h, n) in DESK {
        let k = tower(p, h, n);
        let g = group_elements(&k);
        for m in 1..=3 {
            let polys = irreducible_polys(&k, m);
            for f in &polys {
                for a in &g {
                    let fa = act(&k, f, a);
                    assert_eq!(fa.degree(), Some(m));
                    assert!(fa.is_monic() && fa.is_irreducible(&k));
                    assert!(polys.binary_search(&fa).is_ok());
                    for b in g.iter().step_by(2) {
                        assert_eq!(
                            act(&k, &fa, b),
                            act(&k, f, &GroupElement::compose(&k, a, b))
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn orbit_examples() {
    let k = tower(3, 1, 2);
    let report = orbit_decomposition(&k, 2);
    assert_eq!(report.orbit_count(), 2);
    assert_eq!(report.total, 3);
    assert_eq!(formatted(&k, &report.orbits[0].members), ["x^2+1"]);
    assert_eq!(
        formatted(&k, &report.orbits[1].members),
        ["x^2+x+2", "x^2+2*x+2"]
    );
    assert_eq!(report.orbit_of(&central(&k, &[2, 2, 1])), Some(1));

    let k = tower(2, 1, 2);
    for m in 1..=6 {
        let report = orbit_decomposition(&k, m);
        assert!(report.orbits.iter().all(|o| o.size == 1));
        assert_eq!(report.orbit_count() as u64, moebius_count(2, m as u64));
    }
}

#[test]
fn orbit_report_invariants() {
    for (p, h, n) in DESK {
        let k = tower(p, h, n);
        for m in 1..=3 {
            let report = orbit_decomposition(&k, m);
            let sum: usize = report.orbits.iter().map(|o| o.size).sum();
            assert_eq!(sum, report.total);
            for o in &report.orbits {
                assert_eq!(o.size as u64 * o.stabilizer, report.group_order);
                assert_eq!(o.representative, o.members[0]);
                let pattern = zero_pattern(&o.representative);
                assert!(o.members.iter().all(|f| zero_pattern(f) == pattern));
            }
        }
    }
}

#[test]
fn fix_count_examples() {
    let k = tower(3, 1, 2);
    let one = GroupElement::new(&k, FieldElement::ONE, 0).unwrap();
    let two = GroupElement::new(&k, k.from_int(2), 0).unwrap();
    assert_eq!(fix_count_formula(&k, &one, 2).unwrap(), 3);
    assert_eq!(fix_count_formula(&k, &two, 2).unwrap(), 1);
}

#[test]
fn fix_count_formula_matches_brute_force() {
    for (p, h, n) in DESK {
        let k = tower(p, h, n);
        for m in 1..=4 {
            let polys = irreducible_polys(&k, m);
            for g in group_elements(&k) {
                let formula = fix_count_formula(&k, &g, m).unwrap();
                assert_eq!(
                    formula,
                    fix_count_brute(&k, &polys, &g),
                    "{p},{h},{n} m={m} {g:?}"
                );
                // depends on r only modulo h
                let reduced = GroupElement::new(&k, g.lambda(), g.r() % h).unwrap();
                assert_eq!(formula, fix_count_formula(&k, &reduced, m).unwrap());
            }
        }
    }
}

#[test]
fn m_formula_examples() {
    assert_eq!(m_formula(3, 2, 2).unwrap().value, 2);
    for m in 1..=6 {
        assert_eq!(m_formula(2, 2, m).unwrap().value, moebius_count(2, m));
    }
    let c = m_formula(3, 2, 2).unwrap();
    assert_eq!((c.irreducible, c.theta, c.reduced_value), (3, 3, 2));
    assert!(matches!(
        m_formula(6, 2, 2),
        Err(Error::InvalidParameters(_))
    ));
}

#[test]
fn three_way_orbit_count() {
    for (p, h, n) in DESK {
        let k = tower(p, h, n);
        for m in 1..=3 {
            let formula = m_formula(k.q(), n as u64, m as u64).unwrap();
            assert_eq!(formula.value, burnside_count(&k, m));
            assert_eq!(
                formula.value as usize,
                orbit_decomposition(&k, m).orbit_count()
            );
        }
    }
}

#[test]
fn isotopy_bound_examples() {
    let b = isotopy_class_bound(3, 2, 2).unwrap();
    assert_eq!(b.m_value, 2);
    assert_eq!(b.totient_bound, Ratio::from_integer(1));
    let b = isotopy_class_bound(2, 2, 3).unwrap();
    assert_eq!(b.totient_bound, Ratio::new(1, 1));
    for n in [3, 4] {
        for m in 1..=4 {
            let b = isotopy_class_bound(2, n, m).unwrap();
            assert_eq!(b.totient_bound, Ratio::from_integer(b.m_value));
        }
    }
    let b = isotopy_class_bound(4, 2, 2).unwrap();
    assert_eq!(b.totient_bound, Ratio::new(b.m_value, 2));
}

proptest! {
    #[test]
    fn formula_is_consistent_across_forms(qi in 0usize..6, n in 2u64..5, m in 1u64..6) {
        let q = [2u64, 3, 4, 5, 7, 8][qi];
        let c = m_formula(q, n, m).unwrap();
        prop_assert_eq!(c.value, c.reduced_value);
        prop_assert!(Ratio::from_integer(c.value) >= c.lower_bound);
        prop_assert!(Ratio::from_integer(c.value) <= c.upper_bound);
        prop_assert_eq!(c.theta + m * c.irreducible, q.pow(m as u32));
    }
}
