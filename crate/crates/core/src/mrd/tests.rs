use std::sync::Arc;

use super::*;
use crate::gf::make_tower;
use crate::linalg::mat_add;
use crate::orbits::{orbit_decomposition, GroupElement};
use crate::petit::LinearMap;

fn f4() -> Arc<FieldTower> {
    Arc::new(make_tower(2, 1, 2, 1, None).unwrap())
}

fn f9() -> Arc<FieldTower> {
    Arc::new(make_tower(3, 1, 2, 1, None).unwrap())
}

fn poly(k: &FieldTower, idx: &[u32]) -> SkewPoly {
    SkewPoly::new(idx.iter().map(|&i| k.element(i).unwrap()).collect())
}

fn el(k: &FieldTower, i: u32) -> FieldElement {
    k.element(i).unwrap()
}

const W: u32 = 2;
const W2: u32 = 3;

fn semifield16() -> PetitAlgebra {
    let k = f4();
    PetitAlgebra::new(k.clone(), &poly(&k, &[W, 0, 1])).unwrap()
}

fn irreducible_quadratics(k: &FieldTower) -> Vec<SkewPoly> {
    let ring = SkewRing::new(k);
    ring.monic_polys(2)
        .filter(|f| ring.is_irreducible(f))
        .collect()
}

#[test]
fn right_mult_examples() {
    let a = semifield16();
    let k = a.tower();
    assert_eq!(
        right_mult_matrix(&a, &SkewPoly::one()),
        Matrix::identity(k, 2)
    );
    let rt = right_mult_matrix(&a, &poly(k, &[0, 1]));
    assert_eq!(rt.column(0), vec![el(k, 0), el(k, 1)]);
    assert_eq!(rt.column(1), vec![el(k, W), el(k, 0)]);
    assert_eq!(
        right_mult_matrix(&a, &SkewPoly::zero()),
        Matrix::filled(2, 2, FieldElement::ZERO)
    );
}

#[test]
fn spread_code_of_order_16_semifield() {
    let a = semifield16();
    let code = spread_code(&a);
    assert_eq!(code.len(), 16);
    assert_eq!(code.rank_distribution(), BTreeMap::from([(0, 1), (2, 15)]));
    assert!(code.is_mrd());
    assert_eq!(code.min_rank(), Some(2));
    // additivity through the indexing
    let ring = a.ring();
    for x in a.elements() {
        for y in a.elements() {
            let sum = &code.codewords[a.index_of(&ring.add(&x, &y)) as usize];
            let expect = mat_add(
                a.tower(),
                &code.codewords[a.index_of(&x) as usize],
                &code.codewords[a.index_of(&y) as usize],
            );
            assert_eq!(*sum, expect);
        }
    }
}

#[test]
fn reducible_code_has_singular_codeword() {
    let k = f4();
    let a = PetitAlgebra::new(k.clone(), &poly(&k, &[1, 0, 1])).unwrap();
    let code = spread_code(&a);
    assert!(!code.is_mrd());
    assert_eq!(code.min_rank(), Some(1));
}

#[test]
fn mrd_iff_irreducible() {
    for k in [f4(), f9()] {
        let ring = SkewRing::new(&k);
        for f in ring.monic_polys(2) {
            let a = PetitAlgebra::new(k.clone(), &f).unwrap();
            let code = spread_code(&a);
            assert_eq!(code.len() as u64, a.size());
            assert_eq!(code.is_mrd(), ring.is_irreducible(&f), "{}", f.format(&k));
        }
    }
}

#[test]
fn code_json_export() {
    let a = semifield16();
    let v = spread_code(&a).to_json(a.tower());
    assert_eq!(v["k"], 2);
    assert_eq!(v["field"]["p"], 2);
    assert_eq!(v["field"]["modulus"], json!([1, 1, 1]));
    let words = v["codewords"].as_array().unwrap();
    assert_eq!(words.len(), 16);
    assert_eq!(words[1], json!(["1", "0", "0", "1"]));
}

#[test]
fn psi_examples() {
    let a = semifield16();
    let k = a.tower();
    let ctx = PsiContext::new(&a).unwrap();
    assert_eq!(ctx.k(), 2);
    assert_eq!(ctx.nucleus_f_dimension(), 2);
    assert_eq!(ctx.field().order(), 4);
    assert_eq!(*ctx.h(), poly(k, &[1, 0, 1, 0, 1]));
    assert_eq!(ctx.basis()[0], SkewPoly::one());
    assert_eq!(
        ctx.psi_matrix(&SkewPoly::one()),
        Matrix::identity(ctx.field(), 2)
    );
    assert_eq!(ctx.psi_rank(a.f()), 1);
    assert_eq!(ctx.psi_rank(&poly(k, &[0, 1])), 2);
    assert_eq!(ctx.rank_via_gcrd(&SkewPoly::one()), 2);
    assert_eq!(ctx.rank_via_gcrd(a.f()), 1);
    assert_eq!(ctx.rank_via_gcrd(ctx.h()), 0);
    assert_eq!(ctx.psi_rank(ctx.h()), 0);
    assert!(matches!(
        PsiContext::new(&PetitAlgebra::new(f4(), &poly(k, &[1, 0, 1])).unwrap()),
        Err(Error::Reducible)
    ));
}

#[test]
fn decomposition_round_trip() {
    let a = semifield16();
    let ctx = PsiContext::new(&a).unwrap();
    let ring = a.ring();
    for z in a.elements() {
        let parts = ctx.decompose(&z);
        let back = parts
            .iter()
            .zip(ctx.basis())
            .fold(SkewPoly::zero(), |acc, (b, e)| ring.add(&acc, &a.mul(e, b)));
        assert_eq!(back, z);
    }
}

/// All residues mod h, indexed like the elements of R/Rh.
fn residues(ctx: &PsiContext) -> Vec<SkewPoly> {
    let ring = ctx.algebra().ring();
    let d = ctx.h().degree().unwrap();
    let total = (ctx.algebra().tower().order() as u64).pow(d as u32);
    (0..total).map(|i| ring.residue(d, i)).collect()
}

#[test]
fn psi_is_multiplicative_q2() {
    let a = semifield16();
    let ctx = PsiContext::new(&a).unwrap();
    let ring = a.ring();
    let all = residues(&ctx);
    let psi: Vec<_> = all.par_iter().map(|x| ctx.psi_matrix(x)).collect();
    let field = ctx.field();
    (0..all.len()).into_par_iter().for_each(|i| {
        for j in 0..all.len() {
            let prod = ring.rem(&ring.mul(&all[i], &all[j]), ctx.h()).unwrap();
            let idx = ring.residue_index(&prod) as usize;
            assert_eq!(psi[idx], mat_mul(field, &psi[i], &psi[j]));
            let sum = ring.residue_index(&ring.add(&all[i], &all[j])) as usize;
            assert_eq!(psi[sum], mat_add(field, &psi[i], &psi[j]));
        }
    });
}

#[test]
fn psi_is_linear_and_multiplicative_q3() {
    let k = f9();
    let f = irreducible_quadratics(&k).remove(0);
    let a = PetitAlgebra::new(k.clone(), &f).unwrap();
    let ctx = PsiContext::new(&a).unwrap();
    let ring = a.ring();
    let field = ctx.field();
    let d = ctx.h().degree().unwrap();
    let basis = ring.prime_basis(d);
    let basis_psi: Vec<_> = basis.iter().map(|b| ctx.psi_matrix(b)).collect();
    // Ψ on every residue is the F_p-combination of Ψ on the basis
    residues(&ctx).par_iter().for_each(|x| {
        let coords = ring.prime_coords(x, d);
        let mut expect = Matrix::filled(ctx.k(), ctx.k(), SkewPoly::zero());
        for (&c, m) in coords.iter().zip(&basis_psi) {
            for _ in 0..c {
                expect = mat_add(field, &expect, m);
            }
        }
        assert_eq!(ctx.psi_matrix(x), expect);
    });
    // and multiplicativity on basis pairs extends bilinearly
    for (x, px) in basis.iter().zip(&basis_psi) {
        for (y, py) in basis.iter().zip(&basis_psi) {
            let prod = ring.rem(&ring.mul(x, y), ctx.h()).unwrap();
            assert_eq!(ctx.psi_matrix(&prod), mat_mul(field, px, py));
        }
    }
}

#[test]
fn rank_formula_all_residues() {
    let a = semifield16();
    let ctx = PsiContext::new(&a).unwrap();
    let all = residues(&ctx);
    assert_eq!(all.len(), 256);
    for x in all.iter().skip(1) {
        assert_eq!(
            ctx.psi_rank(x),
            ctx.rank_via_gcrd(x),
            "{}",
            x.format(a.tower())
        );
    }
}

#[test]
fn companion_examples() {
    let k = f4();
    let f = poly(&k, &[W, 0, 1]);
    let g = poly(&k, &[W2, 0, 1]);
    assert_eq!(
        companion_similarity(&k, &f, &f).unwrap(),
        Some(Matrix::identity(&*k, 2))
    );
    let b = companion_similarity(&k, &f, &g).unwrap().unwrap();
    let lhs = mat_mul(&*k, &companion_matrix(&k, &f), &b);
    let rhs = mat_mul(&*k, &b.map(|&c| k.sigma(c)), &companion_matrix(&k, &g));
    assert_eq!(lhs, rhs);
    assert!(inverse(&*k, &b).is_some());

    let k3 = f9();
    let ring = SkewRing::new(&k3);
    let polys = irreducible_quadratics(&k3);
    let f = &polys[0];
    let g = polys
        .iter()
        .find(|g| ring.mclm(g).unwrap() != ring.mclm(f).unwrap())
        .unwrap();
    assert_eq!(ring.similar(f, g).unwrap(), None);
    assert_eq!(companion_similarity(&k3, f, g).unwrap(), None);
}

#[test]
fn companion_agrees_with_similar_over_f4() {
    let k = f4();
    let ring = SkewRing::new(&k);
    let polys = irreducible_quadratics(&k);
    for f in &polys {
        for g in &polys {
            let by_matrix = companion_similarity(&k, f, g).unwrap().is_some();
            assert_eq!(by_matrix, ring.similar(f, g).unwrap().is_some());
        }
    }
}

#[test]
fn certificate_examples() {
    let a = semifield16();
    let k = a.tower();
    let trivial = equivalence_certificate(&a, &a, &[]).unwrap();
    assert_eq!(
        (trivial.x.clone(), trivial.phi, trivial.y.clone()),
        (Matrix::identity(k, 2), 0, Matrix::identity(k, 2))
    );
    assert!(trivial.verified && trivial.distributions_match == Some(true));

    let g = PetitAlgebra::new(a.tower_arc().clone(), &poly(k, &[W2, 0, 1])).unwrap();
    let u = a.ring().similar(a.f(), g.f()).unwrap().unwrap();
    let path = [PathStep::Similarity {
        target: g.f().clone(),
        witness: u.clone(),
    }];
    let cert = equivalence_certificate(&a, &g, &path).unwrap();
    let h: LinearMap = isotopy_from_witness(&a, &g, &u).unwrap();
    assert_eq!(cert.x, *h.matrix());
    assert_eq!((cert.phi, cert.y.clone()), (0, Matrix::identity(k, 2)));
    assert!(cert.verified && cert.distributions_match == Some(true));

    let sampled = equivalence_certificate_with(
        &a,
        &g,
        &path,
        CheckMode::Sampled {
            samples: 8,
            seed: 1,
        },
    )
    .unwrap();
    assert!(sampled.verified && sampled.distributions_match.is_none());
    assert_eq!(sampled.x, cert.x);

    // a wrong Y is caught
    let mut broken = cert.clone();
    broken.y = cert.x.clone();
    let code_g = spread_code(&g);
    let code_f = spread_code(&a);
    assert!(code_g
        .codewords
        .iter()
        .any(|c| !code_f.codewords.contains(&broken.apply(k, c))));

    assert!(matches!(
        equivalence_certificate(&a, &g, &[]),
        Err(Error::InvalidPath(_))
    ));
    let bad = [PathStep::Similarity {
        target: g.f().clone(),
        witness: poly(k, &[W]),
    }];
    assert!(matches!(
        equivalence_certificate(&a, &g, &bad),
        Err(Error::InvalidPath(_))
    ));
}

#[test]
fn transport_certificate_over_f9() {
    let k = f9();
    let ring = SkewRing::new(&k);
    let polys = irreducible_quadratics(&k);
    let report = orbit_decomposition(&k, 2);
    let big = report.orbits.iter().find(|o| o.size > 1).unwrap();
    let f = polys
        .iter()
        .find(|f| ring.mclm(f).unwrap() == big.members[0])
        .unwrap();
    let g = polys
        .iter()
        .find(|g| ring.mclm(g).unwrap() == big.members[1])
        .unwrap();
    let path = find_path(&k, f, g).unwrap().unwrap();
    assert!(matches!(path[0], PathStep::Transport { .. }));
    let af = PetitAlgebra::new(k.clone(), f).unwrap();
    let ag = PetitAlgebra::new(k.clone(), g).unwrap();
    let cert = equivalence_certificate(&af, &ag, &path).unwrap();
    assert!(cert.verified && cert.distributions_match == Some(true));
    assert!(find_path(
        &k,
        f,
        polys
            .iter()
            .find(|h| report.orbit_of(&ring.mclm(h).unwrap()) != report.orbit_of(&big.members[0]))
            .unwrap()
    )
    .unwrap()
    .is_none());
}

#[test]
fn transport_moves_bounds_by_the_action() {
    for k in [f4(), f9()] {
        let ring = SkewRing::new(&k);
        for f in irreducible_quadratics(&k) {
            let bound = ring.mclm(&f).unwrap();
            for alpha in k.nonzero_elements() {
                for r in 0..k.degree() {
                    let moved = ring.mclm(&ring.g_transport(&f, alpha, r).unwrap()).unwrap();
                    let g = GroupElement::new(&k, k.norm(alpha), r).unwrap();
                    assert_eq!(moved, act(&k, &bound, &g));
                }
            }
        }
    }
}
