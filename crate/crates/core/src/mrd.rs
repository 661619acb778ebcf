//! Spread-set rank-metric codes of Petit algebras, the matrix representation
//! Ψ : R/Rh → M_k(B) over the right nucleus, companion-matrix similarity and
//! code-equivalence certificates.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldOps, PrimeField};
use crate::gf::{FieldElement, FieldTower};
use crate::linalg::{inverse, kernel, mat_mul, mat_vec, rank, Matrix};
use crate::orbits::{act, group_elements};
use crate::petit::{algebra_isomorphism_from_g, isotopy_from_witness, CheckMode, PetitAlgebra};
use crate::skewpoly::{SkewPoly, SkewRing};

/// The m×m matrix over K of R_a : z ↦ z ∘ a in the left-K-basis
/// 1, t, …, t^{m−1}; column i holds t^i ∘ a.
pub fn right_mult_matrix(algebra: &PetitAlgebra, a: &SkewPoly) -> Matrix<FieldElement> {
    let m = algebra.degree();
    let cols: Vec<Vec<FieldElement>> = (0..m)
        .map(|i| {
            let img = algebra.mul(&SkewPoly::monomial(FieldElement::ONE, i), a);
            (0..m).map(|j| img.coeff(j)).collect()
        })
        .collect();
    Matrix::from_columns(m, &cols)
}

/// A set of square matrices over K indexed by the elements of an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCode {
    pub size: usize,
    pub codewords: Vec<Matrix<FieldElement>>,
    pub ranks: Vec<usize>,
}

impl RankCode {
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Number of codewords of each rank, zero included.
    pub fn rank_distribution(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for &r in &self.ranks {
            *out.entry(r).or_insert(0) += 1;
        }
        out
    }

    /// Minimum rank over the nonzero codewords.
    pub fn min_rank(&self) -> Option<usize> {
        self.ranks.iter().copied().filter(|&r| r > 0).min()
    }

    /// Every nonzero codeword has full rank.
    pub fn is_mrd(&self) -> bool {
        let zero_words = self.ranks.iter().filter(|&&r| r == 0).count();
        zero_words == 1 && self.min_rank() == Some(self.size)
    }

    pub fn to_json(&self, tower: &FieldTower) -> Value {
        let codewords: Vec<Vec<String>> = self
            .codewords
            .iter()
            .map(|c| c.entries().iter().map(|&e| tower.format(e)).collect())
            .collect();
        json!({
            "field": field_json(tower),
            "k": self.size,
            "codewords": codewords,
        })
    }
}

pub fn field_json(tower: &FieldTower) -> Value {
    json!({
        "p": tower.p(),
        "h": tower.h(),
        "n": tower.n(),
        "sigma_exp": tower.sigma_exp(),
        "modulus": tower.modulus(),
    })
}

fn rank_code(tower: &FieldTower, size: usize, codewords: Vec<Matrix<FieldElement>>) -> RankCode {
    let ranks = codewords.par_iter().map(|c| rank(tower, c)).collect();
    RankCode {
        size,
        codewords,
        ranks,
    }
}

/// C = {R_a : a ∈ S_f}, ordered by the index of a.
pub fn spread_code(algebra: &PetitAlgebra) -> RankCode {
    let codewords: Vec<Matrix<FieldElement>> = (0..algebra.size())
        .into_par_iter()
        .map(|i| right_mult_matrix(algebra, &algebra.element(i)))
        .collect();
    rank_code(algebra.tower(), algebra.degree(), codewords)
}

/// The right nucleus B of a Petit division algebra, as a field whose
/// elements are polynomials of degree < m.
#[derive(Debug, Clone)]
pub struct NucleusField {
    algebra: PetitAlgebra,
    order: u64,
}

impl NucleusField {
    pub fn order(&self) -> u64 {
        self.order
    }

    fn pow(&self, a: &SkewPoly, mut e: u64) -> SkewPoly {
        let mut base = a.clone();
        let mut acc = SkewPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.algebra.mul(&acc, &base);
            }
            base = self.algebra.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl FieldOps for NucleusField {
    type Elem = SkewPoly;

    fn zero(&self) -> SkewPoly {
        SkewPoly::zero()
    }

    fn one(&self) -> SkewPoly {
        SkewPoly::one()
    }

    fn add(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        self.algebra.ring().add(a, b)
    }

    fn neg(&self, a: &SkewPoly) -> SkewPoly {
        self.algebra.ring().sub(&SkewPoly::zero(), a)
    }

    fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        self.algebra.mul(a, b)
    }

    fn inv(&self, a: &SkewPoly) -> Option<SkewPoly> {
        (!a.is_zero()).then(|| self.pow(a, self.order - 2))
    }
}

/// Ψ(a) = matrix of z ↦ a·z mod_r f on R/Rf in a fixed right B-basis.
#[derive(Debug, Clone)]
pub struct PsiContext {
    algebra: PetitAlgebra,
    h: SkewPoly,
    field: NucleusField,
    nucleus_basis: Vec<SkewPoly>,
    basis: Vec<SkewPoly>,
    solve: Matrix<u32>,
}

impl PsiContext {
    pub fn new(algebra: &PetitAlgebra) -> Result<Self> {
        if !algebra.is_division() {
            return Err(Error::Reducible);
        }
        let bound = algebra.bound().ok_or(Error::Reducible)?;
        let h = algebra.ring().inflate(bound);
        let p = algebra.tower().p();
        let fp = PrimeField::new(p);
        let nucleus_basis = algebra.right_nucleus().prime_basis;
        let dim = algebra.prime_dim();

        let span = |e: &SkewPoly| -> Vec<Vec<u32>> {
            nucleus_basis
                .iter()
                .map(|b| algebra.coords(&algebra.mul(e, b)))
                .collect()
        };
        let mut basis = Vec::new();
        let mut columns: Vec<Vec<u32>> = Vec::new();
        let candidates = std::iter::once(SkewPoly::one()).chain(algebra.prime_basis());
        for e in candidates {
            if columns.len() == dim {
                break;
            }
            let mut trial = columns.clone();
            trial.extend(span(&e));
            if rank(&fp, &Matrix::from_rows(trial.clone())) == trial.len() {
                columns = trial;
                basis.push(e);
            }
        }
        let solve = inverse(&fp, &Matrix::from_columns(dim, &columns))
            .ok_or_else(|| Error::VerificationFailed("no right B-basis found".into()))?;
        let order = (p as u64).pow(nucleus_basis.len() as u32);
        Ok(PsiContext {
            field: NucleusField {
                algebra: algebra.clone(),
                order,
            },
            algebra: algebra.clone(),
            h,
            nucleus_basis,
            basis,
            solve,
        })
    }

    pub fn algebra(&self) -> &PetitAlgebra {
        &self.algebra
    }

    /// h = ĥ(t^n).
    pub fn h(&self) -> &SkewPoly {
        &self.h
    }

    pub fn field(&self) -> &NucleusField {
        &self.field
    }

    /// The right B-basis e_1, …, e_k of R/Rf.
    pub fn basis(&self) -> &[SkewPoly] {
        &self.basis
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    /// F-dimension of B.
    pub fn nucleus_f_dimension(&self) -> usize {
        self.nucleus_basis.len() / self.algebra.tower().h() as usize
    }

    /// The unique b_i ∈ B with z = Σ e_i ∘ b_i.
    pub fn decompose(&self, z: &SkewPoly) -> Vec<SkewPoly> {
        let fp = PrimeField::new(self.algebra.tower().p());
        let c = mat_vec(&fp, &self.solve, &self.algebra.coords(z));
        let d = self.nucleus_basis.len();
        c.chunks(d)
            .map(|chunk| {
                let mut acc = vec![0u32; self.algebra.prime_dim()];
                for (&x, b) in chunk.iter().zip(&self.nucleus_basis) {
                    for (a, y) in acc.iter_mut().zip(self.algebra.coords(b)) {
                        *a = fp.add(a, &fp.mul(&x, &y));
                    }
                }
                self.algebra.from_coords(&acc)
            })
            .collect()
    }

    /// Ψ(a), a k×k matrix over B; `a` is reduced modulo h first.
    pub fn psi_matrix(&self, a: &SkewPoly) -> Matrix<SkewPoly> {
        let ring = self.algebra.ring();
        let a = ring.rem(a, &self.h).expect("h is nonzero");
        let cols: Vec<Vec<SkewPoly>> = self
            .basis
            .iter()
            .map(|e| {
                let img = ring
                    .rem(&ring.mul(&a, e), self.algebra.f())
                    .expect("f is nonzero");
                self.decompose(&img)
            })
            .collect();
        Matrix::from_columns(self.k(), &cols)
    }

    pub fn psi_rank(&self, a: &SkewPoly) -> usize {
        rank(&self.field, &self.psi_matrix(a))
    }

    /// k − deg(gcrd(a, h))/m, and 0 for a ≡ 0 mod h.
    pub fn rank_via_gcrd(&self, a: &SkewPoly) -> usize {
        let ring = self.algebra.ring();
        let a = ring.rem(a, &self.h).expect("h is nonzero");
        if a.is_zero() {
            return 0;
        }
        let g = ring.gcrd(&a, &self.h).expect("h is nonzero");
        self.k() - g.degree().expect("nonzero") / self.algebra.degree()
    }
}

/// Companion matrix with ones on the superdiagonal and last row
/// (−f_0, …, −f_{m−1}).
pub fn companion_matrix(tower: &FieldTower, f: &SkewPoly) -> Matrix<FieldElement> {
    let m = f.degree().unwrap_or(0);
    let mut a = Matrix::filled(m, m, FieldElement::ZERO);
    for i in 0..m.saturating_sub(1) {
        a.set(i, i + 1, FieldElement::ONE);
    }
    for j in 0..m {
        a.set(m - 1, j, tower.neg(f.coeff(j)));
    }
    a
}

fn twist_matrix(tower: &FieldTower, a: &Matrix<FieldElement>, r: u32) -> Matrix<FieldElement> {
    a.map(|&c| tower.tau(c, r))
}

/// An invertible B over K with A_f·B = B^σ·A_g, if one exists.
pub fn companion_similarity(
    tower: &FieldTower,
    f: &SkewPoly,
    g: &SkewPoly,
) -> Result<Option<Matrix<FieldElement>>> {
    let (df, dg) = (f.degree().unwrap_or(0), g.degree().unwrap_or(0));
    if df != dg {
        return Err(Error::UnequalDegrees(df, dg));
    }
    if !f.is_monic() || !g.is_monic() || df < 1 {
        return Err(Error::NotMonic { min_degree: 1 });
    }
    let m = df;
    let af = companion_matrix(tower, f);
    let ag = companion_matrix(tower, g);
    let residual = |b: &Matrix<FieldElement>| {
        let lhs = mat_mul(tower, &af, b);
        let rhs = mat_mul(tower, &b.map(|&c| tower.sigma(c)), &ag);
        crate::linalg::mat_add(tower, &lhs, &rhs.map(|&c| tower.neg(c)))
    };
    let identity = Matrix::identity(tower, m);
    if residual(&identity).entries().iter().all(|c| c.is_zero()) {
        return Ok(Some(identity));
    }

    let d = tower.degree() as usize;
    let to_matrix = |v: &[u32]| {
        let entries: Vec<FieldElement> = v.chunks(d).map(|c| tower.from_coords(c)).collect();
        Matrix::from_rows(entries.chunks(m).map(|r| r.to_vec()).collect())
    };
    let unknowns = m * m * d;
    let columns: Vec<Vec<u32>> = (0..unknowns)
        .map(|pos| {
            let mut v = vec![0u32; unknowns];
            v[pos] = 1;
            residual(&to_matrix(&v))
                .entries()
                .iter()
                .flat_map(|&c| tower.coords(c))
                .collect()
        })
        .collect();
    let fp = PrimeField::new(tower.p());
    let ker = kernel(&fp, &Matrix::from_columns(unknowns, &columns));
    let invertible = |v: &[u32]| {
        let b = to_matrix(v);
        inverse(tower, &b).is_some().then_some(b)
    };
    if let Some(b) = ker.iter().find_map(|v| invertible(v)) {
        return Ok(Some(b));
    }
    if ker.len() < 2 {
        return Ok(None);
    }
    let combine = |coeffs: &[u32]| -> Vec<u32> {
        let mut acc = vec![0u32; unknowns];
        for (&c, v) in coeffs.iter().zip(&ker) {
            for (a, &x) in acc.iter_mut().zip(v) {
                *a = fp.add(a, &fp.mul(&c, &x));
            }
        }
        acc
    };
    let p = tower.p() as u64;
    match p.checked_pow(ker.len() as u32) {
        Some(total) if total <= 1 << 16 => Ok((1..total).find_map(|mut idx| {
            let coeffs: Vec<u32> = (0..ker.len())
                .map(|_| {
                    let c = (idx % p) as u32;
                    idx /= p;
                    c
                })
                .collect();
            invertible(&combine(&coeffs))
        })),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            Ok((0..4096).find_map(|_| {
                let coeffs: Vec<u32> = (0..ker.len())
                    .map(|_| rng.gen_range(0..tower.p()))
                    .collect();
                invertible(&combine(&coeffs))
            }))
        }
    }
}

/// One step of a chain connecting two Petit algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathStep {
    /// P → P^{(α,τ_r)}.
    Transport { alpha: FieldElement, r: u32 },
    /// P → Q with Q·u ≡ 0 mod_r P.
    Similarity { target: SkewPoly, witness: SkewPoly },
}

/// A chain from f to g: a G-transport matching the bounds, followed by a
/// similarity witness. `None` if the bounds lie in different orbits.
pub fn find_path(tower: &FieldTower, f: &SkewPoly, g: &SkewPoly) -> Result<Option<Vec<PathStep>>> {
    let ring = SkewRing::new(tower);
    let (f, g) = (ring.monic(f), ring.monic(g));
    if f == g {
        return Ok(Some(Vec::new()));
    }
    let bf = ring.mclm(&f)?;
    let bg = ring.mclm(&g)?;
    let Some(elem) = group_elements(tower)
        .into_iter()
        .find(|e| act(tower, &bf, e) == bg)
    else {
        return Ok(None);
    };
    let mut path = Vec::new();
    let mut current = f;
    if elem.lambda() != FieldElement::ONE || elem.r() != 0 {
        let alpha = tower.norm_preimage(elem.lambda())?;
        current = ring.g_transport(&current, alpha, elem.r())?;
        if ring.mclm(&current)? != bg {
            return Err(Error::VerificationFailed(
                "transport does not move the bound".into(),
            ));
        }
        path.push(PathStep::Transport { alpha, r: elem.r() });
    }
    if current != g {
        let witness = ring
            .similar(&current, &g)?
            .ok_or(Error::VerificationFailed(
                "equal bounds without a similarity witness".into(),
            ))?;
        path.push(PathStep::Similarity { target: g, witness });
    }
    Ok(Some(path))
}

/// C(A_f) = X · C(A_g)^φ · Y with φ the entrywise map c ↦ c^{p^phi}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeCertificate {
    pub x: Matrix<FieldElement>,
    pub phi: u32,
    pub y: Matrix<FieldElement>,
    pub check: CheckMode,
    /// The checked codewords of C(A_g) map into C(A_f), and X, Y are
    /// invertible.
    pub verified: bool,
    /// Rank distributions of both codes agree; `None` when sampled.
    pub distributions_match: Option<bool>,
}

impl CodeCertificate {
    pub fn apply(&self, tower: &FieldTower, c: &Matrix<FieldElement>) -> Matrix<FieldElement> {
        let twisted = twist_matrix(tower, c, self.phi);
        mat_mul(tower, &mat_mul(tower, &self.x, &twisted), &self.y)
    }
}

/// Builds (X, φ, Y) along `path` from f to g and checks it on every
/// codeword.
pub fn equivalence_certificate(
    a_f: &PetitAlgebra,
    a_g: &PetitAlgebra,
    path: &[PathStep],
) -> Result<CodeCertificate> {
    equivalence_certificate_with(a_f, a_g, path, CheckMode::Exhaustive)
}

pub fn equivalence_certificate_with(
    a_f: &PetitAlgebra,
    a_g: &PetitAlgebra,
    path: &[PathStep],
    mode: CheckMode,
) -> Result<CodeCertificate> {
    let tower = a_f.tower();
    let m = a_f.degree();
    if a_g.degree() != m {
        return Err(Error::UnequalDegrees(m, a_g.degree()));
    }
    let hn = tower.degree();
    let mut x = Matrix::identity(tower, m);
    let mut y = Matrix::identity(tower, m);
    let mut phi = 0u32;
    let mut current = a_f.clone();
    for step in path {
        // C(current) = X'·C(next)^{φ'}·Y'
        let (x_step, phi_step, y_step, next) = match step {
            PathStep::Transport { alpha, r } => {
                let (map, next) = algebra_isomorphism_from_g(&current, *alpha, *r)
                    .map_err(|e| Error::InvalidPath(format!("transport step: {e}")))?;
                let back = (hn - r) % hn;
                let d = map.matrix();
                let d_inv = inverse(tower, d).ok_or(Error::ZeroInverse)?;
                (
                    twist_matrix(tower, &d_inv, back),
                    back,
                    twist_matrix(tower, d, back),
                    next,
                )
            }
            PathStep::Similarity { target, witness } => {
                let next = PetitAlgebra::new(a_f.tower_arc().clone(), target)?;
                let map = isotopy_from_witness(&current, &next, witness)
                    .map_err(|e| Error::InvalidPath(format!("similarity step: {e}")))?;
                (map.matrix().clone(), 0, Matrix::identity(tower, m), next)
            }
        };
        x = mat_mul(tower, &x, &twist_matrix(tower, &x_step, phi));
        y = mat_mul(tower, &twist_matrix(tower, &y_step, phi), &y);
        phi = (phi + phi_step) % hn;
        current = next;
    }
    if current.f() != a_g.f() {
        return Err(Error::InvalidPath("the path does not end at g".into()));
    }

    let mut cert = CodeCertificate {
        x,
        phi,
        y,
        check: mode,
        verified: false,
        distributions_match: None,
    };
    let invertible = inverse(tower, &cert.x).is_some() && inverse(tower, &cert.y).is_some();
    // a codeword R_a of C(A_f) is determined by its first column, which is a
    let lands_in_code = |z: &SkewPoly| {
        let image = cert.apply(tower, &right_mult_matrix(a_g, z));
        let a = SkewPoly::new(image.column(0));
        image == right_mult_matrix(a_f, &a)
    };
    cert.verified = invertible
        && match mode {
            CheckMode::Exhaustive => (0..a_g.size())
                .into_par_iter()
                .all(|i| lands_in_code(&a_g.element(i))),
            CheckMode::Sampled { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let picks: Vec<u64> = (0..samples).map(|_| rng.gen_range(0..a_g.size())).collect();
                picks.par_iter().all(|&i| lands_in_code(&a_g.element(i)))
            }
        };
    if mode == CheckMode::Exhaustive {
        cert.distributions_match =
            Some(spread_code(a_f).rank_distribution() == spread_code(a_g).rank_distribution());
    }
    Ok(cert)
}

#[cfg(test)]
mod tests;
