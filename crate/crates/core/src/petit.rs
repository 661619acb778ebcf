//! Petit algebras S_f = R/Rf with multiplication z ∘ w = zw mod_r f.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::gf::{FieldElement, FieldTower};
use crate::linalg::{inverse, kernel, mat_vec, Matrix};
use crate::skewpoly::{CentralPoly, SkewPoly, SkewRing};

/// How a global identity is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Every element (or pair of elements).
    Exhaustive,
    /// A fixed number of pseudo-random pairs from a seeded generator.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct PetitAlgebra {
    tower: Arc<FieldTower>,
    f: SkewPoly,
    bound: Option<CentralPoly>,
    k: Option<usize>,
    is_division: bool,
    is_right_invariant: bool,
}

impl PetitAlgebra {
    /// Builds S_f for the monic normalization of `f`; requires deg f ≥ 2.
    pub fn new(tower: Arc<FieldTower>, f: &SkewPoly) -> Result<Self> {
        let ring = SkewRing::new(&tower);
        let f = ring.monic(f);
        if f.degree().is_none_or(|d| d < 2) {
            return Err(Error::NotMonic { min_degree: 2 });
        }
        let bound = if f.coeff(0).is_zero() {
            None
        } else {
            Some(ring.mclm(&f)?)
        };
        let is_division = ring.is_irreducible(&f);
        let m = f.degree().expect("nonzero");
        // all irreducible factors of the bound are similar to f, hence of degree m
        let k = match (&bound, is_division) {
            (Some(b), true) => Some(ring.inflate(b).degree().expect("nonzero") / m),
            _ => None,
        };
        let is_right_invariant = ring.right_invariant(&f);
        Ok(PetitAlgebra {
            tower,
            f,
            bound,
            k,
            is_division,
            is_right_invariant,
        })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn tower_arc(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn ring(&self) -> SkewRing<'_> {
        SkewRing::new(&self.tower)
    }

    pub fn f(&self) -> &SkewPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().expect("nonzero")
    }

    /// ĥ with mclm(f) = ĥ(t^n); `None` when the constant term of f is zero.
    pub fn bound(&self) -> Option<&CentralPoly> {
        self.bound.as_ref()
    }

    /// Number of irreducible factors of the bound (division algebras only).
    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn is_division(&self) -> bool {
        self.is_division
    }

    pub fn is_right_invariant(&self) -> bool {
        self.is_right_invariant
    }

    pub fn is_associative(&self) -> bool {
        self.is_right_invariant
    }

    /// |S_f| = q^{nm}.
    pub fn size(&self) -> u64 {
        (self.tower.order() as u64).pow(self.degree() as u32)
    }

    /// dim over F_p, h n m.
    pub fn prime_dim(&self) -> usize {
        self.degree() * self.tower.degree() as usize
    }

    pub fn element(&self, index: u64) -> SkewPoly {
        self.ring().residue(self.degree(), index)
    }

    pub fn index_of(&self, z: &SkewPoly) -> u64 {
        self.ring().residue_index(z)
    }

    pub fn elements(&self) -> impl Iterator<Item = SkewPoly> + '_ {
        (0..self.size()).map(|i| self.element(i))
    }

    pub fn prime_basis(&self) -> Vec<SkewPoly> {
        self.ring().prime_basis(self.degree())
    }

    pub fn coords(&self, z: &SkewPoly) -> Vec<u32> {
        self.ring().prime_coords(z, self.degree())
    }

    pub fn from_coords(&self, v: &[u32]) -> SkewPoly {
        self.ring().from_prime_coords(v)
    }

    /// z ∘ w = zw mod_r f.
    pub fn mul(&self, z: &SkewPoly, w: &SkewPoly) -> SkewPoly {
        let ring = self.ring();
        ring.rem(&ring.mul(z, w), &self.f).expect("f is nonzero")
    }

    /// (a∘b)∘c − a∘(b∘c).
    pub fn associator(&self, a: &SkewPoly, b: &SkewPoly, c: &SkewPoly) -> SkewPoly {
        let lhs = self.mul(&self.mul(a, b), c);
        let rhs = self.mul(a, &self.mul(b, c));
        self.ring().sub(&lhs, &rhs)
    }

    /// Right nucleus as the eigenspace {g : deg g < m, fg ∈ Rf}.
    pub fn right_nucleus(&self) -> Nucleus {
        let ring = self.ring();
        let m = self.degree();
        let columns: Vec<Vec<u32>> = self
            .prime_basis()
            .iter()
            .map(|g| self.coords(&ring.rem(&ring.mul(&self.f, g), &self.f).expect("nonzero")))
            .collect();
        let a = Matrix::from_columns(self.prime_dim(), &columns);
        let prime_basis: Vec<SkewPoly> = kernel(&PrimeField::new(self.tower.p()), &a)
            .iter()
            .map(|v| self.from_coords(v))
            .collect();
        let basis = self.f_basis(&prime_basis);
        debug_assert!(m > 0);
        Nucleus {
            f_dimension: basis.len(),
            basis,
            prime_basis,
            whole_algebra: self.is_right_invariant,
        }
    }

    /// Greedy F-basis of an F-subspace given by an F_p-basis.
    fn f_basis(&self, prime_basis: &[SkewPoly]) -> Vec<SkewPoly> {
        let fp = PrimeField::new(self.tower.p());
        let ring = self.ring();
        let mut chosen = Vec::new();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for v in prime_basis {
            let scaled: Vec<Vec<u32>> = self
                .tower
                .fixed_field_basis()
                .iter()
                .map(|&b| self.coords(&ring.scale_left(b, v)))
                .collect();
            let mut trial = rows.clone();
            trial.extend(scaled.iter().cloned());
            if crate::linalg::rank(&fp, &Matrix::from_rows(trial.clone())) == trial.len() {
                rows = trial;
                chosen.push(v.clone());
            }
        }
        chosen
    }

    /// F_p-basis of the kernel of a ↦ (cond(a, b_i, b_j))_{i,j} over the
    /// F_p-basis; exact because every condition used is F_p-linear in each
    /// argument.
    fn trilinear_kernel(
        &self,
        cond: impl Fn(&SkewPoly, &SkewPoly, &SkewPoly) -> Vec<u32> + Sync,
    ) -> Vec<SkewPoly> {
        let basis = self.prime_basis();
        let columns: Vec<Vec<u32>> = basis
            .par_iter()
            .map(|a| {
                basis
                    .iter()
                    .flat_map(|x| basis.iter().map(move |y| (x, y)))
                    .flat_map(|(x, y)| cond(a, x, y))
                    .collect()
            })
            .collect();
        let rows = columns.first().map_or(0, Vec::len);
        let a = Matrix::from_columns(rows, &columns);
        kernel(&PrimeField::new(self.tower.p()), &a)
            .iter()
            .map(|v| self.from_coords(v))
            .collect()
    }

    /// {a : (a, x, y) = 0 for all x, y}, as an F_p-basis.
    pub fn left_nucleus(&self) -> Vec<SkewPoly> {
        self.trilinear_kernel(|a, x, y| self.coords(&self.associator(a, x, y)))
    }

    /// {a : (x, a, y) = 0 for all x, y}, as an F_p-basis.
    pub fn middle_nucleus(&self) -> Vec<SkewPoly> {
        self.trilinear_kernel(|a, x, y| self.coords(&self.associator(x, a, y)))
    }

    /// {a : (x, y, a) = 0 for all x, y}, as an F_p-basis.
    pub fn right_nucleus_by_associator(&self) -> Vec<SkewPoly> {
        self.trilinear_kernel(|a, x, y| self.coords(&self.associator(x, y, a)))
    }

    /// Center: elements of all three nuclei that commute with everything,
    /// as an F_p-basis.
    pub fn center(&self) -> Vec<SkewPoly> {
        let ring = self.ring();
        self.trilinear_kernel(|a, x, y| {
            let mut out = self.coords(&self.associator(a, x, y));
            out.extend(self.coords(&self.associator(x, a, y)));
            out.extend(self.coords(&self.associator(x, y, a)));
            out.extend(self.coords(&ring.sub(&self.mul(a, x), &self.mul(x, a))));
            out
        })
    }

    /// Elements `a` (scanning all of S_f) with (a, b_i, b_j) = 0 on every
    /// pair of F_p-basis elements.
    pub fn scan_nucleus(&self, slot: NucleusSlot) -> Vec<SkewPoly> {
        let basis = self.prime_basis();
        (0..self.size())
            .into_par_iter()
            .map(|i| self.element(i))
            .filter(|a| {
                basis.iter().all(|x| {
                    basis.iter().all(|y| {
                        let assoc = match slot {
                            NucleusSlot::Left => self.associator(a, x, y),
                            NucleusSlot::Middle => self.associator(x, a, y),
                            NucleusSlot::Right => self.associator(x, y, a),
                        };
                        assoc.is_zero()
                    })
                })
            })
            .collect()
    }

    /// Matrix over F_p (acting on coordinate columns) of z ↦ z ∘ a.
    pub fn right_mult_prime_matrix(&self, a: &SkewPoly) -> Matrix<u32> {
        let cols: Vec<Vec<u32>> = self
            .prime_basis()
            .iter()
            .map(|z| self.coords(&self.mul(z, a)))
            .collect();
        Matrix::from_columns(self.prime_dim(), &cols)
    }

    /// Matrix over F_p of z ↦ a ∘ z.
    pub fn left_mult_prime_matrix(&self, a: &SkewPoly) -> Matrix<u32> {
        let cols: Vec<Vec<u32>> = self
            .prime_basis()
            .iter()
            .map(|z| self.coords(&self.mul(a, z)))
            .collect();
        Matrix::from_columns(self.prime_dim(), &cols)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NucleusSlot {
    Left,
    Middle,
    Right,
}

/// The right nucleus of a Petit algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nucleus {
    /// F-basis.
    pub basis: Vec<SkewPoly>,
    /// F_p-basis.
    pub prime_basis: Vec<SkewPoly>,
    pub f_dimension: usize,
    /// Set when f is right invariant, so the nucleus is all of S_f.
    pub whole_algebra: bool,
}

/// A τ-semilinear map between Petit algebras of equal degree m, acting on
/// coefficient vectors as z ↦ M·τ(z) with M an m×m matrix over K.
/// `twist = 0` means the map is left-K-linear.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    matrix: Matrix<FieldElement>,
    twist: u32,
}

impl LinearMap {
    pub fn new(matrix: Matrix<FieldElement>, twist: u32) -> Self {
        assert_eq!(matrix.rows(), matrix.cols());
        LinearMap { matrix, twist }
    }

    pub fn identity(tower: &FieldTower, m: usize) -> Self {
        LinearMap::new(Matrix::identity(tower, m), 0)
    }

    pub fn matrix(&self) -> &Matrix<FieldElement> {
        &self.matrix
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn is_left_k_linear(&self) -> bool {
        self.twist == 0
    }

    pub fn apply(&self, tower: &FieldTower, z: &SkewPoly) -> SkewPoly {
        let m = self.matrix.rows();
        let v: Vec<FieldElement> = (0..m).map(|i| tower.tau(z.coeff(i), self.twist)).collect();
        SkewPoly::new(mat_vec(tower, &self.matrix, &v))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, tower: &FieldTower, inner: &LinearMap) -> LinearMap {
        let twisted = inner.matrix.map(|&c| tower.tau(c, self.twist));
        LinearMap::new(
            crate::linalg::mat_mul(tower, &self.matrix, &twisted),
            (self.twist + inner.twist) % tower.degree(),
        )
    }

    pub fn is_invertible(&self, tower: &FieldTower) -> bool {
        inverse(tower, &self.matrix).is_some()
    }

    /// The same map as an F_p-matrix on coordinate columns.
    pub fn prime_matrix(&self, tower: &FieldTower) -> Matrix<u32> {
        let ring = SkewRing::new(tower);
        let m = self.matrix.rows();
        let cols: Vec<Vec<u32>> = ring
            .prime_basis(m)
            .iter()
            .map(|z| ring.prime_coords(&self.apply(tower, z), m))
            .collect();
        Matrix::from_columns(m * tower.degree() as usize, &cols)
    }
}

/// Elements and their images, tabulated up front for exhaustive checks.
struct Table<'a, F> {
    algebra: &'a PetitAlgebra,
    image: F,
    rows: Option<Vec<(SkewPoly, SkewPoly)>>,
}

impl<'a, F: Fn(&SkewPoly) -> SkewPoly + Sync> Table<'a, F> {
    fn new(algebra: &'a PetitAlgebra, mode: CheckMode, image: F) -> Self {
        let rows = matches!(mode, CheckMode::Exhaustive).then(|| {
            algebra
                .elements()
                .map(|z| {
                    let iz = image(&z);
                    (z, iz)
                })
                .collect()
        });
        Table {
            algebra,
            image,
            rows,
        }
    }

    fn get(&self, index: u64) -> (SkewPoly, SkewPoly) {
        match &self.rows {
            Some(rows) => rows[index as usize].clone(),
            None => {
                let z = self.algebra.element(index);
                let iz = (self.image)(&z);
                (z, iz)
            }
        }
    }
}

/// Runs `pred` over index pairs selected by `mode`, in parallel.
fn all_pairs(size: u64, mode: CheckMode, pred: impl Fn(u64, u64) -> bool + Sync) -> bool {
    match mode {
        CheckMode::Exhaustive => (0..size * size)
            .into_par_iter()
            .all(|idx| pred(idx / size, idx % size)),
        CheckMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pairs: Vec<(u64, u64)> = (0..samples)
                .map(|_| (rng.gen_range(0..size), rng.gen_range(0..size)))
                .collect();
            pairs.par_iter().all(|&(i, j)| pred(i, j))
        }
    }
}

/// H(w ∘_g z) = w ∘_f H(z) for the checked pairs (w, z) of S_g.
pub fn verify_isotopy(
    a_f: &PetitAlgebra,
    a_g: &PetitAlgebra,
    h: &LinearMap,
    mode: CheckMode,
) -> bool {
    let tower = a_f.tower();
    let table = Table::new(a_g, mode, |z| h.apply(tower, z));
    all_pairs(a_g.size(), mode, |wi, zi| {
        let (w, _) = table.get(wi);
        let (z, hz) = table.get(zi);
        h.apply(tower, &a_g.mul(&w, &z)) == a_f.mul(&w, &hz)
    })
}

/// G(z ∘ w) = G(z) ∘' G(w) for the checked pairs.
pub fn verify_multiplicative(
    source: &PetitAlgebra,
    target: &PetitAlgebra,
    g: &LinearMap,
    mode: CheckMode,
) -> bool {
    let tower = source.tower();
    let table = Table::new(source, mode, |z| g.apply(tower, z));
    all_pairs(source.size(), mode, |zi, wi| {
        let (z, gz) = table.get(zi);
        let (w, gw) = table.get(wi);
        let lhs = g.apply(tower, &source.mul(&z, &w));
        lhs == target.mul(&gz, &gw)
    })
}

/// H(w) = w ∘_f u, an isotopy S_g → S_f whenever g·u ≡ 0 mod_r f.
pub fn isotopy_from_witness(
    a_f: &PetitAlgebra,
    a_g: &PetitAlgebra,
    u: &SkewPoly,
) -> Result<LinearMap> {
    let m = a_f.degree();
    if a_g.degree() != m {
        return Err(Error::UnequalDegrees(m, a_g.degree()));
    }
    if !a_f.is_division() || !a_g.is_division() {
        return Err(Error::Reducible);
    }
    let ring = a_f.ring();
    let valid =
        !u.is_zero() && u.degree() < Some(m) && ring.rem(&ring.mul(a_g.f(), u), a_f.f())?.is_zero();
    if !valid {
        return Err(Error::InvalidWitness);
    }
    let cols: Vec<Vec<FieldElement>> = (0..m)
        .map(|i| {
            let img = a_f.mul(&SkewPoly::monomial(FieldElement::ONE, i), u);
            (0..m).map(|j| img.coeff(j)).collect()
        })
        .collect();
    Ok(LinearMap::new(Matrix::from_columns(m, &cols), 0))
}

/// The τ-semilinear isomorphism S_f → S_{f'} induced by t ↦ αt, with
/// f' = f^{(α,τ)}. Returns the map and the target algebra.
pub fn algebra_isomorphism_from_g(
    a_f: &PetitAlgebra,
    alpha: FieldElement,
    r: u32,
) -> Result<(LinearMap, PetitAlgebra)> {
    let tower = a_f.tower();
    let target_f = a_f.ring().g_transport(a_f.f(), alpha, r)?;
    let target = PetitAlgebra::new(a_f.tower_arc().clone(), &target_f)?;
    let m = a_f.degree();
    // (αt)^i = N^σ_i(α) t^i, so the map is diagonal after τ
    let mut d = Matrix::filled(m, m, FieldElement::ZERO);
    for i in 0..m {
        d.set(i, i, tower.partial_sigma_norm(alpha, i));
    }
    Ok((LinearMap::new(d, r), target))
}

#[derive(Debug, Clone)]
pub struct SandlerCertificate {
    pub alpha: FieldElement,
    pub r: u32,
    pub map: LinearMap,
    pub target: PetitAlgebra,
    pub check: CheckMode,
    pub verified: bool,
}

/// Searches (α, r) with d = τ_r(c)·N^σ_m(α)^{-1}, so that the transport of
/// t^m − c is t^m − d, and verifies the induced isomorphism.
pub fn sandler_isomorphic(
    tower: &Arc<FieldTower>,
    c: FieldElement,
    d: FieldElement,
    m: usize,
) -> Result<Option<SandlerCertificate>> {
    let k: &FieldTower = tower;
    let n = k.n() as usize;
    if m < 2 || n < m {
        return Err(Error::SandlerHypothesis(format!(
            "need 2 <= m <= n, got m = {m}, n = {n}"
        )));
    }
    let ring = SkewRing::new(k);
    let sandler = |a: FieldElement| {
        let mut coeffs = vec![FieldElement::ZERO; m + 1];
        coeffs[0] = k.neg(a);
        coeffs[m] = FieldElement::ONE;
        SkewPoly::new(coeffs)
    };
    let (f, g) = (sandler(c), sandler(d));
    if !ring.is_irreducible(&f) || !ring.is_irreducible(&g) {
        return Err(Error::SandlerHypothesis(
            "t^m - c and t^m - d must be irreducible".into(),
        ));
    }
    if n > m && k.in_fixed_field(c) {
        return Err(Error::SandlerHypothesis(
            "n > m requires c outside F".into(),
        ));
    }
    if n == m && k.in_proper_subfield(c) {
        return Err(Error::SandlerHypothesis(
            "n = m requires c in no proper subfield of K".into(),
        ));
    }
    let found = (0..k.degree()).find_map(|r| {
        let tc = k.tau(c, r);
        k.nonzero_elements()
            .find(|&alpha| {
                let nm = k.partial_sigma_norm(alpha, m);
                k.div(tc, nm).is_ok_and(|x| x == d)
            })
            .map(|alpha| (alpha, r))
    });
    let Some((alpha, r)) = found else {
        return Ok(None);
    };
    let source = PetitAlgebra::new(tower.clone(), &f)?;
    let (map, target) = algebra_isomorphism_from_g(&source, alpha, r)?;
    debug_assert_eq!(target.f(), &g);
    let check = if source.size() <= 4096 {
        CheckMode::Exhaustive
    } else {
        CheckMode::Sampled {
            samples: 20_000,
            seed: 0x5a4d,
        }
    };
    let verified = verify_multiplicative(&source, &target, &map, check);
    Ok(Some(SandlerCertificate {
        alpha,
        r,
        map,
        target,
        check,
        verified,
    }))
}
