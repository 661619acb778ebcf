//! The twisted polynomial ring R = K[t;σ] with ta = σ(a)t.

mod central;

pub use central::CentralPoly;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::gf::{FieldElement, FieldTower};
use crate::linalg::{kernel, solve, Matrix};

/// An element of K[t;σ], coefficient of t^i at index i, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SkewPoly {
    coeffs: Vec<FieldElement>,
}

impl SkewPoly {
    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        SkewPoly::constant(FieldElement::ONE)
    }

    pub fn constant(c: FieldElement) -> Self {
        SkewPoly::new(vec![c])
    }

    /// c·t^i
    pub fn monomial(c: FieldElement, i: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; i + 1];
        coeffs[i] = c;
        SkewPoly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    /// `None` plays the role of deg(0) = −∞ and orders below every degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FieldElement::ONE)
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    /// Text form over `t`, e.g. `t^2+(w+1)*t+w`.
    pub fn format(&self, tower: &FieldTower) -> String {
        format_terms(tower, &self.coeffs, "t")
    }
}

pub(crate) fn format_terms(tower: &FieldTower, coeffs: &[FieldElement], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let coef = tower.format(c);
        terms.push(if i == 0 {
            coef
        } else if c == FieldElement::ONE {
            mono
        } else if tower.is_compound(c) {
            format!("({coef})*{mono}")
        } else {
            format!("{coef}*{mono}")
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Result of splitting ĥ(t^n) into irreducible right factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorCount {
    /// Number of irreducible factors of ĥ(t^n) in R.
    pub k: usize,
    /// Their common degree.
    pub m: usize,
    /// The first monic irreducible right factor in enumeration order.
    pub factor: SkewPoly,
}

/// Arithmetic in K[t;σ] over a fixed tower.
#[derive(Clone, Copy)]
pub struct SkewRing<'a> {
    tower: &'a FieldTower,
}

impl<'a> SkewRing<'a> {
    pub fn new(tower: &'a FieldTower) -> Self {
        SkewRing { tower }
    }

    pub fn tower(&self) -> &'a FieldTower {
        self.tower
    }

    pub fn add(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let k = self.tower;
        let n = f.coeffs.len().max(g.coeffs.len());
        SkewPoly::new((0..n).map(|i| k.add(f.coeff(i), g.coeff(i))).collect())
    }

    pub fn sub(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let k = self.tower;
        let n = f.coeffs.len().max(g.coeffs.len());
        SkewPoly::new((0..n).map(|i| k.sub(f.coeff(i), g.coeff(i))).collect())
    }

    /// c·f (left scalar multiplication).
    pub fn scale_left(&self, c: FieldElement, f: &SkewPoly) -> SkewPoly {
        SkewPoly::new(f.coeffs.iter().map(|&a| self.tower.mul(c, a)).collect())
    }

    /// Left multiplication by the unit making `f` monic.
    pub fn monic(&self, f: &SkewPoly) -> SkewPoly {
        match f.leading() {
            None => SkewPoly::zero(),
            Some(lc) => self.scale_left(self.tower.inv(lc).expect("nonzero"), f),
        }
    }

    /// a t^i · b t^j = a σ^i(b) t^{i+j}.
    pub fn mul(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        if f.is_zero() || g.is_zero() {
            return SkewPoly::zero();
        }
        let k = self.tower;
        let mut out = vec![FieldElement::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
        for (i, &a) in f.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                let term = k.mul(a, k.sigma_power(b, i as i64));
                out[i + j] = k.add(out[i + j], term);
            }
        }
        SkewPoly::new(out)
    }

    /// t^n·f, which is f shifted by n since σ^n = id.
    fn shift(&self, f: &SkewPoly, by: usize) -> SkewPoly {
        if f.is_zero() {
            return SkewPoly::zero();
        }
        let mut coeffs = vec![FieldElement::ZERO; by];
        coeffs.extend_from_slice(&f.coeffs);
        SkewPoly::new(coeffs)
    }

    /// Unique `(q, r)` with `g = q·f + r` and deg r < deg f.
    pub fn right_divmod(&self, g: &SkewPoly, f: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        let df = f.degree().ok_or(Error::ZeroDivisor)?;
        let k = self.tower;
        let lf = f.leading().expect("nonzero");
        let mut r = g.coeffs.clone();
        let mut q = vec![FieldElement::ZERO; r.len().saturating_sub(df)];
        while r.len() > df {
            let dr = r.len() - 1;
            let shift = dr - df;
            // c t^shift · f has leading coefficient c σ^shift(lf)
            let c = k.div(r[dr], k.sigma_power(lf, shift as i64))?;
            for (i, &fi) in f.coeffs.iter().enumerate() {
                let term = k.mul(c, k.sigma_power(fi, shift as i64));
                r[i + shift] = k.sub(r[i + shift], term);
            }
            q[shift] = c;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok((SkewPoly::new(q), SkewPoly::new(r)))
    }

    /// g mod_r f.
    pub fn rem(&self, g: &SkewPoly, f: &SkewPoly) -> Result<SkewPoly> {
        Ok(self.right_divmod(g, f)?.1)
    }

    pub fn right_divides(&self, f: &SkewPoly, g: &SkewPoly) -> bool {
        self.rem(g, f).is_ok_and(|r| r.is_zero())
    }

    /// Monic greatest common right divisor by the right Euclidean algorithm.
    pub fn gcrd(&self, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
        if f.is_zero() && g.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b)?;
            a = b;
            b = r;
        }
        Ok(self.monic(&a))
    }

    /// ĥ(t^n).
    pub fn inflate(&self, h: &CentralPoly) -> SkewPoly {
        let n = self.tower.n() as usize;
        let mut coeffs = vec![FieldElement::ZERO; h.coeffs().len().saturating_sub(1) * n + 1];
        for (i, &c) in h.coeffs().iter().enumerate() {
            coeffs[i * n] = c;
        }
        SkewPoly::new(coeffs)
    }

    /// F_p coordinates of a polynomial of degree < `m`: the coordinates of
    /// coefficient i occupy positions `i*hn .. (i+1)*hn`.
    pub fn prime_coords(&self, f: &SkewPoly, m: usize) -> Vec<u32> {
        debug_assert!(f.degree().is_none_or(|d| d < m));
        (0..m).flat_map(|i| self.tower.coords(f.coeff(i))).collect()
    }

    pub fn from_prime_coords(&self, v: &[u32]) -> SkewPoly {
        let d = self.tower.degree() as usize;
        SkewPoly::new(v.chunks(d).map(|c| self.tower.from_coords(c)).collect())
    }

    /// F_p-basis y^j t^i of the polynomials of degree < m, in coordinate order.
    pub fn prime_basis(&self, m: usize) -> Vec<SkewPoly> {
        let d = self.tower.degree() as usize;
        (0..m * d)
            .map(|pos| {
                let mut c = vec![0u32; d];
                c[pos % d] = 1;
                SkewPoly::monomial(self.tower.from_coords(&c), pos / d)
            })
            .collect()
    }

    /// Monic polynomials of degree `d`, smallest first: coefficient vectors
    /// compared lexicographically from the constant term upward.
    pub fn monic_polys(&self, d: usize) -> impl Iterator<Item = SkewPoly> + '_ {
        let base = self.tower.order() as u64;
        let total = base.pow(d as u32);
        (0..total).map(move |mut counter| {
            let mut coeffs = vec![FieldElement::ZERO; d + 1];
            for i in (0..d).rev() {
                coeffs[i] = self
                    .tower
                    .element((counter % base) as u32)
                    .expect("in range");
                counter /= base;
            }
            coeffs[d] = FieldElement::ONE;
            SkewPoly::new(coeffs)
        })
    }

    /// The polynomial of degree < m with the given index (base |K| digits,
    /// coefficient i is digit i).
    pub fn residue(&self, m: usize, mut index: u64) -> SkewPoly {
        let base = self.tower.order() as u64;
        let mut coeffs = Vec::with_capacity(m);
        for _ in 0..m {
            coeffs.push(self.tower.element((index % base) as u32).expect("in range"));
            index /= base;
        }
        SkewPoly::new(coeffs)
    }

    pub fn residue_index(&self, f: &SkewPoly) -> u64 {
        let base = self.tower.order() as u64;
        f.coeffs
            .iter()
            .rev()
            .fold(0, |acc, c| acc * base + c.index() as u64)
    }

    /// Minimal central left multiple ĥ ∈ F[x] of a monic `f` with nonzero
    /// constant term.
    ///
    /// ĥ is the minimal polynomial over F of the vector 1 under left
    /// multiplication by t^n on R/Rf.
    pub fn mclm(&self, f: &SkewPoly) -> Result<CentralPoly> {
        let m = match f.degree() {
            Some(m) if m >= 1 && f.is_monic() => m,
            _ => return Err(Error::NotMonic { min_degree: 1 }),
        };
        if f.coeff(0).is_zero() {
            return Err(Error::NonCentralBound);
        }
        let k = self.tower;
        let n = k.n() as usize;
        let fp = PrimeField::new(k.p());
        let fbasis = k.fixed_field_basis();
        let mut powers = vec![SkewPoly::one()];
        loop {
            let d = powers.len();
            let next = self.rem(&self.shift(&powers[d - 1], n), f)?;
            // columns β·v_i for β in the F_p-basis of F
            let columns: Vec<Vec<u32>> = powers
                .iter()
                .flat_map(|v| fbasis.iter().map(move |&b| (b, v)))
                .map(|(b, v)| self.prime_coords(&self.scale_left(b, v), m))
                .collect();
            let a = Matrix::from_columns(m * k.degree() as usize, &columns);
            if let Some(x) = solve(&fp, &a, &self.prime_coords(&next, m)) {
                let hb = fbasis.len();
                let mut coeffs: Vec<FieldElement> = (0..d)
                    .map(|i| {
                        let c = (0..hb).fold(FieldElement::ZERO, |acc, l| {
                            k.add(acc, k.mul(k.from_int(x[i * hb + l] as i64), fbasis[l]))
                        });
                        k.neg(c)
                    })
                    .collect();
                coeffs.push(FieldElement::ONE);
                return Ok(CentralPoly::from_trusted(coeffs));
            }
            powers.push(next);
        }
    }

    /// Irreducibility in R, via the bound when the constant term is nonzero.
    pub fn is_irreducible(&self, f: &SkewPoly) -> bool {
        let f = self.monic(f);
        match f.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(m) => {
                if f.coeff(0).is_zero() {
                    return false;
                }
                let h = self.mclm(&f).expect("monic with nonzero constant term");
                h.degree() == Some(m) && h.is_irreducible(self.tower)
            }
        }
    }

    /// Counts the irreducible factors of ĥ(t^n) and returns one monic
    /// irreducible right factor.
    pub fn factor_count(&self, h: &CentralPoly) -> Result<FactorCount> {
        if !h.is_monic() || !h.is_irreducible(self.tower) {
            return Err(Error::ReducibleCentral);
        }
        let big = self.inflate(h);
        let deg = big.degree().expect("nonzero");
        for d in 1..=deg {
            if !deg.is_multiple_of(d) {
                continue;
            }
            // the smallest-degree right factor is irreducible
            if let Some(factor) = self
                .monic_polys(d)
                .filter(|f| !f.coeff(0).is_zero())
                .find(|f| self.right_divides(f, &big))
            {
                return Ok(FactorCount {
                    k: deg / d,
                    m: d,
                    factor,
                });
            }
        }
        unreachable!("ĥ(t^n) divides itself")
    }

    /// A nonzero u of degree < m with g·u ≡ 0 mod_r f, if f and g are
    /// similar. For irreducible f and deg u < deg f, gcrd(f, u) = 1 holds
    /// automatically, so the kernel vector is a similarity witness.
    pub fn similar(&self, f: &SkewPoly, g: &SkewPoly) -> Result<Option<SkewPoly>> {
        let (df, dg) = (f.degree().unwrap_or(0), g.degree().unwrap_or(0));
        if df != dg {
            return Err(Error::UnequalDegrees(df, dg));
        }
        if !f.is_monic() || !g.is_monic() || df < 1 {
            return Err(Error::NotMonic { min_degree: 1 });
        }
        if !self.is_irreducible(f) || !self.is_irreducible(g) {
            return Err(Error::Reducible);
        }
        if f == g {
            return Ok(Some(SkewPoly::one()));
        }
        let m = df;
        let columns: Vec<Vec<u32>> = self
            .prime_basis(m)
            .iter()
            .map(|e| Ok(self.prime_coords(&self.rem(&self.mul(g, e), f)?, m)))
            .collect::<Result<_>>()?;
        let a = Matrix::from_columns(m * self.tower.degree() as usize, &columns);
        let fp = PrimeField::new(self.tower.p());
        Ok(kernel(&fp, &a).first().map(|v| self.from_prime_coords(v)))
    }

    /// Petit's criterion: with f = t^m − Σ a_i t^i, every a_i ∈ F and
    /// a_i(σ^m(d) − σ^i(d)) = 0 for all d in an F_p-basis of K.
    pub fn right_invariant(&self, f: &SkewPoly) -> bool {
        let f = self.monic(f);
        let Some(m) = f.degree() else {
            return false;
        };
        let k = self.tower;
        let basis: Vec<FieldElement> = (0..k.degree() as usize)
            .map(|j| {
                let mut c = vec![0; k.degree() as usize];
                c[j] = 1;
                k.from_coords(&c)
            })
            .collect();
        (0..m).all(|i| {
            let a = k.neg(f.coeff(i));
            k.in_fixed_field(a)
                && basis.iter().all(|&d| {
                    let diff = k.sub(k.sigma_power(d, m as i64), k.sigma_power(d, i as i64));
                    k.mul(a, diff).is_zero()
                })
        })
    }

    /// f^{(α,τ)} = N^σ_m(α^{-1}) Σ τ(a_i) N^σ_i(α) t^i with τ = c ↦ c^{p^r}.
    pub fn g_transport(&self, f: &SkewPoly, alpha: FieldElement, r: u32) -> Result<SkewPoly> {
        let k = self.tower;
        if r >= k.degree() {
            return Err(Error::InvalidAutomorphism {
                r,
                bound: k.degree(),
            });
        }
        let m = match f.degree() {
            Some(m) if f.is_monic() => m,
            _ => return Err(Error::NotMonic { min_degree: 1 }),
        };
        let alpha_inv = k.inv(alpha)?;
        let scale = k.partial_sigma_norm(alpha_inv, m);
        Ok(SkewPoly::new(
            (0..=m)
                .map(|i| {
                    let c = k.mul(k.tau(f.coeff(i), r), k.partial_sigma_norm(alpha, i));
                    k.mul(scale, c)
                })
                .collect(),
        ))
    }
}

#[cfg(test)]
mod tests;
