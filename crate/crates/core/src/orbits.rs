//! The group G = F^× ⋊ Aut(K)_σ acting on monic irreducible polynomials of
//! F[x], orbit enumeration, and the closed-form orbit count M(q, m).

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use rayon::prelude::*;

use crate::arith::{divisors, gcd, moebius, prime_factors, totient};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::skewpoly::CentralPoly;

/// (λ, τ_r) with λ ∈ F^× and τ_r : c ↦ c^{p^r}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    lambda: FieldElement,
    r: u32,
}

impl GroupElement {
    pub fn new(tower: &FieldTower, lambda: FieldElement, r: u32) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if !tower.in_fixed_field(lambda) {
            return Err(Error::NotInFixedField);
        }
        let bound = tower.degree();
        if r >= bound {
            return Err(Error::InvalidAutomorphism { r, bound });
        }
        Ok(GroupElement { lambda, r })
    }

    pub fn identity() -> Self {
        GroupElement {
            lambda: FieldElement::ONE,
            r: 0,
        }
    }

    pub fn lambda(&self) -> FieldElement {
        self.lambda
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// The semidirect product law (λ₁,τ₁)(λ₂,τ₂) = (λ₁·τ₁(λ₂), τ₁τ₂).
    pub fn mul(&self, tower: &FieldTower, other: &GroupElement) -> GroupElement {
        GroupElement {
            lambda: tower.mul(self.lambda, tower.tau(other.lambda, self.r)),
            r: (self.r + other.r) % tower.degree(),
        }
    }

    pub fn inverse(&self, tower: &FieldTower) -> GroupElement {
        let r = (tower.degree() - self.r) % tower.degree();
        let inv = tower.inv(self.lambda).expect("λ is nonzero");
        GroupElement {
            lambda: tower.tau(inv, r),
            r,
        }
    }

    /// The element acting as `first` followed by `then`, so that
    /// `act(act(h, first), then) == act(h, compose(first, then))`.
    pub fn compose(tower: &FieldTower, first: &GroupElement, then: &GroupElement) -> GroupElement {
        then.mul(tower, first)
    }
}

/// |G| = (q − 1)·h·n.
pub fn group_order(tower: &FieldTower) -> u64 {
    (tower.q() - 1) * tower.degree() as u64
}

/// All of G, ordered by r and then by λ.
pub fn group_elements(tower: &FieldTower) -> Vec<GroupElement> {
    let lambdas: Vec<FieldElement> = tower
        .fixed_field()
        .iter()
        .copied()
        .filter(|c| !c.is_zero())
        .collect();
    (0..tower.degree())
        .flat_map(|r| {
            lambdas
                .iter()
                .map(move |&lambda| GroupElement { lambda, r })
        })
        .collect()
}

/// ĥ^{(λ,τ)}(x) = λ^{−m₀}·ĥ^τ(λx).
pub fn act(tower: &FieldTower, h: &CentralPoly, g: &GroupElement) -> CentralPoly {
    let m0 = h.degree().unwrap_or(0);
    let inv = tower.inv(g.lambda).expect("λ is nonzero");
    let coeffs = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| tower.mul(tower.pow(inv, (m0 - i) as u64), tower.tau(c, g.r)))
        .collect();
    CentralPoly::from_trusted(coeffs)
}

/// All monic polynomials of degree m₀ over F, in index order.
fn monic_central(tower: &FieldTower, m0: usize) -> impl Iterator<Item = CentralPoly> + '_ {
    let f = tower.fixed_field();
    let q = f.len();
    let total = q.pow(m0 as u32);
    (0..total).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(m0 + 1);
        for _ in 0..m0 {
            coeffs.push(f[idx % q]);
            idx /= q;
        }
        coeffs.push(FieldElement::ONE);
        CentralPoly::from_trusted(coeffs)
    })
}

/// I(F, m₀): the monic irreducible polynomials of degree m₀ over F, sorted
/// by coefficient vector, constant term first.
pub fn irreducible_polys(tower: &FieldTower, m0: usize) -> Vec<CentralPoly> {
    assert!(m0 >= 1, "degree must be positive");
    let all: Vec<CentralPoly> = monic_central(tower, m0).collect();
    let mut out: Vec<CentralPoly> = all
        .into_par_iter()
        .filter(|h| h.is_irreducible(tower))
        .collect();
    out.sort();
    out
}

/// N(q, m) = (1/m) Σ_{s|m} μ(s) q^{m/s}.
pub fn moebius_count(q: u64, m: u64) -> u64 {
    let total: i128 = divisors(m)
        .into_iter()
        .map(|s| moebius(s) as i128 * (q as i128).pow((m / s) as u32))
        .sum();
    (total / m as i128) as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: CentralPoly,
    pub members: Vec<CentralPoly>,
    pub size: usize,
    pub stabilizer: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub m0: usize,
    pub group_order: u64,
    pub orbits: Vec<Orbit>,
    pub total: usize,
}

impl OrbitReport {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Index of the orbit containing `h`.
    pub fn orbit_of(&self, h: &CentralPoly) -> Option<usize> {
        self.orbits
            .iter()
            .position(|o| o.members.binary_search(h).is_ok())
    }
}

fn zero_pattern(h: &CentralPoly) -> Vec<bool> {
    h.coeffs().iter().map(|c| c.is_zero()).collect()
}

/// Partitions I(F, m₀) into G-orbits. Every orbit is checked to keep a
/// single zero pattern of coefficients.
pub fn orbit_decomposition(tower: &FieldTower, m0: usize) -> OrbitReport {
    let polys = irreducible_polys(tower, m0);
    let group = group_elements(tower);
    let order = group.len() as u64;

    let mut buckets: BTreeMap<Vec<bool>, Vec<CentralPoly>> = BTreeMap::new();
    for h in &polys {
        buckets.entry(zero_pattern(h)).or_default().push(h.clone());
    }

    let orbits: BTreeSet<Vec<CentralPoly>> = polys
        .par_iter()
        .map(|h| {
            let pattern = zero_pattern(h);
            let bucket = &buckets[&pattern];
            let members: BTreeSet<CentralPoly> = group
                .iter()
                .map(|g| {
                    let image = act(tower, h, g);
                    assert!(
                        bucket.binary_search(&image).is_ok(),
                        "orbit leaves its zero pattern"
                    );
                    image
                })
                .collect();
            members.into_iter().collect()
        })
        .collect();

    let mut orbits: Vec<Orbit> = orbits
        .into_iter()
        .map(|members| {
            let representative = members[0].clone();
            let stabilizer = group
                .iter()
                .filter(|g| act(tower, &representative, g) == representative)
                .count() as u64;
            assert_eq!(stabilizer * members.len() as u64, order);
            Orbit {
                representative,
                size: members.len(),
                members,
                stabilizer,
            }
        })
        .collect();
    orbits.sort_by(|a, b| a.representative.cmp(&b.representative));
    OrbitReport {
        m0,
        group_order: order,
        orbits,
        total: polys.len(),
    }
}

fn prime_power(q: u64) -> Result<(u64, u32)> {
    let ps = prime_factors(q);
    if ps.len() != 1 {
        return Err(Error::InvalidParameters(format!(
            "{q} is not a prime power"
        )));
    }
    let p = ps[0];
    let mut h = 0;
    let mut x = q;
    while x > 1 {
        x /= p;
        h += 1;
    }
    Ok((p, h))
}

fn overflow() -> Error {
    Error::InvalidParameters("parameters too large for the closed form".into())
}

/// |Fix(λ, τ_r)| on I(F, m) for λ of multiplicative order `lambda_order`.
pub fn fix_count_by_order(p: u64, h: u32, lambda_order: u64, r: u32, m: u64) -> Result<u64> {
    let q = p.checked_pow(h).ok_or_else(overflow)?;
    let pr = p.checked_pow(r).ok_or_else(overflow)? as i128;
    let mut total: i128 = 0;
    for j in 0..m {
        let qj = q.checked_pow(j as u32).ok_or_else(overflow)? as i128;
        let e = pr - qj;
        let mut s_rj: i128 = 0;
        for d in divisors(m) {
            let s = (m / d) as u32;
            let modulus = q.checked_pow(s).ok_or_else(overflow)? - 1;
            let e_red = e.rem_euclid(modulus as i128) as u64;
            let g = gcd(modulus, e_red);
            let solutions = if (modulus / g).is_multiple_of(lambda_order) {
                g
            } else {
                0
            };
            s_rj += moebius(d) as i128 * solutions as i128;
        }
        total += s_rj;
    }
    if total % m as i128 != 0 {
        return Err(Error::VerificationFailed(format!(
            "fixed-point sum {total} is not divisible by {m}"
        )));
    }
    let mut fix = (total / m as i128) as u64;
    if m == 1 {
        // the polynomial x, whose root 0 the unit-group count misses
        fix += 1;
    }
    Ok(fix)
}

/// |Fix(λ, τ_r)| on I(F, m) by the closed form.
pub fn fix_count_formula(tower: &FieldTower, g: &GroupElement, m: usize) -> Result<u64> {
    let order = tower
        .multiplicative_order(g.lambda)
        .ok_or(Error::ZeroInverse)?;
    fix_count_by_order(tower.p() as u64, tower.h(), order, g.r, m as u64)
}

/// |Fix(λ, τ_r)| on I(F, m) by direct enumeration.
pub fn fix_count_brute(tower: &FieldTower, polys: &[CentralPoly], g: &GroupElement) -> u64 {
    polys.iter().filter(|h| act(tower, h, g) == **h).count() as u64
}

/// Number of orbits by averaging brute-force fixed-point counts over G.
pub fn burnside_count(tower: &FieldTower, m: usize) -> u64 {
    let polys = irreducible_polys(tower, m);
    let group = group_elements(tower);
    let total: u64 = group
        .par_iter()
        .map(|g| fix_count_brute(tower, &polys, g))
        .sum();
    assert_eq!(
        total % group.len() as u64,
        0,
        "Burnside sum is not a multiple of |G|"
    );
    total / group.len() as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCount {
    pub q: u64,
    pub n: u64,
    pub m: u64,
    /// N(q, m).
    pub irreducible: u64,
    /// q^m − m·N(q, m).
    pub theta: u64,
    /// The average over all (q − 1)·h·n group elements.
    pub value: u64,
    /// The average over r < h only.
    pub reduced_value: u64,
    pub lower_bound: Ratio<u64>,
    pub upper_bound: Ratio<u64>,
}

/// M(q, m), the number of G-orbits on I(F, m) for K = F_{q^n}.
pub fn m_formula(q: u64, n: u64, m: u64) -> Result<MCount> {
    let (p, h) = prime_power(q)?;
    if n < 2 || m < 1 {
        return Err(Error::InvalidParameters(format!(
            "need n >= 2 and m >= 1, got n = {n}, m = {m}"
        )));
    }
    let hn = h as u64 * n;
    // λ ranges over F^×, which has φ(d) elements of each order d | q − 1
    let fix_sum = |rs: u64| -> Result<u128> {
        let mut sum: u128 = 0;
        for d in divisors(q - 1) {
            for r in 0..rs {
                let fix = fix_count_by_order(p, h, d, r as u32, m)?;
                sum += totient(d) as u128 * fix as u128;
            }
        }
        Ok(sum)
    };
    let full = fix_sum(hn)?;
    let reduced = n as u128 * fix_sum(h as u64)?;
    let denom = (q - 1) as u128 * hn as u128;
    if full % denom != 0 || !reduced.is_multiple_of(denom) {
        return Err(Error::VerificationFailed(format!(
            "fixed-point sums {full} and {reduced} are not multiples of |G| = {denom}"
        )));
    }
    let value = (full / denom) as u64;
    let reduced_value = (reduced / denom) as u64;
    if value != reduced_value {
        return Err(Error::VerificationFailed(format!(
            "the h-term form gives {reduced_value}, the hn-term form gives {value}"
        )));
    }
    let irreducible = moebius_count(q, m);
    let qm = q.checked_pow(m as u32).ok_or_else(overflow)?;
    let theta = qm - m * irreducible;
    let lower_bound = Ratio::new(qm - theta, m * h as u64 * (q - 1));
    let upper_bound = Ratio::new(qm - theta, m);
    let v = Ratio::from_integer(value);
    if v < lower_bound || v > upper_bound {
        return Err(Error::VerificationFailed(format!(
            "M = {value} lies outside [{lower_bound}, {upper_bound}]"
        )));
    }
    Ok(MCount {
        q,
        n,
        m,
        irreducible,
        theta,
        value,
        reduced_value,
        lower_bound,
        upper_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotopyBound {
    pub m_value: u64,
    /// φ(n)/2 · M(q, m), exact.
    pub totient_bound: Ratio<u64>,
}

pub fn isotopy_class_bound(q: u64, n: u64, m: u64) -> Result<IsotopyBound> {
    let count = m_formula(q, n, m)?;
    Ok(IsotopyBound {
        m_value: count.value,
        totient_bound: Ratio::new(totient(n) * count.value, 2),
    })
}

#[cfg(test)]
mod tests;
