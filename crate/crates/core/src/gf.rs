//! The field tower F_p ⊂ F = F_q ⊂ K = F_{q^n} with a fixed generator σ of
//! Gal(K/F).
//!
//! K is held once as F_p[y]/(modulus). Elements are stored as their
//! coordinate vector packed into an integer (coordinate `i` is the base-p
//! digit of weight p^i), so the derived ordering compares the highest
//! coordinate first. Multiplication goes through discrete log tables and
//! addition through a Zech table.

use std::fmt;

use crate::arith::{gcd, is_prime, pow_mod, prime_factors};
use crate::error::{Error, Result};
use crate::field::{FieldOps, PrimeField};
use crate::linalg::{rank, Matrix};
use crate::upoly;

/// Largest supported |K|.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// An element of K, as a packed coordinate vector over F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone)]
pub struct FieldTower {
    p: u32,
    h: u32,
    n: u32,
    degree: u32,
    modulus: Vec<u32>,
    sigma_exp: u32,
    order: u32,
    primitive: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    /// p^e mod (order - 1) for e < degree.
    frob_mult: Vec<u64>,
    fixed: Vec<FieldElement>,
    fixed_basis: Vec<FieldElement>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("sigma_exp", &self.sigma_exp)
            .finish()
    }
}

/// Builds the tower for F_{p^h} ⊂ F_{p^{hn}} with σ(c) = c^{q^s}.
///
/// Without an explicit modulus the lexicographically smallest monic
/// irreducible of degree `h*n` (constant coefficient compared first) is used.
pub fn make_tower(
    p: u32,
    h: u32,
    n: u32,
    sigma_exp: u32,
    modulus: Option<Vec<u32>>,
) -> Result<FieldTower> {
    FieldTower::new(p, h, n, sigma_exp, modulus)
}

impl FieldTower {
    pub fn new(p: u32, h: u32, n: u32, sigma_exp: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if h < 1 || n < 2 {
            return Err(Error::InvalidParameters(format!(
                "need h >= 1 and n >= 2, got h = {h}, n = {n}"
            )));
        }
        if gcd(sigma_exp as u64, n as u64) != 1 {
            return Err(Error::SigmaNotGenerator { sigma_exp, n });
        }
        let degree = h * n;
        let order = (p as u64)
            .checked_pow(degree)
            .filter(|&o| o <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge {
                order: (p as u64).saturating_pow(degree),
            })?;
        let fp = PrimeField::new(p);
        let modulus = match modulus {
            Some(m) => {
                let ok = m.len() == degree as usize + 1
                    && m.last() == Some(&1)
                    && m.iter().all(|&c| c < p)
                    && upoly::is_irreducible(&fp, &m, p as u64);
                if !ok {
                    return Err(Error::BadModulus(degree));
                }
                m
            }
            None => smallest_irreducible(p, degree as usize),
        };
        let mut tower = FieldTower {
            p,
            h,
            n,
            degree,
            modulus,
            sigma_exp: sigma_exp % n,
            order: order as u32,
            primitive: FieldElement::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            zech: Vec::new(),
            frob_mult: Vec::new(),
            fixed: Vec::new(),
            fixed_basis: Vec::new(),
        };
        tower.build_tables();
        Ok(tower)
    }

    fn build_tables(&mut self) {
        let units = (self.order - 1) as u64;
        let factors = prime_factors(units);
        let g = (1..self.order)
            .find(|&idx| {
                let v = self.unpack(idx);
                factors
                    .iter()
                    .all(|&l| self.pack(&self.slow_pow(&v, units / l)) != 1)
            })
            .expect("K^x is cyclic");
        self.primitive = FieldElement(g);
        let gv = self.unpack(g);
        let mut exp = Vec::with_capacity(units as usize);
        let mut log = vec![NO_LOG; self.order as usize];
        let mut cur = self.unpack(1);
        for i in 0..units as u32 {
            let idx = self.pack(&cur);
            exp.push(idx);
            log[idx as usize] = i;
            cur = self.slow_mul(&cur, &gv);
        }
        let p = self.p;
        let zech = exp
            .iter()
            .map(|&idx| {
                let d0 = idx % p;
                let shifted = idx - d0 + (d0 + 1) % p;
                if shifted == 0 {
                    NO_LOG
                } else {
                    log[shifted as usize]
                }
            })
            .collect();
        self.exp = exp;
        self.log = log;
        self.zech = zech;
        self.frob_mult = (0..self.degree)
            .map(|e| pow_mod(self.p as u64, e as u64, units))
            .collect();
        let step = units / (self.q() - 1);
        let mut fixed: Vec<FieldElement> = std::iter::once(FieldElement::ZERO)
            .chain((0..self.q() - 1).map(|k| FieldElement(self.exp[(k * step) as usize])))
            .collect();
        fixed.sort();
        self.fixed_basis = prime_basis(self, &fixed);
        self.fixed = fixed;
    }

    fn unpack(&self, mut idx: u32) -> Vec<u32> {
        (0..self.degree)
            .map(|_| {
                let d = idx % self.p;
                idx /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, coords: &[u32]) -> u32 {
        coords.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn slow_mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let fp = PrimeField::new(self.p);
        let mut r = upoly::rem(&fp, &upoly::mul(&fp, a, b), &self.modulus);
        r.resize(self.degree as usize, 0);
        r
    }

    fn slow_pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut acc = self.unpack(1);
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(&acc, &b);
            }
            b = self.slow_mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// q = |F| = p^h.
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.h)
    }

    /// [K : F_p] = h n.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// |K|.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn sigma_exp(&self) -> u32 {
        self.sigma_exp
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    /// The class of y in F_p[y]/(modulus), written `w` in text.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.p)
    }

    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.order).then_some(FieldElement(index))
    }

    pub fn from_coords(&self, coords: &[u32]) -> FieldElement {
        assert!(coords.len() <= self.degree as usize);
        FieldElement(self.pack(&coords.iter().map(|c| c % self.p).collect::<Vec<_>>()))
    }

    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        self.unpack(a.0)
    }

    /// The image of an integer in F_p ⊂ K.
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.p as i64) as u32)
    }

    /// All elements of K in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.order).map(FieldElement)
    }

    /// The fixed field F = Fix(σ), sorted.
    pub fn fixed_field(&self) -> &[FieldElement] {
        &self.fixed
    }

    /// An F_p-basis of F.
    pub fn fixed_field_basis(&self) -> &[FieldElement] {
        &self.fixed_basis
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let units = self.order - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let z = self.zech[((lb + units - la) % units) as usize];
        if z == NO_LOG {
            FieldElement::ZERO
        } else {
            FieldElement(self.exp[((la as u64 + z as u64) % units as u64) as usize])
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        let units = self.order - 1;
        FieldElement(self.exp[((self.log[a.0 as usize] + units / 2) % units) as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let units = (self.order - 1) as u64;
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        FieldElement(self.exp[(s % units) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let units = self.order - 1;
        Ok(FieldElement(
            self.exp[((units - self.log[a.0 as usize]) % units) as usize],
        ))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let units = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u128 * (e % units) as u128;
        FieldElement(self.exp[(l % units as u128) as usize])
    }

    /// Discrete logarithm to the base of [`Self::primitive_element`].
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        let units = (self.order - 1) as u64;
        self.log(a).map(|l| units / gcd(units, l as u64))
    }

    /// c ↦ c^{p^e}.
    pub fn frobenius(&self, a: FieldElement, e: u32) -> FieldElement {
        if a.is_zero() {
            return a;
        }
        let units = (self.order - 1) as u64;
        let m = self.frob_mult[(e % self.degree) as usize];
        FieldElement(self.exp[((self.log[a.0 as usize] as u64 * m) % units) as usize])
    }

    /// τ_r(c) = c^{p^r}; an alias of [`Self::frobenius`] for the group action.
    pub fn tau(&self, a: FieldElement, r: u32) -> FieldElement {
        self.frobenius(a, r)
    }

    /// σ^j(c) = c^{q^{s j}}; `j` is taken modulo n.
    pub fn sigma_power(&self, c: FieldElement, j: i64) -> FieldElement {
        let k = (self.sigma_exp as i64 * j).rem_euclid(self.n as i64) as u32;
        self.frobenius(c, self.h * k)
    }

    pub fn sigma(&self, c: FieldElement) -> FieldElement {
        self.sigma_power(c, 1)
    }

    pub fn in_fixed_field(&self, c: FieldElement) -> bool {
        self.sigma(c) == c
    }

    /// N_{K/F}(c) = ∏_{j<n} σ^j(c).
    pub fn norm(&self, c: FieldElement) -> FieldElement {
        self.partial_sigma_norm(c, self.n as usize)
    }

    /// N^σ_i(α) = ∏_{j<i} σ^j(α).
    pub fn partial_sigma_norm(&self, alpha: FieldElement, i: usize) -> FieldElement {
        (0..i).fold(FieldElement::ONE, |acc, j| {
            self.mul(acc, self.sigma_power(alpha, j as i64))
        })
    }

    /// The smallest α ∈ K^× with N_{K/F}(α) = λ.
    pub fn norm_preimage(&self, lambda: FieldElement) -> Result<FieldElement> {
        if lambda.is_zero() {
            return Err(Error::ZeroNorm);
        }
        if !self.in_fixed_field(lambda) {
            return Err(Error::NotInNormGroup);
        }
        self.nonzero_elements()
            .find(|&a| self.norm(a) == lambda)
            .ok_or(Error::NotInNormGroup)
    }

    /// True if c lies in a proper subfield of K (over F_p).
    pub fn in_proper_subfield(&self, c: FieldElement) -> bool {
        crate::arith::divisors(self.degree as u64)
            .into_iter()
            .filter(|&d| d < self.degree as u64)
            .any(|d| self.frobenius(c, d as u32) == c)
    }

    /// Polynomial text in `w`, highest power first, e.g. `2*w^3+1`.
    pub fn format(&self, a: FieldElement) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let coords = self.coords(a);
        let mut terms = Vec::new();
        for (i, &c) in coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        terms.join("+")
    }

    /// Whether the formatted element needs parentheses as a coefficient.
    pub fn is_compound(&self, a: FieldElement) -> bool {
        self.coords(a).iter().filter(|&&c| c != 0).count() > 1
    }
}

impl FieldOps for FieldTower {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }
    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldTower::add(self, *a, *b)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldTower::neg(self, *a)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldTower::sub(self, *a, *b)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldTower::mul(self, *a, *b)
    }
    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        FieldTower::inv(self, *a).ok()
    }
}

/// Lexicographically smallest monic irreducible of the given degree over
/// F_p, comparing coefficients from the constant term upward.
fn smallest_irreducible(p: u32, degree: usize) -> Vec<u32> {
    let fp = PrimeField::new(p);
    let total = (p as u64).pow(degree as u32);
    for counter in 0..total {
        // c_0 is the most significant digit of the counter.
        let mut coeffs = vec![0u32; degree + 1];
        let mut rest = counter;
        for i in (0..degree).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[degree] = 1;
        if coeffs[0] != 0 && upoly::is_irreducible(&fp, &coeffs, p as u64) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Greedy F_p-basis of the span of `elems`, taken in the given order.
fn prime_basis(tower: &FieldTower, elems: &[FieldElement]) -> Vec<FieldElement> {
    let fp = PrimeField::new(tower.p);
    let mut basis: Vec<FieldElement> = Vec::new();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for &e in elems {
        if e.is_zero() {
            continue;
        }
        rows.push(tower.coords(e));
        if rank(&fp, &Matrix::from_rows(rows.clone())) == rows.len() {
            basis.push(e);
        } else {
            rows.pop();
        }
    }
    basis
}
