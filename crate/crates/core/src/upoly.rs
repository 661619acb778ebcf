//! Dense univariate polynomials over a [`FieldOps`] context, stored
//! low-degree-first with no trailing zeros.

use crate::arith::prime_factors;
use crate::field::FieldOps;

pub fn trim<F: FieldOps>(ctx: &F, a: &mut Vec<F::Elem>) {
    while a.last().is_some_and(|c| ctx.is_zero(c)) {
        a.pop();
    }
}

pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn sub<F: FieldOps>(ctx: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let mut out: Vec<F::Elem> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| ctx.zero());
            let y = b.get(i).cloned().unwrap_or_else(|| ctx.zero());
            ctx.sub(&x, &y)
        })
        .collect();
    trim(ctx, &mut out);
    out
}

pub fn mul<F: FieldOps>(ctx: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ctx.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(x, y));
        }
    }
    trim(ctx, &mut out);
    out
}

/// Euclidean division `a = q*b + r`. Panics if `b` is zero.
pub fn divrem<F: FieldOps>(ctx: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = ctx.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    trim(ctx, &mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![ctx.zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = ctx.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = ctx.sub(&r[shift + j], &ctx.mul(&c, bj));
        }
        q[shift] = c;
        trim(ctx, &mut r);
    }
    trim(ctx, &mut q);
    (q, r)
}

pub fn rem<F: FieldOps>(ctx: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(ctx, a, b).1
}

pub fn make_monic<F: FieldOps>(ctx: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let li = ctx.inv(lc).expect("nonzero leading coefficient");
            a.iter().map(|c| ctx.mul(c, &li)).collect()
        }
    }
}

/// Monic gcd; zero if both inputs are zero.
pub fn gcd<F: FieldOps>(ctx: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(ctx, &mut x);
    trim(ctx, &mut y);
    while !y.is_empty() {
        let r = rem(ctx, &x, &y);
        x = y;
        y = r;
    }
    make_monic(ctx, &x)
}

pub fn powmod<F: FieldOps>(
    ctx: &F,
    base: &[F::Elem],
    mut exp: u128,
    modulus: &[F::Elem],
) -> Vec<F::Elem> {
    let mut acc = rem(ctx, &[ctx.one()], modulus);
    let mut b = rem(ctx, base, modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(ctx, &mul(ctx, &acc, &b), modulus);
        }
        exp >>= 1;
        if exp > 0 {
            b = rem(ctx, &mul(ctx, &b, &b), modulus);
        }
    }
    acc
}

/// Rabin's irreducibility test over a field with `field_size` elements.
pub fn is_irreducible<F: FieldOps>(ctx: &F, f: &[F::Elem], field_size: u64) -> bool {
    let d = match degree(f) {
        None | Some(0) => return false,
        Some(d) => d,
    };
    if d == 1 {
        return true;
    }
    let x = vec![ctx.zero(), ctx.one()];
    // frob[k] = x^(size^k) mod f
    let mut frob = Vec::with_capacity(d + 1);
    frob.push(rem(ctx, &x, f));
    for k in 1..=d {
        let next = powmod(ctx, &frob[k - 1], field_size as u128, f);
        frob.push(next);
    }
    if !sub(ctx, &frob[d], &rem(ctx, &x, f)).is_empty() {
        return false;
    }
    for l in prime_factors(d as u64) {
        let k = d / l as usize;
        let g = gcd(ctx, &sub(ctx, &frob[k], &x), f);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
