//! Dense univariate polynomials over `Z`, stored ascending and trimmed.
//!
//! These are the workhorse for gcd computations behind [`super::Scalar`]
//! normalization; nothing outside the scalar module touches them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn degree(p: &[BigInt]) -> usize {
    debug_assert!(!p.is_empty());
    p.len() - 1
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_by_integer(p: &mut [BigInt], c: &BigInt) {
    if c.is_one() {
        return;
    }
    for x in p.iter_mut() {
        *x = &*x / c;
    }
}

fn primitive_part(mut p: Vec<BigInt>) -> Vec<BigInt> {
    if p.is_empty() {
        return p;
    }
    let mut c = content(&p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    divide_by_integer(&mut p, &c);
    p
}

/// Pseudo-remainder of `a` by `b` (both nonzero, trimmed).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b);
    let lc = b.last().unwrap();
    let mut r = a.to_vec();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lead = r.last().unwrap().clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] -= &lead * bk;
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor in `Z[x]`, normalized to a positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return primitive_sign(b.to_vec());
    }
    if b.is_empty() {
        return primitive_sign(a.to_vec());
    }
    let c = content(a).gcd(&content(b));
    if a.len() == 1 || b.len() == 1 {
        return vec![c];
    }
    let (mut x, mut y) = if a.len() >= b.len() {
        (primitive_part(a.to_vec()), primitive_part(b.to_vec()))
    } else {
        (primitive_part(b.to_vec()), primitive_part(a.to_vec()))
    };
    loop {
        let r = pseudo_rem(&x, &y);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return vec![c];
        }
        x = y;
        y = primitive_part(r);
    }
    let mut g = primitive_part(y);
    for v in g.iter_mut() {
        *v *= &c;
    }
    g
}

fn primitive_sign(mut p: Vec<BigInt>) -> Vec<BigInt> {
    if p.last().is_some_and(|c| c.is_negative()) {
        for x in p.iter_mut() {
            *x = -&*x;
        }
    }
    p
}

/// Exact quotient `a / b` in `Z[x]`. Panics if the division is not exact;
/// callers only divide by a gcd they just computed.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Vec::new();
    }
    if b.len() == 1 {
        let mut q = a.to_vec();
        for x in q.iter_mut() {
            let (d, r) = x.div_rem(&b[0]);
            assert!(r.is_zero(), "inexact integer division");
            *x = d;
        }
        return q;
    }
    let db = degree(b);
    let lc = b.last().unwrap();
    let mut r = a.to_vec();
    assert!(r.len() > db, "inexact polynomial division");
    let mut q = vec![BigInt::zero(); r.len() - db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let (coef, rem) = r.last().unwrap().div_rem(lc);
        assert!(rem.is_zero(), "inexact polynomial division");
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] -= &coef * bk;
        }
        q[shift] = coef;
        trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub(crate) fn is_unit(p: &[BigInt]) -> bool {
    p.len() == 1 && p[0].abs().is_one()
}
