//! Bilinear accumulation of products of weighted terms.
//!
//! Every product in this crate has the shape
//! `sum_{a,b} x_a * y_b * delta^(loops) * [key]`. Normalizing a rational
//! function after each of those products would dominate the run time, so
//! the denominators of both factors are interned and numerators are summed
//! per `(key, den_x, den_y, loops)` class. Only the final per-key sums go
//! through gcd normalization.

use std::collections::HashMap;
use std::hash::Hash;

use crate::scalar::{LaurentPoly, Scalar};

/// A basis object together with its coefficient.
pub(crate) type Term<'a, A> = (&'a A, &'a Scalar);

struct Interned<'a> {
    ids: HashMap<&'a LaurentPoly, u32>,
    dens: Vec<&'a LaurentPoly>,
}

impl<'a> Interned<'a> {
    fn new() -> Self {
        Self {
            ids: HashMap::new(),
            dens: Vec::new(),
        }
    }

    fn id(&mut self, d: &'a LaurentPoly) -> u32 {
        if let Some(&k) = self.ids.get(d) {
            return k;
        }
        let k = self.dens.len() as u32;
        self.dens.push(d);
        self.ids.insert(d, k);
        k
    }
}

/// Computes `sum_{a,b} x_a y_b sum_{(k, l) in f(a, b)} delta^l [k]` grouped by key.
/// Zero results are dropped.
pub(crate) fn accumulate<'a, 'b, A, B, K, F, I>(
    xs: &[Term<'a, A>],
    ys: &[Term<'b, B>],
    mut f: F,
) -> HashMap<K, Scalar>
where
    K: Hash + Eq + Clone,
    F: FnMut(&A, &B) -> I,
    I: IntoIterator<Item = (K, u32)>,
{
    let mut xi = Interned::new();
    let mut yi = Interned::new();
    let xs: Vec<(&A, &LaurentPoly, u32)> = xs
        .iter()
        .map(|(a, c)| (*a, c.numerator(), xi.id(c.denominator())))
        .collect();
    let ys: Vec<(&B, &LaurentPoly, u32)> = ys
        .iter()
        .map(|(b, c)| (*b, c.numerator(), yi.id(c.denominator())))
        .collect();

    let mut acc: HashMap<(K, u32, u32, u32), LaurentPoly> = HashMap::new();
    for &(a, na, da) in &xs {
        for &(b, nb, db) in &ys {
            let prod = na * nb;
            for (key, loops) in f(a, b) {
                acc.entry((key, da, db, loops))
                    .or_default()
                    .add_assign_ref(&prod);
            }
        }
    }

    let max_loops = acc.keys().map(|k| k.3).max().unwrap_or(0);
    let delta = crate::scalar::Scalar::delta();
    let delta_pows: Vec<LaurentPoly> = (0..=max_loops)
        .map(|l| delta.numerator().pow(l))
        .collect();

    let mut by_den: HashMap<(K, u32, u32), LaurentPoly> = HashMap::new();
    for ((key, da, db, loops), num) in acc {
        if num.is_zero() {
            continue;
        }
        let term = if loops == 0 {
            num
        } else {
            &num * &delta_pows[loops as usize]
        };
        by_den.entry((key, da, db)).or_default().add_assign_ref(&term);
    }

    let mut den_cache: HashMap<(u32, u32), LaurentPoly> = HashMap::new();
    let mut out: HashMap<K, Scalar> = HashMap::new();
    for ((key, da, db), num) in by_den {
        if num.is_zero() {
            continue;
        }
        let den = den_cache
            .entry((da, db))
            .or_insert_with(|| xi.dens[da as usize] * yi.dens[db as usize]);
        let s = Scalar::from_parts(num, den.clone()).expect("denominators are nonzero");
        let slot = out.entry(key).or_default();
        *slot = &*slot + &s;
    }
    out.retain(|_, v| !v.is_zero());
    out
}
