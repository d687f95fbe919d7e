//! The degree-zero symmetric enveloping algebra `⊕ D(n,m)` over
//! Temperley-Lieb-Jones, and its action on `⊕ H_(i,j)`.
//!
//! An element of `D(n,m)` is a [`TLElement`] of size `n + m`: its first `2n`
//! circular points form the top edge (left to right) and the remaining `2m`
//! the bottom edge (right to left). The product `x ⋆ y` places `x` to the
//! left of `y` and sums over every number `a` of top strands and `b` of
//! bottom strands joined across the seam, innermost first. Closed loops
//! weigh `delta`.

mod glue;
mod module;

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

pub use module::{pi0_act_left, pi0_act_right, ModuleVector};

use crate::error::{Error, Result};
use crate::jones_wenzl::jones_wenzl;
use crate::matching;
use crate::scalar::Scalar;
use crate::tl::{accumulate, basis, TLDiagram, TLElement};
use glue::box_gluing;

/// Largest `n` accepted by [`embed_jw`].
pub const EMBED_JW_CAP: usize = 4;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BoxElement {
    components: BTreeMap<(usize, usize), TLElement>,
}

impl BoxElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty diagram in `D(0,0)`.
    pub fn unit() -> Self {
        Self::component(0, 0, TLElement::identity(0)).expect("sizes agree")
    }

    /// `x` placed in `D(n,m)`.
    pub fn component(n: usize, m: usize, x: TLElement) -> Result<Self> {
        if x.size() != n + m {
            return Err(Error::SizeMismatch {
                left: n + m,
                right: x.size(),
            });
        }
        let mut components = BTreeMap::new();
        if !x.is_zero() {
            components.insert((n, m), x);
        }
        Ok(Self { components })
    }

    /// `x ⊗ y^op`: the top edge carries the matching `top` on `2n` points, the
    /// bottom edge the matching `bottom` on `2m` points, nothing crosses.
    pub fn split(top: &[u8], bottom: &[u8]) -> Result<Self> {
        matching::validate(top)?;
        matching::validate(bottom)?;
        let off = top.len();
        let mut pairing: Vec<u8> = top.to_vec();
        pairing.extend(bottom.iter().map(|&p| p + off as u8));
        let d = TLDiagram::new(pairing)?;
        Self::component(top.len() / 2, bottom.len() / 2, TLElement::from_diagram(d))
    }

    pub fn components(&self) -> &BTreeMap<(usize, usize), TLElement> {
        &self.components
    }

    pub fn get(&self, n: usize, m: usize) -> Option<&TLElement> {
        self.components.get(&(n, m))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Largest `n + m` in the support.
    pub fn degree(&self) -> usize {
        self.components.keys().map(|(n, m)| n + m).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, x) in &other.components {
            out.add_component(*k, x);
        }
        out
    }

    fn add_component(&mut self, k: (usize, usize), x: &TLElement) {
        let sum = match self.components.get(&k) {
            Some(y) => y.try_add(x).expect("component sizes agree"),
            None => x.clone(),
        };
        if sum.is_zero() {
            self.components.remove(&k);
        } else {
            self.components.insert(k, sum);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.components {
            out.add_component(*k, &x.scale(c));
        }
        out
    }

    /// Left-right mirror image; coefficients are real.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zero();
        for (&(n, m), x) in &self.components {
            let terms = x.terms().iter().map(|(d, c)| (mirror(d, n, m), c.clone()));
            out.add_component((n, m), &TLElement::from_terms(n + m, terms).expect("same size"));
        }
        out
    }

    /// Coefficient of the empty diagram of `D(0,0)`.
    pub fn tau(&self) -> Scalar {
        self.get(0, 0)
            .map(|x| x.coeff(&TLDiagram::identity(0)))
            .unwrap_or_default()
    }

    /// `self ⋆ other`.
    pub fn mul(&self, other: &Self) -> Self {
        bacher_mul(self, other)
    }

    /// Random element supported on `1..=max_components` components of degree
    /// at most `max_degree`, each a random element with up to three terms.
    pub fn random<R: Rng + ?Sized>(max_degree: usize, max_components: usize, rng: &mut R) -> Self {
        let keys: Vec<(usize, usize)> = (0..=max_degree)
            .flat_map(|d| (0..=d).map(move |n| (n, d - n)))
            .collect();
        let k = rng.gen_range(1..=max_components.max(1));
        let mut out = Self::zero();
        for _ in 0..k {
            let (n, m) = keys[rng.gen_range(0..keys.len())];
            out.add_component((n, m), &TLElement::random(n + m, 3, rng));
        }
        out
    }

    /// Random sum of `1..=max_terms` split boxes (top cups times bottom caps,
    /// no through strands) of degree at most `max_degree`, with coefficients
    /// in `1..=3`.
    pub fn random_split<R: Rng + ?Sized>(max_degree: usize, max_terms: usize, rng: &mut R) -> Self {
        let mut out = Self::zero();
        for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
            let d = rng.gen_range(0..=max_degree);
            let n = rng.gen_range(0..=d);
            let top = matching::enumerate(n);
            let bottom = matching::enumerate(d - n);
            let s = Self::split(&top[rng.gen_range(0..top.len())], &bottom[rng.gen_range(0..bottom.len())])
                .expect("enumerated matchings are planar");
            out = out.add(&s.scale(&Scalar::from_int(rng.gen_range(1..=3))));
        }
        out
    }
}

fn mirror(d: &TLDiagram, n: usize, m: usize) -> TLDiagram {
    let f = |a: usize| {
        if a < 2 * n {
            2 * n - 1 - a
        } else {
            4 * n + 2 * m - 1 - a
        }
    };
    let mut out = vec![0u8; d.pairing().len()];
    for (p, &r) in d.pairing().iter().enumerate() {
        out[f(p)] = f(r as usize) as u8;
    }
    TLDiagram::new(out).expect("mirror of a planar diagram is planar")
}

/// The Bacher product.
pub fn bacher_mul(x: &BoxElement, y: &BoxElement) -> BoxElement {
    let mut out = BoxElement::zero();
    for (&(n, m), xe) in &x.components {
        for (&(i, j), ye) in &y.components {
            let sums = accumulate(&xe.term_refs(), &ye.term_refs(), |dx, dy| {
                let mut terms = Vec::new();
                for a in 0..=(2 * n).min(2 * i) {
                    for b in 0..=(2 * m).min(2 * j) {
                        let g = box_gluing(dx.pairing(), n, dy.pairing(), i, a, b).run(|_, _| false);
                        let key = (n + i - a, m + j - b);
                        terms.push(((key, g.pairing), g.loops.len() as u32));
                    }
                }
                terms
            });
            let mut grouped: HashMap<(usize, usize), Vec<(TLDiagram, Scalar)>> = HashMap::new();
            for ((key, pairing), c) in sums {
                let d = TLDiagram::new(pairing).expect("gluing is planar");
                grouped.entry(key).or_default().push((d, c));
            }
            for ((a, b), terms) in grouped {
                let e = TLElement::from_terms(a + b, terms).expect("sizes agree");
                out.add_component((a, b), &e);
            }
        }
    }
    out
}

/// `p_(2n)` placed in `D(n,n)`; `embed_jw(0)` is the unit.
pub fn embed_jw(n: usize) -> Result<BoxElement> {
    if n > EMBED_JW_CAP {
        return Err(Error::ResourceCap {
            what: "embedded Jones-Wenzl n",
            requested: n,
            cap: EMBED_JW_CAP,
        });
    }
    if n == 0 {
        return Ok(BoxElement::unit());
    }
    BoxElement::component(n, n, jones_wenzl(2 * n)?)
}

/// Every single diagram of every `D(n,m)` with `n + m <= max_degree`.
pub fn basis_boxes(max_degree: usize) -> Vec<BoxElement> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        for n in (0..=d).rev() {
            let m = d - n;
            for diagram in basis(d).diagrams() {
                let x = TLElement::from_diagram(diagram.clone());
                out.push(BoxElement::component(n, m, x).expect("sizes agree"));
            }
        }
    }
    out
}

/// `[tau(b_i^† ⋆ b_j)]` over [`basis_boxes`].
pub fn tau_gram(max_degree: usize) -> Vec<Vec<Scalar>> {
    let b = basis_boxes(max_degree);
    b.iter()
        .map(|x| {
            let xd = x.dagger();
            b.iter().map(|y| xd.mul(y).tau()).collect()
        })
        .collect()
}

struct ComponentJson<'a> {
    n: usize,
    m: usize,
    element: &'a TLElement,
}

impl Serialize for ComponentJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("m", &self.m)?;
        map.serialize_entry("element", self.element)?;
        map.end()
    }
}

impl Serialize for BoxElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let comps: Vec<ComponentJson> = self
            .components
            .iter()
            .map(|(&(n, m), element)| ComponentJson { n, m, element })
            .collect();
        let mut map = s.serialize_map(Some(1))?;
        map.serialize_entry("components", &comps)?;
        map.end()
    }
}

#[derive(Serialize)]
pub struct ProductRow {
    pub x: BoxElement,
    pub y: BoxElement,
    pub product: BoxElement,
}

/// Products of all pairs of basis boxes whose degrees sum to at most
/// `max_degree`.
pub fn multiplication_table(max_degree: usize) -> Vec<ProductRow> {
    let b = basis_boxes(max_degree);
    let mut rows = Vec::new();
    for x in &b {
        for y in &b {
            if x.degree() + y.degree() <= max_degree {
                rows.push(ProductRow {
                    x: x.clone(),
                    y: y.clone(),
                    product: x.mul(y),
                });
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x = BoxElement::random(2, 3, &mut rng);
            assert_eq!(BoxElement::unit().mul(&x), x);
            assert_eq!(x.mul(&BoxElement::unit()), x);
        }
        assert_eq!(BoxElement::unit().dagger(), BoxElement::unit());
        assert_eq!(BoxElement::unit().tau(), Scalar::one());
    }

    #[test]
    fn associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..25 {
            let x = BoxElement::random(2, 2, &mut rng);
            let y = BoxElement::random(2, 2, &mut rng);
            let z = BoxElement::random(2, 2, &mut rng);
            assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        }
    }

    #[test]
    fn traciality_and_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = BoxElement::random(2, 2, &mut rng);
            let y = BoxElement::random(2, 2, &mut rng);
            assert_eq!(x.mul(&y).tau(), y.mul(&x).tau());
            assert_eq!(x.mul(&y).dagger(), y.dagger().mul(&x.dagger()));
            assert_eq!(x.dagger().dagger(), x);
        }
    }

    #[test]
    fn tau_vanishes_off_degree_zero() {
        for n in 1..=3 {
            assert!(embed_jw(n).unwrap().tau().is_zero());
        }
        assert_eq!(embed_jw(0).unwrap(), BoxElement::unit());
        assert!(matches!(embed_jw(5), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn state_is_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let q = crate::scalar::NumericParams::at_delta(2.5).unwrap().q;
        for _ in 0..50 {
            let x = BoxElement::random(2, 3, &mut rng);
            let v = x.dagger().mul(&x).tau().eval(q).unwrap();
            assert!(v >= -1e-9, "{v}");
        }
    }

    #[test]
    fn tau_gram_is_psd() {
        use nalgebra::{DMatrix, SymmetricEigen};
        let g = tau_gram(2);
        let q = crate::scalar::NumericParams::at_delta(2.5).unwrap().q;
        let dim = g.len();
        assert_eq!(dim, 1 + 2 + 6);
        let m = DMatrix::from_fn(dim, dim, |i, j| g[i][j].eval(q).unwrap());
        for i in 0..dim {
            assert!(m[(i, i)] > 0.0);
        }
        let ev = SymmetricEigen::new(m).eigenvalues;
        assert!(ev.iter().all(|&e| e >= -1e-9), "{ev}");
    }

    #[test]
    fn split_elements() {
        let s = BoxElement::split(&[1, 0], &[]).unwrap();
        assert_eq!(s.components().keys().collect::<Vec<_>>(), vec![&(1, 0)]);
        assert!(BoxElement::split(&[2, 3, 0, 1], &[]).is_err());
    }

    #[test]
    fn degree_one_products() {
        // the single strand of D(1,0) times itself: no join, one join, two joins
        let x = BoxElement::split(&[1, 0], &[]).unwrap();
        let p = x.mul(&x);
        assert_eq!(p.components().len(), 3);
        assert_eq!(p.tau(), Scalar::delta());
    }
}
