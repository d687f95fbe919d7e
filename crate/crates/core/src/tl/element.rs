use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use rand::seq::index::sample;
use rand::Rng;

use super::bilinear::{accumulate, Term};
use super::words::reduced_word;
use super::{basis, TLDiagram};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A finite `Q(q)`-linear combination of diagrams of one size.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TLElement {
    size: usize,
    terms: BTreeMap<TLDiagram, Scalar>,
}

impl TLElement {
    pub fn zero(m: usize) -> Self {
        Self {
            size: m,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(m: usize) -> Self {
        Self::from_diagram(TLDiagram::identity(m))
    }

    pub fn generator(m: usize, i: usize) -> Result<Self> {
        Ok(Self::from_diagram(TLDiagram::generator(m, i)?))
    }

    pub fn from_diagram(d: TLDiagram) -> Self {
        let size = d.size();
        let mut terms = BTreeMap::new();
        terms.insert(d, Scalar::one());
        Self { size, terms }
    }

    /// Builds an element from `(diagram, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(m: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (TLDiagram, Scalar)>,
    {
        let mut out = Self::zero(m);
        for (d, c) in terms {
            if d.size() != m {
                return Err(Error::SizeMismatch {
                    left: m,
                    right: d.size(),
                });
            }
            out.add_term(d, &c);
        }
        Ok(out)
    }

    fn add_term(&mut self, d: TLDiagram, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c.clone());
            }
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn terms(&self) -> &BTreeMap<TLDiagram, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &TLDiagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    /// Coefficient of the identity diagram.
    pub fn identity_coeff(&self) -> Scalar {
        self.coeff(&TLDiagram::identity(self.size))
    }

    pub(crate) fn term_refs(&self) -> Vec<Term<'_, TLDiagram>> {
        self.terms.iter().collect()
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(Error::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.size);
        }
        Self {
            size: self.size,
            terms: self.terms.iter().map(|(d, v)| (d.clone(), v * c)).collect(),
        }
    }

    /// Algebra product: `self` stacked above `other`, each closed loop
    /// contributing a factor `delta`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let sums = accumulate(&self.term_refs(), &other.term_refs(), |a, b| {
            let (d, loops) = a.compose(b).expect("sizes checked");
            [(d, loops)]
        });
        Ok(Self {
            size: self.size,
            terms: sums.into_iter().collect(),
        })
    }

    /// `self * e_i`.
    pub fn mul_generator_right(&self, i: usize) -> Result<Self> {
        self.multiply(&Self::generator(self.size, i)?)
    }

    /// `e_i * self`.
    pub fn mul_generator_left(&self, i: usize) -> Result<Self> {
        Self::generator(self.size, i)?.multiply(self)
    }

    /// Product computed as `sum_d y_d * (x * w_1 * w_2 * ...)` where
    /// `w_1 w_2 ...` is a reduced generator word for `d`. Words sharing a
    /// prefix share the partial products, and a vanishing partial product
    /// prunes its whole subtree, which makes this the fast route whenever
    /// `self` is annihilated by generators.
    pub fn multiply_via_words(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut items: Vec<(Vec<u8>, &Scalar)> = other
            .terms
            .iter()
            .map(|(d, c)| (reduced_word(d), c))
            .collect();
        items.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = Self::zero(self.size);
        word_tree(self, 0, &items, &mut out)?;
        Ok(out)
    }

    /// Top-bottom reflection; coefficients are real so they are unchanged.
    pub fn adjoint(&self) -> Self {
        Self {
            size: self.size,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (d.adjoint(), c.clone()))
                .collect(),
        }
    }

    /// Unnormalized Markov trace: close on the right, each loop is `delta`.
    pub fn markov_trace(&self) -> Scalar {
        let mut by_loops: BTreeMap<u32, Vec<&Scalar>> = BTreeMap::new();
        for (d, c) in &self.terms {
            by_loops.entry(d.markov_loops()).or_default().push(c);
        }
        let parts: Vec<Scalar> = by_loops
            .into_iter()
            .map(|(l, cs)| Scalar::sum(cs).mul_laurent(Scalar::delta_pow(l).numerator()))
            .collect();
        Scalar::sum(&parts)
    }

    /// `<x, y> = tr(y^* x)`.
    pub fn inner(&self, other: &Self) -> Result<Scalar> {
        self.check_size(other)?;
        let sums = accumulate(&self.term_refs(), &other.term_refs(), |x, y| {
            let (d, loops) = y.adjoint().compose(x).expect("sizes checked");
            [((), loops + d.markov_loops())]
        });
        Ok(sums.get(&()).cloned().unwrap_or_default())
    }

    pub fn pad_through(&self, target: usize) -> Result<Self> {
        self.map_diagrams(target, |d| d.pad_through(target))
    }

    pub fn pad_caps(&self, target: usize) -> Result<Self> {
        self.map_diagrams(target, |d| d.pad_caps(target))
    }

    fn map_diagrams(
        &self,
        target: usize,
        f: impl Fn(&TLDiagram) -> Result<TLDiagram>,
    ) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (d, c) in &self.terms {
            terms.insert(f(d)?, c.clone());
        }
        if self.terms.is_empty() && target < self.size {
            return Err(Error::SizeMismatch {
                left: self.size,
                right: target,
            });
        }
        Ok(Self {
            size: target,
            terms,
        })
    }

    /// Random element: `1..=max_terms` distinct uniformly chosen diagrams
    /// with nonzero integer coefficients in `[-3, 3]`.
    pub fn random<R: Rng + ?Sized>(m: usize, max_terms: usize, rng: &mut R) -> Self {
        let b = basis(m);
        let k = rng.gen_range(1..=max_terms.min(b.len()).max(1));
        let mut out = Self::zero(m);
        for idx in sample(rng, b.len(), k) {
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-3i64..=3);
            }
            out.add_term(b.diagrams()[idx].clone(), &Scalar::from_int(c));
        }
        out
    }

    pub fn from_scalar(m: usize, c: Scalar) -> Self {
        Self::identity(m).scale(&c)
    }
}

/// Terms as coefficient times a reduced word, e.g. `e_1*e_2 - q*id_3`; the
/// output parses back in the expression language.
impl fmt::Display for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            let word = reduced_word(d);
            let body = if word.is_empty() {
                format!("id_{}", self.size)
            } else {
                word.iter().map(|i| format!("e_{i}")).collect::<Vec<_>>().join("*")
            };
            let monomial = c.is_laurent() && c.numerator().terms().count() == 1;
            let text = if c.is_one() {
                body
            } else if (-c).is_one() {
                format!("-{body}")
            } else if monomial {
                format!("{c}*{body}")
            } else {
                format!("({c})*{body}")
            };
            match (k, text.strip_prefix('-')) {
                (0, _) => write!(f, "{text}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

fn word_tree(
    z: &TLElement,
    depth: usize,
    items: &[(Vec<u8>, &Scalar)],
    out: &mut TLElement,
) -> Result<()> {
    let mut rest = items;
    while let Some((w, c)) = rest.first() {
        if w.len() != depth {
            break;
        }
        *out = out.try_add(&z.scale(c))?;
        rest = &rest[1..];
    }
    while let Some((w, _)) = rest.first() {
        let letter = w[depth];
        let split = rest
            .iter()
            .position(|(v, _)| v[depth] != letter)
            .unwrap_or(rest.len());
        let next = z.mul_generator_right(letter as usize)?;
        if !next.is_zero() {
            word_tree(&next, depth + 1, &rest[..split], out)?;
        }
        rest = &rest[split..];
    }
    Ok(())
}

impl Add for &TLElement {
    type Output = TLElement;
    /// Panics on size mismatch; use [`TLElement::try_add`] to get an error.
    fn add(self, rhs: &TLElement) -> TLElement {
        self.try_add(rhs).expect("TL sizes must agree")
    }
}

impl Sub for &TLElement {
    type Output = TLElement;
    fn sub(self, rhs: &TLElement) -> TLElement {
        self.try_sub(rhs).expect("TL sizes must agree")
    }
}

impl Neg for &TLElement {
    type Output = TLElement;
    fn neg(self) -> TLElement {
        TLElement {
            size: self.size,
            terms: self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(m: usize, i: usize) -> TLElement {
        TLElement::generator(m, i).unwrap()
    }

    fn d() -> Scalar {
        Scalar::delta()
    }

    #[test]
    fn tl_relations() {
        for m in 2..=5 {
            for i in 1..m {
                let ei = e(m, i);
                assert_eq!(ei.multiply(&ei).unwrap(), ei.scale(&d()));
                for j in 1..m {
                    let ej = e(m, j);
                    if i.abs_diff(j) == 1 {
                        let p = ei.multiply(&ej).unwrap().multiply(&ei).unwrap();
                        assert_eq!(p, ei);
                    } else if i.abs_diff(j) >= 2 {
                        assert_eq!(ei.multiply(&ej).unwrap(), ej.multiply(&ei).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn p2_kills_e1() {
        let one = TLElement::identity(2);
        let p2 = &one - &e(2, 1).scale(&d().inv().unwrap());
        assert!(p2.multiply(&e(2, 1)).unwrap().is_zero());
        assert_eq!(TLElement::identity(3).multiply(&e(3, 2)).unwrap(), e(3, 2));
    }

    #[test]
    fn traces() {
        for m in 0..=4 {
            assert_eq!(
                TLElement::identity(m).markov_trace(),
                Scalar::delta_pow(m as u32)
            );
        }
        assert_eq!(e(2, 1).markov_trace(), d());
        assert_eq!(e(2, 1).inner(&e(2, 1)).unwrap(), Scalar::delta_pow(2));
        let one = TLElement::identity(2);
        let p2 = &one - &e(2, 1).scale(&d().inv().unwrap());
        let three = crate::scalar::qint(3).unwrap();
        assert_eq!(p2.markov_trace(), three);
        assert_eq!(p2.inner(&p2).unwrap(), three);
    }

    #[test]
    fn size_mismatch_errors() {
        assert!(e(3, 1).multiply(&e(2, 1)).is_err());
        assert!(e(3, 1).inner(&e(2, 1)).is_err());
        assert!(e(3, 1).try_add(&e(2, 1)).is_err());
    }

    #[test]
    fn randomized_algebra_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for round in 0..100 {
            let m = 1 + round % 5;
            let x = TLElement::random(m, 4, &mut rng);
            let y = TLElement::random(m, 4, &mut rng);
            let z = TLElement::random(m, 4, &mut rng);
            let xy = x.multiply(&y).unwrap();
            assert_eq!(xy.multiply(&z).unwrap(), x.multiply(&y.multiply(&z).unwrap()).unwrap());
            assert_eq!(xy.markov_trace(), y.multiply(&x).unwrap().markov_trace());
            assert_eq!(xy.adjoint(), y.adjoint().multiply(&x.adjoint()).unwrap());
            assert_eq!(x.adjoint().adjoint(), x);
            assert_eq!(x.multiply_via_words(&y).unwrap(), xy);
            assert_eq!(TLElement::identity(m).multiply(&x).unwrap(), x);
        }
    }

    #[test]
    fn inner_is_positive_at_q_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for round in 0..40 {
            let m = 1 + round % 4;
            let x = TLElement::random(m, 5, &mut rng);
            let v = x.inner(&x).unwrap().eval(2.0).unwrap();
            assert!(v > 0.0, "{x:?} has <x,x> = {v}");
        }
    }

    #[test]
    fn adjoint_fixes_generators() {
        for m in 2..=4 {
            for i in 1..m {
                assert_eq!(e(m, i).adjoint(), e(m, i));
            }
            assert_eq!(TLElement::identity(m).adjoint(), TLElement::identity(m));
        }
    }
}
