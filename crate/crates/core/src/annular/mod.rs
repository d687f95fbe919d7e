//! Lowest-weight-zero annular modules `V(t)_n`.
//!
//! A basis vector of `V(t)_n` is a non-crossing matching of the `2n` outer
//! points together with the face of the matching that holds the inner hole.
//! Gaps are numbered like points: gap `k` lies between points `k` and
//! `k + 1 (mod 2n)`. Faces are indexed in the order of [`matching::faces`].
//!
//! Contractible loops weigh `delta`, loops around a hole weigh `t`.

mod gram;
mod spectrum;
mod tangle;
mod trace;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

pub use gram::{disc_pairing, gram_entry, gram_matrix, gram_matrix_capped, gram_to_json, loop_weight, DEFAULT_GRAM_CAP};
pub use spectrum::{gram_numeric, is_psd, psd_sweep, spectra_csv, spectrum, SpectrumRow, PSD_TOL};
pub use tangle::{action_matrix, adjoint_law_holds, elementary_tangles, rotation_period, AnnularTangle};
pub use trace::annular_trace;

use crate::error::{Error, Result};
use crate::matching;
use crate::scalar::{Scalar, TPoly};

/// Closed loops of a gluing, split by whether they wind around a hole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct LoopWeight {
    pub contractible: u32,
    pub noncontractible: u32,
}

impl LoopWeight {
    /// `delta^c t^nc` as a polynomial in `t`.
    pub fn symbolic(&self) -> TPoly {
        TPoly::monomial(self.noncontractible as usize, Scalar::delta_pow(self.contractible))
    }

    pub fn numeric(&self, delta: f64, t: f64) -> f64 {
        delta.powi(self.contractible as i32) * t.powi(self.noncontractible as i32)
    }

    pub fn total(&self) -> u32 {
        self.contractible + self.noncontractible
    }

    fn add_loop(&mut self, around_hole: bool) {
        if around_hole {
            self.noncontractible += 1;
        } else {
            self.contractible += 1;
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnnularDiagram {
    matching: Vec<u8>,
    hole_face: usize,
}

impl AnnularDiagram {
    pub fn new(matching: Vec<u8>, hole_face: usize) -> Result<Self> {
        matching::validate(&matching)?;
        let n = matching.len() / 2;
        let faces = if n == 0 { 1 } else { n + 1 };
        if hole_face >= faces {
            return Err(Error::IndexOutOfRange {
                index: hole_face,
                bound: faces,
            });
        }
        Ok(Self {
            matching,
            hole_face,
        })
    }

    /// The diagram whose hole lies in the face containing gap `g`.
    pub(crate) fn with_hole_gap(matching: Vec<u8>, g: usize) -> Self {
        let hole_face = if matching.is_empty() {
            0
        } else {
            matching::face_of_gap(&matching, g)
        };
        Self {
            matching,
            hole_face,
        }
    }

    /// The unit vector `xi` spanning `V(t)_0`.
    pub fn empty() -> Self {
        Self {
            matching: Vec::new(),
            hole_face: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.matching.len() / 2
    }

    pub fn matching(&self) -> &[u8] {
        &self.matching
    }

    pub fn hole_face(&self) -> usize {
        self.hole_face
    }

    /// Gaps of the face holding the hole; empty for `n = 0`.
    pub fn hole_gaps(&self) -> Vec<usize> {
        matching::faces(&self.matching).swap_remove(self.hole_face)
    }
}

impl fmt::Debug for AnnularDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Annular{:?}@{}", self.matching, self.hole_face)
    }
}

const MAX_CACHED_N: usize = 6;
static BASES: [OnceLock<Vec<AnnularDiagram>>; MAX_CACHED_N + 1] =
    [const { OnceLock::new() }; MAX_CACHED_N + 1];

/// All `(matching, hole face)` pairs on `2n` points: matchings in
/// [`matching::enumerate`] order, faces in increasing index. There are
/// `binom(2n, n)` of them.
pub fn enumerate_annular_basis(n: usize) -> Vec<AnnularDiagram> {
    if n <= MAX_CACHED_N {
        return BASES[n].get_or_init(|| build_basis(n)).clone();
    }
    build_basis(n)
}

pub(crate) fn annular_basis(n: usize) -> &'static [AnnularDiagram] {
    assert!(n <= MAX_CACHED_N, "annular basis cache holds n <= {MAX_CACHED_N}");
    BASES[n].get_or_init(|| build_basis(n))
}

fn build_basis(n: usize) -> Vec<AnnularDiagram> {
    let faces = if n == 0 { 1 } else { n + 1 };
    matching::enumerate(n)
        .into_iter()
        .flat_map(|m| (0..faces).map(move |f| AnnularDiagram { matching: m.clone(), hole_face: f }))
        .collect()
}

/// A finite combination of annular diagrams with coefficients in `Q(q)[t]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AnnularVector {
    n: usize,
    terms: BTreeMap<AnnularDiagram, TPoly>,
}

impl AnnularVector {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: AnnularDiagram) -> Self {
        let mut v = Self::zero(d.n());
        v.terms.insert(d, TPoly::one());
        v
    }

    /// `xi(t)`, the lowest weight vector.
    pub fn xi() -> Self {
        Self::from_diagram(AnnularDiagram::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<AnnularDiagram, TPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &AnnularDiagram) -> TPoly {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, d: AnnularDiagram, c: &TPoly) -> Result<()> {
        if d.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: d.n(),
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        let v = self.terms.entry(d.clone()).or_default();
        *v = &*v + c;
        if v.is_zero() {
            self.terms.remove(&d);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &TPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (d, v) in &self.terms {
            out.add_term(d.clone(), &(v * c)).expect("same level");
        }
        out
    }

    /// `<self, other>` through the Gram pairing; bilinear in the
    /// coefficients since they are real.
    pub fn inner(&self, other: &Self) -> Result<TPoly> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut acc = TPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let w = loop_weight(a, b)?.symbolic();
                acc = &acc + &(&(x * y) * &w);
            }
        }
        Ok(acc)
    }
}
