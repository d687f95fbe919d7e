use std::collections::BTreeMap;

use super::glue::{box_gluing, Side};
use super::BoxElement;
use crate::annular::{AnnularDiagram, AnnularVector, LoopWeight};
use crate::error::{Error, Result};
use crate::matching;
use crate::scalar::TPoly;

/// A vector of `⊕ H_(i,j)` truncated at `i + j <= n_max`, where `H_(i,j)` is a
/// copy of `V(t)_(i+j)` whose outer points split into `2i` top and `2j`
/// bottom points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleVector {
    n_max: usize,
    components: BTreeMap<(usize, usize), AnnularVector>,
}

impl ModuleVector {
    pub fn zero(n_max: usize) -> Self {
        Self {
            n_max,
            components: BTreeMap::new(),
        }
    }

    /// The unit vector of `H_(0,0)`.
    pub fn xi(n_max: usize) -> Self {
        let mut v = Self::zero(n_max);
        v.components.insert((0, 0), AnnularVector::xi());
        v
    }

    pub fn component(n_max: usize, i: usize, j: usize, v: AnnularVector) -> Result<Self> {
        if v.n() != i + j {
            return Err(Error::SizeMismatch {
                left: i + j,
                right: v.n(),
            });
        }
        if i + j > n_max {
            return Err(Error::TruncationOverflow {
                n_max,
                overflow: vec![(i, j)],
            });
        }
        let mut out = Self::zero(n_max);
        if !v.is_zero() {
            out.components.insert((i, j), v);
        }
        Ok(out)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn components(&self) -> &BTreeMap<(usize, usize), AnnularVector> {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Distinct `H_(i,j)` are orthogonal.
    pub fn inner(&self, other: &Self) -> Result<TPoly> {
        let mut acc = TPoly::zero();
        for (k, v) in &self.components {
            if let Some(w) = other.components.get(k) {
                acc = &acc + &v.inner(w)?;
            }
        }
        Ok(acc)
    }

    fn add_term(&mut self, key: (usize, usize), d: AnnularDiagram, c: &TPoly) {
        let entry = self
            .components
            .entry(key)
            .or_insert_with(|| AnnularVector::zero(key.0 + key.1));
        entry.add_term(d, c).expect("weights agree");
        if entry.is_zero() {
            self.components.remove(&key);
        }
    }
}

/// Face of `pairing` holding the hole, given the parity with which each
/// strand crosses a ray from the hole out through gap `exit`.
fn hole_face(pairing: &[u8], parity: &[bool], exit: usize) -> usize {
    if pairing.is_empty() {
        return 0;
    }
    matching::faces(pairing)
        .iter()
        .position(|f| {
            (0..pairing.len()).all(|r| matching::separates(pairing, r, f[0], exit) == parity[r])
        })
        .expect("ray parities determine a face")
}

fn act(x: &BoxElement, v: &ModuleVector, box_on_left: bool) -> Result<ModuleVector> {
    let mut out = ModuleVector::zero(v.n_max);
    let mut overflow = Vec::new();
    for (&(n, m), xe) in x.components() {
        for (&(i, j), ve) in &v.components {
            for (dx, cx) in xe.terms() {
                for (ann, cv) in ve.terms() {
                    let coeff = cv.scale(cx);
                    let len = ann.matching().len();
                    let hole = ann.hole_gaps().first().copied().unwrap_or(0);
                    // the ray leaves the vector's disc on the side away from the box
                    let ray_gap = if box_on_left { (2 * i + len).saturating_sub(1) % len.max(1) } else { len.saturating_sub(1) };
                    let vec_side = if box_on_left { Side::Right } else { Side::Left };
                    for a in 0..=(2 * n).min(2 * i) {
                        for b in 0..=(2 * m).min(2 * j) {
                            let key = (n + i - a, m + j - b);
                            if key.0 + key.1 > v.n_max {
                                if !overflow.contains(&key) {
                                    overflow.push(key);
                                }
                                continue;
                            }
                            let g = if box_on_left {
                                box_gluing(dx.pairing(), n, ann.matching(), i, a, b)
                            } else {
                                box_gluing(ann.matching(), i, dx.pairing(), n, a, b)
                            };
                            let glued = g.run(|s, p| {
                                s == vec_side && matching::separates(ann.matching(), p, hole, ray_gap)
                            });
                            let out_len = glued.pairing.len();
                            let exit = if out_len == 0 {
                                0
                            } else if box_on_left {
                                (2 * key.0 + out_len - 1) % out_len
                            } else {
                                out_len - 1
                            };
                            let face = hole_face(&glued.pairing, &glued.parity, exit);
                            let mut w = LoopWeight::default();
                            for &odd in &glued.loops {
                                if odd {
                                    w.noncontractible += 1;
                                } else {
                                    w.contractible += 1;
                                }
                            }
                            let d = AnnularDiagram::new(glued.pairing, face)?;
                            out.add_term(key, d, &(&coeff * &w.symbolic()));
                        }
                    }
                }
            }
        }
    }
    if !overflow.is_empty() {
        overflow.sort_unstable();
        return Err(Error::TruncationOverflow {
            n_max: v.n_max,
            overflow,
        });
    }
    Ok(out)
}

/// `pi_0(x) v`: `x` glued to the left of `v`.
pub fn pi0_act_left(x: &BoxElement, v: &ModuleVector) -> Result<ModuleVector> {
    act(x, v, true)
}

/// `v · x`: `x` glued to the right of `v`.
pub fn pi0_act_right(x: &BoxElement, v: &ModuleVector) -> Result<ModuleVector> {
    act(x, v, false)
}
