//! Elementary annular tangles.
//!
//! Index conventions on `V(t)_n` (outer points `0..2n`):
//! - `Cap(i)` joins outer points `i` and `i + 1 (mod 2n)` outside the disc,
//!   landing in `V(t)_(n-1)`;
//! - `Cup(i)` inserts two new adjacent points at positions `i` and
//!   `i + 1 (mod 2n + 2)` of the output, joined by an arc, landing in
//!   `V(t)_(n+1)`;
//! - `Rotate` moves every point and gap one step forward (`k -> k + 1`).
//!
//! Surviving points keep their cyclic order and are relabelled by rank.

use super::{annular_basis, gram_matrix, AnnularDiagram, AnnularVector, LoopWeight};
use crate::error::{Error, Result};
use crate::scalar::TPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnnularTangle {
    Identity,
    Cap(usize),
    Cup(usize),
    Rotate,
    RotateInverse,
}

impl AnnularTangle {
    /// Reflection across the middle circle.
    pub fn adjoint(self) -> Self {
        match self {
            Self::Identity => Self::Identity,
            Self::Cap(i) => Self::Cup(i),
            Self::Cup(i) => Self::Cap(i),
            Self::Rotate => Self::RotateInverse,
            Self::RotateInverse => Self::Rotate,
        }
    }

    /// Output weight for input weight `n`.
    pub fn target(self, n: usize) -> Result<usize> {
        match self {
            Self::Cap(i) => {
                if n == 0 || i >= 2 * n {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        bound: 2 * n,
                    });
                }
                Ok(n - 1)
            }
            Self::Cup(i) => {
                if i >= 2 * n + 2 {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        bound: 2 * n + 2,
                    });
                }
                Ok(n + 1)
            }
            _ => Ok(n),
        }
    }

    /// Image of a single basis diagram together with the weight of the
    /// loops closed off.
    pub fn apply_diagram(self, d: &AnnularDiagram) -> Result<(AnnularDiagram, LoopWeight)> {
        self.target(d.n())?;
        Ok(match self {
            Self::Identity => (d.clone(), LoopWeight::default()),
            Self::Cap(i) => cap(i, d),
            Self::Cup(i) => (cup(i, d), LoopWeight::default()),
            Self::Rotate => (rotate(d, 1), LoopWeight::default()),
            Self::RotateInverse => {
                let len = d.matching().len();
                (rotate(d, len.saturating_sub(1)), LoopWeight::default())
            }
        })
    }

    pub fn apply(self, v: &AnnularVector) -> Result<AnnularVector> {
        let mut out = AnnularVector::zero(self.target(v.n())?);
        for (d, c) in v.terms() {
            let (img, w) = self.apply_diagram(d)?;
            out.add_term(img, &(c * &w.symbolic()))?;
        }
        Ok(out)
    }
}

fn cap(i: usize, d: &AnnularDiagram) -> (AnnularDiagram, LoopWeight) {
    let len = d.matching().len();
    let j = (i + 1) % len;
    let m = d.matching();
    let rank = relabel_removing(len, i, j);
    let mut out = vec![0u8; len - 2];
    for p in 0..len {
        if p == i || p == j {
            continue;
        }
        let r = m[p] as usize;
        let r = if r == i {
            m[j] as usize
        } else if r == j {
            m[i] as usize
        } else {
            r
        };
        out[rank[p]] = rank[r] as u8;
    }
    let hole = d.hole_gaps();
    let mut w = LoopWeight::default();
    let closes_loop = m[i] as usize == j;
    let around_hole = closes_loop && hole == [i];
    if closes_loop {
        w.add_loop(around_hole);
    }
    if out.is_empty() {
        return (AnnularDiagram::empty(), w);
    }
    // gap i vanishes; gap j merges into the gap after point i - 1
    let prev = (i + len - 1) % len;
    let new_gap = |g: usize| if g == j { rank[prev] } else { rank[g] };
    let g = if around_hole {
        rank[prev]
    } else {
        new_gap(*hole.iter().find(|&&g| g != i).expect("face has another gap"))
    };
    (AnnularDiagram::with_hole_gap(out, g), w)
}

/// Rank of each point after deleting points `i` and `j`.
fn relabel_removing(len: usize, i: usize, j: usize) -> Vec<usize> {
    let mut rank = vec![usize::MAX; len];
    let mut k = 0;
    for (p, r) in rank.iter_mut().enumerate() {
        if p != i && p != j {
            *r = k;
            k += 1;
        }
    }
    rank
}

fn cup(i: usize, d: &AnnularDiagram) -> AnnularDiagram {
    let len = d.matching().len() + 2;
    let j = (i + 1) % len;
    let mut label = Vec::with_capacity(len - 2);
    for p in 0..len {
        if p != i && p != j {
            label.push(p);
        }
    }
    let mut out = vec![0u8; len];
    out[i] = j as u8;
    out[j] = i as u8;
    for (p, &r) in d.matching().iter().enumerate() {
        out[label[p]] = label[r as usize] as u8;
    }
    let g = match d.hole_gaps().first() {
        Some(&g) => label[g],
        None => j,
    };
    AnnularDiagram::with_hole_gap(out, g)
}

fn rotate(d: &AnnularDiagram, by: usize) -> AnnularDiagram {
    let len = d.matching().len();
    if len == 0 {
        return d.clone();
    }
    let mut out = vec![0u8; len];
    for (p, &r) in d.matching().iter().enumerate() {
        out[(p + by) % len] = ((r as usize + by) % len) as u8;
    }
    let g = (d.hole_gaps()[0] + by) % len;
    AnnularDiagram::with_hole_gap(out, g)
}

/// Matrix of `tangle` from `V(t)_n` to its target, in the enumerated bases:
/// column `k` holds the image of basis vector `k`.
pub fn action_matrix(tangle: AnnularTangle, n: usize) -> Result<Vec<Vec<TPoly>>> {
    let m = tangle.target(n)?;
    let src = annular_basis(n);
    let dst = annular_basis(m);
    let mut mat = vec![vec![TPoly::zero(); src.len()]; dst.len()];
    for (k, d) in src.iter().enumerate() {
        let (img, w) = tangle.apply_diagram(d)?;
        let row = dst.iter().position(|x| *x == img).expect("image is a basis diagram");
        mat[row][k] = w.symbolic();
    }
    Ok(mat)
}

/// Smallest `k >= 1` with `Rotate^k` the identity on `V(t)_n`.
pub fn rotation_period(n: usize) -> usize {
    let basis = annular_basis(n);
    let mut cur: Vec<AnnularDiagram> = basis.to_vec();
    for k in 1.. {
        cur = cur.iter().map(|d| rotate(d, 1)).collect();
        if cur == basis {
            return k;
        }
    }
    unreachable!()
}

/// `M(a)^T G_m = G_n M(a^†)` exactly, where `a` goes from weight `n` to `m`.
pub fn adjoint_law_holds(tangle: AnnularTangle, n: usize) -> Result<bool> {
    let m = tangle.target(n)?;
    let lhs = mat_mul(&transpose(&action_matrix(tangle, n)?), &gram_matrix(m)?);
    let rhs = mat_mul(&gram_matrix(n)?, &action_matrix(tangle.adjoint(), m)?);
    Ok(lhs == rhs)
}

fn mat_mul(a: &[Vec<TPoly>], b: &[Vec<TPoly>]) -> Vec<Vec<TPoly>> {
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(TPoly::zero(), |acc, (x, brow)| &acc + &(x * &brow[j]))
                })
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<TPoly>]) -> Vec<Vec<TPoly>> {
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Identity, both rotations, and every cap and cup starting at weight `n`.
pub fn elementary_tangles(n: usize) -> Vec<AnnularTangle> {
    let mut out = vec![AnnularTangle::Identity, AnnularTangle::Rotate, AnnularTangle::RotateInverse];
    out.extend((0..2 * n).map(AnnularTangle::Cap));
    out.extend((0..2 * n + 2).map(AnnularTangle::Cup));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn adjoint_law() {
        for n in 0..=3 {
            for a in elementary_tangles(n) {
                let m = a.target(n).unwrap();
                if m > 3 {
                    continue;
                }
                assert!(adjoint_law_holds(a, n).unwrap(), "{a:?} at n = {n}");
            }
        }
    }

    #[test]
    fn rotation_is_an_isometry() {
        for n in 0..=3 {
            let r = action_matrix(AnnularTangle::Rotate, n).unwrap();
            let g = gram_matrix(n).unwrap();
            assert_eq!(mat_mul(&mat_mul(&transpose(&r), &g), &r), g);
        }
    }

    #[test]
    fn cap_and_cup_examples() {
        let xi = AnnularVector::xi();
        let up = AnnularTangle::Cup(0).apply(&xi).unwrap();
        assert_eq!(up.terms().len(), 1);
        let (d, c) = up.terms().iter().next().unwrap();
        assert_eq!((d.matching(), d.hole_face()), (&[1u8, 0][..], 1));
        assert_eq!(c, &TPoly::one());

        let m = action_matrix(AnnularTangle::Cap(0), 1).unwrap();
        assert_eq!(m, vec![vec![TPoly::t(), TPoly::constant(Scalar::delta())]]);
        let id = action_matrix(AnnularTangle::Identity, 2).unwrap();
        for (i, row) in id.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(x, &if i == j { TPoly::one() } else { TPoly::zero() });
            }
        }
    }

    #[test]
    fn rotation_periods() {
        assert_eq!(rotation_period(0), 1);
        assert_eq!(rotation_period(1), 2);
        for n in 1..=4 {
            assert_eq!((2 * n) % rotation_period(n), 0);
        }
        let v = AnnularVector::from_diagram(annular_basis(1)[0].clone());
        let twice = AnnularTangle::Rotate.apply(&AnnularTangle::Rotate.apply(&v).unwrap()).unwrap();
        assert_eq!(twice, v);
    }

    #[test]
    fn out_of_range() {
        assert!(AnnularTangle::Cap(0).target(0).is_err());
        assert!(AnnularTangle::Cap(4).target(2).is_err());
        assert!(AnnularTangle::Cup(4).target(1).is_err());
    }
}
