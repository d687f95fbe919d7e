use std::fmt;

use crate::error::{Error, Result};
use crate::matching;

/// A rectangular Temperley-Lieb diagram on `m` strands.
///
/// The `2m` boundary points are numbered circularly: top points `0..m` from
/// left to right, then bottom points `m..2m` from right to left, so bottom
/// position `j` (counted from the left) is point `2m - 1 - j`. With this
/// numbering planarity is the plain circular non-crossing condition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    pairing: Vec<u8>,
}

impl TLDiagram {
    pub fn new(pairing: Vec<u8>) -> Result<Self> {
        matching::validate(&pairing)?;
        Ok(Self { pairing })
    }

    pub(crate) fn from_valid(pairing: Vec<u8>) -> Self {
        debug_assert!(matching::validate(&pairing).is_ok());
        Self { pairing }
    }

    pub fn size(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn pairing(&self) -> &[u8] {
        &self.pairing
    }

    pub fn partner(&self, p: usize) -> usize {
        self.pairing[p] as usize
    }

    pub fn identity(m: usize) -> Self {
        let mut pairing = vec![0u8; 2 * m];
        for j in 0..m {
            pairing[j] = bottom(m, j) as u8;
            pairing[bottom(m, j)] = j as u8;
        }
        Self { pairing }
    }

    /// The generator `e_i` of `TL_m`, `1 <= i <= m - 1`: a cap joining top
    /// positions `i - 1, i` and a cup joining the same bottom positions.
    pub fn generator(m: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= m {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: m,
            });
        }
        let mut pairing = Self::identity(m).pairing;
        let (a, b) = (i - 1, i);
        let (ba, bb) = (bottom(m, a), bottom(m, b));
        pairing[a] = b as u8;
        pairing[b] = a as u8;
        pairing[ba] = bb as u8;
        pairing[bb] = ba as u8;
        Ok(Self { pairing })
    }

    pub fn is_identity(&self) -> bool {
        let m = self.size();
        (0..m).all(|j| self.partner(j) == bottom(m, j))
    }

    /// Number of strands joining the top edge to the bottom edge.
    pub fn through_strands(&self) -> usize {
        let m = self.size();
        (0..m).filter(|&j| self.partner(j) >= m).count()
    }

    /// Reflection in the horizontal midline (top and bottom exchanged).
    pub fn adjoint(&self) -> Self {
        let len = self.pairing.len();
        let flip = |p: usize| len - 1 - p;
        let mut pairing = vec![0u8; len];
        for (p, &r) in self.pairing.iter().enumerate() {
            pairing[flip(p)] = flip(r as usize) as u8;
        }
        Self { pairing }
    }

    /// Stacks `self` above `other` and removes closed loops, returning the
    /// reduced diagram and the number of loops removed.
    pub fn compose(&self, other: &Self) -> Result<(Self, u32)> {
        let m = self.size();
        if other.size() != m {
            return Err(Error::SizeMismatch {
                left: m,
                right: other.size(),
            });
        }
        let len = 2 * m;
        // Middle line position j joins bottom j of `self` to top j of `other`.
        let mut middle_seen = vec![false; m];
        let mut pairing = vec![u8::MAX; len];
        for start in 0..len {
            if pairing[start] != u8::MAX {
                continue;
            }
            let end = trace_stack(self, other, start, &mut middle_seen);
            pairing[start] = end as u8;
            pairing[end] = start as u8;
        }
        let mut loops = 0;
        for j in 0..m {
            if middle_seen[j] {
                continue;
            }
            loops += 1;
            let mut cur = j;
            loop {
                middle_seen[cur] = true;
                // through `other`'s top into another top point
                let t = other.partner(cur);
                debug_assert!(t < m);
                middle_seen[t] = true;
                // back up through `self`'s bottom
                let b = self.partner(bottom(m, t));
                debug_assert!(b >= m);
                cur = bottom_pos(m, b);
                if cur == j {
                    break;
                }
            }
        }
        Ok((Self { pairing }, loops))
    }

    /// Loops formed by closing top position `j` to bottom position `j` around
    /// the right side.
    pub fn markov_loops(&self) -> u32 {
        self.closure_loops().len() as u32
    }

    /// Absolute net winding of each loop of the right closure around the
    /// closure axis: closure arcs traversed top-to-bottom count `+1`,
    /// bottom-to-top `-1`.
    pub fn closure_loops(&self) -> Vec<i32> {
        let len = self.pairing.len();
        let m = self.size();
        let mut seen = vec![false; len];
        let mut out = Vec::new();
        for start in 0..len {
            if seen[start] {
                continue;
            }
            let mut winding = 0i32;
            let mut x = start;
            loop {
                seen[x] = true;
                let y = self.partner(x);
                seen[y] = true;
                // closure arc from y
                let (next, step) = if y < m {
                    (bottom(m, y), 1)
                } else {
                    (bottom_pos(m, y), -1)
                };
                winding += step;
                x = next;
                if x == start {
                    break;
                }
            }
            out.push(winding.abs());
        }
        out
    }

    /// Includes into `TL_target` by adding through strands on the right.
    pub fn pad_through(&self, target: usize) -> Result<Self> {
        let m = self.size();
        if target < m {
            return Err(Error::SizeMismatch {
                left: m,
                right: target,
            });
        }
        let mut out = Self::identity(target).pairing;
        for p in 0..2 * m {
            let r = self.partner(p);
            out[relabel_into(m, target, p)] = relabel_into(m, target, r) as u8;
        }
        Ok(Self::from_valid(out))
    }

    /// Includes into `TL_target` by adding cap/cup pairs on the right; the
    /// size difference must be even.
    pub fn pad_caps(&self, target: usize) -> Result<Self> {
        let m = self.size();
        if target < m || !(target - m).is_multiple_of(2) {
            return Err(Error::SizeMismatch {
                left: m,
                right: target,
            });
        }
        let mut out = vec![0u8; 2 * target];
        for p in 0..2 * m {
            let r = self.partner(p);
            out[relabel_into(m, target, p)] = relabel_into(m, target, r) as u8;
        }
        for j in (m..target).step_by(2) {
            out[j] = (j + 1) as u8;
            out[j + 1] = j as u8;
            let (a, b) = (bottom(target, j), bottom(target, j + 1));
            out[a] = b as u8;
            out[b] = a as u8;
        }
        Ok(Self::from_valid(out))
    }
}

/// Circular index of bottom position `j` in a diagram of size `m`.
pub(crate) fn bottom(m: usize, j: usize) -> usize {
    2 * m - 1 - j
}

/// Bottom position (from the left) of circular point `p >= m`.
pub(crate) fn bottom_pos(m: usize, p: usize) -> usize {
    2 * m - 1 - p
}

fn relabel_into(m: usize, target: usize, p: usize) -> usize {
    if p < m {
        p
    } else {
        bottom(target, bottom_pos(m, p))
    }
}

/// Follows a strand of the stacked picture from result point `start` to its
/// other end. Result top points belong to `upper`, bottom points to `lower`.
fn trace_stack(upper: &TLDiagram, lower: &TLDiagram, start: usize, middle: &mut [bool]) -> usize {
    let m = upper.size();
    let mut in_upper = start < m;
    let mut p = start;
    loop {
        if in_upper {
            let r = upper.partner(p);
            if r < m {
                return r;
            }
            let j = bottom_pos(m, r);
            middle[j] = true;
            in_upper = false;
            p = j;
        } else {
            let r = lower.partner(p);
            if r >= m {
                return r;
            }
            middle[r] = true;
            in_upper = true;
            p = bottom(m, r);
        }
    }
}

impl fmt::Debug for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TLDiagram{:?}", self.pairing)
    }
}
