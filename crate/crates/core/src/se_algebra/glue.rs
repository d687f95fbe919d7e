//! Side-by-side gluing of two pairings along identified boundary points.

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Side {
    Left,
    Right,
}

pub(crate) struct Gluing<'a> {
    pub left: &'a [u8],
    pub right: &'a [u8],
    /// `(left point, right point)` pairs joined by a strand.
    pub joins: Vec<(usize, usize)>,
    /// Uncontracted points in the circular order of the result.
    pub order: Vec<(Side, usize)>,
}

pub(crate) struct Glued {
    pub pairing: Vec<u8>,
    /// Crossing parity of the strand starting at each result point.
    pub parity: Vec<bool>,
    /// Crossing parity of each closed loop.
    pub loops: Vec<bool>,
}

impl Gluing<'_> {
    /// Traces every strand and loop. `crossing(side, p)` is the parity
    /// contributed by the chord of `side` that starts at point `p`.
    pub fn run(&self, crossing: impl Fn(Side, usize) -> bool) -> Glued {
        let mut joined_l = vec![usize::MAX; self.left.len()];
        let mut joined_r = vec![usize::MAX; self.right.len()];
        for &(a, b) in &self.joins {
            joined_l[a] = b;
            joined_r[b] = a;
        }
        let mut ext_l = vec![usize::MAX; self.left.len()];
        let mut ext_r = vec![usize::MAX; self.right.len()];
        for (k, &(s, p)) in self.order.iter().enumerate() {
            match s {
                Side::Left => ext_l[p] = k,
                Side::Right => ext_r[p] = k,
            }
        }
        let partner = |s: Side, p: usize| match s {
            Side::Left => self.left[p] as usize,
            Side::Right => self.right[p] as usize,
        };
        let across = |s: Side, p: usize| match s {
            Side::Left => (Side::Right, joined_l[p]),
            Side::Right => (Side::Left, joined_r[p]),
        };
        let exit = |s: Side, p: usize| match s {
            Side::Left => ext_l[p],
            Side::Right => ext_r[p],
        };

        let len = self.order.len();
        let mut pairing = vec![u8::MAX; len];
        let mut parity = vec![false; len];
        let mut used = [vec![false; self.left.len()], vec![false; self.right.len()]];
        let mark = |used: &mut [Vec<bool>; 2], s: Side, p: usize| used[s as usize][p] = true;
        for k in 0..len {
            if pairing[k] != u8::MAX {
                continue;
            }
            let (mut s, mut p) = self.order[k];
            let mut par = false;
            loop {
                mark(&mut used, s, p);
                par ^= crossing(s, p);
                let q = partner(s, p);
                mark(&mut used, s, q);
                let e = exit(s, q);
                if e != usize::MAX {
                    pairing[k] = e as u8;
                    pairing[e] = k as u8;
                    parity[k] = par;
                    parity[e] = par;
                    break;
                }
                (s, p) = across(s, q);
            }
        }

        let mut loops = Vec::new();
        for &(a, _) in &self.joins {
            if used[0][a] {
                continue;
            }
            let (mut s, mut p) = (Side::Left, a);
            let mut par = false;
            loop {
                mark(&mut used, s, p);
                par ^= crossing(s, p);
                let q = partner(s, p);
                mark(&mut used, s, q);
                (s, p) = across(s, q);
                if s == Side::Left && p == a {
                    break;
                }
            }
            loops.push(par);
        }
        Glued {
            pairing,
            parity,
            loops,
        }
    }
}

/// Box-shaped gluing: the left box has `2lt` top points (circular `0..2lt`,
/// left to right) and `2lb` bottom points (right to left), likewise the
/// right box. `a` top and `b` bottom strands are joined across the seam.
pub(crate) fn box_gluing<'a>(
    left: &'a [u8],
    lt: usize,
    right: &'a [u8],
    rt: usize,
    a: usize,
    b: usize,
) -> Gluing<'a> {
    let (n1, n2) = (left.len(), right.len());
    let mut joins = Vec::with_capacity(a + b);
    for s in 0..a {
        joins.push((2 * lt - 1 - s, s));
    }
    for s in 0..b {
        joins.push((2 * lt + s, n2 - 1 - s));
    }
    let mut order = Vec::with_capacity(n1 + n2 - 2 * (a + b));
    order.extend((0..2 * lt - a).map(|p| (Side::Left, p)));
    order.extend((a..2 * rt).map(|p| (Side::Right, p)));
    order.extend((2 * rt..n2 - b).map(|p| (Side::Right, p)));
    order.extend((2 * lt + b..n1).map(|p| (Side::Left, p)));
    Gluing {
        left,
        right,
        joins,
        order,
    }
}
