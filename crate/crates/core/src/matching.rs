//! Non-crossing perfect matchings of points on a circle.
//!
//! Points are labelled `0..2n` clockwise. Gap `k` is the boundary arc
//! between point `k` and point `k + 1 (mod 2n)`. Every face of a matching
//! drawn inside the disc touches the boundary, so a face is identified with
//! the set of gaps it touches; faces are numbered by their smallest gap.

use crate::error::{Error, Result};

/// Checks that `pairing` is a fixed-point-free involution without crossings.
pub fn validate(pairing: &[u8]) -> Result<()> {
    let len = pairing.len();
    if !len.is_multiple_of(2) {
        return Err(Error::InvalidDiagram(format!("odd number of points: {len}")));
    }
    for (a, &b) in pairing.iter().enumerate() {
        let b = b as usize;
        if b >= len || b == a || pairing[b] as usize != a {
            return Err(Error::InvalidDiagram(format!(
                "pairing is not a fixed-point-free involution at point {a}"
            )));
        }
    }
    for a in 0..len {
        let b = pairing[a] as usize;
        if b < a {
            continue;
        }
        for c in a + 1..b {
            let d = pairing[c] as usize;
            if d < a || d > b {
                return Err(Error::InvalidDiagram(format!(
                    "chords ({a},{b}) and ({c},{d}) cross"
                )));
            }
        }
    }
    Ok(())
}

/// All non-crossing perfect matchings on `2n` points, in lexicographic order
/// of the involution array.
pub fn enumerate(n: usize) -> Vec<Vec<u8>> {
    let len = 2 * n;
    let mut out = Vec::new();
    let mut cur = vec![u8::MAX; len];
    fill(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn fill(cur: &mut Vec<u8>, start: usize, out: &mut Vec<Vec<u8>>) {
    let Some(a) = (start..cur.len()).find(|&k| cur[k] == u8::MAX) else {
        out.push(cur.clone());
        return;
    };
    // Pair `a` with a later free point `b` such that the stretch strictly
    // between them is free and of even length; everything before `a` is
    // already matched, so this enumerates each matching once.
    let mut b = a + 1;
    while b < cur.len() {
        if cur[b] != u8::MAX {
            break;
        }
        if (b - a - 1) % 2 == 0 {
            cur[a] = b as u8;
            cur[b] = a as u8;
            fill(cur, a + 1, out);
            cur[a] = u8::MAX;
            cur[b] = u8::MAX;
        }
        b += 1;
    }
}

pub fn catalan(n: usize) -> u64 {
    let mut c = 1u64;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// Faces of the matching as lists of gaps, ordered by smallest gap. A
/// matching on `2n >= 2` points has `n + 1` faces; the empty matching has a
/// single face with no gaps.
pub fn faces(pairing: &[u8]) -> Vec<Vec<usize>> {
    let len = pairing.len();
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut face_of = vec![usize::MAX; len];
    let mut faces = Vec::new();
    for start in 0..len {
        if face_of[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut gaps = Vec::new();
        let mut g = start;
        // Walk the face boundary: leave gap g through point g+1, follow its
        // chord, and continue in the gap just after the partner.
        loop {
            face_of[g] = id;
            gaps.push(g);
            let p = (g + 1) % len;
            g = pairing[p] as usize;
            if g == start {
                break;
            }
        }
        gaps.sort_unstable();
        faces.push(gaps);
    }
    faces
}

/// Face index containing gap `g`.
pub fn face_of_gap(pairing: &[u8], g: usize) -> usize {
    faces(pairing)
        .iter()
        .position(|f| f.contains(&g))
        .expect("gap out of range")
}

/// Whether the chord through `a` separates gaps `g1` and `g2`.
pub fn separates(pairing: &[u8], a: usize, g1: usize, g2: usize) -> bool {
    let b = pairing[a] as usize;
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let inside = |g: usize| lo <= g && g < hi;
    inside(g1) != inside(g2)
}
