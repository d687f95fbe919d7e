use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{annular_basis, AnnularDiagram, LoopWeight};
use crate::error::{Error, Result};
use crate::matching;
use crate::scalar::TPoly;
use crate::tl::ScalarJson;

/// Largest `n` for which [`gram_matrix`] builds the matrix.
pub const DEFAULT_GRAM_CAP: usize = 4;

/// Loops formed by gluing `a` to the mirror image of `b` along the outer
/// circle. A reference path runs from the hole of `a` through the outer gap
/// `2n - 1` to the hole of `b`; a loop separates the holes exactly when it
/// crosses that path an odd number of times.
pub fn loop_weight(a: &AnnularDiagram, b: &AnnularDiagram) -> Result<LoopWeight> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let len = a.matching.len();
    let mut w = LoopWeight::default();
    if len == 0 {
        return Ok(w);
    }
    let g = len - 1;
    let ha = a.hole_gaps()[0];
    let hb = b.hole_gaps()[0];
    let mut seen = vec![false; len];
    for start in 0..len {
        if seen[start] {
            continue;
        }
        let mut parity = false;
        let mut x = start;
        loop {
            seen[x] = true;
            parity ^= matching::separates(&a.matching, x, ha, g);
            let y = a.matching[x] as usize;
            seen[y] = true;
            parity ^= matching::separates(&b.matching, y, hb, g);
            x = b.matching[y] as usize;
            if x == start {
                break;
            }
        }
        w.add_loop(parity);
    }
    Ok(w)
}

/// `<a, b>` in `V(t)_n`: `delta^c t^nc`.
pub fn gram_entry(a: &AnnularDiagram, b: &AnnularDiagram) -> Result<TPoly> {
    Ok(loop_weight(a, b)?.symbolic())
}

/// Gram matrix of the basis of `V(t)_n`, refusing `n > DEFAULT_GRAM_CAP`.
pub fn gram_matrix(n: usize) -> Result<Vec<Vec<TPoly>>> {
    gram_matrix_capped(n, DEFAULT_GRAM_CAP)
}

pub fn gram_matrix_capped(n: usize, cap: usize) -> Result<Vec<Vec<TPoly>>> {
    Ok(weight_matrix(n, cap)?
        .iter()
        .map(|row| row.iter().map(LoopWeight::symbolic).collect())
        .collect())
}

pub(crate) fn weight_matrix(n: usize, cap: usize) -> Result<Vec<Vec<LoopWeight>>> {
    if n > cap {
        return Err(Error::ResourceCap {
            what: "annular weight n",
            requested: n,
            cap,
        });
    }
    let basis = annular_basis(n);
    basis
        .iter()
        .map(|a| basis.iter().map(|b| loop_weight(a, b)).collect())
        .collect()
}

/// Hole-free disc pairing: every loop weighs `delta`.
pub fn disc_pairing(a: &AnnularDiagram, b: &AnnularDiagram) -> Result<TPoly> {
    let w = loop_weight(a, b)?;
    Ok(LoopWeight {
        contractible: w.total(),
        noncontractible: 0,
    }
    .symbolic())
}

#[derive(Serialize)]
struct BasisJson<'a> {
    matching: &'a [u8],
    hole_face: usize,
}

struct TPolyJson<'a>(&'a TPoly);

impl Serialize for TPolyJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nonzero: Vec<_> = self.0.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut map = s.serialize_map(Some(nonzero.len()))?;
        for (k, c) in nonzero {
            map.serialize_entry(&k.to_string(), &ScalarJson(c))?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct GramJson<'a> {
    n: usize,
    basis: Vec<BasisJson<'a>>,
    entries: Vec<Vec<TPolyJson<'a>>>,
}

/// `{"n":.., "basis":[..], "entries":[[{t-degree: scalar}..]..]}`.
pub fn gram_to_json(n: usize, gram: &[Vec<TPoly>]) -> String {
    let basis = annular_basis(n)
        .iter()
        .map(|d| BasisJson {
            matching: d.matching(),
            hole_face: d.hole_face(),
        })
        .collect();
    let entries = gram
        .iter()
        .map(|row| row.iter().map(TPolyJson).collect())
        .collect();
    serde_json::to_string(&GramJson { n, basis, entries }).expect("plain data")
}
