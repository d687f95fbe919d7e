use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, TPoly};
use crate::tl::TLElement;

/// Closes every diagram around the annulus, top position `j` to bottom
/// position `j` past the hole. A loop whose closure arcs cancel out is
/// contractible (`delta`), one with net winding `1` encircles the hole (`t`).
pub fn annular_trace(x: &TLElement) -> Result<TPoly> {
    if !x.size().is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "annular trace needs an even strand count, got {}",
            x.size()
        )));
    }
    let mut groups: BTreeMap<(usize, u32), Vec<&Scalar>> = BTreeMap::new();
    for (d, c) in x.terms() {
        let windings = d.closure_loops();
        debug_assert!(windings.iter().all(|w| *w <= 1));
        let nc = windings.iter().filter(|w| **w != 0).count();
        let contractible = (windings.len() - nc) as u32;
        groups.entry((nc, contractible)).or_default().push(c);
    }
    let mut coeffs: Vec<Vec<Scalar>> = Vec::new();
    for ((nc, c), cs) in groups {
        if coeffs.len() <= nc {
            coeffs.resize(nc + 1, Vec::new());
        }
        coeffs[nc].push(&Scalar::sum(cs) * &Scalar::delta_pow(c));
    }
    Ok(TPoly::from_coeffs(coeffs.iter().map(Scalar::sum).collect()))
}
