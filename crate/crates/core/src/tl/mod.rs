//! The rectangular Temperley-Lieb algebra `TL_m` over `Q(q)`, with loop
//! value `delta = q + q^-1`.

mod bilinear;
mod diagram;
mod element;
mod json;
mod words;

use std::collections::HashMap;
use std::sync::OnceLock;

pub use diagram::TLDiagram;
pub use element::TLElement;
pub(crate) use bilinear::accumulate;
pub use words::reduced_word;
pub(crate) use json::ScalarJson;

use crate::matching;

/// Largest strand count whose basis can be cached.
pub const MAX_CACHED_SIZE: usize = 12;

/// The diagram basis of `TL_m` in lexicographic order of the involution
/// array, with a reverse index.
#[derive(Debug)]
pub struct Basis {
    diagrams: Vec<TLDiagram>,
    index: HashMap<TLDiagram, usize>,
}

impl Basis {
    pub fn diagrams(&self) -> &[TLDiagram] {
        &self.diagrams
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn index_of(&self, d: &TLDiagram) -> Option<usize> {
        self.index.get(d).copied()
    }
}

static BASES: [OnceLock<Basis>; MAX_CACHED_SIZE + 1] = [const { OnceLock::new() }; MAX_CACHED_SIZE + 1];

/// Cached basis of `TL_m`. Panics for `m > MAX_CACHED_SIZE`.
pub fn basis(m: usize) -> &'static Basis {
    assert!(m <= MAX_CACHED_SIZE, "TL basis cache holds sizes up to {MAX_CACHED_SIZE}");
    BASES[m].get_or_init(|| {
        let diagrams: Vec<TLDiagram> = matching::enumerate(m)
            .into_iter()
            .map(TLDiagram::from_valid)
            .collect();
        let index = diagrams
            .iter()
            .enumerate()
            .map(|(k, d)| (d.clone(), k))
            .collect();
        Basis { diagrams, index }
    })
}

/// All diagrams of `TL_m` in deterministic order.
pub fn enumerate_basis(m: usize) -> Vec<TLDiagram> {
    basis(m).diagrams().to_vec()
}
