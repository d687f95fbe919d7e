use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use super::{TLDiagram, MAX_CACHED_SIZE};

type WordTable = HashMap<TLDiagram, Vec<u8>>;

static WORDS: [OnceLock<WordTable>; MAX_CACHED_SIZE + 1] =
    [const { OnceLock::new() }; MAX_CACHED_SIZE + 1];

/// A shortest word `i_1 i_2 ... i_k` (generator indices, 1-based) with
/// `d = e_(i_1) e_(i_2) ... e_(i_k)` and no closed loops formed along the way.
/// The identity has the empty word.
pub fn reduced_word(d: &TLDiagram) -> Vec<u8> {
    let m = d.size();
    let table = WORDS[m].get_or_init(|| build(m));
    table[d].clone()
}

fn build(m: usize) -> WordTable {
    let gens: Vec<TLDiagram> = (1..m)
        .map(|i| TLDiagram::generator(m, i).expect("valid generator"))
        .collect();
    let mut table = WordTable::new();
    let id = TLDiagram::identity(m);
    table.insert(id.clone(), Vec::new());
    let mut queue = VecDeque::from([id]);
    while let Some(d) = queue.pop_front() {
        let word = table[&d].clone();
        for (k, g) in gens.iter().enumerate() {
            let (next, loops) = d.compose(g).expect("same size");
            if loops == 0 && !table.contains_key(&next) {
                let mut w = word.clone();
                w.push((k + 1) as u8);
                table.insert(next.clone(), w);
                queue.push_back(next);
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tl::basis;

    #[test]
    fn every_diagram_has_a_reduced_word() {
        for m in 0..=6 {
            for d in basis(m).diagrams() {
                let w = reduced_word(d);
                let mut acc = TLDiagram::identity(m);
                for &i in &w {
                    let (next, loops) = acc
                        .compose(&TLDiagram::generator(m, i as usize).unwrap())
                        .unwrap();
                    assert_eq!(loops, 0);
                    acc = next;
                }
                assert_eq!(&acc, d);
            }
        }
    }
}
