//! Jones-Wenzl idempotents through Wenzl's recursion
//! `p_(k+1) = p_k - ([k]/[k+1]) p_k e_k p_k`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{qint, Scalar};
use crate::tl::{TLElement, MAX_CACHED_SIZE};

/// Default largest strand count [`jones_wenzl`] will build.
pub const DEFAULT_JW_CAP: usize = 10;

static CACHE: [OnceLock<TLElement>; MAX_CACHED_SIZE + 1] =
    [const { OnceLock::new() }; MAX_CACHED_SIZE + 1];

/// The Jones-Wenzl idempotent `p_m`, with the default cap.
pub fn jones_wenzl(m: usize) -> Result<TLElement> {
    jones_wenzl_capped(m, DEFAULT_JW_CAP)
}

/// The Jones-Wenzl idempotent `p_m`, refusing `m > cap`.
pub fn jones_wenzl_capped(m: usize, cap: usize) -> Result<TLElement> {
    if m == 0 {
        return Err(Error::Domain("Jones-Wenzl index must be >= 1".into()));
    }
    let cap = cap.min(MAX_CACHED_SIZE);
    if m > cap {
        return Err(Error::ResourceCap {
            what: "Jones-Wenzl strands",
            requested: m,
            cap,
        });
    }
    Ok(cached(m).clone())
}

fn cached(m: usize) -> &'static TLElement {
    CACHE[m].get_or_init(|| {
        if m == 1 {
            return TLElement::identity(1);
        }
        let k = m - 1;
        let p = cached(k).pad_through(m).expect("growing size");
        let pe = p.mul_generator_right(k).expect("generator in range");
        let pep = pe.multiply(&p).expect("same size");
        let ratio = qint(k as i64)
            .and_then(|a| a.checked_div(&qint(m as i64)?))
            .expect("quantum integers are nonzero");
        p.try_sub(&pep.scale(&ratio)).expect("same size")
    })
}

/// Outcome of checking the defining properties of a Jones-Wenzl idempotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct JwVerdict {
    pub idempotent: bool,
    /// `e_i p = 0` for every `i`.
    pub kills_e_left: bool,
    /// `p e_i = 0` for every `i`.
    pub kills_e_right: bool,
    pub self_adjoint: bool,
}

impl JwVerdict {
    pub fn all(&self) -> bool {
        self.idempotent && self.kills_e_left && self.kills_e_right && self.self_adjoint
    }
}

/// Checks `p p = p`, `e_i p = 0`, `p e_i = 0` and `p^* = p` exactly.
pub fn verify_jw(p: &TLElement) -> JwVerdict {
    let m = p.size();
    let kills = |left: bool| {
        (1..m).all(|i| {
            let r = if left {
                p.mul_generator_left(i)
            } else {
                p.mul_generator_right(i)
            };
            r.map(|x| x.is_zero()).unwrap_or(false)
        })
    };
    let kills_e_right = kills(false);
    JwVerdict {
        idempotent: p.multiply_via_words(p).map(|pp| &pp == p).unwrap_or(false),
        kills_e_left: kills(true),
        kills_e_right,
        self_adjoint: &p.adjoint() == p,
    }
}

/// `(n, tr(p_(2n)))` for `n = 0..=n_max`, each checked against `[2n+1]`.
pub fn jw_trace_table(n_max: usize) -> Result<Vec<(usize, Scalar)>> {
    jw_trace_table_with(n_max, jones_wenzl)
}

/// [`jw_trace_table`] with the idempotents supplied by `source`.
pub fn jw_trace_table_with<F>(n_max: usize, mut source: F) -> Result<Vec<(usize, Scalar)>>
where
    F: FnMut(usize) -> Result<TLElement>,
{
    let mut out = vec![(0, Scalar::one())];
    for n in 1..=n_max {
        let tr = source(2 * n)?.markov_trace();
        let expected = qint(2 * n as i64 + 1)?;
        if tr != expected {
            return Err(Error::CheckFailed(format!(
                "trace of p_{} at n = {n} is {tr}, expected {expected}",
                2 * n
            )));
        }
        out.push((n, tr));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::LaurentPoly;
    use crate::tl::{basis, TLDiagram};

    /// Solves `{coeff(1) = 1, e_i x = 0}` over `Q(q)` by Gaussian elimination
    /// in the diagram basis.
    fn linear_system_oracle(m: usize) -> TLElement {
        let b = basis(m);
        let n = b.len();
        let id = b.index_of(&TLDiagram::identity(m)).unwrap();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut row = vec![Scalar::zero(); n + 1];
        row[id] = Scalar::one();
        row[n] = Scalar::one();
        rows.push(row);
        for i in 1..m {
            let e = TLDiagram::generator(m, i).unwrap();
            // column j: e_i * d_j
            let mut block = vec![vec![Scalar::zero(); n + 1]; n];
            for (j, d) in b.diagrams().iter().enumerate() {
                let (r, loops) = e.compose(d).unwrap();
                let k = b.index_of(&r).unwrap();
                block[k][j] = &block[k][j] + &Scalar::delta_pow(loops);
            }
            rows.extend(block);
        }
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..n {
            let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(pivot_row, r);
            let inv = rows[pivot_row][col].inv().unwrap();
            rows[pivot_row] = rows[pivot_row].iter().map(|v| v * &inv).collect();
            for r in 0..rows.len() {
                if r != pivot_row && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    let pr = rows[pivot_row].clone();
                    for (a, b) in rows[r].iter_mut().zip(&pr) {
                        *a = &*a - &(&f * b);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        assert_eq!(pivots.len(), n, "solution must be unique");
        for r in pivot_row..rows.len() {
            assert!(rows[r][n].is_zero(), "system must be consistent");
        }
        TLElement::from_terms(
            m,
            pivots
                .iter()
                .enumerate()
                .map(|(r, &c)| (b.diagrams()[c].clone(), rows[r][n].clone())),
        )
        .unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(jones_wenzl(1).unwrap(), TLElement::identity(1));
        let e1 = TLElement::generator(2, 1).unwrap();
        let expected = &TLElement::identity(2) - &e1.scale(&Scalar::delta().inv().unwrap());
        assert_eq!(jones_wenzl(2).unwrap(), expected);
        assert!(jones_wenzl(0).is_err());
    }

    #[test]
    fn recursion_matches_oracle() {
        for m in 1..=5 {
            assert_eq!(jones_wenzl(m).unwrap(), linear_system_oracle(m), "m = {m}");
        }
    }

    #[test]
    fn traces_are_quantum_integers() {
        for m in 1..=8 {
            assert_eq!(
                jones_wenzl(m).unwrap().markov_trace(),
                qint(m as i64 + 1).unwrap(),
                "m = {m}"
            );
        }
    }

    #[test]
    fn defining_properties() {
        for m in 1..=8 {
            let v = verify_jw(&jones_wenzl(m).unwrap());
            assert!(v.all(), "m = {m}: {v:?}");
        }
    }

    #[test]
    fn verdicts_for_non_idempotents() {
        let v = verify_jw(&TLElement::generator(3, 1).unwrap());
        assert!(!v.idempotent);
        assert!(v.self_adjoint);
        let v = verify_jw(&TLElement::identity(3));
        assert!(v.idempotent && !v.kills_e_left && !v.kills_e_right);
    }

    #[test]
    fn denominators_divide_quantum_factorial() {
        for m in 1..=7 {
            let fact = (1..=m as i64).fold(LaurentPoly::one(), |acc, k| {
                &acc * qint(k).unwrap().numerator()
            });
            for c in jones_wenzl(m).unwrap().terms().values() {
                let s = Scalar::from_parts(fact.clone(), c.denominator().clone()).unwrap();
                assert!(s.is_laurent(), "m = {m}: {c}");
            }
        }
    }

    #[test]
    fn trace_table() {
        let t = jw_trace_table(4).unwrap();
        assert_eq!(t[0], (0, Scalar::one()));
        assert_eq!(t[1].1, &Scalar::delta_pow(2) - &Scalar::one());
        assert_eq!(
            t[2].1,
            Scalar::from_laurent(LaurentPoly::from_terms([(4, 1), (2, 1), (0, 1), (-2, 1), (-4, 1)]))
        );
    }

    #[test]
    fn trace_table_reports_bad_source() {
        let err = jw_trace_table_with(2, |m| {
            if m == 4 {
                Ok(TLElement::identity(4))
            } else {
                jones_wenzl(m)
            }
        })
        .unwrap_err();
        assert!(matches!(err, Error::CheckFailed(ref s) if s.contains("n = 2")));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            jones_wenzl_capped(6, 5),
            Err(Error::ResourceCap { requested: 6, cap: 5, .. })
        ));
        assert!(matches!(jones_wenzl(11), Err(Error::ResourceCap { .. })));
    }
}
