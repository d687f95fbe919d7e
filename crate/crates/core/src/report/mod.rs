//! Coefficient tables, limit checks, the expression language and the
//! certificate.

mod certificate;
mod eval;
mod parser;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use certificate::{certificate, certificate_with, Certificate, CertificateParams, CheckResult, TGrid};
pub use eval::{evaluate, Value};
pub use parser::{parse, BinOp, Expr, ExprKind, Func, Span};

use crate::annular::annular_trace;
use crate::error::{Error, Result};
use crate::jones_wenzl::jones_wenzl_capped;
use crate::scalar::{qint, qint_numeric, qint_t, NumericParams, Scalar, TPoly};
use crate::tl::TLElement;

/// `c_t(n) = [2n+1]_omega / [2n+1]_q` kept as numerator and denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CpaiExact {
    pub numerator: TPoly,
    pub denominator: Scalar,
}

impl CpaiExact {
    /// Exact value after substituting `t`.
    pub fn at(&self, t: &Scalar) -> Result<Scalar> {
        self.numerator.substitute(t).checked_div(&self.denominator)
    }

    pub fn eval(&self, p: &NumericParams) -> Result<f64> {
        Ok(self.numerator.eval(p.q, p.t)? / self.denominator.eval(p.q)?)
    }
}

pub fn cpai_coefficient_exact(n: usize) -> CpaiExact {
    let m = 2 * n as i64 + 1;
    CpaiExact {
        numerator: qint_t(m).expect("positive index"),
        denominator: qint(m).expect("positive index"),
    }
}

/// `c_t(n)` in floating point through the three-term recurrences.
pub fn cpai_coefficient(n: usize, p: &NumericParams) -> f64 {
    qint_numeric(2 * n + 1, p.t) / qint_numeric(2 * n + 1, p.delta)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CpaiRow {
    pub n: usize,
    pub delta: f64,
    pub t: f64,
    pub c_formula: f64,
    pub c_diagram: Option<f64>,
    pub abs_gap: Option<f64>,
}

impl CpaiRow {
    fn formula_only(n: usize, p: &NumericParams) -> Self {
        Self {
            n,
            delta: p.delta,
            t: p.t,
            c_formula: cpai_coefficient(n, p),
            c_diagram: None,
            abs_gap: None,
        }
    }
}

/// Diagrammatic `c_t(n) = atr(p_2n) / tr(p_2n)` against the formula.
/// Fails if the two sides differ symbolically.
pub fn coefficient_cross_check(n: usize, p: &NumericParams, max_strands: usize) -> Result<CpaiRow> {
    let c_formula = cpai_coefficient(n, p);
    let c_diagram = if n == 0 {
        1.0
    } else {
        let g = jones_wenzl_capped(2 * n, max_strands)?;
        let (atr, tr) = (annular_trace(&g)?, g.markov_trace());
        let exact = cpai_coefficient_exact(n);
        if atr != exact.numerator || tr != exact.denominator {
            return Err(Error::CheckFailed(format!(
                "diagrammatic coefficient at n = {n} is ({atr})/({tr})"
            )));
        }
        atr.eval(p.q, p.t)? / tr.eval(p.q)?
    };
    Ok(CpaiRow {
        n,
        delta: p.delta,
        t: p.t,
        c_formula,
        c_diagram: Some(c_diagram),
        abs_gap: Some((c_formula - c_diagram).abs()),
    })
}

/// Rows for `n = 0..=n_max`; rows with `2n <= max_strands` carry the
/// diagrammatic value too.
pub fn cpai_table(p: &NumericParams, n_max: usize, max_strands: usize) -> Result<Vec<CpaiRow>> {
    (0..=n_max)
        .map(|n| {
            if 2 * n <= max_strands {
                coefficient_cross_check(n, p, max_strands)
            } else {
                Ok(CpaiRow::formula_only(n, p))
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayReport {
    pub rows: Vec<CpaiRow>,
    pub c_last: f64,
    pub max_last_third: f64,
    pub strictly_decreasing: bool,
    pub pass: bool,
}

/// `c_t(n)` for `n <= n_max` with the verdict
/// `c_t(n_max) < 1e-2 and max over the last third < 2e-2`.
pub fn decay_report(p: &NumericParams, n_max: usize) -> Result<DecayReport> {
    if p.t >= p.delta {
        return Err(Error::Precondition(format!(
            "decay needs t < delta, got t = {} and delta = {}",
            p.t, p.delta
        )));
    }
    let rows: Vec<CpaiRow> = (0..=n_max).map(|n| CpaiRow::formula_only(n, p)).collect();
    let c: Vec<f64> = rows.iter().map(|r| r.c_formula).collect();
    let c_last = c[n_max];
    let max_last_third = c[n_max - n_max / 3..].iter().copied().fold(f64::MIN, f64::max);
    let strictly_decreasing = c.windows(2).skip(1).all(|w| w[1] < w[0]);
    Ok(DecayReport {
        rows,
        c_last,
        max_last_third,
        strictly_decreasing,
        pass: c_last < 1e-2 && max_last_third < 2e-2,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub eps: f64,
    pub c: f64,
    pub abs_dev: f64,
}

/// `|c_(delta - eps)(n) - 1|` for each `n <= n_max` and `eps`.
pub fn convergence_report(n_max: usize, delta: f64, eps: &[f64]) -> Result<Vec<ConvergenceRow>> {
    let base = NumericParams::at_delta(delta)?;
    let mut rows = Vec::new();
    for n in 0..=n_max {
        for &e in eps {
            if e <= 0.0 {
                return Err(Error::InvalidParams(format!("eps must be positive, got {e}")));
            }
            let c = cpai_coefficient(n, &base.with_t(delta - e)?);
            rows.push(ConvergenceRow {
                n,
                eps: e,
                c,
                abs_dev: (c - 1.0).abs(),
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityVerdict {
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub all_zero: bool,
    pub first_nonzero: Option<String>,
}

/// `p_2k` inside `TL_size`, the extra strands closed off by caps and cups.
pub fn embedded_jw(k: usize, size: usize, max_strands: usize) -> Result<TLElement> {
    let g = if k == 0 {
        TLElement::identity(0)
    } else {
        jones_wenzl_capped(2 * k, max_strands)?
    };
    g.pad_caps(size)
}

/// `<x g_n y, g_m> = 0` for `trials` seeded random pairs `x, y`.
pub fn orthogonality_check(n: usize, m: usize, trials: usize, seed: u64) -> Result<OrthogonalityVerdict> {
    orthogonality_check_capped(n, m, trials, seed, 8)
}

pub fn orthogonality_check_capped(
    n: usize,
    m: usize,
    trials: usize,
    seed: u64,
    max_strands: usize,
) -> Result<OrthogonalityVerdict> {
    if n == m {
        return Err(Error::Precondition(format!("orthogonality needs n != m, got {n} twice")));
    }
    let size = 2 * n.max(m);
    let gn = embedded_jw(n, size, max_strands)?;
    let gm = embedded_jw(m, size, max_strands)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32) ^ ((m as u64) << 40));
    let mut first_nonzero = None;
    for trial in 0..trials {
        let x = TLElement::random(size, 4, &mut rng);
        let y = TLElement::random(size, 4, &mut rng);
        let v = x.multiply(&gn)?.multiply(&y)?.inner(&gm)?;
        if !v.is_zero() && first_nonzero.is_none() {
            first_nonzero = Some(format!("trial {trial}: {v}"));
        }
    }
    Ok(OrthogonalityVerdict {
        n,
        m,
        trials,
        all_zero: first_nonzero.is_none(),
        first_nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(delta: f64, t: f64) -> NumericParams {
        NumericParams::new(delta, t).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(cpai_coefficient(0, &params(2.5, 1.0)), 1.0);
        assert!((cpai_coefficient(1, &params(3.0, 2.0)) - 0.375).abs() < 1e-15);
        for n in 0..6 {
            assert_eq!(cpai_coefficient_exact(n).at(&Scalar::delta()).unwrap(), Scalar::one());
        }
        let e = cpai_coefficient_exact(1);
        assert_eq!(e.numerator.to_string(), "t^2 - 1");
    }

    #[test]
    fn cross_check_agrees() {
        for delta in [2.0, 2.5, 3.0] {
            for k in 1..=10 {
                let p = params(delta, delta * k as f64 / 11.0);
                for n in 0..=4 {
                    let row = coefficient_cross_check(n, &p, 8).unwrap();
                    assert!(row.abs_gap.unwrap() <= 1e-12, "{row:?}");
                }
            }
        }
    }

    #[test]
    fn cross_check_respects_cap() {
        assert!(matches!(
            coefficient_cross_check(3, &params(2.5, 1.0), 4),
            Err(Error::ResourceCap { .. })
        ));
        let rows = cpai_table(&params(2.5, 1.0), 5, 4).unwrap();
        assert!(rows[2].c_diagram.is_some() && rows[3].c_diagram.is_none());
    }

    #[test]
    fn decay() {
        let r = decay_report(&params(2.5, 2.4), 60).unwrap();
        assert!(r.c_last < 1e-2 && r.pass && r.strictly_decreasing);
        assert_eq!(r.rows[0].c_formula, 1.0);
        assert!(matches!(decay_report(&params(2.5, 2.5), 60), Err(Error::Precondition(_))));
    }

    #[test]
    fn convergence() {
        let rows = convergence_report(10, 2.5, &[1e-1, 1e-2, 1e-3, 1e-4]).unwrap();
        for r in &rows {
            if r.n == 0 {
                assert_eq!(r.abs_dev, 0.0);
            }
            if r.eps == 1e-4 {
                assert!(r.abs_dev < 1e-2, "{r:?}");
            }
        }
        for n in 1..=10 {
            let devs: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.abs_dev).collect();
            assert!(devs.windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn orthogonality() {
        for (n, m) in [(0, 1), (1, 0), (1, 2), (0, 2)] {
            let v = orthogonality_check(n, m, 10, 42).unwrap();
            assert!(v.all_zero, "{v:?}");
        }
        assert!(matches!(orthogonality_check(1, 1, 1, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn through_strand_padding_is_not_orthogonal() {
        // With identity padding x * 1 * y need not be orthogonal to p_2.
        let p2 = jones_wenzl_capped(2, 8).unwrap();
        let one = TLElement::identity(2);
        assert!(!one.inner(&p2).unwrap().is_zero());
        let capped = embedded_jw(0, 2, 8).unwrap();
        assert!(capped.inner(&p2).unwrap().is_zero());
    }
}
