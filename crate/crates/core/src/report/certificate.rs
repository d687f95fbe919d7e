//! The aggregated certificate: every check suite run at one `delta`.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value as Json};

use super::{
    coefficient_cross_check, convergence_report, cpai_coefficient, cpai_coefficient_exact, decay_report,
    orthogonality_check_capped,
};
use crate::annular::{
    adjoint_law_holds, annular_basis, annular_trace, disc_pairing, elementary_tangles, gram_matrix_capped,
    psd_sweep, DEFAULT_GRAM_CAP, PSD_TOL,
};
use crate::error::{Error, Result};
use crate::jones_wenzl::{jones_wenzl_capped, jw_trace_table_with, verify_jw};
use crate::scalar::{qint_t, NumericParams, Scalar, TPoly};
use crate::se_algebra::{embed_jw, pi0_act_left, pi0_act_right, tau_gram, BoxElement, ModuleVector};
use crate::tl::TLElement;

pub const SCHEMA: u32 = 1;

/// Evenly spaced `t` values from `start` to `end` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TGrid {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl TGrid {
    /// `t = delta * k / 11` for `k = 1..=10`.
    pub fn default_for(delta: f64) -> Self {
        Self {
            start: delta / 11.0,
            end: 10.0 * delta / 11.0,
            steps: 10,
        }
    }

    /// Parses `a:b:steps`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("t grid must look like a:b:steps, got '{s}'"));
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else { return Err(bad()) };
        let grid = Self {
            start: a.trim().parse().map_err(|_| bad())?,
            end: b.trim().parse().map_err(|_| bad())?,
            steps: n.trim().parse().map_err(|_| bad())?,
        };
        if grid.steps == 0 || grid.start > grid.end {
            return Err(bad());
        }
        Ok(grid)
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let h = (self.end - self.start) / (self.steps - 1) as f64;
        (0..self.steps).map(|k| self.start + h * k as f64).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateParams {
    pub delta: f64,
    pub t_grid: TGrid,
    pub n_max: usize,
    pub seed: u64,
    pub max_strands: usize,
}

impl CertificateParams {
    /// Default profile at `delta`; rejects `delta < 2`.
    pub fn new(delta: f64) -> Result<Self> {
        NumericParams::at_delta(delta)?;
        Ok(Self {
            delta,
            t_grid: TGrid::default_for(delta),
            n_max: 4,
            seed: 1,
            max_strands: 8,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Json,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub capped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub schema: u32,
    pub seed: u64,
    pub params: Json,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl Certificate {
    /// 0 on overall pass, 3 if a failing check hit a resource cap, else 1.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else if self.checks.iter().any(|c| c.capped) {
            3
        } else {
            1
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

type Source<'a> = &'a (dyn Fn(usize) -> Result<TLElement> + Sync);
type Outcome = Result<(bool, Json)>;

const DECAY_RATIO: f64 = 0.96;
const DECAY_N: usize = 60;
const CONVERGENCE_N: usize = 10;
const CONVERGENCE_EPS: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];
const PSD_POINTS: usize = 20;
const ORTHOGONALITY_MAX: usize = 3;
const ORTHOGONALITY_TRIALS: usize = 20;
const JW_VERIFY_MAX: usize = 8;
const ORACLE_ELEMENTS: usize = 100;
const SE_DEGREE: usize = 2;
const SE_N_MAX: usize = 6;

/// Runs every check with the cached Jones-Wenzl idempotents.
pub fn certificate(params: &CertificateParams) -> Result<Certificate> {
    let cap = params.max_strands;
    certificate_with(params, &move |m| jones_wenzl_capped(m, cap))
}

/// [`certificate`] with the idempotents supplied by `source`.
pub fn certificate_with(params: &CertificateParams, source: Source<'_>) -> Result<Certificate> {
    let base = NumericParams::at_delta(params.delta)?;
    let grid: Vec<NumericParams> = params
        .t_grid
        .points()
        .into_iter()
        .map(|t| base.with_t(t))
        .collect::<Result<_>>()?;
    let p = params;
    type Job<'a> = (&'static str, Box<dyn Fn() -> Outcome + Send + Sync + 'a>);
    let jobs: Vec<Job> = vec![
        ("trace_identity", Box::new(|| trace_identity(p, source))),
        ("annular_trace_identity", Box::new(|| annular_trace_identity(p, source))),
        ("coefficient_cross_check", Box::new(|| cross_check(p, &grid))),
        ("coefficient_at_zero", Box::new(|| coefficient_at_zero(&grid))),
        ("decay", Box::new(|| decay(&base))),
        ("convergence", Box::new(|| convergence(p.delta))),
        ("gram_psd", Box::new(|| gram_psd(p))),
        ("t_equals_delta", Box::new(|| t_equals_delta(p))),
        ("jw_properties", Box::new(|| jw_properties(source))),
        ("orthogonality", Box::new(|| orthogonality(p))),
        ("annular_adjoint_law", Box::new(annular_adjoint_law)),
        ("se_algebra_laws", Box::new(|| se_algebra_laws(p, &base))),
        ("se_state", Box::new(|| se_state(p))),
    ];
    let checks: Vec<CheckResult> = jobs
        .into_par_iter()
        .map(|(name, job)| match job() {
            Ok((pass, witness)) => CheckResult {
                name,
                pass,
                witness,
                error: None,
                capped: false,
            },
            Err(e) => CheckResult {
                name,
                pass: false,
                witness: Json::Null,
                capped: matches!(e, Error::ResourceCap { .. }),
                error: Some(e.to_string()),
            },
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    Ok(Certificate {
        schema: SCHEMA,
        seed: params.seed,
        params: json!({
            "delta": params.delta,
            "q": base.q,
            "t_grid": params.t_grid.points(),
            "n_max": params.n_max,
            "max_strands": params.max_strands,
        }),
        checks,
        pass,
    })
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Turns a failed identity into a failing verdict, keeping other errors.
fn failed_check(r: Result<Json>) -> Outcome {
    match r {
        Ok(w) => Ok((true, w)),
        Err(Error::CheckFailed(msg)) => Ok((false, json!({ "failure": msg }))),
        Err(e) => Err(e),
    }
}

fn trace_identity(p: &CertificateParams, source: Source<'_>) -> Outcome {
    failed_check(jw_trace_table_with(p.n_max, source).map(|rows| {
        json!(rows
            .iter()
            .map(|(n, tr)| json!({ "n": n, "trace": tr.to_string() }))
            .collect::<Vec<_>>())
    }))
}

fn annular_trace_identity(p: &CertificateParams, source: Source<'_>) -> Outcome {
    let mut rows = Vec::new();
    for n in 1..=p.n_max {
        let atr = annular_trace(&source(2 * n)?)?;
        let expected = qint_t(2 * n as i64 + 1)?;
        if atr != expected {
            let msg = format!("annular trace of p_{} at n = {n} is {atr}, expected {expected}", 2 * n);
            return Ok((false, json!({ "failure": msg })));
        }
        rows.push(json!({ "n": n, "annular_trace": atr.to_string() }));
    }
    Ok((true, json!(rows)))
}

fn cross_check(p: &CertificateParams, grid: &[NumericParams]) -> Outcome {
    let rows = grid
        .par_iter()
        .map(|g| (0..=p.n_max).map(|n| coefficient_cross_check(n, g, p.max_strands)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>();
    let rows = match rows {
        Ok(r) => r.into_iter().flatten().collect::<Vec<_>>(),
        Err(Error::CheckFailed(msg)) => return Ok((false, json!({ "failure": msg }))),
        Err(e) => return Err(e),
    };
    let max_gap = rows.iter().filter_map(|r| r.abs_gap).fold(0.0, f64::max);
    Ok((
        max_gap <= 1e-12,
        json!({ "rows": rows.len(), "max_abs_gap": max_gap, "tolerance": 1e-12 }),
    ))
}

fn coefficient_at_zero(grid: &[NumericParams]) -> Outcome {
    let exact = cpai_coefficient_exact(0);
    let exact_one = exact.numerator == TPoly::one() && exact.denominator.is_one();
    let numeric_one = grid.iter().all(|g| cpai_coefficient(0, g) == 1.0);
    Ok((exact_one && numeric_one, json!({ "exact": exact_one, "numeric": numeric_one })))
}

fn decay(base: &NumericParams) -> Outcome {
    let p = base.with_t(DECAY_RATIO * base.delta)?;
    let r = decay_report(&p, DECAY_N)?;
    Ok((
        r.pass,
        json!({
            "t": p.t,
            "n_max": DECAY_N,
            "c_last": r.c_last,
            "max_last_third": r.max_last_third,
            "strictly_decreasing": r.strictly_decreasing,
        }),
    ))
}

fn convergence(delta: f64) -> Outcome {
    let rows = convergence_report(CONVERGENCE_N, delta, &CONVERGENCE_EPS)?;
    let smallest = CONVERGENCE_EPS[CONVERGENCE_EPS.len() - 1];
    let worst = rows
        .iter()
        .filter(|r| r.eps == smallest)
        .map(|r| r.abs_dev)
        .fold(0.0, f64::max);
    let monotone = (0..=CONVERGENCE_N).all(|n| {
        let devs: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.abs_dev).collect();
        devs.windows(2).all(|w| w[1] <= w[0])
    });
    Ok((
        worst < 1e-2,
        json!({ "eps": smallest, "n_max": CONVERGENCE_N, "max_abs_dev": worst, "monotone_in_eps": monotone }),
    ))
}

fn gram_psd(p: &CertificateParams) -> Outcome {
    let rows = psd_sweep(p.n_max, DEFAULT_GRAM_CAP, &[p.delta], PSD_POINTS)?;
    let worst = rows
        .iter()
        .min_by(|a, b| a.min_eig.total_cmp(&b.min_eig))
        .expect("nonempty sweep");
    Ok((
        worst.min_eig >= -PSD_TOL,
        json!({ "points": PSD_POINTS, "min_eig": worst.min_eig, "at_n": worst.n, "at_t": worst.t }),
    ))
}

fn t_equals_delta(p: &CertificateParams) -> Outcome {
    let d = Scalar::delta();
    for n in 0..=p.n_max {
        let g = gram_matrix_capped(n, DEFAULT_GRAM_CAP)?;
        let basis = annular_basis(n);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                if g[i][j].substitute(&d) != disc_pairing(a, b)?.substitute(&d) {
                    return Ok((false, json!({ "failure": format!("Gram entry ({i}, {j}) at n = {n}") })));
                }
            }
        }
    }
    let mut r = rng(p.seed, 1);
    let even: Vec<usize> = (1..=(p.max_strands.min(6) / 2).max(1)).map(|k| 2 * k).collect();
    for k in 0..ORACLE_ELEMENTS {
        let x = TLElement::random(even[r.gen_range(0..even.len())], 6, &mut r);
        if annular_trace(&x)?.substitute(&d) != x.markov_trace() {
            return Ok((false, json!({ "failure": format!("random element {k}: {x}") })));
        }
    }
    Ok((true, json!({ "gram_n_max": p.n_max, "random_elements": ORACLE_ELEMENTS })))
}

fn jw_properties(source: Source<'_>) -> Outcome {
    let verdicts = (1..=JW_VERIFY_MAX)
        .into_par_iter()
        .map(|m| Ok((m, verify_jw(&source(m)?))))
        .collect::<Result<Vec<_>>>()?;
    let pass = verdicts.iter().all(|(_, v)| v.all());
    let failing: Vec<usize> = verdicts.iter().filter(|(_, v)| !v.all()).map(|(m, _)| *m).collect();
    Ok((pass, json!({ "m_max": JW_VERIFY_MAX, "failing": failing })))
}

fn orthogonality(p: &CertificateParams) -> Outcome {
    let pairs: Vec<(usize, usize)> = (0..=ORTHOGONALITY_MAX)
        .flat_map(|n| (0..=ORTHOGONALITY_MAX).map(move |m| (n, m)))
        .filter(|(n, m)| n != m)
        .collect();
    let verdicts = pairs
        .par_iter()
        .map(|&(n, m)| orthogonality_check_capped(n, m, ORTHOGONALITY_TRIALS, p.seed, p.max_strands))
        .collect::<Result<Vec<_>>>()?;
    let pass = verdicts.iter().all(|v| v.all_zero);
    let failing: Vec<_> = verdicts.iter().filter(|v| !v.all_zero).collect();
    Ok((
        pass,
        json!({ "pairs": pairs.len(), "trials_per_pair": ORTHOGONALITY_TRIALS, "failing": failing }),
    ))
}

fn annular_adjoint_law() -> Outcome {
    let mut checked = 0;
    for n in 0..=3 {
        for a in elementary_tangles(n) {
            if !adjoint_law_holds(a, n)? {
                return Ok((false, json!({ "failure": format!("{a:?} at n = {n}") })));
            }
            checked += 1;
        }
    }
    Ok((true, json!({ "n_max": 3, "tangles": checked })))
}

fn se_algebra_laws(p: &CertificateParams, base: &NumericParams) -> Outcome {
    let mut r = rng(p.seed, 2);
    let mut random = || BoxElement::random(SE_DEGREE, 2, &mut r);
    for k in 0..25 {
        let (x, y, z) = (random(), random(), random());
        if x.mul(&y).mul(&z) != x.mul(&y.mul(&z)) {
            return Ok((false, json!({ "failure": format!("associativity, triple {k}") })));
        }
    }
    for k in 0..50 {
        let (x, y) = (random(), random());
        if x.mul(&y).tau() != y.mul(&x).tau() {
            return Ok((false, json!({ "failure": format!("traciality, pair {k}") })));
        }
        if x.mul(&y).dagger() != y.dagger().mul(&x.dagger()) {
            return Ok((false, json!({ "failure": format!("involution, pair {k}") })));
        }
    }
    let g = tau_gram(SE_DEGREE);
    let dim = g.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for row in &g {
        for c in row {
            entries.push(c.eval(base.q)?);
        }
    }
    let m = DMatrix::from_row_slice(dim, dim, &entries);
    let min_eig = SymmetricEigen::new(m).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    Ok((
        min_eig >= -PSD_TOL,
        json!({ "triples": 25, "pairs": 50, "tau_gram_dim": dim, "tau_gram_min_eig": min_eig }),
    ))
}

fn se_state(p: &CertificateParams) -> Outcome {
    let mut r = rng(p.seed, 3);
    let xi = ModuleVector::xi(SE_N_MAX);
    for k in 0..50 {
        let x = BoxElement::random(SE_DEGREE, 3, &mut r);
        if pi0_act_left(&x, &xi)?.inner(&xi)? != TPoly::from(x.tau()) {
            return Ok((false, json!({ "failure": format!("vector state, element {k}") })));
        }
    }
    for k in 0..30 {
        let x = BoxElement::random_split(SE_DEGREE, 3, &mut r);
        if pi0_act_left(&x, &xi)? != pi0_act_right(&x, &xi)? {
            return Ok((false, json!({ "failure": format!("centrality, element {k}") })));
        }
    }
    for n in 0..=2 {
        let xi = ModuleVector::xi(4 * n);
        let g = embed_jw(n)?;
        let both = pi0_act_left(&g, &pi0_act_right(&g, &xi)?)?.inner(&xi)?;
        let expected = qint_t(2 * n as i64 + 1)?;
        if both != expected {
            return Ok((false, json!({ "failure": format!("sandwich at n = {n}: {both}") })));
        }
    }
    Ok((true, json!({ "n_max": SE_N_MAX, "state_samples": 50, "central_samples": 30, "sandwich_n_max": 2 })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones_wenzl::jones_wenzl;

    #[test]
    fn grid() {
        let g = TGrid::default_for(2.2);
        let pts = g.points();
        assert_eq!(pts.len(), 10);
        for (k, t) in pts.iter().enumerate() {
            assert!((t - 2.2 * (k + 1) as f64 / 11.0).abs() < 1e-12);
        }
        assert_eq!(TGrid::parse("0.5:2:4").unwrap().points(), vec![0.5, 1.0, 1.5, 2.0]);
        assert_eq!(TGrid::parse("1:1:1").unwrap().points(), vec![1.0]);
        for bad in ["1:2", "a:2:3", "2:1:3", "1:2:0"] {
            assert!(matches!(TGrid::parse(bad), Err(Error::InvalidParams(_))), "{bad}");
        }
    }

    #[test]
    fn rejects_small_delta() {
        assert!(matches!(CertificateParams::new(1.9), Err(Error::InvalidParams(_))));
        let mut p = CertificateParams::new(2.5).unwrap();
        p.t_grid = TGrid::parse("1:3:3").unwrap();
        assert!(matches!(certificate(&p), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn default_profile_passes() {
        let c = certificate(&CertificateParams::new(2.5).unwrap()).unwrap();
        for check in &c.checks {
            assert!(check.pass, "{}: {:?} {}", check.name, check.error, check.witness);
        }
        assert!(c.pass);
        assert_eq!(c.exit_code(), 0);
        assert_eq!(c.checks.len(), 13);
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["seed"], 1);
        assert_eq!(v["params"]["t_grid"].as_array().unwrap().len(), 10);
    }

    #[test]
    fn tampered_jones_wenzl_fails_and_names_n() {
        let p = CertificateParams::new(2.5).unwrap();
        let tampered = |m: usize| {
            let g = jones_wenzl(m)?;
            if m == 6 {
                let d = g.terms().keys().last().unwrap().clone();
                let bump = TLElement::from_diagram(d).scale(&Scalar::from_int(1));
                return g.try_add(&bump);
            }
            Ok(g)
        };
        let c = certificate_with(&p, &tampered).unwrap();
        assert!(!c.pass);
        assert_eq!(c.exit_code(), 1);
        let trace = c.check("trace_identity").unwrap();
        assert!(!trace.pass);
        assert!(trace.witness["failure"].as_str().unwrap().contains("n = 3"), "{}", trace.witness);
        assert!(!c.check("jw_properties").unwrap().pass);
        assert!(c.check("decay").unwrap().pass);
    }

    #[test]
    fn resource_caps_are_reported_per_check() {
        let mut p = CertificateParams::new(2.5).unwrap();
        p.n_max = 5;
        let c = certificate(&p).unwrap();
        let trace = c.check("trace_identity").unwrap();
        assert!(!trace.pass && trace.capped);
        assert!(trace.error.as_deref().unwrap().contains("resource cap"));
        assert!(c.check("decay").unwrap().pass);
        assert_eq!(c.exit_code(), 3);
    }
}
