//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs under `cargo test` with its own harness.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tlj_core::annular::{
    adjoint_law_holds, annular_trace, elementary_tangles, enumerate_annular_basis, gram_matrix, psd_sweep,
};
use tlj_core::jones_wenzl::{jones_wenzl, verify_jw};
use tlj_core::report::{
    coefficient_cross_check, convergence_report, decay_report, orthogonality_check, parse,
};
use tlj_core::se_algebra::{embed_jw, pi0_act_left, pi0_act_right, tau_gram, BoxElement, ModuleVector};
use tlj_core::tl::{basis, TLDiagram, TLElement};
use tlj_core::{qint, qint_t, NumericParams, Scalar, TPoly};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `[m]` at real `x = q` by the closed form, `m` at `q = 1`.
fn qint_closed(m: i32, q: f64) -> f64 {
    if (q - 1.0).abs() < 1e-15 {
        return m as f64;
    }
    (q.powi(m) - q.powi(-m)) / (q - 1.0 / q)
}

/// `[m]_omega` at `t = 2 cos(theta)`: `sin(m theta) / sin(theta)`.
fn qint_trig(m: i32, theta: f64) -> f64 {
    (m as f64 * theta).sin() / theta.sin()
}

fn c1_trace_identity() -> Outcome {
    for n in 1..=4i64 {
        let g = jones_wenzl(2 * n as usize).map_err(|e| e.to_string())?;
        let tr = g.markov_trace();
        ensure(tr == qint(2 * n + 1).unwrap(), || format!("n = {n}: {tr}"))?;
        for q in [1.5, 2.0, 3.0] {
            let v = tr.eval(q).unwrap();
            ensure((v - qint_closed(2 * n as i32 + 1, q)).abs() <= 1e-9 * v.abs(), || {
                format!("n = {n}: value {v} at q = {q}")
            })?;
        }
    }
    Ok("tr(p_2n) = [2n+1]_q exactly for n = 1..4".into())
}

fn c2_annular_identity() -> Outcome {
    for n in 1..=4i64 {
        let g = jones_wenzl(2 * n as usize).unwrap();
        let atr = annular_trace(&g).map_err(|e| e.to_string())?;
        ensure(atr == qint_t(2 * n + 1).unwrap(), || format!("n = {n}: {atr}"))?;
        for theta in [0.3, 0.7, 1.1] {
            let v = atr.eval(2.0, 2.0 * f64::cos(theta)).unwrap();
            let w = qint_trig(2 * n as i32 + 1, theta);
            ensure((v - w).abs() <= 1e-9, || format!("n = {n}: {v} vs {w} at theta = {theta}"))?;
        }
    }
    Ok("atr(p_2n) = [2n+1]_omega exactly in Q(q)[t] for n = 1..4".into())
}

fn c3_coefficient_formula() -> Outcome {
    let mut worst: f64 = 0.0;
    for delta in [2.0, 2.5, 3.0] {
        for k in 1..=10 {
            let p = NumericParams::new(delta, delta * k as f64 / 11.0).unwrap();
            for n in 0..=4 {
                let row = coefficient_cross_check(n, &p, 8).map_err(|e| e.to_string())?;
                worst = worst.max(row.abs_gap.unwrap());
            }
        }
    }
    ensure(worst <= 1e-12, || format!("max gap {worst:e}"))?;
    Ok(format!("max gap {worst:.2e} over 3 x 10 x 5 points"))
}

fn c4_decay() -> Outcome {
    let start = Instant::now();
    let p = NumericParams::new(2.5, 2.4).unwrap();
    let r = decay_report(&p, 60).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let omega = (2.4 + (2.4f64 * 2.4 - 4.0).sqrt()) / 2.0;
    let oracle = qint_closed(121, omega) / qint_closed(121, 2.0);
    ensure((r.c_last - oracle).abs() <= 1e-12 * oracle.max(1e-300) + 1e-18, || {
        format!("c(60) = {} but closed form gives {oracle}", r.c_last)
    })?;
    ensure(r.c_last < 1e-2, || format!("c(60) = {}", r.c_last))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("c(60) = {:.3e} at delta = 2.5, t = 2.4", r.c_last))
}

fn c5_convergence() -> Outcome {
    let rows = convergence_report(10, 2.5, &[1e-4]).map_err(|e| e.to_string())?;
    let worst = rows.iter().map(|r| r.abs_dev).fold(0.0, f64::max);
    ensure(rows.len() == 11 && worst < 1e-2, || format!("max |c - 1| = {worst}"))?;
    Ok(format!("max |c - 1| = {worst:.3e} for n <= 10 at eps = 1e-4"))
}

fn c6_positivity() -> Outcome {
    let rows = psd_sweep(4, 4, &[2.0, 2.5, 3.0], 20).map_err(|e| e.to_string())?;
    ensure(rows.len() == 3 * 20 * 5, || format!("{} rows", rows.len()))?;
    ensure(gram_matrix(4).unwrap().len() == 70, || "dimension of V(t)_4".into())?;
    let worst = rows.iter().min_by(|a, b| a.min_eig.total_cmp(&b.min_eig)).unwrap();
    ensure(worst.min_eig >= -1e-9, || format!("{worst:?}"))?;
    Ok(format!(
        "min eigenvalue {:.3e} (n = {}, delta = {}, t = {:.3})",
        worst.min_eig, worst.n, worst.delta, worst.t
    ))
}

/// Loops formed by two matchings, counted by union-find.
fn disc_loops(a: &[u8], b: &[u8]) -> u32 {
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut parent: Vec<usize> = (0..a.len()).collect();
    for m in [a, b] {
        for (x, &y) in m.iter().enumerate() {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y as usize));
            parent[rx] = ry;
        }
    }
    (0..a.len()).filter(|&x| find(&mut parent, x) == x).count() as u32
}

fn c7_degeneration() -> Outcome {
    let d = Scalar::delta();
    for n in 0..=4 {
        let g = gram_matrix(n).unwrap();
        let b = enumerate_annular_basis(n);
        for (i, x) in b.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let expected = Scalar::delta_pow(disc_loops(x.matching(), y.matching()));
                ensure(g[i][j].substitute(&d) == expected, || format!("n = {n}, entry ({i}, {j})"))?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..100 {
        let m = 2 * rng.gen_range(1..=3);
        let x = TLElement::random(m, 6, &mut rng);
        let atr = annular_trace(&x).unwrap().substitute(&d);
        ensure(atr == x.markov_trace(), || format!("random element {k}: {x}"))?;
    }
    Ok("Gram at t = delta is the disc pairing for n <= 4; atr = tr on 100 elements".into())
}

/// Solves `coeff(1) = 1, e_i x = 0` by Gaussian elimination over `Q(q)`.
fn jw_by_linear_system(m: usize) -> TLElement {
    let b = basis(m).diagrams();
    let n = b.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut id_row = vec![Scalar::zero(); n + 1];
    id_row[b.iter().position(|d| *d == TLDiagram::identity(m)).unwrap()] = Scalar::one();
    id_row[n] = Scalar::one();
    rows.push(id_row);
    for i in 1..m {
        let mut block = vec![vec![Scalar::zero(); n + 1]; n];
        for (col, d) in b.iter().enumerate() {
            let img = TLElement::generator(m, i).unwrap().multiply(&TLElement::from_diagram(d.clone())).unwrap();
            for (e, c) in img.terms() {
                let r = b.iter().position(|x| x == e).unwrap();
                block[r][col] = &block[r][col] + c;
            }
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())));
    }
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].inv().unwrap();
        rows[pivot_row] = rows[pivot_row].iter().map(|c| c * &inv).collect();
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pr = rows[pivot_row].clone();
                for (c, pc) in rows[r].iter_mut().zip(&pr) {
                    *c = &*c - &(&f * pc);
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    assert_eq!(pivots.len(), n, "unique solution");
    TLElement::from_terms(m, pivots.iter().enumerate().map(|(r, &col)| (b[col].clone(), rows[r][n].clone()))).unwrap()
}

fn c8_jones_wenzl() -> Outcome {
    for m in 1..=8 {
        let v = verify_jw(&jones_wenzl(m).unwrap());
        ensure(v.all(), || format!("m = {m}: {v:?}"))?;
    }
    for m in 1..=5 {
        ensure(jones_wenzl(m).unwrap() == jw_by_linear_system(m), || format!("oracle differs at m = {m}"))?;
    }
    Ok("defining properties for m <= 8; linear-system oracle agrees for m <= 5".into())
}

fn c9_orthogonality() -> Outcome {
    let mut pairs = 0;
    for n in 0..=3 {
        for m in 0..=3 {
            if n == m {
                continue;
            }
            let v = orthogonality_check(n, m, 20, 2024).map_err(|e| e.to_string())?;
            ensure(v.all_zero, || format!("{v:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs x 20 trials, all inner products exactly 0"))
}

fn c10_adjoint_law() -> Outcome {
    let mut count = 0;
    for n in 0..=3 {
        for a in elementary_tangles(n) {
            ensure(adjoint_law_holds(a, n).map_err(|e| e.to_string())?, || format!("{a:?} at n = {n}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} cap/cup/rotate instances for n <= 3"))
}

fn c11_algebra_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..25 {
        let (x, y, z) = (
            BoxElement::random(2, 2, &mut rng),
            BoxElement::random(2, 2, &mut rng),
            BoxElement::random(2, 2, &mut rng),
        );
        ensure(x.mul(&y).mul(&z) == x.mul(&y.mul(&z)), || format!("associativity, triple {k}"))?;
    }
    for k in 0..50 {
        let (x, y) = (BoxElement::random(2, 2, &mut rng), BoxElement::random(2, 2, &mut rng));
        ensure(x.mul(&y).tau() == y.mul(&x).tau(), || format!("traciality, pair {k}"))?;
        ensure(x.mul(&y).dagger() == y.dagger().mul(&x.dagger()), || format!("involution, pair {k}"))?;
    }
    let q = NumericParams::at_delta(2.5).unwrap().q;
    let g = tau_gram(2);
    let dim = g.len();
    let m = DMatrix::from_fn(dim, dim, |i, j| g[i][j].eval(q).unwrap());
    let min = SymmetricEigen::new(m).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    ensure(min >= -1e-9, || format!("tau-Gram min eigenvalue {min}"))?;
    Ok(format!("25 triples, 50 pairs; tau-Gram ({dim} x {dim}) min eigenvalue {min:.3e}"))
}

fn c12_state_and_centrality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let xi = ModuleVector::xi(6);
    let err = |e: tlj_core::Error| e.to_string();
    for k in 0..50 {
        let x = BoxElement::random(2, 3, &mut rng);
        let s = pi0_act_left(&x, &xi).map_err(err)?.inner(&xi).map_err(err)?;
        ensure(s == TPoly::from(x.tau()), || format!("state, element {k}"))?;
    }
    for k in 0..30 {
        let x = BoxElement::random_split(2, 3, &mut rng);
        ensure(pi0_act_left(&x, &xi).map_err(err)? == pi0_act_right(&x, &xi).map_err(err)?, || {
            format!("centrality, element {k}")
        })?;
    }
    for n in 1..=2 {
        let g = embed_jw(n).map_err(err)?;
        let big = ModuleVector::xi(4 * n);
        let s = pi0_act_left(&g, &pi0_act_right(&g, &big).map_err(err)?).map_err(err)?.inner(&big).map_err(err)?;
        ensure(s == qint_t(2 * n as i64 + 1).unwrap(), || format!("sandwich at n = {n}: {s}"))?;
    }
    Ok("state = tau on 50 elements, 30 split elements central, sandwich = [2n+1]_omega".into())
}

fn tlj(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_tlj")).args(args).output().expect("tlj runs")
}

fn c13_parser_and_cli() -> Outcome {
    let corpus: Vec<&str> = include_str!("data/corpus.txt").lines().collect();
    ensure(corpus.len() == 50, || format!("{} corpus lines", corpus.len()))?;
    for src in &corpus {
        let e = parse(src).map_err(|e| format!("{src}: {e}"))?;
        ensure(parse(&e.to_string()).ok() == Some(e.clone()), || format!("{src} printed as {e}"))?;
    }
    let out = tlj(&["eval", "atr(jw(2))"]);
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success() && text.trim() == "t^2 - 1", || format!("tlj eval printed '{text}'"))?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("certificate.json");
    let start = Instant::now();
    let out = tlj(&["certificate", "--delta", "2.5", "--out", path.to_str().unwrap()]);
    let elapsed = start.elapsed();
    ensure(out.status.code() == Some(0), || {
        format!("certificate exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stdout))
    })?;
    ensure(elapsed < Duration::from_secs(600), || format!("certificate took {elapsed:?}"))?;
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(cert["schema"] == 1 && cert["pass"] == true, || "certificate content".into())?;
    Ok(format!("50 expressions round-trip; eval prints t^2 - 1; certificate exit 0 in {:.1}s", elapsed.as_secs_f64()))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("trace identity", c1_trace_identity),
        ("annular trace identity", c2_annular_identity),
        ("coefficient formula", c3_coefficient_formula),
        ("decay in n", c4_decay),
        ("convergence as t -> delta", c5_convergence),
        ("module positivity", c6_positivity),
        ("t = delta degeneration", c7_degeneration),
        ("Jones-Wenzl properties", c8_jones_wenzl),
        ("orthogonality", c9_orthogonality),
        ("annular adjoint law", c10_adjoint_law),
        ("Bacher algebra laws", c11_algebra_laws),
        ("vector state and centrality", c12_state_and_centrality),
        ("parser and CLI", c13_parser_and_cli),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail} [{secs:.1}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
