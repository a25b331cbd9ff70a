//! The acceptance suite: ten criteria, each cross-checking independent routes.

use std::collections::{HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::bijection::*;
use crate::colorful::walk_of_signature;
use crate::exploration::{assemble_colorful, assemble_rigid};
use crate::geometry::*;
use crate::oracle::*;
use crate::rigid::{validate_rigid, RigidQuad};
use crate::sampler::{chi_square_uniform, seeded_rng, Sampler, StepChoice};
use crate::series::*;
use crate::statistics::{dictionary_report, is_fighting_fish};

/// Sizes of one run; `quick` trims every exhaustive range and sample count.
#[derive(Clone, Copy, Debug)]
struct Scale {
    quick: bool,
}

impl Scale {
    fn pick(&self, full: usize, quick: usize) -> usize {
        if self.quick {
            quick
        } else {
            full
        }
    }
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(s: &TruncSeries, lo: usize, hi: usize) -> Vec<i64> {
    (lo..=hi).map(|k| i64::try_from(s.coeff(&[k]).to_integer()).unwrap()).collect()
}

fn criterion_1(s: Scale) -> Outcome {
    let top = s.pick(8, 6);
    let z = rigid_counts(top);
    let table = catalytic_counts(1, top).map_err(|e| e.to_string())?;
    let traces = brute_rigid(1, top - 1);
    for n in 3..=top {
        let from_traces = traces.iter().filter(|t| t.steps.len() == n - 1 && t.steps[0].is_l()).count();
        let objects: HashSet<Vec<usize>> = brute_rooted(n)
            .iter()
            .map(|r| validate_rigid(r.map(), None).map(|v| v.canonical_code()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let routes = [
            z[n].clone(),
            BigInt::from(table.rigid_count(n).map_err(|e| e.to_string())?),
            BigInt::from(from_traces),
            BigInt::from(objects.len()),
        ];
        ensure(routes.iter().all(|x| *x == routes[0]), || format!("n={n}: {routes:?}"))?;
    }
    ensure(z[3..=5] == [1, 5, 33].map(BigInt::from), || format!("Z = {:?}", &z[3..=5]))?;
    let col: Vec<usize> = (3..=5).map(|n| brute_colorful(n).len()).collect();
    ensure(col == [1, 5, 33], || format!("colorful {col:?}"))?;
    Ok(format!("|R_3..{top}| = {:?}; colorful 1, 5, 33", &z[3..=top]))
}

fn criterion_2(_: Scale) -> Outcome {
    let p = series_p(5, 2);
    let b = series_b(5, 2, 2);
    let c = series_c(5, 2, 2);
    let e = series_e(5, 2, 2);
    let checks: Vec<(&str, Vec<i64>, Vec<i64>)> = vec![
        ("[x]P", ints(&p.extract_y(1), 2, 4), vec![1, 2, 10]),
        ("[x^2]P", ints(&p.extract_y(2), 3, 5), vec![2, 8, 50]),
        ("[xy]B", ints(&b.extract_xy(1, 1), 0, 5), vec![0, 1, 0, 0, 0, 0]),
        ("[xy^2]B", ints(&b.extract_xy(1, 2), 2, 4), vec![1, 2, 10]),
        ("[x^2y^2]B", ints(&b.extract_xy(2, 2), 2, 4), vec![1, 1, 5]),
        ("[xy^2]C", ints(&c.extract_xy(1, 2), 2, 4), vec![1, 2, 10]),
        ("[x^2y^2]C", ints(&c.extract_xy(2, 2), 2, 4), vec![0, 1, 5]),
        ("[xy]E", ints(&e.extract_xy(1, 1), 3, 5), vec![1, 5, 33]),
        ("[xy^2]E", ints(&e.extract_xy(1, 2), 4, 5), vec![2, 15]),
    ];
    for (name, got, want) in &checks {
        ensure(got == want, || format!("{name}: {got:?} != {want:?}"))?;
    }
    Ok(format!("{} displayed coefficient lists match", checks.len()))
}

fn criterion_3(s: Scale) -> Outcome {
    let steps = s.pick(6, 4);
    let mut checked = 0;
    for p in 1..=3 {
        for j in 1..=steps {
            for t in traces_exact(p, j) {
                let r = assemble_rigid(&t).map_err(|e| e.to_string())?;
                let q = psi_p(&r).map_err(|e| e.to_string())?;
                ensure(q == assemble_colorful(&t).map_err(|e| e.to_string())?, || format!("psi_p image {t}"))?;
                ensure(psi_p_inverse(&q).map_err(|e| e.to_string())? == r, || format!("psi_p inverse {t}"))?;
                checked += 1;
            }
        }
    }
    // rooted objects of size n have n - 1 steps
    for n in 3..=steps + 1 {
        let mut images = HashSet::new();
        let mut refined = HashSet::new();
        for r in brute_rooted(n) {
            let q = psi(&r).map_err(|e| e.to_string())?;
            ensure(psi_inverse(&q).map_err(|e| e.to_string())? == r, || format!("psi inverse n={n}"))?;
            ensure(images.insert(q.canonical_code()), || format!("psi not injective n={n}"))?;
            let sig = r.base_signature();
            let u = psi_b(&r).map_err(|e| e.to_string())?;
            ensure(psi_b_inverse(&u, &sig).map_err(|e| e.to_string())? == r, || format!("psi_b inverse n={n}"))?;
            ensure(refined.insert((u.canonical_code(), sig)), || format!("psi_b not injective n={n}"))?;
            let mirrored = psi(&r.mirror()).map_err(|e| e.to_string())?;
            ensure(mirrored == q.relabel().map_err(|e| e.to_string())?, || format!("mirror equivariance n={n}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} objects round-trip"))
}

fn criterion_4(s: Scale) -> Outcome {
    let samples = s.pick(1000, 100);
    let mut count = 0;
    for n in 3..=6 {
        for r in brute_rooted(n) {
            dictionary_report(&r).and_then(|d| d.check()).map_err(|e| format!("n={n}: {e}"))?;
            count += 1;
        }
    }
    let sampler = Sampler::new(12);
    let mut rng = seeded_rng(4);
    for i in 0..samples {
        let r = sampler.sample_rigid_rooted(12, &mut rng).map_err(|e| e.to_string())?;
        dictionary_report(&r).and_then(|d| d.check()).map_err(|e| format!("sample {i}: {e}"))?;
    }
    Ok(format!("{count} exhaustive objects and {samples} samples at n = 12"))
}

fn criterion_5(s: Scale) -> Outcome {
    let check = |r: &RigidQuad| -> Result<(), String> {
        let sig = r.base_signature();
        let q = psi(r).map_err(|e| e.to_string())?;
        let asc = ascent_path(&q).map_err(|e| e.to_string())?;
        ensure(asc.signature == sig, || format!("ascent {:?} vs base {sig:?}", asc.signature))?;
        let u = psi_b(r).map_err(|e| e.to_string())?;
        ensure(u.boundary_walk() == walk_of_signature(&sig), || format!("walk for {sig:?}"))
    };
    let mut count = 0;
    for n in 3..=6 {
        for r in brute_rooted(n) {
            check(&r)?;
            count += 1;
        }
    }
    // signatures are compositions of sums at most n - 2, so (2,3,2) first occurs at n = 9
    if s.quick {
        return Ok(format!("{count} objects with n <= 6; class (2,3,2) skipped in quick mode"));
    }
    let class: Vec<RigidQuad> = brute_rooted(9).into_iter().filter(|r| r.base_signature() == [2, 3, 2]).collect();
    ensure(!class.is_empty(), || "no (2,3,2) objects".into())?;
    for r in &class {
        check(r)?;
    }
    Ok(format!("{count} objects with n <= 6 and all {} of class (2,3,2)", class.len()))
}

fn criterion_6(_: Scale) -> Outcome {
    let formula = |n: u64| -> u64 {
        let c = (0..n).fold(1u64, |a, i| a * (2 * n - i) / (i + 1));
        3 * (1 << (n - 1)) * c / ((n + 1) * (n + 2))
    };
    let mut got = Vec::new();
    for n in 1..=3u64 {
        // boundary length 4n means n + 2 non-root convex corners
        let k = brute_rooted(n as usize + 2).iter().filter(|r| is_fighting_fish(r)).count() as u64;
        ensure(k == formula(n), || format!("n={n}: {k} vs {}", formula(n)))?;
        got.push(k);
    }
    Ok(format!("counts {got:?} equal the formula"))
}

fn criterion_7(s: Scale) -> Outcome {
    let terms = s.pick(PHI_TERMS, PHI_TERMS / 4);
    for p in 1..=3 {
        for q in 1..=3 {
            ensure(series_h(p, q, 12) == series_h_log(p, q, 12), || format!("H({p},{q})"))?;
        }
    }
    let r = eval_r_numeric(tstar()).map_err(|e| e.to_string())?;
    ensure((r - 1.0 / 16.0).abs() < 1e-10, || format!("R(t*) = {r}"))?;
    let est = eval_h_critical(12, 12, terms);
    let (lo, hi) = h_critical_ratio(12, 12, terms);
    ensure((lo - 1.0).abs() < 0.25 && (hi - 1.0).abs() < 0.25, || format!("ratio in [{lo}, {hi}]"))?;
    let lap = laplace_check(16, 16, 1.0, terms).map_err(|e| e.to_string())?;
    let rel = (lap.expectation - lap.limit_at_effective_mu).abs() / lap.limit_at_effective_mu;
    ensure(rel < 0.10, || format!("Laplace relative error {rel}"))?;
    Ok(format!(
        "ratio(12,12) in [{lo:.4}, {hi:.4}] (tail bound {:.1e}); Laplace E = {:.4} vs limit {:.4} at effective mu {:.3} \
         (rel {:.2}%); literal limit at mu = 1 is {:.4}",
        est.tail_bound,
        lap.expectation,
        lap.limit_at_effective_mu,
        lap.mu_effective,
        100.0 * rel,
        lap.limit_at_mu
    ))
}

fn criterion_8(sc: Scale) -> Outcome {
    let reps = sc.pick(1000, 100) as u64;
    let draws = sc.pick(10_000, 1000);
    let all = brute_rooted(5);
    let index: HashMap<Vec<usize>, usize> = all.iter().enumerate().map(|(i, r)| (r.canonical_code(), i)).collect();
    let s = Sampler::new(9);
    let mut rng = seeded_rng(8);
    let mut obs = vec![0u64; all.len()];
    for _ in 0..33 * reps {
        let r = s.sample_rigid_rooted(5, &mut rng).map_err(|e| e.to_string())?;
        obs[index[&r.canonical_code()]] += 1;
    }
    let (stat, pval) = chi_square_uniform(&obs);
    ensure(all.len() == 33 && pval > 1e-3, || format!("chi2 = {stat}, p = {pval}"))?;
    let d = s.step_distribution(&[2], 9).map_err(|e| e.to_string())?;
    let mut seen: HashMap<StepChoice, usize> = HashMap::new();
    for _ in 0..draws {
        let t = s.sample_trace(2, 9, &mut rng).map_err(|e| e.to_string())?;
        *seen.entry(StepChoice::of(&t.steps[0])).or_default() += 1;
    }
    for (c, p) in d.ratios() {
        let k = *seen.get(&c).unwrap_or(&0) as f64;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt().max(1.0);
        ensure((k - draws as f64 * p).abs() <= 4.0 * sigma, || format!("marginal {c:?}: {k} vs {}", draws as f64 * p))?;
    }
    Ok(format!("chi2 = {stat:.2}, p = {pval:.3}; {} marginals within 4 sigma", d.entries.len()))
}

fn criterion_9(_: Scale) -> Outcome {
    let mut rng = seeded_rng(9);
    let mut worst: f64 = 0.0;
    for n in 3..=6 {
        for (i, r) in brute_rooted(n).iter().enumerate() {
            let w = simplex_widths(r, 1.0, &mut rng).map_err(|e| e.to_string())?;
            let a = immerse_f64(r, &w).map_err(|e| e.to_string())?;
            let b = immerse(r, &w, Traversal::DepthFirstReversed, |x, y| (x - y).abs() <= 1e-9).map_err(|e| e.to_string())?;
            worst = worst.max(max_deviation(&a, &b));
            let s = strips(r);
            let q = |a: usize, b: usize| BigRational::new(BigInt::from(a), BigInt::from(b));
            let rows = (0..s.rows).map(|k| q(k + i + 1, 3)).collect();
            let cols = (0..s.cols).map(|k| q(2 * k + 1, 5)).collect();
            let wx = given_widths(r, rows, cols).map_err(|e| e.to_string())?;
            let imm = immerse_exact(r, &wx).map_err(|e| e.to_string())?;
            ensure(boundary_length(r, &imm) == q(2, 1) * wx.half_perimeter(), || format!("perimeter n={n}"))?;
        }
    }
    ensure(worst < 1e-9, || format!("deviation {worst}"))?;
    let v3 = volume_check(3, &brute_rooted(3)).map_err(|e| e.to_string())?;
    let v4 = volume_check(4, &brute_rooted(4)).map_err(|e| e.to_string())?;
    let one = BigRational::from_integer(BigInt::from(1));
    ensure(v3.degree == 1 && v3.coefficient == one && v3.dimensions_ok, || format!("{v3:?}"))?;
    ensure(v4.degree == 3 && v4.coefficient == series_z(4).coeff(&[4]) && v4.dimensions_ok, || format!("{v4:?}"))?;
    Ok(format!("max deviation {worst:.1e}; V_3 = L, V_4 = {} L^3", v4.coefficient))
}

fn criterion_10(_: Scale) -> Outcome {
    let v = normalized_trend(15, 30);
    let max = v.iter().map(|x| x.1).fold(f64::MIN, f64::max);
    let min = v.iter().map(|x| x.1).fold(f64::MAX, f64::min);
    ensure(max / min < 2.0, || format!("spread {}", max / min))?;
    Ok(format!("normalized values in [{min:.4}, {max:.4}], spread {:.3}", max / min))
}


/// Outcome of one criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {}: {verdict} [{}] {} ({:.1}s)", self.id, self.name, self.detail, self.seconds)
    }
}

type Criterion = (&'static str, fn(Scale) -> Outcome);

const CRITERIA: [Criterion; 10] = [
    ("counting routes agree", criterion_1),
    ("displayed coefficients", criterion_2),
    ("bijection round trips", criterion_3),
    ("dictionary", criterion_4),
    ("signature and walk", criterion_5),
    ("fighting fish", criterion_6),
    ("half-cylinder series", criterion_7),
    ("sampler uniformity", criterion_8),
    ("geometry", criterion_9),
    ("asymptotic trend", criterion_10),
];

fn run_one(id: usize, scale: Scale) -> CriterionResult {
    let (name, f) = CRITERIA[id];
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(|| f(scale))).unwrap_or_else(|_| Err("panicked".into()));
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = match res {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id: id + 1, name, passed, detail, seconds }
}

/// Runs all criteria on `jobs` worker threads; results come back in criterion order.
pub fn run(quick: bool, jobs: usize) -> Vec<CriterionResult> {
    let scale = Scale { quick };
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<CriterionResult>>> = Mutex::new(vec![None; CRITERIA.len()]);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, CRITERIA.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= CRITERIA.len() {
                    break;
                }
                let r = run_one(i, scale);
                out.lock().expect("no poisoned workers")[i] = Some(r);
            });
        }
    });
    out.into_inner().expect("no poisoned workers").into_iter().map(|r| r.expect("every criterion ran")).collect()
}
