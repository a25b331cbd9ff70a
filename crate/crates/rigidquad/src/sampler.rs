//! Exact uniform sampling of rigid quadrangulations by count-weighted exploration.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bijection::rooted_from_trace;
use crate::error::Error;
use crate::exploration::{assemble_rigid, Letter, Step, Trace};
use crate::rigid::RigidQuad;
use crate::series::{binom, catalytic_counts};

/// A class of first steps: a gap split, or an R/L strip with a given letter content.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StepChoice {
    G { left: usize, right: usize },
    R { downs: usize, ups: usize },
    L { downs: usize, ups: usize },
}

impl StepChoice {
    /// The class of a concrete step.
    pub fn of(st: &Step) -> StepChoice {
        match st {
            Step::G { left, right } => StepChoice::G { left: *left, right: *right },
            Step::R(w) => StepChoice::R { downs: Step::downs(w), ups: Step::ups(w) },
            Step::L(w) => StepChoice::L { downs: Step::downs(w), ups: Step::ups(w) },
        }
    }

    fn children(&self, s: usize) -> Vec<usize> {
        match *self {
            StepChoice::G { left, right } => vec![right, left],
            StepChoice::R { downs, ups } => vec![ups, s + downs],
            StepChoice::L { downs, ups } => vec![s + downs, ups],
        }
        .into_iter()
        .filter(|&x| x > 0)
        .collect()
    }
}

/// Completion counts of each step class from a frontier state with a step budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepDistribution {
    pub entries: Vec<(StepChoice, BigUint)>,
    pub total: BigUint,
}

impl StepDistribution {
    /// Probabilities of the entries.
    pub fn ratios(&self) -> Vec<(StepChoice, f64)> {
        let tot = self.total.to_f64().unwrap_or(f64::INFINITY);
        self.entries.iter().map(|(c, n)| (*c, n.to_f64().unwrap_or(0.0) / tot)).collect()
    }
}

/// Count tables for traces: `single[s][m]` = number of complete traces of one side of size s with m steps.
#[derive(Clone, Debug)]
pub struct Sampler {
    single: Vec<Vec<BigUint>>,
    budget: usize,
}

impl Sampler {
    /// Tables sufficient for every state reachable within `budget` steps.
    pub fn new(budget: usize) -> Sampler {
        let jmax = budget + 1;
        let table = catalytic_counts(jmax, jmax).expect("jmax >= 1");
        let single = (0..=jmax).map(|s| (0..=budget).map(|m| table.get(s, m + 1)).collect()).collect();
        Sampler { single, budget }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    fn side(&self, s: usize) -> Vec<BigUint> {
        match self.single.get(s) {
            Some(v) => v.clone(),
            None => vec![BigUint::zero(); self.budget + 1],
        }
    }

    /// Counts of completions of a frontier for every budget `0..=m`.
    pub fn frontier_counts(&self, front: &[usize], m: usize) -> Vec<BigUint> {
        let mut acc = vec![BigUint::zero(); m + 1];
        acc[0] = BigUint::one();
        for &s in front {
            let t = self.side(s);
            let mut nxt = vec![BigUint::zero(); m + 1];
            for (a, x) in acc.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for b in 0..=m - a {
                    if b < t.len() && !t[b].is_zero() {
                        nxt[a + b] += x * &t[b];
                    }
                }
            }
            acc = nxt;
        }
        acc
    }

    /// Number of complete traces of base p with exactly m steps.
    pub fn count(&self, p: usize, m: usize) -> BigUint {
        self.frontier_counts(&[p], m)[m].clone()
    }

    /// First-step distribution for the frontier `front` with `m` steps left.
    pub fn step_distribution(&self, front: &[usize], m: usize) -> Result<StepDistribution, Error> {
        if front.is_empty() || m == 0 || m > self.budget {
            return Err(Error::EmptyClass);
        }
        let s = front[0];
        let rest = self.frontier_counts(&front[1..], m - 1);
        let mut entries = Vec::new();
        let mut push = |c: StepChoice, mult: BigUint| {
            let ch = self.frontier_counts(&c.children(s), m - 1);
            let mut w = BigUint::zero();
            for a in 0..m {
                if !ch[a].is_zero() && !rest[m - 1 - a].is_zero() {
                    w += &ch[a] * &rest[m - 1 - a];
                }
            }
            w *= mult;
            if !w.is_zero() {
                entries.push((c, w));
            }
        };
        for left in 0..s {
            push(StepChoice::G { left, right: s - 1 - left }, BigUint::one());
        }
        for downs in 0..m {
            for ups in 0..m {
                if s + downs + ups > m - 1 {
                    break;
                }
                let mult = binom((downs + ups) as i64, ups as i64).to_biguint().unwrap();
                push(StepChoice::R { downs, ups }, mult.clone());
                push(StepChoice::L { downs, ups }, mult);
            }
        }
        let total = entries.iter().map(|(_, w)| w).sum::<BigUint>();
        if total.is_zero() {
            return Err(Error::EmptyClass);
        }
        Ok(StepDistribution { entries, total })
    }

    /// Uniform trace of base p with m steps.
    pub fn sample_trace<R: Rng + ?Sized>(&self, p: usize, m: usize, rng: &mut R) -> Result<Trace, Error> {
        self.sample_from(p, m, None, rng)
    }

    /// Uniform trace of base p with m steps, optionally restricted to a first-step predicate.
    fn sample_from<R: Rng + ?Sized>(
        &self,
        p: usize,
        m: usize,
        first: Option<&dyn Fn(&StepChoice) -> bool>,
        rng: &mut R,
    ) -> Result<Trace, Error> {
        if p == 0 || m > self.budget {
            return Err(Error::EmptyClass);
        }
        let mut front = vec![p];
        let mut steps = Vec::with_capacity(m);
        let mut left = m;
        while !front.is_empty() {
            let mut dist = self.step_distribution(&front, left)?;
            if steps.is_empty() {
                if let Some(f) = first {
                    dist.entries.retain(|(c, _)| f(c));
                    dist.total = dist.entries.iter().map(|(_, w)| w).sum();
                    if dist.total.is_zero() {
                        return Err(Error::EmptyClass);
                    }
                }
            }
            let c = pick(&dist, rng);
            let st = realize(c, rng);
            let s = front.remove(0);
            let ch = st.children(s).ok_or(Error::FrontierMismatch(steps.len()))?;
            front.splice(0..0, ch);
            steps.push(st);
            left -= 1;
        }
        if left != 0 {
            return Err(Error::IncompleteTrace);
        }
        Ok(Trace { p, steps })
    }

    /// Uniform rigid quadrangulation with base p and t-weight j (that is, j - 1 steps).
    pub fn sample_rigid<R: Rng + ?Sized>(&self, p: usize, j: usize, rng: &mut R) -> Result<RigidQuad, Error> {
        if j < 2 {
            return Err(Error::EmptyClass);
        }
        assemble_rigid(&self.sample_trace(p, j - 1, rng)?)
    }

    /// Uniform element of the rooted class with n = #convex - 1: a base-1 trace
    /// with an L first step and n - 1 steps, pulled back through expand.
    pub fn sample_rigid_rooted<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<RigidQuad, Error> {
        if n < 3 {
            return Err(Error::EmptyClass);
        }
        let is_l = |c: &StepChoice| matches!(c, StepChoice::L { .. });
        let t = self.sample_from(1, n - 1, Some(&is_l), rng)?;
        rooted_from_trace(&t)
    }
}

fn uniform_below<R: Rng + ?Sized>(n: &BigUint, rng: &mut R) -> BigUint {
    let bits = n.bits();
    let words = bits.div_ceil(32) as usize;
    loop {
        let mut v: Vec<u32> = (0..words).map(|_| rng.random()).collect();
        let extra = (words as u64) * 32 - bits;
        if let Some(top) = v.last_mut() {
            *top &= u32::MAX >> extra;
        }
        let x = BigUint::new(v);
        if &x < n {
            return x;
        }
    }
}

fn pick<R: Rng + ?Sized>(d: &StepDistribution, rng: &mut R) -> StepChoice {
    let mut u = uniform_below(&d.total, rng);
    for (c, w) in &d.entries {
        if &u < w {
            return *c;
        }
        u -= w;
    }
    unreachable!("weights sum to the total")
}

/// Uniform word with the given letter content.
fn realize<R: Rng + ?Sized>(c: StepChoice, rng: &mut R) -> Step {
    let word = |downs: usize, ups: usize, rng: &mut R| {
        let mut w = vec![Letter::Down; downs];
        w.extend(std::iter::repeat_n(Letter::Up, ups));
        w.shuffle(rng);
        w
    };
    match c {
        StepChoice::G { left, right } => Step::G { left, right },
        StepChoice::R { downs, ups } => Step::R(word(downs, ups, rng)),
        StepChoice::L { downs, ups } => Step::L(word(downs, ups, rng)),
    }
}

/// The default generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seeded convenience wrapper around [`Sampler::sample_rigid`].
pub fn sample_rigid(p: usize, j: usize, seed: u64) -> Result<RigidQuad, Error> {
    Sampler::new(j.max(2) - 1).sample_rigid(p, j, &mut seeded_rng(seed))
}

/// Seeded convenience wrapper around [`Sampler::sample_rigid_rooted`].
pub fn sample_rigid_rooted(n: usize, seed: u64) -> Result<RigidQuad, Error> {
    Sampler::new(n.max(2)).sample_rigid_rooted(n, &mut seeded_rng(seed))
}

/// Pearson chi-square statistic and upper-tail p-value for observed counts against uniform.
pub fn chi_square_uniform(observed: &[u64]) -> (f64, f64) {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    let k = observed.len();
    let total: u64 = observed.iter().sum();
    let e = total as f64 / k as f64;
    let stat: f64 = observed.iter().map(|&o| (o as f64 - e).powi(2) / e).sum();
    let dist = ChiSquared::new((k - 1) as f64).expect("k >= 2");
    (stat, 1.0 - dist.cdf(stat))
}
