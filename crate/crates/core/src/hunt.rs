//! Searching for counterexamples to "(SM) implies y = 0".
//!
//! Exhaustive scans work in minor coordinates over GF(p): every tuple
//! `(m1, …, m_{n−1})` with `m_n = 0` is mapped back to coefficients, tuples
//! with a zero coefficient are dropped, and the truncated (SM) system is
//! evaluated. Random scans sample coefficient lists directly and fuzz the
//! agreement of the determinant test with both criteria.
//!
//! # Determinism
//!
//! Work is split into shards that own disjoint index ranges (a fixed prefix
//! of the minor tuple for exhaustive scans, a block of trial numbers for
//! random scans). Every random trial draws from its own ChaCha stream keyed
//! by `(seed, trial)`, so results do not depend on which thread ran it.
//! Shard results are merged by summing counters and concatenating record
//! lists, and records are sorted by their global index. The merged report is
//! identical for any worker count, with or without the `parallel` feature.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::criteria::{check_sm_minors, evaluate_unchecked};
use crate::field::{Field, FieldDescriptor, FieldError, PrimeField, Rationals, Scalar};
use crate::minors::{principal_minors, recover_c_from_minors, MinorVector};
use crate::pencil::PencilInstance;

/// Exhaustive scans refuse search spaces above this many tuples.
pub const MAX_EXHAUSTIVE_TUPLES: u64 = 100_000_000;

const RANDOM_SHARD_SIZE: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HuntError {
    #[error("exhaustive scans need a prime field")]
    RationalExhaustive,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("n must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("random scans need at least one trial")]
    NoTrials,
    #[error("at least one worker is required")]
    NoWorkers,
    #[error("search space of {p}^{exp} tuples exceeds the limit of {MAX_EXHAUSTIVE_TUPLES}")]
    TooLarge { p: u64, exp: u32 },
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HuntMode {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuntConfig {
    pub n: usize,
    pub field: FieldDescriptor,
    pub mode: HuntMode,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl HuntConfig {
    pub fn exhaustive(n: usize, p: u64) -> Result<Self, HuntError> {
        let cfg = HuntConfig {
            n,
            field: FieldDescriptor::prime(p)?,
            mode: HuntMode::Exhaustive,
            trials: 1,
            seed: 0,
            workers: 1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn random(n: usize, field: FieldDescriptor, trials: u64, seed: u64) -> Result<Self, HuntError> {
        let cfg = HuntConfig {
            n,
            field,
            mode: HuntMode::Random,
            trials,
            seed,
            workers: 1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<(), HuntError> {
        if self.n < 2 {
            return Err(HuntError::DimensionTooSmall(self.n));
        }
        if self.workers == 0 {
            return Err(HuntError::NoWorkers);
        }
        if let FieldDescriptor::Prime(p) = self.field {
            FieldDescriptor::prime(p)?;
        }
        match self.mode {
            HuntMode::Exhaustive => {
                let FieldDescriptor::Prime(p) = self.field else {
                    return Err(HuntError::RationalExhaustive);
                };
                let exp = (self.n - 1) as u32;
                match p.checked_pow(exp) {
                    Some(size) if size <= MAX_EXHAUSTIVE_TUPLES => Ok(()),
                    _ => Err(HuntError::TooLarge { p, exp }),
                }
            }
            HuntMode::Random if self.trials == 0 => Err(HuntError::NoTrials),
            HuntMode::Random => Ok(()),
        }
    }
}

/// A tuple where (SM) holds but `y ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub index: u64,
    /// `m1, …, m_n`
    pub minors: Vec<Scalar>,
    /// `c1 = 1, c2, …, c_{n+1}`
    pub c: Vec<Scalar>,
    /// False for prime-field finds, which say nothing about ℂ by themselves.
    pub characteristic_zero: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Determinant test, (S) and (SM) disagree.
    CriteriaDisagree,
    /// (SM) in minor coordinates disagrees with (SM) on the recovered coefficients.
    MinorRoundTrip,
    /// An (SM) solution with `y = 0` whose coefficients are not geometric.
    NonGeometricSolution,
    /// A geometric instance that fails one of the tests.
    GeometricRejected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: u64,
    pub kind: ViolationKind,
    pub c: Vec<Scalar>,
    pub singular_det: bool,
    pub s_holds: bool,
    pub sm_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HuntReport {
    pub n: usize,
    pub field: FieldDescriptor,
    pub mode: HuntMode,
    pub seed: Option<u64>,
    pub tuples_scanned: u64,
    pub valid_instances: u64,
    pub sm_solutions: u64,
    pub counterexamples: Vec<Counterexample>,
    pub equivalence_violations: Vec<Violation>,
    pub note: Option<String>,
}

impl HuntReport {
    pub fn conjecture_holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Default)]
struct Partial {
    scanned: u64,
    valid: u64,
    sm_solutions: u64,
    counterexamples: Vec<Counterexample>,
    violations: Vec<Violation>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.scanned += other.scanned;
        self.valid += other.valid;
        self.sm_solutions += other.sm_solutions;
        self.counterexamples.extend(other.counterexamples);
        self.violations.extend(other.violations);
        self
    }

    fn into_report(mut self, cfg: &HuntConfig) -> HuntReport {
        self.counterexamples.sort_by_key(|c| c.index);
        self.violations.sort_by_key(|v| (v.index, v.kind as u8));
        let note = (!self.counterexamples.is_empty() && cfg.field.is_prime_field()).then(|| {
            "finite-field evidence only; not lifted to characteristic 0".to_string()
        });
        HuntReport {
            n: cfg.n,
            field: cfg.field,
            mode: cfg.mode,
            seed: (cfg.mode == HuntMode::Random).then_some(cfg.seed),
            tuples_scanned: self.scanned,
            valid_instances: self.valid,
            sm_solutions: self.sm_solutions,
            counterexamples: self.counterexamples,
            equivalence_violations: self.violations,
            note,
        }
    }
}

/// Runs one closure per shard and merges in shard order.
fn run_shards<S, W>(workers: usize, shards: Vec<S>, work: W) -> Result<Partial, HuntError>
where
    S: Send,
    W: Fn(S) -> Partial + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if workers > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| HuntError::Pool(e.to_string()))?;
        let parts: Vec<Partial> = pool.install(|| shards.into_par_iter().map(&work).collect());
        return Ok(parts.into_iter().fold(Partial::default(), Partial::merge));
    }
    #[cfg(not(feature = "parallel"))]
    let _ = workers;
    Ok(shards
        .into_iter()
        .map(work)
        .fold(Partial::default(), Partial::merge))
}

fn violation<F: Field>(index: u64, kind: ViolationKind, p: &PencilInstance<F>) -> Violation {
    let r = evaluate_unchecked(p);
    Violation {
        index,
        kind,
        c: r.c,
        singular_det: r.singular_det,
        s_holds: r.s_holds,
        sm_holds: r.sm_holds,
    }
}

/// Scores one (SM)-evaluated instance into `acc`.
fn record<F: Field>(
    acc: &mut Partial,
    index: u64,
    p: &PencilInstance<F>,
    mv: &MinorVector<F>,
    sm_from_minors: bool,
) {
    let f = p.field();
    let report = evaluate_unchecked(p);
    if !report.is_consistent() {
        acc.violations.push(violation(index, ViolationKind::CriteriaDisagree, p));
    }
    if report.sm_holds != sm_from_minors {
        acc.violations.push(violation(index, ViolationKind::MinorRoundTrip, p));
    }
    if !sm_from_minors {
        return;
    }
    acc.sm_solutions += 1;
    if report.y_is_zero {
        if report.geometric.is_none() {
            acc.violations
                .push(violation(index, ViolationKind::NonGeometricSolution, p));
        }
    } else {
        acc.counterexamples.push(Counterexample {
            index,
            minors: mv.as_slice()[1..].iter().map(|m| f.to_scalar(m)).collect(),
            c: p.normalize_c1().to_scalars(),
            characteristic_zero: f.descriptor() == FieldDescriptor::Rational,
        });
    }
}

/// Scans all of `GF(p)^{n−1}` in minor coordinates.
pub fn exhaustive_scan(cfg: &HuntConfig) -> Result<HuntReport, HuntError> {
    cfg.validate()?;
    let FieldDescriptor::Prime(p) = cfg.field else {
        return Err(HuntError::RationalExhaustive);
    };
    if cfg.mode != HuntMode::Exhaustive {
        return Err(HuntError::RationalExhaustive);
    }
    let f = PrimeField::new(p)?;
    let dims = cfg.n - 1;
    let prefix = dims.min(2);
    let shard_count = p.pow(prefix as u32);
    let shard_size = p.pow((dims - prefix) as u32);
    let shards: Vec<u64> = (0..shard_count).collect();
    let partial = run_shards(cfg.workers, shards, |shard| {
        let mut acc = Partial::default();
        let start = shard * shard_size;
        for index in start..start + shard_size {
            scan_tuple(&f, cfg.n, index, &mut acc);
        }
        acc
    })?;
    Ok(partial.into_report(cfg))
}

/// Minor tuple number `index`, most significant digit first, `m_n = 0`.
fn minors_at(f: &PrimeField, n: usize, mut index: u64) -> Vec<u64> {
    let p = f.modulus();
    let mut m = vec![0; n];
    for slot in (0..n - 1).rev() {
        m[slot] = index % p;
        index /= p;
    }
    m
}

fn scan_tuple(f: &PrimeField, n: usize, index: u64, acc: &mut Partial) {
    acc.scanned += 1;
    let minors = minors_at(f, n, index);
    let mut c = vec![f.one()];
    c.extend(recover_c_from_minors(f, &minors));
    let Ok(p) = PencilInstance::new(*f, c) else {
        return;
    };
    acc.valid += 1;
    let mv = MinorVector::from_minors(*f, &minors).expect("n >= 2");
    let sm = check_sm_minors(&mv).holds;
    record(acc, index, &p, &mv, sm);
}

trait SampleNonzero: Field {
    fn sample_nonzero(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
    /// 1, 2, −1, 1/2, with duplicates and zeros removed.
    fn geometric_ratios(&self) -> Vec<Self::Elem> {
        let two = self.from_i64(2);
        let mut out: Vec<Self::Elem> = Vec::new();
        let candidates = [
            Some(self.one()),
            Some(two.clone()),
            Some(self.neg(&self.one())),
            self.inv(&two).ok(),
        ];
        for l in candidates.into_iter().flatten() {
            if !self.is_zero(&l) && !out.contains(&l) {
                out.push(l);
            }
        }
        out
    }
}

impl SampleNonzero for Rationals {
    fn sample_nonzero(&self, rng: &mut ChaCha8Rng) -> BigRational {
        let num: i64 = rng.random_range(1..=9);
        let sign = if rng.random_bool(0.5) { -1 } else { 1 };
        let den: i64 = if rng.random_bool(0.25) { rng.random_range(2..=3) } else { 1 };
        BigRational::new((sign * num).into(), den.into())
    }
}

impl SampleNonzero for PrimeField {
    fn sample_nonzero(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.random_range(1..self.modulus())
    }
}

fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_trials<F: SampleNonzero>(f: &F, cfg: &HuntConfig) -> Result<HuntReport, HuntError> {
    let n = cfg.n;
    let ratios = f.geometric_ratios();
    let total = cfg.trials + ratios.len() as u64;
    let shards: Vec<(u64, u64)> = (0..total)
        .step_by(RANDOM_SHARD_SIZE as usize)
        .map(|s| (s, (s + RANDOM_SHARD_SIZE).min(total)))
        .collect();
    let partial = run_shards(cfg.workers, shards, |(lo, hi)| {
        let mut acc = Partial::default();
        for index in lo..hi {
            let mut rng = trial_rng(cfg.seed, index);
            acc.scanned += 1;
            let p = if index < cfg.trials {
                let c = (0..=n).map(|_| f.sample_nonzero(&mut rng)).collect();
                PencilInstance::new(f.clone(), c).expect("samples are nonzero")
            } else {
                let lambda = ratios[(index - cfg.trials) as usize].clone();
                let c1 = f.sample_nonzero(&mut rng);
                let p = PencilInstance::geometric(f.clone(), n, c1, lambda)
                    .expect("nonzero ratio keeps coefficients nonzero");
                let r = evaluate_unchecked(&p);
                if !(r.singular_det && r.s_holds && r.sm_holds) {
                    acc.violations
                        .push(violation(index, ViolationKind::GeometricRejected, &p));
                }
                p
            };
            acc.valid += 1;
            let mv = principal_minors(&p);
            let sm = check_sm_minors(&mv).holds;
            record(&mut acc, index, &p, &mv, sm);
        }
        acc
    })?;
    Ok(partial.into_report(cfg))
}

/// Seeded random sampling of coefficient lists with equivalence fuzzing.
/// Geometric instances with ratios 1, 2, −1, 1/2 are appended to every run.
pub fn random_scan(cfg: &HuntConfig) -> Result<HuntReport, HuntError> {
    cfg.validate()?;
    if cfg.mode != HuntMode::Random {
        return Err(HuntError::NoTrials);
    }
    match cfg.field {
        FieldDescriptor::Rational => random_trials(&Rationals, cfg),
        FieldDescriptor::Prime(p) => random_trials(&PrimeField::new(p)?, cfg),
    }
}

/// Runs whichever scan `cfg.mode` selects.
pub fn run(cfg: &HuntConfig) -> Result<HuntReport, HuntError> {
    match cfg.mode {
        HuntMode::Exhaustive => exhaustive_scan(cfg),
        HuntMode::Random => random_scan(cfg),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallNRow {
    pub n: usize,
    pub p: u64,
    pub tuples_scanned: u64,
    pub valid_instances: u64,
    pub sm_solutions: u64,
    pub counterexamples: usize,
    pub violations: usize,
}

/// Exhaustive scans for every `2 ≤ n ≤ n_max` and every prime in `primes`.
pub fn verify_conjecture_smalln(
    n_max: usize,
    primes: &[u64],
    workers: usize,
) -> Result<Vec<SmallNRow>, HuntError> {
    if n_max < 2 {
        return Err(HuntError::DimensionTooSmall(n_max));
    }
    for &p in primes {
        FieldDescriptor::prime(p)?;
    }
    let mut rows = Vec::new();
    for n in 2..=n_max {
        for &p in primes {
            let report = exhaustive_scan(&HuntConfig::exhaustive(n, p)?.with_workers(workers))?;
            rows.push(SmallNRow {
                n,
                p,
                tuples_scanned: report.tuples_scanned,
                valid_instances: report.valid_instances,
                sm_solutions: report.sm_solutions,
                counterexamples: report.counterexamples.len(),
                violations: report.equivalence_violations.len(),
            });
        }
    }
    Ok(rows)
}
