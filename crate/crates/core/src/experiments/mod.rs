//! Monte Carlo and exhaustive checkers for the non-expansiveness of the
//! combination rules, the worked counter-example catalog, and the conflict
//! property suite.
//!
//! One run draws a shared stream of triplets (the same triplets feed every
//! distance, so rates are comparable column-wise) and checks, per distance,
//! whether combining both operands with the third mass function can increase
//! their distance. Trials use per-trial substreams, so reports are
//! deterministic functions of the config regardless of thread count.

mod conflict_suite;
mod counterexamples;

pub use conflict_suite::{
    conflict_property_suite, ConflictPropertyReport, ConflictSuiteConfig, PropertyLine,
};
pub use counterexamples::{
    conjunctive_counterexample, counterexample_suite, disjunctive_counterexample, CheckLine,
    CounterexampleReport,
};

use std::collections::BTreeMap;
use std::time::Instant;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alpha::{alpha_combine, alpha_norm_distance, Alpha, AlphaFamily};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::fusion::{combine, CombineMode};
use crate::io::MassDocument;
use crate::mass::MassFunction;
use crate::metrics::{distance, DistanceFamily, DistanceSpec, NormOrder};
use crate::randgen::{random_mass, substream, GenSpec};
use crate::real::Real;

const MAX_WITNESSES: usize = 10;

/// Combination rule under test.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "alpha", rename_all = "kebab-case")]
pub enum Rule {
    Conjunctive,
    Disjunctive,
    AlphaConjunctive(f64),
    AlphaDisjunctive(f64),
}

impl Rule {
    pub fn combine<T: Real>(
        self,
        m1: &MassFunction<T>,
        m2: &MassFunction<T>,
    ) -> Result<MassFunction<T>> {
        match self {
            Rule::Conjunctive => combine(m1, m2, CombineMode::Intersection),
            Rule::Disjunctive => combine(m1, m2, CombineMode::Union),
            Rule::AlphaConjunctive(a) => {
                alpha_combine(m1, m2, Alpha::new(T::of(a))?, CombineMode::Intersection)
            }
            Rule::AlphaDisjunctive(a) => {
                alpha_combine(m1, m2, Alpha::new(T::of(a))?, CombineMode::Union)
            }
        }
    }

    pub fn validate(self) -> Result<()> {
        match self {
            Rule::AlphaConjunctive(a) | Rule::AlphaDisjunctive(a) => Alpha::new(a).map(|_| ()),
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rule::Conjunctive => write!(f, "conj"),
            Rule::Disjunctive => write!(f, "disj"),
            Rule::AlphaConjunctive(a) => write!(f, "aconj:{a}"),
            Rule::AlphaDisjunctive(a) => write!(f, "adisj:{a}"),
        }
    }
}

/// True when non-expansiveness of the rule w.r.t. the distance is a theorem
/// (so a single observed violation is a hard failure).
pub fn lipschitz_claimed(spec: &DistanceSpec, rule: Rule) -> bool {
    match rule {
        Rule::Conjunctive => matches!(
            (spec.family, spec.k),
            (DistanceFamily::Q, _)
                | (DistanceFamily::Pl | DistanceFamily::B, NormOrder::Infinity)
                | (
                    DistanceFamily::Spe,
                    NormOrder::Finite(1) | NormOrder::Infinity
                )
        ),
        Rule::Disjunctive => matches!(
            (spec.family, spec.k),
            (DistanceFamily::Pl | DistanceFamily::B, _)
                | (DistanceFamily::Q, NormOrder::Infinity)
                | (
                    DistanceFamily::Spe,
                    NormOrder::Finite(1) | NormOrder::Infinity
                )
        ),
        // for the interpolated rules the claims are about α-set-function
        // norms, not these mass-function metrics
        Rule::AlphaConjunctive(_) | Rule::AlphaDisjunctive(_) => false,
    }
}

/// Configuration of one Monte Carlo table run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub rule: Rule,
    pub trials: u64,
    pub seed: u64,
    /// Per-trial frame sizes; each trial draws one from its substream.
    pub n_mix: Vec<u8>,
    pub distances: Vec<DistanceSpec>,
    pub generator: GenSpec,
    pub slack: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

impl ExperimentConfig {
    /// The eight distance columns of the consistency tables.
    pub fn table_distances() -> Vec<DistanceSpec> {
        vec![
            DistanceSpec::jousselme(),
            DistanceSpec::new(DistanceFamily::Q, NormOrder::Finite(1)),
            DistanceSpec::new(DistanceFamily::Q, NormOrder::Finite(2)),
            DistanceSpec::new(DistanceFamily::Q, NormOrder::Infinity),
            DistanceSpec::new(DistanceFamily::Pl, NormOrder::Finite(1)),
            DistanceSpec::new(DistanceFamily::Pl, NormOrder::Finite(2)),
            DistanceSpec::new(DistanceFamily::Pl, NormOrder::Infinity),
            DistanceSpec::new(DistanceFamily::Spe, NormOrder::Finite(1)),
        ]
    }

    /// Default table run: 10⁴ simple triplets on frames of 3 to 6 elements.
    pub fn table(rule: Rule, seed: u64) -> ExperimentConfig {
        ExperimentConfig {
            rule,
            trials: 10_000,
            seed,
            n_mix: vec![3, 4, 5, 6],
            distances: Self::table_distances(),
            generator: GenSpec::simple(),
            slack: 1e-12,
            jobs: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.slack.is_nan() || self.slack < 0.0 {
            return Err(Error::InvalidConfig("slack must be nonnegative".into()));
        }
        if self.n_mix.is_empty() {
            return Err(Error::InvalidConfig("n_mix must be nonempty".into()));
        }
        if self.distances.is_empty() {
            return Err(Error::InvalidConfig(
                "at least one distance is required".into(),
            ));
        }
        self.rule.validate()
    }
}

/// One Lipschitz check: does `d(m1 ∗ m3, m2 ∗ m3) ≤ d(m1, m2) + slack` hold?
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialOutcome<T: Real> {
    pub before: T,
    pub after: T,
    pub holds: bool,
}

pub fn consistency_trial<T: Real>(
    spec: &DistanceSpec,
    rule: Rule,
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    m3: &MassFunction<T>,
    slack: T,
) -> Result<TrialOutcome<T>> {
    let c1 = rule.combine(m1, m3)?;
    let c2 = rule.combine(m2, m3)?;
    let before = distance(m1, m2, spec)?;
    let after = distance(&c1, &c2, spec)?;
    Ok(TrialOutcome {
        before,
        after,
        holds: after <= before + slack,
    })
}

/// A violating triplet, serialized for the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: u64,
    pub n: u8,
    pub d_before: f64,
    pub d_after: f64,
    pub m1: MassDocument,
    pub m2: MassDocument,
    pub m3: MassDocument,
}

/// Aggregate for one distance column.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceRow {
    pub spec: DistanceSpec,
    pub label: String,
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
    pub max_violation: f64,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub config: ExperimentConfig,
    pub rows: Vec<DistanceRow>,
    pub wall_time_secs: f64,
}

impl ConsistencyReport {
    pub fn row(&self, spec: &DistanceSpec) -> Option<&DistanceRow> {
        self.rows.iter().find(|r| r.spec == *spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("distance,k,rule,trials,successes,rate,max_violation\n");
        for row in &self.rows {
            let k = match row.spec.family {
                DistanceFamily::Jousselme => "-".to_string(),
                _ => row.spec.k.to_string(),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.spec.family.name(),
                k,
                self.config.rule,
                row.trials,
                row.successes,
                row.rate,
                row.max_violation
            ));
        }
        out
    }

    /// Whitespace-separated data block for plotting tools.
    pub fn to_gnuplot(&self) -> String {
        let mut out = String::from("# distance k rule trials successes rate max_violation\n");
        for row in &self.rows {
            let k = match row.spec.family {
                DistanceFamily::Jousselme => "-".to_string(),
                _ => row.spec.k.to_string(),
            };
            out.push_str(&format!(
                "{} {} {} {} {} {} {}\n",
                row.spec.family.name(),
                k,
                self.config.rule,
                row.trials,
                row.successes,
                row.rate,
                row.max_violation
            ));
        }
        out
    }
}

struct TrialRow {
    trial: u64,
    n: u8,
    outcomes: Vec<(bool, f64, f64)>, // (holds, before, after) per distance
    masses: Option<Box<(MassDocument, MassDocument, MassDocument)>>,
}

fn in_pool<R: Send>(jobs: Option<usize>, run: impl FnOnce() -> R + Send) -> Result<R> {
    match jobs {
        None => Ok(run()),
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
            Ok(pool.install(run))
        }
    }
}

/// Runs the Monte Carlo table: every distance in the config is evaluated on
/// the same stream of triplets.
pub fn run_consistency_table<T: Real>(cfg: &ExperimentConfig) -> Result<ConsistencyReport> {
    cfg.validate()?;
    let start = Instant::now();
    let frames: BTreeMap<u8, Frame> = cfg
        .n_mix
        .iter()
        .map(|&n| Ok((n, Frame::letters(n as usize)?)))
        .collect::<Result<_>>()?;
    let slack = T::of(cfg.slack);

    let run_trial = |trial: u64| -> Result<TrialRow> {
        let mut rng = substream(cfg.seed, trial);
        let n = cfg.n_mix[rng.random_range(0..cfg.n_mix.len())];
        let frame = &frames[&n];
        let m1: MassFunction<T> = random_mass(frame, &mut rng, &cfg.generator)?;
        let m2: MassFunction<T> = random_mass(frame, &mut rng, &cfg.generator)?;
        let m3: MassFunction<T> = random_mass(frame, &mut rng, &cfg.generator)?;
        let c1 = cfg.rule.combine(&m1, &m3)?;
        let c2 = cfg.rule.combine(&m2, &m3)?;
        let mut outcomes = Vec::with_capacity(cfg.distances.len());
        let mut violated = false;
        for spec in &cfg.distances {
            let before = distance(&m1, &m2, spec)?;
            let after = distance(&c1, &c2, spec)?;
            let holds = after <= before + slack;
            violated |= !holds;
            outcomes.push((holds, before.to_f64_lossy(), after.to_f64_lossy()));
        }
        let masses = violated.then(|| {
            Box::new((
                MassDocument::from_mass(&m1),
                MassDocument::from_mass(&m2),
                MassDocument::from_mass(&m3),
            ))
        });
        Ok(TrialRow {
            trial,
            n,
            outcomes,
            masses,
        })
    };

    let trial_rows: Vec<TrialRow> = in_pool(cfg.jobs, || {
        (0..cfg.trials)
            .into_par_iter()
            .map(run_trial)
            .collect::<Result<Vec<_>>>()
    })??;

    let mut rows: Vec<DistanceRow> = cfg
        .distances
        .iter()
        .map(|spec| DistanceRow {
            spec: *spec,
            label: spec.to_string(),
            trials: cfg.trials,
            successes: 0,
            rate: 0.0,
            max_violation: 0.0,
            witnesses: Vec::new(),
        })
        .collect();
    for trial_row in &trial_rows {
        for (row, &(holds, before, after)) in rows.iter_mut().zip(&trial_row.outcomes) {
            if holds {
                row.successes += 1;
            } else {
                row.max_violation = row.max_violation.max(after - before);
                if row.witnesses.len() < MAX_WITNESSES {
                    let (m1, m2, m3) = trial_row
                        .masses
                        .as_deref()
                        .cloned()
                        .expect("violating trials carry their masses");
                    row.witnesses.push(Witness {
                        trial: trial_row.trial,
                        n: trial_row.n,
                        d_before: before,
                        d_after: after,
                        m1,
                        m2,
                        m3,
                    });
                }
            }
        }
    }
    for row in &mut rows {
        row.rate = row.successes as f64 / row.trials as f64;
    }

    Ok(ConsistencyReport {
        config: cfg.clone(),
        rows,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

/// Corpus for the small-frame exhaustive checker.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "corpus", rename_all = "kebab-case")]
pub enum ExhaustiveCorpus {
    /// All `N³` triplets of categorical mass functions.
    CategoricalTriplets,
    /// Simple mass functions on a weight grid over every nonempty focal set.
    SimpleGrid { step: f64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExhaustiveReport {
    pub spec: DistanceSpec,
    pub rule: Rule,
    pub n: u8,
    pub corpus: ExhaustiveCorpus,
    pub checked: u64,
    pub violations: u64,
    pub max_violation: f64,
    pub witnesses: Vec<Witness>,
}

const EXHAUSTIVE_FRAME_CAP: u8 = 4;
const MIN_GRID_STEP: f64 = 0.25;

/// Checks the non-expansiveness inequality over the full corpus.
pub fn exhaustive_check<T: Real>(
    spec: &DistanceSpec,
    rule: Rule,
    corpus: ExhaustiveCorpus,
    n: u8,
) -> Result<ExhaustiveReport> {
    if n == 0 || n > EXHAUSTIVE_FRAME_CAP {
        return Err(Error::CorpusTooLarge(format!(
            "exhaustive checks are capped at {EXHAUSTIVE_FRAME_CAP} elements, got {n}"
        )));
    }
    let frame = Frame::letters(n as usize)?;
    let masses: Vec<MassFunction<T>> = match corpus {
        ExhaustiveCorpus::CategoricalTriplets => frame
            .subsets()
            .map(|s| MassFunction::categorical(&frame, s))
            .collect(),
        ExhaustiveCorpus::SimpleGrid { step } => {
            if step.is_nan() || step < MIN_GRID_STEP {
                return Err(Error::CorpusTooLarge(format!(
                    "grid step must be at least {MIN_GRID_STEP}, got {step}"
                )));
            }
            let steps = (1.0 / step).floor() as usize;
            let mut masses = Vec::new();
            for s in frame.subsets().filter(|s| !s.is_empty()) {
                for i in 0..=steps {
                    let w = (i as f64 * step).min(1.0);
                    masses.push(MassFunction::simple(&frame, s, T::of(w))?);
                }
            }
            masses
        }
    };

    let slack = T::CMP_SLACK;
    let mut checked = 0u64;
    let mut violations = 0u64;
    let mut max_violation = 0.0f64;
    let mut witnesses = Vec::new();
    for m1 in &masses {
        for m2 in &masses {
            let before = distance(m1, m2, spec)?;
            for m3 in &masses {
                let c1 = rule.combine(m1, m3)?;
                let c2 = rule.combine(m2, m3)?;
                let after = distance(&c1, &c2, spec)?;
                checked += 1;
                if after > before + slack {
                    violations += 1;
                    let gap = (after - before).to_f64_lossy();
                    max_violation = max_violation.max(gap);
                    if witnesses.len() < MAX_WITNESSES {
                        witnesses.push(Witness {
                            trial: checked - 1,
                            n,
                            d_before: before.to_f64_lossy(),
                            d_after: after.to_f64_lossy(),
                            m1: MassDocument::from_mass(m1),
                            m2: MassDocument::from_mass(m2),
                            m3: MassDocument::from_mass(m3),
                        });
                    }
                }
            }
        }
    }
    Ok(ExhaustiveReport {
        spec: *spec,
        rule,
        n,
        corpus,
        checked,
        violations,
        max_violation,
        witnesses,
    })
}

/// Configuration of the α-rule Lipschitz run. Distances here are raw `L_k`
/// norms between the α-set-functions matching the rule (α-commonalities for
/// the intersection side, α-implicabilities for the union side).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaConsistencyConfig {
    pub mode: CombineMode,
    pub alpha: f64,
    pub trials: u64,
    pub seed: u64,
    pub n_mix: Vec<u8>,
    pub ks: Vec<NormOrder>,
    pub generator: GenSpec,
    pub slack: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

impl AlphaConsistencyConfig {
    pub fn new(mode: CombineMode, alpha: f64, seed: u64) -> AlphaConsistencyConfig {
        AlphaConsistencyConfig {
            mode,
            alpha,
            trials: 1_000,
            seed,
            n_mix: vec![3, 4, 5],
            ks: vec![
                NormOrder::Finite(1),
                NormOrder::Finite(2),
                NormOrder::Infinity,
            ],
            generator: GenSpec::simple(),
            slack: 1e-12,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaRow {
    pub family: AlphaFamily,
    pub k: NormOrder,
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
    pub max_violation: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlphaConsistencyReport {
    pub config: AlphaConsistencyConfig,
    pub rows: Vec<AlphaRow>,
    pub wall_time_secs: f64,
}

impl AlphaConsistencyReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("distance,k,rule,trials,successes,rate,max_violation\n");
        let rule = match self.config.mode {
            CombineMode::Intersection => format!("aconj:{}", self.config.alpha),
            CombineMode::Union => format!("adisj:{}", self.config.alpha),
        };
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.family.name(),
                row.k,
                rule,
                row.trials,
                row.successes,
                row.rate,
                row.max_violation
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Monte Carlo check that the α-rule is non-expansive for `L_k` norms between
/// the matching α-set-functions.
pub fn run_alpha_consistency<T: Real>(
    cfg: &AlphaConsistencyConfig,
) -> Result<AlphaConsistencyReport> {
    if cfg.trials < 1 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let start = Instant::now();
    let alpha = Alpha::new(T::of(cfg.alpha))?;
    let family = AlphaFamily::for_mode(cfg.mode);
    let frames: BTreeMap<u8, Frame> = cfg
        .n_mix
        .iter()
        .map(|&n| Ok((n, Frame::letters(n as usize)?)))
        .collect::<Result<_>>()?;
    let slack = T::of(cfg.slack);

    let run_trial = |trial: u64| -> Result<Vec<(bool, f64)>> {
        let mut rng = substream(cfg.seed, trial);
        let n = cfg.n_mix[rng.random_range(0..cfg.n_mix.len())];
        let frame = &frames[&n];
        let m1: MassFunction<T> = random_mass(frame, &mut rng, &cfg.generator)?;
        let m2: MassFunction<T> = random_mass(frame, &mut rng, &cfg.generator)?;
        let m3: MassFunction<T> = random_mass(frame, &mut rng, &cfg.generator)?;
        let c1 = alpha_combine(&m1, &m3, alpha, cfg.mode)?;
        let c2 = alpha_combine(&m2, &m3, alpha, cfg.mode)?;
        cfg.ks
            .iter()
            .map(|&k| {
                let before = alpha_norm_distance(&m1, &m2, alpha, family, k)?;
                let after = alpha_norm_distance(&c1, &c2, alpha, family, k)?;
                Ok((after <= before + slack, (after - before).to_f64_lossy()))
            })
            .collect()
    };

    let trial_rows: Vec<Vec<(bool, f64)>> = in_pool(cfg.jobs, || {
        (0..cfg.trials)
            .into_par_iter()
            .map(run_trial)
            .collect::<Result<Vec<_>>>()
    })??;

    let mut rows: Vec<AlphaRow> = cfg
        .ks
        .iter()
        .map(|&k| AlphaRow {
            family,
            k,
            trials: cfg.trials,
            successes: 0,
            rate: 0.0,
            max_violation: 0.0,
        })
        .collect();
    for outcomes in &trial_rows {
        for (row, &(holds, gap)) in rows.iter_mut().zip(outcomes) {
            if holds {
                row.successes += 1;
            } else {
                row.max_violation = row.max_violation.max(gap);
            }
        }
    }
    for row in &mut rows {
        row.rate = row.successes as f64 / row.trials as f64;
    }

    Ok(AlphaConsistencyReport {
        config: cfg.clone(),
        rows,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}
