//! Seeded Monte Carlo replays of the urn sampling processes.
//!
//! Trial `i` draws from its own ChaCha8 stream keyed by `(seed, i)`: the seed
//! fixes the key and the trial index selects the stream. A trial's outcome is
//! therefore a pure function of `(model, seed, i)`, and tallies merged from any
//! partition of the trial indices equal the serial tally exactly.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rand::distr::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Result, UrnError};
use crate::induction::{ordered_distribution, OrderedOutcomeDist};
use crate::rational::Rational;
use crate::symmetry::{symmetry_answer, IndexProcess};
use crate::urn::{conditional_ratio_answer, weighted_prior_answer, Color, UrnComposition};

pub const DEFAULT_SEED: u64 = 0x005e_ed0f_0e1e;
pub const DEFAULT_TRIALS: u64 = 1_000_000;
pub const DEFAULT_Z_THRESHOLD: f64 = 4.0;
/// Upper tail mass for the ordered-outcome chi-square check.
pub const CHI_SQUARE_TAIL: f64 = 0.001;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimModel {
    /// Uniform red count on `{0..n}`, two draws without replacement, condition on the first being red.
    UniformComposition,
    /// Pick one red ball uniformly from all reds in `U_{n,1}, …, U_{n,n}`, then draw again from its urn.
    WeightedRedPick,
    /// Uniform cut/first-draw pair `(i, j)` with `i < j`, then a second position `k ≠ j`.
    SymmetryThreeStep,
}

impl SimModel {
    pub const ALL: [SimModel; 3] = [
        SimModel::UniformComposition,
        SimModel::WeightedRedPick,
        SimModel::SymmetryThreeStep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SimModel::UniformComposition => "uniform-composition",
            SimModel::WeightedRedPick => "weighted-red-pick",
            SimModel::SymmetryThreeStep => "symmetry",
        }
    }
}

impl fmt::Display for SimModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimModel {
    type Err = UrnError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-composition" | "uniform-composition-two-draws" => Ok(Self::UniformComposition),
            "weighted-red-pick" | "weighted" => Ok(Self::WeightedRedPick),
            "symmetry" | "symmetry-three-step" => Ok(Self::SymmetryThreeStep),
            other => Err(UrnError::domain(format!(
                "unknown model {other:?}; expected one of uniform-composition, weighted-red-pick, symmetry"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: SimModel,
    pub n: u64,
}

impl ModelSpec {
    pub fn new(kind: SimModel, n: u64) -> Result<Self> {
        if n < 2 {
            return Err(UrnError::domain(format!("need n >= 2 balls, got n = {n}")));
        }
        Ok(Self { kind, n })
    }

    /// The exact answer the simulated conditional frequency estimates.
    pub fn exact_target(&self) -> Result<Rational> {
        match self.kind {
            SimModel::UniformComposition => Ok(conditional_ratio_answer(self.n)?.answer),
            SimModel::WeightedRedPick => weighted_prior_answer(self.n),
            SimModel::SymmetryThreeStep => symmetry_answer(self.n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    /// The conditioning event (first ball red) occurred.
    pub conditioned: bool,
    /// The second ball is red.
    pub success: bool,
}

/// Random source for trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Unbiased uniform integer in `0..bound`.
fn below<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> u64 {
    Uniform::new(0, bound)
        .expect("bound must be positive")
        .sample(rng)
}

/// Largest `x` with `x(x-1)/2 <= r`, i.e. the block holding `r` when blocks have sizes 1, 2, 3, ….
fn triangular_block(r: u64) -> u64 {
    let mut x = ((8.0 * r as f64 + 1.0).sqrt() as u64).div_ceil(2);
    let tri = |x: u64| u128::from(x) * u128::from(x.saturating_sub(1)) / 2;
    while tri(x) > u128::from(r) {
        x -= 1;
    }
    while tri(x + 1) <= u128::from(r) {
        x += 1;
    }
    x
}

/// Two draws without replacement from `urn`, red balls occupying the low positions.
pub fn two_draws_from<R: Rng + ?Sized>(urn: UrnComposition, rng: &mut R) -> (Color, Color) {
    let n = urn.size();
    let color = |pos: u64| if pos < urn.red() { Color::Red } else { Color::Green };
    let first = below(rng, n);
    let mut second = below(rng, n - 1);
    if second >= first {
        second += 1;
    }
    (color(first), color(second))
}

/// Second draw from `urn` after one of its red balls has been removed.
pub fn second_red_after_red<R: Rng + ?Sized>(urn: UrnComposition, rng: &mut R) -> bool {
    debug_assert!(urn.red() >= 1 && urn.size() >= 2);
    below(rng, urn.size() - 1) < urn.red() - 1
}

fn sample_index_process<R: Rng + ?Sized>(n: u64, rng: &mut R) -> IndexProcess {
    // Pairs ordered by j; block j holds the j pairs (0, j), …, (j-1, j).
    let pair = below(rng, n * (n + 1) / 2);
    let j = triangular_block(pair);
    let i = pair - j * (j - 1) / 2;
    let mut k = below(rng, n - 1) + 1;
    if k >= j {
        k += 1;
    }
    IndexProcess::new(n, i, j, k).expect("sampled indices satisfy the process constraints")
}

/// Ordered colours of the two draws in a uniform-composition trial.
pub fn uniform_composition_draws(n: u64, seed: u64, index: u64) -> (Color, Color) {
    let mut rng = trial_rng(seed, index);
    let x = below(&mut rng, n + 1);
    let urn = UrnComposition::new(n, x).expect("x <= n");
    two_draws_from(urn, &mut rng)
}

pub fn run_trial(model: &ModelSpec, seed: u64, index: u64) -> TrialOutcome {
    let n = model.n;
    match model.kind {
        SimModel::UniformComposition => {
            let (first, second) = uniform_composition_draws(n, seed, index);
            TrialOutcome {
                conditioned: first == Color::Red,
                success: first == Color::Red && second == Color::Red,
            }
        }
        SimModel::WeightedRedPick => {
            let mut rng = trial_rng(seed, index);
            // Red balls numbered across the family: urn x holds reds x(x-1)/2 .. x(x+1)/2.
            let ball = below(&mut rng, n * (n + 1) / 2);
            let x = triangular_block(ball);
            let urn = UrnComposition::new(n, x).expect("1 <= x <= n");
            TrialOutcome {
                conditioned: true,
                success: second_red_after_red(urn, &mut rng),
            }
        }
        SimModel::SymmetryThreeStep => {
            let mut rng = trial_rng(seed, index);
            let process = sample_index_process(n, &mut rng);
            TrialOutcome {
                conditioned: true,
                success: process.second_is_red(),
            }
        }
    }
}

/// Iterator over successive trial outcomes of one model and seed.
#[derive(Debug, Clone)]
pub struct TrialStream {
    pub seed: u64,
    pub model: ModelSpec,
    pub trial_index: u64,
}

impl TrialStream {
    pub fn new(model: ModelSpec, seed: u64) -> Self {
        Self {
            seed,
            model,
            trial_index: 0,
        }
    }
}

impl Iterator for TrialStream {
    type Item = TrialOutcome;

    fn next(&mut self) -> Option<TrialOutcome> {
        let outcome = run_trial(&self.model, self.seed, self.trial_index);
        self.trial_index = self.trial_index.checked_add(1)?;
        Some(outcome)
    }
}

/// Integer counts accumulated over a set of trials.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub trials: u64,
    pub conditioned: u64,
    pub successes: u64,
}

impl Tally {
    pub fn record(&mut self, outcome: TrialOutcome) {
        self.trials += 1;
        if outcome.conditioned {
            self.conditioned += 1;
            if outcome.success {
                self.successes += 1;
            }
        }
    }

    pub fn merge(self, other: Tally) -> Tally {
        Tally {
            trials: self.trials + other.trials,
            conditioned: self.conditioned + other.conditioned,
            successes: self.successes + other.successes,
        }
    }
}

pub fn tally_range(model: &ModelSpec, seed: u64, indices: Range<u64>) -> Tally {
    let mut tally = Tally::default();
    for i in indices {
        tally.record(run_trial(model, seed, i));
    }
    tally
}

fn chunks(trials: u64) -> impl ParallelIterator<Item = Range<u64>> {
    let count = trials.div_ceil(CHUNK);
    (0..count)
        .into_par_iter()
        .map(move |c| c * CHUNK..((c + 1) * CHUNK).min(trials))
}

/// Tally of trials `0..trials`, spread over the rayon pool.
pub fn tally(model: &ModelSpec, seed: u64, trials: u64) -> Tally {
    chunks(trials)
        .map(|r| tally_range(model, seed, r))
        .reduce(Tally::default, Tally::merge)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// `sqrt(p(1-p)/m)` for an exact proportion `p` and `m` samples.
pub fn standard_error(p: f64, m: u64) -> f64 {
    (p * (1.0 - p) / m as f64).sqrt()
}

fn z_score(estimate: f64, target: f64, se: f64) -> f64 {
    let diff = estimate - target;
    if se > 0.0 {
        diff / se
    } else if diff == 0.0 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

/// An observed proportion compared against its exact value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProportionCheck {
    pub hits: u64,
    pub samples: u64,
    pub estimate: f64,
    pub exact_target: Rational,
    pub standard_error: f64,
    pub z_score: f64,
    pub verdict: Verdict,
}

impl ProportionCheck {
    pub fn new(hits: u64, samples: u64, exact_target: Rational, z_threshold: f64) -> Result<Self> {
        if samples == 0 {
            return Err(UrnError::Estimation("no samples to estimate from".into()));
        }
        let estimate = hits as f64 / samples as f64;
        let p = exact_target.to_f64();
        let se = standard_error(p, samples);
        let z = z_score(estimate, p, se);
        Ok(Self {
            hits,
            samples,
            estimate,
            exact_target,
            standard_error: se,
            z_score: z,
            verdict: Verdict::from_bool(z.abs() <= z_threshold),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub model: ModelSpec,
    pub seed: u64,
    pub trials: u64,
    /// Trials in which the first ball was red.
    pub conditioning_hits: u64,
    /// Conditioned trials whose second ball was red.
    pub successes: u64,
    pub estimate: f64,
    pub exact_target: Rational,
    pub standard_error: f64,
    pub z_score: f64,
    pub z_threshold: f64,
    pub verdict: Verdict,
    /// Rate of the conditioning event against its exact value, for models that reject trials.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditioning: Option<ProportionCheck>,
}

impl SimulationReport {
    /// True when the main estimate and any conditioning-rate check pass.
    pub fn all_passed(&self) -> bool {
        self.verdict.passed() && self.conditioning.as_ref().is_none_or(|c| c.verdict.passed())
    }
}

pub fn estimate(model: &ModelSpec, trials: u64, seed: u64) -> Result<SimulationReport> {
    estimate_with_threshold(model, trials, seed, DEFAULT_Z_THRESHOLD)
}

pub fn estimate_with_threshold(
    model: &ModelSpec,
    trials: u64,
    seed: u64,
    z_threshold: f64,
) -> Result<SimulationReport> {
    if trials == 0 {
        return Err(UrnError::domain("trials must be at least 1"));
    }
    let counts = tally(model, seed, trials);
    report_from_tally(model, seed, counts, z_threshold)
}

/// Builds the report for an already collected tally.
pub fn report_from_tally(
    model: &ModelSpec,
    seed: u64,
    counts: Tally,
    z_threshold: f64,
) -> Result<SimulationReport> {
    if counts.conditioned == 0 {
        return Err(UrnError::Estimation(format!(
            "none of the {} trials satisfied the conditioning event",
            counts.trials
        )));
    }
    let main = ProportionCheck::new(
        counts.successes,
        counts.conditioned,
        model.exact_target()?,
        z_threshold,
    )?;
    let conditioning = match model.kind {
        SimModel::UniformComposition => Some(ProportionCheck::new(
            counts.conditioned,
            counts.trials,
            conditional_ratio_answer(model.n)?.p_first_red,
            z_threshold,
        )?),
        _ => None,
    };
    Ok(SimulationReport {
        model: *model,
        seed,
        trials: counts.trials,
        conditioning_hits: counts.conditioned,
        successes: counts.successes,
        estimate: main.estimate,
        exact_target: main.exact_target,
        standard_error: main.standard_error,
        z_score: main.z_score,
        z_threshold,
        verdict: main.verdict,
        conditioning,
    })
}

/// Ordered-outcome frequencies of the two-draw model with a Pearson chi-square test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyTable {
    pub seed: u64,
    pub trials: u64,
    /// Counts of GG, GR, RG, RR.
    pub counts: [u64; 4],
    pub frequencies: [f64; 4],
    pub expected: OrderedOutcomeDist,
    pub chi_square: f64,
    pub degrees_of_freedom: u32,
    /// Chi-square quantile at `1 - CHI_SQUARE_TAIL`.
    pub critical_value: f64,
    pub verdict: Verdict,
}

pub const ORDERED_LABELS: [&str; 4] = ["GG", "GR", "RG", "RR"];

fn ordered_slot(first: Color, second: Color) -> usize {
    match (first, second) {
        (Color::Green, Color::Green) => 0,
        (Color::Green, Color::Red) => 1,
        (Color::Red, Color::Green) => 2,
        (Color::Red, Color::Red) => 3,
    }
}

fn ordered_counts(n: u64, seed: u64, trials: u64) -> [u64; 4] {
    let add = |a: [u64; 4], b: [u64; 4]| std::array::from_fn(|s| a[s] + b[s]);
    chunks(trials)
        .map(|r| {
            let mut counts = [0u64; 4];
            for i in r {
                let (a, b) = uniform_composition_draws(n, seed, i);
                counts[ordered_slot(a, b)] += 1;
            }
            counts
        })
        .reduce(|| [0; 4], add)
}

/// Upper quantile of chi-square with `df` degrees of freedom at tail mass `tail`.
pub fn chi_square_critical(df: u32, tail: f64) -> f64 {
    ChiSquared::new(f64::from(df))
        .expect("positive degrees of freedom")
        .inverse_cdf(1.0 - tail)
}

pub fn frequency_table(model: &ModelSpec, trials: u64, seed: u64) -> Result<FrequencyTable> {
    if model.kind != SimModel::UniformComposition {
        return Err(UrnError::domain(format!(
            "ordered-outcome table needs the uniform-composition two-draw model, got {}",
            model.kind
        )));
    }
    if trials == 0 {
        return Err(UrnError::domain("trials must be at least 1"));
    }
    let counts = ordered_counts(model.n, seed, trials);
    let expected = ordered_distribution(model.n)?;
    let probs = [&expected.gg, &expected.gr, &expected.rg, &expected.rr].map(Rational::to_f64);
    let m = trials as f64;
    let chi_square = counts
        .iter()
        .zip(probs)
        .map(|(&c, p)| {
            let e = m * p;
            (c as f64 - e).powi(2) / e
        })
        .sum::<f64>();
    let degrees_of_freedom = 3;
    let critical_value = chi_square_critical(degrees_of_freedom, CHI_SQUARE_TAIL);
    Ok(FrequencyTable {
        seed,
        trials,
        counts,
        frequencies: counts.map(|c| c as f64 / m),
        expected,
        chi_square,
        degrees_of_freedom,
        critical_value,
        verdict: Verdict::from_bool(chi_square < critical_value),
    })
}
