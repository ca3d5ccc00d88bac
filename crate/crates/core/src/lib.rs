//! Exact and simulated answers to the random-composition urn puzzle.
//!
//! An urn of `n` balls receives a red count drawn uniformly from `{0..n}`. A
//! ball is drawn and turns out red; what is the chance the next ball is red?
//! The crate answers this exactly four different ways, each returning an exact
//! [`Rational`]:
//!
//! - [`urn::weighted_prior_answer`]: average `(x-1)/(n-1)` over the urn weights
//!   `2x/(n(n+1))` induced by the red observation.
//! - [`urn::conditional_ratio_answer`]: `Pr[both red] / Pr[first red]`.
//! - [`symmetry::symmetry_answer`]: count positions in the cut-index formulation.
//! - [`induction::inductive_answer`]: grow the two-ball sample census one ball at a time.
//!
//! All four give 2/3 for every `n >= 2`. [`montecarlo`] replays the sampling
//! processes with counter-based random streams, and [`paradox`] holds the
//! related two-child and two-ball puzzles.

pub mod combinatorics;
pub mod error;
pub mod induction;
pub mod montecarlo;
pub mod paradox;
pub mod rational;
pub mod symmetry;
pub mod urn;

pub use error::{Result, UrnError};
pub use induction::{OrderedOutcomeDist, SampleTally};
pub use montecarlo::{ModelSpec, SimModel, SimulationReport, Verdict};
pub use paradox::Scenario;
pub use rational::{rat, Rational};
pub use symmetry::{IndexProcess, IntervalTriple};
pub use urn::{Color, CompositionPrior, DrawSequence, UrnComposition};

/// The exact solvers that can be selected by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    UniformPrior,
    WeightedPrior,
    Conditional,
    Symmetry,
    Inductive,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::UniformPrior,
        Method::WeightedPrior,
        Method::Conditional,
        Method::Symmetry,
        Method::Inductive,
    ];

    /// Methods that model the puzzle correctly and must agree.
    pub const CORRECT: [Method; 4] = [
        Method::WeightedPrior,
        Method::Conditional,
        Method::Symmetry,
        Method::Inductive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::UniformPrior => "uniform-prior",
            Method::WeightedPrior => "weighted-prior",
            Method::Conditional => "conditional",
            Method::Symmetry => "symmetry",
            Method::Inductive => "inductive",
        }
    }

    pub fn solve(self, n: u64) -> Result<Rational> {
        match self {
            Method::UniformPrior => urn::uniform_prior_answer(n),
            Method::WeightedPrior => urn::weighted_prior_answer(n),
            Method::Conditional => Ok(urn::conditional_ratio_answer(n)?.answer),
            Method::Symmetry => symmetry::symmetry_answer(n),
            Method::Inductive => induction::inductive_answer(n),
        }
    }

    /// The value this method is expected to produce for every `n >= 2`.
    pub fn expected(self) -> Rational {
        match self {
            Method::UniformPrior => Rational::ratio(1, 2),
            _ => Rational::ratio(2, 3),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = UrnError;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                UrnError::Domain(format!(
                    "unknown method {s:?}; expected one of uniform-prior, weighted-prior, conditional, symmetry, inductive"
                ))
            })
    }
}
