//! Classical conditional-probability puzzles as finite outcome spaces.
//!
//! Child pairs are labelled `(older, younger)`, so `"GB"` is an older girl
//! with a younger boy. The "at least one boy" question is modelled only by the
//! uniform ordered-pair reading that yields 1/3; the competing 1/2 reading
//! depends on how the family came to be reported and is not modelled.

use std::fmt;
use std::sync::Arc;

use crate::error::{Result, UrnError};
use crate::induction::ordered_distribution;
use crate::rational::{rat, Rational};

pub type Predicate = Arc<dyn Fn(&str) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct Scenario {
    name: String,
    outcomes: Vec<(String, Rational)>,
    condition: Predicate,
    target: Predicate,
}

impl fmt::Debug for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scenario")
            .field("name", &self.name)
            .field("outcomes", &self.outcomes)
            .finish_non_exhaustive()
    }
}

impl Scenario {
    pub fn new(
        name: impl Into<String>,
        outcomes: Vec<(String, Rational)>,
        condition: Predicate,
        target: Predicate,
    ) -> Result<Self> {
        if outcomes.iter().any(|(_, p)| p.is_negative()) {
            return Err(UrnError::domain("outcome probabilities must be non-negative"));
        }
        let total: Rational = outcomes.iter().map(|(_, p)| p).sum();
        if total != Rational::one() {
            return Err(UrnError::domain(format!(
                "outcome probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self {
            name: name.into(),
            outcomes,
            condition,
            target,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn outcomes(&self) -> &[(String, Rational)] {
        &self.outcomes
    }

    /// Outcome labels that satisfy the conditioning event.
    pub fn conditioned_outcomes(&self) -> Vec<&str> {
        self.outcomes
            .iter()
            .filter(|(label, _)| (self.condition)(label))
            .map(|(label, _)| label.as_str())
            .collect()
    }

    pub fn probability_of(&self, event: impl Fn(&str) -> bool) -> Rational {
        self.outcomes
            .iter()
            .filter(|(label, _)| event(label))
            .map(|(_, p)| p)
            .sum()
    }

    pub fn condition(&self) -> &Predicate {
        &self.condition
    }

    pub fn target(&self) -> &Predicate {
        &self.target
    }
}

/// `Pr[target ∩ condition] / Pr[condition]`.
pub fn evaluate(s: &Scenario) -> Result<Rational> {
    let condition = s.probability_of(|l| (s.condition)(l));
    if condition.is_zero() {
        return Err(UrnError::conditioning(format!(
            "conditioning event of {:?} has probability zero",
            s.name
        )));
    }
    let joint = s.probability_of(|l| (s.condition)(l) && (s.target)(l));
    joint.checked_div(&condition)
}

pub const BERTRAND_BOX: &str = "bertrand-box";
pub const BOY_GIRL_OLDER: &str = "boy-girl-older";
pub const BOY_GIRL_AT_LEAST_ONE: &str = "boy-girl-at-least-one";

pub const SCENARIO_NAMES: [&str; 3] = [BERTRAND_BOX, BOY_GIRL_OLDER, BOY_GIRL_AT_LEAST_ONE];

/// Two-ball urn puzzle: first draw red, is the second red too?
pub fn bertrand_box() -> Scenario {
    let dist = ordered_distribution(2).expect("n = 2 is valid");
    let outcomes = dist
        .entries()
        .into_iter()
        .map(|(label, p)| (label.to_string(), p.clone()))
        .collect();
    Scenario::new(
        BERTRAND_BOX,
        outcomes,
        Arc::new(|l: &str| l.starts_with('R')),
        Arc::new(|l: &str| l == "RR"),
    )
    .expect("ordered distribution sums to one")
}

fn child_pairs() -> Vec<(String, Rational)> {
    let quarter = rat(1, 4).expect("non-zero denominator");
    ["BB", "BG", "GB", "GG"]
        .into_iter()
        .map(|l| (l.to_string(), quarter.clone()))
        .collect()
}

pub fn boy_girl_older_known() -> Scenario {
    Scenario::new(
        BOY_GIRL_OLDER,
        child_pairs(),
        Arc::new(|l: &str| l.starts_with('G')),
        Arc::new(|l: &str| l == "GG"),
    )
    .expect("uniform pairs sum to one")
}

pub fn boy_girl_at_least_one() -> Scenario {
    Scenario::new(
        BOY_GIRL_AT_LEAST_ONE,
        child_pairs(),
        Arc::new(|l: &str| l.contains('B')),
        Arc::new(|l: &str| l == "BB"),
    )
    .expect("uniform pairs sum to one")
}

pub fn scenario_by_name(name: &str) -> Option<Scenario> {
    match name {
        BERTRAND_BOX => Some(bertrand_box()),
        BOY_GIRL_OLDER => Some(boy_girl_older_known()),
        BOY_GIRL_AT_LEAST_ONE => Some(boy_girl_at_least_one()),
        _ => None,
    }
}
