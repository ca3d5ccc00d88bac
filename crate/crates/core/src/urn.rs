//! Exact solvers over a prior on urn compositions.
//!
//! Priors range over red counts `x ∈ {0..n}`. The all-green urn is removed
//! only by conditioning on an observed red draw, which is what turns the
//! uniform prior into the `2x / (n(n+1))` weighting.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{square_pyramidal, sum_integers};
use crate::error::{Result, UrnError};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Green,
}

impl Color {
    pub fn as_char(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Green => 'G',
        }
    }
}

/// Colors observed so far, in draw order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DrawSequence(Vec<Color>);

impl DrawSequence {
    pub fn new(draws: Vec<Color>) -> Self {
        Self(draws)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn draws(&self) -> &[Color] {
        &self.0
    }

    pub fn reds(&self) -> u64 {
        self.0.iter().filter(|c| **c == Color::Red).count() as u64
    }

    pub fn greens(&self) -> u64 {
        self.len() as u64 - self.reds()
    }

    pub fn push(&mut self, color: Color) {
        self.0.push(color);
    }
}

impl FromIterator<Color> for DrawSequence {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl FromStr for DrawSequence {
    type Err = UrnError;

    /// Parses a string over `{R, G}` (case-insensitive); the empty string is the empty prefix.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c.to_ascii_uppercase() {
                'R' => Ok(Color::Red),
                'G' => Ok(Color::Green),
                other => Err(UrnError::domain(format!(
                    "draw sequence may only contain R and G, found {other:?}"
                ))),
            })
            .collect()
    }
}

impl fmt::Display for DrawSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{}", c.as_char()))
    }
}

/// An urn holding `n` balls, `red` of them red.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UrnComposition {
    n: u64,
    red: u64,
}

impl UrnComposition {
    pub fn new(n: u64, red: u64) -> Result<Self> {
        if n == 0 {
            return Err(UrnError::domain("an urn needs at least one ball"));
        }
        if red > n {
            return Err(UrnError::domain(format!(
                "red count {red} exceeds urn size {n}"
            )));
        }
        Ok(Self { n, red })
    }

    pub fn size(&self) -> u64 {
        self.n
    }

    pub fn red(&self) -> u64 {
        self.red
    }

    pub fn green(&self) -> u64 {
        self.n - self.red
    }

    /// Probability of drawing exactly `prefix`, in order, without replacement.
    pub fn prefix_likelihood(&self, prefix: &DrawSequence) -> Result<Rational> {
        if prefix.len() as u64 > self.n {
            return Err(UrnError::domain(format!(
                "prefix of length {} is longer than the urn ({} balls)",
                prefix.len(),
                self.n
            )));
        }
        let (mut red_left, mut green_left) = (self.red, self.green());
        let mut p = Rational::one();
        for (drawn, color) in prefix.draws().iter().enumerate() {
            let remaining = self.n - drawn as u64;
            let favourable = match color {
                Color::Red => &mut red_left,
                Color::Green => &mut green_left,
            };
            if *favourable == 0 {
                return Ok(Rational::zero());
            }
            p = p * Rational::ratio(*favourable, remaining);
            *favourable -= 1;
        }
        Ok(p)
    }

    /// Probability the next draw is red once `prefix` has been removed.
    /// The prefix must be drawable from this urn and leave at least one ball.
    fn next_red_after(&self, prefix: &DrawSequence) -> Rational {
        let k = prefix.len() as u64;
        debug_assert!(k < self.n && prefix.reds() <= self.red);
        Rational::ratio(self.red - prefix.reds(), self.n - k)
    }
}

/// A distribution over the red count of an `n`-ball urn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionPrior {
    n: u64,
    weights: BTreeMap<u64, Rational>,
}

impl CompositionPrior {
    /// Validates that every key is a red count in `0..=n`, every weight is
    /// non-negative, and the weights sum to exactly one.
    pub fn new(n: u64, weights: BTreeMap<u64, Rational>) -> Result<Self> {
        if n == 0 {
            return Err(UrnError::domain("prior needs urn size n >= 1"));
        }
        if let Some((&x, _)) = weights.iter().find(|(&x, _)| x > n) {
            return Err(UrnError::domain(format!("red count {x} exceeds urn size {n}")));
        }
        if let Some((&x, w)) = weights.iter().find(|(_, w)| w.is_negative()) {
            return Err(UrnError::domain(format!("negative weight {w} at x = {x}")));
        }
        let total: Rational = weights.values().sum();
        if total != Rational::one() {
            return Err(UrnError::domain(format!("prior weights sum to {total}, not 1")));
        }
        Ok(Self { n, weights })
    }

    /// Uniform over `x ∈ {0..n}`.
    pub fn uniform(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(UrnError::domain("prior needs urn size n >= 1"));
        }
        let w = Rational::ratio(1, n + 1);
        Ok(Self {
            n,
            weights: (0..=n).map(|x| (x, w.clone())).collect(),
        })
    }

    pub fn size(&self) -> u64 {
        self.n
    }

    /// Weight of red count `x`; zero outside the stored support.
    pub fn weight(&self, x: u64) -> Rational {
        self.weights.get(&x).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn weights(&self) -> &BTreeMap<u64, Rational> {
        &self.weights
    }

    /// `(composition, weight)` pairs in increasing red count.
    pub fn iter(&self) -> impl Iterator<Item = (UrnComposition, &Rational)> + '_ {
        self.weights
            .iter()
            .map(move |(&x, w)| (UrnComposition { n: self.n, red: x }, w))
    }
}

fn require_two_balls(n: u64) -> Result<()> {
    if n < 2 {
        return Err(UrnError::domain(format!("need n >= 2 balls, got n = {n}")));
    }
    Ok(())
}

/// `(x-1)/(n-1)`: chance the second ball is red after a red was removed from `U_{n,x}`.
pub fn per_urn_second_red(n: u64, x: u64) -> Result<Rational> {
    require_two_balls(n)?;
    if x == 0 {
        return Err(UrnError::domain(
            "x = 0: no red ball can have been removed from an all-green urn",
        ));
    }
    if x > n {
        return Err(UrnError::domain(format!("red count {x} exceeds urn size {n}")));
    }
    Ok(Rational::ratio(x - 1, n - 1))
}

/// The answer under the (wrong) assumption that `U_1..U_n` are equally likely after the red draw.
pub fn uniform_prior_answer(n: u64) -> Result<Rational> {
    require_two_balls(n)?;
    let weight = Rational::ratio(1, n);
    let mut total = Rational::zero();
    for x in 1..=n {
        total = total + &weight * per_urn_second_red(n, x)?;
    }
    Ok(total)
}

/// `Pr[U_x] = 2x / (n(n+1))` on `x ∈ {1..n}`: the urn holding a red ball picked
/// uniformly from every red ball in the family.
pub fn weighted_prior(n: u64) -> Result<CompositionPrior> {
    require_two_balls(n)?;
    let total_red = n * (n + 1) / 2;
    let weights = (1..=n).map(|x| (x, Rational::ratio(x, total_red))).collect();
    CompositionPrior::new(n, weights)
}

/// Mixture of `(x-1)/(n-1)` under [`weighted_prior`], summed term by term.
pub fn weighted_prior_answer(n: u64) -> Result<Rational> {
    let prior = weighted_prior(n)?;
    let mut total = Rational::zero();
    for (urn, w) in prior.iter() {
        total = total + w * per_urn_second_red(n, urn.red())?;
    }
    Ok(total)
}

/// Same quantity as [`weighted_prior_answer`], evaluated as
/// `2 (Σx² − Σx) / ((n−1) n (n+1))`.
pub fn weighted_prior_closed_form(n: u64) -> Result<Rational> {
    require_two_balls(n)?;
    let numerator = (square_pyramidal(n) - sum_integers(n)) * Rational::from(2u64);
    let denominator = Rational::from(n - 1) * Rational::from(n) * Rational::from(n + 1);
    numerator.checked_div(&denominator)
}

/// `Pr[first red]`, `Pr[both red]` and their ratio under the uniform prior on `{0..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionalDecomposition {
    pub p_first_red: Rational,
    pub p_both_red: Rational,
    pub answer: Rational,
}

pub fn conditional_ratio_answer(n: u64) -> Result<ConditionalDecomposition> {
    require_two_balls(n)?;
    let urn_weight = Rational::ratio(1, n + 1);
    let mut p_first_red = Rational::zero();
    let mut p_both_red = Rational::zero();
    for x in 0..=n {
        p_first_red = p_first_red + &urn_weight * Rational::ratio(x, n);
        let both = x * x.saturating_sub(1);
        p_both_red = p_both_red + Rational::ratio(both, (n + 1) * n * (n - 1));
    }
    let answer = p_both_red.checked_div(&p_first_red)?;
    Ok(ConditionalDecomposition {
        p_first_red,
        p_both_red,
        answer,
    })
}

/// Bayes update of `prior` on observing `prefix` drawn without replacement.
///
/// Compositions that cannot produce the prefix keep weight zero in the result.
pub fn posterior_given_prefix(
    prior: &CompositionPrior,
    prefix: &DrawSequence,
) -> Result<CompositionPrior> {
    if prefix.len() as u64 > prior.size() {
        return Err(UrnError::domain(format!(
            "prefix of length {} is longer than the urn ({} balls)",
            prefix.len(),
            prior.size()
        )));
    }
    let mut joint = BTreeMap::new();
    for (urn, w) in prior.iter() {
        joint.insert(urn.red(), w * urn.prefix_likelihood(prefix)?);
    }
    let evidence: Rational = joint.values().sum();
    if evidence.is_zero() {
        return Err(UrnError::conditioning(format!(
            "observing {:?} has probability zero under every composition in the prior",
            prefix.to_string()
        )));
    }
    let weights = joint
        .into_iter()
        .map(|(x, w)| Ok((x, w.checked_div(&evidence)?)))
        .collect::<Result<_>>()?;
    CompositionPrior::new(prior.size(), weights)
}

/// Probability the next ball is red given `prefix`, under the uniform prior on `{0..n}`.
pub fn next_red_given_prefix(n: u64, prefix: &DrawSequence) -> Result<Rational> {
    require_two_balls(n)?;
    if prefix.len() as u64 >= n {
        return Err(UrnError::domain(format!(
            "prefix of length {} leaves no ball to draw from {n}",
            prefix.len()
        )));
    }
    let posterior = posterior_given_prefix(&CompositionPrior::uniform(n)?, prefix)?;
    Ok(posterior
        .iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|(urn, w)| w * urn.next_red_after(prefix))
        .sum())
}
