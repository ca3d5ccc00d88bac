mod common;

use common::{all_prefixes, brute_next_red};
use proptest::prelude::*;
use urnlab::urn::{
    conditional_ratio_answer, next_red_given_prefix, posterior_given_prefix, uniform_prior_answer,
    weighted_prior_answer, weighted_prior_closed_form,
};
use urnlab::{rat, CompositionPrior, DrawSequence, Rational, UrnError};

#[test]
fn oracle_spot_values() {
    let prefix: DrawSequence = "RRG".parse().unwrap();
    assert_eq!(brute_next_red(10, prefix.draws()).unwrap(), rat(3, 5).unwrap());
    assert_eq!(brute_next_red(6, &[]).unwrap(), rat(1, 2).unwrap());
}

#[test]
fn next_red_matches_brute_force() {
    for n in 2..=9u64 {
        for prefix in all_prefixes(4) {
            if prefix.len() as u64 >= n {
                continue;
            }
            let expected = brute_next_red(n, prefix.draws()).expect("uniform prior makes every prefix feasible");
            assert_eq!(next_red_given_prefix(n, &prefix).unwrap(), expected, "n = {n}, prefix = {prefix}");
        }
    }
}

#[test]
fn rule_of_succession_pattern() {
    for n in 2..=30u64 {
        for prefix in all_prefixes(5) {
            if prefix.len() as u64 >= n {
                continue;
            }
            let succession = Rational::new(prefix.reds() + 1, prefix.len() as u64 + 2).unwrap();
            assert_eq!(next_red_given_prefix(n, &prefix).unwrap(), succession);
        }
    }
}

#[test]
fn solvers_independent_of_n() {
    let half = rat(1, 2).unwrap();
    let two_thirds = rat(2, 3).unwrap();
    for n in 2..=200 {
        assert_eq!(uniform_prior_answer(n).unwrap(), half);
        assert_eq!(weighted_prior_answer(n).unwrap(), two_thirds);
        assert_eq!(weighted_prior_closed_form(n).unwrap(), two_thirds);
        assert_eq!(conditional_ratio_answer(n).unwrap().answer, two_thirds);
    }
}

#[test]
fn posterior_after_red_is_linear_in_x() {
    let red: DrawSequence = "R".parse().unwrap();
    for n in 2..=50u64 {
        let post = posterior_given_prefix(&CompositionPrior::uniform(n).unwrap(), &red).unwrap();
        assert!(post.weight(0).is_zero());
        for x in 1..=n {
            assert_eq!(post.weight(x), Rational::new(2 * x, n * (n + 1)).unwrap());
        }
    }
}

#[test]
fn infeasible_prefix_under_narrow_prior() {
    let mut weights = std::collections::BTreeMap::new();
    weights.insert(5, Rational::one());
    let all_red = CompositionPrior::new(5, weights).unwrap();
    let err = posterior_given_prefix(&all_red, &"RG".parse().unwrap()).unwrap_err();
    assert!(matches!(err, UrnError::Conditioning(_)));
}

fn prefix_strategy() -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('R'), Just('G')], 0..8)
        .prop_map(|v| v.into_iter().collect())
}

proptest! {
    #[test]
    fn posterior_sums_to_one(n in 2u64..40, prefix in prefix_strategy()) {
        let prefix: DrawSequence = prefix.parse().unwrap();
        prop_assume!((prefix.len() as u64) <= n);
        let post = posterior_given_prefix(&CompositionPrior::uniform(n).unwrap(), &prefix).unwrap();
        let total: Rational = post.weights().values().sum();
        prop_assert_eq!(total, Rational::one());
        prop_assert!(post.weights().values().all(|w| !w.is_negative()));
    }

    #[test]
    fn sequential_updates_compose(n in 2u64..25, prefix in prefix_strategy()) {
        // Updating one draw at a time equals updating on the whole prefix.
        let prefix: DrawSequence = prefix.parse().unwrap();
        prop_assume!((prefix.len() as u64) <= n);
        let whole = posterior_given_prefix(&CompositionPrior::uniform(n).unwrap(), &prefix).unwrap();
        let mut step = CompositionPrior::uniform(n).unwrap();
        let mut seen = DrawSequence::empty();
        for &c in prefix.draws() {
            // Reweight by the next-draw likelihood given what has already been removed.
            let mut weights = std::collections::BTreeMap::new();
            for (urn, w) in step.iter() {
                let mut extended = seen.clone();
                extended.push(c);
                let full = urn.prefix_likelihood(&extended).unwrap();
                let before = urn.prefix_likelihood(&seen).unwrap();
                let lik = if before.is_zero() { Rational::zero() } else { full.checked_div(&before).unwrap() };
                weights.insert(urn.red(), w * lik);
            }
            let z: Rational = weights.values().sum();
            for w in weights.values_mut() {
                *w = w.checked_div(&z).unwrap();
            }
            step = CompositionPrior::new(n, weights).unwrap();
            seen.push(c);
        }
        prop_assert_eq!(step, whole);
    }
}

#[test]
fn census_agrees_with_direct_oracle() {
    for n in 2..=6u64 {
        let census = common::DrawCensus::new(n, 4);
        for prefix in all_prefixes(3) {
            if prefix.len() as u64 >= n {
                continue;
            }
            assert_eq!(census.next_red(prefix.draws()), brute_next_red(n, prefix.draws()));
        }
    }
}
