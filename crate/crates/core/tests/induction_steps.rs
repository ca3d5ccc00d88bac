use urnlab::combinatorics::binomial;
use urnlab::induction::{
    base_case_tally, direct_tally, extend_tally, family_ball_counts, inductive_answer,
    multiset_distribution, multiset_distribution_direct, new_ball_groups, ordered_distribution,
    reduced_collection_red_fraction,
};
use urnlab::symmetry::symmetry_answer;
use urnlab::urn::{conditional_ratio_answer, weighted_prior_answer};
use urnlab::{rat, Rational};

#[test]
fn every_step_adds_three_equal_groups() {
    let mut tally = base_case_tally();
    for n in 2..=300u64 {
        let half = u128::from(n) * u128::from(n + 1) / 2;
        let groups = new_ball_groups(n);
        assert_eq!((groups.green_green, groups.green_red, groups.red_red), (half, half, half));
        assert_eq!(family_ball_counts(n), (half, half));

        let next = extend_tally(&tally).unwrap();
        let added: Vec<u128> = (0..3).map(|j| next.counts()[j] - tally.counts()[j]).collect();
        assert_eq!(added, vec![half; 3]);
        tally = next;
    }
}

#[test]
fn inductive_and_direct_counts_agree() {
    let third = rat(1, 3).unwrap();
    let mut tally = base_case_tally();
    for n in 2..=300u64 {
        if n > 2 {
            tally = extend_tally(&tally).unwrap();
        }
        let (a, b, c) = direct_tally(n).unwrap();
        let [x, y, z] = tally.counts().map(Rational::integer);
        assert_eq!((a, b, c), (x, y, z), "n = {n}");
        assert_eq!(Rational::integer(tally.total()), Rational::from(n + 1) * binomial(n, 2));
        let direct = multiset_distribution_direct(n).unwrap();
        assert_eq!(direct, (third.clone(), third.clone(), third.clone()));
    }
    assert_eq!(multiset_distribution(300).unwrap(), (third.clone(), third.clone(), third));
}

#[test]
fn ordered_marginals() {
    let half = rat(1, 2).unwrap();
    for n in 2..=60 {
        let d = ordered_distribution(n).unwrap();
        assert_eq!(d.first_red(), half);
        assert_eq!(d.second_red(), half);
        assert_eq!(d.rg, d.gr);
        assert_eq!(d.total(), Rational::one());
    }
}

#[test]
fn four_way_agreement() {
    for n in 2..=60 {
        let inductive = inductive_answer(n).unwrap();
        assert_eq!(inductive, weighted_prior_answer(n).unwrap());
        assert_eq!(inductive, symmetry_answer(n).unwrap());
        assert_eq!(inductive, conditional_ratio_answer(n).unwrap().answer);
    }
}

#[test]
fn reduced_collection_is_half_red() {
    for n in 2..=100 {
        assert_eq!(reduced_collection_red_fraction(n).unwrap(), rat(1, 2).unwrap());
    }
}
