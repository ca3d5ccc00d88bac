//! The two-ball sample census over the urn family `U_{n,0}, …, U_{n,n}`,
//! grown one ball at a time.
//!
//! Going from `n` to `n+1`, each old urn `U_{n,x}` gains a new green ball and
//! a fresh all-red urn `U_{n+1,n+1}` joins the family. Samples of two old
//! balls keep their previous tally; the new samples split into three groups
//! of equal size, one for each red count.

use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::error::{Result, UrnError};
use crate::rational::Rational;
use crate::urn::UrnComposition;

/// Unordered two-ball samples over the family `U_{n,0..n}`, bucketed by red count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleTally {
    n: u64,
    counts: [u128; 3],
}

/// Sizes of the sample groups that involve at least one new ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NewBallGroups {
    /// New green ball with an old green ball (no reds).
    pub green_green: u128,
    /// New green ball with an old red ball (one red).
    pub green_red: u128,
    /// Two balls of the new all-red urn.
    pub red_red: u128,
}

impl SampleTally {
    pub fn new(n: u64, counts: [u128; 3]) -> Result<Self> {
        let tally = Self { n, counts };
        tally.validate()?;
        Ok(tally)
    }

    pub fn size(&self) -> u64 {
        self.n
    }

    /// Counts of samples with 0, 1 and 2 red balls.
    pub fn counts(&self) -> [u128; 3] {
        self.counts
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    /// `Pr[E_j]` for `j = 0, 1, 2`.
    pub fn probabilities(&self) -> (Rational, Rational, Rational) {
        let total = Rational::integer(self.total());
        let [a, b, c] = self.counts.map(|c| Rational::integer(c) / &total);
        (a, b, c)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(UrnError::domain(format!("tally needs n >= 2, got {}", self.n)));
        }
        let n = u128::from(self.n);
        let expected = (n + 1) * n * (n - 1) / 2;
        if self.total() != expected {
            return Err(UrnError::domain(format!(
                "tally at n = {} holds {} samples, expected (n+1)·C(n,2) = {expected}",
                self.n,
                self.total()
            )));
        }
        Ok(())
    }
}

/// The urn family `U_{n,0}, …, U_{n,n}`.
pub fn urn_family(n: u64) -> Vec<UrnComposition> {
    (0..=n)
        .map(|x| UrnComposition::new(n, x).expect("0 <= x <= n"))
        .collect()
}

/// Total `(red, green)` balls across the family.
pub fn family_ball_counts(n: u64) -> (u128, u128) {
    urn_family(n).iter().fold((0, 0), |(r, g), urn| {
        (r + u128::from(urn.red()), g + u128::from(urn.green()))
    })
}

/// Counts the new-ball samples created when the family grows from `n` to `n+1`.
pub fn new_ball_groups(n: u64) -> NewBallGroups {
    let (old_red, old_green) = family_ball_counts(n);
    let fresh = u128::from(n) + 1;
    NewBallGroups {
        green_green: old_green,
        green_red: old_red,
        red_red: fresh * (fresh - 1) / 2,
    }
}

pub fn base_case_tally() -> SampleTally {
    // U_{2,0} = {G,G}, U_{2,1} = {R,G}, U_{2,2} = {R,R}.
    SampleTally { n: 2, counts: [1, 1, 1] }
}

/// Tally at size `n+1` from the tally at size `n`.
pub fn extend_tally(tally: &SampleTally) -> Result<SampleTally> {
    tally.validate()?;
    let groups = new_ball_groups(tally.n);
    let [zero, one, two] = tally.counts;
    let next = SampleTally {
        n: tally.n + 1,
        counts: [
            checked(zero, groups.green_green)?,
            checked(one, groups.green_red)?,
            checked(two, groups.red_red)?,
        ],
    };
    next.validate()?;
    Ok(next)
}

fn checked(a: u128, b: u128) -> Result<u128> {
    a.checked_add(b)
        .ok_or_else(|| UrnError::domain("sample tally overflowed"))
}

/// Tally at size `n` by iterating [`extend_tally`] from the base case.
pub fn inductive_tally(n: u64) -> Result<SampleTally> {
    if n < 2 {
        return Err(UrnError::domain(format!("need n >= 2 balls, got n = {n}")));
    }
    let mut tally = base_case_tally();
    while tally.n < n {
        tally = extend_tally(&tally)?;
    }
    Ok(tally)
}

/// Tally at size `n` from hypergeometric counts `Σ_x C(x,j)·C(n−x,2−j)`,
/// independent of the induction.
pub fn direct_tally(n: u64) -> Result<(Rational, Rational, Rational)> {
    if n < 2 {
        return Err(UrnError::domain(format!("need n >= 2 balls, got n = {n}")));
    }
    let count = |reds: u64| -> Rational {
        (0..=n)
            .map(|x| binomial(x, reds) * binomial(n - x, 2 - reds))
            .sum()
    };
    Ok((count(0), count(1), count(2)))
}

/// `(Pr[E_0], Pr[E_1], Pr[E_2])` from the inductive tally.
pub fn multiset_distribution(n: u64) -> Result<(Rational, Rational, Rational)> {
    Ok(inductive_tally(n)?.probabilities())
}

/// Same distribution normalised from [`direct_tally`].
pub fn multiset_distribution_direct(n: u64) -> Result<(Rational, Rational, Rational)> {
    let (a, b, c) = direct_tally(n)?;
    let total = Rational::from(n + 1) * binomial(n, 2);
    Ok((
        a.checked_div(&total)?,
        b.checked_div(&total)?,
        c.checked_div(&total)?,
    ))
}

/// Ordered two-draw outcomes; a mixed sample splits evenly between its two orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedOutcomeDist {
    pub gg: Rational,
    pub gr: Rational,
    pub rg: Rational,
    pub rr: Rational,
}

impl OrderedOutcomeDist {
    pub fn total(&self) -> Rational {
        &self.gg + &self.gr + &self.rg + &self.rr
    }

    pub fn first_red(&self) -> Rational {
        &self.rg + &self.rr
    }

    pub fn second_red(&self) -> Rational {
        &self.gr + &self.rr
    }

    /// `(label, probability)` in the order GG, GR, RG, RR.
    pub fn entries(&self) -> [(&'static str, &Rational); 4] {
        [("GG", &self.gg), ("GR", &self.gr), ("RG", &self.rg), ("RR", &self.rr)]
    }
}

pub fn ordered_distribution(n: u64) -> Result<OrderedOutcomeDist> {
    let (none, mixed, both) = multiset_distribution(n)?;
    let half = mixed / Rational::from(2u64);
    Ok(OrderedOutcomeDist {
        gg: none,
        gr: half.clone(),
        rg: half,
        rr: both,
    })
}

/// `Pr[(R,R)] / (Pr[(R,R)] + Pr[(R,G)])`.
pub fn inductive_answer(n: u64) -> Result<Rational> {
    let dist = ordered_distribution(n)?;
    dist.rr.checked_div(&dist.first_red())
}

/// Drops `U_{n,0}`, removes one red ball from every other urn, checks the result is
/// the family `U_{n−1,0..n−1}`, and returns its overall fraction of red balls.
pub fn reduced_collection_red_fraction(n: u64) -> Result<Rational> {
    let reduced = reduced_family(n)?;
    let expected = urn_family(n - 1);
    if reduced != expected {
        return Err(UrnError::Invariant(format!(
            "reduced family at n = {n} is not U_(n-1, 0..n-1)"
        )));
    }
    let red: u64 = reduced.iter().map(|u| u.red()).sum();
    let balls: u64 = reduced.iter().map(|u| u.size()).sum();
    Ok(Rational::ratio(red, balls))
}

/// The family after dropping the all-green urn and removing one red ball from each urn.
pub fn reduced_family(n: u64) -> Result<Vec<UrnComposition>> {
    if n < 2 {
        return Err(UrnError::domain(format!("need n >= 2 balls, got n = {n}")));
    }
    urn_family(n)
        .into_iter()
        .filter(|u| u.red() > 0)
        .map(|u| UrnComposition::new(u.size() - 1, u.red() - 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn q(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    fn thirds() -> (Rational, Rational, Rational) {
        (q(1, 3), q(1, 3), q(1, 3))
    }

    /// Every unordered pair of balls in every urn, classified by red count.
    fn enumerate_samples(n: u64) -> [u128; 3] {
        let mut counts = [0u128; 3];
        for x in 0..=n {
            // balls 0..x are red
            for a in 0..n {
                for b in a + 1..n {
                    let reds = (a < x) as usize + (b < x) as usize;
                    counts[reds] += 1;
                }
            }
        }
        counts
    }

    #[test]
    fn base_case() {
        let t = base_case_tally();
        assert_eq!(t.counts(), [1, 1, 1]);
        assert_eq!(t.total(), 3);
        assert_eq!(t.probabilities(), thirds());
        assert_eq!(t.counts(), enumerate_samples(2));
    }

    #[test]
    fn first_extension() {
        let t = extend_tally(&base_case_tally()).unwrap();
        assert_eq!(t.size(), 3);
        assert_eq!(t.counts(), [4, 4, 4]);
        assert_eq!(t.counts(), enumerate_samples(3));
        let g = new_ball_groups(2);
        assert_eq!((g.green_green, g.green_red, g.red_red), (3, 3, 3));
    }

    #[test]
    fn extension_matches_enumeration() {
        let mut t = base_case_tally();
        for n in 3..=25 {
            t = extend_tally(&t).unwrap();
            assert_eq!(t.counts(), enumerate_samples(n), "n = {n}");
        }
    }

    #[test]
    fn malformed_tally_rejected() {
        assert!(SampleTally::new(3, [1, 1, 1]).is_err());
        assert!(SampleTally::new(1, [0, 0, 0]).is_err());
        assert!(SampleTally::new(3, [4, 4, 4]).is_ok());
        assert!(SampleTally::new(3, [6, 0, 6]).is_ok());
    }

    #[test]
    fn distributions() {
        for n in [2, 5, 100] {
            assert_eq!(multiset_distribution(n).unwrap(), thirds());
            assert_eq!(multiset_distribution_direct(n).unwrap(), thirds());
        }
        let d = ordered_distribution(100).unwrap();
        assert_eq!((d.gg.clone(), d.gr.clone(), d.rg.clone(), d.rr.clone()), (q(1, 3), q(1, 6), q(1, 6), q(1, 3)));
        assert_eq!(d.first_red(), q(1, 2));
        assert_eq!(d.total(), Rational::one());
    }

    #[test]
    fn answers() {
        for n in [2, 33, 100] {
            assert_eq!(inductive_answer(n).unwrap(), q(2, 3));
        }
        assert!(inductive_answer(1).is_err());
    }

    #[test]
    fn reduced_collection() {
        assert_eq!(reduced_collection_red_fraction(100).unwrap(), q(1, 2));
        assert_eq!(reduced_collection_red_fraction(2).unwrap(), q(1, 2));
        let fam = reduced_family(3).unwrap();
        assert_eq!(fam, urn_family(2));
        assert!(reduced_collection_red_fraction(1).is_err());
    }
}
