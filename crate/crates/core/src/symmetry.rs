//! Counting formulation of the symmetry argument.
//!
//! Balls sit at positions `1..=n`. A cut index `i ∈ {0..n}` colours `1..=i`
//! green and the rest red; the first draw `j` is a red position (`i < j`), and
//! the second draw `k` is any other position. Each pair `(i, j)` is equally
//! likely, and the positions other than `j` split into three runs whose
//! lengths form an [`IntervalTriple`].

use num_bigint::BigUint;

use crate::combinatorics::binomial_int;
use crate::error::{Result, UrnError};
use crate::rational::Rational;

/// One realisation of the three-step index process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexProcess {
    n: u64,
    i: u64,
    j: u64,
    k: u64,
}

impl IndexProcess {
    pub fn new(n: u64, i: u64, j: u64, k: u64) -> Result<Self> {
        check_pair(n, i, j)?;
        if k == 0 || k > n || k == j {
            return Err(UrnError::domain(format!(
                "second draw k = {k} must lie in 1..={n} and differ from j = {j}"
            )));
        }
        Ok(Self { n, i, j, k })
    }

    pub fn triple(&self) -> IntervalTriple {
        IntervalTriple::from_pair(self.n, self.i, self.j)
    }

    /// The second ball is red iff `k` lies right of the cut.
    pub fn second_is_red(&self) -> bool {
        self.k > self.i
    }

    pub fn indices(&self) -> (u64, u64, u64) {
        (self.i, self.j, self.k)
    }
}

/// Lengths of the green run `[1, i]`, the red run `[i+1, j-1]` and the red run `[j+1, n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalTriple {
    pub green: u64,
    pub red_before: u64,
    pub red_after: u64,
}

impl IntervalTriple {
    fn from_pair(n: u64, i: u64, j: u64) -> Self {
        Self {
            green: i,
            red_before: j - i - 1,
            red_after: n - j,
        }
    }

    pub fn total(&self) -> u64 {
        self.green + self.red_before + self.red_after
    }

    pub fn as_tuple(&self) -> (u64, u64, u64) {
        (self.green, self.red_before, self.red_after)
    }
}

fn check_size(n: u64) -> Result<()> {
    if n < 2 {
        return Err(UrnError::domain(format!("need n >= 2 balls, got n = {n}")));
    }
    Ok(())
}

fn check_pair(n: u64, i: u64, j: u64) -> Result<()> {
    check_size(n)?;
    if !(i < j && j <= n) {
        return Err(UrnError::domain(format!(
            "index pair must satisfy 0 <= i < j <= {n}, got i = {i}, j = {j}"
        )));
    }
    Ok(())
}

pub fn intervals_for(n: u64, i: u64, j: u64) -> Result<IntervalTriple> {
    check_pair(n, i, j)?;
    Ok(IntervalTriple::from_pair(n, i, j))
}

/// All `(i, j)` pairs with `0 <= i < j <= n`, in lexicographic order.
pub fn index_pairs(n: u64) -> impl Iterator<Item = (u64, u64)> {
    (0..n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// Number of `(i, j)` pairs, `C(n+1, 2)`.
pub fn pair_count(n: u64) -> BigUint {
    binomial_int(n + 1, 2)
}

/// The triple of every index pair, in lexicographic `(i, j)` order.
pub fn enumerate_triples(n: u64) -> Result<Vec<IntervalTriple>> {
    check_size(n)?;
    Ok(index_pairs(n)
        .map(|(i, j)| IntervalTriple::from_pair(n, i, j))
        .collect())
}

/// Component sums over all pairs, accumulated as integers.
fn length_totals(n: u64) -> [BigUint; 3] {
    let mut totals = [0u128; 3];
    for (i, j) in index_pairs(n) {
        let t = IntervalTriple::from_pair(n, i, j);
        totals[0] += u128::from(t.green);
        totals[1] += u128::from(t.red_before);
        totals[2] += u128::from(t.red_after);
    }
    totals.map(BigUint::from)
}

/// Mean `(l1, l2, l3)` over the uniform distribution on index pairs.
pub fn expected_lengths(n: u64) -> Result<(Rational, Rational, Rational)> {
    check_size(n)?;
    let pairs = Rational::from(pair_count(n));
    let [a, b, c] = length_totals(n).map(|t| Rational::from(t) / &pairs);
    Ok((a, b, c))
}

/// Probability the second draw is red, by counting for every pair how many
/// positions `k ≠ j` lie right of the cut.
pub fn symmetry_answer(n: u64) -> Result<Rational> {
    check_size(n)?;
    let mut red_landings = 0u128;
    for (i, _j) in index_pairs(n) {
        // Positions i+1..=n lie right of the cut; j is one of them and is excluded.
        red_landings += u128::from(n - i - 1);
    }
    let outcomes = Rational::from(pair_count(n)) * Rational::from(n - 1);
    Rational::from(BigUint::from(red_landings)).checked_div(&outcomes)
}

/// Routes through [`expected_lengths`]. Returns `(E[l2] + E[l3]) / (n−1)` and
/// `((n−1) − E[l1]) / (n−1)`, which must coincide.
pub fn symmetry_answer_via_expectation(n: u64) -> Result<(Rational, Rational)> {
    let (e1, e2, e3) = expected_lengths(n)?;
    let span = Rational::from(n - 1);
    let linearity = (e2 + e3).checked_div(&span)?;
    let complement = (&span - e1).checked_div(&span)?;
    Ok((linearity, complement))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use std::collections::HashSet;

    fn q(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    #[test]
    fn interval_examples() {
        assert_eq!(intervals_for(100, 0, 1).unwrap().as_tuple(), (0, 0, 99));
        assert_eq!(intervals_for(100, 0, 100).unwrap().as_tuple(), (0, 99, 0));
        assert_eq!(intervals_for(100, 30, 50).unwrap().as_tuple(), (30, 19, 50));
        assert!(intervals_for(100, 5, 5).is_err());
        assert!(intervals_for(100, 0, 101).is_err());
        assert!(intervals_for(1, 0, 1).is_err());
    }

    #[test]
    fn intervals_sum_to_n_minus_one() {
        for n in 2..=100 {
            for (i, j) in index_pairs(n) {
                assert_eq!(intervals_for(n, i, j).unwrap().total(), n - 1);
            }
        }
    }

    #[test]
    fn small_enumeration() {
        let triples: HashSet<_> = enumerate_triples(2).unwrap().iter().map(|t| t.as_tuple()).collect();
        let expected: HashSet<_> = [(0, 0, 1), (0, 1, 0), (1, 0, 0)].into_iter().collect();
        assert_eq!(triples, expected);
        let ten = enumerate_triples(10).unwrap();
        let distinct: HashSet<_> = ten.iter().collect();
        assert_eq!(distinct.len(), ten.len());
    }

    #[test]
    fn pair_count_at_100() {
        assert_eq!(enumerate_triples(100).unwrap().len(), 5050);
        assert_eq!(pair_count(100), BigUint::from(5050u32));
    }

    #[test]
    fn expectation_examples() {
        let third = q(1, 3);
        assert_eq!(expected_lengths(2).unwrap(), (third.clone(), third.clone(), third));
        let (a, b, c) = expected_lengths(100).unwrap();
        let e = Rational::from(33u64);
        assert_eq!((a.clone(), b.clone(), c.clone()), (e.clone(), e.clone(), e));
        assert_eq!(b + c, Rational::from(66u64));
    }

    #[test]
    fn answers() {
        for n in [2, 17, 100] {
            assert_eq!(symmetry_answer(n).unwrap(), q(2, 3));
            let (lin, comp) = symmetry_answer_via_expectation(n).unwrap();
            assert_eq!(lin, q(2, 3));
            assert_eq!(comp, q(2, 3));
        }
        assert_eq!(q(66, 99), q(2, 3));
    }

    #[test]
    fn index_process_validation() {
        let p = IndexProcess::new(100, 0, 100, 50).unwrap();
        assert!(p.second_is_red());
        assert_eq!(p.triple().as_tuple(), (0, 99, 0));
        assert!(IndexProcess::new(100, 0, 100, 100).is_err());
        assert!(IndexProcess::new(100, 0, 100, 0).is_err());
        assert!(!IndexProcess::new(10, 5, 7, 3).unwrap().second_is_red());
    }
}
