//! Brute-force oracles shared by the integration tests. They work from ball
//! positions and counting only, never through the library's solvers.

#![allow(dead_code)]

use urnlab::{Color, DrawSequence, Rational};

/// Every ordered draw of `len` distinct positions from `0..n`; positions below
/// `red` are red. Calls `visit` with the colour sequence of each draw.
fn for_each_ordered_draw(n: u64, red: u64, len: usize, visit: &mut impl FnMut(&[Color])) {
    fn rec(
        n: u64,
        red: u64,
        len: usize,
        used: &mut Vec<bool>,
        colors: &mut Vec<Color>,
        visit: &mut impl FnMut(&[Color]),
    ) {
        if colors.len() == len {
            visit(colors);
            return;
        }
        for pos in 0..n {
            if used[pos as usize] {
                continue;
            }
            used[pos as usize] = true;
            colors.push(if pos < red { Color::Red } else { Color::Green });
            rec(n, red, len, used, colors, visit);
            colors.pop();
            used[pos as usize] = false;
        }
    }
    let mut used = vec![false; n as usize];
    rec(n, red, len, &mut used, &mut Vec::new(), visit);
}

/// Pr[next draw red | prefix] with the red count uniform on `{0..n}`, found by
/// counting ordered draws of `prefix.len() + 1` labelled balls across every
/// composition. Each composition contributes the same number of draws, so the
/// uniform prior is a plain count. `None` when the prefix is impossible.
pub fn brute_next_red(n: u64, prefix: &[Color]) -> Option<Rational> {
    let len = prefix.len() + 1;
    let (mut matching, mut matching_red) = (0u64, 0u64);
    for x in 0..=n {
        for_each_ordered_draw(n, x, len, &mut |draw| {
            if &draw[..prefix.len()] == prefix {
                matching += 1;
                if draw[prefix.len()] == Color::Red {
                    matching_red += 1;
                }
            }
        });
    }
    (matching > 0).then(|| Rational::new(matching_red, matching).unwrap())
}

/// Counts of ordered labelled draws by colour sequence, summed over every
/// composition `x ∈ {0..n}`, for all draw lengths `1..=max_len`.
pub struct DrawCensus {
    counts: std::collections::HashMap<Vec<Color>, u64>,
}

impl DrawCensus {
    pub fn new(n: u64, max_len: usize) -> Self {
        let mut counts = std::collections::HashMap::new();
        for len in 1..=max_len.min(n as usize) {
            for x in 0..=n {
                for_each_ordered_draw(n, x, len, &mut |draw| {
                    *counts.entry(draw.to_vec()).or_insert(0) += 1;
                });
            }
        }
        Self { counts }
    }

    /// Same quantity as [`brute_next_red`], read off the census.
    pub fn next_red(&self, prefix: &[Color]) -> Option<Rational> {
        let with = |c: Color| {
            let mut key = prefix.to_vec();
            key.push(c);
            self.counts.get(&key).copied().unwrap_or(0)
        };
        let (red, green) = (with(Color::Red), with(Color::Green));
        (red + green > 0).then(|| Rational::new(red, red + green).unwrap())
    }
}

/// Every colour sequence of length `0..=max_len`.
pub fn all_prefixes(max_len: usize) -> Vec<DrawSequence> {
    let mut out = vec![DrawSequence::empty()];
    let mut frontier = vec![DrawSequence::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for c in [Color::Red, Color::Green] {
                let mut q = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Probability the second draw is red in the index process, by enumerating every `(i, j, k)`.
pub fn brute_symmetry(n: u64) -> Rational {
    // Weight of (i, j, k) is 1/pairs · 1/(n-1); count in units of that weight.
    let (mut red, mut total) = (0u64, 0u64);
    for i in 0..=n {
        for j in i + 1..=n {
            for k in (1..=n).filter(|&k| k != j) {
                total += 1;
                if k > i {
                    red += 1;
                }
            }
        }
    }
    Rational::new(red, total).unwrap()
}
