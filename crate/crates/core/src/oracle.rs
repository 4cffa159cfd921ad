//! Exhaustive reference implementations.
//!
//! Nothing here uses the LCP index: occurrences are checked cell by cell and
//! candidate covers are enumerated directly, so the results can be used to
//! validate the fast solvers.

use crate::cover::{minimal_covering_set, Algorithm, CoverResult, Odometer};
use crate::error::{Error, Result};
use crate::istring::IString;
use crate::reduction::{CnfFormula, Tri};

/// Everything the oracle learns about a text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    /// Lexicographically smallest shortest cover.
    pub shortest: CoverResult,
    /// All shortest covers, in lexicographic order.
    pub shortest_witnesses: Vec<Vec<u8>>,
    /// Every `m` for which some length-`m` cover exists, ascending.
    pub all_lengths: Vec<usize>,
}

/// Positions `i` with `w ≈ T[i..i+|w|-1]`, by direct comparison.
pub fn naive_occurrences(w: &[u8], t: &IString) -> Vec<usize> {
    let (n, m) = (t.len(), w.len());
    if m == 0 || m > n {
        return Vec::new();
    }
    (1..=n + 1 - m)
        .filter(|&i| w.iter().enumerate().all(|(d, &c)| t.cell(i + d).contains(c)))
        .collect()
}

/// Whether the solid string `w` covers `T`.
pub fn is_cover(w: &[u8], t: &IString) -> bool {
    let mut covered = vec![false; t.len()];
    for i in naive_occurrences(w, t) {
        covered[i - 1..i - 1 + w.len()].fill(true);
    }
    !covered.is_empty() && covered.iter().all(|&c| c)
}

/// All covers of length `m`, in lexicographic order. Only completions of
/// `T[1..m]` are tried since a cover must occur at position 1.
pub fn covers_of_length(t: &IString, m: usize, budget: u128) -> Result<Vec<Vec<u8>>> {
    if m == 0 || m > t.len() {
        return Ok(Vec::new());
    }
    let odometer = Odometer::new((1..=m).map(|z| t.cell(z).iter().collect()).collect());
    if odometer.total > budget {
        return Err(Error::budget("candidate covers", odometer.total, budget));
    }
    let mut out = Vec::new();
    let mut w = Vec::with_capacity(m);
    for index in 0..odometer.total {
        odometer.nth(index, &mut w);
        if is_cover(&w, t) {
            out.push(w.clone());
        }
    }
    Ok(out)
}

/// Cover lengths `1..=max_len` that admit a cover, with the covers of the
/// smallest such length. The budget bounds the total number of candidates.
pub fn covers_upto(t: &IString, max_len: usize, budget: u128) -> Result<(Vec<usize>, Vec<Vec<u8>>)> {
    let max_len = max_len.min(t.len());
    let mut needed: u128 = 0;
    for m in 1..=max_len {
        let count = (1..=m).fold(1u128, |acc, z| acc.saturating_mul(u128::from(t.cell(z).count())));
        needed = needed.saturating_add(count);
    }
    if needed > budget {
        return Err(Error::budget("candidate covers", needed, budget));
    }
    let mut lengths = Vec::new();
    let mut first = Vec::new();
    for m in 1..=max_len {
        let covers = covers_of_length(t, m, budget)?;
        if !covers.is_empty() {
            if lengths.is_empty() {
                first = covers;
            }
            lengths.push(m);
        }
    }
    Ok((lengths, first))
}

/// Exhaustive shortest cover over every length.
pub fn brute_shortest_cover(t: &IString, budget: u128) -> Result<OracleReport> {
    if t.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (all_lengths, shortest_witnesses) = covers_upto(t, t.len(), budget)?;
    let witness = shortest_witnesses[0].clone();
    let covering_set = minimal_covering_set(t.len(), witness.len(), &naive_occurrences(&witness, t))
        .expect("enumerated cover");
    Ok(OracleReport {
        shortest: CoverResult {
            length: witness.len(),
            witness,
            covering_set,
            algorithm: Algorithm::Oracle,
        },
        shortest_witnesses,
        all_lengths,
    })
}

/// Every `V ∈ {0,1,◇}^p` that mismatches all words, in lexicographic order
/// with `0 < 1 < ◇`.
pub fn brute_universal_mismatch(words: &[Vec<Tri>], p: usize, budget: u128) -> Result<Vec<Vec<Tri>>> {
    if words.iter().any(|w| w.len() != p) {
        return Err(Error::InvalidArgument(format!(
            "every word must have length {p}"
        )));
    }
    let total = 3u128.checked_pow(p as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::budget("vectors in {0,1,◇}^p", total, budget));
    }
    let odometer = Odometer::new(vec![vec![0, 1, 2]; p]);
    let mut out = Vec::new();
    let mut digits = Vec::with_capacity(p);
    for index in 0..odometer.total {
        odometer.nth(index, &mut digits);
        let v: Vec<Tri> = digits.iter().map(|&d| Tri::from_digit(d)).collect();
        let matches_some = words
            .iter()
            .any(|w| w.iter().zip(&v).all(|(a, b)| a.matches(*b)));
        if !matches_some {
            out.push(v);
        }
    }
    Ok(out)
}

/// Satisfiability by truth table.
pub fn brute_sat(formula: &CnfFormula) -> Result<bool> {
    const MAX_VARS: usize = 24;
    let p = formula.vars();
    if p > MAX_VARS {
        return Err(Error::budget("truth assignments", 1u128 << p.min(127), 1 << MAX_VARS));
    }
    Ok((0u64..1 << p).any(|bits| {
        formula.clauses().iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = bits >> (lit.unsigned_abs() - 1) & 1 == 1;
                value == (lit > 0)
            })
        })
    }))
}
