//! Classification of 1-factorisations by the cycle types of factor pairs.
//!
//! For an `r`-regular graph there are `r(r-1)/2` unordered factor pairs. A
//! factorisation is `m`-balanced when exactly `m` distinct pair types occur
//! and each occurs equally often; `m` is always derived from the profile,
//! never supplied by the caller. The uniform case is `m = 1`, and a uniform
//! factorisation whose single type is one Hamilton cycle is perfect.

use crate::graph::{cycle_type, CycleType, FactorisationError, OneFactorisation};

/// Pair types keyed by the factor-index pair `(i, j)` with `i < j`.
pub type KeyedPairTypes = Vec<((usize, usize), CycleType)>;

/// Cycle type of every unordered factor pair, keyed by `(i, j)` with `i < j`
/// in ascending lexicographic order.
pub fn pair_types(of: &OneFactorisation) -> Result<KeyedPairTypes, FactorisationError> {
    let mut out = Vec::new();
    for i in 0..of.len() {
        for j in (i + 1)..of.len() {
            out.push(((i, j), cycle_type(of.factor(i), of.factor(j))?));
        }
    }
    Ok(out)
}

/// Multiset of pair types: each distinct type with its multiplicity, ordered
/// by descending type.
pub fn pair_profile(of: &OneFactorisation) -> Result<Vec<(CycleType, usize)>, FactorisationError> {
    let mut profile: Vec<(CycleType, usize)> = Vec::new();
    for (_, t) in pair_types(of)? {
        match profile.iter_mut().find(|(p, _)| *p == t) {
            Some((_, count)) => *count += 1,
            None => profile.push((t, 1)),
        }
    }
    profile.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(profile)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BalanceVerdict {
    /// Exactly `m` distinct pair types, each with equal multiplicity.
    MBalanced(usize),
    /// Some type occurs more often than another.
    Unbalanced,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BalanceReport {
    /// Type of every factor pair in `(i, j)` order.
    pub pair_types: KeyedPairTypes,
    /// Distinct types with multiplicities, descending by type.
    pub profile: Vec<(CycleType, usize)>,
    pub verdict: BalanceVerdict,
    /// `MBalanced(1)`.
    pub is_uniform: bool,
    /// Uniform with the single type one Hamilton cycle.
    pub is_perfect: bool,
}

impl BalanceReport {
    pub fn balance(&self) -> Option<usize> {
        match self.verdict {
            BalanceVerdict::MBalanced(m) => Some(m),
            BalanceVerdict::Unbalanced => None,
        }
    }
}

/// Computes the full balance report of a factorisation.
pub fn classify_balance(of: &OneFactorisation) -> Result<BalanceReport, FactorisationError> {
    let pair_types = pair_types(of)?;
    let profile = pair_profile(of)?;
    let counts: Vec<usize> = profile.iter().map(|&(_, c)| c).collect();
    let balanced = !counts.is_empty() && counts.iter().all(|&c| c == counts[0]);
    let verdict = if balanced {
        BalanceVerdict::MBalanced(profile.len())
    } else {
        BalanceVerdict::Unbalanced
    };
    let is_uniform = verdict == BalanceVerdict::MBalanced(1);
    let is_perfect = is_uniform && profile[0].0 == CycleType::new(vec![of.order()]);
    Ok(BalanceReport {
        pair_types,
        profile,
        verdict,
        is_uniform,
        is_perfect,
    })
}
