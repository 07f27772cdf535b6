//! Euler-characteristic divisibility bounds on elementary abelian `p`-subgroups
//! of `Homeo(M)` and the triviality verdicts for actions of `SAut(F_n)` and
//! `SL_n(Z)` that follow from them.
//!
//! For a connected closed `r`-manifold with `χ ≠ 0` an elementary abelian
//! `p`-group of rank `k` can act effectively only if
//!
//! * `k ≤ ⌊r/2⌋ + v_p(χ)` for odd `p`,
//! * `k ≤ r + v_2(χ)` for `p = 2`,
//! * `k ≤ r - 1 + v_2(χ)` for `p = 2` acting orientation-preservingly.
//!
//! `χ = 0` gives no constraint.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::manifold::{double_cover, ChiDescriptor, ManifoldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("manifold is not connected")]
    Disconnected,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the orientation-preserving bound needs p = 2, got {0}")]
    OrientedOddPrime(u64),
    #[error("the orientation-preserving bound needs an orientable manifold")]
    NotOrientable,
    #[error("the orientation-preserving bound needs dimension at least 1")]
    ZeroDimensional,
    #[error("rank n = {0} is below 3")]
    RankTooSmall(u64),
    #[error("empty rank range")]
    EmptyRange,
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `p`-adic valuation by repeated exact division; `None` for zero.
pub fn valuation(value: i64, p: u64) -> Option<u32> {
    if value == 0 {
        return None;
    }
    let p = p as i128;
    let mut v = (value as i128).abs();
    let mut k = 0;
    while v % p == 0 {
        v /= p;
        k += 1;
    }
    Some(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActionMode {
    General,
    OrientationPreserving,
}

impl fmt::Display for ActionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionMode::General => "general",
            ActionMode::OrientationPreserving => "orientation-preserving",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Finite(u64),
    Unbounded,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(k) => write!(f, "{k}"),
            Bound::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// Upper bound on the `p`-rank of `Homeo(M)` (or `Homeo_+(M)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankBound {
    pub p: u64,
    pub bound: Bound,
    pub dim: u32,
    pub chi: i64,
    pub mode: ActionMode,
}

impl RankBound {
    /// Whether an elementary abelian `p`-group of rank `k` is compatible with the bound.
    pub fn admits(&self, k: u64) -> bool {
        match self.bound {
            Bound::Finite(b) => k <= b,
            Bound::Unbounded => true,
        }
    }
}

pub fn rank_bound(
    d: &ChiDescriptor,
    p: u64,
    mode: ActionMode,
) -> Result<RankBound, ObstructionError> {
    if !d.connected {
        return Err(ObstructionError::Disconnected);
    }
    if !is_prime(p) {
        return Err(ObstructionError::NotPrime(p));
    }
    let r = u64::from(d.dim);
    let base = match mode {
        ActionMode::OrientationPreserving => {
            if p != 2 {
                return Err(ObstructionError::OrientedOddPrime(p));
            }
            if !d.orientable {
                return Err(ObstructionError::NotOrientable);
            }
            if r == 0 {
                return Err(ObstructionError::ZeroDimensional);
            }
            r - 1
        }
        ActionMode::General if p == 2 => r,
        ActionMode::General => r / 2,
    };
    let bound = match valuation(d.chi, p) {
        Some(v) => Bound::Finite(base + u64::from(v)),
        None => Bound::Unbounded,
    };
    Ok(RankBound {
        p,
        bound,
        dim: d.dim,
        chi: d.chi,
        mode,
    })
}

/// Hypothesis sets under which every action is forced to be trivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Rule {
    /// `n > r + 1`, `M` orientable, `χ ≢ 0 mod 6`.
    R1,
    /// `n > r + 1`, `M` non-orientable, `χ ≢ 0 mod 3`.
    R2,
    /// `n = 2k + 1`, `M` orientable, `χ ≢ 0 mod 12`, `2k > r`.
    R3,
    /// `n = 2k + 1`, `M` orientable, `χ` odd, `2k ≥ r`.
    R4,
}

impl Rule {
    pub fn describe(self) -> &'static str {
        match self {
            Rule::R1 => "n>r+1, orientable, chi!=0 mod 6",
            Rule::R2 => "n>r+1, non-orientable, chi!=0 mod 3",
            Rule::R3 => "n=2k+1, orientable, chi!=0 mod 12, 2k>r",
            Rule::R4 => "n=2k+1, orientable, chi!=0 mod 2, 2k>=r",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    /// Every action by homeomorphisms is trivial.
    ForcedTrivial,
    /// No rule applies. This says nothing about whether a nontrivial action exists.
    NoConclusion,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Whether the odd-rank refinements `R3`/`R4` are consulted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OddRankRules {
    #[default]
    Strict,
    Off,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub n: u64,
    pub conclusion: Conclusion,
    /// The reported rule; the first of `R3, R4, R1, R2` that fired.
    pub rule: Option<Rule>,
    /// Every rule whose hypotheses hold, in `R1..R4` order.
    pub fired: Vec<Rule>,
    pub descriptor: ChiDescriptor,
    /// The orientable double cover, consulted for non-orientable inputs.
    pub double_cover: Option<ChiDescriptor>,
    /// Actions of `SL_n(Z)` lift to `SAut(F_n)`, so the conclusion carries over.
    pub sl_n_z: Conclusion,
}

impl Verdict {
    pub fn is_forced_trivial(&self) -> bool {
        self.conclusion == Conclusion::ForcedTrivial
    }
}

const REPORT_ORDER: [Rule; 4] = [Rule::R3, Rule::R4, Rule::R1, Rule::R2];

pub fn saut_verdict(
    d: &ChiDescriptor,
    n: u64,
    odd_rules: OddRankRules,
) -> Result<Verdict, ObstructionError> {
    if n < 3 {
        return Err(ObstructionError::RankTooSmall(n));
    }
    if !d.connected {
        return Err(ObstructionError::Disconnected);
    }
    let r = u64::from(d.dim);
    let chi = d.chi;
    let above_dim = n > r + 1;
    let mut fired = Vec::new();

    let cover = if d.orientable {
        None
    } else {
        Some(double_cover(d)?)
    };

    if above_dim && d.orientable && chi % 6 != 0 {
        fired.push(Rule::R1);
    }
    if let Some(cover) = &cover {
        // Lifting to the orientable double cover: χ(M̄) = 2χ(M) is
        // nonzero mod 6 exactly when χ(M) is nonzero mod 3.
        debug_assert_eq!(chi % 3 != 0, cover.chi % 6 != 0);
        if above_dim && cover.chi % 6 != 0 {
            fired.push(Rule::R2);
        }
    }
    if odd_rules == OddRankRules::Strict && n % 2 == 1 && d.orientable {
        let two_k = n - 1;
        if chi % 12 != 0 && two_k > r {
            fired.push(Rule::R3);
        }
        if chi % 2 != 0 && two_k >= r {
            fired.push(Rule::R4);
        }
    }

    let rule = REPORT_ORDER.into_iter().find(|r| fired.contains(r));
    let conclusion = if rule.is_some() {
        Conclusion::ForcedTrivial
    } else {
        Conclusion::NoConclusion
    };
    Ok(Verdict {
        n,
        conclusion,
        rule,
        fired,
        descriptor: *d,
        double_cover: cover,
        sl_n_z: conclusion,
    })
}

/// One verdict per `n` in `ns`, in order.
pub fn verdict_table(
    d: &ChiDescriptor,
    ns: std::ops::RangeInclusive<u64>,
    odd_rules: OddRankRules,
) -> Result<Vec<Verdict>, ObstructionError> {
    if ns.is_empty() {
        return Err(ObstructionError::EmptyRange);
    }
    ns.map(|n| saut_verdict(d, n, odd_rules)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::ManifoldExpr;

    fn desc(s: &str) -> ChiDescriptor {
        ManifoldExpr::parse(s).unwrap().evaluate().unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(12, 2), Some(2));
        assert_eq!(valuation(-18, 3), Some(2));
        assert_eq!(valuation(7, 5), Some(0));
        assert_eq!(valuation(0, 3), None);
        assert_eq!(valuation(i64::MIN, 2), Some(63));
    }

    #[test]
    fn rank_bound_examples() {
        let s2 = desc("S(2)");
        assert_eq!(
            rank_bound(&s2, 3, ActionMode::General).unwrap().bound,
            Bound::Finite(1)
        );
        assert_eq!(
            rank_bound(&s2, 2, ActionMode::OrientationPreserving)
                .unwrap()
                .bound,
            Bound::Finite(2)
        );
        assert_eq!(
            rank_bound(&s2, 2, ActionMode::General).unwrap().bound,
            Bound::Finite(3)
        );
        assert_eq!(
            rank_bound(&desc("T(2)"), 5, ActionMode::General)
                .unwrap()
                .bound,
            Bound::Unbounded
        );
    }

    #[test]
    fn rank_bound_errors() {
        let s2 = desc("S(2)");
        assert_eq!(
            rank_bound(&s2, 4, ActionMode::General),
            Err(ObstructionError::NotPrime(4))
        );
        assert_eq!(
            rank_bound(&s2, 3, ActionMode::OrientationPreserving),
            Err(ObstructionError::OrientedOddPrime(3))
        );
        assert_eq!(
            rank_bound(&desc("N(1)"), 2, ActionMode::OrientationPreserving),
            Err(ObstructionError::NotOrientable)
        );
        assert_eq!(
            rank_bound(&desc("S(2)+S(2)"), 2, ActionMode::General),
            Err(ObstructionError::Disconnected)
        );
    }

    #[test]
    fn verdict_examples() {
        let s2 = desc("S(2)");
        let v = saut_verdict(&s2, 4, OddRankRules::Strict).unwrap();
        assert_eq!(
            (v.conclusion, v.rule),
            (Conclusion::ForcedTrivial, Some(Rule::R1))
        );
        let v = saut_verdict(&s2, 3, OddRankRules::Strict).unwrap();
        assert_eq!((v.conclusion, v.rule), (Conclusion::NoConclusion, None));
        let v = saut_verdict(&desc("Sigma(0)*Sigma(2)"), 6, OddRankRules::Strict).unwrap();
        assert_eq!(v.rule, Some(Rule::R1));
        let v = saut_verdict(&s2, 5, OddRankRules::Strict).unwrap();
        assert_eq!(v.rule, Some(Rule::R3));
        assert_eq!(v.fired, vec![Rule::R1, Rule::R3]);
        let v = saut_verdict(&desc("T(2)"), 10, OddRankRules::Strict).unwrap();
        assert_eq!(v.conclusion, Conclusion::NoConclusion);
    }

    #[test]
    fn odd_rank_rules_can_be_disabled() {
        let v = saut_verdict(&desc("S(2)"), 5, OddRankRules::Off).unwrap();
        assert_eq!(v.rule, Some(Rule::R1));
        // chi = 3 in dimension 4: only R4 applies at n = 5.
        let d = desc("chi(4,3,o)");
        assert_eq!(
            saut_verdict(&d, 5, OddRankRules::Strict).unwrap().rule,
            Some(Rule::R4)
        );
        assert_eq!(
            saut_verdict(&d, 5, OddRankRules::Off).unwrap().conclusion,
            Conclusion::NoConclusion
        );
    }

    #[test]
    fn non_orientable_uses_double_cover() {
        let v = saut_verdict(&desc("N(1)"), 5, OddRankRules::Strict).unwrap();
        assert_eq!(v.rule, Some(Rule::R2));
        assert_eq!(v.double_cover, Some(desc("S(2)")));
        // chi(N(3)) = -1, still nonzero mod 3.
        assert!(saut_verdict(&desc("N(3)"), 4, OddRankRules::Strict)
            .unwrap()
            .is_forced_trivial());
        // chi(N(2)) = 0.
        assert!(!saut_verdict(&desc("N(2)"), 9, OddRankRules::Strict)
            .unwrap()
            .is_forced_trivial());
    }

    #[test]
    fn verdict_errors() {
        assert_eq!(
            saut_verdict(&desc("S(2)"), 2, OddRankRules::Strict),
            Err(ObstructionError::RankTooSmall(2))
        );
        assert_eq!(
            saut_verdict(&desc("S(2)+S(2)"), 5, OddRankRules::Strict),
            Err(ObstructionError::Disconnected)
        );
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 6..=3;
        assert_eq!(
            verdict_table(&desc("S(2)"), empty, OddRankRules::Strict),
            Err(ObstructionError::EmptyRange)
        );
    }

    #[test]
    fn verdict_table_examples() {
        let conclusions = |d: &str, ns| -> Vec<Conclusion> {
            verdict_table(&desc(d), ns, OddRankRules::Strict)
                .unwrap()
                .into_iter()
                .map(|v| v.conclusion)
                .collect()
        };
        use Conclusion::*;
        assert_eq!(
            conclusions("S(2)", 3..=6),
            [NoConclusion, ForcedTrivial, ForcedTrivial, ForcedTrivial]
        );
        assert!(conclusions("T(4)", 3..=8)
            .iter()
            .all(|c| *c == NoConclusion));
        assert_eq!(conclusions("N(1)", 5..=5), [ForcedTrivial]);
    }
}
