//! Branching types: sorted integer tuples [m₁,…,m_r] with their orbifold
//! canonical degree Θ = −2 + Σ(1 − 1/mᵢ), and the two admissible families.
//!
//! The admissibility conditions are integrality tests on α = 2/Θ and β = 4/Θ,
//! so everything here runs in exact rational arithmetic; a float would round
//! exactly the values the conditions hinge on.

use num_rational::Ratio;
use std::fmt;

pub type Rational = Ratio<i64>;

/// A sorted branching type with its derived invariants.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TupleType {
    entries: Vec<u16>,
}

impl TupleType {
    /// Builds a type from entries in any order; they are stored sorted.
    /// Returns `None` if fewer than 3 entries or any entry < 2.
    pub fn new(mut entries: Vec<u16>) -> Option<Self> {
        if entries.len() < 3 || entries.iter().any(|&m| m < 2) {
            return None;
        }
        entries.sort_unstable();
        Some(TupleType { entries })
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn theta(&self) -> Rational {
        theta(&self.entries)
    }

    /// α = 2/Θ, defined when Θ > 0.
    pub fn alpha(&self) -> Option<Rational> {
        let t = self.theta();
        (t > Ratio::from_integer(0)).then(|| Ratio::from_integer(2) / t)
    }

    /// β = 4/Θ, defined when Θ > 0.
    pub fn beta(&self) -> Option<Rational> {
        let t = self.theta();
        (t > Ratio::from_integer(0)).then(|| Ratio::from_integer(4) / t)
    }

    pub fn in_n(&self) -> bool {
        in_n(&self.entries)
    }

    pub fn in_m(&self) -> bool {
        in_m(&self.entries)
    }

    /// Parses `"2,5,5"` or `"[2,5,5]"`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let entries: Option<Vec<u16>> = s.split(',').map(|t| t.trim().parse().ok()).collect();
        TupleType::new(entries?)
    }
}

impl fmt::Display for TupleType {
    /// `[m1,...,mr]_a` with the α subscript when defined (β for types only in
    /// the mixed family is printed by the caller).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

/// Θ([m₁,…,m_r]) = −2 + Σ (1 − 1/mᵢ), exact.
pub fn theta(entries: &[u16]) -> Rational {
    let mut t = Ratio::from_integer(-2);
    for &m in entries {
        t += Ratio::from_integer(1) - Ratio::new(1, i64::from(m));
    }
    t
}

fn positive_integer_quotient(num: i64, t: Rational) -> Option<i64> {
    if t <= Ratio::from_integer(0) {
        return None;
    }
    let q = Ratio::from_integer(num) / t;
    q.is_integer().then(|| q.to_integer())
}

/// α as a positive integer, when the type qualifies for the unmixed family.
pub fn integral_alpha(entries: &[u16]) -> Option<i64> {
    positive_integer_quotient(2, theta(entries))
}

/// β as a positive integer, when the type qualifies for the mixed family.
pub fn integral_beta(entries: &[u16]) -> Option<i64> {
    positive_integer_quotient(4, theta(entries))
}

fn sorted_ge2(entries: &[u16]) -> bool {
    entries.len() >= 3
        && entries.windows(2).all(|w| w[0] <= w[1])
        && entries.first().is_some_and(|&m| m >= 2)
}

/// Membership in the unmixed family: sorted entries ≥ 2, Θ > 0, α = 2/Θ a
/// positive integer, and m_r ≤ α.
pub fn in_n(entries: &[u16]) -> bool {
    if !sorted_ge2(entries) {
        return false;
    }
    match integral_alpha(entries) {
        Some(alpha) => i64::from(*entries.last().unwrap()) <= alpha,
        None => false,
    }
}

/// Membership in the mixed family: sorted entries ≥ 2, Θ > 0, β = 4/Θ a
/// positive integer, m_r ≤ β, β even, and β²/2 divisible by every mᵢ.
/// (The divisibility ranges over all r indices.)
pub fn in_m(entries: &[u16]) -> bool {
    if !sorted_ge2(entries) {
        return false;
    }
    let Some(beta) = integral_beta(entries) else {
        return false;
    };
    if i64::from(*entries.last().unwrap()) > beta || beta % 2 != 0 {
        return false;
    }
    let half_beta_sq = beta * beta / 2;
    entries.iter().all(|&m| half_beta_sq % i64::from(m) == 0)
}

/// Largest entry ever examined by the enumerations. Completeness is certified
/// by the bound-stability test (the lists at bound 200 and 400 coincide)
/// rather than by an inequality chain.
pub const ENTRY_SEARCH_BOUND: u16 = 200;

fn enumerate_with(r: usize, bound: u16, pred: fn(&[u16]) -> bool, slack_num: i64) -> Vec<TupleType> {
    // Recursive generation of nondecreasing tuples. The family condition
    // m_r ≤ slack_num/Θ forces Σ(1 − 1/mᵢ) ≤ 2 + slack_num/m_r; with all
    // remaining entries ≥ m the left side only grows and the right side only
    // shrinks as m does, so the first violating m cuts the whole branch.
    fn recurse(
        r: usize,
        bound: u16,
        pred: fn(&[u16]) -> bool,
        slack_num: i64,
        partial: &mut Vec<u16>,
        sum: Rational,
        out: &mut Vec<TupleType>,
    ) {
        if partial.len() == r {
            if pred(partial) {
                out.push(TupleType::new(partial.clone()).unwrap());
            }
            return;
        }
        let lo = partial.last().copied().unwrap_or(2);
        let remaining = (r - partial.len()) as i64;
        for m in lo..=bound {
            let term = Ratio::from_integer(1) - Ratio::new(1, i64::from(m));
            let ceiling = Ratio::from_integer(2) + Ratio::new(slack_num, i64::from(m));
            if sum + term * Ratio::from_integer(remaining) > ceiling {
                break;
            }
            partial.push(m);
            recurse(r, bound, pred, slack_num, partial, sum + term, out);
            partial.pop();
        }
    }
    let mut out = Vec::new();
    recurse(r, bound, pred, slack_num, &mut Vec::new(), Ratio::from_integer(0), &mut out);
    out.sort();
    out
}

/// The complete unmixed-family list for length r, sorted lexicographically.
pub fn enumerate_n(r: usize) -> Vec<TupleType> {
    enumerate_n_bounded(r, ENTRY_SEARCH_BOUND)
}

/// The complete mixed-family list for length r, sorted lexicographically.
pub fn enumerate_m(r: usize) -> Vec<TupleType> {
    enumerate_m_bounded(r, ENTRY_SEARCH_BOUND)
}

pub fn enumerate_n_bounded(r: usize, bound: u16) -> Vec<TupleType> {
    enumerate_with(r, bound, in_n, 2)
}

pub fn enumerate_m_bounded(r: usize, bound: u16) -> Vec<TupleType> {
    enumerate_with(r, bound, in_m, 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_values() {
        assert_eq!(theta(&[2, 3, 7]), Ratio::new(1, 42));
        assert_eq!(theta(&[2, 2, 2, 2]), Ratio::from_integer(0));
        assert_eq!(theta(&[4, 4, 4]), Ratio::new(1, 4));
    }

    #[test]
    fn family_membership() {
        assert!(in_n(&[2, 3, 7]));
        assert!(!in_n(&[2, 2, 3])); // Θ = −1/3
        assert!(in_m(&[2, 3, 30]));
        assert!(!in_m(&[2, 2, 2, 2])); // Θ = 0
    }

    #[test]
    fn mixed_membership_details() {
        // [2,3,7]: β = 168 even, 168²/2 divisible by 2, 3, 7 → admissible
        assert!(in_m(&[2, 3, 7]));
        // [3,3,3,6]: β = 24/5 not integral
        assert!(!in_m(&[3, 3, 3, 6]));
        // [5,5,5]: β = 10, β²/2 = 50 divisible by 5 → admissible
        assert!(in_m(&[5, 5, 5]));
        // [2,4,20]: β = 20, 200 divisible by 2, 4, 20 → admissible
        assert!(in_m(&[2, 4, 20]));
    }

    #[test]
    fn unsorted_input_rejected_by_predicates() {
        assert!(!in_n(&[3, 2, 7]));
        assert!(!in_m(&[4, 2, 8]));
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_n(3).len(), 28);
        assert_eq!(enumerate_n(4).len(), 7);
        assert_eq!(enumerate_n(5).len(), 2);
        assert_eq!(enumerate_n(6).len(), 1);
        assert_eq!(enumerate_n(7).len(), 0);
        assert_eq!(enumerate_m(3).len(), 32);
        assert_eq!(enumerate_m(4).len(), 10);
        assert_eq!(enumerate_m(5).len(), 3);
        assert_eq!(enumerate_m(6).len(), 1);
        assert_eq!(enumerate_m(7).len(), 0);
        assert_eq!(enumerate_m(8).len(), 1);
    }

    #[test]
    fn enumeration_is_bound_stable() {
        for r in 3..=8 {
            assert_eq!(enumerate_n_bounded(r, 200), enumerate_n_bounded(r, 400));
            assert_eq!(enumerate_m_bounded(r, 200), enumerate_m_bounded(r, 400));
        }
    }

    #[test]
    fn enumerated_tuples_recheck() {
        for r in 3..=6 {
            for t in enumerate_n(r) {
                assert!(t.in_n());
                let alpha = integral_alpha(t.entries()).unwrap();
                assert!(alpha > 0);
                assert!(i64::from(*t.entries().last().unwrap()) <= alpha);
            }
            for t in enumerate_m(r) {
                assert!(t.in_m());
                let beta = integral_beta(t.entries()).unwrap();
                assert!(beta > 0 && beta % 2 == 0);
            }
        }
    }
}
