//! The mathematical surface: instance classification and the dispatcher
//! over the published exact values and bounds for star-versus-path
//! multicolor Ramsey numbers.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("at least one star target is required")]
    NoStars,
    #[error("star sizes must be at least 2 (got {0})")]
    StarTooSmall(usize),
    #[error("path order must be at least 2 (got {0})")]
    PathTooSmall(usize),
}

/// The target tuple `(K_{1,n_1}, ..., K_{1,n_c}; P_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarPathInstance {
    stars: Vec<usize>,
    m: usize,
}

impl StarPathInstance {
    pub fn new(stars: Vec<usize>, m: usize) -> Result<StarPathInstance, InstanceError> {
        if stars.is_empty() {
            return Err(InstanceError::NoStars);
        }
        if let Some(&bad) = stars.iter().find(|&&s| s < 2) {
            return Err(InstanceError::StarTooSmall(bad));
        }
        if m < 2 {
            return Err(InstanceError::PathTooSmall(m));
        }
        Ok(StarPathInstance { stars, m })
    }

    pub fn stars(&self) -> &[usize] {
        &self.stars
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_stars(&self) -> usize {
        self.stars.len()
    }

    /// `Sigma`: the total degree budget of the star colors.
    pub fn sigma(&self) -> usize {
        self.stars.iter().map(|&n| n - 1).sum()
    }
}

impl fmt::Display for StarPathInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stars: Vec<String> = self.stars.iter().map(|s| s.to_string()).collect();
        write!(f, "stars={} m={}", stars.join(","), self.m)
    }
}

/// Derived quantities of an instance: the residue `k` of `Sigma` modulo
/// `m-1` with quotient `s`, the quotient `t` of `Sigma` by `m-2` when it
/// divides evenly, and the parity facts the clause hypotheses consult.
/// `k` and `s` are only defined for `m >= 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceProfile {
    pub sigma: usize,
    pub k: Option<usize>,
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub m_plus_sigma_even: bool,
    pub all_stars_odd: bool,
}

/// All derived quantities of `inst`.
pub fn classify(inst: &StarPathInstance) -> InstanceProfile {
    let sigma = inst.sigma();
    let m = inst.m();
    let (k, s) = if m >= 3 {
        let k = sigma % (m - 1);
        (Some(k), Some((sigma - k) / (m - 1)))
    } else {
        (None, None)
    };
    let t = if m >= 3 && sigma % (m - 2).max(1) == 0 {
        Some(sigma / (m - 2).max(1))
    } else {
        None
    };
    InstanceProfile {
        sigma,
        k,
        s,
        t,
        m_plus_sigma_even: (m + sigma) % 2 == 0,
        all_stars_odd: inst.stars().iter().all(|&n| n % 2 == 1),
    }
}

/// Identifier of a published clause applied by the dispatcher.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Clause {
    /// Stars-only value (used for the degenerate `m = 2` case).
    StarsOnly,
    /// Upper bound `Sigma + m`, exact when `Sigma ≡ 0 (mod m-1)` and
    /// `m + Sigma` is odd.
    B,
    /// Exact `max(m, 2*Sigma + 1)` when `m >= Sigma + 1`.
    C1,
    /// Exact value when `Sigma ≡ 0 (mod m-1)` and `m + Sigma` is even.
    C2,
    /// Upper bound `Sigma + m - 1`, exact when `Sigma ≡ 1 (mod m-1)`.
    C3,
    /// Lower bound `Sigma + k - 2`.
    C4,
    T1_1,
    T1_2,
    T1_3,
    T1_4,
    /// Witness found by exhaustive search rather than a construction.
    Search,
}

impl Clause {
    pub fn id(&self) -> &'static str {
        match self {
            Clause::StarsOnly => "stars-only",
            Clause::B => "b",
            Clause::C1 => "c1",
            Clause::C2 => "c2",
            Clause::C3 => "c3",
            Clause::C4 => "c4",
            Clause::T1_1 => "T1.1",
            Clause::T1_2 => "T1.2",
            Clause::T1_3 => "T1.3",
            Clause::T1_4 => "T1.4",
            Clause::Search => "search",
        }
    }

    pub fn from_id(id: &str) -> Option<Clause> {
        match id {
            "stars-only" => Some(Clause::StarsOnly),
            "b" => Some(Clause::B),
            "c1" => Some(Clause::C1),
            "c2" => Some(Clause::C2),
            "c3" => Some(Clause::C3),
            "c4" => Some(Clause::C4),
            "T1.1" => Some(Clause::T1_1),
            "T1.2" => Some(Clause::T1_2),
            "T1.3" => Some(Clause::T1_3),
            "T1.4" => Some(Clause::T1_4),
            "search" => Some(Clause::Search),
            _ => None,
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// An exact value or a lower/upper bound pair. A missing upper bound means
/// the search side gave up within budget without deciding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueOrBounds {
    Exact(usize),
    Bounds { lower: usize, upper: Option<usize> },
}

impl ValueOrBounds {
    pub fn exact(&self) -> Option<usize> {
        match self {
            ValueOrBounds::Exact(v) => Some(*v),
            ValueOrBounds::Bounds { .. } => None,
        }
    }

    pub fn lower(&self) -> usize {
        match self {
            ValueOrBounds::Exact(v) => *v,
            ValueOrBounds::Bounds { lower, .. } => *lower,
        }
    }

    pub fn upper(&self) -> Option<usize> {
        match self {
            ValueOrBounds::Exact(v) => Some(*v),
            ValueOrBounds::Bounds { upper, .. } => *upper,
        }
    }
}

impl fmt::Display for ValueOrBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueOrBounds::Exact(v) => write!(f, "exact {v}"),
            ValueOrBounds::Bounds {
                lower,
                upper: Some(u),
            } => write!(f, "bounds [{lower},{u}]"),
            ValueOrBounds::Bounds { lower, upper: None } => write!(f, "bounds [{lower},?]"),
        }
    }
}

/// Dispatcher output: the value or bounds together with every applicable
/// clause and the instance profile the hypotheses were evaluated on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub result: ValueOrBounds,
    pub clauses: Vec<Clause>,
    pub profile: InstanceProfile,
}

/// Stars-only multicolor Ramsey number `R(K_{1,n_1},...,K_{1,n_c})`:
/// `Sigma + 1` when `Sigma` is even and some `n_i` is even, else
/// `Sigma + 2`. Backed by brute force at small orders in the test suite.
pub fn stars_only_value(star_sizes: &[usize]) -> usize {
    let sigma: usize = star_sizes.iter().map(|&n| n - 1).sum();
    let some_even = star_sizes.iter().any(|&n| n % 2 == 0);
    if sigma % 2 == 0 && some_even {
        sigma + 1
    } else {
        sigma + 2
    }
}

/// Applies every published clause whose hypotheses hold and returns the
/// most specific result: an exact value if any exact clause fires (all
/// firing exact clauses agree), otherwise the best published bounds.
pub fn predicted_value(inst: &StarPathInstance) -> Prediction {
    let profile = classify(inst);
    let sigma = profile.sigma;
    let m = inst.m();

    if m == 2 {
        // P_2 is a single edge: the path color must stay empty, so the
        // value degenerates to the stars-only Ramsey number.
        return Prediction {
            result: ValueOrBounds::Exact(stars_only_value(inst.stars())),
            clauses: vec![Clause::StarsOnly],
            profile,
        };
    }

    let k = profile.k.expect("m >= 3");
    let s = profile.s.expect("m >= 3");
    let mut exacts: Vec<(Clause, usize)> = Vec::new();

    if m >= sigma + 1 {
        exacts.push((Clause::C1, m.max(2 * sigma + 1)));
    }
    if k == 0 && !profile.m_plus_sigma_even {
        exacts.push((Clause::B, sigma + m));
    }
    if m <= sigma {
        if k == 0 && profile.m_plus_sigma_even {
            let v = if profile.all_stars_odd {
                sigma + m
            } else {
                sigma + m - 1
            };
            exacts.push((Clause::C2, v));
        }
        if k == 1 {
            exacts.push((Clause::C3, sigma + m - 1));
        }
        if k >= 2 {
            if s + k >= m - 2 && profile.m_plus_sigma_even {
                exacts.push((Clause::T1_1, sigma + m - 1));
            }
            if sigma % (m - 2) == 0 && !profile.m_plus_sigma_even {
                if profile.all_stars_odd {
                    exacts.push((Clause::T1_2, sigma + m - 1));
                } else if sigma < (m - 2) * (m - 2) {
                    exacts.push((Clause::T1_3, sigma + m - 2));
                }
            }
        }
    }

    if !exacts.is_empty() {
        let value = exacts[0].1;
        debug_assert!(
            exacts.iter().all(|&(_, v)| v == value),
            "applicable exact clauses disagree on {inst}: {exacts:?}"
        );
        return Prediction {
            result: ValueOrBounds::Exact(value),
            clauses: exacts.into_iter().map(|(c, _)| c).collect(),
            profile,
        };
    }

    // No exact clause: only reachable with m <= Sigma and 2 <= k <= m-2.
    debug_assert!(m <= sigma && (2..=m - 2).contains(&k));
    let mut clauses = vec![Clause::T1_4];
    let mut lower = sigma + (s + k).min(m - 2);
    let c4_lower = sigma + k - 2;
    if c4_lower > lower {
        lower = c4_lower;
    }
    clauses.push(Clause::C4);
    let upper = if sigma % (m - 1) != 0 {
        clauses.push(Clause::C3);
        sigma + m - 1
    } else {
        clauses.push(Clause::B);
        sigma + m
    };
    debug_assert!(lower <= upper);
    Prediction {
        result: ValueOrBounds::Bounds {
            lower,
            upper: Some(upper),
        },
        clauses,
        profile,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(stars: &[usize], m: usize) -> StarPathInstance {
        StarPathInstance::new(stars.to_vec(), m).unwrap()
    }

    #[test]
    fn classify_examples() {
        let p = classify(&inst(&[4, 5], 5));
        assert_eq!(p.sigma, 7);
        assert_eq!(p.k, Some(3));
        assert_eq!(p.s, Some(1));
        assert_eq!(p.t, None); // 7 mod 3 != 0
        assert!(p.m_plus_sigma_even);
        assert!(!p.all_stars_odd);

        let p = classify(&inst(&[7], 5));
        assert_eq!(p.sigma, 6);
        assert_eq!(p.k, Some(2));
        assert_eq!(p.s, Some(1));
        assert_eq!(p.t, Some(2));
        assert!(!p.m_plus_sigma_even);
        assert!(p.all_stars_odd);

        let p = classify(&inst(&[2], 4));
        assert_eq!(p.sigma, 1);
        assert_eq!(p.k, Some(1));
        assert_eq!(p.s, Some(0));
    }

    #[test]
    fn invariant_sigma_decomposition() {
        for sigma_stars in [vec![4, 5], vec![7], vec![2, 6], vec![9], vec![3, 3, 3]] {
            for m in 3..=9 {
                let i = inst(&sigma_stars, m);
                let p = classify(&i);
                let (k, s) = (p.k.unwrap(), p.s.unwrap());
                assert_eq!(p.sigma, s * (m - 1) + k);
                assert!(k <= m - 2);
            }
        }
    }

    #[test]
    fn dispatcher_paper_values() {
        // (2; m=4): c1 regime
        let p = predicted_value(&inst(&[2], 4));
        assert_eq!(p.result, ValueOrBounds::Exact(4));
        assert!(p.clauses.contains(&Clause::C1));

        // (4,5; m=5): T1.1
        let p = predicted_value(&inst(&[4, 5], 5));
        assert_eq!(p.result, ValueOrBounds::Exact(11));
        assert!(p.clauses.contains(&Clause::T1_1));

        // (7; m=5): T1.2
        let p = predicted_value(&inst(&[7], 5));
        assert_eq!(p.result, ValueOrBounds::Exact(10));
        assert!(p.clauses.contains(&Clause::T1_2));

        // (2,6; m=5): T1.3
        let p = predicted_value(&inst(&[2, 6], 5));
        assert_eq!(p.result, ValueOrBounds::Exact(9));
        assert!(p.clauses.contains(&Clause::T1_3));

        // (3,3; m=3): clause b
        let p = predicted_value(&inst(&[3, 3], 3));
        assert_eq!(p.result, ValueOrBounds::Exact(7));
        assert!(p.clauses.contains(&Clause::B));
    }

    #[test]
    fn dispatcher_bounds_case() {
        // (9; m=7): Sigma=8, k=2, s=1, s+k=3 < 5; lower from the new
        // lower-bound clause, upper from c3.
        let p = predicted_value(&inst(&[9], 7));
        assert_eq!(
            p.result,
            ValueOrBounds::Bounds {
                lower: 11,
                upper: Some(14)
            }
        );
        assert!(p.clauses.contains(&Clause::T1_4));
        assert!(p.clauses.contains(&Clause::C3));
    }

    #[test]
    fn stars_only_examples() {
        assert_eq!(stars_only_value(&[2, 2]), 3);
        assert_eq!(stars_only_value(&[3, 3]), 6);
        assert_eq!(stars_only_value(&[2]), 3);
        assert_eq!(stars_only_value(&[2, 3]), 5);
        assert_eq!(stars_only_value(&[4]), 5);
    }

    #[test]
    fn degenerate_m2_uses_stars_only() {
        let p = predicted_value(&inst(&[3, 3], 2));
        assert_eq!(p.result, ValueOrBounds::Exact(6));
        assert_eq!(p.clauses, vec![Clause::StarsOnly]);
    }

    #[test]
    fn dispatcher_consistency_sweep() {
        // wherever two exact clauses both apply they must agree, and lower
        // <= upper must hold everywhere (debug asserts fire inside)
        for c in 1..=3usize {
            for m in 2..=7usize {
                sweep_stars(c, m, &mut Vec::new());
            }
        }

        fn sweep_stars(c: usize, m: usize, acc: &mut Vec<usize>) {
            if acc.len() == c {
                let sigma: usize = acc.iter().map(|&n| n - 1).sum();
                if sigma > 10 {
                    return;
                }
                let i = StarPathInstance::new(acc.clone(), m).unwrap();
                let p = predicted_value(&i);
                if let ValueOrBounds::Bounds { lower, upper } = &p.result {
                    assert!(upper.map(|u| *lower <= u).unwrap_or(true));
                }
                return;
            }
            let start = acc.last().copied().unwrap_or(2);
            for n in start..=11 {
                acc.push(n);
                sweep_stars(c, m, acc);
                acc.pop();
            }
        }
    }

    #[test]
    fn instance_validation() {
        assert_eq!(
            StarPathInstance::new(vec![], 3),
            Err(InstanceError::NoStars)
        );
        assert_eq!(
            StarPathInstance::new(vec![1], 3),
            Err(InstanceError::StarTooSmall(1))
        );
        assert_eq!(
            StarPathInstance::new(vec![2], 1),
            Err(InstanceError::PathTooSmall(1))
        );
    }
}
