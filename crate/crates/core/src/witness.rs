//! Lower-bound witness certificates: explicit `(c+1)`-colorings of a
//! complete graph in which every star color respects its degree cap and the
//! path color has no path of the target order, together with a verifier
//! that recomputes every check from the raw edge list.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{
    bounded_degree_decomposition, delta_edge_coloring_multipartite, proper_edge_coloring,
    EdgeColoring,
};
use crate::graph::{complete_multipartite, Graph, MultipartiteSpec};
use crate::hamilton::hamiltonian_decomposition;
use crate::path::longest_path_order;
use crate::ramsey::{classify, Clause, StarPathInstance};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("no witness construction applies: {0}")]
    NotApplicable(String),
    #[error("internal witness construction failure (bug): {0}")]
    Internal(String),
}

/// Per-star-color degree check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarCheck {
    pub color: usize,
    pub cap: usize,
    pub max_degree: usize,
    pub ok: bool,
}

/// Path-color longest-path check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCheck {
    pub m: usize,
    pub longest_path: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessChecks {
    pub cover: bool,
    pub stars: Vec<StarCheck>,
    pub path: PathCheck,
}

/// On-disk certificate. Field order is part of the format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateData {
    pub instance: InstanceData,
    pub n: usize,
    pub edges: Vec<(usize, usize, usize)>,
    pub claim: String,
    pub clause: String,
    pub checks: WitnessChecks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceData {
    pub stars: Vec<usize>,
    pub m: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateParseError {
    #[error("certificate JSON is malformed: {0}")]
    Json(String),
    #[error("certificate instance is invalid: {0}")]
    Instance(String),
}

impl CertificateData {
    pub fn from_json(text: &str) -> Result<CertificateData, CertificateParseError> {
        let data: CertificateData =
            serde_json::from_str(text).map_err(|e| CertificateParseError::Json(e.to_string()))?;
        // instance invariants are part of the schema
        StarPathInstance::new(data.instance.stars.clone(), data.instance.m)
            .map_err(|e| CertificateParseError::Instance(e.to_string()))?;
        Ok(data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }

    pub fn instance(&self) -> StarPathInstance {
        StarPathInstance::new(self.instance.stars.clone(), self.instance.m)
            .expect("validated at parse time")
    }
}

/// Distinct verification failure kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckFailure {
    OrderTooLarge(usize),
    EdgeOutOfRange(usize, usize),
    EdgeNotOrdered(usize, usize),
    BadColor { edge: (usize, usize), color: usize },
    DuplicateEdge(usize, usize),
    MissingEdge(usize, usize),
    StarExceeded { color: usize, cap: usize, max_degree: usize },
    PathTooLong { longest_path: usize, m: usize },
    BadClaim(String),
    StoredChecksMismatch,
}

impl std::fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckFailure::OrderTooLarge(n) => {
                write!(f, "order {n} exceeds the supported maximum {}", crate::graph::MAX_ORDER)
            }
            CheckFailure::EdgeOutOfRange(u, v) => write!(f, "edge ({u},{v}) out of range"),
            CheckFailure::EdgeNotOrdered(u, v) => write!(f, "edge ({u},{v}) must have u < v"),
            CheckFailure::BadColor { edge, color } => {
                write!(f, "edge ({},{}) has color {color} out of range", edge.0, edge.1)
            }
            CheckFailure::DuplicateEdge(u, v) => write!(f, "edge ({u},{v}) colored twice"),
            CheckFailure::MissingEdge(u, v) => write!(f, "edge ({u},{v}) is uncolored"),
            CheckFailure::StarExceeded { color, cap, max_degree } => write!(
                f,
                "star color {color} has max degree {max_degree}, exceeding cap {cap}"
            ),
            CheckFailure::PathTooLong { longest_path, m } => {
                write!(f, "path color contains a path of order {longest_path} >= {m}")
            }
            CheckFailure::BadClaim(claim) => write!(f, "claim {claim:?} does not match order"),
            CheckFailure::StoredChecksMismatch => {
                write!(f, "stored checks disagree with recomputed checks")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub passed: bool,
    pub cover_ok: bool,
    pub star_checks: Vec<StarCheck>,
    pub path_check: Option<PathCheck>,
    pub failures: Vec<CheckFailure>,
}

impl VerifyReport {
    pub fn recomputed_checks(&self) -> Option<WitnessChecks> {
        Some(WitnessChecks {
            cover: self.cover_ok,
            stars: self.star_checks.clone(),
            path: self.path_check.clone()?,
        })
    }
}

/// Recomputes every check of a certificate from its raw edge list: exact
/// cover of `E(K_n)`, per-star degree caps, and the longest path of the
/// path color.
pub fn verify_certificate(data: &CertificateData) -> VerifyReport {
    let inst = data.instance();
    let report = verify_raw(&inst, data.n, &data.edges, Some(&data.claim));
    let mut report = report;
    if report.passed {
        match report.recomputed_checks() {
            Some(checks) if checks == data.checks => {}
            _ => {
                report.passed = false;
                report.failures.push(CheckFailure::StoredChecksMismatch);
            }
        }
    }
    report
}

/// Core verifier over raw `(u, v, color)` triples. Colors `0..c` are the
/// stars in input order; color `c` is the path color.
pub fn verify_raw(
    inst: &StarPathInstance,
    n: usize,
    edges: &[(usize, usize, usize)],
    claim: Option<&str>,
) -> VerifyReport {
    let c = inst.num_stars();
    if n > crate::graph::MAX_ORDER {
        return VerifyReport {
            passed: false,
            cover_ok: false,
            star_checks: Vec::new(),
            path_check: None,
            failures: vec![CheckFailure::OrderTooLarge(n)],
        };
    }
    let mut failures = Vec::new();
    let mut class_graphs: Vec<Graph> = (0..=c).map(|_| Graph::empty(n).unwrap()).collect();
    let mut seen = std::collections::HashSet::new();
    let mut structural_ok = true;

    for &(u, v, color) in edges {
        if u >= n || v >= n {
            failures.push(CheckFailure::EdgeOutOfRange(u, v));
            structural_ok = false;
            continue;
        }
        if u >= v {
            failures.push(CheckFailure::EdgeNotOrdered(u, v));
            structural_ok = false;
            continue;
        }
        if color > c {
            failures.push(CheckFailure::BadColor {
                edge: (u, v),
                color,
            });
            structural_ok = false;
            continue;
        }
        if !seen.insert((u, v)) {
            failures.push(CheckFailure::DuplicateEdge(u, v));
            structural_ok = false;
            continue;
        }
        class_graphs[color].add_edge(u, v);
    }
    if structural_ok {
        for u in 0..n {
            for v in (u + 1)..n {
                if !seen.contains(&(u, v)) {
                    failures.push(CheckFailure::MissingEdge(u, v));
                    structural_ok = false;
                }
            }
        }
    }
    let cover_ok = structural_ok;

    let mut star_checks = Vec::with_capacity(c);
    for (i, &star) in inst.stars().iter().enumerate() {
        let cap = star - 1;
        let max_degree = class_graphs[i].max_degree();
        let ok = max_degree <= cap;
        if !ok {
            failures.push(CheckFailure::StarExceeded {
                color: i,
                cap,
                max_degree,
            });
        }
        star_checks.push(StarCheck {
            color: i,
            cap,
            max_degree,
            ok,
        });
    }
    let longest = longest_path_order(&class_graphs[c]).p;
    let path_ok = longest < inst.m();
    if !path_ok {
        failures.push(CheckFailure::PathTooLong {
            longest_path: longest,
            m: inst.m(),
        });
    }
    let path_check = PathCheck {
        m: inst.m(),
        longest_path: longest,
        ok: path_ok,
    };

    if let Some(claim) = claim {
        if claim != format!("R>{n}") {
            failures.push(CheckFailure::BadClaim(claim.to_string()));
        }
    }

    VerifyReport {
        passed: failures.is_empty(),
        cover_ok,
        star_checks,
        path_check: Some(path_check),
        failures,
    }
}

/// A verified lower-bound witness: a `(c+1)`-coloring of `K_n` certifying
/// `R > n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCertificate {
    instance: StarPathInstance,
    n: usize,
    coloring: EdgeColoring,
    clause: Clause,
    checks: WitnessChecks,
}

impl WitnessCertificate {
    pub fn instance(&self) -> &StarPathInstance {
        &self.instance
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coloring(&self) -> &EdgeColoring {
        &self.coloring
    }

    pub fn clause(&self) -> Clause {
        self.clause
    }

    pub fn checks(&self) -> &WitnessChecks {
        &self.checks
    }

    pub fn to_data(&self) -> CertificateData {
        let edges: Vec<(usize, usize, usize)> = self
            .coloring
            .base()
            .edges()
            .map(|(u, v)| (u, v, self.coloring.color_of(u, v).unwrap()))
            .collect();
        CertificateData {
            instance: InstanceData {
                stars: self.instance.stars().to_vec(),
                m: self.instance.m(),
            },
            n: self.n,
            edges,
            claim: format!("R>{}", self.n),
            clause: self.clause.id().to_string(),
            checks: self.checks.clone(),
        }
    }

    /// Wraps an already-found coloring (e.g. a SAT witness from the search
    /// engine), verifying it first.
    pub fn from_coloring(
        instance: StarPathInstance,
        coloring: EdgeColoring,
        clause: Clause,
    ) -> Result<WitnessCertificate, WitnessError> {
        let n = coloring.base().order();
        let edges: Vec<(usize, usize, usize)> = coloring
            .base()
            .edges()
            .map(|(u, v)| (u, v, coloring.color_of(u, v).unwrap()))
            .collect();
        let report = verify_raw(&instance, n, &edges, None);
        if !report.passed {
            return Err(WitnessError::Internal(format!(
                "witness for {instance} at n={n} fails verification: {:?}",
                report.failures
            )));
        }
        let checks = report
            .recomputed_checks()
            .expect("path check present on success");
        Ok(WitnessCertificate {
            instance,
            n,
            coloring,
            clause,
            checks,
        })
    }
}

enum StarColoringKind {
    /// Class-1 coloring with exactly `Delta` classes.
    Delta,
    /// Fan-recoloring bound of `Delta + 1` classes.
    DeltaPlusOne,
}

/// Builds the published lower-bound construction applicable to `inst` and
/// verifies it before returning.
pub fn build_witness(inst: &StarPathInstance) -> Result<WitnessCertificate, WitnessError> {
    let profile = classify(inst);
    let m = inst.m();
    let sigma = profile.sigma;
    if m < 3 || m > sigma {
        return Err(WitnessError::NotApplicable(format!(
            "constructions require 3 <= m <= Sigma (m={m}, Sigma={sigma}); \
             outside this regime the value is settled by a closed formula"
        )));
    }
    let k = profile.k.expect("m >= 3");
    let s = profile.s.expect("m >= 3");
    if !(2..=m - 2).contains(&k) {
        return Err(WitnessError::NotApplicable(format!(
            "constructions require 2 <= k <= m-2 (k = Sigma mod (m-1) = {k})"
        )));
    }

    if s + k >= m - 2 && profile.m_plus_sigma_even {
        // star colors on the complete multipartite graph whose complement
        // is (s-m+k+2) K_{m-1} + (m-k) K_{m-2}
        let mut parts = vec![m - 1; s + k + 2 - m];
        parts.extend(std::iter::repeat(m - 2).take(m - k));
        let expected = sigma + m - 2;
        return grouped_witness(inst, Clause::T1_1, parts, StarColoringKind::Delta, expected);
    }

    if sigma % (m - 2) == 0 && !profile.m_plus_sigma_even {
        let t = sigma / (m - 2);
        if profile.all_stars_odd {
            return hamiltonian_witness(inst, t);
        }
        if sigma < (m - 2) * (m - 2) {
            // t parts of size m-2 and one of size m-3
            let mut parts = vec![m - 2; t];
            parts.push(m - 3);
            let expected = sigma + m - 3;
            return grouped_witness(inst, Clause::T1_3, parts, StarColoringKind::Delta, expected);
        }
    }

    if s + k < m - 2 {
        let mut parts = vec![m - 2; s - 1];
        parts.push(m - 3);
        parts.push(s + k);
        parts.push(s + k);
        let expected = sigma + s + k - 1;
        grouped_witness(inst, Clause::T1_4, parts, StarColoringKind::DeltaPlusOne, expected)
    } else if s + k > m - 2 {
        let mut parts = vec![m - 1; s + k + 1 - m];
        parts.extend(std::iter::repeat(m - 2).take(m - k + 1));
        let expected = sigma + m - 3;
        grouped_witness(inst, Clause::T1_4, parts, StarColoringKind::DeltaPlusOne, expected)
    } else {
        unreachable!("s+k == m-2 is always handled by an earlier construction");
    }
}

// Shared pipeline for the constructions that color a complete multipartite
// graph properly and group the matchings under the star degree caps; the
// path color is the complement (a disjoint union of cliques smaller than m).
fn grouped_witness(
    inst: &StarPathInstance,
    clause: Clause,
    parts: Vec<usize>,
    kind: StarColoringKind,
    expected_order: usize,
) -> Result<WitnessCertificate, WitnessError> {
    let spec = MultipartiteSpec::new(parts)
        .map_err(|e| WitnessError::Internal(format!("bad construction spec: {e}")))?;
    debug_assert_eq!(spec.order(), expected_order);
    let star_side = complete_multipartite(&spec);
    let coloring = match kind {
        StarColoringKind::Delta => delta_edge_coloring_multipartite(&spec)
            .map_err(|e| WitnessError::Internal(format!("class-1 coloring failed: {e}")))?,
        StarColoringKind::DeltaPlusOne => proper_edge_coloring(&star_side),
    };
    let caps: Vec<usize> = inst.stars().iter().map(|&n| n - 1).collect();
    let star_graphs = bounded_degree_decomposition(&coloring, &caps)
        .map_err(|e| WitnessError::Internal(format!("cap grouping failed: {e}")))?;
    let path_graph = star_side.complement();
    assemble(inst, clause, star_graphs, path_graph)
}

fn hamiltonian_witness(
    inst: &StarPathInstance,
    t: usize,
) -> Result<WitnessCertificate, WitnessError> {
    let m = inst.m();
    let spec = MultipartiteSpec::new(vec![m - 2; t + 1])
        .map_err(|e| WitnessError::Internal(format!("bad construction spec: {e}")))?;
    let decomposition = hamiltonian_decomposition(&spec)
        .map_err(|e| WitnessError::Internal(format!("hamiltonian decomposition failed: {e}")))?;
    debug_assert!(decomposition.one_factor().is_none(), "degree Sigma is even");
    let n = spec.order();
    // star i takes (n_i - 1)/2 whole cycles and is therefore (n_i-1)-regular
    let mut star_graphs = Vec::with_capacity(inst.num_stars());
    let mut next_cycle = 0usize;
    for &star in inst.stars() {
        let take = (star - 1) / 2;
        let mut g = Graph::empty(n).expect("order within cap");
        for cycle in next_cycle..next_cycle + take {
            for (u, v) in decomposition.cycle_edges(cycle) {
                g.add_edge(u, v);
            }
        }
        next_cycle += take;
        star_graphs.push(g);
    }
    debug_assert_eq!(next_cycle, decomposition.cycles().len());
    let path_graph = decomposition.base().complement();
    assemble(inst, Clause::T1_2, star_graphs, path_graph)
}

fn assemble(
    inst: &StarPathInstance,
    clause: Clause,
    star_graphs: Vec<Graph>,
    path_graph: Graph,
) -> Result<WitnessCertificate, WitnessError> {
    let n = path_graph.order();
    let base = Graph::complete(n).map_err(|e| WitnessError::Internal(e.to_string()))?;
    let mut assignments = Vec::with_capacity(n * (n - 1) / 2);
    for (i, g) in star_graphs.iter().enumerate() {
        for (u, v) in g.edges() {
            assignments.push((u, v, i));
        }
    }
    let path_color = inst.num_stars();
    for (u, v) in path_graph.edges() {
        assignments.push((u, v, path_color));
    }
    let coloring = EdgeColoring::from_assignments(base, &assignments)
        .map_err(|e| WitnessError::Internal(format!("assembled coloring is not total: {e}")))?;
    WitnessCertificate::from_coloring(inst.clone(), coloring, clause)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(stars: &[usize], m: usize) -> StarPathInstance {
        StarPathInstance::new(stars.to_vec(), m).unwrap()
    }

    #[test]
    fn witness_t11() {
        let cert = build_witness(&inst(&[4, 5], 5)).unwrap();
        assert_eq!(cert.n(), 10);
        assert_eq!(cert.clause(), Clause::T1_1);
        assert!(cert.checks().cover);
        assert_eq!(cert.checks().path.longest_path, 4);
        assert!(verify_certificate(&cert.to_data()).passed);
    }

    #[test]
    fn witness_t12() {
        let cert = build_witness(&inst(&[7], 5)).unwrap();
        assert_eq!(cert.n(), 9);
        assert_eq!(cert.clause(), Clause::T1_2);
        // the single star color is exactly 6-regular
        let star = cert.coloring().class_graph(0);
        let (min, max, _) = star.degree_profile();
        assert_eq!((min, max), (6, 6));
        assert_eq!(cert.checks().path.longest_path, 3);
    }

    #[test]
    fn witness_t13() {
        let cert = build_witness(&inst(&[2, 6], 5)).unwrap();
        assert_eq!(cert.n(), 8);
        assert_eq!(cert.clause(), Clause::T1_3);
        assert!(verify_certificate(&cert.to_data()).passed);
    }

    #[test]
    fn witness_t14_small_sk() {
        let cert = build_witness(&inst(&[9], 7)).unwrap();
        assert_eq!(cert.n(), 10);
        assert_eq!(cert.clause(), Clause::T1_4);
        assert_eq!(cert.checks().path.longest_path, 4);
    }

    #[test]
    fn witness_t14_large_sk() {
        // Sigma=10, k=2, s=2, s+k=4 > m-2=3
        let cert = build_witness(&inst(&[11], 5)).unwrap();
        assert_eq!(cert.n(), 12);
        assert_eq!(cert.clause(), Clause::T1_4);
        assert!(verify_certificate(&cert.to_data()).passed);
    }

    #[test]
    fn witness_not_applicable_in_c1_regime() {
        match build_witness(&inst(&[2], 4)) {
            Err(WitnessError::NotApplicable(_)) => {}
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn witness_not_applicable_for_k1() {
        // Sigma = 6, m = 4: k = 0
        match build_witness(&inst(&[7], 4)) {
            Err(WitnessError::NotApplicable(msg)) => assert!(msg.contains("k")),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = build_witness(&inst(&[7], 5)).unwrap();
        let json = cert.to_data().to_json();
        let back = CertificateData::from_json(&json).unwrap();
        assert_eq!(back, cert.to_data());
        assert!(verify_certificate(&back).passed);
    }

    #[test]
    fn mutated_certificate_fails_path_check() {
        let cert = build_witness(&inst(&[7], 5)).unwrap();
        let mut data = cert.to_data();
        // move one star edge into the path color, growing a component
        let idx = data
            .edges
            .iter()
            .position(|&(_, _, c)| c == 0)
            .expect("star edge exists");
        data.edges[idx].2 = 1;
        let report = verify_certificate(&data);
        assert!(!report.passed);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, CheckFailure::PathTooLong { .. })));
    }

    #[test]
    fn missing_edge_is_a_coverage_failure() {
        let cert = build_witness(&inst(&[7], 5)).unwrap();
        let mut data = cert.to_data();
        data.edges.pop();
        let report = verify_certificate(&data);
        assert!(!report.passed);
        assert!(!report.cover_ok);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, CheckFailure::MissingEdge(_, _))));
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(
            CertificateData::from_json("{"),
            Err(CertificateParseError::Json(_))
        ));
        let bad_instance = r#"{"instance":{"stars":[1],"m":5},"n":1,"edges":[],"claim":"R>1","clause":"T1.1","checks":{"cover":true,"stars":[],"path":{"m":5,"longest_path":0,"ok":true}}}"#;
        assert!(matches!(
            CertificateData::from_json(bad_instance),
            Err(CertificateParseError::Instance(_))
        ));
    }
}
