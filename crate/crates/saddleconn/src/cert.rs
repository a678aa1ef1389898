//! Certificates and report/DOT/CSV emitters.
//!
//! Every certificate names its semantics: `ProvesTrueClaim` is reserved for
//! <=-claims established with exact oracles or with upper-bound distances
//! (a path found in a truncation exists in the full graph); everything else
//! is `AtTruncation` and only describes the finite shadow that was computed.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    ProvesTrueClaim,
    AtTruncation,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semantics::ProvesTrueClaim => write!(f, "proves-true-claim"),
            Semantics::AtTruncation => write!(f, "at-truncation"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    Bottleneck,
    Linking,
    Centre,
    Qi,
    SliceDiameter,
    Hasse,
    LadderProperties,
}

impl fmt::Display for CertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CertKind::Bottleneck => "bottleneck",
            CertKind::Linking => "linking",
            CertKind::Centre => "centre",
            CertKind::Qi => "qi",
            CertKind::SliceDiameter => "slice-diameter",
            CertKind::Hasse => "hasse",
            CertKind::LadderProperties => "ladder-properties",
        };
        write!(f, "{s}")
    }
}

/// A machine-checkable certificate for one quantitative claim.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub kind: CertKind,
    pub pass: bool,
    /// (name, value) pairs: the constantsexercised by this certificate.
    pub constants: Vec<(String, String)>,
    /// One line per witness or violation.
    pub witnesses: Vec<String>,
    pub semantics: Semantics,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let status = if self.pass { "PASS" } else { "FAIL" };
        let consts = self
            .constants
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!(
            "CERT {} status={status} semantics={} {consts}\n",
            self.kind, self.semantics
        ));
        for w in &self.witnesses {
            out.push_str(&format!("  witness {w}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("  note {n}\n"));
        }
        out
    }
}

/// Render an undirected graph as DOT with the given vertex labels.
pub fn graph_dot(name: &str, labels: &[String], edges: &[(u32, u32)]) -> String {
    let mut out = format!("graph {name} {{\n");
    for (i, l) in labels.iter().enumerate() {
        out.push_str(&format!("  v{i} [label=\"{l}\"];\n"));
    }
    for (a, b) in edges {
        out.push_str(&format!("  v{a} -- v{b};\n"));
    }
    out.push_str("}\n");
    out
}

/// Render rows as CSV with a header line.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

/// Pairwise BFS distance matrix of a graph as CSV; unreachable pairs (at this
/// truncation) render as empty cells.
pub fn distance_matrix_csv(g: &crate::graph::Graph, labels: &[String]) -> String {
    let mut header = vec!["vertex".to_string()];
    header.extend(labels.iter().cloned());
    let mut out = header.join(",");
    out.push('\n');
    for (i, l) in labels.iter().enumerate() {
        let dist = g.distances_from(i);
        let mut row = vec![l.clone()];
        row.extend(
            dist.iter()
                .map(|d| d.map(|x| x.to_string()).unwrap_or_default()),
        );
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
