//! Self-contained JSON record of a clique-width computation, checkable
//! without any in-memory state from the run that produced it.

use serde::{Deserialize, Serialize};

use super::{ReductionTrace, Strategy};
use crate::derivation::{check_models, validate_derivation, Derivation};
use crate::encoder::{encode, Encoding};
use crate::error::Result;
use crate::graph::{canonical_form, parse_graph6, to_graph6, Graph, MAX_CANONICAL_N};
use crate::kexpr::{expr_to_derivation, expression_mismatch, parse_expr};
use crate::solver::{Backend, Limits, Verdict};

pub const CERTIFICATE_FORMAT: &str = "cwd-certificate";
pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Exact,
    /// A solve timed out before the bounds met.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub name: Option<String>,
    pub n: usize,
    pub m: usize,
    pub graph6: String,
    /// Canonical graph6 form, for graphs small enough to canonize.
    pub canonical: Option<String>,
}

impl GraphRecord {
    pub fn of(g: &Graph) -> Self {
        GraphRecord {
            name: g.name().map(str::to_string),
            n: g.n(),
            m: g.edge_count(),
            graph6: to_graph6(g),
            canonical: (g.n() <= MAX_CANONICAL_N).then(|| canonical_form(g).ok()).flatten(),
        }
    }
}

/// One SAT call. `vertices` names the induced subgraph that was encoded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub vertices: Vec<usize>,
    pub k: usize,
    pub t: usize,
    pub encoding: Encoding,
    pub verdict: Verdict,
    pub solver: String,
    pub wall_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TraceEntry {
    /// The graph on `vertices` split into these connected components.
    ComponentSplit { vertices: Vec<usize>, components: Vec<Vec<usize>> },
    /// Reductions applied to the connected graph on `vertices`; step and
    /// `kept` ids are input-graph ids.
    Reduction { vertices: Vec<usize>, trace: ReductionTrace },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub width: usize,
    pub expression: String,
    pub derivation: Derivation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSettings {
    pub encoding: Encoding,
    pub strategy: Strategy,
    pub solver: String,
    pub reductions: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: &str, failure: Option<String>) {
        self.checks.push(Check { name: name.into(), passed: failure.is_none(), detail: failure });
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub version: u32,
    pub graph: GraphRecord,
    pub status: Status,
    pub cwd: Option<usize>,
    pub lower: usize,
    pub upper: usize,
    pub witness: Witness,
    /// UNSAT probes that establish the lower bound.
    pub unsat_evidence: Vec<ProbeRecord>,
    pub probes: Vec<ProbeRecord>,
    pub reductions: Vec<TraceEntry>,
    pub settings: SearchSettings,
    pub transcript: VerificationReport,
}

impl Certificate {
    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn graph(&self) -> Result<Graph> {
        let g = parse_graph6(&self.graph.graph6)?;
        Ok(match &self.graph.name {
            Some(name) => g.with_name(name.clone()),
            None => g,
        })
    }
}

/// Replays every check on a serialized certificate.
///
/// `graph`, when given, must equal the certified graph. `resolve` re-runs the
/// UNSAT evidence with that backend instead of trusting the recorded verdict.
pub fn verify_certificate(text: &str, graph: Option<&Graph>, resolve: Option<&Backend>) -> Result<VerificationReport> {
    let cert = Certificate::from_json(text)?;
    let mut report = VerificationReport::default();

    report.record(
        "format",
        (cert.format != CERTIFICATE_FORMAT || cert.version != CERTIFICATE_VERSION)
            .then(|| format!("unsupported format {} v{}", cert.format, cert.version)),
    );
    let g = match cert.graph() {
        Ok(g) => g,
        Err(e) => {
            report.record("graph", Some(e.to_string()));
            return Ok(report);
        }
    };
    let mut graph_problem = (g.n() != cert.graph.n || g.edge_count() != cert.graph.m)
        .then(|| "graph6 string disagrees with the recorded sizes".to_string());
    if let Some(given) = graph {
        if let Some(diff) = graph_difference(given, &g) {
            graph_problem = Some(format!("supplied graph differs from the certified one: {diff}"));
        }
    }
    report.record("graph", graph_problem);
    let target = graph.unwrap_or(&g);

    check_witness(&mut report, &cert.witness, target, cert.upper);
    check_bounds(&mut report, &cert, target);

    if let Some(backend) = resolve {
        for (i, p) in cert.unsat_evidence.iter().enumerate() {
            report.record(&format!("re-solve evidence {i}"), resolve_probe(p, target, backend));
        }
    }
    Ok(report)
}

/// Checks a witness against `g`; shared by certificate creation and replay.
pub(crate) fn check_witness(report: &mut VerificationReport, w: &Witness, g: &Graph, upper: usize) {
    let d = &w.derivation;
    report.record("validate_derivation", validate_derivation(d).violations.first().map(|v| v.to_string()));
    let models = match check_models(d, g) {
        Ok(r) => r.violations.first().map(|v| v.to_string()),
        Err(e) => Some(e.to_string()),
    };
    report.record("check_models", models);
    report.record(
        "derivation width",
        (d.width() > upper || w.width != upper)
            .then(|| format!("width {} / recorded {} vs bound {upper}", d.width(), w.width)),
    );
    let expr = match parse_expr(&w.expression) {
        Ok(e) => e,
        Err(e) => {
            report.record("verify_expression", Some(e.to_string()));
            return;
        }
    };
    report.record("verify_expression", expression_mismatch(&expr, g, upper));
    let back = match expr_to_derivation(&expr) {
        Ok(back) => match check_models(&back, g) {
            Ok(r) if r.ok && validate_derivation(&back).ok => None,
            Ok(r) => Some(r.violations.first().map_or("invalid derivation".into(), |v| v.to_string())),
            Err(e) => Some(e.to_string()),
        },
        Err(e) => Some(e.to_string()),
    };
    report.record("expression derivation models graph", back);
}

fn check_bounds(report: &mut VerificationReport, cert: &Certificate, g: &Graph) {
    let consistent = match cert.status {
        Status::Exact => cert.lower == cert.upper && cert.cwd == Some(cert.upper),
        Status::Inconclusive => cert.lower < cert.upper && cert.cwd.is_none(),
    };
    report.record(
        "bounds",
        (!consistent || cert.lower == 0).then(|| {
            format!("status {:?} with bounds [{}, {}] and cwd {:?}", cert.status, cert.lower, cert.upper, cert.cwd)
        }),
    );

    let lower = cert.lower;
    let evidence = if lower <= 1 {
        None
    } else if lower == 2 {
        (g.edge_count() == 0).then(|| "lower bound 2 claimed for an edgeless graph".to_string())
    } else {
        let found = cert.unsat_evidence.iter().any(|p| {
            p.verdict == Verdict::Unsat
                && p.k + 1 >= lower
                && valid_subset(&p.vertices, g.n())
                && p.vertices.len() >= p.k
                && p.t + p.k > p.vertices.len()
        });
        (!found).then(|| format!("no conclusive UNSAT probe at k = {}", lower - 1))
    };
    report.record("lower-bound evidence", evidence);
}

fn valid_subset(vs: &[usize], n: usize) -> bool {
    vs.windows(2).all(|w| w[0] < w[1]) && vs.last().is_none_or(|&v| v < n)
}

fn resolve_probe(p: &ProbeRecord, g: &Graph, backend: &Backend) -> Option<String> {
    if !valid_subset(&p.vertices, g.n()) {
        return Some("probe names vertices outside the graph".into());
    }
    let sub = g.induced_subgraph(&p.vertices);
    let inst = match encode(&sub, p.k, p.t, p.encoding) {
        Ok(i) => i,
        Err(e) => return Some(e.to_string()),
    };
    let r = backend.solve(&inst, &Limits::default());
    (r.verdict != Verdict::Unsat).then(|| format!("{} answered {}", r.solver, r.verdict))
}

fn graph_difference(a: &Graph, b: &Graph) -> Option<String> {
    if a.n() != b.n() {
        return Some(format!("{} vs {} vertices", a.n(), b.n()));
    }
    for u in 0..a.n() {
        for v in u + 1..a.n() {
            if a.has_edge(u, v) != b.has_edge(u, v) {
                let side = if a.has_edge(u, v) { "only in the supplied graph" } else { "only in the certificate" };
                return Some(format!("edge {u}-{v} {side}"));
            }
        }
    }
    None
}
