//! Exact clique-width: special cases, reductions, the SAT ladder over `k`,
//! and certificate construction.

mod certificate;
mod preprocess;
mod schedule;

pub use certificate::{
    verify_certificate, Certificate, Check, GraphRecord, ProbeRecord, SearchSettings, Status, TraceEntry,
    VerificationReport, Witness, CERTIFICATE_FORMAT, CERTIFICATE_VERSION,
};
pub use preprocess::{lift_expression, preprocess, ReductionStep, ReductionTrace};
pub use schedule::{next_probe, strategy_schedule, Strategy};

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{mpsc, Arc};
use std::time::Duration;

use crate::derivation::{check_models, make_strict, validate_derivation, Derivation};
use crate::encoder::{decode_model, encode, Encoding};
use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};
use crate::kexpr::{derivation_to_expr, expr_to_derivation, expression_mismatch, print_expr, KExpr};
use crate::solver::{Backend, Limits, SolveResult, Verdict};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub encoding: Encoding,
    pub strategy: Strategy,
    /// Limit for each SAT call.
    pub timeout: Option<Duration>,
    /// Maximum number of concurrent SAT calls.
    pub parallel: usize,
    pub reductions: bool,
    pub backend: Backend,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            encoding: Encoding::Representative,
            strategy: Strategy::Down,
            timeout: None,
            parallel: 1,
            reductions: true,
            backend: Backend::from_env(),
        }
    }
}

impl SearchOptions {
    fn check(&self) -> Result<()> {
        if self.parallel == 0 {
            return Err(Error::InvalidArgument("parallel width must be at least 1".into()));
        }
        if self.timeout.is_some_and(|t| t.is_zero()) {
            return Err(Error::InvalidArgument("timeout must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of one width probe.
#[derive(Clone, Debug)]
pub struct Decision {
    pub k: usize,
    pub t: usize,
    pub verdict: Verdict,
    /// Decoded and validated derivation for SAT.
    pub derivation: Option<Derivation>,
    /// UNSAT at a length below `n - k + 1` does not bound the clique-width.
    pub bound_only: bool,
    pub probe: ProbeRecord,
}

/// Decides `cwd(g) <= k` with derivations of length `t` (default `n - k + 1`).
pub fn decide_width_at_most(g: &Graph, k: usize, t: Option<usize>, opts: &SearchOptions) -> Result<Decision> {
    opts.check()?;
    let n = g.n();
    if k < 2 || k > n {
        return Err(Error::precondition(format!("need 2 <= k <= n, got k = {k} with n = {n}")));
    }
    let full = n - k + 1;
    let t = t.unwrap_or(full);
    if t == 0 {
        return Err(Error::InvalidArgument("derivation length must be positive".into()));
    }
    let vertices: Vec<usize> = (0..n).collect();
    let (verdict, derivation, probe) = run_probe(g, &vertices, k, t, opts, None)?;
    Ok(Decision { k, t, verdict, derivation, bound_only: verdict == Verdict::Unsat && t < full, probe })
}

fn run_probe(
    g: &Graph,
    vertices: &[usize],
    k: usize,
    t: usize,
    opts: &SearchOptions,
    cancel: Option<Arc<AtomicBool>>,
) -> Result<(Verdict, Option<Derivation>, ProbeRecord)> {
    let inst = encode(g, k, t, opts.encoding)?;
    let result: SolveResult = opts.backend.solve(&inst, &Limits { timeout: opts.timeout, cancel });
    log::info!(
        "n={} k={k} t={t} {}: {} in {:.2?} ({} vars, {} clauses)",
        g.n(),
        opts.encoding,
        result.verdict,
        result.wall,
        inst.num_vars(),
        inst.num_clauses()
    );
    let record = ProbeRecord {
        vertices: vertices.to_vec(),
        k,
        t,
        encoding: opts.encoding,
        verdict: result.verdict,
        solver: result.solver.clone(),
        wall_seconds: result.wall.as_secs_f64(),
    };
    match result.verdict {
        Verdict::Sat => {
            let model = result.model.as_deref().ok_or_else(|| Error::internal("SAT without model"))?;
            let d = decode_model(model, g, k, t)?;
            Ok((Verdict::Sat, Some(d), record))
        }
        Verdict::Error => Err(Error::Solver(format!(
            "{}: {}",
            result.solver,
            result.message.unwrap_or_else(|| "unknown failure".into())
        ))),
        v => Ok((v, None, record)),
    }
}

/// Turns a derivation into a verified expression; any failure is a bug in
/// the pipeline, never a property of the input.
fn certify_witness(d: &Derivation, g: &Graph, k: usize) -> Result<KExpr> {
    let strict = make_strict(d, g)?;
    let e = derivation_to_expr(&strict, g)?;
    if let Some(why) = expression_mismatch(&e, g, k) {
        return Err(Error::Verification(format!("expression from a {k}-derivation is wrong: {why}")));
    }
    let back = expr_to_derivation(&e)?;
    if !validate_derivation(&back).ok || !check_models(&back, g)?.ok {
        return Err(Error::Verification("derivation read back from the expression does not model the graph".into()));
    }
    Ok(e)
}

/// Bounds and an upper-bound expression for one (sub)graph, vertices named
/// by local index.
struct Piece {
    lo: usize,
    hi: usize,
    expr: KExpr,
}

struct Run<'a> {
    opts: &'a SearchOptions,
    probes: Vec<ProbeRecord>,
    evidence: Vec<ProbeRecord>,
    trace: Vec<TraceEntry>,
}

/// Exact clique-width of `g` with a certificate, or bounds when a solve
/// times out.
pub fn clique_width(g: &Graph, opts: &SearchOptions) -> Result<Certificate> {
    opts.check()?;
    if g.n() == 0 {
        return Err(Error::precondition("the graph has no vertices"));
    }
    let mut run = Run { opts, probes: Vec::new(), evidence: Vec::new(), trace: Vec::new() };
    let ids: Vec<usize> = (0..g.n()).collect();
    let piece = run.solve(g, &ids)?;

    let derivation = expr_to_derivation(&piece.expr)?;
    let witness = Witness { width: piece.hi, expression: print_expr(&piece.expr), derivation };
    let mut transcript = VerificationReport::default();
    certificate::check_witness(&mut transcript, &witness, g, piece.hi);
    if !transcript.passed() {
        let why: Vec<String> = transcript.failures().map(|c| format!("{}: {:?}", c.name, c.detail)).collect();
        return Err(Error::Verification(why.join("; ")));
    }
    let exact = piece.lo == piece.hi;
    Ok(Certificate {
        format: CERTIFICATE_FORMAT.into(),
        version: CERTIFICATE_VERSION,
        graph: GraphRecord::of(g),
        status: if exact { Status::Exact } else { Status::Inconclusive },
        cwd: exact.then_some(piece.hi),
        lower: piece.lo,
        upper: piece.hi,
        witness,
        unsat_evidence: run.evidence,
        probes: run.probes,
        reductions: run.trace,
        settings: SearchSettings {
            encoding: opts.encoding,
            strategy: opts.strategy,
            solver: opts.backend.identity(),
            reductions: opts.reductions,
        },
        transcript,
    })
}

fn rename(e: &KExpr, ids: &[usize]) -> KExpr {
    match e {
        KExpr::Leaf { label, vertex } => {
            let local: usize = vertex.parse().expect("local vertex names are indices");
            KExpr::leaf(*label, ids[local].to_string())
        }
        KExpr::Union(cs) => KExpr::Union(cs.iter().map(|c| rename(c, ids)).collect()),
        KExpr::Relabel { from, to, child } => KExpr::relabel(*from, *to, rename(child, ids)),
        KExpr::Insert { a, b, child } => KExpr::insert(*a, *b, rename(child, ids)),
    }
}

impl Run<'_> {
    /// `ids[i]` is the input-graph id of vertex `i` of `g`.
    fn solve(&mut self, g: &Graph, ids: &[usize]) -> Result<Piece> {
        let n = g.n();
        if n == 1 || g.is_edgeless() {
            let leaves = (0..n).map(|v| KExpr::leaf(1, v.to_string())).collect::<Vec<_>>();
            let expr = if n == 1 { leaves.into_iter().next().expect("one leaf") } else { KExpr::Union(leaves) };
            return Ok(Piece { lo: 1, hi: 1, expr });
        }
        let components = connected_components(g);
        if components.len() > 1 {
            self.trace.push(TraceEntry::ComponentSplit {
                vertices: ids.to_vec(),
                components: components.iter().map(|c| c.vertices.iter().map(|&v| ids[v]).collect()).collect(),
            });
            let (mut lo, mut hi, mut parts) = (1, 1, Vec::new());
            for c in &components {
                let sub_ids: Vec<usize> = c.vertices.iter().map(|&v| ids[v]).collect();
                let p = self.solve(&c.graph, &sub_ids)?;
                lo = lo.max(p.lo);
                hi = hi.max(p.hi);
                parts.push(rename(&p.expr, &c.vertices));
            }
            return Ok(Piece { lo, hi, expr: KExpr::Union(parts) });
        }
        if self.opts.reductions {
            let (reduced, trace) = preprocess(g);
            if !trace.is_empty() {
                let global = ReductionTrace {
                    steps: trace
                        .steps
                        .iter()
                        .map(|s| match *s {
                            ReductionStep::Twin { removed, kept, adjacent } => {
                                ReductionStep::Twin { removed: ids[removed], kept: ids[kept], adjacent }
                            }
                            ReductionStep::Universal { removed } => ReductionStep::Universal { removed: ids[removed] },
                        })
                        .collect(),
                    kept: trace.kept.iter().map(|&v| ids[v]).collect(),
                };
                self.trace.push(TraceEntry::Reduction { vertices: ids.to_vec(), trace: global.clone() });
                let p = self.solve(&reduced, &global.kept)?;
                return Ok(Piece { lo: p.lo.max(2), hi: p.hi.max(2), expr: lift_expression(&p.expr, &trace) });
            }
        }
        self.ladder(g, ids)
    }

    /// SAT ladder on a connected graph with an edge.
    fn ladder(&mut self, g: &Graph, ids: &[usize]) -> Result<Piece> {
        let n = g.n();
        let opts = self.opts;
        let (mut lo, mut hi) = (2, n);
        let mut expr = certify_witness(&Derivation::trivial(n), g, n)?;
        let mut stalled = false;
        let mut unsat_at: Option<ProbeRecord> = None;

        let outcome: Result<()> = std::thread::scope(|scope| {
            let (tx, rx) = mpsc::channel();
            let mut running: Vec<(usize, Arc<AtomicBool>)> = Vec::new();
            loop {
                while !stalled && running.len() < opts.parallel {
                    let in_flight: Vec<usize> = running.iter().map(|r| r.0).collect();
                    let Some(k) = next_probe(opts.strategy, lo, hi, &in_flight) else { break };
                    let cancel = Arc::new(AtomicBool::new(false));
                    running.push((k, cancel.clone()));
                    let tx = tx.clone();
                    scope.spawn(move || {
                        let r = run_probe(g, ids, k, n - k + 1, opts, Some(cancel));
                        let _ = tx.send((k, r));
                    });
                }
                if running.is_empty() {
                    return Ok(());
                }
                let (k, result) = rx.recv().expect("probe threads hold a sender");
                let pos = running.iter().position(|r| r.0 == k).expect("probe was running");
                let (_, cancel) = running.remove(pos);
                let result = match result {
                    Ok(r) => r,
                    Err(e) => {
                        running.iter().for_each(|r| r.1.store(true, Ordering::Relaxed));
                        return Err(e);
                    }
                };
                let (verdict, derivation, record) = result;
                self.probes.push(record.clone());
                match verdict {
                    Verdict::Sat => {
                        let d = derivation.expect("SAT decisions carry a derivation");
                        let w = d.width();
                        if w < lo {
                            running.iter().for_each(|r| r.1.store(true, Ordering::Relaxed));
                            return Err(Error::internal(format!("SAT at width {w} below a proven lower bound {lo}")));
                        }
                        if w < hi {
                            expr = certify_witness(&d, g, w)?;
                            hi = w;
                        }
                    }
                    Verdict::Unsat => {
                        if k >= hi {
                            running.iter().for_each(|r| r.1.store(true, Ordering::Relaxed));
                            return Err(Error::internal(format!("UNSAT at k = {k} above a witnessed width {hi}")));
                        }
                        if k + 1 > lo {
                            lo = k + 1;
                            unsat_at = Some(record);
                        }
                    }
                    _ => {
                        if !cancel.load(Ordering::Relaxed) && k >= lo && k < hi {
                            stalled = true;
                        }
                    }
                }
                for r in &running {
                    if r.0 < lo || r.0 >= hi {
                        r.1.store(true, Ordering::Relaxed);
                    }
                }
            }
        });
        outcome?;
        self.evidence.extend(unsat_at);
        Ok(Piece { lo, hi, expr })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, edgeless, path, petersen, prism};

    fn opts() -> SearchOptions {
        SearchOptions { backend: Backend::Cadical, ..SearchOptions::default() }
    }

    #[test]
    fn small_graphs() {
        for (g, want) in [
            (path(4), 3),
            (complete(5), 2),
            (edgeless(7), 1),
            (Graph::new(1), 1),
            (cycle(5), 3),
            (cycle(4), 2),
            (prism(3).unwrap(), 4),
        ] {
            let c = clique_width(&g, &opts()).unwrap();
            assert!(c.is_exact());
            assert_eq!(c.cwd, Some(want), "{}", print_expr(&parse_back(&c)));
            assert!(c.transcript.passed());
        }
    }

    fn parse_back(c: &Certificate) -> KExpr {
        crate::kexpr::parse_expr(&c.witness.expression).unwrap()
    }

    #[test]
    fn decisions_on_p4() {
        let o = opts();
        let d = decide_width_at_most(&path(4), 2, None, &o).unwrap();
        assert_eq!(d.verdict, Verdict::Unsat);
        assert!(!d.bound_only);
        let d = decide_width_at_most(&path(4), 3, None, &o).unwrap();
        assert_eq!(d.verdict, Verdict::Sat);
        assert!(d.derivation.unwrap().width() <= 3);
        assert!(decide_width_at_most(&path(4), 1, None, &o).is_err());
    }

    #[test]
    fn short_unsat_is_bound_only() {
        let d = decide_width_at_most(&prism(3).unwrap(), 4, Some(1), &opts()).unwrap();
        if d.verdict == Verdict::Unsat {
            assert!(d.bound_only);
        }
    }

    #[test]
    fn strategies_and_parallel_width_agree() {
        for g in [petersen(), cycle(6), prism(3).unwrap()] {
            let mut answers = Vec::new();
            for strategy in [Strategy::Up, Strategy::Down, Strategy::Binary] {
                for parallel in [1, 3] {
                    let o = SearchOptions { strategy, parallel, ..opts() };
                    answers.push(clique_width(&g, &o).unwrap().cwd);
                }
            }
            assert!(answers.windows(2).all(|w| w[0] == w[1]), "{answers:?}");
        }
    }

    #[test]
    fn timeouts_give_bounds() {
        let g = petersen();
        let o = SearchOptions { timeout: Some(Duration::from_millis(1)), strategy: Strategy::Up, ..opts() };
        let c = clique_width(&g, &o).unwrap();
        if !c.is_exact() {
            assert!(c.lower < c.upper);
            assert!(c.lower <= 5 && c.upper >= 5);
            assert!(c.cwd.is_none());
        }
    }

    #[test]
    fn reductions_are_traced() {
        let c = clique_width(&complete(4), &opts()).unwrap();
        assert_eq!(c.cwd, Some(2));
        assert!(matches!(c.reductions[0], TraceEntry::Reduction { .. }));
        let split = clique_width(&path(4).disjoint_union(&complete(3)), &opts()).unwrap();
        assert_eq!(split.cwd, Some(3));
        assert!(matches!(split.reductions[0], TraceEntry::ComponentSplit { .. }));
    }

    #[test]
    fn certificates_verify_from_json() {
        let c = clique_width(&petersen(), &opts()).unwrap();
        assert_eq!(c.cwd, Some(5));
        let text = c.to_json();
        let report = verify_certificate(&text, None, Some(&Backend::Cadical)).unwrap();
        assert!(report.passed(), "{report:?}");

        let mut broken = petersen();
        broken = Graph::from_edges(10, broken.edges().skip(1)).unwrap();
        let report = verify_certificate(&text, Some(&broken), None).unwrap();
        assert!(!report.passed());
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"check_models"), "{failed:?}");

        let tampered = text.replacen("eta_{1,2}", "eta_{1,3}", 1);
        if tampered != text {
            assert!(!verify_certificate(&tampered, None, None).unwrap().passed());
        }
    }
}
