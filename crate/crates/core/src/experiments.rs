//! Survey of small prime graphs, random-graph sweep, and the named-graph
//! table, with CSV output.
//!
//! Per-graph jobs run on the rayon pool; results are gathered in input order,
//! so output does not depend on scheduling.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::encoder::encode;
use crate::error::{Error, Result};
use crate::graph::{
    canonical_form, enumerate_connected, is_connected, is_prime, prism, random_gnp, to_graph6, CatalogEntry, Graph,
    RNG_ID,
};
use crate::search::{clique_width, Certificate, SearchOptions};

pub const SURVEY_SCHEMA: &str = "cwd-survey/1";
pub const SWEEP_SCHEMA: &str = "cwd-sweep/1";
pub const TABLE_SCHEMA: &str = "cwd-named/1";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub n: usize,
    pub connected: usize,
    pub prime: usize,
    /// Prime graphs per exact clique-width.
    pub widths: BTreeMap<usize, usize>,
    /// Prime graphs whose computation timed out.
    pub inconclusive: usize,
}

#[derive(Clone, Debug)]
pub struct SurveyReport {
    pub row: SurveyRow,
    /// graph6 strings of the prime graphs with the largest width found.
    pub widest: Vec<String>,
}

/// All connected graphs on `n <= 7` vertices; only prime ones are solved.
pub fn survey(n: usize, opts: &SearchOptions) -> Result<SurveyReport> {
    survey_graphs(n, enumerate_connected(n)?, opts)
}

/// Survey over supplied graphs, assumed pairwise non-isomorphic. Graphs that
/// are disconnected or not on `n` vertices are rejected.
pub fn survey_graphs(n: usize, graphs: Vec<Graph>, opts: &SearchOptions) -> Result<SurveyReport> {
    if let Some(g) = graphs.iter().find(|g| g.n() != n || !is_connected(g)) {
        return Err(Error::InvalidArgument(format!(
            "survey input {} is not a connected graph on {n} vertices",
            to_graph6(g)
        )));
    }
    let primes: Vec<&Graph> = graphs.iter().filter(|g| is_prime(g)).collect();
    let results: Vec<Result<Certificate>> = primes.par_iter().map(|g| clique_width(g, opts)).collect();

    let mut row = SurveyRow { n, connected: graphs.len(), prime: primes.len(), ..Default::default() };
    let mut by_width: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (g, r) in primes.iter().zip(results) {
        let cert = r?;
        match cert.cwd {
            Some(k) => {
                *row.widths.entry(k).or_default() += 1;
                by_width.entry(k).or_default().push(to_graph6(g));
            }
            None => row.inconclusive += 1,
        }
    }
    let widest = by_width.into_iter().next_back().map(|(_, gs)| gs).unwrap_or_default();
    Ok(SurveyReport { row, widest })
}

/// Whether `g` is the triangular prism, the smallest graph of clique-width 4.
pub fn is_triangular_prism(g: &Graph) -> bool {
    let prism = prism(3).expect("valid size");
    g.n() == 6 && canonical_form(g).ok() == canonical_form(&prism).ok()
}

pub fn survey_csv(rows: &[SurveyRow]) -> Result<String> {
    let top = rows.iter().flat_map(|r| r.widths.keys().copied()).max().unwrap_or(0).max(6);
    let mut header = vec!["n".to_string(), "connected".into(), "prime".into()];
    header.extend((2..=top).map(|k| format!("cw{k}")));
    header.push("inconclusive".into());
    let mut w = csv_writer(&format!("{SURVEY_SCHEMA} prime graphs only are solved; cw1 is always 0"))?;
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.n.to_string(), r.connected.to_string(), r.prime.to_string()];
        rec.extend((2..=top).map(|k| r.widths.get(&k).copied().unwrap_or(0).to_string()));
        rec.push(if r.inconclusive > 0 { format!("?{}", r.inconclusive) } else { "0".into() });
        w.write_record(&rec)?;
    }
    finish(w)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub n: usize,
    pub p: f64,
    pub samples: usize,
    /// Mean over conclusive samples; `None` when every sample timed out.
    pub mean: Option<f64>,
    pub stddev: Option<f64>,
    pub inconclusive: usize,
    pub seed_base: u64,
}

/// Seed of sample `j` at grid index `i`.
pub fn sweep_seed(seed_base: u64, i: usize, samples: usize, j: usize) -> u64 {
    seed_base.wrapping_add((i * samples + j) as u64)
}

/// Mean clique-width of `samples` graphs from G(n, p) at each `p`.
pub fn sweep(n: usize, ps: &[f64], samples: usize, seed_base: u64, opts: &SearchOptions) -> Result<Vec<SweepPoint>> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample per point".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one vertex".into()));
    }
    let jobs: Vec<(usize, usize)> = (0..ps.len()).flat_map(|i| (0..samples).map(move |j| (i, j))).collect();
    let results: Vec<Result<Option<usize>>> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let g = random_gnp(n, ps[i], sweep_seed(seed_base, i, samples, j))?;
            Ok(clique_width(&g, opts)?.cwd)
        })
        .collect();
    let mut points = Vec::with_capacity(ps.len());
    let mut results = results.into_iter();
    for &p in ps {
        let mut values = Vec::new();
        let mut inconclusive = 0;
        for r in results.by_ref().take(samples) {
            match r? {
                Some(k) => values.push(k as f64),
                None => inconclusive += 1,
            }
        }
        let (mean, stddev) = mean_stddev(&values);
        points.push(SweepPoint { n, p, samples, mean, stddev, inconclusive, seed_base });
    }
    Ok(points)
}

/// Mean and sample standard deviation (zero for a single value).
fn mean_stddev(xs: &[f64]) -> (Option<f64>, Option<f64>) {
    if xs.is_empty() {
        return (None, None);
    }
    let m = xs.iter().sum::<f64>() / xs.len() as f64;
    if xs.len() == 1 {
        return (Some(m), Some(0.0));
    }
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    (Some(m), Some(var.sqrt()))
}

/// Evenly spaced probabilities `0, step, 2 step, ..., 1`.
pub fn p_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::InvalidArgument(format!("grid step {step} outside (0, 1]")));
    }
    let count = (1.0 / step).round() as usize;
    if ((count as f64) * step - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!("grid step {step} does not divide 1")));
    }
    // Rounded to a fixed number of digits so grid values print cleanly.
    Ok((0..=count).map(|i| ((i as f64 * step) * 1e9).round() / 1e9).collect())
}

pub fn sweep_csv(points: &[SweepPoint]) -> Result<String> {
    let mut w = csv_writer(&format!(
        "{SWEEP_SCHEMA} rng={RNG_ID} seed(i,j)=seed_base+i*samples+j; means exclude inconclusive samples"
    ))?;
    w.write_record(["n", "p", "samples", "mean_cwd", "stddev", "inconclusive", "seed_base"])?;
    for pt in points {
        let fmt = |x: Option<f64>| x.map_or("?".to_string(), |v| format!("{v:.4}"));
        w.write_record([
            pt.n.to_string(),
            format!("{}", pt.p),
            pt.samples.to_string(),
            fmt(pt.mean),
            fmt(pt.stddev),
            pt.inconclusive.to_string(),
            pt.seed_base.to_string(),
        ])?;
    }
    finish(w)
}

/// One named graph: its computed clique-width with the instance sizes at
/// the deciding widths.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedRow {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub reference_cwd: usize,
    pub lower: usize,
    pub upper: usize,
    /// Variables and clauses of `F(G, k, n - k + 1)` at `k = lower - 1`.
    pub unsat_vars: Option<usize>,
    pub unsat_clauses: Option<usize>,
    pub sat_seconds: Option<f64>,
    pub unsat_seconds: Option<f64>,
}

pub fn named_row(entry: &CatalogEntry, opts: &SearchOptions) -> Result<NamedRow> {
    let g = entry.graph()?;
    let cert = clique_width(&g, opts)?;
    let k = cert.lower.saturating_sub(1);
    let sizes = (k >= 2).then(|| encode(&g, k, g.n() - k + 1, opts.encoding)).transpose()?;
    let time_at = |want_k: usize, sat: bool| {
        cert.probes
            .iter()
            .filter(|p| p.k == want_k && (p.verdict == crate::solver::Verdict::Sat) == sat)
            .map(|p| p.wall_seconds)
            .next()
    };
    Ok(NamedRow {
        name: entry.name.clone(),
        n: g.n(),
        m: g.edge_count(),
        reference_cwd: entry.reference_cwd,
        lower: cert.lower,
        upper: cert.upper,
        unsat_vars: sizes.as_ref().map(|i| i.num_vars()),
        unsat_clauses: sizes.as_ref().map(|i| i.num_clauses()),
        sat_seconds: time_at(cert.upper, true),
        unsat_seconds: time_at(k, false),
    })
}

pub fn named_csv(rows: &[NamedRow]) -> Result<String> {
    let mut w = csv_writer(&format!(
        "{TABLE_SCHEMA} sizes and UNSAT time at k = cwd - 1, t = n - k + 1; reference_cwd is literature metadata"
    ))?;
    w.write_record(["name", "n", "m", "cwd", "reference_cwd", "vars", "clauses", "sat_seconds", "unsat_seconds"])?;
    let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
    let secs = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:.3}"));
    for r in rows {
        let cwd = if r.lower == r.upper { r.upper.to_string() } else { format!("?[{},{}]", r.lower, r.upper) };
        w.write_record([
            r.name.clone(),
            r.n.to_string(),
            r.m.to_string(),
            cwd,
            r.reference_cwd.to_string(),
            opt(r.unsat_vars),
            opt(r.unsat_clauses),
            secs(r.sat_seconds),
            secs(r.unsat_seconds),
        ])?;
    }
    finish(w)
}

fn csv_writer(comment: &str) -> Result<csv::Writer<Vec<u8>>> {
    let mut buf = Vec::new();
    writeln!(buf, "# {comment}")?;
    Ok(csv::Writer::from_writer(buf))
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Backend;

    fn opts() -> SearchOptions {
        SearchOptions { backend: Backend::Cadical, ..SearchOptions::default() }
    }

    #[test]
    fn small_surveys() {
        let r4 = survey(4, &opts()).unwrap().row;
        assert_eq!((r4.connected, r4.prime), (6, 1));
        assert_eq!(r4.widths, BTreeMap::from([(3, 1)]));
        let r5 = survey(5, &opts()).unwrap().row;
        assert_eq!((r5.connected, r5.prime), (21, 4));
        assert_eq!(r5.widths, BTreeMap::from([(3, 4)]));
    }

    #[test]
    fn survey_csv_shape() {
        let rows = vec![survey(4, &opts()).unwrap().row];
        let text = survey_csv(&rows).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# cwd-survey/1"));
        assert_eq!(lines.next().unwrap(), "n,connected,prime,cw2,cw3,cw4,cw5,cw6,inconclusive");
        assert_eq!(lines.next().unwrap(), "4,6,1,0,1,0,0,0,0");
    }

    #[test]
    fn sweep_endpoints_and_determinism() {
        let pts = sweep(8, &[0.0, 1.0], 3, 42, &opts()).unwrap();
        assert_eq!(pts[0].mean, Some(1.0));
        assert_eq!(pts[1].mean, Some(2.0));
        let again = sweep(8, &[0.0, 1.0], 3, 42, &opts()).unwrap();
        assert_eq!(sweep_csv(&pts).unwrap(), sweep_csv(&again).unwrap());
    }

    #[test]
    fn grid() {
        assert_eq!(p_grid(0.25).unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(p_grid(0.1).unwrap().len(), 11);
        assert_eq!(p_grid(0.1).unwrap()[3], 0.3);
        assert!(p_grid(0.3).is_err());
        assert!(p_grid(0.0).is_err());
    }

    #[test]
    fn stats() {
        assert_eq!(mean_stddev(&[]), (None, None));
        let (m, s) = mean_stddev(&[2.0, 4.0]);
        assert_eq!(m, Some(3.0));
        assert!((s.unwrap() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_survey_input() {
        assert!(survey_graphs(4, vec![Graph::new(4)], &opts()).is_err());
    }
}
