use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Order in which widths are probed between the known bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Increasing from the lower bound; every probe but the last is UNSAT.
    Up,
    /// Decreasing from the upper bound; SAT probes are usually cheap.
    #[default]
    Down,
    /// Bisection of the open interval.
    Binary,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Up => "up",
            Strategy::Down => "down",
            Strategy::Binary => "binary",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "up" => Ok(Strategy::Up),
            "down" => Ok(Strategy::Down),
            "binary" | "bisect" => Ok(Strategy::Binary),
            other => Err(Error::InvalidArgument(format!("unknown strategy `{other}`"))),
        }
    }
}

/// Next width to probe when `lo <= cwd <= hi`, `hi` is already witnessed,
/// and `in_flight` are running. `None` when nothing useful is left.
pub fn next_probe(strategy: Strategy, lo: usize, hi: usize, in_flight: &[usize]) -> Option<usize> {
    let mut open = (lo..hi).filter(|k| !in_flight.contains(k));
    match strategy {
        Strategy::Up => open.next(),
        Strategy::Down => open.next_back(),
        Strategy::Binary => {
            let mid = (lo + hi) / 2;
            open.min_by_key(|&k| (k.abs_diff(mid), k))
        }
    }
}

/// The probe sequence a sequential search would issue between `bounds`,
/// given the answer `sat(k)` of each probe.
pub fn strategy_schedule(bounds: (usize, usize), strategy: Strategy, mut sat: impl FnMut(usize) -> bool) -> Vec<usize> {
    let (mut lo, mut hi) = bounds;
    let mut probes = Vec::new();
    while let Some(k) = next_probe(strategy, lo, hi, &[]) {
        probes.push(k);
        if sat(k) {
            hi = k;
        } else {
            lo = k + 1;
        }
    }
    probes
}
