use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{run_case, CaseConfig, CaseId, VerificationReport};
use crate::error::{GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Every case at `10^5` samples.
    Smoke,
    /// Every case at `10^6` samples.
    Full,
}

impl Suite {
    pub fn samples(&self) -> u64 {
        match self {
            Suite::Smoke => 100_000,
            Suite::Full => 1_000_000,
        }
    }
}

impl FromStr for Suite {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smoke" => Ok(Suite::Smoke),
            "full" => Ok(Suite::Full),
            _ => Err(GeomError::Config(format!("unknown suite {s:?} (expected smoke or full)"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Smoke => "smoke",
            Suite::Full => "full",
        })
    }
}

/// The shipped case list. Case `i` runs on seed `seed + i`.
pub fn suite_cases(suite: Suite, seed: u64, shards: usize) -> Vec<CaseConfig> {
    use CaseId::*;
    let mut cases = vec![
        CaseConfig::new(Thm1, "ball", 3).h_power(3),
        CaseConfig::new(Thm1, "ellipsoid:2,1,1", 3).h_power(3),
        CaseConfig::new(Thm1, "ball", 4).h_power(4),
        CaseConfig::new(Pleijel2d, "ball", 2).h_power(2),
        CaseConfig::new(Pleijel2d, "ellipsoid:2,1", 2).h_power(2),
        CaseConfig::new(PleijelCot, "ball", 2).h_power(2),
        CaseConfig::new(PleijelCot, "cube", 2).h_power(1),
        CaseConfig::new(Defect2d, "ball", 2),
        CaseConfig::new(Defect2d, "ellipsoid:2,1", 2),
        CaseConfig::new(Thm2, "cube", 3).h_power(3),
        CaseConfig::new(Thm2, "regular-simplex", 3).h_power(3),
        CaseConfig::new(Bpf, "ball", 3).l(1).moment(1),
        CaseConfig::new(Bpf, "ball", 3).l(2).moment(0),
        CaseConfig::new(Bpf, "cube", 3).l(2).moment(1),
        CaseConfig::new(Zahle2, "ball", 3).h_power(3),
        CaseConfig::new(Zahle2, "ellipsoid:2,1,1", 3).h_power(3),
        CaseConfig::new(Thm3, "ball", 3).l(1).k(1).moment(1),
        CaseConfig::new(Thm3, "ball", 3).l(1).k(2).moment(3),
        CaseConfig::new(Thm3, "ball", 3).l(2).k(0).moment(0),
        CaseConfig::new(Thm3, "ball", 3).l(2).k(1).moment(0),
        CaseConfig::new(Thm4, "cube", 3).l(1).moment(3),
        CaseConfig::new(Kingman, "ball", 3).moment(0),
        CaseConfig::new(Kingman, "ball", 3).moment(1),
        CaseConfig::new(Kingman, "ball", 3).moment(2),
        CaseConfig::new(Kingman, "ball", 2).moment(1),
        CaseConfig::new(Corollary, "ball", 3).moment(1),
        CaseConfig::new(Flags, "ball", 3).h_power(3),
        CaseConfig::new(CotLemma, "ellipsoid:2,1,1", 3).samples(100),
    ];
    cases.extend((3..=6).map(|d| CaseConfig::new(SphereProduct, "ball", d)));
    for (d, l) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)] {
        cases.push(CaseConfig::new(Normalization, "ball", d).l(l));
    }
    cases.push(CaseConfig::new(Normalization, "cube", 3).l(1));
    for (body, d) in [
        ("ball", 3),
        ("ellipsoid:2,1,1", 3),
        ("cube", 3),
        ("simplex", 3),
        ("regular-simplex", 3),
        ("octahedron", 3),
        ("regular-polygon:6", 2),
    ] {
        cases.push(CaseConfig::new(MeanChord, body, d));
    }
    let n = suite.samples();
    cases
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let samples = if c.case == CaseId::CotLemma { c.samples } else { n };
            c.samples(samples).seed(seed.wrapping_add(i as u64)).shards(shards)
        })
        .collect()
}

/// Run every case of a suite. With `parallel_cases` the cases run
/// concurrently; results are identical either way. `timings` fills in
/// per-case wall time.
pub fn run_suite(suite: Suite, seed: u64, shards: usize, parallel_cases: bool, timings: bool) -> Result<Vec<VerificationReport>> {
    let cases = suite_cases(suite, seed, shards);
    let run = |c: &CaseConfig| {
        let start = Instant::now();
        let mut r = run_case(c)?;
        if timings {
            r.seconds = Some(start.elapsed().as_secs_f64());
        }
        Ok(r)
    };
    if parallel_cases {
        cases.par_iter().map(run).collect()
    } else {
        cases.iter().map(run).collect()
    }
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    case: CaseId,
    body: &'a str,
    dim: usize,
    l: Option<usize>,
    k: Option<usize>,
    moment: Option<u32>,
    h_power: Option<u32>,
    samples: u64,
    seed: u64,
    lhs: f64,
    lhs_se: f64,
    rhs: f64,
    rhs_se: f64,
    z: Option<f64>,
    rejections: f64,
    pass: bool,
}

/// One CSV row per report.
pub fn summary_csv(reports: &[VerificationReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        let c = &r.config;
        w.serialize(SummaryRow {
            case: r.case,
            body: &c.body,
            dim: c.dim,
            l: c.l,
            k: c.k,
            moment: c.moment,
            h_power: c.h_power,
            samples: c.samples,
            seed: c.seed,
            lhs: r.lhs.mean,
            lhs_se: r.lhs.standard_error,
            rhs: r.rhs.mean,
            rhs_se: r.rhs.standard_error,
            z: r.z,
            rejections: r.rejections,
            pass: r.pass,
        })
        .map_err(csv_error)?;
    }
    finish_csv(w)
}

pub(crate) fn csv_error(e: csv::Error) -> GeomError {
    GeomError::Config(format!("csv: {e}"))
}

pub(crate) fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| GeomError::Config(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
