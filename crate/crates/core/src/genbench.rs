//! Instance generators and a small benchmark harness.
//!
//! Random instances draw, per edge, a membership probability uniformly
//! between two bounds and then include each vertex independently.
//! Worst-case instances are pairwise-disjoint blocks of equal size,
//! whose traverse count is `block^m`. The harness times the enumeration
//! pipelines and emits one CSV row per (instance, algorithm) pair.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::{enumerate, Backend};
use crate::error::{Error, Result};
use crate::hypergraph::{min_reduce, Hypergraph};
use crate::irredundant::imt_extract;
use crate::localgen::enumerate_local;
use crate::transversality::exact_tau;

/// Name of the deterministic generator backing `gen_random`.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Parameters of the random instance generator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomSpec {
    pub n: u32,
    pub m: u32,
    pub p_l: f64,
    pub p_u: f64,
    pub seed: u64,
}

impl RandomSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::invalid("n and m must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.p_l)
            || !(0.0..=1.0).contains(&self.p_u)
            || self.p_l > self.p_u
        {
            return Err(Error::invalid("need 0 <= p_l <= p_u <= 1"));
        }
        Ok(())
    }
}

/// Draws `m` edges over candidate vertices `1..=n`: per edge a
/// probability `p` is sampled uniformly in `[p_l, p_u]` and each vertex
/// joins independently with probability `p`. Empty edges are redrawn.
/// The output is deterministic in the seed and is not reduced.
pub fn gen_random(spec: &RandomSpec) -> Result<Hypergraph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges = Vec::with_capacity(spec.m as usize);
    for _ in 0..spec.m {
        let mut edge = Vec::new();
        let mut attempts = 0;
        while edge.is_empty() {
            let p = rng.random_range(spec.p_l..=spec.p_u);
            edge = (1..=spec.n).filter(|_| rng.random_bool(p)).collect();
            attempts += 1;
            if attempts >= 64 && edge.is_empty() {
                // degenerate probabilities: force a single vertex
                edge.push(rng.random_range(1..=spec.n));
            }
        }
        edges.push(edge);
    }
    Hypergraph::new(edges)
}

/// `m` pairwise-disjoint edges of `block` vertices each, labeled
/// `1..=m*block`. Every vertex has support 1.
pub fn gen_worst_case(m: u32, block: u32) -> Result<Hypergraph> {
    if m == 0 || block == 0 {
        return Err(Error::invalid("m and block must be at least 1"));
    }
    let edges: Vec<Vec<u32>> = (0..m)
        .map(|i| (1..=block).map(|j| i * block + j).collect())
        .collect();
    Hypergraph::new(edges)
}

/// Algorithm choice for the harness: the three backends plus the
/// decomposition pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchAlgo {
    Backend(Backend),
    Local,
}

impl BenchAlgo {
    pub const ALL: [BenchAlgo; 4] = [
        BenchAlgo::Backend(Backend::Berge),
        BenchAlgo::Backend(Backend::MtMiner),
        BenchAlgo::Backend(Backend::Mmcs),
        BenchAlgo::Local,
    ];
}

impl fmt::Display for BenchAlgo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchAlgo::Backend(b) => b.fmt(f),
            BenchAlgo::Local => f.write_str("local"),
        }
    }
}

impl FromStr for BenchAlgo {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "local" {
            Ok(BenchAlgo::Local)
        } else {
            s.parse::<Backend>().map(BenchAlgo::Backend)
        }
    }
}

/// One measurement row.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub backend: String,
    pub mt_count: Option<u64>,
    pub irr_count: Option<u64>,
    pub theta: Option<f64>,
    pub tau: Option<usize>,
    pub ms: Option<u128>,
    pub error: Option<String>,
}

fn run_algo(h: &Hypergraph, algo: BenchAlgo) -> Result<u64> {
    let mts = match algo {
        BenchAlgo::Backend(b) => enumerate(h, b)?,
        BenchAlgo::Local => enumerate_local(h, Backend::Mmcs)?,
    };
    Ok(mts.len() as u64)
}

/// Benchmarks every (instance, algorithm) pair. Instances are reduced
/// to simple form first; each timing discards one warm-up run. With
/// `with_irr` the irredundant pipeline contributes the count and
/// compaction columns.
pub fn bench_run(
    instances: &[(String, Hypergraph)],
    algos: &[BenchAlgo],
    with_irr: bool,
) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for (id, raw) in instances {
        let h = min_reduce(raw);
        let tau = exact_tau(&h);
        for &algo in algos {
            let mut row = BenchRow {
                id: id.clone(),
                n: raw.vertex_count(),
                m: raw.edge_count(),
                backend: algo.to_string(),
                mt_count: None,
                irr_count: None,
                theta: None,
                tau: Some(tau),
                ms: None,
                error: None,
            };
            let outcome = std::panic::catch_unwind(|| {
                run_algo(&h, algo)?; // warm-up, discarded
                let start = Instant::now();
                let count = run_algo(&h, algo)?;
                Ok::<_, Error>((count, start.elapsed().as_millis()))
            });
            match outcome {
                Ok(Ok((count, ms))) => {
                    row.mt_count = Some(count);
                    row.ms = Some(ms);
                }
                Ok(Err(e)) => row.error = Some(e.to_string()),
                Err(_) => row.error = Some("panic during enumeration".into()),
            }
            if with_irr && row.error.is_none() {
                match imt_extract(&h, Backend::Mmcs) {
                    Ok(imt) => {
                        row.irr_count = Some(imt.irredundant_mts.len() as u64);
                        row.theta = Some(imt.compaction);
                    }
                    Err(e) => row.error = Some(e.to_string()),
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// Renders rows as CSV under the fixed header, preceded by `#` comment
/// lines. Failed rows leave the count columns empty and append the
/// error note as a trailing field.
pub fn bench_csv(rows: &[BenchRow], comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str("id,n,m,backend,mt_count,irr_count,theta,tau,ms\n");
    for r in rows {
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        let line = format!(
            "{},{},{},{},{},{},{},{},{}",
            r.id,
            r.n,
            r.m,
            r.backend,
            opt(&r.mt_count.map(|v| v.to_string())),
            opt(&r.irr_count.map(|v| v.to_string())),
            opt(&r.theta.map(|v| format!("{v:.6}"))),
            opt(&r.tau.map(|v| v.to_string())),
            opt(&r.ms.map(|v| v.to_string())),
        );
        out.push_str(&line);
        if let Some(e) = &r.error {
            out.push(',');
            out.push_str(&e.replace(',', ";"));
        }
        out.push('\n');
    }
    out
}
