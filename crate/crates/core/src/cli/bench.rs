//! Strategy-by-network comparison table.

use std::fmt::Write as _;
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{build_strategy, parse_generator, CliError, StrategyName};
use crate::engine::{run, Budget, RunOptions, DEFAULT_PROBE_ROUNDS};
use crate::flownet::Flow;

pub fn default_networks() -> Vec<String> {
    [
        "euclidean:phi:1",
        "euclidean:8:5",
        "glued:1:phi:1",
        "glued:2:phi:1",
        "glued:3:phi:1",
    ]
    .map(String::from)
    .to_vec()
}

pub fn default_strategies() -> Vec<StrategyName> {
    vec![
        StrategyName::Euclidean,
        StrategyName::ShortestPath,
        StrategyName::MaxBottleneck,
        StrategyName::SeededRandom,
        StrategyName::Glued,
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub network: String,
    pub arcs: usize,
    pub strategy: String,
    pub clock: String,
    /// Leading exponent of the final clock.
    pub degree: u32,
    pub value: String,
    pub approx: String,
    pub steps: usize,
    pub jumps: usize,
    pub halt: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchTable {
    pub rows: Vec<BenchRow>,
    /// Glued level count → degree of the final clock under the glued
    /// strategy.
    pub exponents: Vec<(usize, u32)>,
}

/// Run every strategy on every network. Rows keep input order whatever the
/// thread scheduling.
pub fn bench_rows(
    specs: &[String],
    strategies: &[StrategyName],
    seed: u64,
    max_steps: usize,
    finish: bool,
    timing: bool,
) -> Result<BenchTable, CliError> {
    let networks = specs
        .iter()
        .map(|s| parse_generator(s).map(|g| (s.clone(), g)))
        .collect::<Result<Vec<_>, _>>()?;
    let jobs: Vec<(usize, StrategyName)> = (0..networks.len())
        .flat_map(|i| strategies.iter().map(move |&s| (i, s)))
        .collect();
    let rows: Vec<BenchRow> = jobs
        .par_iter()
        .map(|&(i, name)| {
            let (spec, g) = &networks[i];
            let n = &g.network;
            let mut row = BenchRow {
                network: spec.clone(),
                arcs: n.arc_count(),
                strategy: name
                    .to_possible_value()
                    .map_or_else(String::new, |v| v.get_name().to_string()),
                clock: "-".into(),
                degree: 0,
                value: "-".into(),
                approx: "-".into(),
                steps: 0,
                jumps: 0,
                halt: "-".into(),
                error: None,
                wall_ms: None,
            };
            let strategy =
                build_strategy(name, n, Some(&g.layout), seed, DEFAULT_PROBE_ROUNDS, finish);
            let mut strategy = match strategy {
                Ok(s) => s,
                Err(e) => {
                    row.error = Some(e.to_string());
                    return row;
                }
            };
            row.strategy = strategy.name();
            let opts = RunOptions {
                budget: Budget {
                    max_steps,
                    ..Budget::default()
                },
                debug_snapshots: false,
            };
            let started = Instant::now();
            match run(n, &Flow::zero(n), strategy.as_mut(), &opts) {
                Ok(r) => {
                    row.clock = r.final_clock.to_string();
                    row.degree = r.final_clock.degree();
                    row.approx = r.final_value.to_decimal(15);
                    row.value = r.final_value.to_string();
                    row.steps = r.steps;
                    row.jumps = r.jumps;
                    row.halt = r.halt.describe();
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            if timing {
                row.wall_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            }
            row
        })
        .collect();
    let exponents = networks
        .iter()
        .enumerate()
        .filter(|(_, (spec, _))| spec.starts_with("glued:"))
        .filter_map(|(i, (_, g))| {
            rows.iter()
                .skip(i * strategies.len())
                .take(strategies.len())
                .find(|r| r.strategy.starts_with("glued") && r.error.is_none())
                .map(|r| (g.layout.k, r.degree))
        })
        .collect();
    Ok(BenchTable { rows, exponents })
}

impl BenchTable {
    pub fn to_text(&self) -> String {
        let timed = self.rows.iter().any(|r| r.wall_ms.is_some());
        let mut out = String::new();
        let _ = write!(
            out,
            "{:<26} {:>4}  {:<20} {:<12} {:>3}  {:<18} {:>7} {:>5}  halt",
            "network", "arcs", "strategy", "clock", "deg", "value", "steps", "jumps"
        );
        if timed {
            out.push_str("  wall_ms");
        }
        out.push('\n');
        for r in &self.rows {
            let halt = r
                .error
                .as_deref()
                .map_or(r.halt.clone(), |e| format!("error: {e}"));
            let _ = write!(
                out,
                "{:<26} {:>4}  {:<20} {:<12} {:>3}  {:<18} {:>7} {:>5}  {halt}",
                r.network, r.arcs, r.strategy, r.clock, r.degree, r.approx, r.steps, r.jumps
            );
            if let Some(ms) = r.wall_ms {
                let _ = write!(out, "  {ms:.1}");
            }
            out.push('\n');
        }
        if !self.exponents.is_empty() {
            out.push_str("\nlevels k  clock degree\n");
            for (k, deg) in &self.exponents {
                let _ = writeln!(out, "{k:>8}  {deg:>12}");
            }
        }
        out
    }
}
