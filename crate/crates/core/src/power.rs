//! Monte Carlo estimation of the size and power of the bootstrap test.
//!
//! Cell `c` of a study draws its replications from `seed.child(c)`;
//! replication `j` takes its data from `.child(j).child(0)` and its bootstrap
//! streams from `.child(j).child(1)`. Results are merged by index, so neither
//! the thread count nor the schedule affects the table.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::gof::{self, MIN_TEST_SIZE};
use crate::rng::RngStream;

/// A cell aborts when more than this fraction of its replications fail.
pub const MAX_FAILURE_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub distribution: DistributionSpec,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerStudyConfig {
    pub cells: Vec<Cell>,
    pub replications: usize,
    pub bootstrap: usize,
    pub level: f64,
    pub seed: u64,
}

fn invalid(name: &'static str, reason: String) -> Error {
    Error::Parameter { name, reason }
}

impl PowerStudyConfig {
    pub fn new(cells: Vec<Cell>, replications: usize, bootstrap: usize, level: f64, seed: u64) -> Result<Self> {
        let config = Self {
            cells,
            replications,
            bootstrap,
            level,
            seed,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(invalid("replications", "must be at least 1".into()));
        }
        if self.bootstrap == 0 {
            return Err(invalid("bootstrap", "must be at least 1".into()));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(invalid("level", format!("must lie in (0, 1), got {}", self.level)));
        }
        if let Some(cell) = self.cells.iter().find(|c| c.n < MIN_TEST_SIZE) {
            return Err(invalid(
                "n",
                format!("cell {} has n = {}, the minimum is {MIN_TEST_SIZE}", cell.distribution, cell.n),
            ));
        }
        Ok(())
    }
}

/// A grid block of a study file: every distribution crossed with every size.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub distributions: Vec<DistributionSpec>,
    pub sizes: Vec<usize>,
}

/// On-disk form of a study. Grid blocks expand first, in order, followed by
/// the individual cells.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerStudyFile {
    pub seed: u64,
    pub replications: usize,
    pub bootstrap: usize,
    pub level: f64,
    #[serde(default)]
    pub grid: Vec<GridSpec>,
    #[serde(default)]
    pub cell: Vec<Cell>,
}

impl PowerStudyFile {
    pub fn into_config(self) -> Result<PowerStudyConfig> {
        let mut cells: Vec<Cell> = self
            .grid
            .iter()
            .flat_map(|g| {
                g.sizes.iter().flat_map(move |&n| {
                    g.distributions.iter().map(move |&distribution| Cell { distribution, n })
                })
            })
            .collect();
        cells.extend(self.cell);
        PowerStudyConfig::new(cells, self.replications, self.bootstrap, self.level, self.seed)
    }
}

/// Outcome of one cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerEntry {
    pub distribution: DistributionSpec,
    pub label: String,
    pub n: usize,
    /// Rejections over completed replications.
    pub proportion: f64,
    /// `sqrt(p (1 - p) / completed)`.
    pub mc_se: f64,
    pub rejections: usize,
    pub completed: usize,
    /// Replications that failed and were excluded.
    pub errors: usize,
}

/// Rejection rate of the level-`level` test on `replications` samples of size `n` from `spec`.
pub fn power_cell(
    spec: &DistributionSpec,
    n: usize,
    replications: usize,
    bootstrap: usize,
    level: f64,
    stream: &RngStream,
) -> Result<PowerEntry> {
    PowerStudyConfig::new(vec![Cell { distribution: *spec, n }], replications, bootstrap, level, 0)?;

    let outcomes: Vec<Result<bool>> = (0..replications as u64)
        .into_par_iter()
        .map(|j| {
            let replication = stream.child(j);
            let sample = spec.sample(n, &replication.child(0))?;
            let result = gof::bootstrap_test(&sample, bootstrap, &replication.child(1), &[])?;
            Ok(result.p_value <= level)
        })
        .collect();

    let mut rejections = 0;
    let mut completed = 0;
    let mut last_error = None;
    for outcome in outcomes {
        match outcome {
            Ok(reject) => {
                completed += 1;
                rejections += usize::from(reject);
            }
            Err(e) => last_error = Some(e),
        }
    }
    let errors = replications - completed;
    if completed == 0 || errors as f64 > MAX_FAILURE_FRACTION * replications as f64 {
        return Err(Error::CellAborted {
            label: spec.label(),
            n,
            failed: errors,
            replications,
            last: last_error.map(|e| e.to_string()).unwrap_or_default(),
        });
    }
    let proportion = rejections as f64 / completed as f64;
    Ok(PowerEntry {
        distribution: *spec,
        label: spec.label(),
        n,
        proportion,
        mc_se: (proportion * (1.0 - proportion) / completed as f64).sqrt(),
        rejections,
        completed,
        errors,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerTable {
    pub replications: usize,
    pub bootstrap: usize,
    pub level: f64,
    pub seed: u64,
    /// One entry per configured cell, in configuration order.
    pub cells: Vec<PowerEntry>,
}

/// Runs every cell of `config`. `progress` is called as each cell finishes,
/// possibly from a worker thread.
pub fn power_table(config: &PowerStudyConfig, progress: Option<&(dyn Fn(&PowerEntry) + Sync)>) -> Result<PowerTable> {
    config.validate()?;
    let master = RngStream::from_seed(config.seed);
    let cells = config
        .cells
        .par_iter()
        .enumerate()
        .map(|(index, cell)| {
            let entry = power_cell(
                &cell.distribution,
                cell.n,
                config.replications,
                config.bootstrap,
                config.level,
                &master.child(index as u64),
            )?;
            if let Some(report) = progress {
                report(&entry);
            }
            Ok(entry)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PowerTable {
        replications: config.replications,
        bootstrap: config.bootstrap,
        level: config.level,
        seed: config.seed,
        cells,
    })
}

impl PowerTable {
    pub fn get(&self, label: &str, n: usize) -> Option<&PowerEntry> {
        self.cells.iter().find(|c| c.label == label && c.n == n)
    }

    /// Column labels in order of first appearance.
    pub fn labels(&self) -> Vec<&str> {
        let mut labels: Vec<&str> = Vec::new();
        for cell in &self.cells {
            if !labels.contains(&cell.label.as_str()) {
                labels.push(&cell.label);
            }
        }
        labels
    }

    /// Sample sizes, ascending.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.cells.iter().map(|c| c.n).collect();
        sizes.sort_unstable();
        sizes.dedup();
        sizes
    }

    /// Rows keyed by `n`, one column of rejection proportions per
    /// distribution; cells absent from the study are left empty.
    pub fn write_csv<W: std::io::Write>(&self, writer: W) -> Result<()> {
        let labels = self.labels();
        let mut wtr = csv::Writer::from_writer(writer);
        let io = |e: csv::Error| Error::Io(e.to_string());
        let mut header = vec!["n".to_string()];
        header.extend(labels.iter().map(|l| l.to_string()));
        wtr.write_record(&header).map_err(io)?;
        for n in self.sizes() {
            let mut row = vec![n.to_string()];
            row.extend(
                labels
                    .iter()
                    .map(|l| self.get(l, n).map(|e| e.proportion.to_string()).unwrap_or_default()),
            );
            wtr.write_record(&row).map_err(io)?;
        }
        wtr.flush()?;
        Ok(())
    }
}
