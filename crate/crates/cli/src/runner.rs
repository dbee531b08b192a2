//! Batch execution of experiment files: one optimizer run per
//! (instance, variant, seed) cell, fanned out over a rayon pool, with every
//! run persisted and a summary written at the end.

use std::path::{Path, PathBuf};

use codea::metrics::normalized_hv;
use codea::{AlgoConfig, ProblemDef, RankingVariant};
use rayon::prelude::*;

use crate::config::{ExperimentSpec, InstanceSpec};
use crate::persist::RunRecord;
use crate::summary::{self, SummaryRow};
use crate::CliError;

/// One unit of work in an experiment.
#[derive(Debug, Clone)]
pub struct Cell {
    pub instance: InstanceSpec,
    pub variant: RankingVariant,
    pub seed: u64,
}

impl Cell {
    /// Matches the file stem of the persisted record.
    pub fn label(&self) -> String {
        format!(
            "{}_m{}_{}_s{}",
            self.instance.problem, self.instance.m, self.variant, self.seed
        )
    }
}

/// Everything an experiment produced.
pub struct ExperimentReport {
    pub records: Vec<RunRecord>,
    /// `(cell label, error message)` per failed cell.
    pub failures: Vec<(String, String)>,
    pub rows: Vec<SummaryRow>,
    pub summary_csv: PathBuf,
    pub summary_table: String,
}

/// The full cross product, instance-major: for each instance, each variant,
/// each seed. This is also the order cells are dispatched in.
pub fn expand_cells(spec: &ExperimentSpec) -> Vec<Cell> {
    let mut cells = Vec::with_capacity(spec.num_cells());
    for instance in &spec.instances {
        for &variant in &spec.variants {
            for &seed in &spec.seeds {
                cells.push(Cell {
                    instance: instance.clone(),
                    variant,
                    seed,
                });
            }
        }
    }
    cells
}

/// Run one cell to completion and score its final population. Batch cells
/// skip the in-run hypervolume trace; the summary only needs the final score.
pub fn run_cell(cell: &Cell) -> Result<(RunRecord, Vec<Vec<f64>>), CliError> {
    let def = ProblemDef::by_id(&cell.instance.problem, cell.instance.m)?;
    let mut config = AlgoConfig::for_problem(&def, cell.instance.generations, cell.seed);
    config.variant = cell.variant;
    config.hv_every = None;
    let result = codea::run(&def, &config)?;
    let hv = normalized_hv(&result.final_population, &def)?;
    let objectives: Vec<Vec<f64>> = result
        .final_population
        .iter()
        .map(|ind| ind.objectives.clone())
        .collect();
    let record = RunRecord::new(&cell.instance.problem, cell.instance.m, &result, hv);
    Ok((record, objectives))
}

/// Execute every cell of `spec`, writing per-run records, `summary.csv`,
/// `summary.txt`, and (when cells fail) `errors.log` under `out_dir`.
/// `workers` caps the rayon pool; `None` uses the default thread count.
pub fn run_experiment(
    spec: &ExperimentSpec,
    out_dir: &Path,
    workers: Option<usize>,
) -> Result<ExperimentReport, CliError> {
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let cells = expand_cells(spec);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config {
            path: "--workers".to_string(),
            message: e.to_string(),
        })?;

    let outcomes: Vec<Result<RunRecord, (String, String)>> = pool.install(|| {
        cells
            .par_iter()
            .map(|cell| {
                let label = cell.label();
                match run_cell(cell).and_then(|(record, objectives)| {
                    record.write(out_dir, &objectives)?;
                    Ok(record)
                }) {
                    Ok(record) => {
                        eprintln!("  {label}: hv {:.4} ({:.1}s)", record.hv, record.elapsed_secs);
                        Ok(record)
                    }
                    Err(err) => Err((label, err.to_string())),
                }
            })
            .collect()
    });

    let mut records = Vec::new();
    let mut failures = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(record) => records.push(record),
            Err(failure) => failures.push(failure),
        }
    }
    if !failures.is_empty() {
        let log: String = failures
            .iter()
            .map(|(label, message)| format!("{label}: {message}\n"))
            .collect();
        let log_path = out_dir.join("errors.log");
        std::fs::write(&log_path, log).map_err(|e| CliError::io(&log_path, e))?;
    }

    let expected: Vec<(String, usize, RankingVariant)> = spec
        .instances
        .iter()
        .flat_map(|instance| {
            spec.variants
                .iter()
                .map(|&variant| (instance.problem.clone(), instance.m, variant))
        })
        .collect();
    let rows = summary::summarize_cells(&records, &expected, spec.baseline)?;
    let summary_csv = out_dir.join("summary.csv");
    std::fs::write(&summary_csv, summary::render_csv(&rows))
        .map_err(|e| CliError::io(&summary_csv, e))?;
    let summary_table = summary::render_table(&rows);
    let table_path = out_dir.join("summary.txt");
    std::fs::write(&table_path, &summary_table).map_err(|e| CliError::io(&table_path, e))?;

    Ok(ExperimentReport {
        records,
        failures,
        rows,
        summary_csv,
        summary_table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_spec() -> ExperimentSpec {
        ExperimentSpec {
            instances: vec![InstanceSpec {
                problem: "dtlz2".to_string(),
                m: 3,
                generations: 2,
            }],
            variants: vec![RankingVariant::Cod, RankingVariant::Pbi],
            seeds: vec![0, 1],
            baseline: RankingVariant::Cod,
            output_dir: None,
        }
    }

    #[test]
    fn cells_expand_instance_major() {
        let cells = expand_cells(&tiny_spec());
        let labels: Vec<String> = cells.iter().map(Cell::label).collect();
        assert_eq!(
            labels,
            vec![
                "dtlz2_m3_codea_s0",
                "dtlz2_m3_codea_s1",
                "dtlz2_m3_codea-pbi_s0",
                "dtlz2_m3_codea-pbi_s1",
            ]
        );
    }

    #[test]
    fn run_cell_is_deterministic() {
        let cell = expand_cells(&tiny_spec()).remove(0);
        let (first, objs_a) = run_cell(&cell).unwrap();
        let (second, objs_b) = run_cell(&cell).unwrap();
        assert_eq!(first.hv.to_bits(), second.hv.to_bits());
        assert_eq!(objs_a, objs_b);
        assert_eq!(first.evaluations, 91 * 3);
    }

    #[test]
    fn experiment_writes_records_and_summary() {
        let dir = tempfile::tempdir().unwrap();
        let spec = tiny_spec();
        let report = run_experiment(&spec, dir.path(), Some(2)).unwrap();
        assert!(report.failures.is_empty());
        assert_eq!(report.records.len(), 4);
        assert_eq!(report.rows.len(), 2);
        // too few seeds for a verdict
        assert!(report.rows.iter().all(|r| r.verdict.is_empty()));
        for label in ["dtlz2_m3_codea_s0", "dtlz2_m3_codea-pbi_s1"] {
            assert!(dir.path().join(format!("{label}.json")).is_file());
            assert!(dir.path().join(format!("{label}.csv")).is_file());
        }
        assert!(report.summary_csv.is_file());
        assert!(dir.path().join("summary.txt").is_file());
        assert!(!dir.path().join("errors.log").exists());

        let reloaded = summary::collect_records(dir.path()).unwrap();
        let rows = summary::summarize_cells(
            &reloaded,
            &[
                ("dtlz2".to_string(), 3, RankingVariant::Cod),
                ("dtlz2".to_string(), 3, RankingVariant::Pbi),
            ],
            spec.baseline,
        )
        .unwrap();
        assert_eq!(rows, report.rows);
    }
}
