//! Result persistence: one JSON metadata record plus one CSV of final
//! objectives per run.
//!
//! All numeric values in CSV output are printed as `{:.16e}` (17
//! significant digits), which round-trips every finite `f64` exactly; the
//! determinism guarantees of the library therefore extend to the bytes on
//! disk.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use codea::{AlgoConfig, GenerationStat, RunResult};

use crate::CliError;

/// Metadata persisted for one run. The config snapshot embeds the seed,
/// variant and inner-angle order, so a record is self-describing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub problem: String,
    pub m: usize,
    pub config: AlgoConfig,
    pub evaluations: usize,
    pub elapsed_secs: f64,
    /// Final normalized hypervolume.
    pub hv: f64,
    pub hv_history: Vec<GenerationStat>,
}

impl RunRecord {
    pub fn new(problem: &str, m: usize, result: &RunResult, hv: f64) -> Self {
        RunRecord {
            problem: problem.to_string(),
            m,
            config: result.config.clone(),
            evaluations: result.evaluations,
            elapsed_secs: result.elapsed.as_secs_f64(),
            hv,
            hv_history: result.hv_history.clone(),
        }
    }

    /// `problem_m{m}_{variant}_s{seed}` — the shared stem of the record's
    /// file pair.
    pub fn file_stem(&self) -> String {
        format!(
            "{}_m{}_{}_s{}",
            self.problem, self.m, self.config.variant, self.config.seed
        )
    }

    /// Write `<stem>.json` and `<stem>.csv` into `dir`, creating it if
    /// needed. Returns the JSON path.
    pub fn write(&self, dir: &Path, objectives: &[Vec<f64>]) -> Result<PathBuf, CliError> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let stem = self.file_stem();
        let json_path = dir.join(format!("{stem}.json"));
        let mut json = serde_json::to_string_pretty(self).expect("record serializes");
        json.push('\n');
        std::fs::write(&json_path, json).map_err(|e| CliError::io(&json_path, e))?;
        let csv_path = dir.join(format!("{stem}.csv"));
        std::fs::write(&csv_path, objectives_csv(objectives))
            .map_err(|e| CliError::io(&csv_path, e))?;
        Ok(json_path)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }
}

/// Render objective vectors as CSV with header `f_1..f_m`.
pub fn objectives_csv(objectives: &[Vec<f64>]) -> String {
    let m = objectives.first().map_or(0, Vec::len);
    let mut out = String::new();
    for j in 1..=m {
        if j > 1 {
            out.push(',');
        }
        let _ = write!(out, "f_{j}");
    }
    out.push('\n');
    for row in objectives {
        assert_eq!(row.len(), m, "ragged objective rows");
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v:.16e}");
        }
        out.push('\n');
    }
    out
}

/// Parse an objectives CSV produced by [`objectives_csv`] (header
/// `f_1..f_m`, one row of `m` numbers per individual).
pub fn read_objectives_csv(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let csv_err = |line: usize, message: String| CliError::Csv {
        path: path.display().to_string(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| csv_err(1, "empty file".into()))?;
    let fields: Vec<&str> = header.split(',').collect();
    for (j, field) in fields.iter().enumerate() {
        let expected = format!("f_{}", j + 1);
        if *field != expected {
            return Err(csv_err(
                1,
                format!("header field {} is '{field}', expected '{expected}'", j + 1),
            ));
        }
    }
    let m = fields.len();
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let values: Vec<&str> = line.split(',').collect();
        if values.len() != m {
            return Err(csv_err(
                idx + 1,
                format!("expected {m} fields, found {}", values.len()),
            ));
        }
        let row: Result<Vec<f64>, _> = values.iter().map(|v| v.parse::<f64>()).collect();
        let row =
            row.map_err(|e| csv_err(idx + 1, format!("unparseable number: {e}")))?;
        if row.iter().any(|v| !v.is_finite()) {
            return Err(csv_err(idx + 1, "non-finite objective value".into()));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(csv_err(1, "no data rows".into()));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use codea::{run, ProblemDef};

    #[test]
    fn objectives_round_trip_exactly() {
        let objectives = vec![
            vec![0.1, 2.0 / 3.0, 1e-300],
            vec![1.0, f64::MIN_POSITIVE, 12345.678901234567],
        ];
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pop.csv");
        std::fs::write(&path, objectives_csv(&objectives)).unwrap();
        let back = read_objectives_csv(&path).unwrap();
        for (a, b) in objectives.iter().zip(&back) {
            for (x, y) in a.iter().zip(b) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    #[test]
    fn csv_layout_is_stable() {
        let csv = objectives_csv(&[vec![1.0, 0.5]]);
        assert_eq!(csv, "f_1,f_2\n1.0000000000000000e0,5.0000000000000000e-1\n");
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let check = |content: &str, needle: &str| {
            let path = dir.path().join("bad.csv");
            std::fs::write(&path, content).unwrap();
            let err = read_objectives_csv(&path).unwrap_err().to_string();
            assert!(err.contains(needle), "missing '{needle}' in: {err}");
        };
        check("x,y\n1,2\n", "expected 'f_1'");
        check("f_1,f_2\n1.0\n", "expected 2 fields");
        check("f_1,f_2\n1.0,zebra\n", "unparseable");
        check("f_1,f_2\n1.0,inf\n", "non-finite");
        check("f_1,f_2\n", "no data rows");
        check("f_1,f_2\n1,2\n3,nan\n", "bad.csv:3");
    }

    #[test]
    fn record_files_round_trip() {
        let problem = ProblemDef::dtlz(2, 3).unwrap();
        let cfg = codea::AlgoConfig::for_problem(&problem, 2, 11);
        let result = run(&problem, &cfg).unwrap();
        let hv = codea::metrics::normalized_hv(&result.final_population, &problem).unwrap();
        let record = RunRecord::new("dtlz2", 3, &result, hv);
        assert_eq!(record.file_stem(), "dtlz2_m3_codea_s11");

        let dir = tempfile::tempdir().unwrap();
        let objectives: Vec<Vec<f64>> = result
            .final_population
            .iter()
            .map(|i| i.objectives.clone())
            .collect();
        let json_path = record.write(dir.path(), &objectives).unwrap();
        let loaded = RunRecord::load(&json_path).unwrap();
        assert_eq!(loaded.config, cfg);
        assert_eq!(loaded.evaluations, 91 * 3);
        assert_eq!(loaded.hv.to_bits(), hv.to_bits());

        // re-scoring the persisted objectives reproduces the stored hv
        let csv_path = dir.path().join("dtlz2_m3_codea_s11.csv");
        let back = read_objectives_csv(&csv_path).unwrap();
        let rescored = codea::metrics::normalized_hv_objectives(&back, &problem).unwrap();
        assert_eq!(rescored.to_bits(), hv.to_bits());
    }
}
