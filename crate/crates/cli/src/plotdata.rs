//! Conversion of objective CSVs into plot-ready tables: scatter columns for
//! up to three objectives, long (parallel-coordinates) format beyond that.

use std::fmt::Write as _;
use std::path::Path;

use crate::persist::read_objectives_csv;
use crate::CliError;

/// Render a population's objectives for plotting. With `m <= 3` the output is
/// a scatter table (`x,y` or `x,y,z`); otherwise each value becomes one row of
/// `id,objective,value`, where `id` is the 0-based point index and `objective`
/// the 1-based objective index.
pub fn plot_csv(objectives: &[Vec<f64>]) -> String {
    assert!(!objectives.is_empty(), "plot data needs at least one point");
    let m = objectives[0].len();
    let mut out = String::new();
    if m <= 3 {
        out.push_str(["x", "x,y", "x,y,z"][m - 1]);
        out.push('\n');
        for point in objectives {
            let row: Vec<String> = point.iter().map(|v| format!("{v:.16e}")).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
    } else {
        out.push_str("id,objective,value\n");
        for (id, point) in objectives.iter().enumerate() {
            for (j, value) in point.iter().enumerate() {
                let _ = writeln!(out, "{id},{},{value:.16e}", j + 1);
            }
        }
    }
    out
}

/// Read an objectives CSV and convert it; `expected_m` cross-checks the
/// number of objectives found in the header.
pub fn convert(input: &Path, expected_m: Option<usize>) -> Result<String, CliError> {
    let objectives = read_objectives_csv(input)?;
    let m = objectives[0].len();
    if let Some(expected) = expected_m {
        if expected != m {
            return Err(CliError::Config {
                path: input.display().to_string(),
                message: format!("file has {m} objectives, but --m {expected} was given"),
            });
        }
    }
    Ok(plot_csv(&objectives))
}
