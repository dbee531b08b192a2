//! Experiment summaries: per-cell median/IQR of normalized hypervolume and
//! Wilcoxon verdicts against a baseline variant, rendered as a CSV and an
//! aligned text table.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use codea::metrics::{median_iqr, wilcoxon_rank_sum};
use codea::RankingVariant;

use crate::persist::RunRecord;
use crate::CliError;

/// Verdicts need at least this many observations per sample.
const MIN_SEEDS_FOR_VERDICT: usize = 5;

/// One line of the summary table.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub problem: String,
    pub m: usize,
    pub variant: RankingVariant,
    /// `None` when no runs for the cell were found.
    pub median_hv: Option<f64>,
    pub iqr: Option<f64>,
    /// `+`/`-`/`≈` against the baseline, `absent` for a missing cell, empty
    /// when fewer than five seeds are available on either side.
    pub verdict: String,
}

type CellKey = (String, usize, RankingVariant);

fn variant_order(v: RankingVariant) -> usize {
    RankingVariant::ALL
        .iter()
        .position(|&x| x == v)
        .expect("variant is one of ALL")
}

/// Group records by cell, failing on duplicate (cell, seed) pairs; each
/// cell's scores end up ordered by seed.
fn group(records: &[RunRecord]) -> Result<BTreeMap<CellKey, Vec<(u64, f64)>>, CliError> {
    let mut cells: BTreeMap<CellKey, Vec<(u64, f64)>> = BTreeMap::new();
    for record in records {
        let key = (record.problem.clone(), record.m, record.config.variant);
        let cell = cells.entry(key).or_default();
        if cell.iter().any(|&(seed, _)| seed == record.config.seed) {
            return Err(CliError::Config {
                path: format!(
                    "{}_m{}_{}",
                    record.problem, record.m, record.config.variant
                ),
                message: format!("duplicate record for seed {}", record.config.seed),
            });
        }
        cell.push((record.config.seed, record.hv));
    }
    for scores in cells.values_mut() {
        scores.sort_by_key(|&(seed, _)| seed);
    }
    Ok(cells)
}

/// Build summary rows for an explicit list of expected cells (row order is
/// preserved; cells without records get the `absent` marker).
pub fn summarize_cells(
    records: &[RunRecord],
    expected: &[CellKey],
    baseline: RankingVariant,
) -> Result<Vec<SummaryRow>, CliError> {
    let cells = group(records)?;
    let mut rows = Vec::with_capacity(expected.len());
    for key in expected {
        let (problem, m, variant) = key;
        let scores: Vec<f64> = cells
            .get(key)
            .map(|s| s.iter().map(|&(_, hv)| hv).collect())
            .unwrap_or_default();
        let baseline_scores: Vec<f64> = cells
            .get(&(problem.clone(), *m, baseline))
            .map(|s| s.iter().map(|&(_, hv)| hv).collect())
            .unwrap_or_default();
        rows.push(build_row(
            problem,
            *m,
            *variant,
            &scores,
            &baseline_scores,
        ));
    }
    Ok(rows)
}

/// Summarize every cell found in the records, ordered by problem, m, then
/// variant (in declaration order).
pub fn summarize(
    records: &[RunRecord],
    baseline: RankingVariant,
) -> Result<Vec<SummaryRow>, CliError> {
    let cells = group(records)?;
    let mut keys: Vec<CellKey> = cells.keys().cloned().collect();
    keys.sort_by(|a, b| {
        (&a.0, a.1, variant_order(a.2)).cmp(&(&b.0, b.1, variant_order(b.2)))
    });
    summarize_cells(records, &keys, baseline)
}

fn build_row(
    problem: &str,
    m: usize,
    variant: RankingVariant,
    scores: &[f64],
    baseline_scores: &[f64],
) -> SummaryRow {
    if scores.is_empty() {
        return SummaryRow {
            problem: problem.to_string(),
            m,
            variant,
            median_hv: None,
            iqr: None,
            verdict: "absent".to_string(),
        };
    }
    let (median, iqr) = median_iqr(scores);
    let verdict = if scores.len() >= MIN_SEEDS_FOR_VERDICT
        && baseline_scores.len() >= MIN_SEEDS_FOR_VERDICT
    {
        let (_, _, verdict) = wilcoxon_rank_sum(scores, baseline_scores);
        verdict.symbol().to_string()
    } else {
        String::new()
    };
    SummaryRow {
        problem: problem.to_string(),
        m,
        variant,
        median_hv: Some(median),
        iqr: Some(iqr),
        verdict,
    }
}

/// Load every `*.json` run record under `dir`, in filename order.
pub fn collect_records(dir: &Path) -> Result<Vec<RunRecord>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::io(dir, e))?.path();
        if path.extension().is_some_and(|ext| ext == "json") {
            paths.push(path);
        }
    }
    paths.sort();
    paths.iter().map(|p| RunRecord::load(p)).collect()
}

/// Render rows as the summary CSV (`problem,m,variant,median_hv,iqr,verdict`
/// header, numbers at full precision).
pub fn render_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from("problem,m,variant,median_hv,iqr,verdict\n");
    for row in rows {
        let median = row.median_hv.map_or(String::new(), |v| format!("{v:.16e}"));
        let iqr = row.iqr.map_or(String::new(), |v| format!("{v:.16e}"));
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            row.problem, row.m, row.variant, median, iqr, row.verdict
        );
    }
    out
}

/// Render rows as an aligned text table with the compact `median (iqr)`
/// presentation.
pub fn render_table(rows: &[SummaryRow]) -> String {
    let header = ["problem", "m", "variant", "median hv (iqr)", "vs baseline"];
    let mut grid: Vec<[String; 5]> = vec![header.map(str::to_string)];
    for row in rows {
        let score = match (row.median_hv, row.iqr) {
            (Some(median), Some(iqr)) => format!("{median:.4e} ({iqr:.2e})"),
            _ => "absent".to_string(),
        };
        grid.push([
            row.problem.clone(),
            row.m.to_string(),
            row.variant.to_string(),
            score,
            row.verdict.clone(),
        ]);
    }
    let mut widths = [0usize; 5];
    for line in &grid {
        for (w, cell) in widths.iter_mut().zip(line) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for line in &grid {
        let mut rendered = String::new();
        for (i, (cell, width)) in line.iter().zip(widths).enumerate() {
            if i > 0 {
                rendered.push_str("  ");
            }
            let _ = write!(rendered, "{cell:<width$}");
        }
        out.push_str(rendered.trim_end());
        out.push('\n');
    }
    out
}
