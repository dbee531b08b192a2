//! The acceptance gate. Ten checks covering reference geometry goldens,
//! scalarization identities, sorting and hypervolume oracles, desk-scale
//! optimization quality, determinism, and the evaluation budget. Each check
//! prints one `[PASS]`/`[FAIL]` line (visible with `--nocapture` or on
//! failure).

use std::time::{Duration, Instant};

use codea::metrics::{
    hypervolume_exact, hypervolume_mc, median_iqr, normalized_hv,
};
use codea::refgeom::alpha_beta;
use codea::scalarize::{d1, d2, g_cod, g_nbi};
use codea::selection::nondominated_sort;
use codea::{
    dominates, AlgoConfig, Individual, InnerAngleOrder, Layer, ProblemDef, RankingVariant,
    ReferenceSet, RngStream,
};
use codea_cli::config::ExperimentSpec;
use codea_cli::persist::objectives_csv;
use codea_cli::runner;
use rayon::prelude::*;

fn verdict(criterion: u32, name: &str, pass: bool, details: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {criterion:02}: {name} — {details}");
    assert!(pass, "criterion {criterion:02} ({name}): {details}");
}

#[test]
fn criterion_01_reference_set_sizes() {
    let start = Instant::now();
    let expected = [(3usize, 91usize), (5, 210), (8, 156), (10, 275), (15, 135)];
    let sizes: Vec<usize> = expected
        .iter()
        .map(|&(m, _)| ReferenceSet::for_objectives(m).unwrap().len())
        .collect();
    let elapsed = start.elapsed();
    let sizes_ok = sizes
        .iter()
        .zip(&expected)
        .all(|(&got, &(_, want))| got == want);
    let pass = sizes_ok && elapsed < Duration::from_secs(1);
    verdict(
        1,
        "reference set sizes",
        pass,
        &format!("m=3/5/8/10/15 -> {sizes:?}, built in {elapsed:.2?}"),
    );
}

#[test]
fn criterion_02_rotation_factor_goldens() {
    let set = ReferenceSet::for_objectives(3).unwrap();
    let r_at = |target: &[f64]| -> f64 {
        set.points
            .iter()
            .find(|p| {
                p.w.iter()
                    .zip(target)
                    .all(|(&a, &b)| (a - b).abs() < 1e-12)
            })
            .expect("lattice point present")
            .r
            .expect("boundary point carries r")
    };
    let vertex = r_at(&[1.0, 0.0, 0.0]);
    let centroid = r_at(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
    let edge_mid = r_at(&[0.5, 0.5, 0.0]);
    let goldens_ok = vertex.to_bits() == 0.5f64.to_bits()
        && edge_mid.to_bits() == 1.0f64.to_bits()
        && (centroid - 2.0 / 3.0).abs() <= f64::EPSILON;

    // every boundary point of every supported set obeys 0 <= alpha <= 1 and
    // r = (alpha + beta) / 2; inner points carry no rotation factor
    let mut property_ok = true;
    for m in [3usize, 5, 8, 10, 15] {
        for point in &ReferenceSet::for_objectives(m).unwrap().points {
            match point.layer {
                Layer::Boundary => {
                    let (alpha, beta) = alpha_beta(&point.w);
                    let r = point.r.expect("boundary r");
                    property_ok &= (0.0..=1.0).contains(&alpha)
                        && r.to_bits() == ((alpha + beta) / 2.0).to_bits();
                }
                Layer::Inner => property_ok &= point.r.is_none(),
            }
        }
    }
    verdict(
        2,
        "rotation factor goldens",
        goldens_ok && property_ok,
        &format!("r(vertex)={vertex}, r(centroid)={centroid}, r(edge-mid)={edge_mid}"),
    );
}

#[test]
fn criterion_03_scalarization_identities() {
    let mut rng = RngStream::new(3);
    let mut pythagoras_ok = true;
    let mut shift_ok = true;
    let mut cod_ok = true;
    for m in [2usize, 3, 5] {
        for _ in 0..10_000 {
            // Pythagoras on random real-valued pairs
            let f: Vec<f64> = (0..m).map(|_| rng.uniform(-1.0, 2.0)).collect();
            let mut w: Vec<f64> = (0..m).map(|_| rng.uniform(0.0, 1.0)).collect();
            let bump = rng.below(m);
            w[bump] += 0.5; // keep the direction away from zero norm
            let a = d1(&f, &w);
            let b = d2(&f, &w);
            let norm2: f64 = f.iter().map(|v| v * v).sum();
            pythagoras_ok &= (a * a + b * b - norm2).abs() <= 1e-9 * norm2.max(1e-12);

            // translation along the all-ones direction, exact on a dyadic
            // grid where every intermediate sum is representable
            let fd: Vec<f64> = (0..m).map(|_| rng.below(2049) as f64 / 1024.0).collect();
            let wd: Vec<f64> = (0..m).map(|_| rng.below(1025) as f64 / 1024.0).collect();
            let c = (rng.below(2049) as f64 - 1024.0) / 1024.0;
            let shifted: Vec<f64> = fd.iter().map(|v| v + c).collect();
            shift_ok &=
                g_nbi(&shifted, &wd).to_bits() == (g_nbi(&fd, &wd) + c).to_bits();

            // the CoD penalty decomposes exactly and never helps a point
            let r = rng.uniform(0.0, 1.0);
            let k = rng.uniform(0.0, 8.0);
            let penalty = r * k * d2(&f, &w);
            cod_ok &= g_cod(&f, &w, r, k).to_bits() == (g_nbi(&f, &w) + penalty).to_bits()
                && penalty >= 0.0;
        }
    }
    verdict(
        3,
        "scalarization identities",
        pythagoras_ok && shift_ok && cod_ok,
        &format!(
            "10^4 pairs per m in {{2,3,5}}: pythagoras={pythagoras_ok}, shift={shift_ok}, cod={cod_ok}"
        ),
    );
}

/// O(N^2 m) oracle: peel non-dominated layers directly from the definition.
fn brute_force_fronts(population: &[Individual]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..population.len()).collect();
    let mut fronts = Vec::new();
    while !remaining.is_empty() {
        let front: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| {
                remaining.iter().all(|&j| {
                    j == i || !dominates(&population[j].objectives, &population[i].objectives)
                })
            })
            .collect();
        remaining.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

#[test]
fn criterion_04_nondominated_sort_matches_brute_force() {
    let start = Instant::now();
    let mut rng = RngStream::new(4);
    let mut mismatches = 0usize;
    for case in 0..200 {
        let n = 2 + rng.below(63);
        let m = 2 + rng.below(4);
        let population: Vec<Individual> = (0..n)
            .map(|_| {
                let objectives: Vec<f64> = (0..m)
                    .map(|_| {
                        if case % 3 == 0 {
                            // coarse grid to force ties and duplicates
                            rng.below(4) as f64
                        } else {
                            rng.uniform(0.0, 1.0)
                        }
                    })
                    .collect();
                Individual::new(Vec::new(), objectives)
            })
            .collect();
        let mut fronts = nondominated_sort(&population);
        let mut oracle = brute_force_fronts(&population);
        for front in fronts.iter_mut().chain(oracle.iter_mut()) {
            front.sort_unstable();
        }
        if fronts != oracle {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches == 0 && elapsed < Duration::from_secs(10);
    verdict(
        4,
        "non-dominated sorting oracle",
        pass,
        &format!("200 instances, {mismatches} mismatches, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_05_hypervolume_oracles() {
    let exact = hypervolume_exact(&[vec![0.25, 0.75], vec![0.75, 0.25]], &[1.1, 1.1]);
    let exact_ok = (exact - 0.4725).abs() < 1e-12;

    let mut rng = RngStream::new(5);
    let mut within = 0usize;
    for _ in 0..50 {
        let n = 1 + rng.below(10);
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..3).map(|_| rng.uniform(0.0, 1.0)).collect())
            .collect();
        let reference = [1.1, 1.1, 1.1];
        let truth = hypervolume_exact(&points, &reference);
        let estimate = hypervolume_mc(&points, &reference, 100_000, &mut rng);
        if (estimate.value - truth).abs() <= 4.0 * estimate.stderr.max(1e-12) {
            within += 1;
        }
    }
    let mc_ok = within >= 48; // >= 95% of 50
    verdict(
        5,
        "hypervolume oracles",
        exact_ok && mc_ok,
        &format!("exact 2d = {exact} (want 0.4725), 4-sigma coverage {within}/50"),
    );
}

/// Run one desk-scale configuration and return (normalized hv, wall seconds).
fn desk_run(problem: &str, m: usize, generations: usize, seed: u64) -> (f64, f64) {
    let def = ProblemDef::by_id(problem, m).unwrap();
    let config = AlgoConfig::for_problem(&def, generations, seed);
    let result = codea::run(&def, &config).unwrap();
    let hv = normalized_hv(&result.final_population, &def).unwrap();
    (hv, result.elapsed.as_secs_f64())
}

#[test]
fn criterion_06_dtlz2_m3_quality() {
    let outcomes: Vec<(f64, f64)> = (0..5u64)
        .into_par_iter()
        .map(|seed| desk_run("dtlz2", 3, 250, seed))
        .collect();
    let scores: Vec<f64> = outcomes.iter().map(|&(hv, _)| hv).collect();
    let slowest = outcomes.iter().map(|&(_, s)| s).fold(0.0, f64::max);
    let (median, _) = median_iqr(&scores);
    let pass = median >= 0.545 && slowest < 60.0;
    verdict(
        6,
        "dtlz2 m=3 desk-scale quality",
        pass,
        &format!("median hv {median:.4} (need >= 0.545), slowest run {slowest:.1}s"),
    );
}

#[test]
fn criterion_07_dtlz1_m3_quality() {
    let outcomes: Vec<(f64, f64)> = (0..5u64)
        .into_par_iter()
        .map(|seed| desk_run("dtlz1", 3, 400, seed))
        .collect();
    let scores: Vec<f64> = outcomes.iter().map(|&(hv, _)| hv).collect();
    let slowest = outcomes.iter().map(|&(_, s)| s).fold(0.0, f64::max);
    let (median, _) = median_iqr(&scores);
    let pass = median >= 0.82 && slowest < 90.0;
    verdict(
        7,
        "dtlz1 m=3 desk-scale quality",
        pass,
        &format!("median hv {median:.4} (need >= 0.82), slowest run {slowest:.1}s"),
    );
}

#[test]
fn criterion_08_ablation_direction_dtlz2_m8() {
    let cells: Vec<(RankingVariant, u64)> = [RankingVariant::Cod, RankingVariant::Pbi]
        .iter()
        .flat_map(|&variant| (0..5u64).map(move |seed| (variant, seed)))
        .collect();
    let outcomes: Vec<(RankingVariant, f64, InnerAngleOrder)> = cells
        .par_iter()
        .map(|&(variant, seed)| {
            let def = ProblemDef::by_id("dtlz2", 8).unwrap();
            let mut config = AlgoConfig::for_problem(&def, 2000, seed);
            config.variant = variant;
            assert_eq!(config.population_size, 156);
            let result = codea::run(&def, &config).unwrap();
            let hv = normalized_hv(&result.final_population, &def).unwrap();
            (variant, hv, result.config.inner_angle_order)
        })
        .collect();
    let scores = |variant: RankingVariant| -> Vec<f64> {
        outcomes
            .iter()
            .filter(|&&(v, _, _)| v == variant)
            .map(|&(_, hv, _)| hv)
            .collect()
    };
    let (cod_median, _) = median_iqr(&scores(RankingVariant::Cod));
    let (pbi_median, _) = median_iqr(&scores(RankingVariant::Pbi));
    let order_recorded = outcomes
        .iter()
        .all(|&(_, _, order)| order == InnerAngleOrder::Max);
    let pass = cod_median >= pbi_median && order_recorded;
    verdict(
        8,
        "dtlz2 m=8 ablation direction",
        pass,
        &format!(
            "codea median {cod_median:.4} vs codea-pbi {pbi_median:.4}, inner angle order recorded: {order_recorded}"
        ),
    );
}

#[test]
fn criterion_09_determinism() {
    let run_csv = || {
        let def = ProblemDef::by_id("dtlz2", 3).unwrap();
        let config = AlgoConfig::for_problem(&def, 30, 7);
        let result = codea::run(&def, &config).unwrap();
        let objectives: Vec<Vec<f64>> = result
            .final_population
            .iter()
            .map(|ind| ind.objectives.clone())
            .collect();
        objectives_csv(&objectives)
    };
    let run_identical = run_csv() == run_csv();

    let toml = "problems = [\"dtlz2:3\"]\n\
                variants = [\"codea\", \"codea-nbi\"]\n\
                seeds = 2\n\n\
                [gens]\n\
                \"dtlz2:3\" = 3\n";
    let spec = ExperimentSpec::parse(toml, "inline").unwrap();
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for dir in &dirs {
        let report = runner::run_experiment(&spec, dir.path(), Some(2)).unwrap();
        assert!(report.failures.is_empty());
    }
    let read = |dir: &tempfile::TempDir, name: &str| {
        std::fs::read(dir.path().join(name)).unwrap()
    };
    let summary_identical = read(&dirs[0], "summary.csv") == read(&dirs[1], "summary.csv");
    let cell_identical =
        read(&dirs[0], "dtlz2_m3_codea-nbi_s1.csv") == read(&dirs[1], "dtlz2_m3_codea-nbi_s1.csv");
    verdict(
        9,
        "determinism",
        run_identical && summary_identical && cell_identical,
        &format!(
            "repeat run csv identical: {run_identical}, summary identical: {summary_identical}, cell csv identical: {cell_identical}"
        ),
    );
}

#[test]
fn criterion_10_evaluation_budget() {
    let cases = [
        ("dtlz2", 3usize, 10usize),
        ("dtlz1", 3, 5),
        ("wfg3", 5, 2),
        ("cdtlz2", 8, 1),
    ];
    let mut audits = Vec::new();
    let mut pass = true;
    for (problem, m, generations) in cases {
        let def = ProblemDef::by_id(problem, m).unwrap();
        let config = AlgoConfig::for_problem(&def, generations, 0);
        let result = codea::run(&def, &config).unwrap();
        let expected = config.population_size * (generations + 1);
        pass &= result.evaluations == expected;
        audits.push(format!(
            "{problem} m={m}: {} (want {expected})",
            result.evaluations
        ));
    }
    verdict(10, "evaluation budget audit", pass, &audits.join(", "));
}
