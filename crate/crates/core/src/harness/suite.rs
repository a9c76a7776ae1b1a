//! Suite execution, metric aggregation and CSV reporting.
//!
//! Records carry values already quantized to their serialized precision
//! (milliseconds for time, six decimals for landmark means), so aggregating
//! parsed-back CSV records reproduces the in-memory summary exactly.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use super::bundle::{load_suite_bundle, scan_suite, LoadedBundle};
use super::HarnessError;
use crate::extract::Extractor;
use crate::recognize::{recognize, Heuristic, RecognitionConfig};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub extractors: Vec<Extractor>,
    pub heuristics: Vec<Heuristic>,
    pub thetas: Vec<u8>,
    /// Write 0.000000 for every time field; lets output files be compared
    /// byte-for-byte across runs.
    pub zero_time: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            extractors: Extractor::ALL.to_vec(),
            heuristics: vec![Heuristic::GoalCompletion, Heuristic::Uniqueness],
            thetas: vec![0, 10],
            zero_time: false,
        }
    }
}

/// One recognition run: a bundle under one (extractor, heuristic, theta).
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRecord {
    pub bundle: String,
    pub domain: String,
    pub observability: u8,
    pub noisy: bool,
    pub extractor: Extractor,
    pub heuristic: Heuristic,
    pub theta: u8,
    pub time_s: f64,
    pub correct: bool,
    pub spread: usize,
    pub landmarks_mean: f64,
}

/// Aggregation key: one summary row per value combination.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupKey {
    pub domain: String,
    pub observability: u8,
    pub noisy: bool,
    pub extractor: Extractor,
    pub heuristic: Heuristic,
    pub theta: u8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteRow {
    pub key: GroupKey,
    pub mean_time_s: f64,
    pub accuracy_pct: f64,
    pub mean_spread: f64,
    pub acc_spread_ratio: f64,
    /// Mean landmark count relative to the Exhaust rows of the same group;
    /// absent when Exhaust was not part of the run.
    pub extraction_pct: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SuiteFailure {
    pub bundle: String,
    pub error: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub records: Vec<MetricsRecord>,
    pub rows: Vec<SuiteRow>,
    pub failures: Vec<SuiteFailure>,
}

fn quantize(value: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (value * scale).round() / scale
}

/// Runs every (bundle x extractor x heuristic x theta) combination under
/// `root` and aggregates the results. Failing bundles are reported and
/// excluded from the aggregates.
pub fn run_suite(root: &Path, config: &BenchConfig) -> Result<SuiteReport, HarnessError> {
    let bundles = scan_suite(root)?;
    let outcomes: Vec<Result<Vec<MetricsRecord>, SuiteFailure>> = bundles
        .par_iter()
        .map(|(dir, id)| {
            let bundle = load_suite_bundle(dir, id)
                .map_err(|e| SuiteFailure { bundle: id.clone(), error: e.to_string() })?;
            Ok(run_bundle(&bundle, config))
        })
        .collect();

    let mut records = Vec::new();
    let mut failures = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(mut recs) => records.append(&mut recs),
            Err(failure) => failures.push(failure),
        }
    }
    records.sort_by(|a, b| {
        (&a.bundle, a.extractor, a.heuristic, a.theta)
            .cmp(&(&b.bundle, b.extractor, b.heuristic, b.theta))
    });
    let rows = aggregate_records(&records);
    Ok(SuiteReport { records, rows, failures })
}

/// All metric records for one loaded bundle.
pub fn run_bundle(bundle: &LoadedBundle, config: &BenchConfig) -> Vec<MetricsRecord> {
    let mut records = Vec::new();
    for &extractor in &config.extractors {
        for &heuristic in &config.heuristics {
            for &theta in &config.thetas {
                let rc = RecognitionConfig::new(heuristic, theta, extractor);
                let result = recognize(&bundle.problem, &rc);
                records.push(MetricsRecord {
                    bundle: bundle.meta.id.clone(),
                    domain: bundle.meta.domain.clone(),
                    observability: bundle.meta.observability,
                    noisy: bundle.meta.noisy,
                    extractor,
                    heuristic,
                    theta,
                    time_s: if config.zero_time { 0.0 } else { result.elapsed_seconds() },
                    correct: result.is_recognized(bundle.problem.real_goal),
                    spread: result.recognized.len(),
                    landmarks_mean: quantize(result.mean_landmark_count(), 6),
                });
            }
        }
    }
    records
}

/// Groups records and computes the per-group aggregates. Records arrive
/// sorted by bundle id, so each group's sums run in a fixed order and the
/// report is identical regardless of how many workers produced the records.
pub fn aggregate_records(records: &[MetricsRecord]) -> Vec<SuiteRow> {
    let mut groups: BTreeMap<GroupKey, Vec<&MetricsRecord>> = BTreeMap::new();
    for record in records {
        let key = GroupKey {
            domain: record.domain.clone(),
            observability: record.observability,
            noisy: record.noisy,
            extractor: record.extractor,
            heuristic: record.heuristic,
            theta: record.theta,
        };
        groups.entry(key).or_default().push(record);
    }

    let mean_landmarks: BTreeMap<&GroupKey, f64> = groups
        .iter()
        .map(|(key, recs)| {
            (key, recs.iter().map(|r| r.landmarks_mean).sum::<f64>() / recs.len() as f64)
        })
        .collect();

    groups
        .iter()
        .map(|(key, recs)| {
            let n = recs.len() as f64;
            let mean_time_s = recs.iter().map(|r| r.time_s).sum::<f64>() / n;
            let accuracy_pct =
                100.0 * recs.iter().filter(|r| r.correct).count() as f64 / n;
            let mean_spread = recs.iter().map(|r| r.spread as f64).sum::<f64>() / n;
            let acc_spread_ratio = accuracy_pct / mean_spread;
            // extraction percentage is relative to Exhaust on the same slice
            let exhaust_key = GroupKey { extractor: Extractor::Exhaust, ..key.clone() };
            let extraction_pct = mean_landmarks.get(&exhaust_key).and_then(|&exhaust_mean| {
                (exhaust_mean > 0.0).then(|| 100.0 * mean_landmarks[key] / exhaust_mean)
            });
            SuiteRow {
                key: key.clone(),
                mean_time_s,
                accuracy_pct,
                mean_spread,
                acc_spread_ratio,
                extraction_pct,
            }
        })
        .collect()
}

pub const RECORDS_HEADER: &str =
    "bundle,domain,observability,noise,extractor,heuristic,theta,time_s,correct,spread,landmarks_mean";
pub const SUMMARY_HEADER: &str = "domain,observability,noise,extractor,heuristic,theta,\
                                  mean_time_s,accuracy_pct,mean_spread,acc_spread_ratio,extraction_pct";

pub fn records_to_csv(records: &[MetricsRecord]) -> String {
    let mut out = String::from(RECORDS_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{:.6},{},{},{:.6}\n",
            r.bundle,
            r.domain,
            r.observability,
            r.noisy,
            r.extractor,
            r.heuristic,
            r.theta,
            r.time_s,
            r.correct,
            r.spread,
            r.landmarks_mean
        ));
    }
    out
}

pub fn summary_to_csv(rows: &[SuiteRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for row in rows {
        let extraction = match row.extraction_pct {
            Some(pct) => format!("{pct:.6}"),
            None => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{:.6},{:.6},{:.6},{:.6},{}\n",
            row.key.domain,
            row.key.observability,
            row.key.noisy,
            row.key.extractor,
            row.key.heuristic,
            row.key.theta,
            row.mean_time_s,
            row.accuracy_pct,
            row.mean_spread,
            row.acc_spread_ratio,
            extraction
        ));
    }
    out
}

/// Writes `records.csv` and `summary.csv` into `out_dir`.
pub fn write_report(report: &SuiteReport, out_dir: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(out_dir).map_err(|source| HarnessError::Io {
        path: out_dir.display().to_string(),
        source,
    })?;
    for (name, content) in
        [("records.csv", records_to_csv(&report.records)), ("summary.csv", summary_to_csv(&report.rows))]
    {
        let path = out_dir.join(name);
        fs::write(&path, content).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(())
}

/// Parses a records.csv produced by [`records_to_csv`].
pub fn records_from_csv(text: &str) -> Result<Vec<MetricsRecord>, HarnessError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == RECORDS_HEADER => {}
        other => {
            return Err(HarnessError::Csv {
                message: format!("unexpected header: {:?}", other.unwrap_or_default()),
            })
        }
    }
    let mut records = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            return Err(HarnessError::Csv {
                message: format!("line {}: expected 11 fields, got {}", lineno + 2, fields.len()),
            });
        }
        let parse_err = |what: &str| HarnessError::Csv {
            message: format!("line {}: bad {what}: {line}", lineno + 2),
        };
        records.push(MetricsRecord {
            bundle: fields[0].to_string(),
            domain: fields[1].to_string(),
            observability: fields[2].parse().map_err(|_| parse_err("observability"))?,
            noisy: fields[3].parse().map_err(|_| parse_err("noise"))?,
            extractor: fields[4].parse().map_err(|_| parse_err("extractor"))?,
            heuristic: fields[5].parse().map_err(|_| parse_err("heuristic"))?,
            theta: fields[6].parse().map_err(|_| parse_err("theta"))?,
            time_s: fields[7].parse().map_err(|_| parse_err("time_s"))?,
            correct: fields[8].parse().map_err(|_| parse_err("correct"))?,
            spread: fields[9].parse().map_err(|_| parse_err("spread"))?,
            landmarks_mean: fields[10].parse().map_err(|_| parse_err("landmarks_mean"))?,
        });
    }
    Ok(records)
}
