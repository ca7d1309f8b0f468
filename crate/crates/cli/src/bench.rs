use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use clap::Args;
use firefighter::format::{parse_instance, to_json};
use firefighter::solvers::{solve_exact_oracle_with, OracleMode};
use firefighter::TreeInstance;
use serde::Serialize;

use crate::io::{write_output, Failure, WithCode, BAD_INPUT};
use crate::solve::{run_algo, Algo, OracleArgs};

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory of instance files (`*.json`).
    pub dir: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "auto,greedy")]
    pub algos: Vec<Algo>,
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
    /// Also write the table as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Leave wall times out, so reruns give identical output.
    #[arg(long)]
    pub no_timing: bool,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub instance: String,
    pub algo: String,
    pub algorithm_tag: Option<String>,
    pub value: Option<u64>,
    /// Oracle optimum, when the instance is small enough.
    pub reference: Option<u64>,
    pub agrees: Option<bool>,
    /// `reference / value`.
    pub ratio: Option<f64>,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Table<'a> {
    rows: &'a [Row],
}

fn instance_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("cannot list {}", dir.display()))? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn ratio(reference: Option<u64>, value: Option<u64>) -> Option<f64> {
    match (reference?, value?) {
        (0, 0) => Some(1.0),
        (_, 0) => None,
        (r, v) => Some(r as f64 / v as f64),
    }
}

fn bench_instance(name: &str, inst: &TreeInstance, args: &BenchArgs) -> Vec<Row> {
    let config = args.oracle.config();
    let reference = solve_exact_oracle_with(inst, OracleMode::Restricted, config)
        .ok()
        .map(|r| r.saved_target_weight);
    args.algos
        .iter()
        .map(|&algo| {
            let mut best_ms = f64::INFINITY;
            let mut outcome = None;
            for _ in 0..args.repeat.max(1) {
                let start = Instant::now();
                let res = run_algo(inst, algo, config);
                best_ms = best_ms.min(start.elapsed().as_secs_f64() * 1e3);
                outcome = Some(res);
            }
            let (value, tag, error) = match outcome.expect("at least one run") {
                Ok(res) => (
                    Some(res.saved_target_weight),
                    Some(res.algorithm.tag().to_string()),
                    None,
                ),
                Err(e) => (None, None, Some(e.to_string())),
            };
            Row {
                instance: name.to_string(),
                algo: format!("{algo:?}").to_lowercase(),
                algorithm_tag: tag,
                value,
                reference,
                agrees: reference.zip(value).map(|(r, v)| r == v),
                ratio: ratio(reference, value),
                error,
                time_ms: (!args.no_timing && value.is_some()).then_some(best_ms),
            }
        })
        .collect()
}

pub fn run_bench(args: &BenchArgs) -> Result<Vec<Row>, Failure> {
    let files = instance_files(&args.dir).code(BAD_INPUT)?;
    let mut rows = Vec::new();
    for path in files {
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let parsed = fs::read_to_string(&path)
            .map_err(anyhow::Error::from)
            .and_then(|text| Ok(parse_instance(&text)?.0));
        match parsed {
            Ok(inst) => rows.extend(bench_instance(&name, &inst, args)),
            Err(e) => rows.push(Row {
                instance: name,
                algo: "-".into(),
                algorithm_tag: None,
                value: None,
                reference: None,
                agrees: None,
                ratio: None,
                error: Some(format!("{e:#}")),
                time_ms: None,
            }),
        }
    }
    Ok(rows)
}

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

pub fn render(rows: &[Row], timing: bool) -> String {
    let mut lines = vec![vec![
        "instance".to_string(),
        "algo".into(),
        "value".into(),
        "oracle".into(),
        "agrees".into(),
        "ratio".into(),
    ]];
    if timing {
        lines[0].push("ms".into());
    }
    for r in rows {
        let mut line = vec![
            r.instance.clone(),
            r.algo.clone(),
            r.error
                .as_ref()
                .map_or_else(|| cell(&r.value), |e| format!("error: {e}")),
            cell(&r.reference),
            cell(&r.agrees),
            r.ratio.map_or_else(|| "-".into(), |x| format!("{x:.3}")),
        ];
        if timing {
            line.push(r.time_ms.map_or_else(|| "-".into(), |x| format!("{x:.3}")));
        }
        lines.push(line);
    }
    let columns = lines[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| lines.iter().map(|l| l[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in &lines {
        let padded: Vec<String> = line
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:<w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    let rows = run_bench(args)?;
    print!("{}", render(&rows, !args.no_timing));
    if let Some(path) = &args.json {
        write_output(Some(path), &to_json(&Table { rows: &rows }))?;
    }
    Ok(())
}
