use std::io::{Read, Write};

use serde_json::json;

use crate::bench::{BenchRow, BenchTable};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::solvers::{Method, SolveReport};

pub const REPORT_CSV_HEADER: [&str; 12] = [
    "label",
    "m",
    "n",
    "density",
    "method",
    "theta",
    "mean_IT",
    "mean_CPU_seconds",
    "IT_speedup_1",
    "IT_speedup_2",
    "CPU_speedup_1",
    "CPU_speedup_2",
];

/// Formats like C's `%.6g`: six significant digits, trailing zeros trimmed.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("LowerExp output has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(format_sig6).unwrap_or_default()
}

/// Header row, then one row per (matrix, method).
pub fn write_report_csv<W: Write>(table: &BenchTable, sink: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
    w.write_record(REPORT_CSV_HEADER)?;
    for row in &table.rows {
        w.write_record([
            row.label.clone(),
            row.m.to_string(),
            row.n.to_string(),
            format_sig6(row.density),
            row.method.tag().to_string(),
            opt(row.theta),
            format_sig6(row.mean_it),
            format_sig6(row.mean_cpu_seconds),
            opt(row.it_speedup_1),
            opt(row.it_speedup_2),
            opt(row.cpu_speedup_1),
            opt(row.cpu_speedup_2),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Parses a table written by [`write_report_csv`].
pub fn read_report_csv<R: Read>(source: R) -> Result<Vec<BenchRow>> {
    let mut reader = csv::Reader::from_reader(source);
    let header = reader.headers()?.clone();
    if header.iter().ne(REPORT_CSV_HEADER) {
        return Err(Error::Parse {
            line: 1,
            message: "unexpected report header".into(),
        });
    }
    let num = |field: &str, line: usize| -> Result<f64> {
        field.parse().map_err(|_| Error::Parse {
            line,
            message: format!("invalid number '{field}'"),
        })
    };
    let opt_num = |field: &str, line: usize| -> Result<Option<f64>> {
        if field.is_empty() {
            Ok(None)
        } else {
            num(field, line).map(Some)
        }
    };
    let mut rows = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record?;
        let line = idx + 2;
        let int = |field: &str| -> Result<usize> {
            field.parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid count '{field}'"),
            })
        };
        rows.push(BenchRow {
            label: record[0].to_string(),
            m: int(&record[1])?,
            n: int(&record[2])?,
            density: num(&record[3], line)?,
            method: record[4].parse::<Method>()?,
            theta: opt_num(&record[5], line)?,
            mean_it: num(&record[6], line)?,
            mean_cpu_seconds: num(&record[7], line)?,
            it_speedup_1: opt_num(&record[8], line)?,
            it_speedup_2: opt_num(&record[9], line)?,
            cpu_speedup_1: opt_num(&record[10], line)?,
            cpu_speedup_2: opt_num(&record[11], line)?,
        });
    }
    Ok(rows)
}

/// One-column CSV with header `value`.
pub fn write_vector_csv<T: Scalar, W: Write>(values: &[T], mut sink: W) -> Result<()> {
    writeln!(sink, "value")?;
    for v in values {
        writeln!(sink, "{v:e}")?;
    }
    sink.flush()?;
    Ok(())
}

pub fn read_vector_csv<T: Scalar, R: Read>(source: R) -> Result<Vec<T>> {
    let mut reader = csv::Reader::from_reader(source);
    if reader.headers()?.iter().ne(["value"]) {
        return Err(Error::Parse {
            line: 1,
            message: "vector CSV must have the single header 'value'".into(),
        });
    }
    reader
        .records()
        .enumerate()
        .map(|(idx, rec)| {
            let rec = rec?;
            let v: f64 = rec[0].trim().parse().map_err(|_| Error::Parse {
                line: idx + 2,
                message: format!("invalid value '{}'", &rec[0]),
            })?;
            Ok(T::of(v))
        })
        .collect()
}

fn summary_json<T: Scalar>(label: &str, report: &SolveReport<T>) -> serde_json::Value {
    json!({
        "type": "summary",
        "label": label,
        "method": report.method.tag(),
        "theta": (report.method == Method::Rgrk).then_some(report.theta),
        "iterations": report.iterations,
        "converged": report.converged,
        "final_res": report.final_res.as_f64(),
        "stop_mode": report.stop_mode,
        "elapsed_seconds": report.elapsed.as_secs_f64(),
    })
}

/// JSON lines: one `iteration` object per recorded step (when traced), then a `summary`.
pub fn write_solve_report_jsonl<T: Scalar, W: Write>(label: &str, report: &SolveReport<T>, mut sink: W) -> Result<()> {
    for (idx, rec) in report.index_trace.iter().enumerate() {
        let mut line = json!({
            "type": "iteration",
            "k": rec.k,
            "candidates": rec.candidates,
            "chosen": rec.chosen,
            "candidate_sq_norm_sum": rec.candidate_sq_norm_sum.as_f64(),
        });
        if let Some(e) = report.error_history.get(idx) {
            line["error_sq"] = json!(e.as_f64());
        }
        if let Some(r) = report.residual_history.get(idx) {
            line["residual_norm"] = json!(r.as_f64());
        }
        serde_json::to_writer(&mut sink, &line)?;
        writeln!(sink)?;
    }
    serde_json::to_writer(&mut sink, &summary_json(label, report))?;
    writeln!(sink)?;
    sink.flush()?;
    Ok(())
}

/// Single-row CSV summary of a solve.
pub fn write_solve_report_csv<T: Scalar, W: Write>(label: &str, report: &SolveReport<T>, sink: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
    w.write_record(["label", "method", "theta", "iterations", "converged", "final_res", "elapsed_seconds"])?;
    w.write_record([
        label.to_string(),
        report.method.tag().to_string(),
        if report.method == Method::Rgrk {
            format_sig6(report.theta)
        } else {
            String::new()
        },
        report.iterations.to_string(),
        report.converged.to_string(),
        format!("{:e}", report.final_res.as_f64()),
        format_sig6(report.elapsed.as_secs_f64()),
    ])?;
    w.flush()?;
    Ok(())
}
