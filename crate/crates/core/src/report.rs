//! Trace and summary CSV files.
//!
//! Floats use Rust's shortest round-trip formatting, so parsing a written
//! file gives back the exact in-memory values.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::solver::SolveTrace;

pub const TRACE_HEADER: &str = "k,f,gap,lambda,dist_px,grad_norm";
pub const SUMMARY_HEADER: &str =
    "problem,f_star,final_f,final_gap,iters,sigma,gamma,Gamma,rate_ok,decrease_ok";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// The scalar columns of one trace row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub k: usize,
    pub f: f64,
    pub gap: f64,
    pub lambda: f64,
    pub dist_px: f64,
    pub grad_norm: f64,
}

pub fn trace_rows(trace: &SolveTrace<f64>) -> Vec<TraceRow> {
    trace
        .records
        .iter()
        .map(|r| TraceRow {
            k: r.k,
            f: r.f_value,
            gap: r.gap,
            lambda: r.lambda,
            dist_px: r.dist_px,
            grad_norm: r.grad_norm,
        })
        .collect()
}

pub fn trace_csv(trace: &SolveTrace<f64>) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for r in trace_rows(trace) {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.k, r.f, r.gap, r.lambda, r.dist_px, r.grad_norm
        )
        .expect("writing to a String cannot fail");
    }
    out
}

pub fn write_trace_csv(path: &Path, trace: &SolveTrace<f64>) -> io::Result<()> {
    std::fs::write(path, trace_csv(trace))
}

pub fn parse_trace_csv(text: &str) -> Result<Vec<TraceRow>, ReportError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == TRACE_HEADER => {}
        _ => {
            return Err(ReportError::Parse {
                line: 1,
                message: format!("expected header `{TRACE_HEADER}`"),
            })
        }
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let line = i + 1;
            let bad = |message: String| ReportError::Parse { line, message };
            let cols: Vec<&str> = l.split(',').collect();
            if cols.len() != 6 {
                return Err(bad(format!("expected 6 columns, got {}", cols.len())));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| bad(format!("cannot parse `{s}`")))
            };
            Ok(TraceRow {
                k: cols[0]
                    .parse()
                    .map_err(|_| bad(format!("cannot parse `{}`", cols[0])))?,
                f: num(cols[1])?,
                gap: num(cols[2])?,
                lambda: num(cols[3])?,
                dist_px: num(cols[4])?,
                grad_norm: num(cols[5])?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub problem: String,
    pub f_star: f64,
    pub final_f: f64,
    pub final_gap: f64,
    pub iters: usize,
    pub sigma: f64,
    pub gamma: f64,
    pub big_gamma: f64,
    pub rate_ok: bool,
    pub decrease_ok: bool,
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.problem,
            r.f_star,
            r.final_f,
            r.final_gap,
            r.iters,
            r.sigma,
            r.gamma,
            r.big_gamma,
            r.rate_ok,
            r.decrease_ok
        )
        .expect("writing to a String cannot fail");
    }
    out
}
