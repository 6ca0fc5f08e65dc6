use std::fmt::Write as _;

use imetric_core::{Coupling, FiniteMetricSpace, IdempotentMeasure, MaxPlus};

/// Nine significant digits, shortest form: `1.0`, `0.693147181`, `-inf`.
pub fn num(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        return "-inf".into();
    }
    let rounded: f64 = format!("{x:.8e}").parse().expect("scientific notation parses");
    format!("{rounded:?}")
}

pub fn value(v: MaxPlus) -> String {
    num(v.to_f64())
}

pub fn measure(mu: &IdempotentMeasure) -> String {
    let space = mu.space();
    let width = label_width(space);
    let mut out = String::new();
    for x in 0..space.len() {
        writeln!(out, "  {:<width$}  {}", space.label(x), value(mu.density(x))).unwrap();
    }
    out
}

/// The density of `xi` as a table, rows indexed by the left marginal's
/// points and columns by the right's.
pub fn coupling(xi: &Coupling) -> String {
    matrix(xi.left().space(), &xi.rows())
}

pub fn matrix(space: &FiniteMetricSpace, rows: &[Vec<MaxPlus>]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|v| value(*v)).collect()).collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .chain(space.labels().iter().map(String::len))
        .max()
        .unwrap_or(1);
    let lw = label_width(space);
    let mut out = String::new();
    write!(out, "  {:<lw$}", "").unwrap();
    for label in space.labels() {
        write!(out, "  {label:>width$}").unwrap();
    }
    out.push('\n');
    for (x, row) in cells.iter().enumerate() {
        write!(out, "  {:<lw$}", space.label(x)).unwrap();
        for cell in row {
            write!(out, "  {cell:>width$}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn label_width(space: &FiniteMetricSpace) -> usize {
    space.labels().iter().map(String::len).max().unwrap_or(1)
}
