use std::fmt::Write as _;
use std::str::FromStr;

use super::run::BenchmarkResult;
use crate::error::{Error, Result};

const LABEL_WIDTH: usize = 15;
const MISSING: &str = "--";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TableStyle {
    #[default]
    Text,
    Latex,
    Json,
}

impl FromStr for TableStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(TableStyle::Text),
            "latex" => Ok(TableStyle::Latex),
            "json" => Ok(TableStyle::Json),
            other => Err(Error::InvalidParameter(format!("unknown table format `{other}`"))),
        }
    }
}

/// `0.857 -> ".86"`, `1.0 -> "1.00"`, `-0.25 -> "-.25"`.
pub fn format_value(value: f64, decimals: usize) -> String {
    let s = format!("{value:.decimals$}");
    if let Some(rest) = s.strip_prefix("0.") {
        format!(".{rest}")
    } else if let Some(rest) = s.strip_prefix("-0.") {
        format!("-.{rest}")
    } else {
        s
    }
}

fn cell(value: Option<f64>, decimals: usize) -> String {
    value.map_or_else(|| MISSING.to_string(), |v| format_value(v, decimals))
}

pub fn format_table(result: &BenchmarkResult, style: TableStyle, decimals: usize) -> String {
    match style {
        TableStyle::Text => text(result, decimals),
        TableStyle::Latex => latex(result, decimals),
        TableStyle::Json => json(result),
    }
}

fn text(result: &BenchmarkResult, decimals: usize) -> String {
    let cells: Vec<Vec<String>> = result
        .values
        .iter()
        .map(|row| row.iter().map(|&v| cell(v, decimals)).collect())
        .collect();
    let last = result.algorithms.len().saturating_sub(1);
    let widths: Vec<usize> = result
        .algorithms
        .iter()
        .enumerate()
        .map(|(c, name)| {
            let content = cells
                .iter()
                .map(|row| row[c].chars().count())
                .chain([name.chars().count()])
                .max()
                .unwrap_or(0);
            // the final column carries one trailing space instead of two
            content + if c == last { 1 } else { 2 }
        })
        .collect();
    let label_width = result
        .datasets
        .iter()
        .map(|d| d.chars().count() + 1)
        .chain([LABEL_WIDTH])
        .max()
        .unwrap_or(LABEL_WIDTH);

    let mut out = String::new();
    let _ = write!(out, "{:label_width$}", "");
    for (name, w) in result.algorithms.iter().zip(&widths) {
        let _ = write!(out, "\t {name:w$}");
    }
    out.push('\n');
    for (dataset, row) in result.datasets.iter().zip(&cells) {
        let _ = write!(out, "{dataset:label_width$}");
        for (value, w) in row.iter().zip(&widths) {
            let _ = write!(out, "\t {value:w$}");
        }
        out.push('\n');
    }
    out
}

fn escape_latex(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '\\' => out.push_str("\\textbackslash{}"),
            '&' | '%' | '$' | '#' | '_' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '~' => out.push_str("\\textasciitilde{}"),
            '^' => out.push_str("\\textasciicircum{}"),
            _ => out.push(ch),
        }
    }
    out
}

fn latex(result: &BenchmarkResult, decimals: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\begin{{tabular}}{{l{}}}", "c".repeat(result.algorithms.len()));
    let header: Vec<String> = result.algorithms.iter().map(|a| escape_latex(a)).collect();
    let _ = writeln!(out, " & {} \\\\", header.join(" & "));
    out.push_str("\\hline\n");
    for (dataset, row) in result.datasets.iter().zip(&result.values) {
        let cells: Vec<String> = row.iter().map(|&v| cell(v, decimals)).collect();
        let _ = writeln!(out, "{} & {} \\\\", escape_latex(dataset), cells.join(" & "));
    }
    out.push_str("\\end{tabular}\n");
    out
}

fn json(result: &BenchmarkResult) -> String {
    let mut s = serde_json::to_string_pretty(result).expect("benchmark results serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::run::BenchmarkConfig;

    fn one_by_one(value: Option<f64>) -> BenchmarkResult {
        BenchmarkResult {
            datasets: vec!["toy".into()],
            algorithms: vec!["ppr.85".into()],
            values: vec![vec![value]],
            failures: vec![],
            config: BenchmarkConfig::default(),
        }
    }

    #[test]
    fn leading_dot_values() {
        assert_eq!(format_value(0.857, 2), ".86");
        assert_eq!(format_value(1.0, 2), "1.00");
        assert_eq!(format_value(0.5, 3), ".500");
        assert_eq!(format_value(-0.25, 2), "-.25");
        assert_eq!(format_value(0.004, 2), ".00");
    }

    #[test]
    fn latex_one_by_one() {
        let t = format_table(&one_by_one(Some(0.857)), TableStyle::Latex, 2);
        assert_eq!(
            t,
            "\\begin{tabular}{lc}\n & ppr.85 \\\\\n\\hline\ntoy & .86 \\\\\n\\end{tabular}\n"
        );
    }

    #[test]
    fn missing_renders_dashes() {
        let t = format_table(&one_by_one(None), TableStyle::Text, 2);
        assert!(t.lines().nth(1).unwrap().contains("--"));
    }

    #[test]
    fn latex_escapes_names() {
        assert_eq!(escape_latex("a_b&c"), "a\\_b\\&c");
    }

    #[test]
    fn json_has_config_and_nulls() {
        let t = format_table(&one_by_one(None), TableStyle::Json, 2);
        let v: serde_json::Value = serde_json::from_str(&t).unwrap();
        assert!(v["values"][0][0].is_null());
        assert_eq!(v["config"]["fraction_of_training"], 0.5);
    }
}
