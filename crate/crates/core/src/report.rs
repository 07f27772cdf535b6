//! Deterministic tabular rendering of reports as TSV or JSON lines.

use std::fmt;
use std::str::FromStr;

use serde_json::Value;

use crate::audit::AuditReport;
use crate::complex::smith::{
    BorelReport, FixedSplitReport, QuotientReport, RankCheckReport, StrataReport, BOREL,
};
use crate::obstruction::{RankBound, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Tsv,
    JsonLines,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "json-lines" => Ok(Format::JsonLines),
            other => Err(format!(
                "unknown format {other:?}; expected tsv or json-lines"
            )),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Tsv => "tsv",
            Format::JsonLines => "json-lines",
        })
    }
}

/// Rows under a fixed list of columns. The first column names the check or
/// rule behind each row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.tsv(),
            Format::JsonLines => self.json_lines(),
        }
    }

    fn tsv(&self) -> String {
        let mut out = self.columns.join("\t");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(tsv_cell).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    fn json_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let fields: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(k, v)| format!("{}:{}", Value::from(*k), v))
                .collect();
            out.push('{');
            out.push_str(&fields.join(","));
            out.push_str("}\n");
        }
        out
    }
}

fn tsv_cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(tsv_cell).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn opt<T: Into<Value>>(x: Option<T>) -> Value {
    x.map_or(Value::Null, Into::into)
}

fn text(x: impl fmt::Display) -> Value {
    Value::String(x.to_string())
}

pub fn audit_table(report: &AuditReport) -> Table {
    let mut t = Table::new(vec!["check", "n", "expected", "actual", "pass"]);
    for c in &report.checks {
        t.push(vec![
            text(&c.name),
            report.rank.into(),
            text(&c.expected),
            text(&c.actual),
            c.pass.into(),
        ]);
    }
    t
}

pub fn verdicts_table(verdicts: &[Verdict]) -> Table {
    let mut t = Table::new(vec![
        "n",
        "rule",
        "conclusion",
        "dim",
        "chi",
        "orientable",
        "fired",
        "sl_n_z",
    ]);
    for v in verdicts {
        t.push(vec![
            v.n.into(),
            opt(v.rule.map(text)),
            text(v.conclusion),
            v.descriptor.dim.into(),
            v.descriptor.chi.into(),
            v.descriptor.orientable.into(),
            Value::Array(v.fired.iter().map(text).collect()),
            text(v.sl_n_z),
        ]);
    }
    t
}

pub fn rank_bound_table(bounds: &[RankBound]) -> Table {
    let mut t = Table::new(vec!["check", "p", "mode", "dim", "chi", "bound"]);
    for b in bounds {
        t.push(vec![
            text("rank-bound"),
            b.p.into(),
            text(b.mode),
            b.dim.into(),
            b.chi.into(),
            text(b.bound),
        ]);
    }
    t
}

pub fn strata_table(r: &StrataReport) -> Table {
    let mut t = Table::new(vec![
        "check", "p", "n", "stratum", "chi_c", "modulus", "a", "holds",
    ]);
    for s in &r.strata {
        t.push(vec![
            text(r.check),
            r.p.into(),
            r.n.into(),
            s.i.into(),
            s.chi_c.into(),
            s.modulus.into(),
            opt(s.a),
            s.a.is_some().into(),
        ]);
    }
    t.push(vec![
        text(r.check),
        r.p.into(),
        r.n.into(),
        text("total"),
        r.strata_sum.into(),
        Value::Null,
        r.chi.into(),
        (r.strata_sum == r.chi).into(),
    ]);
    t
}

pub fn quotient_table(r: &QuotientReport) -> Table {
    let mut t = Table::new(vec![
        "check",
        "order",
        "subdivisions",
        "chi",
        "quotient_chi",
        "quotient_f_vector",
        "holds",
    ]);
    t.push(vec![
        text(r.check),
        r.order.into(),
        r.subdivisions.into(),
        r.chi.into(),
        r.quotient_chi.into(),
        Value::Array(r.quotient_f_vector.iter().map(|&x| x.into()).collect()),
        r.holds.into(),
    ]);
    t
}

pub fn fixed_split_table(r: &FixedSplitReport) -> Table {
    let mut t = Table::new(vec![
        "check",
        "p",
        "chi",
        "complement_chi_c",
        "fixed_chi",
        "complement_divisible",
        "holds",
    ]);
    t.push(vec![
        text(r.check),
        r.p.into(),
        r.chi.into(),
        r.complement_chi_c.into(),
        r.fixed_chi.into(),
        r.complement_divisible.into(),
        r.holds.into(),
    ]);
    t
}

pub fn borel_table(reports: &[BorelReport]) -> Table {
    let mut t = Table::new(vec![
        "check",
        "p",
        "rank",
        "basepoint",
        "n",
        "r",
        "n_h",
        "lhs",
        "rhs",
        "holds",
    ]);
    for r in reports {
        let mut n_h: Vec<usize> = r.terms.iter().map(|x| x.n_h).collect();
        n_h.sort_unstable();
        t.push(vec![
            text(BOREL),
            r.p.into(),
            r.rank.into(),
            r.basepoint.into(),
            r.n.into(),
            r.r.into(),
            Value::Array(n_h.into_iter().map(Into::into).collect()),
            r.lhs.into(),
            r.rhs.into(),
            r.holds.into(),
        ]);
    }
    t
}

pub fn rank_check_table(r: &RankCheckReport) -> Table {
    let mut t = Table::new(vec![
        "check", "p", "k", "r", "r0", "mode", "lhs", "rhs", "holds",
    ]);
    let r0 = opt(r.r0);
    match &r.inequality {
        Some(c) => t.push(vec![
            text(c.check),
            r.p.into(),
            r.k.into(),
            r.r.into(),
            r0.clone(),
            text(r.mode),
            c.lhs.into(),
            c.rhs.into(),
            c.holds.into(),
        ]),
        None => t.push(vec![
            text("mann-su-bound"),
            r.p.into(),
            r.k.into(),
            r.r.into(),
            Value::Null,
            text(r.mode),
            Value::Null,
            Value::Null,
            text("not-applicable"),
        ]),
    }
    let d = &r.divisibility;
    t.push(vec![
        text(d.check),
        r.p.into(),
        r.k.into(),
        r.r.into(),
        r0,
        text(r.mode),
        r.k.into(),
        text(d.bound),
        d.holds.into(),
    ]);
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::ManifoldExpr;
    use crate::obstruction::{verdict_table, OddRankRules};

    #[test]
    fn renders_verdicts() {
        let d = ManifoldExpr::parse("S(2)").unwrap().evaluate().unwrap();
        let v = verdict_table(&d, 3..=4, OddRankRules::Strict).unwrap();
        let t = verdicts_table(&v);
        assert_eq!(
            t.render(Format::Tsv),
            "n\trule\tconclusion\tdim\tchi\torientable\tfired\tsl_n_z\n\
             3\t-\tNoConclusion\t2\t2\ttrue\t\tNoConclusion\n\
             4\tR1\tForcedTrivial\t2\t2\ttrue\tR1\tForcedTrivial\n"
        );
        let json = t.render(Format::JsonLines);
        let first = json.lines().next().unwrap();
        assert_eq!(
            first,
            r#"{"n":3,"rule":null,"conclusion":"NoConclusion","dim":2,"chi":2,"orientable":true,"fired":[],"sl_n_z":"NoConclusion"}"#
        );
        for line in json.lines() {
            serde_json::from_str::<Value>(line).unwrap();
        }
    }

    #[test]
    fn format_parsing() {
        assert_eq!("tsv".parse::<Format>(), Ok(Format::Tsv));
        assert_eq!("json-lines".parse::<Format>(), Ok(Format::JsonLines));
        assert!("xml".parse::<Format>().is_err());
    }
}
