use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde_json::{json, Value};
use tdl_core::WeightDistribution;

use crate::config::Format;

/// One weight of an enumerated distribution beside its prediction.
#[derive(Clone, Debug)]
pub struct Row {
    pub weight: usize,
    pub enumerated: String,
    pub predicted: Option<String>,
}

impl Row {
    fn verdict(&self) -> &'static str {
        match &self.predicted {
            Some(p) if *p == self.enumerated => "MATCH",
            Some(_) => "MISMATCH",
            None => "UNPREDICTED",
        }
    }
}

/// Aligns two distributions weight by weight.
pub fn compare(enumerated: &WeightDistribution, predicted: Option<&WeightDistribution>) -> Vec<Row> {
    let mut weights: BTreeSet<usize> = enumerated.support_weights().into_iter().collect();
    if let Some(p) = predicted {
        weights.extend(p.support_weights());
    }
    weights
        .into_iter()
        .map(|w| Row {
            weight: w,
            enumerated: enumerated.get(w).to_string(),
            predicted: predicted.map(|p| p.get(w).to_string()),
        })
        .collect()
}

pub fn distribution_json(d: &WeightDistribution) -> Value {
    serde_json::from_str(&d.to_json()).expect("distribution JSON parses")
}

/// A command's result in every output format.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub title: String,
    pub json: serde_json::Map<String, Value>,
    pub lines: Vec<String>,
    pub rows: Vec<Row>,
    pub checks: BTreeMap<String, bool>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Report::default()
        }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) {
        self.json.insert(key.into(), value.into());
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.insert(name.into(), ok);
    }

    /// Adds the spectrum table and one check per predicted weight.
    pub fn set_rows(&mut self, rows: Vec<Row>) {
        let verdict = rows.iter().all(|r| r.verdict() == "MATCH");
        if rows.iter().any(|r| r.predicted.is_some()) {
            self.check("enumerated_matches_predicted", verdict);
        }
        let table: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "weight": r.weight,
                    "count_enumerated": r.enumerated,
                    "count_predicted": r.predicted,
                    "verdict": r.verdict(),
                })
            })
            .collect();
        self.field("rows", table);
        self.rows = rows;
    }

    pub fn failing(&self) -> Vec<String> {
        self.checks.iter().filter(|(_, &ok)| !ok).map(|(k, _)| k.clone()).collect()
    }

    pub fn passed(&self) -> bool {
        self.failing().is_empty()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_json(&self) -> String {
        let mut obj = self.json.clone();
        obj.insert("checks".into(), json!(self.checks));
        obj.insert("passed".into(), json!(self.passed()));
        serde_json::to_string_pretty(&Value::Object(obj)).expect("report serializes") + "\n"
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        if self.rows.is_empty() {
            out.push_str("check,passed\n");
            for (name, ok) in &self.checks {
                writeln!(out, "{name},{ok}").unwrap();
            }
        } else {
            out.push_str("weight,count_enumerated,count_predicted,verdict\n");
            for r in &self.rows {
                let predicted = r.predicted.as_deref().unwrap_or("");
                writeln!(out, "{},{},{},{}", r.weight, r.enumerated, predicted, r.verdict()).unwrap();
            }
        }
        out
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        for l in &self.lines {
            writeln!(out, "{l}").unwrap();
        }
        if !self.rows.is_empty() {
            let width = self
                .rows
                .iter()
                .map(|r| r.enumerated.len().max(r.predicted.as_ref().map_or(1, String::len)))
                .max()
                .unwrap_or(0)
                .max(10);
            writeln!(out, "{:>6}  {:>width$}  {:>width$}  verdict", "weight", "enumerated", "predicted").unwrap();
            for r in &self.rows {
                let predicted = r.predicted.as_deref().unwrap_or("-");
                writeln!(out, "{:>6}  {:>width$}  {:>width$}  {}", r.weight, r.enumerated, predicted, r.verdict()).unwrap();
            }
        }
        for (name, ok) in &self.checks {
            writeln!(out, "  [{}] {name}", if *ok { "ok" } else { "FAILED" }).unwrap();
        }
        writeln!(out, "{}", if self.passed() { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(pairs: &[(usize, u32)]) -> WeightDistribution {
        WeightDistribution::from_pairs(4, 1, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn mismatch_is_flagged_per_weight() {
        let mut r = Report::new("t");
        r.set_rows(compare(&dist(&[(0, 1), (3, 2)]), Some(&dist(&[(0, 1), (4, 2)]))));
        assert_eq!(r.failing(), vec!["enumerated_matches_predicted".to_string()]);
        assert_eq!(
            r.render(Format::Csv),
            "weight,count_enumerated,count_predicted,verdict\n0,1,1,MATCH\n3,2,0,MISMATCH\n4,0,2,MISMATCH\n"
        );
        assert!(r.render(Format::Text).ends_with("FAIL\n"));
    }

    #[test]
    fn unpredicted_rows_add_no_check() {
        let mut r = Report::new("t");
        r.set_rows(compare(&dist(&[(0, 1), (4, 2)]), None));
        assert!(r.checks.is_empty());
        assert!(r.passed());
        assert!(r.render(Format::Csv).contains("4,2,,UNPREDICTED"));
    }

    #[test]
    fn checks_render_as_csv_without_rows() {
        let mut r = Report::new("t");
        r.check("b", false);
        r.check("a", true);
        assert_eq!(r.render(Format::Csv), "check,passed\na,true\nb,false\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["passed"], false);
    }
}
