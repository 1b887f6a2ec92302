//! Scenario reports, as JSON and as aligned text.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub pass: bool,
    pub checks: Vec<CheckLine>,
    /// Exact values, as strings.
    pub values: BTreeMap<String, String>,
}

impl ScenarioReport {
    pub fn new(scenario: &str) -> Self {
        ScenarioReport { scenario: scenario.into(), pass: true, checks: Vec::new(), values: BTreeMap::new() }
    }

    pub fn check(&mut self, name: &str, pass: bool, details: impl Into<String>) -> bool {
        self.pass &= pass;
        self.checks.push(CheckLine { name: name.into(), pass, details: details.into() });
        pass
    }

    pub fn value(&mut self, key: &str, v: impl Display) {
        self.values.insert(key.into(), v.to_string());
    }

    /// A scenario that could not run.
    pub fn failed(scenario: &str, why: impl Into<String>) -> Self {
        let mut r = ScenarioReport::new(scenario);
        r.check("requirements", false, why);
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub model: String,
    pub seed: u64,
    pub bound: usize,
    pub pass: bool,
    pub scenarios: Vec<ScenarioReport>,
}

impl SuiteReport {
    pub fn new(model: &str, seed: u64, bound: usize, mut scenarios: Vec<ScenarioReport>) -> Self {
        scenarios.sort_by(|a, b| a.scenario.cmp(&b.scenario));
        let pass = scenarios.iter().all(|s| s.pass);
        SuiteReport { model: model.into(), seed, bound, pass, scenarios }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut rows: Vec<[String; 4]> = Vec::new();
        for s in &self.scenarios {
            for c in &s.checks {
                rows.push([s.scenario.clone(), c.name.clone(), verdict(c.pass).into(), c.details.clone()]);
            }
            for (k, v) in &s.values {
                rows.push([s.scenario.clone(), k.clone(), "=".into(), v.clone()]);
            }
        }
        let w0 = rows.iter().map(|r| r[0].chars().count()).max().unwrap_or(0);
        let w1 = rows.iter().map(|r| r[1].chars().count()).max().unwrap_or(0);
        let mut out = format!("model {}  seed {}  bound {}\n", self.model, self.seed, self.bound);
        for r in &rows {
            let line = format!("{:<w0$}  {:<w1$}  {:<4}  {}", r[0], r[1], r[2], r[3]);
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out.push_str(&format!("overall {}\n", verdict(self.pass)));
        out
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
