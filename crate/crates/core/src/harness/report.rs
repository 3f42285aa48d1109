use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::Graph;
use crate::solvers::{CoverSolution, Rational};

/// Version of the structured record layout emitted with `--json`.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Feasible,
    Infeasible,
    Timeout,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Feasible => "feasible",
            Status::Infeasible => "infeasible",
            Status::Timeout => "timeout",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ratio {
    Value(Rational),
    /// Both the solution and the optimum weigh zero.
    BothZero,
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ratio::Value(r) => write!(f, "{r}"),
            Ratio::BothZero => f.write_str("both-zero"),
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    KeyValue,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub status: Status,
    pub size: Option<usize>,
    pub weight: Option<u64>,
    pub exact_weight: Option<u64>,
    pub ratio: Option<Ratio>,
    pub seed: u64,
    pub flags: BTreeMap<String, String>,
    #[serde(skip)]
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl RunReport {
    /// A report with no solution attached yet.
    pub fn new(
        algorithm: impl Into<String>,
        g: &Graph,
        k: usize,
        seed: u64,
        status: Status,
    ) -> Self {
        RunReport {
            instance: None,
            algorithm: algorithm.into(),
            n: g.vertex_count(),
            m: g.edge_count(),
            k,
            status,
            size: None,
            weight: None,
            exact_weight: None,
            ratio: None,
            seed,
            flags: BTreeMap::new(),
            elapsed_ms: 0,
            message: None,
        }
    }

    pub fn for_solution(
        algorithm: impl Into<String>,
        g: &Graph,
        sol: &CoverSolution,
        seed: u64,
    ) -> Self {
        let status = if sol.is_feasible() {
            Status::Feasible
        } else {
            Status::Infeasible
        };
        RunReport {
            size: Some(sol.cardinality()),
            weight: Some(sol.weight()),
            ..RunReport::new(algorithm, g, sol.k(), seed, status)
        }
    }

    /// Records the optimum; the ratio is set only for feasible solutions.
    pub fn set_exact(&mut self, exact_weight: u64) {
        self.exact_weight = Some(exact_weight);
        self.ratio = match (self.status, self.weight) {
            (Status::Feasible, Some(0)) if exact_weight == 0 => Some(Ratio::BothZero),
            (Status::Feasible, Some(w)) if exact_weight > 0 => {
                Some(Ratio::Value(Rational::new(w, exact_weight)))
            }
            _ => None,
        };
    }

    pub fn flag(mut self, key: &str, value: impl ToString) -> Self {
        self.flags.insert(key.to_string(), value.to_string());
        self
    }

    /// One line without a trailing newline. Elapsed time is included only
    /// when `timing` is set, so output stays reproducible by default.
    pub fn render(&self, format: ReportFormat, timing: bool) -> String {
        match format {
            ReportFormat::KeyValue => self.render_kv(timing),
            ReportFormat::Json => {
                let mut value = serde_json::to_value(self).expect("report serializes");
                let map = value.as_object_mut().expect("report is an object");
                map.insert("schema".into(), REPORT_SCHEMA.into());
                if timing {
                    map.insert("elapsed_ms".into(), self.elapsed_ms.into());
                }
                value.to_string()
            }
        }
    }

    fn render_kv(&self, timing: bool) -> String {
        let mut fields: Vec<String> = Vec::new();
        if let Some(name) = &self.instance {
            fields.push(format!("instance={name}"));
        }
        fields.push(format!("alg={}", self.algorithm));
        fields.push(format!("n={} m={} k={}", self.n, self.m, self.k));
        fields.push(format!("status={}", self.status));
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        fields.push(format!("size={}", opt(self.size.map(|s| s.to_string()))));
        fields.push(format!(
            "weight={}",
            opt(self.weight.map(|w| w.to_string()))
        ));
        fields.push(format!(
            "exact={}",
            opt(self.exact_weight.map(|w| w.to_string()))
        ));
        fields.push(format!("ratio={}", opt(self.ratio.map(|r| r.to_string()))));
        fields.push(format!("seed={}", self.seed));
        for (key, value) in &self.flags {
            fields.push(format!("{key}={value}"));
        }
        if timing {
            fields.push(format!("elapsed_ms={}", self.elapsed_ms));
        }
        if let Some(msg) = &self.message {
            fields.push(format!("msg={:?}", msg));
        }
        fields.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{path, set};

    #[test]
    fn ratio_rules() {
        let g = path(4);
        let mut r = RunReport::for_solution("x", &g, &CoverSolution::new(&g, 3, set(&[1, 2])), 0);
        r.set_exact(1);
        assert_eq!(r.ratio, Some(Ratio::Value(Rational::from_integer(2))));

        let mut none = RunReport::for_solution("x", &g, &CoverSolution::new(&g, 3, set(&[])), 0);
        none.set_exact(1);
        assert_eq!(none.status, Status::Infeasible);
        assert_eq!(none.ratio, None);

        let g = path(2);
        let mut zero = RunReport::for_solution("x", &g, &CoverSolution::new(&g, 3, set(&[])), 0);
        zero.set_exact(0);
        assert_eq!(zero.ratio, Some(Ratio::BothZero));
    }

    #[test]
    fn renderings() {
        let g = path(4);
        let mut r = RunReport::for_solution("exact", &g, &CoverSolution::new(&g, 3, set(&[2])), 5)
            .flag("mode", "corrected");
        r.set_exact(1);
        r.elapsed_ms = 12;
        assert_eq!(
            r.render(ReportFormat::KeyValue, false),
            "alg=exact n=4 m=3 k=3 status=feasible size=1 weight=1 exact=1 ratio=1 seed=5 mode=corrected"
        );
        assert!(r
            .render(ReportFormat::KeyValue, true)
            .ends_with("elapsed_ms=12"));
        let json: serde_json::Value =
            serde_json::from_str(&r.render(ReportFormat::Json, false)).unwrap();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["ratio"], "1");
        assert_eq!(json["status"], "feasible");
        assert!(json.get("elapsed_ms").is_none());
    }
}
