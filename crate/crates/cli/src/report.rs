use clap::ValueEnum;
use repcurve_core::ff::FieldCtx;
use serde::Serialize;
use serde_json::{json, Value};

use crate::suites::{Grid, Registry, Suite, Verdict};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseRecord {
    pub id: String,
    pub verdict: Verdict,
    pub certificate: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub report_only: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub version: &'static str,
    pub p: u32,
    pub n: usize,
    pub modulus: Vec<u32>,
    pub seed: u64,
    pub trials: usize,
    pub grid: Grid,
    pub summary: Summary,
    pub cases: Vec<CaseRecord>,
}

impl SuiteReport {
    pub fn new(
        suite: Suite,
        ctx: &FieldCtx,
        seed: u64,
        trials: usize,
        grid: Grid,
        cases: Vec<CaseRecord>,
    ) -> Self {
        let mut summary = Summary {
            total: cases.len(),
            ..Summary::default()
        };
        for c in &cases {
            match c.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::ReportOnly => summary.report_only += 1,
            }
        }
        SuiteReport {
            suite,
            version: env!("CARGO_PKG_VERSION"),
            p: ctx.p(),
            n: ctx.n(),
            modulus: ctx.modulus().to_vec(),
            seed,
            trials,
            grid,
            summary,
            cases,
        }
    }

    /// 1 if any case failed, else 0.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)?),
            Format::Md => Ok(self.markdown()),
        }
    }

    fn markdown(&self) -> String {
        let timed = self.cases.iter().any(|c| c.ms.is_some());
        let mut s = format!(
            "# Suite `{}`\n\np = {}, n = {}, modulus = {:?}, seed = {}, trials = {}, version {}\n\n",
            self.suite.name(),
            self.p,
            self.n,
            self.modulus,
            self.seed,
            self.trials,
            self.version
        );
        s += &format!(
            "{} cases: {} pass, {} fail, {} report-only\n\n",
            self.summary.total, self.summary.pass, self.summary.fail, self.summary.report_only
        );
        s += if timed {
            "| case | verdict | certificate | ms |\n|---|---|---|---|\n"
        } else {
            "| case | verdict | certificate |\n|---|---|---|\n"
        };
        for c in &self.cases {
            let cert = md_cell(&brief(&c.certificate));
            match c.ms {
                Some(ms) => s += &format!("| {} | {} | {} | {} |\n", c.id, c.verdict.as_str(), cert, ms),
                None => s += &format!("| {} | {} | {} |\n", c.id, c.verdict.as_str(), cert),
            }
        }
        s
    }
}

/// The certificate without bulky matrices and scans.
fn brief(v: &Value) -> Value {
    match v {
        Value::Object(map) => Value::Object(
            map.iter()
                .filter(|(k, _)| !matches!(k.as_str(), "witness" | "scan" | "expansion"))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        ),
        v => v.clone(),
    }
}

fn md_cell(v: &Value) -> String {
    v.to_string().replace('|', "\\|")
}

pub fn render_cases(reg: &Registry, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let rows: Vec<Value> = reg
                .cases
                .iter()
                .map(|c| json!({ "id": c.id, "claim": c.claim }))
                .collect();
            Ok(serde_json::to_string_pretty(&json!({ "grid": reg.grid, "cases": rows }))?)
        }
        Format::Md => {
            let mut s = String::from("| case | checks |\n|---|---|\n");
            for c in &reg.cases {
                s += &format!("| {} | {} |\n", c.id, c.claim.replace('|', "\\|"));
            }
            Ok(s)
        }
    }
}
