use serde_json::{json, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(claim: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Verdict {
            claim: claim.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// A flat table for CSV output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
    pub table: Option<Table>,
    /// One-line summaries for text output.
    pub summary: Vec<String>,
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            results: Value::Null,
            verdicts: Vec::new(),
            table: None,
            summary: Vec::new(),
            error: None,
        }
    }

    pub fn failed(command: &str, inputs: Value, error: String) -> Self {
        let mut r = Report::new(command, inputs);
        r.error = Some(error);
        r
    }

    pub fn verdict(&mut self, claim: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict::new(claim, passed, detail));
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.verdicts.iter().all(|v| v.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| json!({"claim": v.claim, "passed": v.passed, "detail": v.detail}))
            .collect();
        let mut out = json!({
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "verdicts": verdicts,
            "tool_version": env!("CARGO_PKG_VERSION"),
        });
        if let Some(e) = &self.error {
            out["error"] = json!({ "message": e });
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_csv(&self) -> String {
        let fallback;
        let table = match &self.table {
            Some(t) => t,
            None => {
                let mut t = Table::new(&["claim", "passed", "detail"]);
                for v in &self.verdicts {
                    t.push(vec![v.claim.clone(), v.passed.to_string(), v.detail.clone()]);
                }
                fallback = t;
                &fallback
            }
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&table.header).expect("in-memory write");
        for row in &table.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    fn render_text(&self) -> String {
        let mut out = format!("rootforge {}\n", self.command);
        for line in &self.summary {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        for v in &self.verdicts {
            let tag = if v.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {}\n", v.claim, v.detail));
        }
        let n = self.verdicts.len();
        let ok = self.verdicts.iter().filter(|v| v.passed).count();
        out.push_str(&format!("{ok}/{n} claims passed\n"));
        out
    }
}
