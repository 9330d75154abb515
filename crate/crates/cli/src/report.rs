//! Verification records and their text / JSON rendering.

use serde::Serialize;

use crate::config::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub coxeter_word: String,
    pub check: String,
    pub status: Status,
    /// First counterexample datum on failure.
    pub witness: Option<String>,
    pub millis: u64,
    /// Emitted data: tables, vertex lists, signatures.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

impl Record {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(Record::passed)
    }

    /// 0 when everything passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn find(&self, cartan_type: &str, check: &str) -> impl Iterator<Item = &Record> {
        let (t, c) = (cartan_type.to_string(), check.to_string());
        self.records.iter().filter(move |r| r.cartan_type == t && r.check == c)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.records).expect("records serialize");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!(
                "{} {} {} {} {}ms",
                r.cartan_type,
                r.coxeter_word,
                r.check,
                r.status.as_str(),
                r.millis
            ));
            if let Some(w) = &r.witness {
                out.push_str(&format!("  {w}"));
            }
            out.push('\n');
            for line in &r.details {
                out.push_str("    ");
                out.push_str(line);
                out.push('\n');
            }
        }
        let passed = self.records.iter().filter(|r| r.passed()).count();
        out.push_str(&format!("{passed}/{} checks passed\n", self.records.len()));
        out
    }
}
