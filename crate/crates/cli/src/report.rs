use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Parse(m) => format!("parse error: {m}"),
            CliError::Domain(m) => format!("error: {m}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostic {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

/// Output of one command: text lines, a structured payload and the checks
/// that were run. Any failed check makes the command fail.
#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub payload: Value,
    pub diagnostics: Vec<Diagnostic>,
    pub notes: Vec<String>,
    /// Printed verbatim instead of the usual text, e.g. DOT output.
    pub raw: Option<String>,
}

impl Report {
    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn check(&mut self, check: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.diagnostics.push(Diagnostic { check: check.to_string(), passed, detail: detail.into() });
        passed
    }

    pub fn all_passed(&self) -> bool {
        self.diagnostics.iter().all(|d| d.passed)
    }
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Error,
}

#[derive(Serialize)]
struct CommandResult {
    status: Status,
    payload: Value,
    diagnostics: Vec<Diagnostic>,
    notes: Vec<String>,
}

/// Pretty JSON with every object's keys sorted.
fn pretty(value: &impl Serialize) -> String {
    let canonical = serde_json::to_value(value).expect("serializable");
    format!("{}\n", serde_json::to_string_pretty(&canonical).expect("serializable"))
}

/// Renders a command outcome and chooses the exit code.
pub fn render(result: Result<Report, CliError>, as_json: bool) -> (String, u8) {
    match result {
        Err(e) => {
            let text = if as_json {
                let out =
                    json!({ "status": "error", "payload": Value::Null, "diagnostics": [], "notes": [e.message()] });
                pretty(&out)
            } else {
                format!("{}\n", e.message())
            };
            (text, e.code())
        }
        Ok(report) => {
            let ok = report.all_passed();
            let code = if ok { EXIT_OK } else { EXIT_VERIFICATION };
            if let Some(raw) = report.raw {
                return (raw, code);
            }
            if as_json {
                let out = CommandResult {
                    status: if ok { Status::Ok } else { Status::Error },
                    payload: report.payload,
                    diagnostics: report.diagnostics,
                    notes: report.notes,
                };
                return (pretty(&out), code);
            }
            let mut text = String::new();
            for l in &report.lines {
                text.push_str(l);
                text.push('\n');
            }
            for d in &report.diagnostics {
                let mark = if d.passed { "ok" } else { "FAILED" };
                text.push_str(&format!("check {}: {mark} ({})\n", d.check, d.detail));
            }
            for n in &report.notes {
                text.push_str(&format!("note: {n}\n"));
            }
            if !report.diagnostics.is_empty() {
                text.push_str(if ok { "all checks pass\n" } else { "verification failed\n" });
            }
            (text, code)
        }
    }
}
