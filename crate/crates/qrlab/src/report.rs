//! Per-prime verification reports and their CSV / JSON-lines renderings.
//!
//! Reports must be byte-identical across job counts, so the `micros`
//! field is serialized as 0; wall-clock timing goes to the stderr summary
//! instead of the persisted artifact.

use serde::Serialize;

/// One named check outcome at one prime.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub computed: String,
    pub expected: String,
    pub micros: u64,
}

impl CheckResult {
    pub fn new(name: &str, pass: bool, computed: String, expected: String) -> Self {
        CheckResult {
            name: name.to_string(),
            pass,
            computed,
            expected,
            micros: 0,
        }
    }
}

/// All check outcomes for one prime; each name appears at most once.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub prime: u64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// JSON-lines: one `{"prime": .., "checks": [..]}` object per line.
pub fn render_json(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("report serializes"));
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV with the fixed header `prime,check,pass,computed,expected,micros`.
pub fn render_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("prime,check,pass,computed,expected,micros\n");
    for r in reports {
        for c in &r.checks {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.prime,
                csv_field(&c.name),
                c.pass,
                csv_field(&c.computed),
                csv_field(&c.expected),
                c.micros
            ));
        }
    }
    out
}
