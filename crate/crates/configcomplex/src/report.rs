//! Uniform reporting for CLI commands: named rows, optional pass/fail marks,
//! text or JSON rendering.

use serde::Serialize;

/// One line of a report: a name, a value, and an optional check outcome.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ok: Option<bool>,
}

/// A titled list of rows; `passed` aggregates the checked rows.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub title: String,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), rows: Vec::new() }
    }

    /// Informational row without a check mark.
    pub fn info(&mut self, name: impl Into<String>, value: impl ToString) {
        self.rows.push(ReportRow {
            name: name.into(),
            value: value.to_string(),
            ok: None,
        });
    }

    /// Checked row; failures flip the report outcome.
    pub fn check(&mut self, name: impl Into<String>, value: impl ToString, ok: bool) {
        self.rows.push(ReportRow {
            name: name.into(),
            value: value.to_string(),
            ok: Some(ok),
        });
    }

    /// True when no checked row failed.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.ok != Some(false))
    }

    /// Whether the report contains checked rows at all.
    pub fn has_checks(&self) -> bool {
        self.rows.iter().any(|r| r.ok.is_some())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        for row in &self.rows {
            let mark = match row.ok {
                None => String::new(),
                Some(true) => " [pass]".to_string(),
                Some(false) => " [FAIL]".to_string(),
            };
            out.push_str(&format!("  {}: {}{}\n", row.name, row.value, mark));
        }
        if self.has_checks() {
            out.push_str(&format!(
                "result: {}\n",
                if self.passed() { "pass" } else { "fail" }
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "title": self.title,
            "rows": self.rows,
            "passed": if self.has_checks() { Some(self.passed()) } else { None },
        })
    }
}
