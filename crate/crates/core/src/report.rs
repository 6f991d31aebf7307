//! Deterministic tabular reports.
//!
//! Every command renders to the same shape: a command name, an ok/fail
//! status, tab-separated rows in canonical key order, and optionally a
//! structured key/value payload for machine consumption. Exact arithmetic
//! and ordered maps make the output byte-identical across runs.

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub ok: bool,
    pub rows: Vec<Vec<String>>,
    pub payload: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: impl Into<String>, ok: bool, rows: Vec<Vec<String>>) -> Report {
        Report {
            command: command.into(),
            ok,
            rows,
            payload: None,
        }
    }

    pub fn with_payload(mut self, payload: serde_json::Value) -> Report {
        self.payload = Some(payload);
        self
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!(
            "# {}: {}\n",
            self.command,
            if self.ok { "ok" } else { "fail" }
        );
        for row in &self.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_doc(&self) -> serde_json::Value {
        let mut doc = serde_json::json!({
            "command": self.command,
            "status": if self.ok { "ok" } else { "fail" },
            "rows": self.rows,
        });
        if let Some(payload) = &self.payload {
            doc["payload"] = payload.clone();
        }
        doc
    }
}

/// Renders a batch of reports in the requested format.
pub fn render_reports(reports: &[Report], doc_format: bool) -> String {
    if doc_format {
        let values: Vec<serde_json::Value> = reports.iter().map(Report::to_doc).collect();
        let mut text = serde_json::to_string_pretty(&values).expect("serializable");
        text.push('\n');
        text
    } else {
        let mut out = String::new();
        for (i, report) in reports.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&report.to_tsv());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_shape() {
        let report = Report::new(
            "forward",
            true,
            vec![vec!["0".into(), "0".into(), "1".into()]],
        );
        assert_eq!(report.to_tsv(), "# forward: ok\n0\t0\t1\n");
    }

    #[test]
    fn doc_shape() {
        let report = Report::new("check", false, vec![]);
        let doc = report.to_doc();
        assert_eq!(doc["status"], "fail");
        assert_eq!(doc["command"], "check");
        assert!(doc.get("payload").is_none());
        let with =
            Report::new("forward", true, vec![]).with_payload(serde_json::json!({"terms": []}));
        assert_eq!(with.to_doc()["payload"]["terms"], serde_json::json!([]));
    }
}
