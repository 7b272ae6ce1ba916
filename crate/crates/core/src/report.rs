//! Check reports in text and JSON.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Undecided,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Undecided => "undecided",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<String>,
    /// The mathematical statement this check instantiates.
    pub statement: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), ..Self::default() }
    }

    pub fn check(
        &mut self,
        name: impl Into<String>,
        verdict: Verdict,
        engine: Option<String>,
        statement: impl Into<String>,
        detail: impl Into<String>,
    ) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            verdict,
            engine,
            statement: statement.into(),
            detail: detail.into(),
        });
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    pub fn worst(&self) -> Verdict {
        self.checks.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Pass)
    }

    /// 0 when every check passes, 1 when one is refuted, 2 when undecided.
    pub fn exit_code(&self) -> i32 {
        match self.worst() {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Undecided => 2,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(v) = &self.value {
            out.push_str(v);
            out.push('\n');
        }
        let head = match &self.source {
            Some(s) => format!("{} ({s})", self.command),
            None => self.command.clone(),
        };
        out.push_str(&format!("# {head}\n"));
        for c in &self.checks {
            let engine = c.engine.as_deref().map(|e| format!(" [{e}]")).unwrap_or_default();
            let detail = if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) };
            out.push_str(&format!("  {:<9} {}{engine}{detail}\n", c.verdict.tag(), c.name));
            out.push_str(&format!("            statement: {}\n", c.statement));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Exit code for a batch: refutation wins over undecided.
pub fn batch_exit_code(codes: impl IntoIterator<Item = i32>) -> i32 {
    let codes: Vec<i32> = codes.into_iter().collect();
    if codes.contains(&1) {
        1
    } else if codes.contains(&2) {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut r = Report::new("verify");
        assert_eq!(r.exit_code(), 0);
        r.check("a", Verdict::Undecided, None, "s", "d");
        assert_eq!(r.exit_code(), 2);
        r.check("b", Verdict::Fail, None, "s", "d");
        assert_eq!(r.exit_code(), 1);
        assert_eq!(batch_exit_code([0, 2, 1]), 1);
        assert_eq!(batch_exit_code([0, 2]), 2);
    }

    #[test]
    fn text_and_json() {
        let mut r = Report::new("h1");
        r.value = Some("Z/2 + Z^9".into());
        r.check("computed", Verdict::Pass, Some("symplectic".into()), "H1 of the total space", "ok");
        let text = r.to_text();
        assert!(text.starts_with("Z/2 + Z^9\n"));
        assert!(text.contains("pass      computed [symplectic]: ok"));
        assert_eq!(r.to_json()["checks"][0]["verdict"], "pass");
    }
}
