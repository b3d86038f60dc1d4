use serde::Serialize;
use serde_json::Value;
use uacyc::rational::{decimal, format_rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub achieved: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed: Option<String>,
    /// Non-authoritative renderings, only with `--decimal`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    values: Option<(Rat, Rat)>,
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

impl Assertion {
    pub fn check(name: impl Into<String>, ok: bool) -> Self {
        Assertion {
            name: name.into(),
            status: status(ok),
            achieved: None,
            relation: None,
            claimed: None,
            approx: None,
            note: None,
            values: None,
        }
    }

    /// `achieved ≤ claimed`.
    pub fn bound(name: impl Into<String>, achieved: &Rat, claimed: &Rat) -> Self {
        Assertion {
            status: status(achieved <= claimed),
            achieved: Some(format_rat(achieved)),
            relation: Some("<="),
            claimed: Some(format_rat(claimed)),
            values: Some((achieved.clone(), claimed.clone())),
            ..Self::check(name, true)
        }
    }

    pub fn equal(name: impl Into<String>, achieved: &Rat, claimed: &Rat) -> Self {
        Assertion {
            status: status(achieved == claimed),
            achieved: Some(format_rat(achieved)),
            relation: Some("=="),
            claimed: Some(format_rat(claimed)),
            values: Some((achieved.clone(), claimed.clone())),
            ..Self::check(name, true)
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub settings: Value,
    pub assertions: Vec<Assertion>,
    pub details: Value,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(Assertion::passed)
    }

    pub fn add_decimals(&mut self, digits: usize) {
        for a in &mut self.assertions {
            if let Some((x, y)) = &a.values {
                a.approx = Some(format!("{} vs {} (decimal, non-authoritative)", decimal(x, digits), decimal(y, digits)));
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}  inputs {}\n", self.command, &self.inputs_digest[..16]));
        for line in &self.text {
            out.push_str(line);
            out.push('\n');
        }
        let width = self.assertions.iter().map(|a| a.name.len()).max().unwrap_or(0);
        for a in &self.assertions {
            let tag = if a.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag}  {:width$}", a.name));
            if let (Some(x), Some(r), Some(y)) = (&a.achieved, a.relation, &a.claimed) {
                out.push_str(&format!("  {x} {r} {y}"));
            }
            if let Some(d) = &a.approx {
                out.push_str(&format!("  [{d}]"));
            }
            if let Some(n) = &a.note {
                out.push_str(&format!("  ({n})"));
            }
            out.push('\n');
        }
        let failed = self.assertions.iter().filter(|a| !a.passed()).count();
        out.push_str(&format!("{} assertions, {} failed\n", self.assertions.len(), failed));
        out
    }
}
