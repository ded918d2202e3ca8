//! Verification reports: one row per checked identity or inequality, with the
//! two sides, the margin and the tolerance it was judged against.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::PhaseMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs = rhs`; margin `|lhs − rhs|`, passes iff `margin ≤ tol`.
    Equal,
    /// `lhs ≥ rhs`; margin `lhs − rhs`, passes iff `margin ≥ −tol`.
    AtLeast,
    /// `lhs ≤ rhs`; margin `rhs − lhs`, passes iff `margin ≥ −tol`.
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// Human-readable statement of what is checked.
    pub relation_text: String,
    pub relation: Relation,
    #[serde(deserialize_with = "number_or_nan")]
    pub lhs: f64,
    #[serde(deserialize_with = "number_or_nan")]
    pub rhs: f64,
    #[serde(deserialize_with = "number_or_nan")]
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// JSON has no NaN; serde_json writes it as `null`, read back as NaN.
fn number_or_nan<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        relation_text: impl Into<String>,
        relation: Relation,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
    ) -> Self {
        let margin = match relation {
            Relation::Equal => (lhs - rhs).abs(),
            Relation::AtLeast => lhs - rhs,
            Relation::AtMost => rhs - lhs,
        };
        let pass = margin.is_finite()
            && match relation {
                Relation::Equal => margin <= tolerance,
                Relation::AtLeast | Relation::AtMost => margin >= -tolerance,
            };
        Self {
            id: id.into(),
            relation_text: relation_text.into(),
            relation,
            lhs,
            rhs,
            margin,
            tolerance,
            pass,
            note: None,
        }
    }

    pub fn equal(id: impl Into<String>, text: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(id, text, Relation::Equal, lhs, rhs, tol)
    }

    pub fn at_least(id: impl Into<String>, text: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(id, text, Relation::AtLeast, lhs, rhs, tol)
    }

    pub fn at_most(id: impl Into<String>, text: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(id, text, Relation::AtMost, lhs, rhs, tol)
    }

    /// A row that fails because the computation behind it errored.
    pub fn errored(id: impl Into<String>, text: impl Into<String>, err: &Error) -> Self {
        let mut c = Self::new(id, text, Relation::Equal, f64::NAN, f64::NAN, 0.0);
        c.note = Some(format!("error: {err}"));
        c
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<PhaseMode>,
    pub checks: Vec<Check>,
    /// SHA-256 over every generated input of the run, hex encoded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inputs_digest: Option<String>,
    /// Omitted unless requested so that reports are byte-reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<f64>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: Option<u64>, mode: Option<PhaseMode>) -> Self {
        Self { suite: suite.into(), seed, mode, checks: Vec::new(), inputs_digest: None, wall_clock_ms: None }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Pushes the result of a fallible check, recording errors as failures.
    pub fn push_result(&mut self, id: &str, text: &str, check: Result<Check>) {
        self.checks.push(check.unwrap_or_else(|e| Check::errored(id, text, &e)));
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    /// Aligned plain-text table, one line per check.
    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0).max(5);
        let mut out = format!("suite {}", self.suite);
        if let Some(seed) = self.seed {
            out.push_str(&format!(" seed {seed}"));
        }
        if let Some(mode) = self.mode {
            out.push_str(&format!(" mode {mode}"));
        }
        if let Some(d) = &self.inputs_digest {
            out.push_str(&format!(" inputs {}", &d[..d.len().min(16)]));
        }
        out.push('\n');
        for c in &self.checks {
            out.push_str(&format!(
                "{} {:<width$} lhs={:<22} rhs={:<22} margin={:<12.3e} tol={:.0e}  {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                short(c.lhs),
                short(c.rhs),
                c.margin,
                c.tolerance,
                c.relation_text,
            ));
            if let Some(note) = &c.note {
                out.push_str(&format!("     {:<width$} note: {note}\n", ""));
            }
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

/// Plain decimal, switching to exponent form when that is shorter.
fn short(x: f64) -> String {
    let plain = x.to_string();
    if plain.len() > 20 {
        format!("{x:.15e}")
    } else {
        plain
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_follows_margin() {
        assert!(Check::equal("a", "", 1.0, 1.0 + 1e-10, 1e-9).pass);
        assert!(!Check::equal("a", "", 1.0, 1.1, 1e-9).pass);
        assert!(Check::at_least("b", "", 1.0, 1.0 + 1e-10, 1e-9).pass);
        assert!(!Check::at_least("b", "", 1.0, 2.0, 1e-9).pass);
        let c = Check::at_most("c", "", 1.0, 2.0, 1e-9);
        assert!(c.pass && c.margin == 1.0);
        assert!(!Check::equal("n", "", f64::NAN, 0.0, 1.0).pass);
        assert!(!Check::at_least("i", "", f64::INFINITY, f64::INFINITY, 1.0).pass);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let mut r = VerificationReport::new("unit", Some(7), Some(PhaseMode::Canonical));
        r.push(Check::equal("x", "0.1 + 0.2 = 0.3", 0.1 + 0.2, 0.3, 1e-9).with_note("roundoff"));
        r.push(Check::at_least("y", "", 1.0 / 3.0, std::f64::consts::PI.sqrt(), 1e-9));
        let s = r.to_json().unwrap();
        let back = VerificationReport::from_json(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json().unwrap(), s);
        assert!(!r.all_passed());
        assert_eq!(r.failures().count(), 1);
        assert!(r.to_table().contains("FAIL"));
    }

    #[test]
    fn errored_rows_round_trip() {
        let mut r = VerificationReport::new("unit", None, None);
        r.push(Check::errored("e", "broken", &Error::BadParameter("x".into())));
        let back = VerificationReport::from_json(&r.to_json().unwrap()).unwrap();
        assert!(back.checks[0].lhs.is_nan() && !back.checks[0].pass);
        assert_eq!(back.to_json().unwrap(), r.to_json().unwrap());
    }
}
