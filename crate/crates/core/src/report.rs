//! Named checks with exact residuals, serializable as a versioned report.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

pub const SCHEMA: &str = "meshforge-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub id: String,
    pub label: String,
    pub status: Status,
    /// Canonical printed residual; `0` when the check holds exactly.
    pub residual: String,
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub name: String,
    pub field: String,
    pub seed: Option<u64>,
    pub status: Status,
    pub entries: Vec<Entry>,
    /// Literal transcriptions that are recorded but do not affect `status`.
    pub errata: Vec<Entry>,
    pub facts: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, field: impl fmt::Display) -> Self {
        VerificationReport {
            schema: SCHEMA,
            name: name.into(),
            field: field.to_string(),
            seed: None,
            status: Status::Pass,
            entries: Vec::new(),
            errata: Vec::new(),
            facts: BTreeMap::new(),
        }
    }

    fn make(id: &str, label: &str, residual: String, ok: bool, started: Option<Instant>) -> Entry {
        Entry {
            id: id.to_string(),
            label: label.to_string(),
            status: Status::from_bool(ok),
            residual,
            timing_ms: started.map(|t| t.elapsed().as_secs_f64() * 1e3),
        }
    }

    /// Records a check whose residual must print as `0`.
    pub fn check(&mut self, id: &str, label: &str, residual: impl fmt::Display, started: Option<Instant>) -> bool {
        let r = residual.to_string();
        let ok = r == "0";
        self.push(Self::make(id, label, r, ok, started));
        ok
    }

    /// Records a check with an explicit verdict; `detail` goes in the residual slot.
    pub fn check_bool(&mut self, id: &str, label: &str, ok: bool, detail: impl fmt::Display, started: Option<Instant>) -> bool {
        self.push(Self::make(id, label, detail.to_string(), ok, started));
        ok
    }

    pub fn push(&mut self, e: Entry) {
        if !e.status.is_pass() {
            self.status = Status::Fail;
        }
        self.entries.push(e);
    }

    /// Records a literal transcription probe; never changes the overall status.
    pub fn erratum(&mut self, id: &str, label: &str, residual: impl fmt::Display) -> bool {
        let r = residual.to_string();
        let ok = r == "0";
        self.errata.push(Self::make(id, label, r, ok, None));
        ok
    }

    pub fn fact(&mut self, key: &str, value: impl fmt::Display) {
        self.facts.insert(key.to_string(), value.to_string());
    }

    /// Appends another report's entries, errata, and facts under a prefix.
    /// Appends another report's records, ids prefixed by `prefix.` unless it is empty.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        let key = |id: &str| if prefix.is_empty() { id.to_string() } else { format!("{prefix}.{id}") };
        for mut e in other.entries {
            e.id = key(&e.id);
            self.push(e);
        }
        for mut e in other.errata {
            e.id = key(&e.id);
            self.errata.push(e);
        }
        for (k, v) in other.facts {
            self.facts.insert(key(&k), v);
        }
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    pub fn entry(&self, id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn strip_timings(&mut self) {
        for e in self.entries.iter_mut().chain(self.errata.iter_mut()) {
            e.timing_ms = None;
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "report {} [{}] over {}", self.name, self.schema, self.field)?;
        if let Some(s) = self.seed {
            writeln!(f, "seed {s}")?;
        }
        for e in &self.entries {
            write!(f, "{} {} {} | residual: {}", e.status, e.id, e.label, e.residual)?;
            if let Some(t) = e.timing_ms {
                write!(f, " ({t:.1} ms)")?;
            }
            writeln!(f)?;
        }
        if !self.errata.is_empty() {
            writeln!(f, "literal transcription probes (informational):")?;
            for e in &self.errata {
                writeln!(f, "  {} {} {} | residual: {}", e.status, e.id, e.label, e.residual)?;
            }
        }
        for (k, v) in &self.facts {
            writeln!(f, "fact {k} = {v}")?;
        }
        write!(f, "overall: {}", self.status)
    }
}
