//! Verdicts and their justification traces.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

/// Trivial distinction (`η^0`) or η-distinction (`η^1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Trivial,
    Eta,
}

impl Kind {
    pub const BOTH: [Kind; 2] = [Kind::Trivial, Kind::Eta];

    /// The kind `η^bit`, for any integer exponent.
    pub fn from_parity(bit: i64) -> Kind {
        if bit.rem_euclid(2) == 0 {
            Kind::Trivial
        } else {
            Kind::Eta
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Kind::Trivial => 0,
            Kind::Eta => 1,
        }
    }

    pub fn other(self) -> Kind {
        match self {
            Kind::Trivial => Kind::Eta,
            Kind::Eta => Kind::Trivial,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Trivial => "distinguished",
            Kind::Eta => "eta-distinguished",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "FIRST-DIR")]
    FirstDir,
    #[serde(rename = "SEC-DIR")]
    SecDir,
    #[serde(rename = "JAC-MOD")]
    JacMod,
    #[serde(rename = "LADDER-THM")]
    LadderThm,
    #[serde(rename = "LADDER-THM-2")]
    LadderThm2,
    #[serde(rename = "NOBOTH-THM")]
    NobothThm,
    #[serde(rename = "NOBOTH-LEM")]
    NobothLem,
    #[serde(rename = "KNOWN")]
    Known,
    #[serde(rename = "PAIRING")]
    Pairing,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::FirstDir => "FIRST-DIR",
            Rule::SecDir => "SEC-DIR",
            Rule::JacMod => "JAC-MOD",
            Rule::LadderThm => "LADDER-THM",
            Rule::LadderThm2 => "LADDER-THM-2",
            Rule::NobothThm => "NOBOTH-THM",
            Rule::NobothLem => "NOBOTH-LEM",
            Rule::Known => "KNOWN",
            Rule::Pairing => "PAIRING",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub rule: Rule,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctionReport {
    pub dist: Verdict,
    pub eta: Verdict,
    pub trace: Vec<TraceEntry>,
}

impl DistinctionReport {
    pub fn unknown() -> Self {
        DistinctionReport {
            dist: Verdict::Unknown,
            eta: Verdict::Unknown,
            trace: Vec::new(),
        }
    }

    pub fn verdict(&self, kind: Kind) -> Verdict {
        match kind {
            Kind::Trivial => self.dist,
            Kind::Eta => self.eta,
        }
    }

    pub fn set(&mut self, kind: Kind, v: Verdict) {
        match kind {
            Kind::Trivial => self.dist = v,
            Kind::Eta => self.eta = v,
        }
    }

    pub fn cite(&mut self, rule: Rule, detail: impl Into<String>) {
        self.trace.push(TraceEntry {
            rule,
            detail: detail.into(),
        });
    }

    pub fn cites(&self, rule: Rule) -> bool {
        self.trace.iter().any(|e| e.rule == rule)
    }

    /// Kinds answered YES.
    pub fn yes_kinds(&self) -> Vec<Kind> {
        Kind::BOTH
            .into_iter()
            .filter(|k| self.verdict(*k) == Verdict::Yes)
            .collect()
    }

    /// Same report with the two kinds exchanged (trace kept).
    pub fn swapped(&self) -> Self {
        DistinctionReport {
            dist: self.eta,
            eta: self.dist,
            trace: self.trace.clone(),
        }
    }

    pub fn is_definite(&self) -> bool {
        self.dist != Verdict::Unknown && self.eta != Verdict::Unknown
    }
}

impl fmt::Display for DistinctionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dist: {}", self.dist)?;
        writeln!(f, "eta:  {}", self.eta)?;
        for e in &self.trace {
            writeln!(f, "  [{}] {}", e.rule, e.detail)?;
        }
        Ok(())
    }
}
