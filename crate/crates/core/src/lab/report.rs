use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    #[serde(rename = "THM1")]
    Thm1,
    #[serde(rename = "THM2")]
    Thm2,
    #[serde(rename = "COR2_9")]
    Cor2_9,
    #[serde(rename = "COR2_10")]
    Cor2_10,
    #[serde(rename = "COR2_11")]
    Cor2_11,
    #[serde(rename = "PROP5")]
    Prop5,
    #[serde(rename = "PROP6")]
    Prop6,
    #[serde(rename = "EQ44")]
    Eq44,
    #[serde(rename = "LEM7")]
    Lem7,
    #[serde(rename = "NOOU_EQ_TODA")]
    NoouEqToda,
    #[serde(rename = "DET_EQ_SUM")]
    DetEqSum,
    #[serde(rename = "REM2")]
    Rem2,
    #[serde(rename = "LEM2")]
    Lem2,
    #[serde(rename = "LEM3")]
    Lem3,
    #[serde(rename = "LEM4")]
    Lem4,
    #[serde(rename = "LEM5")]
    Lem5,
    #[serde(rename = "LEM6")]
    Lem6,
}

impl CaseId {
    pub const ALL: [CaseId; 17] = [
        CaseId::Thm1,
        CaseId::Thm2,
        CaseId::Cor2_9,
        CaseId::Cor2_10,
        CaseId::Cor2_11,
        CaseId::Prop5,
        CaseId::Prop6,
        CaseId::Eq44,
        CaseId::Lem7,
        CaseId::NoouEqToda,
        CaseId::DetEqSum,
        CaseId::Rem2,
        CaseId::Lem2,
        CaseId::Lem3,
        CaseId::Lem4,
        CaseId::Lem5,
        CaseId::Lem6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::Thm1 => "THM1",
            CaseId::Thm2 => "THM2",
            CaseId::Cor2_9 => "COR2_9",
            CaseId::Cor2_10 => "COR2_10",
            CaseId::Cor2_11 => "COR2_11",
            CaseId::Prop5 => "PROP5",
            CaseId::Prop6 => "PROP6",
            CaseId::Eq44 => "EQ44",
            CaseId::Lem7 => "LEM7",
            CaseId::NoouEqToda => "NOOU_EQ_TODA",
            CaseId::DetEqSum => "DET_EQ_SUM",
            CaseId::Rem2 => "REM2",
            CaseId::Lem2 => "LEM2",
            CaseId::Lem3 => "LEM3",
            CaseId::Lem4 => "LEM4",
            CaseId::Lem5 => "LEM5",
            CaseId::Lem6 => "LEM6",
        }
    }

    pub fn parse(s: &str) -> Result<CaseId> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Precondition(format!("unknown identity id {s:?}")))
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Holds only under a documented reading or correction; the witness
    /// carries the measured deviation.
    Recorded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Recorded => "recorded",
        })
    }
}

/// One line of the JSONL report. Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub params: Vec<i64>,
    pub mode: String,
    pub status: Status,
    pub witness: Option<Value>,
    pub millis: Option<u64>,
    pub seed: u64,
}

impl Report {
    /// A negative control is any id with a `~variant` suffix; it is expected
    /// to fail.
    pub fn is_control(&self) -> bool {
        self.id.contains('~')
    }

    /// Pass/recorded for regular cases, fail for controls.
    pub fn as_expected(&self) -> bool {
        if self.is_control() {
            self.status == Status::Fail
        } else {
            self.status != Status::Fail
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

pub fn write_jsonl<W: Write>(out: &mut W, reports: &[Report]) -> Result<()> {
    for r in reports {
        writeln!(out, "{}", r.to_json_line())?;
    }
    Ok(())
}
