//! Machine-readable run records.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::geometry::Point2;
use crate::oracle::PropertyResult;
use crate::two_cover::TwoCoverCheck;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandInfo {
    pub name: String,
    pub params: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommandOutput {
    Packing {
        centers: Vec<Point2>,
        radius: f64,
        k: usize,
        steps: usize,
    },
    KCover {
        centers: Vec<Point2>,
        radius: f64,
        certificate_delta: f64,
        radii_trace: Vec<f64>,
        saturated: bool,
    },
    KPack {
        centers: Vec<Point2>,
        radius: f64,
    },
    TwoCover {
        feasible: bool,
        radius: f64,
        /// Largest radius known to fail, for minimization runs.
        lower: Option<f64>,
        centers: Vec<Point2>,
        check: Option<TwoCoverCheck>,
    },
    Verify {
        passed: bool,
        results: Vec<PropertyResult>,
    },
    Render {
        svg: String,
    },
}

impl CommandOutput {
    /// Disk centers and their common radius, when the output has disks.
    pub fn disks(&self) -> Option<(&[Point2], f64)> {
        match self {
            CommandOutput::Packing { centers, radius, .. }
            | CommandOutput::KCover { centers, radius, .. }
            | CommandOutput::KPack { centers, radius } => Some((centers, *radius)),
            CommandOutput::TwoCover {
                feasible: true,
                centers,
                radius,
                ..
            } => Some((centers, *radius)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: CommandInfo,
    pub input: InputInfo,
    pub output: CommandOutput,
    /// Milliseconds per phase; present only when requested, so that records
    /// of identical runs are byte-identical by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl RunRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
