//! Output artifacts with frozen shapes.
//!
//! JSON outputs are serialized from typed structs (stable field order), so a
//! parse/re-emit cycle through the same types is byte-identical. CSV column
//! orders are frozen here and documented in the README. Every artifact embeds
//! the effective semantic configuration (command and numeric parameters);
//! execution parameters such as thread count are deliberately excluded, since
//! outputs are bit-identical across thread counts.

use serde::{Deserialize, Serialize};

/// Effective semantic configuration echoed into every artifact.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct EffectiveConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub what: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heights: Option<Vec<f64>>,
}

/// JSON artifact of a Monte Carlo estimate.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EstimateOut {
    pub config: EffectiveConfig,
    pub value: f64,
    pub std_err: f64,
    pub n: u64,
    pub seed: u64,
}

/// JSON artifact of a scalar value (exact constants, quadrature results).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ValueOut {
    pub config: EffectiveConfig,
    pub value: f64,
}

/// JSON artifact of the isoperimetric bound report.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IsoReportOut {
    pub config: EffectiveConfig,
    pub ratio: f64,
    pub hbar: f64,
    pub n_parts: u64,
    pub nonacute_lb: f64,
    pub p_upper: f64,
    pub beats_disk: bool,
}

/// JSON error envelope emitted on stderr for validation failures.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ErrorOut {
    pub error: ErrorBody,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

pub fn error_json(kind: &str, message: &str) -> String {
    serde_json::to_string(&ErrorOut {
        error: ErrorBody {
            kind: kind.to_string(),
            message: message.to_string(),
        },
    })
    .expect("error serialization")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output serialization");
    text.push('\n');
    text
}

/// CSV writer with the config echoed on a leading `#` comment line.
pub struct Csv {
    buffer: String,
}

impl Csv {
    pub fn new(config: &EffectiveConfig, header: &str) -> Csv {
        let mut buffer = String::new();
        buffer.push_str("# config: ");
        buffer.push_str(&serde_json::to_string(config).expect("config serialization"));
        buffer.push('\n');
        buffer.push_str(header);
        buffer.push('\n');
        Csv { buffer }
    }

    pub fn row(&mut self, fields: &[CsvField]) {
        let mut first = true;
        for field in fields {
            if !first {
                self.buffer.push(',');
            }
            first = false;
            match field {
                CsvField::Float(v) => self.buffer.push_str(&format!("{v}")),
                CsvField::Int(v) => self.buffer.push_str(&format!("{v}")),
                CsvField::Bool(v) => self.buffer.push_str(if *v { "true" } else { "false" }),
                CsvField::Str(v) => self.buffer.push_str(v),
                CsvField::Empty => {}
            }
        }
        self.buffer.push('\n');
    }

    pub fn comment(&mut self, text: &str) {
        self.buffer.push_str("# ");
        self.buffer.push_str(text);
        self.buffer.push('\n');
    }

    pub fn finish(self) -> String {
        self.buffer
    }
}

pub enum CsvField<'a> {
    Float(f64),
    Int(i64),
    Bool(bool),
    Str(&'a str),
    Empty,
}
