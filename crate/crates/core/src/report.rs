//! Serializable form of a [`Classification`] and its text rendering.
//!
//! The document shape is
//! `{ r, modulus, classes: [{a7, ..., a1, ...}], proof_steps: [{name, status, ...}] }`
//! with log-form integers (0 for zero, q - 1 for the unit).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::search::{ClassRecord, Classification, ProofReport, ProofStep, StepStatus};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub r: u32,
    /// Hex bit pattern of the defining polynomial, e.g. "0x13".
    pub modulus: String,
    pub classes: Vec<ClassEntry>,
    pub class_count: usize,
    pub proof_steps: Vec<StepEntry>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub a7: u32,
    pub a6: u32,
    pub a5: u32,
    pub a4: u32,
    pub a3: u32,
    pub a2: u32,
    pub a1: u32,
    pub frobenius_rep: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_link: Option<usize>,
    pub class_id: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepEntry {
    pub name: String,
    pub status: String,
    #[serde(default)]
    pub detail: String,
}

impl ClassEntry {
    pub fn tuple(&self) -> [u32; 7] {
        [
            self.a7, self.a6, self.a5, self.a4, self.a3, self.a2, self.a1,
        ]
    }
}

impl From<&Classification> for ReportDocument {
    fn from(c: &Classification) -> Self {
        let classes = c
            .records
            .iter()
            .map(|rec| {
                let [a7, a6, a5, a4, a3, a2, a1] = rec.tuple;
                ClassEntry {
                    a7,
                    a6,
                    a5,
                    a4,
                    a3,
                    a2,
                    a1,
                    frobenius_rep: rec.frobenius_rep,
                    pair_link: rec.pair_link,
                    class_id: rec.class_id,
                }
            })
            .collect();
        let proof_steps = c
            .report
            .steps
            .iter()
            .map(|s| StepEntry {
                name: s.name.clone(),
                status: s.status.to_string(),
                detail: s.detail.clone(),
            })
            .collect();
        ReportDocument {
            r: c.r,
            modulus: format!("{:#x}", c.modulus),
            classes,
            class_count: c.class_count,
            proof_steps,
            verdict: c.verdict(),
        }
    }
}

impl TryFrom<&ReportDocument> for Classification {
    type Error = Error;

    fn try_from(doc: &ReportDocument) -> Result<Self> {
        let modulus = u32::from_str_radix(doc.modulus.trim_start_matches("0x"), 16)
            .map_err(|_| Error::Parse(format!("bad modulus {:?}", doc.modulus)))?;
        let records = doc
            .classes
            .iter()
            .map(|e| ClassRecord {
                r: doc.r,
                tuple: e.tuple(),
                frobenius_rep: e.frobenius_rep,
                pair_link: e.pair_link,
                class_id: e.class_id,
            })
            .collect();
        let mut steps = Vec::with_capacity(doc.proof_steps.len());
        for s in &doc.proof_steps {
            let status = match s.status.as_str() {
                "PASS" => StepStatus::Pass,
                "FAIL" => StepStatus::Fail,
                other => return Err(Error::Parse(format!("unknown step status {other:?}"))),
            };
            steps.push(ProofStep {
                name: s.name.clone(),
                status,
                detail: s.detail.clone(),
            });
        }
        Ok(Classification {
            r: doc.r,
            modulus,
            records,
            class_count: doc.class_count,
            report: ProofReport { steps },
        })
    }
}

/// How field elements are printed in text output.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum ElementStyle {
    /// Log index: 0 for zero, i for e^i with the unit printed as q - 1.
    #[default]
    Log,
    /// Polynomial-basis bit pattern in hex.
    Basis,
}

/// Formats a log-form tuple as "(a7,...,a1)".
pub fn format_tuple(ctx: &FieldCtx, tuple: &[u32; 7], style: ElementStyle) -> Result<String> {
    let mut parts = Vec::with_capacity(7);
    for &i in tuple {
        parts.push(match style {
            ElementStyle::Log => i.to_string(),
            ElementStyle::Basis => format!("{:#x}", ctx.from_log_index(i)?.bits()),
        });
    }
    Ok(format!("({})", parts.join(",")))
}

/// One line per record (optionally Frobenius-filtered); for proof replays,
/// one line per step followed by the verdict.
pub fn render_text(
    ctx: &FieldCtx,
    c: &Classification,
    frobenius_only: bool,
    style: ElementStyle,
) -> Result<String> {
    let mut out = String::new();
    if c.r >= 7 {
        for s in &c.report.steps {
            out.push_str(&format!("{}  {}\n", s.status, s.name));
            if s.status == StepStatus::Fail {
                out.push_str(&format!("      {}\n", s.detail));
            }
        }
        out.push_str(&c.verdict());
        out.push('\n');
        return Ok(out);
    }
    for rec in &c.records {
        if frobenius_only && !rec.frobenius_rep {
            continue;
        }
        out.push_str(&format_tuple(ctx, &rec.tuple, style)?);
        out.push('\n');
    }
    Ok(out)
}
