use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureKind {
    /// The family does not show the pattern the stage relies on.
    Mismatch,
    /// Two patterns the stage must tell apart coincide.
    Collision,
    /// The coefficient system has no solution for the produced arrangement.
    NcCoef { degree: u32 },
    /// A solution was found but does not reproduce the family.
    Verify,
}

/// Why one attempt of the positioning pipeline stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub stage: &'static str,
    pub kind: FailureKind,
    pub detail: String,
}

impl Failure {
    pub fn mismatch(stage: &'static str, detail: impl Into<String>) -> Self {
        Failure {
            stage,
            kind: FailureKind::Mismatch,
            detail: detail.into(),
        }
    }

    pub fn collision(stage: &'static str, detail: impl Into<String>) -> Self {
        Failure {
            stage,
            kind: FailureKind::Collision,
            detail: detail.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match &self.kind {
            FailureKind::Mismatch => "pattern_mismatch",
            FailureKind::Collision => "coefficient_collision",
            FailureKind::NcCoef { .. } => "nc_coef_inconsistent",
            FailureKind::Verify => "verify_mismatch",
        };
        let mut v = json!({"stage": self.stage, "kind": kind, "detail": self.detail});
        if let FailureKind::NcCoef { degree } = self.kind {
            v["degree"] = json!(degree);
        }
        v
    }
}
