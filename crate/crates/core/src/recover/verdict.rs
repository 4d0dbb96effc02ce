use serde_json::{Map, Value};

use super::stats::Stats;
use crate::polyalg::{Arrangement, NcPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    Found,
    Refuted,
    Inconclusive,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Found => "found",
            VerdictKind::Refuted => "refuted",
            VerdictKind::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of a recovery run. `witness` is a JSON object describing why the
/// verdict was reached.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub representation: Option<(NcPoly, Arrangement)>,
    pub witness: Map<String, Value>,
    pub stats: Stats,
}

impl Verdict {
    pub fn found(p: NcPoly, arr: Arrangement, witness: Map<String, Value>, stats: Stats) -> Self {
        Verdict {
            kind: VerdictKind::Found,
            representation: Some((p, arr)),
            witness,
            stats,
        }
    }

    pub fn without_representation(kind: VerdictKind, witness: Map<String, Value>, stats: Stats) -> Self {
        Verdict {
            kind,
            representation: None,
            witness,
            stats,
        }
    }

    pub fn is_found(&self) -> bool {
        self.kind == VerdictKind::Found
    }
}

/// Builds a witness object from key/value pairs.
pub fn witness<I, K>(pairs: I) -> Map<String, Value>
where
    I: IntoIterator<Item = (K, Value)>,
    K: Into<String>,
{
    pairs.into_iter().map(|(k, v)| (k.into(), v)).collect()
}
