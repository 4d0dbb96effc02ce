//! JSON file formats for families, nc polynomials, arrangements, verdicts.
//! Coefficients are strings ("3", "-1/2") so values stay exact. Every file
//! carries "format": 1.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::polyalg::rat::{self, Rat};
use crate::polyalg::{Arrangement, CommPoly, Monomial, NcPoly, NcWord, PolyFamily, VarId};
use crate::recover::stats::Stats;
use crate::recover::verdict::{Verdict, VerdictKind};

pub const FORMAT: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{field}: {reason}")]
    Invalid { field: String, reason: String },
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn invalid(field: impl Into<String>, reason: impl Into<String>) -> IoError {
    IoError::Invalid {
        field: field.into(),
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub c: String,
    pub m: Vec<(VarId, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFile {
    pub terms: Vec<TermFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub format: u32,
    pub k: usize,
    pub polys: Vec<PolyFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordTermFile {
    pub c: String,
    pub w: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NcPolyFile {
    #[serde(default = "format_one")]
    pub format: u32,
    pub terms: Vec<WordTermFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    #[serde(default = "format_one")]
    pub format: u32,
    pub k: usize,
    #[serde(rename = "X")]
    pub x: Vec<Vec<VarId>>,
    #[serde(rename = "Y")]
    pub y: Vec<Vec<VarId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsFile {
    pub equality_checks: u64,
    pub coefficient_list_calls: u64,
    pub linear_solve_ops: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phases: Option<Stats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictFile {
    pub format: u32,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<NcPolyFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrangement: Option<ArrangementFile>,
    pub witness: Map<String, Value>,
    pub stats: StatsFile,
}

fn format_one() -> u32 {
    FORMAT
}

fn check_format(found: u32, field: &str) -> Result<(), IoError> {
    if found != FORMAT {
        return Err(invalid(field, format!("unsupported format {found}, expected {FORMAT}")));
    }
    Ok(())
}

fn parse_coeff(s: &str, field: &str) -> Result<Rat, IoError> {
    let c = rat::parse(s).ok_or_else(|| invalid(field, format!("'{s}' is not an integer or fraction")))?;
    if num_traits::Zero::is_zero(&c) {
        return Err(invalid(field, "coefficient is zero"));
    }
    Ok(c)
}

pub fn poly_to_file(p: &CommPoly) -> PolyFile {
    PolyFile {
        terms: p
            .terms()
            .map(|(m, c)| TermFile {
                c: rat::format(c),
                m: m.pairs().to_vec(),
            })
            .collect(),
    }
}

pub fn family_to_file(fam: &PolyFamily) -> FamilyFile {
    FamilyFile {
        format: FORMAT,
        k: fam.k,
        polys: fam.polys.iter().map(poly_to_file).collect(),
    }
}

pub fn family_from_file(f: &FamilyFile) -> Result<PolyFamily, IoError> {
    check_format(f.format, "format")?;
    if f.k == 0 {
        return Err(invalid("k", "must be positive"));
    }
    if f.polys.len() != f.k * f.k {
        return Err(invalid("polys", format!("expected {} polynomials, found {}", f.k * f.k, f.polys.len())));
    }
    let max_var = (2 * f.k * f.k) as VarId;
    let mut polys = Vec::with_capacity(f.polys.len());
    for (i, pf) in f.polys.iter().enumerate() {
        let mut p = CommPoly::zero();
        let mut seen = std::collections::BTreeSet::new();
        for (j, t) in pf.terms.iter().enumerate() {
            let field = format!("polys[{i}].terms[{j}]");
            let c = parse_coeff(&t.c, &format!("{field}.c"))?;
            for (n, w) in t.m.windows(2).enumerate() {
                if w[0].0 >= w[1].0 {
                    return Err(invalid(format!("{field}.m[{}]", n + 1), "variables must be strictly increasing"));
                }
            }
            for (n, &(v, e)) in t.m.iter().enumerate() {
                if v == 0 || v > max_var {
                    return Err(invalid(format!("{field}.m[{n}]"), format!("variable {v} outside 1..={max_var}")));
                }
                if e == 0 {
                    return Err(invalid(format!("{field}.m[{n}]"), "exponent must be positive"));
                }
            }
            let m = Monomial::from_pairs(t.m.iter().copied());
            if !seen.insert(m.clone()) {
                return Err(invalid(format!("{field}.m"), "duplicate monomial"));
            }
            p.add_term(m, c);
        }
        polys.push(p);
    }
    PolyFamily::new(f.k, polys).map_err(|e| invalid("polys", e.to_string()))
}

pub fn nc_to_file(p: &NcPoly) -> NcPolyFile {
    NcPolyFile {
        format: FORMAT,
        terms: p
            .terms()
            .map(|(w, c)| WordTermFile {
                c: rat::format(c),
                w: w.to_string(),
            })
            .collect(),
    }
}

pub fn nc_from_file(f: &NcPolyFile) -> Result<NcPoly, IoError> {
    check_format(f.format, "format")?;
    let mut p = NcPoly::zero();
    let mut seen = std::collections::BTreeSet::new();
    for (i, t) in f.terms.iter().enumerate() {
        let field = format!("terms[{i}]");
        let c = parse_coeff(&t.c, &format!("{field}.c"))?;
        if !t.w.chars().all(|ch| ch == 'X' || ch == 'Y') {
            return Err(invalid(format!("{field}.w"), "words use only the letters X and Y"));
        }
        let w = NcWord::parse(&t.w).ok_or_else(|| invalid(format!("{field}.w"), "unreadable word"))?;
        if !seen.insert(w.clone()) {
            return Err(invalid(format!("{field}.w"), "duplicate word"));
        }
        p.add_term(w, c);
    }
    Ok(p)
}

pub fn arrangement_to_file(a: &Arrangement) -> ArrangementFile {
    ArrangementFile {
        format: FORMAT,
        k: a.k,
        x: a.x.clone(),
        y: a.y.clone(),
        lambda: a.lambda.clone(),
    }
}

pub fn arrangement_from_file(f: &ArrangementFile) -> Result<Arrangement, IoError> {
    check_format(f.format, "format")?;
    let a = Arrangement::new(f.x.clone(), f.y.clone(), f.lambda.clone()).map_err(|e| invalid("arrangement", e.to_string()))?;
    if a.k != f.k {
        return Err(invalid("k", format!("grids are {}×{} but k = {}", a.k, a.k, f.k)));
    }
    Ok(a)
}

pub fn stats_to_file(s: &Stats, detailed: bool) -> StatsFile {
    StatsFile {
        equality_checks: s.equality_checks(),
        coefficient_list_calls: s.coefficient_list_calls,
        linear_solve_ops: s.linear_solve_ops,
        phases: detailed.then(|| s.clone()),
    }
}

pub fn verdict_to_file(v: &Verdict, detailed_stats: bool) -> VerdictFile {
    VerdictFile {
        format: FORMAT,
        kind: v.kind.as_str().to_string(),
        p: v.representation.as_ref().map(|(p, _)| nc_to_file(p)),
        arrangement: v.representation.as_ref().map(|(_, a)| arrangement_to_file(a)),
        witness: v.witness.clone(),
        stats: stats_to_file(&v.stats, detailed_stats),
    }
}

pub fn verdict_from_file(f: &VerdictFile) -> Result<Verdict, IoError> {
    check_format(f.format, "format")?;
    let kind = match f.kind.as_str() {
        "found" => VerdictKind::Found,
        "refuted" => VerdictKind::Refuted,
        "inconclusive" => VerdictKind::Inconclusive,
        other => return Err(invalid("kind", format!("unknown kind '{other}'"))),
    };
    let representation = match (&f.p, &f.arrangement) {
        (Some(p), Some(a)) => Some((nc_from_file(p)?, arrangement_from_file(a)?)),
        (None, None) => None,
        _ => return Err(invalid("p", "p and arrangement must appear together")),
    };
    if (kind == VerdictKind::Found) != representation.is_some() {
        return Err(invalid("kind", "a found verdict carries p and arrangement, others carry neither"));
    }
    let stats = f.stats.phases.clone().unwrap_or_else(|| Stats {
        coefficient_list_calls: f.stats.coefficient_list_calls,
        linear_solve_ops: f.stats.linear_solve_ops,
        ..Stats::default()
    });
    Ok(Verdict {
        kind,
        representation,
        witness: f.witness.clone(),
        stats,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_family(src: &str) -> Result<PolyFamily, IoError> {
    family_from_file(&serde_json::from_str(src)?)
}

pub fn parse_nc_file(src: &str) -> Result<NcPoly, IoError> {
    nc_from_file(&serde_json::from_str(src)?)
}

pub fn parse_arrangement(src: &str) -> Result<Arrangement, IoError> {
    arrangement_from_file(&serde_json::from_str(src)?)
}

pub fn parse_verdict(src: &str) -> Result<Verdict, IoError> {
    verdict_from_file(&serde_json::from_str(src)?)
}
