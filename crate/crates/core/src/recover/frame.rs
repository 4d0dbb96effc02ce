use super::failure::{Failure, FailureKind};
use super::nccoef::{nc_coef, NcCoefError};
use super::partition::{diag_par1, diag_par2, FrameSpec, Partition};
use super::position::{par_pos_x, pos_o, pos_pol, Placement};
use super::stats::Stats;
use super::verify::verify;
use crate::polyalg::{Arrangement, Grid, NcPoly, PolyFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionMethod {
    Par1,
    Par2,
}

impl PartitionMethod {
    pub fn name(self) -> &'static str {
        match self {
            PartitionMethod::Par1 => "diag_par1",
            PartitionMethod::Par2 => "diag_par2",
        }
    }
}

/// One attempt of the positioning pipeline. `work` is the family the
/// primary letter is read from (the input itself, or a reduced family);
/// the other letter and the coefficients always come from `original`.
pub struct Frame<'a> {
    pub original: &'a PolyFamily,
    pub work: &'a PolyFamily,
    pub spec: FrameSpec,
    pub method: PartitionMethod,
    pub transpose_tiebreak: bool,
}

/// Runs partition, ParPosX, PosPol, PosY, NcCoef and verify. The primary
/// letter is returned as X.
pub fn run_frame(frame: &Frame, stats: &mut Stats) -> Result<(NcPoly, Arrangement), Failure> {
    let work_n = frame.work.homogeneous_part(frame.spec.n);
    let part = match frame.method {
        PartitionMethod::Par1 => diag_par1(&work_n, &frame.spec, stats)?,
        PartitionMethod::Par2 => diag_par2(&work_n, &frame.spec, stats)?,
    };
    let grid = par_pos_x(&work_n, &frame.spec, &part.p_off(), frame.transpose_tiebreak, stats)?;
    let placement = pos_pol(&work_n, &frame.spec, &grid, stats)?;
    finish(frame.original, &grid, &placement, &part, stats)
}

/// Positions the other letter and solves for the coefficients, trying each
/// candidate grid in turn. Reports the first failure if none works.
pub fn finish(original: &PolyFamily, p_grid: &Grid, placement: &Placement, part: &Partition, stats: &mut Stats) -> Result<(NcPoly, Arrangement), Failure> {
    let cands = pos_o(original, p_grid, placement, part, stats)?;
    let lambda: Vec<Vec<usize>> = placement.iter().map(|r| r.iter().map(|q| q + 1).collect()).collect();
    let mut first: Option<Failure> = None;
    for o_grid in cands.grids {
        let arr = match Arrangement::new(p_grid.clone(), o_grid, Some(lambda.clone())) {
            Ok(a) => a,
            Err(e) => {
                first.get_or_insert(Failure::mismatch("pos_y", e.to_string()));
                continue;
            }
        };
        match nc_coef(original, &arr, stats) {
            Ok(p) => match verify(original, &arr, &p) {
                Ok(()) => return Ok((p, arr)),
                Err(m) => {
                    first.get_or_insert(Failure {
                        stage: "verify",
                        kind: FailureKind::Verify,
                        detail: format!("entry ({},{}) differs", m.row, m.col),
                    });
                }
            },
            Err(NcCoefError::NoSolution { degree, row, col, monomial }) => {
                first.get_or_insert(Failure {
                    stage: "nc_coef",
                    kind: FailureKind::NcCoef { degree },
                    detail: format!("degree {degree} system inconsistent at entry ({row},{col}), monomial {monomial}"),
                });
            }
            Err(e) => {
                first.get_or_insert(Failure::mismatch("nc_coef", e.to_string()));
            }
        }
    }
    Err(first.unwrap_or_else(|| Failure::mismatch("pos_y", "no candidate grid")))
}
