mod common;

use common::*;
use ncrep::polyalg::{expand, Arrangement, CommPoly, PolyMatrix};
use ncrep::recover::stats::Stats;
use ncrep::recover::verdict::VerdictKind;
use ncrep::recover::{nc_coef, permutation_equivalent, recover, verify, EquivCase, RecoverOptions};

fn found(fam: &ncrep::polyalg::PolyFamily) -> (ncrep::polyalg::NcPoly, Arrangement) {
    let v = recover(fam, &RecoverOptions::default());
    assert_eq!(v.kind, VerdictKind::Found, "witness: {:?}", v.witness);
    let (p, arr) = v.representation.expect("representation");
    verify(fam, &arr, &p).expect("recovered representation expands to the family");
    (p, arr)
}

#[test]
fn expand_reproduces_intro_family() {
    let arr = Arrangement::standard(2);
    let m = expand(&nc("X^2 + XY"), &arr);
    assert_eq!(m.to_family(&arr), intro_family());
}

#[test]
fn commutator_square_is_scalar() {
    let m = expand(&nc("XYXY - XYYX - YXXY + YXYX"), &Arrangement::standard(2));
    let d = commutator_square_diagonal();
    assert_eq!(m.get(0, 0), &d);
    assert_eq!(m.get(1, 1), &d);
    assert_eq!(m.get(0, 1), &CommPoly::zero());
    assert_eq!(m.get(1, 0), &CommPoly::zero());
}

#[test]
fn recovers_intro_family() {
    let (p, arr) = found(&intro_family());
    let e = permutation_equivalent(&Arrangement::standard(2), &arr).expect("equivalent");
    assert_eq!(e.case.apply_poly(&p), nc("X^2 + XY"));
}

#[test]
fn recovers_coefficients_3_and_6() {
    let (p, arr) = found(&coeffs_3_6_family());
    let (want_p, want_arr) = coeffs_3_6_answer();
    verify(&coeffs_3_6_family(), &want_arr, &want_p).unwrap();
    let e = permutation_equivalent(&want_arr, &arr).expect("equivalent to the known arrangement");
    assert_eq!(e.case.apply_poly(&p), want_p);
}

#[test]
fn all_ones_is_inconclusive() {
    let v = recover(&all_ones_family(), &RecoverOptions::default());
    assert_eq!(v.kind, VerdictKind::Inconclusive, "witness: {:?}", v.witness);
}

#[test]
fn nc_coef_on_fixed_arrangement() {
    let fam = fixed_arrangement_family();
    let arr = Arrangement::standard(2);
    let p = nc_coef(&fam, &arr, &mut Stats::default()).unwrap();
    assert_eq!(p, nc("4X^2 + XY + YX + 6Y^2"));
}

#[test]
fn dropping_one_term_breaks_degree_2_system() {
    let mut fam = fixed_arrangement_family();
    fam.polys[0] = &fam.polys[0] - &common::family(2, &["x2x7", "0", "0", "0"]).polys[0];
    let err = nc_coef(&fam, &Arrangement::standard(2), &mut Stats::default()).unwrap_err();
    assert!(matches!(err, ncrep::recover::NcCoefError::NoSolution { degree: 2, row: 1, col: 1, .. }), "{err:?}");
}

#[test]
fn cubic_perturbation_is_refuted_at_degree_3() {
    let fam = inconsistent_cubic_family();
    let err = nc_coef(&fam, &Arrangement::standard(2), &mut Stats::default()).unwrap_err();
    assert!(matches!(err, ncrep::recover::NcCoefError::NoSolution { degree: 3, .. }), "{err:?}");
    let v = recover(&fam, &RecoverOptions::default());
    assert_eq!(v.kind, VerdictKind::Refuted, "witness: {:?}", v.witness);
    assert_eq!(v.witness["nc_coef_inconsistent_degree"], 3);
}

#[test]
fn recovers_five_x2_plus_xy() {
    let fam = five_x2_family();
    let (p, arr) = found(&fam);
    let (want_p, want_arr) = five_x2_answer();
    verify(&fam, &want_arr, &want_p).unwrap();
    let e = permutation_equivalent(&want_arr, &arr).expect("equivalent");
    assert_eq!(e.case.apply_poly(&p), want_p);
    assert!(verify(&fam, &want_arr, &nc("5X^2 + YX")).is_err());

    let opts = RecoverOptions { transpose_tiebreak: true, ..Default::default() };
    let v = recover(&fam, &opts);
    let (p2, arr2) = v.representation.expect("found");
    assert_eq!(p2, want_p);
    assert!(permutation_equivalent(&want_arr, &arr2).is_some_and(|e| e.case == EquivCase::Identity));
}

#[test]
fn recovers_commutator() {
    let fam = commutator_family();
    let (p, arr) = found(&fam);
    let (want_p, want_arr) = commutator_answer();
    verify(&fam, &want_arr, &want_p).unwrap();
    let first_choice = Arrangement::new(want_arr.x.clone(), vec![vec![5, 6], vec![7, 8]], want_arr.lambda.clone()).unwrap();
    assert!(verify(&fam, &first_choice, &want_p).is_err());
    assert!(verify(&fam, &first_choice, &nc("X^2 + XY - YX")).is_err());
    let e = permutation_equivalent(&want_arr, &arr).expect("equivalent");
    assert_eq!(e.case.apply_poly(&p), want_p);
}

#[test]
fn recovers_cube_grid() {
    let fam = cube_family();
    let (p, arr) = found(&fam);
    assert_eq!(p, nc("X^3"));
    let e = ncrep::recover::grid_equivalent(&cube_grid(), &arr.x).expect("grid equivalent");
    assert!(matches!(e.case, EquivCase::Identity | EquivCase::Transpose));
}

#[test]
fn constant_family_found() {
    let mut m = PolyMatrix::zero(2);
    m.entries[0][0] = CommPoly::constant(ncrep::polyalg::rat::int(7));
    m.entries[1][1] = CommPoly::constant(ncrep::polyalg::rat::int(7));
    let fam = m.to_family(&Arrangement::standard(2));
    let (p, _) = found(&fam);
    assert_eq!(p, nc("7"));
}

#[test]
fn bad_constant_pattern_refuted() {
    let mut fam = intro_family();
    fam.polys[1] = &fam.polys[1] + &CommPoly::constant(ncrep::polyalg::rat::int(1));
    let v = recover(&fam, &RecoverOptions::default());
    assert_eq!(v.kind, VerdictKind::Refuted);
}
