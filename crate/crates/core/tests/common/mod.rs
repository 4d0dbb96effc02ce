#![allow(dead_code)]

use ncrep::polyalg::{expand, parse_nc, parse_poly, Arrangement, NcPoly, PolyFamily};

pub fn family(k: usize, polys: &[&str]) -> PolyFamily {
    PolyFamily::new(k, polys.iter().map(|s| parse_poly(s).expect("poly")).collect()).expect("family")
}

pub fn nc(s: &str) -> NcPoly {
    parse_nc(s).expect("nc poly")
}

pub fn arrangement(x: [[u32; 2]; 2], y: [[u32; 2]; 2], lambda: Option<[[usize; 2]; 2]>) -> Arrangement {
    let g = |a: [[u32; 2]; 2]| a.iter().map(|r| r.to_vec()).collect();
    Arrangement::new(g(x), g(y), lambda.map(|l| l.iter().map(|r| r.to_vec()).collect())).expect("arrangement")
}

/// X² + XY with X = [[x1,x2],[x3,x4]], Y = [[x5,x6],[x7,x8]].
pub fn intro_family() -> PolyFamily {
    family(
        2,
        &[
            "x1^2 + x2x3 + x1x5 + x2x7",
            "x1x2 + x2x4 + x1x6 + x2x8",
            "x1x3 + x3x4 + x3x5 + x4x7",
            "x2x3 + x4^2 + x3x6 + x4x8",
        ],
    )
}

pub fn coeffs_3_6_family() -> PolyFamily {
    family(
        2,
        &[
            "3x2x4 + 3x4x8 + x2x3 + x4x7 + 6x1x3 + 6x3x7 + x1x4 + x3x8",
            "3x2x6 + 3x6x8 + x1x6 + x5x8 + 6x1x5 + 6x5x7 + x2x5 + x6x7",
            "3x2^2 + 2x1x2 + 3x4x6 + x4x5 + x3x6 + 6x1^2 + 6x3x5",
            "3x4x6 + 3x8^2 + 2x7x8 + x3x6 + 6x3x5 + 6x7^2 + x4x5",
        ],
    )
}

pub fn coeffs_3_6_answer() -> (NcPoly, Arrangement) {
    (nc("3X^2 + XY + YX + 6Y^2"), arrangement([[2, 6], [4, 8]], [[1, 5], [3, 7]], Some([[3, 2], [1, 4]])))
}

/// Same shape with every coefficient 1; the diagonal letters cannot be told
/// apart.
pub fn all_ones_family() -> PolyFamily {
    family(
        2,
        &[
            "x2x4 + x4x8 + x2x3 + x4x7 + x1x3 + x3x7 + x1x4 + x3x8",
            "x2x6 + x6x8 + x1x6 + x5x8 + x1x5 + x5x7 + x2x5 + x6x7",
            "x2^2 + 2x1x2 + x4x6 + x4x5 + x3x6 + x1^2 + x3x5",
            "x4x6 + x8^2 + 2x7x8 + x3x6 + x3x5 + x7^2 + x4x5",
        ],
    )
}

/// 4X² + XY + YX + 6Y² in the standard arrangement.
pub fn fixed_arrangement_family() -> PolyFamily {
    family(
        2,
        &[
            "4x1^2 + 4x2x3 + 2x1x5 + 6x5^2 + x2x7 + x3x6 + 6x6x7",
            "4x1x2 + 4x2x4 + x2x5 + x1x6 + x4x6 + 6x5x6 + x2x8 + 6x6x8",
            "4x1x3 + 4x3x4 + x3x5 + x1x7 + x4x7 + 6x5x7 + x3x8 + 6x7x8",
            "4x2x3 + 4x4^2 + x3x6 + x2x7 + 6x6x7 + 2x4x8 + 6x8^2",
        ],
    )
}

/// The previous family plus cubic terms whose degree-3 system is
/// inconsistent in the forced arrangement.
pub fn inconsistent_cubic_family() -> PolyFamily {
    family(
        2,
        &[
            "4x1^2 + 4x2x3 + 2x1x5 + 6x5^2 + x2x7 + x3x6 + 6x6x7 + x1^3 + x1x2x3 + x1x2x3 + x2x3x5",
            "4x1x2 + 4x2x4 + x2x5 + x1x6 + x4x6 + 6x5x6 + x2x8 + 6x6x8 + x1^2x2 + x2^2x3 + x1x2x5 + x2x5^2",
            "4x1x3 + 4x3x4 + x3x5 + x1x7 + x4x7 + 6x5x7 + x3x8 + 6x7x8 + x1^2x3 + x1x3x5 + x2x3^2 + x3x5^2",
            "4x2x3 + 4x4^2 + x3x6 + x2x7 + 6x6x7 + 2x4x8 + 6x8^2 + x1x2x3 + x2x3x5 + x2x3x5 + x5^3",
        ],
    )
}

pub fn five_x2_family() -> PolyFamily {
    family(
        2,
        &[
            "x1x5 + 5x5^2 + x2x7 + 5x6x7",
            "x1x6 + 5x5x6 + x2x8 + 5x6x8",
            "x3x5 + x4x7 + 5x5x7 + 5x7x8",
            "x3x6 + 5x6x7 + x4x8 + 5x8^2",
        ],
    )
}

pub fn five_x2_answer() -> (NcPoly, Arrangement) {
    (nc("5X^2 + XY"), arrangement([[8, 6], [7, 5]], [[4, 2], [3, 1]], Some([[4, 2], [3, 1]])))
}

pub fn commutator_family() -> PolyFamily {
    family(
        2,
        &[
            "x1^2 + x2x3 - x3x6 + x2x7",
            "x1x2 + x2x4 - x2x5 + x1x6 - x4x6 + x2x8",
            "x1x3 + x3x4 + x3x5 - x1x7 + x4x7 - x3x8",
            "x2x3 + x4^2 + x3x6 - x2x7",
        ],
    )
}

pub fn commutator_answer() -> (NcPoly, Arrangement) {
    (nc("X^2 - XY + YX"), arrangement([[4, 2], [3, 1]], [[8, 6], [7, 5]], Some([[4, 2], [3, 1]])))
}

pub fn cube_grid() -> Vec<Vec<u32>> {
    vec![
        vec![1, 6, 8, 10, 12],
        vec![7, 2, 14, 16, 18],
        vec![9, 15, 3, 20, 22],
        vec![11, 17, 21, 4, 24],
        vec![13, 19, 23, 25, 5],
    ]
}

/// X³ at k=5 with the grid above; Y is unused.
pub fn cube_family() -> PolyFamily {
    let y: Vec<Vec<u32>> = (0..5).map(|i| (0..5).map(|j| 26 + 5 * i + j).collect()).collect();
    let arr = Arrangement::new(cube_grid(), y, None).expect("arrangement");
    expand(&nc("X^3"), &arr).to_family(&Arrangement::standard(5))
}

/// The diagonal entry of (XY − YX)² at k=2 in the standard arrangement.
pub fn commutator_square_diagonal() -> ncrep::polyalg::CommPoly {
    parse_poly(
        "x2^2x7^2 - 2x2x3x6x7 - x2x3x5^2 + 2x2x3x5x8 - x2x3x8^2 + x1x2x7x5 - x1x2x7x8 - x2x4x7x5 + x2x4x7x8 \
         + x1x3x5x6 - x3x4x5x6 + x3^2x6^2 - x1^2x6x7 + 2x1x4x6x7 - x4^2x6x7 - x1x3x6x8 + x3x4x6x8",
    )
    .expect("poly")
}
