//! The 2x5 degenerate-but-stable system (m = 3, p = 2, n = 4) and the kernel
//! matrix published with it.

use crate::arsys::ARSystem;
use crate::poly::{HomPoly, HomPolyMatrix};

/// Entries as `s^2, st, t^2` coefficient triples.
pub const DEGENERATE_STABLE_P: [[[i64; 3]; 5]; 2] = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 0], [1, 0, 1]],
    [[0, 1, 0], [0, 0, 1], [1, 0, 0], [1, 0, 2], [1, 0, -1]],
];

pub fn degenerate_stable_matrix() -> HomPolyMatrix {
    HomPolyMatrix::from_rows(
        DEGENERATE_STABLE_P
            .iter()
            .map(|row| row.iter().map(|c| HomPoly::from_i64(c)).collect())
            .collect(),
    )
    .expect("rectangular")
}

pub fn degenerate_stable_system() -> ARSystem {
    ARSystem::validate(degenerate_stable_matrix(), vec![2, 2], 3, 2).expect("valid fixture")
}

/// The published kernel matrix: two rows of degree 1 and one of degree 2.
pub fn published_kernel() -> (HomPolyMatrix, Vec<usize>) {
    let r = |c: &[i64]| HomPoly::from_i64(c);
    let rows = vec![
        vec![r(&[0, -1]), r(&[1, 0]), r(&[0, 0]), r(&[0, 0]), r(&[0, 0])],
        vec![
            r(&[1, 5]),
            r(&[0, -2]),
            r(&[1, 4]),
            r(&[-2, -1]),
            r(&[1, -4]),
        ],
        vec![
            r(&[-1, -4, -8]),
            r(&[0, 0, 3]),
            r(&[-1, -3, -7]),
            r(&[1, 4, 2]),
            r(&[0, 0, 7]),
        ],
    ];
    (
        HomPolyMatrix::from_rows(rows).expect("rectangular"),
        vec![1, 1, 2],
    )
}
