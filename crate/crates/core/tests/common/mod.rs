#![allow(dead_code)]

use dualmat::{ComplexMatrix, DualMatrix};

pub fn dual(s: &[&[f64]], d: &[&[f64]]) -> DualMatrix {
    DualMatrix::new(ComplexMatrix::from_real_rows(s), ComplexMatrix::from_real_rows(d)).unwrap()
}

/// 4×4 matrix with one infinitesimal singular value.
pub fn four_by_four() -> DualMatrix {
    dual(
        &[&[1.0, 0.0, 0.0, 0.0], &[0.0, 2.0, 0.0, 0.0], &[0.0; 4], &[0.0; 4]],
        &[
            &[1.0, -3.0, 0.0, -3.0],
            &[3.0, 1.0, -4.0, -2.0],
            &[-1.0, 2.0, 3.0, 0.0],
            &[1.0, -2.0, 0.0, 0.0],
        ],
    )
}

/// The same matrix with the (3,3) infinitesimal entry cleared, so that no
/// infinitesimal singular value remains.
pub fn four_by_four_essential() -> DualMatrix {
    dual(
        &[&[1.0, 0.0, 0.0, 0.0], &[0.0, 2.0, 0.0, 0.0], &[0.0; 4], &[0.0; 4]],
        &[
            &[1.0, -3.0, 0.0, -3.0],
            &[3.0, 1.0, -4.0, -2.0],
            &[-1.0, 2.0, 0.0, 0.0],
            &[1.0, -2.0, 0.0, 0.0],
        ],
    )
}

/// Moore–Penrose inverse of [`four_by_four_essential`].
pub fn four_by_four_mp_inverse() -> DualMatrix {
    dual(
        &[&[1.0, 0.0, 0.0, 0.0], &[0.0, 0.5, 0.0, 0.0], &[0.0; 4], &[0.0; 4]],
        &[
            &[-1.0, 1.5, -1.0, 1.0],
            &[-1.5, -0.25, 0.5, -0.5],
            &[0.0, -1.0, 0.0, 0.0],
            &[-3.0, -0.5, 0.0, 0.0],
        ],
    )
}

/// 3×3 index-one matrix.
pub fn three_by_three() -> DualMatrix {
    dual(
        &[&[2.0, 0.0, 0.0], &[0.0, 3.0, 0.0], &[0.0; 3]],
        &[&[3.0, -1.0, -6.0], &[4.0, 4.0, 3.0], &[-6.0, 0.0, 0.0]],
    )
}

pub fn three_by_three_group_inverse() -> DualMatrix {
    dual(
        &[&[0.5, 0.0, 0.0], &[0.0, 1.0 / 3.0, 0.0], &[0.0; 3]],
        &[
            &[-0.75, 1.0 / 6.0, -1.5],
            &[-2.0 / 3.0, -4.0 / 9.0, 1.0 / 3.0],
            &[-1.5, 0.0, 0.0],
        ],
    )
}

pub fn three_by_three_core_inverse() -> DualMatrix {
    dual(
        &[&[0.5, 0.0, 0.0], &[0.0, 1.0 / 3.0, 0.0], &[0.0; 3]],
        &[
            &[-0.75, 1.0 / 6.0, -1.5],
            &[-2.0 / 3.0, -4.0 / 9.0, 0.0],
            &[-1.5, 0.0, 0.0],
        ],
    )
}
