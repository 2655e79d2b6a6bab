//! Fixed inputs shared by the benchmarks and the long-running example.

use cpfact::SymMatrix;

fn m(rows: &[&[i64]]) -> SymMatrix {
    SymMatrix::from_integers(rows).expect("fixture is symmetric")
}

pub fn interior_6x6() -> SymMatrix {
    m(&[
        &[6, 7, 8, 9, 10, 11],
        &[7, 9, 10, 11, 12, 13],
        &[8, 10, 12, 13, 14, 15],
        &[9, 11, 13, 15, 16, 17],
        &[10, 12, 14, 16, 18, 19],
        &[11, 13, 15, 17, 19, 21],
    ])
}

pub fn circulant_5x5() -> SymMatrix {
    m(&[
        &[8, 5, 1, 1, 5],
        &[5, 8, 5, 1, 1],
        &[1, 5, 8, 5, 1],
        &[1, 1, 5, 8, 5],
        &[5, 1, 1, 5, 8],
    ])
}

pub fn nie_5x5() -> SymMatrix {
    m(&[
        &[1, 1, 0, 0, 1],
        &[1, 2, 1, 0, 0],
        &[0, 1, 2, 1, 0],
        &[0, 0, 1, 2, 1],
        &[1, 0, 0, 1, 6],
    ])
}

/// Boundary matrix with a three-term factorization that takes the walk a
/// very long time to find.
pub fn hard_boundary_5x5() -> SymMatrix {
    m(&[
        &[41, 43, 80, 56, 50],
        &[43, 62, 89, 78, 51],
        &[80, 89, 162, 120, 93],
        &[56, 78, 120, 104, 62],
        &[50, 51, 93, 62, 65],
    ])
}
