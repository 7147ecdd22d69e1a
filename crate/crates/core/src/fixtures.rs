//! Well-known sample polygons and patterns used across tests and docs.

use crate::lattice::{v3, Polygon, Tube, Vertex};
use crate::patterns::ProperPattern;

fn poly(tube: &Tube, coords: &[(i32, i32, i32)]) -> Polygon {
    let cyc: Vec<Vertex> = coords.iter().map(|&(x, y, z)| v3(x, y, z)).collect();
    Polygon::from_cycle(&cyc, tube).expect("fixture polygon")
}

fn strand(coords: &[(i32, i32, i32)]) -> Vec<Vertex> {
    coords.iter().map(|&(x, y, z)| v3(x, y, z)).collect()
}

/// 36-edge span-6 trefoil polygon in the 2x1 tube whose proper pattern is
/// non-local: a start unknot segment, a span-6 trefoil pattern and an end
/// unknot segment.
pub fn trefoil_polygon_2x1() -> Polygon {
    let t = Tube::new(2, 1);
    poly(
        &t,
        &[
            (0, 0, 0),
            (1, 0, 0),
            (2, 0, 0),
            (2, 1, 0),
            (3, 1, 0),
            (4, 1, 0),
            (4, 1, 1),
            (4, 0, 1),
            (5, 0, 1),
            (6, 0, 1),
            (6, 0, 0),
            (6, 1, 0),
            (6, 2, 0),
            (5, 2, 0),
            (4, 2, 0),
            (3, 2, 0),
            (2, 2, 0),
            (1, 2, 0),
            (1, 1, 0),
            (1, 1, 1),
            (1, 0, 1),
            (2, 0, 1),
            (3, 0, 1),
            (3, 0, 0),
            (4, 0, 0),
            (5, 0, 0),
            (5, 1, 0),
            (5, 1, 1),
            (5, 2, 1),
            (4, 2, 1),
            (3, 2, 1),
            (2, 2, 1),
            (1, 2, 1),
            (0, 2, 1),
            (0, 1, 1),
            (0, 0, 1),
        ],
    )
}

/// 40-edge span-7 trefoil polygon in the 2x1 tube whose proper pattern is
/// local; one x-column longer than the non-local counterpart.
pub fn local_trefoil_polygon_2x1() -> Polygon {
    let t = Tube::new(2, 1);
    poly(
        &t,
        &[
            (0, 0, 0),
            (1, 0, 0),
            (2, 0, 0),
            (2, 1, 0),
            (3, 1, 0),
            (4, 1, 0),
            (4, 1, 1),
            (4, 0, 1),
            (5, 0, 1),
            (6, 0, 1),
            (6, 0, 0),
            (6, 1, 0),
            (6, 2, 0),
            (5, 2, 0),
            (4, 2, 0),
            (3, 2, 0),
            (2, 2, 0),
            (1, 2, 0),
            (1, 1, 0),
            (1, 1, 1),
            (1, 0, 1),
            (2, 0, 1),
            (3, 0, 1),
            (3, 0, 0),
            (4, 0, 0),
            (5, 0, 0),
            (5, 1, 0),
            (5, 1, 1),
            (6, 1, 1),
            (7, 1, 1),
            (7, 2, 1),
            (6, 2, 1),
            (5, 2, 1),
            (4, 2, 1),
            (3, 2, 1),
            (2, 2, 1),
            (1, 2, 1),
            (0, 2, 1),
            (0, 1, 1),
            (0, 0, 1),
        ],
    )
}

/// Span-7 proper pattern in a 3x1 tube (drawn here with the narrow axis
/// as y) whose denominator closure is the 5_1 knot while the numerator
/// components are an unknot and a trefoil, hence non-local.
pub fn nonlocal_5_1_pattern() -> ProperPattern {
    let s1 = strand(&[
        (0, 0, 0),
        (1, 0, 0),
        (2, 0, 0),
        (3, 0, 0),
        (3, 0, 1),
        (4, 0, 1),
        (4, 1, 1),
        (5, 1, 1),
        (5, 1, 0),
        (6, 1, 0),
        (7, 1, 0),
    ]);
    let s2 = strand(&[
        (0, 1, 0),
        (1, 1, 0),
        (1, 1, 1),
        (1, 1, 2),
        (2, 1, 2),
        (2, 0, 2),
        (2, 0, 3),
        (3, 0, 3),
        (4, 0, 3),
        (4, 1, 3),
        (4, 1, 2),
        (5, 1, 2),
        (6, 1, 2),
        (6, 1, 1),
        (6, 0, 1),
        (6, 0, 0),
        (5, 0, 0),
        (4, 0, 0),
        (4, 1, 0),
        (3, 1, 0),
        (3, 1, 1),
        (2, 1, 1),
        (2, 0, 1),
        (1, 0, 1),
        (1, 0, 2),
        (1, 0, 3),
        (1, 1, 3),
        (2, 1, 3),
        (3, 1, 3),
        (3, 1, 2),
        (3, 0, 2),
        (4, 0, 2),
        (5, 0, 2),
        (6, 0, 2),
        (7, 0, 2),
    ]);
    ProperPattern::new(s1, s2).expect("fixture pattern")
}

/// Smallest-span (5) local trefoil pattern occurring in Hamiltonian
/// polygons of the 3x1 tube; interior columns fully occupied.
pub fn ham_local_trefoil_pattern_3x1() -> ProperPattern {
    let s1 = strand(&[
        (0, 0, 0),
        (1, 0, 0),
        (2, 0, 0),
        (2, 1, 0),
        (3, 1, 0),
        (4, 1, 0),
        (4, 0, 0),
        (3, 0, 0),
        (3, 0, 1),
        (4, 0, 1),
        (5, 0, 1),
    ]);
    let s2 = strand(&[
        (0, 1, 0),
        (1, 1, 0),
        (1, 1, 1),
        (1, 1, 2),
        (2, 1, 2),
        (2, 0, 2),
        (2, 0, 3),
        (3, 0, 3),
        (4, 0, 3),
        (4, 1, 3),
        (4, 1, 2),
        (4, 1, 1),
        (3, 1, 1),
        (2, 1, 1),
        (2, 0, 1),
        (1, 0, 1),
        (1, 0, 2),
        (1, 0, 3),
        (1, 1, 3),
        (2, 1, 3),
        (3, 1, 3),
        (3, 1, 2),
        (3, 0, 2),
        (4, 0, 2),
        (5, 0, 2),
    ]);
    ProperPattern::new(s1, s2).expect("fixture pattern")
}

/// Smallest-span (4) non-local trefoil pattern occurring in Hamiltonian
/// polygons of the 3x1 tube.
pub fn ham_nonlocal_trefoil_pattern_3x1() -> ProperPattern {
    let s1 = strand(&[
        (0, 0, 0),
        (1, 0, 0),
        (2, 0, 0),
        (2, 1, 0),
        (3, 1, 0),
        (3, 0, 0),
        (3, 0, 1),
        (3, 0, 2),
        (3, 1, 2),
        (3, 1, 3),
        (2, 1, 3),
        (1, 1, 3),
        (1, 0, 3),
        (1, 0, 2),
        (1, 0, 1),
        (2, 0, 1),
        (2, 1, 1),
        (3, 1, 1),
        (4, 1, 1),
    ]);
    let s2 = strand(&[
        (0, 1, 0),
        (1, 1, 0),
        (1, 1, 1),
        (1, 1, 2),
        (2, 1, 2),
        (2, 0, 2),
        (2, 0, 3),
        (3, 0, 3),
        (4, 0, 3),
    ]);
    ProperPattern::new(s1, s2).expect("fixture pattern")
}
