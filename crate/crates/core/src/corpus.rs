//! Bundled spaces and random generators used by the test suites and the
//! command line `--builtin` inputs.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{Rational, Simplex, SimplicialComplex, VertexId};
use crate::field::ratio;
use crate::filtration::Filtration;

fn build(heights: &[(u32, Rational)], simplices: &[Vec<u32>]) -> SimplicialComplex {
    let heights: BTreeMap<VertexId, Rational> = heights
        .iter()
        .map(|(v, h)| (VertexId(*v), h.clone()))
        .collect();
    SimplicialComplex::from_simplices(heights, simplices.iter().map(|s| Simplex::from_ids(s)))
        .expect("bundled complexes are well formed")
}

fn flat(simplices: &[Vec<u32>]) -> SimplicialComplex {
    SimplicialComplex::with_constant_height(
        ratio(0, 1),
        simplices.iter().map(|s| Simplex::from_ids(s)),
    )
}

/// Cylinder `S¹ × [0, 1]` with height the second coordinate, where each
/// boundary circle has two of its points identified (a figure eight at
/// heights 0 and 1).
///
/// Both ends are 8-gons: bottom vertex ids are the positions `0..8` with
/// position 4 glued to 0, top ids are `8 + position` with position 6 glued
/// to position 2. The pinch points are offset so that no two vertical edges
/// collapse onto one.
pub fn pinched_cylinder() -> SimplicialComplex {
    let bottom = |i: u32| if i % 8 == 4 { 0 } else { i % 8 };
    let top = |i: u32| if i % 8 == 6 { 10 } else { 8 + i % 8 };
    let mut heights = Vec::new();
    for i in 0..8 {
        heights.push((bottom(i), ratio(0, 1)));
        heights.push((top(i), ratio(1, 1)));
    }
    heights.sort_by_key(|(v, _)| *v);
    heights.dedup_by_key(|(v, _)| *v);
    let triangles: Vec<Vec<u32>> = (0..8)
        .flat_map(|i| {
            let j = i + 1;
            [
                vec![bottom(i), bottom(j), top(j)],
                vec![bottom(i), top(i), top(j)],
            ]
        })
        .collect();
    build(&heights, &triangles)
}

/// Square loop `0-1-2-3` with heights `0, 1, 1, 0`: one minimum edge and one
/// maximum edge.
pub fn circle() -> SimplicialComplex {
    build(
        &[
            (0, ratio(0, 1)),
            (1, ratio(1, 1)),
            (2, ratio(1, 1)),
            (3, ratio(0, 1)),
        ],
        &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
    )
}

/// Boundary of the octahedron, height the vertical coordinate: poles at
/// `±1`, a square equator at 0.
pub fn sphere() -> SimplicialComplex {
    let mut heights = vec![(0, ratio(1, 1)), (5, ratio(-1, 1))];
    heights.extend((1..=4).map(|v| (v, ratio(0, 1))));
    let mut triangles = Vec::new();
    for i in 1..=4u32 {
        let j = if i == 4 { 1 } else { i + 1 };
        triangles.push(vec![0, i, j]);
        triangles.push(vec![5, i, j]);
    }
    build(&heights, &triangles)
}

/// The 3 × 3 grid torus; vertex `(r, c)` has id `3r + c` and height `r`.
pub fn torus() -> SimplicialComplex {
    let id = |r: u32, c: u32| 3 * (r % 3) + (c % 3);
    let heights: Vec<(u32, Rational)> = (0..3)
        .flat_map(|r| (0..3).map(move |c| (id(r, c), ratio(r as i64, 1))))
        .collect();
    let mut triangles = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            triangles.push(vec![id(r, c), id(r + 1, c), id(r + 1, c + 1)]);
            triangles.push(vec![id(r, c), id(r, c + 1), id(r + 1, c + 1)]);
        }
    }
    build(&heights, &triangles)
}

pub fn point() -> SimplicialComplex {
    build(&[(0, ratio(0, 1))], &[])
}

/// Hexagon loop at constant height.
pub fn hexagon() -> SimplicialComplex {
    flat(&(0..6u32).map(|i| vec![i, (i + 1) % 6]).collect::<Vec<_>>())
}

/// Named entries of the bundled corpus.
pub fn named() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("pinched-cylinder", pinched_cylinder()),
        ("circle", circle()),
        ("sphere", sphere()),
        ("torus", torus()),
        ("point", point()),
    ]
}

pub fn by_name(name: &str) -> Option<SimplicialComplex> {
    named()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, k)| k)
}

/// Random 2-complex on `vertices` vertices with integer heights in
/// `0..levels`, built from random triangles plus a few loose edges.
pub fn random_complex<R: Rng>(rng: &mut R, vertices: u32, levels: i64) -> SimplicialComplex {
    assert!(vertices >= 3);
    let heights: Vec<(u32, Rational)> = (0..vertices)
        .map(|v| (v, ratio(rng.gen_range(0..levels), 1)))
        .collect();
    let mut simplices: BTreeSet<Vec<u32>> = BTreeSet::new();
    let triangles = rng.gen_range(vertices / 2..=vertices + vertices / 2);
    let ids: Vec<u32> = (0..vertices).collect();
    for _ in 0..triangles {
        let mut t: Vec<u32> = ids.choose_multiple(rng, 3).copied().collect();
        t.sort_unstable();
        simplices.insert(t);
    }
    for _ in 0..vertices / 3 {
        let mut e: Vec<u32> = ids.choose_multiple(rng, 2).copied().collect();
        e.sort_unstable();
        simplices.insert(e);
    }
    build(&heights, &simplices.into_iter().collect::<Vec<_>>())
}

/// Random filtration by sublevel sets of a monotone random stage assignment
/// on a random 2-complex. Indices are increasing rationals with random gaps.
pub fn random_filtration<R: Rng>(rng: &mut R, vertices: u32, stages: usize) -> Filtration {
    assert!(stages >= 1);
    let k = random_complex(rng, vertices, 1);
    let mut stage_of: BTreeMap<Simplex, usize> = BTreeMap::new();
    for q in 0..=k.dim().unwrap_or(0) {
        for s in k.simplices(q) {
            let from_faces = s.boundary_faces().map(|f| stage_of[&f]).max().unwrap_or(0);
            stage_of.insert(s.clone(), rng.gen_range(0..stages).max(from_faces));
        }
    }
    let complexes: Vec<SimplicialComplex> = (0..stages)
        .map(|j| {
            let heights = k
                .heights()
                .iter()
                .filter(|(v, _)| stage_of[&Simplex::vertex(**v)] <= j)
                .map(|(v, h)| (*v, h.clone()))
                .collect();
            SimplicialComplex::from_simplices(
                heights,
                stage_of
                    .iter()
                    .filter(|(_, &st)| st <= j)
                    .map(|(s, _)| s.clone()),
            )
            .expect("sublevel sets of a monotone assignment are complexes")
        })
        .collect();
    let mut index = ratio(0, 1);
    let indices = (0..stages)
        .map(|_| {
            index = &index + ratio(rng.gen_range(1..4), 2);
            index.clone()
        })
        .collect();
    Filtration::new(complexes, indices).expect("stages are nested")
}

/// Small hand-made filtrations with known persistence.
pub fn named_filtrations() -> Vec<(&'static str, Filtration)> {
    let point = flat(&[vec![0]]);
    let two_points = flat(&[vec![0], vec![1]]);
    let edge = flat(&[vec![0, 1]]);
    let circle = flat(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
    let disk = flat(&[vec![0, 1, 2]]);
    let f = |stages: Vec<SimplicialComplex>| {
        Filtration::with_integer_indices(stages).expect("hand-made filtrations are nested")
    };
    vec![
        ("constant", f(vec![circle.clone(), circle.clone()])),
        ("point-edge", f(vec![point.clone(), edge.clone()])),
        ("point-two-points-edge", f(vec![point, two_points, edge])),
        ("circle-disk", f(vec![circle, disk])),
    ]
}
