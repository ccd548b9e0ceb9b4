//! Shared fixtures and independent oracles for the integration tests.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use reebkit::corpus;
use reebkit::field::ratio;
use reebkit::filtration::Filtration;
use reebkit::zigzag::{Arrow, Bar, Direction, IntervalCover, ZigzagModule};
use reebkit::{Field, Level, Matrix, Scalar, SimplicialComplex};

pub const Q: Field = Field::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bundled spaces plus `randomized` random 2-complexes with at most 30
/// vertices.
pub fn corpus(randomized: usize, seed: u64) -> Vec<(String, SimplicialComplex)> {
    let mut out: Vec<(String, SimplicialComplex)> =
        ["pinched-cylinder", "circle", "sphere", "torus", "point"]
            .iter()
            .map(|n| (n.to_string(), corpus::by_name(n).unwrap()))
            .collect();
    let mut r = rng(seed);
    for i in 0..randomized {
        let vertices = r.gen_range(6..=30);
        let levels = r.gen_range(2..=5);
        out.push((
            format!("random-{i}"),
            corpus::random_complex(&mut r, vertices, levels),
        ));
    }
    out
}

pub fn random_filtrations(count: usize, seed: u64) -> Vec<Filtration> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let vertices = r.gen_range(4..=30);
            let stages = r.gen_range(1..=5);
            corpus::random_filtration(&mut r, vertices, stages)
        })
        .collect()
}

/// Interval covers of the height range of `k`: one interval, one interval
/// per gap between critical values, and covers split at random points.
pub fn covers_for<R: Rng>(k: &SimplicialComplex, r: &mut R, random: usize) -> Vec<IntervalCover> {
    let heights = k.distinct_heights();
    let (Some(lo), Some(hi)) = (heights.first().cloned(), heights.last().cloned()) else {
        return Vec::new();
    };
    let one = ratio(1, 1);
    let mut covers = vec![IntervalCover::new(vec![(&lo - &one, &hi + &one)]).unwrap()];
    covers.push(IntervalCover::around_levels(&heights).unwrap());
    if lo == hi {
        return covers;
    }
    for _ in 0..random {
        // split points strictly inside the range, on a grid of eighths
        let span = (&hi - &lo) * ratio(8, 1);
        let steps = span.to_integer().try_into().unwrap_or(8i64);
        let count = r.gen_range(1..=3usize);
        let mut points: Vec<Level> = (0..count)
            .map(|_| &lo + ratio(r.gen_range(1..steps.max(2)), 8))
            .collect();
        points.sort();
        points.dedup();
        covers.push(cover_split_at(&points, &lo, &hi));
    }
    covers
}

/// Intervals overlapping around each split point.
pub fn cover_split_at(points: &[Level], lo: &Level, hi: &Level) -> IntervalCover {
    let one = ratio(1, 1);
    let gap = points
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .unwrap_or_else(|| one.clone());
    let delta = gap * ratio(1, 4);
    let delta = delta.min(ratio(1, 16));
    let mut intervals = Vec::new();
    for i in 0..=points.len() {
        let a = if i == 0 {
            lo - &one
        } else {
            &points[i - 1] - &delta
        };
        let b = if i == points.len() {
            hi + &one
        } else {
            &points[i] + &delta
        };
        intervals.push((a, b));
    }
    IntervalCover::new(intervals).unwrap()
}

pub fn random_matrix<R: Rng>(r: &mut R, rows: usize, cols: usize, field: Field) -> Matrix {
    let vals: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| r.gen_range(-2..=2)).collect())
        .collect();
    if rows == 0 || cols == 0 {
        return Matrix::zeros(rows, cols, field);
    }
    Matrix::from_i64_rows(&vals, field)
}

/// Random low-rank-prone matrix: a product through a smaller space.
pub fn random_map<R: Rng>(r: &mut R, rows: usize, cols: usize, field: Field) -> Matrix {
    let inner = r.gen_range(0..=rows.min(cols));
    let a = random_matrix(r, rows, inner, field);
    let b = random_matrix(r, inner, cols, field);
    a.mul(&b).unwrap()
}

/// Unit lower times unit upper triangular: invertible over every field.
pub fn random_invertible<R: Rng>(r: &mut R, n: usize, field: Field) -> Matrix {
    let mut lower = vec![vec![0i64; n]; n];
    let mut upper = vec![vec![0i64; n]; n];
    for i in 0..n {
        lower[i][i] = 1;
        upper[i][i] = 1;
        for j in 0..i {
            lower[i][j] = r.gen_range(-2..=2);
            upper[j][i] = r.gen_range(-2..=2);
        }
    }
    if n == 0 {
        return Matrix::zeros(0, 0, field);
    }
    Matrix::from_i64_rows(&lower, field)
        .mul(&Matrix::from_i64_rows(&upper, field))
        .unwrap()
}

pub fn random_zigzag<R: Rng>(r: &mut R, len: usize, max_dim: usize, field: Field) -> ZigzagModule {
    let dims: Vec<usize> = (0..len).map(|_| r.gen_range(0..=max_dim)).collect();
    let arrows = (0..len.saturating_sub(1))
        .map(|i| {
            if r.gen_bool(0.5) {
                Arrow::forward(random_map(r, dims[i + 1], dims[i], field))
            } else {
                Arrow::backward(random_map(r, dims[i], dims[i + 1], field))
            }
        })
        .collect();
    ZigzagModule::new(0, field, dims, arrows).unwrap()
}

/// `Z` with each space re-coordinatized by a random invertible matrix.
pub fn conjugated<R: Rng>(z: &ZigzagModule, r: &mut R) -> ZigzagModule {
    let field = z.field();
    let change: Vec<Matrix> = z
        .dims()
        .iter()
        .map(|&d| random_invertible(r, d, field))
        .collect();
    let arrows = z
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let (src, tgt) = match a.direction {
                Direction::Forward => (i, i + 1),
                Direction::Backward => (i + 1, i),
            };
            let m = change[tgt]
                .mul(&a.matrix)
                .unwrap()
                .mul(&change[src].inverse().unwrap())
                .unwrap();
            Arrow {
                direction: a.direction,
                matrix: m,
            }
        })
        .collect();
    ZigzagModule::new(z.degree(), field, z.dims().to_vec(), arrows).unwrap()
}

fn push(bars: &mut Vec<Bar>, birth: usize, death: usize, m: i64) {
    assert!(m >= 0, "negative multiplicity for [{birth}, {death}]");
    if m > 0 {
        bars.push(Bar {
            birth,
            death,
            multiplicity: m as usize,
        });
    }
}

/// Bars of a three-term zigzag from dimensions and ranks alone:
/// for `V_0 → V_1 ← V_2` the full bar counts `dim(im a ∩ im b)`, for
/// `V_0 ← V_1 → V_2` it counts `dim V_1 - dim(ker a + ker b)`.
pub fn three_term_bars(z: &ZigzagModule) -> Vec<Bar> {
    assert_eq!(z.len(), 3);
    let d: Vec<i64> = z.dims().iter().map(|&x| x as i64).collect();
    let (a, b) = (&z.arrows()[0], &z.arrows()[1]);
    let (ra, rb) = (a.matrix.rank() as i64, b.matrix.rank() as i64);
    let full = match (a.direction, b.direction) {
        (Direction::Forward, Direction::Backward) => {
            ra + rb - a.matrix.hstack(&b.matrix).unwrap().rank() as i64
        }
        (Direction::Backward, Direction::Forward) => {
            let both = a.matrix.vstack(&b.matrix).unwrap();
            let kernel_sum = (d[1] - ra) + (d[1] - rb) - both.nullity() as i64;
            d[1] - kernel_sum
        }
        (Direction::Forward, Direction::Forward) => b.matrix.mul(&a.matrix).unwrap().rank() as i64,
        (Direction::Backward, Direction::Backward) => {
            a.matrix.mul(&b.matrix).unwrap().rank() as i64
        }
    };
    let mut bars = Vec::new();
    push(&mut bars, 0, 0, d[0] - ra);
    push(&mut bars, 0, 1, ra - full);
    push(&mut bars, 0, 2, full);
    push(&mut bars, 1, 1, d[1] - ra - rb + full);
    push(&mut bars, 1, 2, rb - full);
    push(&mut bars, 2, 2, d[2] - rb);
    bars
}

/// Persistence bars of a forward module from ranks of composites:
/// `r(i, j) - r(i-1, j) - r(i, j+1) + r(i-1, j+1)`.
pub fn forward_bars(dims: &[usize], maps: &[Matrix], field: Field) -> Vec<Bar> {
    let n = dims.len();
    let r = |i: usize, j: usize| -> i64 {
        let mut m = Matrix::identity(dims[i], field);
        for map in &maps[i..j] {
            m = map.mul(&m).unwrap();
        }
        m.rank() as i64
    };
    let rr = |i: Option<usize>, j: usize| -> i64 {
        match i {
            Some(i) if j < n => r(i, j),
            _ => 0,
        }
    };
    let mut bars = Vec::new();
    for i in 0..n {
        for j in i..n {
            let m = rr(Some(i), j) - rr(i.checked_sub(1), j) - rr(Some(i), j + 1)
                + rr(i.checked_sub(1), j + 1);
            push(&mut bars, i, j, m);
        }
    }
    bars
}

pub fn scalar(field: Field, v: i64) -> Scalar {
    field.from_i64(v)
}
