//! Zigzag modules, their interval decomposition, and the levelset zigzag of
//! a PL function.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{Level, Rational};
use crate::cut::CutComplex;
use crate::error::{Error, Result};
use crate::field::{format_rational, Field};
use crate::homology::{homology, induced_map, HomologySpace};
use crate::linalg::{Matrix, SparseVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `V_i → V_{i+1}`
    Forward,
    /// `V_i ← V_{i+1}`
    Backward,
}

/// What a position of a module stands for, when it came from a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceKind {
    Fiber(Level),
    Slab(Level, Level),
    Abstract,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Fiber(t) => write!(f, "fiber {}", format_rational(t)),
            SpaceKind::Slab(a, b) => {
                write!(f, "slab [{}, {}]", format_rational(a), format_rational(b))
            }
            SpaceKind::Abstract => write!(f, "space"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub direction: Direction,
    /// Rows index the target space, columns the source space.
    pub matrix: Matrix,
}

impl Arrow {
    pub fn forward(matrix: Matrix) -> Self {
        Self {
            direction: Direction::Forward,
            matrix,
        }
    }

    pub fn backward(matrix: Matrix) -> Self {
        Self {
            direction: Direction::Backward,
            matrix,
        }
    }
}

/// Representation of a zigzag quiver `V_0 ↔ V_1 ↔ … ↔ V_m`.
#[derive(Debug, Clone)]
pub struct ZigzagModule {
    degree: usize,
    field: Field,
    dims: Vec<usize>,
    arrows: Vec<Arrow>,
    kinds: Vec<SpaceKind>,
}

impl ZigzagModule {
    pub fn new(degree: usize, field: Field, dims: Vec<usize>, arrows: Vec<Arrow>) -> Result<Self> {
        let kinds = vec![SpaceKind::Abstract; dims.len()];
        Self::with_kinds(degree, field, dims, arrows, kinds)
    }

    pub fn with_kinds(
        degree: usize,
        field: Field,
        dims: Vec<usize>,
        arrows: Vec<Arrow>,
        kinds: Vec<SpaceKind>,
    ) -> Result<Self> {
        let expected_arrows = dims.len().saturating_sub(1);
        if arrows.len() != expected_arrows {
            return Err(Error::DimensionMismatch {
                context: "zigzag arrow count",
                expected: expected_arrows,
                found: arrows.len(),
            });
        }
        for (i, a) in arrows.iter().enumerate() {
            let (src, tgt) = match a.direction {
                Direction::Forward => (dims[i], dims[i + 1]),
                Direction::Backward => (dims[i + 1], dims[i]),
            };
            if a.matrix.rows() != tgt || a.matrix.cols() != src {
                return Err(Error::DimensionMismatch {
                    context: "zigzag arrow shape",
                    expected: tgt * 1000 + src,
                    found: a.matrix.rows() * 1000 + a.matrix.cols(),
                });
            }
        }
        if kinds.len() != dims.len() {
            return Err(Error::DimensionMismatch {
                context: "zigzag space labels",
                expected: dims.len(),
                found: kinds.len(),
            });
        }
        Ok(Self {
            degree,
            field,
            dims,
            arrows,
            kinds,
        })
    }

    /// Forward module `V_0 → V_1 → …` from a list of maps.
    pub fn forward(
        degree: usize,
        field: Field,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        Self::new(
            degree,
            field,
            dims,
            maps.into_iter().map(Arrow::forward).collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn kinds(&self) -> &[SpaceKind] {
        &self.kinds
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn arrow_ranks(&self) -> Vec<usize> {
        self.arrows.iter().map(|a| a.matrix.rank()).collect()
    }

    /// Restriction to the positions `start..=end`.
    pub fn restrict(&self, start: usize, end: usize) -> ZigzagModule {
        ZigzagModule {
            degree: self.degree,
            field: self.field,
            dims: self.dims[start..=end].to_vec(),
            arrows: self.arrows[start..end].to_vec(),
            kinds: self.kinds[start..=end].to_vec(),
        }
    }

    /// Drops the two end slabs of a levelset zigzag, leaving the part from
    /// the first to the last critical fiber.
    pub fn interior(&self) -> ZigzagModule {
        if self.dims.len() < 3 {
            return self.clone();
        }
        self.restrict(1, self.dims.len() - 2)
    }

    /// Number of interval summands covering all of `start..=end`: the rank
    /// of the map from the limit to the colimit of the restricted diagram.
    pub fn covering_rank(&self, start: usize, end: usize) -> usize {
        let field = self.field;
        let offsets: Vec<usize> = self.dims[start..=end]
            .iter()
            .scan(0, |acc, d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let total: usize = self.dims[start..=end].iter().sum();
        if total == 0 {
            return 0;
        }
        let mut relations = Vec::new();
        let mut constraints: Vec<SparseVec> = vec![SparseVec::new(); total];
        let mut constraint_rows = 0;
        for (k, a) in self.arrows[start..end].iter().enumerate() {
            let (src, tgt) = match a.direction {
                Direction::Forward => (k, k + 1),
                Direction::Backward => (k + 1, k),
            };
            let minus = field.from_i64(-1);
            for j in 0..a.matrix.cols() {
                let mut rel = SparseVec::unit(offsets[src] + j, field);
                rel.axpy(&minus, &a.matrix.column(j).shifted(offsets[tgt]), field);
                relations.push(rel);
                // constraint a(x_src) - x_tgt = 0, rows indexed per arrow target
                let col = &mut constraints[offsets[src] + j];
                col.axpy(
                    &field.one(),
                    &a.matrix.column(j).shifted(constraint_rows),
                    field,
                );
            }
            for i in 0..a.matrix.rows() {
                let col = &mut constraints[offsets[tgt] + i];
                col.axpy(&minus, &SparseVec::unit(constraint_rows + i, field), field);
            }
            constraint_rows += a.matrix.rows();
        }
        // a compatible family has the same class at every position, so it
        // reaches the colimit through its first component alone
        let first = self.dims[start];
        let limit: Vec<SparseVec> = Matrix::from_columns(constraint_rows, constraints, field)
            .kernel_basis()
            .columns()
            .iter()
            .map(|v| {
                let head = v
                    .entries()
                    .iter()
                    .filter(|(i, _)| *i < first)
                    .cloned()
                    .collect();
                SparseVec::from_entries(head, field)
            })
            .collect();
        let limit = Matrix::from_columns(total, limit, field);
        let relations = Matrix::from_columns(total, relations, field);
        let both = limit.hstack(&relations).expect("same ambient space");
        both.rank() - relations.rank()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bar {
    pub birth: usize,
    pub death: usize,
    pub multiplicity: usize,
}

impl Bar {
    pub fn contains(&self, i: usize) -> bool {
        self.birth <= i && i <= self.death
    }
}

/// Interval decomposition: bars `[birth, death]` over module positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barcode {
    pub degree: usize,
    pub bars: Vec<Bar>,
}

impl Barcode {
    pub fn count_containing(&self, i: usize) -> usize {
        self.bars
            .iter()
            .filter(|b| b.contains(i))
            .map(|b| b.multiplicity)
            .sum()
    }

    pub fn count_spanning(&self, i: usize, j: usize) -> usize {
        self.bars
            .iter()
            .filter(|b| b.birth <= i && j <= b.death)
            .map(|b| b.multiplicity)
            .sum()
    }

    pub fn total(&self) -> usize {
        self.bars.iter().map(|b| b.multiplicity).sum()
    }

    /// Serializable records.
    pub fn records(&self) -> Vec<BarRecord> {
        self.bars
            .iter()
            .map(|b| BarRecord {
                degree: self.degree,
                birth_index: b.birth,
                death_index: b.death,
                multiplicity: b.multiplicity,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarRecord {
    pub degree: usize,
    pub birth_index: usize,
    pub death_index: usize,
    pub multiplicity: usize,
}

/// Interval decomposition of a zigzag module.
///
/// The multiplicity of `[i, j]` is recovered from covering ranks by
/// inclusion-exclusion:
/// `r(i, j) - r(i-1, j) - r(i, j+1) + r(i-1, j+1)`.
pub fn barcode(z: &ZigzagModule) -> Barcode {
    let n = z.len();
    let mut rank: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for len in 0..n {
        for i in 0..n - len {
            let j = i + len;
            // r(i, j) can only be positive when every r on a sub-interval is
            let r = if i < j && (rank[&(i, j - 1)] == 0 || rank[&(i + 1, j)] == 0) {
                0
            } else {
                z.covering_rank(i, j)
            };
            rank.insert((i, j), r);
        }
    }
    let r = |i: Option<usize>, j: usize| -> i64 {
        match i {
            Some(i) if j < n => rank[&(i, j)] as i64,
            _ => 0,
        }
    };
    let mut bars = Vec::new();
    for i in 0..n {
        for j in i..n {
            let m = r(Some(i), j) - r(i.checked_sub(1), j) - r(Some(i), j + 1)
                + r(i.checked_sub(1), j + 1);
            debug_assert!(m >= 0, "negative multiplicity at [{i}, {j}]");
            if m > 0 {
                bars.push(Bar {
                    birth: i,
                    death: j,
                    multiplicity: m as usize,
                });
            }
        }
    }
    Barcode {
        degree: z.degree(),
        bars,
    }
}

/// Forward module obtained by inverting backward arrows.
#[derive(Debug, Clone)]
pub struct ForwardModule {
    pub degree: usize,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl ForwardModule {
    pub fn to_zigzag(&self, field: Field) -> Result<ZigzagModule> {
        ZigzagModule::forward(self.degree, field, self.dims.clone(), self.maps.clone())
    }
}

/// Collapses a module of shape `V_0 ↔ V_1 ↔ V_2 ↔ …` onto its even
/// positions: each pair of arrows becomes one forward map, with backward
/// arrows inverted. For the pattern `V_{2k} → V_{2k+1} ← V_{2k+2}` the map is
/// `backward⁻¹ ∘ forward`.
pub fn to_persistence(z: &ZigzagModule) -> Result<ForwardModule> {
    if !z.arrows().len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            context: "zigzag must have an even number of arrows",
            expected: z.arrows().len() + 1,
            found: z.arrows().len(),
        });
    }
    let mut forward = Vec::with_capacity(z.arrows().len());
    for (i, a) in z.arrows().iter().enumerate() {
        forward.push(match a.direction {
            Direction::Forward => a.matrix.clone(),
            Direction::Backward => a.matrix.inverse().map_err(|e| match e {
                Error::NotInvertible {
                    rows, cols, rank, ..
                } => Error::NotInvertible {
                    context: format!(
                        "backward arrow {i} ({} <- {})",
                        z.kinds()[i],
                        z.kinds()[i + 1]
                    ),
                    rows,
                    cols,
                    rank,
                },
                other => other,
            })?,
        });
    }
    let maps = forward
        .chunks(2)
        .map(|pair| pair[1].mul(&pair[0]))
        .collect::<Result<Vec<_>>>()?;
    Ok(ForwardModule {
        degree: z.degree(),
        dims: z.dims().iter().step_by(2).copied().collect(),
        maps,
    })
}

/// Sorted open intervals of the real line in which only consecutive members
/// overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalCover {
    intervals: Vec<(Rational, Rational)>,
}

impl fmt::Display for IntervalCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|(a, b)| format!("({}, {})", format_rational(a), format_rational(b)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl IntervalCover {
    pub fn new(intervals: Vec<(Rational, Rational)>) -> Result<Self> {
        let invalid = |reason: String| Error::CoverInvalid {
            reason,
            intervals: IntervalCover {
                intervals: intervals.clone(),
            }
            .to_string(),
        };
        if intervals.is_empty() {
            return Err(invalid("no intervals".into()));
        }
        for (k, (a, b)) in intervals.iter().enumerate() {
            if a >= b {
                return Err(invalid(format!("interval {k} is empty")));
            }
        }
        for k in 0..intervals.len().saturating_sub(1) {
            let (a0, b0) = &intervals[k];
            let (a1, b1) = &intervals[k + 1];
            if !(a0 < a1 && b0 < b1) {
                return Err(invalid(format!(
                    "intervals {k} and {} are not sorted",
                    k + 1
                )));
            }
            if a1 >= b0 {
                return Err(invalid(format!(
                    "intervals {k} and {} do not overlap",
                    k + 1
                )));
            }
        }
        for k in 0..intervals.len().saturating_sub(2) {
            if intervals[k].1 > intervals[k + 2].0 {
                return Err(invalid(format!("intervals {k} and {} overlap", k + 2)));
            }
        }
        Ok(Self { intervals })
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// `n + 1` intervals for `n` sorted levels, with `levels[k]` in the
    /// overlap of intervals `k` and `k + 1`. The overlaps have radius a
    /// quarter of the smallest gap; the outer intervals extend one unit
    /// past the extreme levels.
    pub fn around_levels(levels: &[Level]) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::CoverInvalid {
                reason: "no levels".into(),
                intervals: "[]".into(),
            });
        }
        let one = Rational::from_integer(1.into());
        let gap = levels
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .min()
            .unwrap_or_else(|| one.clone());
        let r = gap / Rational::from_integer(4.into());
        let n = levels.len();
        let mut intervals = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let lo = if k == 0 {
                &levels[0] - &one
            } else {
                &levels[k - 1] - &r
            };
            let hi = if k == n {
                &levels[n - 1] + &one
            } else {
                &levels[k] + &r
            };
            intervals.push((lo, hi));
        }
        Self::new(intervals)
    }

    /// Endpoints strictly inside `(lo, hi)`.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self
            .intervals
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Levelset zigzag of the height function of `c` in degree `q`:
///
/// `H(f⁻¹(-∞,c_1]) ← H(f⁻¹c_1) → H(f⁻¹[c_1,c_2]) ← … ← H(f⁻¹c_n) → H(f⁻¹[c_n,∞))`
///
/// with arrows induced by inclusions of fibers into slabs. Position
/// `2i - 1` holds the fiber over `c_i`, even positions hold slabs (the end
/// slabs at positions `0` and `2n`). `cover` must place each critical value
/// in the overlap of two consecutive intervals.
pub fn levelset_zigzag(
    c: &CutComplex,
    cover: &IntervalCover,
    q: usize,
    field: Field,
) -> Result<ZigzagModule> {
    let critical = c.critical_levels();
    if critical.is_empty() {
        return ZigzagModule::new(q, field, Vec::new(), Vec::new());
    }
    check_cover_against_levels(cover, &critical)?;
    for t in &critical {
        c.check_level(t)
            .map_err(|_| Error::MissingCriticalLevel { level: t.clone() })?;
    }

    let n = critical.len();
    let fibers: Vec<Arc<HomologySpace>> = critical
        .iter()
        .map(|t| Ok(homology(&c.fiber(t)?, q, field)))
        .collect::<Result<_>>()?;
    let mut kinds = Vec::with_capacity(2 * n + 1);
    let mut slabs: Vec<Arc<HomologySpace>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (a, b) = match k {
            0 => (&critical[0], &critical[0]),
            k if k == n => (&critical[n - 1], &critical[n - 1]),
            k => (&critical[k - 1], &critical[k]),
        };
        slabs.push(homology(&c.interlevel(a, b)?, q, field));
        let (lo, hi) = match k {
            0 => (
                c.complex()
                    .min_height()
                    .cloned()
                    .unwrap_or_else(|| a.clone()),
                b.clone(),
            ),
            k if k == n => (
                a.clone(),
                c.complex()
                    .max_height()
                    .cloned()
                    .unwrap_or_else(|| b.clone()),
            ),
            _ => (a.clone(), b.clone()),
        };
        kinds.push(SpaceKind::Slab(lo, hi));
        if k < n {
            kinds.push(SpaceKind::Fiber(critical[k].clone()));
        }
    }

    let mut dims = Vec::with_capacity(2 * n + 1);
    let mut arrows = Vec::with_capacity(2 * n);
    for i in 0..n {
        dims.push(slabs[i].dim());
        dims.push(fibers[i].dim());
        arrows.push(Arrow::backward(
            induced_map(&fibers[i], &slabs[i])?.matrix().clone(),
        ));
        arrows.push(Arrow::forward(
            induced_map(&fibers[i], &slabs[i + 1])?.matrix().clone(),
        ));
    }
    dims.push(slabs[n].dim());
    ZigzagModule::with_kinds(q, field, dims, arrows, kinds)
}

/// `H f⁻¹(t_0) → H f⁻¹[t_0,t_1] ← H f⁻¹(t_1) → … ← H f⁻¹(t_n)` over the
/// given sorted levels, each of which must be a cut level of `c`. Fibers sit
/// at even positions.
pub fn fiber_slab_zigzag(
    c: &CutComplex,
    levels: &[Level],
    q: usize,
    field: Field,
) -> Result<ZigzagModule> {
    let fibers: Vec<Arc<HomologySpace>> = levels
        .iter()
        .map(|t| Ok(homology(&c.fiber(t)?, q, field)))
        .collect::<Result<_>>()?;
    let mut dims = Vec::with_capacity(2 * levels.len());
    let mut kinds = Vec::with_capacity(2 * levels.len());
    let mut arrows = Vec::with_capacity(2 * levels.len());
    for (i, t) in levels.iter().enumerate() {
        dims.push(fibers[i].dim());
        kinds.push(SpaceKind::Fiber(t.clone()));
        if let Some(next) = levels.get(i + 1) {
            let slab = homology(&c.interlevel(t, next)?, q, field);
            dims.push(slab.dim());
            kinds.push(SpaceKind::Slab(t.clone(), next.clone()));
            arrows.push(Arrow::forward(
                induced_map(&fibers[i], &slab)?.matrix().clone(),
            ));
            arrows.push(Arrow::backward(
                induced_map(&fibers[i + 1], &slab)?.matrix().clone(),
            ));
        }
    }
    ZigzagModule::with_kinds(q, field, dims, arrows, kinds)
}

fn check_cover_against_levels(cover: &IntervalCover, levels: &[Level]) -> Result<()> {
    let invalid = |reason: String| Error::CoverInvalid {
        reason,
        intervals: cover.to_string(),
    };
    if cover.len() != levels.len() + 1 {
        return Err(invalid(format!(
            "{} critical values need {} intervals",
            levels.len(),
            levels.len() + 1
        )));
    }
    let iv = cover.intervals();
    for (k, t) in levels.iter().enumerate() {
        let inside = |(a, b): &(Rational, Rational)| a < t && t < b;
        if !(inside(&iv[k]) && inside(&iv[k + 1])) {
            return Err(invalid(format!(
                "critical value {} is not in the overlap of intervals {k} and {}",
                format_rational(t),
                k + 1
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratio;

    fn q() -> Field {
        Field::Rational
    }

    fn m(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64_rows(rows, q())
    }

    #[test]
    fn two_position_bar_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let a = Matrix::from_i64_rows(&[vec![1]], f2);
        let z = ZigzagModule::new(0, f2, vec![1, 1], vec![Arrow::backward(a)]).unwrap();
        assert_eq!(z.covering_rank(0, 1), 1);
        assert_eq!(
            barcode(&z).bars,
            vec![Bar {
                birth: 0,
                death: 1,
                multiplicity: 1
            }]
        );
    }

    #[test]
    fn identity_gives_one_bar() {
        let z = ZigzagModule::forward(0, q(), vec![1, 1], vec![m(&[vec![1]])]).unwrap();
        let b = barcode(&z);
        assert_eq!(
            b.bars,
            vec![Bar {
                birth: 0,
                death: 1,
                multiplicity: 1
            }]
        );
    }

    #[test]
    fn zero_middle_splits_bars() {
        let z = ZigzagModule::new(
            0,
            q(),
            vec![1, 0, 1],
            vec![
                Arrow::forward(Matrix::zeros(0, 1, q())),
                Arrow::backward(Matrix::zeros(0, 1, q())),
            ],
        )
        .unwrap();
        let b = barcode(&z);
        assert_eq!(
            b.bars,
            vec![
                Bar {
                    birth: 0,
                    death: 0,
                    multiplicity: 1
                },
                Bar {
                    birth: 2,
                    death: 2,
                    multiplicity: 1
                }
            ]
        );
    }

    #[test]
    fn backward_arrow_into_zero_is_not_a_bar_merge() {
        // k ← k → k with both maps the identity: one bar
        let z = ZigzagModule::new(
            0,
            q(),
            vec![1, 1, 1],
            vec![
                Arrow::backward(m(&[vec![1]])),
                Arrow::forward(m(&[vec![1]])),
            ],
        )
        .unwrap();
        assert_eq!(
            barcode(&z).bars,
            vec![Bar {
                birth: 0,
                death: 2,
                multiplicity: 1
            }]
        );
        // k → k ← k where the right map is zero
        let z = ZigzagModule::new(
            0,
            q(),
            vec![1, 1, 1],
            vec![
                Arrow::forward(m(&[vec![1]])),
                Arrow::backward(m(&[vec![0]])),
            ],
        )
        .unwrap();
        assert_eq!(
            barcode(&z).bars,
            vec![
                Bar {
                    birth: 0,
                    death: 1,
                    multiplicity: 1
                },
                Bar {
                    birth: 2,
                    death: 2,
                    multiplicity: 1
                }
            ]
        );
    }

    #[test]
    fn shape_errors() {
        assert!(ZigzagModule::forward(0, q(), vec![1, 2], vec![m(&[vec![1]])]).is_err());
        assert!(ZigzagModule::forward(0, q(), vec![1, 2], vec![]).is_err());
    }

    #[test]
    fn to_persistence_inverts_backward_arrows() {
        let z = ZigzagModule::new(
            0,
            q(),
            vec![1, 1, 1],
            vec![
                Arrow::forward(m(&[vec![2]])),
                Arrow::backward(m(&[vec![4]])),
            ],
        )
        .unwrap();
        let p = to_persistence(&z).unwrap();
        assert_eq!(p.dims, vec![1, 1]);
        assert_eq!(
            p.maps[0].get(0, 0),
            q().from_rational(&ratio(1, 2)).unwrap()
        );

        let bad = ZigzagModule::new(
            0,
            q(),
            vec![1, 1, 1],
            vec![
                Arrow::forward(m(&[vec![1]])),
                Arrow::backward(m(&[vec![0]])),
            ],
        )
        .unwrap();
        assert!(matches!(
            to_persistence(&bad),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn cover_validation() {
        let iv = |v: &[(i64, i64)]| {
            v.iter()
                .map(|&(a, b)| (ratio(a, 1), ratio(b, 1)))
                .collect::<Vec<_>>()
        };
        assert!(IntervalCover::new(iv(&[(0, 2), (1, 4), (3, 5)])).is_ok());
        assert!(
            IntervalCover::new(iv(&[(0, 2), (2, 4)])).is_err(),
            "no overlap"
        );
        assert!(
            IntervalCover::new(iv(&[(0, 3), (1, 4), (2, 5)])).is_err(),
            "triple overlap"
        );
        assert!(
            IntervalCover::new(iv(&[(1, 4), (0, 2)])).is_err(),
            "unsorted"
        );
        let c = IntervalCover::around_levels(&[ratio(0, 1), ratio(1, 1)]).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.intervals()[1], (ratio(-1, 4), ratio(5, 4)));
    }
}
