//! Truncated Reeb complexes: fibers over critical values, section spaces
//! between adjacent critical values, and the critical differential joining
//! them.
//!
//! A section space over `[a, b]` is modeled by the fiber over the midpoint.
//! Evaluation at an end is the map `H f⁻¹(mid) → H f⁻¹[a, mid] ≅ H f⁻¹(a)`
//! (resp. through `[mid, b]`), which needs the end fiber's inclusion into
//! the half slab to be an isomorphism on homology.

use std::sync::Arc;

use serde::Serialize;

use crate::complex::Level;
use crate::cut::{midpoint, CutComplex};
use crate::error::{Error, Result};
use crate::field::{format_rational, Field};
use crate::homology::{compose, homology, induced_map, invert, HomologySpace, LinearMap};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Bottom,
    Top,
}

/// Homology of the sections over `[a, b]`, as the homology of the mid fiber.
#[derive(Debug, Clone)]
pub struct SectModel {
    pub slab: (Level, Level),
    pub mid: Level,
    pub space: Arc<HomologySpace>,
}

fn check_slab(c: &CutComplex, a: &Level, b: &Level) -> Result<()> {
    if a >= b {
        return Err(Error::InvertedInterval {
            a: a.clone(),
            b: b.clone(),
        });
    }
    let critical = c.critical_levels();
    for t in [a, b] {
        if critical.binary_search(t).is_err() {
            return Err(Error::MissingCriticalLevel { level: t.clone() });
        }
    }
    if let Some(level) = critical.iter().find(|t| a < *t && *t < b) {
        return Err(Error::IntervalContainsCritical {
            a: a.clone(),
            b: b.clone(),
            level: level.clone(),
        });
    }
    Ok(())
}

fn slab_name(a: &Level, b: &Level) -> String {
    format!("[{}, {}]", format_rational(a), format_rational(b))
}

pub fn sect_homology(
    c: &CutComplex,
    a: &Level,
    b: &Level,
    q: usize,
    field: Field,
) -> Result<SectModel> {
    check_slab(c, a, b)?;
    SectModel::over(c, a, b, q, field)
}

impl SectModel {
    /// Mid-fiber model over `[a, b]` without checking that `a` and `b` are
    /// adjacent critical values; the telescope uses its filtration indices.
    pub fn over(c: &CutComplex, a: &Level, b: &Level, q: usize, field: Field) -> Result<SectModel> {
        let mid = midpoint(a, b);
        let fiber = c
            .fiber(&mid)
            .map_err(|_| Error::MissingCriticalLevel { level: mid.clone() })?;
        Ok(SectModel {
            slab: (a.clone(), b.clone()),
            space: homology(&fiber, q, field),
            mid,
        })
    }
}

pub(crate) fn face_map_with(
    c: &CutComplex,
    sect: &SectModel,
    end: End,
    end_space: &Arc<HomologySpace>,
) -> Result<LinearMap> {
    let (a, b) = &sect.slab;
    let half = match end {
        End::Bottom => c.interlevel(a, &sect.mid)?,
        End::Top => c.interlevel(&sect.mid, b)?,
    };
    let half = homology(&half, sect.space.degree(), sect.space.field());
    let from_end = induced_map(end_space, &half)?;
    let from_mid = induced_map(&sect.space, &half)?;
    let back = invert(&from_end).map_err(|e| match e {
        Error::NotInvertible {
            rows, cols, rank, ..
        } => Error::NotInvertible {
            context: format!(
                "H_{} of the {} fiber into its half of slab {}",
                sect.space.degree(),
                match end {
                    End::Bottom => "bottom",
                    End::Top => "top",
                },
                slab_name(a, b)
            ),
            rows,
            cols,
            rank,
        },
        other => other,
    })?;
    compose(&back, &from_mid)
}

/// Evaluation of sections over `[a, b]` at one end.
pub fn face_map(
    c: &CutComplex,
    a: &Level,
    b: &Level,
    end: End,
    q: usize,
    field: Field,
) -> Result<LinearMap> {
    let sect = sect_homology(c, a, b, q, field)?;
    let t = match end {
        End::Bottom => a,
        End::Top => b,
    };
    let end_space = homology(&c.fiber(t)?, q, field);
    face_map_with(c, &sect, end, &end_space)
}

/// `T_q`: `⊕ H_q f⁻¹(c_i) ← ⊕ H_q Sect[c_i, c_{i+1}]`.
#[derive(Debug, Clone)]
pub struct TruncatedReebComplex {
    pub degree: usize,
    pub field: Field,
    pub critical_levels: Vec<Level>,
    pub fiber_spaces: Vec<Arc<HomologySpace>>,
    pub sect_spaces: Vec<SectModel>,
    pub face_bottom: Vec<LinearMap>,
    pub face_top: Vec<LinearMap>,
    /// `∂¹ = d_0 - d_1`, where `d_0` evaluates at the top and `d_1` at the
    /// bottom. Rows follow the fibers, columns the section spaces.
    pub differential: Matrix,
}

impl TruncatedReebComplex {
    pub fn fiber_dims(&self) -> Vec<usize> {
        self.fiber_spaces.iter().map(|s| s.dim()).collect()
    }

    pub fn sect_dims(&self) -> Vec<usize> {
        self.sect_spaces.iter().map(|s| s.space.dim()).collect()
    }

    pub fn rank(&self) -> usize {
        self.differential.rank()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.differential.cokernel_dim()
    }

    pub fn kernel_dim(&self) -> usize {
        self.differential.nullity()
    }

    /// Reassembles the differential from the face maps.
    pub fn assemble(
        field: Field,
        fiber_dims: &[usize],
        face_bottom: &[Matrix],
        face_top: &[Matrix],
    ) -> Matrix {
        let rows: usize = fiber_dims.iter().sum();
        let cols: usize = face_bottom.iter().map(|m| m.cols()).sum();
        let mut d = Matrix::zeros(rows, cols, field);
        let mut row = 0;
        let mut col = 0;
        for (i, (bottom, top)) in face_bottom.iter().zip(face_top).enumerate() {
            d.add_block(row, col, &bottom.neg());
            d.add_block(row + fiber_dims[i], col, top);
            row += fiber_dims[i];
            col += bottom.cols();
        }
        d
    }
}

pub fn truncated_reeb(c: &CutComplex, q: usize, field: Field) -> Result<TruncatedReebComplex> {
    let critical = c.critical_levels();
    let fiber_spaces = critical
        .iter()
        .map(|t| Ok(homology(&c.fiber(t)?, q, field)))
        .collect::<Result<Vec<_>>>()?;
    let mut sect_spaces = Vec::new();
    let mut face_bottom = Vec::new();
    let mut face_top = Vec::new();
    for (i, w) in critical.windows(2).enumerate() {
        let sect = sect_homology(c, &w[0], &w[1], q, field)?;
        face_bottom.push(face_map_with(c, &sect, End::Bottom, &fiber_spaces[i])?);
        face_top.push(face_map_with(c, &sect, End::Top, &fiber_spaces[i + 1])?);
        sect_spaces.push(sect);
    }
    let fiber_dims: Vec<usize> = fiber_spaces.iter().map(|s| s.dim()).collect();
    let bottoms: Vec<Matrix> = face_bottom.iter().map(|m| m.matrix().clone()).collect();
    let tops: Vec<Matrix> = face_top.iter().map(|m| m.matrix().clone()).collect();
    let differential = TruncatedReebComplex::assemble(field, &fiber_dims, &bottoms, &tops);
    Ok(TruncatedReebComplex {
        degree: q,
        field,
        critical_levels: critical,
        fiber_spaces,
        sect_spaces,
        face_bottom,
        face_top,
        differential,
    })
}

/// `dim H_n = dim coker ∂¹ of T_n + dim ker ∂¹ of T_{n-1}`, for `T` listed
/// by degree from 0.
pub fn homology_of_base(ts: &[TruncatedReebComplex]) -> Vec<usize> {
    (0..ts.len())
        .map(|n| ts[n].cokernel_dim() + if n == 0 { 0 } else { ts[n - 1].kernel_dim() })
        .collect()
}

/// Check of `H Sect[a,b] → H f⁻¹(a) ⊕ H f⁻¹(b) → H f⁻¹[a,b]` being exact
/// in the middle.
#[derive(Debug, Clone, Serialize)]
pub struct DiamondReport {
    pub slab: (String, String),
    pub degree: usize,
    pub sect_dim: usize,
    pub fiber_dims: (usize, usize),
    pub slab_dim: usize,
    /// `(-d_1; d_0)`
    pub first_map: Vec<Vec<String>>,
    /// `[i_a | i_b]`
    pub second_map: Vec<Vec<String>>,
    pub rank_first: usize,
    pub rank_second: usize,
    pub kernel_second: usize,
    pub composite_is_zero: bool,
    pub exact: bool,
    pub passed: bool,
}

pub fn verify_diamond(
    c: &CutComplex,
    a: &Level,
    b: &Level,
    q: usize,
    field: Field,
) -> Result<DiamondReport> {
    let sect = sect_homology(c, a, b, q, field)?;
    let fa = homology(&c.fiber(a)?, q, field);
    let fb = homology(&c.fiber(b)?, q, field);
    let d1 = face_map_with(c, &sect, End::Bottom, &fa)?;
    let d0 = face_map_with(c, &sect, End::Top, &fb)?;
    let slab = homology(&c.interlevel(a, b)?, q, field);
    let ia = induced_map(&fa, &slab)?;
    let ib = induced_map(&fb, &slab)?;

    let first = d1.matrix().neg().vstack(d0.matrix())?;
    let second = ia.matrix().hstack(ib.matrix())?;
    let composite_is_zero = second.mul(&first)?.is_zero();
    let rank_first = first.rank();
    let rank_second = second.rank();
    let kernel_second = second.nullity();
    let exact = kernel_second == rank_first;
    Ok(DiamondReport {
        slab: (format_rational(a), format_rational(b)),
        degree: q,
        sect_dim: sect.space.dim(),
        fiber_dims: (fa.dim(), fb.dim()),
        slab_dim: slab.dim(),
        first_map: first.to_string_rows(),
        second_map: second.to_string_rows(),
        rank_first,
        rank_second,
        kernel_second,
        composite_is_zero,
        exact,
        passed: composite_is_zero && exact,
    })
}

/// Diamond reports for every adjacent critical pair, degrees `0..=max_degree`.
pub fn verify_all_diamonds(
    c: &CutComplex,
    max_degree: usize,
    field: Field,
) -> Result<Vec<DiamondReport>> {
    let critical = c.critical_levels();
    let mut out = Vec::new();
    for q in 0..=max_degree {
        for w in critical.windows(2) {
            out.push(verify_diamond(c, &w[0], &w[1], q, field)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::field::ratio;

    const Q: Field = Field::Rational;

    fn analysed(k: &crate::SimplicialComplex) -> CutComplex {
        CutComplex::for_critical_analysis(k, &[])
    }

    #[test]
    fn pinched_cylinder_sect_and_faces() {
        let c = analysed(&corpus::pinched_cylinder());
        let (a, b) = (ratio(0, 1), ratio(1, 1));
        assert_eq!(sect_homology(&c, &a, &b, 0, Q).unwrap().space.dim(), 1);
        assert_eq!(sect_homology(&c, &a, &b, 1, Q).unwrap().space.dim(), 1);
        let d1 = face_map(&c, &a, &b, End::Bottom, 1, Q).unwrap();
        assert_eq!(
            (d1.matrix().rows(), d1.matrix().cols(), d1.rank()),
            (2, 1, 1)
        );
        let d1 = face_map(&c, &a, &b, End::Bottom, 0, Q).unwrap();
        assert!(!d1.matrix().is_zero());
    }

    #[test]
    fn circle_reeb_complex() {
        let c = analysed(&corpus::circle());
        let t0 = truncated_reeb(&c, 0, Q).unwrap();
        assert_eq!(t0.fiber_dims(), vec![1, 1]);
        assert_eq!(t0.sect_dims(), vec![2]);
        assert_eq!((t0.rank(), t0.cokernel_dim(), t0.kernel_dim()), (1, 1, 1));
        let t1 = truncated_reeb(&c, 1, Q).unwrap();
        assert_eq!(homology_of_base(&[t0, t1]), vec![1, 1]);
    }

    #[test]
    fn slab_checks() {
        let c = analysed(&corpus::sphere());
        assert!(matches!(
            sect_homology(&c, &ratio(-1, 1), &ratio(1, 1), 0, Q),
            Err(Error::IntervalContainsCritical { .. })
        ));
        assert!(matches!(
            sect_homology(&c, &ratio(-1, 2), &ratio(1, 1), 0, Q),
            Err(Error::MissingCriticalLevel { .. })
        ));
    }

    #[test]
    fn assembled_differential_matches_blocks() {
        let c = analysed(&corpus::torus());
        let t = truncated_reeb(&c, 1, Q).unwrap();
        let bottoms: Vec<Matrix> = t.face_bottom.iter().map(|m| m.matrix().clone()).collect();
        let tops: Vec<Matrix> = t.face_top.iter().map(|m| m.matrix().clone()).collect();
        assert_eq!(
            TruncatedReebComplex::assemble(Q, &t.fiber_dims(), &bottoms, &tops),
            t.differential
        );
    }
}
