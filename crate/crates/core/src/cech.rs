//! Covers by subcomplexes, the first page of their Mayer-Vietoris spectral
//! sequence, the collapse at the second page for covers without triple
//! overlaps, and the nerve of a cover.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::cut::CutComplex;
use crate::error::{Error, Result};
use crate::field::{format_rational, ratio, Field};
use crate::homology::{betti_numbers, homology, induced_map, HomologySpace};
use crate::linalg::Matrix;
use crate::zigzag::IntervalCover;

#[derive(Debug, Clone)]
pub struct Overlap {
    /// `left < right`, indices into the pieces.
    pub left: usize,
    pub right: usize,
    pub complex: SimplicialComplex,
}

/// A cover of a complex by subcomplexes in which no three pieces meet.
#[derive(Debug, Clone)]
pub struct PullbackCover {
    pub intervals: Option<IntervalCover>,
    pub ambient: SimplicialComplex,
    pub pieces: Vec<SimplicialComplex>,
    /// Nonempty pairwise intersections, in lexicographic order of
    /// `(left, right)`.
    pub overlaps: Vec<Overlap>,
}

impl PullbackCover {
    /// Cover of `ambient` by arbitrary subcomplexes.
    pub fn from_pieces(
        ambient: &SimplicialComplex,
        pieces: Vec<SimplicialComplex>,
    ) -> Result<Self> {
        let describe = || format!("{} subcomplexes", pieces.len());
        for p in &pieces {
            if let Some(s) = p.first_missing_from(ambient) {
                return Err(Error::NotASubcomplex {
                    simplex: s.to_string(),
                });
            }
        }
        for s in ambient.all_simplices() {
            if !pieces.iter().any(|p| p.contains(s)) {
                return Err(Error::UncoveredSimplex {
                    simplex: s.to_string(),
                });
            }
        }
        let mut overlaps = Vec::new();
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                let o = pieces[i].intersection(&pieces[j]);
                if !o.is_empty() {
                    overlaps.push(Overlap {
                        left: i,
                        right: j,
                        complex: o,
                    });
                }
            }
        }
        for (x, o) in overlaps.iter().enumerate() {
            for p in overlaps[x + 1..].iter().filter(|p| p.left == o.left) {
                if !o.complex.intersection(&pieces[p.right]).is_empty() {
                    return Err(Error::CoverInvalid {
                        reason: format!("pieces {}, {} and {} meet", o.left, o.right, p.right),
                        intervals: describe(),
                    });
                }
            }
        }
        Ok(Self {
            intervals: None,
            ambient: ambient.clone(),
            pieces,
            overlaps,
        })
    }
}

/// Pulls an interval cover back along the height function of `c`. Each open
/// interval is modeled by the full subcomplex over its closure, so interval
/// endpoints inside the height range must be cut levels of `c`.
pub fn build_cover(c: &CutComplex, cover: &IntervalCover) -> Result<PullbackCover> {
    let mut pieces = Vec::with_capacity(cover.len());
    for (a, b) in cover.intervals() {
        pieces.push(c.interlevel(a, b)?);
    }
    let k = c.complex();
    for s in k.all_simplices() {
        if !pieces.iter().any(|p| p.contains(s)) {
            return Err(Error::UncoveredSimplex {
                simplex: s.to_string(),
            });
        }
    }
    let mut overlaps = Vec::new();
    for i in 0..pieces.len() {
        if let Some(far) = pieces.get(i + 2) {
            if !pieces[i].intersection(far).is_empty() {
                let (_, hi) = &cover.intervals()[i];
                return Err(Error::CoverInvalid {
                    reason: format!(
                        "closed pieces {i} and {} meet at height {}",
                        i + 2,
                        format_rational(hi)
                    ),
                    intervals: cover.to_string(),
                });
            }
        }
        if i + 1 < pieces.len() {
            let o = pieces[i].intersection(&pieces[i + 1]);
            if !o.is_empty() {
                overlaps.push(Overlap {
                    left: i,
                    right: i + 1,
                    complex: o,
                });
            }
        }
    }
    Ok(PullbackCover {
        intervals: Some(cover.clone()),
        ambient: k.clone(),
        pieces,
        overlaps,
    })
}

/// One row `E¹_{0,q} ← E¹_{1,q}` of the first page.
#[derive(Debug, Clone)]
pub struct PageRow {
    pub degree: usize,
    pub pieces: Vec<Arc<HomologySpace>>,
    pub overlaps: Vec<Arc<HomologySpace>>,
    /// `∂¹_{1,q} = H_q d_0 - H_q d_1`: each overlap maps with `+` into its
    /// right piece and `-` into its left piece.
    pub differential: Matrix,
}

impl PageRow {
    pub fn piece_dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|s| s.dim()).collect()
    }

    pub fn overlap_dims(&self) -> Vec<usize> {
        self.overlaps.iter().map(|s| s.dim()).collect()
    }
}

#[derive(Debug, Clone)]
pub struct FirstPage {
    pub field: Field,
    pub rows: Vec<PageRow>,
}

pub fn first_page(pc: &PullbackCover, max_degree: usize, field: Field) -> Result<FirstPage> {
    let mut rows = Vec::with_capacity(max_degree + 1);
    for q in 0..=max_degree {
        let pieces: Vec<_> = pc.pieces.iter().map(|p| homology(p, q, field)).collect();
        let overlaps: Vec<_> = pc
            .overlaps
            .iter()
            .map(|o| homology(&o.complex, q, field))
            .collect();
        let offsets: Vec<usize> = pieces
            .iter()
            .scan(0, |acc, s| {
                let o = *acc;
                *acc += s.dim();
                Some(o)
            })
            .collect();
        let rows_total: usize = pieces.iter().map(|s| s.dim()).sum();
        let cols_total: usize = overlaps.iter().map(|s| s.dim()).sum();
        let mut d = Matrix::zeros(rows_total, cols_total, field);
        let mut col = 0;
        for (o, space) in pc.overlaps.iter().zip(&overlaps) {
            let into_right = induced_map(space, &pieces[o.right])?;
            let into_left = induced_map(space, &pieces[o.left])?;
            d.add_block(offsets[o.right], col, into_right.matrix());
            d.add_block(offsets[o.left], col, &into_left.matrix().neg());
            col += space.dim();
        }
        rows.push(PageRow {
            degree: q,
            pieces,
            overlaps,
            differential: d,
        });
    }
    Ok(FirstPage { field, rows })
}

/// `dim H_0 = dim coker ∂¹_{1,0}` and
/// `dim H_q = dim ker ∂¹_{1,q-1} + dim coker ∂¹_{1,q}`.
pub fn second_page_two_column(fp: &FirstPage) -> Vec<usize> {
    (0..fp.rows.len())
        .map(|q| {
            let coker = fp.rows[q].differential.cokernel_dim();
            if q == 0 {
                coker
            } else {
                coker + fp.rows[q - 1].differential.nullity()
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct GoodnessEntry {
    /// `"piece 2"` or `"overlap 1-2"`.
    pub label: String,
    pub betti: Vec<usize>,
    pub good: bool,
}

/// Nerve of a cover with its homology, and whether every piece and overlap
/// has the homology of a point.
#[derive(Debug, Clone, Serialize)]
pub struct NerveReport {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    /// Boundary of the nerve, edges to vertices.
    pub boundary: Vec<Vec<String>>,
    pub nerve_betti: Vec<usize>,
    pub entries: Vec<GoodnessEntry>,
    pub homologically_good: bool,
    /// The nerve's Betti numbers, reported only for good covers.
    pub homology: Option<Vec<usize>>,
}

pub fn nerve_row(pc: &PullbackCover, field: Field) -> NerveReport {
    let top = pc.ambient.dim().unwrap_or(0);
    let point = |betti: &[usize]| {
        betti
            .iter()
            .enumerate()
            .all(|(q, &b)| b == usize::from(q == 0))
    };
    let mut entries = Vec::new();
    for (i, p) in pc.pieces.iter().enumerate() {
        let betti = betti_numbers(p, top, field);
        entries.push(GoodnessEntry {
            label: format!("piece {i}"),
            good: point(&betti),
            betti,
        });
    }
    for o in &pc.overlaps {
        let betti = betti_numbers(&o.complex, top, field);
        entries.push(GoodnessEntry {
            label: format!("overlap {}-{}", o.left, o.right),
            good: point(&betti),
            betti,
        });
    }
    let heights: BTreeMap<VertexId, _> = (0..pc.pieces.len() as u32)
        .map(|v| (VertexId(v), ratio(0, 1)))
        .collect();
    let nerve = SimplicialComplex::from_simplices(
        heights,
        pc.overlaps
            .iter()
            .map(|o| Simplex::from_ids(&[o.left as u32, o.right as u32])),
    )
    .expect("nerve vertices are the pieces");
    let nerve_betti = betti_numbers(&nerve, 1, field);
    let boundary = crate::homology::ChainComplex::new(&nerve, field).boundary(1);
    let homologically_good = entries.iter().all(|e| e.good);
    NerveReport {
        vertices: pc.pieces.len(),
        edges: pc.overlaps.iter().map(|o| (o.left, o.right)).collect(),
        boundary: boundary.to_string_rows(),
        homology: homologically_good.then(|| {
            let mut b = nerve_betti.clone();
            b.resize(top + 1, 0);
            b
        }),
        nerve_betti,
        entries,
        homologically_good,
    }
}
