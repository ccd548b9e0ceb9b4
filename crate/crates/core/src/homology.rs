//! Simplicial chains, homology with explicit cycle bases, and the linear
//! maps induced on homology by inclusions of subcomplexes.

use std::sync::Arc;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix, SparseVec};

/// Oriented simplicial chain complex. Orientation follows the vertex order:
/// the face omitting the `i`-th vertex enters with sign `(-1)^i`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    field: Field,
    cells: Vec<Arc<Vec<Simplex>>>,
}

impl ChainComplex {
    pub fn new(k: &SimplicialComplex, field: Field) -> Self {
        let top = k.dim().map_or(0, |d| d + 1);
        Self {
            field,
            cells: (0..top).map(|q| k.shared_simplices(q)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank_of_chains(&self, q: usize) -> usize {
        self.cells.get(q).map_or(0, |c| c.len())
    }

    pub fn cells(&self, q: usize) -> Arc<Vec<Simplex>> {
        self.cells
            .get(q)
            .cloned()
            .unwrap_or_else(|| Arc::new(Vec::new()))
    }

    /// `∂_q : C_q → C_{q-1}`; for `q = 0` this is the map to the zero space.
    pub fn boundary(&self, q: usize) -> Matrix {
        let field = self.field;
        let cols = self.cells(q);
        if q == 0 {
            return Matrix::zeros(0, cols.len(), field);
        }
        let rows = self.cells(q - 1);
        let plus = field.one();
        let minus = field.from_i64(-1);
        let columns = cols
            .iter()
            .map(|s| {
                let entries = s
                    .boundary_faces()
                    .enumerate()
                    .map(|(i, face)| {
                        let r = rows
                            .binary_search(&face)
                            .expect("complexes are face-closed");
                        (
                            r,
                            if i % 2 == 0 {
                                plus.clone()
                            } else {
                                minus.clone()
                            },
                        )
                    })
                    .collect();
                SparseVec::from_entries(entries, field)
            })
            .collect();
        Matrix::from_columns(rows.len(), columns, field)
    }
}

/// `H_q` of a complex with a chosen basis of cycle representatives.
///
/// The basis extends a reduced basis of the boundaries to one of the
/// cycles, pivoting greedily in simplex order, so it is a function of the
/// complex alone.
#[derive(Debug, Clone)]
pub struct HomologySpace {
    degree: usize,
    field: Field,
    cells: Arc<Vec<Simplex>>,
    basis: Vec<SparseVec>,
    boundary_rank: usize,
    reducer: Echelon,
}

impl PartialEq for HomologySpace {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.field == other.field
            && self.basis == other.basis
            && (Arc::ptr_eq(&self.cells, &other.cells) || self.cells == other.cells)
    }
}

impl HomologySpace {
    /// Zero space of the given degree, with no ambient chains.
    pub fn zero(degree: usize, field: Field) -> Self {
        Self {
            degree,
            field,
            cells: Arc::new(Vec::new()),
            basis: Vec::new(),
            boundary_rank: 0,
            reducer: Echelon::new(field),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Cycle representatives, in coordinates of [`HomologySpace::cells`].
    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn cells(&self) -> &[Simplex] {
        &self.cells
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundary_rank
    }

    /// Coordinates of the class of `cycle` in the stored basis.
    pub fn express(&self, cycle: &SparseVec) -> Result<SparseVec> {
        let (residue, tag) = self.reducer.reduce(cycle.clone(), SparseVec::new());
        if !residue.is_zero() {
            return Err(Error::InternalInconsistency(format!(
                "chain is not a cycle of degree {}",
                self.degree
            )));
        }
        Ok(tag.scaled(&self.field.from_i64(-1), self.field))
    }
}

/// Computes `H_q(k)` over `field`. Degrees above the dimension give the zero
/// space.
pub fn homology(k: &SimplicialComplex, q: usize, field: Field) -> Arc<HomologySpace> {
    homology_of_chains(&ChainComplex::new(k, field), q)
}

pub fn homology_of_chains(chains: &ChainComplex, q: usize) -> Arc<HomologySpace> {
    let field = chains.field();
    let mut reducer = Echelon::new(field);
    let upper = chains.boundary(q + 1);
    let mut boundary_rank = 0;
    for c in upper.columns() {
        if reducer.insert(c.clone(), SparseVec::new()).is_none() {
            boundary_rank += 1;
        }
    }
    let cycles = chains.boundary(q).kernel_basis();
    let mut basis = Vec::new();
    for z in cycles.columns() {
        let (r, _) = reducer.reduce(z.clone(), SparseVec::new());
        if !r.is_zero() {
            reducer.insert(r.clone(), SparseVec::unit(basis.len(), field));
            basis.push(r);
        }
    }
    Arc::new(HomologySpace {
        degree: q,
        field,
        cells: chains.cells(q),
        basis,
        boundary_rank,
        reducer,
    })
}

/// Betti numbers `b_0..=b_max` from boundary ranks alone, without bases.
pub fn betti_numbers(k: &SimplicialComplex, max_degree: usize, field: Field) -> Vec<usize> {
    let chains = ChainComplex::new(k, field);
    let ranks: Vec<usize> = (0..=max_degree + 1)
        .map(|q| chains.boundary(q).rank())
        .collect();
    (0..=max_degree)
        .map(|q| chains.rank_of_chains(q) - ranks[q] - ranks[q + 1])
        .collect()
}

/// A linear map between homology spaces, as a matrix in their stored bases.
#[derive(Debug, Clone)]
pub struct LinearMap {
    source: Arc<HomologySpace>,
    target: Arc<HomologySpace>,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(
        source: Arc<HomologySpace>,
        target: Arc<HomologySpace>,
        matrix: Matrix,
    ) -> Result<Self> {
        if matrix.rows() != target.dim() {
            return Err(Error::DimensionMismatch {
                context: "linear map rows",
                expected: target.dim(),
                found: matrix.rows(),
            });
        }
        if matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                context: "linear map columns",
                expected: source.dim(),
                found: matrix.cols(),
            });
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(space: Arc<HomologySpace>) -> Self {
        let matrix = Matrix::identity(space.dim(), space.field());
        Self {
            source: space.clone(),
            target: space,
            matrix,
        }
    }

    pub fn source(&self) -> &Arc<HomologySpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<HomologySpace> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

fn same_space(a: &Arc<HomologySpace>, b: &Arc<HomologySpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Map induced on homology by the inclusion of the complex of `source` into
/// the complex of `target`. Both spaces must come from complexes over one
/// vertex namespace.
pub fn induced_map(source: &Arc<HomologySpace>, target: &Arc<HomologySpace>) -> Result<LinearMap> {
    if source.degree() != target.degree() {
        return Err(Error::DimensionMismatch {
            context: "induced map degree",
            expected: source.degree(),
            found: target.degree(),
        });
    }
    let field = source.field();
    let columns = source
        .basis()
        .iter()
        .map(|z| {
            let mut missing = None;
            let moved = z.reindex(
                |i| {
                    let s = &source.cells()[i];
                    let found = target.cells().binary_search(s).ok();
                    if found.is_none() {
                        missing = Some(s.clone());
                    }
                    found
                },
                field,
            );
            match moved {
                Some(v) => target.express(&v),
                None => Err(Error::NotASubcomplex {
                    simplex: missing.map(|s| s.to_string()).unwrap_or_default(),
                }),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    LinearMap::new(
        source.clone(),
        target.clone(),
        Matrix::from_columns(target.dim(), columns, field),
    )
}

/// Convenience form of [`induced_map`] computing both homology spaces.
pub fn induced_map_of_inclusion(
    sub: &SimplicialComplex,
    sup: &SimplicialComplex,
    q: usize,
    field: Field,
) -> Result<LinearMap> {
    if let Some(s) = sub.first_missing_from(sup) {
        return Err(Error::NotASubcomplex {
            simplex: s.to_string(),
        });
    }
    induced_map(&homology(sub, q, field), &homology(sup, q, field))
}

/// Inverse of an isomorphism, with source and target swapped.
pub fn invert(m: &LinearMap) -> Result<LinearMap> {
    let inv = m.matrix.inverse().map_err(|e| match e {
        Error::NotInvertible {
            rows, cols, rank, ..
        } => Error::NotInvertible {
            context: format!("H_{} map", m.source.degree()),
            rows,
            cols,
            rank,
        },
        other => other,
    })?;
    LinearMap::new(m.target.clone(), m.source.clone(), inv)
}

/// `g ∘ f`.
pub fn compose(g: &LinearMap, f: &LinearMap) -> Result<LinearMap> {
    if !same_space(&f.target, &g.source) {
        return Err(Error::DimensionMismatch {
            context: "composition of maps between different spaces",
            expected: g.source.dim(),
            found: f.target.dim(),
        });
    }
    LinearMap::new(f.source.clone(), g.target.clone(), g.matrix.mul(&f.matrix)?)
}
