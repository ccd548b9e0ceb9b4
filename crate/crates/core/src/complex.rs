//! Finite abstract simplicial complexes carrying exact vertex heights.
//!
//! The heights define a piecewise-linear function on the geometric
//! realization, affine on every simplex.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A height value; all levels are exact.
pub type Level = Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A nonempty set of vertices, stored sorted by identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        assert!(!vertices.is_empty(), "simplices are nonempty");
        Simplex(vertices)
    }

    pub fn from_ids(ids: &[u32]) -> Self {
        Self::new(ids.iter().map(|&i| VertexId(i)).collect())
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Codimension-one faces; the `i`-th omits the `i`-th vertex.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1u64 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    /// Replaces vertex `old` by `new`, keeping the vertex list sorted.
    pub fn replace(&self, old: VertexId, new: VertexId) -> Simplex {
        Simplex::new(
            self.0
                .iter()
                .map(|&v| if v == old { new } else { v })
                .collect(),
        )
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Face-closed set of simplices with a height for every vertex.
///
/// Simplices of each dimension are kept in lexicographic order; that order
/// is the chain basis used by homology, so it must not depend on how the
/// complex was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    heights: BTreeMap<VertexId, Rational>,
    by_dim: Vec<Arc<Vec<Simplex>>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self {
            heights: BTreeMap::new(),
            by_dim: Vec::new(),
        }
    }

    /// Builds the face closure of `simplices`. Every vertex with a height is
    /// part of the complex, even if it lies in no listed simplex.
    pub fn from_simplices<I>(heights: BTreeMap<VertexId, Rational>, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut all: HashSet<Simplex> = heights.keys().map(|&v| Simplex::vertex(v)).collect();
        for s in simplices {
            if let Some(v) = s.vertices().iter().find(|v| !heights.contains_key(v)) {
                return Err(Error::UnknownVertex {
                    simplex: s.to_string(),
                    vertex: v.to_string(),
                });
            }
            if all.contains(&s) {
                continue;
            }
            all.extend(s.faces());
        }
        Ok(Self::from_closed_set(heights, all))
    }

    /// Assembles a complex from a set already known to be face-closed and to
    /// use only vertices with heights.
    pub(crate) fn from_closed_set(
        heights: BTreeMap<VertexId, Rational>,
        simplices: impl IntoIterator<Item = Simplex>,
    ) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for s in simplices {
            let d = s.dim();
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push(s);
        }
        for layer in &mut by_dim {
            layer.sort_unstable();
            layer.dedup();
        }
        Self {
            heights,
            by_dim: by_dim.into_iter().map(Arc::new).collect(),
        }
    }

    /// Builds a complex with every vertex at the same height.
    pub fn with_constant_height<I>(height: Rational, simplices: I) -> Self
    where
        I: IntoIterator<Item = Simplex>,
    {
        let simplices: Vec<Simplex> = simplices.into_iter().collect();
        let heights = simplices
            .iter()
            .flat_map(|s| s.vertices().iter().copied())
            .map(|v| (v, height.clone()))
            .collect();
        Self::from_simplices(heights, simplices).expect("heights assigned to all vertices")
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.heights.keys().copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.heights.len()
    }

    pub fn heights(&self) -> &BTreeMap<VertexId, Rational> {
        &self.heights
    }

    pub fn height(&self, v: VertexId) -> Option<&Rational> {
        self.heights.get(&v)
    }

    /// Simplices of dimension `q` in lexicographic order.
    pub fn simplices(&self, q: usize) -> &[Simplex] {
        self.by_dim.get(q).map_or(&[], |v| v.as_slice())
    }

    pub(crate) fn shared_simplices(&self, q: usize) -> Arc<Vec<Simplex>> {
        self.by_dim
            .get(q)
            .cloned()
            .unwrap_or_else(|| Arc::new(Vec::new()))
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flat_map(|v| v.iter())
    }

    pub fn num_simplices(&self) -> usize {
        self.by_dim.iter().map(|v| v.len()).sum()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.simplices(s.dim()).binary_search(s).ok()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn next_vertex_id(&self) -> u32 {
        self.heights.keys().next_back().map_or(0, |v| v.0 + 1)
    }

    /// Checks face closure and that every vertex of a simplex has a height.
    pub fn is_face_closed(&self) -> bool {
        self.all_simplices().all(|s| {
            s.vertices().iter().all(|v| self.heights.contains_key(v))
                && s.boundary_faces().all(|f| self.contains(&f))
        }) && self
            .heights
            .keys()
            .all(|&v| self.contains(&Simplex::vertex(v)))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, v)| {
                if d % 2 == 0 {
                    v.len() as i64
                } else {
                    -(v.len() as i64)
                }
            })
            .sum()
    }

    /// Simplices not properly contained in any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for q in 0..self.by_dim.len() {
            let covered: HashSet<Simplex> = self
                .simplices(q + 1)
                .iter()
                .flat_map(|s| s.boundary_faces())
                .collect();
            out.extend(
                self.simplices(q)
                    .iter()
                    .filter(|s| !covered.contains(*s))
                    .cloned(),
            );
        }
        out
    }

    /// Full subcomplex spanned by the vertices satisfying `keep`.
    pub fn full_subcomplex<F>(&self, mut keep: F) -> SimplicialComplex
    where
        F: FnMut(VertexId, &Rational) -> bool,
    {
        let heights: BTreeMap<VertexId, Rational> = self
            .heights
            .iter()
            .filter(|(v, h)| keep(**v, h))
            .map(|(v, h)| (*v, h.clone()))
            .collect();
        let by_dim: Vec<Arc<Vec<Simplex>>> = self
            .by_dim
            .iter()
            .map(|layer| {
                Arc::new(
                    layer
                        .iter()
                        .filter(|s| s.vertices().iter().all(|v| heights.contains_key(v)))
                        .cloned()
                        .collect::<Vec<_>>(),
                )
            })
            .take_while(|layer| !layer.is_empty())
            .collect();
        SimplicialComplex { heights, by_dim }
    }

    /// Full subcomplex on vertices with height in the closed interval `[a, b]`.
    pub fn height_window(&self, a: &Rational, b: &Rational) -> SimplicialComplex {
        self.full_subcomplex(|_, h| a <= h && h <= b)
    }

    /// Intersection of two complexes over the same vertex namespace.
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let heights = self
            .heights
            .iter()
            .filter(|(v, _)| other.heights.contains_key(v))
            .map(|(v, h)| (*v, h.clone()))
            .collect();
        let simplices: Vec<Simplex> = self
            .all_simplices()
            .filter(|s| other.contains(s))
            .cloned()
            .collect();
        Self::from_closed_set(heights, simplices)
    }

    /// The first simplex of `self` missing from `other`, if any.
    pub fn first_missing_from(&self, other: &SimplicialComplex) -> Option<&Simplex> {
        self.all_simplices().find(|s| !other.contains(s))
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.first_missing_from(other).is_none()
    }

    /// Distinct vertex heights in increasing order.
    pub fn distinct_heights(&self) -> Vec<Rational> {
        self.heights
            .values()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn min_height(&self) -> Option<&Rational> {
        self.heights.values().min()
    }

    pub fn max_height(&self) -> Option<&Rational> {
        self.heights.values().max()
    }

    /// Edges whose endpoints lie strictly on opposite sides of `t`.
    pub fn crossing_edges<'a>(&'a self, t: &'a Rational) -> impl Iterator<Item = &'a Simplex> + 'a {
        self.simplices(1).iter().filter(move |e| {
            let a = &self.heights[&e.vertices()[0]];
            let b = &self.heights[&e.vertices()[1]];
            (a < t && t < b) || (b < t && t < a)
        })
    }

    /// True when no edge crosses `t` strictly, so the full subcomplex at
    /// height `t` models the level set.
    pub fn resolves(&self, t: &Rational) -> bool {
        self.crossing_edges(t).next().is_none()
    }

    /// Renames vertices through an injective map; heights travel along.
    pub fn relabeled<F>(&self, mut map: F) -> SimplicialComplex
    where
        F: FnMut(VertexId) -> VertexId,
    {
        let heights = self
            .heights
            .iter()
            .map(|(v, h)| (map(*v), h.clone()))
            .collect();
        let simplices: Vec<Simplex> = self
            .all_simplices()
            .map(|s| Simplex::new(s.vertices().iter().map(|v| map(*v)).collect()))
            .collect();
        Self::from_closed_set(heights, simplices)
    }

    /// Same simplices with every height replaced through `f`.
    pub fn with_heights<F>(&self, mut f: F) -> SimplicialComplex
    where
        F: FnMut(VertexId, &Rational) -> Rational,
    {
        SimplicialComplex {
            heights: self.heights.iter().map(|(v, h)| (*v, f(*v, h))).collect(),
            by_dim: self.by_dim.clone(),
        }
    }
}
