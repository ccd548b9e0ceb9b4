//! Filtrations of simplicial complexes and their mapping telescopes.

use std::collections::BTreeMap;

use crate::complex::{Level, Rational, Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

/// Nested complexes `X_0 ⊆ X_1 ⊆ … ⊆ X_n` over a shared vertex namespace,
/// indexed by strictly increasing levels.
#[derive(Debug, Clone)]
pub struct Filtration {
    stages: Vec<SimplicialComplex>,
    indices: Vec<Level>,
}

impl Filtration {
    pub fn new(stages: Vec<SimplicialComplex>, indices: Vec<Level>) -> Result<Self> {
        if stages.len() != indices.len() {
            return Err(Error::DimensionMismatch {
                context: "filtration indices",
                expected: stages.len(),
                found: indices.len(),
            });
        }
        if let Some(position) = indices.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NonMonotoneIndices {
                position: position + 1,
            });
        }
        for (k, w) in stages.windows(2).enumerate() {
            if let Some(s) = w[0].first_missing_from(&w[1]) {
                return Err(Error::NotAFiltration {
                    stage: k + 1,
                    simplex: s.to_string(),
                });
            }
        }
        Ok(Self { stages, indices })
    }

    /// Stages indexed `0, 1, …, n`.
    pub fn with_integer_indices(stages: Vec<SimplicialComplex>) -> Result<Self> {
        let indices = (0..stages.len())
            .map(|k| Rational::from_integer((k as i64).into()))
            .collect();
        Self::new(stages, indices)
    }

    pub fn stages(&self) -> &[SimplicialComplex] {
        &self.stages
    }

    pub fn indices(&self) -> &[Level] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn last(&self) -> Option<&SimplicialComplex> {
        self.stages.last()
    }
}

/// Triangulated mapping telescope with its height function.
///
/// Copy `k` of a vertex `v ∈ X_k` sits at height `i_k`. Each prism
/// `X_k × [i_k, i_{k+1}]` uses the staircase triangulation in the vertex
/// order of the filtration, with its top glued onto copy `k + 1` through the
/// inclusion. Identifiers are assigned copy by copy in increasing vertex
/// order, so the level set at `i_k` is `X_k` up to an order-preserving
/// relabeling.
pub fn telescope(filtration: &Filtration) -> SimplicialComplex {
    let stages = filtration.stages();
    let mut ids: Vec<BTreeMap<VertexId, VertexId>> = Vec::with_capacity(stages.len());
    let mut heights = BTreeMap::new();
    let mut next = 0u32;
    for (stage, level) in stages.iter().zip(filtration.indices()) {
        let mut map = BTreeMap::new();
        for v in stage.vertices() {
            let id = VertexId(next);
            next += 1;
            map.insert(v, id);
            heights.insert(id, level.clone());
        }
        ids.push(map);
    }

    let mut simplices: Vec<Simplex> = Vec::new();
    for k in 0..stages.len() {
        if k + 1 == stages.len() {
            simplices.extend(
                stages[k]
                    .maximal_simplices()
                    .iter()
                    .map(|s| Simplex::new(s.vertices().iter().map(|v| ids[k][v]).collect())),
            );
            continue;
        }
        for s in stages[k].maximal_simplices() {
            let vs = s.vertices();
            for j in 0..vs.len() {
                let bottom = vs[..=j].iter().map(|v| ids[k][v]);
                let top = vs[j..].iter().map(|v| ids[k + 1][v]);
                simplices.push(Simplex::new(bottom.chain(top).collect()));
            }
        }
    }
    SimplicialComplex::from_simplices(heights, simplices).expect("all copies carry heights")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratio;

    fn flat(simplices: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::with_constant_height(
            ratio(0, 1),
            simplices.iter().map(|s| Simplex::from_ids(s)),
        )
    }

    #[test]
    fn rejects_non_nested_stages() {
        let err = Filtration::with_integer_indices(vec![flat(&[&[0, 1]]), flat(&[&[0], &[1]])]);
        assert!(matches!(err, Err(Error::NotAFiltration { stage: 1, .. })));
        let err = Filtration::new(
            vec![flat(&[&[0]]), flat(&[&[0]])],
            vec![ratio(1, 1), ratio(1, 1)],
        );
        assert!(matches!(
            err,
            Err(Error::NonMonotoneIndices { position: 1 })
        ));
    }

    #[test]
    fn single_stage_is_the_space_itself() {
        let x = flat(&[&[0, 1, 2]]);
        let f = Filtration::new(vec![x.clone()], vec![ratio(3, 2)]).unwrap();
        let t = telescope(&f);
        assert_eq!(t.num_simplices(), x.num_simplices());
        assert!(t.heights().values().all(|h| *h == ratio(3, 2)));
    }

    #[test]
    fn prism_over_an_edge() {
        let x = flat(&[&[0, 1]]);
        let f = Filtration::with_integer_indices(vec![x.clone(), x]).unwrap();
        let t = telescope(&f);
        // staircase: two triangles sharing a diagonal
        assert_eq!(t.simplices(2).len(), 2);
        assert_eq!(t.simplices(1).len(), 5);
        assert_eq!(t.num_vertices(), 4);
        assert_eq!(t.euler_characteristic(), 1);
    }
}
