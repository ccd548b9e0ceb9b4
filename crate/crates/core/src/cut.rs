//! Subdivision of a complex along height levels, and extraction of level
//! sets and interlevel sets as full subcomplexes.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::complex::{Level, Rational, Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::field::ratio;

/// A subdivision of `origin` in which every cut level is a union of
/// simplices: no edge crosses a cut level in its interior.
#[derive(Debug, Clone)]
pub struct CutComplex {
    complex: SimplicialComplex,
    origin: Arc<SimplicialComplex>,
    cut_levels: Vec<Level>,
    provenance: BTreeMap<VertexId, (Simplex, Level)>,
}

impl CutComplex {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn origin(&self) -> &SimplicialComplex {
        &self.origin
    }

    pub fn cut_levels(&self) -> &[Level] {
        &self.cut_levels
    }

    /// For each vertex created by cutting: the edge (of the complex as it was
    /// when that level was cut) it subdivides, and the level.
    pub fn provenance(&self) -> &BTreeMap<VertexId, (Simplex, Level)> {
        &self.provenance
    }

    /// Candidate critical values: the distinct vertex heights of the origin.
    pub fn critical_levels(&self) -> Vec<Level> {
        self.origin.distinct_heights()
    }

    fn is_cut_level(&self, t: &Rational) -> bool {
        self.cut_levels.binary_search(t).is_ok()
    }

    fn is_vertex_height(&self, t: &Rational) -> bool {
        self.complex.heights().values().any(|h| h == t)
    }

    /// A level at which the full subcomplex models the level set.
    pub fn check_level(&self, t: &Rational) -> Result<()> {
        if (self.is_cut_level(t) || self.is_vertex_height(t)) && self.complex.resolves(t) {
            Ok(())
        } else {
            Err(Error::LevelNotCut { level: t.clone() })
        }
    }

    fn check_endpoint(&self, t: &Rational) -> Result<()> {
        let outside = match (self.complex.min_height(), self.complex.max_height()) {
            (Some(lo), Some(hi)) => t <= lo || t >= hi,
            _ => true,
        };
        if outside {
            Ok(())
        } else {
            self.check_level(t)
        }
    }

    /// Full subcomplex on vertices at height exactly `t`.
    pub fn fiber(&self, t: &Level) -> Result<SimplicialComplex> {
        self.check_level(t)?;
        Ok(self.complex.full_subcomplex(|_, h| h == t))
    }

    /// Full subcomplex on vertices with height in `[a, b]`. Endpoints outside
    /// the height range are accepted, so end slabs can be requested directly.
    pub fn interlevel(&self, a: &Level, b: &Level) -> Result<SimplicialComplex> {
        if a > b {
            return Err(Error::InvertedInterval {
                a: a.clone(),
                b: b.clone(),
            });
        }
        self.check_endpoint(a)?;
        self.check_endpoint(b)?;
        Ok(self.complex.height_window(a, b))
    }

    /// Cuts at every distinct vertex height, every midpoint between adjacent
    /// heights, and any `extra` levels. This is the resolution the Reeb,
    /// zigzag and cover constructions expect.
    pub fn for_critical_analysis(k: &SimplicialComplex, extra: &[Level]) -> CutComplex {
        let heights = k.distinct_heights();
        let mut levels: BTreeSet<Level> = heights.iter().cloned().collect();
        for w in heights.windows(2) {
            levels.insert(midpoint(&w[0], &w[1]));
        }
        levels.extend(extra.iter().cloned());
        cut_at_levels(k, &levels.into_iter().collect::<Vec<_>>())
    }
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) * ratio(1, 2)
}

/// Subdivides `k` so that no edge crosses any of `levels` strictly.
///
/// Levels are processed in increasing order. At each level every crossing
/// edge receives one new vertex, and the simplices containing that edge are
/// split by a stellar subdivision. Crossing edges are handled in
/// lexicographic order and new vertex identifiers are handed out in the same
/// order, so the result does not depend on how `k` was enumerated.
pub fn cut_at_levels(k: &SimplicialComplex, levels: &[Level]) -> CutComplex {
    let mut levels: Vec<Level> = levels.to_vec();
    levels.sort();
    levels.dedup();

    let mut heights = k.heights().clone();
    let mut facets: Vec<Simplex> = k.maximal_simplices();
    let mut provenance = BTreeMap::new();
    let mut next_id = k.next_vertex_id();

    for t in &levels {
        let crosses = |u: &VertexId, w: &VertexId| {
            let (hu, hw) = (&heights[u], &heights[w]);
            (hu < t && t < hw) || (hw < t && t < hu)
        };
        let mut crossing: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        for f in &facets {
            let vs = f.vertices();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    if crosses(&vs[i], &vs[j]) {
                        crossing.insert((vs[i], vs[j]));
                    }
                }
            }
        }
        if crossing.is_empty() {
            continue;
        }
        let mut new_vertex: BTreeMap<(VertexId, VertexId), VertexId> = BTreeMap::new();
        for &(u, w) in &crossing {
            let m = VertexId(next_id);
            next_id += 1;
            new_vertex.insert((u, w), m);
            provenance.insert(m, (Simplex::new(vec![u, w]), t.clone()));
        }
        for &m in new_vertex.values() {
            heights.insert(m, t.clone());
        }

        let mut next_facets = Vec::with_capacity(facets.len() * 2);
        for f in facets {
            let mut pieces = vec![f];
            let vs = pieces[0].vertices().to_vec();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    let Some(&m) = new_vertex.get(&(vs[i], vs[j])) else {
                        continue;
                    };
                    pieces = pieces
                        .into_iter()
                        .flat_map(|p| {
                            if p.contains(vs[i]) && p.contains(vs[j]) {
                                vec![p.replace(vs[i], m), p.replace(vs[j], m)]
                            } else {
                                vec![p]
                            }
                        })
                        .collect();
                }
            }
            next_facets.extend(pieces);
        }
        facets = next_facets;
    }

    let complex = if provenance.is_empty() {
        k.clone()
    } else {
        SimplicialComplex::from_simplices(heights, facets)
            .expect("cut vertices always receive heights")
    };
    CutComplex {
        complex,
        origin: Arc::new(k.clone()),
        cut_levels: levels,
        provenance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimplicialComplex {
        let heights = [(0, 0), (1, 1), (2, 2)]
            .iter()
            .map(|&(v, h)| (VertexId(v), ratio(h, 1)))
            .collect();
        SimplicialComplex::from_simplices(heights, [Simplex::from_ids(&[0, 1, 2])]).unwrap()
    }

    #[test]
    fn empty_level_list_is_identity() {
        let k = triangle();
        let c = cut_at_levels(&k, &[]);
        assert_eq!(c.complex(), &k);
        assert!(c.provenance().is_empty());
    }

    #[test]
    fn triangle_cut_below_middle_vertex() {
        let c = cut_at_levels(&triangle(), &[ratio(1, 2)]);
        let k = c.complex();
        assert_eq!(k.num_vertices(), 5);
        assert!(k.is_face_closed());
        let fiber = c.fiber(&ratio(1, 2)).unwrap();
        assert_eq!(fiber.simplices(0).len(), 2);
        assert_eq!(fiber.simplices(1).len(), 1);
        assert!(fiber.simplices(2).is_empty());
        // provenance follows the lexicographic edge order
        let prov: Vec<_> = c.provenance().values().map(|(e, _)| e.clone()).collect();
        assert_eq!(
            prov,
            vec![Simplex::from_ids(&[0, 1]), Simplex::from_ids(&[0, 2])]
        );
    }

    #[test]
    fn every_simplex_lies_on_one_side() {
        let c = cut_at_levels(&triangle(), &[ratio(1, 2), ratio(3, 2)]);
        let k = c.complex();
        for t in c.cut_levels() {
            for s in k.all_simplices() {
                let hs: Vec<_> = s.vertices().iter().map(|v| k.height(*v).unwrap()).collect();
                assert!(hs.iter().all(|h| *h <= t) || hs.iter().all(|h| *h >= t));
            }
        }
    }

    #[test]
    fn level_checks() {
        let c = cut_at_levels(&triangle(), &[ratio(1, 2)]);
        assert!(c.fiber(&ratio(1, 1)).is_err(), "edge 0-2 crosses 1");
        assert!(matches!(
            c.fiber(&ratio(1, 3)),
            Err(Error::LevelNotCut { .. })
        ));
        assert!(matches!(
            c.interlevel(&ratio(1, 1), &ratio(0, 1)),
            Err(Error::InvertedInterval { .. })
        ));
        let whole = c.interlevel(&ratio(-5, 1), &ratio(5, 1)).unwrap();
        assert_eq!(&whole, c.complex());
        let same = c.interlevel(&ratio(1, 2), &ratio(1, 2)).unwrap();
        assert_eq!(same, c.fiber(&ratio(1, 2)).unwrap());
    }

    #[test]
    fn edge_fiber_is_a_point() {
        let heights = [(0, 0), (1, 1)]
            .iter()
            .map(|&(v, h)| (VertexId(v), ratio(h, 1)))
            .collect();
        let k = SimplicialComplex::from_simplices(heights, [Simplex::from_ids(&[0, 1])]).unwrap();
        let c = cut_at_levels(&k, &[ratio(1, 2)]);
        let f = c.fiber(&ratio(1, 2)).unwrap();
        assert_eq!(f.num_simplices(), 1);
    }
}
