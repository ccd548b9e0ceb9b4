//! JSON input formats.
//!
//! A complex:
//!
//! ```json
//! {"vertices": [{"id": 0, "height": "1/2"}, {"id": 1, "height": 2}],
//!  "simplices": [[0, 1]]}
//! ```
//!
//! Heights are integers or strings holding an integer, a fraction `p/q` or
//! a decimal. JSON floats are rejected so every height is exact. Simplices
//! are closed under faces on load.
//!
//! A filtration lists its stages with strictly increasing indices; each
//! stage gives its simplices and inherits those of earlier stages:
//!
//! ```json
//! {"stages": [{"index": 0, "simplices": [[0]]},
//!             {"index": "1/2", "simplices": [[0, 1]]}]}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complex::{Rational, Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, ratio};
use crate::filtration::Filtration;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    id: u32,
    height: Value,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    vertices: Vec<RawVertex>,
    #[serde(default)]
    simplices: Vec<Vec<u32>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStage {
    index: Value,
    #[serde(default)]
    simplices: Vec<Vec<u32>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFiltration {
    stages: Vec<RawStage>,
}

/// An exact rational from a JSON integer or string.
pub fn rational_from_json(v: &Value, what: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|_| Error::Parse(format!("{what}: not an exact rational: {s:?}"))),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(ratio(i, 1)),
            None => Err(Error::Parse(format!(
                "{what}: {n} is not an integer; write fractional values as strings such as \"1/2\" or \"0.5\""
            ))),
        },
        other => Err(Error::Parse(format!("{what}: expected a number or string, found {other}"))),
    }
}

fn simplex(ids: &[u32], what: &str) -> Result<Simplex> {
    if ids.is_empty() {
        return Err(Error::Parse(format!("{what}: empty simplex")));
    }
    let s = Simplex::from_ids(ids);
    if s.vertices().len() != ids.len() {
        return Err(Error::Parse(format!("{what}: repeated vertex in {ids:?}")));
    }
    Ok(s)
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let raw: RawComplex = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut heights = BTreeMap::new();
    for v in &raw.vertices {
        let h = rational_from_json(&v.height, &format!("height of vertex {}", v.id))?;
        if heights.insert(VertexId(v.id), h).is_some() {
            return Err(Error::Parse(format!("vertex {} listed twice", v.id)));
        }
    }
    let simplices = raw
        .simplices
        .iter()
        .enumerate()
        .map(|(i, s)| simplex(s, &format!("simplex {i}")))
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::from_simplices(heights, simplices)
}

pub fn parse_filtration(text: &str) -> Result<Filtration> {
    let raw: RawFiltration = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.stages.is_empty() {
        return Err(Error::Parse("a filtration needs at least one stage".into()));
    }
    let mut indices = Vec::with_capacity(raw.stages.len());
    let mut stages = Vec::with_capacity(raw.stages.len());
    let mut acc: Vec<Simplex> = Vec::new();
    for (k, st) in raw.stages.iter().enumerate() {
        indices.push(rational_from_json(
            &st.index,
            &format!("index of stage {k}"),
        )?);
        for (i, s) in st.simplices.iter().enumerate() {
            acc.push(simplex(s, &format!("stage {k}, simplex {i}"))?);
        }
        stages.push(SimplicialComplex::with_constant_height(
            ratio(0, 1),
            acc.clone(),
        ));
    }
    Filtration::new(stages, indices)
}

/// True when the document has the shape of a filtration.
pub fn looks_like_filtration(text: &str) -> bool {
    serde_json::from_str::<Value>(text)
        .map(|v| v.get("stages").is_some())
        .unwrap_or(false)
}

#[derive(Debug, Serialize)]
struct OutVertex {
    id: u32,
    height: String,
}

#[derive(Debug, Serialize)]
struct OutComplex {
    vertices: Vec<OutVertex>,
    simplices: Vec<Vec<u32>>,
}

/// The input format for `k`, listing maximal simplices only.
pub fn complex_to_json(k: &SimplicialComplex) -> String {
    let out = OutComplex {
        vertices: k
            .heights()
            .iter()
            .map(|(v, h)| OutVertex {
                id: v.0,
                height: format_rational(h),
            })
            .collect(),
        simplices: k
            .maximal_simplices()
            .iter()
            .map(|s| s.vertices().iter().map(|v| v.0).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&out).expect("plain data serializes")
}

#[derive(Debug, Serialize)]
struct OutStage {
    index: String,
    simplices: Vec<Vec<u32>>,
}

#[derive(Debug, Serialize)]
struct OutFiltration {
    stages: Vec<OutStage>,
}

/// The input format for `f`; each stage lists the simplices it adds.
pub fn filtration_to_json(f: &Filtration) -> String {
    let mut seen: Option<&SimplicialComplex> = None;
    let mut stages = Vec::new();
    for (x, t) in f.stages().iter().zip(f.indices()) {
        let simplices = x
            .all_simplices()
            .filter(|s| seen.is_none_or(|prev| !prev.contains(s)))
            .map(|s| s.vertices().iter().map(|v| v.0).collect())
            .collect();
        stages.push(OutStage {
            index: format_rational(t),
            simplices,
        });
        seen = Some(x);
    }
    serde_json::to_string_pretty(&OutFiltration { stages }).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn parses_heights_exactly() {
        let k = parse_complex(
            r#"{"vertices":[{"id":0,"height":"1/3"},{"id":1,"height":"0.25"},{"id":2,"height":-2}],
                "simplices":[[0,1,2]]}"#,
        )
        .unwrap();
        assert_eq!(k.height(VertexId(0)), Some(&ratio(1, 3)));
        assert_eq!(k.height(VertexId(1)), Some(&ratio(1, 4)));
        assert_eq!(k.height(VertexId(2)), Some(&ratio(-2, 1)));
        assert_eq!(k.num_simplices(), 7);
    }

    #[test]
    fn rejects_bad_input() {
        let float = r#"{"vertices":[{"id":0,"height":0.5}],"simplices":[]}"#;
        assert!(matches!(parse_complex(float), Err(Error::Parse(_))));
        let unknown = r#"{"vertices":[{"id":0,"height":0}],"simplices":[[0,1]]}"#;
        assert!(matches!(
            parse_complex(unknown),
            Err(Error::UnknownVertex { .. })
        ));
        let twice = r#"{"vertices":[{"id":0,"height":0},{"id":0,"height":1}]}"#;
        assert!(parse_complex(twice).is_err());
        let repeated = r#"{"vertices":[{"id":0,"height":0}],"simplices":[[0,0]]}"#;
        assert!(parse_complex(repeated).is_err());
        assert!(parse_complex("not json").is_err());
    }

    #[test]
    fn round_trips() {
        for (_, k) in corpus::named() {
            assert_eq!(parse_complex(&complex_to_json(&k)).unwrap(), k);
        }
        for (_, f) in corpus::named_filtrations() {
            let g = parse_filtration(&filtration_to_json(&f)).unwrap();
            assert_eq!(g.indices(), f.indices());
            assert_eq!(g.stages(), f.stages());
        }
    }

    #[test]
    fn filtration_errors() {
        let unsorted = r#"{"stages":[{"index":1,"simplices":[[0]]},{"index":0,"simplices":[]}]}"#;
        assert!(matches!(
            parse_filtration(unsorted),
            Err(Error::NonMonotoneIndices { position: 1 })
        ));
        assert!(looks_like_filtration(unsorted));
        assert!(!looks_like_filtration(r#"{"vertices":[]}"#));
    }
}
