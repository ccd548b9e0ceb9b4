//! Persistence of a filtration computed directly from the inclusions, and
//! through the levelset data of its mapping telescope.

use serde::Serialize;

use crate::complex::{Level, SimplicialComplex};
use crate::cut::{cut_at_levels, midpoint, CutComplex};
use crate::error::Result;
use crate::field::{format_rational, Field};
use crate::filtration::{telescope, Filtration};
use crate::homology::{homology, induced_map, invert};
use crate::linalg::Matrix;
use crate::reeb::{face_map_with, End, SectModel};
use crate::zigzag::{barcode, fiber_slab_zigzag, to_persistence, BarRecord, Barcode, ZigzagModule};

/// `H_q X_{i_0} → H_q X_{i_1} → …`
#[derive(Debug, Clone)]
pub struct PersistenceModule {
    pub degree: usize,
    pub field: Field,
    pub indices: Vec<Level>,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl PersistenceModule {
    pub fn to_zigzag(&self) -> Result<ZigzagModule> {
        ZigzagModule::forward(
            self.degree,
            self.field,
            self.dims.clone(),
            self.maps.clone(),
        )
    }

    pub fn barcode(&self) -> Result<Barcode> {
        Ok(barcode(&self.to_zigzag()?))
    }
}

pub fn persistence_direct(f: &Filtration, q: usize, field: Field) -> Result<PersistenceModule> {
    let spaces: Vec<_> = f.stages().iter().map(|x| homology(x, q, field)).collect();
    let maps = spaces
        .windows(2)
        .map(|w| Ok(induced_map(&w[0], &w[1])?.matrix().clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(PersistenceModule {
        degree: q,
        field,
        indices: f.indices().to_vec(),
        dims: spaces.iter().map(|s| s.dim()).collect(),
        maps,
    })
}

/// The telescope cut at every index and every midpoint between indices.
pub fn cut_telescope(f: &Filtration) -> CutComplex {
    let t = telescope(f);
    let mut levels = f.indices().to_vec();
    levels.extend(f.indices().windows(2).map(|w| midpoint(&w[0], &w[1])));
    cut_at_levels(&t, &levels)
}

/// Fiber/slab zigzag of the telescope with the slab arrows out of the
/// upper fibers inverted and composed with the ones out of the lower fibers.
pub fn persistence_via_telescope(
    f: &Filtration,
    q: usize,
    field: Field,
) -> Result<PersistenceModule> {
    let c = cut_telescope(f);
    let z = fiber_slab_zigzag(&c, f.indices(), q, field)?;
    let p = to_persistence(&z)?;
    Ok(PersistenceModule {
        degree: q,
        field,
        indices: f.indices().to_vec(),
        dims: p.dims,
        maps: p.maps,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderSquare {
    pub from_index: String,
    pub to_index: String,
    /// Evaluation at the bottom of the sections over the prism is invertible.
    pub bottom_face_invertible: bool,
    /// The upper fiber's inclusion into the prism slab is invertible.
    pub slab_arrow_invertible: bool,
    /// Inclusion-induced map of the filtration.
    pub direct: Vec<Vec<String>>,
    /// `d_0 ∘ d_1⁻¹`, when `d_1` is invertible.
    pub via_sections: Option<Vec<Vec<String>>>,
    pub commutes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderReport {
    pub degree: usize,
    pub fibers_match_stages: bool,
    pub squares: Vec<LadderSquare>,
    pub direct_barcode: Vec<BarRecord>,
    pub telescope_barcode: Option<Vec<BarRecord>>,
    pub telescope_error: Option<String>,
    pub faces_invertible: bool,
    pub squares_commute: bool,
    pub barcodes_equal: bool,
    pub passed: bool,
}

fn strip_heights(k: &SimplicialComplex) -> Vec<Vec<u32>> {
    k.all_simplices()
        .map(|s| s.vertices().iter().map(|v| v.0).collect())
        .collect()
}

/// Checks, at the level of homology, that the telescope recovers the
/// persistence module of `f`: bottom evaluations are invertible, every
/// ladder square commutes on the nose, and the two barcodes agree.
pub fn verify_ladder(f: &Filtration, q: usize, field: Field) -> Result<LadderReport> {
    let c = cut_telescope(f);
    let direct = persistence_direct(f, q, field)?;
    let indices = f.indices();

    // Fibers are order-preserving relabelings of the stages, so comparing
    // them after renumbering in order checks that their bases agree.
    let mut fibers_match_stages = true;
    let mut fibers = Vec::with_capacity(indices.len());
    for (x, t) in f.stages().iter().zip(indices) {
        let fiber = c.fiber(t)?;
        let order: std::collections::BTreeMap<_, _> = fiber.vertices().zip(x.vertices()).collect();
        let renamed = fiber.relabeled(|v| order[&v]);
        fibers_match_stages &= strip_heights(&renamed) == strip_heights(x);
        fibers.push(homology(&fiber, q, field));
    }

    let mut squares = Vec::with_capacity(indices.len().saturating_sub(1));
    for k in 0..indices.len().saturating_sub(1) {
        let (a, b) = (&indices[k], &indices[k + 1]);
        let sect = SectModel::over(&c, a, b, q, field)?;
        let d1 = face_map_with(&c, &sect, End::Bottom, &fibers[k]);
        let d0 = face_map_with(&c, &sect, End::Top, &fibers[k + 1])?;
        let slab = homology(&c.interlevel(a, b)?, q, field);
        let slab_arrow_invertible = invert(&induced_map(&fibers[k + 1], &slab)?).is_ok();
        let via = match &d1 {
            Ok(d1) => Some(d0.matrix().mul(invert(d1)?.matrix())?),
            Err(_) => None,
        };
        let commutes = via.as_ref() == Some(&direct.maps[k]);
        squares.push(LadderSquare {
            from_index: format_rational(a),
            to_index: format_rational(b),
            bottom_face_invertible: d1.is_ok(),
            slab_arrow_invertible,
            direct: direct.maps[k].to_string_rows(),
            via_sections: via.map(|m| m.to_string_rows()),
            commutes,
        });
    }

    let direct_barcode = direct.barcode()?;
    let (telescope_barcode, telescope_error) = match persistence_via_telescope(f, q, field) {
        Ok(p) => (Some(p.barcode()?), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let faces_invertible = squares
        .iter()
        .all(|s| s.bottom_face_invertible && s.slab_arrow_invertible);
    let squares_commute = fibers_match_stages && squares.iter().all(|s| s.commutes);
    let barcodes_equal = telescope_barcode.as_ref() == Some(&direct_barcode);
    Ok(LadderReport {
        degree: q,
        fibers_match_stages,
        squares,
        direct_barcode: direct_barcode.records(),
        telescope_barcode: telescope_barcode.map(|b| b.records()),
        telescope_error,
        faces_invertible,
        squares_commute,
        barcodes_equal,
        passed: faces_invertible && squares_commute && barcodes_equal,
    })
}
