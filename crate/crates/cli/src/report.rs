//! Report documents for each subcommand.

use serde::Serialize;

use reebkit::cech::{build_cover, first_page, nerve_row, second_page_two_column, NerveReport};
use reebkit::cut::{cut_at_levels, CutComplex};
use reebkit::field::format_rational;
use reebkit::filtration::Filtration;
use reebkit::homology::betti_numbers;
use reebkit::persistence::{persistence_direct, verify_ladder as ladder, LadderReport};
use reebkit::reeb::{homology_of_base, truncated_reeb, verify_all_diamonds, DiamondReport};
use reebkit::zigzag::{barcode, levelset_zigzag, BarRecord, Direction, IntervalCover};
use reebkit::{Field, Level, Matrix, Result, SimplicialComplex};

pub struct Outcome {
    pub json: String,
    pub passed: bool,
}

fn emit<T: Serialize>(doc: &T, passed: bool) -> Result<Outcome> {
    Ok(Outcome {
        json: serde_json::to_string_pretty(doc).expect("reports serialize"),
        passed,
    })
}

fn levels(ls: &[Level]) -> Vec<String> {
    ls.iter().map(format_rational).collect()
}

fn ranks(ms: &[Matrix]) -> Vec<usize> {
    ms.iter().map(|m| m.rank()).collect()
}

#[derive(Serialize)]
struct Header {
    command: &'static str,
    field: String,
    max_degree: usize,
}

fn header(command: &'static str, field: Field, max_degree: usize) -> Header {
    Header {
        command,
        field: field.to_string(),
        max_degree,
    }
}

#[derive(Serialize)]
struct FiberHomology {
    level: String,
    betti: Vec<usize>,
}

#[derive(Serialize)]
struct HomologyReport {
    #[serde(flatten)]
    header: Header,
    vertices: usize,
    simplices: usize,
    euler_characteristic: i64,
    betti: Vec<usize>,
    fibers: Vec<FiberHomology>,
}

pub fn homology(k: &SimplicialComplex, q: usize, field: Field, at: &[Level]) -> Result<Outcome> {
    let c = cut_at_levels(k, at);
    let fibers = at
        .iter()
        .map(|t| {
            Ok(FiberHomology {
                level: format_rational(t),
                betti: betti_numbers(&c.fiber(t)?, q, field),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    emit(
        &HomologyReport {
            header: header("homology", field, q),
            vertices: k.num_vertices(),
            simplices: k.num_simplices(),
            euler_characteristic: k.euler_characteristic(),
            betti: betti_numbers(k, q, field),
            fibers,
        },
        true,
    )
}

#[derive(Serialize)]
struct ReebDegree {
    degree: usize,
    fiber_dims: Vec<usize>,
    sect_dims: Vec<usize>,
    face_bottom: Vec<Vec<Vec<String>>>,
    face_top: Vec<Vec<Vec<String>>>,
    differential_shape: (usize, usize),
    differential: Vec<Vec<String>>,
    rank: usize,
    cokernel: usize,
    kernel: usize,
}

#[derive(Serialize)]
struct ReebReport {
    #[serde(flatten)]
    header: Header,
    critical_levels: Vec<String>,
    degrees: Vec<ReebDegree>,
    recovered_betti: Vec<usize>,
    direct_betti: Vec<usize>,
    recovery_matches: bool,
    diamonds: Vec<DiamondReport>,
    passed: bool,
}

pub fn reeb(k: &SimplicialComplex, q: usize, field: Field) -> Result<Outcome> {
    let c = CutComplex::for_critical_analysis(k, &[]);
    let ts = (0..=q)
        .map(|d| truncated_reeb(&c, d, field))
        .collect::<Result<Vec<_>>>()?;
    let recovered = homology_of_base(&ts);
    let direct = betti_numbers(k, q, field);
    let diamonds = verify_all_diamonds(&c, q, field)?;
    let recovery_matches = recovered == direct;
    let passed = recovery_matches && diamonds.iter().all(|d| d.passed);
    let degrees = ts
        .iter()
        .map(|t| ReebDegree {
            degree: t.degree,
            fiber_dims: t.fiber_dims(),
            sect_dims: t.sect_dims(),
            face_bottom: t
                .face_bottom
                .iter()
                .map(|m| m.matrix().to_string_rows())
                .collect(),
            face_top: t
                .face_top
                .iter()
                .map(|m| m.matrix().to_string_rows())
                .collect(),
            differential_shape: (t.differential.rows(), t.differential.cols()),
            differential: t.differential.to_string_rows(),
            rank: t.rank(),
            cokernel: t.cokernel_dim(),
            kernel: t.kernel_dim(),
        })
        .collect();
    emit(
        &ReebReport {
            header: header("reeb", field, q),
            critical_levels: levels(&c.critical_levels()),
            degrees,
            recovered_betti: recovered,
            direct_betti: direct,
            recovery_matches,
            diamonds,
            passed,
        },
        passed,
    )
}

#[derive(Serialize)]
struct ArrowReport {
    direction: Direction,
    rank: usize,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ZigzagDegree {
    degree: usize,
    spaces: Vec<String>,
    dims: Vec<usize>,
    arrows: Vec<ArrowReport>,
    barcode: Vec<BarRecord>,
    interior_dims: Vec<usize>,
    interior_ranks: Vec<usize>,
}

#[derive(Serialize)]
struct ZigzagReport {
    #[serde(flatten)]
    header: Header,
    critical_levels: Vec<String>,
    intervals: Vec<(String, String)>,
    degrees: Vec<ZigzagDegree>,
}

fn interval_strings(cover: Option<&IntervalCover>) -> Vec<(String, String)> {
    cover
        .map(|c| {
            c.intervals()
                .iter()
                .map(|(a, b)| (format_rational(a), format_rational(b)))
                .collect()
        })
        .unwrap_or_default()
}

pub fn zigzag(
    k: &SimplicialComplex,
    q: usize,
    field: Field,
    cover: Option<&IntervalCover>,
) -> Result<Outcome> {
    let c = CutComplex::for_critical_analysis(k, &[]);
    let critical = c.critical_levels();
    let cover = match (cover, critical.is_empty()) {
        (Some(cv), _) => Some(cv.clone()),
        (None, true) => None,
        (None, false) => Some(IntervalCover::around_levels(&critical)?),
    };
    let mut degrees = Vec::new();
    if let Some(cover) = &cover {
        for d in 0..=q {
            let z = levelset_zigzag(&c, cover, d, field)?;
            let interior = z.interior();
            degrees.push(ZigzagDegree {
                degree: d,
                spaces: z.kinds().iter().map(|s| s.to_string()).collect(),
                dims: z.dims().to_vec(),
                arrows: z
                    .arrows()
                    .iter()
                    .map(|a| ArrowReport {
                        direction: a.direction,
                        rank: a.matrix.rank(),
                        matrix: a.matrix.to_string_rows(),
                    })
                    .collect(),
                barcode: barcode(&z).records(),
                interior_dims: interior.dims().to_vec(),
                interior_ranks: interior.arrow_ranks(),
            });
        }
    }
    emit(
        &ZigzagReport {
            header: header("zigzag", field, q),
            critical_levels: levels(&critical),
            intervals: interval_strings(cover.as_ref()),
            degrees,
        },
        true,
    )
}

#[derive(Serialize)]
struct TelescopeDegree {
    degree: usize,
    dims: Vec<usize>,
    ranks: Vec<usize>,
    ladder: LadderReport,
}

#[derive(Serialize)]
struct TelescopeReport {
    #[serde(flatten)]
    header: Header,
    indices: Vec<String>,
    degrees: Vec<TelescopeDegree>,
    passed: bool,
}

fn telescope_degrees(f: &Filtration, q: usize, field: Field) -> Result<Vec<TelescopeDegree>> {
    (0..=q)
        .map(|d| {
            let direct = persistence_direct(f, d, field)?;
            Ok(TelescopeDegree {
                degree: d,
                ranks: ranks(&direct.maps),
                dims: direct.dims,
                ladder: ladder(f, d, field)?,
            })
        })
        .collect()
}

pub fn telescope(f: &Filtration, q: usize, field: Field) -> Result<Outcome> {
    let degrees = telescope_degrees(f, q, field)?;
    let passed = degrees.iter().all(|d| d.ladder.passed);
    emit(
        &TelescopeReport {
            header: header("telescope", field, q),
            indices: levels(f.indices()),
            degrees,
            passed,
        },
        passed,
    )
}

#[derive(Serialize)]
struct PageRowReport {
    degree: usize,
    piece_dims: Vec<usize>,
    overlap_dims: Vec<usize>,
    differential: Vec<Vec<String>>,
    rank: usize,
}

#[derive(Serialize)]
struct SpectralReport {
    #[serde(flatten)]
    header: Header,
    intervals: Vec<(String, String)>,
    pieces: usize,
    overlaps: Vec<(usize, usize)>,
    first_page: Vec<PageRowReport>,
    second_page_betti: Vec<usize>,
    direct_betti: Vec<usize>,
    collapse_matches: bool,
    nerve: NerveReport,
}

fn spectral_data(
    k: &SimplicialComplex,
    q: usize,
    field: Field,
    cover: Option<&IntervalCover>,
) -> Result<SpectralReport> {
    let critical = k.distinct_heights();
    let cover = match cover {
        Some(c) => c.clone(),
        None if critical.is_empty() => IntervalCover::new(vec![(
            reebkit::field::ratio(-1, 1),
            reebkit::field::ratio(1, 1),
        )])?,
        None => IntervalCover::around_levels(&critical)?,
    };
    let c = CutComplex::for_critical_analysis(k, &cover.endpoints());
    let pc = build_cover(&c, &cover)?;
    let fp = first_page(&pc, q, field)?;
    let second = second_page_two_column(&fp);
    let direct = betti_numbers(k, q, field);
    Ok(SpectralReport {
        header: header("spectral", field, q),
        intervals: interval_strings(Some(&cover)),
        pieces: pc.pieces.len(),
        overlaps: pc.overlaps.iter().map(|o| (o.left, o.right)).collect(),
        first_page: fp
            .rows
            .iter()
            .map(|r| PageRowReport {
                degree: r.degree,
                piece_dims: r.piece_dims(),
                overlap_dims: r.overlap_dims(),
                differential: r.differential.to_string_rows(),
                rank: r.differential.rank(),
            })
            .collect(),
        collapse_matches: second == direct,
        second_page_betti: second,
        direct_betti: direct,
        nerve: nerve_row(&pc, field),
    })
}

pub fn spectral(
    k: &SimplicialComplex,
    q: usize,
    field: Field,
    cover: Option<&IntervalCover>,
) -> Result<Outcome> {
    emit(&spectral_data(k, q, field, cover)?, true)
}

#[derive(Serialize)]
struct Recovery {
    recovered_betti: Vec<usize>,
    direct_betti: Vec<usize>,
    passed: bool,
}

#[derive(Serialize)]
struct Collapse {
    second_page_betti: Vec<usize>,
    direct_betti: Vec<usize>,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    #[serde(flatten)]
    header: Header,
    #[serde(skip_serializing_if = "Option::is_none")]
    diamonds: Option<Vec<DiamondReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    recovery: Option<Recovery>,
    #[serde(skip_serializing_if = "Option::is_none")]
    collapse: Option<Collapse>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ladders: Option<Vec<LadderReport>>,
    passed: bool,
}

pub fn verify_complex(k: &SimplicialComplex, q: usize, field: Field, all: bool) -> Result<Outcome> {
    let c = CutComplex::for_critical_analysis(k, &[]);
    let diamonds = verify_all_diamonds(&c, q, field)?;
    let mut passed = diamonds.iter().all(|d| d.passed);
    let (mut recovery, mut collapse) = (None, None);
    if all {
        let ts = (0..=q)
            .map(|d| truncated_reeb(&c, d, field))
            .collect::<Result<Vec<_>>>()?;
        let recovered = homology_of_base(&ts);
        let direct = betti_numbers(k, q, field);
        let r = Recovery {
            passed: recovered == direct,
            recovered_betti: recovered,
            direct_betti: direct.clone(),
        };
        let s = spectral_data(k, q, field, None)?;
        let s = Collapse {
            passed: s.collapse_matches,
            second_page_betti: s.second_page_betti,
            direct_betti: direct,
        };
        passed &= r.passed && s.passed;
        recovery = Some(r);
        collapse = Some(s);
    }
    emit(
        &VerifyReport {
            header: header("verify", field, q),
            diamonds: Some(diamonds),
            recovery,
            collapse,
            ladders: None,
            passed,
        },
        passed,
    )
}

pub fn verify_ladder(f: &Filtration, q: usize, field: Field) -> Result<Outcome> {
    let ladders = (0..=q)
        .map(|d| ladder(f, d, field))
        .collect::<Result<Vec<_>>>()?;
    let passed = ladders.iter().all(|l| l.passed);
    emit(
        &VerifyReport {
            header: header("verify", field, q),
            diamonds: None,
            recovery: None,
            collapse: None,
            ladders: Some(ladders),
            passed,
        },
        passed,
    )
}
