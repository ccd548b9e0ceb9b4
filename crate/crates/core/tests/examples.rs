//! Small spaces whose answers are known by hand.

mod common;

use common::*;
use reebkit::cech::{first_page, nerve_row, second_page_two_column, PullbackCover};
use reebkit::corpus;
use reebkit::cut::CutComplex;
use reebkit::field::ratio;
use reebkit::filtration::telescope;
use reebkit::homology::betti_numbers;
use reebkit::persistence::{cut_telescope, persistence_direct, persistence_via_telescope};
use reebkit::reeb::{face_map, homology_of_base, truncated_reeb, End};
use reebkit::zigzag::Bar;
use reebkit::{Field, Simplex, SimplicialComplex, VertexId};

fn filtration(name: &str) -> reebkit::filtration::Filtration {
    corpus::named_filtrations()
        .into_iter()
        .find(|(n, _)| *n == name)
        .unwrap()
        .1
}

fn bar(birth: usize, death: usize) -> Bar {
    Bar {
        birth,
        death,
        multiplicity: 1,
    }
}

fn flat(simplices: &[&[u32]]) -> SimplicialComplex {
    SimplicialComplex::with_constant_height(
        ratio(0, 1),
        simplices
            .iter()
            .map(|s| Simplex::new(s.iter().map(|&v| VertexId(v)).collect())),
    )
}

#[test]
fn telescope_barcodes_of_named_filtrations() {
    let cases: Vec<(&str, usize, Vec<Bar>)> = vec![
        ("constant", 0, vec![bar(0, 1)]),
        ("constant", 1, vec![bar(0, 1)]),
        ("point-edge", 0, vec![bar(0, 1)]),
        ("point-two-points-edge", 0, vec![bar(0, 2), bar(1, 1)]),
        ("circle-disk", 0, vec![bar(0, 1)]),
        ("circle-disk", 1, vec![bar(0, 0)]),
    ];
    for (name, q, expected) in cases {
        let f = filtration(name);
        let direct = persistence_direct(&f, q, Q).unwrap().barcode().unwrap();
        let via = persistence_via_telescope(&f, q, Q)
            .unwrap()
            .barcode()
            .unwrap();
        assert_eq!(direct.bars, expected, "{name} q={q}");
        assert_eq!(via.bars, expected, "{name} q={q} through the telescope");
    }
}

#[test]
fn telescope_of_point_into_edge_is_contractible() {
    let t = telescope(&filtration("point-edge"));
    assert_eq!(betti_numbers(&t, 2, Q), vec![1, 0, 0]);
    let t = telescope(&filtration("circle-disk"));
    assert_eq!(betti_numbers(&t, 3, Q), vec![1, 0, 0, 0]);
}

#[test]
fn product_slab_face_maps_are_isomorphisms() {
    // the telescope of a constant circle is the cylinder over it
    let c = cut_telescope(&filtration("constant"));
    let (a, b) = (ratio(0, 1), ratio(1, 1));
    for q in 0..=1 {
        for end in [End::Bottom, End::Top] {
            let d = face_map(&c, &a, &b, end, q, Q).unwrap();
            assert_eq!(d.matrix().rows(), 1);
            assert_eq!(d.matrix().cols(), 1);
            assert_eq!(d.rank(), 1, "q={q} {end:?}");
        }
    }
}

#[test]
fn closed_surfaces_are_recovered_over_two_elements() {
    let f2 = Field::prime(2).unwrap();
    for (name, expected) in [("sphere", vec![1, 0, 1]), ("torus", vec![1, 2, 1])] {
        let c = CutComplex::for_critical_analysis(&corpus::by_name(name).unwrap(), &[]);
        let ts: Vec<_> = (0..=2)
            .map(|q| truncated_reeb(&c, q, f2).unwrap())
            .collect();
        assert_eq!(homology_of_base(&ts), expected, "{name}");
    }
}

#[test]
fn disjoint_pieces() {
    let left: &[u32] = &[0, 1];
    let right: &[u32] = &[2, 3];
    let ambient = flat(&[left, right]);
    let pc = PullbackCover::from_pieces(&ambient, vec![flat(&[left]), flat(&[right])]).unwrap();
    assert!(pc.overlaps.is_empty());
    let fp = first_page(&pc, 1, Q).unwrap();
    assert_eq!(second_page_two_column(&fp), vec![2, 0]);
    let nerve = nerve_row(&pc, Q);
    assert_eq!(nerve.nerve_betti, vec![2, 0]);
    assert!(nerve.homologically_good);
}
