use super::*;
use crate::exactq::{image_basis, kernel_basis, rank, SparseVec};
use crate::monomial::{enumerate_chain_basis, ModuleKind, MultiDegree};

fn q(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

fn ch(s: &str) -> MonomialChain {
    MonomialChain::parse(s).unwrap()
}

fn vec_of(terms: &[(&str, i64)]) -> ChainVector {
    let t: Vec<(&str, ExactScalar)> = terms.iter().map(|(s, c)| (*s, q(*c))).collect();
    ChainVector::parse_terms(ModuleKind::Regular, &t).unwrap()
}

#[test]
fn face_maps_of_a_two_leg_chain() {
    let c = ch("z^[0]|z^[1]|z^[2]");
    let r = ModuleKind::Regular;
    assert_eq!(face_map(0, &c, &r).unwrap(), Some(ch("z^[1]|z^[2]")));
    assert_eq!(face_map(1, &c, &r).unwrap(), Some(ch("z^[0]|z^[3]")));
    assert_eq!(face_map(2, &c, &r).unwrap(), Some(ch("z^[2]|z^[1]")));
    assert!(face_map(3, &c, &r).is_err());
    // truncation kills the slot product
    let t = ModuleKind::QuotientTruncation(2);
    assert_eq!(face_map(2, &c, &t).unwrap(), None);
}

#[test]
fn boundary_examples() {
    let d = boundary(&vec_of(&[("z^[0]|z^[0]|z^[1]", 1)])).unwrap();
    assert_eq!(d, vec_of(&[("z^[1]|z^[0]", 1)]));
    let d = boundary(&vec_of(&[("z^[0]|z^[1]|z^[1]", 1)])).unwrap();
    assert_eq!(d, vec_of(&[("z^[1]|z^[1]", 2), ("z^[0]|z^[2]", -1)]));
    // d_0 vanishes on symmetric modules
    let d = boundary(&vec_of(&[("z^[2]|z^[3]", 1)])).unwrap();
    assert!(d.is_zero());
    assert!(boundary(&vec_of(&[("z^[2]", 1)])).is_err());
}

#[test]
fn first_boundary_block_in_degree_one() {
    let n1 = MultiDegree(vec![1]);
    let m = boundary_block(1, &n1, &ModuleKind::Regular);
    assert_eq!((m.nrows(), m.ncols()), (2, 3));
    assert_eq!(rank(&m), 1);
    assert_eq!(kernel_basis(&m).dim(), 2);
    let img = image_basis(&m);
    let rows = ChainBlock::new(1, &n1, &ModuleKind::Regular);
    assert_eq!(img.dim(), 1);
    let z1 = rows.coordinates(&vec_of(&[("z^[1]|z^[0]", 1)])).unwrap();
    assert!(img.contains(&z1));
}

#[test]
fn truncated_block_in_degree_one() {
    // Only the unit survives in the slot; d_1 on 1|1|z and 1|z|1.
    let n1 = MultiDegree(vec![1]);
    let t = ModuleKind::QuotientTruncation(1);
    let m = boundary_block(1, &n1, &t);
    assert_eq!((m.nrows(), m.ncols()), (1, 2));
    // d(1|1|z) = 1|z - 1|z + 0 and d(1|z|1) = 0 + ... : both zero
    assert!(m.is_zero());
}

#[test]
fn d_squared_vanishes_on_small_blocks() {
    for module in [ModuleKind::Regular, ModuleKind::QuotientTruncation(2)] {
        for degree in MultiDegree::all_up_to(2, 3) {
            for n in 1..4 {
                let a = boundary_block(n - 1, &degree, &module);
                let b = boundary_block(n, &degree, &module);
                assert!(a.mul(&b).unwrap().is_zero(), "{module} {degree:?} n={n}");
            }
        }
    }
}

#[test]
fn projections_of_a_chain() {
    let c = vec_of(&[("z^[0]|z^[1]|z^[2]", 1)]);
    let p = bgs_project(1, &c).unwrap();
    let half = ExactScalar::ratio(1, 2);
    let expected = ChainVector::parse_terms(
        ModuleKind::Regular,
        &[("z^[0]|z^[1]|z^[2]", half.clone()), ("z^[0]|z^[2]|z^[1]", half)],
    )
    .unwrap();
    assert_eq!(p, expected);
    assert!(bgs_project(2, &vec_of(&[("z^[3]|z^[1]|z^[1]", 1)])).unwrap().is_zero());
    assert!(bgs_project(3, &c).unwrap().is_zero());
    let one = vec_of(&[("z^[1]|z^[4]", 3)]);
    assert_eq!(bgs_project(1, &one).unwrap(), one);
    assert!(bgs_project(0, &one).is_err());
}

#[test]
fn degree_and_truncation_projections() {
    let mixed = vec_of(&[("z^[0]|z^[1]", 1), ("z^[1]|z^[1]", 2), ("z^[2]|z^[3]", -1)]);
    assert_eq!(degree_project(&MultiDegree(vec![2]), &mixed), vec_of(&[("z^[1]|z^[1]", 2)]));
    assert!(degree_project(&MultiDegree(vec![7]), &mixed).is_zero());
    assert_eq!(truncation_project(2, &mixed), vec_of(&[("z^[0]|z^[1]", 1), ("z^[1]|z^[1]", 2)]));
    assert_eq!(truncation_project(5, &mixed), mixed);
    assert!(truncation_project(0, &mixed).is_zero());
}

#[test]
fn block_coordinates_round_trip() {
    let degree = MultiDegree(vec![1, 2]);
    let b = ChainBlock::new(2, &degree, &ModuleKind::Regular);
    assert_eq!(b.chains(), enumerate_chain_basis(2, &degree, &ModuleKind::Regular).as_slice());
    let v = SparseVec::from_pairs([(0, q(2)), (5, q(-1))]);
    assert_eq!(b.coordinates(&b.chain_vector(&v)).unwrap(), v);
    let outside = vec_of(&[("z^[0]|z^[1]", 1)]);
    assert!(b.coordinates(&outside).is_err());
}

#[test]
fn one_variable_homology() {
    let r = ModuleKind::Regular;
    for n in 1..=6u32 {
        let d = MultiDegree(vec![n]);
        assert_eq!(homology_dims(1, &d, &r, None).unwrap().dim_homology, 1);
        assert_eq!(homology_dims(2, &d, &r, None).unwrap().dim_homology, 0);
    }
    let zero = MultiDegree(vec![0]);
    assert_eq!(homology_dims(1, &zero, &r, None).unwrap().dim_homology, 0);
    assert_eq!(homology_dims(0, &zero, &r, None).unwrap().dim_homology, 1);
    assert!(homology_dims(0, &zero, &r, Some(1)).is_err());
}

#[test]
fn two_variable_cells() {
    let r = ModuleKind::Regular;
    let d = MultiDegree(vec![2, 1]);
    let total = homology_dims(2, &d, &r, None).unwrap();
    let harrison = homology_dims(2, &d, &r, Some(1)).unwrap();
    let lie = homology_dims(2, &d, &r, Some(2)).unwrap();
    assert_eq!(harrison.dim_homology, 0);
    assert_eq!(lie.dim_homology, 1);
    assert_eq!(total.dim_homology, 1);
    assert_eq!(harrison.dim_chain + lie.dim_chain, total.dim_chain);
    let d11 = MultiDegree(vec![1, 1]);
    assert_eq!(cohomology_dims(2, &d11, &r, Some(1)).unwrap().dim_homology, 0);
    assert_eq!(cohomology_dims(2, &d11, &r, Some(2)).unwrap().dim_homology, 1);
}

#[test]
fn cohomology_matches_homology_for_truncations() {
    for m in 2..=3 {
        let t = ModuleKind::QuotientTruncation(m);
        for n in 0..=6u32 {
            let d = MultiDegree(vec![n]);
            for deg in 1..=3 {
                let h = homology_dims(deg, &d, &t, None).unwrap();
                let c = cohomology_dims(deg, &d, &t, None).unwrap();
                assert_eq!(h.dim_homology, c.dim_homology);
                assert_eq!(h.dim_chain, c.dim_chain);
                if deg >= 2 {
                    assert_eq!(c.dim_homology, 0, "trunc:{m} N={n} n={deg}");
                }
            }
        }
    }
}

#[test]
fn small_table_checks_pass() {
    let report = hodge_table(2, 3, 3, &ModuleKind::Regular, &TableOptions { cohomology: true, ..Default::default() }).unwrap();
    for c in &report.checks {
        assert!(c.passed(), "{c:?}");
    }
    let mut sorted = report.cells.clone();
    sorted.sort_by(|a, b| (a.n, a.i, &a.degree).cmp(&(b.n, b.i, &b.degree)));
    assert_eq!(sorted, report.cells);
}

#[test]
fn table_refuses_oversized_blocks() {
    let opts = TableOptions { cap: 50, ..Default::default() };
    match hodge_table(1, 3, 4, &ModuleKind::Regular, &opts) {
        Err(HochschildError::CapExceeded { cell, .. }) => assert!(cell.contains("N=[")),
        other => panic!("expected refusal, got {other:?}"),
    }
}

#[test]
fn derivation_norms_grow() {
    for p in 0..=3 {
        let norms: Vec<ExactScalar> = (1..=40).map(|n| derivation_block_norm(p, n).unwrap()).collect();
        for (n, x) in norms.iter().enumerate() {
            assert_eq!(*x, q(n as i64 + 1));
        }
        assert!(derivation_image(p, 0).is_empty());
    }
    assert!(derivation_block_norm(0, 0).is_err());
}
