mod common;

use common::{
    diamond, enumerate_betti_blow_up, enumerate_blow_up, symmetric_diamond, with_planted_defect,
};
use hodge_core::catalog::{curve, point, projective_space, torus};
use hodge_core::exactseq::{ExactSequenceDims, SeqEntry};
use hodge_core::manifest::{parse_manifest, serialize, ManifestDocument};
use hodge_core::model::ModelParts;
use hodge_core::spectral::frolicher_defect;
use hodge_core::{
    apply_step, blow_up, check_defect_identity, degenerates_at_e1, exceptional_divisor,
    hochschild_blow_up, invariant_audit, projective_bundle, BlowUpSpec, FactorizationStep,
    HodgeDiamond, ManifoldModel,
};
use proptest::prelude::*;

/// Ambient dimension, codimension and a pair of diamonds.
fn spec_diamonds() -> impl Strategy<Value = (HodgeDiamond, HodgeDiamond, usize)> {
    (2usize..=6)
        .prop_flat_map(|n| (Just(n), 2..=n))
        .prop_flat_map(|(n, r)| (diamond(n, 9), diamond(n - r, 9), Just(r)))
}

fn bare(name: &str, d: HodgeDiamond) -> ManifoldModel {
    ManifoldModel::new(name, d).unwrap()
}

fn spec_of(x: HodgeDiamond, z: HodgeDiamond) -> BlowUpSpec {
    BlowUpSpec::new(bare("X", x), bare("Z", z)).unwrap()
}

/// X and Z with Serre-symmetric diamonds and planted Frölicher defects.
fn defect_spec() -> impl Strategy<Value = BlowUpSpec> {
    (2usize..=6)
        .prop_flat_map(|n| (Just(n), 2..=n))
        .prop_flat_map(|(n, r)| {
            (
                symmetric_diamond(n, 6, false),
                symmetric_diamond(n - r, 6, false),
                prop::collection::vec(0u64..8, 1..6),
                prop::collection::vec(0u64..8, 1..6),
                any::<bool>(),
                any::<bool>(),
            )
        })
        .prop_map(|(dx, dz, sx, sz, zx, zz)| {
            BlowUpSpec::new(
                with_planted_defect("X", dx, sx, zx),
                with_planted_defect("Z", dz, sz, zz),
            )
            .unwrap()
        })
}

proptest! {
    #[test]
    fn shift_preserves_total(d in (0usize..5).prop_flat_map(|n| diamond(n, 9)), i in 0usize..4, extra in 0usize..3) {
        let target = d.dim() + i + extra;
        let s = d.shift(i, target);
        prop_assert_eq!(s.total(), d.total());
        let mut a: Vec<u64> = d.entries().map(|e| e.2).filter(|&v| v > 0).collect();
        let mut b: Vec<u64> = s.entries().map(|e| e.2).filter(|&v| v > 0).collect();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn direct_sum_laws(
        (a, b, c) in (0usize..5).prop_flat_map(|n| (diamond(n, 9), diamond(n, 9), diamond(n, 9)))
    ) {
        prop_assert_eq!(a.direct_sum(&b).unwrap(), b.direct_sum(&a).unwrap());
        prop_assert_eq!(
            a.direct_sum(&b).unwrap().direct_sum(&c).unwrap(),
            a.direct_sum(&b.direct_sum(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.direct_sum(&HodgeDiamond::zero(a.dim())).unwrap(), a);
    }

    #[test]
    fn serre_symmetry_closed_under_sum(
        (a, b) in (0usize..5).prop_flat_map(|n| (symmetric_diamond(n, 9, false), symmetric_diamond(n, 9, false)))
    ) {
        prop_assert!(a.serre_symmetric() && b.serre_symmetric());
        prop_assert!(a.direct_sum(&b).unwrap().serre_symmetric());
    }

    #[test]
    fn hochschild_total_is_diamond_total(d in (0usize..6).prop_flat_map(|n| diamond(n, 9))) {
        let hh = d.anti_diagonal_sums();
        prop_assert_eq!(hh.total(), d.total());
        for (k, v) in hh.iter() {
            let brute: u64 = d.entries().filter(|&(p, q, _)| p as i64 - q as i64 == k).map(|e| e.2).sum();
            prop_assert_eq!(v, brute);
        }
    }

    #[test]
    fn blow_up_matches_enumeration((x, z, r) in spec_diamonds()) {
        let spec = spec_of(x.clone(), z.clone());
        prop_assert_eq!(spec.codim(), r);
        let bl = blow_up(&spec).unwrap();
        prop_assert_eq!(bl.diamond().rows(), enumerate_blow_up(&x, &z, r));
    }

    #[test]
    fn blow_up_keeps_extreme_row_and_column((x, z, _r) in spec_diamonds()) {
        let spec = spec_of(x.clone(), z.clone());
        let bl = blow_up(&spec).unwrap();
        let n = x.dim() as i64;
        for k in 0..=n {
            prop_assert_eq!(bl.h(k, 0), x.get(k, 0));
            prop_assert_eq!(bl.h(0, k), x.get(0, k));
        }
        prop_assert_eq!(bl.h(1, 1), x.get(1, 1) + z.get(0, 0));
    }

    #[test]
    fn blow_up_equals_x_plus_e_minus_z((x, z, r) in spec_diamonds()) {
        let spec = spec_of(x.clone(), z.clone());
        let bl = blow_up(&spec).unwrap();
        let e = exceptional_divisor(&spec).unwrap();
        prop_assert_eq!(e.diamond(), &projective_bundle(&spec.centers()[0], r));
        for (p, q, v) in bl.diamond().entries() {
            let (p, q) = (p as i64, q as i64);
            prop_assert_eq!(v as i64, x.get(p, q) as i64 + e.h(p, q) as i64 - z.get(p, q) as i64);
        }
    }

    #[test]
    fn symmetries_preserved(
        (x, z) in (2usize..=6)
            .prop_flat_map(|n| (Just(n), 2..=n))
            .prop_flat_map(|(n, r)| (symmetric_diamond(n, 9, true), symmetric_diamond(n - r, 9, true)))
    ) {
        let bl = blow_up(&spec_of(x, z)).unwrap();
        prop_assert!(bl.diamond().serre_symmetric());
        prop_assert!(bl.diamond().hodge_symmetric());
    }

    #[test]
    fn hochschild_identity((x, z, _r) in spec_diamonds()) {
        let (left, right) = hochschild_blow_up(&spec_of(x, z)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn betti_formula_matches_enumeration(spec in defect_spec()) {
        let bl = blow_up(&spec).unwrap();
        let bx = spec.ambient().betti().unwrap();
        let bz = spec.centers()[0].betti().unwrap();
        let expected = enumerate_betti_blow_up(bx.as_slice(), bz.as_slice(), spec.codim());
        prop_assert_eq!(bl.betti().unwrap().as_slice(), expected.as_slice());
    }

    #[test]
    fn betti_level_identities(spec in defect_spec()) {
        let x = spec.ambient();
        let z = &spec.centers()[0];
        let bl = blow_up(&spec).unwrap();
        let r = spec.codim() as i64;
        let chi = |m: &ManifoldModel| m.betti().unwrap().topological_euler();
        prop_assert_eq!(chi(&bl), chi(x) + (r - 1) * chi(z));
        let b2h11 = |m: &ManifoldModel| m.b(2).unwrap() as i64 - m.h(1, 1) as i64;
        prop_assert_eq!(b2h11(&bl), b2h11(x));
        prop_assert_eq!(bl.b(1), x.b(1));
    }

    #[test]
    fn defect_identity_and_low_degrees(spec in defect_spec()) {
        let bl = blow_up(&spec).unwrap();
        prop_assert!(check_defect_identity(&spec, &bl).unwrap());
        let dt = frolicher_defect(&bl).unwrap();
        let dx = frolicher_defect(spec.ambient()).unwrap();
        prop_assert!(dt.as_slice().iter().all(|&v| v >= 0));
        prop_assert_eq!(dt.get(1), dx.get(1));
        prop_assert_eq!(dt.get(2), dx.get(2));
        let degenerate = |m: &ManifoldModel| degenerates_at_e1(m).unwrap().degenerate;
        prop_assert_eq!(
            degenerate(&bl),
            degenerate(spec.ambient()) && degenerate(&spec.centers()[0])
        );
    }

    #[test]
    fn up_down_is_identity(spec in defect_spec()) {
        let z = spec.centers()[0].clone();
        let up = apply_step(spec.ambient(), &FactorizationStep::up(z.clone())).unwrap();
        let down = apply_step(&up, &FactorizationStep::down(z)).unwrap();
        prop_assert!(down.same_invariants(spec.ambient()));
        prop_assert!(invariant_audit(spec.ambient(), &up).unwrap().all_equal());
    }

    #[test]
    fn zero_padding_keeps_exactness(dims in prop::collection::vec(0u64..20, 0..12), pad in 0usize..3) {
        let seq = ExactSequenceDims::known(&dims);
        let mut padded = vec![0u64; 2 * pad];
        padded.extend(&dims);
        padded.extend(std::iter::repeat_n(0, pad));
        prop_assert_eq!(
            seq.alternating_sum_check().unwrap(),
            ExactSequenceDims::known(&padded).alternating_sum_check().unwrap()
        );
    }

    #[test]
    fn solved_sequences_are_exact(dims in prop::collection::vec(0u64..20, 1..12), slot in any::<prop::sample::Index>()) {
        let pos = slot.index(dims.len());
        let entries: Vec<SeqEntry> = dims.iter().enumerate()
            .map(|(i, &v)| if i == pos { SeqEntry::Unknown } else { SeqEntry::Known(v) })
            .collect();
        let seq = ExactSequenceDims::new(entries);
        if let Ok(v) = seq.solve_unknown() {
            prop_assert!(seq.completed(v).alternating_sum_check().unwrap());
        }
    }

    #[test]
    fn serialization_is_canonical(spec in defect_spec()) {
        let bl = blow_up(&spec).unwrap();
        let doc = ManifestDocument::new(vec![spec.ambient().clone(), spec.centers()[0].clone(), bl]);
        let text = serialize(&doc);
        let reparsed = parse_manifest(&text).unwrap();
        prop_assert_eq!(&reparsed, &doc);
        prop_assert_eq!(serialize(&reparsed), text);
    }
}

/// Degeneracy passes to blow-ups of degenerate manifolds of dimension at most
/// four along points, curves and surfaces.
#[test]
fn low_dimensional_centers_preserve_degeneracy() {
    let centers: Vec<ManifoldModel> = vec![
        point(),
        curve(0).unwrap(),
        curve(3).unwrap(),
        torus(2).unwrap(),
        projective_space(2).unwrap(),
        hodge_core::blowup::point_blow_up(&projective_space(2).unwrap()).unwrap(),
    ];
    let ambients: Vec<ManifoldModel> = (2..=4)
        .flat_map(|n| [projective_space(n).unwrap(), torus(n).unwrap()])
        .collect();
    let mut checked = 0;
    for x in &ambients {
        for z in &centers {
            if z.dim() + 2 > x.dim() {
                continue;
            }
            let spec = BlowUpSpec::new(x.clone(), z.clone()).unwrap();
            let bl = blow_up(&spec).unwrap();
            assert_eq!(
                degenerates_at_e1(&bl).unwrap().degenerate,
                degenerates_at_e1(x).unwrap().degenerate
            );
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

#[test]
fn builtins_validate_and_projective_spaces_have_no_defect() {
    for n in 0..=16 {
        let m = projective_space(n).unwrap();
        assert!(frolicher_defect(&m).unwrap().is_zero());
        assert!(m.diamond().serre_symmetric());
    }
    for g in 0..10 {
        assert!(curve(g).unwrap().diamond().serre_symmetric());
    }
    for n in 0..=6 {
        assert!(frolicher_defect(&torus(n).unwrap()).unwrap().is_zero());
    }
}

/// The 5-fold/3-fold example: a non-degenerate center with `d_Z[1] = 1` in
/// codimension two puts a unit defect in degree 3 of the blow-up.
#[test]
fn nondegenerate_threefold_center_in_fivefold() {
    let x = projective_space(5).unwrap();
    // Iwasawa-type data on a threefold.
    let z = ModelParts::new(
        "Z",
        HodgeDiamond::from_rows(&[
            vec![1, 2, 2, 1],
            vec![3, 6, 6, 3],
            vec![3, 6, 6, 3],
            vec![1, 2, 2, 1],
        ])
        .unwrap(),
    )
    .betti(hodge_core::BettiVector::new(vec![1, 4, 8, 10, 8, 4, 1]).unwrap())
    .validate()
    .unwrap();
    assert_eq!(frolicher_defect(&z).unwrap().get(1), 1);
    let x = ModelParts::new("X", x.diamond().clone())
        .betti(x.betti().unwrap().clone())
        .validate()
        .unwrap();
    let spec = BlowUpSpec::new(x, z).unwrap();
    let bl = blow_up(&spec).unwrap();
    let d = frolicher_defect(&bl).unwrap();
    assert_eq!(d.get(3), 1);
    // X has no defect and r = 2, so d(X~)[k] = d(Z)[k - 2] for every k.
    let dz = frolicher_defect(&spec.centers()[0]).unwrap();
    for k in 0..=10i64 {
        assert_eq!(d.get(k), dz.get(k - 2));
    }
    assert!(check_defect_identity(&spec, &bl).unwrap());
}
