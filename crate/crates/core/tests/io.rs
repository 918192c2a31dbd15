use hqp::gca::{explore, mutate_seed, CoefficientMode, ExploreMode, Seed};
use hqp::io::{export_document, export_graph, export_qp, export_rep, export_seed, import_document, import_graph, import_qp, import_rep, import_rep_for, import_seed, Document, IoError};
use hqp::quiver::{ExchangeMatrix, MutationDatum};
use hqp::rep::{rat_matrix, DecoratedRep};
use hqp::verify::library::{cubic_three_cycle, loopy_three_cycle, rank2};
use proptest::prelude::*;

const RANK2: &str = r#"{"B": [[0, 1], [-1, 0]], "d": [2, 1], "z": {"1": ["1", "z", "1"]}}"#;

#[test]
fn seed_documents_round_trip() {
    let s = import_seed(RANK2).unwrap();
    let s1 = mutate_seed(&s, 1).unwrap();
    let text = export_seed(&s1);
    assert_eq!(import_seed(&text).unwrap(), s1);
    assert_eq!(export_seed(&import_seed(&text).unwrap()), text);
}

#[test]
fn missing_z_is_rejected() {
    let err = import_seed(r#"{"B": [[0, 1], [-1, 0]], "d": [2, 1]}"#).unwrap_err();
    assert!(err.to_string().contains("missing z for vertex"), "{err}");
    assert!(import_seed(r#"{"B": [[0, 1], [-1, 0]], "d": [1, 1]}"#).is_ok());
    assert!(matches!(import_seed("{"), Err(IoError::Json(_))));
    assert!(import_seed(r#"{"B": [[0, 1], [1, 0]], "d": [1, 1]}"#).is_err());
}

#[test]
fn qp_documents_round_trip() {
    for qp in [cubic_three_cycle(), rank2(vec![2, 2]), loopy_three_cycle(vec![1, 2, 1], 5)] {
        let text = export_qp(&qp);
        let back = import_qp(&text).unwrap();
        assert_eq!(export_qp(&back), text);
        assert!(matches!(import_document(&text).unwrap(), Document::Qp(_)));
    }
    assert!(matches!(import_document(RANK2).unwrap(), Document::Seed(_)));
}

#[test]
fn rep_documents_round_trip_and_validate() {
    let qp = rank2(vec![2, 1]);
    let r = DecoratedRep::generalized_simple(&qp, 1);
    let text = export_rep(&r);
    assert_eq!(import_rep(&text).unwrap(), r);
    assert_eq!(import_rep_for(&qp, &text).unwrap(), r);
    let id2 = rat_matrix(&[&[1, 0], &[0, 1]]);
    let bad = DecoratedRep::new(vec![2, 0], vec![id2, rat_matrix(&[])], vec![hqp::QMatrix::zeros(2, 0)], vec![0, 0]).unwrap();
    assert!(import_rep_for(&qp, &export_rep(&bad)).is_err());
}

#[test]
fn graph_documents_round_trip() {
    let s = import_seed(RANK2).unwrap();
    let g = explore(&s, 3, ExploreMode::Labeled, 100).unwrap();
    let text = export_graph(&g);
    assert_eq!(export_graph(&import_graph(&text).unwrap()), text);
    let broken = text.replacen("\"to\": 1", "\"to\": 999", 1);
    assert!(broken == text || import_graph(&broken).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn seed_export_is_a_fixed_point(
        b01 in -2i64..=2, b02 in -1i64..=1, b12 in -1i64..=1,
        d in prop::collection::vec(1u32..=2, 3),
        principal in any::<bool>(),
        path in prop::collection::vec(1usize..=3, 0..4),
    ) {
        let b = ExchangeMatrix::new(vec![vec![0, b01, b02], vec![-b01, 0, b12], vec![-b02, -b12, 0]]).unwrap();
        let mode = if principal { CoefficientMode::Principal } else { CoefficientMode::TropZ };
        let s = path.iter().fold(Seed::initial(b, MutationDatum::symbolic(d), mode).unwrap(), |s, &k| mutate_seed(&s, k).unwrap());
        let text = export_seed(&s);
        let back = import_seed(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(export_document(&Document::Seed(back)), text);
    }
}
