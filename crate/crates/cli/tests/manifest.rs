use defcoh::linalg::Field;
use defcoh_cli::manifest::parse_syntax;
use defcoh_cli::{parse_manifest, ManifestError};
use proptest::prelude::*;

const FIXTURES: [&str; 3] = [
    include_str!("fixtures/dual_numbers.txt"),
    include_str!("fixtures/vee.txt"),
    include_str!("fixtures/outer_derivation.txt"),
];

#[test]
fn minimal_manifest_loads() {
    let (m, env) = parse_manifest("field Q\nbuiltin k ground\n").unwrap();
    assert_eq!(m.field, Field::Rational);
    assert_eq!(env.algebras["k"].dim(), 1);
}

#[test]
fn prime_field_and_fractions() {
    let (_, env) = parse_manifest("field F 5\nalgebra A\n  basis 1\n  unit 3\n  mul 1 1 = 1/3\nend\n").unwrap();
    assert_eq!(env.algebras["A"].field(), Field::Prime(5));
}

#[test]
fn non_associative_table_is_located() {
    let text = "field Q\n\nalgebra L\n  basis 1 x y\n  unit 1 0 0\n  mul 1 1 = 1 0 0\n  mul 1 x = 0 1 0\n  mul x 1 = 0 1 0\n  mul 1 y = 0 0 1\n  mul y 1 = 0 0 1\n  mul x x = 0 0 1\n  mul x y = 0 1 0\nend\n";
    match parse_manifest(text) {
        Err(ManifestError::Invariant { line, source: defcoh::Error::NonAssociative { i, j, k } }) => {
            assert_eq!(line, 3);
            assert!(i < 3 && j < 3 && k < 3);
        }
        Err(e) => panic!("wrong error: {e}"),
        Ok(_) => panic!("accepted"),
    }
}

#[test]
fn undeclared_bimodule_is_unknown_name() {
    let text = "field Q\nbuiltin k ground\ncommand hochschild k M\n";
    match parse_manifest(text) {
        Err(ManifestError::UnknownName { line, kind, name }) => {
            assert_eq!((line, kind, name.as_str()), (3, "bimodule", "M"));
        }
        Err(e) => panic!("wrong error: {e}"),
        Ok(_) => panic!("accepted"),
    }
}

#[test]
fn syntax_errors_are_located() {
    for (text, line) in [
        ("builtin k ground\n", 1),
        ("field Q\nbuiltin k nonsense\n", 2),
        ("field Q\n\nalgebra A\n  basis 1\n", 3),
        ("field Q\nbuiltin k ground\nbuiltin k ground\n", 3),
        ("field Q\nbimodule R over k\n  dim 1\nend\n", 2),
        ("field Q\nbuiltin k ground\nbimodule R over k\n  dim 1\n  left 1 = [1 2]\nend\n", 3),
    ] {
        let e = match parse_manifest(text) {
            Err(e) => e,
            Ok(_) => panic!("accepted:\n{text}"),
        };
        assert_eq!(e.line(), line, "{text}: {e}");
    }
}

#[test]
fn non_functorial_presheaf_is_rejected() {
    let text = "field Q\nbuiltin L dual_numbers\nsite\n  objects U V\n  below V U\nend\npresheaf A\n  at U L\n  at V L\n  restrict U V [1 0; 1 1]\nend\n";
    assert!(matches!(parse_manifest(text), Err(ManifestError::Invariant { line: 7, .. })));
}

#[test]
fn fixtures_round_trip() {
    for text in FIXTURES {
        let (m, _) = parse_manifest(text).unwrap();
        let again = parse_syntax(&m.to_text()).unwrap();
        assert_eq!(m, again);
        assert_eq!(again.to_text(), m.to_text());
    }
}

fn scalar_text() -> impl Strategy<Value = String> {
    (-9i64..10, 1i64..5).prop_map(|(n, d)| if d == 1 { n.to_string() } else { format!("{n}/{d}") })
}

proptest! {
    #[test]
    fn generated_manifests_round_trip(
        rows in proptest::collection::vec(proptest::collection::vec(scalar_text(), 2), 2),
        unit in proptest::collection::vec(scalar_text(), 2),
        degree in 0usize..6,
        names in proptest::collection::vec("[a-z][a-z0-9_]{0,5}", 1..4),
    ) {
        let mut text = format!("field Q\ncap degree {degree}\nbuiltin T triangular 2\n");
        text.push_str(&format!("bimodule K over T\n  dim 2\n  left e12 = [{}; {}]\nend\n", rows[0].join(" "), rows[1].join(" ")));
        text.push_str(&format!("algebra raw\n  basis {}\n  unit {}\nend\n", names.join(" "), unit.iter().take(names.len()).cloned().collect::<Vec<_>>().join(" ")));
        text.push_str("command hochschild T\n");
        let m = parse_syntax(&text).unwrap();
        let again = parse_syntax(&m.to_text()).unwrap();
        prop_assert_eq!(&m, &again);
    }
}
