use fcat_core::fusion_data::FIBONACCI;
use fcat_core::{load_category, ConsistencyKind, Error};

fn edited(from: &str, to: &str) -> String {
    assert!(FIBONACCI.contains(from), "fixture changed: {from}");
    FIBONACCI.replacen(from, to, 1)
}

#[test]
fn flipped_f_sign_breaks_pentagon() {
    let text = edited(
        r#"["tau", "tau", "tau", "tau", "tau", "tau", 0, 0, 0, 0, -0.6180339887498948, 0.0]"#,
        r#"["tau", "tau", "tau", "tau", "tau", "tau", 0, 0, 0, 0, 0.6180339887498948, 0.0]"#,
    );
    match load_category(&text) {
        Err(Error::Consistency { kind: ConsistencyKind::Pentagon, residual }) => assert!(residual > 1e-9),
        other => panic!("expected a pentagon failure, got {other:?}"),
    }
}

#[test]
fn conjugated_r_breaks_hexagon() {
    let text = edited(
        r#"["tau", "tau", "tau", 0, 0, -0.30901699437494734, 0.9510565162951536]"#,
        r#"["tau", "tau", "tau", 0, 0, -0.30901699437494734, -0.9510565162951536]"#,
    );
    match load_category(&text) {
        Err(Error::Consistency { kind: ConsistencyKind::Hexagon, residual }) => assert!(residual > 0.1, "{residual}"),
        other => panic!("expected a hexagon failure, got {other:?}"),
    }
}

#[test]
fn conjugating_every_r_gives_the_mirror_braiding() {
    let text = edited("-0.5877852522924732", "0.5877852522924732").replace("0.9510565162951536", "-0.9510565162951536");
    assert!(load_category(&text).is_ok());
}

#[test]
fn dimension_mismatch_is_reported() {
    let text = edited(r#""tau": [1.618033988749895, 0.0]"#, r#""tau": [1.5, 0.0]"#);
    assert!(matches!(load_category(&text), Err(Error::Consistency { kind: ConsistencyKind::Dimension, .. })));
}
