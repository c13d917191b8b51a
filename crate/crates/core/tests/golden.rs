mod common;

use runtime_complexity::ast::{parse_str, print, SourceUnit};
use runtime_complexity::features::{features_for_unit, FeatureName};

#[test]
fn golden_feature_vectors() {
    let fixtures = common::golden_fixtures();
    assert!(fixtures.len() >= 25);
    let mut failures = Vec::new();
    for g in &fixtures {
        let got = features_for_unit(&SourceUnit::new(&g.name, &g.source)).unwrap();
        for f in FeatureName::ALL {
            if got.get(f) != g.expected.get(f) {
                failures.push(format!(
                    "{}: {} expected {} got {}",
                    g.name,
                    f,
                    g.expected.get(f),
                    got.get(f)
                ));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn golden_sources_round_trip() {
    for g in common::golden_fixtures() {
        let tree = parse_str(&g.source).unwrap();
        let again = parse_str(&print(&tree)).unwrap();
        assert_eq!(tree.without_spans(), again.without_spans(), "{}", g.name);
    }
}
