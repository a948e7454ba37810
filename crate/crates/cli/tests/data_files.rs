use std::fs;
use std::path::PathBuf;

use tropgon::fixtures::{bigonal_example, path_metric, trigonal_example};
use tropgon::format::{Meta, TowerFile};

fn expected() -> Vec<(&'static str, String)> {
    let meta = |name: &str| {
        let mut m = Meta::default();
        m.labels.insert("name".into(), name.into());
        m
    };
    vec![
        (
            "bigonal-example.json",
            TowerFile::from_tower(
                &bigonal_example(),
                &path_metric(&[1, 2, 3]),
                meta("bigonal example"),
            )
            .to_json(),
        ),
        (
            "trigonal-example.json",
            TowerFile::from_tower(
                &trigonal_example(),
                &path_metric(&[1, 2, 3, 4, 5]),
                meta("trigonal example"),
            )
            .to_json(),
        ),
    ]
}

// Set TROPGON_WRITE_DATA=1 to regenerate.
#[test]
fn shipped_examples_match_fixtures() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    for (name, text) in expected() {
        let path = dir.join(name);
        if std::env::var_os("TROPGON_WRITE_DATA").is_some() {
            fs::write(&path, &text).unwrap();
        }
        assert_eq!(fs::read_to_string(&path).unwrap(), text, "{name}");
    }
}
