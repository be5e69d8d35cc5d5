use std::fs;
use std::path::Path;

use sclab_core::catalog::load_catalog;
use sclab_core::Error;

#[test]
fn empty_directory_gives_no_entries() {
    let dir = tempfile::tempdir().unwrap();
    assert!(load_catalog(dir.path()).unwrap().is_empty());
}

#[test]
fn bundled_directory_loads() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog");
    let entries = load_catalog(&dir).unwrap();
    let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
    for want in ["S4", "S5", "A5", "A6", "L2(7)", "L2(8)", "M11", "M12"] {
        assert!(names.contains(&want), "{want} missing from {names:?}");
    }
    let a5 = entries.iter().find(|e| e.name == "A5").unwrap();
    assert_eq!(a5.aliases, ["L2(4)"]);
    assert!(entries.iter().find(|e| e.name == "Co1").unwrap().is_out_of_reach());
}

#[test]
fn wrong_order_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s4.grp"), "group S4\ndegree 4\ngen (1,2,3,4)\ngen (1,2)\n").unwrap();
    fs::write(dir.path().join("metadata.toml"), "[[group]]\nname = \"S4\"\norder = \"12\"\n").unwrap();
    let err = load_catalog(dir.path()).unwrap_err();
    assert!(matches!(err, Error::Catalog(_) | Error::Verification(_)), "{err}");
    assert!(err.to_string().contains("24"), "{err}");

    fs::write(dir.path().join("metadata.toml"), "[[group]]\nname = \"S4\"\norder = \"24\"\n").unwrap();
    assert_eq!(load_catalog(dir.path()).unwrap().len(), 1);
}

#[test]
fn group_file_errors_name_the_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.grp"), "group X\ndegree 3\ngen (1,2)\ngen (1,4)\n").unwrap();
    let msg = load_catalog(dir.path()).unwrap_err().to_string();
    assert!(msg.contains("bad.grp") && msg.contains("line 4"), "{msg}");
}
