use sclab_web::{complex_summary, group_info, group_names, lefschetz_blocks};

#[test]
fn names_exclude_out_of_reach_groups() {
    let names = group_names();
    assert!(names.iter().any(|n| n == "M12"));
    assert!(!names.iter().any(|n| n == "Co1"));
}

#[test]
fn info_of_a5() {
    let v = group_info("L2(4)").unwrap();
    assert_eq!(v["group"], "A5");
    assert_eq!(v["order"], "60");
    assert_eq!(v["classes"].as_array().unwrap().len(), 5);
}

#[test]
fn complex_of_s4() {
    let v = complex_summary("S4", 2, "B").unwrap();
    // 9 of order 2, 3 cyclic and 4 Klein of order 4, 3 dihedral of order 8.
    assert_eq!(v["collections"]["S"], 19);
    // A nontrivial normal 2-subgroup makes the complex contractible.
    assert!(v["homology"]["betti"].as_array().unwrap().iter().all(|b| b == 0));
    assert_eq!(v["characteristic"]["is_char_p"], true);
}

#[test]
fn lefschetz_of_a5() {
    let v = lefschetz_blocks("A5", 2, "S").unwrap();
    let values: Vec<i64> = v["character"]["values"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(values, vec![4, 0, 1, -1, -1]);
    assert_eq!(v["projective"], true);
}

#[test]
fn errors_are_messages() {
    assert!(group_info("Co1").unwrap_err().contains("too large"));
    assert!(complex_summary("A5", 7, "D").is_err());
    assert!(complex_summary("A5", 2, "Q").is_err());
}
