mod common;

use proptest::prelude::*;

use common::arb_chain;
use mixbound::chain::stationary_distribution;
use mixbound::distance::distance_profile;
use mixbound::examples::{hypercube, sticky_walk};
use mixbound::io::{
    format_number, matrix_to_csv, matrix_to_json, parse_csv, parse_json, parse_matrix, profile_to_csv,
};
use mixbound::{Error, Tolerances};

proptest! {
    #[test]
    fn twelve_significant_digits(x in prop::num::f64::NORMAL) {
        let s = format_number(x);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-12 * x.abs(), "{} -> {}", x, s);
        prop_assert!(!s.contains('.') || !s.split('e').next().unwrap().ends_with('0'));
    }

    #[test]
    fn csv_is_lossless(p in arb_chain(10)) {
        prop_assert_eq!(parse_csv(&matrix_to_csv(&p)).unwrap(), p);
    }

    #[test]
    fn json_is_lossless(p in arb_chain(10)) {
        prop_assert_eq!(parse_json(&matrix_to_json(&p)).unwrap(), p);
    }
}

#[test]
fn labels_survive_json() {
    let p = hypercube(2).unwrap().matrix;
    let back = parse_matrix(&matrix_to_json(&p), &Tolerances::default()).unwrap();
    assert_eq!(back.labels(), ["00", "01", "10", "11"]);
}

#[test]
fn profile_csv_layout() {
    let p = sticky_walk(3).unwrap().matrix;
    let pi = stationary_distribution(&p).unwrap();
    let csv = profile_to_csv(&distance_profile(&p, &pi, 2).unwrap());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,tv,sep");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0,0.75,1"));
}

#[test]
fn ragged_rows_are_rejected() {
    assert!(matches!(parse_csv("1,0\n1\n"), Err(Error::NonSquare { .. })));
    assert!(matches!(parse_csv(""), Err(Error::Empty)));
}

#[test]
fn negative_entries_are_rejected() {
    let err = parse_csv("1.1,-0.1\n0,1\n").unwrap_err();
    assert!(matches!(err, Error::NegativeEntry { row: 0, col: 1, .. }));
}
