mod common;

use hyperarr::arrangement::{fixture_dependent, parse_arrangement, Arrangement};
use hyperarr::exactnum::{int, ratio};
use hyperarr::Error;
use proptest::prelude::*;

use common::{generic, permutation};

proptest! {
    #[test]
    fn genericity_survives_rescaling_and_relabeling(
        a in generic(6, 3),
        i in 0usize..6,
        (p, q) in (1i64..=7, 1i64..=7),
        negate in any::<bool>(),
        perm in permutation(6),
    ) {
        let factor = if negate { -ratio(p, q) } else { ratio(p, q) };
        prop_assert!(a.rescaled(i, &factor).unwrap().is_generic());
        prop_assert!(a.permuted(&perm).unwrap().is_generic());
    }

    #[test]
    fn dependent_subset_is_reported(a in generic(5, 3), (i, j) in (0usize..5, 0usize..5)) {
        prop_assume!(i != j);
        let mut normals = a.normals().to_vec();
        normals[j] = normals[i].iter().map(|x| x * int(-2)).collect();
        let b = Arrangement::new(3, normals).unwrap();
        let err = b.require_generic().unwrap_err();
        let Error::NotGeneric { subset } = err else { panic!("expected NotGeneric") };
        prop_assert!(subset.contains(&i) && subset.contains(&j));
        prop_assert!(b.subset_det(&subset) == int(0));
    }

    #[test]
    fn json_round_trip(a in generic(7, 4), (p, q) in (-9i64..=9, 2i64..=9)) {
        prop_assume!(p != 0);
        let b = a.rescaled(2, &ratio(p, q)).unwrap();
        let text = b.to_json_string();
        prop_assert_eq!(parse_arrangement(&text).unwrap(), b);
    }
}

#[test]
fn parse_errors_carry_locations() {
    let cases = [
        (r#"{"k":3,"normals":[["1","0","0"],["0","1","0"],["0","0","1"],["1","1","x"]]}"#, "normals[3][2]"),
        (r#"{"k":3,"normals":[["1","0","0"],["0","1"],["0","0","1"],["1","1","1"]]}"#, "normals[1]"),
        (r#"{"normals":[]}"#, "k"),
    ];
    for (doc, location) in cases {
        match parse_arrangement(doc) {
            Err(Error::Parse { location: l, .. }) => assert_eq!(l, location, "{doc}"),
            other => panic!("{doc}: {other:?}"),
        }
    }
    assert!(matches!(parse_arrangement("not json"), Err(Error::Parse { .. })));
}

#[test]
fn labels_and_unknown_keys() {
    let doc =
        r#"{"k":2,"normals":[["1","0"],["0","1"],["1","1"]],"labels":["a","b","c"],"certificate":null}"#;
    let a = parse_arrangement(doc).unwrap();
    assert_eq!(a.label(2), "c");
    assert!(parse_arrangement(r#"{"k":2,"normals":[["1","0"],["0","1"],["1","1"]],"labels":["a"]}"#).is_err());
    assert_eq!(fixture_dependent().label(0), "1");
}
