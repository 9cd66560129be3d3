#![allow(dead_code)]

use hyperarr::arrangement::Arrangement;
use hyperarr::exactnum::int;
use proptest::prelude::*;

/// Generic arrangements with small integer normals.
pub fn generic(n: usize, k: usize) -> impl Strategy<Value = Arrangement> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, k), n).prop_filter_map(
        "not generic",
        move |rows| {
            let normals = rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect();
            Arrangement::new(k, normals).ok().filter(Arrangement::is_generic)
        },
    )
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

pub fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}
