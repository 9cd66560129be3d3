use hyperarr::exactnum::{
    cross, dot, format_rational, int, parse_rational, ratio, sort_sign, Matrix, Rational,
};
use num_traits::Zero;
use proptest::prelude::*;

fn laplace(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return int(1);
    }
    let mut total = Rational::zero();
    for (c, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = entry * laplace(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn square(max: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(rational(), n), n))
}

fn rectangular() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1usize..=5, 1usize..=6)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(int), c), r))
}

proptest! {
    #[test]
    fn det_matches_cofactor_expansion(rows in square(5)) {
        let m = Matrix::from_rows(rows.clone()).unwrap();
        prop_assert_eq!(m.det().unwrap(), laplace(&rows));
    }

    #[test]
    fn det_alternates_under_row_swap(rows in square(5), a in 0usize..5, b in 0usize..5) {
        let n = rows.len();
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b);
        let mut swapped = rows.clone();
        swapped.swap(a, b);
        let d = Matrix::from_rows(rows).unwrap().det().unwrap();
        let e = Matrix::from_rows(swapped).unwrap().det().unwrap();
        prop_assert_eq!(d, -e);
    }

    #[test]
    fn det_of_transpose(rows in square(5)) {
        let m = Matrix::from_rows(rows).unwrap();
        prop_assert_eq!(m.det().unwrap(), m.transpose().det().unwrap());
    }

    #[test]
    fn rank_nullity(rows in rectangular()) {
        let m = Matrix::from_rows(rows).unwrap();
        let kernel = m.nullspace();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for b in &kernel {
            prop_assert!(m.mul_vec(b).unwrap().iter().all(Zero::is_zero));
        }
        if !kernel.is_empty() {
            prop_assert_eq!(Matrix::from_rows(kernel.clone()).unwrap().rank(), kernel.len());
        }
    }

    #[test]
    fn rref_is_idempotent(rows in rectangular()) {
        let m = Matrix::from_rows(rows).unwrap();
        let (r, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(r.rref().0, r);
    }

    #[test]
    fn cross_is_orthogonal(u in prop::collection::vec(rational(), 3), v in prop::collection::vec(rational(), 3)) {
        let w = cross(&u, &v).unwrap();
        prop_assert!(dot(&w, &u).is_zero());
        prop_assert!(dot(&w, &v).is_zero());
        let m = Matrix::from_rows(vec![u.clone(), v.clone(), w.clone()]).unwrap();
        prop_assert_eq!(m.det().unwrap(), dot(&w, &w));
    }

    #[test]
    fn rational_text_round_trip(p in -100000i64..100000, q in 1i64..1000) {
        let x = ratio(p, q);
        let text = format_rational(&x);
        prop_assert_eq!(parse_rational(&text), Some(x));
    }

    #[test]
    fn sort_sign_matches_inversion_parity(idx in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let inversions = (0..idx.len())
            .flat_map(|i| (i + 1..idx.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| idx[i] > idx[j])
            .count();
        let (sorted, negated) = sort_sign(&idx).unwrap();
        prop_assert_eq!(sorted, (0..6).collect::<Vec<_>>());
        prop_assert_eq!(negated, inversions % 2 == 1);
    }
}

#[test]
fn malformed_rationals_are_rejected() {
    for bad in ["", "-", "1/0", "1/-2", "+3", "1.5", "1/02", " 1", "1/"] {
        assert_eq!(parse_rational(bad), None, "{bad:?}");
    }
}
