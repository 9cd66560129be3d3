//! The discriminantal arrangement of a generic arrangement: normals `alpha_L`,
//! the Plücker coordinate matrix, and the census of codimension-2 strata.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Rational};
use crate::grassmannian::{plucker_coords, PluckerTable};

/// Hyperplane `D_L` of the discriminantal arrangement. `subset` is 0-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantalHyperplane {
    pub subset: Vec<usize>,
    pub normal: Vec<Rational>,
}

/// All `alpha_L` for `L` a (k+1)-subset, in lexicographic order of `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluckerMatrix {
    pub n: usize,
    pub k: usize,
    pub rows: Vec<DiscriminantalHyperplane>,
}

impl PluckerMatrix {
    pub fn matrix(&self) -> Matrix {
        Matrix::from_rows_with_cols(self.rows.iter().map(|r| r.normal.clone()).collect(), self.n)
            .expect("rows have length n")
    }

    pub fn row_of(&self, subset: &[usize]) -> Option<&DiscriminantalHyperplane> {
        self.rows.iter().find(|r| r.subset == subset)
    }
}

fn check_subset(n: usize, size: usize, subset: &[usize]) -> Result<()> {
    if subset.len() != size {
        return Err(Error::Domain(format!(
            "subset {subset:?} has {} elements, expected {size}",
            subset.len()
        )));
    }
    if subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(format!("subset {subset:?} is not strictly increasing")));
    }
    if subset.iter().any(|&i| i >= n) {
        return Err(Error::Domain(format!("subset {subset:?} out of range for n = {n}")));
    }
    Ok(())
}

/// `alpha_L` from precomputed Plücker coordinates. Entry `s_i` (i counted from 1
/// along the sorted `L`) is `(-1)^i * beta_{L \ s_i}`.
pub(crate) fn alpha_from_table(table: &PluckerTable, subset: &[usize]) -> Vec<Rational> {
    let mut normal = vec![Rational::zero(); table.n()];
    for (pos, &s) in subset.iter().enumerate() {
        let rest: Vec<usize> = subset.iter().copied().filter(|&x| x != s).collect();
        let beta = table.get(&rest).clone();
        normal[s] = if pos % 2 == 0 { -beta } else { beta };
    }
    normal
}

/// Normal vector of `D_L` for a sorted (k+1)-subset `L` (0-based).
pub fn alpha_l(a: &Arrangement, subset: &[usize]) -> Result<DiscriminantalHyperplane> {
    a.require_generic()?;
    check_subset(a.n(), a.k() + 1, subset)?;
    let mut normal = vec![Rational::zero(); a.n()];
    for (pos, &s) in subset.iter().enumerate() {
        let rest: Vec<usize> = subset.iter().copied().filter(|&x| x != s).collect();
        let beta = a.subset_det(&rest);
        normal[s] = if pos % 2 == 0 { -beta } else { beta };
    }
    Ok(DiscriminantalHyperplane { subset: subset.to_vec(), normal })
}

pub fn plucker_matrix(a: &Arrangement) -> Result<PluckerMatrix> {
    a.require_generic()?;
    let table = plucker_coords(a);
    Ok(plucker_matrix_from_table(&table))
}

pub(crate) fn plucker_matrix_from_table(table: &PluckerTable) -> PluckerMatrix {
    let rows = (0..table.n())
        .combinations(table.k() + 1)
        .map(|subset| {
            let normal = alpha_from_table(table, &subset);
            DiscriminantalHyperplane { subset, normal }
        })
        .collect();
    PluckerMatrix { n: table.n(), k: table.k(), rows }
}

/// Codimension of `D_L1 ∩ D_L2 ∩ D_L3`, i.e. the rank of the three stacked normals.
pub fn triple_codim(a: &Arrangement, l1: &[usize], l2: &[usize], l3: &[usize]) -> Result<usize> {
    a.require_generic()?;
    if l1 == l2 || l1 == l3 || l2 == l3 {
        return Err(Error::Domain("the three discriminantal hyperplanes must be distinct".into()));
    }
    let rows = [l1, l2, l3].iter().map(|l| alpha_l(a, l).map(|h| h.normal)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows)?.rank())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    /// Membership lists are kept for every stratum when `n` is at most this;
    /// above it only multiplicity-3 strata keep theirs.
    pub full_membership_max_n: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self { full_membership_max_n: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub multiplicity: usize,
    /// Sorted (k+1)-subsets whose `D_L` contain the stratum, when retained.
    pub members: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataCensus {
    pub n: usize,
    pub k: usize,
    pub hyperplanes: usize,
    /// multiplicity -> number of strata
    pub counts: BTreeMap<usize, usize>,
    /// Strata in canonical order: multiplicity descending, then by first members.
    pub strata: Vec<Stratum>,
    pairs_checked: usize,
}

impl StrataCensus {
    pub fn count(&self, multiplicity: usize) -> usize {
        self.counts.get(&multiplicity).copied().unwrap_or(0)
    }

    /// Every pair of hyperplanes lies in exactly one stratum.
    pub fn pair_identity_holds(&self) -> bool {
        let n = self.hyperplanes;
        let by_strata: usize = self.counts.iter().map(|(&m, &c)| c * m * (m - 1) / 2).sum();
        by_strata == n * (n.saturating_sub(1)) / 2 && self.pairs_checked == by_strata
    }

    /// Member triples of the multiplicity-3 strata.
    pub fn dependent_triples(&self) -> Vec<[Vec<usize>; 3]> {
        self.strata
            .iter()
            .filter(|s| s.multiplicity == 3)
            .filter_map(|s| s.members.as_ref())
            .map(|m| [m[0].clone(), m[1].clone(), m[2].clone()])
            .collect()
    }

    pub fn report(&self) -> CensusReport {
        CensusReport {
            n: self.n,
            k: self.k,
            hyperplanes: self.hyperplanes,
            census: self.counts.iter().map(|(m, c)| (m.to_string(), *c)).collect(),
            dependent_triples: self
                .dependent_triples()
                .into_iter()
                .map(|t| t.map(|l| l.iter().map(|i| i + 1).collect()).to_vec())
                .collect(),
        }
    }
}

/// Census JSON. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub k: usize,
    pub hyperplanes: usize,
    pub census: BTreeMap<String, usize>,
    pub dependent_triples: Vec<Vec<Vec<usize>>>,
}

pub fn strata_census(a: &Arrangement) -> Result<StrataCensus> {
    strata_census_with(a, CensusOptions::default())
}

/// Groups all pairs `{D_L, D_L'}` by the RREF of the span of their normals.
pub fn strata_census_with(a: &Arrangement, options: CensusOptions) -> Result<StrataCensus> {
    let pm = plucker_matrix(a)?;
    let count = pm.rows.len();
    let pairs: Vec<(usize, usize)> = (0..count).tuple_combinations().collect();
    let keyed: Vec<(Vec<Rational>, usize, usize)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let span = Matrix::from_rows(vec![pm.rows[i].normal.clone(), pm.rows[j].normal.clone()])
                .expect("equal row lengths");
            let (reduced, pivots) = span.rref();
            debug_assert_eq!(pivots.len(), 2, "distinct discriminantal normals are independent");
            (reduced.row_vectors().concat(), i, j)
        })
        .collect();

    let mut groups: BTreeMap<Vec<Rational>, BTreeSet<usize>> = BTreeMap::new();
    let mut pairs_per_group: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
    for (key, i, j) in keyed {
        *pairs_per_group.entry(key.clone()).or_default() += 1;
        let members = groups.entry(key).or_default();
        members.insert(i);
        members.insert(j);
    }
    let pairs_checked = groups
        .iter()
        .map(|(key, members)| {
            let m = members.len();
            // every pair inside a stratum maps to the same key
            debug_assert_eq!(pairs_per_group[key], m * (m - 1) / 2);
            pairs_per_group[key]
        })
        .sum();

    let full = a.n() <= options.full_membership_max_n;
    let mut strata: Vec<(usize, Vec<usize>)> =
        groups.into_values().map(|m| (m.len(), m.into_iter().collect())).collect();
    strata.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));

    let mut counts = BTreeMap::new();
    for (m, _) in &strata {
        *counts.entry(*m).or_insert(0) += 1;
    }
    let strata = strata
        .into_iter()
        .map(|(multiplicity, idx)| Stratum {
            multiplicity,
            members: (full || multiplicity == 3)
                .then(|| idx.iter().map(|&i| pm.rows[i].subset.clone()).collect()),
        })
        .collect();
    Ok(StrataCensus { n: a.n(), k: a.k(), hyperplanes: count, counts, strata, pairs_checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{fixture_dependent, fixture_moment, fixture_single_dependency};
    use crate::exactnum::int;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn alpha_of_dependent_fixture() {
        let h = alpha_l(&fixture_dependent(), &[0, 1, 2, 3]).unwrap();
        assert_eq!(h.normal, ints(&[2, -2, 1, 1, 0, 0]));
    }

    #[test]
    fn alpha_of_moment_fixture() {
        let a = fixture_moment(6, 3);
        let h = alpha_l(&a, &[0, 1, 2, 3]).unwrap();
        // moment-curve minors are products of differences
        let b = |i: i64, j: i64, k: i64| (j - i) * (k - i) * (k - j);
        assert_eq!(h.normal, ints(&[-b(1, 2, 3), b(0, 2, 3), -b(0, 1, 3), b(0, 1, 2), 0, 0]));
        assert_eq!(h.normal[3], int(2));
    }

    #[test]
    fn alpha_rejects_bad_subsets() {
        let a = fixture_dependent();
        assert!(matches!(alpha_l(&a, &[0, 1, 2]), Err(Error::Domain(_))));
        assert!(matches!(alpha_l(&a, &[0, 2, 1, 3]), Err(Error::Domain(_))));
        assert!(matches!(alpha_l(&a, &[0, 1, 2, 6]), Err(Error::Domain(_))));
    }

    #[test]
    fn plucker_matrix_shapes() {
        assert_eq!(plucker_matrix(&fixture_dependent()).unwrap().rows.len(), 15);
        let pm = plucker_matrix(&fixture_moment(5, 3)).unwrap();
        let m = pm.matrix();
        assert_eq!((m.rows(), m.cols()), (5, 5));
    }

    #[test]
    fn plucker_rows_match_alpha() {
        let a = fixture_moment(7, 3);
        let pm = plucker_matrix(&a).unwrap();
        for row in &pm.rows {
            assert_eq!(row, &alpha_l(&a, &row.subset).unwrap());
        }
    }

    #[test]
    fn moment_plucker_matrix_has_rank_k() {
        let m = plucker_matrix(&fixture_moment(6, 3)).unwrap().matrix();
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn census_of_fixtures() {
        // expected values cross-checked with an independent sympy rref-of-spans scan
        let dep = strata_census(&fixture_dependent()).unwrap();
        assert_eq!(dep.counts, BTreeMap::from([(5, 6), (3, 3), (2, 36)]));
        assert!(dep.pair_identity_holds());
        assert_eq!(
            dep.dependent_triples(),
            vec![
                [vec![0, 1, 2, 3], vec![0, 1, 4, 5], vec![2, 3, 4, 5]],
                [vec![0, 1, 2, 5], vec![0, 3, 4, 5], vec![1, 2, 3, 4]],
                [vec![0, 1, 3, 4], vec![0, 2, 3, 5], vec![1, 2, 4, 5]],
            ]
        );
        let single = strata_census(&fixture_single_dependency()).unwrap();
        assert_eq!(single.counts, BTreeMap::from([(5, 6), (3, 1), (2, 42)]));
        assert_eq!(single.dependent_triples(), vec![[vec![0, 1, 2, 3], vec![0, 1, 4, 5], vec![2, 3, 4, 5]]]);
        let vdm = strata_census(&fixture_moment(6, 3)).unwrap();
        assert_eq!(vdm.counts, BTreeMap::from([(5, 6), (3, 1), (2, 42)]));
        assert_eq!(vdm.dependent_triples(), vec![[vec![0, 1, 4, 5], vec![0, 2, 3, 5], vec![1, 2, 3, 4]]]);
    }

    #[test]
    fn census_four_lines_in_plane() {
        let c = strata_census(&fixture_moment(4, 2)).unwrap();
        assert_eq!(c.counts, BTreeMap::from([(4, 1)]));
        assert!(c.pair_identity_holds());
    }

    #[test]
    fn membership_cap_keeps_only_triples() {
        let opts = CensusOptions { full_membership_max_n: 5 };
        let c = strata_census_with(&fixture_dependent(), opts).unwrap();
        assert!(c.strata.iter().all(|s| s.members.is_some() == (s.multiplicity == 3)));
        assert_eq!(c.dependent_triples().len(), 3);
    }

    #[test]
    fn triple_codim_examples() {
        let t0 = ([0, 1, 2, 3], [0, 1, 4, 5], [2, 3, 4, 5]);
        assert_eq!(triple_codim(&fixture_dependent(), &t0.0, &t0.1, &t0.2).unwrap(), 2);
        assert_eq!(triple_codim(&fixture_moment(6, 3), &t0.0, &t0.1, &t0.2).unwrap(), 3);
        assert!(triple_codim(&fixture_moment(6, 3), &t0.0, &t0.0, &t0.0).is_err());
    }

    #[test]
    fn census_report_json() {
        let report = strata_census(&fixture_dependent()).unwrap().report();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["census"]["5"], 6);
        assert_eq!(json["hyperplanes"], 15);
        assert_eq!(json["dependent_triples"][0][1], serde_json::json!([1, 2, 5, 6]));
    }
}
