//! Redundant cross-checks between the independent routes to dependency.
//!
//! On a generic arrangement all of the following must agree for every good
//! partition: rank(A_T) = 2, p_T = 0, rank deficiency of the kernel stack,
//! p~ = 0, codim(D_L1 ∩ D_L2 ∩ D_L3) = 2, and for k = 3 the single-minor test
//! and the quadric. The multiplicity-3 strata must match the dependent
//! partitions one to one.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arrangement::Arrangement;
use crate::discriminantal::{strata_census, triple_codim, StrataCensus};
use crate::error::Result;
use crate::grassmannian::{check_plucker_relations, plucker_coords, quadric_scan, single_minor_criterion};
use crate::partitions::{candidate_partitions, evaluate, submatrix_a_t, GoodPartition, PartitionEvaluation};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub partitions_checked: usize,
    pub dependent: Vec<GoodPartition>,
    pub disagreements: Vec<String>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Per-partition checks: the four-way equivalence, the triple codimension and
/// (for k = 3) the all-or-nothing vanishing of the 3 x 3 minors of `A_T` and
/// the single-minor criterion.
pub fn check_partition(a: &Arrangement, p: &GoodPartition) -> Result<(PartitionEvaluation, Vec<String>)> {
    let eval = evaluate(a, p)?;
    let mut problems = Vec::new();
    let label = format!("{:?}", p.to_doc());
    if !eval.consistent() {
        problems.push(format!(
            "{label}: rank(A_T) = {}, p_T = {}, kernel rank {}/{}, p~ = {}",
            eval.rank_a_t, eval.p_t, eval.kernel_rank, eval.kernel_ambient_dim, eval.p_tilde
        ));
    }
    let [l1, l2, l3] = p.row_subsets();
    let codim = triple_codim(a, &l1, &l2, &l3)?;
    if (codim == 2) != eval.dependent() {
        problems.push(format!("{label}: triple codimension {codim} disagrees with dependency"));
    }
    if a.k() == 3 {
        let at = submatrix_a_t(a, p)?;
        let support = p.support();
        let zeros = support
            .iter()
            .copied()
            .combinations(3)
            .filter(|cols| at.select(&[0, 1, 2], cols).det().map(|d| d.is_zero()).unwrap_or(false))
            .count();
        if zeros != 0 && zeros != 20 {
            problems.push(format!("{label}: {zeros} of 20 minors of A_T vanish"));
        }
        if single_minor_criterion(a, p)? != (eval.rank_a_t == 2) {
            problems.push(format!("{label}: single-minor criterion disagrees with rank"));
        }
    }
    Ok((eval, problems))
}

/// Compares the multiplicity-3 strata with the dependent partitions.
pub fn census_matches(census: &StrataCensus, dependent: &[GoodPartition]) -> Vec<String> {
    let mut problems = Vec::new();
    if !census.pair_identity_holds() {
        problems.push("pairs of discriminantal hyperplanes are not partitioned by the strata".into());
    }
    let expected = binomial(census.n, census.k + 2);
    if census.count(census.k + 2) != expected {
        problems.push(format!(
            "{} strata of multiplicity k + 2, expected {expected}",
            census.count(census.k + 2)
        ));
    }
    let from_census: BTreeSet<Vec<Vec<usize>>> =
        census.dependent_triples().into_iter().map(|t| t.to_vec()).collect();
    let from_partitions: BTreeSet<Vec<Vec<usize>>> =
        dependent.iter().map(|p| p.row_subsets().to_vec()).collect();
    if census.count(3) != dependent.len() || from_census != from_partitions {
        problems.push(format!(
            "{} multiplicity-3 strata but {} dependent partitions",
            census.count(3),
            dependent.len()
        ));
    }
    problems
}

pub fn cross_check(a: &Arrangement) -> Result<CrossCheckReport> {
    a.require_generic()?;
    let candidates = candidate_partitions(a.n(), a.k());
    let results: Vec<Result<(PartitionEvaluation, Vec<String>)>> =
        candidates.par_iter().map(|p| check_partition(a, p)).collect();
    let mut report = CrossCheckReport { partitions_checked: candidates.len(), ..Default::default() };
    for r in results {
        let (eval, problems) = r?;
        if eval.dependent() {
            report.dependent.push(eval.partition.clone());
        }
        report.disagreements.extend(problems);
    }

    let relations = check_plucker_relations(&plucker_coords(a));
    if let Some(v) = relations.violation {
        report.disagreements.push(format!("Plücker relation {:?} | {:?} = {}", v.head, v.tail, v.value));
    }

    if a.k() == 3 && a.n() >= 6 {
        for entry in quadric_scan(a)?.entries {
            let dependent = report.dependent.contains(&entry.partition());
            if entry.vanishes() != dependent {
                report.disagreements.push(format!(
                    "quadric at pairing {:?} {} but partition is {}",
                    entry.pairing,
                    if entry.vanishes() { "vanishes" } else { "does not vanish" },
                    if dependent { "dependent" } else { "independent" }
                ));
            }
        }
    }

    let census = strata_census(a)?;
    report.disagreements.extend(census_matches(&census, &report.dependent));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{fixture_dependent, fixture_moment};

    #[test]
    fn fixtures_pass() {
        let dep = cross_check(&fixture_dependent()).unwrap();
        assert!(dep.passed(), "{:?}", dep.disagreements);
        assert_eq!(dep.dependent.len(), 3);
        assert_eq!(dep.partitions_checked, 15);
        let vdm = cross_check(&fixture_moment(7, 3)).unwrap();
        assert!(vdm.passed(), "{:?}", vdm.disagreements);
        assert_eq!(vdm.dependent.len(), 3);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 5), 6);
        assert_eq!(binomial(7, 4), 35);
        assert_eq!(binomial(3, 5), 0);
    }
}
