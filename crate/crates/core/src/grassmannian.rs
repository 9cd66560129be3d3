//! Plücker coordinates, Plücker relations, and the quadrics of `Gr(3, n)`
//! whose points are the arrangements with a dependent good 6-partition.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, sort_sign, Rational};
use crate::partitions::{pairings, submatrix_a_t, GoodPartition};

/// Maximal minors `beta_I` of the `n x k` normal matrix, keyed by sorted 0-based `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluckerTable {
    n: usize,
    k: usize,
    beta: BTreeMap<Vec<usize>, Rational>,
}

impl PluckerTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `beta_I` for a sorted k-subset.
    pub fn get(&self, sorted: &[usize]) -> &Rational {
        &self.beta[sorted]
    }

    /// `beta` of an arbitrary index tuple: the sorted value times the sign of the
    /// sorting permutation, zero when an index repeats.
    pub fn signed(&self, idx: &[usize]) -> Rational {
        match sort_sign(idx) {
            None => Rational::zero(),
            Some((sorted, negated)) => {
                let v = self.beta[&sorted].clone();
                if negated {
                    -v
                } else {
                    v
                }
            }
        }
    }

    pub fn set(&mut self, sorted: &[usize], value: Rational) -> Result<()> {
        match self.beta.get_mut(sorted) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::Domain(format!("{sorted:?} is not a sorted {}-subset", self.k))),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.beta.iter()
    }

    /// Subsets with `beta_I = 0`; empty exactly when the arrangement is generic.
    pub fn zero_entries(&self) -> Vec<Vec<usize>> {
        self.beta.iter().filter(|(_, v)| v.is_zero()).map(|(i, _)| i.clone()).collect()
    }
}

/// Plücker coordinates of the arrangement. Non-generic input yields zero entries.
pub fn plucker_coords(a: &Arrangement) -> PluckerTable {
    let beta = (0..a.n())
        .combinations(a.k())
        .map(|subset| {
            let value = a.subset_det(&subset);
            (subset, value)
        })
        .collect();
    PluckerTable { n: a.n(), k: a.k(), beta }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationViolation {
    /// The (k-1)-tuple `i` and (k+1)-tuple `j`, 0-based.
    pub head: Vec<usize>,
    pub tail: Vec<usize>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub checked: usize,
    pub violation: Option<RelationViolation>,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// `sum_l (-1)^l beta(i_1..i_{k-1}, j_l) beta(j_0..^j_l..j_k)`.
pub fn plucker_relation(t: &PluckerTable, head: &[usize], tail: &[usize]) -> Rational {
    let mut sum = Rational::zero();
    for l in 0..tail.len() {
        let left: Vec<usize> = head.iter().copied().chain([tail[l]]).collect();
        let right: Vec<usize> = tail.iter().enumerate().filter(|&(m, _)| m != l).map(|(_, &x)| x).collect();
        let term = t.signed(&left) * t.signed(&right);
        if l % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// Evaluates every relation instance. Reordering either tuple only flips the
/// sign of a relation, so sorted tuples cover all instances.
pub fn check_plucker_relations(t: &PluckerTable) -> RelationCheck {
    let mut checked = 0;
    for head in (0..t.n).combinations(t.k - 1) {
        for tail in (0..t.n).combinations(t.k + 1) {
            checked += 1;
            let value = plucker_relation(t, &head, &tail);
            if !value.is_zero() {
                return RelationCheck { checked, violation: Some(RelationViolation { head, tail, value }) };
            }
        }
    }
    RelationCheck { checked, violation: None }
}

/// `beta_{i1 i3 i4} beta_{i2 i5 i6} - beta_{i2 i3 i4} beta_{i1 i5 i6}` for the pairing
/// `((i1, i2), (i3, i4), (i5, i6))`.
pub fn quadric_value(t: &PluckerTable, pairing: [[usize; 2]; 3]) -> Result<Rational> {
    if t.k != 3 {
        return Err(Error::Domain(format!("quadrics are defined for k = 3, got k = {}", t.k)));
    }
    let [[i1, i2], [i3, i4], [i5, i6]] = pairing;
    let all = [i1, i2, i3, i4, i5, i6];
    if all.iter().any(|&i| i >= t.n) || all.iter().sorted().dedup().count() != 6 {
        return Err(Error::Domain(format!("pairing {pairing:?} needs six distinct indices below {}", t.n)));
    }
    Ok(t.signed(&[i1, i3, i4]) * t.signed(&[i2, i5, i6]) - t.signed(&[i2, i3, i4]) * t.signed(&[i1, i5, i6]))
}

/// Decides rank(A_T) = 2 from a single 3 x 3 minor: the lexicographically first
/// column triple of the support that is not structurally zero.
pub fn single_minor_criterion(a: &Arrangement, p: &GoodPartition) -> Result<bool> {
    if a.k() != 3 {
        return Err(Error::Domain(format!("single-minor criterion needs k = 3, got k = {}", a.k())));
    }
    a.require_generic()?;
    let at = submatrix_a_t(a, p)?;
    let rows = p.row_subsets();
    let structural =
        |cols: &[usize]| (0..3).permutations(3).any(|perm| (0..3).all(|r| rows[r].contains(&cols[perm[r]])));
    let cols = p
        .support()
        .into_iter()
        .combinations(3)
        .find(|c| structural(c))
        .ok_or_else(|| Error::Domain("no structurally nonzero minor".into()))?;
    Ok(at.select(&[0, 1, 2], &cols).det()?.is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricEntry {
    pub support: Vec<usize>,
    pub pairing: [[usize; 2]; 3],
    pub value: Rational,
}

impl QuadricEntry {
    pub fn vanishes(&self) -> bool {
        self.value.is_zero()
    }

    /// The good partition `{I1 ∪ I2, I1 ∪ I3, I2 ∪ I3}` this entry tests.
    pub fn partition(&self) -> GoodPartition {
        let [a, b, c] = self.pairing;
        GoodPartition::from_pairs([&a, &b, &c], Vec::new()).expect("pairing of six distinct indices")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricReport {
    pub entries: Vec<QuadricEntry>,
}

impl QuadricReport {
    pub fn vanishing(&self) -> impl Iterator<Item = &QuadricEntry> {
        self.entries.iter().filter(|e| e.vanishes())
    }

    pub fn to_doc(&self) -> QuadricReportDoc {
        let one = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
        let entries: Vec<QuadricEntryDoc> = self
            .entries
            .iter()
            .map(|e| QuadricEntryDoc {
                support: one(&e.support),
                pairing: e.pairing.iter().map(|p| one(p)).collect(),
                value: format_rational(&e.value),
                vanishes: e.vanishes(),
            })
            .collect();
        let vanishing = entries.iter().filter(|e| e.vanishes).count();
        QuadricReportDoc { summary: QuadricSummary { checked: entries.len(), vanishing }, entries }
    }
}

/// Quadric report JSON, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricReportDoc {
    pub entries: Vec<QuadricEntryDoc>,
    pub summary: QuadricSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricEntryDoc {
    pub support: Vec<usize>,
    pub pairing: Vec<Vec<usize>>,
    pub value: String,
    pub vanishes: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricSummary {
    pub checked: usize,
    pub vanishing: usize,
}

/// Quadric values for all 15 pairings of every 6-subset.
pub fn quadric_scan(a: &Arrangement) -> Result<QuadricReport> {
    let supports: Vec<Vec<usize>> = (0..a.n()).combinations(6).collect();
    scan_supports(a, &supports)
}

/// Quadric values for the 15 pairings of one 6-subset.
pub fn quadric_scan_support(a: &Arrangement, support: &[usize]) -> Result<QuadricReport> {
    let sorted: Vec<usize> = support.iter().copied().sorted().dedup().collect();
    if sorted.len() != 6 || sorted.iter().any(|&i| i >= a.n()) {
        return Err(Error::Domain(format!("support must be 6 distinct indices below {}", a.n())));
    }
    scan_supports(a, &[sorted])
}

fn scan_supports(a: &Arrangement, supports: &[Vec<usize>]) -> Result<QuadricReport> {
    if a.k() != 3 {
        return Err(Error::Domain(format!("quadric scan needs k = 3, got k = {}", a.k())));
    }
    a.require_generic()?;
    let table = plucker_coords(a);
    let per_support: Vec<Result<Vec<QuadricEntry>>> = supports
        .par_iter()
        .map(|support| {
            pairings(support, 2)
                .into_iter()
                .map(|[x, y, z]| {
                    let pairing = [[x[0], x[1]], [y[0], y[1]], [z[0], z[1]]];
                    let value = quadric_value(&table, pairing)?;
                    Ok(QuadricEntry { support: support.clone(), pairing, value })
                })
                .collect()
        })
        .collect();
    let mut entries = Vec::new();
    for chunk in per_support {
        entries.extend(chunk?);
    }
    Ok(QuadricReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{fixture_dependent, fixture_moment};
    use crate::exactnum::int;
    use crate::partitions::enumerate_good_partitions;

    fn t0() -> GoodPartition {
        GoodPartition::from_pairs([&[0, 1], &[2, 3], &[4, 5]], vec![]).unwrap()
    }

    #[test]
    fn betas_of_dependent_fixture() {
        let t = plucker_coords(&fixture_dependent());
        assert_eq!(t.get(&[0, 2, 3]), &int(-2));
        assert_eq!(t.get(&[1, 2, 3]), &int(-2));
        assert_eq!(t.get(&[0, 4, 5]), &int(3));
        assert_eq!(t.get(&[1, 4, 5]), &int(3));
        assert!(t.zero_entries().is_empty());
    }

    #[test]
    fn betas_of_moment_fixture() {
        let t = plucker_coords(&fixture_moment(6, 3));
        assert_eq!(t.get(&[0, 1, 2]), &int(2));
        assert_eq!(t.get(&[0, 2, 3]), &int(6));
        assert_eq!(t.get(&[1, 4, 5]), &int(12));
        assert_eq!(t.get(&[0, 4, 5]), &int(20));
        assert_eq!(t.get(&[1, 2, 3]), &int(2));
    }

    #[test]
    fn signed_lookup() {
        let t = plucker_coords(&fixture_moment(6, 3));
        assert_eq!(t.signed(&[1, 0, 2]), int(-2));
        assert_eq!(t.signed(&[2, 0, 1]), int(2));
        assert_eq!(t.signed(&[0, 0, 1]), int(0));
    }

    #[test]
    fn relations_hold_on_fixtures() {
        for a in [fixture_dependent(), fixture_moment(6, 3), fixture_moment(7, 4)] {
            let check = check_plucker_relations(&plucker_coords(&a));
            assert!(check.holds(), "{:?}", check.violation);
        }
    }

    #[test]
    fn perturbed_table_violates_relations() {
        let mut t = plucker_coords(&fixture_moment(6, 3));
        t.set(&[0, 1, 2], int(3)).unwrap();
        let check = check_plucker_relations(&t);
        let v = check.violation.expect("perturbation detected");
        assert_eq!(plucker_relation(&t, &v.head, &v.tail), v.value);
        // the relation with i = (1,2), j = (4,3,5,6) breaks as well
        assert!(!plucker_relation(&t, &[0, 1], &[3, 2, 4, 5]).is_zero());
        assert!(t.set(&[2, 1, 0], int(1)).is_err());
    }

    #[test]
    fn quadric_values_of_fixtures() {
        let pairing = [[0, 1], [2, 3], [4, 5]];
        assert_eq!(quadric_value(&plucker_coords(&fixture_dependent()), pairing).unwrap(), int(0));
        assert_eq!(quadric_value(&plucker_coords(&fixture_moment(6, 3)), pairing).unwrap(), int(32));
        let t = plucker_coords(&fixture_moment(6, 3));
        assert!(quadric_value(&t, [[0, 1], [1, 3], [4, 5]]).is_err());
    }

    #[test]
    fn single_minor_examples() {
        assert!(single_minor_criterion(&fixture_dependent(), &t0()).unwrap());
        assert!(!single_minor_criterion(&fixture_moment(6, 3), &t0()).unwrap());
        let mut rows = fixture_dependent().normals().to_vec();
        rows[3] = rows[2].clone();
        let bad = Arrangement::new(3, rows).unwrap();
        assert!(matches!(single_minor_criterion(&bad, &t0()), Err(Error::NotGeneric { .. })));
    }

    #[test]
    fn scans_of_fixtures() {
        let dep = quadric_scan(&fixture_dependent()).unwrap();
        assert_eq!(dep.entries.len(), 15);
        let vanishing: Vec<_> = dep.vanishing().map(|e| e.pairing).collect();
        assert_eq!(
            vanishing,
            vec![[[0, 1], [2, 3], [4, 5]], [[0, 3], [1, 4], [2, 5]], [[0, 5], [1, 2], [3, 4]]]
        );
        assert_eq!(dep.vanishing().next().unwrap().partition(), t0());

        // the moment curve is symmetric under t -> 5 - t, which pairs 1-6, 2-5, 3-4
        let vdm: Vec<_> =
            quadric_scan(&fixture_moment(6, 3)).unwrap().vanishing().map(|e| e.pairing).collect();
        assert_eq!(vdm, vec![[[0, 5], [1, 4], [2, 3]]]);
        let seven = quadric_scan(&fixture_moment(7, 3)).unwrap();
        assert_eq!(seven.entries.len(), 105);
        assert_eq!(seven.vanishing().count(), 3);
    }

    #[test]
    fn scan_pairings_cover_all_partitions() {
        let report = quadric_scan(&fixture_moment(7, 3)).unwrap();
        let mut from_scan: Vec<GoodPartition> = report.entries.iter().map(QuadricEntry::partition).collect();
        from_scan.sort();
        assert_eq!(from_scan, enumerate_good_partitions(7, 2, None).unwrap());
    }

    #[test]
    fn scan_single_support() {
        let r = quadric_scan_support(&fixture_moment(8, 3), &[7, 0, 1, 2, 3, 4]).unwrap();
        assert_eq!(r.entries.len(), 15);
        assert!(r.entries.iter().all(|e| e.support == vec![0, 1, 2, 3, 4, 7]));
        assert!(quadric_scan_support(&fixture_moment(8, 3), &[0, 1, 2]).is_err());
    }

    #[test]
    fn report_json_shape() {
        let doc = quadric_scan(&fixture_moment(6, 3)).unwrap().to_doc();
        assert_eq!(doc.summary, QuadricSummary { checked: 15, vanishing: 1 });
        let json = serde_json::to_value(&doc).unwrap();
        assert_eq!(json["entries"][0]["pairing"], serde_json::json!([[1, 2], [3, 4], [5, 6]]));
        assert_eq!(json["entries"][0]["value"], "32");
    }
}
