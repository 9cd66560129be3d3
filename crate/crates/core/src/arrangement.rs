//! Generic hyperplane arrangements described by their normal vectors.
//!
//! Only the normals are stored. They fix the trace at infinity, which is all
//! the discriminantal arrangement depends on.

use std::sync::OnceLock;

use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, Matrix, Rational};

#[derive(Debug, Clone)]
pub struct Arrangement {
    k: usize,
    normals: Vec<Vec<Rational>>,
    labels: Option<Vec<String>>,
    // first dependent k-subset, or None when generic
    degenerate: OnceLock<Option<Vec<usize>>>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.normals == other.normals && self.labels == other.labels
    }
}

impl Eq for Arrangement {}

/// On-disk form of an arrangement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrangementDoc {
    pub k: usize,
    pub normals: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl Arrangement {
    /// Validates shape: `n > k >= 2`, rows of length `k`, no zero normal.
    pub fn new(k: usize, normals: Vec<Vec<Rational>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("dimension k = {k} must be at least 2")));
        }
        if normals.len() <= k {
            return Err(Error::Domain(format!(
                "need more hyperplanes than the dimension (n = {}, k = {k})",
                normals.len()
            )));
        }
        for (i, row) in normals.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Parse {
                    location: format!("normals[{i}]"),
                    message: format!("expected {k} entries, found {}", row.len()),
                });
            }
            if row.iter().all(Zero::is_zero) {
                return Err(Error::Domain(format!("normal {} is the zero vector", i + 1)));
            }
        }
        Ok(Self { k, normals, labels: None, degenerate: OnceLock::new() })
    }

    pub fn from_i64(k: usize, normals: &[&[i64]]) -> Result<Self> {
        let rows = normals.iter().map(|r| r.iter().map(|&x| crate::exactnum::int(x)).collect());
        Self::new(k, rows.collect())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::Parse {
                location: "labels".into(),
                message: format!("expected {} labels, found {}", self.n(), labels.len()),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.normals.len()
    }

    pub fn normals(&self) -> &[Vec<Rational>] {
        &self.normals
    }

    pub fn normal(&self, i: usize) -> &[Rational] {
        &self.normals[i]
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => (i + 1).to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The `n x k` matrix with the normals as rows.
    pub fn normal_matrix(&self) -> Matrix {
        Matrix::from_rows(self.normals.clone()).expect("rows validated at construction")
    }

    /// Determinant of the normals indexed by `subset`, taken in the given order.
    pub fn subset_det(&self, subset: &[usize]) -> Rational {
        let rows = subset.iter().map(|&i| self.normals[i].clone()).collect();
        Matrix::from_rows(rows).and_then(|m| m.det()).expect("k normals of length k form a square matrix")
    }

    /// True iff every k-subset of normals is linearly independent.
    pub fn is_generic(&self) -> bool {
        self.first_degenerate_subset().is_none()
    }

    /// Lexicographically first k-subset (0-based) whose normals are dependent.
    pub fn first_degenerate_subset(&self) -> Option<&[usize]> {
        self.degenerate
            .get_or_init(|| {
                (0..self.n()).combinations(self.k).find(|subset| self.subset_det(subset).is_zero())
            })
            .as_deref()
    }

    pub fn require_generic(&self) -> Result<()> {
        match self.first_degenerate_subset() {
            None => Ok(()),
            Some(subset) => Err(Error::NotGeneric { subset: subset.to_vec() }),
        }
    }

    /// Relabels hyperplanes: hyperplane `i` of the result is hyperplane `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        if perm.len() != n || !perm.iter().copied().sorted().eq(0..n) {
            return Err(Error::Domain("not a permutation of the hyperplanes".into()));
        }
        let normals = perm.iter().map(|&p| self.normals[p].clone()).collect();
        let mut out = Self::new(self.k, normals)?;
        if let Some(l) = &self.labels {
            out.labels = Some(perm.iter().map(|&p| l[p].clone()).collect());
        }
        Ok(out)
    }

    /// Multiplies normal `i` by a nonzero rational.
    pub fn rescaled(&self, i: usize, factor: &Rational) -> Result<Self> {
        if factor.is_zero() {
            return Err(Error::Domain("rescaling factor must be nonzero".into()));
        }
        let mut out = self.clone();
        out.normals[i] = out.normals[i].iter().map(|x| x * factor).collect();
        out.degenerate = OnceLock::new();
        Ok(out)
    }

    pub fn to_doc(&self) -> ArrangementDoc {
        ArrangementDoc {
            k: self.k,
            normals: self.normals.iter().map(|r| r.iter().map(format_rational).collect()).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self.to_doc()).expect("arrangement serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("arrangement serializes")
    }
}

/// Parses and validates an arrangement document. Unknown top-level keys are ignored.
pub fn parse_arrangement(document: &str) -> Result<Arrangement> {
    let value: Value = serde_json::from_str(document).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    arrangement_from_value(&value)
}

pub fn arrangement_from_value(value: &Value) -> Result<Arrangement> {
    let parse_err = |location: &str, message: &str| Error::Parse {
        location: location.to_string(),
        message: message.to_string(),
    };
    let obj = value.as_object().ok_or_else(|| parse_err("$", "expected a JSON object"))?;
    let k = obj
        .get("k")
        .ok_or_else(|| parse_err("k", "missing field"))?
        .as_u64()
        .ok_or_else(|| parse_err("k", "expected a non-negative integer"))? as usize;
    let rows = obj
        .get("normals")
        .ok_or_else(|| parse_err("normals", "missing field"))?
        .as_array()
        .ok_or_else(|| parse_err("normals", "expected an array of rows"))?;
    let mut normals = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| parse_err(&format!("normals[{i}]"), "expected an array"))?;
        if row.len() != k {
            return Err(parse_err(
                &format!("normals[{i}]"),
                &format!("expected {k} entries, found {}", row.len()),
            ));
        }
        let mut parsed = Vec::with_capacity(k);
        for (j, cell) in row.iter().enumerate() {
            let loc = format!("normals[{i}][{j}]");
            let text = cell
                .as_str()
                .ok_or_else(|| parse_err(&loc, "expected a rational string such as \"-3/4\""))?;
            let q =
                parse_rational(text).ok_or_else(|| parse_err(&loc, &format!("invalid rational {text:?}")))?;
            parsed.push(q);
        }
        normals.push(parsed);
    }
    let mut arrangement = Arrangement::new(k, normals)?;
    if let Some(labels) = obj.get("labels") {
        if !labels.is_null() {
            let labels = labels
                .as_array()
                .ok_or_else(|| parse_err("labels", "expected an array of strings"))?
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    l.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| parse_err(&format!("labels[{i}]"), "expected a string"))
                })
                .collect::<Result<Vec<_>>>()?;
            arrangement = arrangement.with_labels(labels)?;
        }
    }
    Ok(arrangement)
}

/// Fixture with dependent good 6-partitions `{1234, 1256, 3456}`,
/// `{1236, 1456, 2345}` and `{1245, 1346, 2356}`.
pub fn fixture_dependent() -> Arrangement {
    Arrangement::from_i64(3, &[&[0, 1, 0], &[0, 1, 1], &[1, 0, 1], &[-1, 0, 1], &[1, -1, 2], &[2, -2, 1]])
        .expect("valid fixture")
}

/// Like [`fixture_dependent`] but with `{1234, 1256, 3456}` as the only
/// dependent good 6-partition.
pub fn fixture_single_dependency() -> Arrangement {
    Arrangement::from_i64(3, &[&[0, 1, 0], &[0, 1, 1], &[1, 0, 1], &[-1, 0, 1], &[3, -3, 2], &[2, -2, -1]])
        .expect("valid fixture")
}

/// Moment-curve fixture: normal `i` is `(1, t, t^2, ..)` with `t = i`.
pub fn fixture_moment(n: usize, k: usize) -> Arrangement {
    let normals =
        (0..n).map(|t| (0..k).map(|p| crate::exactnum::int((t as i64).pow(p as u32))).collect()).collect();
    Arrangement::new(k, normals).expect("valid fixture")
}
