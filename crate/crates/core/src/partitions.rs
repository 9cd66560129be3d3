//! Good 3s-partitions and the dependency predicates attached to them.
//!
//! For a good partition `{L1, L2, L3}` with tail `T` the three discriminantal
//! rows are `alpha_{Li ∪ T}`. Dependency is tested in two independent ways:
//! through the rank of those rows (and the sum of squared minors `p_T`), and
//! through the kernels `{v : v·alpha_t = 0, t ∈ (Li ∩ Lj) ∪ T}` (and the
//! reduced sum of squares `p~`).

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::discriminantal::alpha_l;
use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Rational};

/// Canonical good 3s-partition. Indices are 0-based; blocks sorted, triple sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GoodPartition {
    s: usize,
    blocks: [Vec<usize>; 3],
    tail: Vec<usize>,
}

/// Partition JSON, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub s: usize,
    pub blocks: Vec<Vec<usize>>,
    #[serde(default)]
    pub tail: Vec<usize>,
}

impl GoodPartition {
    pub fn new(s: usize, blocks: [Vec<usize>; 3], tail: Vec<usize>) -> Result<Self> {
        if s == 0 {
            return Err(Error::Domain("block half-size s must be positive".into()));
        }
        let mut blocks = blocks.map(|b| b.into_iter().sorted().collect::<Vec<_>>());
        for b in &blocks {
            if b.len() != 2 * s || b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Domain(format!("block {b:?} must hold {} distinct indices", 2 * s)));
            }
        }
        blocks.sort();
        let [l1, l2, l3] = &blocks;
        for (x, y) in [(l1, l2), (l1, l3), (l2, l3)] {
            if intersect(x, y).len() != s {
                return Err(Error::Domain(format!("blocks {x:?} and {y:?} must share exactly {s} indices")));
            }
        }
        if l1.iter().any(|i| l2.contains(i) && l3.contains(i)) {
            return Err(Error::Domain("the three blocks must have empty common intersection".into()));
        }
        let tail: Vec<usize> = tail.into_iter().sorted().collect();
        if tail.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("tail indices must be distinct".into()));
        }
        if tail.iter().any(|t| l1.contains(t) || l2.contains(t) || l3.contains(t)) {
            return Err(Error::Domain("tail must be disjoint from the blocks".into()));
        }
        Ok(Self { s, blocks, tail })
    }

    /// Builds the partition with `L1 = I1 ∪ I2`, `L2 = I1 ∪ I3`, `L3 = I2 ∪ I3`.
    pub fn from_pairs(pairs: [&[usize]; 3], tail: Vec<usize>) -> Result<Self> {
        let s = pairs[0].len();
        if pairs.iter().any(|p| p.len() != s) {
            return Err(Error::Domain("pair blocks must have equal size".into()));
        }
        let union = |a: &[usize], b: &[usize]| a.iter().chain(b).copied().collect::<Vec<_>>();
        Self::new(s, [union(pairs[0], pairs[1]), union(pairs[0], pairs[2]), union(pairs[1], pairs[2])], tail)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn blocks(&self) -> &[Vec<usize>; 3] {
        &self.blocks
    }

    pub fn tail(&self) -> &[usize] {
        &self.tail
    }

    /// `(L1 ∩ L2, L1 ∩ L3, L2 ∩ L3)`.
    pub fn pairs(&self) -> [Vec<usize>; 3] {
        let [l1, l2, l3] = &self.blocks;
        [intersect(l1, l2), intersect(l1, l3), intersect(l2, l3)]
    }

    pub fn support(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// The (k+1)-subsets `Li ∪ T` indexing the rows of `A_T`.
    pub fn row_subsets(&self) -> [Vec<usize>; 3] {
        self.blocks.clone().map(|b| b.into_iter().chain(self.tail.iter().copied()).sorted().collect())
    }

    pub fn max_index(&self) -> usize {
        self.blocks.iter().flatten().chain(&self.tail).copied().max().unwrap_or(0)
    }

    /// Applies a relabeling: index `i` becomes `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let map = |v: &Vec<usize>| v.iter().map(|&i| perm[i]).collect::<Vec<_>>();
        Self::new(self.s, self.blocks.each_ref().map(map), map(&self.tail))
    }

    pub fn to_doc(&self) -> PartitionDoc {
        let one = |v: &Vec<usize>| v.iter().map(|i| i + 1).collect::<Vec<_>>();
        PartitionDoc { s: self.s, blocks: self.blocks.iter().map(one).collect(), tail: one(&self.tail) }
    }

    pub fn from_doc(doc: &PartitionDoc) -> Result<Self> {
        let zero = |v: &Vec<usize>| -> Result<Vec<usize>> {
            v.iter()
                .map(|&i| i.checked_sub(1).ok_or_else(|| Error::Domain("indices are 1-based".into())))
                .collect()
        };
        let blocks: Vec<Vec<usize>> = doc.blocks.iter().map(zero).collect::<Result<_>>()?;
        let blocks: [Vec<usize>; 3] = blocks
            .try_into()
            .map_err(|_| Error::Domain("a good partition has exactly three blocks".into()))?;
        Self::new(doc.s, blocks, zero(&doc.tail)?)
    }

    fn check_shape(&self, a: &Arrangement) -> Result<()> {
        if self.max_index() >= a.n() {
            return Err(Error::Domain(format!("partition index out of range for n = {}", a.n())));
        }
        if a.k() + 1 != 2 * self.s + self.tail.len() {
            return Err(Error::Shape(format!(
                "k + 1 = {} but 2s + |tail| = {}",
                a.k() + 1,
                2 * self.s + self.tail.len()
            )));
        }
        Ok(())
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

/// Unordered splittings of `items` into three blocks of size `s`, each block
/// led by its smallest element.
pub(crate) fn pairings(items: &[usize], s: usize) -> Vec<[Vec<usize>; 3]> {
    let mut out = Vec::new();
    let (first, rest) = items.split_first().expect("nonempty support");
    for mates in rest.iter().copied().combinations(s - 1) {
        let b1: Vec<usize> = std::iter::once(*first).chain(mates.iter().copied()).collect();
        let left: Vec<usize> = rest.iter().copied().filter(|x| !mates.contains(x)).collect();
        let (second, rest2) = left.split_first().expect("2s elements remain");
        for mates2 in rest2.iter().copied().combinations(s - 1) {
            let b2: Vec<usize> = std::iter::once(*second).chain(mates2.iter().copied()).collect();
            let b3: Vec<usize> = rest2.iter().copied().filter(|x| !mates2.contains(x)).collect();
            out.push([b1.clone(), b2, b3]);
        }
    }
    out
}

/// All good 3s-partitions of `[n]` (or of the given support), tail empty, sorted.
pub fn enumerate_good_partitions(
    n: usize,
    s: usize,
    support: Option<&[usize]>,
) -> Result<Vec<GoodPartition>> {
    if s == 0 || 3 * s > n {
        return Err(Error::Domain(format!("good 3s-partitions need 0 < 3s <= n (s = {s}, n = {n})")));
    }
    let supports: Vec<Vec<usize>> = match support {
        Some(sup) => {
            let sorted: Vec<usize> = sup.iter().copied().sorted().dedup().collect();
            if sorted.len() != 3 * s || sorted.iter().any(|&i| i >= n) {
                return Err(Error::Domain(format!("support must be {} distinct indices below {n}", 3 * s)));
            }
            vec![sorted]
        }
        None => (0..n).combinations(3 * s).collect(),
    };
    let mut out = Vec::new();
    for sup in supports {
        for [i1, i2, i3] in pairings(&sup, s) {
            out.push(GoodPartition::from_pairs([&i1, &i2, &i3], Vec::new())?);
        }
    }
    out.sort();
    Ok(out)
}

/// The 3 x n matrix with rows `alpha_{Li ∪ T}`.
pub fn submatrix_a_t(a: &Arrangement, p: &GoodPartition) -> Result<Matrix> {
    p.check_shape(a)?;
    a.require_generic()?;
    let rows = p.row_subsets().iter().map(|l| alpha_l(a, l).map(|h| h.normal)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// Sum of the squared 3 x 3 minors of `A_T`.
pub fn p_t(a: &Arrangement, p: &GoodPartition) -> Result<Rational> {
    let m = submatrix_a_t(a, p)?;
    Ok(sum_of_squares(&m.minors(3)?.into_iter().map(|x| x.value).collect::<Vec<_>>()))
}

fn sum_of_squares(values: &[Rational]) -> Rational {
    values.iter().fold(Rational::zero(), |acc, v| acc + v * v)
}

/// Bases of `{v : v·alpha_t = 0 for t ∈ (Li ∩ Lj) ∪ T}` for the pairs (1,2), (1,3), (2,3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelTriple {
    pub k: usize,
    pub tail_len: usize,
    pub bases: [Vec<Vec<Rational>>; 3],
}

impl KernelTriple {
    /// The `3(k - s - t) x k` matrix of all basis vectors.
    pub fn stacked(&self) -> Matrix {
        let rows = self.bases.iter().flatten().cloned().collect();
        Matrix::from_rows_with_cols(rows, self.k).expect("basis vectors have length k")
    }

    /// Dimension of the ambient space the kernels live in, `k - |T|`.
    pub fn ambient_dim(&self) -> usize {
        self.k - self.tail_len
    }
}

pub fn kernel_triple(a: &Arrangement, p: &GoodPartition) -> Result<KernelTriple> {
    p.check_shape(a).map_err(|e| match e {
        Error::Shape(msg) => Error::Domain(msg),
        other => other,
    })?;
    a.require_generic()?;
    let k = a.k();
    let t = p.tail().len();
    if p.s() + t >= k {
        return Err(Error::Domain(format!(
            "kernel dimension k - s - t = {} is not positive",
            k as isize - (p.s() + t) as isize
        )));
    }
    let dim = k - p.s() - t;
    let bases = p.pairs().map(|pair| {
        let rows: Vec<Vec<Rational>> = pair.iter().chain(p.tail()).map(|&i| a.normal(i).to_vec()).collect();
        Matrix::from_rows(rows).expect("normals share length k").nullspace()
    });
    if bases.iter().any(|b| b.len() != dim) {
        // only possible when the constraint normals are dependent
        return Err(Error::Domain("kernel dimension mismatch: constraint normals are dependent".into()));
    }
    Ok(KernelTriple { k, tail_len: t, bases })
}

/// Sum of squared maximal minors of the stacked kernel matrix.
///
/// Maximal means `(k - |T|) x (k - |T|)`: the kernels lie in `W_T`, so larger
/// minors vanish identically. With an empty tail these are the `k x k` minors.
pub fn p_tilde(a: &Arrangement, p: &GoodPartition) -> Result<Rational> {
    let kt = kernel_triple(a, p)?;
    Ok(p_tilde_of(&kt))
}

pub fn p_tilde_of(kt: &KernelTriple) -> Rational {
    let m = kt.stacked();
    let size = kt.ambient_dim();
    if m.rows() < size {
        return Rational::zero();
    }
    let minors = m.minors(size).expect("size within bounds");
    sum_of_squares(&minors.into_iter().map(|x| x.value).collect::<Vec<_>>())
}

/// True iff the three kernels span a proper subspace of `W_T`.
pub fn is_dependent(a: &Arrangement, p: &GoodPartition) -> Result<bool> {
    let kt = kernel_triple(a, p)?;
    Ok(kt.stacked().rank() < kt.ambient_dim())
}

/// Candidate partitions for a k-dimensional arrangement: every `s >= 2` with
/// `2s <= k + 1` and tails of size `k + 1 - 2s` disjoint from the support.
pub fn candidate_partitions(n: usize, k: usize) -> Vec<GoodPartition> {
    let mut out = Vec::new();
    for s in 2..=k.div_ceil(2) {
        let t = k + 1 - 2 * s;
        if 3 * s + t > n {
            continue;
        }
        let base = enumerate_good_partitions(n, s, None).expect("3s <= n");
        for p in base {
            let support = p.support();
            let rest: Vec<usize> = (0..n).filter(|i| !support.contains(i)).collect();
            for tail in rest.into_iter().combinations(t) {
                out.push(GoodPartition::new(s, p.blocks().clone(), tail).expect("tail disjoint"));
            }
        }
    }
    out.sort();
    out
}

/// Every dependent good partition of a generic arrangement, in canonical order.
pub fn find_dependent(a: &Arrangement) -> Result<Vec<GoodPartition>> {
    a.require_generic()?;
    let candidates = candidate_partitions(a.n(), a.k());
    let verdicts: Vec<Result<bool>> = candidates.par_iter().map(|p| is_dependent(a, p)).collect();
    let mut out = Vec::new();
    for (p, dependent) in candidates.into_iter().zip(verdicts) {
        if dependent? {
            out.push(p);
        }
    }
    Ok(out)
}

/// All predicates attached to one partition, computed along independent routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionEvaluation {
    pub partition: GoodPartition,
    pub rank_a_t: usize,
    pub p_t: Rational,
    pub kernel_rank: usize,
    pub kernel_ambient_dim: usize,
    pub p_tilde: Rational,
}

impl PartitionEvaluation {
    pub fn dependent(&self) -> bool {
        self.kernel_rank < self.kernel_ambient_dim
    }

    /// rank(A_T) = 2, p_T = 0, kernels rank-deficient and p~ = 0 all agree.
    pub fn consistent(&self) -> bool {
        let verdicts = [self.rank_a_t == 2, self.p_t.is_zero(), self.dependent(), self.p_tilde.is_zero()];
        verdicts.iter().all(|&v| v == verdicts[0])
    }
}

pub fn evaluate(a: &Arrangement, p: &GoodPartition) -> Result<PartitionEvaluation> {
    let at = submatrix_a_t(a, p)?;
    let p_t = sum_of_squares(&at.minors(3)?.into_iter().map(|x| x.value).collect::<Vec<_>>());
    let kt = kernel_triple(a, p)?;
    Ok(PartitionEvaluation {
        partition: p.clone(),
        rank_a_t: at.rank(),
        p_t,
        kernel_rank: kt.stacked().rank(),
        kernel_ambient_dim: kt.ambient_dim(),
        p_tilde: p_tilde_of(&kt),
    })
}
