//! Sparse vectors and per-degree row-reduced subspaces.
//!
//! A [`GradedSubspace`] lives inside an ambient space whose basis vectors each
//! carry a degree. Every degree keeps its own reduced echelon basis: rows are
//! monic at their pivot (the lowest index they touch) and no row has a nonzero
//! entry in another row's pivot column. Reduction against such a basis is a
//! single pass, and the reduced representative of a vector is supported on
//! non-pivot columns only, which makes it a normal form.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SparseVector<F> {
    entries: Vec<(u32, F)>,
}

impl<F: Field> Default for SparseVector<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> SparseVector<F> {
    pub fn zero() -> Self {
        SparseVector {
            entries: Vec::new(),
        }
    }

    pub fn unit(index: u32) -> Self {
        SparseVector {
            entries: vec![(index, F::one())],
        }
    }

    /// Collects arbitrary `(index, coefficient)` pairs, summing repeats and
    /// dropping zeros.
    pub fn from_entries<I: IntoIterator<Item = (u32, F)>>(entries: I) -> Self {
        let mut raw: Vec<(u32, F)> = entries.into_iter().collect();
        raw.sort_unstable_by_key(|&(i, _)| i);
        let mut out: Vec<(u32, F)> = Vec::with_capacity(raw.len());
        for (i, c) in raw {
            match out.last_mut() {
                Some((j, d)) if *j == i => *d += c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVector { entries: out }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: u32) -> F {
        match self.entries.binary_search_by_key(&index, |&(i, _)| i) {
            Ok(k) => self.entries[k].1,
            Err(_) => F::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, F)> + '_ {
        self.entries.iter().copied()
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().map(|&(i, _)| i)
    }

    pub fn entries(&self) -> &[(u32, F)] {
        &self.entries
    }

    pub fn leading(&self) -> Option<(u32, F)> {
        self.entries.first().copied()
    }

    pub fn scale(&self, c: F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVector {
            entries: self.entries.iter().map(|&(i, x)| (i, x * c)).collect(),
        }
    }

    /// `self + c * other`, by a sorted merge.
    pub fn add_scaled(&self, other: &Self, c: F) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, b[j].1 * c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = a[i].1 + b[j].1 * c;
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(k, x)| (k, x * c)));
        SparseVector { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, -F::one())
    }
}

impl<F: Field> FromIterator<(u32, F)> for SparseVector<F> {
    fn from_iter<I: IntoIterator<Item = (u32, F)>>(iter: I) -> Self {
        SparseVector::from_entries(iter)
    }
}

/// One degree's reduced echelon basis, keyed by pivot column.
#[derive(Clone, Debug, Default)]
struct EchelonBlock<F> {
    rows: BTreeMap<u32, SparseVector<F>>,
}

impl<F: Field> EchelonBlock<F> {
    fn reduce(&self, v: &SparseVector<F>) -> SparseVector<F> {
        if self.rows.is_empty() {
            return v.clone();
        }
        let mut acc: Vec<(u32, F)> = Vec::with_capacity(v.len());
        for (i, c) in v.iter() {
            match self.rows.get(&i) {
                // row is monic at i and zero on every other pivot, so one
                // subtraction per pivot column of v suffices
                Some(row) => acc.extend(row.iter().skip(1).map(|(k, x)| (k, -(x * c)))),
                None => acc.push((i, c)),
            }
        }
        SparseVector::from_entries(acc)
    }

    fn insert(&mut self, v: &SparseVector<F>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.leading() else {
            return false;
        };
        let r = r.scale(lead.inv().expect("nonzero leading coefficient"));
        for row in self.rows.values_mut() {
            let c = row.get(pivot);
            if !c.is_zero() {
                *row = row.add_scaled(&r, -c);
            }
        }
        self.rows.insert(pivot, r);
        true
    }
}

/// Per-degree row-reduced subspace of a graded ambient space.
///
/// Mutable while it is being built; once shared behind an `Arc` it is only
/// read, which is safe across threads.
#[derive(Clone, Debug)]
pub struct GradedSubspace<F> {
    degrees: Arc<[u8]>,
    top: usize,
    blocks: Vec<EchelonBlock<F>>,
}

impl<F: Field> GradedSubspace<F> {
    /// Empty subspace of an ambient space whose basis vector `i` has degree
    /// `degrees[i]`.
    pub fn new(degrees: Arc<[u8]>) -> Self {
        let top = degrees.iter().copied().max().unwrap_or(0) as usize;
        GradedSubspace {
            degrees,
            top,
            blocks: vec![
                EchelonBlock {
                    rows: BTreeMap::new()
                };
                top + 1
            ],
        }
    }

    pub fn top_degree(&self) -> usize {
        self.top
    }

    pub fn ambient_dimension(&self) -> usize {
        self.degrees.len()
    }

    pub fn ambient_degrees(&self) -> &Arc<[u8]> {
        &self.degrees
    }

    fn check(&self, v: &SparseVector<F>, degree: usize) -> Result<()> {
        if degree > self.top {
            return Err(Error::DegreeOutOfRange {
                degree,
                top: self.top,
            });
        }
        for i in v.indices() {
            let found = *self.degrees.get(i as usize).ok_or_else(|| {
                Error::IndexOutOfRange(format!("basis index {i} >= {}", self.degrees.len()))
            })? as usize;
            if found != degree {
                return Err(Error::Inhomogeneous {
                    index: i,
                    found,
                    expected: degree,
                });
            }
        }
        Ok(())
    }

    /// Unique representative of `v` modulo the span, supported on non-pivot
    /// columns.
    pub fn reduce(&self, v: &SparseVector<F>, degree: usize) -> Result<SparseVector<F>> {
        self.check(v, degree)?;
        Ok(self.blocks[degree].reduce(v))
    }

    /// Adds `v` to the span. Returns whether the span grew.
    pub fn insert(&mut self, v: &SparseVector<F>, degree: usize) -> Result<bool> {
        self.check(v, degree)?;
        Ok(self.blocks[degree].insert(v))
    }

    pub fn contains(&self, v: &SparseVector<F>, degree: usize) -> Result<bool> {
        Ok(self.reduce(v, degree)?.is_zero())
    }

    /// Number of echelon rows in `degree` (zero outside the graded range).
    pub fn rank(&self, degree: usize) -> usize {
        self.blocks.get(degree).map_or(0, |b| b.rows.len())
    }

    pub fn total_rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rows.len()).sum()
    }

    pub fn is_pivot(&self, index: u32) -> bool {
        let d = self.degrees[index as usize] as usize;
        self.blocks[d].rows.contains_key(&index)
    }

    /// Echelon rows of one degree in pivot order.
    pub fn rows(&self, degree: usize) -> impl Iterator<Item = &SparseVector<F>> + '_ {
        self.blocks
            .get(degree)
            .into_iter()
            .flat_map(|b| b.rows.values())
    }
}

/// Writes `target` as a combination of `vectors`, if it lies in their span.
/// With dependent inputs some valid combination is returned.
pub fn solve_combination<F: Field>(
    target: &SparseVector<F>,
    vectors: &[SparseVector<F>],
) -> Option<Vec<F>> {
    // rows keyed by pivot; each carries the combination of inputs it equals
    let mut rows: BTreeMap<u32, (SparseVector<F>, Vec<F>)> = BTreeMap::new();
    let k = vectors.len();
    let reduce =
        |rows: &BTreeMap<u32, (SparseVector<F>, Vec<F>)>, v: &SparseVector<F>, mut tag: Vec<F>| {
            let mut v = v.clone();
            loop {
                let hit = v.iter().find_map(|(i, c)| rows.get(&i).map(|r| (c, r)));
                match hit {
                    Some((c, (row, rtag))) => {
                        v = v.add_scaled(row, -c);
                        for (t, r) in tag.iter_mut().zip(rtag) {
                            *t -= c * *r;
                        }
                    }
                    None => return (v, tag),
                }
            }
        };
    for (idx, vec) in vectors.iter().enumerate() {
        let mut tag = vec![F::zero(); k];
        tag[idx] = F::one();
        let (v, tag) = reduce(&rows, vec, tag);
        if let Some((p, lead)) = v.leading() {
            let inv = lead.inv().unwrap();
            rows.insert(
                p,
                (v.scale(inv), tag.into_iter().map(|t| t * inv).collect()),
            );
        }
    }
    let (residual, tag) = reduce(&rows, target, vec![F::zero(); k]);
    // target - sum(tag_i * v_i) = residual, so target = -tag . v when residual is zero
    residual
        .is_zero()
        .then(|| tag.into_iter().map(|t| -t).collect())
}
