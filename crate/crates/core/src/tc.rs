//! `TC_s(Conf(Σ_g, n))`: upper bounds, certified lower bounds and the value.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{evaluate_in, evaluation_ring, Certificate, Limits, Ring};
use crate::error::{Error, Result};

fn check(points: usize, stages: usize) -> Result<()> {
    if stages < 2 {
        return Err(Error::InvalidArgument(format!("s = {stages} < 2")));
    }
    if points == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

/// Upper bound for `TC_s(Conf(Σ_g, n))`.
///
/// Genus 0: `Conf(S², n)` is `S²` up to homotopy for `n ≤ 2`, and for `n ≥ 3`
/// it splits as `SO(3)` times an aspherical space of dimension `n − 3`.
/// Genus 1: the torus factor splits off and acts freely. Higher genus: the
/// space has the homotopy type of an `(n+1)`-dimensional complex.
pub fn tc_upper_bound(genus: usize, points: usize, stages: usize) -> Result<u64> {
    check(points, stages)?;
    let (n, s) = (points as u64, stages as u64);
    Ok(match genus {
        0 if n <= 2 => s,
        0 => s * n - 3,
        1 => s * (n + 1) - 2,
        _ => s * (n + 1),
    })
}

/// The value of `TC_s(Conf(Σ_g, n))`, which equals [`tc_upper_bound`].
pub fn tc_formula(genus: usize, points: usize, stages: usize) -> Result<u64> {
    tc_upper_bound(genus, points, stages)
}

/// One row of the table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TcRecord {
    pub genus: usize,
    pub n: usize,
    pub s: usize,
    pub upper: u64,
    /// Certified zero-divisor cup-length bound; in genus 0 the known value
    /// is quoted without a certificate.
    pub lower: Option<u64>,
    pub tc: u64,
    pub certified: bool,
}

impl TcRecord {
    /// Lower and upper bounds meet at the stated value.
    pub fn consistent(&self) -> bool {
        self.lower.is_some_and(|l| l <= self.upper) && self.tc == self.upper
    }
}

/// Builds the record from an evaluated certificate.
pub fn record_from_certificate(cert: &Certificate) -> Result<TcRecord> {
    let upper = tc_upper_bound(cert.genus, cert.points, cert.stages)?;
    let certified = cert.passed();
    Ok(TcRecord {
        genus: cert.genus,
        n: cert.points,
        s: cert.stages,
        upper,
        lower: certified.then_some(cert.factor_count() as u64),
        tc: tc_formula(cert.genus, cert.points, cert.stages)?,
        certified,
    })
}

fn genus_zero(points: usize, stages: usize) -> Result<TcRecord> {
    let v = tc_formula(0, points, stages)?;
    Ok(TcRecord {
        genus: 0,
        n: points,
        s: stages,
        upper: v,
        lower: Some(v),
        tc: v,
        certified: false,
    })
}

/// Computes the record for one cell; for `g ≥ 1` a certificate is evaluated
/// in `B_g`.
pub fn tc_value(genus: usize, points: usize, stages: usize, limits: Limits) -> Result<TcRecord> {
    check(points, stages)?;
    if genus == 0 {
        return genus_zero(points, stages);
    }
    let q = evaluation_ring(genus, points, Ring::BG, limits)?;
    record_from_certificate(&evaluate_in(&q, Ring::BG, stages, limits)?)
}

/// Records for every `(g, n, s)` in the product of the lists, sorted by
/// `(g, n, s)`. Each `(g, n)` ring is built once; cells run in parallel.
pub fn tc_table(
    genera: &[usize],
    points: &[usize],
    stages: &[usize],
    limits: Limits,
) -> Vec<((usize, usize, usize), Result<TcRecord>)> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &g in genera {
        for &n in points {
            pairs.push((g, n));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let mut stages: Vec<usize> = stages.to_vec();
    stages.sort_unstable();
    stages.dedup();
    let cells: BTreeMap<(usize, usize, usize), Result<TcRecord>> = pairs
        .par_iter()
        .flat_map_iter(|&(g, n)| {
            let ring = if g == 0 {
                None
            } else {
                Some(evaluation_ring(g, n, Ring::BG, limits))
            };
            let stages = stages.clone();
            stages
                .into_iter()
                .map(|s| {
                    let rec = check(n, s).and_then(|()| match &ring {
                        None => genus_zero(n, s),
                        Some(Err(e)) => Err(e.clone()),
                        Some(Ok(q)) => evaluate_in(q, Ring::BG, s, limits)
                            .and_then(|c| record_from_certificate(&c)),
                    });
                    ((g, n, s), rec)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    cells.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_cases() {
        assert_eq!(tc_formula(0, 3, 2).unwrap(), 3);
        assert_eq!(tc_formula(0, 2, 4).unwrap(), 4);
        assert_eq!(tc_formula(0, 1, 3).unwrap(), 3);
        assert_eq!(tc_formula(1, 2, 3).unwrap(), 7);
        assert_eq!(tc_formula(2, 1, 2).unwrap(), 4);
        assert!(tc_formula(2, 1, 1).is_err());
        assert!(tc_formula(2, 0, 2).is_err());
    }

    #[test]
    fn genus_zero_is_uncertified() {
        let r = tc_value(0, 2, 4, Limits::default()).unwrap();
        assert_eq!((r.tc, r.certified), (4, false));
    }

    #[test]
    fn certified_cells() {
        let r = tc_value(2, 2, 2, Limits::default()).unwrap();
        assert_eq!(r.tc, 6);
        assert!(r.certified);
        assert_eq!(r.lower, Some(6));
        let r = tc_value(1, 1, 2, Limits::default()).unwrap();
        assert_eq!((r.tc, r.lower, r.certified), (2, Some(2), true));
    }

    #[test]
    fn table_is_sorted_and_complete() {
        let t = tc_table(&[2, 1], &[2, 1], &[3, 2], Limits::default());
        let keys: Vec<_> = t.iter().map(|(k, _)| *k).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys.len(), 8);
        assert!(t.iter().all(|(_, r)| r.as_ref().unwrap().consistent()));
    }
}
