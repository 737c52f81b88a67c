//! Lower bounds for `zcl_s` of small algebras by searching products of the
//! basic zero divisors `u ⊗ 1 ⊗ … − 1 ⊗ … ⊗ u ⊗ …`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{AlgebraExt, GradedAlgebra, TensorElement};
use crate::certificate::{is_zero_divisor, zero_divisor};
use crate::error::{Error, Result};
use crate::field::Gf2;
use crate::presented::TruncatedPolynomialAlgebra;
use crate::surface::basis_limit;

/// Dimension cap for [`Strategy::ExhaustiveTiny`].
pub const EXHAUSTIVE_MAX_DIMENSION: usize = 8;
/// Cap on `dim^s` for the exhaustive search.
pub const EXHAUSTIVE_MAX_TENSOR: u128 = 4096;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Greedy,
    ExhaustiveTiny,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Greedy => "greedy",
            Strategy::ExhaustiveTiny => "exhaustive-tiny",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(Strategy::Greedy),
            "exhaustive-tiny" | "exhaustive" => Ok(Strategy::ExhaustiveTiny),
            _ => Err(Error::Parse(format!(
                "unknown strategy `{s}` (expected greedy or exhaustive-tiny)"
            ))),
        }
    }
}

/// A verified nonzero product of zero divisors.
#[derive(Clone, Debug)]
pub struct ZclWitness<F> {
    /// Names of the factors, e.g. `t[2]` for `t ⊗ 1 − 1 ⊗ t`.
    pub labels: Vec<String>,
    pub factors: Vec<TensorElement<F>>,
    pub product: TensorElement<F>,
}

impl<F> ZclWitness<F> {
    pub fn bound(&self) -> usize {
        self.factors.len()
    }
}

/// `u ⊗ 1 ⊗ … − (u in slot ℓ)` for every positive-degree basis monomial `u`
/// and `ℓ = 2, …, s`.
pub fn basic_zero_divisors<A: GradedAlgebra>(
    alg: &A,
    s: usize,
) -> Result<Vec<(String, TensorElement<A::Scalar>)>> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!("s = {s} < 2")));
    }
    let mut out = Vec::new();
    for &m in alg.basis() {
        if alg.degree(m) == 0 {
            continue;
        }
        for slot in 1..s {
            let label = format!("{}[{}]", alg.monomial_name(m), slot + 1);
            out.push((label, zero_divisor(alg, &alg.element(m), slot, s)?));
        }
    }
    Ok(out)
}

fn tensor_size(dim: usize, s: usize) -> u128 {
    (dim as u128).saturating_pow(s as u32)
}

/// Searches for a long nonzero product of basic zero divisors. The length
/// of the returned witness is a lower bound for `zcl_s`.
pub fn zcl_search<A: GradedAlgebra>(
    alg: &A,
    s: usize,
    strategy: Strategy,
) -> Result<ZclWitness<A::Scalar>> {
    let dim = alg.dimension();
    let size = tensor_size(dim, s);
    match strategy {
        Strategy::ExhaustiveTiny => {
            if dim > EXHAUSTIVE_MAX_DIMENSION {
                return Err(Error::SizeGuard {
                    what: "dimension for exhaustive search".into(),
                    estimate: dim as u128,
                    limit: EXHAUSTIVE_MAX_DIMENSION as u128,
                });
            }
            if size > EXHAUSTIVE_MAX_TENSOR {
                return Err(Error::SizeGuard {
                    what: format!("tensor power dimension {dim}^{s} for exhaustive search"),
                    estimate: size,
                    limit: EXHAUSTIVE_MAX_TENSOR,
                });
            }
        }
        Strategy::Greedy => {
            let limit = basis_limit();
            if size > limit {
                return Err(Error::SizeGuard {
                    what: format!("tensor power dimension {dim}^{s}"),
                    estimate: size,
                    limit,
                });
            }
        }
    }
    let candidates = basic_zero_divisors(alg, s)?;
    for (label, t) in &candidates {
        debug_assert!(is_zero_divisor(alg, t).unwrap_or(false), "{label}");
    }
    let chosen = match strategy {
        Strategy::Greedy => greedy(alg, &candidates, s)?,
        Strategy::ExhaustiveTiny => {
            let mut best = Vec::new();
            exhaustive(
                alg,
                &candidates,
                0,
                &alg.tensor_unit(s),
                &mut Vec::new(),
                &mut best,
            )?;
            best
        }
    };
    let factors: Vec<TensorElement<A::Scalar>> =
        chosen.iter().map(|&i| candidates[i].1.clone()).collect();
    let product = alg.tensor_product_all(s, &factors)?;
    if product.is_zero() {
        return Err(Error::InvalidArgument(
            "search produced a vanishing witness".into(),
        ));
    }
    Ok(ZclWitness {
        labels: chosen.iter().map(|&i| candidates[i].0.clone()).collect(),
        factors,
        product,
    })
}

/// Repeatedly appends the first candidate that keeps the product nonzero.
fn greedy<A: GradedAlgebra>(
    alg: &A,
    candidates: &[(String, TensorElement<A::Scalar>)],
    s: usize,
) -> Result<Vec<usize>> {
    let mut acc = alg.tensor_unit(s);
    let mut chosen = Vec::new();
    'grow: loop {
        for (i, (_, t)) in candidates.iter().enumerate() {
            let next = alg.tensor_multiply(&acc, t)?;
            if !next.is_zero() {
                acc = next;
                chosen.push(i);
                continue 'grow;
            }
        }
        return Ok(chosen);
    }
}

/// Depth-first over multisets of candidates (non-decreasing indices); keeps
/// the first longest nonzero product found.
fn exhaustive<A: GradedAlgebra>(
    alg: &A,
    candidates: &[(String, TensorElement<A::Scalar>)],
    start: usize,
    acc: &TensorElement<A::Scalar>,
    chosen: &mut Vec<usize>,
    best: &mut Vec<usize>,
) -> Result<()> {
    if chosen.len() > best.len() {
        *best = chosen.clone();
    }
    for i in start..candidates.len() {
        let next = alg.tensor_multiply(acc, &candidates[i].1)?;
        if next.is_zero() {
            continue;
        }
        chosen.push(i);
        exhaustive(alg, candidates, i, &next, chosen, best)?;
        chosen.pop();
    }
    Ok(())
}

/// Outcome of the mod-2 check on the cohomology of `ℝP³`.
#[derive(Clone, Debug, Serialize)]
pub struct Rp3Check {
    pub s: usize,
    pub factors: usize,
    pub kernel_failures: usize,
    pub nonzero: bool,
    pub product: String,
    pub bound: u64,
}

impl Rp3Check {
    pub fn passed(&self) -> bool {
        self.nonzero && self.kernel_failures == 0 && self.factors as u64 == self.bound
    }
}

/// In `F_2[t]/t^4`, multiplies `t ⊗ 1 ⊗ … + (t in slot ℓ)` three times for
/// each `ℓ = 2, …, s` and checks the product is nonzero.
pub fn rp3_zcl_check(s: usize) -> Result<Rp3Check> {
    if !(2..=5).contains(&s) {
        return Err(Error::SizeGuard {
            what: format!("stages for the projective space check (s = {s})"),
            estimate: s as u128,
            limit: 5,
        });
    }
    let alg = TruncatedPolynomialAlgebra::<Gf2>::new(4, 1)?;
    let t = alg.element(alg.power(1)?);
    let mut factors = Vec::new();
    for slot in 1..s {
        let z = zero_divisor(&alg, &t, slot, s)?;
        factors.extend(std::iter::repeat_n(z, 3));
    }
    let mut kernel_failures = 0;
    for f in &factors {
        if !is_zero_divisor(&alg, f)? {
            kernel_failures += 1;
        }
    }
    let product = alg.tensor_product_all(s, &factors)?;
    Ok(Rp3Check {
        s,
        factors: factors.len(),
        kernel_failures,
        nonzero: !product.is_zero(),
        product: alg.format_tensor(&product),
        bound: 3 * (s as u64 - 1),
    })
}
