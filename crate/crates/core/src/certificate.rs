//! Products of `s`-th zero divisors whose non-vanishing bounds `zcl_s`, and
//! hence `TC_s`, from below.
//!
//! Factors are built in `H*(Σ_g^{×n})^{⊗s}`, pushed slotwise into the
//! evaluation ring (`B_g` or the base axis `E(g)_∞^{*,0}`), and multiplied
//! there in a fixed order with normal forms taken after every step.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{flatten_jointly, AlgebraExt, Element, GradedAlgebra, TensorElement};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::solve_combination;
use crate::quotient::{b_g, e_infinity, SurfaceQuotient};
use crate::surface::{basis_limit, SurfacePowerAlgebra};

/// Ring in which a certificate is evaluated.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Ring {
    #[serde(rename = "B")]
    BG,
    #[serde(rename = "E")]
    EInf,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::BG => "B",
            Ring::EInf => "E",
        })
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(Ring::BG),
            "E" | "e" => Ok(Ring::EInf),
            _ => Err(Error::Parse(format!(
                "unknown ring `{s}` (expected B or E)"
            ))),
        }
    }
}

/// Size limits for the surface algebra and for certificate expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub basis: u128,
    pub terms: u128,
}

pub const DEFAULT_TERM_LIMIT: u128 = 10_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            basis: basis_limit(),
            terms: DEFAULT_TERM_LIMIT,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            basis: u128::MAX,
            terms: u128::MAX,
        }
    }
}

/// `u ⊗ 1 ⊗ … ⊗ 1 − 1 ⊗ … ⊗ u ⊗ … ⊗ 1` with the second `u` in `slot`
/// (0-based, at least 1).
pub fn zero_divisor<A: GradedAlgebra>(
    alg: &A,
    u: &Element<A::Scalar>,
    slot: usize,
    arity: usize,
) -> Result<TensorElement<A::Scalar>> {
    if slot == 0 || slot >= arity {
        return Err(Error::IndexOutOfRange(format!(
            "zero divisor slot {slot} in arity {arity}"
        )));
    }
    Ok(alg.embed(u, 0, arity)?.sub(&alg.embed(u, slot, arity)?))
}

pub fn is_zero_divisor<A: GradedAlgebra>(alg: &A, t: &TensorElement<A::Scalar>) -> Result<bool> {
    Ok(alg.mu(t)?.is_zero())
}

fn positive_degree<A: GradedAlgebra>(alg: &A, u: &Element<A::Scalar>) -> Result<()> {
    match alg.homogeneous_degree(u) {
        Some(d) if d > 0 => Ok(()),
        _ => Err(Error::InvalidArgument(format!(
            "`{}` is not homogeneous of positive degree",
            alg.format_element(u)
        ))),
    }
}

/// The `s − 1` factors of `ū`, for `ℓ = 2, …, s`.
pub fn bar_factors<A: GradedAlgebra>(
    alg: &A,
    u: &Element<A::Scalar>,
    s: usize,
) -> Result<Vec<TensorElement<A::Scalar>>> {
    positive_degree(alg, u)?;
    (1..s).map(|slot| zero_divisor(alg, u, slot, s)).collect()
}

/// `ū = ∏_{ℓ=2}^{s} (u ⊗ 1 ⊗ … − 1 ⊗ … ⊗ u ⊗ …)`.
pub fn bar<A: GradedAlgebra>(
    alg: &A,
    u: &Element<A::Scalar>,
    s: usize,
) -> Result<TensorElement<A::Scalar>> {
    alg.tensor_product_all(s, &bar_factors(alg, u, s)?)
}

/// `ỹ = y ⊗ 1 ⊗ … ⊗ 1 − 1 ⊗ … ⊗ 1 ⊗ y`.
pub fn tilde<A: GradedAlgebra>(
    alg: &A,
    y: &Element<A::Scalar>,
    s: usize,
) -> Result<TensorElement<A::Scalar>> {
    positive_degree(alg, y)?;
    zero_divisor(alg, y, s - 1, s)
}

/// `y_{1,i}` for `i = 2, …, s−1` (empty when `s = 2`).
pub fn y1i_factors<A: GradedAlgebra>(
    alg: &A,
    y1: &Element<A::Scalar>,
    s: usize,
) -> Result<Vec<TensorElement<A::Scalar>>> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!("s = {s} < 2")));
    }
    positive_degree(alg, y1)?;
    (1..s - 1)
        .map(|slot| zero_divisor(alg, y1, slot, s))
        .collect()
}

pub fn y1i_product<A: GradedAlgebra>(
    alg: &A,
    y1: &Element<A::Scalar>,
    s: usize,
) -> Result<TensorElement<A::Scalar>> {
    alg.tensor_product_all(s, &y1i_factors(alg, y1, s)?)
}

/// `∏_i ū_i`.
pub fn bar_product<A: GradedAlgebra>(
    alg: &A,
    us: &[Element<A::Scalar>],
    s: usize,
) -> Result<TensorElement<A::Scalar>> {
    let mut acc = alg.tensor_unit(s);
    for u in us {
        acc = alg.tensor_multiply(&acc, &bar(alg, u, s)?)?;
    }
    Ok(acc)
}

/// `∏_i ỹ_i`.
pub fn tilde_product<A: GradedAlgebra>(
    alg: &A,
    ys: &[Element<A::Scalar>],
    s: usize,
) -> Result<TensorElement<A::Scalar>> {
    let mut acc = alg.tensor_unit(s);
    for y in ys {
        acc = alg.tensor_multiply(&acc, &tilde(alg, y, s)?)?;
    }
    Ok(acc)
}

/// The factors `c` and `d` built from the second symplectic pair of the
/// first coordinate. `d` moves `b_1(2)` to slot 3 once there is one.
pub fn c_d_factors(
    h: &SurfacePowerAlgebra,
    s: usize,
) -> Result<(TensorElement<Rational>, TensorElement<Rational>)> {
    if h.genus() < 2 {
        return Err(Error::InvalidArgument(format!(
            "c and d need genus >= 2, got {}",
            h.genus()
        )));
    }
    if s < 2 {
        return Err(Error::InvalidArgument(format!("s = {s} < 2")));
    }
    let c = zero_divisor(h, &h.a(1, 2)?, 1, s)?;
    let d = zero_divisor(h, &h.b(1, 2)?, if s == 2 { 1 } else { 2 }, s)?;
    Ok((c, d))
}

/// `s(n+1) − 2` in genus 1, `s(n+1)` from genus 2 on.
pub fn expected_factor_count(genus: usize, points: usize, stages: usize) -> usize {
    stages * (points + 1) - if genus == 1 { 2 } else { 0 }
}

/// Rough count of expansion terms before cancellation.
pub fn estimated_terms(points: usize, stages: usize) -> u128 {
    let s = stages as u128;
    s.saturating_pow(points as u32)
        .saturating_mul(1u128 << points.min(100))
        .saturating_mul(s.max(2) - 1)
        .saturating_mul(4)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorKind {
    C,
    D,
    /// `y_{1,i}`; `slot` is 1-based.
    Y1i {
        slot: usize,
    },
    /// One factor of `x̄_i`.
    Bar {
        coordinate: usize,
        slot: usize,
    },
    Tilde {
        coordinate: usize,
    },
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FactorKind::C => f.write_str("c"),
            FactorKind::D => f.write_str("d"),
            FactorKind::Y1i { slot } => write!(f, "y1[{slot}]"),
            FactorKind::Bar { coordinate, slot } => write!(f, "bar x{coordinate}[{slot}]"),
            FactorKind::Tilde { coordinate } => write!(f, "tilde y{coordinate}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub kind: FactorKind,
    /// The factor in the evaluation ring.
    pub tensor: TensorElement<Rational>,
}

/// The factors in multiplication order, built over `H*(Σ_g^{×n})`.
pub fn certificate_factors(
    h: &SurfacePowerAlgebra,
    s: usize,
) -> Result<Vec<(FactorKind, TensorElement<Rational>)>> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!("s = {s} < 2")));
    }
    let mut out = Vec::new();
    if h.genus() >= 2 {
        let (c, d) = c_d_factors(h, s)?;
        out.push((FactorKind::C, c));
        out.push((FactorKind::D, d));
    }
    let y1 = h.y(1, 1)?;
    for (k, t) in y1i_factors(h, &y1, s)?.into_iter().enumerate() {
        out.push((FactorKind::Y1i { slot: k + 2 }, t));
    }
    for i in 1..=h.points() {
        for (k, t) in bar_factors(h, &h.x(i, 1)?, s)?.into_iter().enumerate() {
            out.push((
                FactorKind::Bar {
                    coordinate: i,
                    slot: k + 2,
                },
                t,
            ));
        }
        out.push((
            FactorKind::Tilde { coordinate: i },
            tilde(h, &h.y(i, 1)?, s)?,
        ));
    }
    Ok(out)
}

/// How the result decomposes on the expected surviving patterns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportCheck {
    /// Pattern names, with `X = ω_1 x_2⋯x_n` and `Y = ω_1 y_2⋯y_n`.
    pub patterns: Vec<String>,
    /// Coefficient of each pattern, when the result lies in their span.
    #[serde(serialize_with = "ser_coefficients")]
    pub coefficients: Option<Vec<Rational>>,
}

fn ser_coefficients<S: serde::Serializer>(
    c: &Option<Vec<Rational>>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match c {
        None => ser.serialize_none(),
        Some(v) => ser.collect_seq(v.iter().map(|r| r.to_string())),
    }
}

impl SupportCheck {
    /// The result is exactly a combination of the patterns with every
    /// coefficient nonzero.
    pub fn passed(&self) -> bool {
        self.coefficients
            .as_ref()
            .is_some_and(|c| c.iter().all(|x| !x.is_zero()))
    }
}

/// An evaluated certificate.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub genus: usize,
    pub points: usize,
    pub stages: usize,
    pub ring: Ring,
    pub algebra: Arc<SurfaceQuotient>,
    pub factors: Vec<Factor>,
    /// Factors whose image under `μ_s` is nonzero (should be none).
    pub kernel_failures: Vec<FactorKind>,
    pub result: TensorElement<Rational>,
    /// Present in `B_g` from genus 2 on.
    pub support: Option<SupportCheck>,
}

impl Certificate {
    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn expected_factor_count(&self) -> usize {
        expected_factor_count(self.genus, self.points, self.stages)
    }

    pub fn nonzero(&self) -> bool {
        !self.result.is_zero()
    }

    pub fn passed(&self) -> bool {
        self.nonzero()
            && self.kernel_failures.is_empty()
            && self.factor_count() == self.expected_factor_count()
            && self.support.as_ref().is_none_or(SupportCheck::passed)
    }

    pub fn report(&self) -> CertificateReport {
        let q = self.algebra.as_ref();
        CertificateReport {
            genus: self.genus,
            n: self.points,
            s: self.stages,
            ring: self.ring,
            factor_count: self.factor_count(),
            expected_factor_count: self.expected_factor_count(),
            factors: self
                .factors
                .iter()
                .map(|f| FactorReport {
                    kind: f.kind.to_string(),
                    tensor: q.format_tensor(&f.tensor),
                })
                .collect(),
            kernel_failures: self
                .kernel_failures
                .iter()
                .map(ToString::to_string)
                .collect(),
            nonzero: self.nonzero(),
            result_terms: self.result.len(),
            result: q.format_tensor(&self.result),
            support: self.support.clone(),
            passed: self.passed(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub kind: String,
    pub tensor: String,
}

/// Serializable transcript of a [`Certificate`].
#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub genus: usize,
    pub n: usize,
    pub s: usize,
    pub ring: Ring,
    pub factor_count: usize,
    pub expected_factor_count: usize,
    pub factors: Vec<FactorReport>,
    pub kernel_failures: Vec<String>,
    pub nonzero: bool,
    pub result_terms: usize,
    pub result: String,
    pub support: Option<SupportCheck>,
    pub passed: bool,
}

fn check_terms(points: usize, stages: usize, limits: Limits) -> Result<()> {
    let estimate = estimated_terms(points, stages);
    if estimate > limits.terms {
        return Err(Error::SizeGuard {
            what: format!("estimated certificate expansion for n = {points}, s = {stages}"),
            estimate,
            limit: limits.terms,
        });
    }
    Ok(())
}

/// Builds the evaluation ring for `(g, n)`.
pub fn evaluation_ring(
    genus: usize,
    points: usize,
    ring: Ring,
    limits: Limits,
) -> Result<Arc<SurfaceQuotient>> {
    let h = Arc::new(SurfacePowerAlgebra::with_limit(
        genus,
        points,
        limits.basis,
    )?);
    Ok(Arc::new(match ring {
        Ring::BG => b_g(&h)?,
        Ring::EInf => e_infinity(&h)?,
    }))
}

/// Evaluates the certificate for `(g, n, s)` in `ring`.
pub fn evaluate_certificate(
    genus: usize,
    points: usize,
    stages: usize,
    ring: Ring,
    limits: Limits,
) -> Result<Certificate> {
    if stages < 2 {
        return Err(Error::InvalidArgument(format!("s = {stages} < 2")));
    }
    check_terms(points, stages, limits)?;
    let q = evaluation_ring(genus, points, ring, limits)?;
    evaluate_in(&q, ring, stages, limits)
}

/// Like [`evaluate_certificate`] with a prebuilt evaluation ring.
pub fn evaluate_in(
    q: &Arc<SurfaceQuotient>,
    ring: Ring,
    stages: usize,
    limits: Limits,
) -> Result<Certificate> {
    let h = q.parent();
    let (genus, points) = (h.genus(), h.points());
    check_terms(points, stages, limits)?;
    let mut factors = Vec::new();
    let mut kernel_failures = Vec::new();
    let mut acc = q.tensor_unit(stages);
    for (kind, t) in certificate_factors(h, stages)? {
        let t = q.tensor_normal_form(&t)?;
        if !is_zero_divisor(q.as_ref(), &t)? {
            kernel_failures.push(kind);
        }
        acc = q.tensor_multiply(&acc, &t)?;
        factors.push(Factor { kind, tensor: t });
    }
    let support = if ring == Ring::BG && genus >= 2 {
        Some(support_check(q, &acc)?)
    } else {
        None
    };
    Ok(Certificate {
        genus,
        points,
        stages,
        ring,
        algebra: Arc::clone(q),
        factors,
        kernel_failures,
        result: acc,
        support,
    })
}

/// `X = ω_1 x_2⋯x_n` and `Y = ω_1 y_2⋯y_n` in the quotient.
pub fn top_classes(q: &SurfaceQuotient) -> Result<(Element<Rational>, Element<Rational>)> {
    let h = q.parent();
    let n = h.points();
    let mut xs = vec![h.omega(1)?];
    let mut ys = vec![h.omega(1)?];
    for i in 2..=n {
        xs.push(h.x(i, 1)?);
        ys.push(h.y(i, 1)?);
    }
    Ok((
        q.normal_form(&h.product(&xs)?)?,
        q.normal_form(&h.product(&ys)?)?,
    ))
}

/// Writes `result` on `Y ⊗ X ⊗ … ⊗ X` and `X ⊗ … ⊗ X ⊗ Y` (one pattern when
/// `n = 1`, where `X = Y`).
pub fn support_check(
    q: &SurfaceQuotient,
    result: &TensorElement<Rational>,
) -> Result<SupportCheck> {
    let s = result.arity();
    let (x, y) = top_classes(q)?;
    let mut leading = vec![x.clone(); s];
    leading[0] = y.clone();
    let mut trailing = vec![x.clone(); s];
    trailing[s - 1] = y.clone();
    let name = |slots: &[&str]| slots.join("(x)");
    let mut names_lead = vec!["X"; s];
    names_lead[0] = "Y";
    let mut names_trail = vec!["X"; s];
    names_trail[s - 1] = "Y";
    let (patterns, tensors) = if q.parent().points() == 1 {
        (vec![name(&names_lead)], vec![q.pure_tensor(&leading)?])
    } else {
        (
            vec![name(&names_lead), name(&names_trail)],
            vec![q.pure_tensor(&leading)?, q.pure_tensor(&trailing)?],
        )
    };
    let mut all = vec![result];
    all.extend(tensors.iter());
    let flat = flatten_jointly(&all);
    let coefficients = solve_combination(&flat[0], &flat[1..]);
    Ok(SupportCheck {
        patterns,
        coefficients,
    })
}

/// Outcome of evaluating in both rings and comparing.
#[derive(Clone, Debug, Serialize)]
pub struct RingAgreement {
    pub genus: usize,
    pub n: usize,
    pub s: usize,
    pub b_nonzero: bool,
    pub e_nonzero: bool,
    /// The `E`-result pushed slotwise into `B_g` equals the `B_g`-result.
    pub maps_exactly: bool,
}

impl RingAgreement {
    pub fn passed(&self) -> bool {
        self.b_nonzero && self.e_nonzero && self.maps_exactly
    }
}

pub fn ring_agreement(
    genus: usize,
    points: usize,
    stages: usize,
    limits: Limits,
) -> Result<RingAgreement> {
    let b = evaluate_certificate(genus, points, stages, Ring::BG, limits)?;
    let e_ring = {
        let h = Arc::clone(b.algebra.parent());
        Arc::new(e_infinity(&h)?)
    };
    let e = evaluate_in(&e_ring, Ring::EInf, stages, limits)?;
    let pushed = b
        .algebra
        .tensor_normal_form(&e_ring.lift_tensor(&e.result)?)?;
    Ok(RingAgreement {
        genus,
        n: points,
        s: stages,
        b_nonzero: b.nonzero(),
        e_nonzero: e.nonzero(),
        maps_exactly: pushed.terms() == b.result.terms(),
    })
}
