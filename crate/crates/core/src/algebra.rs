//! Finite-dimensional graded-commutative algebras given by a monomial basis,
//! their elements, and their `s`-fold tensor powers.
//!
//! Signs follow the Koszul rule throughout: in `A^{⊗s}`,
//!
//! ```text
//! (a_1 ⊗ … ⊗ a_s)(b_1 ⊗ … ⊗ b_s) = (-1)^{Σ_{k<l} |b_k||a_l|} a_1 b_1 ⊗ … ⊗ a_s b_s
//! ```
//!
//! since `b_k` has to travel past `a_{k+1}, …, a_s`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::SparseVector;

/// Identity of a constructed algebra. Elements remember the algebra they
/// belong to so that mixing algebras is caught.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AlgebraId(u64);

impl AlgebraId {
    pub fn fresh() -> AlgebraId {
        static NEXT: AtomicU64 = AtomicU64::new(1);
        AlgebraId(NEXT.fetch_add(1, Ordering::Relaxed))
    }
}

/// A basis monomial, identified by its index in the algebra's enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub u32);

impl Monomial {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A graded-commutative algebra with a distinguished finite monomial basis.
///
/// Basis monomials are indices below [`index_bound`](Self::index_bound);
/// quotient algebras reuse their parent's index space and expose only the
/// standard monomials through [`basis`](Self::basis).
pub trait GradedAlgebra: Send + Sync {
    type Scalar: Field;

    fn id(&self) -> AlgebraId;

    /// Human-readable description, e.g. `H*(Σ_2^×3)`.
    fn label(&self) -> String;

    /// Basis monomials in increasing index order.
    fn basis(&self) -> &[Monomial];

    /// Every monomial index of this algebra is below this bound.
    fn index_bound(&self) -> usize;

    fn degree(&self, m: Monomial) -> usize;

    fn top_degree(&self) -> usize;

    fn unit(&self) -> Monomial;

    /// Feeds the product `a·b`, expanded in the basis, into `sink`.
    fn mul_basis<S: FnMut(Monomial, Self::Scalar)>(&self, a: Monomial, b: Monomial, sink: S);

    fn monomial_name(&self, m: Monomial) -> String;

    fn parse_monomial(&self, word: &str) -> Result<Monomial>;

    fn dimension(&self) -> usize {
        self.basis().len()
    }

    fn is_basis(&self, m: Monomial) -> bool {
        self.basis().binary_search(&m).is_ok()
    }
}

/// A linear combination of basis monomials of one algebra.
///
/// Homogeneity is not required; see [`AlgebraExt::degrees`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element<F> {
    algebra: AlgebraId,
    terms: SparseVector<F>,
}

impl<F: Field> Element<F> {
    pub fn zero(algebra: AlgebraId) -> Self {
        Element {
            algebra,
            terms: SparseVector::zero(),
        }
    }

    pub fn from_vector(algebra: AlgebraId, terms: SparseVector<F>) -> Self {
        Element { algebra, terms }
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn terms(&self) -> &SparseVector<F> {
        &self.terms
    }

    pub fn into_terms(self) -> SparseVector<F> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coefficient(&self, m: Monomial) -> F {
        self.terms.get(m.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Monomial, F)> + '_ {
        self.terms.iter().map(|(i, c)| (Monomial(i), c))
    }

    pub fn scale(&self, c: F) -> Self {
        Element {
            algebra: self.algebra,
            terms: self.terms.scale(c),
        }
    }

    fn same(&self, other: &Self) {
        assert_eq!(
            self.algebra, other.algebra,
            "elements of different algebras cannot be combined"
        );
    }

    /// Same element, reinterpreted in another algebra sharing the index space
    /// (used when passing between a quotient and its parent).
    pub fn relabel(&self, algebra: AlgebraId) -> Self {
        Element {
            algebra,
            terms: self.terms.clone(),
        }
    }
}

/// Panics when the operands belong to different algebras.
impl<F: Field> std::ops::Add for &Element<F> {
    type Output = Element<F>;
    fn add(self, rhs: &Element<F>) -> Element<F> {
        self.same(rhs);
        Element {
            algebra: self.algebra,
            terms: self.terms.add(&rhs.terms),
        }
    }
}

/// Panics when the operands belong to different algebras.
impl<F: Field> std::ops::Sub for &Element<F> {
    type Output = Element<F>;
    fn sub(self, rhs: &Element<F>) -> Element<F> {
        self.same(rhs);
        Element {
            algebra: self.algebra,
            terms: self.terms.sub(&rhs.terms),
        }
    }
}

impl<F: Field> std::ops::Neg for &Element<F> {
    type Output = Element<F>;
    fn neg(self) -> Element<F> {
        self.scale(-F::one())
    }
}

/// Slot tuple of a tensor term.
pub type TensorKey = SmallVec<[u32; 6]>;

/// A linear combination of `s`-tuples of basis monomials, i.e. an element of
/// `A^{⊗s}`. Terms are kept sorted by key, so equal tensors compare equal
/// and print identically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement<F> {
    algebra: AlgebraId,
    arity: usize,
    terms: Vec<(TensorKey, F)>,
}

impl<F: Field> TensorElement<F> {
    pub fn zero(algebra: AlgebraId, arity: usize) -> Self {
        TensorElement {
            algebra,
            arity,
            terms: Vec::new(),
        }
    }

    /// Collects terms, summing repeated keys and dropping zeros.
    ///
    /// Panics if a key has the wrong length.
    pub fn from_terms<I: IntoIterator<Item = (TensorKey, F)>>(
        algebra: AlgebraId,
        arity: usize,
        terms: I,
    ) -> Self {
        let mut acc: HashMap<TensorKey, F> = HashMap::new();
        for (k, c) in terms {
            assert_eq!(k.len(), arity, "tensor key of wrong arity");
            *acc.entry(k).or_insert_with(F::zero) += c;
        }
        Self::from_map(algebra, arity, acc)
    }

    fn from_map(algebra: AlgebraId, arity: usize, acc: HashMap<TensorKey, F>) -> Self {
        let mut terms: Vec<(TensorKey, F)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        TensorElement {
            algebra,
            arity,
            terms,
        }
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(TensorKey, F)] {
        &self.terms
    }

    pub fn coefficient(&self, key: &[u32]) -> F {
        self.terms
            .binary_search_by(|(k, _)| k.as_slice().cmp(key))
            .map_or(F::zero(), |i| self.terms[i].1)
    }

    pub fn scale(&self, c: F) -> Self {
        if c.is_zero() {
            return Self::zero(self.algebra, self.arity);
        }
        TensorElement {
            algebra: self.algebra,
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.clone(), *x * c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.algebra, other.algebra,
            "tensors over different algebras"
        );
        assert_eq!(self.arity, other.arity, "tensors of different arity");
        Self::from_terms(
            self.algebra,
            self.arity,
            self.terms.iter().chain(other.terms.iter()).cloned(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-F::one()))
    }

    pub fn relabel(&self, algebra: AlgebraId) -> Self {
        TensorElement {
            algebra,
            arity: self.arity,
            terms: self.terms.clone(),
        }
    }

    /// Applies a linear map to every slot. The map must preserve degree, so no
    /// Koszul signs arise.
    pub fn map_slots<M>(&self, target: AlgebraId, mut map: M) -> Self
    where
        M: FnMut(Monomial) -> SparseVector<F>,
    {
        let mut cache: HashMap<u32, SparseVector<F>> = HashMap::new();
        let mut acc: HashMap<TensorKey, F> = HashMap::new();
        for (key, c) in &self.terms {
            let images: Vec<SparseVector<F>> = key
                .iter()
                .map(|&m| cache.entry(m).or_insert_with(|| map(Monomial(m))).clone())
                .collect();
            expand_product(&images, *c, &mut acc);
        }
        Self::from_map(target, self.arity, acc)
    }
}

/// Coordinates of several tensors over one shared, sorted enumeration of
/// the keys that occur in any of them.
pub fn flatten_jointly<F: Field>(tensors: &[&TensorElement<F>]) -> Vec<SparseVector<F>> {
    let keys: BTreeSet<&TensorKey> = tensors
        .iter()
        .flat_map(|t| t.terms.iter().map(|(k, _)| k))
        .collect();
    let ids: HashMap<&TensorKey, u32> = keys
        .into_iter()
        .enumerate()
        .map(|(i, k)| (k, i as u32))
        .collect();
    tensors
        .iter()
        .map(|t| SparseVector::from_entries(t.terms.iter().map(|(k, c)| (ids[k], *c))))
        .collect()
}

/// Accumulates `coeff · images[0] ⊗ … ⊗ images[s-1]` into `acc`.
fn expand_product<F: Field>(images: &[SparseVector<F>], coeff: F, acc: &mut HashMap<TensorKey, F>) {
    if images.iter().any(|v| v.is_zero()) {
        return;
    }
    let mut key: TensorKey = SmallVec::with_capacity(images.len());
    fn rec<F: Field>(
        images: &[SparseVector<F>],
        depth: usize,
        coeff: F,
        key: &mut TensorKey,
        acc: &mut HashMap<TensorKey, F>,
    ) {
        if depth == images.len() {
            *acc.entry(key.clone()).or_insert_with(F::zero) += coeff;
            return;
        }
        for (m, c) in images[depth].iter() {
            key.push(m);
            rec(images, depth + 1, coeff * c, key, acc);
            key.pop();
        }
    }
    rec(images, 0, coeff, &mut key, acc);
}

/// Term count above which tensor products are split across threads.
const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Operations available on every [`GradedAlgebra`].
pub trait AlgebraExt: GradedAlgebra {
    fn element(&self, m: Monomial) -> Element<Self::Scalar> {
        Element {
            algebra: self.id(),
            terms: SparseVector::unit(m.0),
        }
    }

    fn one(&self) -> Element<Self::Scalar> {
        self.element(self.unit())
    }

    fn zero(&self) -> Element<Self::Scalar> {
        Element::zero(self.id())
    }

    fn check_element(&self, e: &Element<Self::Scalar>) -> Result<()> {
        if e.algebra != self.id() {
            return Err(Error::AlgebraMismatch(format!(
                "element does not belong to {}",
                self.label()
            )));
        }
        Ok(())
    }

    /// Degrees occurring in `e` (a single degree iff `e` is homogeneous and nonzero).
    fn degrees(&self, e: &Element<Self::Scalar>) -> BTreeSet<usize> {
        e.iter().map(|(m, _)| self.degree(m)).collect()
    }

    fn homogeneous_degree(&self, e: &Element<Self::Scalar>) -> Option<usize> {
        let d = self.degrees(e);
        (d.len() == 1).then(|| *d.iter().next().unwrap())
    }

    fn multiply(
        &self,
        x: &Element<Self::Scalar>,
        y: &Element<Self::Scalar>,
    ) -> Result<Element<Self::Scalar>> {
        self.check_element(x)?;
        self.check_element(y)?;
        let mut acc = Vec::new();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let c = ca * cb;
                self.mul_basis(a, b, |m, k| acc.push((m.0, c * k)));
            }
        }
        Ok(Element {
            algebra: self.id(),
            terms: SparseVector::from_entries(acc),
        })
    }

    /// Product of a list of elements, left to right.
    fn product(&self, factors: &[Element<Self::Scalar>]) -> Result<Element<Self::Scalar>> {
        let mut acc = self.one();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// `e_1 ⊗ … ⊗ e_s` (no signs: nothing is being reordered).
    fn pure_tensor(&self, slots: &[Element<Self::Scalar>]) -> Result<TensorElement<Self::Scalar>> {
        for e in slots {
            self.check_element(e)?;
        }
        let images: Vec<SparseVector<Self::Scalar>> =
            slots.iter().map(|e| e.terms.clone()).collect();
        let mut acc = HashMap::new();
        expand_product(&images, Self::Scalar::one(), &mut acc);
        Ok(TensorElement::from_map(self.id(), slots.len(), acc))
    }

    /// `1 ⊗ … ⊗ e ⊗ … ⊗ 1` with `e` in slot `slot` (0-based).
    fn embed(
        &self,
        e: &Element<Self::Scalar>,
        slot: usize,
        arity: usize,
    ) -> Result<TensorElement<Self::Scalar>> {
        if slot >= arity {
            return Err(Error::IndexOutOfRange(format!(
                "slot {slot} in a tensor of arity {arity}"
            )));
        }
        let mut slots = vec![self.one(); arity];
        slots[slot] = e.clone();
        self.pure_tensor(&slots)
    }

    fn tensor_unit(&self, arity: usize) -> TensorElement<Self::Scalar> {
        let key: TensorKey = std::iter::repeat_n(self.unit().0, arity).collect();
        TensorElement {
            algebra: self.id(),
            arity,
            terms: vec![(key, Self::Scalar::one())],
        }
    }

    fn check_tensor(&self, t: &TensorElement<Self::Scalar>) -> Result<()> {
        if t.algebra != self.id() {
            return Err(Error::AlgebraMismatch(format!(
                "tensor does not live over {}",
                self.label()
            )));
        }
        Ok(())
    }

    /// Product in `A^{⊗s}` with Koszul signs.
    fn tensor_multiply(
        &self,
        x: &TensorElement<Self::Scalar>,
        y: &TensorElement<Self::Scalar>,
    ) -> Result<TensorElement<Self::Scalar>> {
        self.check_tensor(x)?;
        self.check_tensor(y)?;
        if x.arity != y.arity {
            return Err(Error::ArityMismatch {
                left: x.arity,
                right: y.arity,
            });
        }
        let arity = x.arity;
        let work = |chunk: &[(TensorKey, Self::Scalar)]| {
            let mut acc: HashMap<TensorKey, Self::Scalar> = HashMap::new();
            let mut images: Vec<SparseVector<Self::Scalar>> = Vec::with_capacity(arity);
            let mut scratch = Vec::new();
            for (ka, ca) in chunk {
                'pair: for (kb, cb) in &y.terms {
                    images.clear();
                    let mut odd_after = 0usize; // odd-degree slots of `ka` to the right
                    let mut sign_odd = false;
                    for k in (0..arity).rev() {
                        if self.degree(Monomial(kb[k])) % 2 == 1 && odd_after % 2 == 1 {
                            sign_odd = !sign_odd;
                        }
                        if self.degree(Monomial(ka[k])) % 2 == 1 {
                            odd_after += 1;
                        }
                    }
                    for k in 0..arity {
                        scratch.clear();
                        self.mul_basis(Monomial(ka[k]), Monomial(kb[k]), |m, c| {
                            scratch.push((m.0, c))
                        });
                        if scratch.is_empty() {
                            continue 'pair;
                        }
                        images.push(SparseVector::from_entries(scratch.drain(..)));
                    }
                    let mut c = *ca * *cb;
                    if sign_odd {
                        c = -c;
                    }
                    expand_product(&images, c, &mut acc);
                }
            }
            acc
        };
        let acc = if x.terms.len() * y.terms.len() >= PARALLEL_THRESHOLD && x.terms.len() > 1 {
            let chunk = x
                .terms
                .len()
                .div_ceil(rayon::current_num_threads() * 4)
                .max(1);
            x.terms
                .par_chunks(chunk)
                .map(work)
                .reduce(HashMap::new, |mut a, b| {
                    for (k, c) in b {
                        *a.entry(k).or_insert_with(Self::Scalar::zero) += c;
                    }
                    a
                })
        } else {
            work(&x.terms)
        };
        Ok(TensorElement::from_map(self.id(), arity, acc))
    }

    /// Product of tensors, left to right, starting from the unit.
    fn tensor_product_all(
        &self,
        arity: usize,
        factors: &[TensorElement<Self::Scalar>],
    ) -> Result<TensorElement<Self::Scalar>> {
        let mut acc = self.tensor_unit(arity);
        for f in factors {
            acc = self.tensor_multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// Iterated multiplication `μ_s(a_1 ⊗ … ⊗ a_s) = a_1 ⋯ a_s`.
    fn mu(&self, t: &TensorElement<Self::Scalar>) -> Result<Element<Self::Scalar>> {
        self.check_tensor(t)?;
        let mut acc = Vec::new();
        for (key, c) in &t.terms {
            let mut cur = SparseVector::unit(self.unit().0).scale(*c);
            for &m in key.iter() {
                let mut next = Vec::new();
                for (a, ca) in cur.iter() {
                    self.mul_basis(Monomial(a), Monomial(m), |r, k| next.push((r.0, ca * k)));
                }
                cur = SparseVector::from_entries(next);
                if cur.is_zero() {
                    break;
                }
            }
            acc.extend(cur.iter());
        }
        Ok(Element {
            algebra: self.id(),
            terms: SparseVector::from_entries(acc),
        })
    }

    /// Number of basis monomials in each degree `0..=top_degree`.
    fn poincare_polynomial(&self) -> Vec<u64> {
        let mut p = vec![0u64; self.top_degree() + 1];
        for &m in self.basis() {
            p[self.degree(m)] += 1;
        }
        while p.len() > 1 && *p.last().unwrap() == 0 {
            p.pop();
        }
        p
    }

    /// Stable text form: `+2*a1(1)*b2(3)*w4 -1/2*w1`, or `0`.
    fn format_element(&self, e: &Element<Self::Scalar>) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = e
            .iter()
            .map(|(m, c)| format!("{c}*{}", self.monomial_name(m)))
            .collect();
        parts.join(" ")
    }

    fn parse_element(&self, text: &str) -> Result<Element<Self::Scalar>> {
        let text = text.trim();
        if text == "0" {
            return Ok(self.zero());
        }
        let mut acc = Vec::new();
        for token in text.split_whitespace() {
            let (coef, word) = split_term(token)?;
            acc.push((self.parse_monomial(word)?.0, coef.parse::<Self::Scalar>()?));
        }
        Ok(Element {
            algebra: self.id(),
            terms: SparseVector::from_entries(acc),
        })
    }

    /// Stable text form of a tensor: slots separated by `(x)`, e.g.
    /// `+1*a1(1)(x)1 -1*1(x)a1(1)`.
    fn format_tensor(&self, t: &TensorElement<Self::Scalar>) -> String {
        if t.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = t
            .terms
            .iter()
            .map(|(k, c)| {
                let words: Vec<String> =
                    k.iter().map(|&m| self.monomial_name(Monomial(m))).collect();
                format!("{c}*{}", words.join("(x)"))
            })
            .collect();
        parts.join(" ")
    }

    fn parse_tensor(&self, arity: usize, text: &str) -> Result<TensorElement<Self::Scalar>> {
        let text = text.trim();
        if text == "0" {
            return Ok(TensorElement::zero(self.id(), arity));
        }
        let mut terms = Vec::new();
        for token in text.split_whitespace() {
            let (coef, words) = split_term(token)?;
            let key: TensorKey = words
                .split("(x)")
                .map(|w| self.parse_monomial(w).map(|m| m.0))
                .collect::<Result<_>>()?;
            if key.len() != arity {
                return Err(Error::Parse(format!(
                    "term `{token}` has {} slots, expected {arity}",
                    key.len()
                )));
            }
            terms.push((key, coef.parse::<Self::Scalar>()?));
        }
        Ok(TensorElement::from_terms(self.id(), arity, terms))
    }
}

impl<A: GradedAlgebra + ?Sized> AlgebraExt for A {}

fn split_term(token: &str) -> Result<(&str, &str)> {
    token
        .split_once('*')
        .filter(|(c, _)| c.starts_with('+') || c.starts_with('-'))
        .ok_or_else(|| {
            Error::Parse(format!(
                "term `{token}` must look like <signed coefficient>*<word>"
            ))
        })
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
