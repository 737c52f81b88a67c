//! Small algebras with fixed presentations: exterior algebras on degree-one
//! generators and truncated polynomial algebras.

use std::marker::PhantomData;

use crate::algebra::{AlgebraId, GradedAlgebra, Monomial};
use crate::error::{Error, Result};
use crate::field::Field;

/// Exterior algebra `Λ[e_1, …, e_k]` on degree-one generators.
///
/// Monomial `m` is the subset of generators given by the bits of `m`; the
/// product of a subset is taken in increasing generator order.
#[derive(Debug)]
pub struct ExteriorAlgebra<F> {
    id: AlgebraId,
    prefix: String,
    generators: usize,
    basis: Vec<Monomial>,
    _field: PhantomData<F>,
}

impl<F: Field> ExteriorAlgebra<F> {
    /// `prefix` names the generators: `x` gives `x1, x2, …`.
    pub fn new(prefix: &str, generators: usize) -> Result<Self> {
        if generators > 16 {
            return Err(Error::InvalidArgument(format!(
                "exterior algebra on {generators} generators is too large"
            )));
        }
        Ok(ExteriorAlgebra {
            id: AlgebraId::fresh(),
            prefix: prefix.to_string(),
            generators,
            basis: (0..1u32 << generators).map(Monomial).collect(),
            _field: PhantomData,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Monomial of the subset `{i : bit i-1 set}` (generators are 1-based).
    pub fn subset(&self, members: &[usize]) -> Result<Monomial> {
        let mut mask = 0u32;
        for &i in members {
            if i == 0 || i > self.generators {
                return Err(Error::GeneratorOutOfRange(format!("{}{i}", self.prefix)));
            }
            mask |= 1 << (i - 1);
        }
        Ok(Monomial(mask))
    }

    /// Members of the subset, 1-based, increasing.
    pub fn members(&self, m: Monomial) -> Vec<usize> {
        (0..self.generators)
            .filter(|b| m.0 >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }
}

impl<F: Field> GradedAlgebra for ExteriorAlgebra<F> {
    type Scalar = F;

    fn id(&self) -> AlgebraId {
        self.id
    }

    fn label(&self) -> String {
        format!("Λ[{}1..{}{}]", self.prefix, self.prefix, self.generators)
    }

    fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    fn index_bound(&self) -> usize {
        1 << self.generators
    }

    fn degree(&self, m: Monomial) -> usize {
        m.0.count_ones() as usize
    }

    fn top_degree(&self) -> usize {
        self.generators
    }

    fn unit(&self) -> Monomial {
        Monomial(0)
    }

    fn mul_basis<S: FnMut(Monomial, F)>(&self, a: Monomial, b: Monomial, mut sink: S) {
        if a.0 & b.0 != 0 {
            return;
        }
        // each generator of b passes the generators of a above it
        let mut swaps = 0;
        for bit in 0..self.generators {
            if b.0 >> bit & 1 == 1 {
                swaps += (a.0 >> (bit + 1)).count_ones();
            }
        }
        let c = if swaps % 2 == 0 { F::one() } else { -F::one() };
        sink(Monomial(a.0 | b.0), c);
    }

    fn monomial_name(&self, m: Monomial) -> String {
        if m.0 == 0 {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .members(m)
            .iter()
            .map(|i| format!("{}{i}", self.prefix))
            .collect();
        parts.join("*")
    }

    fn parse_monomial(&self, word: &str) -> Result<Monomial> {
        if word == "1" {
            return Ok(Monomial(0));
        }
        let mut members = Vec::new();
        for letter in word.split('*') {
            let idx = letter
                .strip_prefix(self.prefix.as_str())
                .and_then(|r| r.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("unknown letter `{letter}`")))?;
            if members.last().is_some_and(|&last| last >= idx) {
                return Err(Error::Parse(format!(
                    "letters of `{word}` are not strictly increasing"
                )));
            }
            members.push(idx);
        }
        self.subset(&members)
    }
}

/// Truncated polynomial algebra `F[t]/(t^height)` with `t` in degree
/// `generator_degree`.
#[derive(Debug)]
pub struct TruncatedPolynomialAlgebra<F> {
    id: AlgebraId,
    height: usize,
    generator_degree: usize,
    basis: Vec<Monomial>,
    _field: PhantomData<F>,
}

impl<F: Field> TruncatedPolynomialAlgebra<F> {
    /// Fails when the algebra would not be graded-commutative: an odd-degree
    /// generator with nonzero square needs characteristic two.
    pub fn new(height: usize, generator_degree: usize) -> Result<Self> {
        if height == 0 {
            return Err(Error::InvalidArgument(
                "truncation height must be positive".into(),
            ));
        }
        if generator_degree % 2 == 1 && height > 2 && F::CHARACTERISTIC != 2 {
            return Err(Error::InvalidArgument(format!(
                "t in odd degree with t^2 != 0 is not graded-commutative over {}",
                F::NAME
            )));
        }
        Ok(TruncatedPolynomialAlgebra {
            id: AlgebraId::fresh(),
            height,
            generator_degree,
            basis: (0..height as u32).map(Monomial).collect(),
            _field: PhantomData,
        })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// The monomial `t^k`.
    pub fn power(&self, k: usize) -> Result<Monomial> {
        if k >= self.height {
            return Err(Error::IndexOutOfRange(format!(
                "t^{k} vanishes in F[t]/t^{}",
                self.height
            )));
        }
        Ok(Monomial(k as u32))
    }
}

impl<F: Field> GradedAlgebra for TruncatedPolynomialAlgebra<F> {
    type Scalar = F;

    fn id(&self) -> AlgebraId {
        self.id
    }

    fn label(&self) -> String {
        format!("{}[t]/t^{}", F::NAME, self.height)
    }

    fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    fn index_bound(&self) -> usize {
        self.height
    }

    fn degree(&self, m: Monomial) -> usize {
        m.index() * self.generator_degree
    }

    fn top_degree(&self) -> usize {
        (self.height - 1) * self.generator_degree
    }

    fn unit(&self) -> Monomial {
        Monomial(0)
    }

    fn mul_basis<S: FnMut(Monomial, F)>(&self, a: Monomial, b: Monomial, mut sink: S) {
        let k = a.index() + b.index();
        if k < self.height {
            sink(Monomial(k as u32), F::one());
        }
    }

    fn monomial_name(&self, m: Monomial) -> String {
        match m.0 {
            0 => "1".to_string(),
            1 => "t".to_string(),
            k => format!("t^{k}"),
        }
    }

    fn parse_monomial(&self, word: &str) -> Result<Monomial> {
        let k = match word {
            "1" => 0,
            "t" => 1,
            w => w
                .strip_prefix("t^")
                .and_then(|e| e.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("unknown monomial `{w}`")))?,
        };
        self.power(k)
            .map_err(|_| Error::Parse(format!("monomial `{word}` is outside the basis")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraExt;
    use crate::field::{Gf2, Rational};

    #[test]
    fn exterior_signs() {
        let ext = ExteriorAlgebra::<Rational>::new("x", 3).unwrap();
        let x1 = ext.element(ext.subset(&[1]).unwrap());
        let x2 = ext.element(ext.subset(&[2]).unwrap());
        let x12 = ext.multiply(&x1, &x2).unwrap();
        let x21 = ext.multiply(&x2, &x1).unwrap();
        assert_eq!(x12, -&x21);
        assert!(ext.multiply(&x1, &x1).unwrap().is_zero());
        assert_eq!(ext.format_element(&x12), "+1*x1*x2");
        assert_eq!(ext.format_element(&x21), "-1*x1*x2");
    }

    #[test]
    fn exterior_parse_rejects_unsorted() {
        let ext = ExteriorAlgebra::<Rational>::new("y", 3).unwrap();
        assert!(ext.parse_monomial("y2*y1").is_err());
        assert!(ext.parse_monomial("y4").is_err());
        assert_eq!(ext.parse_monomial("y1*y3").unwrap(), Monomial(0b101));
    }

    #[test]
    fn truncated_over_f2() {
        let alg = TruncatedPolynomialAlgebra::<Gf2>::new(4, 1).unwrap();
        assert_eq!(alg.poincare_polynomial(), vec![1, 1, 1, 1]);
        let t = alg.element(alg.power(1).unwrap());
        let t3 = alg.product(&[t.clone(), t.clone(), t.clone()]).unwrap();
        assert_eq!(alg.format_element(&t3), "+1*t^3");
        assert!(alg.multiply(&t3, &t).unwrap().is_zero());
    }

    #[test]
    fn truncated_refuses_noncommutative() {
        assert!(TruncatedPolynomialAlgebra::<Rational>::new(4, 1).is_err());
        assert!(TruncatedPolynomialAlgebra::<Rational>::new(4, 2).is_ok());
        assert!(TruncatedPolynomialAlgebra::<Rational>::new(2, 1).is_ok());
    }
}
