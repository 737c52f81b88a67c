//! Rational cohomology of powers of a closed orientable surface and the
//! element families built from it.
//!
//! `H*(Σ_g)` has basis `1, a(1), b(1), …, a(g), b(g), ω` with
//! `a(p)a(q) = b(p)b(q) = 0` and `a(p)b(q) = ω` if `p = q`, zero otherwise.
//! In `H*(Σ_g^{×n})` a basis monomial picks one such letter per coordinate
//! `1..=n` and stands for the product of its letters in coordinate order.
//! Monomials are enumerated lexicographically: coordinate 1 is most
//! significant and letters are ordered `1 < a(1) < b(1) < … < a(g) < b(g) < ω`.

use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::algebra::{AlgebraExt, AlgebraId, Element, GradedAlgebra, Monomial};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::SparseVector;

/// Default bound on `(2g+2)^n`, overridable through `TCCONF_MAX_BASIS`.
pub const DEFAULT_BASIS_LIMIT: u128 = 100_000;

/// Current basis-size limit: `TCCONF_MAX_BASIS` if set and valid, else
/// [`DEFAULT_BASIS_LIMIT`].
pub fn basis_limit() -> u128 {
    std::env::var("TCCONF_MAX_BASIS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BASIS_LIMIT)
}

/// A letter of `H*(Σ_g)`; puncture indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum LocalLetter {
    One,
    A(usize),
    B(usize),
    Omega,
}

impl LocalLetter {
    pub fn degree(self) -> usize {
        match self {
            LocalLetter::One => 0,
            LocalLetter::A(_) | LocalLetter::B(_) => 1,
            LocalLetter::Omega => 2,
        }
    }

    fn check(self, genus: usize) -> Result<()> {
        match self {
            LocalLetter::A(p) | LocalLetter::B(p) if p == 0 || p > genus => Err(
                Error::GeneratorOutOfRange(format!("{self:?} in genus {genus}")),
            ),
            _ => Ok(()),
        }
    }

    fn code(self, genus: usize) -> u8 {
        match self {
            LocalLetter::One => 0,
            LocalLetter::A(p) => (2 * p - 1) as u8,
            LocalLetter::B(p) => (2 * p) as u8,
            LocalLetter::Omega => (2 * genus + 1) as u8,
        }
    }

    fn from_code(code: u8, genus: usize) -> LocalLetter {
        let c = code as usize;
        if c == 0 {
            LocalLetter::One
        } else if c == 2 * genus + 1 {
            LocalLetter::Omega
        } else if c % 2 == 1 {
            LocalLetter::A(c.div_ceil(2))
        } else {
            LocalLetter::B(c / 2)
        }
    }

    /// Whether this is one of `a(p), b(p)` with `p ≥ 2`, or `ω`.
    pub fn is_high(self) -> bool {
        matches!(self, LocalLetter::A(p) | LocalLetter::B(p) if p >= 2)
            || self == LocalLetter::Omega
    }
}

/// Product of two letters of `H*(Σ_g)`: `None` for zero, otherwise a sign
/// and a letter.
pub fn local_multiply(
    u: LocalLetter,
    v: LocalLetter,
    genus: usize,
) -> Result<Option<(i8, LocalLetter)>> {
    u.check(genus)?;
    v.check(genus)?;
    use LocalLetter::*;
    Ok(match (u, v) {
        (One, x) | (x, One) => Some((1, x)),
        (A(p), B(q)) if p == q => Some((1, Omega)),
        (B(q), A(p)) if p == q => Some((-1, Omega)),
        _ => None,
    })
}

/// `H*(Σ_g^{×n};Q)` with its monomial basis.
#[derive(Debug)]
pub struct SurfacePowerAlgebra {
    id: AlgebraId,
    genus: usize,
    points: usize,
    radix: usize,
    basis: Vec<Monomial>,
    degrees: Arc<[u8]>,
    codes: Vec<u8>,
    letter_degree: Vec<u8>,
    table: Vec<Option<(i8, u8)>>,
}

impl SurfacePowerAlgebra {
    /// Builds `H*(Σ_g^{×n})` under the current [`basis_limit`].
    pub fn new(genus: usize, points: usize) -> Result<Self> {
        Self::with_limit(genus, points, basis_limit())
    }

    pub fn with_limit(genus: usize, points: usize, limit: u128) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidArgument(
                "genus 0 is not modelled; use the closed formula".into(),
            ));
        }
        if points == 0 {
            return Err(Error::InvalidArgument(
                "at least one point is required".into(),
            ));
        }
        let radix = 2 * genus + 2;
        let size = (radix as u128)
            .checked_pow(points as u32)
            .unwrap_or(u128::MAX);
        let hard = u32::MAX as u128;
        if size > limit.min(hard) {
            return Err(Error::SizeGuard {
                what: format!("basis of H*(Σ_{genus}^×{points})"),
                estimate: size,
                limit: limit.min(hard),
            });
        }
        let size = size as usize;
        let mut codes = vec![0u8; size * points];
        let mut degrees = vec![0u8; size];
        for m in 0..size {
            let mut rest = m;
            for i in (0..points).rev() {
                let c = (rest % radix) as u8;
                rest /= radix;
                codes[m * points + i] = c;
                degrees[m] += LocalLetter::from_code(c, genus).degree() as u8;
            }
        }
        let mut table = vec![None; radix * radix];
        for a in 0..radix {
            for b in 0..radix {
                let (u, v) = (
                    LocalLetter::from_code(a as u8, genus),
                    LocalLetter::from_code(b as u8, genus),
                );
                table[a * radix + b] = local_multiply(u, v, genus)
                    .expect("letters in range")
                    .map(|(s, w)| (s, w.code(genus)));
            }
        }
        Ok(SurfacePowerAlgebra {
            id: AlgebraId::fresh(),
            genus,
            points,
            radix,
            basis: (0..size as u32).map(Monomial).collect(),
            degrees: degrees.into(),
            codes,
            letter_degree: (0..radix)
                .map(|c| LocalLetter::from_code(c as u8, genus).degree() as u8)
                .collect(),
            table,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Degree of every monomial, indexed by monomial.
    pub fn degree_table(&self) -> Arc<[u8]> {
        Arc::clone(&self.degrees)
    }

    fn codes(&self, m: Monomial) -> &[u8] {
        &self.codes[m.index() * self.points..(m.index() + 1) * self.points]
    }

    fn encode(&self, codes: &[u8]) -> Monomial {
        Monomial(
            codes
                .iter()
                .fold(0u32, |acc, &c| acc * self.radix as u32 + c as u32),
        )
    }

    /// Letters of `m`, coordinate 1 first.
    pub fn factors(&self, m: Monomial) -> Vec<LocalLetter> {
        self.codes(m)
            .iter()
            .map(|&c| LocalLetter::from_code(c, self.genus))
            .collect()
    }

    /// The monomial with the given letter in each coordinate.
    pub fn monomial(&self, letters: &[LocalLetter]) -> Result<Monomial> {
        if letters.len() != self.points {
            return Err(Error::InvalidArgument(format!(
                "{} letters for {} coordinates",
                letters.len(),
                self.points
            )));
        }
        for l in letters {
            l.check(self.genus)?;
        }
        let codes: Vec<u8> = letters.iter().map(|l| l.code(self.genus)).collect();
        Ok(self.encode(&codes))
    }

    fn check_coordinate(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.points {
            return Err(Error::IndexOutOfRange(format!(
                "coordinate {i} of {}",
                self.points
            )));
        }
        Ok(())
    }

    /// The class of `letter` pulled back from coordinate `i` (1-based).
    pub fn letter(&self, i: usize, letter: LocalLetter) -> Result<Element<Rational>> {
        self.check_coordinate(i)?;
        let mut letters = vec![LocalLetter::One; self.points];
        letters[i - 1] = letter;
        Ok(self.element(self.monomial(&letters)?))
    }

    /// `a_i(p)`.
    pub fn a(&self, i: usize, p: usize) -> Result<Element<Rational>> {
        self.letter(i, LocalLetter::A(p))
    }

    /// `b_i(p)`.
    pub fn b(&self, i: usize, p: usize) -> Result<Element<Rational>> {
        self.letter(i, LocalLetter::B(p))
    }

    /// `ω_i`.
    pub fn omega(&self, i: usize) -> Result<Element<Rational>> {
        self.letter(i, LocalLetter::Omega)
    }

    /// `x_i(p)`: equals `a_i(p)`, except `x_i(1) = a_i(1) - a_1(1)` for `i ≥ 2`.
    pub fn x(&self, i: usize, p: usize) -> Result<Element<Rational>> {
        let a = self.a(i, p)?;
        if p == 1 && i >= 2 {
            Ok(&a - &self.a(1, 1)?)
        } else {
            Ok(a)
        }
    }

    /// `y_i(p)`: equals `b_i(p)`, except `y_i(1) = b_i(1) - b_1(1)` for `i ≥ 2`.
    pub fn y(&self, i: usize, p: usize) -> Result<Element<Rational>> {
        let b = self.b(i, p)?;
        if p == 1 && i >= 2 {
            Ok(&b - &self.b(1, 1)?)
        } else {
            Ok(b)
        }
    }

    /// Element obtained from a letter by the `a → x`, `b → y` substitution.
    pub fn xy_letter(&self, i: usize, letter: LocalLetter) -> Result<Element<Rational>> {
        match letter {
            LocalLetter::A(p) => self.x(i, p),
            LocalLetter::B(p) => self.y(i, p),
            other => self.letter(i, other),
        }
    }

    fn letter_name(letter: LocalLetter, i: usize, xy: bool) -> String {
        let (a, b) = if xy { ('x', 'y') } else { ('a', 'b') };
        match letter {
            LocalLetter::One => "1".into(),
            LocalLetter::A(p) => format!("{a}{i}({p})"),
            LocalLetter::B(p) => format!("{b}{i}({p})"),
            LocalLetter::Omega => format!("w{i}"),
        }
    }

    /// Word of `m` with `a`/`b` spelled `x`/`y`; names the corresponding
    /// product of `x`/`y` generators.
    pub fn xy_word(&self, m: Monomial) -> String {
        self.word(m, true)
    }

    fn word(&self, m: Monomial, xy: bool) -> String {
        let parts: Vec<String> = self
            .factors(m)
            .into_iter()
            .enumerate()
            .filter(|(_, l)| *l != LocalLetter::One)
            .map(|(i, l)| Self::letter_name(l, i + 1, xy))
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    fn parse_letter(&self, text: &str) -> Result<(usize, LocalLetter)> {
        let bad = || Error::Parse(format!("unknown letter `{text}`"));
        let (kind, rest) = text.split_at(text.chars().next().ok_or_else(bad)?.len_utf8());
        let (coord, puncture) = match rest.split_once('(') {
            Some((c, p)) => (c, Some(p.strip_suffix(')').ok_or_else(bad)?)),
            None => (rest, None),
        };
        let i: usize = coord.parse().map_err(|_| bad())?;
        let p = puncture
            .map(|p| p.parse::<usize>().map_err(|_| bad()))
            .transpose()?;
        let letter = match (kind, p) {
            ("a", Some(p)) => LocalLetter::A(p),
            ("b", Some(p)) => LocalLetter::B(p),
            ("w", None) => LocalLetter::Omega,
            _ => return Err(bad()),
        };
        Ok((i, letter))
    }

    /// Product of an `x`/`y`-spelled word in coordinate order, e.g.
    /// `x2(1)*y3(1)*w4`.
    pub fn xy_product(&self, m: Monomial) -> Result<Element<Rational>> {
        let mut acc = self.one();
        for (i, l) in self.factors(m).into_iter().enumerate() {
            if l != LocalLetter::One {
                acc = self.multiply(&acc, &self.xy_letter(i + 1, l)?)?;
            }
        }
        Ok(acc)
    }

    /// Generators of the ideal by which `H*(Σ_g^{×n})` is divided to get the
    /// base axis `E(g)_∞^{*,0}`: for `i < j`,
    /// `ω_i + ω_j + Σ_p (b_i(p) a_j(p) - a_i(p) b_j(p))`.
    pub fn totaro_relations(&self) -> Result<RelationSet> {
        let mut gens = Vec::new();
        for i in 1..=self.points {
            for j in i + 1..=self.points {
                let mut r = &self.omega(i)? + &self.omega(j)?;
                for p in 1..=self.genus {
                    let ba = self.multiply(&self.b(i, p)?, &self.a(j, p)?)?;
                    let ab = self.multiply(&self.a(i, p)?, &self.b(j, p)?)?;
                    r = &(&r + &ba) - &ab;
                }
                gens.push(r);
            }
        }
        Ok(RelationSet {
            label: RelationLabel::Totaro,
            generators: gens,
        })
    }

    /// `x_i(p)x_j(q)`, `x_i(p)y_j(q)`, `y_i(p)y_j(q)` for `p, q ≥ 2` and
    /// `i ≠ j`. Empty in genus 1.
    pub fn bunch16_relations(&self) -> Result<RelationSet> {
        let mut gens = Vec::new();
        for i in 1..=self.points {
            for j in 1..=self.points {
                if i == j {
                    continue;
                }
                for p in 2..=self.genus {
                    for q in 2..=self.genus {
                        if i < j {
                            gens.push(self.multiply(&self.x(i, p)?, &self.x(j, q)?)?);
                            gens.push(self.multiply(&self.y(i, p)?, &self.y(j, q)?)?);
                        }
                        gens.push(self.multiply(&self.x(i, p)?, &self.y(j, q)?)?);
                    }
                }
            }
        }
        Ok(RelationSet {
            label: RelationLabel::Bunch16,
            generators: gens,
        })
    }

    /// `x_i y_j` for `i, j ∈ {2, …, n}`, including `i = j`.
    pub fn j_g_relations(&self) -> Result<RelationSet> {
        let mut gens = Vec::new();
        for i in 2..=self.points {
            for j in 2..=self.points {
                gens.push(self.multiply(&self.x(i, 1)?, &self.y(j, 1)?)?);
            }
        }
        Ok(RelationSet {
            label: RelationLabel::JG,
            generators: gens,
        })
    }

    /// Monomials with at most one coordinate carrying `a(p)`, `b(p)` (`p ≥ 2`)
    /// or `ω`. In genus 1 there are no relations of that kind and every
    /// monomial is returned.
    pub fn basis_beta2(&self) -> Vec<Monomial> {
        if self.genus == 1 {
            return self.basis.clone();
        }
        self.basis
            .iter()
            .copied()
            .filter(|&m| self.factors(m).into_iter().filter(|l| l.is_high()).count() <= 1)
            .collect()
    }

    /// The `x`/`y` counterparts of [`basis_beta2`](Self::basis_beta2), as
    /// elements of `H*(Σ_g^{×n})`, paired with their spelling monomial.
    pub fn basis_beta2_prime(&self) -> Result<Vec<(Monomial, Element<Rational>)>> {
        self.basis_beta2()
            .into_iter()
            .map(|m| Ok((m, self.xy_product(m)?)))
            .collect()
    }

    /// Image of a monomial under the letter-preserving map to a surface
    /// algebra of genus at least ours with the same number of points.
    pub fn embed_monomial(&self, target: &SurfacePowerAlgebra, m: Monomial) -> Result<Monomial> {
        if target.points != self.points || target.genus < self.genus {
            return Err(Error::InvalidArgument(format!(
                "no letter map from genus {} to genus {} with {} vs {} points",
                self.genus, target.genus, self.points, target.points
            )));
        }
        target.monomial(&self.factors(m))
    }

    /// Letter-preserving map on elements (see [`embed_monomial`](Self::embed_monomial)).
    pub fn embed_element(
        &self,
        target: &SurfacePowerAlgebra,
        e: &Element<Rational>,
    ) -> Result<Element<Rational>> {
        self.check_element(e)?;
        let mut acc = Vec::new();
        for (m, c) in e.iter() {
            acc.push((self.embed_monomial(target, m)?.0, c));
        }
        Ok(Element::from_vector(
            target.id(),
            SparseVector::from_entries(acc),
        ))
    }
}

impl GradedAlgebra for SurfacePowerAlgebra {
    type Scalar = Rational;

    fn id(&self) -> AlgebraId {
        self.id
    }

    fn label(&self) -> String {
        format!("H*(Σ_{}^×{})", self.genus, self.points)
    }

    fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    fn index_bound(&self) -> usize {
        self.basis.len()
    }

    fn degree(&self, m: Monomial) -> usize {
        self.degrees[m.index()] as usize
    }

    fn top_degree(&self) -> usize {
        2 * self.points
    }

    fn unit(&self) -> Monomial {
        Monomial(0)
    }

    fn mul_basis<S: FnMut(Monomial, Rational)>(&self, a: Monomial, b: Monomial, mut sink: S) {
        let (u, v) = (self.codes(a), self.codes(b));
        let mut codes: SmallVec<[u8; 16]> = SmallVec::from_elem(0, self.points);
        let mut negative = false;
        // v_i passes u_{i+1}, …, u_n
        let mut odd_after = false;
        for i in (0..self.points).rev() {
            if self.letter_degree[v[i] as usize] % 2 == 1 && odd_after {
                negative = !negative;
            }
            if self.letter_degree[u[i] as usize] % 2 == 1 {
                odd_after = !odd_after;
            }
            match self.table[u[i] as usize * self.radix + v[i] as usize] {
                None => return,
                Some((s, c)) => {
                    negative ^= s < 0;
                    codes[i] = c;
                }
            }
        }
        let coeff = if negative {
            -Rational::one()
        } else {
            Rational::one()
        };
        sink(self.encode(&codes), coeff);
    }

    fn monomial_name(&self, m: Monomial) -> String {
        self.word(m, false)
    }

    fn parse_monomial(&self, word: &str) -> Result<Monomial> {
        let mut letters = vec![LocalLetter::One; self.points];
        if word == "1" {
            return self.monomial(&letters);
        }
        let mut last = 0;
        for part in word.split('*') {
            let (i, letter) = self.parse_letter(part)?;
            if i <= last || i > self.points {
                return Err(Error::Parse(format!(
                    "coordinate {i} out of order or range in `{word}`"
                )));
            }
            letter
                .check(self.genus)
                .map_err(|e| Error::Parse(e.to_string()))?;
            letters[i - 1] = letter;
            last = i;
        }
        self.monomial(&letters)
    }
}

/// Which family a [`RelationSet`] holds.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelationLabel {
    Totaro,
    Bunch16,
    JG,
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationLabel::Totaro => "TOTARO",
            RelationLabel::Bunch16 => "BUNCH16",
            RelationLabel::JG => "J_G",
        })
    }
}

#[derive(Clone, Debug)]
pub struct RelationSet {
    pub label: RelationLabel,
    pub generators: Vec<Element<Rational>>,
}

impl RelationSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use LocalLetter::*;

    #[test]
    fn local_products() {
        assert_eq!(local_multiply(A(1), B(1), 1).unwrap(), Some((1, Omega)));
        assert_eq!(local_multiply(B(1), A(1), 1).unwrap(), Some((-1, Omega)));
        assert_eq!(local_multiply(A(2), B(1), 2).unwrap(), None);
        assert_eq!(local_multiply(A(1), A(1), 2).unwrap(), None);
        assert_eq!(local_multiply(Omega, B(2), 2).unwrap(), None);
        assert_eq!(local_multiply(One, Omega, 2).unwrap(), Some((1, Omega)));
        assert!(matches!(
            local_multiply(A(3), B(1), 2),
            Err(Error::GeneratorOutOfRange(_))
        ));
    }

    #[test]
    fn enumeration_order() {
        let h = SurfacePowerAlgebra::new(2, 2).unwrap();
        assert_eq!(h.dimension(), 36);
        assert_eq!(h.factors(Monomial(0)), vec![One, One]);
        assert_eq!(h.factors(Monomial(1)), vec![One, A(1)]);
        assert_eq!(h.factors(Monomial(5)), vec![One, Omega]);
        assert_eq!(h.factors(Monomial(6)), vec![A(1), One]);
        assert_eq!(h.factors(Monomial(35)), vec![Omega, Omega]);
    }

    #[test]
    fn torus_product() {
        let h = SurfacePowerAlgebra::new(1, 1).unwrap();
        assert_eq!(h.dimension(), 4);
        assert_eq!(h.poincare_polynomial(), vec![1, 2, 1]);
        let ab = h
            .multiply(&h.a(1, 1).unwrap(), &h.b(1, 1).unwrap())
            .unwrap();
        assert_eq!(ab, h.omega(1).unwrap());
    }

    #[test]
    fn cross_coordinate_sign() {
        let h = SurfacePowerAlgebra::new(1, 2).unwrap();
        let a1 = h.a(1, 1).unwrap();
        let a2 = h.a(2, 1).unwrap();
        let p = h.multiply(&a1, &a2).unwrap();
        let r = h.multiply(&a2, &a1).unwrap();
        assert_eq!(p, -&r);
        assert_eq!(h.format_element(&p), "+1*a1(1)*a2(1)");
        assert_eq!(h.format_element(&r), "-1*a1(1)*a2(1)");
    }

    #[test]
    fn x_minus_pattern_product() {
        // (a_1 - a_2)(b_1 - b_2) = ω_1 + ω_2 + b_1 a_2 - a_1 b_2
        let h = SurfacePowerAlgebra::new(1, 2).unwrap();
        let lhs = h
            .multiply(
                &(&h.a(1, 1).unwrap() - &h.a(2, 1).unwrap()),
                &(&h.b(1, 1).unwrap() - &h.b(2, 1).unwrap()),
            )
            .unwrap();
        let b1a2 = h
            .multiply(&h.b(1, 1).unwrap(), &h.a(2, 1).unwrap())
            .unwrap();
        let a1b2 = h
            .multiply(&h.a(1, 1).unwrap(), &h.b(2, 1).unwrap())
            .unwrap();
        let rhs = &(&(&h.omega(1).unwrap() + &h.omega(2).unwrap()) + &b1a2) - &a1b2;
        assert_eq!(lhs, rhs);
        // the expansion against the displayed x_j y_j formula with j = 2
        let xy = h
            .multiply(&h.x(2, 1).unwrap(), &h.y(2, 1).unwrap())
            .unwrap();
        assert_eq!(xy, rhs);
    }

    #[test]
    fn xy_generators() {
        let h = SurfacePowerAlgebra::new(2, 3).unwrap();
        assert_eq!(h.x(1, 1).unwrap(), h.a(1, 1).unwrap());
        assert_eq!(
            h.x(3, 1).unwrap(),
            &h.a(3, 1).unwrap() - &h.a(1, 1).unwrap()
        );
        assert_eq!(h.y(2, 2).unwrap(), h.b(2, 2).unwrap());
        for i in 2..=3 {
            assert_eq!(
                &h.x(i, 1).unwrap() + &h.a(1, 1).unwrap(),
                h.a(i, 1).unwrap()
            );
            assert_eq!(
                &h.y(i, 1).unwrap() + &h.b(1, 1).unwrap(),
                h.b(i, 1).unwrap()
            );
        }
        assert!(h.x(4, 1).is_err());
        assert!(h.x(1, 3).is_err());
    }

    #[test]
    fn totaro_generators() {
        let h = SurfacePowerAlgebra::new(1, 1).unwrap();
        assert!(h.totaro_relations().unwrap().is_empty());
        let h = SurfacePowerAlgebra::new(1, 2).unwrap();
        let rel = h.totaro_relations().unwrap();
        assert_eq!(rel.len(), 1);
        assert_eq!(
            h.format_element(&rel.generators[0]),
            "+1*w2 -1*a1(1)*b2(1) +1*b1(1)*a2(1) +1*w1"
        );
        let h = SurfacePowerAlgebra::new(2, 3).unwrap();
        let rel = h.totaro_relations().unwrap();
        assert_eq!(rel.len(), 3);
        for r in &rel.generators {
            assert_eq!(h.homogeneous_degree(r), Some(2));
        }
    }

    #[test]
    fn bunch16_contents() {
        let h = SurfacePowerAlgebra::new(1, 3).unwrap();
        assert!(h.bunch16_relations().unwrap().is_empty());
        let h = SurfacePowerAlgebra::new(2, 2).unwrap();
        let rel = h.bunch16_relations().unwrap();
        let words: Vec<String> = rel.generators.iter().map(|g| h.format_element(g)).collect();
        for w in [
            "+1*a1(2)*a2(2)",
            "+1*a1(2)*b2(2)",
            "+1*b1(2)*b2(2)",
            "-1*b1(2)*a2(2)",
        ] {
            assert!(words.iter().any(|x| x == w), "missing {w} in {words:?}");
        }
    }

    #[test]
    fn j_g_contents() {
        let h = SurfacePowerAlgebra::new(2, 3).unwrap();
        let rel = h.j_g_relations().unwrap();
        assert_eq!(rel.len(), 4);
        let expect = h
            .multiply(&h.x(3, 1).unwrap(), &h.y(2, 1).unwrap())
            .unwrap();
        assert_eq!(rel.generators[2], expect);
    }

    #[test]
    fn beta2_count() {
        for (g, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3)] {
            let h = SurfacePowerAlgebra::new(g, n).unwrap();
            // each coordinate from {1, a(1), b(1)}, or exactly one coordinate
            // with one of the 2g - 1 high letters
            let expect = 3usize.pow(n as u32) + n * (2 * g - 1) * 3usize.pow(n as u32 - 1);
            assert_eq!(h.basis_beta2().len(), expect);
            assert_eq!(h.basis_beta2_prime().unwrap().len(), expect);
        }
    }

    #[test]
    fn words_round_trip() {
        let h = SurfacePowerAlgebra::new(3, 4).unwrap();
        for &m in h.basis() {
            assert_eq!(h.parse_monomial(&h.monomial_name(m)).unwrap(), m);
        }
        assert!(h.parse_monomial("b2(1)*a1(1)").is_err());
        assert!(h.parse_monomial("a5(1)").is_err());
        assert!(h.parse_monomial("a1(4)").is_err());
        assert!(h.parse_monomial("w1(1)").is_err());
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            SurfacePowerAlgebra::with_limit(2, 7, 100_000),
            Err(Error::SizeGuard { .. })
        ));
        assert!(SurfacePowerAlgebra::with_limit(2, 6, 100_000).is_ok());
        assert!(SurfacePowerAlgebra::new(0, 2).is_err());
    }

    #[test]
    fn embedding_is_multiplicative() {
        let h1 = SurfacePowerAlgebra::new(1, 2).unwrap();
        let h2 = SurfacePowerAlgebra::new(2, 2).unwrap();
        for &u in h1.basis() {
            for &v in h1.basis() {
                let uv = h1.multiply(&h1.element(u), &h1.element(v)).unwrap();
                let lhs = h1.embed_element(&h2, &uv).unwrap();
                let rhs = h2
                    .multiply(
                        &h2.element(h1.embed_monomial(&h2, u).unwrap()),
                        &h2.element(h1.embed_monomial(&h2, v).unwrap()),
                    )
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(
            h1.embed_element(&h2, &h1.x(2, 1).unwrap()).unwrap(),
            h2.x(2, 1).unwrap()
        );
    }
}
