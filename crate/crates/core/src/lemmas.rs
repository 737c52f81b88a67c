//! Product identities in `A_g` involving the `𝒥_g` generators `x_i y_j`,
//! checked case by case over every letter choice.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AlgebraExt, Element};
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::quotient::{a_g, SurfaceQuotient};
use crate::surface::{LocalLetter, SurfacePowerAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: String,
    pub cases: usize,
    /// Descriptions of the failing cases.
    pub failures: Vec<String>,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub genus: usize,
    pub n: usize,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(LemmaCheck::passed)
    }

    pub fn cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures.len()).sum()
    }
}

type E = Element<Rational>;

struct Ctx {
    h: Arc<SurfacePowerAlgebra>,
    a: SurfaceQuotient,
}

impl Ctx {
    fn z(&self, k: usize, l: LocalLetter) -> Result<E> {
        self.h.xy_letter(k, l)
    }

    fn x(&self, k: usize) -> Result<E> {
        self.h.x(k, 1)
    }

    fn y(&self, k: usize) -> Result<E> {
        self.h.y(k, 1)
    }

    fn w(&self, k: usize) -> Result<E> {
        self.h.omega(k)
    }

    fn p(&self, fs: &[E]) -> Result<E> {
        self.h.product(fs)
    }

    /// Letters `x_k(p), y_k(p), ω_k` for all `p`.
    fn letters(&self) -> Vec<LocalLetter> {
        let g = self.h.genus();
        let mut out: Vec<LocalLetter> = (1..=g)
            .flat_map(|p| [LocalLetter::A(p), LocalLetter::B(p)])
            .collect();
        out.push(LocalLetter::Omega);
        out
    }

    fn high_letters(&self) -> Vec<LocalLetter> {
        self.letters().into_iter().filter(|l| l.is_high()).collect()
    }

    fn same(&self, lhs: &E, rhs: &E) -> Result<bool> {
        Ok(self.a.normal_form(lhs)? == self.a.normal_form(rhs)?)
    }
}

fn name(k: usize, l: LocalLetter) -> String {
    match l {
        LocalLetter::One => "1".into(),
        LocalLetter::A(p) => format!("x{k}({p})"),
        LocalLetter::B(p) => format!("y{k}({p})"),
        LocalLetter::Omega => format!("w{k}"),
    }
}

struct Tally {
    check: LemmaCheck,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            check: LemmaCheck {
                name: name.into(),
                cases: 0,
                failures: Vec::new(),
            },
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.check.cases += 1;
        if !ok {
            self.check.failures.push(case());
        }
    }
}

/// Runs every identity in `A_g` for `g ≥ 2`, `n ≥ 3`.
pub fn verify_lemma_identities(genus: usize, points: usize) -> Result<LemmaReport> {
    if genus < 2 || points < 3 {
        return Err(Error::InvalidArgument(format!(
            "the identities need g >= 2 and n >= 3, got g = {genus}, n = {points}"
        )));
    }
    let h = Arc::new(SurfacePowerAlgebra::new(genus, points)?);
    let a = a_g(&h)?;
    let cx = Ctx { h, a };
    let mut checks = diagonal_checks(&cx)?;
    checks.extend(off_diagonal_checks(&cx)?);
    checks.push(difference_check(&cx)?);
    Ok(LemmaReport {
        genus,
        n: points,
        checks,
    })
}

/// Products with `x_j y_j`, `2 ≤ j ≤ n`.
fn diagonal_checks(cx: &Ctx) -> Result<Vec<LemmaCheck>> {
    let h = cx.h.as_ref();
    let n = h.points();
    let primes = h.basis_beta2_prime()?;
    let mut van_j = Tally::new("v*x_j*y_j = 0 when v_j is not 1");
    let mut van_1 = Tally::new("v*x_j*y_j = 0 when v_1 is x_1(p), y_1(p) (p >= 2) or w_1");
    let mut van_k =
        Tally::new("v*x_j*y_j = 0 when v_1 is x_1 or y_1 and some v_k (k != 1, j) is high");
    let mut x1 = Tally::new("x_1*x_j*y_j = x_1*w_j + w_1*x_j");
    let mut y1 = Tally::new("y_1*x_j*y_j = y_1*w_j + w_1*y_j");
    let mut zk = Tally::new("z_k*x_j*y_j = z_k*y_1*x_j - z_k*x_1*y_j for high z_k, k != 1, j");
    for j in 2..=n {
        let xjyj = cx.p(&[cx.x(j)?, cx.y(j)?])?;
        for (m, v) in &primes {
            let letters = h.factors(*m);
            let in_j = letters[j - 1] != LocalLetter::One;
            let in_1 = letters[0].is_high();
            let in_k = matches!(letters[0], LocalLetter::A(1) | LocalLetter::B(1))
                && (1..=n).any(|k| k != 1 && k != j && letters[k - 1].is_high());
            if !(in_j || in_1 || in_k) {
                continue;
            }
            let ok = cx.a.kills(&cx.p(&[v.clone(), xjyj.clone()])?)?;
            let case = || format!("j={j} v={}", h.xy_word(*m));
            if in_j {
                van_j.record(ok, case);
            } else if in_1 {
                van_1.record(ok, case);
            } else {
                van_k.record(ok, case);
            }
        }
        let lhs = cx.p(&[cx.x(1)?, xjyj.clone()])?;
        let rhs = &cx.p(&[cx.x(1)?, cx.w(j)?])? + &cx.p(&[cx.w(1)?, cx.x(j)?])?;
        x1.record(cx.same(&lhs, &rhs)?, || format!("j={j}"));
        let lhs = cx.p(&[cx.y(1)?, xjyj.clone()])?;
        let rhs = &cx.p(&[cx.y(1)?, cx.w(j)?])? + &cx.p(&[cx.w(1)?, cx.y(j)?])?;
        y1.record(cx.same(&lhs, &rhs)?, || format!("j={j}"));
        for k in (2..=n).filter(|&k| k != j) {
            for l in cx.high_letters() {
                let z = cx.z(k, l)?;
                let lhs = cx.p(&[z.clone(), xjyj.clone()])?;
                let rhs = &cx.p(&[z.clone(), cx.y(1)?, cx.x(j)?])?
                    - &cx.p(&[z.clone(), cx.x(1)?, cx.y(j)?])?;
                zk.record(cx.same(&lhs, &rhs)?, || format!("j={j} z={}", name(k, l)));
            }
        }
    }
    Ok([van_j, van_1, van_k, x1, y1, zk]
        .into_iter()
        .map(|t| t.check)
        .collect())
}

/// Products with `x_i y_j`, `i ≠ j` in `{2, …, n}`.
fn off_diagonal_checks(cx: &Ctx) -> Result<Vec<LemmaCheck>> {
    let n = cx.h.points();
    let all = cx.letters();
    let x1 = LocalLetter::A(1);
    let y1 = LocalLetter::B(1);
    let mut t1 = Tally::new("z_i*x_i*y_j: only y_i and high z_i survive");
    let mut t2 = Tally::new("z_j*x_i*y_j: only x_j and high z_j survive");
    let mut t3 = Tally::new("z_i*z_j*x_i*y_j: only y_i*x_j survives");
    let mut t4 = Tally::new("z_1*z_i*x_i*y_j: only x_1*y_i and y_1*y_i survive");
    let mut t5 = Tally::new("z_1*z_j*x_i*y_j: only x_1*x_j and y_1*x_j survive");
    let mut t6 = Tally::new("z_1*z_i*z_j*x_i*y_j = 0");
    for i in 2..=n {
        for j in (2..=n).filter(|&j| j != i) {
            let xiyj = cx.p(&[cx.x(i)?, cx.y(j)?])?;
            let zero = cx.h.zero();
            let with = |fs: &[E]| -> Result<E> {
                let mut v = fs.to_vec();
                v.push(xiyj.clone());
                cx.p(&v)
            };
            for &li in &all {
                let zi = cx.z(i, li)?;
                let expected = if li == y1 {
                    let mut r = &cx.p(&[cx.w(1)?, cx.y(j)?])? - &cx.p(&[cx.w(i)?, cx.y(j)?])?;
                    r = &r - &cx.p(&[cx.y(1)?, cx.x(i)?, cx.y(j)?])?;
                    &r + &cx.p(&[cx.x(1)?, cx.y(i)?, cx.y(j)?])?
                } else if li.is_high() {
                    -&cx.p(&[zi.clone(), cx.x(1)?, cx.y(j)?])?
                } else {
                    zero.clone()
                };
                t1.record(
                    cx.same(&with(std::slice::from_ref(&zi))?, &expected)?,
                    || format!("i={i} j={j} z_i={}", name(i, li)),
                );
            }
            for &lj in &all {
                let zj = cx.z(j, lj)?;
                let expected = if lj == x1 {
                    let mut r = &cx.p(&[cx.x(i)?, cx.w(1)?])? - &cx.p(&[cx.x(i)?, cx.w(j)?])?;
                    r = &r + &cx.p(&[cx.y(1)?, cx.x(i)?, cx.x(j)?])?;
                    &r - &cx.p(&[cx.x(1)?, cx.x(i)?, cx.y(j)?])?
                } else if lj.is_high() {
                    -&cx.p(&[zj.clone(), cx.x(i)?, cx.y(1)?])?
                } else {
                    zero.clone()
                };
                t2.record(
                    cx.same(&with(std::slice::from_ref(&zj))?, &expected)?,
                    || format!("i={i} j={j} z_j={}", name(j, lj)),
                );
            }
            for &li in &all {
                for &lj in &all {
                    let (zi, zj) = (cx.z(i, li)?, cx.z(j, lj)?);
                    let expected = if li == y1 && lj == x1 {
                        let terms = [
                            (1, [cx.y(1)?, cx.w(i)?, cx.x(j)?]),
                            (1, [cx.y(1)?, cx.x(i)?, cx.w(j)?]),
                            (-1, [cx.x(1)?, cx.w(i)?, cx.y(j)?]),
                            (-1, [cx.x(1)?, cx.y(i)?, cx.w(j)?]),
                            (1, [cx.w(1)?, cx.y(i)?, cx.x(j)?]),
                            (-1, [cx.w(1)?, cx.x(i)?, cx.y(j)?]),
                        ];
                        signed_sum(cx, &terms)?
                    } else {
                        zero.clone()
                    };
                    t3.record(cx.same(&with(&[zi, zj])?, &expected)?, || {
                        format!("i={i} j={j} z_i={} z_j={}", name(i, li), name(j, lj))
                    });
                }
            }
            for &l1 in &all {
                let z1 = cx.z(1, l1)?;
                for &li in &all {
                    let zi = cx.z(i, li)?;
                    let expected = if l1 == x1 && li == y1 {
                        signed_sum(
                            cx,
                            &[
                                (-1, [cx.x(1)?, cx.w(i)?, cx.y(j)?]),
                                (-1, [cx.w(1)?, cx.x(i)?, cx.y(j)?]),
                            ],
                        )?
                    } else if l1 == y1 && li == y1 {
                        signed_sum(
                            cx,
                            &[
                                (-1, [cx.y(1)?, cx.w(i)?, cx.y(j)?]),
                                (-1, [cx.w(1)?, cx.y(i)?, cx.y(j)?]),
                            ],
                        )?
                    } else {
                        zero.clone()
                    };
                    t4.record(cx.same(&with(&[z1.clone(), zi])?, &expected)?, || {
                        format!("i={i} j={j} z_1={} z_i={}", name(1, l1), name(i, li))
                    });
                }
                for &lj in &all {
                    let zj = cx.z(j, lj)?;
                    let expected = if l1 == x1 && lj == x1 {
                        signed_sum(
                            cx,
                            &[
                                (-1, [cx.x(1)?, cx.x(i)?, cx.w(j)?]),
                                (1, [cx.w(1)?, cx.x(i)?, cx.x(j)?]),
                            ],
                        )?
                    } else if l1 == y1 && lj == x1 {
                        signed_sum(
                            cx,
                            &[
                                (-1, [cx.y(1)?, cx.x(i)?, cx.w(j)?]),
                                (1, [cx.w(1)?, cx.x(i)?, cx.y(j)?]),
                            ],
                        )?
                    } else {
                        zero.clone()
                    };
                    t5.record(cx.same(&with(&[z1.clone(), zj])?, &expected)?, || {
                        format!("i={i} j={j} z_1={} z_j={}", name(1, l1), name(j, lj))
                    });
                }
                for &li in &all {
                    for &lj in &all {
                        let prod = with(&[z1.clone(), cx.z(i, li)?, cx.z(j, lj)?])?;
                        t6.record(cx.a.kills(&prod)?, || {
                            format!(
                                "i={i} j={j} z_1={} z_i={} z_j={}",
                                name(1, l1),
                                name(i, li),
                                name(j, lj)
                            )
                        });
                    }
                }
            }
        }
    }
    Ok([t1, t2, t3, t4, t5, t6]
        .into_iter()
        .map(|t| t.check)
        .collect())
}

fn signed_sum<const K: usize>(cx: &Ctx, terms: &[(i64, [E; K])]) -> Result<E> {
    let mut acc = cx.h.zero();
    for (sign, fs) in terms {
        acc = &acc + &cx.p(fs)?.scale(Rational::integer(*sign));
    }
    Ok(acc)
}

/// `ω_i + ω_j + b_i a_j − a_i b_j = (a_i − a_j)(b_i − b_j)
/// = x_i y_i + x_j y_j − x_i y_j − x_j y_i` for `2 ≤ i < j ≤ n`.
fn difference_check(cx: &Ctx) -> Result<LemmaCheck> {
    let h = cx.h.as_ref();
    let n = h.points();
    let mut t = Tally::new("w_i + w_j + b_i*a_j - a_i*b_j = (a_i - a_j)(b_i - b_j) = x_i*y_i + x_j*y_j - x_i*y_j - x_j*y_i");
    for i in 2..=n {
        for j in i + 1..=n {
            let rel = &(&(&cx.w(i)? + &cx.w(j)?) + &cx.p(&[h.b(i, 1)?, h.a(j, 1)?])?)
                - &cx.p(&[h.a(i, 1)?, h.b(j, 1)?])?;
            let diff = cx.p(&[&h.a(i, 1)? - &h.a(j, 1)?, &h.b(i, 1)? - &h.b(j, 1)?])?;
            let xy = signed_sum(
                cx,
                &[
                    (1, [cx.x(i)?, cx.y(i)?]),
                    (1, [cx.x(j)?, cx.y(j)?]),
                    (-1, [cx.x(i)?, cx.y(j)?]),
                    (-1, [cx.x(j)?, cx.y(i)?]),
                ],
            )?;
            t.record(rel == diff && cx.same(&diff, &xy)?, || {
                format!("i={i} j={j}")
            });
        }
    }
    Ok(t.check)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_three_points() {
        let report = verify_lemma_identities(2, 3).unwrap();
        for c in &report.checks {
            assert!(c.passed(), "{}: {:?}", c.name, c.failures);
            assert!(c.cases > 0, "{} has no cases", c.name);
        }
    }

    #[test]
    fn preconditions() {
        assert!(verify_lemma_identities(1, 3).is_err());
        assert!(verify_lemma_identities(2, 2).is_err());
    }

    #[test]
    fn example_product_with_x_first_letter() {
        // x_1 x_2 y_2 = x_1 ω_2 + ω_1 x_2 is an identity in A_2
        let h = Arc::new(SurfacePowerAlgebra::new(2, 3).unwrap());
        let a = a_g(&h).unwrap();
        let lhs = h
            .product(&[h.x(1, 1).unwrap(), h.x(2, 1).unwrap(), h.y(2, 1).unwrap()])
            .unwrap();
        let rhs = &h
            .multiply(&h.x(1, 1).unwrap(), &h.omega(2).unwrap())
            .unwrap()
            + &h.multiply(&h.omega(1).unwrap(), &h.x(2, 1).unwrap())
                .unwrap();
        assert_eq!(a.normal_form(&lhs).unwrap(), a.normal_form(&rhs).unwrap());
        let wrong = &h
            .multiply(&h.x(1, 1).unwrap(), &h.omega(2).unwrap())
            .unwrap()
            - &h.multiply(&h.omega(1).unwrap(), &h.x(2, 1).unwrap())
                .unwrap();
        assert_ne!(a.normal_form(&lhs).unwrap(), a.normal_form(&wrong).unwrap());
    }
}
