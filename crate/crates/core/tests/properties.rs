use std::sync::Arc;

use proptest::prelude::*;
use tcconf::quotient::{a_g, absorption_failures, b_g, e_infinity};
use tcconf::surface::SurfacePowerAlgebra;
use tcconf::{AlgebraExt, Element, GradedAlgebra, Monomial, Rational, TensorElement};

fn q(n: i64) -> Rational {
    Rational::integer(n)
}

fn surface() -> impl Strategy<Value = Arc<SurfacePowerAlgebra>> {
    (1usize..=3, 1usize..=3).prop_map(|(g, n)| Arc::new(SurfacePowerAlgebra::new(g, n).unwrap()))
}

/// An arbitrary (possibly inhomogeneous) element with small coefficients.
fn element(h: &SurfacePowerAlgebra) -> impl Strategy<Value = Element<Rational>> {
    let basis = h.basis().to_vec();
    let id = h.id();
    prop::collection::vec((0..basis.len(), -4i64..=4), 0..5).prop_map(move |terms| {
        terms.into_iter().fold(Element::zero(id), |acc, (i, c)| {
            &acc + &Element::from_vector(id, [(basis[i].0, q(c))].into_iter().collect())
        })
    })
}

fn homogeneous(h: &SurfacePowerAlgebra, degree: usize) -> impl Strategy<Value = Element<Rational>> {
    let ms: Vec<Monomial> = h
        .basis()
        .iter()
        .copied()
        .filter(|&m| h.degree(m) == degree)
        .collect();
    let id = h.id();
    prop::collection::vec((0..ms.len(), -3i64..=3), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(Element::zero(id), |acc, (i, c)| {
            &acc + &Element::from_vector(id, [(ms[i].0, q(c))].into_iter().collect())
        })
    })
}

fn tensor(
    h: &Arc<SurfacePowerAlgebra>,
    arity: usize,
) -> impl Strategy<Value = TensorElement<Rational>> {
    let h = Arc::clone(h);
    prop::collection::vec(prop::collection::vec(element(&h), arity), 1..3).prop_map(move |rows| {
        rows.iter()
            .fold(TensorElement::zero(h.id(), arity), |acc, slots| {
                acc.add(&h.pure_tensor(slots).unwrap())
            })
    })
}

fn with_surface<S: Strategy>(
    f: impl Fn(Arc<SurfacePowerAlgebra>) -> S + Clone,
) -> impl Strategy<Value = (Arc<SurfacePowerAlgebra>, S::Value)> {
    surface().prop_flat_map(move |h| (Just(Arc::clone(&h)), f(h)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn unit_law((h, e) in with_surface(|h| element(&h))) {
        prop_assert_eq!(h.multiply(&h.one(), &e).unwrap(), e.clone());
        prop_assert_eq!(h.multiply(&e, &h.one()).unwrap(), e);
    }

    #[test]
    fn element_text_round_trip((h, e) in with_surface(|h| element(&h))) {
        let text = h.format_element(&e);
        prop_assert_eq!(h.parse_element(&text).unwrap(), e);
    }

    #[test]
    fn tensor_text_round_trip((h, t) in with_surface(|h| (2usize..=3).prop_flat_map(move |s| tensor(&h, s)))) {
        let text = h.format_tensor(&t);
        prop_assert_eq!(h.parse_tensor(t.arity(), &text).unwrap(), t);
    }

    #[test]
    fn mu_is_linear_and_extracts_slots((h, (u, v, slot, c)) in with_surface(|h| (element(&h), element(&h), 0usize..3, -3i64..=3))) {
        let tu = h.embed(&u, slot, 3).unwrap();
        prop_assert_eq!(h.mu(&tu).unwrap(), u.clone());
        let tv = h.embed(&v, 0, 3).unwrap();
        let combo = tu.scale(q(c)).add(&tv);
        prop_assert_eq!(h.mu(&combo).unwrap(), &u.scale(q(c)) + &v);
    }

    #[test]
    fn arity_one_tensor_product_is_multiply((h, (u, v)) in with_surface(|h| (element(&h), element(&h)))) {
        let tu = h.embed(&u, 0, 1).unwrap();
        let tv = h.embed(&v, 0, 1).unwrap();
        let prod = h.tensor_multiply(&tu, &tv).unwrap();
        prop_assert_eq!(prod, h.embed(&h.multiply(&u, &v).unwrap(), 0, 1).unwrap());
    }

    #[test]
    fn koszul_sign_on_pure_tensors((h, ((d2, d3), (a, b, c, d))) in with_surface(|h| {
        (0usize..=2, 0usize..=2, 0usize..=2, 0usize..=2).prop_flat_map(move |(d1, d2, d3, d4)| {
            (Just((d2, d3)), (homogeneous(&h, d1), homogeneous(&h, d2), homogeneous(&h, d3), homogeneous(&h, d4)))
        })
    })) {
        // (a⊗b)(c⊗d) = (−1)^{|b||c|} ac ⊗ bd
        let left = h.tensor_multiply(&h.pure_tensor(&[a.clone(), b.clone()]).unwrap(), &h.pure_tensor(&[c.clone(), d.clone()]).unwrap()).unwrap();
        let sign = if d2 * d3 % 2 == 1 { q(-1) } else { q(1) };
        let right = h.pure_tensor(&[h.multiply(&a, &c).unwrap(), h.multiply(&b, &d).unwrap()]).unwrap().scale(sign);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn x_generator_round_trip((h, (i, p)) in with_surface(|h| (1..=h.points(), 1..=h.genus()))) {
        let x = h.x(i, p).unwrap();
        let y = h.y(i, p).unwrap();
        if i >= 2 && p == 1 {
            prop_assert_eq!(&x + &h.a(1, 1).unwrap(), h.a(i, 1).unwrap());
            prop_assert_eq!(&y + &h.b(1, 1).unwrap(), h.b(i, 1).unwrap());
        } else {
            prop_assert_eq!(x, h.a(i, p).unwrap());
            prop_assert_eq!(y, h.b(i, p).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn tensor_multiply_associative((h, (a, b, c)) in with_surface(|h| {
        (2usize..=3).prop_flat_map(move |s| (tensor(&h, s), tensor(&h, s), tensor(&h, s)))
    })) {
        let left = h.tensor_multiply(&h.tensor_multiply(&a, &b).unwrap(), &c).unwrap();
        let right = h.tensor_multiply(&a, &h.tensor_multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn absorption_is_exhaustive_at_desk_scale() {
    for (g, n) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
        let h = Arc::new(SurfacePowerAlgebra::new(g, n).unwrap());
        let e = e_infinity(&h).unwrap();
        assert_eq!(
            absorption_failures(&e, &h.totaro_relations().unwrap().generators).unwrap(),
            0
        );
        let a = a_g(&h).unwrap();
        assert_eq!(
            absorption_failures(&a, &h.bunch16_relations().unwrap().generators).unwrap(),
            0
        );
        let b = b_g(&h).unwrap();
        let mut gens = h.bunch16_relations().unwrap().generators;
        gens.extend(h.j_g_relations().unwrap().generators);
        assert_eq!(absorption_failures(&b, &gens).unwrap(), 0);
    }
}
