mod common;

use common::o;
use hforest::{
    apply_r, apply_r_star, apply_s_star, Calculus, Node, Ordinal, QOrder, Term, TermStore,
};
use proptest::prelude::*;

fn ordinal() -> impl Strategy<Value = Ordinal> {
    let leaf = (0u64..5).prop_map(Ordinal::nat);
    leaf.prop_recursive(3, 16, 4, |inner| {
        prop::collection::vec((inner, 1u64..4), 0..4).prop_map(|parts| {
            parts.into_iter().fold(Ordinal::zero(), |acc, (e, m)| {
                acc.add(&Ordinal::omega_pow_mul(e, m))
            })
        })
    })
}

/// Shape of a term, independent of any store.
#[derive(Debug, Clone)]
enum Shape {
    Label(u32),
    SApp(u8, Box<Shape>),
    Dot(Box<Shape>, Vec<Shape>),
}

const INDICES: [&str; 4] = ["0", "1", "2", "w"];

fn singleton_shape(tree: impl Strategy<Value = Shape> + Clone) -> impl Strategy<Value = Shape> {
    prop_oneof![
        2 => (0u32..2).prop_map(Shape::Label),
        1 => (0u8..4, tree).prop_map(|(i, t)| Shape::SApp(i, Box::new(t))),
    ]
}

fn tree_shape() -> impl Strategy<Value = Shape> {
    let leaf = (0u32..2).prop_map(Shape::Label);
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            singleton_shape(inner.clone()),
            (
                singleton_shape(inner.clone()),
                prop::collection::vec(inner, 0..3)
            )
                .prop_map(|(h, cs)| Shape::Dot(Box::new(h), cs)),
        ]
    })
}

/// A tree (`None`) or a forest of trees.
fn term_shape() -> impl Strategy<Value = (Shape, Option<Vec<Shape>>)> {
    prop_oneof![
        tree_shape().prop_map(|t| (t, None)),
        prop::collection::vec(tree_shape(), 0..3).prop_map(|cs| (Shape::Label(0), Some(cs))),
    ]
}

fn build_tree(st: &TermStore, q: &QOrder, s: &Shape) -> Term {
    match s {
        Shape::Label(l) => st.label(q.ids().nth(*l as usize).unwrap()),
        Shape::SApp(i, b) => st
            .sapp(o(INDICES[*i as usize]), build_tree(st, q, b))
            .unwrap(),
        Shape::Dot(h, cs) => {
            let tail = st
                .forest(cs.iter().map(|c| build_tree(st, q, c)).collect())
                .unwrap();
            st.dot(build_tree(st, q, h), tail).unwrap()
        }
    }
}

fn build(c: &Calculus, shape: &(Shape, Option<Vec<Shape>>)) -> Term {
    match &shape.1 {
        None => build_tree(c.store(), c.qo(), &shape.0),
        Some(cs) => c
            .store()
            .forest(
                cs.iter()
                    .map(|s| build_tree(c.store(), c.qo(), s))
                    .collect(),
            )
            .unwrap(),
    }
}

fn calc(chain: bool) -> Calculus {
    if chain {
        Calculus::new(QOrder::chain(&["a", "b"]))
    } else {
        Calculus::new(QOrder::antichain(&["a", "b"]))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn ordinal_print_parse_round_trip(x in ordinal()) {
        prop_assert_eq!(o(&x.to_string()), x);
    }

    #[test]
    fn ordinal_addition_is_associative(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn ordinal_zero_is_neutral(a in ordinal()) {
        prop_assert_eq!(a.add(&Ordinal::zero()), a.clone());
        prop_assert_eq!(Ordinal::zero().add(&a), a);
    }

    #[test]
    fn ordinal_order_is_total_and_antisymmetric(a in ordinal(), b in ordinal()) {
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        prop_assert_eq!(a.cmp(&b) == std::cmp::Ordering::Equal, a == b);
    }

    #[test]
    fn ordinal_addition_is_right_strictly_monotone(a in ordinal(), b in ordinal(), c in ordinal()) {
        if b < c {
            prop_assert!(a.add(&b) < a.add(&c));
        }
        prop_assert!(a.add(&b) >= b);
    }

    #[test]
    fn ordinal_summands_fold_back(a in ordinal()) {
        match a.summands() {
            Err(_) => prop_assert!(a.is_zero()),
            Ok(exps) => {
                let folded = exps.iter().fold(Ordinal::zero(), |acc, e| acc.add(&Ordinal::omega_pow(e.clone())));
                prop_assert_eq!(folded, a.clone());
                prop_assert!(exps.windows(2).all(|w| w[0] >= w[1]));
                let (lead, tail) = a.split_leading().unwrap();
                prop_assert_eq!(&lead, &exps[0]);
                prop_assert_eq!(Ordinal::omega_pow(lead).add(&tail), a);
            }
        }
    }

    #[test]
    fn term_print_parse_round_trip(shape in term_shape(), chain in any::<bool>()) {
        let c = calc(chain);
        let t = build(&c, &shape);
        prop_assert_eq!(c.parse(&c.print(&t)).unwrap(), t);
    }

    #[test]
    fn interning_matches_structure(shape in term_shape()) {
        let c = calc(false);
        let t1 = build(&c, &shape);
        let t2 = build(&c, &shape);
        prop_assert_eq!(t1.id(), t2.id());
        let other = Calculus::new(QOrder::antichain(&["a", "b"]));
        let t3 = build(&other, &shape);
        prop_assert_eq!(c.print(&t1), other.print(&t3));
    }

    #[test]
    fn canonicalize_is_idempotent_and_preserves_degree(shape in term_shape(), chain in any::<bool>()) {
        let c = calc(chain);
        let t = build(&c, &shape);
        let k = c.store().canonicalize(&t);
        prop_assert_eq!(c.store().canonicalize(&k), k.clone());
        prop_assert!(c.equiv_h(&t, &k));
    }

    #[test]
    fn memo_free_evaluation_agrees(a in term_shape(), b in term_shape(), chain in any::<bool>()) {
        let c = calc(chain);
        let (t, s) = (build(&c, &a), build(&c, &b));
        prop_assert_eq!(c.leq_h_unmemoized(&t, &s), Ok(c.leq_h(&t, &s)));
    }

    #[test]
    fn leq_h_is_a_quasiorder(a in term_shape(), b in term_shape(), d in term_shape(), chain in any::<bool>()) {
        let c = calc(chain);
        let (t, s, u) = (build(&c, &a), build(&c, &b), build(&c, &d));
        prop_assert!(c.leq_h(&t, &t));
        if c.leq_h(&t, &s) && c.leq_h(&s, &u) {
            prop_assert!(c.leq_h(&t, &u));
        }
    }

    #[test]
    fn section_then_retraction_is_identity(shape in term_shape(), xi in ordinal()) {
        let c = calc(false);
        let t = build(&c, &shape);
        prop_assert_eq!(apply_r_star(c.store(), &xi, &apply_s_star(c.store(), &xi, &t)), t);
    }

    #[test]
    fn sections_embed(a in term_shape(), b in term_shape(), xi in ordinal()) {
        let c = calc(false);
        let (t, s) = (build(&c, &a), build(&c, &b));
        let (ut, us) = (apply_s_star(c.store(), &xi, &t), apply_s_star(c.store(), &xi, &s));
        prop_assert_eq!(c.leq_h(&ut, &us), c.leq_h(&t, &s));
    }

    #[test]
    fn retractions_are_monotone(a in term_shape(), b in term_shape(), i in 0usize..4, chain in any::<bool>()) {
        let c = calc(chain);
        let (t, s) = (build(&c, &a), build(&c, &b));
        let alpha = o(INDICES[i]);
        if c.leq_h(&t, &s) {
            prop_assert!(c.leq_h(&apply_r(c.store(), &alpha, &t), &apply_r(c.store(), &alpha, &s)));
        }
    }

    #[test]
    fn join_irreducible_iff_equivalent_to_a_component(cs in prop::collection::vec(tree_shape(), 1..4)) {
        let c = calc(false);
        let f = build(&c, &(Shape::Label(0), Some(cs)));
        let comps = match f.node() { Node::Forest(cs) => cs.clone(), _ => unreachable!() };
        prop_assert_eq!(c.is_join_irreducible(&f), comps.iter().any(|k| c.equiv_h(&f, k)));
    }
}
