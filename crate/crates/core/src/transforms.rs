//! Section operators `s_α`, `s*_ξ` and retraction operators `r_α`, `r*_ξ`.
//!
//! `s*_ξ = s_α₀ ∘ ⋯ ∘ s_α_m` and `r*_ξ = r_α_m ∘ ⋯ ∘ r_α₀` for
//! `ξ = ω^α₀ + ⋯ + ω^α_m`, so that `r*_ξ ∘ s*_ξ` is the identity.

use std::cmp::Ordering;

use crate::hcalc::Calculus;
use crate::ordinal::Ordinal;
use crate::terms::{Node, Term, TermStore};

/// `s_α`, applied componentwise to forests.
pub fn apply_s(store: &TermStore, index: &Ordinal, t: &Term) -> Term {
    match t.node() {
        Node::Forest(cs) => {
            let mapped = cs.iter().map(|c| apply_s(store, index, c)).collect();
            store.forest(mapped).expect("s-applications are trees")
        }
        _ => store.sapp(index.clone(), t.clone()).expect("tree body"),
    }
}

/// `s*_ξ`; the identity for `ξ = 0`.
pub fn apply_s_star(store: &TermStore, xi: &Ordinal, t: &Term) -> Term {
    let Ok(exps) = xi.summands() else {
        return t.clone();
    };
    exps.iter()
        .rev()
        .fold(t.clone(), |acc, e| apply_s(store, e, &acc))
}

/// `r_α`:
///
/// * `r_α(q) = q`;
/// * `r_α([F₀, F₁, …]) = r_α(F₀) ⊔ r_α(F₁) ⊔ ⋯`;
/// * `r_α(T.V) = r_α(T) ⊔ r_α(V)`;
/// * `r_α(s{β}(T))` is `r_α(T)` if `α > β`, `T` if `α = β`, and the term
///   itself if `α < β`.
///
/// Joins are flattened into a single forest.
pub fn apply_r(store: &TermStore, index: &Ordinal, t: &Term) -> Term {
    match t.node() {
        Node::Label(_) => t.clone(),
        Node::Forest(cs) => join(store, cs.iter().map(|c| apply_r(store, index, c))),
        Node::Dot(h, v) => join(store, [apply_r(store, index, h), apply_r(store, index, v)]),
        Node::SApp(b, u) => match index.cmp(b) {
            Ordering::Greater => apply_r(store, index, u),
            Ordering::Equal => u.clone(),
            Ordering::Less => t.clone(),
        },
    }
}

fn join(store: &TermStore, parts: impl IntoIterator<Item = Term>) -> Term {
    let mut children = Vec::new();
    for p in parts {
        match p.node() {
            Node::Forest(cs) => children.extend(cs.iter().cloned()),
            _ => children.push(p),
        }
    }
    store
        .forest(children)
        .expect("flattened components are trees")
}

/// `r*_ξ`; the identity for `ξ = 0`. Applies `r_α₀` first.
pub fn apply_r_star(store: &TermStore, xi: &Ordinal, t: &Term) -> Term {
    let Ok(exps) = xi.summands() else {
        return t.clone();
    };
    exps.iter()
        .fold(t.clone(), |acc, e| apply_r(store, e, &acc))
}

impl Calculus {
    /// The induced quasiorder `T ≤_h^ξ S`, i.e. `r*_ξ(T) ≤_h r*_ξ(S)`.
    pub fn leq_h_xi(&self, xi: &Ordinal, t: &Term, s: &Term) -> bool {
        let rt = apply_r_star(self.store(), xi, t);
        let rs = apply_r_star(self.store(), xi, s);
        self.leq_h(&rt, &rs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qo::QOrder;

    fn anti() -> Calculus {
        Calculus::new(QOrder::antichain(&["a", "b"]))
    }

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn check(c: &Calculus, out: Term, expected: &str) {
        assert_eq!(c.print(&out), c.print(&c.parse(expected).unwrap()));
        assert_eq!(out, c.parse(expected).unwrap());
    }

    #[test]
    fn apply_s_examples() {
        let c = anti();
        let st = c.store();
        check(&c, apply_s(st, &o("0"), &c.parse("a").unwrap()), "s{0}(a)");
        check(
            &c,
            apply_s(st, &o("1"), &c.parse("[a,b]").unwrap()),
            "[s{1}(a), s{1}(b)]",
        );
        check(&c, apply_s(st, &o("w"), &c.parse("[]").unwrap()), "[]");
    }

    #[test]
    fn apply_s_star_examples() {
        let c = anti();
        let st = c.store();
        let t = c.parse("a.[b]").unwrap();
        assert_eq!(apply_s_star(st, &o("0"), &t), t);
        check(
            &c,
            apply_s_star(st, &o("2"), &c.parse("a").unwrap()),
            "s{0}(s{0}(a))",
        );
        check(
            &c,
            apply_s_star(st, &o("w+1"), &c.parse("a").unwrap()),
            "s{1}(s{0}(a))",
        );
    }

    #[test]
    fn apply_r_examples() {
        let c = anti();
        let st = c.store();
        let r = |a: &str, t: &str| apply_r(st, &o(a), &c.parse(t).unwrap());
        check(&c, r("0", "s{0}(a.[b])"), "a.[b]");
        check(&c, r("0", "a.[b]"), "[a,b]");
        check(&c, r("0", "s{1}(a)"), "s{1}(a)");
        check(&c, r("1", "s{0}(a)"), "a");
        check(&c, r("0", "[]"), "[]");
        check(&c, r("0", "a.[b.[a],s{0}(b.[a])]"), "[a,b,a,b.[a]]");
    }

    #[test]
    fn apply_r_star_examples() {
        let c = anti();
        let st = c.store();
        let t = c.parse("a.[b.[a],b]").unwrap();
        for xi in ["1", "2", "w", "w+1"] {
            assert_eq!(
                apply_r_star(st, &o(xi), &apply_s_star(st, &o(xi), &t)),
                t,
                "{xi}"
            );
        }
        assert_eq!(apply_r_star(st, &o("0"), &t), t);
        check(
            &c,
            apply_r_star(st, &o("w+1"), &c.parse("s{1}(s{0}(a.[b]))").unwrap()),
            "a.[b]",
        );
    }

    #[test]
    fn leq_h_xi_examples() {
        let c = anti();
        let p = |s: &str| c.parse(s).unwrap();
        assert!(!c.leq_h_xi(&o("1"), &p("s{0}(a)"), &p("b")));
        assert!(c.leq_h_xi(&o("1"), &p("a.[b]"), &p("s{0}(a.[b])")));
        assert!(!c.leq_h(&p("a.[b]"), &p("[a,b]")));
        assert!(c.leq_h_xi(&o("1"), &p("a.[b]"), &p("[a,b]")));
        for (t, s) in [("a.[b]", "b.[a]"), ("[a]", "s{0}(b)"), ("s{1}(a)", "a.[a]")] {
            assert_eq!(c.leq_h_xi(&o("0"), &p(t), &p(s)), c.leq_h(&p(t), &p(s)));
        }
    }
}
