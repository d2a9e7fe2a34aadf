#![allow(dead_code)]

use std::collections::HashSet;

use hforest::{in_level, Calculus, LabelId, Ordinal, QOrder, Term, TermStore};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

pub fn anti2() -> Calculus {
    Calculus::new(QOrder::antichain(&["a", "b"]))
}

pub fn chain2() -> Calculus {
    Calculus::new(QOrder::chain(&["a", "b"]))
}

/// Every kind-correct term with exactly `n` nodes, forests taken as
/// arbitrary sequences of at most `max_branch` trees. No canonical-form or
/// level pruning happens here.
pub struct Brute<'a> {
    pub store: &'a TermStore,
    pub labels: Vec<LabelId>,
    pub pool: Vec<Ordinal>,
    pub max_branch: usize,
}

impl Brute<'_> {
    pub fn singletons(&self, n: usize) -> Vec<Term> {
        if n == 1 {
            return self.labels.iter().map(|&l| self.store.label(l)).collect();
        }
        let mut out = Vec::new();
        for i in &self.pool {
            for body in self.trees(n - 1) {
                out.push(self.store.sapp(i.clone(), body).unwrap());
            }
        }
        out
    }

    pub fn trees(&self, n: usize) -> Vec<Term> {
        let mut out = self.singletons(n);
        for h in 1..n {
            for head in self.singletons(h) {
                for tail in self.forests(n - 1 - h) {
                    out.push(self.store.dot(head.clone(), tail).unwrap());
                }
            }
        }
        out
    }

    pub fn forests(&self, n: usize) -> Vec<Term> {
        if n == 0 {
            return Vec::new();
        }
        self.sequences(n - 1, self.max_branch)
            .into_iter()
            .map(|cs| self.store.forest(cs).unwrap())
            .collect()
    }

    fn sequences(&self, n: usize, slots: usize) -> Vec<Vec<Term>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        if slots == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for k in 1..=n {
            for first in self.trees(k) {
                for mut rest in self.sequences(n - k, slots - 1) {
                    rest.insert(0, first.clone());
                    out.push(rest);
                }
            }
        }
        out
    }

    /// The post-condition of enumeration, evaluated literally.
    pub fn canonical_in_level(
        &self,
        level: &Ordinal,
        max_nodes: usize,
        include_empty: bool,
    ) -> HashSet<Term> {
        let mut out = HashSet::new();
        for n in 1..=max_nodes {
            for t in self.trees(n).into_iter().chain(self.forests(n)) {
                if self.store.canonicalize(&t) == t
                    && in_level(&t, level)
                    && (include_empty || !has_empty_forest(&t))
                {
                    out.insert(t);
                }
            }
        }
        out
    }
}

pub fn has_empty_forest(t: &Term) -> bool {
    use hforest::Node;
    match t.node() {
        Node::Label(_) => false,
        Node::SApp(_, u) => has_empty_forest(u),
        Node::Dot(h, f) => has_empty_forest(h) || has_empty_forest(f),
        Node::Forest(cs) => cs.is_empty() || cs.iter().any(has_empty_forest),
    }
}

/// Ordinals below `w^(w^2)` with small coefficients.
pub fn random_ordinal<R: Rng>(rng: &mut R, depth: u32) -> Ordinal {
    let n = rng.gen_range(0..4);
    let mut acc = Ordinal::zero();
    for _ in 0..n {
        let exp = if depth == 0 || rng.gen_bool(0.5) {
            Ordinal::nat(rng.gen_range(0..3))
        } else {
            random_ordinal(rng, depth - 1)
        };
        acc = acc.add(&Ordinal::omega_pow_mul(exp, rng.gen_range(1..4)));
    }
    acc
}

/// A random kind-correct term with roughly `budget` nodes.
pub fn random_term<R: Rng>(
    rng: &mut R,
    calc: &Calculus,
    indices: &[Ordinal],
    budget: usize,
) -> Term {
    if rng.gen_bool(0.3) {
        random_forest(rng, calc, indices, budget)
    } else {
        random_tree(rng, calc, indices, budget)
    }
}

pub fn random_tree<R: Rng>(
    rng: &mut R,
    calc: &Calculus,
    indices: &[Ordinal],
    budget: usize,
) -> Term {
    let head = random_singleton(rng, calc, indices, budget / 2);
    if budget <= 2 || rng.gen_bool(0.4) {
        return head;
    }
    let tail = random_forest(
        rng,
        calc,
        indices,
        budget - head.node_count().min(budget - 1) - 1,
    );
    calc.store().dot(head, tail).unwrap()
}

pub fn random_singleton<R: Rng>(
    rng: &mut R,
    calc: &Calculus,
    indices: &[Ordinal],
    budget: usize,
) -> Term {
    let labels: Vec<LabelId> = calc.qo().ids().collect();
    if budget <= 1 || indices.is_empty() || rng.gen_bool(0.5) {
        return calc.store().label(*labels.choose(rng).unwrap());
    }
    let i = indices.choose(rng).unwrap().clone();
    let body = random_tree(rng, calc, indices, budget - 1);
    calc.store().sapp(i, body).unwrap()
}

pub fn random_forest<R: Rng>(
    rng: &mut R,
    calc: &Calculus,
    indices: &[Ordinal],
    budget: usize,
) -> Term {
    let k = rng.gen_range(0..=3.min(budget));
    let parts = (0..k)
        .map(|_| random_tree(rng, calc, indices, budget.saturating_sub(1) / k.max(1)))
        .collect();
    calc.store().forest(parts).unwrap()
}
