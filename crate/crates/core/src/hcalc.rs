//! Decision procedure for the homomorphism quasiorder `≤_h` on terms.
//!
//! The rules, for singletons `A, C`, forests `B, D`, labels `p, r`:
//!
//! 1. `p ≤ r` iff `p ≤_Q r`.
//! 2. `p ≤ s{β}(V)` iff `p ≤ V`; `s{α}(U) ≤ p` iff `U ≤ p` (a label is
//!    equivalent to every `s{α}` applied to it).
//! 3. `s{α}(U) ≤ s{β}(V)` reduces to `U ≤ V` if `α = β`, to `s{α}(U) ≤ V` if
//!    `α > β`, and to `U ≤ s{β}(V)` if `α < β`.
//! 4. `A.B ≤ C.D` iff `A ≤ C and B ≤ C.D`, or `A ≰ C and A.B ≤ D`.
//! 5. A singleton `X` is read as `X.[]`: `X ≤ C.D` iff `X ≤ C` or `X ≤ D`,
//!    and `A.B ≤ X` iff `A ≤ X` and `B ≤ X`.
//! 6. `[B₀,…] ≤ R` iff every `Bᵢ ≤ R`; a tree `L ≤ [D₀,…]` iff some
//!    `L ≤ Dⱼ`. Hence `[] ≤` everything and no tree is `≤ []`.
//!
//! Every reduction strictly shrinks the combined node count of the pair.

use std::cmp::Ordering;
use std::convert::Infallible;

use dashmap::DashMap;
use thiserror::Error;

use crate::qo::QOrder;
use crate::terms::{parse_term, Node, Term, TermDisplay, TermId, TermParseError, TermStore};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("recursion fuel exhausted at a pair of combined size {needed} (fuel {fuel})")]
pub struct FuelExhausted {
    pub needed: usize,
    pub fuel: usize,
}

/// A label alphabet together with the term store and `≤_h` memo table
/// that belong to it. Terms handed to its methods must come from its store.
pub struct Calculus {
    qo: QOrder,
    store: TermStore,
    memo: DashMap<(TermId, TermId), bool>,
}

impl Calculus {
    pub fn new(qo: QOrder) -> Self {
        Calculus {
            qo,
            store: TermStore::new(),
            memo: DashMap::new(),
        }
    }

    pub fn qo(&self) -> &QOrder {
        &self.qo
    }

    pub fn store(&self) -> &TermStore {
        &self.store
    }

    pub fn parse(&self, text: &str) -> Result<Term, TermParseError> {
        parse_term(&self.store, &self.qo, text)
    }

    pub fn display<'a>(&'a self, t: &'a Term) -> TermDisplay<'a> {
        TermDisplay::new(&self.qo, t)
    }

    pub fn print(&self, t: &Term) -> String {
        self.display(t).to_string()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear_memo(&self) {
        self.memo.clear();
    }

    /// `t ≤_h s`, memoized on the id pair.
    pub fn leq_h(&self, t: &Term, s: &Term) -> bool {
        let key = (t.id(), s.id());
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let Ok(v) = self.step(t, s, &mut |x, y| Ok::<_, Infallible>(self.leq_h(x, y)));
        self.memo.insert(key, v);
        v
    }

    /// Memo-free evaluation. Each recursive call must see a pair of strictly
    /// smaller combined node count than its caller; the initial fuel is the
    /// combined node count of `(t, s)`.
    pub fn leq_h_unmemoized(&self, t: &Term, s: &Term) -> Result<bool, FuelExhausted> {
        self.fueled(t, s, t.node_count() + s.node_count())
    }

    fn fueled(&self, t: &Term, s: &Term, fuel: usize) -> Result<bool, FuelExhausted> {
        let needed = t.node_count() + s.node_count();
        if needed > fuel {
            return Err(FuelExhausted { needed, fuel });
        }
        self.step(t, s, &mut |x, y| self.fueled(x, y, needed - 1))
    }

    /// One application of the rule table, delegating every sub-comparison.
    fn step<E>(
        &self,
        t: &Term,
        s: &Term,
        sub: &mut impl FnMut(&Term, &Term) -> Result<bool, E>,
    ) -> Result<bool, E> {
        if let Node::Forest(ts) = t.node() {
            for c in ts {
                if !sub(c, s)? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        if let Node::Forest(ss) = s.node() {
            for d in ss {
                if sub(t, d)? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        match (t.node(), s.node()) {
            (Node::Label(p), Node::Label(r)) => Ok(self.qo.leq(*p, *r)),
            (Node::Label(_), Node::SApp(_, v)) => sub(t, v),
            (Node::SApp(_, u), Node::Label(_)) => sub(u, s),
            (Node::SApp(a, u), Node::SApp(b, v)) => match a.cmp(b) {
                Ordering::Equal => sub(u, v),
                Ordering::Greater => sub(t, v),
                Ordering::Less => sub(u, s),
            },
            (_, Node::Dot(c, d)) if t.is_singleton() => Ok(sub(t, c)? || sub(t, d)?),
            (Node::Dot(a, b), _) if s.is_singleton() => Ok(sub(a, s)? && sub(b, s)?),
            (Node::Dot(a, b), Node::Dot(c, d)) => {
                if sub(a, c)? {
                    sub(b, s)
                } else {
                    sub(t, d)
                }
            }
            _ => unreachable!("forests handled above"),
        }
    }

    pub fn equiv_h(&self, t: &Term, s: &Term) -> bool {
        self.leq_h(t, s) && self.leq_h(s, t)
    }

    /// Whether `f` is h-equivalent to a tree term: trees trivially are; a
    /// nonempty forest is iff it lies below one of its own components.
    pub fn is_join_irreducible(&self, f: &Term) -> bool {
        match f.node() {
            Node::Forest(cs) => cs.iter().any(|c| self.leq_h(f, c)),
            _ => true,
        }
    }
}
