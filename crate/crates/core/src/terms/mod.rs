//! Hash-consed terms for iterated labeled forests.
//!
//! There are three syntactic sorts:
//!
//! * singletons: a label `q`, or `s{α}(T)` for a tree term `T`;
//! * trees: singletons, and `S.F` for a singleton `S` and a forest `F`;
//! * forests: `[T₀, …, T_k]`, a finite (possibly empty) list of trees.
//!
//! Every term is interned in a [`TermStore`]; within one store two terms are
//! structurally equal iff their ids are equal.

mod syntax;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use dashmap::DashMap;
use thiserror::Error;

use crate::ordinal::Ordinal;
use crate::qo::LabelId;

pub use syntax::{parse_term, print_term, TermDisplay, TermParseError};

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

/// Process-unique term identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    Singleton,
    Tree,
    Forest,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Label(LabelId),
    SApp(Ordinal, Term),
    Dot(Term, Term),
    Forest(Vec<Term>),
}

struct TermData {
    id: TermId,
    size: usize,
    node: Node,
}

#[derive(Clone)]
pub struct Term(Arc<TermData>);

impl Term {
    pub fn id(&self) -> TermId {
        self.0.id
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// Number of AST nodes.
    pub fn node_count(&self) -> usize {
        self.0.size
    }

    pub fn sort(&self) -> Sort {
        match self.node() {
            Node::Label(_) | Node::SApp(..) => Sort::Singleton,
            Node::Dot(..) => Sort::Tree,
            Node::Forest(_) => Sort::Forest,
        }
    }

    pub fn is_singleton(&self) -> bool {
        self.sort() == Sort::Singleton
    }

    /// Singletons and `S.F` terms.
    pub fn is_tree(&self) -> bool {
        self.sort() != Sort::Forest
    }

    pub fn is_forest(&self) -> bool {
        self.sort() == Sort::Forest
    }

    pub fn forest_children(&self) -> Option<&[Term]> {
        match self.node() {
            Node::Forest(cs) => Some(cs),
            _ => None,
        }
    }

    pub fn is_empty_forest(&self) -> bool {
        matches!(self.node(), Node::Forest(cs) if cs.is_empty())
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Label(l) => write!(f, "#{}", l.0),
            Node::SApp(a, t) => write!(f, "s{{{a}}}({t:?})"),
            Node::Dot(h, t) => write!(f, "{h:?}.{t:?}"),
            Node::Forest(cs) => f.debug_list().entries(cs).finish(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum KindError {
    #[error("the body of s{{..}}(..) must be a tree term")]
    SAppBody,
    #[error("the head of a dot term must be a singleton")]
    DotHead,
    #[error("the tail of a dot term must be a forest")]
    DotTail,
    #[error("forest components must be tree terms")]
    ForestChild,
}

/// Append-only interning table. Concurrent interning of equal structures
/// yields the same term.
#[derive(Default)]
pub struct TermStore {
    table: DashMap<Node, Term>,
}

impl TermStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of distinct terms interned so far.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    fn intern(&self, node: Node) -> Term {
        if let Some(t) = self.table.get(&node) {
            return t.clone();
        }
        let size = 1 + match &node {
            Node::Label(_) => 0,
            Node::SApp(_, t) => t.node_count(),
            Node::Dot(h, t) => h.node_count() + t.node_count(),
            Node::Forest(cs) => cs.iter().map(Term::node_count).sum(),
        };
        self.table
            .entry(node.clone())
            .or_insert_with(|| {
                let id = TermId(NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed));
                Term(Arc::new(TermData { id, size, node }))
            })
            .clone()
    }

    pub fn label(&self, l: LabelId) -> Term {
        self.intern(Node::Label(l))
    }

    pub fn sapp(&self, index: Ordinal, body: Term) -> Result<Term, KindError> {
        if !body.is_tree() {
            return Err(KindError::SAppBody);
        }
        Ok(self.intern(Node::SApp(index, body)))
    }

    pub fn dot(&self, head: Term, tail: Term) -> Result<Term, KindError> {
        if !head.is_singleton() {
            return Err(KindError::DotHead);
        }
        if !tail.is_forest() {
            return Err(KindError::DotTail);
        }
        Ok(self.intern(Node::Dot(head, tail)))
    }

    pub fn forest(&self, children: Vec<Term>) -> Result<Term, KindError> {
        if children.iter().any(Term::is_forest) {
            return Err(KindError::ForestChild);
        }
        Ok(self.intern(Node::Forest(children)))
    }

    pub fn empty_forest(&self) -> Term {
        self.intern(Node::Forest(Vec::new()))
    }

    /// Sorts forest components by [`cmp_syntactic`] and drops exact
    /// duplicates, recursively. The result is h-equivalent to the input.
    pub fn canonicalize(&self, t: &Term) -> Term {
        match t.node() {
            Node::Label(_) => t.clone(),
            Node::SApp(a, u) => {
                let u2 = self.canonicalize(u);
                if u2 == *u {
                    t.clone()
                } else {
                    self.intern(Node::SApp(a.clone(), u2))
                }
            }
            Node::Dot(h, f) => {
                let (h2, f2) = (self.canonicalize(h), self.canonicalize(f));
                if h2 == *h && f2 == *f {
                    t.clone()
                } else {
                    self.intern(Node::Dot(h2, f2))
                }
            }
            Node::Forest(cs) => {
                let mut cs2: Vec<Term> = cs.iter().map(|c| self.canonicalize(c)).collect();
                cs2.sort_by(cmp_syntactic);
                cs2.dedup();
                if cs2 == *cs {
                    t.clone()
                } else {
                    self.intern(Node::Forest(cs2))
                }
            }
        }
    }
}

fn kind_tag(t: &Term) -> u8 {
    match t.node() {
        Node::Label(_) => 0,
        Node::SApp(..) => 1,
        Node::Dot(..) => 2,
        Node::Forest(_) => 3,
    }
}

/// Fixed total order on terms: kind tag (label < s-application < dot <
/// forest), then ordinal index, then label name, then components
/// lexicographically.
pub fn cmp_syntactic(a: &Term, b: &Term) -> Ordering {
    if a.id() == b.id() {
        return Ordering::Equal;
    }
    kind_tag(a)
        .cmp(&kind_tag(b))
        .then_with(|| match (a.node(), b.node()) {
            (Node::Label(p), Node::Label(q)) => p.cmp(q),
            (Node::SApp(i, u), Node::SApp(j, v)) => i.cmp(j).then_with(|| cmp_syntactic(u, v)),
            (Node::Dot(h, f), Node::Dot(k, g)) => {
                cmp_syntactic(h, k).then_with(|| cmp_syntactic(f, g))
            }
            (Node::Forest(xs), Node::Forest(ys)) => {
                for (x, y) in xs.iter().zip(ys) {
                    let c = cmp_syntactic(x, y);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                xs.len().cmp(&ys.len())
            }
            _ => unreachable!("kind tags already compared"),
        })
}

/// Membership of `t` in the level-`level` fragment of the iterated forest
/// calculus.
///
/// Level 0 holds labels and forests of labels. For `level = ω^α₀ + η`:
/// labels, forests and dot terms recurse componentwise at the same level;
/// `s{β}(u)` needs `u` at the same level when `β < α₀`, `u` at level `η`
/// when `β = α₀`, and the whole term at level `η` when `β > α₀`.
pub fn in_level(t: &Term, level: &Ordinal) -> bool {
    let Some((lead, tail)) = level.split_leading() else {
        return match t.node() {
            Node::Label(_) => true,
            Node::Forest(cs) => cs.iter().all(|c| matches!(c.node(), Node::Label(_))),
            _ => false,
        };
    };
    in_split_level(t, &lead, &tail)
}

fn in_split_level(t: &Term, lead: &Ordinal, tail: &Ordinal) -> bool {
    match t.node() {
        Node::Label(_) => true,
        Node::Forest(cs) => cs.iter().all(|c| in_split_level(c, lead, tail)),
        Node::Dot(h, f) => in_split_level(h, lead, tail) && in_split_level(f, lead, tail),
        Node::SApp(b, u) => match b.cmp(lead) {
            Ordering::Less => in_split_level(u, lead, tail),
            Ordering::Equal => in_level(u, tail),
            Ordering::Greater => in_level(t, tail),
        },
    }
}
