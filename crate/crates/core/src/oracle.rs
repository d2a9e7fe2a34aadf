//! Brute-force semantics for level-1 terms: finite Q-labeled forests and the
//! monotone-map definition of `≤_h`.
//!
//! `F ≤_h G` holds when some `φ: nodes(F) → nodes(G)` keeps every label
//! `≤_Q`-below its image and sends each ancestor-or-equal pair to an
//! ancestor-or-equal pair. Equivalently, both forests hang from a virtual
//! root that must map to the other virtual root.

use thiserror::Error;

use crate::ordinal::Ordinal;
use crate::qo::{LabelId, QOrder};
use crate::terms::{in_level, Node, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("term is not in level 1")]
    LevelViolation,
    #[error("only s{{0}}(label) applications denote plain labels")]
    NonConstantSApp,
    #[error("parent links of node {0} form a cycle or point outside the forest")]
    BadParent(usize),
}

/// A finite forest of labeled nodes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabeledForest {
    parent: Vec<Option<usize>>,
    label: Vec<LabelId>,
    children: Vec<Vec<usize>>,
}

impl LabeledForest {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node under an existing `parent` (or as a root) and returns
    /// its index.
    pub fn add_node(&mut self, parent: Option<usize>, label: LabelId) -> usize {
        let id = self.label.len();
        if let Some(p) = parent {
            assert!(p < id, "parent {p} does not exist");
            self.children[p].push(id);
        }
        self.parent.push(parent);
        self.label.push(label);
        self.children.push(Vec::new());
        id
    }

    /// Builds a forest from arbitrary parent links, rejecting cycles.
    pub fn from_parents(
        parents: &[Option<usize>],
        labels: &[LabelId],
    ) -> Result<LabeledForest, OracleError> {
        assert_eq!(parents.len(), labels.len());
        let n = parents.len();
        let mut children = vec![Vec::new(); n];
        for (x, p) in parents.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(OracleError::BadParent(x));
                }
                children[p].push(x);
            }
        }
        for x in 0..n {
            let mut cur = x;
            let mut steps = 0;
            while let Some(p) = parents[cur] {
                cur = p;
                steps += 1;
                if steps > n {
                    return Err(OracleError::BadParent(x));
                }
            }
        }
        Ok(LabeledForest {
            parent: parents.to_vec(),
            label: labels.to_vec(),
            children,
        })
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    pub fn label(&self, x: usize) -> LabelId {
        self.label[x]
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn children(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&x| self.parent[x].is_none())
    }

    pub fn is_ancestor_or_eq(&self, x: usize, y: usize) -> bool {
        let mut cur = Some(y);
        while let Some(c) = cur {
            if c == x {
                return true;
            }
            cur = self.parent[c];
        }
        false
    }

    /// Nodes in an order where every child precedes its parent.
    fn bottom_up(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack: Vec<(usize, bool)> = self.roots().map(|r| (r, false)).collect();
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                order.push(x);
            } else {
                stack.push((x, true));
                stack.extend(self.children[x].iter().map(|&c| (c, false)));
            }
        }
        order
    }
}

/// Converts a level-1 term into the forest it denotes. `s{0}(q)` is read as
/// the label `q`.
pub fn to_labeled_forest(t: &Term) -> Result<LabeledForest, OracleError> {
    if !in_level(t, &Ordinal::one()) {
        return Err(OracleError::LevelViolation);
    }
    let mut f = LabeledForest::new();
    add_term(&mut f, t, None)?;
    Ok(f)
}

fn add_term(f: &mut LabeledForest, t: &Term, parent: Option<usize>) -> Result<(), OracleError> {
    match t.node() {
        Node::Forest(cs) => {
            for c in cs {
                add_term(f, c, parent)?;
            }
        }
        Node::Dot(h, tail) => {
            let root = f.add_node(parent, constant_label(h)?);
            add_term(f, tail, Some(root))?;
        }
        _ => {
            f.add_node(parent, constant_label(t)?);
        }
    }
    Ok(())
}

fn constant_label(t: &Term) -> Result<LabelId, OracleError> {
    match t.node() {
        Node::Label(l) => Ok(*l),
        Node::SApp(i, u) if i.is_zero() => match u.node() {
            Node::Label(l) => Ok(*l),
            _ => Err(OracleError::NonConstantSApp),
        },
        _ => Err(OracleError::NonConstantSApp),
    }
}

/// Decides `f ≤_h g` by memoized search over node assignments.
///
/// `fits[x][y]` records whether the subtree at `x` maps into `g` with
/// `x ↦ y`: the label of `x` must be below that of `y`, and every child of
/// `x` must fit at some node of the subtree of `y`. Monotonicity only
/// constrains parent/child pairs, so these local choices compose.
pub fn hom_leq(qo: &QOrder, f: &LabeledForest, g: &LabeledForest) -> bool {
    let m = g.len();
    // subtree[y] = descendants-or-self of y in g
    let mut subtree: Vec<Vec<usize>> = vec![Vec::new(); m];
    for y in 0..m {
        let mut cur = Some(y);
        while let Some(c) = cur {
            subtree[c].push(y);
            cur = g.parent(c);
        }
    }
    let mut fits = vec![vec![false; m]; f.len()];
    for x in f.bottom_up() {
        for y in 0..m {
            fits[x][y] = qo.leq(f.label(x), g.label(y))
                && f.children(x)
                    .iter()
                    .all(|&c| subtree[y].iter().any(|&z| fits[c][z]));
        }
    }
    f.roots().all(|r| (0..m).any(|y| fits[r][y]))
}
