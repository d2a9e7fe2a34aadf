//! Term enumeration, quotient posets of `≤_h` / `≤_h^ξ`, and Hasse diagram
//! export.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::hcalc::Calculus;
use crate::ordinal::Ordinal;
use crate::terms::{cmp_syntactic, Node, Term};
use crate::transforms::apply_r_star;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("max_nodes must be at least 1")]
    NoNodes,
    #[error("enumeration exceeded the limit of {0} terms")]
    TooManyTerms(usize),
    #[error("index cap {cap} admits infinitely many indices below w^{lead}")]
    UnboundedIndices { cap: Ordinal, lead: Ordinal },
}

/// Bounds for [`enumerate_terms`].
#[derive(Debug, Clone)]
pub struct EnumConfig {
    pub level: Ordinal,
    pub max_nodes: usize,
    /// Maximum number of components of any forest.
    pub max_branch: usize,
    /// Largest index admitted in `s{..}(..)`.
    pub index_cap: Ordinal,
    /// Admit the empty forest, both as a term and as the tail of a dot.
    pub include_empty: bool,
    pub max_terms: usize,
}

impl EnumConfig {
    /// Default cap: the leading exponent of the level, so every index the
    /// level's own syntax needs is present.
    pub fn new(level: Ordinal, max_nodes: usize, max_branch: usize) -> Self {
        let index_cap = level.leading_exponent().cloned().unwrap_or_default();
        EnumConfig {
            level,
            max_nodes,
            max_branch,
            index_cap,
            include_empty: false,
            max_terms: 5_000_000,
        }
    }

    pub fn with_index_cap(mut self, cap: Ordinal) -> Self {
        self.index_cap = cap;
        self
    }

    pub fn with_empty(mut self, include: bool) -> Self {
        self.include_empty = include;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }
}

/// Indices offered to `s{..}`: the exponents of the level's normal form,
/// plus the natural numbers below its leading exponent, all capped.
pub fn index_pool(level: &Ordinal, cap: &Ordinal) -> Result<Vec<Ordinal>, EnumError> {
    let Some(lead) = level.leading_exponent() else {
        return Ok(Vec::new());
    };
    let mut pool: Vec<Ordinal> = level
        .cnf()
        .iter()
        .map(|(e, _)| e.clone())
        .filter(|e| e <= cap)
        .collect();
    let naturals_below = match (lead.as_nat(), cap.as_nat()) {
        (Some(l), Some(c)) => l.min(c + 1),
        (Some(l), None) => l,
        (None, Some(c)) => c + 1,
        (None, None) => {
            return Err(EnumError::UnboundedIndices {
                cap: cap.clone(),
                lead: lead.clone(),
            })
        }
    };
    pool.extend((0..naturals_below).map(Ordinal::nat));
    pool.sort();
    pool.dedup();
    Ok(pool)
}

/// All canonical terms of the configured level within the bounds, ordered
/// by node count and then syntactically.
pub fn enumerate_terms(calc: &Calculus, cfg: &EnumConfig) -> Result<Vec<Term>, EnumError> {
    if cfg.max_nodes == 0 {
        return Err(EnumError::NoNodes);
    }
    let mut gen = Generator {
        calc,
        cfg,
        pool: index_pool(&cfg.level, &cfg.index_cap)?,
        singletons: HashMap::new(),
        forests: HashMap::new(),
        trees: HashMap::new(),
    };
    let mut out = Vec::new();
    for n in 1..=cfg.max_nodes {
        out.extend(gen.trees(&cfg.level, n)?);
        let forests = gen.forests(&cfg.level, n)?;
        out.extend(
            forests
                .into_iter()
                .filter(|f| cfg.include_empty || !f.is_empty_forest()),
        );
        if out.len() > cfg.max_terms {
            return Err(EnumError::TooManyTerms(cfg.max_terms));
        }
    }
    out.sort_by(|a, b| {
        a.node_count()
            .cmp(&b.node_count())
            .then_with(|| cmp_syntactic(a, b))
    });
    Ok(out)
}

struct Generator<'a> {
    calc: &'a Calculus,
    cfg: &'a EnumConfig,
    pool: Vec<Ordinal>,
    singletons: HashMap<(Ordinal, usize), Vec<Term>>,
    forests: HashMap<(Ordinal, usize), Vec<Term>>,
    trees: HashMap<(Ordinal, usize), Vec<Term>>,
}

impl Generator<'_> {
    fn singletons(&mut self, level: &Ordinal, n: usize) -> Result<Vec<Term>, EnumError> {
        let key = (level.clone(), n);
        if let Some(v) = self.singletons.get(&key) {
            return Ok(v.clone());
        }
        let store = self.calc.store();
        let mut out = Vec::new();
        if n == 1 {
            out.extend(self.calc.qo().ids().map(|l| store.label(l)));
        } else if let Some((lead, tail)) = level.split_leading() {
            for beta in self.pool.clone() {
                let bodies = match beta.cmp(&lead) {
                    Ordering::Less => self.trees(level, n - 1)?,
                    Ordering::Equal => self.trees(&tail, n - 1)?,
                    Ordering::Greater => {
                        let whole = self.singletons(&tail, n)?;
                        out.extend(
                            whole
                                .into_iter()
                                .filter(|t| matches!(t.node(), Node::SApp(i, _) if *i == beta)),
                        );
                        continue;
                    }
                };
                for body in bodies {
                    out.push(store.sapp(beta.clone(), body).expect("tree body"));
                }
            }
        }
        self.singletons.insert(key, out.clone());
        Ok(out)
    }

    fn trees(&mut self, level: &Ordinal, n: usize) -> Result<Vec<Term>, EnumError> {
        let key = (level.clone(), n);
        if let Some(v) = self.trees.get(&key) {
            return Ok(v.clone());
        }
        let mut out = self.singletons(level, n)?;
        if level.is_zero() || n < 2 {
            self.trees.insert(key, out.clone());
            return Ok(out);
        }
        let store = self.calc.store();
        for head_size in 1..n - 1 {
            let heads = self.singletons(level, head_size)?;
            let tails = self.forests(level, n - 1 - head_size)?;
            for h in &heads {
                for f in &tails {
                    if f.is_empty_forest() && !self.cfg.include_empty {
                        continue;
                    }
                    out.push(store.dot(h.clone(), f.clone()).expect("sorted parts"));
                }
            }
        }
        if out.len() > self.cfg.max_terms {
            return Err(EnumError::TooManyTerms(self.cfg.max_terms));
        }
        self.trees.insert(key, out.clone());
        Ok(out)
    }

    /// Canonical forests with exactly `n` nodes: strictly increasing
    /// component lists.
    fn forests(&mut self, level: &Ordinal, n: usize) -> Result<Vec<Term>, EnumError> {
        let key = (level.clone(), n);
        if let Some(v) = self.forests.get(&key) {
            return Ok(v.clone());
        }
        let mut pieces: Vec<Term> = Vec::new();
        for k in 1..n {
            pieces.extend(self.trees(level, k)?);
        }
        pieces.sort_by(cmp_syntactic);
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.choose(&pieces, 0, n - 1, &mut chosen, &mut out);
        self.forests.insert(key, out.clone());
        Ok(out)
    }

    fn choose(
        &self,
        pieces: &[Term],
        from: usize,
        remaining: usize,
        chosen: &mut Vec<Term>,
        out: &mut Vec<Term>,
    ) {
        if remaining == 0 {
            out.push(self.calc.store().forest(chosen.clone()).expect("trees"));
            return;
        }
        if chosen.len() == self.cfg.max_branch {
            return;
        }
        for (i, p) in pieces.iter().enumerate().skip(from) {
            if p.node_count() <= remaining {
                chosen.push(p.clone());
                self.choose(pieces, i + 1, remaining - p.node_count(), chosen, out);
                chosen.pop();
            }
        }
    }
}

/// The quasiorder a quotient is taken under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    /// `≤_h`.
    H,
    /// `≤_h^ξ`: compare `r*_ξ`-images under `≤_h`.
    HXi(Ordinal),
}

#[derive(Debug, Clone)]
pub struct DegreeClass {
    /// Least member in the syntactic order.
    pub representative: Term,
    pub members: Vec<Term>,
}

/// Equivalence classes of a term set with the strict order between them and
/// its covering relation.
#[derive(Debug, Clone)]
pub struct DegreePoset {
    pub classes: Vec<DegreeClass>,
    strict: Vec<Vec<bool>>,
    hasse: Vec<(usize, usize)>,
}

impl DegreePoset {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class `i` lies strictly below class `j`.
    pub fn strictly_below(&self, i: usize, j: usize) -> bool {
        self.strict[i][j]
    }

    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.strict[i][j])
            .collect()
    }

    /// Covering pairs `(lower, upper)`, sorted.
    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn class_of(&self, t: &Term) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(t))
    }

    /// Classes covered by class `i`.
    pub fn lower_covers(&self, i: usize) -> Vec<usize> {
        self.hasse
            .iter()
            .filter(|&&(_, u)| u == i)
            .map(|&(l, _)| l)
            .collect()
    }
}

/// Partitions `terms` into classes of mutual `relation` and orders them.
pub fn quotient(calc: &Calculus, terms: &[Term], relation: &Relation) -> DegreePoset {
    let keys: Vec<Term> = match relation {
        Relation::H => terms.to_vec(),
        Relation::HXi(xi) => terms
            .par_iter()
            .map(|t| apply_r_star(calc.store(), xi, t))
            .collect(),
    };

    // class assignment against one key per class
    let mut class_keys: Vec<Term> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (i, k) in keys.iter().enumerate() {
        let found = class_keys
            .par_iter()
            .position_first(|ck| calc.equiv_h(k, ck));
        match found {
            Some(c) => members[c].push(i),
            None => {
                class_keys.push(k.clone());
                members.push(vec![i]);
            }
        }
    }

    let mut classes: Vec<(DegreeClass, Term)> = members
        .into_iter()
        .zip(class_keys)
        .map(|(idx, key)| {
            let mut ms: Vec<Term> = idx.iter().map(|&i| terms[i].clone()).collect();
            ms.sort_by(cmp_syntactic);
            ms.dedup();
            let representative = ms[0].clone();
            (
                DegreeClass {
                    representative,
                    members: ms,
                },
                key,
            )
        })
        .collect();
    classes.sort_by(|a, b| cmp_syntactic(&a.0.representative, &b.0.representative));

    let n = classes.len();
    let strict: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| i != j && calc.leq_h(&classes[i].1, &classes[j].1))
                .collect()
        })
        .collect();
    let hasse = transitive_reduction(&strict);
    DegreePoset {
        classes: classes.into_iter().map(|(c, _)| c).collect(),
        strict,
        hasse,
    }
}

/// Covering pairs of a strict order given as an adjacency matrix.
pub fn transitive_reduction(strict: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = strict.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if strict[i][j] && !(0..n).any(|k| strict[i][k] && strict[k][j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Reflexive-free transitive closure of a relation given by pairs.
pub fn transitive_closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for &(i, j) in pairs {
        m[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                let row_k = m[k].clone();
                for (cell, &via) in m[i].iter_mut().zip(&row_k) {
                    *cell |= via;
                }
            }
        }
    }
    m
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph: one node per class labelled by its representative, one edge
/// per covering pair, drawn from the lower class to the upper one.
pub fn hasse_dot(calc: &Calculus, poset: &DegreePoset) -> String {
    let mut out = String::from("digraph degrees {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, c) in poset.classes.iter().enumerate() {
        let label = dot_escape(&calc.print(&c.representative));
        writeln!(out, "  c{i} [label=\"{label}\"];").unwrap();
    }
    for &(l, u) in poset.hasse() {
        writeln!(out, "  c{l} -> c{u};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// One line per class: `<index> <representative> covers: <indices>`.
pub fn report(calc: &Calculus, poset: &DegreePoset) -> String {
    let mut out = String::new();
    for (i, c) in poset.classes.iter().enumerate() {
        write!(out, "{i} {} covers:", calc.print(&c.representative)).unwrap();
        for l in poset.lower_covers(i) {
            write!(out, " {l}").unwrap();
        }
        out.push('\n');
    }
    out
}
