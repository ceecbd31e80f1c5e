//! Deciding whether an unlabeled tree is the totient graph of some seed set.
//!
//! In any such graph the vertex labeled 1 is a leaf whose only neighbor is 2,
//! and the children of a vertex labeled v carry distinct labels from
//! φ⁻¹(v) \ {v}. Labels strictly increase away from 1 and every preimage set
//! is finite, so trying each leaf as the root and searching label
//! assignments top-down explores a finite space. Feasibility of a
//! (rooted subtree shape, label) pair is memoized, and the children of a
//! vertex are matched to candidate labels with augmenting paths.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{generate, FamilySpec};
use crate::graph::{build, closure, SeedSet};
use crate::inverse::preimages;
use crate::totient::totient;
use crate::tree::{ShapeInterner, UnlabeledTree};

/// Node-expansion cap used when none is given.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// A labeling was found.
    Realized,
    /// The search space was exhausted without a labeling.
    Refuted,
    /// The expansion cap was hit before the search finished.
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecognitionResult {
    verdict: Verdict,
    /// Label of each vertex id, when realized.
    labeling: Option<Vec<u64>>,
    minimal_seed: Option<SeedSet>,
    nodes_explored: u64,
}

impl RecognitionResult {
    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn labeling(&self) -> Option<&[u64]> {
        self.labeling.as_deref()
    }

    pub fn minimal_seed(&self) -> Option<&SeedSet> {
        self.minimal_seed.as_ref()
    }

    pub fn nodes_explored(&self) -> u64 {
        self.nodes_explored
    }

    pub fn is_realized(&self) -> bool {
        self.verdict == Verdict::Realized
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serialization cannot fail")
    }

    fn unrealized(verdict: Verdict, nodes_explored: u64) -> Self {
        RecognitionResult {
            verdict,
            labeling: None,
            minimal_seed: None,
            nodes_explored,
        }
    }
}

enum Halt {
    Budget,
    Failed(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        Halt::Failed(e)
    }
}

type Step<T> = std::result::Result<T, Halt>;

struct Search {
    shapes: ShapeInterner,
    memo: HashMap<(usize, u64), bool>,
    candidates: HashMap<u64, Rc<[u64]>>,
    explored: u64,
    budget: u64,
}

impl Search {
    fn new(budget: u64) -> Self {
        Search {
            shapes: ShapeInterner::default(),
            memo: HashMap::new(),
            candidates: HashMap::new(),
            explored: 0,
            budget,
        }
    }

    fn is_leaf(&self, shape: usize) -> bool {
        self.shapes.children(shape).is_empty()
    }

    /// Labels a child of a vertex labeled `label` may carry, ascending.
    fn candidates(&mut self, label: u64) -> Step<Rc<[u64]>> {
        if let Some(c) = self.candidates.get(&label) {
            return Ok(Rc::clone(c));
        }
        let list: Rc<[u64]> = preimages(label)?
            .into_iter()
            .filter(|&x| x != label)
            .collect();
        self.candidates.insert(label, Rc::clone(&list));
        Ok(list)
    }

    /// Can a subtree of this shape hang from a vertex labeled `label`?
    fn feasible(&mut self, shape: usize, label: u64) -> Step<bool> {
        if self.is_leaf(shape) {
            return Ok(true);
        }
        if let Some(&known) = self.memo.get(&(shape, label)) {
            return Ok(known);
        }
        if self.explored >= self.budget {
            return Err(Halt::Budget);
        }
        self.explored += 1;
        let kids = self.shapes.children(shape).to_vec();
        let cands = self.candidates(label)?;
        let taken = vec![false; cands.len()];
        let ok = self.matchable(&kids, &cands, &taken)?;
        self.memo.insert((shape, label), ok);
        Ok(ok)
    }

    /// Whether `kids` can be given distinct feasible labels from the
    /// candidates not yet taken. Leaf shapes accept any label, so only the
    /// inner shapes go through the matching.
    fn matchable(&mut self, kids: &[usize], cands: &[u64], taken: &[bool]) -> Step<bool> {
        let free = taken.iter().filter(|t| !**t).count();
        if kids.len() > free {
            return Ok(false);
        }
        let inner: Vec<usize> = kids.iter().copied().filter(|&k| !self.is_leaf(k)).collect();
        let mut owner: Vec<Option<usize>> = vec![None; cands.len()];
        for i in 0..inner.len() {
            let mut seen = vec![false; cands.len()];
            if !self.augment(i, &inner, cands, taken, &mut owner, &mut seen)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn augment(
        &mut self,
        i: usize,
        inner: &[usize],
        cands: &[u64],
        taken: &[bool],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> Step<bool> {
        for j in 0..cands.len() {
            if taken[j] || seen[j] || !self.feasible(inner[i], cands[j])? {
                continue;
            }
            seen[j] = true;
            let free = match owner[j] {
                None => true,
                Some(other) => self.augment(other, inner, cands, taken, owner, seen)?,
            };
            if free {
                owner[j] = Some(i);
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Lowest-first labels for `kids` (in order) under a vertex labeled
    /// `label`; the pair must already be known feasible.
    fn assign(&mut self, kids: &[usize], label: u64) -> Step<Vec<u64>> {
        let cands = self.candidates(label)?;
        let mut taken = vec![false; cands.len()];
        let mut out = Vec::with_capacity(kids.len());
        for (i, &kid) in kids.iter().enumerate() {
            let mut chosen = None;
            for j in 0..cands.len() {
                if taken[j] || !self.feasible(kid, cands[j])? {
                    continue;
                }
                taken[j] = true;
                if self.matchable(&kids[i + 1..], &cands, &taken)? {
                    chosen = Some(cands[j]);
                    break;
                }
                taken[j] = false;
            }
            out.push(chosen.expect("feasible pair always admits an assignment"));
        }
        Ok(out)
    }

    fn witness(&mut self, tree: &UnlabeledTree, root: usize, shape: &[usize]) -> Step<Vec<u64>> {
        let (parent, order) = tree.rooted(root);
        let mut labels = vec![0u64; tree.order()];
        labels[root] = 1;
        for &u in &order {
            let mut kids: Vec<usize> = tree
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&v| Some(v) != parent[u])
                .collect();
            if kids.is_empty() {
                continue;
            }
            kids.sort_by_key(|&v| (shape[v], v));
            let kid_shapes: Vec<usize> = kids.iter().map(|&v| shape[v]).collect();
            let assigned = self.assign(&kid_shapes, labels[u])?;
            for (v, l) in kids.into_iter().zip(assigned) {
                labels[v] = l;
            }
        }
        Ok(labels)
    }
}

/// Searches for a seed set whose totient graph is `tree`.
///
/// `budget` caps the number of (subtree, label) expansions; running out
/// yields [`Verdict::BudgetExceeded`], never a refutation. Errors only on a
/// zero budget or if a candidate label would overflow 64 bits.
pub fn recognize(tree: &UnlabeledTree, budget: u64) -> Result<RecognitionResult> {
    if budget == 0 {
        return Err(Error::range("recognition budget must be at least 1"));
    }
    if tree.order() == 1 {
        return Ok(RecognitionResult {
            verdict: Verdict::Realized,
            labeling: Some(vec![1]),
            minimal_seed: Some(SeedSet::new([1])?),
            nodes_explored: 0,
        });
    }

    let mut search = Search::new(budget);
    let mut tried = HashSet::new();
    for root in tree.leaves() {
        let shape = search.shapes.shapes_of(tree, root);
        if !tried.insert(shape[root]) {
            continue;
        }
        match search.feasible(shape[root], 1) {
            Ok(true) => {
                search.budget = u64::MAX;
                let labels = match search.witness(tree, root, &shape) {
                    Ok(l) => l,
                    Err(Halt::Failed(e)) => return Err(e),
                    Err(Halt::Budget) => unreachable!("witness search is uncapped"),
                };
                debug_assert!(certify(tree, &labels).unwrap_or(false));
                let minimal = build(&SeedSet::new(labels.iter().copied())?).minimal_seed();
                return Ok(RecognitionResult {
                    verdict: Verdict::Realized,
                    labeling: Some(labels),
                    minimal_seed: Some(minimal),
                    nodes_explored: search.explored,
                });
            }
            Ok(false) => continue,
            Err(Halt::Budget) => {
                return Ok(RecognitionResult::unrealized(
                    Verdict::BudgetExceeded,
                    search.explored,
                ))
            }
            Err(Halt::Failed(e)) => return Err(e),
        }
    }
    Ok(RecognitionResult::unrealized(Verdict::Refuted, search.explored))
}

/// Generates the family member and recognizes it.
pub fn recognize_family(spec: &FamilySpec, budget: u64) -> Result<RecognitionResult> {
    recognize(&generate(spec)?, budget)
}

/// Whether the totient graph of the label set is exactly `tree` under this
/// labeling. `labeling[i]` is the label of vertex `i`.
pub fn certify(tree: &UnlabeledTree, labeling: &[u64]) -> Result<bool> {
    if labeling.len() != tree.order() {
        return Err(Error::MalformedLabeling(format!(
            "{} labels for {} vertices",
            labeling.len(),
            tree.order()
        )));
    }
    if labeling.contains(&0) {
        return Err(Error::MalformedLabeling("labels must be positive".into()));
    }
    let labels = SeedSet::new(labeling.iter().copied())?;
    if labels.len() != labeling.len() {
        return Err(Error::MalformedLabeling("labels are not distinct".into()));
    }
    if &closure(&labels) != labels.as_set() {
        return Ok(false);
    }
    Ok(tree.edges().into_iter().all(|(u, v)| {
        let (a, b) = (labeling[u], labeling[v]);
        totient(a) == b || totient(b) == a
    }))
}
