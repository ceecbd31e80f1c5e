//! The totient graph of a seed set: every seed together with all of its
//! totient iterates, each vertex v ≠ 1 joined to φ(v).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::totient::{is_prime, iteration_length, totient};
use crate::tree::UnlabeledTree;

/// A nonempty set of positive naturals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SeedSet(BTreeSet<u64>);

impl SeedSet {
    pub fn new(elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        let set: BTreeSet<u64> = elements.into_iter().collect();
        if set.is_empty() || set.contains(&0) {
            return Err(Error::InvalidSeed);
        }
        Ok(SeedSet(set))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.0.contains(&v)
    }

    /// Ascending.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn as_set(&self) -> &BTreeSet<u64> {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }
}

impl fmt::Display for SeedSet {
    /// Comma-separated, ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for SeedSet {
    type Err = Error;

    /// Parses comma-separated decimal naturals, e.g. `3,7,11,20`.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(str::trim)
            .map(|t| t.parse::<u64>().map_err(|_| Error::InvalidSeed))
            .collect::<Result<Vec<_>>>()?;
        SeedSet::new(values)
    }
}

/// The seeds plus all of their iterates, including 1.
pub fn closure(seed: &SeedSet) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for mut v in seed.iter() {
        while out.insert(v) && v != 1 {
            v = totient(v);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiGraph {
    vertices: BTreeSet<u64>,
    /// v ↦ φ(v) for every vertex except 1.
    parent: BTreeMap<u64, u64>,
    seed: SeedSet,
}

/// Builds the totient graph generated by `seed`. The pair {1, φ(1)} is a
/// self-pair and is not an edge.
pub fn build(seed: &SeedSet) -> PhiGraph {
    let mut vertices = BTreeSet::new();
    let mut parent = BTreeMap::new();
    for mut v in seed.iter() {
        while vertices.insert(v) && v != 1 {
            let p = totient(v);
            parent.insert(v, p);
            v = p;
        }
    }
    PhiGraph {
        vertices,
        parent,
        seed: seed.clone(),
    }
}

#[derive(Serialize)]
struct GraphJson<'a> {
    vertices: Vec<u64>,
    edges: Vec<[u64; 2]>,
    seed: &'a SeedSet,
}

/// Serialization formats for [`PhiGraph::export`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl PhiGraph {
    /// Vertices, ascending.
    pub fn vertices(&self) -> &BTreeSet<u64> {
        &self.vertices
    }

    pub fn seed(&self) -> &SeedSet {
        &self.seed
    }

    pub fn contains(&self, v: u64) -> bool {
        self.vertices.contains(&v)
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.parent.len()
    }

    /// `φ(v)` for `v ≠ 1`; `None` at the root or for unknown vertices.
    pub fn parent(&self, v: u64) -> Option<u64> {
        self.parent.get(&v).copied()
    }

    /// Edges as `(child, parent)`, ascending by child.
    pub fn edges(&self) -> Vec<(u64, u64)> {
        self.parent.iter().map(|(&c, &p)| (c, p)).collect()
    }

    /// Preimages of `v` that are vertices, ascending.
    pub fn children(&self) -> BTreeMap<u64, Vec<u64>> {
        let mut out: BTreeMap<u64, Vec<u64>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for (&c, &p) in &self.parent {
            out.entry(p).or_default().push(c);
        }
        out
    }

    pub fn degree(&self, v: u64) -> Result<usize> {
        if !self.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        let up = usize::from(self.parent.contains_key(&v));
        let down = self.parent.values().filter(|&&p| p == v).count();
        Ok(up + down)
    }

    /// Checks the structure directly: the edge count is |V| − 1, every
    /// parent is a vertex, and every vertex reaches 1.
    pub fn is_tree(&self) -> bool {
        if !self.vertices.contains(&1) || self.parent.contains_key(&1) {
            return false;
        }
        if self.parent.len() + 1 != self.vertices.len() {
            return false;
        }
        let mut adj: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for (&c, &p) in &self.parent {
            if c == p || !self.vertices.contains(&c) || !self.vertices.contains(&p) {
                return false;
            }
            adj.entry(c).or_default().push(p);
            adj.entry(p).or_default().push(c);
        }
        let mut seen = BTreeSet::from([1u64]);
        let mut queue = VecDeque::from([1u64]);
        while let Some(u) = queue.pop_front() {
            for &v in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Tree distance from `v` to 1.
    pub fn depth(&self, v: u64) -> Result<usize> {
        if !self.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut d = 0;
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            cur = p;
            d += 1;
        }
        Ok(d)
    }

    /// Degree-1 vertices. Undefined on the one-vertex graph.
    pub fn leaves(&self) -> Result<BTreeSet<u64>> {
        if self.order() < 2 {
            return Err(Error::Degenerate(
                "the one-vertex graph has no degree-1 vertices".into(),
            ));
        }
        let kids = self.children();
        Ok(self
            .vertices
            .iter()
            .copied()
            .filter(|&v| kids[&v].len() + usize::from(v != 1) == 1)
            .collect())
    }

    /// The unique smallest seed generating this graph: every vertex with no
    /// preimage among the vertices.
    pub fn minimal_seed(&self) -> SeedSet {
        let kids = self.children();
        let sources = self
            .vertices
            .iter()
            .copied()
            .filter(|v| kids[v].is_empty());
        SeedSet::new(sources).expect("a nonempty graph has a source")
    }

    /// The shape, with vertex `i` standing for the `i`-th smallest label.
    /// Returns the labels alongside.
    pub fn to_tree(&self) -> (UnlabeledTree, Vec<u64>) {
        let labels: Vec<u64> = self.vertices.iter().copied().collect();
        let index: BTreeMap<u64, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<(usize, usize)> = self
            .parent
            .iter()
            .map(|(c, p)| (index[c], index[p]))
            .collect();
        let tree = UnlabeledTree::from_edges(labels.len(), &edges)
            .expect("a totient graph is always a tree");
        (tree, labels)
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Json => self.to_json(),
            ExportFormat::Dot => self.to_dot(),
        }
    }

    /// `{"vertices": [...], "edges": [[child, parent], ...], "seed": [...]}`
    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            vertices: self.vertices.iter().copied().collect(),
            edges: self.parent.iter().map(|(&c, &p)| [c, p]).collect(),
            seed: &self.seed,
        };
        serde_json::to_string(&doc).expect("graph serialization cannot fail")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  {v};");
        }
        for (c, p) in &self.parent {
            let _ = writeln!(out, "  {c} -- {p};");
        }
        out.push_str("}\n");
        out
    }
}

/// Builds a seed of exactly `size` elements whose graph has exactly `leaves`
/// degree-1 vertices, for `2 <= leaves <= size + 1`.
///
/// The seed holds `leaves - 1` odd primes (never totient values, so always
/// leaves), plus 1 and `size - leaves` interior chain values when
/// `leaves <= size`. Prime windows are shifted upward until the chains are
/// long enough and the result checks out.
pub fn construct_seed_with_leaves(size: usize, leaves: usize) -> Result<SeedSet> {
    let infeasible = Error::Infeasible { size, leaves };
    if size == 0 || leaves < 2 || leaves > size + 1 {
        return Err(infeasible);
    }
    // A single seed value always gives a path; 2 is the smallest.
    if size == 1 {
        return Ok(SeedSet::new([2]).expect("nonempty"));
    }

    const MAX_SHIFTS: usize = 10_000;
    let odd_primes = (3u64..).filter(|&p| is_prime(p));
    let pool: Vec<u64> = odd_primes.take(leaves - 1 + MAX_SHIFTS).collect();

    for shift in 0..MAX_SHIFTS {
        let primes = &pool[shift..shift + leaves - 1];
        let mut elements: BTreeSet<u64> = primes.iter().copied().collect();
        if leaves <= size {
            elements.insert(1);
            let fill = size - leaves;
            let chain_values: BTreeSet<u64> = closure(&SeedSet::new(primes.iter().copied())?)
                .into_iter()
                .filter(|v| *v != 1 && !elements.contains(v))
                .collect();
            if chain_values.len() < fill {
                continue;
            }
            elements.extend(chain_values.into_iter().take(fill));
        }
        let seed = SeedSet::new(elements)?;
        if seed.len() == size && build(&seed).leaves()?.len() == leaves {
            return Ok(seed);
        }
    }
    Err(infeasible)
}

/// `depth(v)` agrees with R(v) for every vertex.
pub fn depths_match_iteration_length(graph: &PhiGraph) -> bool {
    graph
        .vertices()
        .iter()
        .all(|&v| graph.depth(v).ok() == Some(iteration_length(v)))
}
