//! Unlabeled trees: validation, text formats, and AHU canonical forms.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A finite tree over vertex ids `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnlabeledTree {
    adj: Vec<Vec<usize>>,
}

impl UnlabeledTree {
    /// The one-vertex tree.
    pub fn single() -> Self {
        UnlabeledTree {
            adj: vec![Vec::new()],
        }
    }

    /// Builds a tree from an edge list, rejecting anything that is not a
    /// connected, simple graph with exactly `order - 1` edges.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTree("a tree needs at least one vertex".into()));
        }
        if edges.len() != order - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                order
            )));
        }
        let mut adj = vec![Vec::new(); order];
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(Error::InvalidTree(format!("edge {u}-{v} out of range")));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at {u}")));
            }
            if adj[u].contains(&v) {
                return Err(Error::InvalidTree(format!("duplicate edge {u}-{v}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let tree = UnlabeledTree { adj };
        if tree.bfs_order(0).len() != order {
            return Err(Error::InvalidTree("graph is disconnected".into()));
        }
        Ok(tree)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Neighbors of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Degree-1 vertices, ascending.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Sorted degree sequence, largest first.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Vertices in breadth-first order from `root`, neighbors visited in
    /// ascending id order.
    pub fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut order = Vec::with_capacity(self.order());
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        order
    }

    /// Renumbers vertices in breadth-first order from `root`, so `root`
    /// becomes 0.
    pub fn relabel_bfs(&self, root: usize) -> Self {
        let order = self.bfs_order(root);
        let mut new_id = vec![0; self.order()];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }
        let mut adj = vec![Vec::new(); self.order()];
        for (u, ns) in self.adj.iter().enumerate() {
            adj[new_id[u]] = ns.iter().map(|&v| new_id[v]).collect();
            adj[new_id[u]].sort_unstable();
        }
        UnlabeledTree { adj }
    }

    /// Parent of each vertex when the tree hangs from `root` (`None` at the
    /// root), together with a BFS order suitable for bottom-up passes.
    pub fn rooted(&self, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let order = self.bfs_order(root);
        let mut parent = vec![None; self.order()];
        for &u in &order {
            for &v in &self.adj[u] {
                if Some(v) != parent[u] {
                    parent[v] = Some(u);
                }
            }
        }
        (parent, order)
    }

    /// The one or two central vertices (minimum eccentricity).
    pub fn centers(&self) -> Vec<usize> {
        let n = self.order();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &u in &layer {
                for &v in &self.adj[u] {
                    degree[v] -= 1;
                    if degree[v] == 1 {
                        next.push(v);
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    /// AHU encoding of the tree hung from `root`.
    pub fn rooted_canonical(&self, root: usize) -> String {
        let (parent, order) = self.rooted(root);
        let mut codes: Vec<Vec<String>> = vec![Vec::new(); self.order()];
        let mut done: Vec<String> = vec![String::new(); self.order()];
        for &u in order.iter().rev() {
            let mut kids = std::mem::take(&mut codes[u]);
            kids.sort_unstable();
            let mut code = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
            code.push('(');
            for k in kids {
                code.push_str(&k);
            }
            code.push(')');
            match parent[u] {
                Some(p) => codes[p].push(code),
                None => done[u] = code,
            }
        }
        std::mem::take(&mut done[root])
    }

    /// Center-rooted AHU encoding; equal strings iff isomorphic trees.
    pub fn canonical(&self) -> String {
        self.centers()
            .into_iter()
            .map(|c| self.rooted_canonical(c))
            .min()
            .expect("a tree has at least one center")
    }

    pub fn is_isomorphic(&self, other: &UnlabeledTree) -> bool {
        self.order() == other.order()
            && self.degree_sequence() == other.degree_sequence()
            && self.canonical() == other.canonical()
    }

    /// Edge-list text: one `u v` pair per line, or `order 1` for the
    /// one-vertex tree.
    pub fn to_edge_list(&self) -> String {
        if self.order() == 1 {
            return "order 1\n".to_string();
        }
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Undirected DOT with every vertex declared, so one-vertex trees survive
    /// a round trip.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph tree {\n");
        for v in 0..self.order() {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// Reads either the edge-list format or the DOT emitted by
    /// [`UnlabeledTree::to_dot`].
    pub fn parse(text: &str) -> Result<Self> {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("//"));
        match first {
            Some(l) if l.starts_with("graph") || l.starts_with("strict") => parse_dot(text),
            _ => parse_edge_list(text),
        }
    }
}

fn parse_edge_list(text: &str) -> Result<UnlabeledTree> {
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| Error::Parse {
            line: i + 1,
            msg: msg.to_string(),
        };
        match parts.as_slice() {
            ["order", n] => {
                let n: usize = n.parse().map_err(|_| bad("order must be a natural"))?;
                declared = Some(n);
            }
            [u, v] => {
                let u: usize = u.parse().map_err(|_| bad("vertex ids must be naturals"))?;
                let v: usize = v.parse().map_err(|_| bad("vertex ids must be naturals"))?;
                edges.push((u, v));
            }
            _ => return Err(bad("expected `u v` or `order N`")),
        }
    }
    let inferred = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let order = match declared {
        Some(n) if n < inferred => {
            return Err(Error::InvalidTree(format!(
                "declared order {n} but ids reach {}",
                inferred - 1
            )))
        }
        Some(n) => n,
        None if edges.is_empty() => {
            return Err(Error::InvalidTree("empty tree description".into()))
        }
        None => inferred,
    };
    UnlabeledTree::from_edges(order, &edges)
}

// Minimal DOT reader: vertex statements `a;` and edge statements `a -- b;`.
// Vertex names are mapped to ids in order of first appearance.
fn parse_dot(text: &str) -> Result<UnlabeledTree> {
    let start = text.find('{').ok_or(Error::Parse {
        line: 1,
        msg: "missing `{`".into(),
    })?;
    let end = text.rfind('}').ok_or(Error::Parse {
        line: 1,
        msg: "missing `}`".into(),
    })?;
    let body = &text[start + 1..end];
    let mut ids: BTreeMap<String, usize> = BTreeMap::new();
    let mut next = 0usize;
    let mut id_of = |name: &str| -> usize {
        *ids.entry(name.trim_matches('"').to_string()).or_insert_with(|| {
            next += 1;
            next - 1
        })
    };
    let mut edges = Vec::new();
    for stmt in body.split([';', '\n']) {
        let stmt = stmt.trim();
        if stmt.is_empty() || stmt.starts_with("//") || stmt.starts_with('#') {
            continue;
        }
        // Attribute lists are irrelevant to the shape.
        let stmt = stmt.split('[').next().unwrap_or("").trim();
        if stmt.contains('=') || stmt.is_empty() {
            continue;
        }
        let names: Vec<&str> = stmt.split("--").map(str::trim).collect();
        let path: Vec<usize> = names.iter().map(|n| id_of(n)).collect();
        for w in path.windows(2) {
            edges.push((w[0], w[1]));
        }
    }
    UnlabeledTree::from_edges(next, &edges)
}

/// Interns rooted shapes so that equal subtrees share an id. Ids are dense
/// and assigned in first-seen order.
#[derive(Debug, Default)]
pub(crate) struct ShapeInterner {
    ids: HashMap<Vec<usize>, usize>,
    children: Vec<Vec<usize>>,
}

impl ShapeInterner {
    pub(crate) fn intern(&mut self, mut kids: Vec<usize>) -> usize {
        kids.sort_unstable();
        if let Some(&id) = self.ids.get(&kids) {
            return id;
        }
        let id = self.children.len();
        self.children.push(kids.clone());
        self.ids.insert(kids, id);
        id
    }

    /// Child shapes of `shape`, sorted.
    pub(crate) fn children(&self, shape: usize) -> &[usize] {
        &self.children[shape]
    }

    /// Shape id of every vertex of `tree` hung from `root`.
    pub(crate) fn shapes_of(&mut self, tree: &UnlabeledTree, root: usize) -> Vec<usize> {
        let (parent, order) = tree.rooted(root);
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); tree.order()];
        let mut shape = vec![0; tree.order()];
        for &u in order.iter().rev() {
            shape[u] = self.intern(std::mem::take(&mut kids[u]));
            if let Some(p) = parent[u] {
                kids[p].push(shape[u]);
            }
        }
        shape
    }
}
