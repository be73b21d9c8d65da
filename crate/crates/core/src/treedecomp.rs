//! Tree decompositions: validation, the min-fill construction heuristic,
//! and the PACE `.td` file format.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::multigraph::{EdgeId, MultiGraph, VertexId};

/// A tree decomposition: one bag of vertices per node, tree edges over node
/// ids. Bags are kept sorted.
#[derive(Clone, Debug)]
pub struct TreeDecomposition {
    bags: Vec<Vec<VertexId>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(mut bags: Vec<Vec<VertexId>>, edges: Vec<(usize, usize)>) -> Self {
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
        }
        TreeDecomposition { bags, edges }
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, i: usize) -> &[VertexId] {
        &self.bags[i]
    }

    pub fn bags(&self) -> &[Vec<VertexId>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Max bag size minus one.
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut ns = Vec::new();
        for &(a, b) in &self.edges {
            if a == i {
                ns.push(b);
            } else if b == i {
                ns.push(a);
            }
        }
        ns
    }

    /// Parses the PACE 2017 `.td` format: `s td <#bags> <max_bag_size> <n>`
    /// header, `b <bag_id> <v...>` lines, then `i j` tree-edge lines, all
    /// 1-based; comments start with `c`.
    pub fn parse_td(text: &str) -> Result<Self, Error> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut bags: Vec<Option<Vec<VertexId>>> = Vec::new();
        let mut edges = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens[0] == "s" {
                if header.is_some() {
                    return Err(Error::parse(lineno, "duplicate `s td` header"));
                }
                if tokens.len() != 5 || tokens[1] != "td" {
                    return Err(Error::parse(lineno, "header must be `s td <#bags> <max_bag_size> <n>`"));
                }
                let nums: Result<Vec<usize>, _> = tokens[2..].iter().map(|t| t.parse()).collect();
                let nums = nums.map_err(|_| Error::parse(lineno, "bad number in header"))?;
                header = Some((nums[0], nums[1], nums[2]));
                bags = vec![None; nums[0]];
                continue;
            }
            let (num_bags, _, n) =
                header.ok_or_else(|| Error::parse(lineno, "missing `s td` header"))?;
            if tokens[0] == "b" {
                if tokens.len() < 2 {
                    return Err(Error::parse(lineno, "bag line needs an id"));
                }
                let id: usize = tokens[1]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad bag id"))?;
                if id == 0 || id > num_bags {
                    return Err(Error::parse(lineno, format!("bag id {id} out of range")));
                }
                if bags[id - 1].is_some() {
                    return Err(Error::parse(lineno, format!("duplicate bag {id}")));
                }
                let mut bag = Vec::new();
                for t in &tokens[2..] {
                    let v: usize = t
                        .parse()
                        .map_err(|_| Error::parse(lineno, format!("bad vertex id `{t}`")))?;
                    if v == 0 || v > n {
                        return Err(Error::parse(lineno, format!("vertex id {v} out of range")));
                    }
                    bag.push(VertexId((v - 1) as u32));
                }
                bags[id - 1] = Some(bag);
                continue;
            }
            if tokens.len() != 2 {
                return Err(Error::parse(lineno, format!("expected tree edge `<i> <j>`, got `{line}`")));
            }
            let a: usize = tokens[0]
                .parse()
                .map_err(|_| Error::parse(lineno, "bad node id"))?;
            let b: usize = tokens[1]
                .parse()
                .map_err(|_| Error::parse(lineno, "bad node id"))?;
            if a == 0 || a > num_bags || b == 0 || b > num_bags {
                return Err(Error::parse(lineno, "tree edge node id out of range"));
            }
            edges.push((a - 1, b - 1));
        }

        if header.is_none() {
            return Err(Error::parse(0, "missing `s td` header"));
        }
        let bags: Vec<Vec<VertexId>> = bags
            .into_iter()
            .map(|b| b.unwrap_or_default())
            .collect();
        Ok(TreeDecomposition::new(bags, edges))
    }

    /// Emits the PACE `.td` format. Emitted decompositions reparse to the
    /// same bags and edges.
    pub fn to_td_string(&self, n: usize) -> String {
        let max_bag = self.bags.iter().map(|b| b.len()).max().unwrap_or(0);
        let mut out = format!("s td {} {} {}\n", self.bags.len(), max_bag, n);
        for (i, bag) in self.bags.iter().enumerate() {
            out.push_str(&format!("b {}", i + 1));
            for v in bag {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        out
    }
}

/// One violated decomposition property, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The node graph is not a tree.
    NotATree { reason: String },
    /// A bag mentions a vertex the graph does not have.
    BagVertexOutOfRange(usize, VertexId),
    /// Property 1: some graph vertex appears in no bag.
    VertexUncovered(VertexId),
    /// Property 2: no bag contains both endpoints of this edge.
    EdgeUncovered(EdgeId, VertexId, VertexId),
    /// Property 3: the bags containing this vertex do not induce a subtree;
    /// the two node ids lie in different components of the occurrence set.
    OccurrenceDisconnected(VertexId, usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree { reason } => write!(f, "node graph is not a tree: {reason}"),
            Violation::BagVertexOutOfRange(i, v) => {
                write!(f, "bag {} mentions vertex {v}, which the graph does not have", i + 1)
            }
            Violation::VertexUncovered(v) => write!(f, "property 1: vertex {v} is in no bag"),
            Violation::EdgeUncovered(e, u, v) => {
                write!(f, "property 2: edge {e} = ({u}, {v}) is covered by no bag")
            }
            Violation::OccurrenceDisconnected(v, a, b) => write!(
                f,
                "property 3: vertex {v} appears in bags {} and {} in different subtree components",
                a + 1,
                b + 1
            ),
        }
    }
}

/// Result of [`validate_decomposition`]: the width on success, otherwise
/// every violated property with a witness.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub width: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid, width {}", self.width)
        } else {
            writeln!(f, "invalid ({} violations):", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

/// Checks the three defining properties of a tree decomposition of `g`,
/// plus treeness of the node graph. Failures are report content, not errors.
pub fn validate_decomposition(g: &MultiGraph, td: &TreeDecomposition) -> ValidationReport {
    let mut violations = Vec::new();
    let nodes = td.node_count();

    // treeness: connected and |edges| = nodes - 1
    if nodes == 0 {
        violations.push(Violation::NotATree {
            reason: "no bags".into(),
        });
    } else {
        let mut adj = vec![Vec::new(); nodes];
        let mut edge_ok = true;
        for &(a, b) in td.tree_edges() {
            if a >= nodes || b >= nodes {
                violations.push(Violation::NotATree {
                    reason: format!("tree edge ({}, {}) out of range", a + 1, b + 1),
                });
                edge_ok = false;
                break;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        if edge_ok {
            let mut seen = vec![false; nodes];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut reached = 1;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        reached += 1;
                        stack.push(y);
                    }
                }
            }
            if reached != nodes {
                violations.push(Violation::NotATree {
                    reason: format!("{} of {} nodes reachable from node 1", reached, nodes),
                });
            } else if td.tree_edges().len() != nodes - 1 {
                violations.push(Violation::NotATree {
                    reason: format!(
                        "{} edges on {} nodes (a tree needs {})",
                        td.tree_edges().len(),
                        nodes,
                        nodes - 1
                    ),
                });
            }
        }
    }

    // property 1: vertex coverage (and no phantom bag vertices)
    let mut covered = vec![false; g.vertex_count()];
    for (i, bag) in td.bags().iter().enumerate() {
        for v in bag {
            if v.index() < covered.len() {
                covered[v.index()] = true;
            } else {
                violations.push(Violation::BagVertexOutOfRange(i, *v));
            }
        }
    }
    for v in g.vertices() {
        if !covered[v.index()] {
            violations.push(Violation::VertexUncovered(v));
        }
    }

    // property 2: edge coverage
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let found = td
            .bags()
            .iter()
            .any(|bag| bag.binary_search(&u).is_ok() && bag.binary_search(&v).is_ok());
        if !found {
            violations.push(Violation::EdgeUncovered(EdgeId(i as u32), u, v));
        }
    }

    // property 3: occurrence sets induce subtrees
    for v in g.vertices() {
        let occ: Vec<usize> = (0..nodes)
            .filter(|&i| td.bag(i).binary_search(&v).is_ok())
            .collect();
        if occ.len() <= 1 {
            continue;
        }
        let inside: BTreeSet<usize> = occ.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut stack = vec![occ[0]];
        seen.insert(occ[0]);
        while let Some(x) = stack.pop() {
            for y in td.neighbors(x) {
                if inside.contains(&y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        if let Some(&unreached) = occ.iter().find(|i| !seen.contains(i)) {
            violations.push(Violation::OccurrenceDisconnected(v, occ[0], unreached));
        }
    }

    ValidationReport {
        width: td.width(),
        violations,
    }
}

/// Builds a tree decomposition with the min-fill elimination heuristic.
/// Deterministic: ties break toward the smallest vertex id. The width is
/// heuristic, not guaranteed optimal.
pub fn min_fill_decompose(g: &MultiGraph) -> TreeDecomposition {
    let n = g.vertex_count();
    assert!(n >= 1, "min_fill_decompose needs at least one vertex");

    // simple support graph; parallel edges do not change treewidth
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(u, v) in g.edges() {
        adj[u.index()].insert(v.index());
        adj[v.index()].insert(u.index());
    }

    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut elim_pos = vec![usize::MAX; n];
    let mut bags: Vec<Vec<VertexId>> = Vec::with_capacity(n);
    let mut bag_neighbors: Vec<Vec<usize>> = Vec::with_capacity(n);

    for step in 0..n {
        // fill-in of v: non-adjacent pairs among its remaining neighbors
        let mut best: Option<(usize, usize)> = None; // (fill, vertex)
        for &v in &alive {
            let ns: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0usize;
            for i in 0..ns.len() {
                for j in i + 1..ns.len() {
                    if !adj[ns[i]].contains(&ns[j]) {
                        fill += 1;
                    }
                }
            }
            match best {
                Some((bf, bv)) if (fill, v) >= (bf, bv) => {}
                _ => best = Some((fill, v)),
            }
        }
        let (_, v) = best.unwrap();

        let ns: Vec<usize> = adj[v].iter().copied().collect();
        let mut bag: Vec<VertexId> = ns.iter().map(|&x| VertexId(x as u32)).collect();
        bag.push(VertexId(v as u32));
        bag.sort_unstable();
        bags.push(bag);
        bag_neighbors.push(ns.clone());
        elim_pos[v] = step;

        for i in 0..ns.len() {
            for j in i + 1..ns.len() {
                adj[ns[i]].insert(ns[j]);
                adj[ns[j]].insert(ns[i]);
            }
        }
        for &x in &ns {
            adj[x].remove(&v);
        }
        adj[v].clear();
        alive.remove(&v);
    }

    // connect each bag to the bag of its earliest-eliminated neighbor;
    // bags with no remaining neighbor attach to the next bag to keep a tree
    let mut edges = Vec::new();
    for (i, ns) in bag_neighbors.iter().enumerate() {
        let parent = ns.iter().map(|&x| elim_pos[x]).min().unwrap_or(i + 1);
        if parent < n {
            edges.push((i, parent));
        }
    }

    TreeDecomposition::new(bags, edges)
}
