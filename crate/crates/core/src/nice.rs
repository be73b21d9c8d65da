//! Nice tree decompositions (leaf / introduce / forget / join nodes) and the
//! per-node scopes the dynamic program runs on.
//!
//! A nice decomposition here is always rooted with bag exactly `{r}` for the
//! designated root vertex `r`. That convention makes the final answer a
//! single table lookup: at the root, the already-processed "lower" subgraph
//! is the whole graph.

use std::collections::{BTreeSet, HashSet};

use crate::error::Error;
use crate::multigraph::{EdgeId, MultiGraph, VertexId};
use crate::treedecomp::{validate_decomposition, TreeDecomposition};

/// Node type in a nice decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Singleton bag, no children.
    Leaf,
    /// One child; bag = child bag plus this vertex.
    Introduce(VertexId),
    /// One child; bag = child bag minus this vertex.
    Forget(VertexId),
    /// Two children with identical bags.
    Join,
}

#[derive(Clone, Debug)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Bag vertices, sorted ascending. Table vectors align to this order.
    pub bag: Vec<VertexId>,
    pub children: Vec<usize>,
}

/// Rooted nice tree decomposition with root bag `{root_vertex}`.
#[derive(Clone, Debug)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
    root: usize,
    width: usize,
    root_vertex: VertexId,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &NiceNode {
        &self.nodes[i]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn root_vertex(&self) -> VertexId {
        self.root_vertex
    }

    /// Children-before-parents order (children of a node appear before it).
    pub fn post_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((i, expanded)) = stack.pop() {
            if expanded {
                order.push(i);
            } else {
                stack.push((i, true));
                for &c in &self.nodes[i].children {
                    stack.push((c, false));
                }
            }
        }
        order
    }

    /// Verifies every node matches its declared shape and the root bag is
    /// the designated singleton.
    pub fn check_shape(&self) -> Result<(), Error> {
        for (i, node) in self.nodes.iter().enumerate() {
            let fail = |msg: String| Err(Error::NodeMismatch(format!("node {i}: {msg}")));
            if node.bag.windows(2).any(|w| w[0] >= w[1]) {
                return fail("bag not sorted".into());
            }
            match node.kind {
                NodeKind::Leaf => {
                    if !node.children.is_empty() || node.bag.len() != 1 {
                        return fail("leaf must have a singleton bag and no children".into());
                    }
                }
                NodeKind::Introduce(v) => {
                    if node.children.len() != 1 {
                        return fail("introduce must have one child".into());
                    }
                    let child = &self.nodes[node.children[0]];
                    let mut expected = child.bag.clone();
                    if child.bag.binary_search(&v).is_ok() {
                        return fail(format!("introduced vertex {v} already in child bag"));
                    }
                    expected.push(v);
                    expected.sort_unstable();
                    if expected != node.bag {
                        return fail(format!("bag is not child bag plus {v}"));
                    }
                }
                NodeKind::Forget(v) => {
                    if node.children.len() != 1 {
                        return fail("forget must have one child".into());
                    }
                    let child = &self.nodes[node.children[0]];
                    let expected: Vec<VertexId> =
                        child.bag.iter().copied().filter(|&x| x != v).collect();
                    if child.bag.binary_search(&v).is_err() || expected != node.bag {
                        return fail(format!("bag is not child bag minus {v}"));
                    }
                }
                NodeKind::Join => {
                    if node.children.len() != 2 {
                        return fail("join must have two children".into());
                    }
                    for &c in &node.children {
                        if self.nodes[c].bag != node.bag {
                            return fail("join child bag differs".into());
                        }
                    }
                }
            }
        }
        let root_bag = &self.nodes[self.root].bag;
        if root_bag.as_slice() != [self.root_vertex] {
            return Err(Error::NodeMismatch(format!(
                "root bag is not {{{}}}",
                self.root_vertex
            )));
        }
        Ok(())
    }

    /// The underlying (un-niced) bag family as a plain decomposition, for
    /// re-validation against the graph.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let mut edges = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                edges.push((i, c));
            }
        }
        TreeDecomposition::new(bags, edges)
    }
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NodeKind, bag: Vec<VertexId>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
        });
        self.nodes.len() - 1
    }

    /// Leaf for the smallest bag vertex, then introduce the rest ascending.
    fn leaf_chain(&mut self, bag: &[VertexId]) -> usize {
        let mut top = self.push(NodeKind::Leaf, vec![bag[0]], vec![]);
        for t in 1..bag.len() {
            let mut nb = bag[..=t].to_vec();
            nb.sort_unstable();
            top = self.push(NodeKind::Introduce(bag[t]), nb, vec![top]);
        }
        top
    }

    /// Forgets `from \ to` (ascending) then introduces `to \ from`
    /// (ascending) on top of `node`. Equal bags contract to nothing.
    fn lift(&mut self, mut node: usize, from: &[VertexId], to: &[VertexId]) -> usize {
        let mut bag = from.to_vec();
        for &v in from {
            if to.binary_search(&v).is_err() {
                bag.retain(|&x| x != v);
                node = self.push(NodeKind::Forget(v), bag.clone(), vec![node]);
            }
        }
        for &v in to {
            if bag.binary_search(&v).is_err() {
                let pos = bag.binary_search(&v).unwrap_err();
                bag.insert(pos, v);
                node = self.push(NodeKind::Introduce(v), bag.clone(), vec![node]);
            }
        }
        node
    }
}

/// Turns a valid tree decomposition into a nice one of the same width whose
/// root bag is exactly `{r}`.
///
/// The source tree is rooted at the smallest node whose bag contains `r`;
/// see [`make_nice_rooted_at`] to pick the root bag explicitly.
pub fn make_nice(
    td: &TreeDecomposition,
    g: &MultiGraph,
    r: VertexId,
) -> Result<NiceTreeDecomposition, Error> {
    let root_node = (0..td.node_count())
        .find(|&i| td.bag(i).binary_search(&r).is_ok())
        .ok_or_else(|| {
            if r.index() >= g.vertex_count() {
                Error::VertexOutOfRange(r, g.vertex_count())
            } else {
                Error::InvalidDecomposition(format!("no bag contains root vertex {r}"))
            }
        })?;
    make_nice_rooted_at(td, g, r, root_node)
}

/// As [`make_nice`], but roots the source tree at the given node, which must
/// contain `r`. Different root nodes give structurally different nice
/// decompositions with the same orb count.
pub fn make_nice_rooted_at(
    td: &TreeDecomposition,
    g: &MultiGraph,
    r: VertexId,
    root_node: usize,
) -> Result<NiceTreeDecomposition, Error> {
    if r.index() >= g.vertex_count() {
        return Err(Error::VertexOutOfRange(r, g.vertex_count()));
    }
    let report = validate_decomposition(g, td);
    if !report.is_valid() {
        return Err(Error::InvalidDecomposition(report.to_string()));
    }
    if td.bag(root_node).binary_search(&r).is_err() {
        return Err(Error::InvalidDecomposition(format!(
            "root bag {} does not contain vertex {r}",
            root_node + 1
        )));
    }

    // prune empty bags, reattaching their neighbors as a star
    let n_nodes = td.node_count();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n_nodes];
    for &(a, b) in td.tree_edges() {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut alive = vec![true; n_nodes];
    for i in 0..n_nodes {
        if td.bag(i).is_empty() {
            alive[i] = false;
            let ns: Vec<usize> = adj[i].iter().copied().collect();
            for &x in &ns {
                adj[x].remove(&i);
            }
            if let Some((&hub, rest)) = ns.split_first() {
                for &x in rest {
                    adj[hub].insert(x);
                    adj[x].insert(hub);
                }
            }
            adj[i].clear();
        }
    }
    debug_assert!(alive[root_node], "root bag contains r, hence non-empty");

    // root the pruned tree and collect children + a post-order
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
    let mut order = Vec::new();
    let mut stack = vec![(root_node, usize::MAX, false)];
    while let Some((i, parent, expanded)) = stack.pop() {
        if expanded {
            order.push(i);
            continue;
        }
        stack.push((i, parent, true));
        for &j in &adj[i] {
            if j != parent {
                children[i].push(j);
                stack.push((j, i, false));
            }
        }
    }

    let mut b = Builder { nodes: Vec::new() };
    let mut top: Vec<usize> = vec![usize::MAX; n_nodes];
    for &i in &order {
        let bag = td.bag(i);
        let lifted: Vec<usize> = children[i]
            .iter()
            .map(|&c| b.lift(top[c], td.bag(c), bag))
            .collect();
        top[i] = match lifted.split_first() {
            None => b.leaf_chain(bag),
            Some((&first, rest)) => {
                let mut acc = first;
                for &t in rest {
                    acc = b.push(NodeKind::Join, bag.to_vec(), vec![acc, t]);
                }
                acc
            }
        };
    }

    // final forget chain: shrink the old root bag to {r}
    let root = b.lift(top[root_node], td.bag(root_node), &[r]);

    let ntd = NiceTreeDecomposition {
        nodes: b.nodes,
        root,
        width: td.width(),
        root_vertex: r,
    };
    debug_assert!(ntd.check_shape().is_ok());
    debug_assert_eq!(ntd.to_tree_decomposition().width(), td.width());
    Ok(ntd)
}

/// Per-node scopes: which vertices and edges a node's subtree governs.
///
/// `lower_edges` is the already-processed part: edges inside the subtree's
/// vertex set with at most one endpoint still in the bag. `lower_bag` /
/// `upper_bag` split the bag by whether a vertex touches a lower edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeScope {
    pub node: usize,
    pub kind: NodeKind,
    pub bag: Vec<VertexId>,
    /// All vertices appearing in the subtree rooted here, sorted.
    pub vertices: Vec<VertexId>,
    /// Edges with both endpoints in the bag.
    pub bag_edges: Vec<EdgeId>,
    /// Edges with both endpoints in `vertices` and at most one in the bag.
    pub lower_edges: Vec<EdgeId>,
    /// Bag vertices incident to at least one lower edge.
    pub lower_bag: Vec<VertexId>,
    /// Bag vertices incident to none.
    pub upper_bag: Vec<VertexId>,
    /// For forget nodes: the forgotten vertex and its bag neighbors.
    pub forget: Option<ForgetScope>,
}

/// Forget-node extras: the forgotten vertex `w` and, for each bag vertex
/// adjacent to it, the number of parallel `w`–`x` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgetScope {
    pub vertex: VertexId,
    /// `(x, multiplicity of {w, x})` for bag vertices adjacent to `w`,
    /// ascending in `x`.
    pub bag_neighbors: Vec<(VertexId, usize)>,
}

fn scope_of(
    ntd: &NiceTreeDecomposition,
    g: &MultiGraph,
    node: usize,
    vertices: Vec<VertexId>,
) -> NodeScope {
    let bag = ntd.node(node).bag.clone();
    let in_subtree: HashSet<VertexId> = vertices.iter().copied().collect();
    let in_bag: HashSet<VertexId> = bag.iter().copied().collect();

    let mut bag_edges = Vec::new();
    let mut lower_edges = Vec::new();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let e = EdgeId(i as u32);
        if in_bag.contains(&u) && in_bag.contains(&v) {
            bag_edges.push(e);
        } else if in_subtree.contains(&u) && in_subtree.contains(&v) {
            lower_edges.push(e);
        }
    }

    let mut touched: HashSet<VertexId> = HashSet::new();
    for &e in &lower_edges {
        let (u, v) = g.endpoints(e);
        touched.insert(u);
        touched.insert(v);
    }
    let lower_bag: Vec<VertexId> = bag.iter().copied().filter(|v| touched.contains(v)).collect();
    let upper_bag: Vec<VertexId> = bag
        .iter()
        .copied()
        .filter(|v| !touched.contains(v))
        .collect();

    let forget = match ntd.node(node).kind {
        NodeKind::Forget(w) => {
            let bag_neighbors = bag
                .iter()
                .filter_map(|&x| {
                    let m = g.multiplicity(w, x);
                    (m > 0).then_some((x, m))
                })
                .collect();
            Some(ForgetScope {
                vertex: w,
                bag_neighbors,
            })
        }
        _ => None,
    };

    NodeScope {
        node,
        kind: ntd.node(node).kind,
        bag,
        vertices,
        bag_edges,
        lower_edges,
        lower_bag,
        upper_bag,
        forget,
    }
}

fn merge_sorted(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x <= y => {
                i += 1;
                if x == y {
                    j += 1;
                }
                x
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (_, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

/// Scope of a single node, computed from the definitions by walking its
/// subtree.
pub fn compute_scope(ntd: &NiceTreeDecomposition, g: &MultiGraph, node: usize) -> NodeScope {
    let mut vertices: Vec<VertexId> = Vec::new();
    let mut stack = vec![node];
    while let Some(i) = stack.pop() {
        vertices = merge_sorted(&vertices, &ntd.node(i).bag);
        stack.extend_from_slice(&ntd.node(i).children);
    }
    scope_of(ntd, g, node, vertices)
}

/// Scopes for every node, bottom-up.
pub fn compute_scopes(ntd: &NiceTreeDecomposition, g: &MultiGraph) -> Vec<NodeScope> {
    let mut vertex_sets: Vec<Vec<VertexId>> = vec![Vec::new(); ntd.node_count()];
    for &i in &ntd.post_order() {
        let mut acc = ntd.node(i).bag.clone();
        for &c in &ntd.node(i).children {
            acc = merge_sorted(&acc, &vertex_sets[c]);
        }
        vertex_sets[i] = acc;
    }
    (0..ntd.node_count())
        .map(|i| scope_of(ntd, g, i, std::mem::take(&mut vertex_sets[i])))
        .collect()
}
