//! The orb-counting dynamic program.
//!
//! Tables are built bottom-up over a nice tree decomposition. An entry
//! `(c, s) -> count` at node `i` counts the pairs of (an orientation of the
//! node's lower edges that is balanced off the bag, an in-directed forest on
//! it with roots in the bag) whose bag charges are `c` and whose per-vertex
//! forest roots are `s`. With the root bag reduced to the single designated
//! vertex `r`, the orb count of the whole graph is the one entry at charge
//! zero and root map `r -> r`.

use std::collections::HashMap;

use crate::counting::{binomial, Count};
use crate::error::Error;
use crate::multigraph::{MultiGraph, VertexId};
use crate::nice::{make_nice, ForgetScope, NiceTreeDecomposition, NodeKind, NodeScope};
use crate::treedecomp::{min_fill_decompose, validate_decomposition, TreeDecomposition};

/// Per-bag-vertex out-degree minus in-degree induced by a partial
/// orientation. Coordinates align with the node's sorted bag.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChargeVector(pub Vec<i32>);

/// Per-bag-vertex root assignment of a partial in-forest: `s[t]` is the root
/// vertex of the tree containing bag vertex `t` (itself, if isolated or a
/// root). Coordinates align with the node's sorted bag.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVector(pub Vec<VertexId>);

/// Canonical table key.
pub type TableKey = (ChargeVector, RootVector);

/// Sparse table of one node: key -> positive count. Zero counts are never
/// stored.
#[derive(Clone, Debug)]
pub struct DpTable<C> {
    node: usize,
    entries: HashMap<TableKey, C>,
}

impl<C: Count> DpTable<C> {
    fn new(node: usize) -> Self {
        DpTable {
            node,
            entries: HashMap::new(),
        }
    }

    pub fn node(&self) -> usize {
        self.node
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &TableKey) -> Option<&C> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TableKey, &C)> {
        self.entries.iter()
    }

    fn add(&mut self, key: TableKey, value: C) {
        if value.is_zero() {
            return;
        }
        *self.entries.entry(key).or_insert_with(C::zero) += &value;
    }
}

/// What the table rules actually need from a node: its sorted bag, the
/// lower part of the bag, and the forget extras. Computed incrementally in
/// [`light_scopes`] so the hot path never materializes subtree vertex or
/// edge sets.
struct DpScope {
    bag: Vec<VertexId>,
    lower_bag: Vec<VertexId>,
    forget: Option<ForgetScope>,
}

/// Bottom-up per-node scopes using only bag-local data: the lower bag of a
/// leaf is empty, introduce keeps the child's, forget drops `w` and adds its
/// bag neighbors, join takes the union.
fn light_scopes(g: &MultiGraph, ntd: &NiceTreeDecomposition) -> Vec<DpScope> {
    let mut out: Vec<Option<DpScope>> = (0..ntd.node_count()).map(|_| None).collect();
    for &i in &ntd.post_order() {
        let node = ntd.node(i);
        let (lower_bag, forget) = match node.kind {
            NodeKind::Leaf => (Vec::new(), None),
            NodeKind::Introduce(_) => {
                let child = out[node.children[0]].as_ref().unwrap();
                (child.lower_bag.clone(), None)
            }
            NodeKind::Forget(w) => {
                let child = out[node.children[0]].as_ref().unwrap();
                let mut l: Vec<VertexId> = child
                    .lower_bag
                    .iter()
                    .copied()
                    .filter(|&x| x != w)
                    .collect();
                let mut bag_neighbors = Vec::new();
                for &x in &node.bag {
                    let m = g.multiplicity(w, x);
                    if m > 0 {
                        bag_neighbors.push((x, m));
                        if let Err(pos) = l.binary_search(&x) {
                            l.insert(pos, x);
                        }
                    }
                }
                (
                    l,
                    Some(ForgetScope {
                        vertex: w,
                        bag_neighbors,
                    }),
                )
            }
            NodeKind::Join => {
                let left = out[node.children[0]].as_ref().unwrap();
                let right = out[node.children[1]].as_ref().unwrap();
                let mut l = left.lower_bag.clone();
                for &x in &right.lower_bag {
                    if let Err(pos) = l.binary_search(&x) {
                        l.insert(pos, x);
                    }
                }
                (l, None)
            }
        };
        out[i] = Some(DpScope {
            bag: node.bag.clone(),
            lower_bag,
            forget,
        });
    }
    out.into_iter().map(|s| s.unwrap()).collect()
}

fn expect_kind(scope: &NodeScope, want: &str, ok: bool) -> Result<(), Error> {
    if ok {
        Ok(())
    } else {
        Err(Error::NodeMismatch(format!(
            "node {} is {:?}, expected {want}",
            scope.node, scope.kind
        )))
    }
}

/// Table of a leaf node: the single entry `((0), (w -> w)) -> 1`.
pub fn leaf_table<C: Count>(scope: &NodeScope) -> Result<DpTable<C>, Error> {
    expect_kind(scope, "leaf", scope.kind == NodeKind::Leaf)?;
    Ok(leaf_table_impl(scope.node, &scope.bag))
}

fn leaf_table_impl<C: Count>(node: usize, bag: &[VertexId]) -> DpTable<C> {
    let mut table = DpTable::new(node);
    table.add((ChargeVector(vec![0]), RootVector(vec![bag[0]])), C::one());
    table
}

/// Table of an introduce node: every child entry extended by charge 0 and
/// self-root for the new vertex, re-canonicalized to sorted bag order.
pub fn introduce_table<C: Count>(scope: &NodeScope, child: &DpTable<C>) -> Result<DpTable<C>, Error> {
    let NodeKind::Introduce(w) = scope.kind else {
        return Err(Error::NodeMismatch(format!(
            "node {} is {:?}, expected introduce",
            scope.node, scope.kind
        )));
    };
    introduce_table_impl(scope.node, &scope.bag, w, child)
}

fn introduce_table_impl<C: Count>(
    node: usize,
    bag: &[VertexId],
    w: VertexId,
    child: &DpTable<C>,
) -> Result<DpTable<C>, Error> {
    let pw = bag.binary_search(&w).expect("introduced vertex in bag");
    let mut table = DpTable::new(node);
    for ((c, s), v) in child.entries.iter() {
        if c.0.len() + 1 != bag.len() {
            return Err(Error::NodeMismatch(format!(
                "child table of node {node} has keys of length {}",
                c.0.len()
            )));
        }
        let mut nc = c.0.clone();
        nc.insert(pw, 0);
        let mut ns = s.0.clone();
        ns.insert(pw, w);
        table.add((ChargeVector(nc), RootVector(ns)), v.clone());
    }
    Ok(table)
}

/// Shared context for one forget-node computation.
struct ForgetCtx<'a> {
    /// Bag of the forget node (sorted, without `w`).
    bag: &'a [VertexId],
    /// Forgotten vertex.
    w: VertexId,
    /// Position of `w` in the child bag.
    pw: usize,
    /// Bag neighbors of `w`: vertex, multiplicity, position in the child
    /// bag, position in this bag, and whether the vertex is in the child's
    /// lower part.
    aw: Vec<AwEntry>,
    /// For every slot of this bag: the child-bag slot and whether the vertex
    /// is in the child's lower part.
    slots: Vec<(usize, bool)>,
}

#[derive(Clone, Copy)]
struct AwEntry {
    x: VertexId,
    mult: usize,
    child_slot: usize,
    bag_slot: usize,
    in_child_lower: bool,
}

/// Table of a forget node, from the child table.
///
/// For each child entry, every balanced orientation count `q` of the edges
/// between the forgotten vertex `w` and the bag is weighted by the number of
/// matching orientations, and every admissible re-rooting of the forests is
/// weighted by the number of arc choices realizing it. `w` keeps an out-arc
/// via a chosen target `w*` when it was a root (or isolated) in the child;
/// otherwise its tree already continues downward.
pub fn forget_table<C: Count>(
    scope: &NodeScope,
    child_scope: &NodeScope,
    child: &DpTable<C>,
) -> Result<DpTable<C>, Error> {
    forget_table_impl(
        scope.node,
        &scope.bag,
        scope.forget.as_ref(),
        &child_scope.bag,
        &child_scope.lower_bag,
        child,
    )
}

fn forget_table_impl<C: Count>(
    node: usize,
    bag: &[VertexId],
    forget: Option<&ForgetScope>,
    child_bag: &[VertexId],
    child_lower_bag: &[VertexId],
    child: &DpTable<C>,
) -> Result<DpTable<C>, Error> {
    let Some(fscope) = forget else {
        return Err(Error::NodeMismatch(format!(
            "node {node} carries no forget scope"
        )));
    };
    let w = fscope.vertex;
    if child_bag.len() != bag.len() + 1 || child_bag.binary_search(&w).is_err() {
        return Err(Error::NodeMismatch(format!(
            "child bag of node {node} does not contain forgotten vertex {w}"
        )));
    }
    let pw = child_bag.binary_search(&w).unwrap();

    let is_child_lower = |x: VertexId| child_lower_bag.binary_search(&x).is_ok();
    let aw: Vec<AwEntry> = fscope
        .bag_neighbors
        .iter()
        .map(|&(x, mult)| AwEntry {
            x,
            mult,
            child_slot: child_bag.binary_search(&x).unwrap(),
            bag_slot: bag.binary_search(&x).unwrap(),
            in_child_lower: is_child_lower(x),
        })
        .collect();
    let slots: Vec<(usize, bool)> = bag
        .iter()
        .map(|&x| (child_bag.binary_search(&x).unwrap(), is_child_lower(x)))
        .collect();
    let ctx = ForgetCtx {
        bag,
        w,
        pw,
        aw,
        slots,
    };

    let mut table = DpTable::new(node);
    for ((c, s), v) in child.entries.iter() {
        if c.0.len() != child_bag.len() {
            return Err(Error::NodeMismatch(format!(
                "child table of node {node} has keys of length {}",
                c.0.len()
            )));
        }
        forget_entry(&ctx, c, s, v, &mut table);
    }
    Ok(table)
}

fn forget_entry<C: Count>(
    ctx: &ForgetCtx,
    c: &ChargeVector,
    s: &RootVector,
    v: &C,
    out: &mut DpTable<C>,
) {
    let target = c.0[ctx.pw] as i64;
    // suffix sums of multiplicities bound what later entries can still reach
    let mut suffix: Vec<i64> = vec![0; ctx.aw.len() + 1];
    for i in (0..ctx.aw.len()).rev() {
        suffix[i] = suffix[i + 1] + ctx.aw[i].mult as i64;
    }
    let mut q = vec![0usize; ctx.aw.len()];
    enumerate_q(ctx, c, s, v, &mut q, 0, target, &suffix, out);
}

/// All `q` with `0 <= q[i] <= mult[i]` and `sum(mult[i] - 2 q[i]) = target`.
#[allow(clippy::too_many_arguments)]
fn enumerate_q<C: Count>(
    ctx: &ForgetCtx,
    c: &ChargeVector,
    s: &RootVector,
    v: &C,
    q: &mut Vec<usize>,
    idx: usize,
    target: i64,
    suffix: &[i64],
    out: &mut DpTable<C>,
) {
    if target.abs() > suffix[idx] || (target - suffix[idx]) % 2 != 0 {
        return;
    }
    if idx == ctx.aw.len() {
        apply_q(ctx, c, s, v, q, out);
        return;
    }
    let m = ctx.aw[idx].mult;
    for qi in 0..=m {
        q[idx] = qi;
        enumerate_q(ctx, c, s, v, q, idx + 1, target - (m as i64 - 2 * qi as i64), suffix, out);
    }
}

fn apply_q<C: Count>(
    ctx: &ForgetCtx,
    c: &ChargeVector,
    s: &RootVector,
    v: &C,
    q: &[usize],
    out: &mut DpTable<C>,
) {
    // orientation weight for this q
    let mut chi = C::one();
    for (entry, &qi) in ctx.aw.iter().zip(q) {
        let b: C = binomial(entry.mult, qi);
        chi = chi * &b;
    }
    let weight = chi * v;

    // charge on the shrunken bag
    let mut c_star = vec![0i32; ctx.bag.len()];
    for (t, &(child_slot, _)) in ctx.slots.iter().enumerate() {
        c_star[t] = c.0[child_slot];
    }
    for (entry, &qi) in ctx.aw.iter().zip(q) {
        c_star[entry.bag_slot] += entry.mult as i32 - 2 * qi as i32;
    }

    let sw = s.0[ctx.pw];
    if sw == ctx.w {
        forget_rooted(ctx, s, &weight, q, &c_star, out);
    } else {
        forget_unrooted(ctx, s, &weight, q, &c_star, sw, out);
    }
}

/// Case `s'_w != w`: the forgotten vertex already has an out-path to the
/// root `sw`. Former roots in `L` and attached upper vertices hang their
/// trees under `sw` via a new arc into `w`.
fn forget_unrooted<C: Count>(
    ctx: &ForgetCtx,
    s: &RootVector,
    weight: &C,
    q: &[usize],
    c_star: &[i32],
    sw: VertexId,
    out: &mut DpTable<C>,
) {
    // candidate root set L: child-lower roots adjacent to w with arcs left,
    // excluding w's own root
    let l_base: Vec<usize> = (0..ctx.aw.len())
        .filter(|&i| {
            let e = &ctx.aw[i];
            e.in_child_lower && s.0[e.child_slot] == e.x && q[i] < e.mult && e.x != sw
        })
        .collect();
    // upper bag neighbors of w that may either stay roots or take an arc
    let u_free: Vec<usize> = (0..ctx.aw.len())
        .filter(|&i| !ctx.aw[i].in_child_lower && q[i] < ctx.aw[i].mult)
        .collect();

    for_each_subset_pair(ctx, &l_base, &u_free, q, |l_sel, u_arc, kappa| {
        let mut s_star = Vec::with_capacity(ctx.bag.len());
        for (t, &(child_slot, in_lower)) in ctx.slots.iter().enumerate() {
            let x = ctx.bag[t];
            let val = if in_lower {
                let root = s.0[child_slot];
                if l_sel.iter().any(|&i| ctx.aw[i].x == root) {
                    sw
                } else {
                    root
                }
            } else if u_arc.iter().any(|&i| ctx.aw[i].x == x) {
                sw
            } else {
                x
            };
            s_star.push(val);
        }
        let value = weight.clone() * &kappa;
        out.add((ChargeVector(c_star.to_vec()), RootVector(s_star)), value);
    });
}

/// Case `s'_w = w`: `w` was a root (or isolated) in the child, so it takes a
/// new out-arc to some `w*`, whose root `z` becomes the root of everything
/// that hung under `w` or attaches through it.
fn forget_rooted<C: Count>(
    ctx: &ForgetCtx,
    s: &RootVector,
    weight: &C,
    q: &[usize],
    c_star: &[i32],
    out: &mut DpTable<C>,
) {
    for wi in 0..ctx.aw.len() {
        if q[wi] == 0 {
            continue;
        }
        let wstar = ctx.aw[wi];
        let z = if wstar.in_child_lower {
            s.0[wstar.child_slot]
        } else {
            wstar.x
        };
        if z == ctx.w {
            continue; // w* hangs under w itself; the arc would close a cycle
        }

        let l_base: Vec<usize> = (0..ctx.aw.len())
            .filter(|&i| {
                let e = &ctx.aw[i];
                e.in_child_lower
                    && s.0[e.child_slot] == e.x
                    && q[i] < e.mult
                    && e.x != wstar.x
                    && e.x != z
            })
            .collect();
        // w* never takes an arc into w: it becomes (or stays) a root
        let u_free: Vec<usize> = (0..ctx.aw.len())
            .filter(|&i| {
                !ctx.aw[i].in_child_lower && q[i] < ctx.aw[i].mult && ctx.aw[i].x != wstar.x
            })
            .collect();

        for_each_subset_pair(ctx, &l_base, &u_free, q, |l_sel, u_arc, kappa| {
            let mut s_star = Vec::with_capacity(ctx.bag.len());
            for (t, &(child_slot, in_lower)) in ctx.slots.iter().enumerate() {
                let x = ctx.bag[t];
                let val = if in_lower {
                    let root = s.0[child_slot];
                    if root == ctx.w || l_sel.iter().any(|&i| ctx.aw[i].x == root) {
                        z
                    } else {
                        root
                    }
                } else if u_arc.iter().any(|&i| ctx.aw[i].x == x) {
                    z
                } else {
                    x
                };
                s_star.push(val);
            }
            let arc_choices = C::from(q[wi] as u64);
            let value = weight.clone() * &kappa * &arc_choices;
            out.add((ChargeVector(c_star.to_vec()), RootVector(s_star)), value);
        });
    }
}

/// Iterates over every subset `l_sel` of `l_base` (roots that take an arc
/// into `w`) and every subset `u_arc` of `u_free` (upper neighbors that take
/// an arc rather than becoming roots), passing the product of available arc
/// counts.
fn for_each_subset_pair<C: Count>(
    ctx: &ForgetCtx,
    l_base: &[usize],
    u_free: &[usize],
    q: &[usize],
    mut f: impl FnMut(&[usize], &[usize], C),
) {
    let nl = l_base.len();
    let nu = u_free.len();
    for lmask in 0u32..(1 << nl) {
        let l_sel: Vec<usize> = (0..nl).filter(|&i| lmask >> i & 1 == 1).map(|i| l_base[i]).collect();
        for umask in 0u32..(1 << nu) {
            let u_arc: Vec<usize> =
                (0..nu).filter(|&i| umask >> i & 1 == 1).map(|i| u_free[i]).collect();
            let mut kappa = 1u64;
            for &i in l_sel.iter().chain(&u_arc) {
                kappa *= (ctx.aw[i].mult - q[i]) as u64;
            }
            f(&l_sel, &u_arc, C::from(kappa));
        }
    }
}

/// Merges one pair of join keys: charges add, the root map is the fixpoint
/// of alternately following the two root vectors. `None` when some vertex
/// has out-trees on both sides or the alternating walk cycles.
fn merge_join_keys(
    bag: &[VertexId],
    (cl, sl): &TableKey,
    (cr, sr): &TableKey,
) -> Option<TableKey> {
    let blen = bag.len();
    let mut c_star = Vec::with_capacity(blen);
    for t in 0..blen {
        c_star.push(cl.0[t] + cr.0[t]);
    }
    let mut s_star = Vec::with_capacity(blen);
    for t in 0..blen {
        let mut cur = bag[t];
        let mut steps = 0;
        loop {
            let slot = bag.binary_search(&cur).expect("root stays in bag");
            let (a, b) = (sl.0[slot], sr.0[slot]);
            if a != cur && b != cur {
                return None; // out-arcs in both children
            }
            let next = if a != cur { a } else { b };
            if next == cur {
                break;
            }
            cur = next;
            steps += 1;
            if steps > blen {
                return None; // alternating cycle
            }
        }
        s_star.push(cur);
    }
    Some((ChargeVector(c_star), RootVector(s_star)))
}

/// Table of a join node: children over the same bag combine entry by entry;
/// charges add, root maps merge by fixpoint, and counts multiply, since the
/// two lower subgraphs are edge-disjoint.
pub fn join_table<C: Count>(
    scope: &NodeScope,
    left: &DpTable<C>,
    right: &DpTable<C>,
) -> Result<DpTable<C>, Error> {
    expect_kind(scope, "join", scope.kind == NodeKind::Join)?;
    join_table_impl(scope.node, &scope.bag, left, right)
}

fn join_table_impl<C: Count>(
    node: usize,
    bag: &[VertexId],
    left: &DpTable<C>,
    right: &DpTable<C>,
) -> Result<DpTable<C>, Error> {
    let blen = bag.len();
    let mut table = DpTable::new(node);

    for (kl, vl) in left.entries.iter() {
        if kl.0 .0.len() != blen {
            return Err(Error::NodeMismatch(format!(
                "left table of node {node} has keys of length {}",
                kl.0 .0.len()
            )));
        }
        for (kr, vr) in right.entries.iter() {
            if kr.0 .0.len() != blen {
                return Err(Error::NodeMismatch(format!(
                    "right table of node {node} has keys of length {}",
                    kr.0 .0.len()
                )));
            }
            if let Some(key) = merge_join_keys(bag, kl, kr) {
                table.add(key, vl.clone() * vr);
            }
        }
    }
    Ok(table)
}

/// Runs the dynamic program bottom-up. `keep_all` retains every node table
/// (for diagnostics and per-node checks); otherwise child tables are dropped
/// as soon as their parent is built.
fn run_dp<C: Count>(
    g: &MultiGraph,
    ntd: &NiceTreeDecomposition,
    keep_all: bool,
) -> Result<Vec<Option<DpTable<C>>>, Error> {
    ntd.check_shape()?;
    let scopes = light_scopes(g, ntd);
    let mut tables: Vec<Option<DpTable<C>>> = (0..ntd.node_count()).map(|_| None).collect();
    for &i in &ntd.post_order() {
        let node = ntd.node(i);
        let table = match node.kind {
            NodeKind::Leaf => leaf_table_impl(i, &scopes[i].bag),
            NodeKind::Introduce(w) => {
                let child = node.children[0];
                let t =
                    introduce_table_impl(i, &scopes[i].bag, w, tables[child].as_ref().unwrap())?;
                if !keep_all {
                    tables[child] = None;
                }
                t
            }
            NodeKind::Forget(_) => {
                let child = node.children[0];
                let t = forget_table_impl(
                    i,
                    &scopes[i].bag,
                    scopes[i].forget.as_ref(),
                    &scopes[child].bag,
                    &scopes[child].lower_bag,
                    tables[child].as_ref().unwrap(),
                )?;
                if !keep_all {
                    tables[child] = None;
                }
                t
            }
            NodeKind::Join => {
                let (l, r) = (node.children[0], node.children[1]);
                let t = join_table_impl(
                    i,
                    &scopes[i].bag,
                    tables[l].as_ref().unwrap(),
                    tables[r].as_ref().unwrap(),
                )?;
                if !keep_all {
                    tables[l] = None;
                    tables[r] = None;
                }
                t
            }
        };
        tables[i] = Some(table);
    }
    Ok(tables)
}

/// Builds and returns the table of every node. Exponential in nothing but
/// kept entirely in memory; intended for verification and diagnostics.
pub fn build_tables<C: Count>(
    g: &MultiGraph,
    ntd: &NiceTreeDecomposition,
) -> Result<Vec<DpTable<C>>, Error> {
    let tables = run_dp(g, ntd, true)?;
    Ok(tables.into_iter().map(|t| t.unwrap()).collect())
}

/// Counts the orbs of `g` rooted at `r`: pairs of an Eulerian orientation
/// and an in-arborescence toward `r` on it. Runs the dynamic program over
/// `ntd`, whose root bag must be exactly `{r}`.
pub fn count_orbs<C: Count>(
    g: &MultiGraph,
    ntd: &NiceTreeDecomposition,
    r: VertexId,
) -> Result<C, Error> {
    if g.vertex_count() <= 1 && g.edge_count() == 0 {
        return Ok(C::one());
    }
    let status = g.eulerian_status();
    if !status.is_eulerian {
        return Err(Error::NotEulerian {
            reason: status.to_string(),
        });
    }
    if ntd.root_vertex() != r {
        return Err(Error::NodeMismatch(format!(
            "decomposition is rooted for vertex {}, not {r}",
            ntd.root_vertex()
        )));
    }
    let mut tables = run_dp::<C>(g, ntd, false)?;
    let root_table = tables[ntd.root()].take().unwrap();
    let key = (ChargeVector(vec![0]), RootVector(vec![r]));
    Ok(root_table.get(&key).cloned().unwrap_or_else(C::zero))
}

/// Counts the Euler tours of `g` up to cyclic rotation: the factorial factor
/// times the orb count. A decomposition is built with the min-fill heuristic
/// unless one is supplied; the root vertex defaults to the smallest id.
pub fn count_euler_tours<C: Count>(
    g: &MultiGraph,
    td: Option<&TreeDecomposition>,
    root: Option<VertexId>,
) -> Result<C, Error> {
    let status = g.eulerian_status();
    if !(g.vertex_count() <= 1 && g.edge_count() == 0) && !status.is_eulerian {
        return Err(Error::NotEulerian {
            reason: status.to_string(),
        });
    }
    if g.vertex_count() <= 1 && g.edge_count() == 0 {
        return Ok(C::one());
    }
    let r = root.unwrap_or(VertexId(0));
    if r.index() >= g.vertex_count() {
        return Err(Error::VertexOutOfRange(r, g.vertex_count()));
    }
    let owned;
    let td = match td {
        Some(td) => {
            let report = validate_decomposition(g, td);
            if !report.is_valid() {
                return Err(Error::InvalidDecomposition(report.to_string()));
            }
            td
        }
        None => {
            owned = min_fill_decompose(g);
            &owned
        }
    };
    let ntd = make_nice(td, g, r)?;
    let orbs: C = count_orbs(g, &ntd, r)?;
    let factor: C = g.factorial_factor()?;
    Ok(factor * &orbs)
}
