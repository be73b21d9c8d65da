//! Independent brute-force oracles: Euler tour backtracking, Eulerian
//! orientation enumeration, arborescence counting (exact determinant and
//! explicit enumeration), and forest-orb enumeration for per-node table
//! checks. Everything here is exponential by design and guarded by an edge
//! cap; these routines exist to cross-validate the dynamic program, not to
//! scale.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::counting::{BigNat, Count};
use crate::error::Error;
use crate::multigraph::{EdgeId, MultiGraph, VertexId};
use crate::nice::NodeScope;
use crate::orbdp::{ChargeVector, RootVector};

/// Default edge cap for the brute-force routines.
pub const DEFAULT_BRUTE_CAP: usize = 14;

fn check_cap(m: usize, cap: usize) -> Result<(), Error> {
    if m > cap {
        Err(Error::CapExceeded { m, cap })
    } else {
        Ok(())
    }
}

/// A direction for every edge of a multigraph: `arc(e) = (tail, head)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    n: usize,
    arcs: Vec<(VertexId, VertexId)>,
}

impl Orientation {
    /// Orients edge `e` of `g` from its stored endpoints `(u, v)` as `u -> v`
    /// when `forward[e]` is true, `v -> u` otherwise.
    pub fn new(g: &MultiGraph, forward: &[bool]) -> Self {
        assert_eq!(forward.len(), g.edge_count());
        let arcs = g
            .edges()
            .iter()
            .zip(forward)
            .map(|(&(u, v), &f)| if f { (u, v) } else { (v, u) })
            .collect();
        Orientation {
            n: g.vertex_count(),
            arcs,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    pub fn arc(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.arcs[e.index()]
    }

    /// Out-degree minus in-degree at `v`.
    pub fn charge(&self, v: VertexId) -> i64 {
        let mut c = 0i64;
        for &(t, h) in &self.arcs {
            if t == v {
                c += 1;
            }
            if h == v {
                c -= 1;
            }
        }
        c
    }

    /// Eulerian at every vertex: out-degree equals in-degree.
    pub fn is_eulerian(&self) -> bool {
        let mut charge = vec![0i64; self.n];
        for &(t, h) in &self.arcs {
            charge[t.index()] += 1;
            charge[h.index()] -= 1;
        }
        charge.iter().all(|&c| c == 0)
    }
}

/// All orientations of `g` with out-degree = in-degree at every vertex, in a
/// deterministic order (edge 0 first, forward direction first).
pub fn enumerate_eulerian_orientations(
    g: &MultiGraph,
    cap: usize,
) -> Result<Vec<Orientation>, Error> {
    let m = g.edge_count();
    check_cap(m, cap)?;
    if g.vertices().any(|v| g.degree(v) % 2 == 1) {
        return Ok(Vec::new());
    }

    let n = g.vertex_count();
    let mut charge = vec![0i64; n];
    // remaining undecided incidences per vertex, for pruning
    let mut remaining = vec![0i64; n];
    for &(u, v) in g.edges() {
        remaining[u.index()] += 1;
        remaining[v.index()] += 1;
    }

    let mut forward = vec![false; m];
    let mut out = Vec::new();
    fn rec(
        g: &MultiGraph,
        e: usize,
        charge: &mut [i64],
        remaining: &mut [i64],
        forward: &mut [bool],
        out: &mut Vec<Orientation>,
    ) {
        if e == g.edge_count() {
            out.push(Orientation::new(g, forward));
            return;
        }
        let (u, v) = g.edges()[e];
        remaining[u.index()] -= 1;
        remaining[v.index()] -= 1;
        for f in [true, false] {
            let (from, to) = if f { (u, v) } else { (v, u) };
            charge[from.index()] += 1;
            charge[to.index()] -= 1;
            if charge[u.index()].abs() <= remaining[u.index()]
                && charge[v.index()].abs() <= remaining[v.index()]
            {
                forward[e] = f;
                rec(g, e + 1, charge, remaining, forward, out);
            }
            charge[from.index()] -= 1;
            charge[to.index()] += 1;
        }
        remaining[u.index()] += 1;
        remaining[v.index()] += 1;
    }
    rec(g, 0, &mut charge, &mut remaining, &mut forward, &mut out);
    Ok(out)
}

/// Counts Euler tours of `g` up to cyclic rotation by backtracking over arc
/// sequences. The lowest-id edge is fixed as the first traversed edge and
/// both of its directions are summed, which selects exactly one
/// representative per cyclic class.
pub fn enumerate_euler_tours<C: Count>(g: &MultiGraph, cap: usize) -> Result<C, Error> {
    let m = g.edge_count();
    // the used-edge set is a u64 bitmask, so 63 edges is a hard ceiling
    check_cap(m, cap.min(63))?;
    let status = g.eulerian_status();
    if !status.is_eulerian {
        return Err(Error::NotEulerian {
            reason: status.to_string(),
        });
    }
    if m == 0 {
        return Ok(C::one()); // the empty tour of a single vertex
    }

    fn rec<C: Count>(
        g: &MultiGraph,
        cur: VertexId,
        start: VertexId,
        used: u64,
        left: usize,
        total: &mut C,
    ) {
        if left == 0 {
            if cur == start {
                let one = C::one();
                *total += &one;
            }
            return;
        }
        for &(e, other) in g.incident(cur) {
            if used & (1 << e.index()) == 0 {
                rec(g, other, start, used | (1 << e.index()), left - 1, total);
            }
        }
    }

    let (a, b) = g.edges()[0];
    let mut total = C::zero();
    for (start, next) in [(a, b), (b, a)] {
        rec(g, next, start, 1, m - 1, &mut total);
    }
    Ok(total)
}

/// Square matrix of exact integers with a fraction-free (Bareiss)
/// determinant. Generic over the signed integer scalar; instantiated with
/// `BigInt` for counting minors.
#[derive(Clone, Debug)]
pub struct IntMatrix<T = BigInt> {
    size: usize,
    data: Vec<T>,
}

impl<T: Integer + Signed + Clone> IntMatrix<T> {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                data.push(f(i, j));
            }
        }
        IntMatrix { size, data }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.size + j]
    }

    /// Exact determinant by fraction-free elimination; every division is
    /// exact, so no rationals appear.
    pub fn determinant(&self) -> T {
        let n = self.size;
        if n == 0 {
            return T::one();
        }
        let mut m = self.data.clone();
        let at = |i: usize, j: usize| i * n + j;
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m[at(k, k)].is_zero() {
                let Some(pivot) = (k + 1..n).find(|&i| !m[at(i, k)].is_zero()) else {
                    return T::zero();
                };
                for j in 0..n {
                    m.swap(at(k, j), at(pivot, j));
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[at(i, j)].clone() * m[at(k, k)].clone()
                        - m[at(i, k)].clone() * m[at(k, j)].clone();
                    m[at(i, j)] = num / prev.clone();
                }
                m[at(i, k)] = T::zero();
            }
            prev = m[at(k, k)].clone();
        }
        let det = m[at(n - 1, n - 1)].clone();
        if negate {
            -det
        } else {
            det
        }
    }
}

/// Spanning in-arborescence: one out-arc per non-root vertex, all paths
/// leading to the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arborescence {
    pub root: VertexId,
    /// `out_arc[v]` is the chosen arc leaving `v`; `None` exactly at the root.
    pub out_arc: Vec<Option<EdgeId>>,
}

impl Arborescence {
    /// Checks arc count, acyclicity, and that every vertex reaches the root.
    pub fn is_valid(&self, o: &Orientation) -> bool {
        let n = o.vertex_count();
        if self.out_arc.len() != n || self.out_arc[self.root.index()].is_some() {
            return false;
        }
        for v in 0..n {
            if v != self.root.index() {
                match self.out_arc[v] {
                    Some(e) if o.arc(e).0.index() == v => {}
                    _ => return false,
                }
            }
            // walk to the root
            let mut cur = v;
            let mut steps = 0;
            while cur != self.root.index() {
                let Some(e) = self.out_arc[cur] else {
                    return false;
                };
                cur = o.arc(e).1.index();
                steps += 1;
                if steps > n {
                    return false;
                }
            }
        }
        true
    }
}

/// All spanning in-arborescences of `o` rooted at `r`, by explicit
/// enumeration of out-arc choices. Exponential; used as the independent
/// check on the determinant route.
pub fn enumerate_in_arborescences(o: &Orientation, r: VertexId) -> Vec<Arborescence> {
    let n = o.vertex_count();
    let mut out_arcs: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for (i, &(t, _)) in o.arcs().iter().enumerate() {
        out_arcs[t.index()].push(EdgeId(i as u32));
    }
    let vertices: Vec<usize> = (0..n).filter(|&v| v != r.index()).collect();
    let mut chosen: Vec<Option<EdgeId>> = vec![None; n];
    let mut found = Vec::new();

    fn rec(
        o: &Orientation,
        r: VertexId,
        vertices: &[usize],
        idx: usize,
        out_arcs: &[Vec<EdgeId>],
        chosen: &mut Vec<Option<EdgeId>>,
        found: &mut Vec<Arborescence>,
    ) {
        if idx == vertices.len() {
            let arb = Arborescence {
                root: r,
                out_arc: chosen.clone(),
            };
            if arb.is_valid(o) {
                found.push(arb);
            }
            return;
        }
        let v = vertices[idx];
        for &e in &out_arcs[v] {
            chosen[v] = Some(e);
            rec(o, r, vertices, idx + 1, out_arcs, chosen, found);
        }
        chosen[v] = None;
    }
    rec(o, r, &vertices, 0, &out_arcs, &mut chosen, &mut found);
    found
}

/// Number of spanning in-arborescences of `o` rooted at `r`: the determinant
/// of the out-degree Laplacian with row and column `r` deleted. Returns 0
/// when `r` is unreachable.
pub fn count_in_arborescences(o: &Orientation, r: VertexId) -> BigNat {
    let n = o.vertex_count();
    if n <= 1 {
        return BigNat::from(1u32);
    }
    // vertices other than r, in id order
    let idx: Vec<usize> = (0..n).filter(|&v| v != r.index()).collect();
    let mut lap = vec![0i64; idx.len() * idx.len()];
    let pos = |v: usize| idx.binary_search(&v).ok();
    for &(t, h) in o.arcs() {
        if let Some(i) = pos(t.index()) {
            lap[i * idx.len() + i] += 1;
            if let Some(j) = pos(h.index()) {
                lap[i * idx.len() + j] -= 1;
            }
        }
    }
    let matrix: IntMatrix<BigInt> =
        IntMatrix::from_fn(idx.len(), |i, j| BigInt::from(lap[i * idx.len() + j]));
    let det = matrix.determinant();
    assert!(
        !det.is_negative(),
        "arborescence Laplacian minor came out negative: {det}"
    );
    let count = det.magnitude().clone();
    debug_assert!(
        n > 7 || BigUint::from(enumerate_in_arborescences(o, r).len()) == count,
        "determinant disagrees with explicit enumeration"
    );
    count
}

/// Brute-force orb count: sum of in-arborescence counts over every Eulerian
/// orientation.
pub fn count_orbs_bruteforce(g: &MultiGraph, r: VertexId, cap: usize) -> Result<BigNat, Error> {
    if g.vertex_count() <= 1 && g.edge_count() == 0 {
        return Ok(BigNat::from(1u32));
    }
    let mut total = BigNat::zero();
    for o in enumerate_eulerian_orientations(g, cap)? {
        total += count_in_arborescences(&o, r);
    }
    Ok(total)
}

/// Enumerates the forest orbs of a node scope and tallies them by
/// (charge vector, root vector). This is the definitional computation of the
/// dynamic-programming table at one node: orientations of the lower edges
/// that are Eulerian off the bag, paired with in-directed forests whose
/// roots lie in the bag's lower part.
pub fn enumerate_forest_orbs(
    g: &MultiGraph,
    scope: &NodeScope,
    cap: usize,
) -> Result<BTreeMap<(ChargeVector, RootVector), BigNat>, Error> {
    check_cap(scope.lower_edges.len(), cap)?;

    let bag = &scope.bag;
    let inner: Vec<VertexId> = scope
        .vertices
        .iter()
        .copied()
        .filter(|v| bag.binary_search(v).is_err())
        .collect();

    let n = g.vertex_count();
    let mut is_inner = vec![false; n];
    for &v in &inner {
        is_inner[v.index()] = true;
    }

    let edges: Vec<(VertexId, VertexId)> = scope
        .lower_edges
        .iter()
        .map(|&e| g.endpoints(e))
        .collect();

    let mut remaining = vec![0i64; n];
    for &(u, v) in &edges {
        remaining[u.index()] += 1;
        remaining[v.index()] += 1;
    }

    let mut tally: BTreeMap<(ChargeVector, RootVector), BigNat> = BTreeMap::new();

    // orientation search state
    let mut charge = vec![0i64; n];
    let mut arcs: Vec<(VertexId, VertexId)> = Vec::with_capacity(edges.len());

    struct Ctx<'a> {
        edges: &'a [(VertexId, VertexId)],
        is_inner: &'a [bool],
        bag: &'a [VertexId],
        lower_bag: &'a [VertexId],
        inner: &'a [VertexId],
    }

    fn orient(
        ctx: &Ctx,
        e: usize,
        charge: &mut [i64],
        remaining: &mut [i64],
        arcs: &mut Vec<(VertexId, VertexId)>,
        tally: &mut BTreeMap<(ChargeVector, RootVector), BigNat>,
    ) {
        if e == ctx.edges.len() {
            finish(ctx, charge, arcs, tally);
            return;
        }
        let (u, v) = ctx.edges[e];
        remaining[u.index()] -= 1;
        remaining[v.index()] -= 1;
        for (from, to) in [(u, v), (v, u)] {
            charge[from.index()] += 1;
            charge[to.index()] -= 1;
            // inner vertices must end balanced
            let ok = |x: VertexId| {
                !ctx.is_inner[x.index()] || charge[x.index()].abs() <= remaining[x.index()]
            };
            if ok(u) && ok(v) {
                arcs.push((from, to));
                orient(ctx, e + 1, charge, remaining, arcs, tally);
                arcs.pop();
            }
            charge[from.index()] -= 1;
            charge[to.index()] += 1;
        }
        remaining[u.index()] += 1;
        remaining[v.index()] += 1;
    }

    // with an orientation fixed, enumerate in-directed forests: every inner
    // vertex picks one out-arc, every lower-bag vertex picks one or roots
    fn finish(
        ctx: &Ctx,
        charge: &[i64],
        arcs: &[(VertexId, VertexId)],
        tally: &mut BTreeMap<(ChargeVector, RootVector), BigNat>,
    ) {
        let c = ChargeVector(
            ctx.bag
                .iter()
                .map(|&x| charge[x.index()] as i32)
                .collect(),
        );

        let mut out_heads: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &(t, h) in arcs {
            out_heads.entry(t).or_default().push(h);
        }
        let choosers: Vec<(VertexId, bool)> = ctx
            .inner
            .iter()
            .map(|&v| (v, false))
            .chain(ctx.lower_bag.iter().map(|&x| (x, true)))
            .collect();

        let mut parent: BTreeMap<VertexId, Option<VertexId>> = BTreeMap::new();

        fn choose(
            ctx: &Ctx,
            c: &ChargeVector,
            choosers: &[(VertexId, bool)],
            idx: usize,
            out_heads: &BTreeMap<VertexId, Vec<VertexId>>,
            parent: &mut BTreeMap<VertexId, Option<VertexId>>,
            tally: &mut BTreeMap<(ChargeVector, RootVector), BigNat>,
        ) {
            if idx == choosers.len() {
                if let Some(roots) = resolve(parent) {
                    let s = RootVector(
                        ctx.bag
                            .iter()
                            .map(|&x| *roots.get(&x).unwrap_or(&x))
                            .collect(),
                    );
                    *tally.entry((c.clone(), s)).or_default() += 1u32;
                }
                return;
            }
            let (v, may_root) = choosers[idx];
            if may_root {
                parent.insert(v, None);
                choose(ctx, c, choosers, idx + 1, out_heads, parent, tally);
            }
            if let Some(heads) = out_heads.get(&v) {
                for &h in heads {
                    parent.insert(v, Some(h));
                    choose(ctx, c, choosers, idx + 1, out_heads, parent, tally);
                }
            }
            parent.remove(&v);
        }

        // follow parent pointers; None means a cycle was found
        fn resolve(
            parent: &BTreeMap<VertexId, Option<VertexId>>,
        ) -> Option<BTreeMap<VertexId, VertexId>> {
            let mut roots = BTreeMap::new();
            for &v in parent.keys() {
                let mut cur = v;
                let mut steps = 0;
                // follow until a root choice or a vertex outside the forest
                while let Some(Some(next)) = parent.get(&cur) {
                    cur = *next;
                    steps += 1;
                    if steps > parent.len() {
                        return None; // cycle
                    }
                }
                roots.insert(v, cur);
            }
            Some(roots)
        }

        choose(ctx, &c, &choosers, 0, &out_heads, &mut parent, tally);
    }

    let ctx = Ctx {
        edges: &edges,
        is_inner: &is_inner,
        bag,
        lower_bag: &scope.lower_bag,
        inner: &inner,
    };
    orient(
        &ctx,
        0,
        &mut charge,
        &mut remaining,
        &mut arcs,
        &mut tally,
    );
    Ok(tally)
}
