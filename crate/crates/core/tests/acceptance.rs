//! Acceptance suite. Each test covers one release criterion, exact unless
//! stated otherwise, and prints one PASS line when it holds. Run with
//! `cargo test -p orbcount --test acceptance -- --nocapture` to see the
//! lines.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use orbcount::multigraph::graph_from_pairs;
use orbcount::nice::{compute_scopes, make_nice, make_nice_rooted_at, NiceTreeDecomposition};
use orbcount::orbdp::{
    build_tables, count_euler_tours, count_orbs, ChargeVector, RootVector, TableKey,
};
use orbcount::oracle::{
    count_in_arborescences, enumerate_eulerian_orientations, enumerate_euler_tours,
    enumerate_forest_orbs, enumerate_in_arborescences, DEFAULT_BRUTE_CAP,
};
use orbcount::treedecomp::{min_fill_decompose, validate_decomposition, TreeDecomposition};
use orbcount::{BigNat, Error, MultiGraph, VertexId};

fn big(x: u64) -> BigNat {
    BigNat::from(x)
}

/// Criterion 1: on every connected Eulerian multigraph with n <= 5 and
/// m <= 8 (all per-pair multiplicities up to 3), the dynamic program equals
/// the backtracking tour oracle exactly, and the full sweep stays under five
/// minutes.
#[test]
fn criterion_1_exhaustive_oracle_equivalence() {
    let start = Instant::now();
    let mut instances = 0usize;

    for n in 1..=5usize {
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        let mut mults = vec![0usize; pairs.len()];
        sweep(&pairs, &mut mults, 0, 8, n, &mut |g: &MultiGraph| {
            let brute: BigNat = enumerate_euler_tours(g, 8).unwrap();
            let dp: BigNat = count_euler_tours(g, None, None).unwrap();
            assert_eq!(dp, brute, "n={n}, edges {:?}", g.edges());
            instances += 1;
        });
    }

    fn sweep(
        pairs: &[(u32, u32)],
        mults: &mut Vec<usize>,
        idx: usize,
        budget: usize,
        n: usize,
        check: &mut impl FnMut(&MultiGraph),
    ) {
        if idx == pairs.len() {
            let mut edges = Vec::new();
            for (i, &(u, v)) in pairs.iter().enumerate() {
                for _ in 0..mults[i] {
                    edges.push((u, v));
                }
            }
            let g = graph_from_pairs(n, &edges);
            if g.eulerian_status().is_eulerian {
                check(&g);
            }
            return;
        }
        for m in 0..=3.min(budget) {
            mults[idx] = m;
            sweep(pairs, mults, idx + 1, budget - m, n, check);
        }
        mults[idx] = 0;
    }

    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(300),
        "sweep took {elapsed:?}, over the five-minute budget"
    );
    println!(
        "criterion 1 (exhaustive oracle equivalence, {instances} eulerian instances in {elapsed:?}): PASS"
    );
}

fn table_map(table: &orbcount::DpTable<BigNat>) -> BTreeMap<TableKey, BigNat> {
    table.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
}

/// Rootings of the min-fill decomposition used by the per-node checks: the
/// default pipeline rooting for vertex 0, plus a rooting at every bag
/// containing a maximum-degree vertex. Rooting mid-path at a cut vertex
/// turns the path into two branches and forces join nodes.
fn corpus_rootings(g: &MultiGraph) -> Vec<NiceTreeDecomposition> {
    let td = min_fill_decompose(g);
    let mut out = vec![make_nice(&td, g, VertexId(0)).unwrap()];
    let hub = g
        .vertices()
        .max_by_key(|&v| g.degree(v))
        .expect("non-empty graph");
    for node in 0..td.node_count() {
        if td.bag(node).binary_search(&hub).is_ok() {
            out.push(make_nice_rooted_at(&td, g, hub, node).unwrap());
        }
    }
    out
}

/// Criterion 2: on the fixed corpus, every dynamic-programming node table
/// equals the forest-orb enumeration key for key and count for count.
#[test]
fn criterion_2_per_node_table_equivalence() {
    let mut nodes_checked = 0usize;
    let mut joins_checked = 0usize;
    for (name, g) in common::fixed_corpus() {
        for ntd in corpus_rootings(&g) {
            let scopes = compute_scopes(&ntd, &g);
            let tables = build_tables::<BigNat>(&g, &ntd).unwrap();
            for i in 0..ntd.node_count() {
                let dp = table_map(&tables[i]);
                let oracle = enumerate_forest_orbs(&g, &scopes[i], DEFAULT_BRUTE_CAP).unwrap();
                assert_eq!(
                    dp, oracle,
                    "{name}: node {i} ({:?}, bag {:?})",
                    ntd.node(i).kind,
                    ntd.node(i).bag
                );
                nodes_checked += 1;
                if ntd.node(i).kind == orbcount::NodeKind::Join {
                    joins_checked += 1;
                }
            }
        }
    }
    assert!(joins_checked > 0, "no join node was exercised");
    println!(
        "criterion 2 (per-node table equivalence, {nodes_checked} node tables, {joins_checked} joins): PASS"
    );
}

/// Criterion 3: the orientation/arborescence chain. Summing arborescence
/// counts over all Eulerian orientations and multiplying by the factorial
/// factor reproduces the tour count for every root, and the per-orientation
/// count is root-independent.
#[test]
fn criterion_3_best_theorem_chain() {
    for (name, g) in common::fixed_corpus() {
        let tours: BigNat = enumerate_euler_tours(&g, DEFAULT_BRUTE_CAP).unwrap();
        let factor: BigNat = g.factorial_factor().unwrap();
        let orientations = enumerate_eulerian_orientations(&g, DEFAULT_BRUTE_CAP).unwrap();
        for o in &orientations {
            let reference = count_in_arborescences(o, VertexId(0));
            for r in g.vertices().skip(1) {
                assert_eq!(
                    count_in_arborescences(o, r),
                    reference,
                    "{name}: arborescence count depends on the root"
                );
            }
        }
        for r in g.vertices() {
            let total: BigNat = orientations
                .iter()
                .map(|o| count_in_arborescences(o, r))
                .sum();
            assert_eq!(factor.clone() * total, tours, "{name}, root {r}");
        }
    }
    println!("criterion 3 (orientation/arborescence chain on the corpus): PASS");
}

/// Criterion 4: closed families, oracle first: cycles have two tours,
/// the bowtie four, the three-triangle chain eight.
#[test]
fn criterion_4_closed_family_checks() {
    for n in 3..=10usize {
        let g = common::cycle(n);
        let brute: BigNat = enumerate_euler_tours(&g, DEFAULT_BRUTE_CAP).unwrap();
        assert_eq!(brute, big(2), "oracle on C_{n}");
        let dp: BigNat = count_euler_tours(&g, None, None).unwrap();
        assert_eq!(dp, big(2), "dp on C_{n}");
    }
    let bowtie = common::bowtie();
    assert_eq!(
        enumerate_euler_tours::<BigNat>(&bowtie, DEFAULT_BRUTE_CAP).unwrap(),
        big(4)
    );
    assert_eq!(count_euler_tours::<BigNat>(&bowtie, None, None).unwrap(), big(4));

    let chain3 = common::triangle_chain(3);
    assert_eq!(
        enumerate_euler_tours::<BigNat>(&chain3, DEFAULT_BRUTE_CAP).unwrap(),
        big(8)
    );
    assert_eq!(count_euler_tours::<BigNat>(&chain3, None, None).unwrap(), big(8));

    println!("criterion 4 (closed families: cycles 2, bowtie 4, chain 8): PASS");
}

/// Clique-fill decomposition along an explicit elimination order; used to
/// build structurally different decompositions of the same graph.
fn elimination_td(g: &MultiGraph, order: &[usize]) -> TreeDecomposition {
    use std::collections::BTreeSet;
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(u, v) in g.edges() {
        adj[u.index()].insert(v.index());
        adj[v.index()].insert(u.index());
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bags = Vec::new();
    let mut edges = Vec::new();
    let mut parents: Vec<Vec<usize>> = Vec::new();
    for (step, &v) in order.iter().enumerate() {
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        let mut bag: Vec<VertexId> = ns.iter().map(|&x| VertexId(x as u32)).collect();
        bag.push(VertexId(v as u32));
        bag.sort_unstable();
        bags.push(bag);
        parents.push(ns.clone());
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
        let _ = step;
    }
    for (i, ns) in parents.iter().enumerate() {
        let parent = ns.iter().map(|&x| pos[x]).min().unwrap_or(i + 1);
        if parent < order.len() {
            edges.push((i, parent));
        }
    }
    TreeDecomposition::new(bags, edges)
}

/// Criterion 5: the result does not depend on the decomposition or the root
/// vertex: at least three structurally different nice decompositions per
/// corpus graph, and every root choice, give identical counts.
#[test]
fn criterion_5_invariance() {
    for (name, g) in common::fixed_corpus() {
        let n = g.vertex_count();
        let r = VertexId(0);
        let reference: BigNat = count_euler_tours(&g, None, None).unwrap();

        // structurally different decompositions
        let min_fill = min_fill_decompose(&g);
        let single_bag = TreeDecomposition::new(vec![g.vertices().collect()], vec![]);
        let reversed = elimination_td(&g, &(0..n).rev().collect::<Vec<_>>());
        let rotated = elimination_td(&g, &(1..n).chain([0]).collect::<Vec<_>>());
        let mut ntds = vec![make_nice(&min_fill, &g, r).unwrap()];
        if let Some(last) = (0..min_fill.node_count())
            .rev()
            .find(|&i| min_fill.bag(i).binary_search(&r).is_ok())
        {
            ntds.push(make_nice_rooted_at(&min_fill, &g, r, last).unwrap());
        }
        ntds.push(make_nice(&single_bag, &g, r).unwrap());
        ntds.push(make_nice(&reversed, &g, r).unwrap());
        ntds.push(make_nice(&rotated, &g, r).unwrap());

        let mut signatures: Vec<Vec<(u8, Vec<VertexId>)>> = Vec::new();
        for ntd in &ntds {
            assert!(validate_decomposition(&g, &ntd.to_tree_decomposition()).is_valid());
            let sig: Vec<(u8, Vec<VertexId>)> = ntd
                .nodes()
                .iter()
                .map(|node| {
                    let tag = match node.kind {
                        orbcount::NodeKind::Leaf => 0u8,
                        orbcount::NodeKind::Introduce(_) => 1,
                        orbcount::NodeKind::Forget(_) => 2,
                        orbcount::NodeKind::Join => 3,
                    };
                    (tag, node.bag.clone())
                })
                .collect();
            if !signatures.contains(&sig) {
                signatures.push(sig);
            }
            let orbs: BigNat = count_orbs(&g, ntd, r).unwrap();
            let factor: BigNat = g.factorial_factor().unwrap();
            assert_eq!(factor * orbs, reference, "{name}: decomposition changed the count");
        }
        assert!(
            signatures.len() >= 3,
            "{name}: only {} structurally different decompositions",
            signatures.len()
        );

        // every root vertex
        for root in g.vertices() {
            let got: BigNat = count_euler_tours(&g, None, Some(root)).unwrap();
            assert_eq!(got, reference, "{name}: root {root} changed the count");
        }
    }
    println!("criterion 5 (decomposition and root invariance on the corpus): PASS");
}

/// Criterion 6: table sizes on the simple-graph corpus respect the
/// `n^k * k^k` bound, and every stored key satisfies the charge and root
/// vector invariants.
#[test]
fn criterion_6_bounds_and_key_invariants() {
    for (name, g) in common::fixed_corpus() {
        let simple = g
            .edges()
            .iter()
            .all(|&(u, v)| g.multiplicity(u, v) == 1);
        for ntd in corpus_rootings(&g) {
            let k = ntd.width() as u32;
            let scopes = compute_scopes(&ntd, &g);
            let tables = build_tables::<BigNat>(&g, &ntd).unwrap();
            for (i, table) in tables.iter().enumerate() {
                if simple {
                    let bound = (g.vertex_count() as u128).pow(k) * (k as u128).pow(k);
                    assert!(
                        (table.len() as u128) <= bound,
                        "{name}: node {i} has {} entries, bound {bound}",
                        table.len()
                    );
                }
                let scope = &scopes[i];
                let mut lower_degree: BTreeMap<VertexId, i32> = BTreeMap::new();
                for &e in &scope.lower_edges {
                    let (u, v) = g.endpoints(e);
                    *lower_degree.entry(u).or_default() += 1;
                    *lower_degree.entry(v).or_default() += 1;
                }
                for ((ChargeVector(c), RootVector(s)), count) in table.iter() {
                    assert!(*count > big(0), "{name}: zero entry stored at node {i}");
                    for (t, &x) in scope.bag.iter().enumerate() {
                        let d = lower_degree.get(&x).copied().unwrap_or(0);
                        assert!(c[t].abs() <= d, "{name} node {i}: |charge| exceeds degree");
                        assert_eq!((c[t] - d).rem_euclid(2), 0, "{name} node {i}: charge parity");
                        if scope.upper_bag.binary_search(&x).is_ok() {
                            assert_eq!(c[t], 0, "{name} node {i}: nonzero charge off the lower part");
                            assert_eq!(s[t], x, "{name} node {i}: moved root off the lower part");
                        }
                        let root_slot = scope.bag.binary_search(&s[t]).unwrap();
                        assert_eq!(s[root_slot], s[t], "{name} node {i}: root target not a root");
                    }
                    if !scope.lower_bag.is_empty() {
                        assert!(
                            scope
                                .lower_bag
                                .iter()
                                .any(|x| s[scope.bag.binary_search(x).unwrap()] == *x),
                            "{name} node {i}: no root inside the lower bag"
                        );
                    }
                }
            }
        }
    }
    println!("criterion 6 (table-size bounds and key invariants): PASS");
}

/// Criterion 7: polynomial scaling. The 200-triangle chain (n = 401)
/// finishes in at most ten seconds, doubling the chain at three sizes grows
/// the runtime by at most 4x, and the brute-force oracle refuses anything
/// past its cap.
#[test]
fn criterion_7_polynomial_scaling() {
    fn timed(t: usize) -> (Duration, BigNat) {
        let g = common::triangle_chain(t);
        let mut best: Option<(Duration, BigNat)> = None;
        for _ in 0..3 {
            let start = Instant::now();
            let count: BigNat = count_euler_tours(&g, None, None).unwrap();
            let elapsed = start.elapsed();
            if best.as_ref().is_none_or(|(b, _)| elapsed < *b) {
                best = Some((elapsed, count));
            }
        }
        best.unwrap()
    }

    let (t50, c50) = timed(50);
    let (t100, c100) = timed(100);
    let (t200, c200) = timed(200);

    // chains double their tour count per triangle: established by the
    // backtracking oracle for small t (criterion 4), closed form beyond
    assert_eq!(c50, big(1) << 50);
    assert_eq!(c100, big(1) << 100);
    assert_eq!(c200, big(1) << 200);

    assert!(
        t200 <= Duration::from_secs(10),
        "200-triangle chain took {t200:?}"
    );
    for (label, small, large) in [("50->100", t50, t100), ("100->200", t100, t200)] {
        assert!(
            large.as_secs_f64() <= 4.0 * small.as_secs_f64(),
            "doubling {label} grew runtime {small:?} -> {large:?}, over 4x"
        );
    }

    let too_big = common::triangle_chain(5); // 15 edges
    assert!(matches!(
        enumerate_euler_tours::<BigNat>(&too_big, DEFAULT_BRUTE_CAP),
        Err(Error::CapExceeded { m: 15, cap: 14 })
    ));

    println!(
        "criterion 7 (scaling: t=50 {t50:?}, t=100 {t100:?}, t=200 {t200:?}; cap enforced): PASS"
    );
}

/// Criterion 8: the determinant oracle agrees with explicit arborescence
/// enumeration on every Eulerian orientation of the corpus graphs with
/// n <= 6.
#[test]
fn criterion_8_determinant_vs_enumeration() {
    let mut orientations_checked = 0usize;
    for (name, g) in common::fixed_corpus() {
        if g.vertex_count() > 6 {
            continue;
        }
        for o in enumerate_eulerian_orientations(&g, DEFAULT_BRUTE_CAP).unwrap() {
            for r in g.vertices() {
                let by_det = count_in_arborescences(&o, r);
                let by_enum = enumerate_in_arborescences(&o, r);
                assert!(by_enum.iter().all(|a| a.is_valid(&o)));
                assert_eq!(
                    by_det,
                    BigNat::from(by_enum.len()),
                    "{name}: determinant disagrees at root {r}"
                );
            }
            orientations_checked += 1;
        }
    }
    println!(
        "criterion 8 (determinant vs enumeration, {orientations_checked} orientations): PASS"
    );
}
