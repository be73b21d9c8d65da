//! Shared graph corpus for integration tests.

use orbcount::multigraph::graph_from_pairs;
use orbcount::MultiGraph;

pub fn triangle() -> MultiGraph {
    graph_from_pairs(3, &[(0, 1), (1, 2), (2, 0)])
}

pub fn cycle(n: usize) -> MultiGraph {
    let pairs: Vec<(u32, u32)> = (0..n).map(|i| (i as u32, ((i + 1) % n) as u32)).collect();
    graph_from_pairs(n, &pairs)
}

/// Two triangles sharing one vertex (vertex 2).
pub fn bowtie() -> MultiGraph {
    graph_from_pairs(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
}

/// `t` triangles glued in a row at cut vertices: triangle `i` sits on
/// vertices `2i, 2i+1, 2i+2`.
pub fn triangle_chain(t: usize) -> MultiGraph {
    let mut pairs = Vec::with_capacity(3 * t);
    for i in 0..t as u32 {
        let (a, b, c) = (2 * i, 2 * i + 1, 2 * i + 2);
        pairs.push((a, b));
        pairs.push((b, c));
        pairs.push((a, c));
    }
    graph_from_pairs(2 * t + 1, &pairs)
}

pub fn k5() -> MultiGraph {
    let mut pairs = Vec::new();
    for u in 0..5u32 {
        for v in u + 1..5 {
            pairs.push((u, v));
        }
    }
    graph_from_pairs(5, &pairs)
}

/// Complete tripartite K_{2,2,2} (the octahedron): parts {0,1}, {2,3}, {4,5}.
pub fn octahedron() -> MultiGraph {
    let parts = [[0u32, 1], [2, 3], [4, 5]];
    let mut pairs = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            for &u in &parts[i] {
                for &v in &parts[j] {
                    pairs.push((u, v));
                }
            }
        }
    }
    graph_from_pairs(6, &pairs)
}

/// Path on 4 vertices with every edge doubled.
pub fn doubled_path4() -> MultiGraph {
    graph_from_pairs(4, &[(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (2, 3)])
}

/// The fixed corpus used by the per-node and chain checks.
pub fn fixed_corpus() -> Vec<(&'static str, MultiGraph)> {
    vec![
        ("triangle", triangle()),
        ("C4", cycle(4)),
        ("C6", cycle(6)),
        ("bowtie", bowtie()),
        ("triangle chain t=3", triangle_chain(3)),
        ("K5", k5()),
        ("octahedron", octahedron()),
        ("doubled path P4x2", doubled_path4()),
    ]
}
