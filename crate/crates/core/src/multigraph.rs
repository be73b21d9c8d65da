//! Undirected multigraph model, Eulerian validation, and the factorial
//! factor that relates orb counts to Euler tour counts.

use std::collections::BTreeMap;
use std::fmt;

use crate::counting::{factorial, Count};
use crate::error::Error;

/// Dense 0-based vertex index. File formats are 1-based, so `Display`
/// prints the external (1-based) id.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

/// Stable index of an edge record. Parallel edges get distinct ids.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub u32);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Undirected multigraph without self-loops. Edge records keep their input
/// order; repeated endpoint pairs are parallel edges.
#[derive(Clone, Debug)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<(EdgeId, VertexId)>>,
    multiplicity: BTreeMap<(VertexId, VertexId), usize>,
}

/// Outcome of the Eulerian check: a graph has an Euler tour exactly when it
/// is connected and every vertex has even degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianStatus {
    pub connected: bool,
    pub odd_vertices: Vec<VertexId>,
    pub is_eulerian: bool,
}

impl fmt::Display for EulerianStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_eulerian {
            return write!(f, "eulerian");
        }
        if !self.connected {
            write!(f, "not connected")?;
            if !self.odd_vertices.is_empty() {
                write!(f, "; ")?;
            }
        }
        if !self.odd_vertices.is_empty() {
            write!(f, "odd-degree vertices:")?;
            for v in &self.odd_vertices {
                write!(f, " {v}")?;
            }
        }
        Ok(())
    }
}

impl MultiGraph {
    /// Builds a multigraph from explicit edge records. Rejects self-loops and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, Error> {
        for &(u, v) in &edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if u.index() >= n {
                return Err(Error::VertexOutOfRange(u, n));
            }
            if v.index() >= n {
                return Err(Error::VertexOutOfRange(v, n));
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut multiplicity = BTreeMap::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            let e = EdgeId(i as u32);
            adj[u.index()].push((e, v));
            adj[v.index()].push((e, u));
            let key = if u <= v { (u, v) } else { (v, u) };
            *multiplicity.entry(key).or_insert(0) += 1;
        }
        Ok(MultiGraph {
            n,
            edges,
            adj,
            multiplicity,
        })
    }

    /// Parses the `.gr` edge-list format: optional `p et <n> <m>` header,
    /// comment lines starting with `c` or `#`, then one `<u> <v>` line per
    /// edge (1-based ids, repeated lines are parallel edges). Without a
    /// header, `n` is the largest vertex id seen.
    pub fn parse_edge_list(text: &str) -> Result<Self, Error> {
        let mut declared_n: Option<usize> = None;
        let mut raw_edges: Vec<(usize, usize, usize)> = Vec::new(); // (u, v, line)
        let mut max_id = 0usize;

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
                continue;
            }
            if line.starts_with('p') {
                if declared_n.is_some() {
                    return Err(Error::parse(lineno, "duplicate header line"));
                }
                if !raw_edges.is_empty() {
                    return Err(Error::parse(lineno, "header after edge lines"));
                }
                let tokens: Vec<&str> = line.split_whitespace().collect();
                if tokens.len() != 4 {
                    return Err(Error::parse(lineno, "header must be `p et <n> <m>`"));
                }
                let n: usize = tokens[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad vertex count in header"))?;
                tokens[3]
                    .parse::<usize>()
                    .map_err(|_| Error::parse(lineno, "bad edge count in header"))?;
                declared_n = Some(n);
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::parse(lineno, format!("expected `<u> <v>`, got `{line}`")));
            }
            let u: usize = tokens[0]
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad vertex id `{}`", tokens[0])))?;
            let v: usize = tokens[1]
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad vertex id `{}`", tokens[1])))?;
            if u == 0 || v == 0 {
                return Err(Error::parse(lineno, "vertex ids are 1-based"));
            }
            if u == v {
                return Err(Error::parse(lineno, format!("self-loop at vertex {u}")));
            }
            if let Some(n) = declared_n {
                if u > n || v > n {
                    return Err(Error::parse(
                        lineno,
                        format!("vertex id {} out of declared range 1..={n}", u.max(v)),
                    ));
                }
            }
            max_id = max_id.max(u).max(v);
            raw_edges.push((u, v, lineno));
        }

        let n = declared_n.unwrap_or(max_id);
        let edges = raw_edges
            .into_iter()
            .map(|(u, v, _)| (VertexId((u - 1) as u32), VertexId((v - 1) as u32)))
            .collect();
        MultiGraph::new(n, edges)
    }

    /// Emits the `.gr` format with edges in input order, so parse/emit
    /// round-trips are bit-exact.
    pub fn to_gr_string(&self) -> String {
        let mut out = format!("p et {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.index()].len()
    }

    /// Incident edges of `v` as `(edge, other endpoint)`, in input order.
    pub fn incident(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.adj[v.index()]
    }

    /// Number of parallel edges between `u` and `v`.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        let key = if u <= v { (u, v) } else { (v, u) };
        self.multiplicity.get(&key).copied().unwrap_or(0)
    }

    /// Distinct neighbors of `v`, ascending.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut ns: Vec<VertexId> = self.adj[v.index()].iter().map(|&(_, w)| w).collect();
        ns.sort_unstable();
        ns.dedup();
        ns
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n as u32).map(VertexId)
    }

    /// Connectivity over all `n` vertices. Graphs with at most one vertex
    /// count as connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &(_, w) in &self.adj[v] {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    reached += 1;
                    stack.push(w.index());
                }
            }
        }
        reached == self.n
    }

    /// Checks the two Euler tour preconditions: connectivity and all-even
    /// degrees.
    pub fn eulerian_status(&self) -> EulerianStatus {
        let connected = self.is_connected();
        let odd_vertices: Vec<VertexId> = self
            .vertices()
            .filter(|&v| self.degree(v) % 2 == 1)
            .collect();
        let is_eulerian = connected && odd_vertices.is_empty();
        EulerianStatus {
            connected,
            odd_vertices,
            is_eulerian,
        }
    }

    /// The factor `prod_v (d_v - 1)!` where vertex degrees are `2 d_v`.
    /// Isolated vertices are skipped; any odd degree is an error.
    pub fn factorial_factor<C: Count>(&self) -> Result<C, Error> {
        let mut acc = C::one();
        for v in self.vertices() {
            let deg = self.degree(v);
            if deg % 2 == 1 {
                return Err(Error::OddDegree(v));
            }
            if deg == 0 {
                continue;
            }
            let f: C = factorial(deg / 2 - 1);
            acc = acc * &f;
        }
        Ok(acc)
    }
}

/// Convenience constructor from 0-based index pairs; panics on invalid
/// input, so intended for code that builds known-good graphs (tests, the
/// corpus generators).
pub fn graph_from_pairs(n: usize, pairs: &[(u32, u32)]) -> MultiGraph {
    let edges = pairs
        .iter()
        .map(|&(u, v)| (VertexId(u), VertexId(v)))
        .collect();
    MultiGraph::new(n, edges).expect("invalid edge list")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::BigNat;

    #[test]
    fn parse_triangle_with_header() {
        let g = MultiGraph::parse_edge_list("p et 3 3\n1 2\n2 3\n3 1\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        for (u, v) in [(0, 1), (1, 2), (2, 0)] {
            assert_eq!(g.multiplicity(VertexId(u), VertexId(v)), 1);
        }
    }

    #[test]
    fn parse_parallel_edges_without_header() {
        let g = MultiGraph::parse_edge_list("1 2\n1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.multiplicity(VertexId(0), VertexId(1)), 2);
        assert_eq!(g.multiplicity(VertexId(1), VertexId(0)), 2);
    }

    #[test]
    fn parse_rejects_self_loop() {
        let err = MultiGraph::parse_edge_list("1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn parse_rejects_out_of_range() {
        let err = MultiGraph::parse_edge_list("p et 2 1\n1 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn parse_rejects_malformed_line() {
        assert!(MultiGraph::parse_edge_list("1 2 3\n").is_err());
        assert!(MultiGraph::parse_edge_list("a b\n").is_err());
        assert!(MultiGraph::parse_edge_list("p et x 3\n").is_err());
    }

    #[test]
    fn parse_skips_comments() {
        let g = MultiGraph::parse_edge_list("c a comment\n# another\np et 2 1\nc mid\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn gr_round_trip_is_bit_exact() {
        let text = "p et 4 5\n1 2\n2 3\n3 4\n4 1\n2 3\n";
        let g = MultiGraph::parse_edge_list(text).unwrap();
        let emitted = g.to_gr_string();
        assert_eq!(emitted, text);
        let g2 = MultiGraph::parse_edge_list(&emitted).unwrap();
        assert_eq!(g.edges(), g2.edges());
    }

    #[test]
    fn eulerian_status_triangle() {
        let g = graph_from_pairs(3, &[(0, 1), (1, 2), (2, 0)]);
        let st = g.eulerian_status();
        assert!(st.is_eulerian && st.connected && st.odd_vertices.is_empty());
    }

    #[test]
    fn eulerian_status_single_edge() {
        let g = graph_from_pairs(2, &[(0, 1)]);
        let st = g.eulerian_status();
        assert!(!st.is_eulerian);
        assert_eq!(st.odd_vertices, vec![VertexId(0), VertexId(1)]);
    }

    #[test]
    fn eulerian_status_disjoint_triangles() {
        let g = graph_from_pairs(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let st = g.eulerian_status();
        assert!(!st.connected && !st.is_eulerian);
        assert!(st.odd_vertices.is_empty());
    }

    #[test]
    fn degenerate_single_vertex_is_eulerian() {
        let g = MultiGraph::new(1, vec![]).unwrap();
        assert!(g.eulerian_status().is_eulerian);
    }

    #[test]
    fn factorial_factor_examples() {
        let triangle = graph_from_pairs(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(triangle.factorial_factor::<BigNat>().unwrap(), BigNat::from(1u32));

        let bowtie = graph_from_pairs(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(bowtie.factorial_factor::<BigNat>().unwrap(), BigNat::from(1u32));

        // three digons sharing vertex 0: degree 6 there, 2 elsewhere
        let star = graph_from_pairs(4, &[(0, 1), (0, 1), (0, 2), (0, 2), (0, 3), (0, 3)]);
        assert_eq!(star.factorial_factor::<BigNat>().unwrap(), BigNat::from(2u32));
    }

    #[test]
    fn factorial_factor_rejects_odd_degree() {
        let g = graph_from_pairs(2, &[(0, 1)]);
        assert!(matches!(
            g.factorial_factor::<BigNat>(),
            Err(Error::OddDegree(VertexId(0)))
        ));
    }

    #[test]
    fn handshake_holds() {
        let g = graph_from_pairs(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        let degree_sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn status_invariant_under_edge_permutation() {
        let a = graph_from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let b = graph_from_pairs(4, &[(3, 0), (2, 3), (0, 1), (1, 2)]);
        assert_eq!(a.eulerian_status(), b.eulerian_status());
    }
}
