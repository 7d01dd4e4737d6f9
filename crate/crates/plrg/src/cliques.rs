//! Clique algorithms.
//!
//! The three scan algorithms walk a vertex order (decreasing weight or
//! decreasing degree) and only read the graph through adjacency queries:
//!   * greedy: keep a vertex iff adjacent to every vertex kept so far;
//!   * quasi-top: keep a vertex iff adjacent to every earlier vertex in the
//!     order, kept or not;
//!   * full-top: the longest prefix of the order inducing a complete graph.
//! Their sizes satisfy |full_top| <= |quasi_top| <= |greedy| <= omega.
//!
//! `max_clique_exact` is a budgeted Bron-Kerbosch search with pivoting over
//! a degeneracy ordering, used as the exact oracle at desk scale.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::weights::WeightVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Greedy,
    QuasiTop,
    FullTop,
    Exact,
    DegreeGreedy,
    DegreeQuasiTop,
    DegreeFullTop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    Weight,
    Degree,
}

/// A scan order over the vertices.
#[derive(Debug, Clone)]
pub struct ScanOrder {
    pub perm: Vec<u32>,
    pub kind: OrderKind,
}

impl ScanOrder {
    /// Decreasing weight, ties by ascending id (the weight rank order).
    pub fn by_weight(weights: &WeightVector) -> ScanOrder {
        ScanOrder {
            perm: weights.rank.clone(),
            kind: OrderKind::Weight,
        }
    }

    /// Decreasing simple-graph degree; ties broken by descending weight
    /// (when available) then ascending id.
    pub fn by_degree(g: &Graph) -> ScanOrder {
        let deg = g.degrees();
        let mut perm: Vec<u32> = (0..g.n() as u32).collect();
        match &g.weights {
            Some(wv) => perm.sort_by(|&i, &j| {
                deg[j as usize]
                    .cmp(&deg[i as usize])
                    .then(
                        wv.w[j as usize]
                            .partial_cmp(&wv.w[i as usize])
                            .unwrap(),
                    )
                    .then(i.cmp(&j))
            }),
            None => perm.sort_by(|&i, &j| deg[j as usize].cmp(&deg[i as usize]).then(i.cmp(&j))),
        }
        ScanOrder {
            perm,
            kind: OrderKind::Degree,
        }
    }

    pub fn from_perm(perm: Vec<u32>, kind: OrderKind) -> ScanOrder {
        ScanOrder { perm, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueResult {
    /// Vertex ids, ascending.
    pub vertices: Vec<u32>,
    pub size: usize,
    pub method: Method,
    pub order_used: OrderKind,
}

impl CliqueResult {
    fn new(mut vertices: Vec<u32>, method: Method, order_used: OrderKind) -> CliqueResult {
        vertices.sort_unstable();
        CliqueResult {
            size: vertices.len(),
            vertices,
            method,
            order_used,
        }
    }
}

fn tag(base: Method, kind: OrderKind) -> Method {
    match (base, kind) {
        (Method::Greedy, OrderKind::Degree) => Method::DegreeGreedy,
        (Method::QuasiTop, OrderKind::Degree) => Method::DegreeQuasiTop,
        (Method::FullTop, OrderKind::Degree) => Method::DegreeFullTop,
        (m, _) => m,
    }
}

/// Scan the order, selecting a vertex iff it is adjacent to every vertex
/// already selected. Rejected vertices are ignored for future tests.
pub fn greedy_clique(g: &Graph, order: &ScanOrder) -> CliqueResult {
    let mut kept: Vec<u32> = Vec::new();
    for &v in &order.perm {
        // Check most recent first: late picks have low degree and fail fast.
        if kept.iter().rev().all(|&u| g.has_edge(v, u)) {
            kept.push(v);
        }
    }
    CliqueResult::new(kept, tag(Method::Greedy, order.kind), order.kind)
}

/// Select a vertex iff it is adjacent to every vertex earlier in the order,
/// selected or not.
pub fn quasi_top_clique(g: &Graph, order: &ScanOrder) -> CliqueResult {
    let pos = inverse_positions(&order.perm, g.n());
    let mut kept: Vec<u32> = Vec::new();
    for (p, &v) in order.perm.iter().enumerate() {
        if g.degree(v) >= p {
            let earlier = g
                .neighbors(v)
                .iter()
                .filter(|&&u| (pos[u as usize] as usize) < p)
                .count();
            if earlier == p {
                kept.push(v);
            }
        }
    }
    CliqueResult::new(kept, tag(Method::QuasiTop, order.kind), order.kind)
}

/// The longest prefix of the order inducing a complete subgraph: stop at the
/// first vertex not adjacent to all earlier ones.
pub fn full_top_clique(g: &Graph, order: &ScanOrder) -> CliqueResult {
    let pos = inverse_positions(&order.perm, g.n());
    let mut prefix = 0usize;
    for (p, &v) in order.perm.iter().enumerate() {
        let complete = g.degree(v) >= p
            && g.neighbors(v)
                .iter()
                .filter(|&&u| (pos[u as usize] as usize) < p)
                .count()
                == p;
        if complete {
            prefix = p + 1;
        } else {
            break;
        }
    }
    CliqueResult::new(
        order.perm[..prefix].to_vec(),
        tag(Method::FullTop, order.kind),
        order.kind,
    )
}

/// Sizes of the three scan cliques, computed together.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanSizes {
    pub greedy: usize,
    pub quasi_top: usize,
    pub full_top: usize,
}

/// Adjacency restricted to earlier-in-order neighbors, indexed by scan
/// position. The scan algorithms never look forward, so this half of the
/// graph is all they need — at roughly a third of the full CSR footprint,
/// which matters for the largest sampled graphs.
#[derive(Debug, Clone)]
pub struct ScanAdjacency {
    offsets: Vec<usize>,
    earlier: Vec<u32>,
}

impl ScanAdjacency {
    /// Build from (later_position, earlier_position) pairs. The input is
    /// sorted and deduplicated in place; entries must satisfy later > earlier.
    pub fn from_position_pairs(n: usize, pairs: &mut Vec<(u32, u32)>) -> ScanAdjacency {
        pairs.sort_unstable();
        pairs.dedup();
        let mut offsets = vec![0usize; n + 1];
        for &(later, earlier) in pairs.iter() {
            debug_assert!(earlier < later && (later as usize) < n);
            offsets[later as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let earlier = pairs.iter().map(|&(_, e)| e).collect();
        ScanAdjacency { offsets, earlier }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.earlier.len()
    }

    /// Earlier neighbors of the vertex at scan position `p`, ascending.
    pub fn earlier(&self, p: usize) -> &[u32] {
        &self.earlier[self.offsets[p]..self.offsets[p + 1]]
    }

    /// Run all three scan algorithms in one pass over the order.
    pub fn scan_sizes(&self) -> ScanSizes {
        let n = self.n();
        let mut kept: Vec<u32> = Vec::new();
        let mut quasi = 0usize;
        let mut full = 0usize;
        let mut prefix_ok = true;
        for p in 0..n {
            let earlier = self.earlier(p);
            // Adjacent to all earlier vertices iff every one of the p earlier
            // positions shows up as a neighbor.
            if earlier.len() == p {
                quasi += 1;
                if prefix_ok {
                    full += 1;
                }
            } else if prefix_ok {
                prefix_ok = false;
            }
            // Greedy: adjacent to all kept, checking most recent first.
            if kept
                .iter()
                .rev()
                .all(|u| earlier.binary_search(u).is_ok())
            {
                kept.push(p as u32);
            }
        }
        ScanSizes {
            greedy: kept.len(),
            quasi_top: quasi,
            full_top: full,
        }
    }
}

fn inverse_positions(perm: &[u32], n: usize) -> Vec<u32> {
    let mut pos = vec![0u32; n];
    for (p, &v) in perm.iter().enumerate() {
        pos[v as usize] = p as u32;
    }
    pos
}

/// True iff all pairs in `s` are adjacent. Empty and singleton sets count.
pub fn is_clique(g: &Graph, s: &[u32]) -> Result<bool> {
    for &v in s {
        if v as usize >= g.n() {
            return Err(Error::UnknownVertex(v as usize + 1));
        }
    }
    for (k, &u) in s.iter().enumerate() {
        for &v in &s[k + 1..] {
            if u == v || !g.has_edge(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Exact maximum clique via Bron-Kerbosch with pivoting, the outer loop
/// following a degeneracy ordering. Fails with `BudgetExceeded` once the
/// search tree grows past `node_budget` nodes.
///
/// Conventions: omega of the empty graph on n >= 1 vertices is 1 (singleton
/// cliques count); omega = 0 only for n = 0.
pub fn max_clique_exact(g: &Graph, node_budget: u64) -> Result<CliqueResult> {
    if g.n() == 0 {
        return Ok(CliqueResult::new(vec![], Method::Exact, OrderKind::Weight));
    }
    let order = degeneracy_order(g);
    let rank = inverse_positions(&order, g.n());
    let mut best: Vec<u32> = vec![order[0]];
    let mut nodes = 0u64;
    let mut r: Vec<u32> = Vec::new();
    for &v in &order {
        // Candidates: neighbors later in the degeneracy order.
        let p: Vec<u32> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| rank[u as usize] > rank[v as usize])
            .collect();
        let x: Vec<u32> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| rank[u as usize] < rank[v as usize])
            .collect();
        r.push(v);
        expand(g, &mut r, p, x, &mut best, &mut nodes, node_budget)?;
        r.pop();
    }
    Ok(CliqueResult::new(best, Method::Exact, OrderKind::Weight))
}

fn expand(
    g: &Graph,
    r: &mut Vec<u32>,
    mut p: Vec<u32>,
    mut x: Vec<u32>,
    best: &mut Vec<u32>,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    if p.is_empty() {
        if x.is_empty() && r.len() > best.len() {
            *best = r.clone();
        }
        return Ok(());
    }
    if r.len() + p.len() <= best.len() {
        return Ok(());
    }
    // Pivot on the vertex of P u X covering the most of P.
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| intersect_count(g.neighbors(u), &p))
        .unwrap();
    let pivot_nb = g.neighbors(pivot);
    let mut candidates: Vec<u32> = p
        .iter()
        .copied()
        .filter(|&v| pivot_nb.binary_search(&v).is_err())
        .collect();
    candidates.reverse();
    for v in candidates {
        let nb = g.neighbors(v);
        let new_p: Vec<u32> = p.iter().copied().filter(|&u| nb.binary_search(&u).is_ok()).collect();
        let new_x: Vec<u32> = x.iter().copied().filter(|&u| nb.binary_search(&u).is_ok()).collect();
        r.push(v);
        expand(g, r, new_p, new_x, best, nodes, budget)?;
        r.pop();
        p.retain(|&u| u != v);
        x.push(v);
    }
    Ok(())
}

fn intersect_count(sorted: &[u32], other: &[u32]) -> usize {
    other
        .iter()
        .filter(|&&v| sorted.binary_search(&v).is_ok())
        .count()
}

/// Peel minimum-degree vertices; the classic O(n + m) degeneracy ordering.
fn degeneracy_order(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut deg: Vec<usize> = g.degrees();
    let maxd = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); maxd + 1];
    for v in 0..n {
        buckets[deg[v]].push(v as u32);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut floor = 0usize;
    while order.len() < n {
        while floor <= maxd && buckets[floor].is_empty() {
            floor += 1;
        }
        let v = match buckets[floor].pop() {
            Some(v) => v,
            None => break,
        };
        if removed[v as usize] || deg[v as usize] != floor {
            continue; // stale bucket entry
        }
        removed[v as usize] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u as usize] {
                deg[u as usize] -= 1;
                buckets[deg[u as usize]].push(u);
                if deg[u as usize] < floor {
                    floor = deg[u as usize];
                }
            }
        }
    }
    order
}

/// Exact triangle count by neighbor-list intersection over edges.
pub fn count_triangles(g: &Graph) -> u64 {
    let mut count = 0u64;
    for (i, j) in g.edges() {
        // Common neighbors above j close a triangle counted once.
        count += sorted_common_above(g.neighbors(i), g.neighbors(j), j).len() as u64;
    }
    count
}

/// Exact K4 count: common neighbors above each edge, then adjacent pairs
/// among them.
pub fn count_k4(g: &Graph) -> u64 {
    let mut count = 0u64;
    for (i, j) in g.edges() {
        let common = sorted_common_above(g.neighbors(i), g.neighbors(j), j);
        for (k, &u) in common.iter().enumerate() {
            let nb = g.neighbors(u);
            for &v in &common[k + 1..] {
                if nb.binary_search(&v).is_ok() {
                    count += 1;
                }
            }
        }
    }
    count
}

fn sorted_common_above(a: &[u32], b: &[u32], floor: u32) -> Vec<u32> {
    let a = &a[a.partition_point(|&x| x <= floor)..];
    let b = &b[b.partition_point(|&x| x <= floor)..];
    let mut out = Vec::new();
    let (mut p, mut q) = (0, 0);
    while p < a.len() && q < b.len() {
        match a[p].cmp(&b[q]) {
            std::cmp::Ordering::Less => p += 1,
            std::cmp::Ordering::Greater => q += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[p]);
                p += 1;
                q += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    /// The worked 4-vertex example: vertices a,b,c,d in decreasing weight,
    /// edges {a-c, a-d, c-d, b-d}.
    fn worked_example() -> (Graph, ScanOrder) {
        let g = Graph::from_edges(4, &[(0, 2), (0, 3), (2, 3), (1, 3)]).unwrap();
        let order = ScanOrder::from_perm(vec![0, 1, 2, 3], OrderKind::Weight);
        (g, order)
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n as u32 {
            for j in (i + 1)..n as u32 {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    fn identity_order(n: usize) -> ScanOrder {
        ScanOrder::from_perm((0..n as u32).collect(), OrderKind::Weight)
    }

    #[test]
    fn worked_example_all_methods() {
        let (g, order) = worked_example();
        assert_eq!(greedy_clique(&g, &order).vertices, vec![0, 2, 3]);
        assert_eq!(quasi_top_clique(&g, &order).vertices, vec![0, 3]);
        assert_eq!(full_top_clique(&g, &order).vertices, vec![0]);
        assert_eq!(max_clique_exact(&g, 1 << 20).unwrap().size, 3);
    }

    #[test]
    fn complete_graph_all_methods() {
        let g = complete(5);
        let order = identity_order(5);
        assert_eq!(greedy_clique(&g, &order).size, 5);
        assert_eq!(quasi_top_clique(&g, &order).size, 5);
        assert_eq!(full_top_clique(&g, &order).size, 5);
        assert_eq!(max_clique_exact(&g, 1 << 20).unwrap().size, 5);
    }

    #[test]
    fn empty_graph_conventions() {
        let g = Graph::from_edges(4, &[]).unwrap();
        let order = identity_order(4);
        assert_eq!(greedy_clique(&g, &order).vertices, vec![0]);
        assert_eq!(quasi_top_clique(&g, &order).vertices, vec![0]);
        assert_eq!(full_top_clique(&g, &order).vertices, vec![0]);
        assert_eq!(max_clique_exact(&g, 1 << 20).unwrap().size, 1);
        let none = Graph::from_edges(0, &[]).unwrap();
        assert_eq!(max_clique_exact(&none, 1 << 20).unwrap().size, 0);
    }

    #[test]
    fn is_clique_cases() {
        let g = complete(3);
        assert!(is_clique(&g, &[]).unwrap());
        assert!(is_clique(&g, &[1]).unwrap());
        assert!(is_clique(&g, &[0, 1, 2]).unwrap());
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!is_clique(&path, &[0, 1, 2]).unwrap());
        assert!(is_clique(&path, &[5]).is_err());
    }

    #[test]
    fn small_clique_counts() {
        let k4 = complete(4);
        assert_eq!(count_triangles(&k4), 4);
        assert_eq!(count_k4(&k4), 1);
        let k5 = complete(5);
        assert_eq!(count_k4(&k5), 5);
        let empty = Graph::from_edges(6, &[]).unwrap();
        assert_eq!(count_triangles(&empty), 0);
        assert_eq!(count_k4(&empty), 0);
    }

    fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
        let mut e = Vec::new();
        for i in 0..n as u32 {
            for j in (i + 1)..n as u32 {
                if rng.random::<f64>() < p {
                    e.push((i, j));
                }
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    fn brute_force_omega(g: &Graph) -> usize {
        let n = g.n();
        assert!(n <= 20);
        let mut best = 0usize;
        for mask in 0u32..(1 << n) {
            let members: Vec<u32> = (0..n as u32).filter(|&v| mask >> v & 1 == 1).collect();
            if members.len() > best && is_clique(g, &members).unwrap() {
                best = members.len();
            }
        }
        best
    }

    #[test]
    fn exact_matches_brute_force() {
        let mut rng = crate::rng::stream_rng(11, 0);
        for trial in 0..200 {
            let n = 5 + (trial % 10);
            let p = 0.2 + 0.6 * (trial as f64 / 200.0);
            let g = random_graph(n, p, &mut rng);
            let exact = max_clique_exact(&g, 1 << 24).unwrap();
            assert!(is_clique(&g, &exact.vertices).unwrap());
            assert_eq!(exact.size, brute_force_omega(&g), "trial {trial}");
        }
    }

    #[test]
    fn counts_match_brute_force() {
        let mut rng = crate::rng::stream_rng(13, 0);
        for _ in 0..10 {
            let g = random_graph(12, 0.4, &mut rng);
            let n = 12u32;
            let mut tri = 0u64;
            let mut quad = 0u64;
            for i in 0..n {
                for j in (i + 1)..n {
                    for k in (j + 1)..n {
                        if is_clique(&g, &[i, j, k]).unwrap() {
                            tri += 1;
                        }
                        for l in (k + 1)..n {
                            if is_clique(&g, &[i, j, k, l]).unwrap() {
                                quad += 1;
                            }
                        }
                    }
                }
            }
            assert_eq!(count_triangles(&g), tri);
            assert_eq!(count_k4(&g), quad);
        }
    }

    #[test]
    fn chain_property_random_instances() {
        let mut rng = crate::rng::stream_rng(17, 0);
        for trial in 0..1000 {
            let n = 4 + (trial % 12);
            let g = random_graph(n, 0.5, &mut rng);
            let order = identity_order(n);
            let ft = full_top_clique(&g, &order).size;
            let qt = quasi_top_clique(&g, &order).size;
            let gr = greedy_clique(&g, &order).size;
            let mx = max_clique_exact(&g, 1 << 24).unwrap().size;
            assert!(ft <= qt && qt <= gr && gr <= mx, "trial {trial}: {ft} {qt} {gr} {mx}");
        }
    }

    #[test]
    fn results_verify_as_cliques() {
        let mut rng = crate::rng::stream_rng(19, 0);
        for _ in 0..100 {
            let g = random_graph(15, 0.5, &mut rng);
            let order = identity_order(15);
            for res in [
                greedy_clique(&g, &order),
                quasi_top_clique(&g, &order),
                full_top_clique(&g, &order),
            ] {
                assert!(is_clique(&g, &res.vertices).unwrap());
                assert_eq!(res.size, res.vertices.len());
            }
        }
    }

    #[test]
    fn budget_exceeded_reported() {
        let g = complete(20);
        assert!(matches!(
            max_clique_exact(&g, 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn degree_order_tags() {
        let (g, _) = worked_example();
        let order = ScanOrder::by_degree(&g);
        // Degrees: a=2, b=1, c=2, d=3 -> order d, a, c, b.
        assert_eq!(order.perm, vec![3, 0, 2, 1]);
        let res = greedy_clique(&g, &order);
        assert_eq!(res.method, Method::DegreeGreedy);
        assert_eq!(res.vertices, vec![0, 2, 3]);
    }
}
