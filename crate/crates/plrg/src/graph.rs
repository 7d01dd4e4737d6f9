//! Immutable undirected graph with sorted neighbor lists.
//!
//! Vertex ids are 0-based in memory; all file formats use 1-based ids.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::weights::WeightVector;

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    /// CSR offsets, length n+1.
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    /// Parallel-edge counts aligned with `neighbors`; `None` for simple graphs.
    multiplicity: Option<Vec<u32>>,
    /// Weights the graph was sampled from, when known.
    pub weights: Option<WeightVector>,
}

impl Graph {
    /// Build a simple graph from unordered pairs. Pairs may repeat and may be
    /// given in either orientation; self-loops are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        let mut pairs = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i == j {
                return Err(Error::invalid(format!("self-loop at vertex {}", i + 1)));
            }
            if i as usize >= n || j as usize >= n {
                return Err(Error::UnknownVertex(i.max(j) as usize + 1));
            }
            pairs.push(if i < j { (i, j) } else { (j, i) });
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_sorted_unique_pairs(n, &pairs, None))
    }

    /// Build a multigraph from unordered pairs with repetitions counted as
    /// parallel edges. Self-loops are silently dropped (the fast sampler
    /// produces and discards them).
    pub fn from_multi_edges(n: usize, mut pairs: Vec<(u32, u32)>) -> Graph {
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.retain(|&(i, j)| i != j);
        pairs.sort_unstable();
        let mut unique = Vec::new();
        let mut mult = Vec::new();
        for &p in &pairs {
            if unique.last() == Some(&p) {
                *mult.last_mut().unwrap() += 1;
            } else {
                unique.push(p);
                mult.push(1u32);
            }
        }
        Self::from_sorted_unique_pairs(n, &unique, Some(&mult))
    }

    fn from_sorted_unique_pairs(n: usize, pairs: &[(u32, u32)], mult: Option<&[u32]>) -> Graph {
        let mut deg = vec![0usize; n];
        for &(i, j) in pairs {
            deg[i as usize] += 1;
            deg[j as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for d in &deg {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0u32; acc];
        let mut multiplicity = mult.map(|_| vec![0u32; acc]);
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let (i, j) = (i as usize, j as usize);
            neighbors[cursor[i]] = j as u32;
            neighbors[cursor[j]] = i as u32;
            if let (Some(m), Some(src)) = (multiplicity.as_mut(), mult) {
                m[cursor[i]] = src[k];
                m[cursor[j]] = src[k];
            }
            cursor[i] += 1;
            cursor[j] += 1;
        }
        // Pairs were sorted by (i, j), so each i-list is already sorted; the
        // j-side lists are filled in increasing i order and are sorted too.
        Graph {
            n,
            offsets,
            neighbors,
            multiplicity,
            weights: None,
        }
    }

    pub fn with_weights(mut self, weights: WeightVector) -> Graph {
        self.weights = Some(weights);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of simple edges.
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn has_edge(&self, i: u32, j: u32) -> bool {
        self.neighbors(i).binary_search(&j).is_ok()
    }

    pub fn has_multiplicities(&self) -> bool {
        self.multiplicity.is_some()
    }

    /// Parallel-edge count of {i,j}; 1 per adjacency entry in a simple graph.
    pub fn multiplicity(&self, i: u32, j: u32) -> u32 {
        match self.neighbors(i).binary_search(&j) {
            Err(_) => 0,
            Ok(pos) => self
                .multiplicity
                .as_ref()
                .map_or(1, |m| m[self.offsets[i as usize] + pos]),
        }
    }

    /// Simple-graph degrees.
    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n as u32).map(|v| self.degree(v)).collect()
    }

    /// Multigraph degrees (counting parallel edges); equals `degrees` for a
    /// simple graph.
    pub fn multi_degrees(&self) -> Vec<usize> {
        match &self.multiplicity {
            None => self.degrees(),
            Some(m) => (0..self.n)
                .map(|v| {
                    m[self.offsets[v]..self.offsets[v + 1]]
                        .iter()
                        .map(|&c| c as usize)
                        .sum()
                })
                .collect(),
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n as u32)
            .flat_map(move |i| self.neighbors(i).iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| i < j)
    }

    /// Merge parallel edges into single edges.
    pub fn collapse(&self) -> Graph {
        Graph {
            n: self.n,
            offsets: self.offsets.clone(),
            neighbors: self.neighbors.clone(),
            multiplicity: None,
            weights: self.weights.clone(),
        }
    }

    /// Plain edge list: header "n m", then one "i j" line per edge, 1-based, i<j.
    pub fn write_edgelist(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        let write = |out: &mut BufWriter<File>, s: String| {
            out.write_all(s.as_bytes()).map_err(|e| Error::io(path, e))
        };
        write(&mut out, format!("{} {}\n", self.n, self.edge_count()))?;
        for (i, j) in self.edges() {
            write(&mut out, format!("{} {}\n", i + 1, j + 1))?;
        }
        out.flush().map_err(|e| Error::io(path, e))
    }

    /// DIMACS clique format: "p edge n m" header, "e i j" lines, 1-based.
    pub fn write_dimacs(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        let write = |out: &mut BufWriter<File>, s: String| {
            out.write_all(s.as_bytes()).map_err(|e| Error::io(path, e))
        };
        write(&mut out, format!("p edge {} {}\n", self.n, self.edge_count()))?;
        for (i, j) in self.edges() {
            write(&mut out, format!("e {} {}\n", i + 1, j + 1))?;
        }
        out.flush().map_err(|e| Error::io(path, e))
    }

    /// Read either format; DIMACS is recognized by its "p edge" header.
    pub fn read(path: &Path) -> Result<Graph> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let reader = BufReader::new(file);
        let mut n: Option<usize> = None;
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let parse_err = |lineno: usize, msg: String| Error::Parse {
            path: path.into(),
            message: format!("line {}: {msg}", lineno + 1),
        };
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["p", "edge", ns, _m] => {
                    n = Some(
                        ns.parse()
                            .map_err(|_| parse_err(lineno, format!("bad vertex count {ns:?}")))?,
                    );
                }
                ["e", is, js] | [is, js] if n.is_some() || fields[0] != "e" => {
                    if n.is_none() {
                        // First line of a plain edge list is the "n m" header.
                        n = Some(
                            is.parse()
                                .map_err(|_| parse_err(lineno, format!("bad header {line:?}")))?,
                        );
                        continue;
                    }
                    let i: usize = is
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad vertex id {is:?}")))?;
                    let j: usize = js
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad vertex id {js:?}")))?;
                    if i == 0 || j == 0 {
                        return Err(parse_err(lineno, "vertex ids are 1-based".into()));
                    }
                    edges.push((i as u32 - 1, j as u32 - 1));
                }
                _ => return Err(parse_err(lineno, format!("unrecognized line {line:?}"))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse {
            path: path.into(),
            message: "missing header".into(),
        })?;
        Graph::from_edges(n, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn basic_adjacency() {
        let g = triangle();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 2) && g.has_edge(2, 0));
        assert_eq!(g.degrees(), vec![2, 2, 2]);
    }

    #[test]
    fn star_degrees() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(g.degrees(), vec![3, 1, 1, 1]);
    }

    #[test]
    fn empty_graph_degrees() {
        let g = Graph::from_edges(5, &[]).unwrap();
        assert_eq!(g.degrees(), vec![0; 5]);
    }

    #[test]
    fn self_loop_rejected() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
    }

    #[test]
    fn multigraph_counts_and_collapse() {
        let g = Graph::from_multi_edges(3, vec![(0, 1), (1, 0), (0, 1), (2, 2)]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.multiplicity(0, 1), 3);
        assert_eq!(g.multiplicity(0, 2), 0);
        assert_eq!(g.multi_degrees(), vec![3, 3, 0]);
        let s = g.collapse();
        assert!(!s.has_multiplicities());
        assert_eq!(s.multiplicity(0, 1), 1);
        // Collapse is idempotent on simple graphs.
        assert_eq!(s.collapse(), s);
    }

    #[test]
    fn io_roundtrip_both_formats() {
        let dir = tempfile::tempdir().unwrap();
        let g = Graph::from_edges(4, &[(0, 2), (1, 3), (2, 3)]).unwrap();
        let el = dir.path().join("g.edges");
        let dm = dir.path().join("g.col");
        g.write_edgelist(&el).unwrap();
        g.write_dimacs(&dm).unwrap();
        for path in [el, dm] {
            let back = Graph::read(&path).unwrap();
            assert_eq!(back.n(), 4);
            assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        }
    }

    proptest! {
        #[test]
        fn symmetry_and_sortedness(
            n in 1usize..30,
            raw in proptest::collection::vec((0u32..30, 0u32..30), 0..120),
        ) {
            let edges: Vec<(u32, u32)> = raw
                .into_iter()
                .filter(|&(i, j)| i != j && (i as usize) < n && (j as usize) < n)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            for v in 0..n as u32 {
                let nb = g.neighbors(v);
                for w in nb.windows(2) {
                    prop_assert!(w[0] < w[1]);
                }
                for &u in nb {
                    prop_assert!(u != v);
                    prop_assert!(g.has_edge(u, v));
                }
            }
        }
    }
}
