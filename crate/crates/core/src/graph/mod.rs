//! Simple undirected graphs, block partitions and the combinatorial side of
//! the multicover / cover / pseudocover definitions.

mod export;
mod iso;

pub use export::ExportFormat;
pub use iso::{are_isomorphic, are_isomorphic_capped, find_isomorphism, ISO_VERTEX_CAP};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Loops and out-of-range endpoints are
    /// rejected; repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Domain(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::Domain(format!("loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
            nb.dedup();
        }
        Ok(Graph {
            adjacency,
            labels: None,
        })
    }

    /// Builds from neighbor lists, checking symmetry and irreflexivity.
    pub fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Result<Self> {
        let n = adjacency.len();
        for (u, nb) in adjacency.iter_mut().enumerate() {
            nb.sort_unstable();
            nb.dedup();
            if nb.iter().any(|&v| v >= n || v == u) {
                return Err(Error::Domain(format!("bad neighbor list at vertex {u}")));
            }
        }
        for u in 0..n {
            for &v in &adjacency[u] {
                if adjacency[v].binary_search(&u).is_err() {
                    return Err(Error::Domain(format!("adjacency not symmetric at ({u},{v})")));
                }
            }
        }
        Ok(Graph {
            adjacency,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::Domain("one label per vertex required".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in increasing order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adjacency.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Common degree, if every vertex has the same degree.
    pub fn is_regular(&self) -> Option<usize> {
        let d = self.adjacency.first().map(Vec::len)?;
        self.adjacency.iter().all(|nb| nb.len() == d).then_some(d)
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for &v in &self.adjacency[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.vertex_count();
        if perm.len() != n {
            return Err(Error::Domain("relabeling has wrong length".into()));
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn export(&self, format: ExportFormat) -> String {
        export::render(self, format)
    }
}

/// Partition of the vertex set into equal-size cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut block_of = vec![usize::MAX; n];
        let size = blocks.first().map(Vec::len).unwrap_or(0);
        if size == 0 {
            return Err(Error::Domain("partition needs nonempty blocks".into()));
        }
        for (b, cell) in blocks.iter_mut().enumerate() {
            if cell.len() != size {
                return Err(Error::Domain("blocks must have equal size".into()));
            }
            cell.sort_unstable();
            for &v in cell.iter() {
                if v >= n || block_of[v] != usize::MAX {
                    return Err(Error::Domain(format!("vertex {v} is out of range or repeated")));
                }
                block_of[v] = b;
            }
        }
        Ok(BlockPartition { blocks, block_of })
    }

    /// Builds from a vertex → block map with blocks numbered `0..k`.
    pub fn from_map(block_of: Vec<usize>) -> Result<Self> {
        let k = block_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (v, &b) in block_of.iter().enumerate() {
            blocks[b].push(v);
        }
        BlockPartition::new(blocks)
    }

    pub fn singletons(n: usize) -> Self {
        BlockPartition::from_map((0..n).collect()).expect("valid")
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn vertex_count(&self) -> usize {
        self.block_of.len()
    }
}

/// One vertex per block; blocks adjacent iff some edge crosses between them.
pub fn quotient_graph(g: &Graph, b: &BlockPartition) -> Result<Graph> {
    if b.vertex_count() != g.vertex_count() {
        return Err(Error::Domain("partition does not cover the graph's vertices".into()));
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| (b.block_of(u), b.block_of(v)))
        .filter(|(x, y)| x != y)
        .collect();
    Graph::from_edges(b.block_count(), &edges)
}

/// The cross edges between two disjoint vertex sets, as a graph on
/// `block_a ++ block_b` (vertex `i` is the `i`-th entry). Intra-block edges
/// are dropped with a warning.
pub fn induced_bipartite(g: &Graph, block_a: &[usize], block_b: &[usize]) -> Result<Graph> {
    let in_a: std::collections::HashMap<usize, usize> =
        block_a.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let in_b: std::collections::HashMap<usize, usize> = block_b
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, block_a.len() + i))
        .collect();
    if block_a.iter().any(|v| in_b.contains_key(v)) {
        return Err(Error::Domain("blocks overlap".into()));
    }
    let mut edges = Vec::new();
    let mut intra = 0usize;
    for &u in block_a {
        for &v in g.neighbors(u) {
            if let Some(&j) = in_b.get(&v) {
                edges.push((in_a[&u], j));
            } else if in_a.contains_key(&v) {
                intra += 1;
            }
        }
    }
    for &u in block_b {
        if g.neighbors(u).iter().any(|v| in_b.contains_key(v)) {
            intra += 1;
        }
    }
    if intra > 0 {
        log::warn!("induced_bipartite: ignoring intra-block edges ({intra} incidences)");
    }
    Graph::from_edges(block_a.len() + block_b.len(), &edges)
}

/// Every vertex of `block_a ∪ block_b` has exactly one neighbor across.
pub fn is_perfect_matching_between(g: &Graph, block_a: &[usize], block_b: &[usize]) -> Result<bool> {
    Ok(induced_bipartite(g, block_a, block_b)?.is_regular() == Some(1))
}

/// `g[K̄_m]`: vertex `(i, v)` is numbered `v·m + i`; `(i,v) ~ (i',v')` iff
/// `v ~ v'`. Returns the fibers `{(·, v)}` as blocks.
pub fn lexicographic_blowup(g: &Graph, m: usize) -> Result<(Graph, BlockPartition)> {
    if m == 0 {
        return Err(Error::Domain("blow-up factor must be positive".into()));
    }
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(g.edge_count() * m * m);
    for (u, v) in g.edges() {
        for i in 0..m {
            for j in 0..m {
                edges.push((u * m + i, v * m + j));
            }
        }
    }
    let labels = (0..n * m)
        .map(|x| format!("({},{})", x % m, g.label(x / m)))
        .collect();
    let graph = Graph::from_edges(n * m, &edges)?.with_labels(labels)?;
    let blocks = (0..n).map(|v| (v * m..(v + 1) * m).collect()).collect();
    Ok((graph, BlockPartition::new(blocks)?))
}

/// Shape of the subgraph induced between two adjacent blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InducedType {
    PerfectMatching,
    RegularNonMatching,
    Irregular,
}

impl InducedType {
    pub fn of(bipartite: &Graph) -> InducedType {
        match bipartite.is_regular() {
            Some(1) => InducedType::PerfectMatching,
            Some(_) => InducedType::RegularNonMatching,
            None => InducedType::Irregular,
        }
    }

    pub fn is_regular(self) -> bool {
        self != InducedType::Irregular
    }
}

/// Definition-level verdict for a graph and a block system, read off the
/// blocks of one arc. Valid for symmetric graphs, where every arc gives
/// the same answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVerdict {
    pub val_gamma: usize,
    pub val_sigma: usize,
    pub induced_type: InducedType,
    pub is_multicover: bool,
    pub is_cover: bool,
    pub is_pseudocover: bool,
    pub gamma_connected: bool,
}

/// Classifies `g` against its quotient by `b`, using the arc `(u, v)`.
pub fn classify_partition(g: &Graph, b: &BlockPartition, arc: (usize, usize)) -> Result<GraphVerdict> {
    let (u, v) = arc;
    if !g.has_edge(u, v) {
        return Err(Error::Domain(format!("({u},{v}) is not an arc")));
    }
    let (bu, bv) = (b.block_of(u), b.block_of(v));
    if bu == bv {
        return Err(Error::Domain("arc lies inside a block".into()));
    }
    let val_gamma = g
        .is_regular()
        .ok_or_else(|| Error::Domain("graph is not regular".into()))?;
    let quotient = quotient_graph(g, b)?;
    let val_sigma = quotient
        .is_regular()
        .ok_or_else(|| Error::Domain("quotient is not regular".into()))?;
    let bip = induced_bipartite(g, &b.blocks()[bu], &b.blocks()[bv])?;
    let induced_type = InducedType::of(&bip);
    let is_cover = induced_type == InducedType::PerfectMatching;
    Ok(GraphVerdict {
        val_gamma,
        val_sigma,
        induced_type,
        is_multicover: induced_type.is_regular(),
        is_cover,
        is_pseudocover: val_gamma == val_sigma && !is_cover,
        gamma_connected: g.is_connected(),
    })
}

pub fn cycle_graph(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("n ≥ 3")
}

pub fn complete_graph(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Graph::from_edges(n, &edges).expect("valid")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a)
        .flat_map(|i| (0..b).map(move |j| (i, a + j)))
        .collect();
    Graph::from_edges(a + b, &edges).expect("valid")
}

/// The 3-cube on `{0..8}`, adjacency by one-bit difference.
pub fn cube_graph() -> Graph {
    let edges: Vec<_> = (0..8usize)
        .flat_map(|i| (0..3).map(move |b| (i, i ^ (1 << b))))
        .filter(|(i, j)| i < j)
        .collect();
    Graph::from_edges(8, &edges).expect("valid")
}
