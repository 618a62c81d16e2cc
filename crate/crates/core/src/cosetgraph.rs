//! Coset graphs `Cos(G, H, HgH)`.
//!
//! Vertex 0 is the coset `H` and vertex 1 is `Hg`, so `(0, 1)` is the
//! distinguished arc every stabilizer computation anchors to.

use std::collections::HashSet;

use crate::cosets::CosetSpace;
use crate::error::{ensure_consistent, Error, Result};
use crate::graph::Graph;
use crate::group::{core, GroupActionImage, PermutationGroup};
use crate::perm::Permutation;

/// Graphs at or below this many vertices get the pairwise double-coset
/// adjacency cross-check at construction.
pub const PAIRWISE_CHECK_LIMIT: usize = 200;

#[derive(Clone, Debug)]
pub struct CosetGraph {
    group: PermutationGroup,
    stabilizer: PermutationGroup,
    flip: Permutation,
    graph: Graph,
    space: CosetSpace,
    /// Neighbors of vertex 0 in BFS order from vertex 1, each with an
    /// `h ∈ H` such that the neighbor is the coset `H·g·h`.
    local: Vec<(usize, Permutation)>,
}

/// `H` acting on the neighborhood of vertex 0.
#[derive(Clone, Debug)]
pub struct LocalAction {
    pub image: GroupActionImage,
    /// Neighbor vertices; point `i` of the image is `neighbors[i]`.
    pub neighbors: Vec<usize>,
    /// `coset_elements[i] = h` with `neighbors[i] = H·g·h`, i.e. the point
    /// corresponds to the coset `(H ∩ H^g)·h` of `H`.
    pub coset_elements: Vec<Permutation>,
}

pub fn build_coset_graph(group: &PermutationGroup, stabilizer: &PermutationGroup, flip: &Permutation) -> Result<CosetGraph> {
    CosetGraph::new(group, stabilizer, flip)
}

impl CosetGraph {
    pub fn new(group: &PermutationGroup, stabilizer: &PermutationGroup, flip: &Permutation) -> Result<Self> {
        if !stabilizer.is_subgroup_of(group) {
            return Err(Error::precondition("H is not a subgroup of G"));
        }
        if !group.contains(flip)? {
            return Err(Error::precondition(format!("flip {flip} is not in G")));
        }
        if stabilizer.has(flip) {
            return Err(Error::precondition(format!(
                "degenerate loop: flip {flip} lies in H"
            )));
        }
        if !stabilizer.has(&flip.compose(flip)) {
            return Err(Error::precondition(format!("flip {flip} does not square into H")));
        }
        let space = CosetSpace::new(group, stabilizer, std::slice::from_ref(flip))?;
        debug_assert_eq!(space.index_of(flip), Some(1));

        // Neighbors of H: the orbit of Hg under right multiplication by H.
        let mut local: Vec<(usize, Permutation)> = vec![(1, Permutation::identity(group.degree()))];
        let mut seen = vec![false; space.len()];
        seen[1] = true;
        let mut head = 0;
        while head < local.len() {
            let (u, h) = local[head].clone();
            head += 1;
            for s in stabilizer.generators() {
                let w = space.act(u, s);
                if !seen[w] {
                    seen[w] = true;
                    local.push((w, h.compose(s)));
                }
            }
        }
        let base: Vec<Permutation> = local.iter().map(|(u, _)| space.rep(*u).clone()).collect();
        let adjacency: Vec<Vec<usize>> = (0..space.len())
            .map(|v| {
                let x = space.rep(v);
                base.iter()
                    .map(|d| space.index_of(&d.compose(x)).expect("closed"))
                    .collect()
            })
            .collect();
        let graph = Graph::from_adjacency(adjacency)
            .map_err(|e| Error::consistency(format!("coset graph adjacency: {e}")))?;

        let cg = CosetGraph {
            group: group.clone(),
            stabilizer: stabilizer.clone(),
            flip: flip.clone(),
            graph,
            space,
            local,
        };
        if cg.graph.vertex_count() <= PAIRWISE_CHECK_LIMIT {
            cg.pairwise_check()?;
        }
        Ok(cg)
    }

    /// Rebuilds adjacency by testing `y·x⁻¹ ∈ HgH` for every pair of
    /// representatives and compares with the neighbor expansion.
    fn pairwise_check(&self) -> Result<()> {
        let h = self.space.subgroup_elements();
        let mut double: HashSet<Permutation> = HashSet::new();
        for a in h {
            let ag = a.compose(&self.flip);
            for b in h {
                double.insert(ag.compose(b));
            }
        }
        let reps = self.space.representatives();
        for (u, x) in reps.iter().enumerate() {
            let xinv = x.inverse();
            for (v, y) in reps.iter().enumerate() {
                let adj = double.contains(&y.compose(&xinv));
                ensure_consistent!(
                    adj == self.graph.has_edge(u, v),
                    "pairwise double-coset test disagrees with neighbor expansion at ({u},{v})"
                );
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn stabilizer(&self) -> &PermutationGroup {
        &self.stabilizer
    }

    pub fn flip(&self) -> &Permutation {
        &self.flip
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn space(&self) -> &CosetSpace {
        &self.space
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn coset_reps(&self) -> &[Permutation] {
        self.space.representatives()
    }

    /// `H ∩ H^g`, the stabilizer of the arc `(0, 1)`.
    pub fn arc_stabilizer(&self) -> Result<PermutationGroup> {
        self.stabilizer.intersect(&self.stabilizer.conjugate(&self.flip)?)
    }

    /// `|H : H ∩ H^g|`, checked against the degree of vertex 0.
    pub fn valency(&self) -> Result<usize> {
        let group_side = (self.stabilizer.order() / self.arc_stabilizer()?.order()) as usize;
        ensure_consistent!(
            group_side == self.graph.degree(0),
            "|H:H∩H^g| = {group_side} but vertex 0 has degree {}",
            self.graph.degree(0)
        );
        Ok(group_side)
    }

    /// `⟨H, g⟩ = G`, checked against the component count.
    pub fn is_connected(&self) -> Result<bool> {
        let generated = self.stabilizer.with_generators(std::slice::from_ref(&self.flip))?;
        let group_side = generated.order() == self.group.order();
        let graph_side = self.graph.is_connected();
        ensure_consistent!(
            group_side == graph_side,
            "⟨H,g⟩ = G is {group_side} but graph connectivity is {graph_side}"
        );
        Ok(group_side)
    }

    /// `G` acts faithfully on the vertices iff `H` is core-free.
    pub fn is_faithful(&self) -> Result<bool> {
        Ok(core(&self.group, &self.stabilizer)?.order() == 1)
    }

    pub fn local_action(&self) -> Result<LocalAction> {
        let neighbors: Vec<usize> = self.local.iter().map(|(u, _)| *u).collect();
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (i, &u) in neighbors.iter().enumerate() {
            pos[u] = i;
        }
        let images = self
            .stabilizer
            .generators()
            .iter()
            .map(|s| {
                let img: Vec<usize> = neighbors.iter().map(|&u| pos[self.space.act(u, s)]).collect();
                Permutation::from_images(img)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LocalAction {
            image: GroupActionImage::new(self.stabilizer.clone(), neighbors.len(), images)?,
            neighbors,
            coset_elements: self.local.iter().map(|(_, h)| h.clone()).collect(),
        })
    }

    pub fn is_locally_primitive(&self) -> Result<bool> {
        self.local_action()?.image.image_group().is_primitive()
    }

    /// `G` transitive on vertices and `H` transitive on the neighbors of 0.
    /// Always true for a well-formed coset graph.
    pub fn verify_arc_transitive(&self) -> Result<bool> {
        let gens: Vec<Permutation> = (0..self.group.generators().len())
            .map(|j| self.space.generator_action(j))
            .collect();
        let action = PermutationGroup::new(self.vertex_count(), gens)?;
        if !action.is_transitive() {
            return Ok(false);
        }
        let mut orbit = self.space.orbit(1, self.stabilizer.generators());
        orbit.sort_unstable();
        Ok(orbit == self.graph.neighbors(0))
    }

    /// Permutation of vertices induced by `w ∈ G`.
    pub fn vertex_action(&self, w: &Permutation) -> Permutation {
        self.space.action_of(w)
    }

    /// The stabilizer `G_v = H^{rep(v)}` of vertex `v`.
    pub fn vertex_stabilizer(&self, v: usize) -> Result<PermutationGroup> {
        self.stabilizer.conjugate(self.space.rep(v))
    }
}

/// Elements of `h` whose image under `action` is trivial.
pub fn action_kernel(h: &PermutationGroup, action: &GroupActionImage) -> Result<PermutationGroup> {
    if action.source.generators() != h.generators() {
        return Err(Error::Domain("action is not defined on the given group's generators".into()));
    }
    action.kernel()
}
