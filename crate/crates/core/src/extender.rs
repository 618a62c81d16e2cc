//! Nested coset graphs `Γ = Cos(G, L, LgL)` over `Σ = Cos(G, H, HgH)` with
//! `L < H`, and their multicover / cover / pseudocover classification.
//!
//! Notation for the distinguished arc `α = L`, `β = Lg` of `Γ` and its image
//! `ᾱ = H`, `β̄ = Hg` in `Σ`:
//!
//! * `G_αβ̄ = L ∩ H^g`
//! * `G_ᾱβ = H ∩ L^g`
//! * `G_αβ = L ∩ L^g`
//! * `G_ᾱβ̄ = H ∩ H^g`

use serde::{Deserialize, Serialize};

use crate::cosetgraph::CosetGraph;
use crate::error::{ensure_consistent, Error, Result};
use crate::graph::{
    classify_partition, induced_bipartite, lexicographic_blowup, quotient_graph, BlockPartition, Graph,
    GraphVerdict, InducedType,
};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct ExtenderPair {
    group: PermutationGroup,
    inner: PermutationGroup,
    outer: PermutationGroup,
    flip: Permutation,
    gamma: CosetGraph,
    sigma: CosetGraph,
    block_map: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerOrders {
    pub g_alpha_betabar: u64,
    pub g_alphabar_beta: u64,
    pub g_alpha_beta: u64,
    pub g_alphabar_betabar: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub val_gamma: usize,
    pub val_sigma: usize,
    pub induced_type: InducedType,
    pub is_multicover: bool,
    pub is_cover: bool,
    pub is_pseudocover: bool,
    pub criterion_b: bool,
    pub criterion_c: bool,
    pub criterion_d: bool,
    pub stabilizer_orders: StabilizerOrders,
}

pub fn build_pair(
    group: &PermutationGroup,
    inner: &PermutationGroup,
    outer: &PermutationGroup,
    flip: &Permutation,
) -> Result<ExtenderPair> {
    ExtenderPair::new(group, inner, outer, flip)
}

impl ExtenderPair {
    pub fn new(
        group: &PermutationGroup,
        inner: &PermutationGroup,
        outer: &PermutationGroup,
        flip: &Permutation,
    ) -> Result<Self> {
        if !inner.is_subgroup_of(outer) {
            return Err(Error::precondition("L is not contained in H"));
        }
        if inner.order() == outer.order() {
            return Err(Error::precondition("L = H; the extender must be proper"));
        }
        if !inner.contains(&flip.compose(flip))? {
            return Err(Error::precondition(format!("g² ∉ L for g = {flip}")));
        }
        let sigma = CosetGraph::new(group, outer, flip)?;
        let gamma = CosetGraph::new(group, inner, flip)?;
        Self::from_graphs(gamma, sigma)
    }

    /// Pairs two prebuilt coset graphs over the same group and flip.
    pub fn from_graphs(gamma: CosetGraph, sigma: CosetGraph) -> Result<Self> {
        if !gamma.group().same_as(sigma.group()) {
            return Err(Error::precondition("Γ and Σ are built over different groups"));
        }
        if gamma.flip() != sigma.flip() {
            return Err(Error::precondition(format!(
                "Γ and Σ use different flips ({} vs {})",
                gamma.flip(),
                sigma.flip()
            )));
        }
        let (inner, outer) = (gamma.stabilizer().clone(), sigma.stabilizer().clone());
        if !inner.is_subgroup_of(&outer) || inner.order() == outer.order() {
            return Err(Error::precondition("Γ's stabilizer is not a proper subgroup of Σ's"));
        }
        let block_map: Vec<usize> = gamma
            .coset_reps()
            .iter()
            .map(|x| sigma.space().index_of(x).expect("H-cosets cover G"))
            .collect();
        let pair = ExtenderPair {
            group: gamma.group().clone(),
            flip: gamma.flip().clone(),
            inner,
            outer,
            gamma,
            sigma,
            block_map,
        };
        pair.check_blocks()?;
        Ok(pair)
    }

    fn check_blocks(&self) -> Result<()> {
        let fiber = (self.outer.order() / self.inner.order()) as usize;
        let mut sizes = vec![0usize; self.sigma.vertex_count()];
        for &b in &self.block_map {
            sizes[b] += 1;
        }
        ensure_consistent!(
            sizes.iter().all(|&s| s == fiber),
            "block map fibers are not all of size |H:L| = {fiber}"
        );
        ensure_consistent!(
            self.block_map[0] == 0 && self.block_map[1] == 1,
            "block map does not send the arc (0,1) to (0,1)"
        );
        let q = quotient_graph(self.gamma.graph(), &self.partition())?;
        ensure_consistent!(
            q.edges() == self.sigma.graph().edges(),
            "quotient of Γ by the blocks differs from Σ"
        );
        Ok(())
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn inner(&self) -> &PermutationGroup {
        &self.inner
    }

    pub fn outer(&self) -> &PermutationGroup {
        &self.outer
    }

    pub fn flip(&self) -> &Permutation {
        &self.flip
    }

    pub fn gamma(&self) -> &CosetGraph {
        &self.gamma
    }

    pub fn sigma(&self) -> &CosetGraph {
        &self.sigma
    }

    /// `block_map[v]` is the `Σ` vertex `Hx` of the `Γ` vertex `v = Lx`.
    pub fn block_map(&self) -> &[usize] {
        &self.block_map
    }

    pub fn partition(&self) -> BlockPartition {
        BlockPartition::from_map(self.block_map.clone()).expect("surjective")
    }

    pub fn stabilizer_orders(&self) -> Result<StabilizerOrders> {
        let s = self.stabilizers()?;
        Ok(StabilizerOrders {
            g_alpha_betabar: s[0].order(),
            g_alphabar_beta: s[1].order(),
            g_alpha_beta: s[2].order(),
            g_alphabar_betabar: s[3].order(),
        })
    }

    /// `[G_αβ̄, G_ᾱβ, G_αβ, G_ᾱβ̄]` for the arc `(0, 1)`.
    fn stabilizers(&self) -> Result<[PermutationGroup; 4]> {
        let hg = self.outer.conjugate(&self.flip)?;
        let lg = self.inner.conjugate(&self.flip)?;
        Ok([
            self.inner.intersect(&hg)?,
            self.outer.intersect(&lg)?,
            self.inner.intersect(&lg)?,
            self.outer.intersect(&hg)?,
        ])
    }

    /// Definition-level verdict read off the blocks of the arc `(0, 1)`.
    pub fn graph_verdict(&self) -> Result<GraphVerdict> {
        classify_partition(self.gamma.graph(), &self.partition(), (0, 1))
    }

    /// Size of the `L`-orbit of `β̄` inside `Σ(ᾱ)`.
    fn inner_orbit_on_sigma_neighbors(&self) -> usize {
        self.sigma.space().orbit(1, self.inner.generators()).len()
    }

    pub fn classify(&self) -> Result<ClassificationReport> {
        let verdict = self.graph_verdict()?;
        let val_gamma = self.gamma.valency()?;
        let val_sigma = self.sigma.valency()?;
        ensure_consistent!(
            verdict.val_gamma == val_gamma && verdict.val_sigma == val_sigma,
            "graph-side valencies disagree with |L:L∩L^g| and |H:H∩H^g|"
        );

        let [g_a_bb, g_ab_b, g_a_b, g_ab_bb] = self.stabilizers()?;
        let orbit = self.inner_orbit_on_sigma_neighbors();
        ensure_consistent!(
            orbit as u64 == self.inner.order() / g_a_bb.order(),
            "orbit of β̄ under L has size {orbit}, not |L:L∩H^g|"
        );
        let criterion_b = orbit < val_sigma;
        // |L·(H∩H^g)| = |L|·|H∩H^g| / |L∩H^g|
        let product = self.inner.order() * g_ab_bb.order() / g_a_bb.order();
        let criterion_c = product != self.outer.order();
        ensure_consistent!(criterion_b == criterion_c, "Frattini equivalence of (b) and (c) fails");

        let all_equal = g_a_bb.same_as(&g_ab_b) && g_ab_b.same_as(&g_a_b);
        let pairwise_distinct =
            !g_a_bb.same_as(&g_ab_b) && !g_ab_b.same_as(&g_a_b) && !g_a_bb.same_as(&g_a_b);
        ensure_consistent!(
            all_equal || pairwise_distinct,
            "stabilizers G_αβ̄, G_ᾱβ, G_αβ are neither all equal nor pairwise distinct"
        );
        let criterion_d = pairwise_distinct;

        let report = ClassificationReport {
            val_gamma,
            val_sigma,
            induced_type: verdict.induced_type,
            is_multicover: verdict.is_multicover,
            is_cover: verdict.is_cover,
            is_pseudocover: verdict.is_pseudocover,
            criterion_b,
            criterion_c,
            criterion_d,
            stabilizer_orders: StabilizerOrders {
                g_alpha_betabar: g_a_bb.order(),
                g_alphabar_beta: g_ab_b.order(),
                g_alpha_beta: g_a_b.order(),
                g_alphabar_betabar: g_ab_bb.order(),
            },
        };
        ensure_consistent!(
            report.is_multicover == !criterion_b,
            "multicover verdict disagrees with transitivity of L on Σ(ᾱ)"
        );
        if report.is_cover {
            ensure_consistent!(
                val_gamma == val_sigma && report.induced_type == InducedType::PerfectMatching,
                "cover with unequal valencies"
            );
        }
        if val_gamma == val_sigma {
            ensure_consistent!(
                criterion_b == report.is_pseudocover
                    && criterion_c == report.is_pseudocover
                    && criterion_d == report.is_pseudocover,
                "criteria (b,c,d) = ({criterion_b},{criterion_c},{criterion_d}) but pseudocover = {}",
                report.is_pseudocover
            );
            ensure_consistent!(
                report.is_cover == g_a_bb.same_as(&g_a_b),
                "cover verdict disagrees with L∩H^g = L∩L^g"
            );
        }
        Ok(report)
    }

    /// The three multicover conditions: regular induced subgraph, `α`
    /// adjacent to every block of `Σ(ᾱ)`, `L` transitive on `Σ(ᾱ)`.
    pub fn check_multicover(&self) -> Result<bool> {
        let partition = self.partition();
        let bip = induced_bipartite(self.gamma.graph(), &partition.blocks()[0], &partition.blocks()[1])?;
        let a = bip.is_regular().is_some();
        let mut reached: Vec<usize> = self
            .gamma
            .graph()
            .neighbors(0)
            .iter()
            .map(|&v| self.block_map[v])
            .collect();
        reached.sort_unstable();
        reached.dedup();
        let b = reached == self.sigma.graph().neighbors(0);
        let c = self.inner_orbit_on_sigma_neighbors() == self.sigma.graph().degree(0);
        ensure_consistent!(a == b && b == c, "multicover conditions disagree: ({a},{b},{c})");
        Ok(a)
    }

    /// Criterion (d) evaluated at the arc `(u, v)` of `Γ` instead of `(0, 1)`.
    pub fn criterion_d_at_arc(&self, u: usize, v: usize) -> Result<bool> {
        if !self.gamma.graph().has_edge(u, v) {
            return Err(Error::Domain(format!("({u},{v}) is not an arc of Γ")));
        }
        let (x, y) = (self.gamma.space().rep(u), self.gamma.space().rep(v));
        let (lu, lv) = (self.inner.conjugate(x)?, self.inner.conjugate(y)?);
        let (hu, hv) = (self.outer.conjugate(x)?, self.outer.conjugate(y)?);
        let a = lu.intersect(&hv)?;
        let b = hu.intersect(&lv)?;
        let c = lu.intersect(&lv)?;
        Ok(!a.same_as(&b) && !b.same_as(&c) && !a.same_as(&c))
    }
}

pub fn classify(pair: &ExtenderPair) -> Result<ClassificationReport> {
    pair.classify()
}

pub fn check_multicover(pair: &ExtenderPair) -> Result<bool> {
    pair.check_multicover()
}

/// The quotient of `cg` by the orbits of a normal subgroup `N`:
/// `H = ⟨L, N⟩`.
pub fn normal_quotient(cg: &CosetGraph, n: &PermutationGroup) -> Result<(ExtenderPair, ClassificationReport)> {
    let g = cg.group();
    if !n.is_subgroup_of(g) {
        return Err(Error::precondition("N is not a subgroup of G"));
    }
    for z in n.generators() {
        for x in g.generators() {
            if !n.has(&z.conjugate_by(x)) {
                return Err(Error::precondition("N is not normal in G"));
            }
        }
    }
    let h = cg.stabilizer().with_generators(n.generators())?;
    if h.order() == g.order() {
        return Err(Error::precondition("N is transitive on the vertices"));
    }
    if h.order() == cg.stabilizer().order() {
        return Err(Error::precondition("N lies in the vertex stabilizer; the quotient is trivial"));
    }
    let sigma = CosetGraph::new(g, &h, cg.flip())?;
    let pair = ExtenderPair::from_graphs(cg.clone(), sigma)?;
    let report = pair.classify()?;
    ensure_consistent!(report.is_multicover, "normal quotient is not a multicover");
    Ok((pair, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    /// `steps[i]` classifies `Γ_i` over `Γ_{i+1}`.
    pub steps: Vec<ClassificationReport>,
    pub end_to_end: ClassificationReport,
}

/// Classifies each `Cos(G, H_i, …)` over `Cos(G, H_{i+1}, …)` and `H_1`
/// over `H_n` directly, all with the same flip.
pub fn chain_classify(group: &PermutationGroup, chain: &[PermutationGroup], flip: &Permutation) -> Result<ChainReport> {
    if chain.len() < 2 {
        return Err(Error::precondition("a chain needs at least two subgroups"));
    }
    let graphs = chain
        .iter()
        .map(|h| CosetGraph::new(group, h, flip))
        .collect::<Result<Vec<_>>>()?;
    let val = graphs[0].valency()?;
    for cg in &graphs[1..] {
        if cg.valency()? != val {
            return Err(Error::precondition("coset graphs in the chain differ in valency"));
        }
    }
    let steps = graphs
        .windows(2)
        .map(|w| ExtenderPair::from_graphs(w[0].clone(), w[1].clone())?.classify())
        .collect::<Result<Vec<_>>>()?;
    let end_to_end =
        ExtenderPair::from_graphs(graphs[0].clone(), graphs[graphs.len() - 1].clone())?.classify()?;
    ensure_consistent!(
        end_to_end.is_cover == steps.iter().all(|s| s.is_cover),
        "end-to-end cover verdict disagrees with the steps"
    );
    ensure_consistent!(
        end_to_end.is_pseudocover == steps.iter().any(|s| s.is_pseudocover),
        "end-to-end pseudocover verdict disagrees with the steps"
    );
    Ok(ChainReport { steps, end_to_end })
}

/// `Cos(G, H∩H^g, …)`: a perfect matching with one edge per edge of `Σ`.
pub fn truncation(group: &PermutationGroup, h: &PermutationGroup, flip: &Permutation) -> Result<CosetGraph> {
    let sigma = CosetGraph::new(group, h, flip)?;
    truncation_of(&sigma)
}

pub fn truncation_of(sigma: &CosetGraph) -> Result<CosetGraph> {
    let l = sigma.arc_stabilizer()?;
    let t = CosetGraph::new(sigma.group(), &l, sigma.flip())?;
    ensure_consistent!(t.valency()? == 1, "truncation has valency {}", t.valency()?);
    ensure_consistent!(
        t.vertex_count() as u64 == sigma.group().order() / l.order(),
        "truncation vertex count is not |G:H∩H^g|"
    );
    ensure_consistent!(
        t.graph().edge_count() == sigma.graph().edge_count(),
        "truncation and Σ differ in edge count"
    );
    Ok(t)
}

#[derive(Clone, Debug)]
pub struct DisconnectedPseudocover {
    pub graph: Graph,
    pub blocks: BlockPartition,
    pub verdict: GraphVerdict,
    pub truncation_vertices: usize,
}

/// The lexicographic blow-up of the truncation by `m = val(Σ)`, with blocks
/// `(i, Lx) ↦ Hx`, classified against `Σ` purely from the graph.
pub fn disconnected_pseudocover(
    group: &PermutationGroup,
    h: &PermutationGroup,
    flip: &Permutation,
) -> Result<DisconnectedPseudocover> {
    let sigma = CosetGraph::new(group, h, flip)?;
    let m = sigma.valency()?;
    if m == 1 {
        return Err(Error::precondition("perfect matching has no pseudocover of this form"));
    }
    let trunc = truncation_of(&sigma)?;
    let (delta, _) = lexicographic_blowup(trunc.graph(), m)?;
    let block_of: Vec<usize> = (0..delta.vertex_count())
        .map(|x| sigma.space().index_of(trunc.space().rep(x / m)).expect("covered"))
        .collect();
    let blocks = BlockPartition::from_map(block_of)?;
    ensure_consistent!(
        quotient_graph(&delta, &blocks)?.edges() == sigma.graph().edges(),
        "blow-up does not project onto Σ"
    );
    let verdict = classify_partition(&delta, &blocks, (0, m))?;
    ensure_consistent!(
        verdict.val_gamma == m && verdict.val_sigma == m,
        "blow-up valencies ({}, {}) are not both {m}",
        verdict.val_gamma,
        verdict.val_sigma
    );
    ensure_consistent!(verdict.is_pseudocover && !verdict.gamma_connected, "blow-up is not a disconnected pseudocover");
    Ok(DisconnectedPseudocover {
        graph: delta,
        blocks,
        verdict,
        truncation_vertices: trunc.vertex_count(),
    })
}
