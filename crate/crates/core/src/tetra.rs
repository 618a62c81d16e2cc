//! Connected pseudocovers of tetravalent graphs whose vertex stabilizer is a
//! 2-group.
//!
//! With `Σ = Cos(G, G_ω, G_ω g G_ω)`, `ω = G_ω` (vertex 0) and `ω′ = G_ω g`
//! (vertex 1):
//!
//! * `G_ω^[1]` is the kernel of `G_ω` on `Σ(ω)`,
//! * `G_ω′^[1] = (G_ω^[1])^g`,
//! * `G_ωω′^[1] = G_ω^[1] ∩ G_ω′^[1]`.

use serde::Serialize;

use crate::cosetgraph::CosetGraph;
use crate::error::{ensure_consistent, Error, Result};
use crate::extender::{ClassificationReport, ExtenderPair};
use crate::families::{dihedral_generators, is_prime, psl2};
use crate::graph::are_isomorphic;
use crate::group::{GroupActionImage, PermutationGroup};
use crate::perm::Permutation;
use crate::subgroups::subgroups_containing;

/// The transitive 2-group induced by `G_ω` on the four neighbors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LocalBranch {
    D8,
    Z2Squared,
    Z4,
}

#[derive(Clone, Debug)]
pub struct XyChoice {
    pub x: Permutation,
    pub y: Permutation,
    pub normalized_flip: Permutation,
}

#[derive(Clone, Debug)]
pub struct TetraStabilizerData {
    pub branch: LocalBranch,
    pub vertex_stab: PermutationGroup,
    pub edge_kernel: PermutationGroup,
    pub edge_kernel_prime: PermutationGroup,
    pub arc_stab: PermutationGroup,
    pub deep_kernel: PermutationGroup,
    pub flip: Permutation,
    /// Present when `|G_ω| ≥ 16`.
    pub choice: Option<XyChoice>,
    local: GroupActionImage,
}

fn is_power_of_two(n: u64) -> bool {
    n != 0 && n & (n - 1) == 0
}

pub fn analyze_stabilizer(sigma: &CosetGraph) -> Result<TetraStabilizerData> {
    let val = sigma.valency()?;
    if val != 4 {
        return Err(Error::precondition(format!("valency is {val}, not 4")));
    }
    if !sigma.is_connected()? {
        return Err(Error::precondition("Σ is disconnected"));
    }
    let h = sigma.stabilizer().clone();
    if !is_power_of_two(h.order()) {
        return Err(Error::precondition(format!("|G_ω| = {} is not a power of 2", h.order())));
    }
    let g = sigma.flip().clone();
    let local = sigma.local_action()?.image;
    let image = local.image_group();
    let branch = match image.order() {
        8 => LocalBranch::D8,
        4 if image.generators().iter().any(|p| p.order() == 4) => LocalBranch::Z4,
        4 => LocalBranch::Z2Squared,
        n => return Err(Error::consistency(format!("transitive 2-group of degree 4 with order {n}"))),
    };
    let edge_kernel = local.kernel()?;
    let edge_kernel_prime = edge_kernel.conjugate(&g)?;
    let arc_stab = sigma.arc_stabilizer()?;
    let deep_kernel = edge_kernel.intersect(&edge_kernel_prime)?;
    ensure_consistent!(
        edge_kernel.is_subgroup_of(&arc_stab) && edge_kernel_prime.is_subgroup_of(&arc_stab),
        "edge kernels are not inside the arc stabilizer"
    );
    if branch != LocalBranch::D8 {
        ensure_consistent!(edge_kernel.is_trivial(), "G_ω acts unfaithfully on Σ(ω) with a regular image");
    }
    let mut data = TetraStabilizerData {
        branch,
        vertex_stab: h,
        edge_kernel,
        edge_kernel_prime,
        arc_stab,
        deep_kernel,
        flip: g,
        choice: None,
        local,
    };
    if data.vertex_stab.order() >= 16 {
        ensure_consistent!(branch == LocalBranch::D8, "|G_ω| ≥ 16 but the local action is not D8");
        let k = data.edge_kernel.order();
        ensure_consistent!(data.arc_stab.order() == 2 * k, "|G_ωω′ : G_ω^[1]| ≠ 2");
        ensure_consistent!(k == 2 * data.deep_kernel.order(), "|G_ω^[1] : G_ωω′^[1]| ≠ 2");
        ensure_consistent!(!data.edge_kernel.same_as(&data.edge_kernel_prime), "G_ω^[1] = G_ω′^[1]");
        let (x, y) = find_xy(&data)?;
        let normalized_flip = normalize_flip(&data, &y, sigma)?;
        data.choice = Some(XyChoice { x, y, normalized_flip });
    }
    Ok(data)
}

/// `y`: the first element of `G_ω′^[1] ∖ G_ωω′^[1]`; `x`: the first element
/// of `G_ω` whose image has order 4.
pub fn find_xy(data: &TetraStabilizerData) -> Result<(Permutation, Permutation)> {
    let y = data
        .edge_kernel_prime
        .elements()?
        .iter()
        .find(|e| !data.deep_kernel.has(e))
        .cloned()
        .ok_or_else(|| Error::consistency("G_ω′^[1] = G_ωω′^[1]; no y exists"))?;
    let ybar = data.local.image_of(&y)?;
    let x = data
        .vertex_stab
        .elements()?
        .iter()
        .find(|e| {
            let xbar = data.local.image_of(e).expect("in G_ω");
            xbar.order() == 4
                && PermutationGroup::new(4, vec![xbar, ybar.clone()]).map(|q| q.order()).ok() == Some(8)
        })
        .cloned()
        .ok_or_else(|| Error::consistency("no x with ⟨x̄, ȳ⟩ = D8"))?;

    let g = &data.flip;
    ensure_consistent!(
        data.vertex_stab.has(&x) && !data.arc_stab.has(&x),
        "x ∉ G_ω ∖ G_ωω′"
    );
    ensure_consistent!(
        data.arc_stab.has(&y) && !data.edge_kernel.has(&y),
        "y ∉ G_ωω′ ∖ G_ω^[1]"
    );
    ensure_consistent!(
        data.arc_stab.with_generators(std::slice::from_ref(&x))?.same_as(&data.vertex_stab),
        "G_ω ≠ ⟨G_ωω′, x⟩"
    );
    ensure_consistent!(
        data.edge_kernel.with_generators(&[x.clone(), y.clone()])?.same_as(&data.vertex_stab),
        "G_ω ≠ ⟨G_ω^[1], x, y⟩"
    );
    ensure_consistent!(
        data.deep_kernel.with_generators(&[y.conjugate_by(g)])?.same_as(&data.edge_kernel),
        "G_ω^[1] ≠ ⟨G_ωω′^[1], y^g⟩"
    );
    Ok((x, y))
}

/// `g` if `g² ∈ G_ω^[1]`, otherwise `g·y`.
pub fn normalize_flip(data: &TetraStabilizerData, y: &Permutation, sigma: &CosetGraph) -> Result<Permutation> {
    let g = &data.flip;
    let gt = if data.edge_kernel.has(&g.compose(g)) {
        g.clone()
    } else {
        g.compose(y)
    };
    ensure_consistent!(data.edge_kernel.has(&gt.compose(&gt)), "g̃² ∉ G_ω^[1]");
    // g̃ ∈ G_ω g G_ω, and it still represents the vertex ω′.
    ensure_consistent!(sigma.space().index_of(&gt) == Some(1), "G_ω g̃ ≠ G_ω g");
    Ok(gt)
}

fn choice(data: &TetraStabilizerData) -> Result<&XyChoice> {
    data.choice
        .as_ref()
        .ok_or_else(|| Error::precondition(format!("|G_ω| = {} < 16", data.vertex_stab.order())))
}

#[derive(Clone, Debug)]
pub struct TetraPseudocover {
    pub data: TetraStabilizerData,
    pub pair: ExtenderPair,
    pub report: ClassificationReport,
}

/// `L = ⟨G_ω^[1], xy⟩` and `Γ = Cos(G, L, L g̃ L)`.
pub fn construct_pseudocover(sigma: &CosetGraph) -> Result<TetraPseudocover> {
    let data = analyze_stabilizer(sigma)?;
    let c = choice(&data)?.clone();
    let l = data.edge_kernel.with_generators(&[c.x.compose(&c.y)])?;
    let pair = ExtenderPair::new(sigma.group(), &l, &data.vertex_stab, &c.normalized_flip)?;
    let gamma = pair.gamma();
    ensure_consistent!(
        l.intersect(&l.conjugate(&c.normalized_flip)?)?.same_as(&data.deep_kernel),
        "L ∩ L^g̃ ≠ G_ωω′^[1]"
    );
    ensure_consistent!(gamma.valency()? == 4, "Γ has valency {}", gamma.valency()?);
    ensure_consistent!(gamma.is_connected()?, "Γ is disconnected");
    ensure_consistent!(
        gamma.vertex_count() == 4 * sigma.vertex_count(),
        "|VΓ| = {} is not 4·|VΣ|",
        gamma.vertex_count()
    );
    let report = pair.classify()?;
    ensure_consistent!(report.is_pseudocover, "Γ is not a pseudocover");
    ensure_consistent!(report.criterion_b, "L is transitive on Σ(ω)");
    Ok(TetraPseudocover { data, pair, report })
}

#[derive(Clone, Debug)]
pub struct Variant {
    pub name: &'static str,
    pub subgroup: PermutationGroup,
    pub graph: CosetGraph,
    pub connected: bool,
}

/// `L_1 = ⟨K, x³y⟩`, `L_2 = ⟨K, x²y⟩`, `L_3 = ⟨K, y⟩`, `L_4 = ⟨K, x²⟩` with
/// `K = G_ω^[1]`, each with the flip `g̃`.
pub fn variant_subgroups(sigma: &CosetGraph, data: &TetraStabilizerData) -> Result<Vec<Variant>> {
    let c = choice(data)?;
    let (x, y) = (&c.x, &c.y);
    let specs = [
        ("L1", x.pow(3).compose(y)),
        ("L2", x.pow(2).compose(y)),
        ("L3", y.clone()),
        ("L4", x.pow(2)),
    ];
    let mut out = Vec::new();
    for (name, extra) in specs {
        let l = data.edge_kernel.with_generators(&[extra])?;
        let graph = CosetGraph::new(sigma.group(), &l, &c.normalized_flip)?;
        let connected = graph.is_connected()?;
        out.push(Variant { name, subgroup: l, graph, connected });
    }
    ensure_consistent!(out[2].subgroup.same_as(&data.arc_stab), "L3 ≠ G_ωω′");
    Ok(out)
}

/// Whether `Γ_1` is isomorphic to the constructed pseudocover.
pub fn first_variant_matches(pc: &TetraPseudocover, variants: &[Variant]) -> Result<bool> {
    are_isomorphic(pc.pair.gamma().graph(), variants[0].graph.graph())
}

/// A connected same-valency pseudocover needs `|G_ω| ≥ 16`.
pub fn can_have_connected_pseudocover(sigma: &CosetGraph) -> Result<(bool, String)> {
    let data = analyze_stabilizer(sigma)?;
    let n = data.vertex_stab.order();
    if n < 16 {
        return Ok((
            false,
            format!(
                "stabilizer order {n} < 16: a connected pseudocover would need \
                 G_αα′ < G_αω′ < G_ωω′, so |G_ωω′|/|G_αα′| ≥ 4 and |G_ω| ≥ 4·4 = 16"
            ),
        ));
    }
    Ok((true, format!("stabilizer order {n} ≥ 16 is a 2-group; L = ⟨G_ω^[1], xy⟩ applies")))
}

/// Every `L < G_ω` with `g² ∈ L` whose coset graph is a connected
/// pseudocover of `Σ` with the same valency.
pub fn exhaustive_pseudocovers(sigma: &CosetGraph) -> Result<Vec<(PermutationGroup, ClassificationReport)>> {
    let h = sigma.stabilizer();
    let g = sigma.flip();
    let mut found = Vec::new();
    for l in subgroups_containing(h, &[g.compose(g)])? {
        if l.order() == h.order() {
            continue;
        }
        let pair = ExtenderPair::new(sigma.group(), &l, h, g)?;
        let report = pair.classify()?;
        if report.val_gamma == report.val_sigma && report.is_pseudocover && pair.gamma().is_connected()? {
            found.push((l, report));
        }
    }
    Ok(found)
}

#[derive(Clone, Debug)]
pub struct PslExample {
    pub p: u64,
    pub a: Permutation,
    pub b: Permutation,
    pub flip: Permutation,
    pub sigma: CosetGraph,
    /// `H ∩ H^g`, equal to `⟨a⁴, b⟩`.
    pub arc_stab: PermutationGroup,
}

/// Searches `PSL(2, p)` for `H = ⟨a, b⟩ ≅ D16` and an involution `g` with
/// `H ∩ H^g = ⟨a⁴, b⟩` and `⟨H, g⟩ = G`; first hit in enumeration order.
pub fn psl2_example(p: u64) -> Result<PslExample> {
    if !is_prime(p) || p % 16 != 1 {
        return Err(Error::precondition(format!("p = {p} must be a prime ≡ 1 (mod 16)")));
    }
    if p > 97 {
        return Err(Error::precondition(format!("p = {p} exceeds the search cap 97")));
    }
    let g = psl2(p)?;
    let elements = g.elements()?;
    let involutions: Vec<&Permutation> = elements.iter().filter(|e| e.order() == 2).collect();
    for a in elements.iter().filter(|e| e.order() == 8) {
        let ainv = a.inverse();
        for b in involutions.iter().filter(|b| a.conjugate_by(b) == ainv) {
            let h = PermutationGroup::new(g.degree(), vec![a.clone(), (*b).clone()])?;
            ensure_consistent!(h.order() == 16, "⟨a, b⟩ has order {}", h.order());
            let k = PermutationGroup::new(g.degree(), vec![a.pow(4), (*b).clone()])?;
            for t in &involutions {
                if h.has(t) {
                    continue;
                }
                let meet = h.intersect(&h.conjugate(t)?)?;
                if !meet.same_as(&k) {
                    continue;
                }
                if h.with_generators(&[(*t).clone()])?.order() != g.order() {
                    continue;
                }
                let sigma = CosetGraph::new(&g, &h, t)?;
                ensure_consistent!(meet.order() == 4, "H ∩ H^g has order {}", meet.order());
                return Ok(PslExample {
                    p,
                    a: a.clone(),
                    b: (*b).clone(),
                    flip: (*t).clone(),
                    sigma,
                    arc_stab: meet,
                });
            }
        }
    }
    Err(Error::SearchFailure(format!("no D16 witness found in PSL(2,{p})")))
}

impl PslExample {
    /// `L = ⟨a⁴, ab⟩` with the found flip.
    pub fn small_pair(&self) -> Result<ExtenderPair> {
        let l = PermutationGroup::new(
            self.sigma.group().degree(),
            vec![self.a.pow(4), self.a.compose(&self.b)],
        )?;
        ExtenderPair::new(self.sigma.group(), &l, self.sigma.stabilizer(), &self.flip)
    }
}

/// Presentation check: `a` of order 8, `b` an involution, `a^b = a⁻¹`.
pub fn is_d16_pair(a: &Permutation, b: &Permutation) -> bool {
    a.order() == 8 && b.order() == 2 && a.conjugate_by(b) == a.inverse()
}

/// The dihedral group of order 16 on 8 points with its standard pair.
pub fn standard_d16() -> Result<(Permutation, Permutation)> {
    dihedral_generators(16)
}

#[derive(Clone, Debug, Serialize)]
pub struct TetraTrace {
    pub branch: LocalBranch,
    pub vertex_stab_order: u64,
    pub edge_kernel_order: u64,
    pub arc_stab_order: u64,
    pub deep_kernel_order: u64,
    pub x: Option<String>,
    pub y: Option<String>,
    pub flip: String,
    pub normalized_flip: Option<String>,
    pub l_generators: Vec<String>,
}

impl TetraStabilizerData {
    pub fn trace(&self) -> TetraTrace {
        let c = self.choice.as_ref();
        let l_generators = match c {
            Some(c) => {
                let mut gens: Vec<String> = self.edge_kernel.generators().iter().map(|p| p.to_string()).collect();
                gens.push(c.x.compose(&c.y).to_string());
                gens
            }
            None => Vec::new(),
        };
        TetraTrace {
            branch: self.branch,
            vertex_stab_order: self.vertex_stab.order(),
            edge_kernel_order: self.edge_kernel.order(),
            arc_stab_order: self.arc_stab.order(),
            deep_kernel_order: self.deep_kernel.order(),
            x: c.map(|c| c.x.to_string()),
            y: c.map(|c| c.y.to_string()),
            flip: self.flip.to_string(),
            normalized_flip: c.map(|c| c.normalized_flip.to_string()),
            l_generators,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::px_graph;

    #[test]
    fn c263_stabilizer() {
        let sigma = px_graph(2, 6, 3).unwrap();
        let d = analyze_stabilizer(&sigma).unwrap();
        assert_eq!(d.branch, LocalBranch::D8);
        assert_eq!(d.vertex_stab.order(), 16);
        assert_eq!(d.edge_kernel.order(), 2);
        assert_eq!(d.arc_stab.order(), 4);
        assert_eq!(d.deep_kernel.order(), 1);
        let c = d.choice.as_ref().unwrap();
        let gt = &c.normalized_flip;
        assert!(d.edge_kernel.contains(&gt.compose(gt)).unwrap());
    }

    #[test]
    fn small_stabilizers() {
        let sigma = px_graph(2, 4, 2).unwrap();
        let d = analyze_stabilizer(&sigma).unwrap();
        assert_eq!((d.branch, d.vertex_stab.order()), (LocalBranch::D8, 8));
        assert!(d.choice.is_none());
        let (ok, why) = can_have_connected_pseudocover(&sigma).unwrap();
        assert!(!ok && why.contains("< 16"));
        assert!(matches!(construct_pseudocover(&sigma), Err(Error::Precondition(_))));
        // |G_ω| = 4: C(2,4,3).
        let sigma = px_graph(2, 4, 3).unwrap();
        let d = analyze_stabilizer(&sigma).unwrap();
        assert_eq!(d.vertex_stab.order(), 4);
        assert_ne!(d.branch, LocalBranch::D8);
        assert!(!can_have_connected_pseudocover(&sigma).unwrap().0);
    }

    #[test]
    fn preconditions() {
        let sigma = px_graph(3, 3, 1).unwrap();
        assert!(matches!(analyze_stabilizer(&sigma), Err(Error::Precondition(_))));
        assert!(matches!(psl2_example(33), Err(Error::Precondition(_))));
        assert!(matches!(psl2_example(13), Err(Error::Precondition(_))));
    }

    #[test]
    fn flip_already_normal() {
        // g_s are involutions, so g̃ = g whenever g² = 1.
        let sigma = px_graph(2, 6, 3).unwrap();
        let d = analyze_stabilizer(&sigma).unwrap();
        assert_eq!(d.choice.unwrap().normalized_flip, d.flip);
    }

    #[test]
    fn construction_on_c263() {
        let sigma = px_graph(2, 6, 3).unwrap();
        let pc = construct_pseudocover(&sigma).unwrap();
        assert_eq!(pc.pair.gamma().vertex_count(), 192);
        assert!(pc.report.is_pseudocover && pc.report.criterion_b);
        let vars = variant_subgroups(&sigma, &pc.data).unwrap();
        assert!(!vars[1].connected && !vars[2].connected && !vars[3].connected);
    }

    #[test]
    fn trace_echoes_choices() {
        let sigma = px_graph(2, 6, 3).unwrap();
        let t = analyze_stabilizer(&sigma).unwrap().trace();
        assert!(t.x.is_some() && t.y.is_some() && t.normalized_flip.is_some());
        assert_eq!(t.vertex_stab_order, 16);
    }

    #[test]
    fn standard_d16_presentation() {
        let (a, b) = standard_d16().unwrap();
        assert!(is_d16_pair(&a, &b));
    }
}
