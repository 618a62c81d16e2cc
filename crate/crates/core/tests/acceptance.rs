//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line; the
//! process exits non-zero if any criterion fails.
//!
//! Vertex counts, valencies and cover/pseudocover verdicts are recomputed
//! here from the raw graphs and block maps rather than trusted from the
//! library's own classifier.

use std::collections::{HashSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use symcov::census::{default_catalog, run_census, CensusRow, Verdict};
use symcov::extender::{build_pair, chain_classify, disconnected_pseudocover, ExtenderPair};
use symcov::families::{px_graph, px_graph_in, px_group, symmetric};
use symcov::graph::{are_isomorphic, Graph};
use symcov::subgroups::subgroups_containing;
use symcov::tetra::{construct_pseudocover, exhaustive_pseudocovers, psl2_example};
use symcov::{CosetGraph, Permutation, PermutationGroup};

type Outcome = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Every `(p, r, s)` with `p ∈ {2, 3}`, `3 ≤ r ≤ 7`, `1 ≤ s < r` and
/// `p^r·2r ≤ 10⁵`.
fn sweep() -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        for r in 3..=7usize {
            if p.pow(r as u32) * 2 * r as u64 <= 100_000 {
                out.push((p, r));
            }
        }
    }
    out
}

/// Arc orbit of `(0, first neighbour)` under the generators' vertex action.
fn oracle_arc_transitive(cg: &CosetGraph) -> bool {
    let g = cg.graph();
    let gens: Vec<Permutation> = cg.group().generators().iter().map(|w| cg.vertex_action(w)).collect();
    let start = (0, g.neighbors(0)[0]);
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((u, v)) = queue.pop_front() {
        for p in &gens {
            let arc = (p.image(u), p.image(v));
            if !g.has_edge(arc.0, arc.1) {
                return false;
            }
            if seen.insert(arc) {
                queue.push_back(arc);
            }
        }
    }
    seen.len() == 2 * g.edge_count()
}

#[derive(Debug, PartialEq, Eq)]
struct OracleVerdict {
    val_gamma: usize,
    val_sigma: usize,
    multicover: bool,
    cover: bool,
    pseudocover: bool,
}

/// Classifies `gamma` over its quotient by `block_of` by inspecting the
/// bipartite graph between every pair of adjacent blocks.
fn oracle_verdict(gamma: &Graph, block_of: &[usize]) -> OracleVerdict {
    let nblocks = block_of.iter().max().map_or(0, |m| m + 1);
    let mut members = vec![Vec::new(); nblocks];
    for (v, &b) in block_of.iter().enumerate() {
        members[b].push(v);
    }
    let mut quotient: Vec<HashSet<usize>> = vec![HashSet::new(); nblocks];
    for (u, v) in gamma.edges() {
        let (a, b) = (block_of[u], block_of[v]);
        if a != b {
            quotient[a].insert(b);
            quotient[b].insert(a);
        }
    }
    let val_gamma = gamma.degree(0);
    let val_sigma = quotient[0].len();
    let mut multicover = true;
    let mut cover = true;
    for a in 0..nblocks {
        for &b in &quotient[a] {
            let degrees: Vec<usize> = members[a]
                .iter()
                .map(|&u| gamma.neighbors(u).iter().filter(|&&w| block_of[w] == b).count())
                .collect();
            if degrees.iter().any(|&d| d != degrees[0]) || degrees[0] == 0 {
                multicover = false;
            }
            if degrees.iter().any(|&d| d != 1) {
                cover = false;
            }
        }
    }
    cover &= multicover;
    OracleVerdict { val_gamma, val_sigma, multicover, cover, pseudocover: val_gamma == val_sigma && !cover }
}

fn oracle_of_pair(pair: &ExtenderPair) -> OracleVerdict {
    oracle_verdict(pair.gamma().graph(), pair.block_map())
}

/// `W(r, p)`: vertex `(i, j)` is `i·p + j`, adjacent to every `(i ± 1, k)`.
fn oracle_wreath(r: usize, p: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..p {
            for k in 0..p {
                edges.push((i * p + j, ((i + 1) % r) * p + k));
            }
        }
    }
    Graph::from_edges(r * p, &edges).unwrap()
}

/// `Q_3` on 3-bit strings.
fn oracle_cube() -> Graph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                edges.push((v, v | bit));
            }
        }
    }
    Graph::from_edges(8, &edges).unwrap()
}

fn criterion_1() -> Outcome {
    let mut count = 0;
    for (p, r) in sweep() {
        let g = lib(px_group(p, r))?;
        for s in 1..r {
            let cg = lib(px_graph_in(&g, s))?;
            let gr = cg.graph();
            check!(gr.vertex_count() as u64 == r as u64 * p.pow(s as u32), "C({p},{r},{s}) vertex count {}", gr.vertex_count());
            check!(gr.is_regular() == Some(2 * p as usize), "C({p},{r},{s}) is not {}-regular", 2 * p);
            check!(gr.is_connected(), "C({p},{r},{s}) is disconnected");
            check!(lib(cg.verify_arc_transitive())?, "C({p},{r},{s}) not arc-transitive (library)");
            check!(oracle_arc_transitive(&cg), "C({p},{r},{s}) not arc-transitive (oracle)");
            count += 1;
        }
    }
    Ok(format!("{count} graphs C(p,r,s) with r·p^s vertices, valency 2p, connected, arc-transitive"))
}

fn criterion_2() -> Outcome {
    let (mut pseudo, mut covers) = (0, 0);
    for (p, r) in sweep() {
        let g = lib(px_group(p, r))?;
        for s in 3..r {
            let pair = lib(build_pair(&g.group, &lib(g.subgroup_h(s))?, &lib(g.subgroup_h(s - 2))?, &lib(g.flip(s))?))?;
            let rep = lib(pair.classify())?;
            let o = oracle_of_pair(&pair);
            check!(rep.is_pseudocover && o.pseudocover, "C({p},{r},{s}) over C({p},{r},{}) is not a pseudocover", s - 2);
            check!(o.val_gamma == 2 * p as usize && o.val_sigma == 2 * p as usize, "valencies {o:?}");
            pseudo += 1;
        }
        let pair = lib(build_pair(&g.group, &lib(g.subgroup_h(2))?, &lib(g.cover_witness_subgroup())?, &lib(g.flip(2))?))?;
        let rep = lib(pair.classify())?;
        let o = oracle_of_pair(&pair);
        check!(rep.is_cover && o.cover, "C({p},{r},2) over the T quotient is not a cover");
        covers += 1;
    }
    Ok(format!("{pseudo} pseudocovers C(p,r,s) over C(p,r,s−2); {covers} covers C(p,r,2) over T"))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for (p, r) in sweep() {
        let g = lib(px_group(p, r))?;
        let t = lib(g.cover_witness_subgroup())?;
        let w = oracle_wreath(r, p as usize);
        let t_graph = lib(CosetGraph::new(&g.group, &t, &lib(g.flip(2))?))?;
        check!(lib(are_isomorphic(t_graph.graph(), &w))?, "T quotient for ({p},{r}) is not W(r,p)");
        let h1 = lib(px_graph_in(&g, 1))?;
        check!(lib(are_isomorphic(h1.graph(), &w))?, "C({p},{r},1) is not W(r,p)");
        for s in 2..r {
            // odd s descends to H_1; even s descends to H_2 and then T
            let mut chain: Vec<PermutationGroup> =
                (1..=s).rev().step_by(2).map(|t| g.subgroup_h(t).unwrap()).collect();
            if s % 2 == 0 {
                chain.push(t.clone());
            }
            let c = lib(chain_classify(&g.group, &chain, &lib(g.flip(s))?))?;
            let top = lib(CosetGraph::new(&g.group, &chain[0], &lib(g.flip(s))?))?;
            let bottom = lib(CosetGraph::new(&g.group, chain.last().unwrap(), &lib(g.flip(s))?))?;
            check!(lib(are_isomorphic(bottom.graph(), &w))?, "chain bottom for ({p},{r},{s}) is not W(r,p)");
            let pair = lib(ExtenderPair::from_graphs(top, bottom))?;
            let o = oracle_of_pair(&pair);
            if s == 2 {
                check!(c.end_to_end.is_cover && o.cover, "C({p},{r},2) is not a cover of W(r,p)");
            } else {
                check!(c.end_to_end.is_pseudocover && o.pseudocover, "C({p},{r},{s}) is not a pseudocover of W(r,p)");
            }
            count += 1;
        }
    }
    Ok(format!("{count} chains to W(r,p): s = 2 covers, every s ≥ 3 a pseudocover"))
}

fn census_rows() -> Result<Vec<CensusRow>, String> {
    lib(run_census(&lib(default_catalog())?))
}

/// `{x ∈ A : g x g⁻¹ ∈ B}`, i.e. `A ∩ B^g`, by element sets.
fn meet_conj(a: &[Permutation], b: &HashSet<Permutation>, g: &Permutation) -> HashSet<Permutation> {
    let gi = g.inverse();
    a.iter().filter(|x| b.contains(&g.compose(x).compose(&gi))).cloned().collect()
}

fn criterion_4(rows: &[CensusRow]) -> Outcome {
    let catalog = lib(default_catalog())?;
    let mut rows = rows.iter();
    let (mut total, mut same) = (0, 0);
    for e in &catalog {
        let g = &e.flip;
        let h_elems = lib(e.stabilizer.elements())?;
        let h_set: HashSet<Permutation> = h_elems.iter().cloned().collect();
        let sigma = lib(e.sigma())?;
        for l in lib(subgroups_containing(&e.stabilizer, &[g.compose(g)]))? {
            if l.order() == e.stabilizer.order() {
                continue;
            }
            let row = rows.next().ok_or("census has fewer rows than the catalog")?;
            let tag = format!("{} L={}", e.name, row.l_generators);
            check!(row.l_order == l.order() && row.group_name == e.name, "{tag}: row order mismatch");
            let l_elems = lib(l.elements())?;
            let l_set: HashSet<Permutation> = l_elems.iter().cloned().collect();
            let a_bb = meet_conj(&l_elems, &h_set, g); // L ∩ H^g
            let ab_b = meet_conj(&h_elems, &l_set, g); // H ∩ L^g
            let a_b = meet_conj(&l_elems, &l_set, g); // L ∩ L^g
            let ab_bb = meet_conj(&h_elems, &h_set, g); // H ∩ H^g
            let all_equal = a_bb == ab_b && ab_b == a_b;
            let distinct = a_bb != ab_b && ab_b != a_b && a_bb != a_b;
            check!(all_equal || distinct, "{tag}: trichotomy fails");
            check!(distinct == row.criterion_d, "{tag}: criterion d disagrees with the oracle");
            let orbit = l_elems.len() / a_bb.len();
            let b = orbit < row.val_sigma;
            let c = l_elems.len() * ab_bb.len() / a_bb.len() != h_elems.len();
            check!(b == row.criterion_b && c == row.criterion_c, "{tag}: criteria b/c disagree with the oracle");
            check!(b == c, "{tag}: b ≠ c");
            let gamma = lib(CosetGraph::new(&e.group, &l, g))?;
            let pair = lib(ExtenderPair::from_graphs(gamma, sigma.clone()))?;
            let o = oracle_of_pair(&pair);
            check!((o.val_gamma, o.val_sigma) == (row.val_gamma, row.val_sigma), "{tag}: valencies");
            check!(o.multicover == row.is_multicover && o.cover == row.is_cover, "{tag}: graph verdict");
            if o.val_gamma == o.val_sigma {
                same += 1;
                check!(
                    o.pseudocover == b && o.pseudocover == c && o.pseudocover == distinct,
                    "{tag}: pseudocover {} vs b,c,d = {b},{c},{distinct}",
                    o.pseudocover
                );
                check!(row.is_pseudocover == o.pseudocover, "{tag}: census pseudocover flag");
            }
            total += 1;
        }
    }
    check!(rows.next().is_none(), "census has more rows than the catalog");
    Ok(format!("{total} census rows, {same} same-valency; zero violations"))
}

fn criterion_5() -> Outcome {
    let s4 = lib(symmetric(4))?;
    let three = lib(Permutation::from_cycles(4, &[vec![0, 1, 2]]))?;
    let s3 = lib(PermutationGroup::new(4, vec![three.clone(), lib(Permutation::from_cycles(4, &[vec![0, 1]]))?]))?;
    let l = lib(PermutationGroup::new(4, vec![three]))?;
    let g = lib(Permutation::from_cycles(4, &[vec![0, 3]]))?;
    let pair = lib(build_pair(&s4, &l, &s3, &g))?;
    let gamma = pair.gamma().graph();
    check!(gamma.vertex_count() == 8 && gamma.is_regular() == Some(3) && gamma.is_connected(), "Γ is not a connected cubic graph on 8 vertices");
    check!(lib(are_isomorphic(gamma, &oracle_cube()))?, "Γ is not the cube");
    check!(pair.sigma().vertex_count() == 4 && pair.sigma().graph().edge_count() == 6, "Σ is not K4");
    let o = oracle_of_pair(&pair);
    check!(o.cover && lib(pair.classify())?.is_cover, "cube is not a cover of K4");
    Ok("cube covers K4 (8 vertices, cubic, connected)".into())
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    for (n, verts, val) in [(3usize, 12usize, 2usize), (4, 36, 3)] {
        let g = lib(symmetric(n))?;
        let h = lib(PermutationGroup::new(
            n,
            vec![lib(Permutation::from_cycles(n, &[vec![0, 1]]))?, lib(Permutation::from_cycles(n, &[(0..n - 1).collect()]))?],
        ))?;
        let flip = lib(Permutation::from_cycles(n, &[vec![0, n - 1]]))?;
        let dp = lib(disconnected_pseudocover(&g, &h, &flip))?;
        let block_of: Vec<usize> = (0..dp.graph.vertex_count()).map(|v| dp.blocks.block_of(v)).collect();
        let o = oracle_verdict(&dp.graph, &block_of);
        check!(dp.graph.vertex_count() == verts, "K{n}: {} vertices", dp.graph.vertex_count());
        check!(dp.graph.is_regular() == Some(val), "K{n}: not {val}-regular");
        check!(!dp.graph.is_connected(), "K{n}: blow-up is connected");
        check!(o.val_sigma == val && o.pseudocover && dp.verdict.is_pseudocover, "K{n}: not a pseudocover {o:?}");
        parts.push(format!("K{n} → {verts} vertices, valency {val}"));
    }
    Ok(format!("{}; both disconnected pseudocovers", parts.join("; ")))
}

fn criterion_7() -> Outcome {
    let sigma = lib(px_graph(2, 6, 3))?;
    let pc = lib(construct_pseudocover(&sigma))?;
    let gamma = pc.pair.gamma().graph();
    check!(gamma.vertex_count() == 192, "{} vertices", gamma.vertex_count());
    check!(gamma.is_regular() == Some(4) && gamma.is_connected(), "not connected tetravalent");
    let o = oracle_of_pair(&pc.pair);
    check!(o.pseudocover && pc.report.is_pseudocover, "not a pseudocover");
    let vs1 = lib(are_isomorphic(gamma, lib(px_graph(2, 6, 1))?.graph()))?;
    let vs5 = lib(are_isomorphic(gamma, lib(px_graph(2, 6, 5))?.graph()))?;
    check!(vs5 && !vs1, "≅ C(2,6,1): {vs1}, ≅ C(2,6,5): {vs5}");
    Ok(format!(
        "C(2,6,3) → 192 vertices, connected, valency 4, pseudocover; ≅ C(2,6,5): {vs5}, ≅ C(2,6,1): {vs1} (output is C(2,6,s+2))"
    ))
}

fn criterion_8() -> Outcome {
    let ex = lib(psl2_example(17))?;
    check!(ex.sigma.vertex_count() == 153, "Σ has {} vertices", ex.sigma.vertex_count());
    let h = ex.sigma.stabilizer();
    check!(h.order() == 16, "|H| = {}", h.order());
    check!(ex.a.order() == 8 && ex.b.order() == 2 && ex.a.conjugate_by(&ex.b) == ex.a.inverse(), "H is not D16");
    let elems = lib(ex.arc_stab.elements())?;
    check!(elems.len() == 4 && elems.iter().all(|e| e.order() <= 2), "H∩H^g is not Z2×Z2");
    let pc = lib(construct_pseudocover(&ex.sigma))?;
    let gamma = pc.pair.gamma().graph();
    check!(gamma.vertex_count() == 612, "Γ has {} vertices", gamma.vertex_count());
    check!(gamma.is_connected() && gamma.is_regular() == Some(4), "Γ is not connected tetravalent");
    let o = oracle_of_pair(&pc.pair);
    check!(o.pseudocover && pc.report.is_pseudocover, "not a pseudocover");
    Ok(format!("PSL(2,17): Σ 153 → Γ 612 vertices, connected pseudocover; H∩H^g ≅ Z2×Z2; g = {}", ex.flip))
}

fn criterion_9() -> Outcome {
    let mut checked = Vec::new();
    for e in lib(default_catalog())? {
        let sigma = lib(e.sigma())?;
        let order = e.stabilizer.order();
        if lib(sigma.valency())? != 4 || !sigma.graph().is_connected() || !matches!(order, 4 | 8) {
            continue;
        }
        let found = lib(exhaustive_pseudocovers(&sigma))?;
        check!(found.is_empty(), "{}: {} connected pseudocovers", e.name, found.len());
        checked.push(e.name.clone());
    }
    check!(!checked.is_empty(), "no qualifying catalog entries");
    Ok(format!("{} instances with |G_ω| ∈ {{4, 8}}, no connected pseudocover: {}", checked.len(), checked.join(", ")))
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn criterion_10(rows: &[CensusRow]) -> Outcome {
    let mut count = 0;
    let mut names = Vec::new();
    for row in rows {
        if row.val_gamma != row.val_sigma || !row.gamma_connected {
            continue;
        }
        if is_prime(row.val_gamma) {
            check!(row.gamma_locally_primitive, "{} L={}: prime valency but not locally primitive", row.group_name, row.l_generators);
        }
        if row.gamma_locally_primitive {
            check!(row.verdict == Verdict::Cover && !row.is_pseudocover, "{} L={}: {:?}", row.group_name, row.l_generators, row.verdict);
            count += 1;
            names.push(format!("{} over {}", row.l_order, row.group_name));
        }
    }
    check!(count > 0, "no connected locally primitive same-valency rows");
    Ok(format!("{count} connected locally primitive same-valency extenders, all covers (|L| over Σ: {})", names.join(", ")))
}

fn run(n: usize, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(msg) => {
            println!("PASS criterion {n}: {msg} [{secs:.1}s]");
            true
        }
        Err(msg) => {
            println!("FAIL criterion {n}: {msg} [{secs:.1}s]");
            false
        }
    }
}

fn main() {
    let rows = census_rows();
    let rows_for = |rows: &Result<Vec<CensusRow>, String>| rows.clone();
    let results = [
        run(1, criterion_1),
        run(2, criterion_2),
        run(3, criterion_3),
        run(4, || criterion_4(&rows_for(&rows)?)),
        run(5, criterion_5),
        run(6, criterion_6),
        run(7, criterion_7),
        run(8, criterion_8),
        run(9, criterion_9),
        run(10, || criterion_10(&rows_for(&rows)?)),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
