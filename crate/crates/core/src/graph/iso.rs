//! Isomorphism testing by joint colour refinement plus individualization.
//!
//! Both graphs are coloured by the same canonical rule (colour ids are ranks
//! of sorted signatures over the union), so a colour class may only map onto
//! the equally coloured class of the other graph. Individualizing one vertex
//! on each side and refining again drives the search.

use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

pub const ISO_VERTEX_CAP: usize = 4096;

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    are_isomorphic_capped(a, b, ISO_VERTEX_CAP)
}

pub fn are_isomorphic_capped(a: &Graph, b: &Graph, cap: usize) -> Result<bool> {
    Ok(find_isomorphism_capped(a, b, cap)?.is_some())
}

/// A vertex map `a → b` preserving adjacency, if one exists.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Result<Option<Vec<usize>>> {
    find_isomorphism_capped(a, b, ISO_VERTEX_CAP)
}

fn find_isomorphism_capped(a: &Graph, b: &Graph, cap: usize) -> Result<Option<Vec<usize>>> {
    let n = a.vertex_count();
    if n.max(b.vertex_count()) > cap {
        return Err(Error::Capacity {
            what: format!("isomorphism test on {} vs {} vertices", n, b.vertex_count()),
            cap: cap as u64,
        });
    }
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let ia: Vec<Vec<u64>> = (0..n).map(|v| vertex_invariant(a, v)).collect();
    let ib: Vec<Vec<u64>> = (0..n).map(|v| vertex_invariant(b, v)).collect();
    let (ca, cb) = joint_rank(&ia, &ib);
    let Some((ca, cb)) = refine(a, b, ca, cb) else {
        return Ok(None);
    };
    Ok(search(a, b, ca, cb))
}

/// Degree, triangles through `v`, and the distance profile from `v`.
fn vertex_invariant(g: &Graph, v: usize) -> Vec<u64> {
    let nb = g.neighbors(v);
    let mut tri = 0u64;
    for (i, &x) in nb.iter().enumerate() {
        for &y in &nb[i + 1..] {
            if g.has_edge(x, y) {
                tri += 1;
            }
        }
    }
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    let mut profile: Vec<u64> = vec![1];
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                if profile.len() <= dist[w] {
                    profile.push(0);
                }
                profile[dist[w]] += 1;
                queue.push_back(w);
            }
        }
    }
    let mut inv = vec![nb.len() as u64, tri];
    inv.extend(profile);
    inv
}

fn joint_rank<T: Ord + Clone>(a: &[T], b: &[T]) -> (Vec<u32>, Vec<u32>) {
    let mut all: Vec<T> = a.iter().chain(b.iter()).cloned().collect();
    all.sort();
    all.dedup();
    let rank = |x: &T| all.binary_search(x).expect("present") as u32;
    (a.iter().map(rank).collect(), b.iter().map(rank).collect())
}

fn histogram(colors: &[u32]) -> Vec<u32> {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c
}

fn class_count(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Refines to the coarsest equitable colouring; `None` when the two
/// colourings stop matching.
fn refine(a: &Graph, b: &Graph, mut ca: Vec<u32>, mut cb: Vec<u32>) -> Option<(Vec<u32>, Vec<u32>)> {
    if histogram(&ca) != histogram(&cb) {
        return None;
    }
    let mut classes = class_count(&ca);
    loop {
        let sig = |g: &Graph, c: &[u32], v: usize| {
            let mut s: Vec<u32> = g.neighbors(v).iter().map(|&w| c[w]).collect();
            s.sort_unstable();
            s.insert(0, c[v]);
            s
        };
        let sa: Vec<Vec<u32>> = (0..a.vertex_count()).map(|v| sig(a, &ca, v)).collect();
        let sb: Vec<Vec<u32>> = (0..b.vertex_count()).map(|v| sig(b, &cb, v)).collect();
        let (na, nb) = joint_rank(&sa, &sb);
        if histogram(&na) != histogram(&nb) {
            return None;
        }
        let new_classes = class_count(&na);
        ca = na;
        cb = nb;
        if new_classes == classes {
            return Some((ca, cb));
        }
        classes = new_classes;
    }
}

fn search(a: &Graph, b: &Graph, ca: Vec<u32>, cb: Vec<u32>) -> Option<Vec<usize>> {
    let n = ca.len();
    let mut sizes = vec![0usize; n + 1];
    for &c in &ca {
        sizes[c as usize] += 1;
    }
    let target = (0..sizes.len())
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c));
    let Some(target) = target else {
        let mut map = vec![0usize; n];
        let mut pos = vec![usize::MAX; n + 1];
        for (v, &c) in cb.iter().enumerate() {
            pos[c as usize] = v;
        }
        for (v, &c) in ca.iter().enumerate() {
            map[v] = pos[c as usize];
        }
        let ok = a.edges().into_iter().all(|(u, v)| b.has_edge(map[u], map[v]));
        return ok.then_some(map);
    };
    let fresh = n as u32 + 1;
    let va = ca.iter().position(|&c| c as usize == target)?;
    for vb in (0..n).filter(|&v| cb[v] as usize == target) {
        let mut na = ca.clone();
        let mut nb = cb.clone();
        na[va] = fresh;
        nb[vb] = fresh;
        if let Some((ra, rb)) = refine(a, b, na, nb) {
            if let Some(map) = search(a, b, ra, rb) {
                return Some(map);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cube_graph, cycle_graph, lexicographic_blowup};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, i + 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    #[test]
    fn different_degree_sequences() {
        assert!(!are_isomorphic(&cycle_graph(6), &complete_bipartite(3, 3)).unwrap());
    }

    #[test]
    fn octahedron_two_ways() {
        let (w, _) = lexicographic_blowup(&cycle_graph(3), 2).unwrap();
        // K_{2,2,2}: every pair adjacent except {i, i+3}
        let mut e = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                if j != i + 3 {
                    e.push((i, j));
                }
            }
        }
        let oct = Graph::from_edges(6, &e).unwrap();
        assert!(are_isomorphic(&w, &oct).unwrap());
    }

    #[test]
    fn regular_non_isomorphic_pairs() {
        // Petersen vs the 5-prism: both cubic on 10 vertices.
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 1) % 5));
            e.push((i, i + 5));
        }
        let prism = Graph::from_edges(10, &e).unwrap();
        assert!(!are_isomorphic(&petersen(), &prism).unwrap());
        // C_6 vs two triangles
        let tt = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!are_isomorphic(&cycle_graph(6), &tt).unwrap());
    }

    #[test]
    fn random_relabelings() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let graphs = [petersen(), cube_graph(), lexicographic_blowup(&cycle_graph(5), 3).unwrap().0];
        for g in &graphs {
            for _ in 0..50 {
                let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
                perm.shuffle(&mut rng);
                let h = g.relabel(&perm).unwrap();
                let map = find_isomorphism(g, &h).unwrap().expect("isomorphic");
                for (u, v) in g.edges() {
                    assert!(h.has_edge(map[u], map[v]));
                }
            }
        }
    }

    #[test]
    fn equivalence_on_small_corpus() {
        let corpus = [
            cycle_graph(6),
            complete_bipartite(3, 3),
            cube_graph(),
            lexicographic_blowup(&cycle_graph(4), 2).unwrap().0,
            cycle_graph(8),
        ];
        let iso = |i: usize, j: usize| are_isomorphic(&corpus[i], &corpus[j]).unwrap();
        for i in 0..corpus.len() {
            assert!(iso(i, i));
            for j in 0..corpus.len() {
                assert_eq!(iso(i, j), iso(j, i));
                for k in 0..corpus.len() {
                    if iso(i, j) && iso(j, k) {
                        assert!(iso(i, k));
                    }
                }
            }
        }
    }

    #[test]
    fn vertex_cap() {
        let g = cycle_graph(10);
        assert!(matches!(are_isomorphic_capped(&g, &g, 5), Err(Error::Capacity { .. })));
    }
}
